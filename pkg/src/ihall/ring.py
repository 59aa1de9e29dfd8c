"""Exact scalar arithmetic: Laurent polynomials in v, the field Q(v), and Q[sqrt(q)].

All coefficients are fractions.Fraction, equality is structural, and any
division that has to be exact raises ExactDivisionError on a nonzero
remainder instead of rounding.  No floats anywhere.
"""

from fractions import Fraction
from math import isqrt


class ExactDivisionError(ArithmeticError):
    """Raised when a division that must be exact leaves a remainder."""


def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact coefficient")


class LaurentPoly:
    """Laurent polynomial in v with Fraction coefficients.

    Stored as a dict {exponent: coefficient} with all coefficients nonzero,
    so equality and hashing are structural.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for e, c in terms.items():
                c = _frac(c)
                if c:
                    clean[int(e)] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    @classmethod
    def const(cls, c):
        return cls({0: c})

    @classmethod
    def v_pow(cls, e):
        return cls({e: 1})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _frac(other)
            return LaurentPoly({e: c0 * c for e, c0 in self.terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("LaurentPoly powers must be nonnegative integers")
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def bar(self):
        """The bar involution v -> v^-1."""
        return LaurentPoly({-e: c for e, c in self.terms.items()})

    def inflate(self, k):
        """Substitute v -> v^k (k a positive integer)."""
        if not isinstance(k, int) or k <= 0:
            raise ValueError("inflate expects a positive integer")
        return LaurentPoly({e * k: c for e, c in self.terms.items()})

    def min_exp(self):
        return min(self.terms) if self.terms else 0

    def max_exp(self):
        return max(self.terms) if self.terms else 0

    def coeff(self, e):
        return self.terms.get(e, Fraction(0))

    def _as_coeff_list(self):
        # (lowest exponent, dense coefficient list from that exponent up)
        if not self.terms:
            return 0, [Fraction(0)]
        lo, hi = self.min_exp(), self.max_exp()
        coeffs = [Fraction(0)] * (hi - lo + 1)
        for e, c in self.terms.items():
            coeffs[e - lo] = c
        return lo, coeffs

    def exact_div(self, other):
        """Exact division; raises ExactDivisionError on a nonzero remainder."""
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if self.is_zero():
            return ZERO
        lo_n, num = self._as_coeff_list()
        lo_d, den = other._as_coeff_list()
        quot = _poly_divmod_exact(num, den)
        return LaurentPoly({lo_n - lo_d + i: c for i, c in enumerate(quot) if c})

    def subs_v(self, val):
        """Evaluate at an exact value (Fraction); negative exponents allowed."""
        val = _frac(val)
        total = Fraction(0)
        for e, c in self.terms.items():
            total += c * val ** e
        return total

    def specialize_sqrtq(self, q):
        """Evaluate at v = sqrt(q), exactly, as a QSqrt."""
        a = Fraction(0)
        b = Fraction(0)
        for e, c in self.terms.items():
            if e % 2 == 0:
                a += c * Fraction(q) ** (e // 2)
            else:
                b += c * Fraction(q) ** ((e - 1) // 2)
        return QSqrt(q, a, b)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            if e == 0:
                mon = str(c)
            else:
                vs = "v" if e == 1 else f"v^{e}"
                if c == 1:
                    mon = vs
                elif c == -1:
                    mon = f"-{vs}"
                elif c.denominator == 1:
                    mon = f"{c}*{vs}"
                else:
                    mon = f"({c})*{vs}"
            parts.append(mon)
        out = " + ".join(parts)
        return out.replace("+ -", "- ")


def _poly_divmod_exact(num, den):
    """Divide dense Fraction coefficient lists exactly, low degree first."""
    num = list(num)
    dd = len(den) - 1
    while dd > 0 and den[dd] == 0:
        dd -= 1
    lead = den[dd]
    nd = len(num) - 1
    quot = [Fraction(0)] * max(nd - dd + 1, 0)
    for i in range(nd - dd, -1, -1):
        c = num[i + dd]
        if c:
            f = c / lead
            quot[i] = f
            for j in range(dd + 1):
                num[i + j] -= f * den[j]
    if any(num):
        raise ExactDivisionError("nonzero remainder in exact polynomial division")
    return quot


ZERO = LaurentPoly()
ONE = LaurentPoly({0: 1})
V = LaurentPoly({1: 1})


def _poly_gcd(a, b):
    """Monic gcd of dense Fraction coefficient lists (low degree first)."""

    def strip(p):
        while len(p) > 1 and p[-1] == 0:
            p = p[:-1]
        return p

    a, b = strip(list(a)), strip(list(b))
    while b != [Fraction(0)]:
        # remainder of a by b
        r = list(a)
        db, lead = len(b) - 1, b[-1]
        for i in range(len(r) - 1 - db, -1, -1):
            c = r[i + db]
            if c:
                f = c / lead
                for j in range(db + 1):
                    r[i + j] -= f * b[j]
        a, b = b, strip(r)
    lead = a[-1]
    if lead != 1:
        a = [c / lead for c in a]
    return a


class LaurentFrac:
    """Element of Q(v) as a reduced fraction of Laurent polynomials.

    Normal form: denominator is an ordinary polynomial in v with nonzero
    constant term, leading coefficient 1, and gcd(num, den) = 1; the zero
    element is 0/1.  Equality is therefore structural.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE):
        num = _as_poly(num)
        den = _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in Q(v)")
        if num.is_zero():
            object.__setattr__(self, "num", ZERO)
            object.__setattr__(self, "den", ONE)
            return
        lo_n, cn = num._as_coeff_list()
        lo_d, cd = den._as_coeff_list()
        g = _poly_gcd(cn, cd)
        if len(g) > 1 or g[0] != 1:
            cn = _poly_divmod_exact(cn, g)
            cd = _poly_divmod_exact(cd, g)
        while len(cd) > 1 and cd[-1] == 0:
            cd.pop()
        lead = cd[-1]
        if lead != 1:
            cn = [c / lead for c in cn]
            cd = [c / lead for c in cd]
        shift = lo_n - lo_d
        object.__setattr__(self, "num", LaurentPoly({shift + i: c for i, c in enumerate(cn) if c}))
        object.__setattr__(self, "den", LaurentPoly({i: c for i, c in enumerate(cd) if c}))

    def __setattr__(self, name, value):
        raise AttributeError("LaurentFrac is immutable")

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        other = _as_frac_or_none(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        other = _as_frac_or_none(other)
        if other is None:
            return NotImplemented
        return LaurentFrac(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        out = object.__new__(LaurentFrac)
        object.__setattr__(out, "num", -self.num)
        object.__setattr__(out, "den", self.den)
        return out

    def __sub__(self, other):
        other = _as_frac_or_none(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_frac_or_none(other)
        if other is None:
            return NotImplemented
        return LaurentFrac(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_frac_or_none(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero in Q(v)")
        return LaurentFrac(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _as_frac_or_none(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, n):
        if not isinstance(n, int):
            raise ValueError("Q(v) powers must be integers")
        if n < 0:
            return LaurentFrac(self.den, self.num) ** (-n)
        out = LaurentFrac(ONE)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def bar(self):
        return LaurentFrac(self.num.bar(), self.den.bar())

    def to_laurent(self):
        """Convert back to a Laurent polynomial; exact or ExactDivisionError."""
        return self.num.exact_div(self.den)

    def specialize_sqrtq(self, q):
        return self.num.specialize_sqrtq(q) / self.den.specialize_sqrtq(q)

    def __repr__(self):
        if self.den == ONE:
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"


def _as_poly(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.const(x)
    raise TypeError(f"cannot interpret {type(x).__name__} as a Laurent polynomial")


def _as_frac_or_none(x):
    if isinstance(x, LaurentFrac):
        return x
    if isinstance(x, (int, Fraction, LaurentPoly)):
        return LaurentFrac(_as_poly(x))
    return None


class QSqrt:
    """Exact number a + b*sqrt(q) with a, b rational.

    If q happens to be a perfect square s^2 the sqrt part folds into the
    rational part at construction, so equality stays structural.
    """

    __slots__ = ("q", "a", "b")

    def __init__(self, q, a=0, b=0):
        if not isinstance(q, int) or q < 1:
            raise ValueError("q must be a positive integer")
        a, b = _frac(a), _frac(b)
        s = isqrt(q)
        if s * s == q and b:
            a, b = a + b * s, Fraction(0)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __setattr__(self, name, value):
        raise AttributeError("QSqrt is immutable")

    @classmethod
    def v_pow(cls, q, e):
        """sqrt(q)^e for any integer exponent e."""
        if e % 2 == 0:
            return cls(q, Fraction(q) ** (e // 2))
        return cls(q, 0, Fraction(q) ** ((e - 1) // 2))

    def is_zero(self):
        return not self.a and not self.b

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def _coerce(self, other):
        if isinstance(other, QSqrt):
            if other.q != self.q:
                raise ValueError(f"mixing sqrt({self.q}) with sqrt({other.q})")
            return other
        if isinstance(other, (int, Fraction)):
            return QSqrt(self.q, other)
        return None

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.q, self.a, self.b))

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return QSqrt(self.q, self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return QSqrt(self.q, -self.a, -self.b)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return QSqrt(
            self.q,
            self.a * other.a + self.b * other.b * self.q,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def inverse(self):
        den = self.a * self.a - self.b * self.b * self.q
        if not den:
            if self.is_zero():
                raise ZeroDivisionError("inverse of zero")
            # a^2 = b^2 q with b != 0 forces q to be a perfect square,
            # which construction folds away; unreachable but kept honest.
            raise ZeroDivisionError("inverse of zero divisor")
        return QSqrt(self.q, self.a / den, -self.b / den)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            raise ValueError("QSqrt powers must be integers")
        if n < 0:
            return self.inverse() ** (-n)
        out = QSqrt(self.q, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __repr__(self):
        if not self.b:
            return str(self.a)
        if not self.a:
            return f"{self.b}*sqrt({self.q})"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a} {sign} {abs(self.b)}*sqrt({self.q})"


def specialize_sqrtq(x, q):
    """Evaluate a scalar at v = sqrt(q) as an exact QSqrt."""
    if isinstance(x, (LaurentPoly, LaurentFrac)):
        return x.specialize_sqrtq(q)
    if isinstance(x, (int, Fraction)):
        return QSqrt(q, x)
    if isinstance(x, QSqrt):
        if x.q != q:
            raise ValueError("QSqrt already specialized at a different q")
        return x
    raise TypeError(f"cannot specialize {type(x).__name__}")


def bar(x):
    """The bar involution v -> v^-1 (identity on rationals)."""
    if isinstance(x, (LaurentPoly, LaurentFrac)):
        return x.bar()
    if isinstance(x, (int, Fraction)):
        return x
    raise TypeError(f"no bar involution on {type(x).__name__}")


# ---------------------------------------------------------------------------
# quantum combinatorics


def qint(r):
    """Balanced quantum integer [r] = (v^r - v^-r)/(v - v^-1)."""
    if r < 0:
        return -qint(-r)
    return LaurentPoly({e: 1 for e in range(r - 1, -r, -2)})


def qfact(n):
    """[n]! for n >= 0."""
    if n < 0:
        raise ValueError("qfact needs n >= 0")
    out = ONE
    for j in range(2, n + 1):
        out = out * qint(j)
    return out


def qdfact(n):
    """Double factorial [n][n-2]...[2] for even n >= 0."""
    if n < 0 or n % 2:
        raise ValueError("qdfact needs an even n >= 0")
    out = ONE
    for j in range(2, n + 1, 2):
        out = out * qint(j)
    return out


def qbinom(m, r):
    """Quantum binomial [m choose r]; m may be any integer, zero for r < 0."""
    if r < 0:
        return ZERO
    num = ONE
    for j in range(r):
        num = num * qint(m - j)
    return num.exact_div(qfact(r))


def pochhammer(e_a, e_x, n):
    """(a; x)_n = prod_{j=0}^{n-1} (1 - a x^j) with a = v^e_a, x = v^e_x."""
    if n < 0:
        raise ValueError("pochhammer needs n >= 0")
    out = ONE
    for j in range(n):
        out = out * (ONE - LaurentPoly.v_pow(e_a + j * e_x))
    return out
