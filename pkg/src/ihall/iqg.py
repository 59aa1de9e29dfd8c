"""Serre-type presentation checks and supporting q-identities.

The generators B_i, ktilde_i of the universal presentation are mapped into a
Hall algebra (simples and torus elements with parity- and orbit-dependent
normalizations); every defining relation then becomes an element that must
vanish identically. Relations with denominators are multiplied through so
each check is a plain zero test.

The second half holds the pure q-series side: the triple-sum values T and
T1 and the factorial/binomial identities they reduce to, all over exact
Laurent polynomials.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Optional

from .idp import idp_hall
from .ring import (
    LaurentFrac,
    LaurentPoly,
    ONE,
    V,
    pochhammer,
    qbinom,
    qdfact,
    qfact,
    qint,
)

_VMVI = V - LaurentPoly.v_pow(-1)


def _c2(m):
    return m * (m - 1) // 2


# ---------------------------------------------------------------------------
# generators under the Hall-algebra embedding
# ---------------------------------------------------------------------------


class Psi:
    """The images of B_j and ktilde_i inside one Hall algebra."""

    def __init__(self, algebra):
        self.algebra = algebra
        self.iq = algebra.iq
        self.reps = frozenset(self.iq.i_tau)
        self._bdp_cache = {}

    def B(self, j):
        h = self.algebra
        s = h.simple(j)
        if j in self.reps:
            return s.scale(Fraction(-1, h.q - 1))
        return s.scale(h.v_pow(1) * Fraction(1, h.q - 1))

    def K(self, i):
        h = self.algebra
        k = h.torus_k(i)
        if self.iq.tau[i] == i:
            return k.scale(Fraction(-1, h.q))
        c = self.iq.cartan_vv(i, self.iq.tau[i])
        if c % 2:
            raise ValueError("odd Cartan pairing between a swapped pair")
        return k.scale(h.v_pow(-c // 2))

    def BDP(self, i, n, parity=None):
        """Image of the (parity-)divided power of B_i."""
        key = (i, n, parity)
        if key in self._bdp_cache:
            return self._bdp_cache[key]
        h = self.algebra
        fixed = self.iq.tau[i] == i
        base = idp_hall(h, i, n, parity if fixed else None)
        if fixed or i in self.reps:
            scal = h.scalar(Fraction(1, (1 - h.q) ** n))
        else:
            scal = h.v_pow(n) * Fraction(1, (h.q - 1) ** n)
        out = base.scale(scal)
        self._bdp_cache[key] = out
        return out


# ---------------------------------------------------------------------------
# the relation suite
# ---------------------------------------------------------------------------


class RelationInstance(NamedTuple):
    kind: str  # torus-torus | torus-b | commute | serre | pair | fixed-serre
    i: str
    j: Optional[str]
    parity: Optional[int]
    label: str


def build_relation_suite(iq, parities=(0, 1)):
    """Every defining relation instance for one iquiver.

    torus-torus / torus-b cover the weight relations; commute the c = 0
    case between non-partner vertices; serre the classical Serre relation
    at a non-fixed vertex; pair the relation binding a swapped pair; and
    fixed-serre the parity pair of relations at a tau-fixed vertex.
    """
    if not iq.is_virtually_acyclic():
        raise ValueError(
            "the presentation check is defined for virtually acyclic iquivers"
        )
    out = []
    verts = iq.vertices
    for a in range(len(verts)):
        for b in range(a + 1, len(verts)):
            i, l = verts[a], verts[b]
            out.append(
                RelationInstance(
                    "torus-torus", i, l, None, "k(%s) k(%s) commute" % (i, l)
                )
            )
    for i in verts:
        for l in verts:
            out.append(
                RelationInstance(
                    "torus-b", i, l, None, "k(%s) past B(%s)" % (i, l)
                )
            )
    for i in verts:
        ti = iq.tau[i]
        for j in verts:
            if j == i:
                continue
            c = iq.cartan_vv(i, j)
            if ti == i:
                for parity in parities:
                    out.append(
                        RelationInstance(
                            "fixed-serre",
                            i,
                            j,
                            parity,
                            "fixed serre i=%s j=%s parity=%d" % (i, j, parity),
                        )
                    )
            elif j == ti:
                out.append(
                    RelationInstance("pair", i, j, None, "pair relation i=%s" % i)
                )
            elif c == 0:
                if verts.index(i) < verts.index(j):
                    out.append(
                        RelationInstance(
                            "commute", i, j, None, "B(%s) B(%s) commute" % (i, j)
                        )
                    )
            else:
                out.append(
                    RelationInstance(
                        "serre", i, j, None, "serre i=%s j=%s" % (i, j)
                    )
                )
    return out


def relation_residual(algebra, inst, psi=None):
    """The relation instance evaluated in the Hall algebra; zero iff it holds."""
    psi = psi or Psi(algebra)
    iq = algebra.iq
    kind = inst.kind
    if kind == "torus-torus":
        ki, kl = psi.K(inst.i), psi.K(inst.j)
        return ki * kl - kl * ki
    if kind == "torus-b":
        ki, bl = psi.K(inst.i), psi.B(inst.j)
        e = iq.cartan_vv(iq.tau[inst.i], inst.j) - iq.cartan_vv(inst.i, inst.j)
        return ki * bl - (bl * ki).scale(algebra.v_pow(e))
    if kind == "commute":
        bi, bj = psi.B(inst.i), psi.B(inst.j)
        return bi * bj - bj * bi
    if kind == "serre":
        c = iq.cartan_vv(inst.i, inst.j)
        bj = psi.B(inst.j)
        out = algebra.zero()
        for n in range(0, 1 - c + 1):
            term = psi.BDP(inst.i, n) * bj * psi.BDP(inst.i, 1 - c - n)
            out = out + (term if n % 2 == 0 else -term)
        return out
    if kind == "fixed-serre":
        c = iq.cartan_vv(inst.i, inst.j)
        par = inst.parity
        rpar = (par + c) % 2
        bj = psi.B(inst.j)
        out = algebra.zero()
        for n in range(0, 1 - c + 1):
            term = (
                psi.BDP(inst.i, n, par)
                * bj
                * psi.BDP(inst.i, 1 - c - n, rpar)
            )
            out = out + (term if n % 2 == 0 else -term)
        return out
    if kind == "pair":
        i, ti = inst.i, iq.tau[inst.i]
        c = iq.cartan_vv(i, ti)
        bt = psi.B(ti)
        lhs = algebra.zero()
        for n in range(0, 1 - c + 1):
            term = psi.BDP(i, n) * bt * psi.BDP(i, 1 - c - n)
            lhs = lhs + (term if n % 2 == 0 else -term)
        # multiplied through by (v - v^-1) to stay polynomial
        res = lhs.scale(algebra.scalar(_VMVI))
        mid = psi.BDP(i, -c)
        res = res - (mid * psi.K(i)).scale(
            algebra.scalar(LaurentPoly.v_pow(c) * pochhammer(-2, -2, -c))
        )
        res = res + (mid * psi.K(ti)).scale(
            algebra.scalar(pochhammer(2, 2, -c))
        )
        return res
    raise ValueError("unknown relation kind %r" % (kind,))


def verify_presentation(algebra, parities=(0, 1)):
    """Run the whole suite; returns a list of (label, residual) pairs."""
    psi = Psi(algebra)
    suite = build_relation_suite(algebra.iq, parities)
    return [(inst.label, relation_residual(algebra, inst, psi)) for inst in suite]


# ---------------------------------------------------------------------------
# the q-series side: T, T1 and the identities they reduce to
# ---------------------------------------------------------------------------


def p_exponent(a, u, r, s, t):
    """The v-exponent attached to one term of the three-factor product."""
    return (
        -s * (a + t)
        + 2 * r * a
        + (u - t + 2 * s - r) * (t - r)
        + (s - r) ** 2
        + _c2(s - r)
        + (t - r) ** 2
        + _c2(t - r)
        + r * (s + t)
        - _c2(r + 1)
        + 1
    )


def _qfact_range(lo, hi):
    """[hi]! / [lo]! as a plain product of q-integers."""
    out = ONE
    for j in range(lo + 1, hi + 1):
        out = out * qint(j)
    return out


def _qdfact_range(lo, hi):
    """[2 hi]!! / [2 lo]!! as a plain product of even q-integers."""
    out = ONE
    for j in range(lo + 1, hi + 1):
        out = out * qint(2 * j)
    return out


def _t_value(a, d, u, swap):
    # denominators [r]! [2k]!! [2m]!! are cleared against the fixed
    # multiple [d]! [2K]!! [2K]!! (K the largest k), keeping everything
    # a Laurent polynomial; the sum vanishes iff the raw sum does
    kmax = (a + 1) // 2
    total = LaurentPoly.const(0)
    for n in range(0, a + 2):
        for k in range(0, n // 2 + 1):
            for m in range(0, (a + 1 - n) // 2 + 1):
                r = d - k - m
                if r < 0 or r > n - 2 * k:
                    continue
                s = n - 2 * k
                t = 1 + a - n - 2 * m
                qb = qbinom(u, t - r)
                if qb.is_zero():
                    continue
                z = (
                    k * (k - 1)
                    + m * (m + 1)
                    - _c2(s)
                    - _c2(t)
                    + p_exponent(a, u, r, s, t)
                )
                even = n % 2 == 0
                shifted = (even and swap) or (not even and not swap)
                e = z + (2 * k - 2 * m if shifted else 0)
                coeff = (
                    LaurentPoly.v_pow(e)
                    * qb
                    * _qfact_range(r, d)
                    * _qdfact_range(k, kmax)
                    * _qdfact_range(m, kmax)
                )
                total = total + coeff if even else total - coeff
    return total


def t_value(a, d, u):
    """T(a, d, u): must vanish on every admissible triple."""
    return _t_value(a, d, u, swap=False)


def t1_value(a, d, u):
    """T1(a, d, u): the companion sum with the shifted exponent convention."""
    return _t_value(a, d, u, swap=True)


def adu_triples(amax):
    """All admissible (a, d, u) with a <= amax."""
    for a in range(amax + 1):
        for d in range(0, (a + 1) // 2 + 1):
            for u in range(0, a + 1 - 2 * d + 1):
                if (d, u) != (0, 0):
                    yield (a, d, u)


def km1_residual(p):
    """[p]! sum_{k+m=p} v^(-2(k-1)m - p(3-p)/2) / ([2k]!! [2m]!!)  minus 1.

    Cleared by [2p]!!, using [2p]!!/([2k]!![2m]!!) = [p choose k] at v^2.
    """
    total = LaurentPoly.const(0)
    for k in range(p + 1):
        m = p - k
        e = -2 * (k - 1) * m - p * (3 - p) // 2
        total = total + LaurentPoly.v_pow(e) * qbinom(p, k).inflate(2)
    return total * qfact(p) - qdfact(2 * p)


def km3_residual(p):
    """sum_k v^(p(p+1)/2 - 2k(p-k+1)) [p choose k]_{v^2}  minus [2p]!!/[p]!."""
    total = LaurentFrac(0)
    for k in range(p + 1):
        e = p * (p + 1) // 2 - 2 * k * (p - k + 1)
        total = total + LaurentFrac(LaurentPoly.v_pow(e) * qbinom(p, k).inflate(2))
    return total - LaurentFrac(qdfact(2 * p), qfact(p))


def km5_residual(p):
    """sum_k v^(-k(p-k+1)) [p choose k]  minus  prod_{j=1}^p (1 + v^-j)."""
    total = LaurentPoly.const(0)
    for k in range(p + 1):
        total = total + LaurentPoly.v_pow(-k * (p - k + 1)) * qbinom(p, k)
    prod = ONE
    for j in range(1, p + 1):
        prod = prod * (ONE + LaurentPoly.v_pow(-j))
    return LaurentFrac(total - prod)


def kmrd_residual(d):
    """sum_{k+m+r=d} (-1)^r v^(C(r+1,2) - 2(k-1)m) / ([r]! [2k]!! [2m]!!).

    Cleared by [d]! [2d]!! [2d]!! so the sum stays polynomial.
    """
    total = LaurentPoly.const(0)
    for k in range(d + 1):
        for m in range(d - k + 1):
            r = d - k - m
            e = _c2(r + 1) - 2 * (k - 1) * m
            term = (
                LaurentPoly.v_pow(e)
                * _qfact_range(r, d)
                * _qdfact_range(k, d)
                * _qdfact_range(m, d)
            )
            total = total + term if r % 2 == 0 else total - term
    return total


def qbinom_alt_residual(p, d):
    """sum_t (-1)^t v^(-dt) [p choose t]: zero when |d| <= p-1, d = p-1 mod 2."""
    total = LaurentPoly.const(0)
    for t in range(p + 1):
        term = LaurentPoly.v_pow(-d * t) * qbinom(p, t)
        total = total + term if t % 2 == 0 else total - term
    return total


def qbinom_low_residual(p):
    """sum_t (-1)^t v^(-(p+1)t) [p choose t]  minus  (v^-2; v^-2)_p."""
    total = LaurentPoly.const(0)
    for t in range(p + 1):
        term = LaurentPoly.v_pow(-(p + 1) * t) * qbinom(p, t)
        total = total + term if t % 2 == 0 else total - term
    return total - pochhammer(-2, -2, p)


def qbinom_high_residual(p):
    """sum_t (-1)^t v^((p+1)t) [p choose t]  minus  (v^2; v^2)_p."""
    total = LaurentPoly.const(0)
    for t in range(p + 1):
        term = LaurentPoly.v_pow((p + 1) * t) * qbinom(p, t)
        total = total + term if t % 2 == 0 else total - term
    return total - pochhammer(2, 2, p)


def binomial_product_residual(p, zexp):
    """Finite q-binomial theorem at z = v^zexp, as an exact difference."""
    total = LaurentPoly.const(0)
    for t in range(p + 1):
        total = total + (
            LaurentPoly.v_pow(t * (1 - p)) * qbinom(p, t) * LaurentPoly.v_pow(zexp * t)
        )
    prod = ONE
    for j in range(p):
        prod = prod * (ONE + LaurentPoly.v_pow(-2 * j + zexp))
    return total - prod


def run_identity_suites(pmax=12, dmax=12, amax=8):
    """Every named identity over its whole advertised range.

    Returns a list of (name, ok) pairs, one per identity family, each ok
    being the conjunction of all instances in the range.
    """
    results = []
    results.append(
        ("km-factorial", all(km1_residual(p).is_zero() for p in range(0, pmax + 1)))
    )
    results.append(
        ("km-double-factorial", all(km3_residual(p).is_zero() for p in range(0, pmax + 1)))
    )
    results.append(
        ("km-binomial-product", all(km5_residual(p).is_zero() for p in range(0, pmax + 1)))
    )
    results.append(
        ("km-alternating", all(kmrd_residual(d).is_zero() for d in range(1, dmax + 1)))
    )
    ok1 = True
    for p in range(1, pmax + 1):
        for d in range(-(p - 1), p):
            if (d - (p - 1)) % 2 == 0:
                ok1 = ok1 and qbinom_alt_residual(p, d).is_zero()
    results.append(("qbinom-alternating", ok1))
    results.append(
        ("qbinom-low", all(qbinom_low_residual(p).is_zero() for p in range(1, pmax + 1)))
    )
    results.append(
        ("qbinom-high", all(qbinom_high_residual(p).is_zero() for p in range(1, pmax + 1)))
    )
    return results


def run_t_suite(amax=8):
    """T and T1 on every admissible triple with a <= amax."""
    results = []
    for a, d, u in adu_triples(amax):
        results.append(
            (
                "T(%d,%d,%d)" % (a, d, u),
                t_value(a, d, u).is_zero() and t1_value(a, d, u).is_zero(),
            )
        )
    return results
