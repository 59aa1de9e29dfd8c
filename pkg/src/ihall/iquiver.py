"""Quivers with involution and their doubled bound quivers.

An iquiver is a finite loop-free quiver Q together with an involutive
automorphism tau.  Its algebra is presented by the doubled quiver: one extra
arrow eps_i : i -> tau(i) per vertex, bound by

    eps_{tau i} . eps_i = 0                 (composites through eps vanish)
    eps_j . a  =  tau(a) . eps_i            for each arrow a : i -> j

where "." is composition of linear maps (right factor acts first).
"""

from typing import NamedTuple


class Arrow(NamedTuple):
    name: str
    src: str
    tgt: str


class Relation(NamedTuple):
    """lhs and rhs are length-2 paths (first, second), meaning M(second) @ M(first).

    rhs None means the lhs composite is zero.
    """

    lhs: tuple
    rhs: tuple | None


class IQuiver:
    """A loop-free quiver with an involutive automorphism tau."""

    def __init__(self, vertices, arrows, tau=None, tau_arrows=None):
        vertices = tuple(str(v) for v in vertices)
        if not vertices:
            raise ValueError("a quiver needs at least one vertex")
        if len(set(vertices)) != len(vertices):
            raise ValueError("duplicate vertex ids")
        arrows = tuple(Arrow(str(a[0]), str(a[1]), str(a[2])) for a in arrows)
        names = [a.name for a in arrows]
        if len(set(names)) != len(names):
            raise ValueError("duplicate arrow names")
        vset = set(vertices)
        for a in arrows:
            if a.src not in vset or a.tgt not in vset:
                raise ValueError(f"arrow {a.name}: unknown endpoint")
            if a.src == a.tgt:
                raise ValueError(f"arrow {a.name} is a loop; loops are not allowed")

        if tau is None:
            tau = {v: v for v in vertices}
        else:
            tau = {str(k): str(v) for k, v in tau.items()}
        for v in vertices:
            if v not in tau:
                raise ValueError(f"tau misses vertex {v}")
            if tau[v] not in vset:
                raise ValueError(f"tau({v}) is not a vertex")
        if len(tau) != len(vertices):
            raise ValueError("tau mentions unknown vertices")
        for v in vertices:
            if tau[tau[v]] != v:
                raise ValueError("tau is not an involution on vertices")

        by_name = {a.name: a for a in arrows}
        if tau_arrows is None:
            tau_arrows = self._infer_tau_arrows(arrows, tau)
        else:
            tau_arrows = {str(k): str(v) for k, v in tau_arrows.items()}
        if set(tau_arrows) != set(names) or set(tau_arrows.values()) != set(names):
            raise ValueError("tau_arrows must be a bijection on all arrow names")
        for name, partner in tau_arrows.items():
            a, b = by_name[name], by_name[partner]
            if b.src != tau[a.src] or b.tgt != tau[a.tgt]:
                raise ValueError(f"tau_arrows({name}) = {partner} does not respect tau on endpoints")
            if tau_arrows[partner] != name:
                raise ValueError("tau_arrows is not an involution")

        self.vertices = vertices
        self.arrows = arrows
        self.tau = tau
        self.tau_arrows = tau_arrows
        self.vindex = {v: k for k, v in enumerate(vertices)}
        self._cartan = None

    @staticmethod
    def _infer_tau_arrows(arrows, tau):
        pairing = {}
        for a in arrows:
            if tau[a.src] == a.src and tau[a.tgt] == a.tgt:
                pairing[a.name] = a.name
                continue
            cands = [b for b in arrows if b.src == tau[a.src] and b.tgt == tau[a.tgt]]
            if len(cands) != 1:
                raise ValueError(
                    f"cannot infer the arrow pairing for {a.name}: "
                    f"{len(cands)} candidates; pass tau_arrows explicitly"
                )
            pairing[a.name] = cands[0].name
        return pairing

    # -- basic combinatorics ------------------------------------------------

    @property
    def n(self):
        return len(self.vertices)

    def unit(self, v):
        """Dimension vector of the simple at vertex v."""
        e = [0] * self.n
        e[self.vindex[v]] = 1
        return tuple(e)

    def tau_vec(self, alpha):
        """Permute a dimension vector by tau."""
        out = [0] * self.n
        for v, k in self.vindex.items():
            out[self.vindex[self.tau[v]]] = alpha[k]
        return tuple(out)

    def euler(self, x, y):
        """Euler form <x, y>_Q of the path algebra kQ."""
        total = sum(a * b for a, b in zip(x, y))
        for a in self.arrows:
            total -= x[self.vindex[a.src]] * y[self.vindex[a.tgt]]
        return total

    def sym(self, x, y):
        return self.euler(x, y) + self.euler(y, x)

    @property
    def cartan(self):
        """Symmetrized matrix c_ij = <e_i,e_j>_Q + <e_j,e_i>_Q."""
        if self._cartan is None:
            units = [self.unit(v) for v in self.vertices]
            self._cartan = tuple(
                tuple(self.sym(units[i], units[j]) for j in range(self.n))
                for i in range(self.n)
            )
        return self._cartan

    def cartan_vv(self, u, w):
        return self.cartan[self.vindex[u]][self.vindex[w]]

    def is_tau_fixed(self, v):
        return self.tau[v] == v

    @property
    def i_tau(self):
        """One representative per tau-orbit: the lexicographically least vertex."""
        reps = {min(v, self.tau[v]) for v in self.vertices}
        return tuple(v for v in self.vertices if v in reps)

    def is_virtually_acyclic(self):
        """True when the only cycles are 2-cycles between tau-paired vertices.

        Equivalent condition on strongly connected components: every SCC has
        at most 2 vertices, and each 2-vertex SCC is a pair {i, tau(i)}.
        """
        for comp in self._sccs():
            if len(comp) > 2:
                return False
            if len(comp) == 2:
                u, w = comp
                if self.tau[u] != w:
                    return False
        return True

    def _sccs(self):
        fwd = {v: [] for v in self.vertices}
        rev = {v: [] for v in self.vertices}
        for a in self.arrows:
            fwd[a.src].append(a.tgt)
            rev[a.tgt].append(a.src)
        order, seen = [], set()
        for root in self.vertices:
            if root in seen:
                continue
            stack = [(root, iter(fwd[root]))]
            seen.add(root)
            while stack:
                v, it = stack[-1]
                advanced = False
                for w in it:
                    if w not in seen:
                        seen.add(w)
                        stack.append((w, iter(fwd[w])))
                        advanced = True
                        break
                if not advanced:
                    order.append(v)
                    stack.pop()
        comps, assigned = [], set()
        for root in reversed(order):
            if root in assigned:
                continue
            comp, stack = [], [root]
            assigned.add(root)
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in rev[v]:
                    if w not in assigned:
                        assigned.add(w)
                        stack.append(w)
            comps.append(comp)
        return comps

    def signature(self):
        """Stable text identity, used for cache keys."""
        return repr(
            (
                self.vertices,
                tuple(self.arrows),
                tuple(sorted(self.tau.items())),
                tuple(sorted(self.tau_arrows.items())),
            )
        )

    def __repr__(self):
        arrows = ", ".join(f"{a.name}:{a.src}->{a.tgt}" for a in self.arrows)
        return f"IQuiver({list(self.vertices)}; {arrows or 'no arrows'}; tau={self.tau})"


class BoundQuiver:
    """Doubled quiver of an iquiver together with its defining relations.

    Arrow order is fixed (eps arrows in vertex order, then the original
    arrows); representations are stored as matrix tuples in this order.
    """

    def __init__(self, iq: IQuiver):
        self.iq = iq
        self.eps_name = {}
        eps_arrows = []
        taken = {a.name for a in iq.arrows}
        for v in iq.vertices:
            name = f"eps_{v}"
            if name in taken:
                raise ValueError(f"arrow name {name} collides with the doubled quiver")
            self.eps_name[v] = name
            eps_arrows.append(Arrow(name, v, iq.tau[v]))
        self.arrows = tuple(eps_arrows) + iq.arrows
        self.aindex = {a.name: k for k, a in enumerate(self.arrows)}
        self.by_name = {a.name: a for a in self.arrows}

        rels = []
        for v in iq.vertices:
            rels.append(Relation((self.eps_name[v], self.eps_name[iq.tau[v]]), None))
        for a in iq.arrows:
            ta = iq.tau_arrows[a.name]
            rels.append(Relation((a.name, self.eps_name[a.tgt]), (self.eps_name[a.src], ta)))
        self.relations = tuple(rels)

    @property
    def vertices(self):
        return self.iq.vertices

    def dim_K(self, v):
        """Dimension vector of the generalized simple attached to vertex v."""
        e = list(self.iq.unit(v))
        tv = self.iq.tau[v]
        e[self.iq.vindex[tv]] += 1
        return tuple(e)

    def res_K(self, alpha):
        """Restriction to kQ of K_alpha: the vector alpha + tau(alpha)."""
        ta = self.iq.tau_vec(alpha)
        return tuple(a + b for a, b in zip(alpha, ta))


BUILTIN_NAMES = ("rank1-split", "a2-split", "a3-quasisplit", "kronecker-r1")


def builtin_iquiver(name):
    if name == "rank1-split":
        return IQuiver(["1"], [])
    if name == "a2-split":
        return IQuiver(["1", "2"], [("a1", "1", "2")])
    if name == "a3-quasisplit":
        return IQuiver(
            ["1", "2", "3"],
            [("a1", "1", "2"), ("a2", "3", "2")],
            tau={"1": "3", "3": "1", "2": "2"},
        )
    if name == "kronecker-r1":
        return IQuiver(
            ["1", "2"],
            [("a1", "1", "2"), ("b1", "2", "1")],
            tau={"1": "2", "2": "1"},
            tau_arrows={"a1": "b1", "b1": "a1"},
        )
    raise ValueError(f"unknown builtin quiver {name!r}; known: {', '.join(BUILTIN_NAMES)}")


def build_iquiver(spec):
    """Build an IQuiver from a JSON-shaped dict.

    Expected keys: "vertices" (list of ids), "arrows" (list of
    {"name","src","tgt"} objects or [name, src, tgt] / [src, tgt] lists),
    optional "tau" (vertex map, default identity) and "tau_arrows".
    """
    if not isinstance(spec, dict):
        raise ValueError("quiver spec must be a JSON object")
    try:
        vertices = list(spec["vertices"])
    except KeyError:
        raise ValueError('quiver spec needs a "vertices" list') from None
    raw_arrows = spec.get("arrows", [])
    arrows = []
    for k, item in enumerate(raw_arrows):
        if isinstance(item, dict):
            arrows.append((item["name"], item["src"], item["tgt"]))
        elif len(item) == 3:
            arrows.append((item[0], item[1], item[2]))
        elif len(item) == 2:
            arrows.append((f"a{k + 1}", item[0], item[1]))
        else:
            raise ValueError(f"cannot parse arrow entry {item!r}")
    return IQuiver(vertices, arrows, spec.get("tau"), spec.get("tau_arrows"))
