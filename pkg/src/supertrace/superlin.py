"""Z2-graded linear algebra: super-spaces, parity-tagged maps, Koszul signs.

The sign conventions are the usual ones: permuting two odd elements in an
expression costs a minus sign.  Concretely,

* (f (x) g)(x (x) y) = (-1)^{p(g) p(x)} f(x) (x) g(y),
* tau(u (x) v)       = (-1)^{p(u) p(v)} v (x) u,
* f*(phi)            = (-1)^{p(f) p(phi)} phi . f,
* ev (left duality)  : V* (x) V -> k is the plain contraction,
* ev_right           : V (x) V* -> k carries the sign (-1)^{p(v) p(phi)},
* coev               : k -> V (x) V*, 1 |-> sum v_i (x) v_i^*.

All maps are dense-in-principle matrices over the rationals, stored sparsely;
spaces are ordered parity lists, so tensor products are strictly associative
and the unit object is literal (no coherence plumbing needed).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

EVEN, ODD = 0, 1


@dataclass(frozen=True)
class SuperSpace:
    """An ordered basis with one parity bit per basis vector."""

    parities: tuple[int, ...]

    def __post_init__(self):
        if any(p not in (0, 1) for p in self.parities):
            raise ValueError("parities must be 0 or 1")

    @property
    def dim(self) -> int:
        return len(self.parities)

    @property
    def dim_even(self) -> int:
        return sum(1 for p in self.parities if p == EVEN)

    @property
    def dim_odd(self) -> int:
        return sum(1 for p in self.parities if p == ODD)

    @property
    def sdim(self) -> int:
        return self.dim_even - self.dim_odd

    def __repr__(self):
        return f"SuperSpace({self.dim_even}|{self.dim_odd}, dim={self.dim})"


def super_space(dim_even: int, dim_odd: int) -> SuperSpace:
    """The model space with ``dim_even`` even then ``dim_odd`` odd basis vectors."""
    return SuperSpace((EVEN,) * dim_even + (ODD,) * dim_odd)


UNIT = super_space(1, 0)
UNIT_ODD = super_space(0, 1)


@dataclass(frozen=True)
class SuperMap:
    """A homogeneous linear map between super-spaces.

    Entries are stored sparsely as {(row, col): Fraction}.  Homogeneity is
    enforced at construction: entry (i, j) may be nonzero only when
    parity(codomain_i) = parity(domain_j) + parity(map) in Z2.
    """

    domain: SuperSpace
    codomain: SuperSpace
    parity: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.parity not in (0, 1):
            raise ValueError("map parity must be 0 or 1")
        clean = {}
        for (i, j), v in self.entries.items():
            v = Fraction(v)
            if v == 0:
                continue
            if not (0 <= i < self.codomain.dim and 0 <= j < self.domain.dim):
                raise ValueError(f"entry ({i},{j}) out of range")
            if self.codomain.parities[i] != (self.domain.parities[j] + self.parity) % 2:
                raise ValueError(
                    f"entry ({i},{j}) violates homogeneity for parity {self.parity}"
                )
            clean[(i, j)] = v
        object.__setattr__(self, "entries", clean)

    # -- basic algebra ----------------------------------------------------

    def entry(self, i: int, j: int) -> Fraction:
        return self.entries.get((i, j), Fraction(0))

    def is_zero(self) -> bool:
        return not self.entries

    def __add__(self, other: SuperMap) -> SuperMap:
        if (self.domain, self.codomain) != (other.domain, other.codomain):
            raise ValueError("shape mismatch in map addition")
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.parity != other.parity:
            raise ValueError("cannot add maps of different parity")
        ent = dict(self.entries)
        for k, v in other.entries.items():
            w = ent.get(k, Fraction(0)) + v
            if w:
                ent[k] = w
            else:
                ent.pop(k, None)
        return SuperMap(self.domain, self.codomain, self.parity, ent)

    def __sub__(self, other: SuperMap) -> SuperMap:
        return self + (-1) * other

    def __rmul__(self, scalar) -> SuperMap:
        c = Fraction(scalar)
        if c == 0:
            return SuperMap(self.domain, self.codomain, self.parity, {})
        return SuperMap(
            self.domain, self.codomain, self.parity,
            {k: c * v for k, v in self.entries.items()},
        )

    def __neg__(self) -> SuperMap:
        return (-1) * self

    def __matmul__(self, other: SuperMap) -> SuperMap:
        """Composition self . other (apply ``other`` first)."""
        if other.codomain != self.domain:
            raise ValueError("composition shape mismatch")
        by_row: dict[int, list[tuple[int, Fraction]]] = {}
        for (k, j), v in other.entries.items():
            by_row.setdefault(k, []).append((j, v))
        ent: dict[tuple[int, int], Fraction] = {}
        for (i, k), u in self.entries.items():
            cols = by_row.get(k)
            if not cols:
                continue
            for j, v in cols:
                key = (i, j)
                w = ent.get(key, Fraction(0)) + u * v
                if w:
                    ent[key] = w
                else:
                    ent.pop(key, None)
        return SuperMap(other.domain, self.codomain, (self.parity + other.parity) % 2, ent)

    def apply(self, vec: dict) -> dict[int, Fraction]:
        """Apply to a column vector given as {index: value}."""
        out: dict[int, Fraction] = {}
        by_col: dict[int, list[tuple[int, Fraction]]] = {}
        for (i, j), v in self.entries.items():
            by_col.setdefault(j, []).append((i, v))
        for j, x in vec.items():
            if x == 0:
                continue
            for i, v in by_col.get(j, ()):
                w = out.get(i, Fraction(0)) + v * Fraction(x)
                if w:
                    out[i] = w
                else:
                    out.pop(i, None)
        return out

    def to_rows(self) -> list[list[Fraction]]:
        rows = [[Fraction(0)] * self.domain.dim for _ in range(self.codomain.dim)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    def __repr__(self):
        return (
            f"SuperMap({self.domain.dim}->{self.codomain.dim}, parity={self.parity}, "
            f"nnz={len(self.entries)})"
        )


def identity(V: SuperSpace) -> SuperMap:
    return SuperMap(V, V, EVEN, {(i, i): Fraction(1) for i in range(V.dim)})


def zero_map(U: SuperSpace, V: SuperSpace, parity: int = EVEN) -> SuperMap:
    return SuperMap(U, V, parity, {})


def from_rows(U: SuperSpace, V: SuperSpace, parity: int, rows) -> SuperMap:
    ent = {}
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if v:
                ent[(i, j)] = Fraction(v)
    return SuperMap(U, V, parity, ent)


def column_map(V: SuperSpace, coords: dict, parity: int = EVEN) -> SuperMap:
    """A map from the unit object k picking out the vector ``coords`` in V."""
    return SuperMap(UNIT, V, parity, {(i, 0): v for i, v in coords.items() if v})


def scalar_of(m: SuperMap) -> Fraction:
    """The scalar of a map k -> k."""
    if m.domain.dim != 1 or m.codomain.dim != 1:
        raise ValueError("not an endomorphism of the unit object")
    return m.entry(0, 0)


# -- tensor structure ------------------------------------------------------


def tensor_space(U: SuperSpace, V: SuperSpace) -> SuperSpace:
    """U (x) V with the left-factor-major lexicographic basis order."""
    return SuperSpace(tuple((p + q) % 2 for p in U.parities for q in V.parities))


def tensor_map(f: SuperMap, g: SuperMap) -> SuperMap:
    """Koszul-signed tensor product of maps."""
    dom = tensor_space(f.domain, g.domain)
    cod = tensor_space(f.codomain, g.codomain)
    dg, cg = g.domain.dim, g.codomain.dim
    ent = {}
    for (fi, fj), fv in f.entries.items():
        sign = -1 if (g.parity and f.domain.parities[fj]) else 1
        for (gi, gj), gv in g.entries.items():
            ent[(fi * cg + gi, fj * dg + gj)] = sign * fv * gv
    return SuperMap(dom, cod, (f.parity + g.parity) % 2, ent)


def tensor_many(*maps: SuperMap) -> SuperMap:
    out = maps[0]
    for m in maps[1:]:
        out = tensor_map(out, m)
    return out


def super_permutation(U: SuperSpace, V: SuperSpace) -> SuperMap:
    """tau_{U,V}: U (x) V -> V (x) U, u (x) v |-> (-1)^{p(u)p(v)} v (x) u."""
    dom = tensor_space(U, V)
    cod = tensor_space(V, U)
    ent = {}
    for i, p in enumerate(U.parities):
        for j, q in enumerate(V.parities):
            ent[(j * U.dim + i, i * V.dim + j)] = Fraction(-1 if p and q else 1)
    return SuperMap(dom, cod, EVEN, ent)


# -- duality ---------------------------------------------------------------


def dual_space(V: SuperSpace) -> SuperSpace:
    """The dual basis carries the same parities."""
    return SuperSpace(V.parities)


def super_transpose(f: SuperMap) -> SuperMap:
    """f*: codomain* -> domain*, f*(phi) = (-1)^{p(f) p(phi)} phi . f."""
    ent = {}
    for (i, j), v in f.entries.items():
        sign = -1 if (f.parity and f.codomain.parities[i]) else 1
        ent[(j, i)] = sign * v
    return SuperMap(dual_space(f.codomain), dual_space(f.domain), f.parity, ent)


def ev(V: SuperSpace) -> SuperMap:
    """Left evaluation V* (x) V -> k, phi (x) v |-> phi(v)."""
    ent = {(0, i * V.dim + i): Fraction(1) for i in range(V.dim)}
    return SuperMap(tensor_space(dual_space(V), V), UNIT, EVEN, ent)


def ev_right(V: SuperSpace) -> SuperMap:
    """Right evaluation V (x) V* -> k, v (x) phi |-> (-1)^{p(v)p(phi)} phi(v)."""
    ent = {
        (0, i * V.dim + i): Fraction(-1 if V.parities[i] else 1) for i in range(V.dim)
    }
    return SuperMap(tensor_space(V, dual_space(V)), UNIT, EVEN, ent)


def coev(V: SuperSpace) -> SuperMap:
    """Coevaluation k -> V (x) V*, 1 |-> sum_i v_i (x) v_i^*."""
    ent = {(i * V.dim + i, 0): Fraction(1) for i in range(V.dim)}
    return SuperMap(UNIT, tensor_space(V, dual_space(V)), EVEN, ent)


def double_dual_iso(V: SuperSpace) -> SuperMap:
    """The canonical V -> V**, v |-> (-1)^{p(v)} v** in the dual-dual basis."""
    ent = {
        (i, i): Fraction(-1 if V.parities[i] else 1) for i in range(V.dim)
    }
    return SuperMap(V, dual_space(dual_space(V)), EVEN, ent)


def dual_tensor_iso(U: SuperSpace, V: SuperSpace) -> SuperMap:
    """The canonical U* (x) V* -> (U (x) V)*, with sign (-1)^{p(u_i)p(v_j)}."""
    dom = tensor_space(dual_space(U), dual_space(V))
    cod = dual_space(tensor_space(U, V))
    ent = {}
    for i, p in enumerate(U.parities):
        for j, q in enumerate(V.parities):
            k = i * V.dim + j
            ent[(k, k)] = Fraction(-1 if p and q else 1)
    return SuperMap(dom, cod, EVEN, ent)


# -- traces ----------------------------------------------------------------


def supertrace(f: SuperMap) -> Fraction:
    """str(f) = sum_i (-1)^{p(v_i)} f_ii; requires a square map."""
    if f.domain != f.codomain:
        raise ValueError("supertrace requires domain == codomain")
    total = Fraction(0)
    for i, p in enumerate(f.domain.parities):
        v = f.entries.get((i, i))
        if v:
            total += -v if p else v
    return total


def partial_supertrace(f: SuperMap, U: SuperSpace, V: SuperSpace) -> SuperMap:
    """Contract an endomorphism of U (x) V over the V factor.

    Equals (Id (x) ev_right) . (f (x) Id_{V*}) . (Id (x) coev); entrywise this
    is ptr(f)_{ij} = sum_v (-1)^{p(v)} f_{(i,v),(j,v)}.
    """
    if f.domain != f.codomain or f.domain != tensor_space(U, V):
        raise ValueError("map is not an endomorphism of the given factorization")
    return partial_supertrace_hom(f, U, V, U)


def partial_supertrace_hom(
    h: SuperMap, A: SuperSpace, C: SuperSpace, B: SuperSpace
) -> SuperMap:
    """Generalized partial supertrace Hom(A (x) C, B (x) C) -> Hom(A, B)."""
    if h.domain != tensor_space(A, C) or h.codomain != tensor_space(B, C):
        raise ValueError("map does not fit the requested factorizations")
    dc = C.dim
    ent: dict[tuple[int, int], Fraction] = {}
    for (r, c), v in h.entries.items():
        i, ci = divmod(r, dc)
        j, cj = divmod(c, dc)
        if ci != cj:
            continue
        w = -v if C.parities[ci] else v
        key = (i, j)
        acc = ent.get(key, Fraction(0)) + w
        if acc:
            ent[key] = acc
        else:
            ent.pop(key, None)
    return SuperMap(A, B, h.parity, ent)


def parity_shift(V: SuperSpace) -> tuple[SuperSpace, SuperMap]:
    """The parity-flipped space and the odd isomorphism onto it."""
    flipped = SuperSpace(tuple((p + 1) % 2 for p in V.parities))
    sigma = SuperMap(V, flipped, ODD, {(i, i): Fraction(1) for i in range(V.dim)})
    return flipped, sigma
