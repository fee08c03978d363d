"""Invariant tensors of the adjoint representation and their bilinear forms.

For sl(m|n) the adjoint representation is realized on the supertrace-zero
matrices; the invariant even supersymmetric form is the supertrace form of
the defining representation, b(x, y) = str(xy).  Degree-N invariant tensors
are exact kernels of the generator actions on tensor powers.  The subspaces
reachable from witnessed modules (images of coevaluations under g-linear maps
into tensor powers) carry a second bilinear form built from the modified
supertrace; elements of those subspaces keep their presentations (module,
map, witness) so the form can be evaluated and its presentation independence
checked.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import superlin as sl
from .linalg import RowReducer
from .mtrace import modified_trace
from .repmod import (
    GModule,
    IdealWitness,
    _check_g_linear,
    dual_module,
    hom_space,
    invariant_vectors,
    tensor_module,
)
from .rootdata import RootSystem
from .superlin import SuperMap, SuperSpace


class FormConstructionError(ValueError):
    """The candidate invariant form failed one of its defining axioms."""


def _mat_mul(x: dict, y: dict) -> dict:
    out: dict[tuple[int, int], Fraction] = {}
    for (a, b), u in x.items():
        for (p, q), v in y.items():
            if b == p:
                key = (a, q)
                w = out.get(key, Fraction(0)) + u * v
                if w:
                    out[key] = w
                else:
                    out.pop(key, None)
    return out


def _mat_scomm(x: dict, px: int, y: dict, py: int) -> dict:
    sign = -1 if (px and py) else 1
    out = dict(_mat_mul(x, y))
    for key, v in _mat_mul(y, x).items():
        w = out.get(key, Fraction(0)) - sign * v
        if w:
            out[key] = w
        else:
            out.pop(key, None)
    return out


@dataclass(frozen=True, eq=False)
class AdjointData:
    """The adjoint module of sl(m|n) with its invariant bilinear form.

    basis_matrices realize the chosen homogeneous basis inside the defining
    representation; b is the induced isomorphism g -> g* (columns are the
    form against basis vectors) and gram its matrix.
    """

    rs: RootSystem
    module: GModule
    basis_matrices: tuple[dict, ...]
    gram: tuple[tuple[Fraction, ...], ...]
    b: SuperMap
    b_inv: SuperMap
    _powers: dict = field(default_factory=dict, repr=False)

    @property
    def gdim(self) -> int:
        return self.module.dim

    def parity(self, a: int) -> int:
        return self.module.space.parities[a]

    def b_form(self, x: int, y: int) -> Fraction:
        return self.gram[x][y]

    def power(self, N: int) -> GModule:
        """The N-th tensor power of the adjoint module (memoized)."""
        if N < 1:
            raise ValueError("tensor degree must be at least 1")
        mod = self._powers.get(N)
        if mod is None:
            mod = self.module
            for _ in range(N - 1):
                mod = tensor_module(mod, self.module, check=False)
            self._powers[N] = mod
        return mod


def build_adjoint(rs: RootSystem, check: bool = True) -> AdjointData:
    """Adjoint data for sl(m|n); verifies all four axioms of the form exactly."""
    if rs.family != "sl":
        raise ValueError("adjoint data is only built for sl(m|n)")
    m, n = rs.m, rs.n
    dim = m + n
    r = rs.rank

    basis: list[dict] = []
    parities: list[int] = []
    for p in range(dim):
        for q in range(dim):
            if p != q:
                basis.append({(p, q): Fraction(1)})
                parities.append(1 if (p < m) != (q < m) else 0)
    h_mats = []
    for i in range(r):
        diag = {(i, i): Fraction(1)}
        diag[(i + 1, i + 1)] = Fraction(1 if i == rs.s else -1)
        h_mats.append(diag)
        basis.append(diag)
        parities.append(0)
    gdim = len(basis)
    space = SuperSpace(tuple(parities))

    # Expansion of a supertraceless matrix over the chosen basis: off-diagonal
    # entries index directly, the diagonal solves against the h matrices.
    diag_reducer = RowReducer()
    for hm in h_mats:
        diag_reducer.add({p: v for (p, _), v in hm.items()})
    n_offdiag = gdim - r

    def expand(mat: dict) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        diag: dict[int, Fraction] = {}
        k = 0
        pos = {}
        for p in range(dim):
            for q in range(dim):
                if p != q:
                    pos[(p, q)] = k
                    k += 1
        for (p, q), v in mat.items():
            if p == q:
                diag[p] = v
            else:
                out[pos[(p, q)]] = v
        if diag:
            for idx, c in diag_reducer.coords(diag).items():
                if c:
                    out[n_offdiag + idx] = c
        return out

    def std_gen(kind: str, i: int) -> tuple[dict, int]:
        par = 1 if i == rs.s else 0
        if kind == "e":
            return {(i, i + 1): Fraction(1)}, par
        if kind == "f":
            return {(i + 1, i): Fraction(1)}, par
        return h_mats[i], 0

    def ad_map(kind: str, i: int) -> SuperMap:
        x, par = std_gen(kind, i)
        ent: dict[tuple[int, int], Fraction] = {}
        for col in range(gdim):
            image = _mat_scomm(x, par, basis[col], parities[col])
            for row, v in expand(image).items():
                ent[(row, col)] = v
        return SuperMap(space, space, par, ent)

    weights = []
    h_diag_vec = []
    for i in range(r):
        dvec = [Fraction(0)] * dim
        for (p, _), v in h_mats[i].items():
            dvec[p] = v
        h_diag_vec.append(dvec)
    k = 0
    for p in range(dim):
        for q in range(dim):
            if p != q:
                weights.append(
                    tuple(h_diag_vec[i][p] - h_diag_vec[i][q] for i in range(r))
                )
                k += 1
    weights.extend([tuple(Fraction(0) for _ in range(r))] * r)

    from .repmod import _make_module

    module = _make_module(
        rs, space,
        [ad_map("e", i) for i in range(r)],
        [ad_map("f", i) for i in range(r)],
        [ad_map("h", i) for i in range(r)],
        weights, f"adj({m}|{n})", None, check,
    )

    sign_eps = [1 if p < m else -1 for p in range(dim)]

    def str_of(mat: dict) -> Fraction:
        return sum((sign_eps[p] * v for (p, q), v in mat.items() if p == q), Fraction(0))

    gram = tuple(
        tuple(str_of(_mat_mul(basis[a], basis[b])) for b in range(gdim))
        for a in range(gdim)
    )
    b_ent = {}
    for j in range(gdim):
        for i in range(gdim):
            if gram[j][i]:
                b_ent[(i, j)] = gram[j][i]
    b = SuperMap(space, sl.dual_space(space), 0, b_ent)

    if check:
        for a in range(gdim):
            for c in range(gdim):
                if parities[a] != parities[c] and gram[a][c] != 0:
                    raise FormConstructionError("form is not even")
                sign = -1 if (parities[a] and parities[c]) else 1
                if gram[c][a] != sign * gram[a][c]:
                    raise FormConstructionError("form is not supersymmetric")
        dual = dual_module(module, check=False)
        if not _check_g_linear(b, module, dual):
            raise FormConstructionError("form is not invariant")

    # Dense inverse of b (non-degeneracy check included).
    rows = [[Fraction(0)] * gdim for _ in range(gdim)]
    for (i, j), v in b_ent.items():
        rows[i][j] = v
    inv = [[Fraction(1 if i == j else 0) for j in range(gdim)] for i in range(gdim)]
    for col in range(gdim):
        piv = next((i for i in range(col, gdim) if rows[i][col] != 0), None)
        if piv is None:
            raise FormConstructionError("form is degenerate")
        rows[col], rows[piv] = rows[piv], rows[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        scale = rows[col][col]
        rows[col] = [v / scale for v in rows[col]]
        inv[col] = [v / scale for v in inv[col]]
        for i in range(gdim):
            if i != col and rows[i][col] != 0:
                factor = rows[i][col]
                rows[i] = [u - factor * v for u, v in zip(rows[i], rows[col])]
                inv[i] = [u - factor * v for u, v in zip(inv[i], inv[col])]
    b_inv = SuperMap(
        sl.dual_space(space), space, 0,
        {
            (i, j): inv[i][j]
            for i in range(gdim)
            for j in range(gdim)
            if inv[i][j]
        },
    )
    return AdjointData(rs, module, tuple(basis), gram, b, b_inv)


# -- invariant tensors ---------------------------------------------------------


def invariant_tensors(adj: AdjointData, N: int, cap: int = 4):
    """Bases of the even and odd invariant tensors of degree N.

    Returns (even_basis, odd_basis) as sparse coordinate vectors over the
    lexicographic basis of the N-th adjoint tensor power.  The odd basis is
    empty for these algebras; it is computed rather than assumed so the
    evenness statement is a checked result.
    """
    if N > cap:
        raise ValueError(f"degree {N} exceeds the configured cap {cap}")
    power = adj.power(N)
    return invariant_vectors(power, 0), invariant_vectors(power, 1)


def power_action_apply(adj: AdjointData, N: int, gen: SuperMap, coords: dict) -> dict:
    """Apply a generator to a degree-N coordinate vector without building g^N maps.

    Acts factorwise with the Koszul sign of the generator against the parities
    of the leading factors.
    """
    gdim = adj.gdim
    par = adj.module.space.parities
    by_col: dict[int, list] = {}
    for (i, j), v in gen.entries.items():
        by_col.setdefault(j, []).append((i, v))
    out: dict[int, Fraction] = {}
    for flat, c in coords.items():
        digits = []
        rest = flat
        for _ in range(N):
            rest, d = divmod(rest, gdim)
            digits.append(d)
        digits.reverse()
        lead_parity = 0
        for pos in range(N):
            sign = -1 if (gen.parity and lead_parity % 2) else 1
            for i, v in by_col.get(digits[pos], ()):
                new = list(digits)
                new[pos] = i
                key = 0
                for d in new:
                    key = key * gdim + d
                w = out.get(key, Fraction(0)) + sign * v * c
                if w:
                    out[key] = w
                else:
                    out.pop(key, None)
            lead_parity += par[digits[pos]]
    return out


def is_invariant(adj: AdjointData, N: int, coords: dict) -> bool:
    gens = adj.module.e + adj.module.f + adj.module.h
    return all(not power_action_apply(adj, N, g, coords) for g in gens)


def tensor_coords(u: dict, v: dict, vdim: int) -> dict:
    """Concatenation u (x) v of coordinate vectors (no signs for vectors)."""
    return {a * vdim + b: x * y for a, x in u.items() for b, y in v.items()}


# -- the extended supersymmetric form ------------------------------------------


def extended_form(
    adj: AdjointData, t1: dict, n1: int, t2: dict, n2: int
) -> Fraction:
    """The signed product extension of b to tensor degrees (0 across degrees).

    On pure tensors of equal degree k the value is
    prod_i (-1)^{sum_{j>i} p(x_j) p(x'_i)} b(x_i, x'_i), extended bilinearly.
    """
    if n1 != n2:
        return Fraction(0)
    gdim = adj.gdim
    par = adj.module.space.parities

    def digits_of(flat: int) -> list[int]:
        out = []
        for _ in range(n1):
            flat, d = divmod(flat, gdim)
            out.append(d)
        out.reverse()
        return out

    total = Fraction(0)
    items2 = [(digits_of(flat), c) for flat, c in t2.items()]
    for flat1, c1 in t1.items():
        d1 = digits_of(flat1)
        tail_parity = [0] * (n1 + 1)
        for i in range(n1 - 1, -1, -1):
            tail_parity[i] = tail_parity[i + 1] + par[d1[i]]
        for d2, c2 in items2:
            prod = c1 * c2
            exponent = 0
            for i in range(n1):
                v = adj.gram[d1[i]][d2[i]]
                if v == 0:
                    prod = Fraction(0)
                    break
                prod *= v
                exponent += tail_parity[i + 1] * par[d2[i]]
            if prod:
                total += -prod if exponent % 2 else prod
    return total


# -- presented invariant tensors (images of coevaluations) ----------------------


@dataclass(frozen=True, eq=False)
class PresentedTensor:
    """An invariant tensor together with the data presenting it.

    coords are the coordinates of f(coev_V(1)) in the degree-N power; f is an
    even g-linear map V (x) V* -> g^{(x)N} and witness certifies V.
    """

    degree: int
    coords: dict
    f: SuperMap
    witness: IdealWitness

    @property
    def module(self) -> GModule:
        return self.witness.V


@dataclass(frozen=True, eq=False)
class ITSubspace:
    """The reachable subspace of degree-N invariant tensors for a probe set."""

    degree: int
    elements: tuple[PresentedTensor, ...]  # linearly independent spanning set
    raw: tuple[PresentedTensor, ...]       # everything produced, with duplicates


def coev_coords(V: GModule) -> dict:
    return {i * V.dim + i: Fraction(1) for i in range(V.dim)}


def presented_tensor(adj: AdjointData, N: int, w: IdealWitness, f: SuperMap) -> PresentedTensor:
    coords = f.apply(coev_coords(w.V))
    return PresentedTensor(N, coords, f, w)


def it_space(adj: AdjointData, N: int, probes: list[IdealWitness]) -> ITSubspace:
    """Span the degree-N tensors reachable from the witnessed probe modules."""
    power = adj.power(N)
    raw: list[PresentedTensor] = []
    for w in probes:
        vv = tensor_module(w.V, dual_module(w.V, check=False), check=False)
        for f in hom_space(vv, power, 0):
            raw.append(presented_tensor(adj, N, w, f))
    reducer = RowReducer()
    independent = [t for t in raw if t.coords and reducer.add(t.coords)]
    return ITSubspace(N, tuple(independent), tuple(raw))


def it_sum(
    adj: AdjointData, t1: PresentedTensor, t2: PresentedTensor, lam
) -> PresentedTensor:
    """Present t1 + lam * t2 through the direct sum of the probe modules.

    Requires the two witnesses to share a core module; the presenting map acts
    blockwise on (V1 (+) V2) (x) (V1 (+) V2)*.
    """
    from .repmod import witness_dsum

    if t1.degree != t2.degree:
        raise ValueError("cannot sum tensors of different degree")
    lam = Fraction(lam)
    w = witness_dsum(t1.witness, t2.witness)
    V1, V2 = t1.module, t2.module
    d1, d2 = V1.dim, V2.dim
    d = d1 + d2
    ent: dict[tuple[int, int], Fraction] = {}
    for (row, col), v in t1.f.entries.items():
        i, j = divmod(col, d1)
        ent[(row, i * d + j)] = v
    for (row, col), v in t2.f.entries.items():
        i, j = divmod(col, d2)
        ent[(row, (d1 + i) * d + (d1 + j))] = lam * v
    vv = sl.tensor_space(w.V.space, sl.dual_space(w.V.space))
    f = SuperMap(vv, t1.f.codomain, 0, ent)
    return presented_tensor(adj, t1.degree, w, f)


def it_product(
    adj: AdjointData, t_inv: dict, m_deg: int, t1: PresentedTensor
) -> PresentedTensor:
    """Present t_inv (x) t1 (t_inv any invariant tensor) through t1's module."""
    f = sl.tensor_map(sl.column_map(adj.power(m_deg).space, t_inv), t1.f)
    f = SuperMap(t1.f.domain, adj.power(m_deg + t1.degree).space, 0, dict(f.entries))
    return presented_tensor(adj, m_deg + t1.degree, t1.witness, f)


# -- the modified bilinear form --------------------------------------------------


def _b_power(adj: AdjointData, N: int) -> SuperMap:
    out = adj.b
    for _ in range(N - 1):
        out = sl.tensor_map(out, adj.b)
    return out


def _iota_chain(adj: AdjointData, N: int) -> SuperMap:
    """(g*)^(x)N -> (g^(x)N)* via iterated two-factor dual isomorphisms."""
    g = adj.module.space
    out = sl.identity(sl.dual_space(g))
    left = g
    for _ in range(N - 1):
        step = sl.dual_tensor_iso(left, g)
        out = step @ sl.tensor_map(out, sl.identity(sl.dual_space(g)))
        left = sl.tensor_space(left, g)
    return out


def _invert_diag(m: SuperMap) -> SuperMap:
    ent = {}
    for (i, j), v in m.entries.items():
        if i != j:
            raise ValueError("not a diagonal map")
        ent[(i, j)] = 1 / v
    return SuperMap(m.codomain, m.domain, m.parity, ent)


def dualizing_map(adj: AdjointData, N: int) -> SuperMap:
    """b~ = iota . b^(x)N: g^(x)N -> (g^(x)N)*, the form as an isomorphism."""
    return _iota_chain(adj, N) @ _b_power(adj, N)


def presented_endo(adj: AdjointData, t1: PresentedTensor, t2_coords: dict) -> SuperMap:
    """The endomorphism of t1's module classifying the pairing against t2.

    Composite of f1*, the duality identifications and the evaluation: an
    element of Hom(k, V1* (x) V1) turned into End(V1); its modified trace
    gives the value of the modified form.
    """
    V1 = t1.module
    N = t1.degree
    t2 = sl.column_map(t1.f.codomain, t2_coords)
    fstar = sl.super_transpose(t1.f)
    vspace = V1.space
    dual_v = sl.dual_space(vspace)
    iota2 = sl.dual_tensor_iso(vspace, dual_v)
    unpack = _invert_diag(iota2)  # (V1 (x) V1*)* -> V1* (x) V1**
    c_inv = _invert_diag(sl.double_dual_iso(vspace))  # V1** -> V1
    s = sl.tensor_map(sl.identity(dual_v), c_inv) @ unpack @ fstar @ dualizing_map(adj, N) @ t2
    inner = sl.tensor_map(sl.identity(vspace), s)  # V1 = V1 (x) k -> V1 (x) V1* (x) V1
    contract = sl.tensor_map(sl.ev_right(vspace), sl.identity(vspace))
    return contract @ inner


def modified_form(
    adj: AdjointData, t1: PresentedTensor, t2: PresentedTensor
) -> Fraction:
    """The modified bilinear form on presented invariant tensors."""
    if t1.degree != t2.degree:
        return Fraction(0)
    endo = presented_endo(adj, t1, t2.coords)
    return modified_trace(endo, t1.witness)


def classical_form_routes(
    adj: AdjointData, t1: PresentedTensor, t2_coords: dict
) -> tuple[Fraction, Fraction]:
    """The pairing of t1 against an invariant tensor, by both routes.

    Returns (extended-form value, supertrace of the presented endomorphism);
    the two agree, and both vanish when t2 is invariant.
    """
    value_ext = extended_form(adj, t1.coords, t1.degree, t2_coords, t1.degree)
    value_str = sl.supertrace(presented_endo(adj, t1, t2_coords))
    return value_ext, value_str


def classical_form_vanishes(
    adj: AdjointData, t1: PresentedTensor, t2_coords: dict
) -> bool:
    """Whether the classical pairing of t1 against an invariant tensor is zero.

    Evaluates both routes (the signed product formula and the supertrace of
    the presented endomorphism), insists they agree, and reports vanishing.
    """
    value_ext, value_str = classical_form_routes(adj, t1, t2_coords)
    if value_ext != value_str:
        raise FormConstructionError(
            f"pairing routes disagree ({value_ext} vs {value_str})"
        )
    return value_ext == 0


def pairing_as_composite(
    adj: AdjointData, t1_coords: dict, t2_coords: dict, N: int
) -> Fraction:
    """<t1* . b~ . t2> computed purely by map composition (for cross-checks)."""
    space = adj.power(N).space
    t1 = sl.column_map(space, t1_coords)
    t2 = sl.column_map(space, t2_coords)
    comp = sl.super_transpose(t1) @ dualizing_map(adj, N) @ t2
    return sl.scalar_of(comp)


# -- symmetric group action and functorial adjoints ------------------------------


def sn_action_map(adj: AdjointData, N: int, perm: tuple[int, ...]) -> SuperMap:
    """The signed action of a permutation on the degree-N power.

    ``perm[i]`` is the slot the i-th factor moves to; built from adjacent
    super permutations, so all Koszul signs come from the primitive tau.
    """
    if sorted(perm) != list(range(N)):
        raise ValueError("not a permutation")
    g = adj.module.space
    out = sl.identity(adj.power(N).space)
    current = list(perm)
    # Bubble: repeatedly swap adjacent slots until sorted.
    changed = True
    while changed:
        changed = False
        for i in range(N - 1):
            if current[i] > current[i + 1]:
                left = adj.power(i).space if i else sl.UNIT
                right = adj.power(N - i - 2).space if N - i - 2 else sl.UNIT
                swap = sl.tensor_many(
                    sl.identity(left), sl.super_permutation(g, g), sl.identity(right)
                )
                swap = SuperMap(out.codomain, out.codomain, 0, dict(swap.entries))
                out = swap @ out
                current[i], current[i + 1] = current[i + 1], current[i]
                changed = True
    return out


def sn_action(
    adj: AdjointData, N: int, perm: tuple[int, ...], t: PresentedTensor
) -> PresentedTensor:
    """Apply a permutation to a presented tensor, keeping a valid presentation."""
    pmap = sn_action_map(adj, N, perm)
    return PresentedTensor(N, pmap.apply(t.coords), pmap @ t.f, t.witness)


def adjoint_via_form(adj: AdjointData, G: SuperMap, m_deg: int, n_deg: int) -> SuperMap:
    """The adjoint of G: g^(x)M -> g^(x)N with respect to the extended form."""
    bm_inv = adj.b_inv
    binv_pow = bm_inv
    for _ in range(m_deg - 1):
        binv_pow = sl.tensor_map(binv_pow, bm_inv)
    iota_m_inv = _invert_diag(_iota_chain(adj, m_deg))
    return binv_pow @ iota_m_inv @ sl.super_transpose(G) @ dualizing_map(adj, n_deg)


def pairing_map(adj: AdjointData) -> SuperMap:
    """g (x) g -> k given by the form itself (a b-contraction)."""
    g = adj.module.space
    ent = {}
    for a in range(adj.gdim):
        for bb in range(adj.gdim):
            v = adj.gram[a][bb]
            if v:
                ent[(0, a * adj.gdim + bb)] = v
    return SuperMap(sl.tensor_space(g, g), sl.UNIT, 0, ent)


def casimir_coords(adj: AdjointData) -> dict:
    """The form-inverse tensor sum_i x_i (x) x^i in g (x) g coordinates."""
    ent = {}
    for a in range(adj.gdim):
        for bb in range(adj.gdim):
            v = adj.b_inv.entry(bb, a)
            if v:
                ent[a * adj.gdim + bb] = v
    return ent
