"""Explicit finite-dimensional sl(m|n)-modules and morphism machinery.

A module is a tuple of generator matrices (e_i, f_i, h_i as SuperMaps) on a
based super-space, together with the simultaneous h-eigenvalue of every basis
vector.  Every constructor verifies the Chevalley relations

    [e_i, f_j] = delta_ij h_i,   [h_i, e_j] = a_ij e_j,
    [h_i, f_j] = -a_ij f_j,      [h_i, h_j] = 0,

as exact matrix identities (super-commutators) and aborts on failure, so a
module object is always a certified representation of the generator algebra.

Kac modules for typical dominant weights are induced from the even part: the
simple gl(m) x gl(n) module with the matching highest weight is built inside
tensor powers of the defining representations, the one-dimensional central
character absorbs the free coordinate a_s, and the induced action on the
exterior algebra of the odd lowering space is computed by commuting generators
through the wedge factors.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass
from fractions import Fraction

from . import superlin as sl
from .exactnum import rat_str
from .linalg import RowReducer, nullspace
from .rootdata import RootSystem, Weight
from .superlin import SuperMap, SuperSpace

CONSTRUCTION_VERSION = 1


class ModuleRelationError(AssertionError):
    """A constructed module failed the exact generator-relation check."""


class ModuleIntegrityError(ValueError):
    """A cached module failed verification after loading."""


class WitnessNotFoundError(RuntimeError):
    """No splitting through V0 (x) W was found with the canonical W.

    This records a failed search, not a proof that the module lies outside
    the ideal generated by typical modules.
    """


@dataclass(frozen=True, eq=False)
class GModule:
    """Generator matrices on a based super-space with recorded basis weights."""

    rs: RootSystem
    space: SuperSpace
    e: tuple[SuperMap, ...]
    f: tuple[SuperMap, ...]
    h: tuple[SuperMap, ...]
    basis_weights: tuple[tuple[Fraction, ...], ...]
    name: str = ""
    highest_weight: Weight | None = None

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def sdim(self) -> int:
        return self.space.sdim

    def gens(self) -> tuple[SuperMap, ...]:
        return self.e + self.f + self.h

    def weight(self, i: int) -> tuple[Fraction, ...]:
        return self.basis_weights[i]

    def __repr__(self):
        return f"GModule({self.name or 'unnamed'}, dim={self.dim}, sdim={self.sdim})"


def _scomm(x: SuperMap, y: SuperMap) -> SuperMap:
    sign = -1 if (x.parity and y.parity) else 1
    return x @ y - sign * (y @ x)


def verify_relations(mod: GModule) -> None:
    """Exact check of all Chevalley relations; raises ModuleRelationError."""
    rs = mod.rs
    r = rs.rank
    for i in range(r):
        hm = mod.h[i]
        for (a, b), v in hm.entries.items():
            if a != b:
                raise ModuleRelationError(f"{mod.name}: h_{i} is not diagonal")
            if v != mod.basis_weights[a][i]:
                raise ModuleRelationError(
                    f"{mod.name}: h_{i} eigenvalue mismatch at basis vector {a}"
                )
        for a, wts in enumerate(mod.basis_weights):
            if wts[i] != hm.entry(a, a):
                raise ModuleRelationError(
                    f"{mod.name}: basis weight {a} disagrees with h_{i}"
                )
    for i in range(r):
        for j in range(r):
            lhs = _scomm(mod.e[i], mod.f[j])
            rhs = mod.h[i] if i == j else sl.zero_map(mod.space, mod.space)
            if lhs != rhs and not (lhs.is_zero() and rhs.is_zero()):
                raise ModuleRelationError(f"{mod.name}: [e_{i}, f_{j}] relation failed")
            he = _scomm(mod.h[i], mod.e[j]) - rs.cartan.a[i][j] * mod.e[j]
            hf = _scomm(mod.h[i], mod.f[j]) + rs.cartan.a[i][j] * mod.f[j]
            if not he.is_zero() or not hf.is_zero():
                raise ModuleRelationError(f"{mod.name}: [h_{i}, x_{j}] relation failed")


def _make_module(rs, space, e, f, h, weights, name, hw=None, check=True) -> GModule:
    mod = GModule(rs, space, tuple(e), tuple(f), tuple(h), tuple(weights), name, hw)
    if check:
        verify_relations(mod)
    return mod


# -- basic constructions -----------------------------------------------------


def trivial_module(rs: RootSystem, parity: int = 0, check: bool = True) -> GModule:
    space = SuperSpace((parity,))
    zero = [sl.zero_map(space, space, 1 if i == rs.s else 0) for i in range(rs.rank)]
    zeroh = [sl.zero_map(space, space) for _ in range(rs.rank)]
    wt = (tuple(Fraction(0) for _ in range(rs.rank)),)
    name = "C(1|0)" if parity == 0 else "C(0|1)"
    hw = Weight(wt[0]) if parity == 0 else None
    return _make_module(rs, space, zero, zero, zeroh, wt, name, hw, check)


def standard_module(rs: RootSystem, check: bool = True) -> GModule:
    """The defining sl(m|n)-module C^{m|n} with elementary-matrix generators."""
    if rs.family != "sl":
        raise ValueError("standard matrix module is only built for sl(m|n)")
    m, n = rs.m, rs.n
    dim = m + n
    space = SuperSpace(tuple(0 if k < m else 1 for k in range(dim)))
    s = rs.s
    e, f, h, diags = [], [], [], []
    for i in range(rs.rank):
        par = 1 if i == s else 0
        e.append(SuperMap(space, space, par, {(i, i + 1): Fraction(1)}))
        f.append(SuperMap(space, space, par, {(i + 1, i): Fraction(1)}))
        diag = [Fraction(0)] * dim
        diag[i] = Fraction(1)
        diag[i + 1] = Fraction(1 if i == s else -1)
        diags.append(diag)
        h.append(
            SuperMap(space, space, 0, {(k, k): diag[k] for k in range(dim) if diag[k]})
        )
    weights = tuple(tuple(diags[i][k] for i in range(rs.rank)) for k in range(dim))
    hw = Weight(weights[0])
    return _make_module(rs, space, e, f, h, weights, f"std({m}|{n})", hw, check)


def dual_module(V: GModule, check: bool = True) -> GModule:
    """Dual action x.phi = -(-1)^{p(x)p(phi)} phi . x (antipode is negation)."""
    space = sl.dual_space(V.space)
    dualize = lambda x: -1 * sl.super_transpose(x)
    weights = tuple(tuple(-w for w in wt) for wt in V.basis_weights)
    return _make_module(
        V.rs, space,
        [dualize(x) for x in V.e], [dualize(x) for x in V.f], [dualize(x) for x in V.h],
        weights, f"({V.name})*", None, check,
    )


def tensor_module(V: GModule, W: GModule, check: bool = True) -> GModule:
    """Tensor action x.(v (x) w) = x.v (x) w + (-1)^{p(x)p(v)} v (x) x.w."""
    if V.rs != W.rs:
        raise ValueError("tensor factors must live over the same algebra")
    idv, idw = sl.identity(V.space), sl.identity(W.space)
    act = lambda xv, xw: sl.tensor_map(xv, idw) + sl.tensor_map(idv, xw)
    space = sl.tensor_space(V.space, W.space)
    weights = tuple(
        tuple(a + b for a, b in zip(wv, ww))
        for wv in V.basis_weights
        for ww in W.basis_weights
    )
    hw = None
    if V.highest_weight is not None and W.highest_weight is not None:
        hw = Weight(tuple(a + b for a, b in zip(V.highest_weight.a, W.highest_weight.a)))
    return _make_module(
        V.rs, space,
        [act(a, b) for a, b in zip(V.e, W.e)],
        [act(a, b) for a, b in zip(V.f, W.f)],
        [act(a, b) for a, b in zip(V.h, W.h)],
        weights, f"{V.name}(x){W.name}", hw, check,
    )


def direct_sum_module(V: GModule, W: GModule, check: bool = True) -> GModule:
    if V.rs != W.rs:
        raise ValueError("direct summands must live over the same algebra")
    space = SuperSpace(V.space.parities + W.space.parities)
    dv = V.dim

    def block(a: SuperMap, b: SuperMap) -> SuperMap:
        ent = dict(a.entries)
        for (i, j), v in b.entries.items():
            ent[(i + dv, j + dv)] = v
        return SuperMap(space, space, a.parity, ent)

    return _make_module(
        V.rs, space,
        [block(a, b) for a, b in zip(V.e, W.e)],
        [block(a, b) for a, b in zip(V.f, W.f)],
        [block(a, b) for a, b in zip(V.h, W.h)],
        V.basis_weights + W.basis_weights, f"{V.name}(+){W.name}", None, check,
    )


def parity_shift_module(V: GModule, check: bool = True) -> GModule:
    """The same underlying action with all parities flipped.

    Odd generators are negated so that the identity matrix with an odd parity
    tag is a g-linear isomorphism onto the shifted module.
    """
    space, _ = sl.parity_shift(V.space)

    def shift(x: SuperMap) -> SuperMap:
        ent = {k: (-v if x.parity else v) for k, v in x.entries.items()}
        return SuperMap(space, space, x.parity, ent)

    return _make_module(
        V.rs, space,
        [shift(x) for x in V.e], [shift(x) for x in V.f], [shift(x) for x in V.h],
        V.basis_weights, f"op({V.name})", None, check,
    )


def sigma_map(V: GModule) -> SuperMap:
    """The odd g-linear isomorphism V -> parity_shift_module(V)."""
    return sl.parity_shift(V.space)[1]


def sigma_inverse(V: GModule) -> SuperMap:
    flipped, _ = sl.parity_shift(V.space)
    return SuperMap(flipped, V.space, sl.ODD, {(i, i): Fraction(1) for i in range(V.dim)})


# -- simple gl(k) modules inside tensor powers -------------------------------


def _weyl_dim(lam: list[int]) -> int:
    k = len(lam)
    num = den = 1
    for i in range(k):
        for j in range(i + 1, k):
            num *= lam[i] - lam[j] + j - i
            den *= j - i
    return num // den


def _gl_simple_module(k: int, amu: tuple[int, ...]):
    """All gl(k) matrix-unit actions on the simple module with sl-weight amu.

    Returns (dim, units, weights) where units[(a, b)] is the sparse matrix of
    E_ab in the generated basis and weights[v] is the gl-weight (occupation
    vector) of basis vector v.  Realized inside (C^k)^{(x) d} by generating
    from the column-antisymmetrized highest weight vector.
    """
    lam = [sum(amu[i:]) for i in range(k - 1)] + [0]

    def flat(t: tuple[int, ...]) -> int:
        idx = 0
        for digit in t:
            idx = idx * k + digit
        return idx

    # Highest weight vector: tensor over columns of wedge(e_1..e_height).
    from itertools import permutations

    hw: dict[tuple[int, ...], Fraction] = {(): Fraction(1)}
    heights = [sum(1 for row in lam if row > c) for c in range(lam[0] if lam else 0)]
    for hgt in heights:
        new: dict[tuple[int, ...], Fraction] = {}
        for perm in permutations(range(hgt)):
            sign = 1
            for a in range(hgt):
                for b in range(a + 1, hgt):
                    if perm[a] > perm[b]:
                        sign = -sign
            for t, c in hw.items():
                new[t + perm] = new.get(t + perm, Fraction(0)) + sign * c
        hw = {t: c for t, c in new.items() if c}

    def unit_apply(a: int, b: int, vec: dict) -> dict:
        out: dict[tuple[int, ...], Fraction] = {}
        for t, c in vec.items():
            for pos, digit in enumerate(t):
                if digit == b:
                    u = t[:pos] + (a,) + t[pos + 1 :]
                    w = out.get(u, Fraction(0)) + c
                    if w:
                        out[u] = w
                    else:
                        out.pop(u, None)
        return out

    def flatten(vec: dict) -> dict[int, Fraction]:
        return {flat(t): c for t, c in vec.items()}

    reducer = RowReducer()
    reducer.add(flatten(hw))
    basis = [hw]
    frontier = [hw]
    while frontier:
        nxt = []
        for vec in frontier:
            for i in range(k - 1):
                image = unit_apply(i + 1, i, vec)
                if image and reducer.add(flatten(image)):
                    basis.append(image)
                    nxt.append(image)
        frontier = nxt
    dim = len(basis)
    if dim != _weyl_dim(lam):
        raise ModuleRelationError("generated gl module has unexpected dimension")

    weights = []
    for vec in basis:
        t = next(iter(vec))
        weights.append(tuple(sum(1 for d in t if d == a) for a in range(k)))

    units: dict[tuple[int, int], dict[tuple[int, int], Fraction]] = {}
    for a in range(k):
        for b in range(k):
            ent: dict[tuple[int, int], Fraction] = {}
            for col, vec in enumerate(basis):
                image = unit_apply(a, b, vec)
                if not image:
                    continue
                for row, v in reducer.coords(flatten(image)).items():
                    if v:
                        ent[(row, col)] = v
            units[(a, b)] = ent
    return dim, units, weights


# -- Kac modules ---------------------------------------------------------------


def kac_module(rs: RootSystem, lam: Weight, check: bool = True) -> GModule:
    """The Kac module K(lam) for a typical finite-dominant weight of sl(m|n).

    Induced from the simple module of the even part: the underlying space is
    the exterior algebra on the odd lowering root vectors tensored with the
    gl(m) x gl(n) simple module, the central character is fixed by a_s, and
    generator matrices are obtained by commuting through the wedge factors.
    For typical lam this is the irreducible highest weight module.
    """
    if rs.family != "sl":
        raise ValueError("Kac modules are only constructed for sl(m|n)")
    if not rs.is_dominant_finite(lam):
        raise ValueError(f"weight {lam} is not dominant with natural a_i (i != s)")
    from .rootdata import AtypicalWeightError

    if not rs.is_typical(lam):
        raise AtypicalWeightError(f"weight {lam} is atypical; Kac module not simple")

    m, n, r, s = rs.m, rs.n, rs.rank, rs.s
    amu_m = tuple(int(lam.a[i]) for i in range(m - 1))
    amu_n = tuple(int(lam.a[i]) for i in range(m, r))
    dm, units_m, wts_m = _gl_simple_module(m, amu_m)
    dn, units_n, wts_n = _gl_simple_module(n, amu_n)
    dim_v0 = dm * dn
    deg_m = sum(wts_m[0])
    deg_n = sum(wts_n[0])
    s_m = Fraction(wts_m[0][m - 1]) - Fraction(deg_m, m)
    s_n = Fraction(wts_n[0][0]) - Fraction(deg_n, n)
    c_z = m * n * (lam.a[s] - s_m - s_n)

    units_m_bycol: dict[tuple[int, int], dict[int, list]] = {}
    for key, ent in units_m.items():
        bycol: dict[int, list] = {}
        for (row, col), v in ent.items():
            bycol.setdefault(col, []).append((row, v))
        units_m_bycol[key] = bycol
    units_n_bycol: dict[tuple[int, int], dict[int, list]] = {}
    for key, ent in units_n.items():
        bycol: dict[int, list] = {}
        for (row, col), v in ent.items():
            bycol.setdefault(col, []).append((row, v))
        units_n_bycol[key] = bycol

    def even_apply(mat: dict, k: int) -> dict[int, Fraction]:
        """Apply a block-diagonal supertraceless (m+n)-matrix to V0 basis vector k.

        The traceless block parts act through the recorded gl matrix units;
        the scalar part (proportional to the center) acts by the character
        fixed by a_s.  Diagonal units act by gl-weights, so the whole
        diagonal contribution is a scalar on each basis vector.
        """
        im, jn = divmod(k, dn)
        trace = sum(
            (v for (p, q), v in mat.items() if p == q and p < m), Fraction(0)
        )
        out: dict[int, Fraction] = {}

        def accumulate(idx: int, v: Fraction):
            if v:
                w = out.get(idx, Fraction(0)) + v
                if w:
                    out[idx] = w
                else:
                    out.pop(idx, None)

        diag = trace * c_z / (m * n)  # center character
        diag -= trace * Fraction(deg_m, m) + trace * Fraction(deg_n, n)
        for (p, q), v in mat.items():
            if p == q:
                if p < m:
                    diag += v * wts_m[im][p]
                else:
                    diag += v * wts_n[jn][p - m]
            elif p < m and q < m:
                for row, u in units_m_bycol[(p, q)].get(im, ()):
                    accumulate(row * dn + jn, v * u)
            elif p >= m and q >= m:
                for row, u in units_n_bycol[(p - m, q - m)].get(jn, ()):
                    accumulate(im * dn + row, v * u)
        accumulate(k, diag)
        return out

    mn = m * n

    def y_matrix(c: int) -> dict:
        i, j = divmod(c, n)
        return {(m + j, i): Fraction(1)}

    def mat_scomm(x: dict, px: int, y: dict) -> dict:
        # [x, y] with y odd: x y - (-1)^{px} y x, as (m+n)-square matrices.
        out: dict[tuple[int, int], Fraction] = {}

        def accumulate(key, v):
            if v:
                w = out.get(key, Fraction(0)) + v
                if w:
                    out[key] = w
                else:
                    out.pop(key, None)

        for (a, b), u in x.items():
            for (p, q), v in y.items():
                if b == p:
                    accumulate((a, q), u * v)
        sign = -1 if px else 1
        for (p, q), v in y.items():
            for (a, b), u in x.items():
                if q == a:
                    accumulate((p, b), -sign * v * u)
        return out

    ys = [y_matrix(c) for c in range(mn)]

    def wedge(c: int, vec: dict[int, Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for idx, v in vec.items():
            mask, k = divmod(idx, dim_v0)
            if mask & (1 << c):
                continue
            below = bin(mask & ((1 << c) - 1)).count("1")
            sign = -1 if below % 2 else 1
            key = (mask | (1 << c)) * dim_v0 + k
            w = out.get(key, Fraction(0)) + sign * v
            if w:
                out[key] = w
            else:
                out.pop(key, None)
        return out

    def act(x: dict, px: int, mask: int, k: int) -> dict[int, Fraction]:
        if not x:
            return {}
        if mask == 0:
            out: dict[int, Fraction] = {}
            even_part: dict[tuple[int, int], Fraction] = {}
            for (p, q), v in x.items():
                if p >= m and q < m:  # odd lowering block: wedge on a new factor
                    c = q * n + (p - m)
                    key = (1 << c) * dim_v0 + k
                    out[key] = out.get(key, Fraction(0)) + v
                elif (p < m) == (q < m):
                    even_part[(p, q)] = v
                # odd raising block annihilates the vacuum factor
            if even_part:
                for idx, v in even_apply(even_part, k).items():
                    w = out.get(idx, Fraction(0)) + v
                    if w:
                        out[idx] = w
                    else:
                        out.pop(idx, None)
            return {key: v for key, v in out.items() if v}
        c = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << c)
        bracket = mat_scomm(x, px, ys[c])
        out = act(bracket, (px + 1) % 2, rest, k)
        tail = act(x, px, rest, k)
        if tail:
            sign = -1 if px else 1
            for idx, v in wedge(c, tail).items():
                w = out.get(idx, Fraction(0)) + sign * v
                if w:
                    out[idx] = w
                else:
                    out.pop(idx, None)
        return {key: v for key, v in out.items() if v}

    dim = (1 << mn) * dim_v0
    parities = tuple(
        bin(idx // dim_v0).count("1") % 2 for idx in range(dim)
    )
    space = SuperSpace(parities)

    def std_matrix(kind: str, i: int) -> tuple[dict, int]:
        par = 1 if i == s else 0
        if kind == "e":
            return {(i, i + 1): Fraction(1)}, par
        if kind == "f":
            return {(i + 1, i): Fraction(1)}, par
        diag = {(i, i): Fraction(1), (i + 1, i + 1): Fraction(1 if i == s else -1)}
        return diag, 0

    def generator_map(kind: str, i: int) -> SuperMap:
        mat, par = std_matrix(kind, i)
        ent: dict[tuple[int, int], Fraction] = {}
        for mask in range(1 << mn):
            for k in range(dim_v0):
                col = mask * dim_v0 + k
                for row, v in act(mat, par, mask, k).items():
                    ent[(row, col)] = v
        return SuperMap(space, space, par, ent)

    # Basis weights: V0 weight plus the roots of the wedged odd vectors.
    h_diags = []
    for i in range(r):
        diag = [Fraction(0)] * (m + n)
        diag[i] = Fraction(1)
        diag[i + 1] = Fraction(1 if i == s else -1)
        h_diags.append(diag)

    def v0_weight(k: int) -> tuple[Fraction, ...]:
        im, jn = divmod(k, dn)
        out = []
        for i in range(r):
            if i < s:
                out.append(Fraction(wts_m[im][i] - wts_m[im][i + 1]))
            elif i > s:
                out.append(Fraction(wts_n[jn][i - m] - wts_n[jn][i - m + 1]))
            else:
                val = (
                    Fraction(wts_m[im][m - 1]) - Fraction(deg_m, m)
                    + Fraction(wts_n[jn][0]) - Fraction(deg_n, n)
                    + c_z / (m * n)
                )
                out.append(val)
        return tuple(out)

    y_weights = []
    for c in range(mn):
        i, j = divmod(c, n)
        y_weights.append(
            tuple(h_diags[t][m + j] - h_diags[t][i] for t in range(r))
        )
    weights = []
    for mask in range(1 << mn):
        for k in range(dim_v0):
            base = list(v0_weight(k))
            for c in range(mn):
                if mask & (1 << c):
                    base = [x + y for x, y in zip(base, y_weights[c])]
            weights.append(tuple(base))

    e = [generator_map("e", i) for i in range(r)]
    f = [generator_map("f", i) for i in range(r)]
    h = [generator_map("h", i) for i in range(r)]
    name = "K(" + ",".join(rat_str(x) for x in lam.a) + ")"
    return _make_module(rs, space, e, f, h, weights, name, lam, check)


# -- morphism spaces -----------------------------------------------------------


def hom_space(U: GModule, V: GModule, parity: int | None = 0) -> list[SuperMap]:
    """A basis of the g-linear maps U -> V of the given parity (None = both).

    Solves F . x_U = (-1)^{p(x) p(F)} x_V . F over all Chevalley generators.
    The h-generator equations say exactly that F matches basis weights, which
    cuts the unknowns to weight-matched entry positions before elimination.
    """
    if parity is None:
        return hom_space(U, V, 0) + hom_space(U, V, 1)
    if U.rs != V.rs:
        raise ValueError("morphisms require modules over the same algebra")
    by_weight_v: dict[tuple, list[int]] = {}
    for i in range(V.dim):
        by_weight_v.setdefault(V.basis_weights[i], []).append(i)
    unknowns: list[tuple[int, int]] = []
    for j in range(U.dim):
        for i in by_weight_v.get(U.basis_weights[j], ()):
            if (V.space.parities[i] + U.space.parities[j]) % 2 == parity:
                unknowns.append((i, j))
    if not unknowns:
        return []
    index = {u: t for t, u in enumerate(unknowns)}

    equations: dict[tuple, dict[int, Fraction]] = {}

    def put(key, t, val):
        row = equations.setdefault(key, {})
        row[t] = row.get(t, Fraction(0)) + val

    gens_u = U.e + U.f
    gens_v = V.e + V.f
    for gidx, (xu, xv) in enumerate(zip(gens_u, gens_v)):
        sign = -1 if (parity and xu.parity) else 1
        xu_rows: dict[int, list] = {}
        for (a, b), v in xu.entries.items():
            xu_rows.setdefault(a, []).append((b, v))
        xv_cols: dict[int, list] = {}
        for (a, b), v in xv.entries.items():
            xv_cols.setdefault(b, []).append((a, v))
        for (i, j), t in index.items():
            for (j2, v) in xu_rows.get(j, ()):
                put((gidx, i, j2), t, v)
            for (i2, v) in xv_cols.get(i, ()):
                put((gidx, i2, j), t, -sign * v)

    kernel = nullspace(equations.values(), len(unknowns))
    out = []
    for vec in kernel:
        ent = {unknowns[t]: v for t, v in vec.items()}
        out.append(SuperMap(U.space, V.space, parity, ent))
    return out


def invariant_vectors(V: GModule, parity: int | None = None) -> list[dict[int, Fraction]]:
    """A basis of the vectors killed by every generator, as sparse columns."""
    maps = hom_space(trivial_module(V.rs, check=False), V, parity)
    return [{i: v for (i, _), v in m.entries.items()} for m in maps]


def singular_vectors(V: GModule) -> list[dict[int, Fraction]]:
    """Weight vectors annihilated by every raising generator."""
    by_weight: dict[tuple, list[int]] = {}
    for i in range(V.dim):
        by_weight.setdefault(V.basis_weights[i], []).append(i)
    out = []
    for wt, cols in by_weight.items():
        rows: dict[tuple, dict[int, Fraction]] = {}
        for gidx, x in enumerate(V.e):
            for t, j in enumerate(cols):
                for (i2, j2), v in x.entries.items():
                    if j2 == j:
                        rows.setdefault((gidx, i2), {})[t] = v
        for vec in nullspace(rows.values(), len(cols)):
            out.append({cols[t]: v for t, v in vec.items()})
    return out


def submodule_dimension(V: GModule, seeds) -> int:
    """Dimension of the submodule generated by the given vectors."""
    reducer = RowReducer()
    frontier = []
    for vec in seeds:
        if reducer.add(vec):
            frontier.append(vec)
    gens = V.gens()
    while frontier:
        nxt = []
        for vec in frontier:
            for x in gens:
                image = x.apply(vec)
                if image and reducer.add(image):
                    nxt.append(image)
        frontier = nxt
    return len(reducer)


def is_irreducible(V: GModule) -> bool:
    """Exact irreducibility: every singular vector generates the whole module.

    Any nonzero submodule contains a singular vector (take a weight vector of
    maximal height), so this criterion is complete for modules with diagonal
    Cartan action.
    """
    if V.dim == 0:
        return False
    for vec in singular_vectors(V):
        if submodule_dimension(V, [vec]) != V.dim:
            return False
    return True


# -- ideal witnesses -----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class IdealWitness:
    """A certified splitting of V through V0 (x) W.

    alpha: V0 (x) W -> V and beta: V -> V0 (x) W are even g-linear maps with
    alpha . beta = Id_V exactly; lambda0 is the (typical) highest weight of V0.
    """

    V: GModule
    V0: GModule
    lambda0: Weight
    W: GModule
    V0W: GModule
    alpha: SuperMap
    beta: SuperMap

    def __repr__(self):
        return f"IdealWitness({self.V.name} through {self.V0.name}(x){self.W.name})"


def _check_g_linear(m: SuperMap, src: GModule, dst: GModule) -> bool:
    for xs, xd in zip(src.gens(), dst.gens()):
        sign = -1 if (m.parity and xs.parity) else 1
        if m @ xs != sign * (xd @ m):
            return False
    return True


def make_witness(V, V0, lambda0, W, V0W, alpha, beta, *, check=True) -> IdealWitness:
    w = IdealWitness(V, V0, lambda0, W, V0W, alpha, beta)
    if check:
        if not V.rs.is_typical(lambda0):
            raise ValueError("witness core weight is atypical")
        if alpha.parity != 0 or beta.parity != 0:
            raise ValueError("witness maps must be even")
        if alpha @ beta != sl.identity(V.space):
            raise ValueError("alpha . beta is not the identity")
        if not _check_g_linear(alpha, V0W, V) or not _check_g_linear(beta, V, V0W):
            raise ValueError("witness maps are not g-linear")
    return w


def trivial_witness(V: GModule, check: bool = True) -> IdealWitness:
    """The identity splitting of a typical irreducible through itself."""
    if V.highest_weight is None:
        raise ValueError("module has no recorded highest weight")
    W = trivial_module(V.rs, check=False)
    V0W = tensor_module(V, W, check=False)
    ident = sl.identity(V.space)
    alpha = SuperMap(V0W.space, V.space, 0, dict(ident.entries))
    beta = SuperMap(V.space, V0W.space, 0, dict(ident.entries))
    return make_witness(V, V, V.highest_weight, W, V0W, alpha, beta, check=check)


def ideal_witness(V: GModule, V0: GModule, check: bool = True) -> IdealWitness:
    """Search for a splitting of V through V0 (x) (V0* (x) V).

    V must have scalar even endomorphisms (checked), so each candidate
    composite alpha . beta is automatically a scalar; the first nonzero
    scalar is normalized away.  Raises WitnessNotFoundError if every
    composite vanishes.
    """
    if V is V0:
        return trivial_witness(V, check=check)
    if V0.highest_weight is None or not V.rs.is_typical(V0.highest_weight):
        raise ValueError("witness core must be typical with known highest weight")
    ends = hom_space(V, V, 0)
    if len(ends) != 1:
        raise ValueError("module does not have scalar even endomorphisms")
    W = tensor_module(dual_module(V0, check=False), V, check=False)
    V0W = tensor_module(V0, W, check=False)
    alphas = hom_space(V0W, V, 0)
    betas = hom_space(V, V0W, 0)
    ident = sl.identity(V.space)
    for a in alphas:
        for b in betas:
            comp = a @ b
            c = comp.entry(0, 0)
            if c == 0:
                continue
            if comp != c * ident:
                raise ModuleRelationError(
                    "composite of g-linear maps is not scalar on a scalar-End module"
                )
            return make_witness(
                V, V0, V0.highest_weight, W, V0W, Fraction(1, 1) / c * a, b, check=check
            )
    raise WitnessNotFoundError(
        f"no splitting of {V.name} through {V0.name} with W = V0* (x) V"
    )


def witness_tensor(w: IdealWitness, U: GModule, check: bool = True) -> IdealWitness:
    """Closure under tensoring: a witness for V (x) U with W' = W (x) U."""
    V2 = tensor_module(w.V, U, check=False)
    W2 = tensor_module(w.W, U, check=False)
    V0W2 = tensor_module(w.V0, W2, check=False)
    idu = sl.identity(U.space)
    alpha = sl.tensor_map(w.alpha, idu)
    beta = sl.tensor_map(w.beta, idu)
    # (V0 (x) W) (x) U and V0 (x) (W (x) U) share the same flattened basis.
    alpha = SuperMap(V0W2.space, V2.space, 0, dict(alpha.entries))
    beta = SuperMap(V2.space, V0W2.space, 0, dict(beta.entries))
    return make_witness(V2, w.V0, w.lambda0, W2, V0W2, alpha, beta, check=check)


def witness_dsum(w1: IdealWitness, w2: IdealWitness, check: bool = True) -> IdealWitness:
    """Closure under direct sums (the two witnesses must share V0)."""
    if w1.V0 is not w2.V0:
        raise ValueError("direct-sum witnesses must share the same core module")
    V = direct_sum_module(w1.V, w2.V, check=False)
    W = direct_sum_module(w1.W, w2.W, check=False)
    V0W = tensor_module(w1.V0, W, check=False)
    dw1, dw2 = w1.W.dim, w2.W.dim
    dv1 = w1.V.dim
    ent_a: dict[tuple[int, int], Fraction] = {}
    ent_b: dict[tuple[int, int], Fraction] = {}
    for (i, col), v in w1.alpha.entries.items():
        i0, iw = divmod(col, dw1)
        ent_a[(i, i0 * (dw1 + dw2) + iw)] = v
    for (i, col), v in w2.alpha.entries.items():
        i0, iw = divmod(col, dw2)
        ent_a[(i + dv1, i0 * (dw1 + dw2) + dw1 + iw)] = v
    for (row, j), v in w1.beta.entries.items():
        i0, iw = divmod(row, dw1)
        ent_b[(i0 * (dw1 + dw2) + iw, j)] = v
    for (row, j), v in w2.beta.entries.items():
        i0, iw = divmod(row, dw2)
        ent_b[(i0 * (dw1 + dw2) + dw1 + iw, j + dv1)] = v
    alpha = SuperMap(V0W.space, V.space, 0, ent_a)
    beta = SuperMap(V.space, V0W.space, 0, ent_b)
    return make_witness(V, w1.V0, w1.lambda0, W, V0W, alpha, beta, check=check)


def witness_parity_shift(w: IdealWitness, check: bool = True) -> IdealWitness:
    """A witness for the parity-shifted module, shifting the W factor."""
    V_op = parity_shift_module(w.V, check=False)
    W_op = parity_shift_module(w.W, check=False)
    V0W_op = tensor_module(w.V0, W_op, check=False)
    sig_v = sigma_map(w.V)
    sig_v_inv = sigma_inverse(w.V)
    sig_w = sigma_map(w.W)
    sig_w_inv = sigma_inverse(w.W)
    id0 = sl.identity(w.V0.space)
    alpha = sig_v @ w.alpha @ sl.tensor_map(id0, sig_w_inv)
    beta = sl.tensor_map(id0, sig_w) @ w.beta @ sig_v_inv
    alpha = SuperMap(V0W_op.space, V_op.space, 0, dict(alpha.entries))
    beta = SuperMap(V_op.space, V0W_op.space, 0, dict(beta.entries))
    return make_witness(V_op, w.V0, w.lambda0, W_op, V0W_op, alpha, beta, check=check)


# -- serialization and caching ---------------------------------------------------


def save_gmodule(mod: GModule, path: str) -> None:
    """Write a module as versioned JSON lines (header then one generator per line)."""
    lines = [
        json.dumps(
            {
                "record": "module",
                "version": CONSTRUCTION_VERSION,
                "name": mod.name,
                "family": mod.rs.family,
                "m": mod.rs.m,
                "n": mod.rs.n,
                "parities": list(mod.space.parities),
                "weights": [[rat_str(x) for x in wt] for wt in mod.basis_weights],
                "highest_weight": (
                    [rat_str(x) for x in mod.highest_weight.a]
                    if mod.highest_weight
                    else None
                ),
            },
            sort_keys=True,
        )
    ]
    for series, maps in (("e", mod.e), ("f", mod.f), ("h", mod.h)):
        for idx, m in enumerate(maps):
            lines.append(
                json.dumps(
                    {
                        "record": "generator",
                        "series": series,
                        "index": idx,
                        "parity": m.parity,
                        "entries": [
                            [i, j, rat_str(v)] for (i, j), v in sorted(m.entries.items())
                        ],
                    },
                    sort_keys=True,
                )
            )
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path) or ".", suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    os.replace(tmp, path)


def load_gmodule(rs: RootSystem, path: str, check: bool = True) -> GModule:
    """Load a module saved by save_gmodule, re-verifying all relations."""
    with open(path) as fh:
        records = [json.loads(line) for line in fh if line.strip()]
    try:
        header = records[0]
        if header["record"] != "module" or header["version"] != CONSTRUCTION_VERSION:
            raise ModuleIntegrityError(f"{path}: unsupported module record")
        if (header["family"], header["m"], header["n"]) != (rs.family, rs.m, rs.n):
            raise ModuleIntegrityError(f"{path}: module belongs to a different algebra")
        space = SuperSpace(tuple(header["parities"]))
        weights = tuple(
            tuple(Fraction(x) for x in wt) for wt in header["weights"]
        )
        hw = (
            Weight(tuple(Fraction(x) for x in header["highest_weight"]))
            if header.get("highest_weight")
            else None
        )
        series: dict[str, dict[int, SuperMap]] = {"e": {}, "f": {}, "h": {}}
        for rec in records[1:]:
            if rec["record"] != "generator":
                raise ModuleIntegrityError(f"{path}: stray record {rec['record']!r}")
            ent = {(i, j): Fraction(v) for i, j, v in rec["entries"]}
            series[rec["series"]][rec["index"]] = SuperMap(
                space, space, rec["parity"], ent
            )
        e = tuple(series["e"][i] for i in range(rs.rank))
        f = tuple(series["f"][i] for i in range(rs.rank))
        h = tuple(series["h"][i] for i in range(rs.rank))
        mod = GModule(rs, space, e, f, h, weights, header["name"], hw)
        if check:
            verify_relations(mod)
        return mod
    except ModuleIntegrityError:
        raise
    except (KeyError, ValueError, IndexError, ModuleRelationError) as exc:
        raise ModuleIntegrityError(f"{path}: corrupt module record ({exc})") from exc


def _weight_slug(lam: Weight) -> str:
    return "_".join(rat_str(x).replace("/", "o").replace("-", "m") for x in lam.a)


def kac_cache_path(cache_dir: str, rs: RootSystem, lam: Weight) -> str:
    name = f"kac-{_weight_slug(lam)}.v{CONSTRUCTION_VERSION}.jsonl"
    return os.path.join(cache_dir, f"{rs.family}_{rs.m}_{rs.n}", name)


def cached_kac_module(rs: RootSystem, lam: Weight, cache_dir: str | None) -> GModule:
    """Kac module with a read-through file cache keyed by algebra and weight."""
    if not cache_dir:
        return kac_module(rs, lam)
    path = kac_cache_path(cache_dir, rs, lam)
    if os.path.exists(path):
        return load_gmodule(rs, path, check=True)
    mod = kac_module(rs, lam)
    save_gmodule(mod, path)
    return mod
