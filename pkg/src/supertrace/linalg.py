"""Exact linear algebra over the rationals.

Sparse Gauss-Jordan elimination on integer-cleared rows; all pivoting is
exact, so kernels and solved coordinates are returned as Fractions with no
rounding anywhere.  Sized for the weight-blocked systems this library
produces (hundreds to a few thousand rows, a handful of nonzeros per row).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def _int_row(row: dict) -> dict[int, int]:
    """Clear denominators and divide by the content, dropping zeros."""
    items = [(j, Fraction(v)) for j, v in row.items() if v != 0]
    if not items:
        return {}
    lcm = 1
    for _, v in items:
        d = v.denominator
        lcm = lcm // gcd(lcm, d) * d
    ints = {j: int(v * lcm) for j, v in items}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    if g > 1:
        ints = {j: v // g for j, v in ints.items()}
    return ints


def nullspace(rows, ncols: int) -> list[dict[int, Fraction]]:
    """Basis of the right kernel of the sparse matrix given by ``rows``.

    ``rows`` is an iterable of {column: value} dicts (values int or Fraction).
    Returns kernel vectors as {column: Fraction} dicts, one per free column,
    normalized so the free coordinate equals 1.
    """
    work = [r for r in (_int_row(row) for row in rows) if r]
    # (pivot_col, row) pairs; rows are fully reduced against each other.
    pivots: list[tuple[int, dict[int, int]]] = []
    while work:
        # Cheapest remaining row, then its smallest-magnitude entry as pivot.
        ri = min(range(len(work)), key=lambda i: len(work[i]))
        row = work.pop(ri)
        pc = min(row, key=lambda j: (abs(row[j]), j))
        pv = row[pc]

        def eliminate(other: dict[int, int]) -> dict[int, int]:
            ov = other.get(pc)
            if not ov:
                return other
            new = {}
            for j, v in other.items():
                w = v * pv - row.get(j, 0) * ov
                if w:
                    new[j] = w
            for j, v in row.items():
                if j not in other:
                    w = -v * ov
                    if w:
                        new[j] = w
            g = 0
            for v in new.values():
                g = gcd(g, v)
            if g > 1:
                new = {j: v // g for j, v in new.items()}
            return new

        pivots = [(c, eliminate(r)) for c, r in pivots]
        work = [r for r in (eliminate(r) for r in work) if r]
        pivots.append((pc, row))

    pivot_cols = {c for c, _ in pivots}
    basis = []
    for free in range(ncols):
        if free in pivot_cols:
            continue
        vec: dict[int, Fraction] = {free: Fraction(1)}
        for c, row in pivots:
            a = row.get(free)
            if a:
                vec[c] = Fraction(-a, row[c])
        basis.append(vec)
    return basis


class RowReducer:
    """Incremental exact row reduction with coordinate tracking.

    Vectors are {index: Fraction} dicts over an implicit ambient space.  Each
    accepted vector extends the span; ``coords`` expresses further vectors in
    terms of the vectors previously accepted (in acceptance order).
    """

    def __init__(self):
        self.rows: list[dict[int, Fraction]] = []
        self.combos: list[dict[int, Fraction]] = []
        self.pivot_of_row: list[int] = []
        self._naccepted = 0

    def __len__(self) -> int:
        return len(self.rows)

    def _reduce(self, vec: dict) -> tuple[dict[int, Fraction], dict[int, Fraction]]:
        v = {j: Fraction(x) for j, x in vec.items() if x != 0}
        combo: dict[int, Fraction] = {}
        for row, cmb, pc in zip(self.rows, self.combos, self.pivot_of_row):
            coef = v.get(pc)
            if not coef:
                continue
            factor = coef / row[pc]
            for j, x in row.items():
                w = v.get(j, Fraction(0)) - factor * x
                if w:
                    v[j] = w
                else:
                    v.pop(j, None)
            for j, x in cmb.items():
                w = combo.get(j, Fraction(0)) - factor * x
                if w:
                    combo[j] = w
                else:
                    combo.pop(j, None)
        return v, combo

    def add(self, vec: dict) -> bool:
        """Add a vector; returns True if it enlarged the span."""
        idx = self._naccepted
        self._naccepted += 1
        v, combo = self._reduce(vec)
        if not v:
            self._naccepted -= 1
            return False
        combo[idx] = Fraction(1)
        self.rows.append(v)
        self.combos.append(combo)
        self.pivot_of_row.append(min(v, key=lambda j: (abs(v[j]) != 1, j)))
        return True

    def contains(self, vec: dict) -> bool:
        v, _ = self._reduce(vec)
        return not v

    def coords(self, vec: dict) -> dict[int, Fraction]:
        """Express ``vec`` over the accepted vectors; raises if out of span."""
        v, combo = self._reduce(vec)
        if v:
            raise ValueError("vector is not in the span")
        return {j: -x for j, x in combo.items()}
