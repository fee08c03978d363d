import random
from fractions import Fraction as F

from supertrace.linalg import RowReducer, nullspace


def dense_nullity(rows, ncols):
    mat = [[F(r.get(j, 0)) for j in range(ncols)] for r in rows]
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(mat)) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        for i in range(len(mat)):
            if i != rank and mat[i][c] != 0:
                f = mat[i][c] / mat[rank][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[rank])]
        rank += 1
    return ncols - rank


def test_nullspace_matches_dense_reference():
    rng = random.Random(42)
    for _ in range(300):
        nr, nc = rng.randint(1, 9), rng.randint(1, 9)
        rows = [
            {j: rng.randint(-4, 4) for j in range(nc) if rng.random() < 0.6}
            for _ in range(nr)
        ]
        basis = nullspace([dict(r) for r in rows], nc)
        assert len(basis) == dense_nullity(rows, nc)
        for vec in basis:
            for r in rows:
                assert sum(F(r.get(j, 0)) * x for j, x in vec.items()) == 0


def test_nullspace_rational_entries():
    rows = [{0: F(1, 2), 1: F(-1, 3)}, {0: F(3, 2), 1: F(-1, 1), 2: F(0)}]
    basis = nullspace([dict(r) for r in rows], 3)
    assert len(basis) == 2
    for vec in basis:
        for row in rows:
            assert sum(row.get(j, F(0)) * x for j, x in vec.items()) == 0


def test_nullspace_of_empty_matrix_is_everything():
    assert len(nullspace([], 4)) == 4


def test_row_reducer_coords_roundtrip():
    rng = random.Random(7)
    reducer = RowReducer()
    vectors = []
    while len(vectors) < 5:
        v = {j: F(rng.randint(-3, 3)) for j in range(8) if rng.random() < 0.7}
        if reducer.add(dict(v)):
            vectors.append(v)
    combo = {}
    weights = [F(3), F(-1, 2), F(0), F(5), F(2, 7)]
    for w, v in zip(weights, vectors):
        for j, x in v.items():
            combo[j] = combo.get(j, F(0)) + w * x
    coords = reducer.coords(combo)
    assert all(coords.get(i, F(0)) == w for i, w in enumerate(weights))


def test_row_reducer_rejects_dependent_and_detects_outside():
    reducer = RowReducer()
    assert reducer.add({0: 1, 1: 2})
    assert not reducer.add({0: 2, 1: 4})
    assert reducer.contains({0: -3, 1: -6})
    assert not reducer.contains({1: 1})
    try:
        reducer.coords({2: 1})
    except ValueError:
        pass
    else:
        raise AssertionError("coords outside the span must raise")
