import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import rand_map
from supertrace import superlin as sl


def spaces_strategy():
    return st.lists(st.integers(min_value=0, max_value=1), min_size=1, max_size=3).map(
        lambda ps: sl.SuperSpace(tuple(ps))
    )


class TestTensorSpace:
    def test_even_times_even(self):
        assert sl.tensor_space(sl.super_space(1, 0), sl.super_space(1, 0)) == sl.super_space(1, 0)

    def test_balanced_square(self):
        V = sl.SuperSpace((0, 1))
        VV = sl.tensor_space(V, V)
        assert (VV.dim, VV.dim_even, VV.dim_odd, VV.sdim) == (4, 2, 2, 0)

    def test_standard_square(self):
        V = sl.super_space(2, 1)
        VV = sl.tensor_space(V, V)
        assert (VV.dim, VV.dim_even, VV.dim_odd) == (9, 5, 4)


class TestTensorMap:
    def test_even_maps_give_plain_kronecker(self):
        rng = random.Random(0)
        U = sl.super_space(2, 0)
        f = rand_map(rng, U, U, 0)
        g = rand_map(rng, U, U, 0)
        t = sl.tensor_map(f, g)
        for i in range(2):
            for j in range(2):
                for k in range(2):
                    for l in range(2):
                        assert t.entry(i * 2 + k, j * 2 + l) == f.entry(i, j) * g.entry(k, l)

    def test_odd_swap_sign(self):
        V = sl.SuperSpace((0, 1))
        swap = sl.SuperMap(V, V, 1, {(0, 1): F(1), (1, 0): F(1)})
        t = sl.tensor_map(sl.identity(V), swap)
        # Columns over the odd first factor pick up the Koszul -1.
        assert t.entry(1 * 2 + 1, 1 * 2 + 0) == -1
        assert t.entry(1 * 2 + 0, 1 * 2 + 1) == -1
        assert t.entry(0 * 2 + 1, 0 * 2 + 0) == 1
        assert t.entry(0 * 2 + 0, 0 * 2 + 1) == 1

    def test_interchange_failure_of_symmetry(self):
        rng = random.Random(1)
        V = sl.super_space(1, 1)
        for _ in range(5):
            f = rand_map(rng, V, V, 1)
            g = rand_map(rng, V, V, 1)
            idv = sl.identity(V)
            lhs = sl.tensor_map(idv, g) @ sl.tensor_map(f, idv)
            rhs = sl.tensor_map(f, idv) @ sl.tensor_map(idv, g)
            assert lhs == -1 * rhs

    def test_interchange_composition_sign(self):
        rng = random.Random(2)
        V = sl.super_space(2, 1)
        for pf, pg, pf2, pg2 in ((0, 0, 0, 0), (1, 1, 0, 0), (0, 1, 1, 0), (1, 0, 0, 1)):
            f = rand_map(rng, V, V, pf)
            g = rand_map(rng, V, V, pg)
            f2 = rand_map(rng, V, V, pf2)
            g2 = rand_map(rng, V, V, pg2)
            sign = -1 if (pg and pf2) else 1
            assert sl.tensor_map(f, g) @ sl.tensor_map(f2, g2) == sign * sl.tensor_map(f @ f2, g @ g2)


class TestPermutation:
    def test_even_point(self):
        U = sl.super_space(1, 0)
        assert sl.super_permutation(U, U).entry(0, 0) == 1

    def test_odd_point(self):
        U = sl.super_space(0, 1)
        assert sl.super_permutation(U, U).entry(0, 0) == -1

    def test_involution(self):
        V = sl.super_space(2, 1)
        assert sl.super_permutation(V, V) @ sl.super_permutation(V, V) == sl.identity(
            sl.tensor_space(V, V)
        )


class TestDuality:
    def test_transpose_of_identity(self):
        V = sl.super_space(2, 2)
        assert sl.super_transpose(sl.identity(V)) == sl.identity(sl.dual_space(V))

    def test_even_transpose_is_plain(self):
        rng = random.Random(3)
        V = sl.super_space(2, 1)
        f = rand_map(rng, V, V, 0)
        ft = sl.super_transpose(f)
        assert all(ft.entry(j, i) == f.entry(i, j) for i in range(3) for j in range(3))

    def test_odd_transpose_antihomomorphism(self):
        rng = random.Random(4)
        V = sl.super_space(2, 1)
        for _ in range(5):
            f = rand_map(rng, V, V, 1)
            g = rand_map(rng, V, V, 1)
            lhs = sl.super_transpose(f @ g)
            rhs = -1 * (sl.super_transpose(g) @ sl.super_transpose(f))
            assert lhs == rhs

    def test_double_dual_conjugation(self):
        rng = random.Random(5)
        U = sl.super_space(1, 2)
        V = sl.super_space(2, 1)
        for parity in (0, 1):
            f = rand_map(rng, U, V, parity)
            fdd = sl.super_transpose(sl.super_transpose(f))
            assert fdd @ sl.double_dual_iso(U) == sl.double_dual_iso(V) @ f

    def test_evaluation_loop_is_sdim(self):
        for ne, no in ((2, 1), (3, 3), (0, 2)):
            V = sl.super_space(ne, no)
            assert sl.scalar_of(sl.ev_right(V) @ sl.coev(V)) == ne - no

    def test_zigzags(self):
        V = sl.super_space(2, 1)
        dv = sl.dual_space(V)
        left = sl.tensor_map(sl.identity(V), sl.ev(V)) @ sl.tensor_map(sl.coev(V), sl.identity(V))
        right = sl.tensor_map(sl.ev(V), sl.identity(dv)) @ sl.tensor_map(sl.identity(dv), sl.coev(V))
        assert left == sl.identity(V)
        assert right == sl.identity(dv)


class TestTraces:
    def test_supertrace_of_identity(self):
        assert sl.supertrace(sl.identity(sl.super_space(2, 1))) == 1
        assert sl.supertrace(sl.identity(sl.super_space(3, 3))) == 0

    def test_cyclicity(self):
        rng = random.Random(6)
        V = sl.super_space(2, 1)
        for _ in range(5):
            fe, ge = rand_map(rng, V, V, 0), rand_map(rng, V, V, 0)
            fo, go = rand_map(rng, V, V, 1), rand_map(rng, V, V, 1)
            assert sl.supertrace(fe @ ge) == sl.supertrace(ge @ fe)
            assert sl.supertrace(fo @ go) == -sl.supertrace(go @ fo)

    def test_partial_trace_of_identity(self):
        U = sl.super_space(2, 1)
        V = sl.super_space(1, 2)
        big = sl.identity(sl.tensor_space(U, V))
        assert sl.partial_supertrace(big, U, V) == V.sdim * sl.identity(U)

    def test_partial_trace_over_odd_line(self):
        U = sl.super_space(2, 1)
        line = sl.super_space(0, 1)
        big = sl.identity(sl.tensor_space(U, line))
        assert sl.partial_supertrace(big, U, line) == -1 * sl.identity(U)

    def test_partial_trace_consistency(self):
        rng = random.Random(7)
        U = sl.super_space(2, 1)
        VV = sl.tensor_space(U, U)
        for _ in range(20):
            f = rand_map(rng, VV, VV, rng.choice((0, 1)))
            assert sl.supertrace(f) == sl.supertrace(sl.partial_supertrace(f, U, U))

    def test_partial_trace_equals_duality_composite(self):
        rng = random.Random(8)
        U = sl.super_space(1, 1)
        V = sl.super_space(2, 1)
        big_space = sl.tensor_space(U, V)
        for parity in (0, 1):
            f = rand_map(rng, big_space, big_space, parity)
            composite = (
                sl.tensor_map(sl.identity(U), sl.ev_right(V))
                @ sl.tensor_map(f, sl.identity(sl.dual_space(V)))
                @ sl.tensor_map(sl.identity(U), sl.coev(V))
            )
            assert sl.partial_supertrace(f, U, V) == composite


class TestParityShift:
    def test_shift_statistics(self):
        V = sl.super_space(2, 1)
        flipped, sigma = sl.parity_shift(V)
        assert (flipped.dim_even, flipped.dim_odd) == (1, 2)
        assert sigma.parity == sl.ODD
        assert flipped.sdim == -V.sdim

    def test_double_shift_is_even_identity(self):
        V = sl.super_space(2, 1)
        flipped, sigma = sl.parity_shift(V)
        _, sigma2 = sl.parity_shift(flipped)
        back = sigma2 @ sigma
        assert back.parity == 0
        assert back.entries == sl.identity(V).entries


class TestHomogeneity:
    def test_inhomogeneous_entries_rejected(self):
        V = sl.super_space(1, 1)
        with pytest.raises(ValueError):
            sl.SuperMap(V, V, 0, {(0, 1): F(1)})

    def test_mixed_parity_addition_rejected(self):
        V = sl.super_space(1, 1)
        even = sl.identity(V)
        odd = sl.SuperMap(V, V, 1, {(0, 1): F(1)})
        with pytest.raises(ValueError):
            even + odd

    @settings(max_examples=30, deadline=None)
    @given(spaces_strategy(), spaces_strategy(), st.integers(0, 1), st.randoms())
    def test_operations_preserve_homogeneity(self, U, V, parity, pyrng):
        rng = random.Random(pyrng.randint(0, 10**6))
        f = rand_map(rng, U, V, parity)
        # Constructors validate; these must not raise.
        sl.super_transpose(f)
        sl.tensor_map(f, sl.identity(U))
        sl.tensor_map(sl.identity(V), f)


def test_generalized_partial_trace_matches_duality_route():
    rng = random.Random(9)
    A = sl.super_space(1, 1)
    B = sl.super_space(2, 1)
    C = sl.super_space(1, 2)
    dom = sl.tensor_space(A, C)
    cod = sl.tensor_space(B, C)
    for parity in (0, 1):
        h = rand_map(rng, dom, cod, parity)
        composite = (
            sl.tensor_map(sl.identity(B), sl.ev_right(C))
            @ sl.tensor_map(h, sl.identity(sl.dual_space(C)))
            @ sl.tensor_map(sl.identity(A), sl.coev(C))
        )
        assert sl.partial_supertrace_hom(h, A, C, B) == composite
