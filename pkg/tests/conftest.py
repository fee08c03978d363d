import random
from fractions import Fraction

import pytest

from supertrace import superlin as sl
from supertrace.invtensor import build_adjoint
from supertrace.rootdata import build_root_system
from supertrace.suites import Roster, build_roster


@pytest.fixture(scope="session")
def rs21():
    return build_root_system("sl", 2, 1)


@pytest.fixture(scope="session")
def rs31():
    return build_root_system("sl", 3, 1)


@pytest.fixture(scope="session")
def roster() -> Roster:
    return build_roster()


@pytest.fixture(scope="session")
def adj(roster):
    return build_adjoint(roster.rs)


def rand_frac(rng: random.Random, lo=-6, hi=6) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, 4))


def rand_map(rng: random.Random, U: sl.SuperSpace, V: sl.SuperSpace, parity: int) -> sl.SuperMap:
    ent = {}
    for i in range(V.dim):
        for j in range(U.dim):
            if (V.parities[i] + U.parities[j]) % 2 == parity and rng.random() < 0.7:
                ent[(i, j)] = rand_frac(rng)
    return sl.SuperMap(U, V, parity, ent)


def rand_combination(basis, rng: random.Random):
    out = None
    for m in basis:
        term = rand_frac(rng) * m
        out = term if out is None else out + term
    return out
