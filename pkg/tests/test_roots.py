from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from flagweights.cli import random_forest
from flagweights.exact import IntegerLattice, IntMat, Mat, lattice_index, lattice_member, rank, snf
from flagweights.polytope import PointSet, hull_member
from flagweights.roots import (
    DominantWeight,
    GradingError,
    IndependenceFailure,
    NotTypeARoot,
    WeightVec,
    b2_roots,
    extend_to_root_basis,
    fundamental_decomposition,
    fundamental_weight,
    in_root_lattice,
    root_basis_index,
    type_a_roots,
    weyl_hull_member,
)


def partitions(n, top=4):
    return st.lists(st.integers(0, top), min_size=n - 1, max_size=n - 1).map(
        lambda xs: DominantWeight.of(sorted(xs, reverse=True) + [0]))


def test_type_a_roots():
    assert type_a_roots(2).roots.points == ((-1, 1), (1, -1))
    assert len(type_a_roots(3).roots) == 6
    r4 = type_a_roots(4)
    assert len(r4.roots) == 12 and r4.lattice.rank == 3
    with pytest.raises(ValueError):
        type_a_roots(1)


def test_b2_roots():
    b2 = b2_roots()
    assert (1, -1) in b2.roots and len(b2.roots) == 8
    assert all(tuple(-x for x in r) in b2.roots for r in b2.roots)
    assert lattice_index(b2.lattice, IntegerLattice.standard(2)) == 1


@pytest.mark.parametrize("lam,a", [((1, 0, 0), (1, 0)), ((2, 1, 0), (1, 1)), ((3, 3, 0, 0), (0, 3, 0))])
def test_fundamental_decomposition(lam, a):
    d = fundamental_decomposition(DominantWeight.of(lam))
    assert d.a == a and d.reconstruct(len(lam)) == lam


@given(st.integers(2, 6).flatmap(partitions))
def test_decomposition_reconstructs(lam):
    d = fundamental_decomposition(lam)
    assert all(x >= 0 for x in d.a)
    assert d.reconstruct(lam.n) == lam.coords
    total = [0] * lam.n
    for k, ak in enumerate(d.a, start=1):
        total = [x + ak * y for x, y in zip(total, fundamental_weight(k, lam.n).coords)]
    assert tuple(total) == lam.coords


def test_dominant_weight_validation():
    assert DominantWeight.parse("2,1,0").size == 3
    for bad in ["1,2,0", "2,1,1", "", "a,b"]:
        with pytest.raises(ValueError):
            DominantWeight.parse(bad)


def test_weight_vec_grading():
    w = WeightVec((1, 0, 2))
    assert w.grading == 3
    assert w.normalize_to_grading(6).coords == (2, 1, 3)
    with pytest.raises(GradingError):
        w.normalize_to_grading(4)
    assert w.same_sl_weight(WeightVec((0, -1, 1)))


def test_in_root_lattice():
    assert in_root_lattice(WeightVec((0, 0, 0)))
    assert in_root_lattice(WeightVec((1, -1, 0)))
    assert not in_root_lattice(WeightVec((1, 0, 0)))


@given(st.lists(st.integers(-3, 3), min_size=2, max_size=5))
def test_in_root_lattice_matches_membership(v):
    assert in_root_lattice(WeightVec(v)) == lattice_member(type_a_roots(len(v)).lattice, v)


def test_weyl_hull_examples():
    lam = DominantWeight.of((2, 1, 0))
    assert weyl_hull_member(WeightVec((2, 1, 0)), lam)
    assert not weyl_hull_member(WeightVec((3, 0, 0)), lam)
    e = DominantWeight.of((1, 0, 0))
    assert all(weyl_hull_member(WeightVec(p), e) for p in permutations((1, 0, 0)))
    with pytest.raises(GradingError):
        weyl_hull_member(WeightVec((1, 1, 0)), e)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 5).flatmap(lambda n: st.tuples(
    partitions(n, 3), st.lists(st.integers(-1, 4), min_size=n, max_size=n))))
def test_weyl_hull_matches_lp(args):
    lam, mu = args
    mu = list(mu)
    mu[-1] += lam.size - sum(mu)
    orbit = PointSet(lam.n, tuple(set(permutations(lam.coords))))
    assert weyl_hull_member(WeightVec(mu), lam) == hull_member(mu, orbit)


# --- basis extension ------------------------------------------------------------------

def test_extend_examples():
    basis = [(1, -1, 0), (0, 1, -1)]
    assert extend_to_root_basis(basis, 3) == basis
    ext = extend_to_root_basis([(1, 0, -1)], 3)
    assert len(ext) == 2 and ext[0] == (1, 0, -1)
    assert root_basis_index(ext, 3) == 1


def test_b2_pair_rejected_and_index_two():
    with pytest.raises(NotTypeARoot):
        extend_to_root_basis([(1, -1), (1, 1)], 2)
    sub = IntegerLattice.from_generators([(1, -1), (1, 1)], 2)
    assert snf(IntMat.from_rows([[1, -1], [1, 1]])).diagonal == (1, 2)
    assert lattice_index(sub, IntegerLattice.standard(2)) == 2


def test_dependent_input_names_cycle():
    roots = [(1, -1, 0), (0, 1, -1), (1, 0, -1)]
    with pytest.raises(IndependenceFailure) as info:
        extend_to_root_basis(roots, 3)
    assert sorted(info.value.cycle) == sorted(roots)
    assert "e1-e3" in str(info.value)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 8), st.integers(0, 2**32))
def test_forest_extension_has_index_one(n, seed):
    forest = random_forest(np.random.default_rng(seed), n)
    basis = extend_to_root_basis(forest, n)
    assert basis[:len(forest)] == forest and len(basis) == n - 1
    assert root_basis_index(basis, n) == 1
    lat = IntegerLattice.from_generators(basis, n)
    assert lattice_index(lat, type_a_roots(n).lattice) == 1


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 6).flatmap(lambda n: st.lists(
    st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] != e[1]),
    max_size=n + 1).map(lambda es: (n, es))))
def test_forest_detection_matches_rank(args):
    n, pairs = args
    roots = [tuple(int(t == i) - int(t == j) for t in range(n)) for i, j in pairs]
    independent = not roots or rank(Mat.from_rows(roots)) == len(roots)
    try:
        extend_to_root_basis(roots, n)
        ok = True
    except IndependenceFailure:
        ok = False
    assert ok == independent
