from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from flagweights.exact import DimensionError, IntegerLattice
from flagweights.polytope import (
    EmptyPointSetError,
    LinearProgram,
    PointSet,
    SaturationDomainError,
    dilate,
    edges,
    hull_member,
    hull_membership,
    hulls_intersect,
    lattice_points_in_hull,
    lp_solve,
    minkowski_sum,
    vertices,
)

from oracles import BruteHull, brute_sums

SQUARE41 = PointSet.of([(1, 0), (0, 1), (0, -1), (-1, 0)])


def point_sets(dim, lo=-2, hi=2, max_size=7):
    pt = st.tuples(*[st.integers(lo, hi)] * dim)
    return st.lists(pt, min_size=1, max_size=max_size).map(lambda ps: PointSet.of(ps, dim))


# --- linear programming ---------------------------------------------------------

def test_lp_examples():
    r = lp_solve(LinearProgram((1,), (((1,), "<=", 1), ((1,), ">=", 0))))
    assert r.status == "optimal" and r.value == 1 and r.point == (1,)
    assert lp_solve(LinearProgram((1,), (((1,), ">=", 0),))).status == "unbounded"
    r = lp_solve(LinearProgram((0,), (((1,), "<=", -1), ((1,), ">=", 0))))
    assert r.status == "infeasible"


def test_lp_rational_optimum():
    # max x + y  s.t.  2x + y <= 2, x + 3y <= 3, x, y >= 0  ->  (3/5, 4/5)
    r = lp_solve(LinearProgram((1, 1), (((2, 1), "<=", 2), ((1, 3), "<=", 3)), nonnegative=True))
    assert r.value == Fraction(7, 5) and r.point == (Fraction(3, 5), Fraction(4, 5))


def test_lp_minimize_with_equality():
    r = lp_solve(LinearProgram((1, 2), (((1, 1), "=", 3), ((1, 0), "<=", 2)),
                               maximize=False, nonnegative=True))
    assert r.value == 4 and r.point == (2, 1)


def test_lp_degenerate_terminates():
    # a classic cycling example for the largest-coefficient rule
    c = (Fraction(3, 4), -150, Fraction(1, 50), -6)
    rows = (((Fraction(1, 4), -60, Fraction(-1, 25), 9), "<=", 0),
            ((Fraction(1, 2), -90, Fraction(-1, 50), 3), "<=", 0),
            ((0, 0, 1, 0), "<=", 1))
    r = lp_solve(LinearProgram(c, rows, nonnegative=True))
    assert r.status == "optimal" and r.value == Fraction(1, 20)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(0, 6)),
                min_size=1, max_size=5),
       st.tuples(st.integers(-3, 3), st.integers(-3, 3)))
def test_lp_against_vertex_enumeration(rows, obj):
    # box-bounded 2-variable LP; optimum is attained at an intersection of two tight rows
    cons = [((a, b), "<=", c) for a, b, c in rows]
    cons += [((1, 0), "<=", 5), ((-1, 0), "<=", 5), ((0, 1), "<=", 5), ((0, -1), "<=", 5)]
    r = lp_solve(LinearProgram(obj, tuple(cons)))
    best = None
    for (a1, r1), (a2, r2) in product([(c[0], c[2]) for c in cons], repeat=2):
        dt = a1[0] * a2[1] - a1[1] * a2[0]
        if dt == 0:
            continue
        x = Fraction(r1 * a2[1] - r2 * a1[1], dt)
        y = Fraction(a1[0] * r2 - a2[0] * r1, dt)
        if all(a[0] * x + a[1] * y <= b for a, _, b in cons):
            v = obj[0] * x + obj[1] * y
            best = v if best is None else max(best, v)
    assert r.status == "optimal" and r.value == best


# --- hull membership -------------------------------------------------------------

def test_hull_member_examples():
    tri = PointSet.of([(0, 0), (1, 0), (0, 1)])
    assert hull_member((0, 1), tri)
    assert hull_member((Fraction(1, 3), Fraction(1, 3)), tri)
    assert not hull_member((1, 1), tri)
    with pytest.raises(EmptyPointSetError):
        hull_member((0, 0), PointSet(2, ()))
    with pytest.raises(DimensionError):
        hull_member((0, 0, 0), tri)


def test_hull_certificates():
    tri = PointSet.of([(0, 0), (2, 0), (0, 2)])
    c = hull_membership((Fraction(1, 2), Fraction(1, 2)), tri)
    assert c.member and sum(w for _, w in c.weights) == 1
    assert tuple(sum(w * p[j] for p, w in c.weights) for j in range(2)) == (Fraction(1, 2),) * 2
    c = hull_membership((3, 1), tri)
    assert not c.member
    f = c.functional
    assert f[0] * 3 + f[1] * 1 > max(f[0] * p[0] + f[1] * p[1] for p in tri)


def test_separating_functional_off_hyperplane():
    # q misses the affine hull; the 0/1 bounds cannot see it, the LP must
    a = PointSet.of([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1)])
    q = (Fraction(1, 2), Fraction(1, 2), Fraction(1, 2))
    c = hull_membership(q, a)
    assert not c.member
    f = c.functional
    assert sum(x * y for x, y in zip(f, q)) > max(sum(x * y for x, y in zip(f, p)) for p in a)


# --- vertices and edges ------------------------------------------------------------

def test_vertices_examples():
    assert vertices(PointSet.of([(0, 0), (1, 0), (2, 0)])).points == ((0, 0), (2, 0))
    sq = PointSet.of([(0, 0), (2, 0), (0, 2), (2, 2), (1, 1)])
    assert vertices(sq).points == ((0, 0), (0, 2), (2, 0), (2, 2))
    u24 = PointSet.of([(1, 1, 0, 0), (1, 0, 1, 0), (1, 0, 0, 1), (0, 1, 1, 0), (0, 1, 0, 1), (0, 0, 1, 1)])
    assert vertices(u24) == u24


def test_edges_examples():
    sq = PointSet.of([(0, 0), (1, 0), (0, 1), (1, 1)])
    assert edges(sq) == [((0, 0), (0, 1)), ((0, 0), (1, 0)), ((0, 1), (1, 1)), ((1, 0), (1, 1))]
    assert edges(PointSet.of([(0, 0), (1, 0), (2, 0)])) == [((0, 0), (2, 0))]
    octa = PointSet.of([(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)])
    es = edges(octa)
    assert len(es) == 12
    assert all(any(u) and u != tuple(-x for x in v) for u, v in es)


def test_single_point():
    p = PointSet.of([(3, 4)])
    assert vertices(p) == p and edges(p) == []


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 3).flatmap(lambda d: point_sets(d, 0, 1, 8)))
def test_kernel_matches_facet_oracle(a):
    brute = BruteHull(a.points)
    assert set(vertices(a).points) == brute.vertices()
    assert set(edges(a)) == brute.edges()


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3).flatmap(lambda d: st.tuples(
    point_sets(d, -2, 2, 6),
    st.tuples(*[st.fractions(-3, 3, max_denominator=3)] * d))))
def test_hull_member_matches_facet_oracle(args):
    a, q = args
    assert hull_member(q, a) == BruteHull(a.points).contains(q)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 4).flatmap(lambda d: point_sets(d, -2, 2, 7)))
def test_vertex_and_edge_invariants(a):
    vs = vertices(a)
    assert set(vs.points) <= set(a.points)
    assert all(hull_member(p, vs) for p in a)
    es = edges(a)
    assert all(u in vs and v in vs and u < v for u, v in es)
    assert es == sorted(es)


# --- lattice points ------------------------------------------------------------------

def test_lattice_points_examples():
    simplex = PointSet.of([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    a2 = IntegerLattice.from_generators([(1, -1, 0), (0, 1, -1)], 3)
    assert lattice_points_in_hull(simplex, a2, (1, 0, 0)) == simplex
    z2 = IntegerLattice.standard(2)
    got = lattice_points_in_hull(SQUARE41, z2, (0, 0))
    assert got.points == tuple(sorted(SQUARE41.points + ((0, 0),)))
    assert len(lattice_points_in_hull(PointSet.of([(0, 0), (2, 0), (0, 2)]), z2, (0, 0))) == 6


def test_lattice_points_domain_error():
    a2 = IntegerLattice.from_generators([(1, -1, 0), (0, 1, -1)], 3)
    with pytest.raises(SaturationDomainError):
        lattice_points_in_hull(PointSet.of([(1, 0, 0), (1, 1, 0)]), a2, (1, 0, 0))


def test_lattice_points_respect_sublattice():
    even = IntegerLattice.from_generators([(2, 0), (0, 2)], 2)
    a = PointSet.of([(0, 0), (4, 0), (0, 4)])
    assert lattice_points_in_hull(a, even, (0, 0)).points == (
        (0, 0), (0, 2), (0, 4), (2, 0), (2, 2), (4, 0))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3).flatmap(lambda d: point_sets(d, -2, 2, 5)))
def test_lattice_points_contain_input_and_match_box_scan(a):
    zd = IntegerLattice.standard(a.dim)
    got = lattice_points_in_hull(a, zd, (0,) * a.dim)
    assert set(a.points) <= set(got.points)
    brute = BruteHull(a.points)
    box = product(*[range(min(p[j] for p in a), max(p[j] for p in a) + 1) for j in range(a.dim)])
    assert set(got.points) == {z for z in box if brute.contains(z)}


# --- Minkowski sums ------------------------------------------------------------------

def test_minkowski_examples():
    a = PointSet.of([(1, 2), (3, -1)])
    assert minkowski_sum(a, PointSet.origin(2)) == a
    b = minkowski_sum(PointSet.of([(0, 0, 0), (1, -1, 0)]), PointSet.of([(0, 0, 0), (0, 1, -1)]))
    assert len(b) == 4
    assert (0, 0) in minkowski_sum(SQUARE41, SQUARE41)
    with pytest.raises(DimensionError):
        minkowski_sum(a, PointSet.origin(3))


def test_dilate_examples():
    a = PointSet.of([(0, 0), (1, 0)])
    assert dilate(a, 1) == a
    assert dilate(a, 2).points == ((0, 0), (1, 0), (2, 0))
    assert dilate(a, 0) == PointSet.origin(2)
    sq2 = dilate(SQUARE41, 2)
    assert set(sq2.points) == brute_sums([SQUARE41.points] * 2)
    # nine pairwise sums; the doubled diamond itself holds 13 lattice points
    assert len(sq2) == 9
    assert len(lattice_points_in_hull(sq2, IntegerLattice.standard(2), (0, 0))) == 13


@settings(max_examples=50, deadline=None)
@given(point_sets(2), point_sets(2), point_sets(2))
def test_minkowski_commutative_associative(a, b, c):
    assert minkowski_sum(a, b) == minkowski_sum(b, a)
    assert minkowski_sum(minkowski_sum(a, b), c) == minkowski_sum(a, minkowski_sum(b, c))
    assert set(minkowski_sum(a, b).points) == brute_sums([a.points, b.points])


def test_pointset_canonical_and_json():
    p = PointSet.of([(2, 1), (0, 5), (2, 1)])
    assert p.points == ((0, 5), (2, 1))
    assert PointSet.from_json(p.to_json()) == p
    with pytest.raises(DimensionError):
        PointSet(2, ((1, 2, 3),))


def test_hulls_intersect():
    a = PointSet.of([(0, 0), (2, 0)])
    assert hulls_intersect(a, PointSet.of([(1, -1), (1, 1)]))
    assert not hulls_intersect(a, PointSet.of([(0, 1), (2, 1)]))
