"""Exact polyhedral kernel over Q for finite integer point sets.

Face questions are answered with linear programs solved by an
integer-preserving simplex (Bland's rule), so no tolerance appears
anywhere.  Cheap exact certificates (shared midpoints, bounds along 0/1
directions) settle most instances before an LP is built.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exact import DimensionError, IntegerLattice, lattice_member


class EmptyPointSetError(ValueError):
    pass


class SaturationDomainError(ValueError):
    """A point does not lie in the shifted lattice it is supposed to live in."""


@dataclass(frozen=True)
class PointSet:
    """A finite set of integer vectors, kept deduplicated and sorted."""
    dim: int
    points: tuple = ()

    def __post_init__(self):
        pts = tuple(sorted({tuple(int(x) for x in p) for p in self.points}))
        if any(len(p) != self.dim for p in pts):
            raise DimensionError(f"all points must have dimension {self.dim}")
        object.__setattr__(self, "points", pts)

    @classmethod
    def of(cls, points: Iterable[Sequence[int]], dim: int | None = None) -> "PointSet":
        points = [tuple(p) for p in points]
        if dim is None:
            if not points:
                raise ValueError("cannot infer the dimension of an empty point set")
            dim = len(points[0])
        return cls(dim, tuple(points))

    @classmethod
    def origin(cls, dim: int) -> "PointSet":
        return cls(dim, ((0,) * dim,))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p):
        return tuple(p) in self._lookup

    @property
    def _lookup(self) -> frozenset:
        try:
            return self.__dict__["_set"]
        except KeyError:
            s = frozenset(self.points)
            object.__setattr__(self, "_set", s)
            return s

    def translate(self, shift: Sequence[int]) -> "PointSet":
        if len(shift) != self.dim:
            raise DimensionError("shift has the wrong length")
        return PointSet(self.dim, tuple(tuple(x + s for x, s in zip(p, shift)) for p in self.points))

    def scale(self, m: int) -> "PointSet":
        return PointSet(self.dim, tuple(tuple(m * x for x in p) for p in self.points))

    def to_json(self) -> dict:
        return {"dim": self.dim, "points": [list(p) for p in self.points]}

    @classmethod
    def from_json(cls, data: dict) -> "PointSet":
        try:
            return cls(int(data["dim"]), tuple(tuple(p) for p in data["points"]))
        except (KeyError, TypeError):
            raise ValueError("point set JSON needs 'dim' and 'points'") from None


# ---------------------------------------------------------------------------
# linear programming

@dataclass(frozen=True)
class LinearProgram:
    """Optimize ``objective . x`` subject to ``(a, rel, b)`` rows, rel in {"<=", "=", ">="}.

    Variables are free unless ``nonnegative`` is set.
    """
    objective: tuple
    constraints: tuple = ()
    maximize: bool = True
    nonnegative: bool = False

    def __post_init__(self):
        n = len(self.objective)
        for a, rel, _ in self.constraints:
            if len(a) != n:
                raise DimensionError("constraint and objective dimensions differ")
            if rel not in ("<=", "=", ">="):
                raise ValueError(f"unknown relation {rel!r}")


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Fraction | None = None
    point: tuple | None = None


def _integer_row(coeffs, rhs):
    fr = [Fraction(c) for c in coeffs] + [Fraction(rhs)]
    scale = math.lcm(*(f.denominator for f in fr))
    return [int(f * scale) for f in fr[:-1]], int(fr[-1] * scale)


class _Tableau:
    """Integer-preserving tableau: true entries are ``t[i][j] / den``."""

    def __init__(self, rows, basis, ncols):
        self.t = rows          # last row is the objective row, last column the rhs
        self.basis = basis
        self.ncols = ncols
        self.den = 1

    STALL_LIMIT = 50

    def pivot(self, r, c):
        t, d = self.t, self.den
        pr = t[r]
        p = pr[c]
        for i, row in enumerate(t):
            if i == r:
                continue
            f = row[c]
            if f:
                t[i] = [(x * p - f * y) // d for x, y in zip(row, pr)]
            elif p != d:
                t[i] = [x * p // d for x in row]
        self.den = p
        self.basis[r] = c

    def run(self, allowed) -> str:
        """Dantzig pricing; after a run of degenerate pivots switch to Bland."""
        t = self.t
        m = len(t) - 1
        allowed = list(allowed)
        stalled = 0
        while True:
            obj = t[-1]
            if stalled < self.STALL_LIMIT:
                c = min(allowed, key=lambda j: obj[j])
                if obj[c] >= 0:
                    c = None
            else:
                c = next((j for j in allowed if obj[j] < 0), None)
            if c is None:
                return "optimal"
            best = None
            for i in range(m):
                a = t[i][c]
                if a > 0:
                    b = t[i][-1]
                    if best is None:
                        best = (i, b, a)
                        continue
                    _, bb, ba = best
                    lhs, rhs = b * ba, bb * a
                    if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[best[0]]):
                        best = (i, b, a)
            if best is None:
                return "unbounded"
            stalled = stalled + 1 if best[1] == 0 else 0
            self.pivot(best[0], c)


def lp_solve(p: LinearProgram) -> LPResult:
    """Exact two-phase simplex with Bland's anti-cycling rule.

    >>> lp_solve(LinearProgram((1,), (((1,), "<=", 1), ((1,), ">=", 0)))).value
    Fraction(1, 1)
    """
    n = len(p.objective)
    split = not p.nonnegative
    nstruct = 2 * n if split else n

    rows, rels, rhs = [], [], []
    for a, rel, b in p.constraints:
        a_int, b_int = _integer_row(a, b)
        if split:
            a_int = a_int + [-x for x in a_int]
        if b_int < 0:
            a_int, b_int = [-x for x in a_int], -b_int
            rel = {"<=": ">=", ">=": "<=", "=": "="}[rel]
        rows.append(a_int)
        rels.append(rel)
        rhs.append(b_int)
    m = len(rows)

    n_slack = sum(rel != "=" for rel in rels)
    n_art = sum(rel != "<=" for rel in rels)
    ncols = nstruct + n_slack + n_art
    art_start = nstruct + n_slack
    tab_rows, basis = [], []
    s_idx, a_idx = nstruct, art_start
    for a_int, rel, b in zip(rows, rels, rhs):
        row = a_int + [0] * (n_slack + n_art) + [b]
        if rel == "<=":
            row[s_idx] = 1
            basis.append(s_idx)
            s_idx += 1
        else:
            if rel == ">=":
                row[s_idx] = -1
                s_idx += 1
            row[a_idx] = 1
            basis.append(a_idx)
            a_idx += 1
        tab_rows.append(row)

    # phase 1: minimise the sum of artificials
    obj = [0] * (ncols + 1)
    for j in range(art_start, ncols):
        obj[j] = 1
    for i, bv in enumerate(basis):
        if bv >= art_start:
            obj = [x - y for x, y in zip(obj, tab_rows[i])]
    tab = _Tableau(tab_rows + [obj], basis, ncols)
    if n_art:
        tab.run(range(ncols))
        if tab.t[-1][-1] != 0:
            return LPResult("infeasible")
        # drive zero-level artificials out of the basis
        for i in range(m):
            if tab.basis[i] < art_start:
                continue
            c = next((j for j in range(art_start) if tab.t[i][j] != 0), None)
            if c is None:
                continue  # redundant equality row; the artificial stays at zero
            if tab.t[i][c] < 0:
                tab.t[i] = [-x for x in tab.t[i]]
            tab.pivot(i, c)

    # phase 2
    c_num, _ = _integer_row([(-c if p.maximize else c) for c in p.objective], 0)
    if split:
        c_num = c_num + [-x for x in c_num]
    c_full = c_num + [0] * (ncols - nstruct)
    d = tab.den
    obj = [d * cj for cj in c_full] + [0]
    for i, bv in enumerate(tab.basis):
        cb = c_full[bv]
        if cb:
            obj = [x - cb * y for x, y in zip(obj, tab.t[i])]
    tab.t[-1] = obj
    # artificial columns never re-enter; rows still holding one are redundant
    status = tab.run(range(art_start))
    if status == "unbounded":
        return LPResult("unbounded")

    d = tab.den
    x = [Fraction(0)] * nstruct
    for i, bv in enumerate(tab.basis):
        if bv < nstruct:
            x[bv] = Fraction(tab.t[i][-1], d)
    if split:
        x = [x[j] - x[n + j] for j in range(n)]
    point = tuple(x)
    value = sum((Fraction(c) * xi for c, xi in zip(p.objective, point)), Fraction(0))
    return LPResult("optimal", value, point)


# ---------------------------------------------------------------------------
# exact certificates that avoid LPs

def _subset_masks(dim: int) -> list[tuple[int, ...]]:
    return [tuple(j for j in range(dim) if mask >> j & 1) for mask in range(1, 1 << dim)]


class _SupportBounds:
    """max/min of sum_{j in S} x_j over a point set, for all nonempty S."""

    MAX_DIM = 10

    def __init__(self, a: PointSet):
        self.enabled = a.dim <= self.MAX_DIM
        if not self.enabled:
            return
        self.subsets = _subset_masks(a.dim)
        self.hi, self.lo = [], []
        for s in self.subsets:
            vals = [sum(p[j] for j in s) for p in a.points]
            self.hi.append(max(vals))
            self.lo.append(min(vals))

    def violated(self, q) -> tuple | None:
        """A functional f with f.q > max f over the set, or None."""
        if not self.enabled:
            return None
        for s, hi, lo in zip(self.subsets, self.hi, self.lo):
            v = sum(q[j] for j in s)
            if v > hi:
                return tuple(int(j in s) for j in range(len(q)))
            if v < lo:
                return tuple(-int(j in s) for j in range(len(q)))
        return None


_bounds_cache: dict = {}


def _bounds_for(a: PointSet) -> _SupportBounds:
    key = id(a)
    hit = _bounds_cache.get(key)
    if hit is not None and hit[0] is a:
        return hit[1]
    b = _SupportBounds(a)
    if len(_bounds_cache) > 64:
        _bounds_cache.clear()
    _bounds_cache[key] = (a, b)
    return b


# ---------------------------------------------------------------------------
# hull membership

@dataclass(frozen=True)
class HullCertificate:
    """Either convex weights on ``a.points`` (member) or a separating functional."""
    member: bool
    weights: tuple | None = None
    functional: tuple | None = None

    def to_json(self) -> dict:
        if self.member:
            return {"member": True,
                    "weights": [[list(p), str(w)] for p, w in self.weights]}
        return {"member": False, "functional": [str(f) for f in self.functional]}


def _separating_functional(q, pts) -> tuple:
    # maximise delta <= 1 with f.p - f.q + delta <= 0 for all p and |f_j| <= 1;
    # every row has rhs >= 0, so the origin is a feasible start
    d = len(q)
    cons = [(tuple(pj - Fraction(qj) for pj, qj in zip(p, q)) + (1,), "<=", 0) for p in pts]
    for j in range(d):
        e = tuple(int(i == j) for i in range(d))
        cons.append((e + (0,), "<=", 1))
        cons.append((tuple(-x for x in e) + (0,), "<=", 1))
    cons.append(((0,) * d + (1,), "<=", 1))
    res = lp_solve(LinearProgram((0,) * d + (1,), tuple(cons)))
    assert res.status == "optimal" and res.value > 0
    return res.point[:d]


def _convex_weights(q, pts):
    """Weights w >= 0, sum 1, sum w_i p_i = q, or None."""
    cons = [(tuple(p[j] for p in pts), "=", q[j]) for j in range(len(q))]
    cons.append(((1,) * len(pts), "=", 1))
    res = lp_solve(LinearProgram((0,) * len(pts), tuple(cons), nonnegative=True))
    return res.point if res.status == "optimal" else None


def hull_membership(q: Sequence, a: PointSet) -> HullCertificate:
    """Decide q in conv(a) and return the certificate either way."""
    if len(a) == 0:
        raise EmptyPointSetError("hull membership in an empty point set")
    if len(q) != a.dim:
        raise DimensionError(f"query of length {len(q)} against a {a.dim}-dimensional set")
    q = tuple(Fraction(x) for x in q)
    if all(x.denominator == 1 for x in q):
        qi = tuple(int(x) for x in q)
        if qi in a:
            return HullCertificate(True, weights=((qi, Fraction(1)),))
    f = _bounds_for(a).violated(q)
    if f is not None:
        return HullCertificate(False, functional=tuple(Fraction(x) for x in f))
    pts = a.points
    x = _convex_weights(q, pts)
    if x is not None:
        return HullCertificate(True, weights=tuple((p, w) for p, w in zip(pts, x) if w))
    return HullCertificate(False, functional=_separating_functional(q, pts))


def hull_member(q: Sequence, a: PointSet) -> bool:
    """True iff ``q`` is a convex combination of the points of ``a``.

    >>> hull_member((Fraction(1, 3), Fraction(1, 3)), PointSet.of([(0, 0), (1, 0), (0, 1)]))
    True
    """
    if len(a) == 0:
        raise EmptyPointSetError("hull membership in an empty point set")
    if len(q) != a.dim:
        raise DimensionError(f"query of length {len(q)} against a {a.dim}-dimensional set")
    q = tuple(Fraction(x) for x in q)
    if all(x.denominator == 1 for x in q) and tuple(int(x) for x in q) in a:
        return True
    if _bounds_for(a).violated(q) is not None:
        return False
    return _convex_weights(q, a.points) is not None


# ---------------------------------------------------------------------------
# vertices and edges

def _is_midpoint_of_others(p, a: PointSet) -> bool:
    two_p = tuple(2 * x for x in p)
    for w in a.points:
        if w != p and tuple(t - x for t, x in zip(two_p, w)) in a:
            return True
    return False


def _probe_functionals(dim: int) -> list[tuple]:
    # fixed generic-looking functionals; a unique maximiser is a vertex
    out = []
    for k in range(1, 4 * dim + 9):
        out.append(tuple((k * (j + 1) ** 2 + 7 * j * k * k + 3) % 97 - 48 for j in range(dim)))
    return [f for f in out if any(f)]


def _certified_vertices(a: PointSet) -> set:
    found = set()
    for f in _probe_functionals(a.dim):
        for sign in (1, -1):
            vals = [sign * sum(x * y for x, y in zip(f, p)) for p in a.points]
            top = max(vals)
            hits = [p for p, v in zip(a.points, vals) if v == top]
            if len(hits) == 1:
                found.add(hits[0])
    return found


def vertices(a: PointSet) -> PointSet:
    if len(a) == 0:
        raise EmptyPointSetError("vertices of an empty point set")
    if len(a) <= 2:
        return a
    sure = _certified_vertices(a)
    keep = []
    for p in a.points:
        if p in sure:
            keep.append(p)
            continue
        if _is_midpoint_of_others(p, a):
            continue
        others = [x for x in a.points if x != p]
        if _convex_weights(p, others) is None:
            keep.append(p)
    return PointSet(a.dim, tuple(keep))


def _on_segment(w, u, v) -> bool:
    # w = u + t (v - u) for some t in [0, 1]
    d = [y - x for x, y in zip(u, v)]
    j = next(i for i, x in enumerate(d) if x)
    t = Fraction(w[j] - u[j], d[j])
    if not 0 <= t <= 1:
        return False
    return all(w[i] - u[i] == t * d[i] for i in range(len(d)))


def _shares_midpoint(u, v, a: PointSet) -> bool:
    s = tuple(x + y for x, y in zip(u, v))
    for w in a.points:
        if w == u or w == v:
            continue
        if tuple(x - y for x, y in zip(s, w)) in a and not _on_segment(w, u, v):
            return True
    return False


def edge_margin(u, v, others: Sequence) -> Fraction:
    """Largest delta with f(u) = f(v) >= f(w) + delta for all w in ``others``.

    The functional is unconstrained and delta is capped at 1, so the answer
    is positive exactly when [u, v] is an edge of conv({u, v} + others).
    """
    d = len(u)
    cons = [(tuple(x - y for x, y in zip(u, v)) + (0,), "=", 0)]
    for w in others:
        cons.append((tuple(y - x for x, y in zip(u, w)) + (1,), "<=", 0))
    cons.append(((0,) * d + (1,), "<=", 1))
    res = lp_solve(LinearProgram((0,) * d + (1,), tuple(cons)))
    assert res.status == "optimal"
    return res.value


def edges(a: PointSet) -> list[tuple[tuple, tuple]]:
    """Vertex pairs spanning an edge of conv(a), each pair sorted, list sorted."""
    if len(a) == 0:
        raise EmptyPointSetError("edges of an empty point set")
    vs = vertices(a).points
    out = []
    for i, u in enumerate(vs):
        for v in vs[i + 1:]:
            if _shares_midpoint(u, v, a):
                continue
            others = [w for w in vs if w != u and w != v]
            if not others or edge_margin(u, v, others) > 0:
                out.append((u, v))
    return out


# ---------------------------------------------------------------------------
# lattice points

def _affine_equations(a: PointSet):
    """Rational rows E (reduced, pivots chosen from the right) with E x = e on aff(a)."""
    base = a.points[0]
    diffs = [[Fraction(x - y) for x, y in zip(p, base)] for p in a.points[1:]]
    d = a.dim
    # null space of the difference rows = normals of the affine hull
    m = [row[:] for row in diffs]
    pivots = []
    r = 0
    for c in range(d):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(d) if c not in pivots]
    normals = []
    for fcol in free:
        vec = [Fraction(0)] * d
        vec[fcol] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -m[i][fcol]
        normals.append(vec)
    # reduce the normals with pivots taken from the rightmost columns
    eq = [row[:] for row in normals]
    rhs = [sum(x * y for x, y in zip(row, base)) for row in eq]
    solved = []
    r = 0
    for c in reversed(range(d)):
        piv = next((i for i in range(r, len(eq)) if eq[i][c] != 0), None)
        if piv is None:
            continue
        eq[r], eq[piv] = eq[piv], eq[r]
        rhs[r], rhs[piv] = rhs[piv], rhs[r]
        pv = eq[r][c]
        eq[r] = [x / pv for x in eq[r]]
        rhs[r] /= pv
        for i in range(len(eq)):
            if i != r and eq[i][c] != 0:
                f = eq[i][c]
                eq[i] = [x - f * y for x, y in zip(eq[i], eq[r])]
                rhs[i] -= f * rhs[r]
        solved.append((c, eq[r], rhs[r]))
        r += 1
    return {c: (row, b) for c, row, b in solved}


def _affine_box_points(a: PointSet):
    """Integer points of the bounding box of ``a`` lying on its affine hull."""
    d = a.dim
    lo = [min(p[j] for p in a.points) for j in range(d)]
    hi = [max(p[j] for p in a.points) for j in range(d)]
    solved = _affine_equations(a)
    x = [0] * d

    def rec(j):
        if j == d:
            yield tuple(x)
            return
        if j in solved:
            row, b = solved[j]
            val = b - sum(row[i] * x[i] for i in range(j))
            if val.denominator != 1 or not lo[j] <= val <= hi[j]:
                return
            x[j] = int(val)
            yield from rec(j + 1)
        else:
            for t in range(lo[j], hi[j] + 1):
                x[j] = t
                yield from rec(j + 1)

    yield from rec(0)


def lattice_points_in_hull(a: PointSet, l: IntegerLattice, shift: Sequence[int]) -> PointSet:
    """All points of ``shift + l`` inside conv(a)."""
    if len(a) == 0:
        raise EmptyPointSetError("lattice points of an empty hull")
    if l.ambient_dim != a.dim or len(shift) != a.dim:
        raise DimensionError("lattice, shift and point set dimensions differ")
    shift = tuple(shift)
    for p in a.points:
        if not lattice_member(l, [x - s for x, s in zip(p, shift)]):
            raise SaturationDomainError(f"point {list(p)} is not in shift + lattice")
    bounds = _bounds_for(a)
    out = []
    for z in _affine_box_points(a):
        if not lattice_member(l, [x - s for x, s in zip(z, shift)]):
            continue
        if z in a:
            out.append(z)
        elif bounds.violated(z) is None and hull_member(z, a):
            out.append(z)
    return PointSet(a.dim, tuple(out))


# ---------------------------------------------------------------------------
# Minkowski sums

def minkowski_sum(a: PointSet, b: PointSet) -> PointSet:
    if a.dim != b.dim:
        raise DimensionError("Minkowski sum of sets of different dimension")
    return PointSet(a.dim, tuple({tuple(x + y for x, y in zip(p, q))
                                  for p in a.points for q in b.points}))


def dilate(a: PointSet, m: int) -> PointSet:
    """The m-fold Minkowski sum a + ... + a; m = 0 gives the origin."""
    if m < 0:
        raise ValueError("dilation factor must be nonnegative")
    out = PointSet.origin(a.dim)
    for _ in range(m):
        out = minkowski_sum(out, a)
    return out


def hulls_intersect(a: PointSet, b: PointSet) -> bool:
    """Exact test for conv(a) and conv(b) sharing a point."""
    if len(a) == 0 or len(b) == 0:
        raise EmptyPointSetError("hull of an empty point set")
    if a.dim != b.dim:
        raise DimensionError("point sets of different dimension")
    na, nb = len(a), len(b)
    cons = [(tuple(p[j] for p in a.points) + tuple(-q[j] for q in b.points), "=", 0)
            for j in range(a.dim)]
    cons.append(((1,) * na + (0,) * nb, "=", 1))
    cons.append(((0,) * na + (1,) * nb, "=", 1))
    res = lp_solve(LinearProgram((0,) * (na + nb), tuple(cons), nonnegative=True))
    return res.status == "optimal"
