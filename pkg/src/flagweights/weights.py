"""Weight sets of flags, root saturation and torus semistability.

The weight set of g for a dominant weight lambda is computed as the
Minkowski sum of a_k copies of the k-th fundamental weight set, where
lambda = sum a_k * (e_1 + ... + e_k) and the k-th fundamental weight set
consists of indicator vectors of the nonzero k x k minors of g taken on the
first k columns.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import accumulate
from typing import Sequence

from .exact import ONE, GaussianRational, Mat, det, gq
from .matroid import TheoremViolation, bracket, indicator, matroid_from_matrix
from .polytope import (
    HullCertificate,
    PointSet,
    edges,
    hull_membership,
    lattice_points_in_hull,
    minkowski_sum,
)
from .roots import (
    DominantWeight,
    GradingError,
    RootSet,
    WeightVec,
    fundamental_decomposition,
    weyl_hull_member,
)


class SingularMatrixError(ValueError):
    pass


class ZeroVectorError(ValueError):
    pass


@dataclass(frozen=True)
class WeightSet:
    n: int
    grading: int
    points: PointSet

    def __post_init__(self):
        if any(sum(p) != self.grading for p in self.points):
            raise GradingError("weight set with non-uniform grading")

    def __contains__(self, mu):
        return tuple(mu) in self.points

    def __len__(self):
        return len(self.points)


def require_invertible(g: Mat) -> None:
    if g.rows != g.cols:
        raise SingularMatrixError(f"{g.rows}x{g.cols} matrix is not square")
    if det(g).is_zero():
        raise SingularMatrixError("matrix is singular")


def _fundamental_points(g: Mat, k: int) -> tuple:
    m = matroid_from_matrix(g, k)
    return tuple(indicator(b, g.rows) for b in m.bases)


def fundamental_weight_set(g: Mat, k: int) -> WeightSet:
    require_invertible(g)
    if not 1 <= k <= g.rows - 1:
        raise ValueError(f"k must lie in 1..{g.rows - 1}")
    return WeightSet(g.rows, k, PointSet(g.rows, _fundamental_points(g, k)))


class _FlagData:
    """Per-matrix cache of matroid bases by level."""

    def __init__(self, g: Mat):
        require_invertible(g)
        self.g = g
        self.n = g.rows
        self._bases: dict[int, tuple] = {}

    def bases(self, k: int) -> tuple:
        if k not in self._bases:
            self._bases[k] = matroid_from_matrix(self.g, k).bases
        return self._bases[k]

    def points(self, k: int) -> PointSet:
        return PointSet(self.n, tuple(indicator(b, self.n) for b in self.bases(k)))


def _weight_points(data: _FlagData, l: DominantWeight) -> PointSet:
    out = PointSet.origin(data.n)
    for k, ak in enumerate(fundamental_decomposition(l).a, start=1):
        if ak:
            fk = data.points(k)
            for _ in range(ak):
                out = minkowski_sum(out, fk)
    return out


def weight_set(g: Mat, l: DominantWeight) -> WeightSet:
    if l.n != g.rows:
        raise ValueError(f"weight of length {l.n} for a {g.rows}x{g.rows} matrix")
    data = _FlagData(g)
    return WeightSet(g.rows, l.size, _weight_points(data, l))


# ---------------------------------------------------------------------------
# saturation

@dataclass(frozen=True)
class SaturationReport:
    edge_violations: tuple
    missing_points: PointSet

    @property
    def is_saturated(self) -> bool:
        return not self.edge_violations and len(self.missing_points) == 0

    def to_json(self) -> dict:
        return {"is_saturated": self.is_saturated,
                "edge_violations": [[list(u), list(v)] for u, v in self.edge_violations],
                "missing_points": [list(p) for p in self.missing_points]}


def root_saturation_check(a: PointSet, rs: RootSet, shift: Sequence[int],
                          check_edges: bool = True) -> SaturationReport:
    """Root saturation of ``a - shift`` (edges root-parallel, no missing lattice points).

    Missing points are reported in the coordinates of ``a``.
    """
    inside = lattice_points_in_hull(a, rs.lattice, shift)
    missing = PointSet(a.dim, tuple(p for p in inside if p not in a))
    bad = ()
    if check_edges:
        bad = tuple((u, v) for u, v in edges(a)
                    if rs.parallel_root([y - x for x, y in zip(u, v)]) is None)
    return SaturationReport(bad, missing)


@dataclass(frozen=True)
class SaturationLemmaReport:
    N: int
    scaled_member: bool   # N*mu in wt_{N lambda}(g)
    base_member: bool     # mu in wt_lambda(g)

    @property
    def consistent(self) -> bool:
        return self.scaled_member == self.base_member

    def to_json(self) -> dict:
        return {"N": self.N, "scaled_member": self.scaled_member,
                "base_member": self.base_member, "consistent": self.consistent}


def saturation_lemma_check(g: Mat, l: DominantWeight, mu: WeightVec, N: int,
                           bound: int = 8) -> SaturationLemmaReport:
    if mu.grading != l.size:
        raise GradingError(f"|mu| = {mu.grading} but |lambda| = {l.size}")
    if not 1 <= N <= bound:
        raise ValueError(f"N must lie in 1..{bound}")
    data = _FlagData(g)
    base = _weight_points(data, l)
    scaled = base if N == 1 else _weight_points(data, l.scaled(N))
    return SaturationLemmaReport(
        N, tuple(N * x for x in mu.coords) in scaled, mu.coords in base)


# ---------------------------------------------------------------------------
# witnesses and semistability

@dataclass(frozen=True)
class BracketMonomial:
    """A product of brackets [I] (minor on rows I, first |I| columns)."""
    factors: tuple  # ((k, I), ...) with I a 0-based sorted tuple

    def weight(self, n: int) -> tuple:
        w = [0] * n
        for _, rows in self.factors:
            for i in rows:
                w[i] += 1
        return tuple(w)

    def evaluate(self, g: Mat) -> GaussianRational:
        val = ONE
        for _, rows in self.factors:
            val = val * bracket(g, rows)
        return val

    def is_valid_for(self, g: Mat, target: Sequence[int]) -> bool:
        """Every factor is a nonzero minor and the total weight is ``target``."""
        if self.weight(g.rows) != tuple(target):
            return False
        return all(len(rows) == k and not bracket(g, rows).is_zero()
                   for k, rows in self.factors)

    def to_json(self) -> list:
        return [{"k": k, "I": [i + 1 for i in rows]} for k, rows in self.factors]


def find_witness(g: Mat, l: DominantWeight, target: Sequence[int],
                 _data: _FlagData | None = None) -> BracketMonomial | None:
    """Lexicographically first bracket monomial of shape ``l`` and weight ``target``.

    Factors are ordered by level, then by basis; within a level the bases
    are non-decreasing.  Reachable partial sums prune the depth-first search.
    """
    data = _data or _FlagData(g)
    n = data.n
    target = tuple(target)
    slots = [k for k, ak in enumerate(fundamental_decomposition(l).a, start=1)
             for _ in range(ak)]
    if sum(target) != l.size:
        return None
    pts = {k: [indicator(b, n) for b in data.bases(k)] for k in set(slots)}

    reach = [None] * (len(slots) + 1)
    reach[-1] = {(0,) * n}
    for i in range(len(slots) - 1, -1, -1):
        reach[i] = {tuple(x + y for x, y in zip(p, r))
                    for p in pts[slots[i]] for r in reach[i + 1]}
    if target not in reach[0]:
        return None

    dead = set()

    def dfs(i, lo, t):
        if i == len(slots):
            return [] if not any(t) else None
        if (i, lo, t) in dead:
            return None
        k = slots[i]
        for idx in range(lo, len(pts[k])):
            rest = tuple(x - y for x, y in zip(t, pts[k][idx]))
            if rest not in reach[i + 1]:
                continue
            nxt = idx if i + 1 < len(slots) and slots[i + 1] == k else 0
            tail = dfs(i + 1, nxt, rest)
            if tail is not None:
                return [(k, data.bases(k)[idx])] + tail
        dead.add((i, lo, t))
        return None

    found = dfs(0, 0, target)
    return None if found is None else BracketMonomial(tuple(found))


@dataclass(frozen=True)
class SemistabilityReport:
    semistable: bool
    in_root_lattice_case: bool
    test_degree: int              # smallest N with N(lambda - mu) in the root lattice
    target: tuple                 # GL lift of N*mu with grading N*|lambda|
    witness_degree: int | None = None
    witness: BracketMonomial | None = None
    hull_certificate: HullCertificate | None = None
    notes: tuple = field(default=())

    def to_json(self) -> dict:
        out = {
            "semistable": self.semistable,
            "in_root_lattice_case": self.in_root_lattice_case,
            "test_degree": self.test_degree,
            "target": list(self.target),
            "witness_degree": self.witness_degree,
            "witness": None if self.witness is None else self.witness.to_json(),
            "hull_certificate": None if self.hull_certificate is None
            else self.hull_certificate.to_json(),
        }
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _majorization_functional(t: Sequence, l: DominantWeight) -> tuple | None:
    """Indicator of the top-j coordinates of t when a partial sum exceeds lambda's."""
    order = sorted(range(len(t)), key=lambda i: (-t[i], i))
    for j, (s_t, s_l) in enumerate(zip(accumulate(t[i] for i in order), accumulate(l.coords))):
        if s_t > s_l:
            top = set(order[:j + 1])
            return tuple(Fraction(int(i in top)) for i in range(len(t)))
    return None


def semistable(g: Mat, l: DominantWeight, mu: WeightVec) -> SemistabilityReport:
    """Decide whether the flag of g is mu-semistable for L_lambda.

    Semistable means N*mu lies in the weight set of N*lambda for some N,
    which holds iff mu (moved to grading |lambda|) lies in the convex hull of
    the weight set.  In the root lattice case a degree-1 bracket monomial is
    returned as witness; otherwise the witness has the smallest degree N0
    with N0 (lambda - mu) in the root lattice.
    """
    if mu.n != g.rows or l.n != g.rows:
        raise ValueError("weights and matrix have different sizes")
    data = _FlagData(g)
    n = data.n
    diff = l.size - mu.grading
    root_case = diff % n == 0
    n0 = 1 if root_case else n // math.gcd(n, diff % n)
    shift = n0 * diff // n
    target = tuple(n0 * x + shift for x in mu.coords)
    level = l.scaled(n0)
    base = dict(semistable=False, in_root_lattice_case=root_case, test_degree=n0,
                target=target)

    if not weyl_hull_member(WeightVec(target), level):
        f = _majorization_functional(target, level)
        return SemistabilityReport(hull_certificate=HullCertificate(False, functional=f),
                                   notes=("outside the Weyl hull of lambda",), **base)

    wt = _weight_points(data, l)
    cert = hull_membership([Fraction(x, n0) for x in target], wt)
    if not cert.member:
        return SemistabilityReport(hull_certificate=cert, **base)

    if root_case and target not in wt:
        raise TheoremViolation(
            f"{list(target)} lies in the hull of the weight set but not in the set")
    witness = find_witness(g, level, target, _data=data)
    if witness is None:
        raise TheoremViolation(f"no degree-{n0} witness for {list(target)}")
    base["semistable"] = True
    return SemistabilityReport(witness_degree=n0, witness=witness,
                               hull_certificate=cert, **base)


# ---------------------------------------------------------------------------

def projective_point_weight_set(v: Sequence, coord_weights: Sequence[Sequence[int]]) -> PointSet:
    """Weights of the coordinates where v is nonzero."""
    v = [gq(x) for x in v]
    if len(v) != len(coord_weights):
        raise ValueError("vector and weight list lengths differ")
    if all(x.is_zero() for x in v):
        raise ZeroVectorError("the zero vector does not define a point")
    dim = len(coord_weights[0])
    return PointSet(dim, tuple(tuple(w) for x, w in zip(v, coord_weights) if not x.is_zero()))
