"""Holes of graded affine semigroups, checked degree by degree.

For a finite set A of generators on a common affine hyperplane, a hole at
degree d is a point of Z(A) lying in d * conv(A) that is not a sum of d
generators.  A torus orbit closure with weight set A is projectively normal
iff no hole exists at any degree; we check degrees up to a bound.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .exact import IntegerLattice, Mat
from .polytope import PointSet, lattice_points_in_hull, minkowski_sum
from .roots import DominantWeight
from .weights import weight_set


@dataclass(frozen=True)
class GradedGenerators:
    """Generators sharing one value ``grading`` of the functional ``functional``.

    The functional defaults to the coordinate sum.
    """
    gens: PointSet
    grading: int
    functional: tuple | None = None

    def __post_init__(self):
        if len(self.gens) == 0:
            raise ValueError("no generators")
        f = self.functional or (1,) * self.gens.dim
        if len(f) != self.gens.dim:
            raise ValueError("grading functional has the wrong length")
        object.__setattr__(self, "functional", tuple(int(x) for x in f))
        for p in self.gens:
            if self.degree_of(p) != self.grading:
                raise ValueError(f"generator {list(p)} has grading {self.degree_of(p)}, "
                                 f"expected {self.grading}")

    @classmethod
    def of(cls, points: Sequence[Sequence[int]], functional=None) -> "GradedGenerators":
        gens = PointSet.of(points)
        f = functional or (1,) * gens.dim
        s = sum(x * y for x, y in zip(f, gens.points[0]))
        return cls(gens, s, tuple(f))

    @property
    def dim(self) -> int:
        return self.gens.dim

    def degree_of(self, p) -> int:
        return sum(x * y for x, y in zip(self.functional, p))


@dataclass(frozen=True)
class HoleReport:
    checked_up_to: int
    holes: tuple = ()   # ((degree, point), ...)

    @property
    def normal_up_to_D(self) -> bool:
        return not self.holes

    def to_json(self) -> dict:
        return {"checked_up_to": self.checked_up_to,
                "holes": [{"degree": d, "point": list(p)} for d, p in self.holes],
                "normal_up_to_D": self.normal_up_to_D}


def _slices(gg: GradedGenerators, top: int):
    out = PointSet.origin(gg.dim)
    yield 0, out
    for d in range(1, top + 1):
        out = minkowski_sum(out, gg.gens)
        yield d, out


def degree_slice(gg: GradedGenerators, d: int) -> PointSet:
    """All sums of exactly d generators."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    for k, s in _slices(gg, d):
        if k == d:
            return s


def difference_lattice(gg: GradedGenerators) -> IntegerLattice:
    a0 = gg.gens.points[0]
    diffs = [tuple(x - y for x, y in zip(p, a0)) for p in gg.gens.points[1:]]
    return IntegerLattice.from_generators(diffs, gg.dim)


def holes_up_to(gg: GradedGenerators, D: int) -> HoleReport:
    """Compare lattice points of d * conv(A) with the degree-d slice for d <= D.

    Candidates at degree d are the points of d*a0 + L inside conv(slice d),
    where L is spanned by differences of generators; for graded input this
    is exactly Z(A) at degree d, and conv(slice d) = d * conv(A).
    """
    if D < 1:
        raise ValueError("degree bound must be at least 1")
    lat = difference_lattice(gg)
    a0 = gg.gens.points[0]
    holes = []
    for d, sl in _slices(gg, D):
        if d == 0:
            continue
        shift = tuple(d * x for x in a0)
        for z in lattice_points_in_hull(sl, lat, shift):
            if z not in sl:
                holes.append((d, z))
    return HoleReport(D, tuple(holes))


def orbit_closure_normality(g: Mat, l: DominantWeight, D: int = 4) -> HoleReport:
    wt = weight_set(g, l)
    return holes_up_to(GradedGenerators(wt.points, wt.grading), D)
