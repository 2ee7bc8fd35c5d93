"""Matroids of k-planes, basis exchange, matroid polytopes and the edge theorem.

Ground set elements are 0-based internally and 1-based in JSON.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .exact import Mat, det, rank
from .polytope import PointSet, edges


class EmptyBasisError(ValueError):
    """The first k columns of the matrix do not have full rank."""


class NotAMatroid(ValueError):
    def __init__(self, edge, direction):
        self.edge = edge
        self.direction = direction
        super().__init__(f"hull edge {list(edge[0])} -- {list(edge[1])} has direction "
                         f"{list(direction)}, which is not a root")


class TheoremViolation(RuntimeError):
    """A computation contradicted a statement that is supposed to hold."""


@dataclass(frozen=True)
class Matroid:
    """A family of k-subsets of {0..n-1}; use check_exchange to validate it."""
    n: int
    k: int
    bases: tuple

    def __post_init__(self):
        bases = tuple(sorted({tuple(sorted(int(x) for x in b)) for b in self.bases}))
        if not bases:
            raise ValueError("a matroid needs at least one basis")
        for b in bases:
            if len(b) != self.k:
                raise ValueError(f"basis {b} does not have size {self.k}")
            if len(set(b)) != len(b) or any(not 0 <= x < self.n for x in b):
                raise ValueError(f"basis {b} is not a subset of the ground set")
        object.__setattr__(self, "bases", bases)

    @classmethod
    def uniform(cls, k: int, n: int) -> "Matroid":
        return cls(n, k, tuple(combinations(range(n), k)))

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "bases": [[x + 1 for x in b] for b in self.bases]}

    @classmethod
    def from_json(cls, data: dict) -> "Matroid":
        try:
            return cls(int(data["n"]), int(data["k"]),
                       tuple(tuple(x - 1 for x in b) for b in data["bases"]))
        except (KeyError, TypeError):
            raise ValueError("matroid JSON needs 'n', 'k' and 'bases'") from None


def bracket(g: Mat, rows: Sequence[int]):
    """The minor of ``g`` on the given rows and the first len(rows) columns."""
    return det(g.submatrix(rows, range(len(rows))))


def matroid_from_matrix(g: Mat, k: int) -> Matroid:
    n = g.rows
    if not 1 <= k <= min(n, g.cols):
        raise ValueError(f"k = {k} out of range for a {g.rows}x{g.cols} matrix")
    if rank(g.submatrix(range(n), range(k))) < k:
        raise EmptyBasisError(f"the first {k} columns are linearly dependent")
    bases = tuple(I for I in combinations(range(n), k) if not bracket(g, I).is_zero())
    return Matroid(n, k, bases)


@dataclass(frozen=True)
class Violation:
    b1: tuple
    b2: tuple
    x: int

    def __str__(self):
        one = lambda b: "{" + ",".join(str(e + 1) for e in b) + "}"
        return (f"exchange fails for B1={one(self.b1)}, B2={one(self.b2)}, "
                f"x={self.x + 1}")


def check_exchange(m: Matroid) -> Violation | None:
    """First failure of the basis exchange axiom in lexicographic order, or None."""
    family = set(m.bases)
    for b1 in m.bases:
        s1 = set(b1)
        for b2 in m.bases:
            s2 = set(b2)
            for x in sorted(s1 - s2):
                rest = s1 - {x}
                if not any(tuple(sorted(rest | {y})) in family for y in sorted(s2 - s1)):
                    return Violation(b1, b2, x)
    return None


def indicator(subset: Iterable[int], n: int) -> tuple:
    s = set(subset)
    return tuple(int(i in s) for i in range(n))


def matroid_polytope(m: Matroid) -> PointSet:
    return PointSet(m.n, tuple(indicator(b, m.n) for b in m.bases))


@dataclass(frozen=True)
class GGMSReport:
    passed: bool
    edge_count: int
    non_root_edges: tuple = ()
    # pairs whose hull adjacency disagrees with "differ by one exchange"
    mismatches: tuple = ()

    def to_json(self) -> dict:
        return {"passed": self.passed, "edge_count": self.edge_count,
                "non_root_edges": [[list(u), list(v)] for u, v in self.non_root_edges],
                "mismatches": [{"B1": [x + 1 for x in b1], "B2": [x + 1 for x in b2],
                                "is_edge": e} for b1, b2, e in self.mismatches]}


def is_root_edge(u, v) -> bool:
    """v - u is some e_i - e_j."""
    d = [x - y for x, y in zip(u, v)]
    return sorted(d) == [-1] + [0] * (len(d) - 2) + [1]


def verify_ggms(m: Matroid) -> GGMSReport:
    """Edges of P_M are root-parallel, and are exactly the single-exchange pairs."""
    poly = matroid_polytope(m)
    es = edges(poly)
    edge_set = set(es)
    bad = tuple((u, v) for u, v in es if not is_root_edge(u, v))
    by_point = {indicator(b, m.n): b for b in m.bases}
    mismatches = []
    for i, b1 in enumerate(m.bases):
        for b2 in m.bases[i + 1:]:
            u, v = sorted((indicator(b1, m.n), indicator(b2, m.n)))
            single = len(set(b1) - set(b2)) == 1
            is_edge = (u, v) in edge_set
            if single != is_edge:
                mismatches.append((by_point[u], by_point[v], is_edge))
    return GGMSReport(not bad and not mismatches, len(es), bad, tuple(mismatches))


def matroid_from_root_edge_polytope(a: PointSet) -> Matroid:
    """Read 0/1 points as basis indicators; raise NotAMatroid on a non-root edge."""
    if len(a) == 0:
        raise ValueError("empty point set")
    if any(x not in (0, 1) for p in a for x in p):
        raise ValueError("points must be 0/1 vectors")
    sums = {sum(p) for p in a}
    if len(sums) != 1:
        raise ValueError(f"points have mixed coordinate sums {sorted(sums)}")
    for u, v in edges(a):
        if not is_root_edge(u, v):
            raise NotAMatroid((u, v), tuple(x - y for x, y in zip(v, u)))
    m = Matroid(a.dim, sums.pop(), tuple(tuple(i for i, x in enumerate(p) if x) for p in a))
    violation = check_exchange(m)
    if violation is not None:
        raise TheoremViolation(f"root-parallel edges but {violation}")
    return m


def is_root_parallel(direction: Sequence[int]) -> bool:
    """direction is a nonzero multiple of some e_i - e_j."""
    nz = [x for x in direction if x]
    return len(nz) == 2 and nz[0] == -nz[1]

