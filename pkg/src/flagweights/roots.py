"""Type A root and weight conventions, plus the B2 root data.

SL(n) weights are carried as GL lifts in Z^n together with their grading
(coordinate sum).  Two lifts name the same SL weight iff they differ by a
constant vector.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import accumulate
from typing import Sequence

from .exact import IntegerLattice, IntMat, lattice_member, snf
from .polytope import PointSet


class IndependenceFailure(ValueError):
    """Raised for a dependent family of roots; ``cycle`` lists the roots on a cycle."""

    def __init__(self, cycle):
        self.cycle = cycle
        super().__init__("roots are linearly dependent; cycle: "
                         + ", ".join(_root_name(r) for r in cycle))


class NotTypeARoot(ValueError):
    pass


class GradingError(ValueError):
    pass


@dataclass(frozen=True)
class WeightVec:
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(x) for x in self.coords))

    @property
    def n(self) -> int:
        return len(self.coords)

    @property
    def grading(self) -> int:
        return sum(self.coords)

    def normalize_to_grading(self, g: int) -> "WeightVec":
        """Shift by a constant vector so the grading becomes ``g``."""
        q, r = divmod(g - self.grading, self.n)
        if r:
            raise GradingError(f"cannot move grading {self.grading} to {g} in Z^{self.n}")
        return WeightVec(tuple(x + q for x in self.coords))

    def same_sl_weight(self, other: "WeightVec") -> bool:
        diff = {a - b for a, b in zip(self.coords, other.coords)}
        return self.n == other.n and len(diff) <= 1


@dataclass(frozen=True)
class DominantWeight:
    """GL lift of a dominant weight: weakly decreasing, last entry 0."""
    lambda_tilde: WeightVec

    def __post_init__(self):
        c = self.lambda_tilde.coords
        if not c:
            raise ValueError("empty weight")
        if any(x < y for x, y in zip(c, c[1:])):
            raise ValueError(f"{list(c)} is not weakly decreasing")
        if c[-1] != 0:
            raise ValueError(f"{list(c)} is not normalized to last coordinate 0")

    @classmethod
    def of(cls, coords: Sequence[int]) -> "DominantWeight":
        return cls(WeightVec(tuple(coords)))

    @classmethod
    def parse(cls, text: str) -> "DominantWeight":
        """Read a partition string such as ``"2,1,0"``.

        >>> DominantWeight.parse("2,1,0").size
        3
        """
        try:
            coords = [int(x) for x in text.replace(" ", "").split(",") if x != ""]
        except ValueError:
            raise ValueError(f"bad weight {text!r}") from None
        return cls.of(coords)

    @property
    def n(self) -> int:
        return self.lambda_tilde.n

    @property
    def coords(self) -> tuple:
        return self.lambda_tilde.coords

    @property
    def size(self) -> int:
        return self.lambda_tilde.grading

    def scaled(self, m: int) -> "DominantWeight":
        return DominantWeight.of([m * x for x in self.coords])

    def __add__(self, other: "DominantWeight") -> "DominantWeight":
        return DominantWeight.of([x + y for x, y in zip(self.coords, other.coords)])


def fundamental_weight(k: int, n: int) -> DominantWeight:
    """GL lift e_1 + ... + e_k of the k-th fundamental weight."""
    return DominantWeight.of([1] * k + [0] * (n - k))


@dataclass(frozen=True)
class FundDecomp:
    a: tuple

    def reconstruct(self, n: int) -> tuple:
        coords = [0] * n
        for k, ak in enumerate(self.a, start=1):
            for i in range(k):
                coords[i] += ak
        return tuple(coords)


def fundamental_decomposition(l: DominantWeight) -> FundDecomp:
    c = l.coords
    return FundDecomp(tuple(c[k] - c[k + 1] for k in range(l.n - 1)))


@dataclass(frozen=True)
class RootSet:
    dim: int
    roots: PointSet
    lattice: IntegerLattice

    def __post_init__(self):
        for r in self.roots:
            if tuple(-x for x in r) not in self.roots:
                raise ValueError(f"root set is not closed under negation at {list(r)}")
            if not lattice_member(self.lattice, r):
                raise ValueError(f"root {list(r)} is outside the root lattice")

    def parallel_root(self, direction: Sequence[int]) -> tuple | None:
        """A root proportional to ``direction``, if any."""
        for r in self.roots:
            if _proportional(r, direction):
                return r
        return None


def _proportional(u, v) -> bool:
    """u and v are nonzero and parallel (either orientation)."""
    j = next((t for t, x in enumerate(u) if x), None)
    if j is None or not v[j]:
        return False
    return all(u[i] * v[j] == v[i] * u[j] for i in range(len(u)))


def type_a_roots(n: int) -> RootSet:
    if n < 2:
        raise ValueError("type A roots need n >= 2")
    roots = [tuple(int(t == i) - int(t == j) for t in range(n))
             for i in range(n) for j in range(n) if i != j]
    lattice = IntegerLattice.from_generators(
        [tuple(int(t == i) - int(t == i + 1) for t in range(n)) for i in range(n - 1)], n)
    return RootSet(n, PointSet(n, tuple(roots)), lattice)


def b2_roots() -> RootSet:
    roots = [(1, 0), (0, 1), (1, 1), (1, -1)]
    roots += [(-a, -b) for a, b in roots]
    return RootSet(2, PointSet(2, tuple(roots)), IntegerLattice.standard(2))


def in_root_lattice(v: WeightVec) -> bool:
    return v.grading == 0


def weyl_hull_member(mu: WeightVec, l: DominantWeight) -> bool:
    """Majorization test for mu in conv(S_n . lambda).

    >>> weyl_hull_member(WeightVec((3, 0, 0)), DominantWeight.of((2, 1, 0)))
    False
    """
    if mu.grading != l.size:
        raise GradingError(f"grading {mu.grading} differs from |lambda| = {l.size}")
    if mu.n != l.n:
        raise ValueError("weights of different rank")
    partial_mu = accumulate(sorted(mu.coords, reverse=True))
    partial_l = accumulate(l.coords)
    return all(a <= b for a, b in zip(partial_mu, partial_l))


# ---------------------------------------------------------------------------
# basis extension for independent roots

def _root_edge(r) -> tuple[int, int]:
    """Return (i, j) with r = e_i - e_j, or raise."""
    pos = [t for t, x in enumerate(r) if x == 1]
    neg = [t for t, x in enumerate(r) if x == -1]
    if len(pos) != 1 or len(neg) != 1 or sum(1 for x in r if x) != 2:
        raise NotTypeARoot(f"{list(r)} is not of the form e_i - e_j")
    return pos[0], neg[0]


def _root_name(r) -> str:
    try:
        i, j = _root_edge(r)
        return f"e{i + 1}-e{j + 1}"
    except NotTypeARoot:
        return str(list(r))


def _tree_path(adj, start, goal):
    prev = {start: None}
    stack = [start]
    while stack:
        x = stack.pop()
        if x == goal:
            break
        for y, edge in adj[x]:
            if y not in prev:
                prev[y] = (x, edge)
                stack.append(y)
    path = []
    x = goal
    while prev[x] is not None:
        x, edge = prev[x]
        path.append(edge)
    return path[::-1]


def extend_to_root_basis(rs: Sequence[Sequence[int]], n: int) -> list[tuple]:
    """Complete independent roots e_i - e_j to a Z-basis of the type A root lattice.

    Roots are read as oriented edges of the complete graph K_n; an
    independent family is a forest, and the completion adds the
    lexicographically smallest edges joining different components.
    """
    rs = [tuple(int(x) for x in r) for r in rs]
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    adj = {v: [] for v in range(n)}
    for r in rs:
        if len(r) != n:
            raise NotTypeARoot(f"{list(r)} does not live in Z^{n}")
        i, j = _root_edge(r)
        ri, rj = find(i), find(j)
        if ri == rj:
            raise IndependenceFailure(_tree_path(adj, i, j) + [r])
        parent[ri] = rj
        adj[i].append((j, r))
        adj[j].append((i, r))
    basis = list(rs)
    for i in range(n):
        for j in range(i + 1, n):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
                basis.append(tuple(int(t == i) - int(t == j) for t in range(n)))
    return basis


def root_basis_index(basis: Sequence[Sequence[int]], n: int) -> int:
    """Index of span(basis) in the root lattice, from the Smith form.

    The basis is written in coordinates against the simple roots
    e_1 - e_2, ..., e_{n-1} - e_n; for v with zero sum those coordinates
    are the partial sums v_1, v_1 + v_2, ....
    """
    coords = [list(accumulate(r))[:-1] for r in basis]
    if len(coords) != n - 1:
        return math.inf
    d = snf(IntMat.from_rows(coords, n - 1)).diagonal
    return math.prod(d) if all(d) else math.inf
