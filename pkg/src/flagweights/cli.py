"""Command-line frontend: JSON in, JSON out.

Exit status: 0 on success, 1 when a checked property fails, 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from functools import partial
from itertools import combinations, permutations
from pathlib import Path

import numpy as np

from . import __version__
from .exact import (
    GaussianRational,
    IntegerLattice,
    IntMat,
    Mat,
    det,
    lattice_index,
    snf,
)
from .matroid import (
    EmptyBasisError,
    Matroid,
    NotAMatroid,
    TheoremViolation,
    check_exchange,
    indicator,
    is_root_edge,
    matroid_from_matrix,
    matroid_polytope,
    verify_ggms,
)
from .normality import GradedGenerators, holes_up_to, orbit_closure_normality
from .polytope import (
    PointSet,
    edges,
    hulls_intersect,
    lattice_points_in_hull,
    minkowski_sum,
)
from .roots import (
    DominantWeight,
    GradingError,
    IndependenceFailure,
    NotTypeARoot,
    WeightVec,
    b2_roots,
    extend_to_root_basis,
    root_basis_index,
    type_a_roots,
)
from .weights import (
    SingularMatrixError,
    fundamental_weight_set,
    projective_point_weight_set,
    root_saturation_check,
    saturation_lemma_check,
    semistable,
    weight_set,
)


class InputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# seeded corpora

@dataclass(frozen=True)
class CorpusSpec:
    seed: int
    count: int
    n_max: int = 5
    entry_bound: int = 9
    lambda_sum_max: int = 8

    def rng(self, i: int) -> np.random.Generator:
        return np.random.default_rng(np.random.SeedSequence([self.seed, i]))


# per-suite defaults for (n_max, entry_bound, lambda_sum_max)
SUITE_DEFAULTS = {
    "ggms": (6, 9, 0),
    "saturation": (5, 9, 8),
    "sat-lemma": (5, 9, 8),
    "witness": (5, 9, 8),
    "intersection": (6, 1, 0),
    "normality": (5, 9, 8),
    "basis": (8, 0, 0),
}


def random_invertible(rng, n: int, bound: int) -> Mat:
    while True:
        rows = rng.integers(-bound, bound + 1, size=(n, n)).tolist()
        m = Mat.from_rows(rows)
        if not det(m).is_zero():
            return m


def random_partition(rng, n: int, max_sum: int) -> DominantWeight:
    """Weakly decreasing, last entry 0, sum in 1..max_sum."""
    s = int(rng.integers(1, max_sum + 1))
    parts = sorted(rng.multinomial(s, [1 / (n - 1)] * (n - 1)).tolist(), reverse=True)
    return DominantWeight.of(parts + [0])


def _matrix_json(g: Mat) -> list:
    return [[str(x) for x in g.row(i)] for i in range(g.rows)]


def _flag_instance(spec: CorpusSpec, i: int):
    rng = spec.rng(i)
    n = int(rng.integers(2, spec.n_max + 1))
    g = random_invertible(rng, n, spec.entry_bound)
    lam = random_partition(rng, n, spec.lambda_sum_max)
    return rng, g, lam


def _weyl_slice(lam: DominantWeight) -> PointSet:
    """Integral points of the permutohedron of lambda."""
    orbit = PointSet(lam.n, tuple(set(permutations(lam.coords))))
    return lattice_points_in_hull(orbit, type_a_roots(lam.n).lattice, lam.coords)


# ---------------------------------------------------------------------------
# suites; each returns (ok, instance description, detail)

def _suite_ggms(spec, i):
    rng = spec.rng(i)
    n = int(rng.integers(2, spec.n_max + 1))
    g = random_invertible(rng, n, spec.entry_bound)
    for k in range(1, n):
        rep = verify_ggms(matroid_from_matrix(g, k))
        if not rep.passed:
            return False, {"matrix": _matrix_json(g), "k": k}, rep.to_json()
    return True, {"n": n}, None


def _suite_saturation(spec, i):
    _, g, lam = _flag_instance(spec, i)
    n = g.rows
    rs = type_a_roots(n)
    inst = {"matrix": _matrix_json(g), "lambda": list(lam.coords)}
    wt = weight_set(g, lam)
    rep = root_saturation_check(wt.points, rs, lam.coords)
    if not rep.is_saturated:
        return False, inst, rep.to_json()
    for k in range(1, n):
        fk = fundamental_weight_set(g, k)
        rep = root_saturation_check(fk.points, rs, [1] * k + [0] * (n - k))
        if not rep.is_saturated:
            return False, dict(inst, k=k), rep.to_json()
    return True, inst, None


def _suite_sat_lemma(spec, i):
    _, g, lam = _flag_instance(spec, i)
    inst = {"matrix": _matrix_json(g), "lambda": list(lam.coords)}
    base = weight_set(g, lam)
    candidates = _weyl_slice(lam)
    for N in (2, 3):
        scaled = weight_set(g, lam.scaled(N))
        for mu in candidates:
            left = tuple(N * x for x in mu) in scaled
            if left != (mu in base):
                return False, dict(inst, N=N, mu=list(mu)), {"scaled_member": left,
                                                            "base_member": not left}
    # one call through the public entry point
    rep = saturation_lemma_check(g, lam, WeightVec(candidates.points[0]), 2)
    if not rep.consistent:
        return False, inst, rep.to_json()
    return True, dict(inst, checked=len(candidates)), None


WITNESS_DEGREE_CAP = 12  # largest N0 * |lambda| for the non-root-lattice checks


def _check_report(g, lam, mu, rep):
    if rep.semistable and rep.witness is None:
        return "semistable without witness"
    if rep.semistable != (rep.hull_certificate is not None and rep.hull_certificate.member):
        return "hull certificate disagrees with the verdict"
    if rep.semistable and rep.in_root_lattice_case and rep.witness_degree != 1:
        return "root lattice case without a degree-1 witness"
    if rep.witness is not None and not rep.witness.is_valid_for(g, rep.target):
        return "witness does not re-evaluate"
    return None


def _suite_witness(spec, i):
    rng, g, lam = _flag_instance(spec, i)
    n = g.rows
    inst = {"matrix": _matrix_json(g), "lambda": list(lam.coords)}
    mus = [WeightVec(mu) for mu in _weyl_slice(lam)]
    for _ in range(3):
        off = int(rng.integers(1, n)) if n > 1 else 0
        mu = [int(x) for x in rng.integers(0, lam.coords[0] + 1, size=n)]
        mu[0] -= off
        wv = WeightVec(mu)
        diff = (lam.size - wv.grading) % n
        n0 = n // math.gcd(n, diff) if diff else 1
        if n0 * lam.size <= WITNESS_DEGREE_CAP:
            mus.append(wv)
    witnesses = 0
    for mu in mus:
        try:
            rep = semistable(g, lam, mu)
        except TheoremViolation as exc:
            return False, dict(inst, mu=list(mu.coords)), str(exc)
        problem = _check_report(g, lam, mu, rep)
        if problem:
            return False, dict(inst, mu=list(mu.coords)), problem
        witnesses += rep.witness is not None
    return True, dict(inst, witnesses=witnesses), None


def _random_matroid(rng, n: int, bound: int) -> Matroid:
    k = int(rng.integers(1, n))
    while True:
        g = Mat.from_rows(rng.integers(-bound, bound + 1, size=(n, k)).tolist())
        try:
            return matroid_from_matrix(g, k)
        except EmptyBasisError:
            continue


def _suite_intersection(spec, i):
    rng = spec.rng(i)
    n = int(rng.integers(2, spec.n_max + 1))
    m1 = _random_matroid(rng, n, spec.entry_bound)
    m2 = _random_matroid(rng, n, spec.entry_bound)
    a = matroid_polytope(m1).translate([-x for x in indicator(m1.bases[0], n)])
    b0 = matroid_polytope(m2)
    roots = type_a_roots(n).roots.points
    for attempt in range(20):
        base = b0.points[int(rng.integers(len(b0)))]
        t = [0] * n
        for _ in range(int(rng.integers(0, 3)) if attempt < 19 else 0):
            r = roots[int(rng.integers(len(roots)))]
            t = [x + y for x, y in zip(t, r)]
        if attempt == 19:
            base = b0.points[0]
        b = b0.translate([x - y for x, y in zip(t, base)])
        if hulls_intersect(a, b):
            break
    inst = {"A": a.to_json(), "B": b.to_json()}
    common = set(a.points) & set(b.points)
    if not common:
        return False, inst, "hulls meet but the point sets are disjoint"
    return True, dict(inst, common=len(common)), None


def _suite_normality(spec, i, max_degree=4):
    _, g, lam = _flag_instance(spec, i)
    inst = {"matrix": _matrix_json(g), "lambda": list(lam.coords)}
    rep = orbit_closure_normality(g, lam, max_degree)
    if not rep.normal_up_to_D:
        return False, inst, rep.to_json()
    return True, inst, None


def random_forest(rng, n: int) -> list[tuple]:
    pairs = list(combinations(range(n), 2))
    order = rng.permutation(len(pairs))
    target = int(rng.integers(0, n))
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    out = []
    for idx in order:
        if len(out) == target:
            break
        i, j = pairs[idx]
        ri, rj = find(i), find(j)
        if ri == rj:
            continue
        parent[ri] = rj
        if rng.integers(2):
            i, j = j, i
        out.append(tuple(int(t == i) - int(t == j) for t in range(n)))
    return out


def _suite_basis(spec, i):
    rng = spec.rng(i)
    n = int(rng.integers(2, spec.n_max + 1))
    forest = random_forest(rng, n)
    inst = {"n": n, "roots": [list(r) for r in forest]}
    basis = extend_to_root_basis(forest, n)
    if len(basis) != n - 1 or basis[:len(forest)] != forest:
        return False, inst, "basis does not extend the input"
    if root_basis_index(basis, n) != 1:
        return False, inst, "extension has index > 1"
    coords = [[sum(r[:j + 1]) for j in range(n - 1)] for r in basis]
    d = snf(IntMat.from_rows(coords, n - 1)).diagonal
    if any(x != 1 for x in d):
        return False, inst, {"invariant_factors": list(d)}
    if i == 0:
        sub = IntegerLattice.from_generators([(1, -1), (1, 1)], 2)
        if lattice_index(sub, IntegerLattice.standard(2)) != 2:
            return False, {"b2_pair": [[1, -1], [1, 1]]}, "index is not 2"
    return True, inst, None


SUITES = {
    "ggms": _suite_ggms,
    "saturation": _suite_saturation,
    "sat-lemma": _suite_sat_lemma,
    "witness": _suite_witness,
    "intersection": _suite_intersection,
    "normality": _suite_normality,
    "basis": _suite_basis,
}


def _run_instance(which, spec, i):
    ok, inst, detail = SUITES[which](spec, i)
    return {"index": i, "ok": ok, "instance": inst, "detail": detail}


def property_suite(spec: CorpusSpec, which: str, jobs: int = 1) -> dict:
    if which not in SUITES:
        raise InputError(f"unknown suite {which!r}; choose from {', '.join(SUITES)}")
    work = partial(_run_instance, which, spec)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(work, range(spec.count)))
    else:
        results = [work(i) for i in range(spec.count)]
    failures = [r for r in results if not r["ok"]]
    return {"suite": which, "corpus": asdict(spec),
            "passed": len(results) - len(failures), "failed": len(failures),
            "first_counterexample": failures[0] if failures else None}


def exhaustive_exchange_check(n_max: int = 4) -> dict:
    """Exchange axiom versus root-parallel edges over every basis family."""
    checked, bad = 0, []
    for n in range(1, n_max + 1):
        for k in range(1, n + 1):
            subsets = list(combinations(range(n), k))
            for mask in range(1, 1 << len(subsets)):
                fam = [s for j, s in enumerate(subsets) if mask >> j & 1]
                m = Matroid(n, k, tuple(fam))
                exch = check_exchange(m) is None
                poly = matroid_polytope(m)
                rootish = all(is_root_edge(u, v) for u, v in edges(poly))
                checked += 1
                if exch != rootish:
                    bad.append({"n": n, "k": k, "bases": [[x + 1 for x in b] for b in fam],
                                "exchange": exch, "root_parallel": rootish})
    return {"checked": checked, "discrepancies": bad}


# ---------------------------------------------------------------------------
# SO(5) example

SO5_VECTOR = (1, "i", 0, "i", 1)
SO5_WEIGHTS = ((1, 0), (0, 1), (0, 0), (0, -1), (-1, 0))


def so5_demo() -> dict:
    v = [GaussianRational.parse(x) if isinstance(x, str) else x for x in SO5_VECTOR]
    wt = projective_point_weight_set(v, SO5_WEIGHTS)
    rep = root_saturation_check(wt, b2_roots(), (1, 0))
    square = minkowski_sum(wt, wt)
    origin_ok = (0, 0) in square
    matches = (set(wt.points) == {(1, 0), (0, 1), (0, -1), (-1, 0)}
               and rep.missing_points.points == ((0, 0),)
               and origin_ok)
    return {"weight_set": wt.to_json(), "saturation": rep.to_json(),
            "origin_in_square": origin_ok, "matches_expected": matches}


# ---------------------------------------------------------------------------
# argument handling

def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc.msg})") from None


def _int_vector(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError:
        raise InputError(f"bad integer vector {text!r}") from None


def _load_matrix(path: str) -> Mat:
    return Mat.from_json(_read_json(path))


def _load_points(path: str) -> PointSet:
    data = _read_json(path)
    if isinstance(data, list):
        return PointSet.of(data)
    return PointSet.from_json(data)


def _cmd_matroid(args):
    m = matroid_from_matrix(_load_matrix(args.matrix), args.k)
    out = m.to_json()
    if args.ggms:
        rep = verify_ggms(m)
        out["ggms"] = rep.to_json()
        return out, 0 if rep.passed else 1
    return out, 0


def _cmd_wtset(args):
    wt = weight_set(_load_matrix(args.matrix), DominantWeight.parse(args.lam))
    return {"n": wt.n, "grading": wt.grading, **wt.points.to_json()}, 0


def _cmd_semistable(args):
    rep = semistable(_load_matrix(args.matrix), DominantWeight.parse(args.lam),
                     WeightVec(_int_vector(args.mu)))
    return rep.to_json(), 0


def _cmd_saturation(args):
    if args.matrix:
        if not args.lam:
            raise InputError("--matrix needs --lambda")
        lam = DominantWeight.parse(args.lam)
        pts = weight_set(_load_matrix(args.matrix), lam).points
        rs, shift = type_a_roots(lam.n), lam.coords
    elif args.points:
        pts = _load_points(args.points)
        rs = b2_roots() if args.roots == "b2" else type_a_roots(pts.dim)
        shift = _int_vector(args.shift) if args.shift else pts.points[0]
    else:
        raise InputError("give --matrix/--lambda or --points")
    rep = root_saturation_check(pts, rs, shift, check_edges=not args.no_edges)
    return rep.to_json(), 0 if rep.is_saturated else 1


def _cmd_normality(args):
    if args.generators:
        gg = GradedGenerators.of(_load_points(args.generators).points)
        rep = holes_up_to(gg, args.max_degree)
    elif args.matrix and args.lam:
        rep = orbit_closure_normality(_load_matrix(args.matrix),
                                      DominantWeight.parse(args.lam), args.max_degree)
    else:
        raise InputError("give --generators or --matrix with --lambda")
    return rep.to_json(), 0 if rep.normal_up_to_D else 1


def _cmd_extend(args):
    if Path(args.roots).is_file():
        roots = [tuple(r) for r in _read_json(args.roots)]
    else:
        roots = [_int_vector(part) for part in args.roots.split(";") if part.strip()]
    n = args.n or (len(roots[0]) if roots else None)
    if n is None:
        raise InputError("empty root list needs --n")
    basis = extend_to_root_basis(roots, n)
    coords = [[sum(r[:j + 1]) for j in range(n - 1)] for r in basis]
    d = snf(IntMat.from_rows(coords, n - 1)).diagonal if n > 1 else ()
    return {"basis": [list(r) for r in basis], "invariant_factors": list(d),
            "index": root_basis_index(basis, n)}, 0


def _cmd_so5(args):
    rep = so5_demo()
    return rep, 0 if rep["matches_expected"] else 1


def _cmd_suite(args):
    n_max, bound, lam_max = SUITE_DEFAULTS.get(args.suite, (5, 9, 8))
    spec = CorpusSpec(args.seed, args.count,
                      args.n_max if args.n_max is not None else n_max,
                      args.entry_bound if args.entry_bound is not None else bound,
                      args.lambda_sum_max if args.lambda_sum_max is not None else lam_max)
    rep = property_suite(spec, args.suite, args.jobs)
    return rep, 0 if rep["failed"] == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", help="write JSON here instead of standard output")

    p = argparse.ArgumentParser(prog="flagweights",
                                description="Weight sets of flags and their saturation.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("matroid", parents=[common], help="matroid of the first k columns")
    s.add_argument("--matrix", required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--ggms", action="store_true", help="also check the polytope edges")
    s.set_defaults(func=_cmd_matroid)

    s = sub.add_parser("wtset", parents=[common], help="weight set of a flag")
    s.add_argument("--matrix", required=True)
    s.add_argument("--lambda", dest="lam", required=True)
    s.set_defaults(func=_cmd_wtset)

    s = sub.add_parser("semistable", parents=[common], help="torus semistability")
    s.add_argument("--matrix", required=True)
    s.add_argument("--lambda", dest="lam", required=True)
    s.add_argument("--mu", required=True)
    s.set_defaults(func=_cmd_semistable)

    s = sub.add_parser("saturation-check", parents=[common], help="root saturation")
    s.add_argument("--matrix")
    s.add_argument("--lambda", dest="lam")
    s.add_argument("--points")
    s.add_argument("--roots", choices=["a", "b2"], default="a")
    s.add_argument("--shift")
    s.add_argument("--no-edges", action="store_true")
    s.set_defaults(func=_cmd_saturation)

    s = sub.add_parser("normality", parents=[common], help="holes up to a degree")
    s.add_argument("--matrix")
    s.add_argument("--lambda", dest="lam")
    s.add_argument("--generators")
    s.add_argument("--max-degree", type=int, default=4)
    s.set_defaults(func=_cmd_normality)

    s = sub.add_parser("extend-basis", parents=[common], help="complete roots to a basis")
    s.add_argument("--roots", required=True,
                   help='JSON file or vectors like "1,-1,0;0,1,-1"')
    s.add_argument("--n", type=int)
    s.set_defaults(func=_cmd_extend)

    s = sub.add_parser("so5-demo", parents=[common], help="the SO(5) example")
    s.set_defaults(func=_cmd_so5)

    s = sub.add_parser("property-suite", parents=[common], help="seeded property runs")
    s.add_argument("--suite", required=True, choices=sorted(SUITES))
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=100)
    s.add_argument("--n-max", type=int)
    s.add_argument("--entry-bound", type=int)
    s.add_argument("--lambda-sum-max", type=int)
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=_cmd_suite)
    return p


INPUT_ERRORS = (InputError, ValueError, GradingError, SingularMatrixError,
                NotTypeARoot, IndependenceFailure, EmptyBasisError, NotAMatroid)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out, status = args.func(args)
    except TheoremViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = json.dumps(out, indent=2) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
