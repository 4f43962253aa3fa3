"""Acceptance criteria, one test each, at their stated tolerances.

Each test records a PASS/FAIL line; the lines are printed in the terminal
summary (and directly when this file is run as a script).
"""

import itertools
import time

import numpy as np
import pytest

from regideal import closed_form as cf
from regideal import regular_graph as rg
from regideal import verify as vf
from regideal.grammar import format_ideal, format_ring, parse_ideal
from regideal.graph_metrics import all_pairs_distances
from regideal.ring_core import complement, nilradical

from conftest import ACCEPTANCE_LINES, ring


def record(n: int, title: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {title} ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


class Solved:
    """BFS results for one ring, shared by several criteria."""

    def __init__(self, R):
        self.R = R
        self.g = rg.build_digraph(R, validate=False)
        self.u = rg.underlying(self.g)
        self.m = all_pairs_distances(self.u)


@pytest.fixture(scope="module")
def family():
    started = time.perf_counter()
    rings = vf.generate_family(vf.FamilyConfig())
    solved = [Solved(R) for R in rings]
    return solved, time.perf_counter() - started


@pytest.fixture(scope="module")
def reports():
    started = time.perf_counter()
    reps = vf.run_family(vf.FamilyConfig(), controls=False)
    return reps, time.perf_counter() - started


def test_criterion_1_radius_three(family, reports):
    solved, bfs_time = family
    reps, check_time = reports
    elapsed = bfs_time + check_time
    connected = [s for s in solved if s.m.connected]
    bad = [format_ring(s.R) for s in connected if s.m.radius != 3]
    big = max(len(s.u) for s in solved)
    bad += [r.ring for r in reps if r.radius != 3]
    ok = len(connected) >= 25 and len(connected) == len(solved) and not bad and big <= 3000 and elapsed < 60
    record(1, "BFS radius is 3 on the default family", ok,
           f"{len(connected)} connected rings, max {big} vertices, {elapsed:.1f}s, off: {bad}")


def test_criterion_2_diameter_by_field_count(family):
    solved, _ = family
    want = {1: 5, 2: 4}
    bad = [(format_ring(s.R), s.R.n_fields, s.m.diameter) for s in solved
           if s.m.diameter != want.get(s.R.n_fields, 3)]
    seen = sorted({min(s.R.n_fields, 3) for s in solved})
    record(2, "diameter 5/4/3 for one/two/three-plus fields", not bad and seen == [1, 2, 3],
           f"field classes {seen}, mismatches {bad}")


def test_criterion_3_pinned_pair():
    started = time.perf_counter()
    R = ring("F2 x Z4 x Z4")
    I, J = parse_ideal(R, "1,(2),(2)"), parse_ideal(R, "0,(2),(2)")
    s = Solved(R)
    bfs = s.m.distance(s.u.index[I], s.u.index[J])
    d = cf.formula_distance(R, I, J)
    elapsed = time.perf_counter() - started
    ok = bfs == 5 and d.exact == 5 and d.rule == "C-to-W" and elapsed < 1
    record(3, "d(F2x(2)x(2), 0x(2)x(2)) = 5 in F2xZ4xZ4", ok,
           f"bfs {bfs}, formula {d} via {d.rule}, {elapsed:.2f}s")


def test_criterion_4_oracle_equivalence():
    started = time.perf_counter()
    pairs, bad = 0, []
    for text in vf.REGRESSION_SET:
        R = ring(text)
        fast, oracle = rg.fast_arcs(R), rg.oracle_arcs(R)
        pairs += len(R.vertices) * (len(R.vertices) - 1)
        if not np.array_equal(fast, oracle):
            bad.append(text)
    elapsed = time.perf_counter() - started
    record(4, "fast arcs equal the elementwise oracle on the regression set",
           not bad and elapsed < 30, f"{pairs} ordered pairs, {elapsed:.1f}s, mismatches {bad}")


def test_criterion_5_distance_soundness(family):
    solved, _ = family
    exact = candidates = 0
    bad = []
    for s in solved:
        eng = cf.engine(s.R)
        for (i, I), (j, J) in itertools.permutations(enumerate(s.u.vertices), 2):
            d, b = eng.distance(I, J), s.m.distance(i, j)
            if d.exact is None:
                candidates += 1
                good = d.candidates == {3, 4} and b in d.candidates
            else:
                exact += 1
                good = d.exact == b
            if not good:
                bad.append((format_ring(s.R), format_ideal(s.R, I), format_ideal(s.R, J), str(d), b))
    record(5, "formula distances agree with BFS", not bad,
           f"{exact} exact, {candidates} two-candidate pairs, violations {bad[:3]}")


def test_criterion_6_eccentricity_tables(family, reports):
    solved, _ = family
    reps, _ = reports
    bad = []
    for s in solved:
        eng = cf.engine(s.R)
        if eng.reduced:
            continue
        for i, I in enumerate(s.u.vertices):
            e = eng.eccentricity(I)
            if e.exact != s.m.eccentricities[i]:
                bad.append((format_ring(s.R), format_ideal(s.R, I), e.exact, s.m.eccentricities[i]))
    entries = [d for r in reps for d in r.discrepancies]
    unexplained = [d for d in entries if d.severity != vf.KNOWN_OPEN or d.open_question != "center-two-fields"]

    R = ring("F2 x Z4 x F3")
    w = Solved(R)
    I = parse_ideal(R, "1,(2),0")
    bfs_e = w.m.eccentricities[w.u.index[I]]
    stated_center = cf.formula_center(R)
    reproduced = bfs_e == 4 and cf.formula_eccentricity(R, I).exact == 4 and I in stated_center
    flagged = any(d.check == "center" and d.open_question == "center-two-fields"
                  for d in vf.cross_check(R))
    ok = not bad and not unexplained and reproduced and flagged
    record(6, "eccentricity tables match BFS; only the documented center conflict remains", ok,
           f"{len(entries)} known-open entries, mismatches {bad[:3]}, "
           f"conflict on F2xZ4xF3: BFS e(1,(2),0)={bfs_e} while the center statement includes it")


def test_criterion_7_property_suite(family):
    solved, _ = family
    controls = [Solved(ring(t)) for t in vf.CONTROL_SET]
    failures = []
    for s in solved + controls:
        R, arcs, name = s.R, s.g.arcs, format_ring(s.R)
        if not rg.is_transitive(arcs):
            failures.append((name, "transitivity"))
        perm = np.array([s.u.index[complement(R, I)] for I in s.u.vertices])
        if not np.array_equal(arcs, arcs[np.ix_(perm, perm)].T):
            failures.append((name, "arc duality"))
        N = nilradical(R)
        for I in R.ideals:
            if (not rg.c_plus(R, I)) != R.contains(N, I):
                failures.append((name, "C+ empty iff nilpotent", I))
        if s.m.connected:
            if min(s.m.eccentricities) < 3:
                failures.append((name, "eccentricity floor"))
            D = s.m.dist
            if not np.array_equal(D, D[np.ix_(perm, perm)]):
                failures.append((name, "distance duality"))
            e = np.array(s.m.eccentricities)
            if not np.array_equal(e, e[perm]):
                failures.append((name, "eccentricity duality"))
    record(7, "transitivity, C+ emptiness, eccentricity floor, complement and arc duality", not failures,
           f"{len(solved) + len(controls)} rings, failures {failures[:3]}")


def test_criterion_8_reduced_model():
    started = time.perf_counter()
    bad = []
    for text in ("F2 x F3 x F5", "F2 x F3 x F5 x F7"):
        R = ring(text)
        s = Solved(R)
        for (i, I), (j, J) in itertools.permutations(enumerate(s.u.vertices), 2):
            if cf.reduced_distance(R, I, J) != s.m.distance(i, j):
                bad.append((text, I, J))
        # the support map is a bijection onto proper nonempty subsets
        supports = [R.support(I) for I in s.u.vertices]
        n = len(R.components)
        if len(set(supports)) != 2**n - 2:
            bad.append((text, "support bijection"))
        containment = np.array([[B < A for B in supports] for A in supports])
        if not np.array_equal(s.g.arcs, containment):
            bad.append((text, "isomorphism"))
    elapsed = time.perf_counter() - started
    record(8, "reduced model distances and support-containment isomorphism",
           not bad and elapsed < 1, f"{elapsed:.2f}s, failures {bad}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
