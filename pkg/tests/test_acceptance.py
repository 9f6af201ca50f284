"""Acceptance suite: one test per gating criterion.

Each test prints a single PASS line (visible with ``pytest -s``) plus any
informational timing report.  Criteria 7 and 8 gate only count invariance;
their runtimes are reported, not asserted.
"""

import random
import time
from itertools import combinations

from boxsat import (
    Box,
    BoxDatabase,
    Clause,
    CnfProblem,
    SolverConfig,
    VariableOrder,
    box_to_clause,
    build_lookup_tables,
    clause_to_box,
    parse_dimacs,
    run,
)
from boxsat.benchgen import (
    GraphQuerySpec,
    InputGraph,
    generate_cnf,
    hidden_solution_blocks,
)
from boxsat.boxes import SUBBOX_RANKS, Trit, rank_to_trits
from boxsat.ordering import ORDERING_STRATEGIES
from boxsat.oracle import brute_count, count_subgraphs, linear_containing, resolve_clauses
from boxsat.solver import SolverState

from conftest import random_box

B = Box.parse

RATIOS = (0.0, 0.45, 1.0)
SKIPS = (True, False)


def test_criterion_1_walkthrough_golden():
    """Example 1 under the identity ordering reproduces the worked figures."""
    started = time.perf_counter()

    db = BoxDatabase(3)
    db.insert(B("F--"))
    db.insert(B("-FF"))
    state = SolverState(3, db, SolverConfig(insertion_ratio=0.0, mode="enumerate"))
    snapshots = []
    while state.step() and len(snapshots) < 3:
        snapshots.append(frozenset(map(repr, state.cache.boxes())))
    while state.step():
        pass

    figure5 = frozenset({"Box('F--')"})
    figure6 = figure5 | {"Box('-FF')"}
    figure7 = figure6 | {"Box('TFT')", "Box('TF-')"}
    assert snapshots == [figure5, figure6, figure7]
    assert state.model_count == 3
    assert state.models == [B("TFT"), B("TTF"), B("TTT")]

    # the parsed formula itself counts to 3 as well, whatever the ordering
    cnf = parse_dimacs("p cnf 3 3\n1 2 0\n1 -2 0\n2 3 0\n")
    result = run(cnf, SolverConfig(mode="enumerate"))
    assert result.count == 3
    assert sorted(result.models) == [(1, -2, 3), (1, 2, -3), (1, 2, 3)]

    elapsed = time.perf_counter() - started
    assert elapsed < 1.0
    print(f"ACCEPTANCE 1 PASS: walkthrough golden run ({elapsed:.3f}s)")


def _sampled_cnf(rng: random.Random) -> CnfProblem:
    n = rng.randint(1, 16)
    if rng.random() < 0.06:
        m = rng.randint(0, 3)
    else:
        lo = max(0, int(n * 1.2))
        m = rng.randint(lo, min(60, max(lo + 1, int(n * 3.5))))
    clauses = []
    for _ in range(m):
        width = min(rng.choice((1, 2, 2, 3, 3, 3, 4, 5)), n)
        variables = rng.sample(range(1, n + 1), width)
        clauses.append(Clause([v if rng.random() < 0.5 else -v for v in variables]))
    return CnfProblem(n, clauses)


def test_criterion_2_oracle_exactness_sweep():
    """500 random CNFs agree with brute force under all 30 configurations."""
    started = time.perf_counter()
    rng = random.Random(0xB0C5)
    instances = []
    while len(instances) < 500:
        cnf = _sampled_cnf(rng)
        expected = brute_count(cnf)
        if expected <= 1500:  # keeps the sweep inside the time budget
            instances.append((cnf, expected))
    runs = 0
    for cnf, expected in instances:
        for ordering in ORDERING_STRATEGIES:
            for ratio in RATIOS:
                for skip in SKIPS:
                    config = SolverConfig(
                        ordering=ordering, insertion_ratio=ratio, lambda_skip=skip
                    )
                    assert run(cnf, config).count == expected, (
                        f"mismatch on n={cnf.variable_count} m={cnf.clause_count} "
                        f"{ordering} ratio={ratio} skip={skip}"
                    )
                    runs += 1
    elapsed = time.perf_counter() - started
    assert elapsed < 600.0
    print(
        f"ACCEPTANCE 2 PASS: {runs} solver runs over 500 instances, "
        f"0 mismatches ({elapsed:.1f}s)"
    )


def test_criterion_3_trie_oracle_equivalence():
    """>= 10,000 (box-set, query) cases match the linear-scan oracle."""
    rng = random.Random(0x7A1E)
    cases = 0
    for trial in range(250):
        n = rng.randint(1, 16)
        raw = [random_box(rng, n) for _ in range(rng.randint(0, 60))]
        db = BoxDatabase(n, lambda_skip=bool(trial % 2))
        stored = []
        for b in raw:
            if not any(s.contains(b) for s in stored):
                stored.append(b)
            db.insert(b)
        for _ in range(40):
            q = random_box(rng, n)
            reference = linear_containing(stored, q)
            witness = db.find_containing(q)
            assert (witness is None) == (not reference)
            if witness is not None:
                assert witness.contains(q)
            shadowing = db.all_containing(q)
            assert set(map(repr, shadowing)) <= set(map(repr, reference))
            complete = db.all_containing(q, include_shadowed=True)
            assert sorted(map(repr, complete)) == sorted(map(repr, reference))
            cases += 1
    assert cases >= 10_000
    print(f"ACCEPTANCE 3 PASS: {cases} trie query cases, 0 mismatches")


def _random_resolvable_pair(rng: random.Random, n: int) -> tuple[Clause, Clause]:
    pivot = rng.randint(1, n)
    left = {pivot}
    right = {-pivot}
    for v in range(1, n + 1):
        if v == pivot:
            continue
        role = rng.randrange(4)
        if role == 0:
            continue
        lit = v if rng.random() < 0.5 else -v
        if role == 1:
            left.add(lit)
        elif role == 2:
            right.add(lit)
        else:
            left.add(lit)
            right.add(lit)  # shared variables agree, keeping one pivot
    return Clause(left), Clause(right)


def test_criterion_4_box_resolution_equals_clause_resolution():
    """10,000 resolvable clause pairs: the two resolution routes coincide."""
    rng = random.Random(0x1E44A)
    for _ in range(10_000):
        n = rng.randint(1, 12)
        c1, c2 = _random_resolvable_pair(rng, n)
        order = VariableOrder(rng.sample(range(1, n + 1), n))
        from boxsat.boxes import resolve

        via_boxes = box_to_clause(
            resolve(clause_to_box(c1, n, order), clause_to_box(c2, n, order)),
            order,
        )
        assert via_boxes.literals == resolve_clauses(c1, c2).literals
    print("ACCEPTANCE 4 PASS: 10000 clause pairs, box and clause resolution agree")


def test_criterion_5_lookup_tables():
    """Both tables equal an exhaustive independent containment scan."""
    tables = build_lookup_tables()
    subs = [rank_to_trits(r) for r in range(SUBBOX_RANKS)]
    for v in range(SUBBOX_RANKS):
        brow = crow = 0
        for j in range(SUBBOX_RANKS):
            a, b = subs[j], subs[v]
            if len(a) <= len(b) and all(
                x == Trit.LAMBDA or x == y for x, y in zip(a, b)
            ):
                brow |= 1 << j
            if j >= 40:
                padded = b + (Trit.LAMBDA,) * (4 - len(b))
                if all(x == Trit.LAMBDA or x == y for x, y in zip(a, padded)):
                    crow |= 1 << j
        assert tables.box_containers[v] == brow, f"box row {v}"
        assert tables.child_containers[v] == crow, f"child row {v}"
    row = tables.box_containers[9]  # the (F, T) input
    assert {i for i in range(SUBBOX_RANKS) if (row >> i) & 1} == {0, 1, 2, 4, 6, 7, 9}
    print("ACCEPTANCE 5 PASS: 121x121 lookup tables match exhaustive containment")


def test_criterion_6_graph_benchmark_correctness():
    """Triangle and 2-path counts on random graphs match direct enumeration."""
    started = time.perf_counter()
    rng = random.Random(0x6AF)
    graphs = 0
    fig10 = InputGraph(4, frozenset({(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)}))
    assert run(generate_cnf(fig10, GraphQuerySpec("clique", 3))).count == 2
    while graphs < 100:
        v = rng.randint(4, 32)
        p = rng.uniform(0.12, 0.5)
        edges = frozenset(
            (a, b) for a, b in combinations(range(v), 2) if rng.random() < p
        )
        graph = InputGraph(v, edges)
        for query in (GraphQuerySpec("clique", 3), GraphQuerySpec("path", 2)):
            cnf = generate_cnf(graph, query)
            assert run(cnf).count == count_subgraphs(graph, query), (
                f"V={v} |E|={len(edges)} {query.kind}"
            )
        graphs += 1
    elapsed = time.perf_counter() - started
    assert elapsed < 300.0
    print(
        f"ACCEPTANCE 6 PASS: {graphs} random graphs x 2 queries, "
        f"0 mismatches ({elapsed:.1f}s)"
    )


def _ratio_sweep_instance() -> CnfProblem:
    rng = random.Random(20260810)
    v = 50
    edges = set()
    while len(edges) < 100:
        a, b = rng.randrange(v), rng.randrange(v)
        if a != b:
            edges.add((min(a, b), max(a, b)))
    graph = InputGraph(v, frozenset(edges))
    return generate_cnf(graph, GraphQuerySpec("clique", 3))


def test_criterion_7_ratio_sweep_count_invariance():
    """>= 10^4-clause instance: identical counts across the ratio sweep."""
    cnf = _ratio_sweep_instance()
    assert cnf.clause_count >= 10_000
    counts = {}
    report = []
    for ratio in (0.0, 0.25, 0.45, 0.75, 1.0):
        result = run(cnf, SolverConfig(insertion_ratio=ratio))
        counts[ratio] = result.count
        report.append(f"  ratio {ratio:4.2f}: runtime {result.run_seconds:6.2f}s")
    assert len(set(counts.values())) == 1, counts
    print(
        f"ACCEPTANCE 7 PASS: {cnf.clause_count} clauses, count "
        f"{counts[0.45]} invariant over 5 insertion ratios"
    )
    print("\n".join(report))


def test_criterion_8_ordering_count_invariance():
    """61-variable / 581-clause instance: all five orderings agree."""
    cnf, groups = hidden_solution_blocks(seed=0)
    assert (cnf.variable_count, cnf.clause_count) == (61, 581)

    expected = 1
    for vs in groups:
        renumber = {v: i + 1 for i, v in enumerate(vs)}
        sub = CnfProblem(
            len(vs),
            [
                Clause([(1 if l > 0 else -1) * renumber[abs(l)] for l in c.literals])
                for c in cnf.clauses
                if set(map(abs, c.literals)) <= set(vs)
            ],
        )
        expected *= brute_count(sub)

    report = []
    for ordering in ORDERING_STRATEGIES:
        result = run(cnf, SolverConfig(ordering=ordering))
        assert result.count == expected, ordering
        report.append(
            f"  {ordering:18s} load {result.load_seconds:6.3f}s  "
            f"run {result.run_seconds:6.3f}s"
        )
    print(
        f"ACCEPTANCE 8 PASS: count {expected} invariant over "
        f"{len(ORDERING_STRATEGIES)} orderings on 61 vars / 581 clauses"
    )
    print("\n".join(report))
