"""Brute-force reference implementations.

Everything here recomputes answers the slow, obvious way — truth tables,
linear scans, direct enumeration — sharing no logic with the solver or the
trie.  The test suite checks the fast paths against these, and the CLI's
``--verify`` flag cross-checks counts for small instances.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .benchgen import GraphQuerySpec, InputGraph
from .boxes import Box, Trit
from .cnf import Clause, CnfProblem

BRUTE_LIMIT = 24
_CHUNK_BITS = 20


class OracleLimitError(ValueError):
    pass


def brute_count(cnf: CnfProblem) -> int:
    """Model count by enumerating all 2^n assignments (n <= 24)."""
    n = cnf.variable_count
    if n > BRUTE_LIMIT:
        raise OracleLimitError(f"brute counting capped at {BRUTE_LIMIT} variables")
    total = 0
    chunk = 1 << min(n, _CHUNK_BITS)
    for start in range(0, 1 << n, chunk):
        assigns = np.arange(start, start + chunk, dtype=np.uint32)
        ok = np.ones(len(assigns), dtype=bool)
        for cl in cnf.clauses:
            sat = np.zeros(len(assigns), dtype=bool)
            for lit in cl.literals:
                bit = (assigns >> (abs(lit) - 1)) & 1
                sat |= bit == (1 if lit > 0 else 0)
            ok &= sat
        total += int(ok.sum())
    return total


def brute_models(cnf: CnfProblem) -> list[tuple[int, ...]]:
    """All satisfying assignments as signed-literal tuples (n <= 16)."""
    n = cnf.variable_count
    if n > 16:
        raise OracleLimitError("brute enumeration capped at 16 variables")
    out = []
    for a in range(1 << n):
        good = True
        for cl in cnf.clauses:
            if not any(((a >> (abs(l) - 1)) & 1) == (1 if l > 0 else 0) for l in cl.literals):
                good = False
                break
        if good:
            out.append(tuple(v if (a >> (v - 1)) & 1 else -v for v in range(1, n + 1)))
    return out


def _contains_trits(b: Sequence[Trit], c: Sequence[Trit]) -> bool:
    return all(x is Trit.LAMBDA or x is y for x, y in zip(b, c))


def linear_containing(boxes: Iterable[Box], q: Box) -> list[Box]:
    """Stored boxes containing ``q``, by direct trit comparison."""
    qt = q.trits
    out = []
    for b in boxes:
        if b.n != q.n:
            raise ValueError("box length mismatch")
        if _contains_trits(b.trits, qt):
            out.append(b)
    return out


def resolve_clauses(c1: Clause, c2: Clause) -> Clause:
    """Textbook clause resolution on the unique pivot variable."""
    pivots = sorted({abs(l) for l in c1.literals if -l in c2.literals})
    if len(pivots) != 1:
        raise ValueError(f"expected exactly one pivot, found {pivots}")
    p = pivots[0]
    return Clause(
        [l for l in c1.literals if abs(l) != p]
        + [l for l in c2.literals if abs(l) != p]
    )


def count_subgraphs(graph: InputGraph, query: GraphQuerySpec) -> int:
    """Direct enumeration of query matches under the generator's conventions.

    Cliques count unordered vertex sets; paths count vertex sequences with
    distinct consecutive vertices and strictly increasing endpoints.
    """
    if graph.vertex_count > 64:
        raise OracleLimitError("subgraph oracle capped at 64 vertices")
    if query.size > 3:
        raise OracleLimitError("subgraph oracle capped at size 3")
    adj = graph.adjacency()
    if query.kind == "clique":
        if query.size == 2:
            return len(graph.edges)
        return sum(
            1
            for a, b, c in combinations(range(graph.vertex_count), 3)
            if b in adj[a] and c in adj[a] and c in adj[b]
        )
    if query.size == 2:
        return len(graph.edges)  # one per edge, endpoints ordered low < high
    total = 0
    for mid in range(graph.vertex_count):
        for a, c in combinations(sorted(adj[mid]), 2):
            total += 1  # a < c by construction; a-mid-c walks a path once
    return total
