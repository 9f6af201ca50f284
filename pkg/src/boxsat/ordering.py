"""Global variable ordering strategies.

The sweep solver fixes one variable order up front, and both the probe
advancement and the trie clustering live or die by it.  Two working
principles drive the heuristics here: put high-degree variables early (fewer
divergent branches deep in the sweep), and pack strongly co-occurring
variables into the same 4-wide cluster (one mask intersection recovers the
whole constraint).

Closeness between two variables is 1/(size of the smallest clause containing
both - 1).  All arithmetic on closeness uses exact scaled integers so that
tie-breaks never depend on float rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable

from .cnf import CnfProblem, VariableOrder


@dataclass
class VariableStats:
    n: int
    degree: list[int]  # 1-based; degree[0] unused
    pair_min_size: dict[tuple[int, int], int]  # (u, v) u<v -> smallest co-clause size

    def closeness(self, u: int, v: int) -> Fraction:
        if u > v:
            u, v = v, u
        size = self.pair_min_size.get((u, v))
        return Fraction(0) if size is None else Fraction(1, size - 1)

    def closeness_scale(self) -> int:
        """LCM of occurring denominators; closeness * scale is integral."""
        denoms = {s - 1 for s in self.pair_min_size.values()}
        return math.lcm(*denoms) if denoms else 1


def compute_stats(cnf: CnfProblem) -> VariableStats:
    degree = [0] * (cnf.variable_count + 1)
    pair_min: dict[tuple[int, int], int] = {}
    for cl in cnf.clauses:
        vs = sorted(cl.variables())
        size = len(vs)
        for v in vs:
            degree[v] += 1
        for pair in combinations(vs, 2):
            old = pair_min.get(pair)
            if old is None or size < old:
                pair_min[pair] = size
    return VariableStats(cnf.variable_count, degree, pair_min)


def interconnectedness(group: Iterable[int], stats: VariableStats) -> Fraction:
    """Sum of pairwise closeness inside the group (absent pairs count 0)."""
    total = Fraction(0)
    for u, v in combinations(sorted(group), 2):
        total += stats.closeness(u, v)
    return total


def _degree_descent(variables: Iterable[int], stats: VariableStats) -> list[int]:
    return sorted(variables, key=lambda v: (-stats.degree[v], v))


def order_naive_degree(cnf: CnfProblem) -> VariableOrder:
    stats = compute_stats(cnf)
    return VariableOrder(_degree_descent(range(1, cnf.variable_count + 1), stats))


def order_grouped_heuristic(cnf: CnfProblem) -> VariableOrder:
    """Greedy groups of four: seed by degree, grow by closeness to the group."""
    stats = compute_stats(cnf)
    theta = stats.closeness
    remaining = set(range(1, cnf.variable_count + 1))
    out: list[int] = []
    while len(remaining) >= 4:
        seed = min(remaining, key=lambda v: (-stats.degree[v], v))
        group = [seed]
        remaining.discard(seed)
        for _ in range(3):
            best = min(
                remaining,
                key=lambda v: (
                    -sum(theta(v, g) for g in group),
                    -stats.degree[v],
                    v,
                ),
            )
            group.append(best)
            remaining.discard(best)
        out.extend(group)
    out.extend(_degree_descent(remaining, stats))
    return VariableOrder(out)


_NUMPY_GROUP_THRESHOLD = 28


def order_grouped_optimal(cnf: CnfProblem) -> VariableOrder:
    """Exhaustive grouping: among all 4-subsets of the remaining variables,
    repeatedly take the one with maximal interconnectedness (ties: larger
    degree sum, then lexicographically smaller variable tuple).

    Enumerates every 4-subset each round, so only viable for modest n; large
    inputs go through a vectorized scan with exact integer weights.
    """
    stats = compute_stats(cnf)
    n = cnf.variable_count
    scale = stats.closeness_scale()
    if n >= _NUMPY_GROUP_THRESHOLD and scale * 6 < 2**62:
        groups = _optimal_groups_vectorized(stats, scale)
    else:
        groups = _optimal_groups_scan(stats, scale)
    out: list[int] = []
    used: set[int] = set()
    for group in groups:
        out.extend(_degree_descent(group, stats))
        used.update(group)
    leftover = [v for v in range(1, n + 1) if v not in used]
    out.extend(_degree_descent(leftover, stats))
    return VariableOrder(out)


def _scaled_theta(stats: VariableStats, scale: int) -> dict[tuple[int, int], int]:
    return {pair: scale // (s - 1) for pair, s in stats.pair_min_size.items()}


def _optimal_groups_scan(stats: VariableStats, scale: int) -> list[tuple[int, ...]]:
    theta = _scaled_theta(stats, scale)
    degree = stats.degree
    remaining = list(range(1, stats.n + 1))
    groups = []
    while len(remaining) >= 4:
        best_key = None
        best_group = None
        for g in combinations(remaining, 4):
            ic = sum(theta.get(p, 0) for p in combinations(g, 2))
            key = (-ic, -(degree[g[0]] + degree[g[1]] + degree[g[2]] + degree[g[3]]), g)
            if best_key is None or key < best_key:
                best_key, best_group = key, g
        groups.append(best_group)
        remaining = [v for v in remaining if v not in best_group]
    return groups


def _optimal_groups_vectorized(stats: VariableStats, scale: int) -> list[tuple[int, ...]]:
    import numpy as np

    n = stats.n
    theta = np.zeros((n + 1, n + 1), dtype=np.int64)
    for (u, v), s in stats.pair_min_size.items():
        theta[u, v] = theta[v, u] = scale // (s - 1)
    degree = np.zeros(n + 1, dtype=np.int64)
    degree[1:] = stats.degree[1:]

    combos = np.array(list(combinations(range(1, n + 1), 4)), dtype=np.int64)
    a, b, c, d = combos.T
    ic = theta[a, b] + theta[a, c] + theta[a, d] + theta[b, c] + theta[b, d] + theta[c, d]
    degsum = degree[a] + degree[b] + degree[c] + degree[d]

    alive = np.ones(n + 1, dtype=bool)
    alive[0] = False
    remaining = n
    groups = []
    while remaining >= 4:
        valid = alive[combos].all(axis=1)
        ics = np.where(valid, ic, -1)
        best_ic = ics.max()
        cand = valid & (ic == best_ic)
        ds = np.where(cand, degsum, -1)
        cand &= ds == ds.max()
        rows = combos[np.nonzero(cand)[0]]
        # lexicographically smallest variable tuple among the tied rows
        first = rows[np.lexsort(rows.T[::-1])[0]]
        group = tuple(int(v) for v in first)
        groups.append(group)
        alive[list(group)] = False
        remaining -= 4
    return groups


# -- elimination orderings on the primal graph ----------------------------


def _primal_graph(cnf: CnfProblem) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = {v: set() for v in range(1, cnf.variable_count + 1)}
    for cl in cnf.clauses:
        vs = sorted(cl.variables())
        for u, v in combinations(vs, 2):
            adj[u].add(v)
            adj[v].add(u)
    return adj


def _fill_count(adj: dict[int, set[int]], v: int) -> int:
    nbrs = sorted(adj[v])
    return sum(1 for a, b in combinations(nbrs, 2) if b not in adj[a])


def _eliminate(adj: dict[int, set[int]], v: int) -> None:
    nbrs = adj.pop(v)
    for a in nbrs:
        adj[a].discard(v)
    for a, b in combinations(sorted(nbrs), 2):
        adj[a].add(b)
        adj[b].add(a)


def order_minfill(cnf: CnfProblem) -> VariableOrder:
    """Eliminate the vertex adding the fewest fill edges first."""
    adj = _primal_graph(cnf)
    out = []
    while adj:
        v = min(adj, key=lambda u: (_fill_count(adj, u), len(adj[u]), u))
        out.append(v)
        _eliminate(adj, v)
    return VariableOrder(out)


def order_treewidth(cnf: CnfProblem) -> VariableOrder:
    """Greedy minimum-degree elimination, a standard treewidth surrogate."""
    adj = _primal_graph(cnf)
    out = []
    while adj:
        v = min(adj, key=lambda u: (len(adj[u]), _fill_count(adj, u), u))
        out.append(v)
        _eliminate(adj, v)
    return VariableOrder(out)


ORDERING_STRATEGIES: dict[str, Callable[[CnfProblem], VariableOrder]] = {
    "naive-degree": order_naive_degree,
    "grouped-optimal": order_grouped_optimal,
    "grouped-heuristic": order_grouped_heuristic,
    "treewidth": order_treewidth,
    "minfill": order_minfill,
}


def build_order(cnf: CnfProblem, strategy: str) -> VariableOrder:
    try:
        fn = ORDERING_STRATEGIES[strategy]
    except KeyError:
        raise ValueError(
            f"unknown ordering {strategy!r}; choose from {sorted(ORDERING_STRATEGIES)}"
        ) from None
    return fn(cnf)
