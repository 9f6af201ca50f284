"""The probe-sweep solver: exact model counting over a box database.

The sweep walks candidate points in depth-first order (F before T, first
position most significant).  Each point is checked against the learned-box
cache first, then the clause database; a containing box advances the probe
past everything it covers, a double miss means the point is a model.  Every
box the loop touches feeds a resolution chain: a box ending in F waits in
the slot array ``left`` until its T-ending sibling shows up, the pair
resolves to a box one index shorter, and the chain cascades.  The run ends
when the cascade produces the all-λ box (the whole space is covered) or the
probe walks off the end of the space.

Resolved boxes enter the cache only when their λ fraction reaches the
configured insertion ratio; caching everything bloats the trie faster than
it saves probe work.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .boxes import Box, BoxError, Trit, resolve, tail_resolvable
from .clustertrie import CLUSTER_SPAN, BoxDatabase
from .cnf import CnfProblem, VariableOrder, clause_to_box, point_to_literals
from .ordering import build_order


class SolverError(RuntimeError):
    """Internal invariant violation; indicates a bug, not a bad input."""


@dataclass
class SolverConfig:
    insertion_ratio: float = 0.45
    ordering: str = "grouped-heuristic"
    mode: str = "count"  # "count" | "enumerate"
    lambda_skip: bool = True
    # Experimental alternative gate: measure all-λ clusters instead of λ trits.
    cluster_gate: bool = False
    timeout: float | None = None

    def __post_init__(self):
        if not 0.0 <= self.insertion_ratio <= 1.0:
            raise ValueError("insertion_ratio must lie in [0, 1]")
        if self.mode not in ("count", "enumerate"):
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass
class SolveResult:
    count: int
    models: list[tuple[int, ...]] | None
    load_seconds: float
    run_seconds: float
    iterations: int
    order: VariableOrder
    timed_out: bool = False


@dataclass
class SweepTrace:
    """Optional per-step recording for debugging and soundness checks."""

    steps: list[tuple[Box, str, Box]] = field(default_factory=list)
    cache_inserts: list[tuple[Box, str]] = field(default_factory=list)


def advance(b: Box, p: Box) -> Box | None:
    """Next probe point past ``b``: the smallest full point after ``p`` in
    sweep order that ``b`` does not contain, or None when none is left.

    Equivalent to repeatedly taking the successor point while still inside
    ``b``; computed directly from the box's last fixed position.
    """
    if not p.is_point:
        raise BoxError("probe point must be a full point")
    if not b.contains(p):
        raise BoxError("advance requires the box to contain the probe point")
    if b.mask == 0:
        return None  # the all-λ box covers everything that remains
    low = (b.mask & -b.mask).bit_length() - 1
    if (b.val >> low) & 1 == 0:
        # box fixes F at its last position: flipping that bit escapes
        nxt = (p.val | (1 << low)) & ~((1 << low) - 1)
    else:
        # box fixes T: carry past the position
        nxt = ((p.val >> (low + 1)) + 1) << (low + 1)
    if nxt >= 1 << p.n:
        return None
    return Box.point(p.n, nxt)


class SolverState:
    """Mutable sweep state over a prepared box database (permuted space)."""

    def __init__(
        self,
        n: int,
        database: BoxDatabase,
        config: SolverConfig | None = None,
        on_model: Callable[[Box], None] | None = None,
        trace: SweepTrace | None = None,
    ):
        self.config = config or SolverConfig()
        self.n = n
        self.database = database
        self.cache = BoxDatabase(n, lambda_skip=self.config.lambda_skip)
        self.left: list[Box | None] = [None] * (n + 1)
        self.probe = Box.point(n, 0)
        self.model_count = 0
        self.models: list[Box] | None = [] if self.config.mode == "enumerate" else None
        self.on_model = on_model
        self.trace = trace
        self.covered = False
        self.exhausted = False
        self.iterations = 0

    @property
    def done(self) -> bool:
        return self.covered or self.exhausted

    def gate_passes(self, r: Box) -> bool:
        """Selective insertion: enough of the box must be wildcards."""
        ratio = self.config.insertion_ratio
        if self.n == 0:
            return True
        if self.config.cluster_gate:
            clusters = self.database.cluster_count
            free = sum(
                1
                for d in range(clusters)
                if (r.mask >> max(0, self.n - CLUSTER_SPAN * (d + 1)))
                & ((1 << min(CLUSTER_SPAN, self.n - CLUSTER_SPAN * d)) - 1)
                == 0
            )
            return free >= ratio * clusters
        return r.lambda_count >= ratio * self.n

    def _cache_insert(self, box: Box, source: str) -> None:
        if self.trace is not None:
            self.trace.cache_inserts.append((box, source))
        self.cache.insert(box)
        if box.mask == 0:
            self.covered = True

    def resolve_cascade(self, b: Box) -> list[Box]:
        """Feed the just-processed box through the pending-resolution slots.

        Returns the resolvents produced, whether or not they were cached.
        """
        cur = b
        produced: list[Box] = []
        while True:
            k = cur.index
            if k == 0:
                self._cache_insert(cur, "resolution")
                return produced
            if cur.trit(k - 1) is Trit.FALSE:
                self.left[k] = cur  # most recent left-branching box wins
                return produced
            partner = self.left[k]
            if partner is None:
                raise SolverError(f"no pending left box at index {k} for {cur!r}")
            if not tail_resolvable(cur, partner):
                raise SolverError(
                    f"cascade pair not tail-resolvable: {cur!r} vs {partner!r}"
                )
            cur = resolve(cur, partner)
            produced.append(cur)
            if self.gate_passes(cur):
                self._cache_insert(cur, "resolution")

    def step(self) -> bool:
        """One sweep iteration; returns False once the run is finished."""
        if self.done:
            return False
        p = self.probe
        source = "cache"
        b = self.cache.find_containing(p)
        if b is None:
            found = self.database.all_containing(p)
            if found:
                source = "database"
                # the smallest-index hit advances the probe furthest; it is
                # the one worth caching
                b = min(found, key=lambda f: f.index)
                self._cache_insert(b, "database")
            else:
                source = "model"
                self.model_count += 1
                if self.models is not None:
                    self.models.append(p)
                if self.on_model is not None:
                    self.on_model(p)
                b = p
                self._cache_insert(p, "model")
        nxt = advance(b, p)
        if nxt is None:
            self.exhausted = True
        else:
            self.probe = nxt
        resolvents = self.resolve_cascade(b)
        # A resolvent may cover the advanced probe even when the insertion
        # gate kept it out of the cache.  Advance past those too, otherwise
        # the sweep would enter a right branch whose left sibling was covered
        # only by an uncached resolvent, stranding a stale slot in ``left``.
        moved = True
        while moved and not self.done:
            moved = False
            for r in resolvents:
                if r.contains(self.probe):
                    nxt = advance(r, self.probe)
                    if nxt is None:
                        self.exhausted = True
                    else:
                        self.probe = nxt
                        moved = True
                    break
        self.iterations += 1
        if self.trace is not None:
            self.trace.steps.append((p, source, b))
        return not self.done

    def run_loop(self, deadline: float | None = None) -> bool:
        """Run to completion; returns True if the deadline cut it short."""
        while not self.done:
            self.step()
            if (
                deadline is not None
                and self.iterations % 256 == 0
                and time.perf_counter() > deadline
            ):
                return not self.done
        return False


def build_database(
    cnf: CnfProblem, order: VariableOrder, lambda_skip: bool = True
) -> BoxDatabase:
    db = BoxDatabase(cnf.variable_count, lambda_skip=lambda_skip)
    for cl in cnf.clauses:
        db.insert(clause_to_box(cl, cnf.variable_count, order))
    return db


def solve_boxes(
    boxes: Iterable[Box],
    n: int,
    config: SolverConfig | None = None,
    on_model: Callable[[Box], None] | None = None,
    trace: SweepTrace | None = None,
) -> SolverState:
    """Sweep a raw box set (no ordering applied); returns the final state."""
    config = config or SolverConfig()
    db = BoxDatabase(n, lambda_skip=config.lambda_skip)
    for b in boxes:
        db.insert(b)
    state = SolverState(n, db, config, on_model=on_model, trace=trace)
    state.run_loop()
    return state


def run(
    cnf: CnfProblem,
    config: SolverConfig | None = None,
    on_model: Callable[[tuple[int, ...]], None] | None = None,
    trace: SweepTrace | None = None,
) -> SolveResult:
    """Count (or enumerate) the models of ``cnf``.

    Load time covers ordering and database construction; run time covers the
    sweep itself.  Models stream through ``on_model`` as signed-literal
    tuples in the original variable numbering.
    """
    config = config or SolverConfig()
    t0 = time.perf_counter()
    order = build_order(cnf, config.ordering)
    database = build_database(cnf, order, lambda_skip=config.lambda_skip)
    load_seconds = time.perf_counter() - t0

    emit = None
    if on_model is not None:
        emit = lambda point: on_model(point_to_literals(point, order))

    t1 = time.perf_counter()
    state = SolverState(cnf.variable_count, database, config, on_model=emit, trace=trace)
    deadline = None if config.timeout is None else t1 + config.timeout
    timed_out = state.run_loop(deadline)
    run_seconds = time.perf_counter() - t1

    models = None
    if state.models is not None:
        models = [point_to_literals(m, order) for m in state.models]
    return SolveResult(
        count=state.model_count,
        models=models,
        load_seconds=load_seconds,
        run_seconds=run_seconds,
        iterations=state.iterations,
        order=order,
        timed_out=timed_out,
    )
