"""DIMACS CNF input, clause/box conversion, and variable order permutations.

A clause converts to a box by negation: the assignments a clause *rejects*
are exactly the points falling inside its box.  A positive literal therefore
maps to F at its (order-permuted) position, a negative literal to T, and an
absent variable to λ.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import IO, Iterable

from .boxes import Box, Trit


class DimacsError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Clause:
    """Disjunction of signed literals (var ids are 1-based, sign = polarity)."""

    literals: frozenset[int]

    def __init__(self, literals: Iterable[int]):
        lits = frozenset(int(l) for l in literals)
        if 0 in lits:
            raise ValueError("literal 0 is reserved as the clause terminator")
        object.__setattr__(self, "literals", lits)

    def variables(self) -> set[int]:
        return {abs(l) for l in self.literals}

    def is_tautology(self) -> bool:
        return any(-l in self.literals for l in self.literals)

    def __len__(self) -> int:
        return len(self.literals)

    def __iter__(self):
        return iter(sorted(self.literals, key=abs))


@dataclass
class CnfProblem:
    variable_count: int
    clauses: list[Clause] = field(default_factory=list)
    comments: list[str] = field(default_factory=list)

    def __post_init__(self):
        for cl in self.clauses:
            for lit in cl.literals:
                if not 1 <= abs(lit) <= self.variable_count:
                    raise ValueError(f"literal {lit} out of range 1..{self.variable_count}")

    @property
    def clause_count(self) -> int:
        return len(self.clauses)


class VariableOrder:
    """Bijection between original variable ids and sweep positions (1-based)."""

    __slots__ = ("n", "_position", "_variable")

    def __init__(self, variables_in_position_order: Iterable[int]):
        seq = list(variables_in_position_order)
        n = len(seq)
        if sorted(seq) != list(range(1, n + 1)):
            raise ValueError("ordering must be a permutation of 1..n")
        self.n = n
        self._variable = seq
        self._position = [0] * (n + 1)
        for pos0, v in enumerate(seq):
            self._position[v] = pos0 + 1

    @classmethod
    def identity(cls, n: int) -> "VariableOrder":
        return cls(range(1, n + 1))

    def position_of(self, variable: int) -> int:
        return self._position[variable]

    def variable_at(self, position: int) -> int:
        return self._variable[position - 1]

    def as_sequence(self) -> tuple[int, ...]:
        return tuple(self._variable)

    def __eq__(self, other) -> bool:
        return isinstance(other, VariableOrder) and self._variable == other._variable

    def __repr__(self) -> str:
        return f"VariableOrder({self._variable})"


def parse_dimacs(source: str | bytes | IO) -> CnfProblem:
    """Parse DIMACS CNF text.

    Comment lines are preserved, clauses may span lines, a '%' line ends the
    clause section (SATLIB convention).  Duplicate literals inside a clause
    are dropped; tautological clauses (x and -x together) are discarded
    entirely since they reject no assignment, though they still count toward
    the declared clause total.
    """
    if isinstance(source, bytes):
        source = source.decode("ascii")
    if isinstance(source, str):
        source = io.StringIO(source)

    n = -1
    declared = -1
    seen = 0
    clauses: list[Clause] = []
    comments: list[str] = []
    pending: list[int] = []
    ended = False

    def finish_clause(line_no: int):
        nonlocal seen
        seen += 1
        lits = set(pending)
        pending.clear()
        if any(-l in lits for l in lits):
            return  # tautology: its box would need both T and F at one spot
        clauses.append(Clause(lits))

    line_no = 0
    for raw in source:
        line_no += 1
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c"):
            comments.append(line[1:].lstrip())
            continue
        if line.startswith("%"):
            ended = True
            break
        if line.startswith("p"):
            if n >= 0:
                raise DimacsError("duplicate problem header", line_no)
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"malformed header {line!r}", line_no)
            try:
                n, declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError(f"malformed header {line!r}", line_no) from None
            if n < 0 or declared < 0:
                raise DimacsError("negative counts in header", line_no)
            continue
        if n < 0:
            raise DimacsError("clause before 'p cnf' header", line_no)
        for token in line.split():
            try:
                lit = int(token)
            except ValueError:
                raise DimacsError(f"bad token {token!r}", line_no) from None
            if lit == 0:
                finish_clause(line_no)
                continue
            if not 1 <= abs(lit) <= n:
                raise DimacsError(f"literal {lit} out of range 1..{n}", line_no)
            pending.append(lit)

    if n < 0:
        raise DimacsError("missing 'p cnf' header", line_no or 1)
    if pending and not ended:
        raise DimacsError("unterminated clause at end of input", line_no)
    if seen != declared:
        raise DimacsError(f"header declares {declared} clauses, found {seen}", line_no)
    return CnfProblem(n, clauses, comments)


def write_dimacs(cnf: CnfProblem, out: IO) -> None:
    for comment in cnf.comments:
        out.write(f"c {comment}\n")
    out.write(f"p cnf {cnf.variable_count} {cnf.clause_count}\n")
    for cl in cnf.clauses:
        out.write(" ".join(str(l) for l in cl) + " 0\n")


def clause_to_box(clause: Clause, n: int, order: VariableOrder) -> Box:
    """Box rejecting exactly the assignments that violate ``clause``."""
    mask = val = 0
    for lit in clause.literals:
        bit = 1 << (n - order.position_of(abs(lit)))
        mask |= bit
        if lit < 0:
            val |= bit
    return Box(n, mask, val)


def box_to_clause(box: Box, order: VariableOrder) -> Clause:
    """Inverse of :func:`clause_to_box` (round-trips every clause)."""
    lits = []
    for i in range(box.n):
        t = box.trit(i)
        if t is Trit.LAMBDA:
            continue
        v = order.variable_at(i + 1)
        lits.append(-v if t is Trit.TRUE else v)
    return Clause(lits)


def point_to_literals(point: Box, order: VariableOrder) -> tuple[int, ...]:
    """Signed literals of a full point, in original variable numbering."""
    if not point.is_point:
        raise ValueError("not a full point")
    out = []
    for v in range(1, point.n + 1):
        t = point.trit(order.position_of(v) - 1)
        out.append(v if t is Trit.TRUE else -v)
    return tuple(out)
