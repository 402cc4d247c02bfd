"""CNF encoding of arrowing instances, DIMACS export, model decoding, toy DPLL.

Variable v(i,j) = i*n + j + 1 asserts that edge (row i, column j) is present,
0-based i and j.  Two clause families make satisfying assignments exactly the
good colorings:

* for every pair of rows i < i' and columns j < j', the no-K_{2,2} clause
  (-v(i,j) -v(i,j') -v(i',j) -v(i',j'));
* for every t-subset R of rows and t-subset C of columns, the covering
  clause OR_{i in R, j in C} v(i,j), which forbids K_{t,t} in the complement.

Unsatisfiability is therefore equivalent to ARROWS.  Covering clauses are
emitted fully expanded (no auxiliary variables), which keeps decoding trivial
and the encoding auditable; the cost is clause volume, acceptable for file
export.  Clause order is fixed (all no-K_{2,2} clauses lexicographic in
(i, i', j, j'), then all covering clauses lexicographic in the subset pair),
so DIMACS output is byte-identical across runs and platforms.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterator, Sequence

from .core import BipartiteGraph, UsageError
from .search import ArrowingInstance
from .witnesses import WitnessCertificate, verify_good_coloring


class EncodingIntegrityError(RuntimeError):
    """A model that satisfies the formula decoded to an invalid coloring."""


@dataclass(frozen=True)
class CnfInstance:
    """The CNF formulation for one (m, n, t) arrowing instance.

    Clauses are streamed, never stored: the covering family alone reaches
    millions of clauses at the interesting sizes.
    """

    m: int
    n: int
    t: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1 or self.t < 1:
            raise UsageError(f"need m, n, t >= 1, got m={self.m} n={self.n} t={self.t}")
        if self.t > min(self.m, self.n):
            raise UsageError(
                f"t={self.t} exceeds min(m, n)={min(self.m, self.n)}; "
                "the covering clauses would be empty"
            )

    @property
    def num_vars(self) -> int:
        return self.m * self.n

    @property
    def num_clauses(self) -> int:
        return comb(self.m, 2) * comb(self.n, 2) + comb(self.m, self.t) * comb(
            self.n, self.t
        )

    def var(self, i: int, j: int) -> int:
        """1-based DIMACS variable for edge (row i, column j), 0-based i, j."""
        if not (0 <= i < self.m and 0 <= j < self.n):
            raise UsageError(f"edge ({i}, {j}) out of range for {self.m}x{self.n}")
        return i * self.n + j + 1

    def clauses(self) -> Iterator[tuple[int, ...]]:
        """All clauses in the canonical order."""
        n = self.n
        for i, i2 in combinations(range(self.m), 2):
            bi, bi2 = i * n, i2 * n
            for j, j2 in combinations(range(n), 2):
                yield (-(bi + j + 1), -(bi + j2 + 1), -(bi2 + j + 1), -(bi2 + j2 + 1))
        for rows in combinations(range(self.m), self.t):
            bases = tuple(i * n for i in rows)
            for cols in combinations(range(n), self.t):
                yield tuple(b + j + 1 for b in bases for j in cols)

    def dimacs_lines(self) -> Iterator[str]:
        """DIMACS text, line by line, without trailing newlines."""
        yield f"p cnf {self.num_vars} {self.num_clauses}"
        n = self.n
        for i, i2 in combinations(range(self.m), 2):
            bi, bi2 = i * n, i2 * n
            for j, j2 in combinations(range(n), 2):
                yield f"-{bi + j + 1} -{bi + j2 + 1} -{bi2 + j + 1} -{bi2 + j2 + 1} 0"
        lits = [str(v) for v in range(self.num_vars + 1)]
        for rows in combinations(range(self.m), self.t):
            bases = tuple(i * n for i in rows)
            for cols in combinations(range(n), self.t):
                yield " ".join(lits[b + j + 1] for b in bases for j in cols) + " 0"


def encode_cnf(inst: ArrowingInstance) -> CnfInstance:
    """CNF for the instance; usage error when t > min(m, n)."""
    return CnfInstance(inst.m, inst.n, inst.t)


def write_dimacs(cnf: CnfInstance, destination) -> None:
    """Write the DIMACS text to a path or a text file object (LF endings)."""
    if isinstance(destination, (str, bytes)) or hasattr(destination, "__fspath__"):
        with open(destination, "w", encoding="ascii", newline="\n") as handle:
            _write_lines(cnf, handle)
    else:
        _write_lines(cnf, destination)


def _write_lines(cnf: CnfInstance, handle: io.TextIOBase) -> None:
    for line in cnf.dimacs_lines():
        handle.write(line)
        handle.write("\n")


def model_from_graph(cnf: CnfInstance, g: BipartiteGraph) -> tuple[bool, ...]:
    """Assignment (index k = variable k+1) with v(i,j) true iff edge present."""
    if g.m != cnf.m or g.n != cnf.n:
        raise UsageError(f"graph is {g.m}x{g.n}, formula is {cnf.m}x{cnf.n}")
    model = []
    for mask in g.row_masks:
        model.extend(bool(mask >> j & 1) for j in range(cnf.n))
    return tuple(model)


def graph_from_model(cnf: CnfInstance, model: Sequence[bool]) -> BipartiteGraph:
    if len(model) != cnf.num_vars:
        raise UsageError(
            f"model assigns {len(model)} variables, formula has {cnf.num_vars}"
        )
    n = cnf.n
    masks = []
    for i in range(cnf.m):
        mask = 0
        for j in range(n):
            if model[i * n + j]:
                mask |= 1 << j
        masks.append(mask)
    return BipartiteGraph(cnf.m, n, tuple(masks))


def satisfies(cnf: CnfInstance, model: Sequence[bool]) -> bool:
    """Clause-by-clause check of a full assignment against the formula."""
    if len(model) != cnf.num_vars:
        raise UsageError(
            f"model assigns {len(model)} variables, formula has {cnf.num_vars}"
        )
    for clause in cnf.clauses():
        for lit in clause:
            if model[lit - 1] if lit > 0 else not model[-lit - 1]:
                break
        else:
            return False
    return True


def decode_model(
    cnf: CnfInstance, model: Sequence[bool], strict: bool = False
) -> WitnessCertificate:
    """Decode a full assignment to a certificate, verified before return.

    With ``strict=True`` an invalid decoded coloring raises
    EncodingIntegrityError: a model that satisfies the formula must decode to
    a good coloring, so invalidity then signals an encoder bug.
    """
    cert = verify_good_coloring(graph_from_model(cnf, model), cnf.t)
    if strict and not cert.valid:
        raise EncodingIntegrityError(
            "satisfying model decoded to an invalid coloring"
        )
    return cert


def dpll(num_vars: int, clause_list: Sequence[Sequence[int]]):
    """Naive deterministic DPLL: unit propagation plus lowest-variable branching.

    Returns (True, model) for satisfiable input, (False, None) otherwise.
    Usable only at toy scale; the interesting instances go to external
    solvers through the DIMACS export.
    """
    clauses = [tuple(c) for c in clause_list]
    occ_all: list[list[int]] = [[] for _ in range(num_vars + 1)]
    occ_pos: list[list[int]] = [[] for _ in range(num_vars + 1)]
    occ_neg: list[list[int]] = [[] for _ in range(num_vars + 1)]
    for ci, clause in enumerate(clauses):
        seen = set()
        for lit in clause:
            v = abs(lit)
            if v < 1 or v > num_vars:
                raise UsageError(f"literal {lit} out of range for {num_vars} variables")
            if v not in seen:
                occ_all[v].append(ci)
                seen.add(v)
            (occ_pos if lit > 0 else occ_neg)[v].append(ci)

    n_unassigned = [len({abs(lit) for lit in clause}) for clause in clauses]
    n_sat = [0] * len(clauses)
    assign: list[bool | None] = [None] * (num_vars + 1)
    trail: list[int] = []

    def assign_lit(lit: int, unit_queue: list[int]) -> bool:
        v = abs(lit)
        val = lit > 0
        if assign[v] is not None:
            return assign[v] == val
        assign[v] = val
        trail.append(v)
        for ci in occ_all[v]:
            n_unassigned[ci] -= 1
        for ci in (occ_pos if val else occ_neg)[v]:
            n_sat[ci] += 1
        for ci in (occ_neg if val else occ_pos)[v]:
            if n_sat[ci] == 0:
                if n_unassigned[ci] == 0:
                    return False
                if n_unassigned[ci] == 1:
                    unit_queue.append(ci)
        return True

    def propagate(unit_queue: list[int]) -> bool:
        while unit_queue:
            ci = unit_queue.pop()
            if n_sat[ci] > 0:
                continue
            lit = next(l for l in clauses[ci] if assign[abs(l)] is None)
            if not assign_lit(lit, unit_queue):
                return False
        return True

    def undo(mark: int) -> None:
        while len(trail) > mark:
            v = trail.pop()
            val = assign[v]
            assign[v] = None
            for ci in occ_all[v]:
                n_unassigned[ci] += 1
            for ci in (occ_pos if val else occ_neg)[v]:
                n_sat[ci] -= 1

    def solve() -> bool:
        v = next((x for x in range(1, num_vars + 1) if assign[x] is None), None)
        if v is None:
            return True
        for val in (True, False):
            mark = len(trail)
            queue: list[int] = []
            if assign_lit(v if val else -v, queue) and propagate(queue):
                if solve():
                    return True
            undo(mark)
        return False

    start_queue = [ci for ci, clause in enumerate(clauses) if len(clause) == 1]
    if any(len(clause) == 0 for clause in clauses):
        return False, None
    if not propagate(start_queue):
        return False, None
    if not solve():
        return False, None
    return True, tuple(bool(assign[v]) for v in range(1, num_vars + 1))


def solve_with_toy_dpll(
    cnf: CnfInstance, clause_limit: int = 200_000
) -> tuple[bool, WitnessCertificate | None]:
    """Materialize the clauses and run the toy DPLL; guarded by a size limit.

    Returns (satisfiable, certificate): SAT models decode, strictly, to a
    verified good coloring.
    """
    if cnf.num_clauses > clause_limit:
        raise UsageError(
            f"{cnf.num_clauses} clauses exceed the toy solver limit {clause_limit}"
        )
    sat, model = dpll(cnf.num_vars, list(cnf.clauses()))
    if not sat:
        return False, None
    return True, decode_model(cnf, model, strict=True)
