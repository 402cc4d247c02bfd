"""Arrowing decisions by pruned exhaustive search over C4-free subgraphs.

This module answers, exactly: does every subgraph of K_{m,n} contain K_{2,2}
or have K_{t,t} in its bipartite complement?  (That is the *standard*
arrowing sense; ARROWS = no good coloring exists.)  The search extends row
by row over C4-free assignments, with four independently toggleable pruning
rules:

* degree-cap: in a good coloring no row may have degree >= 2t once m >= t+1
  and n >= 2t (see ``degree_cap``);
* pair-budget: rows of a C4-free graph occupy disjoint column pairs, so a
  candidate whose pairs overflow C(n,2) cannot be C4-compatible;
* coverage: a t-subset of already-assigned rows that leaves >= t columns
  uncovered is final evidence of K_{t,t} in the complement, and mixed
  subsets are bounded optimistically through the degree cap;
* canonical-order: orderly generation; rows non-increasing in (degree, then
  column lex order with smaller columns more significant), and new columns
  are always the smallest unused indices.

Disabling every rule leaves a sound pure enumeration.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

from .core import BipartiteGraph, UsageError, mask_from_columns
from .witnesses import (
    EXACT,
    LOWER_BOUND,
    NONEXISTENT,
    SEARCHED,
    VERIFIED_WITNESS,
    KnownValueRecord,
    WitnessCertificate,
    star_witness,
    verify_good_coloring,
)

ARROWS = "ARROWS"
NOT_ARROWS = "NOT_ARROWS"
BUDGET_EXHAUSTED = "BUDGET_EXHAUSTED"

RULE_DEGREE_CAP = "degree-cap"
RULE_PAIR_BUDGET = "pair-budget"
RULE_COVERAGE = "coverage"
RULE_CANONICAL = "canonical-order"
PRUNE_RULES = (RULE_DEGREE_CAP, RULE_PAIR_BUDGET, RULE_COVERAGE, RULE_CANONICAL)


@dataclass(frozen=True)
class ArrowingInstance:
    """Parameters of one arrowing question: K_{m,n} vs (K_{2,2}, K_{t,t})."""

    m: int
    n: int
    t: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1 or self.t < 1:
            raise UsageError(f"need m, n, t >= 1, got m={self.m} n={self.n} t={self.t}")


@dataclass(frozen=True)
class SearchConfig:
    """Budgets, parallel width, and per-rule pruning toggles (for ablation)."""

    node_budget: int | None = None  # max candidate extensions attempted, total
    time_budget: float | None = None  # wall-clock seconds
    threads: int = 1
    disabled_rules: frozenset = frozenset()

    def __post_init__(self):
        if self.threads < 1:
            raise UsageError(f"threads must be >= 1, got {self.threads}")
        if self.node_budget is not None and self.node_budget < 1:
            raise UsageError("node budget must be >= 1")
        if self.time_budget is not None and self.time_budget <= 0:
            raise UsageError("time budget must be positive")
        unknown = set(self.disabled_rules) - set(PRUNE_RULES)
        if unknown:
            raise UsageError(f"unknown pruning rules: {sorted(unknown)}")
        object.__setattr__(self, "disabled_rules", frozenset(self.disabled_rules))

    def enabled(self, rule: str) -> bool:
        return rule not in self.disabled_rules


@dataclass(frozen=True)
class SearchStats:
    nodes: int
    attempts: int
    prunes: dict
    elapsed: float


@dataclass(frozen=True)
class SearchOutcome:
    """ARROWS with exhaustion stats, NOT_ARROWS with a verified witness, or budget."""

    verdict: str
    stats: SearchStats
    certificate: WitnessCertificate | None = None


def degree_cap(m: int, n: int, t: int) -> int:
    """Largest row degree a good coloring can have; n when no cap is asserted.

    With m >= t+1 rows and n >= 2t columns, a row x of degree >= 2t in a
    C4-free graph forces K_{t,t} in the complement: every other row meets
    N(x) in at most one column, so any t of the other rows leave at least
    t of N(x)'s columns untouched.  Hence the cap 2t - 1 in that regime.
    """
    if m < 1 or n < 1 or t < 1:
        raise UsageError(f"need m, n, t >= 1, got m={m} n={n} t={t}")
    if m >= t + 1 and n >= 2 * t:
        return 2 * t - 1
    return n


def nonexistence_criterion(m: int, t: int) -> bool:
    """True iff m <= t, in which case star_witness(m, n) is good for every n.

    The star's complement has only m - 1 <= t - 1 nonempty rows, so it can
    never host K_{t,t}; no n arrows, hence no finite value exists.
    """
    if m < 1 or t < 1:
        raise UsageError(f"need m, t >= 1, got m={m} t={t}")
    return m <= t


def _lex_le(a: int, b: int) -> bool:
    """Column-lex comparison of row masks: smaller columns are more significant,
    and having a column beats not having it."""
    if a == b:
        return True
    diff = a ^ b
    low = diff & -diff
    return (b & low) != 0


def _rev_value(mask: int, n: int) -> int:
    """Bit-reversed mask; integer order on these equals the column-lex order."""
    rev = 0
    while mask:
        low = mask & -mask
        rev |= 1 << (n - low.bit_length())
        mask ^= low
    return rev


def _refine_intervals(
    intervals: list[tuple[int, int]], mask: int
) -> list[tuple[int, int]] | None:
    """Split column intervals by a row mask; None when the row is not canonical.

    The intervals partition the column labels into runs whose members are
    interchangeable given the rows placed so far.  A canonical row must take
    a *prefix* of every interval it meets (so interchangeable columns are
    consumed in label order); this subsumes the first-use rule, because the
    unused columns always form the trailing interval.
    """
    out = []
    for start, length in intervals:
        picked = (mask >> start) & ((1 << length) - 1)
        c = picked.bit_count()
        if picked != (1 << c) - 1:
            return None
        if c:
            out.append((start, c))
        if length - c:
            out.append((start + c, length - c))
    return out


def canonical_extension_ok(
    partial: BipartiteGraph | None,
    new_row: Iterable[int],
    n: int | None = None,
) -> bool:
    """True iff appending ``new_row`` keeps a canonical partial assignment canonical.

    Canonical means: rows non-increasing in (degree, then column lex order
    with smaller columns more significant), every never-seen column entering
    as the smallest unused index, and each row consuming interchangeable
    columns in label order (the ordered-partition prefix rule, which makes
    the representative unique per column relabelling class up to column
    automorphisms).  Assumes ``partial`` is itself canonical and that
    ``new_row`` shares at most one column with each of its rows.  Pass
    ``partial=None`` with ``n`` for a fresh instance.
    """
    if partial is None:
        if n is None:
            raise UsageError("need n when extending a fresh instance")
        width = n
        intervals = [(0, width)]
        last = None
    else:
        width = partial.n
        intervals = [(0, width)]
        for row_mask in partial.row_masks:
            intervals = _refine_intervals(intervals, row_mask)
            if intervals is None:
                return False  # partial was not canonical to begin with
        last = partial.row_masks[-1]
    mask = mask_from_columns(new_row, width)
    if _refine_intervals(intervals, mask) is None:
        return False
    if last is not None:
        d_new, d_last = mask.bit_count(), last.bit_count()
        if d_new > d_last:
            return False
        if d_new == d_last and not _lex_le(mask, last):
            return False
    return True


def is_canonical_assignment(g: BipartiteGraph) -> bool:
    """Whole-graph canonicality: every prefix passes canonical_extension_ok."""
    partial = None
    for i in range(g.m):
        row = [c for c in range(g.n) if g.row_masks[i] >> c & 1]
        if not canonical_extension_ok(partial, row, n=g.n):
            return False
        partial = BipartiteGraph(i + 1, g.n, g.row_masks[: i + 1])
    return True


class _BudgetExceeded(Exception):
    pass


class _AbortBranch(Exception):
    pass


class _Coordinator:
    """Cross-worker agreement on the lowest top-level branch with a witness."""

    def __init__(self):
        self._lock = threading.Lock()
        self.best_index: int | None = None
        self.best_masks: tuple[int, ...] | None = None

    def offer(self, index: int, masks: tuple[int, ...]) -> None:
        with self._lock:
            if self.best_index is None or index < self.best_index:
                self.best_index = index
                self.best_masks = masks

    def horizon(self) -> int | None:
        return self.best_index


class _Worker:
    """One deterministic DFS over an assigned slice of top-level branches."""

    def __init__(
        self,
        inst: ArrowingInstance,
        cfg: SearchConfig,
        cap: int,
        deadline: float | None,
        attempt_limit: int | None,
        coord: _Coordinator,
    ):
        self.m, self.n, self.t = inst.m, inst.n, inst.t
        self.cap = cap
        self.cap_on = cfg.enabled(RULE_DEGREE_CAP)
        self.pairs_on = cfg.enabled(RULE_PAIR_BUDGET)
        self.coverage_on = cfg.enabled(RULE_COVERAGE)
        self.canonical_on = cfg.enabled(RULE_CANONICAL)
        self.deadline = deadline
        self.attempt_limit = attempt_limit
        self.coord = coord
        self.pair_capacity = comb(self.n, 2)

        self.nodes = 0
        self.attempts = 0
        self.prunes = {rule: 0 for rule in PRUNE_RULES}
        self.budget_hit = False
        self.found_masks: tuple[int, ...] | None = None
        self.branch_index = 0
        self.error: BaseException | None = None
        self._reset()

    def _reset(self) -> None:
        self.rows: list[int] = []
        self.degs: list[int] = []
        self.used_mask = 0
        self.used_count = 0
        self.pair_used = 0
        self.col_rows = [0] * self.n
        # (start, length, incidence-over-assigned-rows) runs of interchangeable
        # columns, in label order; the canonical generator draws from these
        self.intervals: list[tuple[int, int, int]] = [(0, self.n, 0)]
        self.interval_stack: list[list[tuple[int, int, int]]] = []
        # unions[j] holds the column unions of all j-subsets of assigned rows
        self.unions: list[list[int]] = [[0]] + [[] for _ in range(self.t - 1)]

    def run(self, branches: Sequence[tuple[int, tuple[int, int, int]]]) -> None:
        # a crashed worker must not look like an exhausted one
        try:
            self._run(branches)
        except (_AbortBranch, _BudgetExceeded):
            raise AssertionError("search control flow escaped the branch loop")
        except BaseException as exc:  # re-raised by the coordinator after join
            self.error = exc

    def _run(self, branches: Sequence[tuple[int, tuple[int, int, int]]]) -> None:
        for index, (deg, _rev, mask) in branches:
            horizon = self.coord.horizon()
            if horizon is not None and horizon <= index:
                break
            self.branch_index = index
            self._reset()
            try:
                self._try_candidate(mask, deg)
            except _AbortBranch:
                continue
            except _BudgetExceeded:
                self.budget_hit = True
                break
            if self.found_masks is not None:
                self.coord.offer(index, self.found_masks)
                break

    # -- bookkeeping ---------------------------------------------------

    def _checkpoints(self) -> None:
        if self.attempt_limit is not None and self.attempts > self.attempt_limit:
            raise _BudgetExceeded
        if not (self.attempts & 255):
            if self.deadline is not None and time.monotonic() > self.deadline:
                raise _BudgetExceeded
            horizon = self.coord.horizon()
            if horizon is not None and horizon < self.branch_index:
                raise _AbortBranch

    def _try_candidate(self, mask: int, deg: int) -> None:
        self.attempts += 1
        self._checkpoints()

        add_pairs = deg * (deg - 1) // 2
        if self.pairs_on and self.pair_used + add_pairs > self.pair_capacity:
            self.prunes[RULE_PAIR_BUDGET] += 1
            return

        n, m, t = self.n, self.m, self.t
        # push
        self.rows.append(mask)
        self.degs.append(deg)
        saved_used, saved_count, saved_pairs = self.used_mask, self.used_count, self.pair_used
        self.used_mask |= mask
        self.used_count = self.used_mask.bit_count()
        self.pair_used += add_pairs
        bit = 1 << (len(self.rows) - 1)
        if self.canonical_on:
            self.interval_stack.append(self.intervals)
            refined = []
            for start, length, incidence in self.intervals:
                c = ((mask >> start) & ((1 << length) - 1)).bit_count()
                if c:
                    refined.append((start, c, incidence | bit))
                if length - c:
                    refined.append((start + c, length - c, incidence))
            self.intervals = refined
        else:
            col_rows = self.col_rows
            mm = mask
            while mm:
                low = mm & -mm
                col_rows[low.bit_length() - 1] |= bit
                mm ^= low

        union_lens = None
        ok = True
        if self.coverage_on and m >= t:
            ok = self._coverage_exact_ok(mask)
            if ok:
                union_lens = self._extend_unions(mask)
                ok = self._coverage_mixed_ok()
        elif m >= t:
            union_lens = self._extend_unions(mask)

        if ok:
            self.nodes += 1
            if len(self.rows) == m:
                candidate = BipartiteGraph(m, n, tuple(self.rows))
                if verify_good_coloring(candidate, t).valid:
                    self.found_masks = tuple(self.rows)
            else:
                self._dfs()
        else:
            self.prunes[RULE_COVERAGE] += 1

        # pop
        if union_lens is not None:
            for j, ln in union_lens:
                del self.unions[j][ln:]
        if self.canonical_on:
            self.intervals = self.interval_stack.pop()
        else:
            col_rows = self.col_rows
            mm = mask
            while mm:
                low = mm & -mm
                col_rows[low.bit_length() - 1] &= ~bit
                mm ^= low
        self.used_mask, self.used_count, self.pair_used = saved_used, saved_count, saved_pairs
        self.rows.pop()
        self.degs.pop()

    def _extend_unions(self, mask: int) -> list[tuple[int, int]]:
        lens = []
        top = min(self.t - 1, len(self.rows))
        for j in range(top, 0, -1):
            lst = self.unions[j]
            lens.append((j, len(lst)))
            lst.extend(uv | mask for uv in self.unions[j - 1])
        return lens

    def _coverage_exact_ok(self, mask: int) -> bool:
        # a t-subset of assigned rows leaving >= t columns uncovered is final
        limit = self.n - self.t
        for uv in self.unions[self.t - 1]:
            if (uv | mask).bit_count() <= limit:
                return False
        return True

    def _coverage_mixed_ok(self) -> bool:
        # optimistic bound for t-subsets that still need future rows
        m, n, t = self.m, self.n, self.t
        k1 = len(self.rows)
        future = m - k1
        if future <= 0:
            return True
        fb = n
        if self.cap_on and self.cap < fb:
            fb = self.cap
        if self.canonical_on and self.degs[-1] < fb:
            fb = self.degs[-1]
        ordered = sorted(self.degs)
        limit = n - t
        acc = 0
        top = min(t - 1, k1)
        j0 = t - future if t - future > 0 else 0
        for j in range(top + 1):
            if j > 0:
                acc += ordered[j - 1]
            if j < j0:
                continue
            if acc + (t - j) * fb <= limit:
                return False
        return True

    # -- candidate generation -------------------------------------------

    def _gen_limit(self) -> int:
        limit = self.n
        if self.canonical_on and self.degs:
            limit = min(limit, self.degs[-1])
        if self.cap_on and self.cap < limit:
            self.prunes[RULE_DEGREE_CAP] += 1
            limit = self.cap
        return limit

    def candidates(self) -> list[tuple[int, int, int]]:
        """Extendable row masks at the current depth, as (deg, rev, mask),
        ordered degree-descending then column-lex-descending."""
        n = self.n
        limit = self._gen_limit()
        out: list[tuple[int, int]] = []

        if self.canonical_on:
            # a canonical row takes the first column of some incidence-disjoint
            # used intervals plus a leading block of never-used columns
            u = self.used_count
            max_new = n - u
            pools = [
                (1 << start, incidence)
                for start, _length, incidence in self.intervals
                if incidence
            ]

            def rec(idx: int, omask: int, odeg: int, rows_hit: int) -> None:
                hi = limit - odeg
                if max_new < hi:
                    hi = max_new
                for k in range(hi + 1):
                    out.append((odeg + k, omask | (((1 << k) - 1) << u)))
                if odeg == limit:
                    return
                for body in range(idx, len(pools)):
                    cbit, incidence = pools[body]
                    if incidence & rows_hit:
                        continue
                    rec(body + 1, omask | cbit, odeg + 1, rows_hit | incidence)

            rec(0, 0, 0, 0)
        else:
            col_rows = self.col_rows

            def rec_all(c0: int, omask: int, odeg: int, rows_hit: int) -> None:
                out.append((odeg, omask))
                if odeg == limit:
                    return
                for c in range(c0, n):
                    cr = col_rows[c]
                    if cr & rows_hit:
                        continue
                    rec_all(c + 1, omask | (1 << c), odeg + 1, rows_hit | cr)

            rec_all(0, 0, 0, 0)

        ranked = sorted(
            ((deg, _rev_value(mask, n), mask) for deg, mask in out),
            key=lambda item: (-item[0], -item[1]),
        )
        if self.canonical_on and self.degs:
            last_deg = self.degs[-1]
            last_rev = _rev_value(self.rows[-1], n)
            kept = []
            for deg, rev, mask in ranked:
                if deg == last_deg and rev > last_rev:
                    self.prunes[RULE_CANONICAL] += 1
                    continue
                kept.append((deg, rev, mask))
            ranked = kept
        return ranked

    def _dfs(self) -> None:
        for deg, _rev, mask in self.candidates():
            self._try_candidate(mask, deg)
            if self.found_masks is not None:
                return


def _merge_stats(workers: list[_Worker], base_prunes: dict, elapsed: float, extra_nodes: int) -> SearchStats:
    prunes = dict(base_prunes)
    nodes = extra_nodes
    attempts = 0
    for w in workers:
        nodes += w.nodes
        attempts += w.attempts
        for rule, count in w.prunes.items():
            prunes[rule] = prunes.get(rule, 0) + count
    return SearchStats(nodes=nodes, attempts=attempts, prunes=prunes, elapsed=elapsed)


def arrows(
    inst: ArrowingInstance,
    cfg: SearchConfig | None = None,
    seed: BipartiteGraph | None = None,
) -> SearchOutcome:
    """Decide K_{m,n} -> (K_{2,2}, K_{t,t}) in the standard arrowing sense.

    ARROWS means the canonical search space was exhausted with no good
    coloring; NOT_ARROWS returns the first good coloring found, verified
    before return; BUDGET_EXHAUSTED is returned when a node or time budget
    trips first, never a wrong verdict.  An optional ``seed`` graph is
    verified up front and short-circuits the search when it is already a
    good coloring.
    """
    if cfg is None:
        cfg = SearchConfig()
    start = time.perf_counter()
    base_prunes = {rule: 0 for rule in PRUNE_RULES}

    if seed is not None:
        if seed.m != inst.m or seed.n != inst.n:
            raise UsageError(
                f"seed is {seed.m}x{seed.n}, instance is {inst.m}x{inst.n}"
            )
        cert = verify_good_coloring(seed, inst.t)
        if cert.valid:
            stats = SearchStats(0, 0, base_prunes, time.perf_counter() - start)
            return SearchOutcome(NOT_ARROWS, stats, cert)

    cap = degree_cap(inst.m, inst.n, inst.t)
    deadline = time.monotonic() + cfg.time_budget if cfg.time_budget else None
    coord = _Coordinator()

    # Root node: an instance can be decided before any extension when even
    # t rows of maximal degree cannot cover enough columns.
    if cfg.enabled(RULE_COVERAGE) and inst.m >= inst.t:
        fb = inst.n
        if cfg.enabled(RULE_DEGREE_CAP) and cap < fb:
            fb = cap
        if inst.t * fb <= inst.n - inst.t:
            base_prunes[RULE_COVERAGE] += 1
            stats = SearchStats(1, 0, base_prunes, time.perf_counter() - start)
            return SearchOutcome(ARROWS, stats)

    seeder = _Worker(inst, cfg, cap, deadline, None, coord)
    top = list(enumerate(seeder.candidates()))
    for rule, count in seeder.prunes.items():
        base_prunes[rule] += count

    width = min(cfg.threads, len(top)) or 1
    shares: list[int | None]
    if cfg.node_budget is None:
        shares = [None] * width
    else:
        per, rem = divmod(cfg.node_budget, width)
        shares = [per + (1 if w < rem else 0) for w in range(width)]

    workers = [
        _Worker(inst, cfg, cap, deadline, shares[w], coord) for w in range(width)
    ]
    slices = [top[w::width] for w in range(width)]

    if width == 1:
        workers[0].run(slices[0])
    else:
        threads = [
            threading.Thread(target=workers[w].run, args=(slices[w],), daemon=True)
            for w in range(width)
        ]
        for th in threads:
            th.start()
        for th in threads:
            th.join()

    for worker in workers:
        if worker.error is not None:
            raise worker.error

    elapsed = time.perf_counter() - start
    stats = _merge_stats(workers, base_prunes, elapsed, extra_nodes=1)

    if coord.best_masks is not None:
        graph = BipartiteGraph(inst.m, inst.n, coord.best_masks)
        cert = verify_good_coloring(graph, inst.t)
        if not cert.valid:
            raise RuntimeError("search produced an invalid witness; this is a bug")
        return SearchOutcome(NOT_ARROWS, stats, cert)
    if any(w.budget_hit for w in workers):
        return SearchOutcome(BUDGET_EXHAUSTED, stats)
    return SearchOutcome(ARROWS, stats)


def find_br_m(
    m: int, t: int, n_limit: int, cfg: SearchConfig | None = None
) -> KnownValueRecord:
    """Least n with ARROWS, scanning n upward (arrowing is monotone in n).

    Nonexistent cases short-circuit through the star construction.  A budget
    trip or an exhausted n_limit yields an honest lower-bound record.
    """
    if n_limit < 1:
        raise UsageError(f"n_limit must be >= 1, got {n_limit}")
    if nonexistence_criterion(m, t):
        cert = verify_good_coloring(star_witness(m, 2 * t), t)
        return KnownValueRecord(
            m=m,
            t=t,
            status=NONEXISTENT,
            provenance=VERIFIED_WITNESS,
            certificate=cert,
            note="m <= t: star construction",
        )
    prev_cert: WitnessCertificate | None = None
    for n in range(max(t, 1), n_limit + 1):
        outcome = arrows(ArrowingInstance(m, n, t), cfg)
        if outcome.verdict == BUDGET_EXHAUSTED:
            return KnownValueRecord(
                m=m,
                t=t,
                status=LOWER_BOUND,
                provenance=SEARCHED,
                bound=n,
                certificate=prev_cert,
                note=f"budget exhausted at n={n}",
            )
        if outcome.verdict == ARROWS:
            if prev_cert is None and n > 1:
                below = arrows(ArrowingInstance(m, n - 1, t), cfg)
                prev_cert = below.certificate
            return KnownValueRecord(
                m=m,
                t=t,
                status=EXACT,
                provenance=SEARCHED,
                value=n,
                certificate=prev_cert,
            )
        prev_cert = outcome.certificate
    return KnownValueRecord(
        m=m,
        t=t,
        status=LOWER_BOUND,
        provenance=SEARCHED,
        bound=n_limit + 1,
        certificate=prev_cert,
        note=f"no arrowing up to n={n_limit}",
    )
