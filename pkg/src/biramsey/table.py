"""Registry of known m-bipartite Ramsey values, with live-verified witnesses.

Each row records BR_m(K_{s,s}, K_{t,t}) for one m: either a known finite
value or the fact that no finite value exists.  Finite rows carry separate
provenance for the lower bound (a good coloring at n = value - 1, re-verified
whenever the table is built) and the upper bound (trusted literature unless a
search of ours completed).  Rows with left pattern K_{3,3} are outside this
engine's verification machinery (which is specific to K_{2,2} on the left)
and are recorded as trusted literature only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .core import BipartiteGraph, induced_rows
from .witnesses import (
    TRUSTED_LITERATURE,
    VERIFIED_WITNESS,
    star_witness,
    verify_good_coloring,
    witness_6x39,
    witness_8x29,
)

# The b-by-b bipartite Ramsey number BR(K_{2,2}, K_{5,5}), kept as a trusted
# literature constant (obtained by computer search in earlier published work;
# recomputing it is out of scope here).
BICLIQUE_RAMSEY_2_5 = 17


@dataclass(frozen=True)
class TableEntry:
    """One registry row: BR_m(K_{left,left}, K_{t,t})."""

    left: int
    t: int
    m: int
    value: int | None  # None: no finite value exists
    lower_provenance: str
    upper_provenance: str | None  # None for nonexistent rows
    witness: Callable[[], BipartiteGraph] | None = None

    @property
    def nonexistent(self) -> bool:
        return self.value is None


def _witness_7x29() -> BipartiteGraph:
    # any 7 rows of the 8x29 coloring inherit its coverage guarantees
    return induced_rows(witness_8x29(), range(7))


def _star_entry(left: int, t: int, m: int) -> TableEntry:
    return TableEntry(
        left=left,
        t=t,
        m=m,
        value=None,
        lower_provenance=VERIFIED_WITNESS,
        upper_provenance=None,
        witness=lambda m=m, t=t: star_witness(m, 2 * t),
    )


def _literature_entry(left: int, t: int, m: int, value: int | None) -> TableEntry:
    return TableEntry(
        left=left,
        t=t,
        m=m,
        value=value,
        lower_provenance=TRUSTED_LITERATURE,
        upper_provenance=None if value is None else TRUSTED_LITERATURE,
    )


def _registry() -> tuple[TableEntry, ...]:
    rows: list[TableEntry] = []

    # BR_m(K_{2,2}, K_{3,3})
    rows += [_star_entry(2, 3, m) for m in (2, 3)]
    rows += [_literature_entry(2, 3, 4, 15)]
    rows += [_literature_entry(2, 3, m, 12) for m in (5, 6)]
    rows += [_literature_entry(2, 3, m, 9) for m in (7, 8)]

    # BR_m(K_{3,3}, K_{3,3}) -- outside the engine's left pattern
    rows += [_literature_entry(3, 3, m, None) for m in (2, 3, 4)]
    rows += [_literature_entry(3, 3, m, 41) for m in (5, 6)]
    rows += [_literature_entry(3, 3, m, 29) for m in (7, 8)]

    # BR_m(K_{2,2}, K_{4,4})
    rows += [_star_entry(2, 4, m) for m in (2, 3, 4)]
    rows += [_literature_entry(2, 4, 5, 26)]
    rows += [_literature_entry(2, 4, m, 22) for m in (6, 7)]
    rows += [_literature_entry(2, 4, 8, 16)]
    rows += [_literature_entry(2, 4, m, 14) for m in range(9, 14)]

    # BR_m(K_{2,2}, K_{5,5})
    rows += [_star_entry(2, 5, m) for m in (2, 3, 4, 5)]
    rows += [
        TableEntry(2, 5, 6, 40, VERIFIED_WITNESS, TRUSTED_LITERATURE, witness_6x39),
        TableEntry(2, 5, 7, 30, VERIFIED_WITNESS, TRUSTED_LITERATURE, _witness_7x29),
        TableEntry(2, 5, 8, 30, VERIFIED_WITNESS, TRUSTED_LITERATURE, witness_8x29),
    ]
    return tuple(rows)


def build_table() -> list[TableEntry]:
    """The registry with every verified-witness row re-verified live.

    Raises RuntimeError if any stored witness fails verification, so a table
    can never show a verified-witness label backed by a broken certificate.
    """
    entries = []
    for entry in _registry():
        if entry.lower_provenance == VERIFIED_WITNESS:
            if entry.left != 2 or entry.witness is None:
                raise RuntimeError(
                    f"registry row m={entry.m} t={entry.t} claims a verified witness "
                    "the engine cannot check"
                )
            graph = entry.witness()
            cert = verify_good_coloring(graph, entry.t)
            if not cert.valid:
                raise RuntimeError(
                    f"witness for m={entry.m}, t={entry.t} failed re-verification"
                )
            if entry.value is not None and graph.n != entry.value - 1:
                raise RuntimeError(
                    f"witness for m={entry.m}, t={entry.t} has n={graph.n}, "
                    f"expected {entry.value - 1}"
                )
        entries.append(entry)
    return entries


def render_table(entries: list[TableEntry]) -> list[str]:
    """Fixed-width text rows for the CLI."""
    lines = [
        f"{'pair':<18} {'m':>3}  {'value':<14} {'lower bound':<24} {'upper bound':<24}",
        "-" * 88,
    ]
    current = None
    for entry in entries:
        pair = f"(K_{{{entry.left},{entry.left}}}, K_{{{entry.t},{entry.t}}})"
        shown_pair = pair if pair != current else ""
        current = pair
        if entry.nonexistent:
            value = "does not exist"
            lower = (
                f"{entry.lower_provenance} (star)"
                if entry.lower_provenance == VERIFIED_WITNESS
                else entry.lower_provenance
            )
            upper = "-"
        else:
            value = str(entry.value)
            lower = entry.lower_provenance
            upper = entry.upper_provenance or "-"
        lines.append(
            f"{shown_pair:<18} {entry.m:>3}  {value:<14} {lower:<24} {upper:<24}"
        )
    lines.append("-" * 88)
    lines.append(
        f"constant: BR(K_{{2,2}}, K_{{5,5}}) = {BICLIQUE_RAMSEY_2_5} ({TRUSTED_LITERATURE})"
    )
    return lines
