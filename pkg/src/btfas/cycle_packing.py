"""Greedy arc-disjoint 4-cycle packing with an optional early exit."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .c4free_fas import find_4cycle
from .errors import OutOfRange
from .graph_core import BipartiteDigraph, FourCycle


@dataclass(frozen=True)
class Packing:
    """Pairwise arc-disjoint 4-cycles plus the input minus their arcs."""

    cycles: tuple[FourCycle, ...]
    residual: BipartiteDigraph

    def validate(self, source: BipartiteDigraph) -> bool:
        """Re-check the packing against the graph it was taken from."""
        seen = set()
        for cycle in self.cycles:
            arcs = cycle.arcs()
            if not cycle.is_cycle_of(source):
                return False
            if any(a in seen for a in arcs):
                return False
            seen.update(arcs)
        return self.residual.arc_count() == source.arc_count() - 4 * len(self.cycles)


def greedy_pack(graph: BipartiteDigraph, limit: Optional[int] = None) -> Packing:
    """Pack 4-cycles greedily until none remain or ``limit`` are found.

    Each round takes the first 4-cycle of the lexicographic scan and
    deletes its arcs, so the result is deterministic.  Without a limit the
    packing is maximal: the residual contains no 4-cycle.
    """
    if limit is not None and limit < 0:
        raise OutOfRange(f"limit must be non-negative, got {limit}")
    cycles: list[FourCycle] = []
    residual = graph
    while limit is None or len(cycles) < limit:
        cycle = find_4cycle(residual)
        if cycle is None:
            break
        residual = residual.delete_arcs(cycle.arcs())
        cycles.append(cycle)
    return Packing(tuple(cycles), residual)
