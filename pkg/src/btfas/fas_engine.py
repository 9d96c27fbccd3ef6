"""The k-cycles-or-small-feedback-arc-set pipeline for bipartite tournaments.

``solve`` either returns k arc-disjoint 4-cycles or a feedback arc set of
size at most 7(k-1), built from three ingredients: a greedy maximal
packing with fewer than k cycles, a certified feedback arc set of the
4-cycle-free residual, and the packed-cycle arcs that run backward in a
topological order of the residual minus that set.  Both outcomes are
machine-checked before they are returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .c4free_fas import fas_c4free
from .cycle_packing import Packing, greedy_pack
from .errors import InternalInvariantError, NotATournament, OutOfRange, VertexNotInOrder
from .graph_core import Arc, BipartiteDigraph, FourCycle, VertexRef


@dataclass(frozen=True)
class PackingOutcome:
    """Certificate branch: at least ``requested`` arc-disjoint 4-cycles."""

    requested: int
    packing: Packing


@dataclass(frozen=True)
class FasOutcome:
    """Feedback arc set branch, with its two parts and the order used.

    ``residual_part`` breaks every cycle of the input minus the packed
    arcs; ``backward_part`` holds the packed-cycle arcs that run backward
    in ``order``.  Their union is a verified feedback arc set of size at
    most ``bound`` = 7 * (requested - 1).
    """

    requested: int
    packing: Packing
    fas: frozenset[Arc]
    residual_part: frozenset[Arc]
    backward_part: frozenset[Arc]
    order: tuple[VertexRef, ...]
    bound: int


SolveOutcome = Union[PackingOutcome, FasOutcome]


def backward_arcs(order: Sequence[VertexRef], cycle: FourCycle) -> frozenset[Arc]:
    """Arcs of the cycle whose tail comes after their head in the order.

    For a genuine cycle and a genuine order the result has 1 to 3 arcs: a
    cycle cannot be fully forward, and its closing arc guarantees at least
    one backward arc.
    """
    position = {v: i for i, v in enumerate(order)}
    for v in cycle.vertices:
        if v not in position:
            raise VertexNotInOrder(f"cycle vertex {v} missing from the order")
    return frozenset(a for a in cycle.arcs() if position[a.tail] > position[a.head])


def solve(tournament: BipartiteDigraph, k: int) -> SolveOutcome:
    """Find k arc-disjoint 4-cycles or a feedback arc set of size <= 7(k-1).

    The input must be a bipartite tournament (every cross pair oriented).
    For k = 0 the packing branch is vacuously satisfied by zero cycles.
    """
    if k < 0:
        raise OutOfRange(f"k must be non-negative, got {k}")
    absent = tournament.absent_pair_count()
    if absent != 0:
        raise NotATournament(f"{absent} cross pairs carry no arc")

    packing = greedy_pack(tournament, limit=k)
    if len(packing.cycles) >= k:
        return PackingOutcome(k, packing)

    # The limit was not reached, so the packing is maximal and the residual
    # has no 4-cycle; its absent pairs are exactly the deleted arcs.
    residual = packing.residual
    certificate = fas_c4free(residual)
    topo = residual.delete_arcs(certificate.fas).topological_order()
    if topo.order is None:
        raise InternalInvariantError("residual minus its feedback arc set still has a cycle")
    backward = frozenset(
        a for cycle in packing.cycles for a in backward_arcs(topo.order, cycle)
    )
    fas = certificate.fas | backward
    bound = 7 * (k - 1)
    if len(fas) > bound or not tournament.is_feedback_arc_set(fas):
        raise InternalInvariantError("combined arc set fails its certificate check")
    return FasOutcome(
        requested=k,
        packing=packing,
        fas=fas,
        residual_part=certificate.fas,
        backward_part=backward,
        order=topo.order,
        bound=bound,
    )
