"""Immutable bipartite digraphs with dense per-pair orientation storage.

Each instance keeps one byte per cross pair (x_i, y_j): the pair carries
the arc x->y, the arc y->x, or no arc at all.  Same-side arcs and 2-cycles
are unrepresentable, which every algorithm in this package relies on.  A
bipartite tournament is the special case with no absent pairs.

All values are frozen after construction; every operation returns a new
graph, so instances can be shared freely across threads.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence

from .errors import ArcNotPresent, DuplicatePair, OutOfRange, SameSideArc

ABSENT = 0
TO_Y = 1  # pair (x_i, y_j) carries the arc x_i -> y_j
TO_X = 2  # pair (x_i, y_j) carries the arc y_j -> x_i

# Byte translation table swapping TO_Y and TO_X, used by reverse().
_REVERSE_TABLE = bytes(
    TO_X if b == TO_Y else TO_Y if b == TO_X else b for b in range(256)
)


@dataclass(frozen=True, order=True)
class VertexRef:
    """Handle for one vertex: side "X" or "Y" plus the position in that side.

    Ordering is (side, index) with "X" before "Y"; the deterministic
    tie-breaks below depend on it.
    """

    side: str
    index: int

    def swapped(self) -> "VertexRef":
        """The same position on the other side, for side-swap relabeling."""
        return VertexRef("Y" if self.side == "X" else "X", self.index)

    def __str__(self) -> str:
        return f"{self.side.lower()}{self.index}"


def xv(i: int) -> VertexRef:
    return VertexRef("X", i)


def yv(j: int) -> VertexRef:
    return VertexRef("Y", j)


@dataclass(frozen=True, order=True)
class Arc:
    """A directed cross-pair edge from tail to head."""

    tail: VertexRef
    head: VertexRef

    def __post_init__(self) -> None:
        if self.tail.side == self.head.side:
            raise SameSideArc(f"arc {self.tail}->{self.head} does not cross the bipartition")

    def reversed(self) -> "Arc":
        return Arc(self.head, self.tail)

    def swapped(self) -> "Arc":
        return Arc(self.tail.swapped(), self.head.swapped())

    def __str__(self) -> str:
        return f"{self.tail}>{self.head}"


def reverse_arcs(arcs: Iterable[Arc]) -> frozenset[Arc]:
    """Reverse every arc of a set."""
    return frozenset(a.reversed() for a in arcs)


@dataclass(frozen=True, order=True)
class FourCycle:
    """A directed 4-cycle (x, y, x', y') with arcs x->y, y->x', x'->y', y'->x."""

    vertices: tuple[VertexRef, VertexRef, VertexRef, VertexRef]

    def arcs(self) -> tuple[Arc, Arc, Arc, Arc]:
        a, b, c, d = self.vertices
        return (Arc(a, b), Arc(b, c), Arc(c, d), Arc(d, a))

    def canonical(self) -> "FourCycle":
        """Rotate so the cycle starts at its smaller X-side vertex."""
        a, b, c, d = self.vertices
        if a.side != "X":
            a, b, c, d = d, a, b, c
        if c < a:
            a, b, c, d = c, d, a, b
        return FourCycle((a, b, c, d))

    def is_cycle_of(self, graph: "BipartiteDigraph") -> bool:
        if len(set(self.vertices)) != 4:
            return False
        return all(graph.has_arc(a) for a in self.arcs())


def four_cycle(xi: int, yj: int, xk: int, yl: int) -> FourCycle:
    """Build the 4-cycle x_i -> y_j -> x_k -> y_l -> x_i."""
    return FourCycle((xv(xi), yv(yj), xv(xk), yv(yl)))


def is_cycle_sequence(graph: "BipartiteDigraph", seq: Sequence[VertexRef]) -> bool:
    """Check that seq lists the distinct vertices of a directed cycle in graph."""
    if len(seq) < 4 or len(set(seq)) != len(seq):
        return False
    return all(
        graph.has_arc(Arc(seq[i], seq[(i + 1) % len(seq)])) for i in range(len(seq))
    )


class TopoResult(NamedTuple):
    """Either a topological order of all vertices or a witness cycle."""

    order: Optional[tuple[VertexRef, ...]]
    cycle: Optional[tuple[VertexRef, ...]]


@dataclass(frozen=True)
class BipartiteDigraph:
    """Orientation state of every cross pair of a bipartition.

    ``orient`` is row-major over (x-index, y-index) with one of ABSENT,
    TO_Y, TO_X per pair.  Use :func:`build` for validated construction.
    """

    m: int
    n: int
    orient: bytes

    def __post_init__(self) -> None:
        if self.m < 0 or self.n < 0:
            raise OutOfRange(f"side sizes must be non-negative, got {self.m}, {self.n}")
        if len(self.orient) != self.m * self.n:
            raise ValueError(
                f"orientation storage has {len(self.orient)} entries, expected {self.m * self.n}"
            )

    # ------------------------------------------------------------------
    # basic queries

    def pair(self, xi: int, yj: int) -> int:
        """Orientation state of the cross pair (x_xi, y_yj)."""
        if not (0 <= xi < self.m and 0 <= yj < self.n):
            raise OutOfRange(f"pair (x{xi}, y{yj}) outside a {self.m}x{self.n} graph")
        return self.orient[xi * self.n + yj]

    def has_arc(self, arc: Arc) -> bool:
        if arc.tail.side == "X":
            return self.pair(arc.tail.index, arc.head.index) == TO_Y
        return self.pair(arc.head.index, arc.tail.index) == TO_X

    def arc_count(self) -> int:
        return self.m * self.n - self.orient.count(ABSENT)

    def absent_pair_count(self) -> int:
        """Number of non-adjacent cross pairs; equals m*n minus the arc count."""
        return self.orient.count(ABSENT)

    def is_tournament(self) -> bool:
        return self.absent_pair_count() == 0

    def x_vertices(self) -> Iterator[VertexRef]:
        return (xv(i) for i in range(self.m))

    def y_vertices(self) -> Iterator[VertexRef]:
        return (yv(j) for j in range(self.n))

    def vertices(self) -> Iterator[VertexRef]:
        yield from self.x_vertices()
        yield from self.y_vertices()

    def arcs(self) -> list[Arc]:
        """All arcs in canonical order: X-tail arcs by (i, j), then Y-tail by (j, i)."""
        out = [
            Arc(xv(i), yv(j))
            for i in range(self.m)
            for j in range(self.n)
            if self.orient[i * self.n + j] == TO_Y
        ]
        out.extend(
            Arc(yv(j), xv(i))
            for j in range(self.n)
            for i in range(self.m)
            if self.orient[i * self.n + j] == TO_X
        )
        return out

    def out_neighbors(self, v: VertexRef) -> list[VertexRef]:
        self._check_vertex(v)
        if v.side == "X":
            row = v.index * self.n
            return [yv(j) for j in range(self.n) if self.orient[row + j] == TO_Y]
        return [xv(i) for i in range(self.m) if self.orient[i * self.n + v.index] == TO_X]

    def in_neighbors(self, v: VertexRef) -> list[VertexRef]:
        self._check_vertex(v)
        if v.side == "X":
            row = v.index * self.n
            return [yv(j) for j in range(self.n) if self.orient[row + j] == TO_X]
        return [xv(i) for i in range(self.m) if self.orient[i * self.n + v.index] == TO_Y]

    def _check_vertex(self, v: VertexRef) -> None:
        bound = self.m if v.side == "X" else self.n
        if not (0 <= v.index < bound):
            raise OutOfRange(f"vertex {v} outside a {self.m}x{self.n} graph")

    # ------------------------------------------------------------------
    # structural transforms

    def reverse(self) -> "BipartiteDigraph":
        """The graph with every arc reversed; absent pairs stay absent."""
        return BipartiteDigraph(self.m, self.n, self.orient.translate(_REVERSE_TABLE))

    def swap_sides(self) -> "BipartiteDigraph":
        """Exchange the X and Y roles under index-preserving relabeling.

        The arc x_i -> y_j of the input becomes y_i -> x_j of the result,
        so the pair matrix is transposed and each oriented state flips.
        An involution.
        """
        swapped = bytearray(self.m * self.n)
        for i in range(self.m):
            row = i * self.n
            for j in range(self.n):
                state = self.orient[row + j]
                if state == TO_Y:
                    state = TO_X
                elif state == TO_X:
                    state = TO_Y
                swapped[j * self.m + i] = state
        return BipartiteDigraph(self.n, self.m, bytes(swapped))

    def delete_arcs(self, arcs: Iterable[Arc]) -> "BipartiteDigraph":
        """Remove the listed arcs; their pairs become absent."""
        orient = bytearray(self.orient)
        for arc in set(arcs):
            if not self.has_arc(arc):
                raise ArcNotPresent(f"arc {arc} not in the graph")
            if arc.tail.side == "X":
                orient[arc.tail.index * self.n + arc.head.index] = ABSENT
            else:
                orient[arc.head.index * self.n + arc.tail.index] = ABSENT
        return BipartiteDigraph(self.m, self.n, bytes(orient))

    def induced_subgraph(self, xs: Iterable[int], ys: Iterable[int]) -> "Subgraph":
        """Induced subgraph on the given side indices, with compacted labels.

        The returned :class:`Subgraph` carries the translation maps back to
        this graph's labels.
        """
        x_map = tuple(sorted(set(xs)))
        y_map = tuple(sorted(set(ys)))
        for i in x_map:
            if not (0 <= i < self.m):
                raise OutOfRange(f"x-index {i} outside a {self.m}x{self.n} graph")
        for j in y_map:
            if not (0 <= j < self.n):
                raise OutOfRange(f"y-index {j} outside a {self.m}x{self.n} graph")
        sub = bytearray(len(x_map) * len(y_map))
        for si, pi in enumerate(x_map):
            row = pi * self.n
            srow = si * len(y_map)
            for sj, pj in enumerate(y_map):
                sub[srow + sj] = self.orient[row + pj]
        graph = BipartiteDigraph(len(x_map), len(y_map), bytes(sub))
        return Subgraph(graph, x_map, y_map)

    # ------------------------------------------------------------------
    # order and acyclicity

    def topological_order(self) -> TopoResult:
        """Kahn's algorithm with a fixed tie-break, or a verified cycle witness.

        Repeatedly removes the in-degree-0 vertex with the smallest
        (side, index) label, X before Y, so the order is reproducible.
        On failure the returned sequence is a cycle of this graph.
        """
        verts = list(self.vertices())
        indeg = {v: 0 for v in verts}
        for arc in self.arcs():
            indeg[arc.head] += 1
        ready = [v for v in verts if indeg[v] == 0]
        heapq.heapify(ready)
        order: list[VertexRef] = []
        while ready:
            v = heapq.heappop(ready)
            order.append(v)
            for w in self.out_neighbors(v):
                indeg[w] -= 1
                if indeg[w] == 0:
                    heapq.heappush(ready, w)
        if len(order) == len(verts):
            return TopoResult(tuple(order), None)

        # Every unplaced vertex still has an unplaced in-neighbor, so a
        # backward walk from the smallest one must close a cycle.
        placed = set(order)
        remaining = {v for v in verts if v not in placed}
        path = [min(remaining)]
        seen_at = {path[0]: 0}
        while True:
            cur = path[-1]
            prev = next(u for u in self.in_neighbors(cur) if u in remaining)
            if prev in seen_at:
                p = seen_at[prev]
                cycle = [path[p]] + path[p + 1 :][::-1]
                break
            seen_at[prev] = len(path)
            path.append(prev)
        if not is_cycle_sequence(self, cycle):
            raise AssertionError(f"extracted witness {cycle} is not a cycle")
        return TopoResult(None, tuple(cycle))

    def is_feedback_arc_set(self, arcs: Iterable[Arc]) -> bool:
        """True iff deleting the given arcs leaves the graph acyclic."""
        return self.delete_arcs(arcs).topological_order().order is not None


@dataclass(frozen=True)
class Subgraph:
    """An induced subgraph plus the index translation back to its parent."""

    graph: BipartiteDigraph
    x_map: tuple[int, ...]  # subgraph x-index -> parent x-index
    y_map: tuple[int, ...]

    def to_parent_vertex(self, v: VertexRef) -> VertexRef:
        if v.side == "X":
            return xv(self.x_map[v.index])
        return yv(self.y_map[v.index])

    def to_parent_arc(self, arc: Arc) -> Arc:
        return Arc(self.to_parent_vertex(arc.tail), self.to_parent_vertex(arc.head))

    def to_parent_arcs(self, arcs: Iterable[Arc]) -> set[Arc]:
        return {self.to_parent_arc(a) for a in arcs}


def build(m: int, n: int, arcs: Iterable[Arc | tuple[VertexRef, VertexRef]] = ()) -> BipartiteDigraph:
    """Validated construction from side sizes and an arc list.

    Rejects out-of-range endpoints and any pair listed twice, even with
    opposite orientations.  Unlisted pairs are absent.
    """
    if m < 0 or n < 0:
        raise OutOfRange(f"side sizes must be non-negative, got {m}, {n}")
    orient = bytearray(m * n)
    for item in arcs:
        arc = item if isinstance(item, Arc) else Arc(item[0], item[1])
        if arc.tail.side == "X":
            xi, yj, state = arc.tail.index, arc.head.index, TO_Y
        else:
            xi, yj, state = arc.head.index, arc.tail.index, TO_X
        if not (0 <= xi < m and 0 <= yj < n):
            raise OutOfRange(f"arc {arc} outside a {m}x{n} graph")
        p = xi * n + yj
        if orient[p] != ABSENT:
            raise DuplicatePair(f"pair (x{xi}, y{yj}) listed more than once")
        orient[p] = state
    return BipartiteDigraph(m, n, bytes(orient))
