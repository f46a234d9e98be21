"""Weighted digraph model of a switched system, walks, and contraction weights.

Each subsystem of the switched family is a vertex carrying its per-step
Lyapunov scaling rate (rate < 1: the subsystem contracts; rate > 1: it
expands).  A directed edge (k, l) means the schedule may hand control from
subsystem k to subsystem l; its comparison factor mu relates the two
subsystems' Lyapunov functions.  Dwelling on a subsystem for consecutive
steps requires a self-loop, whose mu is 1 by definition.

The derived weight of edge (k, l) is

    w(k, l) = ln(mu_kl) - |ln(rate_k)|   if k contracts,
    w(k, l) = ln(mu_kl) + |ln(rate_k)|   if k expands,

and the weight of a walk is the sum of its edge weights counted with
multiplicity.  A closed walk with strictly negative weight ("contractive")
shrinks the Lyapunov envelope once per traversal; repeating it forever
yields a stabilizing periodic schedule.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from enum import Enum

DEFAULT_CONTRACTION_MARGIN = 1e-9


class StabilityClass(Enum):
    """Whether a subsystem contracts (STABLE) or expands (UNSTABLE)."""

    STABLE = "stable"
    UNSTABLE = "unstable"


@dataclass(frozen=True)
class SubsystemNode:
    """A subsystem: positive integer id, per-step rate, and stability class.

    The rate and the class must agree: rate in (0, 1) for STABLE, rate > 1
    for UNSTABLE.  rate == 1 is rejected outright (it certifies nothing).
    """

    id: int
    rate: float
    stability: StabilityClass

    def __post_init__(self) -> None:
        if not (isinstance(self.id, int) and self.id > 0):
            raise ValueError(f"node id must be a positive integer, got {self.id!r}")
        if not (self.rate > 0.0 and math.isfinite(self.rate)):
            raise ValueError(f"node {self.id}: rate must be finite and > 0, got {self.rate!r}")
        if self.rate == 1.0:
            raise ValueError(f"node {self.id}: rate 1 is neither contracting nor expanding")
        expected = StabilityClass.STABLE if self.rate < 1.0 else StabilityClass.UNSTABLE
        if self.stability is not expected:
            raise ValueError(
                f"node {self.id}: rate {self.rate} is inconsistent with class {self.stability.value}"
            )

    @classmethod
    def from_rate(cls, node_id: int, rate: float) -> SubsystemNode:
        """Build a node, inferring the stability class from the rate."""
        stability = StabilityClass.STABLE if 0.0 < rate < 1.0 else StabilityClass.UNSTABLE
        return cls(node_id, rate, stability)

    @property
    def log_rate_magnitude(self) -> float:
        return abs(math.log(self.rate))


@dataclass(frozen=True)
class TransitionEdge:
    """Admissible hand-off from subsystem `tail` to subsystem `head`.

    mu > 0 is the Lyapunov comparison factor across the hand-off.
    Self-loops (tail == head) must have mu == 1 exactly; anything else is
    an inconsistent input and is rejected rather than silently overridden.
    """

    tail: int
    head: int
    mu: float

    def __post_init__(self) -> None:
        if not (self.mu > 0.0 and math.isfinite(self.mu)):
            raise ValueError(f"edge ({self.tail}, {self.head}): mu must be finite and > 0")
        if self.tail == self.head and self.mu != 1.0:
            raise ValueError(
                f"self-loop at {self.tail}: mu must be exactly 1, got {self.mu!r}"
            )


@dataclass(frozen=True)
class Walk:
    """A vertex sequence; consecutive pairs are the traversed edges.

    Edges are implied by the vertex sequence because the digraph holds at
    most one edge per ordered pair.  A walk of a single vertex has length 0.
    """

    vertices: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.vertices) == 0:
            raise ValueError("a walk needs at least one vertex")
        object.__setattr__(self, "vertices", tuple(self.vertices))

    @property
    def length(self) -> int:
        """Number of edges (vertex count minus one)."""
        return len(self.vertices) - 1

    @property
    def is_closed(self) -> bool:
        return self.length >= 1 and self.vertices[0] == self.vertices[-1]

    def edges(self) -> list[tuple[int, int]]:
        v = self.vertices
        return [(v[i], v[i + 1]) for i in range(len(v) - 1)]

    def edge_counts(self) -> Counter[tuple[int, int]]:
        """Multiplicity of each ordered pair traversed by the walk."""
        return Counter(self.edges())

    def rotated(self, k: int) -> Walk:
        """Closed walk starting k steps later on the same cyclic edge sequence."""
        if not self.is_closed:
            raise ValueError("only closed walks can be rotated")
        if k < 0:
            raise ValueError("rotation offset must be nonnegative")
        n = self.length
        k %= n
        base = self.vertices[:-1]
        shifted = base[k:] + base[:k]
        return Walk(shifted + (shifted[0],))

    def concat(self, other: Walk) -> Walk:
        """Join two walks; the first must end where the second starts."""
        if self.vertices[-1] != other.vertices[0]:
            raise ValueError(
                f"cannot concatenate: walk ends at {self.vertices[-1]}, "
                f"next starts at {other.vertices[0]}"
            )
        return Walk(self.vertices + other.vertices[1:])


@dataclass(frozen=True)
class SwitchedDigraph:
    """Validated digraph: nodes keyed by id, edges keyed by (tail, head).

    Construct through :func:`build_digraph`.  Instances are treated as
    immutable; iteration over nodes and edges is in sorted key order.
    """

    nodes: dict[int, SubsystemNode]
    edges: dict[tuple[int, int], TransitionEdge]

    def node_ids(self) -> list[int]:
        return sorted(self.nodes)

    def edge_keys(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def stable_ids(self) -> list[int]:
        return [i for i in self.node_ids() if self.nodes[i].stability is StabilityClass.STABLE]

    def unstable_ids(self) -> list[int]:
        return [i for i in self.node_ids() if self.nodes[i].stability is StabilityClass.UNSTABLE]

    def successors(self, node_id: int) -> list[int]:
        return sorted(head for (tail, head) in self.edges if tail == node_id)

    def has_edge(self, tail: int, head: int) -> bool:
        return (tail, head) in self.edges

    def validate_walk(self, walk: Walk) -> None:
        """Raise if any walk vertex or consecutive pair is absent from the graph."""
        for v in walk.vertices:
            if v not in self.nodes:
                raise ValueError(f"walk visits unknown vertex {v}")
        for tail, head in walk.edges():
            if (tail, head) not in self.edges:
                raise ValueError(f"walk uses missing edge ({tail}, {head})")


def build_digraph(
    nodes: list[SubsystemNode], edges: list[TransitionEdge]
) -> SwitchedDigraph:
    """Assemble and validate a switched-system digraph.

    Rejects duplicate node ids, duplicate ordered pairs, and edges with an
    undeclared endpoint.  Every edge weight must come out finite, which the
    node/edge constructors already guarantee.
    """
    if not nodes:
        raise ValueError("at least one node is required")
    if not edges:
        raise ValueError("at least one edge is required")
    node_map: dict[int, SubsystemNode] = {}
    for node in nodes:
        if node.id in node_map:
            raise ValueError(f"duplicate node id {node.id}")
        node_map[node.id] = node
    edge_map: dict[tuple[int, int], TransitionEdge] = {}
    for edge in edges:
        key = (edge.tail, edge.head)
        if edge.tail not in node_map or edge.head not in node_map:
            raise ValueError(f"edge {key} references an undeclared node")
        if key in edge_map:
            raise ValueError(f"duplicate edge {key}")
        edge_map[key] = edge
    node_map = dict(sorted(node_map.items()))
    edge_map = dict(sorted(edge_map.items()))
    return SwitchedDigraph(node_map, edge_map)


def edge_weight(g: SwitchedDigraph, tail: int, head: int) -> float:
    """Weight of one edge: ln(mu) minus |ln rate| of a contracting tail,
    plus |ln rate| of an expanding tail."""
    try:
        edge = g.edges[(tail, head)]
    except KeyError:
        raise ValueError(f"no edge ({tail}, {head}) in the digraph") from None
    node = g.nodes[tail]
    sign = -1.0 if node.stability is StabilityClass.STABLE else 1.0
    return math.log(edge.mu) + sign * node.log_rate_magnitude


def walk_weight(g: SwitchedDigraph, walk: Walk) -> float:
    """Total weight of a walk: sum of edge weights with multiplicity.

    This is the contraction budget of the walk; a closed walk is useful for
    scheduling exactly when this sum is negative.
    """
    if walk.length == 0:
        raise ValueError("walk weight is undefined for a zero-length walk")
    g.validate_walk(walk)
    return sum(edge_weight(g, tail, head) for tail, head in walk.edges())


def is_contractive(
    g: SwitchedDigraph, walk: Walk, margin: float = DEFAULT_CONTRACTION_MARGIN
) -> bool:
    """True when the closed walk's weight clears the strictness margin.

    The mathematical condition is weight < 0; the margin guards against
    accepting a walk whose negativity is only floating-point noise.
    """
    if not walk.is_closed:
        raise ValueError("contractivity is defined for closed walks only")
    return walk_weight(g, walk) <= -margin
