"""Mixed graphs over a small vertex set, with node sets stored as bitmasks.

Nodes are the integers 0..n-1 (n <= 64), so every subset of the vertex set
fits into a single int used as a bitmask.  Graphs are immutable values;
all operations here are pure functions returning fresh objects.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

MAX_NODES = 64

# A NodeSet is a plain int bitmask over the vertex set: bit i <=> node i.
NodeSet = int


def bit(i: int) -> NodeSet:
    return 1 << i


def mask_of(nodes: Iterable[int]) -> NodeSet:
    m = 0
    for i in nodes:
        m |= 1 << i
    return m


def iter_nodes(mask: NodeSet) -> Iterator[int]:
    """Yield node indices of a mask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def node_list(mask: NodeSet) -> list[int]:
    return list(iter_nodes(mask))


def submasks(mask: NodeSet) -> Iterator[NodeSet]:
    """All subsets of a mask, including the full mask and 0 (emitted last)."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def format_nodeset(mask: NodeSet, labels: Sequence[str]) -> str:
    """Comma-joined labels of a node set; '-' for the empty set."""
    if not mask:
        return "-"
    return ",".join(labels[i] for i in iter_nodes(mask))


def reachable(adj: Sequence[NodeSet], start: NodeSet, allowed: NodeSet) -> NodeSet:
    """All nodes reachable from `start` walking `adj` inside `allowed`.

    `start` is clipped to `allowed`; the result includes the start nodes.
    """
    reached = start & allowed
    frontier = reached
    while frontier:
        nxt = 0
        rest = frontier
        while rest:
            low = rest & -rest
            nxt |= adj[low.bit_length() - 1]
            rest ^= low
        nxt &= allowed & ~reached
        reached |= nxt
        frontier = nxt
    return reached


class GraphKind(enum.Enum):
    """How a graph is read as an independence model."""

    COVARIANCE = "covariance"
    CONCENTRATION = "concentration"
    DAG = "dag"
    CG = "cg"


class GraphParseError(ValueError):
    def __init__(self, message: str, line_no: int):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class SizeLimitError(ValueError):
    """An operation was asked to run above its supported node count."""


@dataclass(frozen=True)
class MixedGraph:
    """Graph with undirected and directed edges over nodes 0..n-1.

    `undirected` holds pairs (i, j) with i < j; `directed` holds
    (tail, head) arrows.  A pair may not carry both an undirected edge
    and an arrow, and self-loops are rejected; opposite arrows are
    representable (chain-graph validity rejects them separately).
    Node identity is the index; labels are display-only.
    """

    n: int
    labels: tuple[str, ...]
    undirected: frozenset[tuple[int, int]] = frozenset()
    directed: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_NODES:
            raise ValueError(f"node count {self.n} outside 0..{MAX_NODES}")
        if len(self.labels) != self.n:
            raise ValueError("label count does not match node count")
        if len(set(self.labels)) != self.n:
            raise ValueError("node labels must be unique")
        und_pairs: set[frozenset[int]] = set()
        for i, j in self.undirected:
            self._check_endpoints(i, j)
            if not i < j:
                raise ValueError(f"undirected pair ({i}, {j}) not normalized")
            und_pairs.add(frozenset((i, j)))
        for i, j in self.directed:
            self._check_endpoints(i, j)
            if frozenset((i, j)) in und_pairs:
                raise ValueError(
                    f"both an undirected edge and an arrow between "
                    f"{self.labels[i]} and {self.labels[j]}"
                )

    def _check_endpoints(self, i: int, j: int) -> None:
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise ValueError(f"edge endpoint outside 0..{self.n - 1}")
        if i == j:
            raise ValueError(f"self-loop at node {self.labels[i]}")

    @classmethod
    def ug(cls, labels: Sequence[str], edges: Iterable[tuple[str, str]] = ()) -> "MixedGraph":
        """Build an undirected graph from label pairs."""
        labels = tuple(labels)
        index = {lab: i for i, lab in enumerate(labels)}
        und = frozenset(
            (min(index[a], index[b]), max(index[a], index[b])) for a, b in edges
        )
        return cls(len(labels), labels, und, frozenset())

    @classmethod
    def dag(cls, labels: Sequence[str], arrows: Iterable[tuple[str, str]] = ()) -> "MixedGraph":
        """Build a directed graph from (tail, head) label pairs."""
        labels = tuple(labels)
        index = {lab: i for i, lab in enumerate(labels)}
        return cls(len(labels), labels, frozenset(),
                   frozenset((index[a], index[b]) for a, b in arrows))

    @cached_property
    def full_mask(self) -> NodeSet:
        return (1 << self.n) - 1

    @cached_property
    def label_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    @cached_property
    def und_adj(self) -> tuple[NodeSet, ...]:
        adj = [0] * self.n
        for i, j in self.undirected:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return tuple(adj)

    @cached_property
    def pa_adj(self) -> tuple[NodeSet, ...]:
        """pa_adj[v] = mask of nodes u with an arrow u -> v."""
        adj = [0] * self.n
        for u, v in self.directed:
            adj[v] |= 1 << u
        return tuple(adj)

    @cached_property
    def ch_adj(self) -> tuple[NodeSet, ...]:
        adj = [0] * self.n
        for u, v in self.directed:
            adj[u] |= 1 << v
        return tuple(adj)

    @cached_property
    def any_adj(self) -> tuple[NodeSet, ...]:
        """Adjacency ignoring edge kind and direction."""
        return tuple(
            self.und_adj[v] | self.pa_adj[v] | self.ch_adj[v] for v in range(self.n)
        )

    @cached_property
    def is_cg(self) -> bool:
        return is_chain_graph(self)

    @property
    def is_undirected_graph(self) -> bool:
        return not self.directed

    @property
    def is_directed_graph(self) -> bool:
        return not self.undirected

    def node_set(self, labels: Iterable[str]) -> NodeSet:
        """Resolve labels to a node mask; unknown labels raise ValueError."""
        m = 0
        for lab in labels:
            try:
                m |= 1 << self.label_index[lab]
            except KeyError:
                raise ValueError(f"unknown node label {lab!r}") from None
        return m


def parse_graph(text: str) -> MixedGraph:
    """Parse the plain-text graph format.

    One statement per line: `node <label>` pre-declares a node,
    `<a> -- <b>` adds an undirected edge, `<a> -> <b>` adds an arrow.
    `#` starts a comment.  Node order is first appearance.
    """
    labels: list[str] = []
    index: dict[str, int] = {}
    und: set[tuple[int, int]] = set()
    dire: set[tuple[int, int]] = set()
    pairs_seen: set[frozenset[int]] = set()

    def declare(lab: str, line_no: int) -> int:
        if lab not in index:
            if len(labels) >= MAX_NODES:
                raise GraphParseError(
                    f"more than {MAX_NODES} nodes (at {lab!r})", line_no
                )
            index[lab] = len(labels)
            labels.append(lab)
        return index[lab]

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "node" and len(tokens) == 2:
            declare(tokens[1], line_no)
        elif len(tokens) == 3 and tokens[1] in ("--", "->"):
            a = declare(tokens[0], line_no)
            b = declare(tokens[2], line_no)
            if a == b:
                raise GraphParseError(f"self-loop at {tokens[0]!r}", line_no)
            pair = frozenset((a, b))
            if pair in pairs_seen:
                raise GraphParseError(
                    f"duplicate edge between {tokens[0]!r} and {tokens[2]!r}", line_no
                )
            pairs_seen.add(pair)
            if tokens[1] == "--":
                und.add((min(a, b), max(a, b)))
            else:
                dire.add((a, b))
        else:
            raise GraphParseError(f"unrecognized statement {line!r}", line_no)

    return MixedGraph(len(labels), tuple(labels), frozenset(und), frozenset(dire))


def format_graph(g: MixedGraph) -> str:
    """Render a graph in the parse_graph text format (round-trips)."""
    lines = [f"node {lab}" for lab in g.labels]
    for i, j in sorted(g.undirected):
        lines.append(f"{g.labels[i]} -- {g.labels[j]}")
    for i, j in sorted(g.directed):
        lines.append(f"{g.labels[i]} -> {g.labels[j]}")
    return "\n".join(lines) + "\n"


def induced_subgraph(g: MixedGraph, keep: NodeSet) -> MixedGraph:
    """Subgraph over `keep`, retaining edges with both endpoints kept.

    Nodes are renumbered to 0..|keep|-1 in increasing original order;
    labels are preserved.
    """
    if keep & ~g.full_mask:
        raise ValueError("induced node set contains nodes outside the graph")
    old = node_list(keep)
    remap = {o: i for i, o in enumerate(old)}
    inside = lambda i, j: (keep >> i) & 1 and (keep >> j) & 1
    und = frozenset((remap[i], remap[j]) for i, j in g.undirected if inside(i, j))
    dire = frozenset((remap[i], remap[j]) for i, j in g.directed if inside(i, j))
    return MixedGraph(len(old), tuple(g.labels[o] for o in old), und, dire)


def ancestors(g: MixedGraph, targets: NodeSet) -> NodeSet:
    """Nodes with a route into `targets` using undirected or forward
    directed steps, plus `targets` itself."""
    if targets & ~g.full_mask:
        raise ValueError("target set contains nodes outside the graph")
    reached = targets
    frontier = targets
    while frontier:
        nxt = 0
        for v in iter_nodes(frontier):
            nxt |= g.und_adj[v] | g.pa_adj[v]
        nxt &= ~reached
        reached |= nxt
        frontier = nxt
    return reached


def connectivity_components(g: MixedGraph) -> list[NodeSet]:
    """Partition of the nodes into maximal undirected-route-connected sets,
    ordered by smallest member."""
    comps = []
    remaining = g.full_mask
    while remaining:
        seed = remaining & -remaining
        comp = reachable(g.und_adj, seed, g.full_mask)
        comps.append(comp)
        remaining &= ~comp
    return comps


def moral_graph(g: MixedGraph) -> MixedGraph:
    """UG joining nodes that are adjacent in g or share a child
    connectivity component (all edge directions dropped)."""
    adj = [g.any_adj[v] for v in range(g.n)]
    for comp in connectivity_components(g):
        pa = 0
        for v in iter_nodes(comp):
            pa |= g.pa_adj[v]
        for p in iter_nodes(pa):
            adj[p] |= pa
    und = set()
    for v in range(g.n):
        for w in iter_nodes(adj[v] & ~bit(v)):
            if v < w:
                und.add((v, w))
    return MixedGraph(g.n, g.labels, frozenset(und), frozenset())


def is_chain_graph(g: MixedGraph) -> bool:
    """True iff no semi-directed cycle exists (no node is its own
    descendant).  Checked on the condensation by undirected components."""
    comps = connectivity_components(g)
    comp_id: dict[int, int] = {}
    for ci, comp in enumerate(comps):
        for v in iter_nodes(comp):
            comp_id[v] = ci
    k = len(comps)
    succ: list[set[int]] = [set() for _ in range(k)]
    indeg = [0] * k
    for u, v in g.directed:
        cu, cv = comp_id[u], comp_id[v]
        if cu == cv:
            return False
        if cv not in succ[cu]:
            succ[cu].add(cv)
            indeg[cv] += 1
    queue = [c for c in range(k) if indeg[c] == 0]
    seen = 0
    while queue:
        c = queue.pop()
        seen += 1
        for d in succ[c]:
            indeg[d] -= 1
            if indeg[d] == 0:
                queue.append(d)
    return seen == k
