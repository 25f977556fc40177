"""Graphical dependence criteria for undirected graphs.

X is connected to Y given Z when some pair A in X, B in Y is joined by
exactly one simple path avoiding (X|Y|Z) \\ {A, B}: a single surviving
path cannot be cancelled, so the dependence is forced.  The covariance
reading conditions on the complement of X|Y|Z, which turns the criterion
into "a single path whose nodes all lie in {A, B} | Z".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .graphs import (
    GraphKind,
    MixedGraph,
    NodeSet,
    SizeLimitError,
    bit,
    iter_nodes,
)
from .separation import CITriple, canonical_triples, check_triple


@dataclass(frozen=True)
class PathWitness:
    """A simple path, stored as its node sequence."""

    nodes: tuple[int, ...]

    @property
    def a(self) -> int:
        return self.nodes[0]

    @property
    def b(self) -> int:
        return self.nodes[-1]

    def check(self, g: MixedGraph) -> None:
        if len(set(self.nodes)) != len(self.nodes):
            raise ValueError("path nodes must be distinct")
        for u, v in zip(self.nodes, self.nodes[1:]):
            if not (g.und_adj[u] >> v) & 1:
                raise ValueError(f"nodes {u} and {v} are not adjacent")

    def render(self, labels) -> str:
        return "-".join(labels[v] for v in self.nodes)


def count_paths_within(
    g: MixedGraph,
    a: int,
    b: int,
    allowed: NodeSet,
    cap: int = 2,
) -> tuple[int, list[PathWitness]]:
    """Number of simple paths a..b using only `allowed` nodes, counted up
    to `cap`, with the paths found returned as witnesses."""
    if not g.is_undirected_graph:
        raise ValueError("path counting is defined on undirected graphs")
    if a == b:
        raise ValueError("endpoints must differ")
    if not ((allowed >> a) & 1 and (allowed >> b) & 1):
        raise ValueError("both endpoints must be in the allowed set")
    adj = g.und_adj
    target = 1 << b
    count = 0
    witnesses: list[PathWitness] = []
    # Depth-first over simple paths with an explicit stack: path holds the
    # current node sequence, avail_stack the unexplored neighbor masks.
    visited = 1 << a
    path = [a]
    avail_stack = [adj[a] & allowed & ~visited]
    while avail_stack:
        avail = avail_stack[-1]
        if not avail:
            avail_stack.pop()
            visited ^= 1 << path.pop()
            continue
        low = avail & -avail
        avail_stack[-1] = avail ^ low
        if low == target:
            count += 1
            witnesses.append(PathWitness(tuple(path) + (b,)))
            if count >= cap:
                break
        else:
            w = low.bit_length() - 1
            path.append(w)
            visited |= low
            avail_stack.append(adj[w] & allowed & ~visited)
    return count, witnesses


def connection_witness(
    g: MixedGraph, x: NodeSet, y: NodeSet, z: NodeSet
) -> Optional[PathWitness]:
    """Witness for con(X, Y | Z): the unique simple path for the first
    pair A in X, B in Y with exactly one path avoiding (X|Y|Z) \\ {A, B}."""
    check_triple(g, x, y, z)
    outside = g.full_mask & ~(x | y | z)
    for a in iter_nodes(x):
        for b in iter_nodes(y):
            cnt, wits = count_paths_within(g, a, b, outside | bit(a) | bit(b))
            if cnt == 1:
                return wits[0]
    return None


def con(g: MixedGraph, x: NodeSet, y: NodeSet, z: NodeSet) -> bool:
    return connection_witness(g, x, y, z) is not None


def cov_dependence_witness(
    g: MixedGraph, x: NodeSet, y: NodeSet, z: NodeSet
) -> Optional[PathWitness]:
    """Covariance-graph dependence: a single simple path between some
    A in X and B in Y whose nodes all lie in {A, B} | Z."""
    check_triple(g, x, y, z)
    if not g.is_undirected_graph:
        raise ValueError("covariance reading requires an undirected graph")
    for a in iter_nodes(x):
        for b in iter_nodes(y):
            cnt, wits = count_paths_within(g, a, b, z | bit(a) | bit(b))
            if cnt == 1:
                return wits[0]
    return None


def cov_dependent(g: MixedGraph, x: NodeSet, y: NodeSet, z: NodeSet) -> bool:
    return cov_dependence_witness(g, x, y, z) is not None


def conc_dependence_witness(
    g: MixedGraph, x: NodeSet, y: NodeSet, z: NodeSet
) -> Optional[PathWitness]:
    """Concentration-graph dependence: con(X, Y | Z) itself."""
    if not g.is_undirected_graph:
        raise ValueError("concentration reading requires an undirected graph")
    return connection_witness(g, x, y, z)


def conc_dependent(g: MixedGraph, x: NodeSet, y: NodeSet, z: NodeSet) -> bool:
    return conc_dependence_witness(g, x, y, z) is not None


def all_dependencies(g: MixedGraph, kind: GraphKind, max_nodes: int = 8) -> list[CITriple]:
    """Every canonical triple the kind's dependence criterion marks
    dependent, in deterministic order."""
    if g.n > max_nodes:
        raise SizeLimitError(f"dependence sweep limited to {max_nodes} nodes")
    if kind is GraphKind.COVARIANCE:
        criterion = cov_dependent
    elif kind is GraphKind.CONCENTRATION:
        criterion = conc_dependent
    else:
        raise ValueError("dependence criteria exist for covariance and "
                         "concentration readings only")
    return [
        t for t in canonical_triples(g.n)
        if criterion(g, t.x, t.y, t.z)
    ]
