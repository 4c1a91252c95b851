"""Change between yearly snapshots: edit distance, components, subgraphs."""

from __future__ import annotations

from dataclasses import dataclass

from .construct import NetworkSeries, Snapshot
from .core import GenealogyGraph
from .metrics import GraphLike, _unpack
from .traverse import descendants, weak_components


class NotASubgraphError(ValueError):
    """The earlier snapshot is not contained in the later one."""


@dataclass(frozen=True)
class EditDelta:
    year: int | None
    nodes_added: int
    edges_added: int
    components_before: int
    components_after: int

    @property
    def total(self) -> int:
        return self.nodes_added + self.edges_added


def edit_delta(prev: GraphLike, nxt: GraphLike) -> EditDelta:
    """Edit distance between nested snapshots.

    When ``prev`` is a subgraph of ``nxt`` the minimum edit script only
    inserts, so the distance is the count of new nodes plus new edges.
    Edges are compared as distinct (advisor, student) pairs.
    """
    g0, _ = _unpack(prev)
    g1, year = _unpack(nxt)
    if not g0.node_set <= g1.node_set:
        extra = sorted(g0.node_set - g1.node_set)
        raise NotASubgraphError(f"nodes missing from later snapshot: {', '.join(extra[:5])}")
    if not g0.pair_set <= g1.pair_set:
        extra = sorted(g0.pair_set - g1.pair_set)
        raise NotASubgraphError(f"edges missing from later snapshot: {extra[:5]}")
    return EditDelta(
        year=year,
        nodes_added=len(g1.node_set) - len(g0.node_set),
        edges_added=len(g1.pair_set) - len(g0.pair_set),
        components_before=len(weak_components(g0)),
        components_after=len(weak_components(g1)),
    )


def edit_series(series: NetworkSeries) -> list[EditDelta]:
    snaps = list(series)
    return [edit_delta(a, b) for a, b in zip(snaps, snaps[1:])]


def components(snapshot: GraphLike) -> tuple[int, dict[str, str]]:
    """Weak component count and node -> label (smallest id in the component)."""
    graph, _ = _unpack(snapshot)
    comps = weak_components(graph)
    membership = {}
    for comp in comps:
        label = min(comp)
        for pid in comp:
            membership[pid] = label
    return len(comps), dict(sorted(membership.items()))


def descendant_subgraph(snapshot: GraphLike, root: str) -> GenealogyGraph:
    """Induced subgraph on ``root`` and everything reachable below it."""
    graph, _ = _unpack(snapshot)
    graph.require(root)
    return graph.subgraph(descendants(graph, [root]))


def highlighted(snapshot: GraphLike, graph: GenealogyGraph) -> set[str]:
    """Laureates of ``snapshot`` present in ``graph`` (for drawing)."""
    full, year = _unpack(snapshot)
    return {pid for pid in graph.persons if full[pid].is_laureate_by(year)}
