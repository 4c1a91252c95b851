"""Breadth-first traversals shared by the analysis modules."""

from __future__ import annotations

from collections import deque
from typing import Callable, Iterable

from .core import GenealogyGraph


def bfs(neighbours: Callable[[str], Iterable[str]], sources: Iterable[str],
        max_depth: int | None = None, allowed: Callable[[str], bool] | None = None) -> dict[str, int]:
    """Multi-source BFS; returns hop counts from the nearest source (sources at 0)."""
    dist = {s: 0 for s in sources}
    queue = deque(dist)
    while queue:
        u = queue.popleft()
        d = dist[u]
        if max_depth is not None and d >= max_depth:
            continue
        for v in neighbours(u):
            if v not in dist and (allowed is None or allowed(v)):
                dist[v] = d + 1
                queue.append(v)
    return dist


def descendants(graph: GenealogyGraph, sources: Iterable[str],
                max_depth: int | None = None) -> dict[str, int]:
    return bfs(graph.students, sources, max_depth)


def ancestors(graph: GenealogyGraph, sources: Iterable[str],
              max_depth: int | None = None) -> dict[str, int]:
    return bfs(graph.advisors, sources, max_depth)


def weak_components(graph: GenealogyGraph) -> list[frozenset[str]]:
    """Weakly connected components, ordered by their smallest id."""
    seen: set[str] = set()
    out = []
    for pid in graph.persons:  # persons are id-sorted
        if pid in seen:
            continue
        comp = bfs(lambda u: graph.students(u) + graph.advisors(u), [pid])
        seen.update(comp)
        out.append(frozenset(comp))
    return out
