"""Nobel-restricted closeness measures and rankings.

Distances run along professor -> student edges and only laureates count as
targets. Two outcloseness variants are provided:

* arithmetic: ``(A / (N - 1))**2 / sum(d)`` where ``A`` is the number of
  reachable laureates, ``N`` the number of nodes in the snapshot and the sum
  runs over the reachable laureates;
* harmonic: ``sum(1 / d) / M`` over all laureates other than the node,
  unreachable ones contributing zero, ``M`` being their count.

Incloseness is the harmonic form on reversed edges, used for candidates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Union

from .construct import NetworkSeries, Snapshot, attach_candidates
from .core import GenealogyGraph, mark_laureates
from .traverse import ancestors, descendants

MEASURES = ("arithmetic", "harmonic")
TIE_REL_TOL = 1e-9

GraphLike = Union[Snapshot, GenealogyGraph]


def _unpack(snapshot: GraphLike) -> tuple[GenealogyGraph, int | None]:
    if isinstance(snapshot, Snapshot):
        return snapshot.graph, snapshot.year
    return snapshot, None


@dataclass(frozen=True)
class DistanceRow:
    source: str
    distances: dict[str, int]


@dataclass(frozen=True)
class CentralityRecord:
    node: str
    reachable_nobel: int
    total_nodes: int
    arithmetic: float
    harmonic: float


@dataclass(frozen=True)
class RankTable:
    measure: str
    rows: tuple[tuple[int, str, float], ...]
    tie_rule: str = "competition"

    def rank_of(self, node: str) -> int:
        for rank, pid, _ in self.rows:
            if pid == node:
                return rank
        raise KeyError(node)

    def ranks(self) -> dict[str, int]:
        return {pid: rank for rank, pid, _ in self.rows}

    def top(self, k: int) -> list[str]:
        return [pid for _, pid, _ in self.rows[:k]]


def nobel_distances(snapshot: GraphLike, source: str) -> DistanceRow:
    graph, year = _unpack(snapshot)
    graph.require(source)
    laureates = set(graph.laureates(year))
    dist = descendants(graph, [source])
    return DistanceRow(source, {t: d for t, d in sorted(dist.items())
                                if t != source and t in laureates})


def _arithmetic(row: DistanceRow, n: int) -> float:
    reach = len(row.distances)
    if reach == 0:
        return 0.0
    return (reach / (n - 1)) ** 2 / sum(row.distances.values())


def _harmonic(row: DistanceRow, n_targets: int) -> float:
    if n_targets == 0:
        return 0.0
    return math.fsum(1.0 / d for d in row.distances.values()) / n_targets


def _target_count(graph, year, node) -> int:
    laureates = graph.laureates(year)
    return len(laureates) - (node in laureates)


def arithmetic_centrality(snapshot: GraphLike, node: str) -> float:
    graph, _ = _unpack(snapshot)
    return _arithmetic(nobel_distances(snapshot, node), len(graph))


def harmonic_centrality(snapshot: GraphLike, node: str) -> float:
    graph, year = _unpack(snapshot)
    return _harmonic(nobel_distances(snapshot, node), _target_count(graph, year, node))


def centrality(snapshot: GraphLike, nodes: Iterable[str] | None = None) -> dict[str, CentralityRecord]:
    """Both measures for every node (or the given ones) with one BFS per node."""
    graph, year = _unpack(snapshot)
    laureates = set(graph.laureates(year))
    n = len(graph)
    out = {}
    for pid in (graph.persons if nodes is None else nodes):
        row = nobel_distances(snapshot, pid)
        out[pid] = CentralityRecord(
            node=pid,
            reachable_nobel=len(row.distances),
            total_nodes=n,
            arithmetic=_arithmetic(row, n),
            harmonic=_harmonic(row, len(laureates) - (pid in laureates)),
        )
    return out


def scores(snapshot: GraphLike, measure: str) -> dict[str, float]:
    if measure not in MEASURES:
        raise ValueError(f"unknown measure {measure!r}")
    return {pid: getattr(rec, measure) for pid, rec in centrality(snapshot).items()}


def incloseness(snapshot: GraphLike, node: str, target_mode: str = "laureates") -> float:
    """Harmonic closeness of ``node`` to the network above it.

    ``target_mode="network"`` averages over every other node,
    ``"laureates"`` over the laureates other than ``node``.
    """
    graph, year = _unpack(snapshot)
    graph.require(node)
    if target_mode == "network":
        targets = set(graph.persons)
    elif target_mode == "laureates":
        targets = set(graph.laureates(year))
    else:
        raise ValueError(f"unknown target mode {target_mode!r}")
    targets.discard(node)
    if not targets:
        return 0.0
    dist = ancestors(graph, [node])
    return math.fsum(1.0 / d for t, d in dist.items() if t in targets) / len(targets)


def rank_scores(scores: Mapping[str, float], measure: str = "harmonic",
                rel_tol: float = TIE_REL_TOL) -> RankTable:
    """Competition ranking; scores within ``rel_tol`` of a tie group's head share its rank."""
    ordered = sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))
    rows = []
    head_score = None
    head_rank = 0
    for pos, (pid, score) in enumerate(ordered, start=1):
        if head_score is None or not math.isclose(score, head_score, rel_tol=rel_tol, abs_tol=0.0):
            head_score, head_rank = score, pos
        rows.append((head_rank, pid, score))
    return RankTable(measure, tuple(rows))


def rank_table(snapshot: GraphLike, measure: str = "harmonic") -> RankTable:
    return rank_scores(scores(snapshot, measure), measure)


def rank_history(series: NetworkSeries, measure: str,
                 subjects: Iterable[str]) -> dict[str, list[tuple[int, int]]]:
    """(year, rank) per subject, starting at the first year it is in the network."""
    subjects = list(subjects)
    out: dict[str, list[tuple[int, int]]] = {s: [] for s in subjects}
    for snap in series:
        present = [s for s in subjects if s in snap.graph]
        if not present:
            continue
        ranks = rank_table(snap, measure).ranks()
        for s in present:
            out[s].append((snap.year, ranks[s]))
    return out


def rank_spans(history: list[tuple[int, int]], max_rank: int = 3) -> dict[int, list[tuple[int, int]]]:
    """Collapse a rank history into runs of consecutive years per rank.

    Runs are listed most recent first, like ``1: 2019-2021, 2013-2017``.
    """
    spans: dict[int, list[tuple[int, int]]] = {}
    prev_year = prev_rank = None
    for year, rank in sorted(history):
        if rank > max_rank:
            prev_year = prev_rank = None
            continue
        runs = spans.setdefault(rank, [])
        if rank == prev_rank and year == prev_year + 1:
            runs[-1] = (runs[-1][0], year)
        else:
            runs.append((year, year))
        prev_year, prev_rank = year, rank
    return {r: runs[::-1] for r, runs in sorted(spans.items())}


def counterfactual_rank_delta(snapshot: Snapshot, candidates: Iterable[str],
                              universe: GenealogyGraph | None = None) -> dict[str, int]:
    """Harmonic rank change (new - old) for the snapshot's nodes if all candidates win.

    Candidates absent from the snapshot are first attached with their
    ancestries from ``universe``; the baseline ranking is taken on that
    enlarged graph so only the act of winning moves ranks.
    """
    candidates = sorted(set(candidates))
    base = snapshot
    absent = [c for c in candidates if c not in snapshot.graph]
    if absent:
        if universe is None:
            raise KeyError(f"candidates not in snapshot and no universe given: {', '.join(absent)}")
        base = attach_candidates(snapshot, universe, absent)
    won = Snapshot(base.year, mark_laureates(base.graph, candidates, base.year),
                   base.included_reason)
    old = rank_table(base, "harmonic").ranks()
    new = rank_table(won, "harmonic").ranks()
    return {pid: new[pid] - old[pid] for pid in snapshot.graph.persons}
