"""Yearly Nobel network snapshots and sensitivity edits.

Each award year starts from the previous year's network. A new laureate
brings in its ancestors up to ``depth`` generations; when that leaves an
existing family disjoint from the laureate, the closest common ancestor
in the universe and all shortest connecting paths are added as well.
"""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Sequence

from .core import AdvisingEdge, DatasetError, GenealogyGraph, Person
from .traverse import ancestors, bfs, weak_components

DEFAULT_DEPTH = 5

# higher wins when a node qualifies for several reasons
REASON_PRIORITY = {"connector": 0, "ancestor": 1, "candidate": 2, "laureate": 3}

Cohorts = Mapping[int, Sequence[str]]


@dataclass(frozen=True)
class Snapshot:
    year: int
    graph: GenealogyGraph
    included_reason: Mapping[str, str] = field(default_factory=dict)

    def laureates(self) -> list[str]:
        return self.graph.laureates(self.year)


@dataclass(frozen=True)
class NetworkSeries:
    snapshots: tuple[Snapshot, ...]

    def __len__(self) -> int:
        return len(self.snapshots)

    def __iter__(self):
        return iter(self.snapshots)

    def __getitem__(self, i: int) -> Snapshot:
        return self.snapshots[i]

    @property
    def years(self) -> list[int]:
        return [s.year for s in self.snapshots]

    def at(self, year: int) -> Snapshot:
        """Snapshot in force at ``year`` (latest award year <= year)."""
        best = None
        for s in self.snapshots:
            if s.year <= year:
                best = s
        if best is None:
            raise KeyError(f"no snapshot at or before {year}")
        return best


@dataclass(frozen=True)
class CommonAncestor:
    ancestor: str
    distance: int  # hops down to the new person plus hops down to the target set
    edges: frozenset[tuple[str, str]]

    @property
    def nodes(self) -> frozenset[str]:
        return frozenset(n for e in self.edges for n in e) | {self.ancestor}


@dataclass(frozen=True)
class OverlayEdit:
    action: str  # add_edge | remove_edge | add_person
    payload: AdvisingEdge | Person


def ancestor_closure(universe: GenealogyGraph, person: str,
                     max_depth: int = DEFAULT_DEPTH) -> frozenset[str]:
    """``person`` plus every advisor-line ancestor at most ``max_depth`` hops up."""
    universe.require(person)
    if max_depth < 0:
        raise ValueError("max_depth must be >= 0")
    return frozenset(ancestors(universe, [person], max_depth))


def _shortest_path_edges(universe, top, to_target, domain):
    """Edges on every shortest path from ``top`` down to the target.

    ``to_target`` maps each node of ``domain`` to its hop count down to the
    target (node or set); all path nodes lie in that domain.
    """
    from_top = bfs(universe.students, [top], allowed=domain.__contains__)
    total = to_target[top]
    on_path = {v for v, d in from_top.items() if d + to_target[v] == total}
    return {
        (u, v)
        for u in on_path
        for v in universe.students(u)
        if v in on_path and from_top[v] == from_top[u] + 1 and to_target[u] == to_target[v] + 1
    }


def closest_common_ancestor(universe: GenealogyGraph, new_person: str,
                            existing: Iterable[str]) -> CommonAncestor | None:
    """Nearest shared ancestor of ``new_person`` and a node set.

    Candidates are ``new_person`` and its ancestors at any depth that are
    members or ancestors of ``existing``. The one minimising the summed hop
    counts wins, ties broken by id. The returned edges cover all shortest
    paths from it to both sides.
    """
    existing = list(existing)
    universe.require(new_person, *existing)
    up = ancestors(universe, [new_person])
    down = ancestors(universe, existing)
    shared = [a for a in up if a in down]
    if not shared:
        return None
    best = min(shared, key=lambda a: (up[a] + down[a], a))
    edges = _shortest_path_edges(universe, best, up, up)
    edges |= _shortest_path_edges(universe, best, down, down)
    return CommonAncestor(best, up[best] + down[best], frozenset(edges))


def _attach(universe, nodes, reasons, pid, reason, depth):
    closure = ancestor_closure(universe, pid, depth)
    if nodes:
        current = universe.subgraph(nodes)
        for comp in weak_components(current):
            if comp & closure:
                continue
            link = closest_common_ancestor(universe, pid, sorted(comp))
            if link is not None:
                for n in sorted(link.nodes):
                    _mark(nodes, reasons, n, "connector")
    for n in sorted(closure):
        _mark(nodes, reasons, n, "ancestor")
    _mark(nodes, reasons, pid, reason)


def _mark(nodes, reasons, n, reason):
    nodes.add(n)
    old = reasons.get(n)
    if old is None or REASON_PRIORITY[reason] > REASON_PRIORITY[old]:
        reasons[n] = reason


def _assemble(universe, nodes, reasons, year) -> Snapshot:
    graph = universe.subgraph(nodes)
    # a winner stops being a candidate from the award year on
    winners = [replace(p, candidate=False) for p in graph.persons.values()
               if p.candidate and p.is_laureate_by(year)]
    if winners:
        graph = graph.with_persons(winners)
    return Snapshot(year, graph, dict(sorted(reasons.items())))


def build_year(universe: GenealogyGraph, cohorts: Cohorts, year: int,
               prev: Snapshot | None = None, depth: int = DEFAULT_DEPTH) -> Snapshot:
    nodes = set(prev.graph.persons) if prev is not None else set()
    reasons = dict(prev.included_reason) if prev is not None else {}
    cohort = list(dict.fromkeys(cohorts.get(year, ())))
    missing = [pid for pid in cohort if pid not in universe]
    if missing:
        raise KeyError(f"laureate(s) missing from universe: {', '.join(missing)}")
    for pid in cohort:
        _attach(universe, nodes, reasons, pid, "laureate", depth)
    return _assemble(universe, nodes, reasons, year)


def build_series(universe: GenealogyGraph, cohorts: Cohorts,
                 depth: int = DEFAULT_DEPTH) -> NetworkSeries:
    years = sorted(y for y, ids in cohorts.items() if ids)
    if not years:
        raise ValueError("cohorts are empty")
    snaps = []
    prev = None
    for year in years:
        prev = build_year(universe, cohorts, year, prev, depth)
        snaps.append(prev)
    return NetworkSeries(tuple(snaps))


def attach_candidates(snapshot: Snapshot, universe: GenealogyGraph,
                      candidates: Iterable[str], depth: int = DEFAULT_DEPTH) -> Snapshot:
    """Add candidates and their ancestries to a snapshot without making them winners."""
    nodes = set(snapshot.graph.persons)
    reasons = dict(snapshot.included_reason)
    for pid in sorted(set(candidates)):
        universe.require(pid)
        _attach(universe, nodes, reasons, pid, "candidate", depth)
    return _assemble(universe, nodes, reasons, snapshot.year)


def cohorts_from_graph(graph: GenealogyGraph) -> dict[int, list[str]]:
    out: dict[int, list[str]] = {}
    for pid, p in graph.persons.items():
        if p.laureate and p.prize_year is not None:
            out.setdefault(p.prize_year, []).append(pid)
    return dict(sorted(out.items()))


def load_cohorts(path: str | os.PathLike, universe: GenealogyGraph | None = None) -> dict[int, list[str]]:
    """Read a ``year,laureate_id`` file, keeping row order within a year."""
    out: dict[int, list[str]] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        if next(reader, None) != ["year", "laureate_id"]:
            raise DatasetError([f"{os.fspath(path)}:1: header must be year,laureate_id"])
        problems = []
        for row in reader:
            if not row:
                continue
            where = f"{os.fspath(path)}:{reader.line_num}"
            if len(row) != 2 or not row[0].strip().isdigit():
                problems.append(f"{where}: malformed row")
                continue
            year, pid = int(row[0]), row[1].strip()
            if universe is not None:
                if pid not in universe:
                    problems.append(f"{where}: unknown laureate {pid!r}")
                    continue
                if not universe[pid].laureate:
                    problems.append(f"{where}: {pid!r} is not flagged as a laureate")
                    continue
            out.setdefault(year, []).append(pid)
    if problems:
        raise DatasetError(problems)
    return dict(sorted(out.items()))


def save_cohorts(cohorts: Cohorts, path: str | os.PathLike) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["year", "laureate_id"])
        for year in sorted(cohorts):
            for pid in cohorts[year]:
                w.writerow([year, pid])


def load_overlay(path: str | os.PathLike) -> list[OverlayEdit]:
    """Read ``action,advisor_id,student_id,kind`` rows.

    ``add_person`` rows name the new person in ``student_id``. An empty kind
    on ``remove_edge`` removes the pair whatever its kind.
    """
    edits = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != ["action", "advisor_id", "student_id", "kind"]:
            raise DatasetError([f"{os.fspath(path)}:1: header must be action,advisor_id,student_id,kind"])
        for row in reader:
            action = row["action"].strip()
            kind = (row["kind"] or "").strip()
            if action == "add_person":
                pid = row["student_id"].strip()
                edits.append(OverlayEdit(action, Person(pid, name=pid, sources=("overlay",))))
            elif action in ("add_edge", "remove_edge"):
                if action == "add_edge" and not kind:
                    kind = "phd"
                edge = AdvisingEdge(row["advisor_id"].strip(), row["student_id"].strip(), kind, "overlay")
                edits.append(OverlayEdit(action, edge))
            else:
                raise DatasetError([f"{os.fspath(path)}:{reader.line_num}: unknown action {action!r}"])
    return edits


def apply_overlay(graph: GenealogyGraph, edits: Iterable[OverlayEdit]) -> GenealogyGraph:
    """Apply edits in order and return a new, revalidated graph."""
    persons = dict(graph.persons)
    edges = {e.key: e for e in graph.edges}
    for edit in edits:
        p = edit.payload
        if edit.action == "add_person":
            if p.id in persons:
                raise DatasetError([f"add_person: {p.id!r} already exists"])
            persons[p.id] = p
        elif edit.action == "add_edge":
            if p.key in edges:
                raise DatasetError([f"add_edge: {p.advisor_id}->{p.student_id} ({p.kind}) already exists"])
            for end in (p.advisor_id, p.student_id):
                if end not in persons:
                    raise DatasetError([f"add_edge: unknown person {end!r}"])
            edges[p.key] = p
        elif edit.action == "remove_edge":
            hits = [k for k in edges if k[:2] == p.pair and (not p.kind or k[2] == p.kind)]
            if not hits:
                raise DatasetError([f"remove_edge: no edge {p.advisor_id}->{p.student_id}"])
            for k in hits:
                del edges[k]
        else:
            raise ValueError(f"unknown overlay action {edit.action!r}")
    return GenealogyGraph(persons, edges.values()).checked()


def expand_full(universe: GenealogyGraph, cutoff_roots: Iterable[str],
                laureates: Iterable[str] | None = None) -> GenealogyGraph:
    """All ancestors of all laureates, stopping at the cutoff roots.

    Anything strictly above a cutoff root is left out, even when it is also
    reachable along a line that avoids the root.
    """
    roots = list(cutoff_roots)
    universe.require(*roots)
    above = bfs(universe.advisors, [a for r in roots for a in universe.advisors(r)])
    if laureates is None:
        laureates = universe.laureates()
    sources = [pid for pid in laureates if pid not in above]
    universe.require(*sources)
    keep = bfs(universe.advisors, sources, allowed=lambda v: v not in above)
    return universe.subgraph(keep)
