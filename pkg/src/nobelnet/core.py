"""Data model, dataset files and integrity checks for genealogy graphs.

A genealogy graph is a directed acyclic graph whose edges point from
professor to student. Persons carry laureate/candidate flags plus degree
metadata; edges carry the kind of supervision and a provenance label.
"""

from __future__ import annotations

import csv
import io
import os
from collections import deque
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable, Iterator, Mapping

import numpy as np
from scipy import sparse

GENDERS = ("male", "female", "unknown")
EDGE_KINDS = ("phd", "habilitation", "masters", "mentor")
FIRST_PRIZE_YEAR = 1969

NODE_COLUMNS = [
    "id",
    "name",
    "gender",
    "laureate",
    "prize_year",
    "candidate",
    "degree_year",
    "degree_institution",
    "sources",
]
EDGE_COLUMNS = ["advisor_id", "student_id", "kind", "source"]


@dataclass(frozen=True)
class Person:
    id: str
    name: str = ""
    gender: str = "unknown"
    laureate: bool = False
    prize_year: int | None = None
    candidate: bool = False
    degree_year: int | None = None
    degree_institution: str | None = None
    sources: tuple[str, ...] = ()

    def is_laureate_by(self, year: int | None) -> bool:
        """True if the person has won by ``year`` (any year when None)."""
        if not self.laureate:
            return False
        if year is None:
            return True
        return self.prize_year is not None and self.prize_year <= year


@dataclass(frozen=True, order=True)
class AdvisingEdge:
    advisor_id: str
    student_id: str
    kind: str = "phd"
    source: str = ""

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.advisor_id, self.student_id, self.kind)

    @property
    def pair(self) -> tuple[str, str]:
        return (self.advisor_id, self.student_id)


@dataclass
class ValidationReport:
    errors: list[tuple[str, str, str]] = field(default_factory=list)
    warnings: list[tuple[str, str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors

    def error(self, code: str, subject: str, message: str) -> None:
        self.errors.append((code, subject, message))

    def warn(self, code: str, subject: str, message: str) -> None:
        self.warnings.append((code, subject, message))

    def format(self) -> str:
        lines = [f"error\t{c}\t{s}\t{m}" for c, s, m in self.errors]
        lines += [f"warning\t{c}\t{s}\t{m}" for c, s, m in self.warnings]
        return "\n".join(lines)


class DatasetError(ValueError):
    """Raised when a dataset cannot be loaded or a graph is inadmissible."""

    def __init__(self, problems: Iterable[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems) or "invalid dataset")


class GenealogyGraph:
    """Immutable professor -> student graph.

    Construction never raises: dangling edges are kept in ``edges`` but left
    out of the adjacency index, so that :func:`validate` can report them.
    Use :func:`load_dataset` or :meth:`checked` for an admissible graph.
    """

    def __init__(self, persons: Iterable[Person] | Mapping[str, Person] = (),
                 edges: Iterable[AdvisingEdge] = ()):
        if isinstance(persons, Mapping):
            persons = persons.values()
        self._persons = {p.id: p for p in sorted(persons, key=lambda p: p.id)}
        self._edges = tuple(sorted(set(edges)))
        succ: dict[str, list[str]] = {pid: [] for pid in self._persons}
        pred: dict[str, list[str]] = {pid: [] for pid in self._persons}
        for e in self._edges:
            if e.advisor_id in succ and e.student_id in succ:
                if e.student_id not in succ[e.advisor_id]:
                    succ[e.advisor_id].append(e.student_id)
                    pred[e.student_id].append(e.advisor_id)
        self._succ = {k: tuple(v) for k, v in succ.items()}
        self._pred = {k: tuple(v) for k, v in pred.items()}

    @property
    def persons(self) -> Mapping[str, Person]:
        return self._persons

    @property
    def edges(self) -> tuple[AdvisingEdge, ...]:
        return self._edges

    def __len__(self) -> int:
        return len(self._persons)

    def __contains__(self, pid: object) -> bool:
        return pid in self._persons

    def __iter__(self) -> Iterator[str]:
        return iter(self._persons)

    def __getitem__(self, pid: str) -> Person:
        return self._persons[pid]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GenealogyGraph):
            return NotImplemented
        return self._persons == other._persons and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((tuple(self._persons.values()), self._edges))

    def __repr__(self) -> str:
        return f"GenealogyGraph(persons={len(self._persons)}, edges={len(self._edges)})"

    def students(self, pid: str) -> tuple[str, ...]:
        return self._succ[pid]

    def advisors(self, pid: str) -> tuple[str, ...]:
        return self._pred[pid]

    def require(self, *pids: str) -> None:
        missing = [p for p in pids if p not in self._persons]
        if missing:
            raise KeyError(f"unknown person id(s): {', '.join(missing)}")

    @cached_property
    def node_set(self) -> frozenset[str]:
        return frozenset(self._persons)

    @cached_property
    def pair_set(self) -> frozenset[tuple[str, str]]:
        """Distinct (advisor, student) pairs with both endpoints present."""
        return frozenset((a, s) for a, succ in self._succ.items() for s in succ)

    def laureates(self, year: int | None = None) -> list[str]:
        return [pid for pid, p in self._persons.items() if p.is_laureate_by(year)]

    @cached_property
    def index(self) -> dict[str, int]:
        return {pid: i for i, pid in enumerate(self._persons)}

    @cached_property
    def csr(self) -> sparse.csr_matrix:
        """Adjacency matrix (row = advisor) in the order of :attr:`index`."""
        n = len(self._persons)
        idx = self.index
        rows = [idx[a] for a, s in sorted(self.pair_set)]
        cols = [idx[s] for a, s in sorted(self.pair_set)]
        data = np.ones(len(rows), dtype=np.int8)
        return sparse.csr_matrix((data, (rows, cols)), shape=(n, n))

    def subgraph(self, nodes: Iterable[str]) -> "GenealogyGraph":
        """Induced subgraph on ``nodes``."""
        keep = set(nodes)
        self.require(*sorted(keep - self.node_set))
        return GenealogyGraph(
            (self._persons[p] for p in keep),
            (e for e in self._edges if e.advisor_id in keep and e.student_id in keep),
        )

    def with_persons(self, persons: Iterable[Person]) -> "GenealogyGraph":
        """Copy with the given person records replaced or added."""
        merged = dict(self._persons)
        for p in persons:
            merged[p.id] = p
        return GenealogyGraph(merged, self._edges)

    def topological_order(self) -> list[str] | None:
        """Kahn's algorithm with id tie-breaking; None if a cycle exists."""
        indeg = {pid: len(self._pred[pid]) for pid in self._persons}
        ready = sorted(pid for pid, d in indeg.items() if d == 0)
        queue = deque(ready)
        order = []
        while queue:
            pid = queue.popleft()
            order.append(pid)
            for s in self._succ[pid]:
                indeg[s] -= 1
                if indeg[s] == 0:
                    queue.append(s)
        return order if len(order) == len(self._persons) else None

    def find_cycle(self) -> list[str] | None:
        """One directed cycle as a node list, or None."""
        if self.topological_order() is not None:
            return None
        # nodes left after peeling sources and sinks all lie on or between cycles
        alive = set(self._persons)
        changed = True
        while changed:
            changed = False
            for pid in list(alive):
                if not any(a in alive for a in self._pred[pid]) or \
                        not any(s in alive for s in self._succ[pid]):
                    alive.discard(pid)
                    changed = True
        start = min(alive)
        seen: dict[str, int] = {}
        path: list[str] = []
        node = start
        while node not in seen:
            seen[node] = len(path)
            path.append(node)
            node = min(s for s in self._succ[node] if s in alive)
        return path[seen[node]:]

    def checked(self) -> "GenealogyGraph":
        report = validate(self)
        if not report.ok:
            raise DatasetError(f"{c} {s}: {m}" for c, s, m in report.errors)
        return self


def validate(graph: GenealogyGraph) -> ValidationReport:
    """Structural errors plus soft plausibility warnings."""
    report = ValidationReport()
    persons = graph.persons
    seen_keys: set[tuple[str, str, str]] = set()
    for e in graph.edges:
        label = f"{e.advisor_id}->{e.student_id}"
        for end in (e.advisor_id, e.student_id):
            if end not in persons:
                report.error("dangling_endpoint", label, f"unknown person {end!r}")
        if e.advisor_id == e.student_id:
            report.error("self_loop", label, "advisor and student are the same person")
        if e.kind not in EDGE_KINDS:
            report.error("bad_kind", label, f"unknown edge kind {e.kind!r}")
        if e.key in seen_keys:
            report.error("duplicate_edge", label, f"duplicate {e.kind} edge")
        seen_keys.add(e.key)

    cycle = graph.find_cycle()
    if cycle:
        report.error("cycle", cycle[0], "cycle: " + " -> ".join(cycle + [cycle[0]]))

    for pid, p in persons.items():
        if p.gender not in GENDERS:
            report.error("bad_gender", pid, f"unknown gender {p.gender!r}")
        if p.laureate and p.prize_year is None:
            report.warn("no_cohort", pid, "laureate without prize year")
        if p.laureate and p.prize_year is not None and p.prize_year < FIRST_PRIZE_YEAR:
            report.error("prize_year", pid, f"prize year {p.prize_year} before {FIRST_PRIZE_YEAR}")
        if p.degree_year is None or not p.degree_institution:
            report.warn("missing_degree", pid, "degree year or institution missing")

    for a, s in sorted(graph.pair_set):
        ya, ys = persons[a].degree_year, persons[s].degree_year
        if ya is not None and ys is not None and ys < ya:
            report.warn("chronology", f"{a}->{s}",
                        f"student degree {ys} precedes advisor degree {ya}")
    return report


# -- CSV files ---------------------------------------------------------------

def _opt_int(text: str, column: str) -> int | None:
    text = text.strip()
    if not text:
        return None
    try:
        return int(text)
    except ValueError:
        raise ValueError(f"{column}: not an integer: {text!r}") from None


def _flag(text: str, column: str) -> bool:
    text = text.strip()
    if text in ("", "0"):
        return False
    if text == "1":
        return True
    raise ValueError(f"{column}: expected 0/1, got {text!r}")


def _read_rows(path: str | os.PathLike, columns: list[str], problems: list[str]):
    name = os.fspath(path)
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            text = fh.read()
    except UnicodeDecodeError as exc:
        problems.append(f"{name}: not valid UTF-8 ({exc.reason})")
        return
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != columns:
        problems.append(f"{name}:1: header must be {','.join(columns)}")
        return
    for row in reader:
        if not row:
            continue
        if len(row) != len(columns):
            problems.append(f"{name}:{reader.line_num}: expected {len(columns)} "
                            f"fields, got {len(row)}")
            continue
        yield reader.line_num, dict(zip(columns, row))


def load_dataset(nodes_path: str | os.PathLike, edges_path: str | os.PathLike) -> GenealogyGraph:
    """Read and validate a nodes/edges CSV pair.

    Every problem found is collected and reported with its row number;
    any problem aborts the load with :class:`DatasetError`.
    """
    problems: list[str] = []
    persons: dict[str, Person] = {}
    nodes_name = os.fspath(nodes_path)
    edges_name = os.fspath(edges_path)
    for line, row in _read_rows(nodes_path, NODE_COLUMNS, problems):
        try:
            p = Person(
                id=row["id"].strip(),
                name=row["name"],
                gender=row["gender"].strip() or "unknown",
                laureate=_flag(row["laureate"], "laureate"),
                prize_year=_opt_int(row["prize_year"], "prize_year"),
                candidate=_flag(row["candidate"], "candidate"),
                degree_year=_opt_int(row["degree_year"], "degree_year"),
                degree_institution=row["degree_institution"].strip() or None,
                sources=tuple(s for s in row["sources"].split(";") if s),
            )
        except ValueError as exc:
            problems.append(f"{nodes_name}:{line}: {exc}")
            continue
        if not p.id:
            problems.append(f"{nodes_name}:{line}: empty id")
        elif p.id in persons:
            problems.append(f"{nodes_name}:{line}: duplicate id {p.id!r}")
        else:
            persons[p.id] = p

    edges: list[AdvisingEdge] = []
    rows_of: dict[tuple[str, str], list[int]] = {}
    seen: set[tuple[str, str, str]] = set()
    for line, row in _read_rows(edges_path, EDGE_COLUMNS, problems):
        e = AdvisingEdge(row["advisor_id"].strip(), row["student_id"].strip(),
                         row["kind"].strip() or "phd", row["source"])
        where = f"{edges_name}:{line}"
        bad = False
        for end in (e.advisor_id, e.student_id):
            if end not in persons:
                problems.append(f"{where}: unknown person {end!r}")
                bad = True
        if e.advisor_id == e.student_id:
            problems.append(f"{where}: self loop on {e.advisor_id!r}")
            bad = True
        if e.kind not in EDGE_KINDS:
            problems.append(f"{where}: unknown edge kind {e.kind!r}")
            bad = True
        if e.key in seen:
            problems.append(f"{where}: duplicate edge {e.advisor_id}->{e.student_id} ({e.kind})")
            bad = True
        if not bad:
            seen.add(e.key)
            edges.append(e)
            rows_of.setdefault(e.pair, []).append(line)

    graph = GenealogyGraph(persons.values(), edges)
    cycle = graph.find_cycle()
    if cycle:
        ring = list(zip(cycle, cycle[1:] + cycle[:1]))
        rows = ", ".join(f"row {rows_of[pair][0]} ({pair[0]}->{pair[1]})" for pair in ring)
        problems.append(f"{edges_name}: cycle detected: {rows}")
    if problems:
        raise DatasetError(problems)
    return graph


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    return str(value)


def write_nodes(graph: GenealogyGraph, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(NODE_COLUMNS)
    for pid in sorted(graph.persons):
        p = graph.persons[pid]
        w.writerow([p.id, p.name, p.gender, _fmt(p.laureate), _fmt(p.prize_year),
                    _fmt(p.candidate), _fmt(p.degree_year), _fmt(p.degree_institution),
                    ";".join(p.sources)])


def write_edges(graph: GenealogyGraph, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(EDGE_COLUMNS)
    for e in sorted(graph.edges):
        w.writerow([e.advisor_id, e.student_id, e.kind, e.source])


def save_dataset(graph: GenealogyGraph, nodes_path: str | os.PathLike,
                 edges_path: str | os.PathLike) -> None:
    """Write the graph as canonical (id-sorted) CSV files."""
    with open(nodes_path, "w", newline="", encoding="utf-8") as fh:
        write_nodes(graph, fh)
    with open(edges_path, "w", newline="", encoding="utf-8") as fh:
        write_edges(graph, fh)


def mark_laureates(graph: GenealogyGraph, ids: Iterable[str], year: int) -> GenealogyGraph:
    """Copy of ``graph`` in which ``ids`` won in ``year`` (existing winners kept)."""
    updated = []
    for pid in ids:
        p = graph[pid]
        if not p.is_laureate_by(year):
            updated.append(replace(p, laureate=True, prize_year=year, candidate=False))
    return graph.with_persons(updated)
