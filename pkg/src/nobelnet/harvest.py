"""Cache-first client for remote genealogy sources and multi-source merging.

Records travel in a small line-oriented text format::

    nobelnet-record 1
    id: 12124
    name: Ada Example
    degree_year: 1928
    degree_institution: Uppsala
    advisor: 3311 phd

``source`` and ``fetched_at`` lines are added when a record is cached. One
cache file per person lives at ``<cache_dir>/<source>/<id>.rec``.
"""

from __future__ import annotations

import logging
import os
import tempfile
import threading
import time
from collections import deque
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable
from urllib.parse import quote

import requests

from .core import EDGE_KINDS, AdvisingEdge, GenealogyGraph, Person

log = logging.getLogger(__name__)

MAGIC = "nobelnet-record 1"
SOURCES = ("academic_tree", "math_genealogy", "repec_genealogy", "manual")
# lower wins; manual additions override everything
PRECEDENCE = {"manual": 0, "academic_tree": 1, "math_genealogy": 2, "repec_genealogy": 3}
ID_PREFIX = {"academic_tree": "at", "math_genealogy": "mgp", "repec_genealogy": "rg", "manual": ""}
_FIELDS = ("name", "gender", "laureate", "prize_year", "candidate", "degree_year",
           "degree_institution")
_INT_FIELDS = ("prize_year", "degree_year")
_BOOL_FIELDS = ("laureate", "candidate")


class HarvestError(Exception):
    pass


class TransportError(HarvestError):
    pass


class RecordParseError(HarvestError):
    pass


class MergeError(HarvestError):
    def __init__(self, collisions: list[str]):
        self.collisions = collisions
        super().__init__("; ".join(collisions))


@dataclass(frozen=True)
class SourceConfig:
    source_name: str
    base_url: str
    cache_dir: str | os.PathLike = "cache"
    min_request_interval: float = 1.0
    offline: bool = False
    timeout: float = 30.0

    def __post_init__(self):
        if self.source_name not in SOURCES:
            raise ValueError(f"unknown source {self.source_name!r}")
        if self.min_request_interval <= 0:
            raise ValueError("min_request_interval must be > 0")

    def url_for(self, person_id: str) -> str:
        pid = quote(person_id, safe="")
        if "{id}" in self.base_url:
            return self.base_url.replace("{id}", pid)
        return self.base_url.rstrip("/") + "/" + pid

    def cache_path(self, person_id: str) -> Path:
        return Path(self.cache_dir) / self.source_name / (quote(person_id, safe="") + ".rec")


@dataclass(frozen=True)
class PersonRecord:
    source_name: str
    person_id: str
    fields: dict = field(default_factory=dict, hash=False)
    advisors: tuple[tuple[str, str], ...] = ()
    fetched_at: str = ""

    @property
    def canonical_id(self) -> str:
        return canonical_id(self.person_id, self.source_name)


def canonical_id(raw: str, source_name: str) -> str:
    """Prefix a source-local id; ids that already carry a prefix pass through."""
    prefix = ID_PREFIX[source_name]
    if not prefix or ":" in raw:
        return raw
    return f"{prefix}:{raw}"


def parse_record(text: str, source_name: str | None = None) -> PersonRecord:
    lines = [ln.rstrip("\r") for ln in text.splitlines()]
    if not lines or lines[0].strip() != MAGIC:
        raise RecordParseError(f"missing header {MAGIC!r}")
    values: dict[str, str] = {}
    advisors = []
    for n, line in enumerate(lines[1:], start=2):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise RecordParseError(f"line {n}: expected 'key: value'")
        key, value = key.strip(), value.strip()
        if key == "advisor":
            parts = value.split()
            if len(parts) not in (1, 2):
                raise RecordParseError(f"line {n}: advisor needs an id and optional kind")
            kind = parts[1] if len(parts) == 2 else "phd"
            if kind not in EDGE_KINDS:
                raise RecordParseError(f"line {n}: unknown edge kind {kind!r}")
            advisors.append((parts[0], kind))
        else:
            values[key] = value
    if not values.get("id"):
        raise RecordParseError("record has no id")
    fields: dict = {}
    for key in _FIELDS:
        raw = values.get(key, "")
        if raw == "":
            continue
        try:
            if key in _INT_FIELDS:
                fields[key] = int(raw)
            elif key in _BOOL_FIELDS:
                if raw not in ("0", "1"):
                    raise ValueError(raw)
                fields[key] = raw == "1"
            else:
                fields[key] = raw
        except ValueError:
            raise RecordParseError(f"bad value for {key}: {raw!r}") from None
    source = values.get("source") or source_name
    if source not in SOURCES:
        raise RecordParseError(f"unknown source {source!r}")
    return PersonRecord(source, values["id"], fields, tuple(advisors), values.get("fetched_at", ""))


def render_record(rec: PersonRecord) -> str:
    lines = [MAGIC, f"source: {rec.source_name}", f"id: {rec.person_id}"]
    for key in _FIELDS:
        if key in rec.fields:
            v = rec.fields[key]
            lines.append(f"{key}: {int(v) if isinstance(v, bool) else v}")
    for adv, kind in rec.advisors:
        lines.append(f"advisor: {adv} {kind}")
    if rec.fetched_at:
        lines.append(f"fetched_at: {rec.fetched_at}")
    return "\n".join(lines) + "\n"


class _Throttle:
    """Serialises requests to one source and spaces their starts."""

    def __init__(self):
        self.lock = threading.Lock()
        self.last = float("-inf")

    def run(self, interval, fn):
        with self.lock:
            delay = self.last + interval - time.monotonic()
            if delay > 0:
                time.sleep(delay)
            self.last = time.monotonic()
            return fn()


_throttles: dict[str, _Throttle] = {}
_throttles_lock = threading.Lock()


def _throttle_for(source_name: str) -> _Throttle:
    with _throttles_lock:
        return _throttles.setdefault(source_name, _Throttle())


_session = requests.Session()
_session.headers["User-Agent"] = "nobelnet-harvest/0.1 (+polite; cached)"


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".rec")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def fetch_person(cfg: SourceConfig, person_id: str) -> PersonRecord:
    """Return a person's record, from cache if present, otherwise over HTTP.

    A fetched record is written to the cache before it is returned.
    """
    path = cfg.cache_path(person_id)
    if path.exists():
        return parse_record(path.read_text(encoding="utf-8"), cfg.source_name)
    if cfg.offline:
        raise TransportError(f"{cfg.source_name} {person_id}: not cached and offline")
    url = cfg.url_for(person_id)

    def get():
        log.debug("GET %s", url)
        return _session.get(url, timeout=cfg.timeout)

    try:
        resp = _throttle_for(cfg.source_name).run(cfg.min_request_interval, get)
        resp.raise_for_status()
    except requests.RequestException as exc:
        raise TransportError(f"{cfg.source_name} {person_id}: {exc}") from exc
    rec = parse_record(resp.text, cfg.source_name)
    if rec.person_id != person_id:
        raise RecordParseError(f"{cfg.source_name} {person_id}: payload is for {rec.person_id!r}")
    stamp = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
    rec = PersonRecord(cfg.source_name, rec.person_id, rec.fields, rec.advisors, stamp)
    _atomic_write(path, render_record(rec))
    return parse_record(path.read_text(encoding="utf-8"), cfg.source_name)


@dataclass
class AncestryResult:
    records: dict[str, PersonRecord]
    gaps: list[tuple[str, str]]  # (person id, reason)


def fetch_ancestry(cfg: SourceConfig, person_id: str, depth: int) -> AncestryResult:
    """Breadth-first advisor closure up to ``depth`` generations.

    Failures do not abort the walk; they are listed in ``gaps``.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    records: dict[str, PersonRecord] = {}
    gaps: list[tuple[str, str]] = []
    seen = {person_id}
    queue = deque([(person_id, 0)])
    while queue:
        pid, d = queue.popleft()
        try:
            rec = fetch_person(cfg, pid)
        except HarvestError as exc:
            log.warning("skipping %s: %s", pid, exc)
            gaps.append((pid, str(exc)))
            continue
        records[pid] = rec
        if d >= depth:
            continue
        for adv, _ in rec.advisors:
            if adv not in seen:
                seen.add(adv)
                queue.append((adv, d + 1))
    return AncestryResult(records, gaps)


def _norm_name(name: str) -> str:
    return " ".join(name.casefold().split())


@dataclass
class MergeResult:
    graph: GenealogyGraph
    warnings: list[str]


def merge_sources(record_sets: Iterable[Iterable[PersonRecord]]) -> MergeResult:
    """Combine records from several sources into one validated graph.

    Person attributes come from the highest-precedence record that defines
    them; edges are the union of all records' advisor links, each keeping
    the list of sources that reported it. Edges to people without a record
    are dropped with a warning.
    """
    by_id: dict[str, list[tuple[int, int, PersonRecord]]] = {}
    order = 0
    for rs in record_sets:
        for rec in rs:
            by_id.setdefault(rec.canonical_id, []).append((PRECEDENCE[rec.source_name], order, rec))
            order += 1

    warnings: list[str] = []
    collisions: list[str] = []
    persons = []
    for pid in sorted(by_id):
        recs = [r for _, _, r in sorted(by_id[pid], key=lambda t: t[:2])]
        names = {_norm_name(r.fields["name"]) for r in recs if r.fields.get("name")}
        if len(names) > 1:
            collisions.append(f"{pid}: conflicting names " + " / ".join(
                repr(r.fields["name"]) for r in recs if r.fields.get("name")))
            continue
        values = {}
        for key in _FIELDS:
            defined = [(r.source_name, r.fields[key]) for r in recs if key in r.fields]
            if not defined:
                continue
            values[key] = defined[0][1]
            for src, v in defined[1:]:
                if v != values[key] and key != "name":
                    warnings.append(f"{pid}: {key} {v!r} from {src} overridden by "
                                    f"{values[key]!r} from {defined[0][0]}")
        persons.append(Person(
            id=pid,
            name=values.get("name", ""),
            gender=values.get("gender", "unknown"),
            laureate=values.get("laureate", False),
            prize_year=values.get("prize_year"),
            candidate=values.get("candidate", False),
            degree_year=values.get("degree_year"),
            degree_institution=values.get("degree_institution"),
            sources=tuple(dict.fromkeys(r.source_name for r in recs)),
        ))
    if collisions:
        raise MergeError(collisions)

    known = {p.id for p in persons}
    edge_sources: dict[tuple[str, str, str], list[str]] = {}
    for pid in sorted(by_id):
        for _, _, rec in sorted(by_id[pid], key=lambda t: t[:2]):
            for adv, kind in rec.advisors:
                key = (canonical_id(adv, rec.source_name), pid, kind)
                srcs = edge_sources.setdefault(key, [])
                if rec.source_name not in srcs:
                    srcs.append(rec.source_name)
    edges = []
    for (adv, student, kind), srcs in sorted(edge_sources.items()):
        if adv not in known:
            warnings.append(f"{adv}->{student}: advisor has no record, edge dropped")
            continue
        edges.append(AdvisingEdge(adv, student, kind, ";".join(srcs)))
    return MergeResult(GenealogyGraph(persons, edges).checked(), warnings)
