"""Degree-institution credit for laureates and their academic ancestors."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .construct import NetworkSeries
from .metrics import GraphLike, _unpack, arithmetic_centrality
from .traverse import ancestors

UNKNOWN_INSTITUTION = "(unknown)"
REST = "(rest)"


@dataclass(frozen=True)
class WeightScheme:
    """How much an ancestor's degree institution earns per laureate.

    ``halving``: ``base ** g`` at generation ``g`` (base 1/2 by default).
    ``centrality_weighted``: proportional to the ancestor's arithmetic
    centrality, scaled per laureate so that the first generation sums to
    ``first_generation``.
    """

    mode: str = "halving"
    base: float = 0.5
    first_generation: float = 0.5

    def __post_init__(self):
        if self.mode not in ("halving", "centrality_weighted"):
            raise ValueError(f"unknown weight scheme {self.mode!r}")
        if not 0 < self.base <= 1 or self.first_generation < 0:
            raise ValueError("weights must be non-negative and non-increasing")


@dataclass
class InstitutionLedger:
    year: int | None
    points: dict[str, float] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    @property
    def total(self) -> float:
        return math.fsum(self.points.values())

    @property
    def shares(self) -> dict[str, float]:
        total = self.total
        if total <= 0:
            return {k: 0.0 for k in self.points}
        return {k: v / total for k, v in self.points.items()}

    def ranked(self) -> list[tuple[str, float]]:
        return sorted(self.points.items(), key=lambda kv: (-kv[1], kv[0]))


def institution_points(snapshot: GraphLike, scheme: WeightScheme | None = None) -> InstitutionLedger:
    scheme = scheme or WeightScheme()
    graph, year = _unpack(snapshot)
    ledger = InstitutionLedger(year)
    acc: dict[str, list[float]] = {}
    cache: dict[str, float] = {}

    def credit(pid, amount):
        inst = graph[pid].degree_institution
        if not inst:
            ledger.warnings.append(f"{pid}: no degree institution")
            inst = UNKNOWN_INSTITUTION
        acc.setdefault(inst, []).append(amount)

    for laureate in graph.laureates(year):
        credit(laureate, 1.0)
        gen = ancestors(graph, [laureate])
        del gen[laureate]
        if not gen:
            continue
        if scheme.mode == "halving":
            weights = {a: scheme.base ** g for a, g in gen.items()}
        else:
            for a in gen:
                if a not in cache:
                    cache[a] = arithmetic_centrality(snapshot, a)
            first = math.fsum(cache[a] for a, g in gen.items() if g == 1)
            k = scheme.first_generation / first if first > 0 else 0.0
            weights = {a: k * cache[a] for a in gen}
        for a in sorted(weights):
            credit(a, weights[a])

    ledger.points = {inst: math.fsum(v) for inst, v in sorted(acc.items())}
    return ledger


def share_series(series: NetworkSeries, scheme: WeightScheme | None = None,
                 top_k: int = 10) -> list[tuple[int, str, float, float]]:
    """(year, institution, points, share) rows for the final-year leaders plus a rest bucket."""
    if top_k < 1:
        raise ValueError("top_k must be >= 1")
    ledgers = [institution_points(s, scheme) for s in series]
    if not ledgers:
        return []
    leaders = [inst for inst, _ in ledgers[-1].ranked()[:top_k]]
    rows = []
    for ledger in ledgers:
        total = ledger.total
        rest = math.fsum(v for k, v in ledger.points.items() if k not in leaders)
        named = [(inst, ledger.points.get(inst, 0.0)) for inst in leaders]
        if any(k not in leaders for k in ledger.points):
            named.append((REST, rest))
        for inst, pts in named:
            rows.append((ledger.year, inst, pts, pts / total if total > 0 else 0.0))
    return rows
