"""Shortest-path histograms among laureates and stratified random baselines.

The reference histogram counts shortest professor-student path lengths
between pairs of laureates. The baseline repeats the count on random
scholars matched one-to-one on degree year, giving an empirical band
against which the reference can be compared.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable

import numpy as np
from scipy.sparse import csgraph

from .core import GenealogyGraph

VARIANTS = ("minimum", "average")
STRATA_KEYS = ("degree_year", "degree_year_bucket")
BUCKET_HALF_WIDTH = 5


@dataclass(frozen=True)
class PathHistogram:
    counts: dict[float, int]
    unreachable: int
    variant: str = "minimum"

    @property
    def pairs(self) -> int:
        return sum(self.counts.values()) + self.unreachable

    def count(self, length) -> int:
        return self.counts.get(length, 0)


@dataclass(frozen=True)
class StratifiedSample:
    nodes: tuple[str, ...]
    gaps: tuple[str, ...]  # reference nodes for which no match was found


@dataclass(frozen=True)
class ConfidenceBand:
    lengths: tuple
    lower: tuple[float, ...]
    upper: tuple[float, ...]
    level: float
    trials: int
    reference: PathHistogram

    def contains(self, hist: PathHistogram) -> list[bool]:
        return [lo <= hist.count(L) <= hi for L, lo, hi in zip(self.lengths, self.lower, self.upper)]


def _length_key(x: float):
    return int(x) if float(x).is_integer() else float(x)


def pairwise_paths(graph: GenealogyGraph, node_set: Iterable[str],
                   variant: str = "minimum") -> PathHistogram:
    """Histogram of shortest directed path lengths over unordered pairs.

    For each pair the two directed distances are combined: ``minimum``
    keeps the shorter, ``average`` the mean when both exist and otherwise
    the one that exists.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    nodes = sorted(set(node_set))
    graph.require(*nodes)
    if len(nodes) < 2:
        return PathHistogram({}, 0, variant)
    idx = np.array([graph.index[p] for p in nodes])
    dist = csgraph.shortest_path(graph.csr, directed=True, unweighted=True, indices=idx)
    d = dist[:, idx]
    iu, ju = np.triu_indices(len(nodes), k=1)
    fwd, back = d[iu, ju], d[ju, iu]
    if variant == "minimum":
        comb = np.minimum(fwd, back)
    else:
        both = np.isfinite(fwd) & np.isfinite(back)
        comb = np.where(both, (fwd + back) / 2, np.minimum(fwd, back))
    finite = comb[np.isfinite(comb)]
    values, freq = np.unique(finite, return_counts=True)
    counts = {_length_key(v): int(c) for v, c in zip(values, freq)}
    return PathHistogram(counts, int(len(comb) - len(finite)), variant)


def stratified_sample(graph: GenealogyGraph, reference_set: Iterable[str],
                      strata_key: str = "degree_year", seed=None) -> StratifiedSample:
    """Draw one non-reference scholar per reference scholar from the same degree year.

    ``degree_year_bucket`` falls back to degree years within five years when
    the exact year has no one left. Draws are without replacement.
    """
    if strata_key not in STRATA_KEYS:
        raise ValueError(f"unknown strata key {strata_key!r}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    reference = sorted(set(reference_set))
    graph.require(*reference)
    ref = set(reference)
    pool: dict[int, list[str]] = {}
    for pid, p in graph.persons.items():
        if pid not in ref and p.degree_year is not None:
            pool.setdefault(p.degree_year, []).append(pid)

    chosen, gaps = [], []
    for pid in reference:
        year = graph[pid].degree_year
        if year is None:
            gaps.append(pid)
            continue
        years = [year]
        if not pool.get(year) and strata_key == "degree_year_bucket":
            years = [y for y in range(year - BUCKET_HALF_WIDTH, year + BUCKET_HALF_WIDTH + 1)
                     if pool.get(y)]
        candidates = [(y, i) for y in years for i in range(len(pool.get(y, ())))]
        if not candidates:
            gaps.append(pid)
            continue
        y, i = candidates[rng.integers(len(candidates))]
        chosen.append(pool[y].pop(i))
    return StratifiedSample(tuple(chosen), tuple(gaps))


def _band_bounds(samples: np.ndarray, level: float):
    alpha = (1.0 - level) / 2
    lower = np.quantile(samples, alpha, axis=0, method="lower")
    upper = np.quantile(samples, 1.0 - alpha, axis=0, method="higher")
    return lower, upper


def baseline_band(graph: GenealogyGraph, reference_set: Iterable[str], trials: int = 50,
                  level: float = 0.90, seed=0, strata_key: str = "degree_year",
                  variant: str = "minimum", workers: int = 1) -> ConfidenceBand:
    """Empirical band of path-length counts over stratified random samples.

    Each trial gets its own child seed, so results do not depend on
    ``workers``. Bounds are the order statistics just outside the
    ``(1 - level) / 2`` tails.
    """
    if trials < 2:
        raise ValueError("trials must be >= 2")
    if not 0 < level <= 1:
        raise ValueError("level must be in (0, 1]")
    reference_set = sorted(set(reference_set))
    reference = pairwise_paths(graph, reference_set, variant)
    children = np.random.SeedSequence(seed).spawn(trials)

    def one(ss):
        sample = stratified_sample(graph, reference_set, strata_key, np.random.default_rng(ss))
        return pairwise_paths(graph, sample.nodes, variant)

    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            hists = list(ex.map(one, children))
    else:
        hists = [one(ss) for ss in children]

    keys = set(reference.counts)
    for h in hists:
        keys |= set(h.counts)
    if all(isinstance(k, int) for k in keys):
        lengths = tuple(range(1, max(keys, default=0) + 1))
    else:
        lengths = tuple(sorted(keys))
    samples = np.array([[h.count(L) for L in lengths] for h in hists], dtype=float)
    if lengths:
        lower, upper = _band_bounds(samples, level)
    else:
        lower = upper = np.zeros(0)
    return ConfidenceBand(lengths, tuple(float(x) for x in lower), tuple(float(x) for x in upper),
                          level, trials, reference)
