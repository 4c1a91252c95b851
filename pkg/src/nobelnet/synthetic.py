"""Random genealogies for demos and null-model checks."""

from __future__ import annotations

import numpy as np

from .core import AdvisingEdge, GenealogyGraph, Person


def layered_genealogy(rng: np.random.Generator, generations: int = 30, per_generation: int = 40,
                      max_advisors: int = 3, first_year: int = 1800, years_per_generation: int = 3,
                      reach_back: int = 2, institutions: int = 8) -> GenealogyGraph:
    """Cohorts graduating in the same year, advised from the previous few cohorts.

    Generation ``g`` graduates in ``first_year + g * years_per_generation``;
    each scholar draws 1..``max_advisors`` advisors uniformly from the
    preceding ``reach_back`` generations.
    """
    persons, edges = [], []
    layers: list[list[str]] = []
    for g in range(generations):
        year = first_year + g * years_per_generation
        layer = [f"g{g:03d}s{i:03d}" for i in range(per_generation)]
        for pid in layer:
            persons.append(Person(pid, pid, degree_year=year,
                                  degree_institution=f"U{int(rng.integers(institutions))}"))
        pool = [p for prev in layers[-reach_back:] for p in prev]
        if pool:
            for pid in layer:
                k = int(rng.integers(1, max_advisors + 1))
                for adv in rng.choice(pool, size=min(k, len(pool)), replace=False):
                    edges.append(AdvisingEdge(str(adv), pid))
        layers.append(layer)
    return GenealogyGraph(persons, edges)


def random_reference(rng: np.random.Generator, graph: GenealogyGraph, per_year: int = 2) -> list[str]:
    """``per_year`` scholars drawn uniformly from every degree-year stratum."""
    strata: dict[int, list[str]] = {}
    for pid, p in graph.persons.items():
        if p.degree_year is not None:
            strata.setdefault(p.degree_year, []).append(pid)
    out = []
    for year in sorted(strata):
        members = strata[year]
        out += [str(x) for x in rng.choice(members, size=min(per_year, len(members)), replace=False)]
    return sorted(out)
