import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nobelnet.affiliation import (
    REST,
    UNKNOWN_INSTITUTION,
    WeightScheme,
    institution_points,
    share_series,
)
from nobelnet.construct import Snapshot, build_series, cohorts_from_graph
from nobelnet.core import AdvisingEdge, GenealogyGraph, Person
from nobelnet.metrics import arithmetic_centrality

from helpers import f1, random_dag


def test_halving_f1(f1_1975):
    ledger = institution_points(f1_1975)
    assert ledger.points == pytest.approx({"U1": 2.5, "U2": 1.25, "U3": 1.0}, abs=1e-12)
    shares = ledger.shares
    assert shares["U1"] == pytest.approx(2.5 / 4.75, abs=1e-9)
    assert shares["U2"] == pytest.approx(0.263158, abs=1e-6)
    assert shares["U3"] == pytest.approx(0.210526, abs=1e-6)
    assert math.fsum(shares.values()) == pytest.approx(1.0, abs=1e-9)


def test_laureate_without_ancestry_gets_one_point():
    g = GenealogyGraph([Person("L", laureate=True, prize_year=1990, degree_institution="U")])
    assert institution_points(g).points == {"U": 1.0}


def test_missing_institution_goes_to_sentinel():
    g = GenealogyGraph([Person("L", laureate=True, prize_year=1990, degree_institution="U"),
                        Person("M")], [AdvisingEdge("M", "L")])
    ledger = institution_points(g)
    assert ledger.points == {"U": 1.0, UNKNOWN_INSTITUTION: 0.5}
    assert ledger.warnings == ["M: no degree institution"]


def test_each_ancestor_counted_once_at_minimal_generation():
    # M advises L directly and through K: counted once, at generation 1
    g = GenealogyGraph([Person("L", laureate=True, prize_year=2000, degree_institution="UL"),
                        Person("K", degree_institution="UK"), Person("M", degree_institution="UM")],
                       [AdvisingEdge("M", "L"), AdvisingEdge("K", "L"), AdvisingEdge("M", "K")])
    assert institution_points(g).points == {"UL": 1.0, "UK": 0.5, "UM": 0.5}


def test_centrality_weighted_first_generation_sums_to_half():
    g = GenealogyGraph([Person("L", laureate=True, prize_year=2000, degree_institution="UL"),
                        Person("K", degree_institution="UK"), Person("M", degree_institution="UM"),
                        Person("Q", laureate=True, prize_year=1990, degree_institution="UQ")],
                       [AdvisingEdge("M", "L"), AdvisingEdge("K", "L"), AdvisingEdge("M", "Q")])
    led = institution_points(g, WeightScheme("centrality_weighted"))
    cm, ck = arithmetic_centrality(g, "M"), arithmetic_centrality(g, "K")
    assert led.points["UK"] == pytest.approx(0.5 * ck / (cm + ck))
    # M earns from L (share of 1/2) and all of Q's half point
    assert led.points["UM"] == pytest.approx(0.5 * cm / (cm + ck) + 0.5)


def test_scheme_validation():
    with pytest.raises(ValueError):
        WeightScheme("thirds")


@pytest.mark.parametrize("depth", range(0, 7))
def test_single_chain_closed_form(depth):
    ids = [f"c{i}" for i in range(depth + 1)]
    persons = [Person(pid, degree_institution=f"U{i}") for i, pid in enumerate(ids[:-1])]
    persons.append(Person(ids[-1], laureate=True, prize_year=2000, degree_institution="L"))
    g = GenealogyGraph(persons, [AdvisingEdge(a, b) for a, b in zip(ids, ids[1:])])
    assert institution_points(g).total == pytest.approx(2 - 2.0 ** -depth, abs=1e-12)


def test_share_series_f1(f1_series):
    rows = share_series(f1_series, top_k=2)
    final = {inst: share for year, inst, _, share in rows if year == 1975}
    assert set(final) == {"U1", "U2", REST}
    assert final[REST] == pytest.approx(1 / 4.75)
    for year in (1970, 1972, 1975):
        assert math.fsum(s for y, _, _, s in rows if y == year) == pytest.approx(1.0)


def test_share_series_top_k_exceeds():
    rows = share_series(build_series(f1(), {1970: ["A"], 1972: ["B"], 1975: ["C"]}), top_k=50)
    assert {inst for _, inst, _, _ in rows} == {"U1", "U2", "U3"}


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 100_000), n=st.integers(2, 30))
def test_points_never_decrease_over_series(seed, n):
    u = random_dag(np.random.default_rng(seed), n, p_laureate=0.4)
    cohorts = cohorts_from_graph(u)
    if not cohorts:
        return
    series = build_series(u, cohorts)
    prev = {}
    for snap in series:
        led = institution_points(snap)
        for inst, pts in prev.items():
            assert led.points.get(inst, 0.0) >= pts - 1e-12
        if led.total > 0:
            assert math.fsum(led.shares.values()) == pytest.approx(1.0, abs=1e-9)
        prev = led.points
