import dataclasses

import pytest
from hypothesis import given, settings, strategies as st

import numpy as np

from nobelnet.core import (
    AdvisingEdge,
    DatasetError,
    GenealogyGraph,
    Person,
    load_dataset,
    save_dataset,
    validate,
)

from helpers import F1_EDGES, F1_PERSONS, f1, random_dag

NODES_HEADER = "id,name,gender,laureate,prize_year,candidate,degree_year,degree_institution,sources\n"
EDGES_HEADER = "advisor_id,student_id,kind,source\n"


def write(tmp_path, nodes, edges):
    n, e = tmp_path / "nodes.csv", tmp_path / "edges.csv"
    n.write_text(NODES_HEADER + nodes, encoding="utf-8")
    e.write_text(EDGES_HEADER + edges, encoding="utf-8")
    return n, e


def test_load_f1(tmp_path):
    save_dataset(f1(), tmp_path / "n.csv", tmp_path / "e.csv")
    g = load_dataset(tmp_path / "n.csv", tmp_path / "e.csv")
    assert len(g.persons) == 4
    assert len(g.edges) == 3
    assert g == f1()


def test_load_single_person(tmp_path):
    g = load_dataset(*write(tmp_path, "Q,Lonely,female,0,,0,,,\n", ""))
    assert len(g) == 1 and g.edges == ()
    assert g["Q"].gender == "female"


def test_load_reports_cycle_rows(tmp_path):
    nodes = "P,,,0,,0,,,\nA,,,0,,0,,,\n"
    with pytest.raises(DatasetError) as exc:
        load_dataset(*write(tmp_path, nodes, "P,A,phd,x\nA,P,phd,x\n"))
    msg = str(exc.value)
    assert "cycle" in msg and "row 2" in msg and "row 3" in msg


@pytest.mark.parametrize("nodes,edges,fragment", [
    ("P,,,0,,0,,,\nP,,,0,,0,,,\n", "", "duplicate id"),
    ("P,,,0,,0,,,\n", "P,Z,phd,x\n", "unknown person 'Z'"),
    ("P,,,0,,0,,\n", "", "expected 9 fields"),
    ("P,,,yes,,0,,,\n", "", "expected 0/1"),
    ("P,,,0,,0,19x0,,\n", "", "not an integer"),
    ("P,,,0,,0,,,\nQ,,,0,,0,,,\n", "P,Q,phd,x\nP,Q,phd,y\n", "duplicate edge"),
    ("P,,,0,,0,,,\nQ,,,0,,0,,,\n", "P,Q,tutor,x\n", "unknown edge kind"),
])
def test_load_errors_carry_row_numbers(tmp_path, nodes, edges, fragment):
    with pytest.raises(DatasetError) as exc:
        load_dataset(*write(tmp_path, nodes, edges))
    assert fragment in str(exc.value)
    assert ":2" in str(exc.value) or ":3" in str(exc.value)


def test_load_rejects_bad_encoding(tmp_path):
    n, e = write(tmp_path, "", "")
    n.write_bytes(NODES_HEADER.encode() + b"P,\xff\xfe,,0,,0,,,\n")
    with pytest.raises(DatasetError, match="UTF-8"):
        load_dataset(n, e)


def test_validate_f1_clean():
    report = validate(f1())
    assert report.errors == [] and report.warnings == []
    assert report.ok


def test_validate_chronology_warning():
    persons = [dataclasses.replace(p, degree_year=1920) if p.id == "C" else p for p in F1_PERSONS]
    report = validate(GenealogyGraph(persons, F1_EDGES))
    assert report.errors == []
    assert [w[0] for w in report.warnings] == ["chronology"]
    assert report.warnings[0][1] == "A->C"


def test_validate_dangling_edge():
    g = f1([Person("Y", "Y", degree_year=1990, degree_institution="U9")], [AdvisingEdge("X", "Y")])
    report = validate(g)
    assert [e[0] for e in report.errors] == ["dangling_endpoint"]


def test_validate_soft_warnings():
    g = GenealogyGraph([Person("L", laureate=True)])
    codes = sorted(w[0] for w in validate(g).warnings)
    assert codes == ["missing_degree", "no_cohort"]


def test_validate_cycle_error():
    g = GenealogyGraph([Person("a"), Person("b"), Person("c")],
                       [AdvisingEdge("a", "b"), AdvisingEdge("b", "c"), AdvisingEdge("c", "a")])
    report = validate(g)
    assert [e[0] for e in report.errors] == ["cycle"]
    assert g.topological_order() is None
    assert set(g.find_cycle()) == {"a", "b", "c"}


def test_save_empty_graph_is_header_only(tmp_path):
    save_dataset(GenealogyGraph(), tmp_path / "n.csv", tmp_path / "e.csv")
    assert (tmp_path / "n.csv").read_text() == NODES_HEADER
    assert (tmp_path / "e.csv").read_text() == EDGES_HEADER


def test_save_is_byte_deterministic(tmp_path):
    for sub in ("a", "b"):
        (tmp_path / sub).mkdir()
        save_dataset(f1(), tmp_path / sub / "n.csv", tmp_path / sub / "e.csv")
    for name in ("n.csv", "e.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_save_load_save_identity_on_canonical_files(tmp_path):
    save_dataset(f1(), tmp_path / "n.csv", tmp_path / "e.csv")
    first = (tmp_path / "n.csv").read_bytes(), (tmp_path / "e.csv").read_bytes()
    g = load_dataset(tmp_path / "n.csv", tmp_path / "e.csv")
    save_dataset(g, tmp_path / "n.csv", tmp_path / "e.csv")
    assert ((tmp_path / "n.csv").read_bytes(), (tmp_path / "e.csv").read_bytes()) == first


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10_000), n=st.integers(0, 30))
def test_round_trip_random(tmp_path_factory, seed, n):
    g = random_dag(np.random.default_rng(seed), n)
    d = tmp_path_factory.mktemp("rt")
    save_dataset(g, d / "n.csv", d / "e.csv")
    back = load_dataset(d / "n.csv", d / "e.csv")
    assert back == g
    assert len(back.persons) == n
    assert len(back.edges) == len({e.key for e in g.edges})


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10_000), n=st.integers(1, 15), extra=st.integers(0, 4))
def test_validator_accepts_iff_toposort(seed, n, extra):
    rng = np.random.default_rng(seed)
    g = random_dag(rng, n)
    ids = list(g.persons)
    edges = list(g.edges)
    for _ in range(extra):  # arbitrary extra edges may close cycles
        a, b = rng.choice(ids, 2)
        if a != b:
            edges.append(AdvisingEdge(str(a), str(b), "mentor"))
    h = GenealogyGraph(g.persons, edges)
    cyclic = any(c == "cycle" for c, _, _ in validate(h).errors)
    assert cyclic == (h.topological_order() is None)
