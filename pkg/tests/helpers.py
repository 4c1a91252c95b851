"""Fixtures builders and independent oracles used across the test suite."""

import numpy as np

from nobelnet.core import AdvisingEdge, GenealogyGraph, Person

F1_PERSONS = [
    Person("P", "Person P", degree_year=1900, degree_institution="U2", sources=("fixture",)),
    Person("A", "Person A", laureate=True, prize_year=1970, degree_year=1930,
           degree_institution="U1", sources=("fixture",)),
    Person("B", "Person B", laureate=True, prize_year=1972, degree_year=1932,
           degree_institution="U1", sources=("fixture",)),
    Person("C", "Person C", laureate=True, prize_year=1975, degree_year=1960,
           degree_institution="U3", sources=("fixture",)),
]
F1_EDGES = [
    AdvisingEdge("P", "A", "phd", "fixture"),
    AdvisingEdge("P", "B", "phd", "fixture"),
    AdvisingEdge("A", "C", "phd", "fixture"),
]
F1_COHORTS = {1970: ["A"], 1972: ["B"], 1975: ["C"]}


def f1(extra_persons=(), extra_edges=()):
    return GenealogyGraph(F1_PERSONS + list(extra_persons), F1_EDGES + list(extra_edges))


def f1_with_candidate():
    """F1 plus candidate X, a student of C."""
    return f1([Person("X", "Candidate X", candidate=True, degree_year=1990,
                      degree_institution="U4")],
              [AdvisingEdge("C", "X")])


def random_dag(rng, n, max_advisors=3, p_laureate=0.3, year_span=(1969, 2021), prefix="n"):
    """Random professor->student DAG: node i draws advisors among nodes < i."""
    persons, edges = [], []
    width = len(str(n))
    ids = [f"{prefix}{i:0{width}d}" for i in range(n)]
    for i, pid in enumerate(ids):
        won = bool(rng.random() < p_laureate)
        persons.append(Person(
            pid, pid.upper(),
            laureate=won,
            prize_year=int(rng.integers(*year_span)) if won else None,
            degree_year=1800 + i,
            degree_institution=f"U{int(rng.integers(0, 5))}",
        ))
        if i:
            k = int(rng.integers(0, max_advisors + 1))
            for j in sorted(set(rng.choice(i, size=min(k, i), replace=False).tolist())):
                edges.append(AdvisingEdge(ids[j], pid))
    return GenealogyGraph(persons, edges)


def floyd_warshall(graph):
    """All-pairs hop counts by Floyd-Warshall on a dense matrix (inf = unreachable)."""
    ids = list(graph.persons)
    pos = {p: i for i, p in enumerate(ids)}
    n = len(ids)
    d = np.full((n, n), np.inf)
    np.fill_diagonal(d, 0.0)
    for e in graph.edges:
        d[pos[e.advisor_id], pos[e.student_id]] = 1.0
    for k in range(n):
        d = np.minimum(d, d[:, [k]] + d[[k], :])
    return ids, d


def oracle_scores(graph, year=None):
    """Arithmetic and harmonic scores straight from the defining formulas."""
    ids, d = floyd_warshall(graph)
    n = len(ids)
    lau = [i for i, p in enumerate(ids) if graph[p].is_laureate_by(year)]
    arith, harm = {}, {}
    for i, pid in enumerate(ids):
        targets = [j for j in lau if j != i]
        reach = [d[i, j] for j in targets if np.isfinite(d[i, j])]
        arith[pid] = 0.0 if not reach else (len(reach) / (n - 1)) ** 2 / sum(reach)
        harm[pid] = 0.0 if not targets else sum(1.0 / x for x in reach) / len(targets)
    return arith, harm


def write_cli_workspace(root):
    """F1 with a candidate, plus an offline fetch cache, under ``root``.

    Returns one argument list per CLI subcommand (without ``--out``).
    """
    from nobelnet.construct import save_cohorts
    from nobelnet.core import save_dataset

    root.mkdir(parents=True, exist_ok=True)
    data = root / "data"
    data.mkdir(exist_ok=True)
    save_dataset(f1_with_candidate(), data / "nodes.csv", data / "edges.csv")
    save_cohorts(F1_COHORTS, data / "cohorts.csv")
    cache = root / "cache" / "academic_tree"
    cache.mkdir(parents=True, exist_ok=True)
    (cache / "2.rec").write_text("nobelnet-record 1\nid: 2\nname: Two\nadvisor: 1 phd\n")
    (cache / "1.rec").write_text("nobelnet-record 1\nid: 1\nname: One\ndegree_year: 1900\n")
    ds = ["--dataset", str(data)]
    return {
        "validate": ["validate", *ds],
        "build": ["build", *ds],
        "centrality": ["centrality", *ds, "--history"],
        "timeline": ["timeline", *ds],
        "universities": ["universities", *ds, "--scheme", "centrality_weighted"],
        "subgraph": ["subgraph", *ds, "--root", "P", "--format", "both"],
        "candidates": ["candidates", *ds],
        "baseline": ["baseline", *ds, "--trials", "20", "--seed", "3"],
        "fetch": ["fetch", "2", "--offline", "--cache-dir", str(root / "cache")],
    }


def read_tree(directory):
    return {p.name: p.read_bytes() for p in sorted(directory.iterdir())}
