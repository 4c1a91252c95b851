"""Place a prize candidate in the network and see what a win would change."""

from nobelnet import AdvisingEdge, GenealogyGraph, Person, construct, metrics
from nobelnet.cli import resolve_dataset
from nobelnet.core import load_dataset

root = resolve_dataset("F1")
universe = load_dataset(root / "nodes.csv", root / "edges.csv")
universe = GenealogyGraph(
    [*universe.persons.values(), Person("X", "Candidate X", candidate=True, degree_year=1990)],
    [*universe.edges, AdvisingEdge("C", "X")])
series = construct.build_series(universe, construct.load_cohorts(root / "cohorts.csv", universe))

snap = construct.attach_candidates(series[-1], universe, ["X"])
for mode in ("laureates", "network"):
    print(f"incloseness of X over {mode}: {metrics.incloseness(snap, 'X', mode):.4f}")

before = metrics.rank_table(snap, "harmonic").ranks()
delta = metrics.counterfactual_rank_delta(snap, ["X"])
print("\nharmonic ranks if X won:")
for pid in sorted(snap.laureates() + ["P"], key=before.get):
    print(f"  {pid}: {before[pid]} -> {before[pid] + delta[pid]}")
