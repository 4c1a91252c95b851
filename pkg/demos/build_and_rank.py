"""Grow the yearly networks for the bundled F1 fixture and rank its professors."""

from nobelnet import construct, load_dataset, metrics
from nobelnet.cli import resolve_dataset

root = resolve_dataset("F1")
universe = load_dataset(root / "nodes.csv", root / "edges.csv")
cohorts = construct.load_cohorts(root / "cohorts.csv", universe)
series = construct.build_series(universe, cohorts)

for snap in series:
    print(f"{snap.year}: {len(snap.graph)} people, laureates {snap.laureates()}")
    for pid, reason in sorted(snap.included_reason.items()):
        print(f"    {pid:<3} {reason}")

# P is no laureate but sits closest to all of them
last = series[-1]
for measure in metrics.MEASURES:
    print(f"\n{measure} closeness in {last.year}")
    for rank, pid, score in metrics.rank_table(last, measure).rows:
        print(f"  {rank}. {pid}  {score:.6f}")

print("\nharmonic rank of P by year:", metrics.rank_history(series, "harmonic", ["P"])["P"])
