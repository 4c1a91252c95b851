"""Institution points: who trained the laureates and their teachers."""

from nobelnet import affiliation, construct, load_dataset
from nobelnet.cli import resolve_dataset

root = resolve_dataset("F1")
universe = load_dataset(root / "nodes.csv", root / "edges.csv")
series = construct.build_series(universe, construct.load_cohorts(root / "cohorts.csv", universe))

for mode in ("halving", "centrality_weighted"):
    ledger = affiliation.institution_points(series[-1], affiliation.WeightScheme(mode))
    print(mode)
    for inst, pts in ledger.ranked():
        print(f"  {inst:<4} {pts:.4f}  {ledger.shares[inst]:.1%}")

print("\nshare over time (halving)")
for year, inst, pts, share in affiliation.share_series(series, top_k=2):
    print(f"  {year} {inst:<7} {share:.3f}")
