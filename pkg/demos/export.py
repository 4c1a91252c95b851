"""Descendants of one professor as DOT, laureates highlighted."""

from nobelnet import construct, dynamics, load_dataset
from nobelnet.cli import resolve_dataset
from nobelnet.export import export_dot, export_graphml

root = resolve_dataset("F1")
universe = load_dataset(root / "nodes.csv", root / "edges.csv")
series = construct.build_series(universe, construct.load_cohorts(root / "cohorts.csv", universe))

snap = series.at(1975)
family = dynamics.descendant_subgraph(snap, "A")
print(export_dot(family, dynamics.highlighted(snap, family), name="A"))
print(f"GraphML document: {len(export_graphml(family).splitlines())} lines")
