"""How much the network changes from one award year to the next."""

import numpy as np

from nobelnet import construct, dynamics
from nobelnet.synthetic import layered_genealogy

rng = np.random.default_rng(7)
universe = layered_genealogy(rng, generations=12, per_generation=15, max_advisors=2)

# hand out prizes to a few scholars of the last cohorts, one per year
youngest = [pid for pid, p in universe.persons.items() if p.degree_year >= 1800 + 3 * 9]
winners = rng.choice(sorted(youngest), size=8, replace=False)
cohorts = {1969 + 3 * i: [str(w)] for i, w in enumerate(winners)}
series = construct.build_series(universe, cohorts)

print("year  +nodes  +edges  edits  components")
for d in dynamics.edit_series(series):
    print(f"{d.year}  {d.nodes_added:6d}  {d.edges_added:6d}  {d.total:5d}  {d.components_after:10d}")

count, labels = dynamics.components(series[-1])
print(f"\n{count} disjoint family trees in the final year, labelled {sorted(set(labels.values()))}")
