"""Are laureates closer to each other than random scholars of the same age?

On a synthetic genealogy the "laureates" are random too, so their path
histogram should sit inside the band most of the time.
"""

import numpy as np

from nobelnet.baseline import baseline_band
from nobelnet.synthetic import layered_genealogy, random_reference

rng = np.random.default_rng(2024)
graph = layered_genealogy(rng, generations=25, per_generation=30)
reference = random_reference(rng, graph)
band = baseline_band(graph, reference, trials=50, level=0.90, seed=1)

print(f"{len(reference)} reference scholars, {band.reference.pairs} pairs, "
      f"{band.reference.unreachable} unconnected")
print("length  count  band")
for L, lo, hi, inside in zip(band.lengths, band.lower, band.upper, band.contains(band.reference)):
    print(f"{L:6d}  {band.reference.count(L):5d}  [{lo:g}, {hi:g}]{'' if inside else '  outside'}")
