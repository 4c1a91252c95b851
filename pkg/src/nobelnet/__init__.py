"""Professor-student genealogy networks of prize laureates.

Build yearly networks from a genealogy dataset and measure closeness,
change over time, institution credit and random baselines.
"""

from .core import (
    AdvisingEdge,
    DatasetError,
    GenealogyGraph,
    Person,
    ValidationReport,
    load_dataset,
    save_dataset,
    validate,
)
from .construct import (
    NetworkSeries,
    OverlayEdit,
    Snapshot,
    ancestor_closure,
    apply_overlay,
    build_series,
    build_year,
    closest_common_ancestor,
    expand_full,
)
from .metrics import (
    arithmetic_centrality,
    counterfactual_rank_delta,
    harmonic_centrality,
    incloseness,
    nobel_distances,
    rank_history,
    rank_table,
)
from .dynamics import components, descendant_subgraph, edit_delta, edit_series
from .affiliation import WeightScheme, institution_points, share_series
from .baseline import baseline_band, pairwise_paths, stratified_sample

__version__ = "0.1.0"
