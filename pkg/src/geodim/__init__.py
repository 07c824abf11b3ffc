"""Estimate the dimension behind a random geometric graph from its adjacency alone."""

from .errors import ConfigurationError, DomainError, NumericalError, ParseError
from .specfun import ln_gamma, reg_inc_beta, unit_ball_volume, RegBetaParams
from .wd import DEFAULT_CAP, DimensionEstimate, dim_from_stat, wd, wd_sum_form, wd_table
from .pointcloud import (
    BallMass,
    DensitySpec,
    PointCloud,
    ball_mass,
    distance,
    read_cloud_csv,
    sample_points,
    sample_unit_ball,
    write_cloud_csv,
)
from .geograph import (
    Graph,
    VertexStats,
    build_rgg,
    count_cherries,
    count_max_labeled_cherries,
    count_triangles,
    read_edge_list,
    shuffle_labels,
    vertex_stats,
    write_edge_list,
)
from .estimators import METHODS, EstimatorOutcome, estimate_dimension, w1, w2, w2_symmetric, w3, w4
from .harness import ExperimentConfig, RadiusRule, TrialRecord, resolve_radius, run_experiment

__version__ = "0.1.0"
