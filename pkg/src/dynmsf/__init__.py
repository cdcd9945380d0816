"""Fully dynamic approximation of minimum spanning forest weight."""

from .det_cc import SmallCcCounter, static_ncc
from .errors import (
    DuplicateEdge,
    DynMsfError,
    EdgeAlreadyPresent,
    EdgeNotFound,
    EmptySupport,
    ParseError,
    ReplayError,
    SelfLoopForbidden,
    TParamTooSmall,
    TParamViolation,
    WeightOutOfRange,
)
from .graph import DynamicGraph, Update, bounded_bfs, new_graph
from .msf import MsfEstimator, msf_new
from .oracle import (
    LevelScheme,
    exact_ncc,
    exact_small_cc,
    formula_x,
    kruskal_msf_weight,
)
from .rand_cc import (
    PhaseEstimator,
    StaticEstimateConfig,
    corollary_estimator,
    epsn_estimator,
    static_estimate_ncc_nis,
)
from .sampler import NonZeroSampler

__version__ = "0.1.0"
