"""Irregular edge weightings of regular graphs.

A weighting w: E -> {1..k} is irregular when all weighted degrees
sum(w(e) for e at v) are pairwise distinct; the irregularity strength of G
is the least such k.  This package provides a guarded randomized
construction that scales to large dense regular graphs, an exhaustive
oracle for small ones, a local-search fallback, bound calculators, and a
CLI (`irrstrength`) wrapping all of it.
"""

from .errors import (
    ParamsError,
    PartitionError,
    PrecheckError,
    SearchBudgetError,
    SOrderError,
    StageFailure,
    Step2RangeError,
    Step3InfeasibleError,
    VerifyError,
)
from .exact import ExactResult, certify_optimal, exact_strength
from .graph import (
    FamilyError,
    Graph,
    GraphFamilySpec,
    GraphFormatError,
    edge_list_text,
    generate,
    load_edge_list,
    save_edge_list,
)
from .partition import (
    ConditionReport,
    ConstructionParams,
    VertexPartition,
    check_conditions,
    derive_params,
    partition_counts,
    partition_from_labels,
    resample_until_valid,
    sample_partition,
)
from .construct import (
    SOrder,
    Step3Result,
    ap_class_of,
    build_s_order,
    claim_step1_ranges,
    claim_step12_ranges,
    split_increment,
    step1_initial,
    step2_level_bulk,
    step3_distinguish,
)
from .pipeline import (
    GreedyConfig,
    PipelineResult,
    fallback_greedy,
    run_pipeline,
)
from .report import SolveReport, params_echo
from .weighting import (
    BoundSet,
    EdgeWeighting,
    WeightFormatError,
    bounds,
    collision_witness,
    finite_strength,
    is_irregular,
    load_weights,
    save_weights,
    vertex_weights,
)

__version__ = "0.1.0"

__all__ = [
    "BoundSet",
    "ConditionReport",
    "ConstructionParams",
    "EdgeWeighting",
    "ExactResult",
    "FamilyError",
    "Graph",
    "GraphFamilySpec",
    "GraphFormatError",
    "GreedyConfig",
    "ParamsError",
    "PartitionError",
    "PipelineResult",
    "PrecheckError",
    "SOrder",
    "SOrderError",
    "SearchBudgetError",
    "SolveReport",
    "StageFailure",
    "Step2RangeError",
    "Step3InfeasibleError",
    "Step3Result",
    "VertexPartition",
    "VerifyError",
    "WeightFormatError",
    "ap_class_of",
    "bounds",
    "build_s_order",
    "certify_optimal",
    "check_conditions",
    "claim_step1_ranges",
    "claim_step12_ranges",
    "collision_witness",
    "derive_params",
    "edge_list_text",
    "exact_strength",
    "fallback_greedy",
    "finite_strength",
    "generate",
    "is_irregular",
    "load_edge_list",
    "load_weights",
    "params_echo",
    "partition_counts",
    "partition_from_labels",
    "resample_until_valid",
    "run_pipeline",
    "sample_partition",
    "save_edge_list",
    "save_weights",
    "split_increment",
    "step1_initial",
    "step2_level_bulk",
    "step3_distinguish",
    "vertex_weights",
]
