"""Cut sparsifiers for weighted multi-hypergraphs.

The pipeline: spread each hyperedge's weight over its clique pairs until the
assignment is gamma-balanced, read off edge strengths from the resulting
graph, sample each edge with probability proportional to 1/strength, and
reweight survivors.  Wrappers extend the core sampler to arbitrary weight
ratios (geometric bucketing) and to insertion-only streams (merge and
reduce).  Brute-force oracles verify everything at small scale.
"""

from .balance import (
    BalanceError,
    BalanceReport,
    BalancedAssignment,
    AssignmentGroup,
    IterationRecord,
    find_max_bad,
    format_trace_line,
    init_weights,
    is_balanced,
    run_balance,
    transfer_step,
)
from .graph import (
    CollapsedGraph,
    MultiEdge,
    StrengthTable,
    UnionFind,
    WeightedMultigraph,
    brute_force_strength,
    brute_force_strengths,
    collapse,
    edge_strengths,
    global_min_cut,
    k_strong_components,
    pair_strengths,
    strength_table_from_pairs,
)
from .hypergraph import (
    Cut,
    HyperEdge,
    ParseError,
    WeightedHypergraph,
    as_weight,
    crosses,
    cut_weight,
    format_weight,
    gen_example,
    gen_footnote_graph,
    gen_random,
    gen_sunflower,
    parse_hypergraph,
    serialize_hypergraph,
)
from .pipeline import (
    BucketReport,
    ContractionMap,
    PipelineError,
    StreamState,
    WeightBuckets,
    bucket_by_weight,
    contract_components,
    fast_sparsify,
    sparsify_parity,
    stream_sparsify,
)
from .seeds import RNG_ID, child_seed
from .sparsify import (
    SamplingPlan,
    SparsifierResult,
    make_plan,
    reduce_weighted,
    result_metadata,
    sample_sparsifier,
    save_result,
    sparsify_unweighted,
    sparsify_weighted,
    theoretical_rho,
)
from .verify import (
    ConcentrationSummary,
    CutRecord,
    QualityReport,
    all_cuts_report,
    check_same_component,
    concentration_trial,
    expected_size_check,
    report_csv,
    report_text,
)

__version__ = "0.1.0"

__all__ = [
    "AssignmentGroup",
    "BalanceError",
    "BalanceReport",
    "BalancedAssignment",
    "BucketReport",
    "CollapsedGraph",
    "ConcentrationSummary",
    "ContractionMap",
    "Cut",
    "CutRecord",
    "HyperEdge",
    "IterationRecord",
    "MultiEdge",
    "ParseError",
    "PipelineError",
    "QualityReport",
    "RNG_ID",
    "SamplingPlan",
    "SparsifierResult",
    "StreamState",
    "StrengthTable",
    "UnionFind",
    "WeightBuckets",
    "WeightedHypergraph",
    "WeightedMultigraph",
    "all_cuts_report",
    "as_weight",
    "brute_force_strength",
    "brute_force_strengths",
    "bucket_by_weight",
    "check_same_component",
    "child_seed",
    "collapse",
    "concentration_trial",
    "contract_components",
    "crosses",
    "cut_weight",
    "edge_strengths",
    "expected_size_check",
    "fast_sparsify",
    "find_max_bad",
    "format_trace_line",
    "format_weight",
    "gen_example",
    "gen_footnote_graph",
    "gen_random",
    "gen_sunflower",
    "global_min_cut",
    "init_weights",
    "is_balanced",
    "k_strong_components",
    "make_plan",
    "pair_strengths",
    "parse_hypergraph",
    "reduce_weighted",
    "report_csv",
    "report_text",
    "result_metadata",
    "run_balance",
    "sample_sparsifier",
    "save_result",
    "serialize_hypergraph",
    "sparsify_parity",
    "sparsify_unweighted",
    "sparsify_weighted",
    "stream_sparsify",
    "strength_table_from_pairs",
    "theoretical_rho",
    "transfer_step",
]
