"""Identification games over ordered domains: how few yes/no questions, from
how small a question family.

The package builds decision trees for distributions over {x_1 < ... < x_n},
measures them against entropy (redundancy) and against the optimal tree
(prolixity), and provides the analysis toolkit around dyadic distributions:
splitters, hitters, tails, and the associated exact invariant checks.
"""

from .core import (
    Comparison,
    ConeMember,
    CyclicQuestion,
    DecisionTree,
    Distribution,
    DyadicMeasure,
    EntryWise,
    Equality,
    Explicit,
    ExplicitFamily,
    Internal,
    Leaf,
    Question,
    QuestionFamily,
    Transcript,
    TranscriptEntry,
    ValidationReport,
    binary_entropy,
    dyadic_prefix_split,
    dyadic_suffix_split,
    entropy,
    question_from_json,
    question_to_json,
    simulate,
    smallest_base,
    tree_cost,
    validate_tree,
)
from .errors import (
    BadDistribution,
    BadStrategy,
    ConstantDistribution,
    InconsistentAnswers,
    IOFailure,
    MalformedIndex,
    PreconditionViolated,
    QuiztreeError,
    SecretNotInTree,
    TooLarge,
    TreeInvalid,
    UnknownFamily,
    UnknownSession,
    WrongState,
)
from .huffman import HuffmanResult, brute_force_opt, huffman
from .strategy_at import (
    DEFAULT_THRESHOLD,
    AtParams,
    ComparisonEqualityFamily,
    build_at_tree,
    comparison_equality_family,
    middle_index,
    redundancy_diagnostic,
)
from .strategy_vector import (
    VectorCodec,
    build_vector_tree,
    vector_family,
    vector_family_size,
)
from .strategy_cone import (
    ConeFamily,
    ConeStepper,
    cone_family,
    cone_membership,
    cone_online,
    cone_optimal_tree,
    pivot_size,
)
from .strategy_prolixity import (
    CostEstimate,
    ProlixityParams,
    ProlixityStepper,
    StepEvent,
    certify_question,
    estimate_expected_cost,
    prolixity_family_size_bound,
    prolixity_online,
    run_tr,
)
from .analysis import (
    ExponentCalculus,
    HitterReport,
    InvariantReport,
    MrdReport,
    SplitterSet,
    check_splitter_antichain,
    check_tail_atomic,
    endgame_revenue,
    enumerate_dyadic,
    exponent_calculus,
    gt_bound,
    hard_distribution,
    is_dyadic_hitter,
    min_dyadic_hitter,
    mrd,
    prolixity_lb_check,
    rho,
    sample_hitter,
    splitters,
    tail,
)
from .bench import BenchConfig, BenchRow, bench_run, zipf_distribution
from .session import (
    GameSession,
    SessionStore,
    TreeStepper,
    make_stepper,
    session_answer,
    session_create,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # core
    "Distribution",
    "DyadicMeasure",
    "Question",
    "QuestionFamily",
    "ExplicitFamily",
    "Equality",
    "Comparison",
    "EntryWise",
    "ConeMember",
    "CyclicQuestion",
    "Explicit",
    "DecisionTree",
    "Leaf",
    "Internal",
    "Transcript",
    "TranscriptEntry",
    "ValidationReport",
    "simulate",
    "tree_cost",
    "entropy",
    "binary_entropy",
    "validate_tree",
    "dyadic_prefix_split",
    "dyadic_suffix_split",
    "question_to_json",
    "question_from_json",
    "smallest_base",
    # errors
    "QuiztreeError",
    "BadDistribution",
    "PreconditionViolated",
    "TreeInvalid",
    "SecretNotInTree",
    "TooLarge",
    "ConstantDistribution",
    "MalformedIndex",
    "UnknownSession",
    "WrongState",
    "InconsistentAnswers",
    "BadStrategy",
    "UnknownFamily",
    "IOFailure",
    # huffman
    "HuffmanResult",
    "huffman",
    "brute_force_opt",
    # threshold strategy
    "DEFAULT_THRESHOLD",
    "AtParams",
    "ComparisonEqualityFamily",
    "comparison_equality_family",
    "middle_index",
    "build_at_tree",
    "redundancy_diagnostic",
    # vector strategy
    "VectorCodec",
    "vector_family",
    "vector_family_size",
    "build_vector_tree",
    # cone strategy
    "ConeFamily",
    "ConeStepper",
    "cone_family",
    "cone_membership",
    "cone_online",
    "cone_optimal_tree",
    "pivot_size",
    # randomized strategy
    "ProlixityParams",
    "ProlixityStepper",
    "StepEvent",
    "CostEstimate",
    "run_tr",
    "prolixity_online",
    "certify_question",
    "prolixity_family_size_bound",
    "estimate_expected_cost",
    # analysis
    "SplitterSet",
    "MrdReport",
    "HitterReport",
    "InvariantReport",
    "ExponentCalculus",
    "enumerate_dyadic",
    "splitters",
    "mrd",
    "rho",
    "is_dyadic_hitter",
    "min_dyadic_hitter",
    "sample_hitter",
    "hard_distribution",
    "tail",
    "check_tail_atomic",
    "check_splitter_antichain",
    "endgame_revenue",
    "gt_bound",
    "exponent_calculus",
    "prolixity_lb_check",
    # bench
    "BenchConfig",
    "BenchRow",
    "bench_run",
    "zipf_distribution",
    # sessions
    "GameSession",
    "SessionStore",
    "TreeStepper",
    "make_stepper",
    "session_create",
    "session_answer",
]
