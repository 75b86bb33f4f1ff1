"""Partition posets, edge-labeling axioms, and Whitney dual constructions.

The package builds the weighted and pointed partition posets, the rooted
spanning forest poset, and the pointed/bicolored Lyndon forest posets;
verifies the ER/EL/EW edge-labeling axioms with counterexample witnesses;
and constructs Whitney duals both generically (label-word sorting) and
directly (forest merges), reproducing every desk-scale count exactly.
"""

from .config import DEFAULT_LIMITS, Limits
from .errors import (
    BudgetExhaustedError,
    ElementNotFoundError,
    InternalGuardError,
    InvalidForestError,
    InvalidMergeError,
    LimitExceededError,
    NotGradedError,
    PreconditionError,
    WhitneyDualError,
)
from .isomorphism import are_isomorphic
from .labeling import (
    ChainWord,
    EdgeLabeling,
    LabelPoset,
    Ordering,
    Report,
    check_EL,
    check_EL_dual,
    check_ER,
    check_EW,
    check_ascent_free_injectivity,
    check_rank_two_switching,
    classify_chain,
    dual_labeling,
    lex_compare,
    stanley_mobius_check,
)
from .lyndon import (
    POINTED,
    WEIGHTED,
    BicoloredForest,
    Leaf,
    Node,
    build_flyn,
    chain_to_forest,
    forest_to_chain,
    is_bicolored_lyndon,
    is_lyndon_vertex,
    is_normalized,
    is_pointed_lyndon,
    reverse_minimal_extension,
    u_merge,
)
from .operads import (
    Monomial,
    increasing_chain_census,
    pbw_com2_basis,
    pbw_perm_basis,
    prelie_dimension_check,
    theta,
    tlyn_trees,
)
from .partitions import (
    PairLabel,
    PointedPartition,
    RootedForest,
    RootedTree,
    SetPartition,
    WeightedPartition,
    build_label_poset_bullet,
    build_label_poset_w,
    build_partition_lattice,
    build_pointed,
    build_spanning_forest_poset,
    build_weighted,
    closed_form_increasing_word,
    label_lambda_bullet,
    label_lambda_bullet2,
    label_lambda_tilde,
    label_lambda_w,
    phi_filter_isomorphism,
)
from .poset import GradedPoset, SaturatedChain, is_whitney_dual, is_whitney_twin
from .whitney_dual import (
    DualElement,
    ascent_free_zero_chains,
    construct_R,
    sort_word,
)

__version__ = "0.1.0"
