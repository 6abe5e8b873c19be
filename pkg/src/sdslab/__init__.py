"""sdslab: an exact-arithmetic laboratory for randomized voting rules.

Rules map preference profiles to lotteries over alternatives; every
computation uses arbitrary-precision rationals so axiom audits and metric
bounds are decided as exact (in)equalities, never within tolerance.
"""

from .budget import DEFAULT_BUDGET, current_budget
from .errors import (
    BudgetExceededError,
    DimensionError,
    InfeasibleDecompositionError,
    NotStrategyproofError,
    ProfileFormatError,
    RuleError,
    ScopeError,
    SdslabError,
)
from .lotteries import Lottery, frac, lottery_from_scores, mix_lotteries, sd_prefers
from .profiles import (
    MajorityTally,
    Preference,
    Profile,
    SymmetryMap,
    adjacent_swap,
    all_preferences,
    alt_label,
    apply_symmetry,
    enumerate_profiles,
    enumerate_profiles_anonymous,
    format_profile,
    majority_tally,
    parse_profile,
    parse_profile_with_labels,
    profile_at,
    profile_count,
    profile_index,
    rank,
    support_matrix,
)
from .rules import (
    Cond2mSds,
    CyclicPairwiseSds,
    DropVoterCopelandSds,
    DupleSds,
    MixtureSds,
    PointVotingSds,
    RandomDictatorshipSds,
    RandomizedBordaSds,
    RandomizedCopelandSds,
    SdsSpec,
    SupportingSizeSds,
    TabulatedSds,
    UniformLotterySds,
    UnilateralSds,
    borda_score,
    copeland_score,
    evaluate,
    make_duple,
    make_mixture,
    make_point_voting,
    make_random_dictatorship,
    make_supporting_size,
    make_unilateral,
    make_zoo,
    registry,
    registry_rule,
    rule_from_json,
    rule_to_json,
    tabulate,
    tabulation_from_jsonl,
    tabulation_to_jsonl,
)
from .axioms import (
    AxiomReport,
    Witness,
    audit_gibbard,
    audit_strategyproof,
    audit_symmetries,
    condorcet_loser,
    condorcet_winner,
    is_cw_candidate,
    is_strategyproof,
    pareto_dominations,
)
from .metrics import (
    AlphaResult,
    BetaResult,
    BoundCheck,
    BoundsReport,
    GammaResult,
    MetricsReport,
    known_metric_formulas,
    measure,
    measure_alpha,
    measure_beta,
    measure_gamma,
    verify_theorem_bounds,
)
from .transforms import (
    ScoringDecomposition,
    build_cwc_profile,
    build_minimal_margin_profile,
    build_unanimous_profile,
    decompose_scoring,
    symmetrize,
)

__version__ = "0.1.0"
