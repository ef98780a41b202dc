"""Nash stability tools for hedonic coalition formation games with transferable utility."""

from .coalitions import Partition, bell_number, enumerate_partitions, format_coalition, mask_of, members
from .core import (
    BalancednessCertificate,
    PairSystem,
    balancedness_check,
    build_pair_system,
    dual_bound,
    exact_separable_fit,
    lls_fit,
    ncore_feasible,
    relaxed_efficiency_fit,
    validate_certificate,
)
from .dynamics import DynamicsTrace, StrategyProfile, XorShift64, best_reply, induced_partition, run_dynamics
from .errors import (
    GameError,
    HedonicError,
    LimitExceeded,
    MissingTableEntry,
    NumericalFailure,
    NumericalSingularity,
    PlayerNotInCoalition,
    UnknownCoalition,
)
from .game import (
    EPS,
    AdditivePairwise,
    AllocationRule,
    CharacteristicFunction,
    PairValues,
    Preference,
    SymmetricRelativeGain,
    TableRule,
    alloc_value,
    marginal_utility,
    pair_list,
    preference_list,
    prefers,
)
from .lp import LinearProgram, LpSolution, LpStatus, check_feasible_equalities, solve_least_squares, solve_lp
from .social import SocialReport, anarchy_gap, social_optimum, social_report, social_value
from .stability import DeviationWitness, find_nash_stable, grand_coalition_stable, is_essential, is_nash_stable

__version__ = "0.1.0"
