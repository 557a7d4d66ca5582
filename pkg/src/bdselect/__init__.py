"""User selection for the downlink of a block-diagonalized MU-MIMO cell.

A base station with ``m`` antennas serves at most ``floor(m / n)`` of
``k_total`` candidate users, each with ``n`` receive antennas, using
null-space (block-diagonalizing) precoding and joint water-filling. This
package provides a conditional-entropy greedy selector, five cheaper or
stronger baselines, an exhaustive reference, analytic flop models for all
of them, and a seeded Monte Carlo sweep harness with CSV export.
"""

from .bdrate import BdSolution, WaterfillResult, bd_solution, sum_rate, waterfill
from .channel import (
    ChannelSet,
    SystemConfig,
    channel_matrices,
    generate_channels,
    splitmix64,
    stack_channels,
    trial_seed,
)
from .entropy import (
    GramInverse,
    conditional_entropy_term,
    diff_entropy,
    joint_entropy,
    joint_entropy_via_sigma,
    leave_one_out_inverses,
    mutual_information_pair,
    sum_conditional_entropy,
)
from .estimator import UserSelector, check_channel_tensor
from .flops import (
    FlopReport,
    algorithm_flops,
    candidate_score_flops,
    conditional_entropy_flops,
    inverse_update_flops,
)
from .linalg import (
    RANK_RTOL,
    NotPositiveDefiniteError,
    SvdResult,
    chol_logdet,
    herm_product,
    null_space_basis,
    pd_inverse,
    row_space_basis,
    svd,
    woodbury_update,
)
from .selection import (
    ALGORITHMS,
    DEFAULT_ALGORITHMS,
    BudgetExceededError,
    Selection,
    select_brute_force,
    select_c_algorithm,
    select_chordal,
    select_conditional_entropy,
    select_n_algorithm,
    select_row_norm,
    select_upperbound,
    subset_count,
)
from .sweep import CSV_HEADER, SweepConfig, SweepResult, SweepRow, run_sweep, write_csv

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "BdSolution",
    "BudgetExceededError",
    "CSV_HEADER",
    "ChannelSet",
    "DEFAULT_ALGORITHMS",
    "FlopReport",
    "GramInverse",
    "NotPositiveDefiniteError",
    "RANK_RTOL",
    "Selection",
    "SvdResult",
    "SweepConfig",
    "SweepResult",
    "SweepRow",
    "SystemConfig",
    "UserSelector",
    "WaterfillResult",
    "algorithm_flops",
    "bd_solution",
    "candidate_score_flops",
    "channel_matrices",
    "check_channel_tensor",
    "chol_logdet",
    "conditional_entropy_flops",
    "conditional_entropy_term",
    "diff_entropy",
    "generate_channels",
    "herm_product",
    "inverse_update_flops",
    "joint_entropy",
    "joint_entropy_via_sigma",
    "leave_one_out_inverses",
    "mutual_information_pair",
    "null_space_basis",
    "pd_inverse",
    "row_space_basis",
    "run_sweep",
    "select_brute_force",
    "select_c_algorithm",
    "select_chordal",
    "select_conditional_entropy",
    "select_n_algorithm",
    "select_row_norm",
    "select_upperbound",
    "splitmix64",
    "stack_channels",
    "subset_count",
    "sum_conditional_entropy",
    "sum_rate",
    "svd",
    "trial_seed",
    "waterfill",
    "woodbury_update",
    "write_csv",
]
