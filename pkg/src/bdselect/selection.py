"""Greedy user selection algorithms and the brute-force reference.

All greedy selectors share one loop: score every remaining candidate,
take the argmax (ties break to the smallest index), then accept the pick
only if the block-diagonalized sum rate did not drop; a drop terminates
the search early. They differ only in the per-candidate score:

``cond-entropy``
    Sum of conditional entropies of the candidate given the selected set
    and of each selected user given the set with the candidate swapped in.
``c-alg``
    The sum rate itself; the most expensive score and the strongest greedy
    baseline.
``n-alg``
    Frobenius norm of the candidate's rows after projection out of the
    span (maintained by modified Gram-Schmidt) of the selected users' rows.
``upperbound``
    Joint entropy of the selected set plus the candidate, equivalently the
    candidate's entropy conditioned on the set alone.
``chordal``
    Sum of squared chordal distances between the candidate's row space and
    each selected user's row space.
``row-norm``
    Product of the candidate's squared row norms after projection onto the
    null space of the selected users' stacked rows.

``brute-force`` enumerates every nonempty subset up to the service cap and
is exact but exponential; it refuses to run past ``max_subsets``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .bdrate import sum_rate
from .channel import channel_matrices, stack_channels
from .entropy import (
    GramInverse,
    conditional_entropy_term,
    leave_one_out_inverses,
    sum_conditional_entropy,
)
from .linalg import RANK_RTOL, null_space_basis, row_space_basis

__all__ = [
    "Selection",
    "BudgetExceededError",
    "ALGORITHMS",
    "DEFAULT_ALGORITHMS",
    "subset_count",
    "select_conditional_entropy",
    "select_brute_force",
    "select_c_algorithm",
    "select_n_algorithm",
    "select_upperbound",
    "select_chordal",
    "select_row_norm",
]


class BudgetExceededError(RuntimeError):
    """Brute-force enumeration would exceed the configured subset budget."""


@dataclass(frozen=True)
class Selection:
    """Outcome of one selector run.

    ``metric_trace`` holds the winning score at each committed step (for
    ``brute-force`` it is the single best rate). ``rejected_user`` records
    the candidate whose admission would have lowered the sum rate when the
    greedy loop stopped early, else ``None``.
    """

    users: tuple
    sum_rate: float
    algorithm: str
    metric_trace: list = field(default_factory=list)
    rejected_user: int | None = None


def _checked_matrices(channels, config):
    mats = channel_matrices(channels)
    expected = (config.k_total, config.n, config.m)
    if mats.shape != expected:
        raise ValueError(
            f"channel shape {mats.shape} does not match config {expected}"
        )
    return mats


def _rate_gated_greedy(mats, config, tag, score_fn, commit_fn=None):
    """Shared greedy loop: argmax score, keep only rate-improving picks."""
    remaining = list(range(config.k_total))
    users, trace = [], []
    best_rate = 0.0
    rejected = None
    for step in range(config.k_max):
        if not remaining:
            break
        scores = np.asarray(score_fn(step, users, remaining), dtype=float)
        pick = remaining[int(np.argmax(scores))]
        rate = sum_rate(mats, (*users, pick), config.power)
        if rate < best_rate:
            rejected = pick
            break
        users.append(pick)
        remaining.remove(pick)
        best_rate = rate
        trace.append(float(scores.max()))
        if commit_fn is not None:
            commit_fn(pick)
    return Selection(tuple(users), best_rate, tag, trace, rejected)


def select_conditional_entropy(channels, config):
    """Greedy selection on the sum-conditional-entropy score.

    The score of each candidate is evaluated against the cached Gram
    inverse of the current set; leave-one-out caches are shared across all
    candidates of a step, so every score costs one rank-``n`` update per
    already-selected user.
    """
    mats = _checked_matrices(channels, config)
    state = GramInverse.empty(config.m, config.power_ratio)

    def score(step, users, remaining):
        loo = leave_one_out_inverses(state, mats)
        return [
            sum_conditional_entropy(state, mats, k, leave_one_out=loo)
            for k in remaining
        ]

    def commit(pick):
        nonlocal state
        state = state.with_user(pick, mats[pick])

    return _rate_gated_greedy(mats, config, "cond-entropy", score, commit)


def select_c_algorithm(channels, config):
    """Greedy selection that maximizes the sum rate itself at each step."""
    mats = _checked_matrices(channels, config)

    def score(step, users, remaining):
        return [sum_rate(mats, (*users, k), config.power) for k in remaining]

    return _rate_gated_greedy(mats, config, "c-alg", score)


def select_upperbound(channels, config):
    """Greedy selection on the joint entropy of the augmented set.

    Maximizing ``h(y_S, y_t)`` over ``t`` is the same as maximizing the
    candidate's conditional entropy ``h(y_t | y_S)`` alone, so the score
    reuses the Gram inverse cache with no swap terms.
    """
    mats = _checked_matrices(channels, config)
    state = GramInverse.empty(config.m, config.power_ratio)

    def score(step, users, remaining):
        return [
            conditional_entropy_term(mats[k], state.matrix) for k in remaining
        ]

    def commit(pick):
        nonlocal state
        state = state.with_user(pick, mats[pick])

    return _rate_gated_greedy(mats, config, "upperbound", score, commit)


def select_n_algorithm(channels, config):
    """Greedy selection on projected Frobenius norms.

    The first pick is the largest-norm user; afterwards candidates are
    scored by the Frobenius norm of their rows with the span of the
    selected users' rows projected out. The span is maintained as an
    orthonormal row basis grown by modified Gram-Schmidt.
    """
    mats = _checked_matrices(channels, config)
    basis_rows = []

    def residual(h):
        if not basis_rows:
            return h
        basis = np.asarray(basis_rows)
        return h - (h @ basis.conj().T) @ basis

    def score(step, users, remaining):
        return [float(np.linalg.norm(residual(mats[k]))) for k in remaining]

    def commit(pick):
        block = mats[pick]
        scale = max(1.0, float(np.linalg.norm(block)))
        for row in block:
            v = row.astype(np.complex128, copy=True)
            for q in basis_rows:
                v -= np.vdot(q, v) * q
            norm = float(np.linalg.norm(v))
            if norm > RANK_RTOL * scale:
                basis_rows.append(v / norm)

    return _rate_gated_greedy(mats, config, "n-alg", score, commit)


def select_chordal(channels, config):
    """Greedy selection on summed squared chordal subspace distances.

    Each user is represented by an orthonormal basis ``Q_k`` of its row
    space; the squared chordal distance between users ``a`` and ``b`` is
    ``n - ||Q_a^H Q_b||_F^2``. The first pick is the largest Frobenius
    norm; later picks maximize the cumulative distance to the selected set.
    """
    mats = _checked_matrices(channels, config)
    bases = [row_space_basis(mats[k]) for k in range(config.k_total)]
    cumulative = np.zeros(config.k_total)

    def distance_sq(a, b):
        overlap = float(np.linalg.norm(bases[a].conj().T @ bases[b]) ** 2)
        return config.n - overlap

    def score(step, users, remaining):
        if step == 0:
            return [float(np.linalg.norm(mats[k])) for k in remaining]
        return [cumulative[k] for k in remaining]

    def commit(pick):
        for k in range(config.k_total):
            cumulative[k] += distance_sq(k, pick)

    return _rate_gated_greedy(mats, config, "chordal", score, commit)


def select_row_norm(channels, config):
    """Greedy selection on the product of null-space-projected row norms.

    The first pick maximizes the squared Frobenius norm. Later steps
    project each candidate's rows onto the null space of the selected
    users' stacked rows and score by the product of the squared projected
    row norms, so one weak row disqualifies a candidate.
    """
    mats = _checked_matrices(channels, config)

    def score(step, users, remaining):
        if step == 0:
            return [float(np.linalg.norm(mats[k]) ** 2) for k in remaining]
        basis = null_space_basis(stack_channels(mats, users), config.m)
        out = []
        for k in remaining:
            coords = mats[k] @ basis
            out.append(float(np.prod(np.sum(np.abs(coords) ** 2, axis=1))))
        return out

    return _rate_gated_greedy(mats, config, "row-norm", score)


def subset_count(k_total, k_max):
    """Number of nonempty subsets of size at most ``k_max``."""
    return sum(math.comb(k_total, size) for size in range(1, k_max + 1))


def select_brute_force(channels, config, max_subsets=100_000):
    """Exhaustive search over all nonempty subsets up to the service cap.

    Returns the rate-optimal subset; exact ties go to the lexicographically
    smallest index tuple. Raises :class:`BudgetExceededError` before doing
    any work if the enumeration would exceed ``max_subsets`` evaluations.
    """
    mats = _checked_matrices(channels, config)
    total = subset_count(config.k_total, config.k_max)
    if total > max_subsets:
        raise BudgetExceededError(
            f"{total} candidate subsets exceed the budget of {max_subsets}"
        )
    best_users = None
    best_rate = -np.inf
    for size in range(1, config.k_max + 1):
        for users in itertools.combinations(range(config.k_total), size):
            rate = sum_rate(mats, users, config.power)
            if rate > best_rate or (rate == best_rate and users < best_users):
                best_users, best_rate = users, rate
    return Selection(best_users, best_rate, "brute-force", [best_rate], None)


# Tag registry; iteration order puts the default sweep algorithms first.
ALGORITHMS = {
    "cond-entropy": select_conditional_entropy,
    "c-alg": select_c_algorithm,
    "n-alg": select_n_algorithm,
    "upperbound": select_upperbound,
    "chordal": select_chordal,
    "row-norm": select_row_norm,
    "brute-force": select_brute_force,
}

# Every algorithm except the exponential reference.
DEFAULT_ALGORITHMS = tuple(t for t in ALGORITHMS if t != "brute-force")
