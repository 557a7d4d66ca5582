"""Entropy metrics for received signals under uniform power loading.

With the transmit covariance fixed at ``(P / m) I_m`` and unit-variance
noise, the differential entropy of user ``k``'s received vector is, up to
an additive constant that is the same for every candidate,

    h(y_k) = log2 det(I_n + (P / m) H_k H_k^H)  bits.

All functions here drop that common constant, so the returned values are
only meaningful in differences and comparisons, which is all the greedy
selectors need. ``power_ratio`` always denotes ``P / m``.

The selection metric combines conditional entropies. Conditioning on the
already-selected set ``S`` replaces the scaled identity covariance with

    G(S) = ((m / P) I_m + H(S)^H H(S))^{-1},

so ``h(y_k | y_S) = log2 det(I_n + H_k G(S) H_k^H)``. :class:`GramInverse`
caches ``G(S)`` and grows it one user at a time with a rank-``n`` Woodbury
update; only ``n x n`` systems are ever inverted during selection.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import channel_matrices
from .linalg import chol_logdet, herm_product, woodbury_update

__all__ = [
    "GramInverse",
    "diff_entropy",
    "joint_entropy",
    "joint_entropy_via_sigma",
    "mutual_information_pair",
    "conditional_entropy_term",
    "leave_one_out_inverses",
    "sum_conditional_entropy",
]

# Negative values this small are Cholesky round-off, not real negativity.
_MI_CLAMP = -1e-9


def _check_power_ratio(power_ratio):
    power_ratio = float(power_ratio)
    if power_ratio <= 0.0:
        raise ValueError(f"power_ratio must be positive, got {power_ratio}")
    return power_ratio


def diff_entropy(h, power_ratio):
    """Differential entropy (constants dropped) of one user's signal.

    Returns ``log2 det(I_n + power_ratio * H H^H)`` in bits.
    """
    power_ratio = _check_power_ratio(power_ratio)
    h = np.asarray(h)
    n = h.shape[0]
    return chol_logdet(np.eye(n) + power_ratio * herm_product(h, h))


def joint_entropy(channels, power_ratio):
    """Joint entropy (constants dropped) of a group of received signals.

    Computed in the transmit domain as
    ``log2 det(I_m + power_ratio * sum_k H_k^H H_k)``, which stays ``m x m``
    no matter how many users are stacked. An empty group has entropy 0.
    """
    power_ratio = _check_power_ratio(power_ratio)
    mats = [np.asarray(h) for h in channels]
    if not mats:
        return 0.0
    m = mats[0].shape[1]
    gram = np.zeros((m, m), dtype=np.complex128)
    for h in mats:
        if h.shape[1] != m:
            raise ValueError("all channels must share the transmit dimension")
        gram += h.conj().T @ h
    return chol_logdet(np.eye(m) + power_ratio * gram)


def joint_entropy_via_sigma(channels, power_ratio):
    """Joint entropy from the receive-domain covariance, for cross-checks.

    Assembles the full covariance of the stacked received vector, whose
    (i, j) block is ``power_ratio * H_i H_j^H`` plus identity on the
    diagonal, and takes its log determinant. Algebraically identical to
    :func:`joint_entropy` but scales with the number of receive antennas,
    so it serves as an independent oracle rather than a production path.
    """
    power_ratio = _check_power_ratio(power_ratio)
    mats = [np.asarray(h) for h in channels]
    if not mats:
        return 0.0
    blocks = []
    for i, hi in enumerate(mats):
        row = []
        for j, hj in enumerate(mats):
            block = power_ratio * herm_product(hi, hj)
            if i == j:
                block = block + np.eye(hi.shape[0])
            row.append(block)
        blocks.append(row)
    return chol_logdet(np.block(blocks))


def mutual_information_pair(h1, h2, power_ratio):
    """Mutual information between two users' received signals.

    ``I = h(y_1) + h(y_2) - h(y_1, y_2)``; the dropped constants cancel.
    Tiny negative round-off (above -1e-9) is clamped to zero, anything
    more negative is a genuine numerical failure and raises.
    """
    value = (
        diff_entropy(h1, power_ratio)
        + diff_entropy(h2, power_ratio)
        - joint_entropy([h1, h2], power_ratio)
    )
    if value < 0.0:
        if value < _MI_CLAMP:
            raise ArithmeticError(
                f"mutual information {value} is negative beyond round-off"
            )
        return 0.0
    return value


@dataclass(frozen=True)
class GramInverse:
    """Cached ``((m / P) I + H(S)^H H(S))^{-1}`` for a selected set ``S``.

    ``matrix`` is ``m x m`` Hermitian positive definite, ``members`` records
    the selection order, and ``power_ratio`` is the ``P / m`` the cache was
    built with. Instances are immutable; :meth:`with_user` returns a new
    cache with one more user folded in via a Woodbury update.
    """

    matrix: np.ndarray
    members: tuple
    power_ratio: float

    @classmethod
    def empty(cls, m, power_ratio):
        """Cache for the empty selection: ``(power_ratio) * I_m``."""
        power_ratio = _check_power_ratio(power_ratio)
        return cls(power_ratio * np.eye(m, dtype=np.complex128), (), power_ratio)

    def with_user(self, user, h):
        """Return a new cache with user ``user`` (channel ``h``) added."""
        user = int(user)
        if user in self.members:
            raise ValueError(f"user {user} is already in the selection")
        return GramInverse(
            woodbury_update(self.matrix, np.asarray(h)),
            self.members + (user,),
            self.power_ratio,
        )


def conditional_entropy_term(h, gram_inv):
    """``log2 det(I_n + H G H^H)`` for one user against a cached inverse.

    With ``G = G(S)`` this is the conditional entropy ``h(y | y_S)`` up to
    the usual dropped constant; with ``G = (P / m) I`` it reduces to
    :func:`diff_entropy`.
    """
    h = np.asarray(h)
    n = h.shape[0]
    return chol_logdet(np.eye(n) + h @ np.asarray(gram_inv) @ h.conj().T)


def leave_one_out_inverses(state, channels):
    """Caches for ``S`` minus each member, aligned with ``state.members``.

    Each cache is rebuilt from the empty selection with Woodbury updates,
    so the per-entry cost stays at ``|S| - 1`` rank-``n`` updates.
    """
    mats = channel_matrices(channels)
    out = []
    for skip in state.members:
        partial = GramInverse.empty(mats.shape[2], state.power_ratio)
        for user in state.members:
            if user != skip:
                partial = partial.with_user(user, mats[user])
        out.append(partial.matrix)
    return out


def sum_conditional_entropy(state, channels, candidate, leave_one_out=None):
    """Greedy selection metric for adding ``candidate`` to the set ``S``.

    Sums the conditional entropy of the candidate given the current set
    with, for every member ``s_i``, the conditional entropy of ``s_i``
    given ``S + {candidate} - {s_i}``:

        h(y_t | y_S) + sum_i h(y_{s_i} | y_{S + t - s_i}).

    The second group rewards candidates that leave the already-selected
    users distinguishable, penalizing channel overlap in both directions.

    Parameters
    ----------
    state : GramInverse
        Cache for the current selection ``S``.
    channels : ChannelSet or array
    candidate : int
        Must not already be a member.
    leave_one_out : sequence of arrays, optional
        Precomputed :func:`leave_one_out_inverses` for ``state``; pass it
        when scoring many candidates against the same set.
    """
    mats = channel_matrices(channels)
    candidate = int(candidate)
    if candidate in state.members:
        raise ValueError(f"candidate {candidate} is already selected")
    if not 0 <= candidate < mats.shape[0]:
        raise ValueError(
            f"candidate {candidate} out of range for {mats.shape[0]} users"
        )
    h_t = mats[candidate]
    if leave_one_out is None:
        leave_one_out = leave_one_out_inverses(state, mats)
    total = conditional_entropy_term(h_t, state.matrix)
    for member, base in zip(state.members, leave_one_out):
        with_candidate = woodbury_update(base, h_t)
        total += conditional_entropy_term(mats[member], with_candidate)
    return total
