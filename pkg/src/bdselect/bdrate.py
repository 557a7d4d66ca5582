"""Block-diagonalized sum rate with joint water-filling.

Each selected user's precoder is confined to the null space of the other
selected users' stacked channels, which removes inter-user interference
exactly. The surviving eigenmodes of all users then share the total power
budget through one joint water-filling allocation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import channel_matrices, stack_channels
from .linalg import null_space_basis, svd

__all__ = ["WaterfillResult", "BdSolution", "waterfill", "bd_solution", "sum_rate"]


@dataclass(frozen=True)
class WaterfillResult:
    """Power allocation over eigenmodes: powers, water level, rate in bits."""

    powers: np.ndarray
    water_level: float
    rate: float


def waterfill(mode_gains, total_power):
    """Water-fill ``total_power`` over parallel channels with the given gains.

    Solves ``max sum_i log2(1 + p_i g_i)`` subject to ``sum p_i = P`` and
    ``p_i >= 0`` with the exact active-set method: modes are sorted by gain
    and the largest active set whose common water level keeps every active
    power positive is selected, so no bisection or tolerance is involved.

    Parameters
    ----------
    mode_gains : array of float
        Nonnegative effective power gains ``g_i`` (squared singular values).
        Zero-gain modes are legal and simply receive no power.
    total_power : float
        Positive total budget ``P``.

    Returns
    -------
    WaterfillResult
        ``powers`` is aligned with ``mode_gains``. When every gain is zero
        the allocation is all zeros with water level and rate 0.
    """
    gains = np.asarray(mode_gains, dtype=float).ravel()
    if gains.size == 0:
        raise ValueError("at least one mode gain is required")
    if np.any(gains < 0.0) or not np.all(np.isfinite(gains)):
        raise ValueError("mode gains must be finite and nonnegative")
    total_power = float(total_power)
    if not total_power > 0.0:
        raise ValueError(f"total power must be positive, got {total_power}")

    order = np.argsort(-gains, kind="stable")
    active = order[gains[order] > 0.0]
    powers = np.zeros_like(gains)
    if active.size == 0:
        return WaterfillResult(powers, 0.0, 0.0)

    inv = 1.0 / gains[active]
    cumulative = np.cumsum(inv)
    level = total_power + inv[0]  # k = 1 always admits a positive power
    count = 1
    for k in range(active.size, 0, -1):
        candidate = (total_power + cumulative[k - 1]) / k
        if candidate > inv[k - 1]:
            level, count = candidate, k
            break
    powers[active[:count]] = level - inv[:count]
    rate = float(np.sum(np.log2(1.0 + powers * gains)))
    return WaterfillResult(powers, float(level), rate)


@dataclass(frozen=True)
class BdSolution:
    """Interference-free downlink design for one selected user set.

    ``precoders[i]`` maps user ``users[i]``'s stream symbols to the transmit
    antennas, with per-mode powers already folded into the columns.
    ``mode_gains`` and ``powers`` are flattened in user order.
    """

    users: tuple
    precoders: list
    mode_gains: np.ndarray
    powers: np.ndarray
    sum_rate: float


def bd_solution(channels, users, power):
    """Design null-space precoders and jointly water-fill the mode powers.

    Parameters
    ----------
    channels : ChannelSet or array, shape (k_total, n, m)
    users : sequence of int
        Distinct user indices to serve. An empty selection yields a rate
        of zero.
    power : float
        Total transmit power shared by all users' modes.

    Raises
    ------
    ValueError
        If some user's interference-free subspace is empty, i.e. the other
        selected users' rows already span the transmit space.
    """
    mats = channel_matrices(channels)
    users = tuple(int(u) for u in users)
    if len(set(users)) != len(users):
        raise ValueError(f"duplicate user indices in {users}")
    if not users:
        return BdSolution((), [], np.zeros(0), np.zeros(0), 0.0)

    m = mats.shape[2]
    bases, factors, gain_parts = [], [], []
    for user in users:
        others = stack_channels(mats, tuple(u for u in users if u != user))
        basis = null_space_basis(others, m)
        if basis.shape[1] == 0:
            raise ValueError(
                f"user {user} has no interference-free transmit directions; "
                "the selected set is too large for this channel"
            )
        factor = svd(mats[user] @ basis)
        bases.append(basis)
        factors.append(factor)
        gain_parts.append(factor.singular_values**2)

    gains = np.concatenate(gain_parts)
    fill = waterfill(gains, power)

    precoders = []
    start = 0
    for basis, factor, part in zip(bases, factors, gain_parts):
        part_powers = fill.powers[start : start + part.size]
        start += part.size
        columns = basis @ factor.right_vectors[:, : part.size]
        precoders.append(columns * np.sqrt(part_powers)[None, :])
    return BdSolution(users, precoders, gains, fill.powers, fill.rate)


def sum_rate(channels, users, power):
    """Sum rate in bits/s/Hz of the block-diagonalized design for ``users``."""
    return bd_solution(channels, users, power).sum_rate
