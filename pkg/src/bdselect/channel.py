"""System configuration and Rayleigh channel generation.

A cell has one base station with ``m`` transmit antennas and ``k_total``
candidate users with ``n`` receive antennas each. Channel matrices are
i.i.d. circularly symmetric complex Gaussian with unit entry variance,
which makes ``snr_db`` the total transmit power in dB over unit-variance
noise.

Seeding is reproducible across sweep cells: every (trial, k_total) pair is
mixed into a 64-bit stream seed with :func:`splitmix64`, so adding more
users or more trials never perturbs the draws of existing cells.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SystemConfig",
    "ChannelSet",
    "generate_channels",
    "stack_channels",
    "channel_matrices",
    "splitmix64",
    "trial_seed",
]

_MASK64 = (1 << 64) - 1


def splitmix64(value):
    """64-bit splitmix64 finalizer: a bijective avalanche mix of ``value``."""
    z = (int(value) + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def trial_seed(base_seed, trial, k_total):
    """Derive the per-trial stream seed for one Monte Carlo cell.

    The (k_total, trial) pair is packed into one 64-bit word, avalanched
    with splitmix64 and xor-folded into ``base_seed``. Distinct cells get
    decorrelated streams while the same cell is bit-reproducible.
    """
    if trial < 0 or k_total < 0:
        raise ValueError("trial and k_total must be nonnegative")
    word = ((int(k_total) & 0xFFFFFFFF) << 32) | (int(trial) & 0xFFFFFFFF)
    return (int(base_seed) ^ splitmix64(word)) & _MASK64


@dataclass(frozen=True)
class SystemConfig:
    """Static cell parameters shared by every selector.

    Parameters
    ----------
    m : int
        Transmit antennas at the base station.
    n : int
        Receive antennas per user.
    k_total : int
        Number of candidate users.
    snr_db : float
        Total transmit power in dB (unit noise variance at each antenna).
    k_max : int, optional
        Cap on simultaneously served users. Defaults to ``floor(m / n)``,
        the largest set for which interference-free precoding is generic.
    """

    m: int
    n: int
    k_total: int
    snr_db: float
    k_max: int | None = None

    def __post_init__(self):
        if self.n < 1 or self.m < self.n:
            raise ValueError(
                f"need m >= n >= 1, got m={self.m}, n={self.n}"
            )
        if self.k_total < 1:
            raise ValueError(f"k_total must be positive, got {self.k_total}")
        if self.k_max is None:
            object.__setattr__(self, "k_max", self.m // self.n)
        if self.k_max < 1:
            raise ValueError(f"k_max must be positive, got {self.k_max}")
        if self.k_max * self.n > self.m:
            raise ValueError(
                f"k_max * n = {self.k_max * self.n} exceeds m = {self.m}; "
                "zero-forcing needs enough transmit antennas"
            )

    @property
    def power(self):
        """Total transmit power ``P`` on a linear scale."""
        return 10.0 ** (self.snr_db / 10.0)

    @property
    def power_ratio(self):
        """Per-antenna power ``P / m`` under uniform loading."""
        return self.power / self.m


@dataclass(frozen=True, eq=False)
class ChannelSet:
    """One realization of all candidate channels, shape (k_total, n, m)."""

    matrices: np.ndarray
    seed: int

    def __post_init__(self):
        mats = np.asarray(self.matrices, dtype=np.complex128)
        if mats.ndim != 3 or min(mats.shape) < 1:
            raise ValueError(
                f"matrices must have shape (k_total, n, m), got {mats.shape}"
            )
        if not np.all(np.isfinite(mats.real)) or not np.all(
            np.isfinite(mats.imag)
        ):
            raise ValueError("channel matrices must be finite")
        object.__setattr__(self, "matrices", mats)

    @property
    def k_total(self):
        return self.matrices.shape[0]

    @property
    def n(self):
        return self.matrices.shape[1]

    @property
    def m(self):
        return self.matrices.shape[2]

    def __len__(self):
        return self.k_total

    def __getitem__(self, user):
        return self.matrices[user]


def channel_matrices(channels):
    """Normalize a :class:`ChannelSet` or array-like into a 3-D array."""
    if isinstance(channels, ChannelSet):
        return channels.matrices
    mats = np.asarray(channels)
    if mats.ndim != 3:
        raise ValueError(
            f"expected per-user channels with shape (k_total, n, m), "
            f"got shape {mats.shape}"
        )
    return mats.astype(np.complex128, copy=False)


def generate_channels(config, seed):
    """Draw one i.i.d. Rayleigh channel realization for every candidate.

    Entries are ``(g1 + 1j * g2) / sqrt(2)`` with ``g1, g2`` standard normal,
    so ``E|h|^2 = 1``. The real block is drawn before the imaginary block
    from a PCG64 stream seeded with ``seed``, which pins the realization
    bit-for-bit for a given (config shape, seed) pair.
    """
    seed = int(seed) & _MASK64
    rng = np.random.Generator(np.random.PCG64(seed))
    shape = (config.k_total, config.n, config.m)
    real = rng.standard_normal(shape)
    imag = rng.standard_normal(shape)
    return ChannelSet((real + 1j * imag) / math.sqrt(2.0), seed)


def stack_channels(channels, users):
    """Stack the selected users' matrices into one tall channel.

    Parameters
    ----------
    channels : ChannelSet or array, shape (k_total, n, m)
    users : sequence of int
        Distinct user indices; row blocks appear in this order.

    Returns
    -------
    array, shape (len(users) * n, m)
        Empty selections give a (0, m) array so null space code can treat
        "no other users" uniformly.
    """
    mats = channel_matrices(channels)
    users = [int(u) for u in users]
    if len(set(users)) != len(users):
        raise ValueError(f"duplicate user indices in {users}")
    for u in users:
        if not 0 <= u < mats.shape[0]:
            raise ValueError(
                f"user index {u} out of range for {mats.shape[0]} users"
            )
    if not users:
        return np.zeros((0, mats.shape[2]), dtype=np.complex128)
    return mats[users].reshape(len(users) * mats.shape[1], mats.shape[2])
