"""Scikit-learn style estimator wrapping the selection algorithms.

The channel tensor plays the role of ``X``: one sample per candidate user.
Fitting runs the configured selector; the fitted estimator then behaves
like a feature-subset transformer over the user axis, with ``get_support``
and ``transform`` mirroring sklearn's selector conventions.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .channel import SystemConfig
from .selection import ALGORITHMS, select_brute_force

__all__ = ["UserSelector", "check_channel_tensor"]


def check_channel_tensor(X):
    """Validate a per-user channel tensor and coerce it to complex128.

    Accepts anything array-like of shape (k_total, n, m) with finite
    entries; real inputs are promoted to complex.
    """
    X = np.asarray(X)
    if X.ndim != 3:
        raise ValueError(
            f"expected a 3-D channel tensor (k_total, n, m), "
            f"got shape {X.shape}"
        )
    if min(X.shape) < 1:
        raise ValueError(f"all tensor dimensions must be positive: {X.shape}")
    X = X.astype(np.complex128, copy=False)
    if not np.all(np.isfinite(X.real)) or not np.all(np.isfinite(X.imag)):
        raise ValueError("channel tensor contains non-finite entries")
    return X


class UserSelector(TransformerMixin, BaseEstimator):
    """Select a served user subset from a candidate channel tensor.

    Parameters
    ----------
    algorithm : str
        One of the registered tags: ``cond-entropy`` (default), ``c-alg``,
        ``n-alg``, ``upperbound``, ``chordal``, ``row-norm`` or
        ``brute-force``.
    snr_db : float
        Total transmit power in dB over unit noise.
    k_max : int or None
        Cap on served users; ``None`` means ``floor(m / n)``.
    max_subsets : int
        Enumeration budget, used by ``brute-force`` only.

    Attributes
    ----------
    users_ : ndarray of int
        Selected user indices in pick order.
    sum_rate_ : float
        Block-diagonalized sum rate of the selection in bits/s/Hz.
    selection_ : Selection
        Full result record, including the metric trace.
    n_users_in_ : int
        Number of candidate users seen during fit.
    """

    def __init__(self, algorithm="cond-entropy", snr_db=20.0, k_max=None,
                 max_subsets=100_000):
        self.algorithm = algorithm
        self.snr_db = snr_db
        self.k_max = k_max
        self.max_subsets = max_subsets

    def fit(self, X, y=None):
        """Run the selector on the channel tensor ``X``."""
        X = check_channel_tensor(X)
        if self.algorithm not in ALGORITHMS:
            raise ValueError(
                f"unknown algorithm {self.algorithm!r}; "
                f"choose from {sorted(ALGORITHMS)}"
            )
        k_total, n, m = X.shape
        config = SystemConfig(
            m=m, n=n, k_total=k_total, snr_db=self.snr_db, k_max=self.k_max
        )
        if self.algorithm == "brute-force":
            selection = select_brute_force(
                X, config, max_subsets=self.max_subsets
            )
        else:
            selection = ALGORITHMS[self.algorithm](X, config)
        self.n_users_in_ = k_total
        self.selection_ = selection
        self.users_ = np.asarray(selection.users, dtype=int)
        self.sum_rate_ = selection.sum_rate
        return self

    def get_support(self, indices=False):
        """Boolean mask (or index array) of the selected users."""
        check_is_fitted(self)
        if indices:
            return self.users_.copy()
        mask = np.zeros(self.n_users_in_, dtype=bool)
        mask[self.users_] = True
        return mask

    def transform(self, X):
        """Reduce a channel tensor to the selected users, in pick order."""
        check_is_fitted(self)
        X = check_channel_tensor(X)
        if X.shape[0] != self.n_users_in_:
            raise ValueError(
                f"X has {X.shape[0]} users but the selector was fitted "
                f"with {self.n_users_in_}"
            )
        return X[self.users_]
