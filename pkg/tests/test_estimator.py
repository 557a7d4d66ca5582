"""Tests for the sklearn-style UserSelector wrapper."""

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from bdselect import (
    ALGORITHMS,
    SystemConfig,
    UserSelector,
    check_channel_tensor,
    generate_channels,
    select_brute_force,
)


@pytest.fixture
def tensor():
    cfg = SystemConfig(m=8, n=2, k_total=6, snr_db=20.0)
    return generate_channels(cfg, 77).matrices


def test_fit_matches_functional_api(tensor):
    cfg = SystemConfig(m=8, n=2, k_total=6, snr_db=20.0)
    for tag in ALGORITHMS:
        est = UserSelector(algorithm=tag, snr_db=20.0).fit(tensor)
        if tag == "brute-force":
            reference = select_brute_force(tensor, cfg)
        else:
            reference = ALGORITHMS[tag](tensor, cfg)
        assert tuple(est.users_) == reference.users
        assert est.sum_rate_ == reference.sum_rate
        assert est.selection_.algorithm == tag
        assert est.n_users_in_ == 6


def test_get_support_mask_and_indices(tensor):
    est = UserSelector().fit(tensor)
    mask = est.get_support()
    indices = est.get_support(indices=True)
    assert mask.shape == (6,)
    assert mask.sum() == len(indices)
    assert np.array_equal(np.flatnonzero(mask), np.sort(indices))


def test_transform_selects_rows_in_pick_order(tensor):
    est = UserSelector().fit(tensor)
    reduced = est.transform(tensor)
    assert reduced.shape == (len(est.users_), 2, 8)
    assert np.array_equal(reduced, tensor[est.users_])


def test_fit_transform_equals_fit_then_transform(tensor):
    a = UserSelector().fit_transform(tensor)
    b = UserSelector().fit(tensor).transform(tensor)
    assert np.array_equal(a, b)


def test_get_params_set_params_clone(tensor):
    est = UserSelector(algorithm="chordal", snr_db=10.0, k_max=2)
    params = est.get_params()
    assert params["algorithm"] == "chordal"
    assert params["snr_db"] == 10.0
    assert params["k_max"] == 2
    est.set_params(snr_db=15.0)
    assert est.snr_db == 15.0
    copied = clone(est.fit(tensor))
    assert copied.get_params() == est.get_params()
    with pytest.raises(NotFittedError):
        copied.get_support()


def test_k_max_parameter_respected(tensor):
    est = UserSelector(k_max=1).fit(tensor)
    assert len(est.users_) == 1


def test_unfitted_estimator_raises(tensor):
    est = UserSelector()
    with pytest.raises(NotFittedError):
        est.get_support()
    with pytest.raises(NotFittedError):
        est.transform(tensor)


def test_unknown_algorithm_raises(tensor):
    with pytest.raises(ValueError):
        UserSelector(algorithm="fastest").fit(tensor)


def test_transform_population_mismatch_raises(tensor):
    est = UserSelector().fit(tensor)
    with pytest.raises(ValueError):
        est.transform(tensor[:-1])


def test_real_input_is_promoted(tensor):
    real = np.abs(tensor)
    est = UserSelector().fit(real)
    assert est.transform(real).dtype == np.complex128


def test_check_channel_tensor_validation():
    with pytest.raises(ValueError):
        check_channel_tensor(np.zeros((3, 4)))
    with pytest.raises(ValueError):
        check_channel_tensor(np.zeros((0, 2, 4)))
    bad = np.zeros((2, 2, 2), dtype=complex)
    bad[1, 1, 1] = np.inf
    with pytest.raises(ValueError):
        check_channel_tensor(bad)
    ok = check_channel_tensor(np.zeros((2, 2, 2)))
    assert ok.dtype == np.complex128


def test_brute_force_budget_parameter(tensor):
    from bdselect import BudgetExceededError

    with pytest.raises(BudgetExceededError):
        UserSelector(algorithm="brute-force", max_subsets=3).fit(tensor)
