"""Tests for water-filling and the block-diagonalized rate."""

import numpy as np
import pytest

from bdselect import (
    SystemConfig,
    bd_solution,
    generate_channels,
    stack_channels,
    sum_rate,
    waterfill,
)


def crandn(rng, *shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def test_waterfill_single_mode():
    fill = waterfill([1.0], 3.0)
    assert np.allclose(fill.powers, [3.0])
    assert fill.rate == pytest.approx(2.0, abs=1e-12)  # log2(1 + 3)


def test_waterfill_equal_modes_split_evenly():
    fill = waterfill([1.0, 1.0], 2.0)
    assert np.allclose(fill.powers, [1.0, 1.0], atol=1e-12)
    assert fill.rate == pytest.approx(2.0, abs=1e-12)


def test_waterfill_known_two_mode_solution():
    # Gains 4 and 1 at P=1: level (1 + 1/4 + 1)/2 = 1.125, powers 7/8, 1/8.
    fill = waterfill([4.0, 1.0], 1.0)
    assert fill.water_level == pytest.approx(1.125, abs=1e-12)
    assert np.allclose(fill.powers, [0.875, 0.125], atol=1e-12)
    expected = float(np.log2(4.5) + np.log2(1.125))
    assert fill.rate == pytest.approx(expected, abs=1e-9)


def test_waterfill_drops_weak_mode_at_low_power():
    fill = waterfill([4.0, 1.0], 0.1)
    assert np.allclose(fill.powers, [0.1, 0.0], atol=1e-12)


def test_waterfill_zero_gain_modes_get_nothing():
    fill = waterfill([2.0, 0.0, 1.0], 3.0)
    assert fill.powers[1] == 0.0
    assert fill.powers.sum() == pytest.approx(3.0, abs=1e-9)


def test_waterfill_all_zero_gains():
    fill = waterfill([0.0, 0.0], 5.0)
    assert np.allclose(fill.powers, 0.0)
    assert fill.rate == 0.0
    assert fill.water_level == 0.0


def test_waterfill_validation():
    with pytest.raises(ValueError):
        waterfill([], 1.0)
    with pytest.raises(ValueError):
        waterfill([1.0, -0.5], 1.0)
    with pytest.raises(ValueError):
        waterfill([1.0], 0.0)
    with pytest.raises(ValueError):
        waterfill([np.inf], 1.0)


def test_waterfill_budget_and_kkt_conditions():
    rng = np.random.default_rng(40)
    for _ in range(300):
        gains = rng.exponential(1.0, size=int(rng.integers(1, 9)))
        gains[rng.random(gains.size) < 0.2] = 0.0
        power = float(rng.uniform(0.1, 50.0))
        fill = waterfill(gains, power)
        assert np.all(fill.powers >= 0.0)
        if np.any(gains > 0):
            assert fill.powers.sum() == pytest.approx(power, rel=1e-9)
            active = fill.powers > 0
            # Active modes sit exactly at the water level.
            assert np.allclose(
                fill.powers[active] + 1.0 / gains[active],
                fill.water_level,
                atol=1e-9,
            )
            # Inactive positive-gain modes are below it.
            idle = (~active) & (gains > 0)
            assert np.all(fill.water_level <= 1.0 / gains[idle] + 1e-9)


def test_waterfill_matches_grid_search():
    rng = np.random.default_rng(41)
    for _ in range(20):
        gains = rng.uniform(0.05, 4.0, size=2)
        power = float(rng.uniform(0.5, 8.0))
        p1 = np.linspace(0.0, power, 20001)
        rates = np.log2(1.0 + p1 * gains[0]) + np.log2(1.0 + (power - p1) * gains[1])
        assert waterfill(gains, power).rate == pytest.approx(
            float(rates.max()), abs=1e-4
        )


def test_waterfill_monotone_in_power():
    gains = [2.0, 0.5, 1.0]
    assert waterfill(gains, 4.0).rate > waterfill(gains, 2.0).rate


def test_bd_single_user_is_point_to_point_capacity():
    rng = np.random.default_rng(42)
    cfg = SystemConfig(m=8, n=2, k_total=3, snr_db=20.0)
    chans = generate_channels(cfg, 1)
    solution = bd_solution(chans, [1], cfg.power)
    sigma = np.linalg.svd(chans[1], compute_uv=False)
    oracle = waterfill(sigma**2, cfg.power).rate
    assert solution.sum_rate == pytest.approx(oracle, abs=1e-10)


def test_bd_orthogonal_users_lose_nothing():
    # Two users on disjoint coordinates: BD cannot cost any rate, so the
    # result equals joint water-filling over both users' own modes.
    h1 = np.zeros((2, 4), dtype=complex)
    h1[0, 0] = 1.2
    h1[1, 1] = 0.8
    h2 = np.zeros((2, 4), dtype=complex)
    h2[0, 2] = 1.5
    h2[1, 3] = 0.6
    mats = np.stack([h1, h2])
    power = 10.0
    solution = bd_solution(mats, (0, 1), power)
    own_gains = np.array([1.2**2, 0.8**2, 1.5**2, 0.6**2])
    assert solution.sum_rate == pytest.approx(
        waterfill(own_gains, power).rate, abs=1e-9
    )


def test_bd_zero_interference_and_power_budget():
    rng = np.random.default_rng(43)
    cfg = SystemConfig(m=8, n=2, k_total=4, snr_db=20.0)
    for trial in range(100):
        chans = generate_channels(cfg, trial)
        solution = bd_solution(chans, (0, 1, 2, 3), cfg.power)
        for k, precoder in enumerate(solution.precoders):
            for j in range(4):
                if j != k:
                    leak = np.linalg.norm(chans[j] @ precoder)
                    assert leak <= 1e-8
        assert solution.powers.sum() <= cfg.power + 1e-8


def test_bd_rate_consistent_with_modes():
    rng = np.random.default_rng(44)
    cfg = SystemConfig(m=8, n=2, k_total=4, snr_db=15.0)
    chans = generate_channels(cfg, 9)
    solution = bd_solution(chans, (0, 2, 3), cfg.power)
    rebuilt = float(np.sum(np.log2(1.0 + solution.powers * solution.mode_gains)))
    assert solution.sum_rate == pytest.approx(rebuilt, abs=1e-10)
    assert solution.sum_rate == pytest.approx(
        waterfill(solution.mode_gains, cfg.power).rate, abs=1e-10
    )


def test_bd_precoder_power_equals_allocation():
    # Precoder columns are orthonormal directions scaled by sqrt(power),
    # so the total transmit power is the sum of mode powers.
    cfg = SystemConfig(m=8, n=2, k_total=4, snr_db=20.0)
    chans = generate_channels(cfg, 3)
    solution = bd_solution(chans, (0, 1, 2, 3), cfg.power)
    used = sum(float(np.linalg.norm(t) ** 2) for t in solution.precoders)
    assert used == pytest.approx(float(solution.powers.sum()), rel=1e-9)


def test_bd_effective_channel_is_diagonalized():
    # Each user's own effective channel H_k T_k has orthogonal columns with
    # squared norms p_i * g_i: streams decouple at the receiver too.
    cfg = SystemConfig(m=8, n=2, k_total=3, snr_db=20.0)
    chans = generate_channels(cfg, 11)
    solution = bd_solution(chans, (0, 1, 2), cfg.power)
    start = 0
    for k, precoder in enumerate(solution.precoders):
        width = precoder.shape[1]
        eff = chans[solution.users[k]] @ precoder
        gram = eff.conj().T @ eff
        expected = np.diag(
            solution.powers[start : start + width]
            * solution.mode_gains[start : start + width]
        )
        assert np.allclose(gram, expected, atol=1e-8)
        start += width


def test_bd_permutation_invariance():
    cfg = SystemConfig(m=8, n=2, k_total=4, snr_db=20.0)
    chans = generate_channels(cfg, 13)
    forward = sum_rate(chans, (0, 1, 2, 3), cfg.power)
    shuffled = sum_rate(chans, (2, 0, 3, 1), cfg.power)
    assert forward == pytest.approx(shuffled, abs=1e-9)


def test_bd_empty_selection():
    cfg = SystemConfig(m=4, n=2, k_total=2, snr_db=10.0)
    chans = generate_channels(cfg, 0)
    assert sum_rate(chans, (), cfg.power) == 0.0
    solution = bd_solution(chans, (), cfg.power)
    assert solution.users == ()
    assert solution.mode_gains.size == 0


def test_bd_oversized_selection_raises():
    cfg = SystemConfig(m=4, n=2, k_total=3, snr_db=10.0)
    chans = generate_channels(cfg, 1)
    with pytest.raises(ValueError):
        bd_solution(chans, (0, 1, 2), cfg.power)


def test_bd_duplicate_user_raises():
    cfg = SystemConfig(m=8, n=2, k_total=3, snr_db=10.0)
    chans = generate_channels(cfg, 2)
    with pytest.raises(ValueError):
        bd_solution(chans, (1, 1), cfg.power)


def test_sum_rate_monotone_in_power():
    cfg = SystemConfig(m=8, n=2, k_total=4, snr_db=20.0)
    chans = generate_channels(cfg, 17)
    assert sum_rate(chans, (0, 1), 100.0) > sum_rate(chans, (0, 1), 10.0)
