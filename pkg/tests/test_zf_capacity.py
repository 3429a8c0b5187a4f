"""Zero-forcing precoding and spectral-efficiency unit tests."""

import math

import numpy as np
import pytest
from scipy import stats

from hcppnet import (
    AntennaConfig,
    ChannelParams,
    ParameterError,
    db_to_linear,
    path_gain,
    sample_fading_matrix,
    sample_zf_gains,
    sinr_factor,
    spectral_efficiency_bound,
    spectral_efficiency_exact,
    spectral_efficiency_mc,
    subchannel_capacity,
    tx_power,
    zf_precoder,
)

BETA = db_to_linear(-31.54)


def test_antenna_config_validation():
    cfg = AntennaConfig(8, 4)
    assert cfg.gain_shape == 5
    with pytest.raises(ParameterError):
        AntennaConfig(2, 3)
    with pytest.raises(ParameterError):
        AntennaConfig(4, 0)


def test_precoder_inverts_channel():
    rng = np.random.default_rng(21)
    h = sample_fading_matrix(4, 8, rng)
    f = zf_precoder(h)
    assert np.allclose(h @ f, np.eye(4), atol=1e-12)


def test_precoder_single_stream_is_matched_filter_direction():
    rng = np.random.default_rng(22)
    h = sample_fading_matrix(1, 6, rng)
    f = zf_precoder(h)
    # Collinear with the conjugate channel and normalized to unit response.
    ratio = f[:, 0] / np.conj(h[0])
    assert np.allclose(ratio, ratio[0])
    assert (h @ f)[0, 0] == pytest.approx(1.0)


def test_tx_power_accounts_for_inverse_gram():
    rng = np.random.default_rng(23)
    h = sample_fading_matrix(3, 8, rng)
    rx = np.array([2.0, 1.0, 0.5])
    total, per_stream = tx_power(h, rx)
    gram_inv = np.linalg.inv(h @ h.conj().T)
    expected = rx * np.real(np.diag(gram_inv))
    assert np.allclose(per_stream, expected, rtol=1e-12)
    assert total == pytest.approx(per_stream.sum())
    with pytest.raises(ParameterError):
        tx_power(h, np.array([1.0, 2.0]))  # one receive power per stream


def test_zf_gains_follow_gamma_law():
    rng = np.random.default_rng(24)
    cfg = AntennaConfig(8, 4)
    g = sample_zf_gains(cfg, 20000, rng)
    assert g.shape == (20000, 4)
    d, _ = stats.kstest(g.ravel(), stats.gamma(a=cfg.gain_shape).cdf)
    assert d < 0.01
    assert g.mean() == pytest.approx(cfg.gain_shape, rel=0.02)


def test_subchannel_capacity_closed_form():
    cfg = AntennaConfig(8, 4)
    ch = ChannelParams(BETA, 3.8, 6.0)
    rate = subchannel_capacity(cfg, 1e4, 0.5, ch, 2.0, 250.0, 3.0, 1e-13)
    snr = 0.5 * path_gain(ch, 250.0) * 2.0 * 3.0 / 1e-13
    assert rate == pytest.approx(4 * 1e4 * math.log2(1 + snr), rel=1e-12)


def test_sinr_factor_composition():
    cfg = AntennaConfig(8, 4)
    ch = ChannelParams(BETA, 3.8, 6.0)
    xi = sinr_factor(0.5, cfg, ch, 2.0, 250.0, 1e-13)
    assert xi == pytest.approx(0.5 * 4 * path_gain(ch, 250.0) * 2.0 / 1e-13, rel=1e-12)
    with pytest.raises(ParameterError):
        sinr_factor(0.0, cfg, ch, 2.0, 250.0, 1e-13)


def test_spectral_efficiency_exact_matches_single_stream_formula():
    # One stream keeps the exact expectation reducible to a quadrature over
    # an Exponential gain when n_t = s = 1.
    cfg = AntennaConfig(1, 1)
    xi = 10.0
    from scipy import integrate

    direct, _ = integrate.quad(lambda g: math.log2(1 + xi * g) * math.exp(-g), 0, 200, limit=200)
    assert spectral_efficiency_exact(cfg, xi) == pytest.approx(direct, rel=1e-6)
    assert spectral_efficiency_exact(cfg, xi, n_nodes=256) == pytest.approx(direct, rel=1e-8)


def test_spectral_efficiency_mc_agrees_with_exact():
    cfg = AntennaConfig(8, 4)
    for xi in (0.01, 1.0, 100.0):
        exact = spectral_efficiency_exact(cfg, xi)
        est = spectral_efficiency_mc(cfg, xi, 30000, np.random.default_rng(25))
        assert abs(exact - est.mean) <= 3.0 * est.std_error


def test_spectral_efficiency_mc_matrix_route_agrees():
    cfg = AntennaConfig(4, 2)
    xi = 10.0
    gamma_route = spectral_efficiency_mc(cfg, xi, 40000, np.random.default_rng(26))
    matrix_route = spectral_efficiency_mc(
        cfg, xi, 8000, np.random.default_rng(27), exact_matrix=True
    )
    diff = abs(gamma_route.mean - matrix_route.mean)
    assert diff <= 3.0 * math.hypot(gamma_route.std_error, matrix_route.std_error)


def test_bound_dominates_and_is_tight_at_low_xi():
    for n_t, s in ((2, 1), (4, 2), (8, 8)):
        cfg = AntennaConfig(n_t, s)
        for xi in (0.01, 0.1, 1.0, 10.0, 100.0, 1000.0):
            bound = spectral_efficiency_bound(cfg, xi)
            exact = spectral_efficiency_exact(cfg, xi)
            assert bound >= exact
    # The gap closes as xi -> 0 (both go to zero together).
    cfg = AntennaConfig(8, 4)
    assert spectral_efficiency_bound(cfg, 1e-4) == pytest.approx(
        spectral_efficiency_exact(cfg, 1e-4), rel=0.02
    )


def test_bound_closed_form():
    cfg = AntennaConfig(8, 4)
    xi = 50.0
    assert spectral_efficiency_bound(cfg, xi) == pytest.approx(
        4 * math.log2(1 + xi / 4 * 5), rel=1e-12
    )


def test_more_antennas_help_single_stream():
    xi = 10.0
    vals = [spectral_efficiency_exact(AntennaConfig(n, 1), xi) for n in (2, 4, 8)]
    assert vals[0] < vals[1] < vals[2]


def test_stream_count_tradeoff_flips_with_xi():
    # Splitting power across streams pays off only when the power budget is
    # large; at low budget a single concentrated stream wins.
    low = [spectral_efficiency_exact(AntennaConfig(8, s), 0.01) for s in (1, 2, 4, 8)]
    high = [spectral_efficiency_exact(AntennaConfig(8, s), 1000.0) for s in (1, 2, 4, 8)]
    assert all(a > b for a, b in zip(low, low[1:]))
    assert all(a < b for a, b in zip(high, high[1:]))
