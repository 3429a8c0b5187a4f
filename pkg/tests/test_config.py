"""Config loading, schema validation, and diagnostics tests."""

import math

import pytest

from hcppnet import ConfigurationError
from hcppnet.config import config_from_dict, load_config, validate_config


def test_defaults_load_and_are_consistent():
    cfg = config_from_dict({})
    assert cfg.hcpp.delta == 500.0
    assert cfg.hcpp.lambda_p == pytest.approx(1.0 / (math.pi * 800.0**2))
    assert cfg.channel.alpha == 3.8
    assert cfg.antennas.n_t == 8
    assert cfg.traffic.rho_min == pytest.approx(2 * cfg.traffic.b_w)
    assert cfg.energy.n_link == 30
    assert cfg.ee_x_off == 188.0
    assert cfg.ee_x_off < cfg.hcpp.delta


def test_partial_override_merges_with_defaults():
    cfg = config_from_dict({"channel": {"alpha": 4.2}})
    assert cfg.channel.alpha == 4.2
    assert cfg.hcpp.delta == 500.0  # untouched sections keep defaults


def test_unknown_keys_rejected():
    with pytest.raises(ConfigurationError, match="(?i)additional"):
        config_from_dict({"chanel": {"alpha": 4.0}})


def test_out_of_range_values_rejected():
    with pytest.raises(ConfigurationError):
        config_from_dict({"channel": {"alpha": 1.5}})
    with pytest.raises(ConfigurationError):
        config_from_dict({"traffic": {"theta": 2.5}})
    with pytest.raises(ConfigurationError):
        config_from_dict({"energy": {"eta": 0.0}})


def test_link_count_override_retires_the_other_source():
    cfg = config_from_dict({"energy": {"lambda_m": 1e-5}})
    assert cfg.energy.lambda_m == 1e-5
    assert cfg.energy.n_link is None  # the default count must step aside


def test_explicit_double_link_spec_rejected():
    with pytest.raises(ConfigurationError):
        config_from_dict({"energy": {"lambda_m": 1e-5, "n_link": 20}})


def test_sweep_must_be_increasing():
    with pytest.raises(ConfigurationError):
        config_from_dict({"sweep": {"axis": "s", "values": [4, 2, 1]}})


def test_load_config_yaml_roundtrip(tmp_path):
    p = tmp_path / "conf.yaml"
    p.write_text("channel:\n  alpha: 4.0\nseed: 9\n")
    cfg = load_config(str(p))
    assert cfg.channel.alpha == 4.0
    assert cfg.seed == 9


def test_load_config_missing_file():
    with pytest.raises(ConfigurationError):
        load_config("/nonexistent/conf.yaml")


def test_validate_config_clean_defaults():
    assert validate_config(None) == []


def test_validate_config_flags_divergent_offsets():
    diags = validate_config({"interference": {"x_off": 600.0}})
    assert any("x_off" in d for d in diags)
    diags = validate_config({"energy": {"x_off": 500.0}})
    assert any("energy.x_off" in d for d in diags)


def test_validate_config_flags_small_window():
    diags = validate_config({"interference": {"window_side": 5000.0}})
    assert any("window_side" in d for d in diags)


def test_validate_config_reports_structural_errors_as_text():
    diags = validate_config({"traffic": {"theta": 0.5}})
    assert len(diags) == 1 and "theta" in diags[0]
