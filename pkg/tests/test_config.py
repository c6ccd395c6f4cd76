import pytest

from qbrackets import Config, get_config, load_config, set_config


def test_defaults():
    cfg = load_config(environ={})
    assert cfg.default_order == 120
    assert cfg.mzv_target_error == 1e-10
    assert cfg.output_format == "text"
    assert cfg.threads == 1
    assert cfg.max_cells == 2_000_000


def test_environment_overrides():
    cfg = load_config(environ={
        "QBRACKETS_ORDER": "40",
        "QBRACKETS_FORMAT": "json",
        "QBRACKETS_THREADS": "3",
        "QBRACKETS_MZV_TARGET_ERROR": "1e-6",
        "QBRACKETS_MAX_CELLS": "1000",
    })
    assert cfg.default_order == 40
    assert cfg.output_format == "json"
    assert cfg.threads == 3
    assert cfg.mzv_target_error == 1e-6
    assert cfg.max_cells == 1000


def test_unrelated_environment_is_ignored():
    cfg = load_config(environ={"PATH": "/bin", "QBRACKETSX_ORDER": "7"})
    assert cfg == load_config(environ={})


def test_invalid_environment_rejected():
    with pytest.raises(ValueError):
        load_config(environ={"QBRACKETS_ORDER": "many"})
    with pytest.raises(ValueError):
        load_config(environ={"QBRACKETS_FORMAT": "yaml"})


def test_active_config_round_trip():
    before = get_config()
    try:
        cfg = Config(default_order=33)
        set_config(cfg)
        assert get_config().default_order == 33
    finally:
        set_config(before)
