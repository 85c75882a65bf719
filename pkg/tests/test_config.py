import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st

from uzu.models.run_config import RunConfig
from uzu.utils.config import DEFAULT_N_PER_SIDE, DEFAULT_STRIP_N_PER_SIDE, K_MAX, load_config_file
from uzu.utils.errors import CheckFailure, InvalidInputError, NoSignChangeError, NumericFailureError
from uzu.utils.helpers import build_run_config, parse_float_list, parse_k_range, record_with_config


def test_error_exit_codes():
    assert InvalidInputError("x").exit_code == 1
    assert NoSignChangeError("x").exit_code == 1
    assert CheckFailure("x").exit_code == 2
    assert NumericFailureError("x").exit_code == 3


def test_defaults_resolve_without_file():
    config = build_run_config("energy", None)
    assert config.command == "energy"
    assert config.r == 1.0
    assert config.n_per_side == DEFAULT_N_PER_SIDE


def test_command_defaults_apply():
    assert build_run_config("counterexample", None).n_per_side == DEFAULT_STRIP_N_PER_SIDE


def test_cli_overrides_file_overrides_defaults(tmp_path):
    path = tmp_path / "uzu.toml"
    path.write_text('r = 0.7\np = 3.0\nn_per_side = 301\n\n[energy]\nr = 0.4\n')
    config = build_run_config("energy", str(path), r=None, p=5.0)
    assert config.r == 0.4
    assert config.p == 5.0
    assert config.n_per_side == 301

    other = build_run_config("hardy", str(path))
    assert other.r == 0.7


def test_empty_tuples_count_as_not_given(tmp_path):
    path = tmp_path / "uzu.toml"
    path.write_text('checks = ["profile"]\n')
    assert build_run_config("verify", str(path), checks=()).checks == ["profile"]
    assert build_run_config("verify", str(path), checks=("hardy",)).checks == ["hardy"]


def test_unknown_key_rejected(tmp_path):
    path = tmp_path / "uzu.toml"
    path.write_text("radius = 2\n")
    with pytest.raises(InvalidInputError, match="radius"):
        build_run_config("energy", str(path))


def test_missing_and_invalid_files(tmp_path):
    with pytest.raises(InvalidInputError):
        load_config_file(str(tmp_path / "missing.toml"))
    bad = tmp_path / "bad.toml"
    bad.write_text("r = = 1\n")
    with pytest.raises(InvalidInputError):
        load_config_file(str(bad))


@pytest.mark.parametrize(
    "overrides",
    [
        {"p": 1.0},
        {"r": -1.0},
        {"k": K_MAX + 1},
        {"scale": 0.0},
        {"rho_min": 0.0},
        {"a_values": [1.0]},
        {"lambda_values": [0.0]},
        {"r_lo": 2.0, "r_hi": 1.0},
        {"fd_order": 3},
        {"mass": "lumped"},
        {"field_kind": "file"},
        {"profile": "gaussian"},
        {"L": -1.0},
    ],
)
def test_validation_rejects(overrides):
    with pytest.raises(InvalidInputError):
        RunConfig.from_dict({"command": "energy", **overrides}).validate()


def test_from_dict_coerces_types():
    config = RunConfig.from_dict({"command": "hardy", "r": "2", "k": 4.0, "a_values": [10, "100"]})
    assert config.r == 2.0
    assert config.k == 4
    assert config.a_values == [10.0, 100.0]


def test_from_dict_reports_bad_values():
    with pytest.raises(InvalidInputError):
        RunConfig.from_dict({"command": "energy", "r": "wide"})


def test_to_dict_marks_auto():
    record = RunConfig(command="energy").to_dict()
    assert record["scale"] == "auto"
    assert record["half_width"] == "auto"
    assert record["L_values"] == "2.0,5.0,10.0"
    assert record["checks"] == ""


def test_record_with_config_prefixes_keys():
    record = record_with_config({"total": 1.0}, RunConfig(command="energy"))
    assert record["total"] == 1.0
    assert record["config.command"] == "energy"


def test_record_with_config_leaves_out_output_locations():
    config = RunConfig(command="energy", out="runs/a", save_field="field.txt")
    record = record_with_config({"total": 1.0}, config)
    assert "config.out" not in record
    assert "config.save_field" not in record
    assert record == record_with_config({"total": 1.0}, RunConfig(command="energy", out="runs/b"))


def test_parse_float_list():
    assert parse_float_list("2,5, 10") == [2.0, 5.0, 10.0]
    assert parse_float_list(None) is None
    with pytest.raises(InvalidInputError):
        parse_float_list("2,x")
    with pytest.raises(InvalidInputError):
        parse_float_list(",")


@given(st.integers(min_value=0, max_value=K_MAX), st.integers(min_value=0, max_value=K_MAX))
@seed(7)
@settings(deadline=None)
def test_parse_k_range_forms(lo, hi):
    if lo <= hi:
        assert parse_k_range(f"{lo}..{hi}") == list(range(lo, hi + 1))
    assert parse_k_range(f"{lo},{hi}") == [lo, hi]
    assert parse_k_range(str(lo)) == [lo]


@pytest.mark.parametrize("text", ["", "a..b", f"0..{K_MAX + 1}", "-1", "5..2"])
def test_parse_k_range_rejects(text):
    with pytest.raises(InvalidInputError):
        parse_k_range(text)
