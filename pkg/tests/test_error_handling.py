"""Tests for error payloads, exit codes and run-config validation."""

import json
from pathlib import Path

import pytest
from pydantic import ValidationError

from l2boost.cli.schemas import ClassifyConfig, FitConfig, GreedyCheckConfig, SimulateConfig
from l2boost.error_handlers import (
    EXIT_BOUND_VIOLATION,
    EXIT_NUMERICAL,
    EXIT_VALIDATION,
    create_error_response,
    register_exception_handlers,
)
from l2boost.exceptions import (
    BadFoldCount,
    BoundViolation,
    InputFormatError,
    NoConvergence,
    SingularDesign,
    ZeroVarianceColumn,
)
from l2boost.main import Application


@pytest.fixture
def handled_app():
    app = Application("l2boost-test", "0")
    register_exception_handlers(app)
    return app


def _payload(capsys):
    return json.loads(capsys.readouterr().err.strip().splitlines()[-1])


def test_create_error_response_omits_empty_details():
    assert create_error_response("X", "msg") == {"error": {"code": "X", "message": "msg"}}
    assert create_error_response("X", "msg", {"a": 1})["error"]["details"] == {"a": 1}


@pytest.mark.parametrize(
    "exc, code, exit_code",
    [
        (ZeroVarianceColumn(2, "x3"), "ZERO_VARIANCE_COLUMN", EXIT_VALIDATION),
        (BadFoldCount(1, 20), "BAD_FOLD_COUNT", EXIT_VALIDATION),
        (InputFormatError("bad file", path="a.csv"), "INPUT_FORMAT_ERROR", EXIT_VALIDATION),
        (SingularDesign(20, 100), "SINGULAR_DESIGN", EXIT_NUMERICAL),
        (NoConvergence(10, 0.5, 0.1), "NO_CONVERGENCE", EXIT_NUMERICAL),
        (BoundViolation("too big", details={"step": 4}), "BOUND_VIOLATION", EXIT_BOUND_VIOLATION),
    ],
)
def test_exception_families_map_to_exit_codes(handled_app, capsys, exc, code, exit_code):
    """
    Test that each failure family gets its exit code and a JSON payload on stderr.
    """
    assert handled_app.handle_exception(exc) == exit_code
    payload = _payload(capsys)
    assert payload["error"]["code"] == code
    assert payload["error"]["message"] == exc.message


def test_pydantic_errors_list_fields(handled_app, capsys):
    with pytest.raises(ValidationError) as exc_info:
        SimulateConfig(reps=0)
    assert handled_app.handle_exception(exc_info.value) == EXIT_VALIDATION
    errors = _payload(capsys)["error"]["details"]["errors"]
    assert errors[0]["field"] == "reps"


def test_unexpected_errors_are_internal(handled_app, capsys):
    assert handled_app.handle_exception(RuntimeError("boom")) == EXIT_NUMERICAL
    payload = _payload(capsys)
    assert payload["error"]["code"] == "INTERNAL_ERROR"
    assert payload["error"]["details"] == {"type": "RuntimeError"}


def test_unhandled_without_registration():
    with pytest.raises(RuntimeError):
        Application("bare", "0").handle_exception(RuntimeError("boom"))


def test_unknown_config_keys_are_rejected():
    with pytest.raises(ValidationError) as exc_info:
        FitConfig(input=Path("a.csv"), learning_rate=0.1)
    assert any(error["type"] == "extra_forbidden" for error in exc_info.value.errors())


@pytest.mark.parametrize("nu", [0.0, -0.1, 1.5])
def test_step_size_range(nu):
    with pytest.raises(ValidationError):
        FitConfig(input=Path("a.csv"), nu=nu)


def test_fit_rejects_oracle_stopping():
    with pytest.raises(ValidationError) as exc_info:
        FitConfig(input=Path("a.csv"), stopping="oracle")
    assert any("simulate" in str(error) for error in exc_info.value.errors())


def test_simulate_rejects_unknown_methods():
    with pytest.raises(ValidationError):
        SimulateConfig(methods=["l2boost", "boosting"])


def test_classify_needs_input_or_risk_trend():
    with pytest.raises(ValidationError):
        ClassifyConfig()
    assert ClassifyConfig(risk_trend=True).expression is None
    with pytest.raises(ValidationError):
        ClassifyConfig(expression=Path("e.csv"), train_fraction=1.0)


def test_greedy_check_ranges():
    assert GreedyCheckConfig().nu == 1.0
    with pytest.raises(ValidationError):
        GreedyCheckConfig(b=0.0)
    with pytest.raises(ValidationError):
        GreedyCheckConfig(instances=-1)


def test_header_records_every_value():
    header = SimulateConfig(settings=["identity-p3"], methods=["truth"], reps=2).header()
    assert header["rng"] == "PCG64"
    assert header["settings"] == "identity-p3"
    assert header["reps"] == "2"
    assert header["command"] == "simulate"
