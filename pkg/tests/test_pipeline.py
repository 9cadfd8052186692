import json
from pathlib import Path

import pytest

from probprem.acceptance import CHECKS
from probprem.pipeline import RUNNERS, SUBCOMMANDS, build_parser, load_nstate, parse_args
from probprem.preferences import CRRAUtility, IdentityWeighting, LinearUtility


def test_every_result_command_has_a_runner() -> None:
    assert set(RUNNERS) == set(SUBCOMMANDS) - {"check"}


def test_parse_args_defaults() -> None:
    args = parse_args(["premium", "--eps1", "0.1", "--eps2", "1"])
    assert args.command == "premium"
    assert args.utility == LinearUtility()
    assert args.weighting == IdentityWeighting()
    assert args.w0 == 0.0
    assert args.p0 == 0.5
    assert args.grid is None
    assert args.verbose is False


def test_model_flags_are_parsed() -> None:
    args = parse_args(["compare", "--utility1", "crra:gamma=1", "--utility2", "crra:gamma=2", "-v"])
    assert args.utility1 == CRRAUtility(gamma=1.0)
    assert args.utility2 == CRRAUtility(gamma=2.0)
    assert args.verbose is True


def test_subcommand_is_required() -> None:
    with pytest.raises(SystemExit):
        build_parser().parse_args([])


def test_check_names_are_validated() -> None:
    assert parse_args(["check", "--only", next(iter(CHECKS))]).only == [next(iter(CHECKS))]
    with pytest.raises(SystemExit):
        parse_args(["check", "--only", "no-such-check"])


def test_load_nstate(tmp_path: Path) -> None:
    path = tmp_path / "spread.json"
    path.write_text(json.dumps({"payoffs": [-1, -0.5, 1.5], "eps1": 0.1, "p0": 0.4, "w0": 3}), encoding="utf-8")
    spread = load_nstate(path)
    assert spread.payoffs == (-1.0, -0.5, 1.5)
    assert (spread.n1, spread.n2) == (2, 1)
    path.write_text("[1, 2]", encoding="utf-8")
    with pytest.raises(ValueError):
        load_nstate(path)
