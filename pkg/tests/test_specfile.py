from __future__ import annotations

import json
import math
from fractions import Fraction
from pathlib import Path

import pytest

from bellgame.errors import ParseError
from bellgame.game_core import PAPPA_PARAMS
from bellgame.specfile import (
    PAPPA_DOCUMENT,
    dump_game_spec,
    load_game_spec,
    parse_fraction,
    parse_game_spec,
)

REPO = Path(__file__).resolve().parents[1]


def pappa_payload(**overrides):
    data = json.loads(dump_game_spec(PAPPA_DOCUMENT))
    data.update(overrides)
    return data


def test_shipped_pappa_file_equals_builtin():
    doc = load_game_spec(REPO / "specs" / "pappa.json")
    assert doc.params == PAPPA_PARAMS
    assert doc.label == PAPPA_DOCUMENT.label
    assert doc.options == {}


def test_round_trip():
    assert parse_game_spec(dump_game_spec(PAPPA_DOCUMENT)) == PAPPA_DOCUMENT


@pytest.mark.parametrize("raw, expected", [
    ("1/2", Fraction(1, 2)),
    ("-3/4", Fraction(-3, 4)),
    (" 6 / 8 ", Fraction(3, 4)),
    (5, Fraction(5)),
    ("7", Fraction(7)),
])
def test_parse_fraction(raw, expected):
    assert parse_fraction(raw) == expected


@pytest.mark.parametrize("raw", ["0.5", "1/0", "a/b", 0.5, True, None, "1/2/3"])
def test_parse_fraction_rejects(raw):
    with pytest.raises(ParseError):
        parse_fraction(raw)


def test_missing_key():
    data = pappa_payload()
    del data["params"]["s14"]
    with pytest.raises(ParseError, match="s14"):
        parse_game_spec(json.dumps(data))


def test_extra_key():
    data = pappa_payload()
    data["params"]["s4"] = "0"
    with pytest.raises(ParseError, match="s4"):
        parse_game_spec(json.dumps(data))


def test_unknown_top_level_key():
    with pytest.raises(ParseError, match="unknown"):
        parse_game_spec(json.dumps(pappa_payload(extra=1)))


def test_malformed_json_reports_line():
    with pytest.raises(ParseError, match="line 3"):
        parse_game_spec('{\n  "params": {\n    "s1": ,\n  }\n}')


def test_options():
    doc = parse_game_spec(json.dumps(pappa_payload(options={"tolerance": 1e-8, "grid_step": "pi/16"})))
    assert doc.tolerance == 1e-8
    assert doc.grid_step == math.pi / 16
    with pytest.raises(ParseError):
        parse_game_spec(json.dumps(pappa_payload(options={"grid_step": "tau"})))
    with pytest.raises(ParseError):
        parse_game_spec(json.dumps(pappa_payload(options={"tolerance": -1})))


def test_unreadable_file(tmp_path):
    with pytest.raises(ParseError):
        load_game_spec(tmp_path / "nope.json")
