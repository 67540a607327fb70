"""Game-spec documents: JSON with exact fractional parameters.

Example::

    {
      "label": "pappa",
      "params": {"s1": "0", "s2": "1", "s3": "1/2", ...},
      "options": {"tolerance": 1e-9, "grid_step": "pi/32"}
    }

Parameters are integers or ``"num/den"`` strings; floats are rejected so that
every value is exact. All ten keys must be present and no others.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from bellgame.errors import ParseError
from bellgame.game_core import PAPPA_PARAMS, PARAM_NAMES, GameParams

_FRACTION_RE = re.compile(r"^\s*[+-]?\d+\s*(/\s*\d+\s*)?$")
_PI_RE = re.compile(r"^\s*pi\s*/\s*(\d+)\s*$")
_TOP_LEVEL_KEYS = {"label", "params", "options"}
_OPTION_KEYS = {"tolerance", "grid_step"}


@dataclass(frozen=True)
class GameSpecDocument:
    label: str
    params: GameParams
    options: dict = field(default_factory=dict)

    @property
    def tolerance(self) -> Optional[float]:
        return self.options.get("tolerance")

    @property
    def grid_step(self) -> Optional[float]:
        return self.options.get("grid_step")


def format_fraction(value: Fraction) -> str:
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def parse_fraction(raw, key: str = "?") -> Fraction:
    if isinstance(raw, bool) or not isinstance(raw, (int, str)):
        raise ParseError(f"{key}: expected an integer or 'num/den' string, got {raw!r}")
    if isinstance(raw, int):
        return Fraction(raw)
    if not _FRACTION_RE.match(raw):
        raise ParseError(f"{key}: {raw!r} is not an exact fraction")
    num, _, den = raw.replace(" ", "").partition("/")
    if den and int(den) == 0:
        raise ParseError(f"{key}: zero denominator")
    return Fraction(int(num), int(den) if den else 1)


def parse_angle(raw, key: str = "grid_step") -> float:
    """Accepts a positive number of radians or ``"pi/N"``."""
    if isinstance(raw, str):
        m = _PI_RE.match(raw)
        if not m or int(m.group(1)) == 0:
            raise ParseError(f"{key}: expected radians or 'pi/N', got {raw!r}")
        return math.pi / int(m.group(1))
    if isinstance(raw, bool) or not isinstance(raw, (int, float)) or not raw > 0:
        raise ParseError(f"{key}: expected a positive angle, got {raw!r}")
    return float(raw)


def _parse_options(raw) -> dict:
    if not isinstance(raw, dict):
        raise ParseError("options: expected an object")
    extra = set(raw) - _OPTION_KEYS
    if extra:
        raise ParseError(f"options: unknown keys {sorted(extra)}")
    out = {}
    if "tolerance" in raw:
        tol = raw["tolerance"]
        if isinstance(tol, bool) or not isinstance(tol, (int, float)) or not tol > 0:
            raise ParseError(f"options.tolerance: expected a positive number, got {tol!r}")
        out["tolerance"] = float(tol)
    if "grid_step" in raw:
        out["grid_step"] = parse_angle(raw["grid_step"], "options.grid_step")
    return out


def document_from_dict(data) -> GameSpecDocument:
    if not isinstance(data, dict):
        raise ParseError("top level: expected an object")
    extra = set(data) - _TOP_LEVEL_KEYS
    if extra:
        raise ParseError(f"top level: unknown keys {sorted(extra)}")
    if "params" not in data:
        raise ParseError("missing key 'params'")
    params = data["params"]
    if not isinstance(params, dict):
        raise ParseError("params: expected an object")
    missing = [k for k in PARAM_NAMES if k not in params]
    if missing:
        raise ParseError(f"params: missing keys {missing}")
    extra = sorted(set(params) - set(PARAM_NAMES))
    if extra:
        raise ParseError(f"params: unexpected keys {extra}")
    label = data.get("label", "")
    if not isinstance(label, str):
        raise ParseError("label: expected a string")
    values = {k: parse_fraction(params[k], f"params.{k}") for k in PARAM_NAMES}
    return GameSpecDocument(label, GameParams(**values), _parse_options(data.get("options", {})))


def parse_game_spec(text: str) -> GameSpecDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return document_from_dict(data)


def load_game_spec(path) -> GameSpecDocument:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_game_spec(text)


def document_to_dict(doc: GameSpecDocument) -> dict:
    out = {
        "label": doc.label,
        "params": {k: format_fraction(v) for k, v in doc.params.as_dict().items()},
    }
    if doc.options:
        out["options"] = dict(doc.options)
    return out


def dump_game_spec(doc: GameSpecDocument) -> str:
    return json.dumps(document_to_dict(doc), indent=2) + "\n"


PAPPA_DOCUMENT = GameSpecDocument("pappa", PAPPA_PARAMS)
