from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from bellgame.classical_engine import ConditionalDistribution
from bellgame.game_core import PAPPA_PARAMS, PARAM_NAMES, GameParams, build_utility_table

# Every cell listed for the Battle-of-Sexes/CHSH instance, s1..s16 then t1..t16.
PAPPA_S = ["0", "1", "1/2", "0", "0", "1", "1/2", "0", "0", "1", "1/2", "0", "3/4", "0", "0", "3/4"]
PAPPA_T = ["0", "1/2", "1", "0", "0", "1/2", "1", "0", "0", "1/2", "1", "0", "3/4", "0", "0", "3/4"]


@pytest.fixture
def pappa():
    return PAPPA_PARAMS


@pytest.fixture
def pappa_table():
    return build_utility_table(PAPPA_PARAMS)


rationals = st.fractions(min_value=-10, max_value=10, max_denominator=12)
params_strategy = st.builds(GameParams, *([rationals] * len(PARAM_NAMES)))


def random_params(rng: random.Random, lo: int = -8, hi: int = 8, den: int = 4) -> GameParams:
    return GameParams(*(Fraction(rng.randint(lo, hi), den) for _ in PARAM_NAMES))


def random_fair_params(rng: random.Random) -> GameParams:
    p = random_params(rng)
    s8 = 2 * p.s1 - p.s2 - p.s3 - p.s5 + p.s6 + p.s7
    return GameParams(p.s1, p.s2, p.s3, p.s5, p.s6, p.s7, s8, p.s9, p.s13, p.s14)


def pr_box() -> ConditionalDistribution:
    """Nonlocal no-signalling box: outputs agree unless both types are 1."""
    half = Fraction(1, 2)
    rows = []
    for x_a in (0, 1):
        for x_b in (0, 1):
            anti = x_a & x_b
            rows.append(tuple(half if (y_a ^ y_b) == anti else Fraction(0)
                              for y_a in (0, 1) for y_b in (0, 1)))
    return ConditionalDistribution(tuple(rows))
