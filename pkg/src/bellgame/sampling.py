"""Rejection sampling of conflicting-interest games that also satisfy fairness."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from bellgame.errors import SamplingExhausted
from bellgame.game_core import GameParams
from bellgame.specfile import GameSpecDocument

DEFAULT_ATTEMPTS = 10**6


@dataclass(frozen=True)
class SampleRanges:
    """Parameters are ``k / denominator`` with integer ``k`` in ``[min_numerator, max_numerator]``."""

    min_numerator: int = -8
    max_numerator: int = 8
    denominator: int = 4

    def __post_init__(self):
        if self.denominator <= 0:
            raise ValueError("denominator must be positive")
        if self.min_numerator > self.max_numerator:
            raise ValueError("empty numerator range")


def _draw(rng: random.Random, ranges: SampleRanges) -> Fraction:
    return Fraction(rng.randint(ranges.min_numerator, ranges.max_numerator), ranges.denominator)


def sample_params(
    count: int,
    seed: int = 0,
    ranges: SampleRanges = SampleRanges(),
    attempts: int = DEFAULT_ATTEMPTS,
) -> list[GameParams]:
    """Draw ``count`` parameter vectors with strict conflict conditions and zero fairness residual.

    ``s8`` is not drawn: it is solved from the fairness equation, which a
    random draw would hit with probability close to zero. ``attempts`` bounds
    the total number of draws across all samples.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    rng = random.Random(seed)
    out: list[GameParams] = []
    used = 0
    while len(out) < count:
        if used >= attempts:
            raise SamplingExhausted(f"found {len(out)} of {count} games in {attempts} attempts")
        used += 1
        s1, s2, s3, s5, s6, s7, s9, s13, s14 = (_draw(rng, ranges) for _ in range(9))
        s8 = 2 * s1 - s2 - s3 - s5 + s6 + s7
        params = GameParams(s1, s2, s3, s5, s6, s7, s8, s9, s13, s14)
        if params.conflict_valid:
            out.append(params)
    return out


def sample_documents(count: int, seed: int = 0, ranges: SampleRanges = SampleRanges(),
                     attempts: int = DEFAULT_ATTEMPTS) -> list[GameSpecDocument]:
    params = sample_params(count, seed, ranges, attempts)
    return [GameSpecDocument(f"sample-{seed}-{i}", p) for i, p in enumerate(params)]
