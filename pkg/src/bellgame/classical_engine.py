"""Classical strategies: no-signalling distributions, local models, CHSH and Nash.

A conditional distribution is stored as four rows, one per type profile
``x = (x_A, x_B)`` in the order 00, 01, 10, 11, each holding the four action
probabilities ``p(y|x)`` for ``y`` in the same order. Entries are either all
exact (``Fraction``/``int``) or contain floats, in which case equality checks
use :data:`FLOAT_TOLERANCE`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC

from bellgame.errors import BadMixture, InconsistentTable, SignAssumptionViolated
from bellgame.game_core import (
    ACTION_PROFILES,
    TYPE_PRIOR,
    TYPE_PROFILES,
    ActionProfile,
    GameParams,
    TypeProfile,
    UtilityTable,
    build_utility_table,
    params_from_table,
)

FLOAT_TOLERANCE = 1e-12

#: The four single-player response functions, indexed as ``2*f(0) + f(1)``.
RESPONSE_FUNCTIONS = ((0, 0), (0, 1), (1, 0), (1, 1))


def _is_exact(value) -> bool:
    return isinstance(value, _RationalABC)


@dataclass(frozen=True)
class ConditionalDistribution:
    rows: tuple[tuple, ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        if len(rows) != 4 or any(len(r) != 4 for r in rows):
            raise ValueError("a conditional distribution is a 4x4 array")
        object.__setattr__(self, "rows", rows)

    def prob(self, y, x):
        """``p(y_A, y_B | x_A, x_B)``."""
        return self.rows[TypeProfile(*x).index][ActionProfile(*y).index]

    @property
    def exact(self) -> bool:
        return all(_is_exact(v) for row in self.rows for v in row)

    @classmethod
    def uniform(cls) -> "ConditionalDistribution":
        q = Fraction(1, 4)
        return cls(tuple((q,) * 4 for _ in range(4)))

    def mix(self, other: "ConditionalDistribution", weight) -> "ConditionalDistribution":
        """``weight*self + (1 - weight)*other``."""
        return ConditionalDistribution(tuple(
            tuple(weight * a + (1 - weight) * b for a, b in zip(ra, rb))
            for ra, rb in zip(self.rows, other.rows)
        ))


def _equal(a, b, exact: bool) -> bool:
    return a == b if exact else abs(a - b) <= FLOAT_TOLERANCE


def validate_distribution(d: ConditionalDistribution) -> bool:
    """Nonnegativity, normalization per type profile and both no-signalling conditions."""
    exact = d.exact
    lo = 0 if exact else -FLOAT_TOLERANCE
    if any(v < lo for row in d.rows for v in row):
        return False
    for row in d.rows:
        if not _equal(sum(row), 1, exact):
            return False

    def alice_marginal(y_A, x_A, x_B):
        return sum(d.prob((y_A, y_B), (x_A, x_B)) for y_B in (0, 1))

    def bob_marginal(y_B, x_A, x_B):
        return sum(d.prob((y_A, y_B), (x_A, x_B)) for y_A in (0, 1))

    for a, b in itertools.product((0, 1), repeat=2):
        if not _equal(alice_marginal(a, b, 0), alice_marginal(a, b, 1), exact):
            return False
        if not _equal(bob_marginal(a, 0, b), bob_marginal(a, 1, b), exact):
            return False
    return True


@dataclass(frozen=True)
class DeterministicStrategy:
    """Each player's action as a function of their own type: ``f_A = (f_A(0), f_A(1))``."""

    f_A: tuple[int, int]
    f_B: tuple[int, int]

    def __post_init__(self):
        for f in (self.f_A, self.f_B):
            if len(f) != 2 or any(v not in (0, 1) for v in f):
                raise ValueError(f"response function must map bits to bits, got {f!r}")
        object.__setattr__(self, "f_A", tuple(self.f_A))
        object.__setattr__(self, "f_B", tuple(self.f_B))

    @property
    def index(self) -> int:
        """Canonical order: ``index(f_A) * 4 + index(f_B)``."""
        return 4 * RESPONSE_FUNCTIONS.index(self.f_A) + RESPONSE_FUNCTIONS.index(self.f_B)

    def swapped(self) -> "DeterministicStrategy":
        return DeterministicStrategy(self.f_B, self.f_A)


#: Alice always plays 0, Bob plays the negation of his type.
CANDIDATE_STRATEGY = DeterministicStrategy((0, 0), (1, 0))


def enumerate_deterministic_strategies() -> list[DeterministicStrategy]:
    return [DeterministicStrategy(fa, fb) for fa in RESPONSE_FUNCTIONS for fb in RESPONSE_FUNCTIONS]


def deterministic_distribution(s: DeterministicStrategy) -> ConditionalDistribution:
    rows = []
    for x in TYPE_PROFILES:
        hit = ActionProfile(s.f_A[x.x_A], s.f_B[x.x_B])
        rows.append(tuple(Fraction(int(y == hit)) for y in ACTION_PROFILES))
    return ConditionalDistribution(tuple(rows))


@dataclass(frozen=True)
class LocalHiddenVariableModel:
    """Finite mixture over deterministic strategies; two hidden bits per player suffice."""

    weights: tuple[tuple[object, DeterministicStrategy], ...]


def lhv_distribution(m: LocalHiddenVariableModel) -> ConditionalDistribution:
    weights = [w for w, _ in m.weights]
    if not weights:
        raise BadMixture("empty mixture")
    exact = all(_is_exact(w) for w in weights)
    if any(w < 0 for w in weights):
        raise BadMixture("negative mixture weight")
    if not _equal(sum(weights), 1, exact):
        raise BadMixture(f"weights sum to {sum(weights)}, not 1")
    acc = [[0] * 4 for _ in range(4)]
    for w, strategy in m.weights:
        d = deterministic_distribution(strategy)
        for i in range(4):
            for j in range(4):
                acc[i][j] += w * d.rows[i][j]
    return ConditionalDistribution(tuple(tuple(r) for r in acc))


def correlators(d: ConditionalDistribution) -> tuple[tuple, tuple]:
    """``e[i][j] = <A_i B_j>`` with outcome ``y`` mapped to ``2y - 1``."""
    def e(i, j):
        x = (i, j)
        return d.prob((0, 0), x) + d.prob((1, 1), x) - d.prob((0, 1), x) - d.prob((1, 0), x)

    return ((e(0, 0), e(0, 1)), (e(1, 0), e(1, 1)))


def bell_values(d: ConditionalDistribution) -> tuple:
    """The four signed CHSH combinations; the minus sign sits on A1B1, A0B1, A1B0, A0B0."""
    (e00, e01), (e10, e11) = correlators(d)
    return (
        e00 + e10 + e01 - e11,
        e10 + e00 + e11 - e01,
        e01 + e11 + e00 - e10,
        e11 + e01 + e10 - e00,
    )


def classical_payoffs(table: UtilityTable, d: ConditionalDistribution) -> tuple:
    """Expected ``(F_A, F_B)`` under the uniform type prior."""
    f_a = f_b = 0
    for k in range(16):
        p = d.rows[k >> 2][k & 3]
        f_a += table.s[k] * p
        f_b += table.t[k] * p
    return TYPE_PRIOR * f_a, TYPE_PRIOR * f_b


def total_payoff_as_bell_affine(params: GameParams) -> tuple[Fraction, Fraction]:
    """``(alpha, beta)`` with ``F_A + F_B = alpha * S + beta`` for every normalized distribution.

    ``S`` is the first entry of :func:`bell_values`.
    """
    p = params
    alpha = Fraction(2 * p.s1 - p.s2 - p.s3, 8)
    beta = Fraction(p.s2 + p.s3 + 2 * p.s5 + 2 * p.s9 + 2 * p.s13, 4)
    return alpha, beta


def classical_total_payoff_bound(params: GameParams) -> Fraction:
    """Largest ``F_A + F_B`` reachable while ``|S| <= 2``.

    Only meaningful when ``alpha < 0``; otherwise the bound sits at ``S = +2``
    and :class:`SignAssumptionViolated` is raised with the ``S = -2`` value attached.
    """
    alpha, beta = total_payoff_as_bell_affine(params)
    value = -2 * alpha + beta
    if alpha >= 0:
        raise SignAssumptionViolated(
            f"2*s1 - s2 - s3 = {8 * alpha} is not negative; bound direction flips", value
        )
    return value


@dataclass(frozen=True)
class NashResult:
    strategy: DeterministicStrategy
    payoffs: tuple
    is_equilibrium: bool
    is_fair: bool
    saturates_bell_bound: bool
    # Equilibrium where some unilateral deviation ties (weak equilibrium).
    degenerate: bool = False


def find_pure_nash(table: UtilityTable) -> list[NashResult]:
    """Check all 16 deterministic profiles against every unilateral deviation.

    A profile is an equilibrium when no deviation *strictly* improves the
    deviator; ties mark it ``degenerate``. Results come in canonical strategy order.
    """
    strategies = enumerate_deterministic_strategies()
    payoffs = {s: classical_payoffs(table, deterministic_distribution(s)) for s in strategies}
    try:
        bound = classical_total_payoff_bound(params_from_table(table))
    except (InconsistentTable, SignAssumptionViolated):
        bound = None

    results = []
    for s in strategies:
        f_a, f_b = payoffs[s]
        alice_alts = [payoffs[DeterministicStrategy(g, s.f_B)][0] for g in RESPONSE_FUNCTIONS if g != s.f_A]
        bob_alts = [payoffs[DeterministicStrategy(s.f_A, g)][1] for g in RESPONSE_FUNCTIONS if g != s.f_B]
        improves = any(v > f_a for v in alice_alts) or any(v > f_b for v in bob_alts)
        ties = any(v == f_a for v in alice_alts) or any(v == f_b for v in bob_alts)
        results.append(NashResult(
            strategy=s,
            payoffs=(f_a, f_b),
            is_equilibrium=not improves,
            is_fair=f_a == f_b,
            saturates_bell_bound=bound is not None and f_a + f_b == bound,
            degenerate=not improves and ties,
        ))
    results.sort(key=lambda r: r.strategy.index)
    return results


def candidate_equilibrium_margins(params: GameParams) -> list[Fraction]:
    """``lhs - rhs`` of the eight conditions for the candidate profile, on the built table.

    Lines 1-3 are Alice's deviations, 4-6 Bob's, 7 says Alice is favoured and
    8 fixes the sign of the Bell coefficient.
    """
    table = build_utility_table(params)
    s = (None, *table.s)
    t = (None, *table.t)
    alice = s[2] + s[5] + s[10] + s[13]
    bob = t[2] + t[5] + t[10] + t[13]
    return [
        alice - (s[2] + s[5] + s[12] + s[15]),
        alice - (s[4] + s[7] + s[10] + s[13]),
        alice - (s[4] + s[7] + s[12] + s[15]),
        bob - (t[1] + t[5] + t[9] + t[13]),
        bob - (t[1] + t[6] + t[9] + t[14]),
        bob - (t[2] + t[6] + t[10] + t[14]),
        alice - bob,
        -(s[1] - s[2] + t[1] - t[2]),
    ]


def check_candidate_equilibrium(params: GameParams) -> bool:
    return all(m > 0 for m in candidate_equilibrium_margins(params))
