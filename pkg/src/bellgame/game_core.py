"""Symmetric two-player Bayesian games whose total payoff couples to CHSH.

Both players receive a private type bit and answer with an action bit. A game
is a table of 16 utility pairs ``(s_i, t_i)`` (Alice, Bob), numbered

    i = 1 + 8*x_A + 4*x_B + 2*y_A + y_B

so that ``s1..s4`` cover types (0, 0), ``s5..s8`` types (0, 1) and so on, with
the action pair running 00, 01, 10, 11 inside each block.

Requiring player-permutation symmetry and that ``F_A + F_B`` depends on the
distribution only through the CHSH combination leaves ten free parameters
(:class:`GameParams`). Everything on this side is exact: utilities are
:class:`fractions.Fraction` and strict inequalities are decided without
tolerances.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, fields
from fractions import Fraction
from typing import NamedTuple, Union

from bellgame.errors import InconsistentTable

Rational = Union[Fraction, int]

#: Uniform prior over the four type profiles.
TYPE_PRIOR = Fraction(1, 4)

PARAM_NAMES = ("s1", "s2", "s3", "s5", "s6", "s7", "s8", "s9", "s13", "s14")


class PlayerId(enum.Enum):
    A = "A"
    B = "B"


class TypeProfile(NamedTuple):
    x_A: int
    x_B: int

    @property
    def index(self) -> int:
        return 2 * self.x_A + self.x_B


class ActionProfile(NamedTuple):
    y_A: int
    y_B: int

    @property
    def index(self) -> int:
        return 2 * self.y_A + self.y_B


TYPE_PROFILES = tuple(TypeProfile(a, b) for a in (0, 1) for b in (0, 1))
ACTION_PROFILES = tuple(ActionProfile(a, b) for a in (0, 1) for b in (0, 1))


def cell_index(x: TypeProfile, y: ActionProfile) -> int:
    """Zero-based position of the ``(x, y)`` cell; add one for the label ``i``."""
    for bit in (*x, *y):
        if bit not in (0, 1):
            raise ValueError(f"type/action components must be bits, got {bit!r}")
    return 8 * x.x_A + 4 * x.x_B + 2 * y.y_A + y.y_B


def _to_fraction(value) -> Fraction:
    if isinstance(value, bool):
        raise TypeError("booleans are not utilities")
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"utility must be finite, got {value!r}")
        return Fraction(value)
    if isinstance(value, (Fraction, int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


@dataclass(frozen=True)
class GameParams:
    """The ten free utilities; every other table entry is derived from them."""

    s1: Fraction
    s2: Fraction
    s3: Fraction
    s5: Fraction
    s6: Fraction
    s7: Fraction
    s8: Fraction
    s9: Fraction
    s13: Fraction
    s14: Fraction

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, _to_fraction(getattr(self, f.name)))

    @classmethod
    def from_mapping(cls, values) -> "GameParams":
        return cls(**{name: values[name] for name in PARAM_NAMES})

    @classmethod
    def zero(cls) -> "GameParams":
        return cls(*([0] * len(PARAM_NAMES)))

    def as_dict(self) -> dict[str, Fraction]:
        return {name: getattr(self, name) for name in PARAM_NAMES}

    def as_tuple(self) -> tuple[Fraction, ...]:
        return tuple(getattr(self, name) for name in PARAM_NAMES)

    def combine(self, other: "GameParams", alpha: Rational = 1, beta: Rational = 1) -> "GameParams":
        """Linear combination ``alpha*self + beta*other``."""
        return GameParams(*(alpha * a + beta * b for a, b in zip(self.as_tuple(), other.as_tuple())))

    @property
    def bell_coefficient(self) -> Fraction:
        """``2*s1 - s2 - s3``; negative for every conflicting-interest game."""
        return 2 * self.s1 - self.s2 - self.s3

    @property
    def conflict_valid(self) -> bool:
        return all(v.strict for v in check_conflict_conditions(self))

    @property
    def quantum_fair(self) -> bool:
        return check_fairness_constraint(self) == 0


@dataclass(frozen=True)
class UtilityTable:
    """Sixteen ``(s_i, t_i)`` pairs; ``s[i - 1]`` is Alice's utility in cell ``i``."""

    s: tuple[Fraction, ...]
    t: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.s) != 16 or len(self.t) != 16:
            raise ValueError("a utility table has exactly 16 cells")
        object.__setattr__(self, "s", tuple(_to_fraction(v) for v in self.s))
        object.__setattr__(self, "t", tuple(_to_fraction(v) for v in self.t))

    def cell(self, x: TypeProfile, y: ActionProfile) -> tuple[Fraction, Fraction]:
        k = cell_index(x, y)
        return self.s[k], self.t[k]

    def replace_cell(self, label: int, *, s=None, t=None) -> "UtilityTable":
        """Copy with cell ``label`` (1-based) overwritten; used to probe checkers."""
        new_s, new_t = list(self.s), list(self.t)
        if s is not None:
            new_s[label - 1] = s
        if t is not None:
            new_t[label - 1] = t
        return UtilityTable(tuple(new_s), tuple(new_t))

    def pairs(self) -> list[tuple[Fraction, Fraction]]:
        return list(zip(self.s, self.t))


# s_i = t_j pairs forced by player-permutation symmetry, as (i, j).
SYMMETRY_PAIRS = (
    (7, 10), (10, 7), (2, 3), (3, 2),
    (5, 9), (9, 5), (11, 6), (6, 11),
    (12, 8), (8, 12), (15, 14), (14, 15),
    (1, 1), (4, 4), (13, 13), (16, 16),
)


def _mirror_label(label: int) -> int:
    k = label - 1
    x_A, x_B, y_A, y_B = (k >> 3) & 1, (k >> 2) & 1, (k >> 1) & 1, k & 1
    return 1 + cell_index(TypeProfile(x_B, x_A), ActionProfile(y_B, y_A))


def build_utility_table(params: GameParams) -> UtilityTable:
    p = params
    k = p.s2 + p.s3 + p.s5 + p.s9 - 2 * p.s1
    s = {
        1: p.s1, 2: p.s2, 3: p.s3, 4: p.s1,
        5: p.s5, 6: p.s6, 7: p.s7, 8: p.s8,
        9: p.s9, 10: k - p.s7, 11: k - p.s6, 12: p.s5 - p.s8 + p.s9,
        13: p.s13, 14: p.s14, 15: 2 * p.s1 - p.s2 - p.s3 + 2 * p.s13 - p.s14, 16: p.s13,
    }
    # Bob's utility in a cell is Alice's in the player-swapped cell.
    t = {i: s[_mirror_label(i)] for i in s}
    return UtilityTable(tuple(s[i] for i in range(1, 17)), tuple(t[i] for i in range(1, 17)))


def check_player_symmetry(table: UtilityTable) -> bool:
    """True iff ``u_A(x_A, x_B, y_A, y_B) == u_B(x_B, x_A, y_B, y_A)`` everywhere."""
    for x in TYPE_PROFILES:
        for y in ACTION_PROFILES:
            swapped_x = TypeProfile(x.x_B, x.x_A)
            swapped_y = ActionProfile(y.y_B, y.y_A)
            if table.cell(x, y)[0] != table.cell(swapped_x, swapped_y)[1]:
                return False
    return True


def check_bell_coupling(table: UtilityTable) -> list[Fraction]:
    """Residuals (lhs - rhs) of the eleven linear identities coupling F_A + F_B to CHSH.

    Order: the three cross-block identities anchored on ``s1 - s2 + t1 - t2``,
    then the eight within-block ones (cells 4/1, 3/2, 8/5, 7/6, 12/9, 11/10,
    16/13, 14/15).
    """
    s = (None, *table.s)
    t = (None, *table.t)
    anchor = s[1] - s[2] + t[1] - t[2]
    return [
        anchor - (s[5] - s[6] + t[5] - t[6]),
        anchor - (s[9] - s[10] + t[9] - t[10]),
        anchor - (s[14] - s[13] + t[14] - t[13]),
        s[4] - s[1] + t[4] - t[1],
        s[3] - s[2] + t[3] - t[2],
        s[8] - s[5] + t[8] - t[5],
        s[7] - s[6] + t[7] - t[6],
        s[12] - s[9] + t[12] - t[9],
        s[11] - s[10] + t[11] - t[10],
        s[16] - s[13] + t[16] - t[13],
        s[14] - s[15] + t[14] - t[15],
    ]


def params_from_table(table: UtilityTable) -> GameParams:
    """Read the free parameters back off a table, rejecting tables outside the family."""
    if not check_player_symmetry(table):
        raise InconsistentTable("table violates player-permutation symmetry")
    residuals = check_bell_coupling(table)
    bad = [i + 1 for i, r in enumerate(residuals) if r != 0]
    if bad:
        raise InconsistentTable(f"Bell-coupling identities {bad} fail")
    # Symmetry and the eleven identities together pin every dependent cell.
    s = (None, *table.s)
    return GameParams(s[1], s[2], s[3], s[5], s[6], s[7], s[8], s[9], s[13], s[14])


@dataclass(frozen=True)
class InequalityVerdict:
    """One strict inequality ``lhs > rhs`` evaluated as ``margin = lhs - rhs``."""

    label: str
    margin: Fraction

    @property
    def strict(self) -> bool:
        return self.margin > 0

    @property
    def boundary(self) -> bool:
        return self.margin == 0


def check_conflict_conditions(params: GameParams) -> list[InequalityVerdict]:
    """The eight strict inequalities making the candidate profile an unfair equilibrium.

    The second and seventh lines coincide (``s2 + s5 > s1 + s7``); both are kept
    so that the list lines up with the eight equilibrium conditions they come from.
    """
    p = params
    return [
        InequalityVerdict("2s2+2s3+s8+s14 > 4s1+s7+s13",
                          2 * p.s2 + 2 * p.s3 + p.s8 + p.s14 - (4 * p.s1 + p.s7 + p.s13)),
        InequalityVerdict("s2+s5 > s1+s7", p.s2 + p.s5 - (p.s1 + p.s7)),
        InequalityVerdict("3s2+2s3+s5+s8+s14 > 5s1+2s7+s13",
                          3 * p.s2 + 2 * p.s3 + p.s5 + p.s8 + p.s14 - (5 * p.s1 + 2 * p.s7 + p.s13)),
        InequalityVerdict("s3+s7 > s1+s5", p.s3 + p.s7 - (p.s1 + p.s5)),
        InequalityVerdict("s3+s6+s7+s14 > s1+2s5+s13",
                          p.s3 + p.s6 + p.s7 + p.s14 - (p.s1 + 2 * p.s5 + p.s13)),
        InequalityVerdict("s6+s14 > s5+s13", p.s6 + p.s14 - (p.s5 + p.s13)),
        InequalityVerdict("s2+s5 > s1+s7", p.s2 + p.s5 - (p.s1 + p.s7)),
        InequalityVerdict("s2+s3 > 2s1", p.s2 + p.s3 - 2 * p.s1),
    ]


def check_fairness_constraint(params: GameParams) -> Fraction:
    """``2s1 - s2 - s3 - s5 + s6 + s7 - s8``; zero makes both quantum payoffs identical."""
    p = params
    return 2 * p.s1 - p.s2 - p.s3 - p.s5 + p.s6 + p.s7 - p.s8


def utility(table: UtilityTable, x: TypeProfile, y: ActionProfile, who: PlayerId) -> Fraction:
    u_A, u_B = table.cell(TypeProfile(*x), ActionProfile(*y))
    return u_A if who is PlayerId.A else u_B


@dataclass(frozen=True)
class ConstraintReport:
    symmetry_ok: bool
    bell_coupling_residuals: tuple[Fraction, ...]
    conflict_inequalities: tuple[InequalityVerdict, ...]
    fairness_residual: Fraction

    @property
    def coupling_ok(self) -> bool:
        return all(r == 0 for r in self.bell_coupling_residuals)

    @property
    def conflict_ok(self) -> bool:
        return all(v.strict for v in self.conflict_inequalities)

    @property
    def fairness_ok(self) -> bool:
        return self.fairness_residual == 0

    @property
    def all_pass(self) -> bool:
        """Symmetry, coupling and conflict; fairness is reported separately."""
        return self.symmetry_ok and self.coupling_ok and self.conflict_ok


def constraint_report(params: GameParams) -> ConstraintReport:
    table = build_utility_table(params)
    return ConstraintReport(
        symmetry_ok=check_player_symmetry(table),
        bell_coupling_residuals=tuple(check_bell_coupling(table)),
        conflict_inequalities=tuple(check_conflict_conditions(params)),
        fairness_residual=check_fairness_constraint(params),
    )


#: The Battle-of-Sexes/CHSH instance; satisfies every constraint including fairness.
PAPPA_PARAMS = GameParams(
    s1=0, s2=1, s3=Fraction(1, 2), s5=0, s6=1, s7=Fraction(1, 2),
    s8=0, s9=0, s13=Fraction(3, 4), s14=0,
)
