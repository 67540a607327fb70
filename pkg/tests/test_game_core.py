from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given

from bellgame.errors import InconsistentTable
from bellgame.game_core import (
    ACTION_PROFILES,
    PAPPA_PARAMS,
    TYPE_PROFILES,
    ActionProfile,
    GameParams,
    PlayerId,
    TypeProfile,
    UtilityTable,
    build_utility_table,
    cell_index,
    check_bell_coupling,
    check_conflict_conditions,
    check_fairness_constraint,
    check_player_symmetry,
    constraint_report,
    params_from_table,
    utility,
)

from conftest import PAPPA_S, PAPPA_T, params_strategy, rationals


def test_cell_numbering_follows_table_layout():
    # Row (x_A, y_A), column (x_B, y_B) -> printed label.
    printed = {
        (0, 0): [1, 2, 5, 6],
        (0, 1): [3, 4, 7, 8],
        (1, 0): [9, 10, 13, 14],
        (1, 1): [11, 12, 15, 16],
    }
    for (x_a, y_a), labels in printed.items():
        cols = [(0, 0), (0, 1), (1, 0), (1, 1)]
        for (x_b, y_b), label in zip(cols, labels):
            assert cell_index(TypeProfile(x_a, x_b), ActionProfile(y_a, y_b)) + 1 == label


def test_pappa_table_matches_listing(pappa_table):
    assert pappa_table.s == tuple(Fraction(v) for v in PAPPA_S)
    assert pappa_table.t == tuple(Fraction(v) for v in PAPPA_T)


def test_zero_params_give_zero_table():
    table = build_utility_table(GameParams.zero())
    assert set(table.s) == {0} and set(table.t) == {0}


def test_unit_s1_table():
    table = build_utility_table(GameParams(1, 0, 0, 0, 0, 0, 0, 0, 0, 0))
    s, t = (None, *table.s), (None, *table.t)
    assert s[10] == s[11] == -2
    assert s[15] == 2
    assert s[4] == t[1] == t[4] == 1


def test_bob_column_of_reduced_table(pappa):
    # Spot checks on the second entry of each pair, read straight off the reduced table.
    p = GameParams(*range(1, 11))
    s1, s2, s3, s5, s6, s7, s8, s9, s13, s14 = p.as_tuple()
    t = (None, *build_utility_table(p).t)
    assert (t[1], t[2], t[3], t[4]) == (s1, s3, s2, s1)
    assert (t[5], t[9], t[13], t[16]) == (s9, s5, s13, s13)
    assert t[6] == -2 * s1 + s2 + s3 + s5 - s6 + s9
    assert t[7] == -2 * s1 + s2 + s3 + s5 - s7 + s9
    assert t[8] == s5 - s8 + s9
    assert (t[10], t[11], t[12]) == (s7, s6, s8)
    assert t[14] == 2 * s1 - s2 - s3 + 2 * s13 - s14
    assert t[15] == s14


def test_params_from_pappa_table(pappa_table):
    assert params_from_table(pappa_table) == PAPPA_PARAMS


@given(params_strategy)
def test_round_trip(p):
    assert params_from_table(build_utility_table(p)) == p


@given(params_strategy)
def test_built_tables_are_symmetric_and_coupled(p):
    table = build_utility_table(p)
    assert check_player_symmetry(table)
    assert check_bell_coupling(table) == [0] * 11


@given(params_strategy, params_strategy, rationals, rationals)
def test_linearity(p, q, a, b):
    lhs = build_utility_table(p.combine(q, a, b))
    tp, tq = build_utility_table(p), build_utility_table(q)
    assert lhs.s == tuple(a * x + b * y for x, y in zip(tp.s, tq.s))
    assert lhs.t == tuple(a * x + b * y for x, y in zip(tp.t, tq.t))
    assert check_fairness_constraint(p.combine(q, a, b)) == (
        a * check_fairness_constraint(p) + b * check_fairness_constraint(q)
    )


def test_s4_mismatch_is_rejected(pappa_table):
    bad = pappa_table.replace_cell(4, s=1, t=1)
    with pytest.raises(InconsistentTable):
        params_from_table(bad)


def test_asymmetric_table_is_rejected(pappa_table):
    with pytest.raises(InconsistentTable, match="symmetry"):
        params_from_table(pappa_table.replace_cell(3, t=pappa_table.t[2] + 1))


def test_symmetry_check(pappa_table):
    assert check_player_symmetry(pappa_table)
    assert not check_player_symmetry(pappa_table.replace_cell(3, t=pappa_table.t[2] + 1))


def test_single_identity_perturbation(pappa_table):
    table = pappa_table.replace_cell(16, s=pappa_table.s[12] + 1)
    residuals = check_bell_coupling(table)
    assert residuals[9] == 1
    assert [r for i, r in enumerate(residuals) if i != 9] == [0] * 10


def test_conflict_conditions_pappa(pappa):
    verdicts = check_conflict_conditions(pappa)
    assert len(verdicts) == 8
    assert all(v.strict for v in verdicts)
    assert verdicts[-1].margin == Fraction(3, 2)


def test_conflict_conditions_zero_all_boundary():
    verdicts = check_conflict_conditions(GameParams.zero())
    assert not any(v.strict for v in verdicts)
    assert all(v.boundary for v in verdicts)


def test_conflict_conditions_sampled_example():
    # Found by an independent rejection sampler over small integers.
    p = GameParams(s1=0, s2=3, s3=3, s5=0, s6=1, s7=0, s8=3, s9=0, s13=0, s14=1)
    assert all(v.strict for v in check_conflict_conditions(p))
    assert p.conflict_valid


def test_conflict_fourth_line_can_fail_alone():
    p = GameParams(s1=0, s2=1, s3=1, s5=2, s6=2, s7=0, s8=1, s9=0, s13=0, s14=3)
    margins = [v.margin for v in check_conflict_conditions(p)]
    assert margins == [8, 3, 11, -1, 2, 3, 3, 2]


def test_duplicate_line_is_kept(pappa):
    verdicts = check_conflict_conditions(pappa)
    assert verdicts[1].label == verdicts[6].label
    assert verdicts[1].margin == verdicts[6].margin


def test_fairness_residual(pappa):
    assert check_fairness_constraint(pappa) == 0
    assert check_fairness_constraint(GameParams.zero()) == 0
    bumped = GameParams(**{**pappa.as_dict(), "s6": 2})
    assert check_fairness_constraint(bumped) == 1


def test_utility_lookup(pappa_table):
    assert utility(pappa_table, TypeProfile(0, 0), ActionProfile(0, 1), PlayerId.A) == 1
    assert utility(pappa_table, TypeProfile(1, 1), ActionProfile(0, 0), PlayerId.B) == Fraction(3, 4)


@given(params_strategy)
def test_utility_player_swap(p):
    table = build_utility_table(p)
    for (a, b), (c, d) in itertools.product(TYPE_PROFILES, ACTION_PROFILES):
        assert utility(table, (a, b), (c, d), PlayerId.A) == utility(table, (b, a), (d, c), PlayerId.B)


def test_constraint_report_pappa(pappa):
    report = constraint_report(pappa)
    assert report.all_pass and report.fairness_ok
    assert len(report.bell_coupling_residuals) == 11
    assert len(report.conflict_inequalities) == 8


def test_table_must_have_16_cells():
    with pytest.raises(ValueError):
        UtilityTable((0,) * 15, (0,) * 16)


def test_params_reject_non_finite():
    with pytest.raises(ValueError):
        GameParams(float("nan"), 0, 0, 0, 0, 0, 0, 0, 0, 0)
