"""Assemble verification reports as JSON-compatible dicts and render them as text."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional

from bellgame.classical_engine import (
    CANDIDATE_STRATEGY,
    NashResult,
    classical_total_payoff_bound,
    find_pure_nash,
    total_payoff_as_bell_affine,
)
from bellgame.errors import ConsistencyFailure, SignAssumptionViolated
from bellgame.game_core import ConstraintReport, GameParams, build_utility_table, constraint_report
from bellgame.quantum_engine import (
    ALGEBRA_TOL,
    DEFAULT_GRID_STEP,
    OPTIMUM_TOL,
    TSIRELSON,
    MeasurementAngles,
    analytic_fair_payoff,
    analytic_quantum_advantage,
    analytic_total_payoff,
    bell_state,
    maximize_fair_payoff,
    quantum_payoffs_trace,
)
from bellgame.specfile import format_fraction


def num(x: float) -> float:
    """Round to 15 significant digits so reports are stable across platforms."""
    return float(f"{float(x):.15g}")


def _frac(x) -> str:
    return format_fraction(Fraction(x))


def constraints_section(report: ConstraintReport) -> dict:
    return {
        "symmetry_ok": report.symmetry_ok,
        "bell_coupling_residuals": [_frac(r) for r in report.bell_coupling_residuals],
        "bell_coupling_ok": report.coupling_ok,
        "conflict_inequalities": [
            {"label": v.label, "margin": _frac(v.margin), "strict": v.strict, "boundary": v.boundary}
            for v in report.conflict_inequalities
        ],
        "conflict_ok": report.conflict_ok,
        "fairness_residual": _frac(report.fairness_residual),
        "all_pass": report.all_pass,
    }


def _nash_entry(r: NashResult) -> dict:
    return {
        "index": r.strategy.index,
        "f_A": list(r.strategy.f_A),
        "f_B": list(r.strategy.f_B),
        "payoffs": [_frac(r.payoffs[0]), _frac(r.payoffs[1])],
        "fair": r.is_fair,
        "saturates_bell_bound": r.saturates_bell_bound,
        "degenerate": r.degenerate,
    }


def classical_section(params: GameParams) -> dict:
    table = build_utility_table(params)
    results = find_pure_nash(table)
    equilibria = [r for r in results if r.is_equilibrium]
    alpha, beta = total_payoff_as_bell_affine(params)
    notes = []
    try:
        bound: Optional[Fraction] = classical_total_payoff_bound(params)
    except SignAssumptionViolated as exc:
        bound = None
        notes.append(f"no classical bound: {exc}")
    if any(r.degenerate for r in equilibria):
        notes.append("degenerate (weak) equilibria present: some deviations tie")
    candidate = next(r for r in results if r.strategy == CANDIDATE_STRATEGY)
    return {
        "equilibria": [_nash_entry(r) for r in equilibria],
        "bound": None if bound is None else _frac(bound),
        "affine": {"alpha": _frac(alpha), "beta": _frac(beta)},
        "candidate": _nash_entry(candidate) | {"is_equilibrium": candidate.is_equilibrium},
        "has_unfair_equilibrium": any(not r.is_fair for r in equilibria),
        "notes": notes,
    }


def quantum_section(params: GameParams, grid_step: float = DEFAULT_GRID_STEP,
                    tolerance: float = OPTIMUM_TOL) -> dict:
    """Optimize the fair payoff and cross-check it against the closed-form optimum.

    Raises :class:`ConsistencyFailure` if the optimizer and the analytic value
    disagree by more than ``tolerance``.
    """
    eq = maximize_fair_payoff(params, grid_step)
    fair = analytic_fair_payoff(params)
    total = analytic_total_payoff(params)
    advantage = analytic_quantum_advantage(params)
    bound = classical_total_payoff_bound(params)
    trace_a, trace_b = quantum_payoffs_trace(
        build_utility_table(params), bell_state(), MeasurementAngles.equatorial(eq.phis)
    )
    payoff_err = abs(eq.payoff_per_player - float(fair))
    chsh_err = abs(abs(eq.chsh_value) - TSIRELSON)
    if payoff_err > tolerance or chsh_err > tolerance:
        raise ConsistencyFailure(
            f"optimizer payoff off by {payoff_err:.3e}, CHSH off by {chsh_err:.3e} (tolerance {tolerance:g})"
        )
    numeric_total = 2 * eq.payoff_per_player
    return {
        "angles": {"theta": [num(math.pi / 2)] * 4, "phi": [num(p) for p in eq.phis]},
        "family_indices": None if eq.family_indices is None else list(eq.family_indices),
        "fair_payoff": num(eq.payoff_per_player),
        "fair_payoff_exact": str(fair),
        "total": num(numeric_total),
        "total_exact": str(total),
        "chsh": num(eq.chsh_value),
        "trace_payoffs": [num(trace_a), num(trace_b)],
        "analytic_check": {
            "fair_payoff_error": num(payoff_err),
            "chsh_error": num(chsh_err),
        },
        "advantage_over_classical": num(numeric_total - float(bound)),
        "advantage_exact": str(advantage),
        "gradient_norm": num(eq.gradient_norm),
        "tolerances": {
            "algebra": ALGEBRA_TOL,
            "optimum": tolerance,
            "gradient": eq.tolerances["gradient"],
            "grid_step": num(grid_step),
        },
    }


def verification_report(label: str, params: GameParams, grid_step: float = DEFAULT_GRID_STEP,
                        tolerance: float = OPTIMUM_TOL) -> dict:
    constraints = constraint_report(params)
    classical = classical_section(params)
    notes = list(classical["notes"])
    quantum = None
    if not constraints.fairness_ok:
        notes.append("fairness residual is nonzero: quantum payoffs differ between players, quantum section omitted")
    elif params.bell_coefficient >= 0:
        notes.append("2*s1 - s2 - s3 is not negative: no Tsirelson-saturating fair optimum")
    else:
        quantum = quantum_section(params, grid_step, tolerance)
    return {
        "label": label,
        "params": {k: _frac(v) for k, v in params.as_dict().items()},
        "constraints": constraints_section(constraints),
        "classical": classical,
        "quantum": quantum,
        "verdicts": {
            "is_conflicting_interest": constraints.all_pass and classical["has_unfair_equilibrium"],
            "quantum_restores_fairness": quantum is not None and classical["has_unfair_equilibrium"],
        },
        "notes": notes,
    }


def _yes(flag: bool) -> str:
    return "ok" if flag else "FAIL"


def render_constraints(section: dict) -> list[str]:
    lines = [f"symmetry            {_yes(section['symmetry_ok'])}"]
    bad = [i + 1 for i, r in enumerate(section["bell_coupling_residuals"]) if r != "0"]
    lines.append(f"bell coupling       {_yes(section['bell_coupling_ok'])}"
                 + (f" (identities {bad} nonzero)" if bad else ""))
    for i, v in enumerate(section["conflict_inequalities"], 1):
        tag = "strict" if v["strict"] else ("FAIL boundary" if v["boundary"] else "FAIL")
        lines.append(f"  conflict {i}: {v['label']:<34} margin {v['margin']:>7}  {tag}")
    lines.append(f"conflict            {_yes(section['conflict_ok'])}")
    lines.append(f"fairness residual   {section['fairness_residual']}")
    return lines


def render_classical(section: dict) -> list[str]:
    lines = ["pure equilibria (index f_A f_B : F_A, F_B):"]
    for e in section["equilibria"]:
        flags = []
        flags.append("fair" if e["fair"] else "unfair")
        if e["saturates_bell_bound"]:
            flags.append("saturates bound")
        if e["degenerate"]:
            flags.append("degenerate")
        lines.append(f"  {e['index']:>2} {e['f_A']} {e['f_B']} : {e['payoffs'][0]}, {e['payoffs'][1]}  ({', '.join(flags)})")
    lines.append(f"F_A + F_B = {section['affine']['alpha']} * S + {section['affine']['beta']}")
    lines.append(f"classical bound     {section['bound']}")
    lines.extend(f"note: {n}" for n in section["notes"])
    return lines


def render_quantum(section: dict) -> list[str]:
    phis = ", ".join(f"{p:.15g}" for p in section["angles"]["phi"])
    return [
        f"optimal phi         [{phis}] (theta = pi/2)",
        f"family indices      {section['family_indices']}",
        f"fair payoff         {section['fair_payoff']:.15g} = {section['fair_payoff_exact']}",
        f"total payoff        {section['total']:.15g} = {section['total_exact']}",
        f"CHSH                {section['chsh']:.15g}",
        f"analytic mismatch   {section['analytic_check']['fair_payoff_error']:.3g}",
        f"advantage           {section['advantage_over_classical']:.15g} = {section['advantage_exact']}",
    ]


def render_report(report: dict) -> str:
    lines = [f"game: {report['label'] or '(unlabelled)'}", "", "[constraints]"]
    lines += render_constraints(report["constraints"])
    lines += ["", "[classical]"] + render_classical(report["classical"])
    if report["quantum"] is not None:
        lines += ["", "[quantum]"] + render_quantum(report["quantum"])
    lines += ["", "[verdicts]"]
    lines += [f"{k:<26}{v}" for k, v in report["verdicts"].items()]
    extra = [n for n in report["notes"] if n not in report["classical"]["notes"]]
    lines += [f"note: {n}" for n in extra]
    return "\n".join(lines) + "\n"
