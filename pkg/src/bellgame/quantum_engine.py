"""Quantum counterpart: qubit measurements on a shared two-qubit advisor state.

Each player measures ``n.sigma`` with a Bloch vector chosen by their type. The
eight angles are ordered ``(theta1, phi1)`` Alice type 0, ``(theta2, phi2)``
Alice type 1, ``(theta3, phi3)`` Bob type 0, ``(theta4, phi4)`` Bob type 1.
Outcome ``y = 1`` is the ``+1`` eigenvalue.

On the Bell state with all ``theta = pi/2`` the correlator is
``<A_i B_j> = cos(phi_A_i + phi_B_j)`` and both payoffs are affine in the CHSH
combination, so the fair optimum sits on the Tsirelson bound.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import minimize

from bellgame.classical_engine import ConditionalDistribution, bell_values, classical_payoffs
from bellgame.errors import (
    BoundViolated,
    ConstraintViolated,
    InvalidIndices,
    InvalidPhase,
    SignAssumptionViolated,
)
from bellgame.game_core import (
    ACTION_PROFILES,
    TYPE_PRIOR,
    TYPE_PROFILES,
    ActionProfile,
    GameParams,
    TypeProfile,
    UtilityTable,
    check_fairness_constraint,
)
from bellgame.surd import QuadraticSurd

TWO_PI = 2.0 * math.pi
TSIRELSON = 2.0 * math.sqrt(2.0)

ALGEBRA_TOL = 1e-12
OPTIMUM_TOL = 1e-9
GRADIENT_TOL = 1e-10
DEFAULT_GRID_STEP = math.pi / 32

IDENTITY = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

# (Alice angle slot, Bob angle slot, sign) of the four cosines in CHSH.
_CHSH_TERMS = ((0, 2, 1.0), (1, 2, 1.0), (0, 3, 1.0), (1, 3, -1.0))


def _canonical(theta: float, phi: float) -> tuple[float, float]:
    theta = math.fmod(theta, TWO_PI)
    if theta < 0:
        theta += TWO_PI
    if theta > math.pi:
        # Same Bloch vector: reflect through the pole, turn the azimuth by pi.
        theta, phi = TWO_PI - theta, phi + math.pi
    phi = math.fmod(phi, TWO_PI)
    if phi < 0:
        phi += TWO_PI
    return theta, phi


@dataclass(frozen=True)
class MeasurementAngles:
    thetas: tuple[float, float, float, float]
    phis: tuple[float, float, float, float]

    def __post_init__(self):
        if len(self.thetas) != 4 or len(self.phis) != 4:
            raise ValueError("need four theta and four phi angles")
        pairs = [_canonical(float(t), float(p)) for t, p in zip(self.thetas, self.phis)]
        object.__setattr__(self, "thetas", tuple(t for t, _ in pairs))
        object.__setattr__(self, "phis", tuple(p for _, p in pairs))

    @classmethod
    def equatorial(cls, phis: Sequence[float]) -> "MeasurementAngles":
        return cls((math.pi / 2,) * 4, tuple(phis))

    def alice(self, x: int) -> tuple[float, float]:
        return self.thetas[x], self.phis[x]

    def bob(self, x: int) -> tuple[float, float]:
        return self.thetas[2 + x], self.phis[2 + x]


@dataclass(frozen=True, eq=False)
class Observable:
    m: np.ndarray

    def is_valid(self, tol: float = ALGEBRA_TOL) -> bool:
        if not np.allclose(self.m, self.m.conj().T, atol=tol, rtol=0):
            return False
        eig = np.sort(np.linalg.eigvalsh(self.m))
        return bool(np.allclose(eig, [-1.0, 1.0], atol=tol, rtol=0))


@dataclass(frozen=True, eq=False)
class ProjectorPair:
    """Spectral projectors: ``p0`` onto outcome -1, ``p1`` onto outcome +1."""

    p0: np.ndarray
    p1: np.ndarray

    def is_valid(self, tol: float = ALGEBRA_TOL) -> bool:
        def close(a, b):
            return np.allclose(a, b, atol=tol, rtol=0)

        return (
            close(self.p0 @ self.p0, self.p0)
            and close(self.p1 @ self.p1, self.p1)
            and close(self.p0, self.p0.conj().T)
            and close(self.p1, self.p1.conj().T)
            and close(self.p0 + self.p1, IDENTITY)
            and close(self.p0 @ self.p1, np.zeros((2, 2)))
        )

    def __getitem__(self, outcome: int) -> np.ndarray:
        return (self.p0, self.p1)[outcome]


@dataclass(frozen=True, eq=False)
class AdvisorState:
    rho: np.ndarray

    @classmethod
    def from_vector(cls, psi: Sequence[complex]) -> "AdvisorState":
        v = np.asarray(psi, dtype=complex)
        v = v / np.linalg.norm(v)
        return cls(np.outer(v, v.conj()))

    def is_valid(self, tol: float = ALGEBRA_TOL) -> bool:
        rho = self.rho
        if rho.shape != (4, 4) or not np.allclose(rho, rho.conj().T, atol=tol, rtol=0):
            return False
        if abs(np.trace(rho) - 1) > tol:
            return False
        return bool(np.linalg.eigvalsh(rho).min() >= -tol)


def bell_state() -> AdvisorState:
    """``(|00> + |11>)/sqrt(2)``."""
    return AdvisorState.from_vector([1, 0, 0, 1])


def observable_from_angles(theta: float, phi: float) -> Observable:
    m = np.array(
        [
            [math.cos(theta), math.sin(theta) * np.exp(-1j * phi)],
            [math.sin(theta) * np.exp(1j * phi), -math.cos(theta)],
        ],
        dtype=complex,
    )
    return Observable(m)


def projectors(o: Observable) -> ProjectorPair:
    return ProjectorPair(p0=(IDENTITY - o.m) / 2, p1=(IDENTITY + o.m) / 2)


def _projector_pairs(angles: MeasurementAngles) -> tuple[list[ProjectorPair], list[ProjectorPair]]:
    alice = [projectors(observable_from_angles(*angles.alice(x))) for x in (0, 1)]
    bob = [projectors(observable_from_angles(*angles.bob(x))) for x in (0, 1)]
    return alice, bob


def outcome_probability(
    state: AdvisorState, angles: MeasurementAngles, x: TypeProfile, y: ActionProfile
) -> float:
    """``Tr(rho (A_{x_A}^{y_A} (x) B_{x_B}^{y_B}))``."""
    alice, bob = _projector_pairs(angles)
    op = np.kron(alice[x[0]][y[0]], bob[x[1]][y[1]])
    return float(np.trace(state.rho @ op).real)


def quantum_distribution(state: AdvisorState, angles: MeasurementAngles) -> ConditionalDistribution:
    alice, bob = _projector_pairs(angles)
    rows = []
    for x in TYPE_PROFILES:
        row = []
        for y in ACTION_PROFILES:
            op = np.kron(alice[x.x_A][y.y_A], bob[x.x_B][y.y_B])
            row.append(float(np.trace(state.rho @ op).real))
        rows.append(tuple(row))
    return ConditionalDistribution(tuple(rows))


def quantum_payoffs_trace(
    table: UtilityTable, state: AdvisorState, angles: MeasurementAngles
) -> tuple[float, float]:
    """Brute-force payoffs: one trace per (type, action) cell, weighted by the prior."""
    prior = float(TYPE_PRIOR)
    f_a = f_b = 0.0
    for x in TYPE_PROFILES:
        for y in ACTION_PROFILES:
            p = outcome_probability(state, angles, x, y)
            u_a, u_b = table.cell(x, y)
            f_a += prior * p * float(u_a)
            f_b += prior * p * float(u_b)
    return f_a, f_b


def _cosines(phis: Sequence[float]) -> tuple[float, float, float, float]:
    p1, p2, p3, p4 = phis
    return math.cos(p1 + p3), math.cos(p1 + p4), math.cos(p2 + p3), math.cos(p2 + p4)


def quantum_payoffs_from_table(table: UtilityTable, phis: Sequence[float]) -> tuple[float, float]:
    """Equatorial Bell-state payoffs for an arbitrary table, before any parameter reduction."""
    c13, c14, c23, c24 = _cosines(phis)

    def one(u):
        u = [float(v) for v in u]
        return (
            c13 * (u[0] - u[1] - u[2] + u[3])
            + c14 * (u[4] - u[5] - u[6] + u[7])
            + c23 * (u[8] - u[9] - u[10] + u[11])
            + c24 * (u[12] - u[13] - u[14] + u[15])
            + sum(u)
        ) / 16

    return one(table.s), one(table.t)


def quantum_payoffs_closed(params: GameParams, phis: Sequence[float]) -> tuple[float, float]:
    """Equatorial Bell-state payoffs in terms of the free parameters."""
    p = params
    c13, c14, c23, c24 = _cosines(phis)
    k = float(2 * p.s1 - p.s2 - p.s3)
    m = float(p.s5 - p.s6 - p.s7 + p.s8)
    const = 2 * float(p.s2 + p.s3 + 2 * p.s5 + 2 * p.s9 + 2 * p.s13)
    f_a = ((c13 + 2 * c23 - c24) * k + (c14 - c23) * m + const) / 16
    f_b = ((c13 + 2 * c14 - c24) * k + (c23 - c14) * m + const) / 16
    return f_a, f_b


def chsh_from_phis(phis: Sequence[float]) -> float:
    """CHSH value of the equatorial Bell-state strategy."""
    c13, c14, c23, c24 = _cosines(phis)
    return c13 + c23 + c14 - c24


def _require_fair(params: GameParams) -> None:
    residual = check_fairness_constraint(params)
    if residual != 0:
        raise ConstraintViolated(f"fairness residual is {residual}; payoffs differ between players")


def fair_payoff(params: GameParams, phis: Sequence[float]) -> float:
    """Common payoff ``F = F_A = F_B``; requires the fairness constraint."""
    _require_fair(params)
    p = params
    k = float(2 * p.s1 - p.s2 - p.s3)
    const = float(2 * p.s2 + 2 * p.s3 + 4 * p.s5 + 4 * p.s9 + 4 * p.s13)
    return (k * chsh_from_phis(phis) + const) / 16


def fair_payoff_gradient(params: GameParams, phis: Sequence[float]) -> np.ndarray:
    _require_fair(params)
    w = float(2 * params.s1 - params.s2 - params.s3) / 16
    grad = np.zeros(4)
    for i, j, sign in _CHSH_TERMS:
        g = -w * sign * math.sin(phis[i] + phis[j])
        grad[i] += g
        grad[j] += g
    return grad


def _fair_payoff_hessian(weight: float, phis: Sequence[float]) -> np.ndarray:
    hess = np.zeros((4, 4))
    for i, j, sign in _CHSH_TERMS:
        h = -weight * sign * math.cos(phis[i] + phis[j])
        hess[i, i] += h
        hess[j, j] += h
        hess[i, j] += h
        hess[j, i] += h
    return hess


def phase_shift(angles: MeasurementAngles, chi1: float, chi2: float) -> MeasurementAngles:
    """Rotate Alice's azimuths by ``chi1`` and Bob's by ``chi2``; needs ``chi1 + chi2 = 2*pi*n``."""
    turns = (chi1 + chi2) / TWO_PI
    if abs(turns - round(turns)) > OPTIMUM_TOL:
        raise InvalidPhase(f"chi1 + chi2 = {chi1 + chi2!r} is not a multiple of 2*pi")
    p1, p2, p3, p4 = angles.phis
    return MeasurementAngles(angles.thetas, (p1 + chi1, p2 + chi1, p3 + chi2, p4 + chi2))


def family_indices_valid(n: int, r: int, s: int) -> bool:
    return (n + 3 * r - s) % 4 in (0, 1)


def equilibrium_family(n: int, r: int, s: int, reading: str = "corrected") -> tuple[float, float, float, float]:
    """Azimuths of the fair optimum labelled by integers ``(n, r, s)``, gauge ``phi1 = 0``.

    The three defining sums are ``phi1 + phi3``, ``phi2 + phi3`` and ``phi1 + phi4``
    (``reading="corrected"``). ``reading="printed"`` uses ``phi1 + phi2`` for the
    first sum instead; those angles do not reach the optimum and are kept only
    so the two readings can be compared.
    """
    if not family_indices_valid(n, r, s):
        raise InvalidIndices(f"n + 3r - s = {n + 3 * r - s} is neither 0 nor 1 mod 4")
    first = math.pi / 4 + (3 * n + r + s + 2) * math.pi / 2
    second = -math.pi / 4 + (n - r + 3 * s + 2) * math.pi / 2
    third = -math.pi / 4 + (n + 3 * r - s + 2) * math.pi / 2
    p1 = 0.0
    if reading == "corrected":
        p3 = first - p1
        p2 = second - p3
    elif reading == "printed":
        p2 = first - p1
        p3 = second - p2
    else:
        raise ValueError(f"unknown reading {reading!r}")
    p4 = third - p1
    return tuple(p % TWO_PI for p in (p1, p2, p3, p4))


def analytic_fair_payoff(params: GameParams) -> QuadraticSurd:
    """Per-player payoff at the Tsirelson-saturating optimum."""
    p = params
    return QuadraticSurd(
        Fraction(p.s2 + p.s3 + 2 * (p.s5 + p.s9 + p.s13), 8),
        Fraction(p.s2 + p.s3 - 2 * p.s1, 8),
    )


def analytic_total_payoff(params: GameParams) -> QuadraticSurd:
    return analytic_fair_payoff(params) * 2


def analytic_quantum_advantage(params: GameParams) -> QuadraticSurd:
    """``(sqrt(2) - 1)(s2 + s3 - 2*s1)/4``: quantum total minus the classical bound."""
    gap = Fraction(params.s2 + params.s3 - 2 * params.s1, 4)
    return QuadraticSurd(-gap, gap)


def tsirelson_check(state: AdvisorState, angles: MeasurementAngles) -> float:
    value = bell_values(quantum_distribution(state, angles))[0]
    if abs(value) > TSIRELSON + OPTIMUM_TOL:
        raise BoundViolated(f"|CHSH| = {abs(value)!r} exceeds 2*sqrt(2)")
    return value


@dataclass(frozen=True)
class QuantumEquilibrium:
    phis: tuple[float, float, float, float]
    payoff_per_player: float
    chsh_value: float
    family_indices: Optional[tuple[int, int, int]] = None
    gradient_norm: float = 0.0
    tolerances: dict = field(default_factory=dict)


def _match_family(phis: Sequence[float], tol: float = 1e-6) -> Optional[tuple[int, int, int]]:
    # Family angles only depend on the indices mod 4.
    for n, r, s in itertools.product(range(4), repeat=3):
        if not family_indices_valid(n, r, s):
            continue
        cand = equilibrium_family(n, r, s)
        if all(abs(math.remainder(a - b, TWO_PI)) < tol for a, b in zip(cand, phis)):
            return n, r, s
    return None


def maximize_fair_payoff(params: GameParams, grid_step: float = DEFAULT_GRID_STEP) -> QuantumEquilibrium:
    """Maximize the common payoff over equatorial measurements.

    The gauge freedom of the Bell state is fixed by ``phi1 = 0``. A grid over
    the remaining three azimuths picks the start point and a trust-region
    Newton step with the exact Hessian polishes it.
    """
    _require_fair(params)
    weight = float(2 * params.s1 - params.s2 - params.s3) / 16
    if weight >= 0:
        raise SignAssumptionViolated("2*s1 - s2 - s3 must be negative for the fair optimum")

    points = int(round(TWO_PI / grid_step))
    axis = np.arange(points) * (TWO_PI / points)
    p2, p3, p4 = np.meshgrid(axis, axis, axis, indexing="ij")
    # phi1 = 0, so cos(phi1 + phi3) = cos(phi3) etc.
    chsh = np.cos(p3) + np.cos(p2 + p3) + np.cos(p4) - np.cos(p2 + p4)
    best = np.unravel_index(np.argmax(weight * chsh), chsh.shape)
    start = np.array([axis[best[0]], axis[best[1]], axis[best[2]]])

    def full(free):
        return np.concatenate(([0.0], free))

    def neg_payoff(free):
        return -fair_payoff(params, full(free))

    def neg_grad(free):
        return -fair_payoff_gradient(params, full(free))[1:]

    def neg_hess(free):
        return -_fair_payoff_hessian(weight, full(free))[1:, 1:]

    res = minimize(neg_payoff, start, jac=neg_grad, hess=neg_hess, method="trust-exact",
                   options={"gtol": GRADIENT_TOL / 10})
    phis = tuple(float(v) % TWO_PI for v in full(res.x))
    grad_norm = float(np.linalg.norm(fair_payoff_gradient(params, phis)))
    chsh_value = tsirelson_check(bell_state(), MeasurementAngles.equatorial(phis))
    return QuantumEquilibrium(
        phis=phis,
        payoff_per_player=fair_payoff(params, phis),
        chsh_value=chsh_value,
        family_indices=_match_family(phis),
        gradient_norm=grad_norm,
        tolerances={
            "algebra": ALGEBRA_TOL,
            "optimum": OPTIMUM_TOL,
            "gradient": GRADIENT_TOL,
            "grid_step": grid_step,
        },
    )


def distribution_payoffs(table: UtilityTable, state: AdvisorState, angles: MeasurementAngles):
    """Payoffs through the classical summation applied to the quantum distribution."""
    return classical_payoffs(table, quantum_distribution(state, angles))

