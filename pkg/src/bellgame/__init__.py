"""Symmetric Bayesian games with conflicting interest and their Bell-state quantum counterparts."""

from bellgame.classical_engine import (
    ConditionalDistribution,
    DeterministicStrategy,
    LocalHiddenVariableModel,
    find_pure_nash,
)
from bellgame.game_core import PAPPA_PARAMS, GameParams, UtilityTable, build_utility_table
from bellgame.quantum_engine import maximize_fair_payoff

__version__ = "0.1.0"
