"""Modelo de canales, probabilidades de fallo y simulación de ataques."""

from .channel import (
    ChannelModel,
    StirlingParams,
    log_p_failure_exact,
    p_failure_exact,
    p_failure_stirling,
    stirling_table,
)
from .protocol import Decision, DecisionKind, MessageCopy, receive_and_decide
from .simulation import (
    ADVERSARY_PAYLOAD,
    ORIGINAL_PAYLOAD,
    FaultReport,
    Outcome,
    TrialOutcome,
    monte_carlo,
    network_simulate,
    route_crossings,
    simulate_trial,
    sweep_grid,
)

__all__ = [
    "ADVERSARY_PAYLOAD",
    "ORIGINAL_PAYLOAD",
    "ChannelModel",
    "Decision",
    "DecisionKind",
    "FaultReport",
    "MessageCopy",
    "Outcome",
    "StirlingParams",
    "TrialOutcome",
    "log_p_failure_exact",
    "monte_carlo",
    "network_simulate",
    "p_failure_exact",
    "p_failure_stirling",
    "receive_and_decide",
    "route_crossings",
    "simulate_trial",
    "stirling_table",
    "sweep_grid",
]
