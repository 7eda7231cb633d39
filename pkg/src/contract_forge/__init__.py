"""Optimal and approximate common contracts for heterogeneous agents."""
from .dp import IdOrdering, Solution, detect_ordering, solve, solve_dp, synthesize_payments
from .errors import BudgetExceeded, Infeasible, MalformedInput, NotID
from .kernels import BACKEND
from .model import DaInstance, Outcome, PaymentProfile, best_response, simulate
from .oracle import decide_mac, minimal_payments, oracle_solve

__all__ = [
    "BACKEND",
    "BudgetExceeded",
    "DaInstance",
    "IdOrdering",
    "Infeasible",
    "MalformedInput",
    "NotID",
    "Outcome",
    "PaymentProfile",
    "Solution",
    "best_response",
    "decide_mac",
    "detect_ordering",
    "minimal_payments",
    "oracle_solve",
    "simulate",
    "solve",
    "solve_dp",
    "synthesize_payments",
]
