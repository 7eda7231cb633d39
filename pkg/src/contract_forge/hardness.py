"""MAC instances built from NAE3SAT formulas, plus witness payments.

Index layout (fixed for reproducible fixtures):

* agents: ``A_i`` for every variable, then ``T_{i,j}^b`` ordered by
  ``(i, j, b)``, then ``V_{j,k}`` ordered by ``(j, k)``;
* actions (1-based, 0 is the zero action): ``variable_i^b`` ordered by
  ``(i, b)``, then ``clause_{j,k}`` ordered by ``(j, k)``.

Names use 1-based variable, clause and gadget numbers.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InvalidFormula, NotNaeSatisfying
from .model import DaInstance, PaymentProfile

# Each gadget row lists (literal position in the clause, negated?) for its
# three associated agents; cost 1 for those agents, 0 for V_{j,k}.
GADGET_ROWS = (
    ((0, False), (1, False), (2, True)),
    ((0, False), (2, False), (1, True)),
    ((1, False), (2, False), (0, True)),
    ((2, False), (0, True), (1, True)),
    ((1, False), (0, True), (2, True)),
    ((0, False), (1, True), (2, True)),
)


@dataclass(frozen=True)
class Nae3SatInstance:
    """Clauses hold three ``(variable, bit)`` literals; variables are 0-based
    and bit 1 is the positive literal."""

    num_vars: int
    clauses: tuple[tuple[tuple[int, int], ...], ...]

    def __post_init__(self):
        clauses = tuple(tuple((int(v), int(b)) for v, b in c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        if self.num_vars < 1:
            raise InvalidFormula("need at least one variable")
        for c in clauses:
            if len(c) != 3:
                raise InvalidFormula(f"clause {c} does not have exactly 3 literals")
            if len({v for v, _ in c}) != 3:
                raise InvalidFormula(f"clause {c} repeats a variable")
            for v, b in c:
                if not 0 <= v < self.num_vars or b not in (0, 1):
                    raise InvalidFormula(f"bad literal {(v, b)}")


@dataclass(frozen=True)
class HardnessBundle:
    formula: Nae3SatInstance
    instance: DaInstance
    r: Fraction
    delta: Fraction
    rho1: Fraction
    rho2: Fraction
    agent_names: tuple[str, ...]
    action_names: tuple[str, ...]  # index 0 is "zero"


def default_params(n: int, m: int) -> tuple[int, int, int]:
    return 7, 13 * m * n + 8, 13 * m * n + 11


def params_valid(n: int, m: int, delta, rho1, rho2) -> tuple[bool, bool, bool]:
    """The three separation inequalities the gadget analysis relies on."""
    return (
        rho1 - delta > m * ((2 * n - 3) * (rho2 - rho1) + n * delta + 4),
        delta > 3 * (rho2 - rho1 - 1),
        rho2 - rho1 > 2,
    )


def target_payoff(n: int, m: int, delta, rho1, rho2) -> Fraction:
    return Fraction(
        n * (rho1 - delta)
        + m * (6 * rho2 - 1)
        + m * (n * (rho1 - delta) + (n - 3) * rho1 + 3 * (rho2 - 1))
    )


def agent_a(formula: Nae3SatInstance, i: int) -> int:
    return i


def agent_t(formula: Nae3SatInstance, i: int, j: int, b: int) -> int:
    n, m = formula.num_vars, len(formula.clauses)
    return n + (i * m + j) * 2 + b


def agent_v(formula: Nae3SatInstance, j: int, k: int) -> int:
    n, m = formula.num_vars, len(formula.clauses)
    return n + 2 * n * m + 6 * j + k


def action_variable(formula: Nae3SatInstance, i: int, b: int) -> int:
    return 1 + 2 * i + b


def action_clause(formula: Nae3SatInstance, j: int, k: int) -> int:
    return 1 + 2 * formula.num_vars + 6 * j + k


def associated_literals(formula: Nae3SatInstance, j: int, k: int) -> tuple[tuple[int, int], ...]:
    clause = formula.clauses[j]
    return tuple(
        (clause[pos][0], 1 - clause[pos][1] if neg else clause[pos][1])
        for pos, neg in GADGET_ROWS[k]
    )


def generate_mac(formula: Nae3SatInstance, delta=None, rho1=None, rho2=None) -> HardnessBundle:
    n, m = formula.num_vars, len(formula.clauses)
    d0, r10, r20 = default_params(n, m)
    delta = Fraction(d0 if delta is None else delta)
    rho1 = Fraction(r10 if rho1 is None else rho1)
    rho2 = Fraction(r20 if rho2 is None else rho2)
    if not all(params_valid(n, m, delta, rho1, rho2)):
        raise InvalidFormula("parameters violate the separation inequalities")

    num_agents = n + 2 * n * m + 6 * m
    rewards = [rho1] * (2 * n) + [rho2] * (6 * m)
    costs = [[r + 1 for r in rewards] for _ in range(num_agents)]

    def put(agent, action, value):
        costs[agent][action - 1] = Fraction(value)

    for i in range(n):
        for b in (0, 1):
            put(agent_a(formula, i), action_variable(formula, i, b), delta)
            for j in range(m):
                put(agent_t(formula, i, j, b), action_variable(formula, i, b), 0)
    for j in range(m):
        for k in range(6):
            act = action_clause(formula, j, k)
            put(agent_v(formula, j, k), act, 0)
            for v, b in associated_literals(formula, j, k):
                put(agent_t(formula, v, j, b), act, 1)

    agent_names = [f"A_{i + 1}" for i in range(n)]
    agent_names += [f"T_{{{i + 1},{j + 1}}}^{b}" for i in range(n) for j in range(m) for b in (0, 1)]
    agent_names += [f"V_{{{j + 1},{k + 1}}}" for j in range(m) for k in range(6)]
    action_names = ["zero"]
    action_names += [f"variable_{i + 1}^{b}" for i in range(n) for b in (0, 1)]
    action_names += [f"clause_{{{j + 1},{k + 1}}}" for j in range(m) for k in range(6)]

    instance = DaInstance(tuple(rewards), tuple(tuple(row) for row in costs))
    return HardnessBundle(
        formula,
        instance,
        target_payoff(n, m, delta, rho1, rho2),
        delta,
        rho1,
        rho2,
        tuple(agent_names),
        tuple(action_names),
    )


def literal_value(assignment: Sequence[bool], var: int, bit: int) -> bool:
    return bool(assignment[var]) == bool(bit)


def check_nae(formula: Nae3SatInstance, assignment: Sequence[bool]) -> bool:
    if len(assignment) != formula.num_vars:
        raise ValueError("assignment length does not match the formula")
    for clause in formula.clauses:
        vals = {literal_value(assignment, v, b) for v, b in clause}
        if len(vals) != 2:
            return False
    return True


def witness_payments(bundle: HardnessBundle, assignment: Sequence[bool]) -> PaymentProfile:
    """Payments reaching exactly ``bundle.r`` from an NAE-satisfying assignment.

    ``variable_i^b`` pays 0 when literal ``x_i^b`` is true and delta otherwise;
    ``clause_{j,k}`` pays 1 when all three associated literals are true.
    """
    formula = bundle.formula
    if not check_nae(formula, assignment):
        raise NotNaeSatisfying("assignment is not NAE-satisfying")
    payments = [Fraction(0)] * bundle.instance.m
    for i in range(formula.num_vars):
        for b in (0, 1):
            pay = 0 if literal_value(assignment, i, b) else bundle.delta
            payments[action_variable(formula, i, b) - 1] = Fraction(pay)
    for j in range(len(formula.clauses)):
        for k in range(6):
            lits = associated_literals(formula, j, k)
            if all(literal_value(assignment, v, b) for v, b in lits):
                payments[action_clause(formula, j, k) - 1] = Fraction(1)
    return PaymentProfile(tuple(payments))


# -- DIMACS-like text format ------------------------------------------------


def parse_dimacs(text: str) -> Nae3SatInstance:
    """Parse ``p nae3sat <vars> <clauses>`` followed by one clause per line as
    three signed 1-based integers (an optional trailing 0 is ignored)."""
    header = None
    clauses = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "nae3sat":
                raise InvalidFormula(f"bad header: {line!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError as exc:
                raise InvalidFormula(f"bad header: {line!r}") from exc
            continue
        if header is None:
            raise InvalidFormula("clause before header")
        try:
            lits = [int(tok) for tok in line.split()]
        except ValueError as exc:
            raise InvalidFormula(f"bad clause line: {line!r}") from exc
        if lits and lits[-1] == 0:
            lits = lits[:-1]
        if len(lits) != 3 or 0 in lits:
            raise InvalidFormula(f"clause must have three non-zero literals: {line!r}")
        clauses.append(tuple((abs(x) - 1, 1 if x > 0 else 0) for x in lits))
    if header is None:
        raise InvalidFormula("missing header")
    if len(clauses) != header[1]:
        raise InvalidFormula(f"header announces {header[1]} clauses, found {len(clauses)}")
    return Nae3SatInstance(header[0], tuple(clauses))


def format_dimacs(formula: Nae3SatInstance) -> str:
    lines = [f"p nae3sat {formula.num_vars} {len(formula.clauses)}"]
    for clause in formula.clauses:
        lines.append(" ".join(str((v + 1) if b else -(v + 1)) for v, b in clause))
    return "\n".join(lines) + "\n"
