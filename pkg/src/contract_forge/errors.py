"""Exception types shared across the package."""


class ContractError(Exception):
    """Base class for solver errors."""


class MalformedInput(ContractError, ValueError):
    """Input document does not follow the wire format."""


class NotID(ContractError):
    """Costs do not obey increasing differences."""


class BudgetExceeded(ContractError):
    """Exhaustive search would visit more assignments than allowed."""


class Infeasible(ContractError):
    """No payment profile makes every agent weakly prefer its target."""


class InvalidCost(ContractError, ValueError):
    """Piecewise function violates its validity conditions."""


class MisalignedStep(ContractError, ValueError):
    """Step payment is not constant on the reduction grid cells."""


class InvalidFormula(ContractError, ValueError):
    """NAE3SAT formula is malformed."""


class NotNaeSatisfying(ContractError, ValueError):
    """Assignment leaves some clause with all literals equal."""


class InvalidPayment(ContractError, ValueError):
    """Payment function leaves some agent or the principal without a maximum."""
