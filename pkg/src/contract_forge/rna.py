"""Real-number actions: each agent produces a reward ``x`` in ``[0, 1]``.

Costs and payments are piecewise-affine functions with explicit endpoint
flags, so every optimization here is an exact finite enumeration over the
common refinement of the breakpoints.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from .errors import InvalidCost, InvalidPayment, MalformedInput, MisalignedStep
from .model import DaInstance, PaymentProfile
from .rational import format_rational, parse_rational

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class Piece:
    lo: Fraction
    hi: Fraction
    lo_closed: bool
    hi_closed: bool
    a: Fraction  # value is a + b*x
    b: Fraction

    def __post_init__(self):
        for name in ("lo", "hi", "a", "b"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    def contains(self, x: Fraction) -> bool:
        if x < self.lo or x > self.hi:
            return False
        if x == self.lo and not self.lo_closed:
            return False
        if x == self.hi and not self.hi_closed:
            return False
        return True

    def value(self, x: Fraction) -> Fraction:
        return self.a + self.b * x


@dataclass(frozen=True)
class Piecewise:
    """A function on ``[0, 1]`` given by pieces that partition the interval.

    ``at_zero`` overrides the value at ``x = 0``; it is required when the first
    piece is open at 0.
    """

    pieces: tuple[Piece, ...]
    at_zero: Fraction | None = None

    def __post_init__(self):
        pieces = tuple(self.pieces)
        object.__setattr__(self, "pieces", pieces)
        if self.at_zero is not None:
            object.__setattr__(self, "at_zero", Fraction(self.at_zero))
        if not pieces:
            raise InvalidCost("no pieces")
        for p in pieces:
            if p.lo > p.hi or (p.lo == p.hi and not (p.lo_closed and p.hi_closed)):
                raise InvalidCost(f"empty piece {p}")
        if pieces[0].lo != 0:
            raise InvalidCost("pieces must start at 0")
        if not pieces[0].lo_closed and self.at_zero is None:
            raise InvalidCost("value at 0 is undefined")
        last = pieces[-1]
        if last.hi != 1 or not last.hi_closed:
            raise InvalidCost("pieces must end at 1 with a closed endpoint")
        for p, q in zip(pieces, pieces[1:]):
            if p.hi != q.lo or p.hi_closed == q.lo_closed:
                raise InvalidCost(f"pieces {p} and {q} leave a gap or overlap")

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        if x == 0 and self.at_zero is not None:
            return self.at_zero
        for p in self.pieces:
            if p.contains(x):
                return p.value(x)
        raise ValueError(f"{x} outside [0, 1]")

    def breakpoints(self) -> set[Fraction]:
        pts = {ZERO, ONE}
        for p in self.pieces:
            pts.add(p.lo)
            pts.add(p.hi)
        return pts

    def affine_on(self, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
        """(a, b) of the piece covering the open interval ``(lo, hi)``, which
        must not contain a breakpoint."""
        mid = (lo + hi) / 2
        for p in self.pieces:
            if p.contains(mid):
                return p.a, p.b
        raise ValueError(f"{mid} outside [0, 1]")


class PiecewiseCost(Piecewise):
    """Agent cost: zero at 0, non-negative, and ``x - c(x)`` attains its max."""

    def __post_init__(self):
        super().__post_init__()
        if self(ZERO) != 0:
            raise InvalidCost("cost at 0 must be 0")
        for p in self.pieces:
            if p.value(p.lo) < 0 or p.value(p.hi) < 0:
                raise InvalidCost(f"negative cost on {p}")
        if self.at_zero is not None and self.at_zero < 0:
            raise InvalidCost("negative cost at 0")
        # raises InvalidCost when the surplus maximum is not attained
        _lex_max([self], [(-ONE, ONE)], prefer_large=True, error=InvalidCost)


def linear_cost(slope, intercept=0) -> PiecewiseCost:
    """``c(x) = slope*x`` on [0, 1], or ``intercept + slope*x`` on (0, 1]."""
    slope, intercept = Fraction(slope), Fraction(intercept)
    if intercept == 0:
        return PiecewiseCost((Piece(ZERO, ONE, True, True, ZERO, slope),))
    return PiecewiseCost((Piece(ZERO, ONE, False, True, intercept, slope),), at_zero=ZERO)


def _lex_max(funcs: Sequence[Piecewise], objectives, prefer_large: bool, error=InvalidPayment) -> Fraction:
    """Maximize objectives lexicographically over ``x`` in ``[0, 1]``.

    Each objective is a coefficient tuple ``(k_1, ..., k_F, k_x)`` meaning
    ``sum k_f * funcs[f](x) + k_x * x``. Remaining ties go to the smallest
    ``x`` (or largest with ``prefer_large``).

    Candidates are all breakpoints plus one interior point of every open
    stretch on which the first objective is constant. ``error`` is raised when
    the supremum of the first objective is not attained. Later objectives are
    tie-breaks only: if their supremum over the maximizers of the first is not
    attained, the best candidate is returned.
    """
    pts = sorted(set().union(*(f.breakpoints() for f in funcs)))

    def at_point(x):
        vals = [f(x) for f in funcs]
        return tuple(sum((k * v for k, v in zip(obj, vals)), ZERO) + obj[-1] * x for obj in objectives)

    best_key = None
    best_x = None

    def offer(key, x):
        nonlocal best_key, best_x
        if best_key is None or key > best_key or (
            key == best_key and ((x > best_x) if prefer_large else (x < best_x))
        ):
            best_key, best_x = key, x

    for x in pts:
        offer(at_point(x), x)

    unattained = []
    primary = objectives[0]
    for lo, hi in zip(pts, pts[1:]):
        a = b = ZERO
        for k, f in zip(primary, funcs):
            fa, fb = f.affine_on(lo, hi)
            a += k * fa
            b += k * fb
        b += primary[-1]
        if b == 0:
            mid = (lo + hi) / 2
            offer(at_point(mid), mid)
        else:
            unattained.append(a + b * (hi if b > 0 else lo))
    if any(sup > best_key[0] for sup in unattained):
        raise error("maximum is not attained on [0, 1]")
    return best_x


# -- payments ---------------------------------------------------------------


@dataclass(frozen=True)
class Threshold:
    """Pays ``max(0, x - y)``."""

    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "y", Fraction(self.y))
        if not 0 <= self.y <= 1:
            raise InvalidPayment("threshold must lie in [0, 1]")

    def as_piecewise(self) -> Piecewise:
        y = self.y
        if y == 1:
            return Piecewise((Piece(ZERO, ONE, True, True, ZERO, ZERO),))
        return Piecewise(
            (Piece(ZERO, y, True, True, ZERO, ZERO), Piece(y, ONE, False, True, -y, ONE))
        )

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        return x - self.y if x > self.y else ZERO


@dataclass(frozen=True)
class Step:
    """Piecewise-constant payment: ``values[j]`` on ``(his[j-1], his[j]]`` with
    ``his[-1] == 1`` and ``t(0) = 0``."""

    his: tuple[Fraction, ...]
    values: tuple[Fraction, ...]

    def __post_init__(self):
        his = tuple(Fraction(h) for h in self.his)
        values = tuple(Fraction(v) for v in self.values)
        object.__setattr__(self, "his", his)
        object.__setattr__(self, "values", values)
        if not his or len(his) != len(values):
            raise InvalidPayment("step needs matching, non-empty his and values")
        if his[-1] != 1 or his[0] <= 0 or any(a >= b for a, b in zip(his, his[1:])):
            raise InvalidPayment("step breakpoints must increase strictly from above 0 to 1")
        if any(v < 0 for v in values):
            raise InvalidPayment("payments must be non-negative")

    def as_piecewise(self) -> Piecewise:
        pieces = []
        lo = ZERO
        for hi, v in zip(self.his, self.values):
            pieces.append(Piece(lo, hi, False, True, v, ZERO))
            lo = hi
        return Piecewise(tuple(pieces), at_zero=ZERO)

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        if x == 0:
            return ZERO
        for hi, v in zip(self.his, self.values):
            if x <= hi:
                return v
        raise ValueError(f"{x} outside [0, 1]")


RnaPayment = Union[Threshold, Step]


@dataclass(frozen=True)
class RnaInstance:
    costs: tuple[PiecewiseCost, ...]

    def __post_init__(self):
        object.__setattr__(self, "costs", tuple(self.costs))
        if not self.costs:
            raise ValueError("instance needs at least one agent")

    @property
    def n(self) -> int:
        return len(self.costs)


@dataclass(frozen=True)
class AgentSummary:
    x_star: Fraction
    y: Fraction


def surplus_argmax(cost: PiecewiseCost) -> AgentSummary:
    """Largest maximizer of ``x - c(x)`` and the maximum value.

    When the maximizers form a set without a largest element (a flat stretch
    open on the right), a point inside that stretch is returned.
    """
    x = _lex_max([cost], [(-ONE, ONE)], prefer_large=True, error=InvalidCost)
    return AgentSummary(x, x - cost(x))


def rna_best_response(cost: PiecewiseCost, payment: RnaPayment) -> Fraction:
    """Output level maximizing ``t(x) - c(x)``; ties favor the principal's
    ``x - t(x)``, then the smaller ``x``."""
    t = payment.as_piecewise()
    return _lex_max([t, cost], [(ONE, -ONE, ZERO), (-ONE, ZERO, ONE)], prefer_large=False)


@dataclass(frozen=True)
class RnaOutcome:
    choices: tuple[Fraction, ...]
    payoff: Fraction


def rna_simulate(instance: RnaInstance, payment: RnaPayment) -> RnaOutcome:
    choices = tuple(rna_best_response(c, payment) for c in instance.costs)
    payoff = sum((x - payment(x) for x in choices), ZERO)
    return RnaOutcome(choices, payoff)


@dataclass(frozen=True)
class ApproxContract:
    payment: Threshold
    i_star: int  # 0-based rank in ascending order of y
    agent: int  # original index of the agent at that rank
    guarantee: Fraction
    summaries: tuple[AgentSummary, ...] = field(repr=False)


def harmonic(n: int) -> Fraction:
    return sum((Fraction(1, k) for k in range(1, n + 1)), ZERO)


def approx_contract(instance: RnaInstance) -> ApproxContract:
    """Threshold contract within a factor H_n of the optimum.

    With surpluses sorted ascending, pricing at the rank-``r`` surplus keeps
    every agent at or above that rank producing at least it, so the payoff is
    at least ``(n - r) * y_(r)``; the best such rank is chosen.
    """
    summaries = tuple(surplus_argmax(c) for c in instance.costs)
    n = len(summaries)
    order = sorted(range(n), key=lambda i: (summaries[i].y, i))
    best_rank = 0
    best = None
    for r, i in enumerate(order):
        g = (n - r) * summaries[i].y
        if best is None or g > best:
            best, best_rank = g, r
    y = summaries[order[best_rank]].y
    return ApproxContract(Threshold(y), best_rank, order[best_rank], best, summaries)


# -- reduction from discrete actions ----------------------------------------


@dataclass(frozen=True)
class ReductionScale:
    M: Fraction
    z: tuple[Fraction, ...]  # z[0] = 0, ..., z[m] = 1
    scale: Fraction


def default_big_m(instance: DaInstance) -> Fraction:
    return max([*instance.rewards, *(c for row in instance.costs for c in row)]) + 1


def da_to_rna(instance: DaInstance, M=None) -> tuple[RnaInstance, ReductionScale]:
    """Step-cost RNA instance whose grid-aligned contracts mirror the DA ones.

    Action ``j`` becomes output level ``z_j = (rho_j + j*M) / scale`` with
    ``scale = rho_m + m*M``; agent costs are constant on each grid cell.
    """
    m = instance.m
    M = default_big_m(instance) if M is None else Fraction(M)
    for j in range(1, m + 1):
        if M + instance.reward(j) - instance.reward(j - 1) <= 0:
            raise ValueError("M too small: grid is not strictly increasing")
        for i in range(instance.n):
            if j > 1 and M + instance.cost(i, j) - instance.cost(i, j - 1) < 0:
                raise ValueError("M too small: step costs are not monotone")
    scale = instance.rewards[-1] + m * M
    z = (ZERO,) + tuple((instance.reward(j) + j * M) / scale for j in range(1, m + 1))
    costs = []
    for i in range(instance.n):
        pieces = tuple(
            Piece(z[j - 1], z[j], False, True, (instance.cost(i, j) + j * M) / scale, ZERO)
            for j in range(1, m + 1)
        )
        costs.append(PiecewiseCost(pieces, at_zero=ZERO))
    return RnaInstance(tuple(costs)), ReductionScale(M, z, scale)


def rna_profile_from_da(profile: PaymentProfile, scale: ReductionScale) -> Step:
    m = len(scale.z) - 1
    if len(profile.payments) != m:
        raise ValueError("profile length does not match the grid")
    values = tuple((profile.payment(j) + j * scale.M) / scale.scale for j in range(1, m + 1))
    return Step(scale.z[1:], values)


def da_profile_from_rna(payment: Step, scale: ReductionScale) -> PaymentProfile:
    """DA profile ``t_j = t(z_j)*scale - j*M``, clamped at 0."""
    z = scale.z
    m = len(z) - 1
    lo = ZERO
    for hi, v in zip(payment.his, payment.values):
        for j in range(1, m + 1):
            if z[j - 1] < hi and z[j] > lo and payment(z[j]) != v:
                raise MisalignedStep(f"payment is not constant on ({z[j - 1]}, {z[j]}]")
        lo = hi
    return PaymentProfile(
        tuple(max(ZERO, payment(z[j]) * scale.scale - j * scale.M) for j in range(1, m + 1))
    )


# -- JSON -------------------------------------------------------------------


def _flag(doc, key):
    v = doc[key]
    if not isinstance(v, bool):
        raise MalformedInput(f"{key} must be a boolean")
    return v


def cost_from_json(doc) -> PiecewiseCost:
    try:
        pieces = tuple(
            Piece(
                parse_rational(p["lo"]),
                parse_rational(p["hi"]),
                _flag(p, "lo_closed"),
                _flag(p, "hi_closed"),
                parse_rational(p["a"]),
                parse_rational(p["b"]),
            )
            for p in doc["pieces"]
        )
        at_zero = doc.get("at_zero")
        return PiecewiseCost(pieces, None if at_zero is None else parse_rational(at_zero))
    except (KeyError, TypeError, AttributeError) as exc:
        raise MalformedInput(f"bad piecewise cost: {exc}") from exc


def cost_to_json(cost: Piecewise) -> dict:
    doc = {
        "pieces": [
            {
                "lo": format_rational(p.lo),
                "hi": format_rational(p.hi),
                "lo_closed": p.lo_closed,
                "hi_closed": p.hi_closed,
                "a": format_rational(p.a),
                "b": format_rational(p.b),
            }
            for p in cost.pieces
        ]
    }
    if cost.at_zero is not None:
        doc["at_zero"] = format_rational(cost.at_zero)
    return doc


def rna_instance_from_json(doc) -> RnaInstance:
    if not isinstance(doc, dict) or not isinstance(doc.get("costs"), list):
        raise MalformedInput('RNA instance must be an object with a "costs" list')
    return RnaInstance(tuple(cost_from_json(c) for c in doc["costs"]))


def rna_instance_to_json(instance: RnaInstance) -> dict:
    return {"costs": [cost_to_json(c) for c in instance.costs]}


def payment_from_json(doc) -> RnaPayment:
    if not isinstance(doc, dict):
        raise MalformedInput("payment must be an object")
    try:
        if "threshold" in doc:
            return Threshold(parse_rational(doc["threshold"]))
        if "step" in doc:
            steps = doc["step"]
            return Step(
                tuple(parse_rational(s["hi"]) for s in steps),
                tuple(parse_rational(s["value"]) for s in steps),
            )
    except (KeyError, TypeError) as exc:
        raise MalformedInput(f"bad payment: {exc}") from exc
    raise MalformedInput('payment needs "threshold" or "step"')


def payment_to_json(payment: RnaPayment) -> dict:
    if isinstance(payment, Threshold):
        return {"threshold": format_rational(payment.y)}
    return {
        "step": [
            {"hi": format_rational(h), "value": format_rational(v)}
            for h, v in zip(payment.his, payment.values)
        ]
    }


def scale_to_json(scale: ReductionScale) -> dict:
    return {
        "M": format_rational(scale.M),
        "z": [format_rational(z) for z in scale.z],
        "scale": format_rational(scale.scale),
    }


def scale_from_json(doc) -> ReductionScale:
    try:
        return ReductionScale(
            parse_rational(doc["M"]),
            tuple(parse_rational(z) for z in doc["z"]),
            parse_rational(doc["scale"]),
        )
    except (KeyError, TypeError) as exc:
        raise MalformedInput(f"bad reduction scale: {exc}") from exc
