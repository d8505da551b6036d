"""Multiplicity of a polynomial along a trajectory germ, and order inequalities.

The oracle reads coefficients of p(gamma(t)) one at a time, so a germ
that is expanded lazily is only solved as far as the first nonzero
coefficient.  Vanishing to every order is undecidable from finitely many
coefficients; the search stops at a cap and says so.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import LaurentPolynomial, PolyVectorField, lie_derivative
from .errors import CapExhausted, DimensionMismatch, PreconditionError, TruncationReached
from .series import Expansion, TrajectoryGerm, composed_stream

DEFAULT_CAP = 4096
DEFAULT_WORKING_ORDER = 64

EXACT = "exact"
AT_LEAST = "at_least"
ZERO_SUSPECTED = "zero_suspected"


def max_order_cap() -> int:
    """Series cap, overridable with MULTBOUND_MAX_ORDER."""
    raw = os.environ.get("MULTBOUND_MAX_ORDER")
    if raw is None:
        return DEFAULT_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise PreconditionError(f"MULTBOUND_MAX_ORDER must be an integer, got {raw!r}") from None
    if cap < 1:
        raise PreconditionError("MULTBOUND_MAX_ORDER must be >= 1")
    return cap


@dataclass(frozen=True)
class MultiplicityResult:
    """Exact(k), AtLeast(k) or ZeroSuspected(cap)."""
    kind: str
    value: int
    leading: Fraction | None = None
    violation: bool = False

    @property
    def is_exact(self) -> bool:
        return self.kind == EXACT

    @property
    def lower_bound(self) -> int:
        return self.value + 1 if self.kind == ZERO_SUSPECTED else self.value

    def to_json(self) -> dict:
        out = {"result": self.kind, "value": self.value}
        if self.leading is not None:
            out["leading"] = str(self.leading)
        if self.violation:
            out["bound_violation_candidate"] = True
        return out

    def __str__(self):
        if self.kind == EXACT:
            return f"Exact({self.value})"
        if self.kind == AT_LEAST:
            return f"AtLeast({self.value})"
        return f"ZeroSuspected({self.value})"


def Exact(k: int, leading=None) -> MultiplicityResult:
    return MultiplicityResult(EXACT, k, leading)


def AtLeast(k: int, violation: bool = False) -> MultiplicityResult:
    return MultiplicityResult(AT_LEAST, k, violation=violation)


def ZeroSuspected(cap: int) -> MultiplicityResult:
    return MultiplicityResult(ZERO_SUSPECTED, cap)


def multiplicity(p: LaurentPolynomial, source: TrajectoryGerm | Expansion,
                 cap: int | None = None, bound: int | None = None) -> MultiplicityResult:
    """Order of vanishing of p along the germ.

    With ``bound`` the search stops at min(bound, cap); reaching the
    bound itself gives AtLeast(bound + 1) flagged as a violation
    candidate.  A stored germ running out of coefficients gives
    AtLeast(order + 1).
    """
    if p.dim != source.dim:
        raise DimensionMismatch(f"polynomial of dimension {p.dim} on a germ of dimension {source.dim}")
    cap = max_order_cap() if cap is None else cap
    if bound is not None:
        cap = min(cap, bound)
    if p.is_zero:
        return _cap_result(cap, bound)
    s = composed_stream(p, source)
    for k in range(cap + 1):
        try:
            c = s[k]
        except TruncationReached as exc:
            return AtLeast(exc.order + 1)
        if c:
            return Exact(k, c)
    return _cap_result(cap, bound)


def _cap_result(cap: int, bound: int | None) -> MultiplicityResult:
    if bound is not None and cap >= bound:
        return AtLeast(cap + 1, violation=True)
    return ZeroSuspected(cap)


def multiplicity_sum(p: LaurentPolynomial, sources: Sequence, cap: int | None = None,
                     bound: int | None = None) -> tuple[MultiplicityResult, list[MultiplicityResult]]:
    """Per-germ multiplicities and their total; any inexact entry makes the total AtLeast."""
    if len({s.dim for s in sources}) > 1:
        raise DimensionMismatch("germs of different dimensions")
    per = [multiplicity(p, s, cap) for s in sources]
    total = sum(r.lower_bound for r in per)
    if all(r.is_exact for r in per):
        result = Exact(total)
    else:
        result = AtLeast(total)
    if bound is not None and total > bound:
        result = MultiplicityResult(result.kind, result.value, violation=True)
    return result, per


def first_transversal_derivative(xi: PolyVectorField, p: LaurentPolynomial, source,
                                 cap_k: int = 16, order: int = DEFAULT_WORKING_ORDER):
    """Smallest k >= 1 with xi^k p not vanishing along the germ to the working order.

    Returns (k, xi^k p, multiplicity).  Raises PreconditionError when p
    itself does not vanish along the germ and CapExhausted after cap_k.
    """
    if multiplicity(p, source, cap=order).is_exact:
        raise PreconditionError("p does not vanish along the germ to the working order")
    q = p
    for k in range(1, cap_k + 1):
        q = lie_derivative(xi, q)
        if q.is_zero:
            break
        m = multiplicity(q, source, cap=order)
        if m.is_exact:
            return k, q, m
    raise CapExhausted(f"no derivative up to order {cap_k} is transversal to the germ")


@dataclass(frozen=True)
class OrderReport:
    """Outcome of a trajectory-level order inequality."""
    check: str
    lhs: int
    rhs: int
    passed: bool
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"check": self.check, "lhs": self.lhs, "rhs": self.rhs,
                "passed": self.passed, **self.details}


def rolle_order_check(xi: PolyVectorField, f: LaurentPolynomial, source,
                      cap: int = DEFAULT_WORKING_ORDER) -> OrderReport:
    """ord(xi f | gamma) >= ord(f | gamma) - 1, or >= ord(f | gamma) where xi vanishes.

    An inexact order of xi f counts as its lower bound.
    """
    base = source.germ(1).base_point if isinstance(source, Expansion) else source.base_point
    m_f = multiplicity(f, source, cap)
    if not m_f.is_exact:
        raise PreconditionError("f vanishes along the germ to the working order")
    singular = xi.is_singular_at(base)
    m_xf = multiplicity(lie_derivative(xi, f), source, cap)
    required = m_f.value if singular else m_f.value - 1
    lhs = m_xf.lower_bound
    return OrderReport("rolle-order", lhs, required, lhs >= required,
                       {"ord_f": m_f.value, "ord_xi_f": str(m_xf), "singular": singular})


def divisor_multiplicity(f: LaurentPolynomial, point: Sequence) -> int:
    """mult_p V(f): lowest total degree of f recentered at p."""
    g = f.translate(point)
    if g.is_zero:
        raise PreconditionError("zero polynomial")
    return g.lowest_degree()


def mult_ratio_check(f: LaurentPolynomial, source, cap: int = DEFAULT_WORKING_ORDER) -> OrderReport:
    """ord(f | gamma) >= mult_p V(f) >= 1, with the ratio reported."""
    base = source.germ(1).base_point if isinstance(source, Expansion) else source.base_point
    if f.evaluate(base) != 0:
        raise PreconditionError("f does not vanish at the base point")
    m = multiplicity(f, source, cap)
    if not m.is_exact:
        raise PreconditionError("f vanishes along the germ to the working order")
    mv = divisor_multiplicity(f, base)
    return OrderReport("mult-ratio", m.value, mv, m.value >= mv >= 1,
                       {"ratio": str(Fraction(m.value, mv))})


__all__ = [
    "MultiplicityResult", "Exact", "AtLeast", "ZeroSuspected", "multiplicity", "multiplicity_sum",
    "first_transversal_derivative", "rolle_order_check", "mult_ratio_check", "divisor_multiplicity",
    "OrderReport", "max_order_cap",
]
