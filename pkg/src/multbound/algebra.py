"""Exact Laurent polynomials, polynomial vector fields and Lie derivatives."""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, LaurentError, ParseError, ZeroPolynomialError
from .polytope import IntegralPolytope, hull, translate

Exponent = tuple[int, ...]


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, str):
        return Fraction(c.strip())
    return Fraction(c)


class LaurentPolynomial:
    """Immutable polynomial in x_1..x_n with integer (possibly negative) exponents."""

    __slots__ = ("dim", "_terms", "_hash")

    def __init__(self, dim: int, terms: Mapping[Sequence[int], object] | None = None):
        if dim < 1:
            raise DimensionMismatch("dimension must be >= 1")
        clean: dict[Exponent, Fraction] = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != dim:
                raise DimensionMismatch(f"exponent {exp} has length != {dim}")
            c = clean.get(exp, Fraction(0)) + _frac(coeff)
            if c:
                clean[exp] = c
            else:
                clean.pop(exp, None)
        self.dim = dim
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, dim: int, terms: dict[Exponent, Fraction]) -> "LaurentPolynomial":
        obj = cls.__new__(cls)
        obj.dim = dim
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, dim: int, c=1) -> "LaurentPolynomial":
        return cls(dim, {(0,) * dim: c})

    @classmethod
    def monomial(cls, dim: int, exp: Sequence[int], c=1) -> "LaurentPolynomial":
        return cls(dim, {tuple(exp): c})

    @classmethod
    def variable(cls, dim: int, i: int) -> "LaurentPolynomial":
        return cls.monomial(dim, tuple(int(j == i) for j in range(dim)))

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    @property
    def support(self) -> tuple[Exponent, ...]:
        return tuple(sorted(self._terms))

    def coefficient(self, exp: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_polynomial(self) -> bool:
        return all(e >= 0 for exp in self._terms for e in exp)

    @property
    def is_constant(self) -> bool:
        return all(not any(exp) for exp in self._terms)

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * self.dim)

    def __len__(self):
        return len(self._terms)

    # ring structure
    def _coerce(self, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            if other.dim != self.dim:
                raise DimensionMismatch(f"dimensions {self.dim} and {other.dim}")
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPolynomial.constant(self.dim, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for exp, c in other._terms.items():
            s = out.get(exp, 0) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return LaurentPolynomial._raw(self.dim, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial._raw(self.dim, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return LaurentPolynomial._raw(self.dim, {})
            return LaurentPolynomial._raw(self.dim, {e: c * other for e, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPolynomial._raw(self.dim, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, LaurentPolynomial):
            if len(other._terms) != 1:
                raise LaurentError("division is only defined by monomials")
            (exp, c), = other._terms.items()
            return self * LaurentPolynomial.monomial(self.dim, [-e for e in exp], 1 / c)
        other = _frac(other)
        if not other:
            raise ZeroDivisionError("division by zero")
        return self * (1 / other)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("exponent must be an integer")
        if k < 0:
            if len(self._terms) != 1:
                raise LaurentError("negative powers are only defined for monomials")
            (exp, c), = self._terms.items()
            return LaurentPolynomial.monomial(self.dim, [e * k for e in exp], c ** k)
        result = LaurentPolynomial.constant(self.dim, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPolynomial.constant(self.dim, other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.dim == other.dim and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dim, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"LaurentPolynomial({self.dim}, {self.to_string()!r})"

    # calculus and evaluation
    def derivative(self, i: int) -> "LaurentPolynomial":
        out = {}
        for exp, c in self._terms.items():
            if exp[i]:
                e = list(exp)
                e[i] -= 1
                out[tuple(e)] = c * exp[i]
        return LaurentPolynomial._raw(self.dim, out)

    def evaluate(self, point: Sequence) -> Fraction:
        point = [_frac(v) for v in point]
        if len(point) != self.dim:
            raise DimensionMismatch("point has wrong dimension")
        total = Fraction(0)
        for exp, c in self._terms.items():
            term = c
            for v, e in zip(point, exp):
                if e:
                    if e < 0 and v == 0:
                        raise LaurentError("negative exponent evaluated at a zero coordinate")
                    term *= v ** e
            total += term
        return total

    def translate(self, shift: Sequence) -> "LaurentPolynomial":
        """p(x + shift).  Only for ordinary polynomials."""
        if not self.is_polynomial:
            raise LaurentError("translation of a Laurent polynomial")
        n = self.dim
        shifted = [LaurentPolynomial.variable(n, i) + _frac(s) for i, s in enumerate(shift)]
        result = LaurentPolynomial(n)
        for exp, c in self._terms.items():
            term = LaurentPolynomial.constant(n, c)
            for x, e in zip(shifted, exp):
                if e:
                    term = term * x ** e
            result = result + term
        return result

    def total_degree(self) -> int:
        self._require_polynomial()
        return max(sum(exp) for exp in self._terms)

    def lowest_degree(self) -> int:
        """Smallest total degree of a term (the order at the origin)."""
        self._require_polynomial()
        return min(sum(exp) for exp in self._terms)

    def degree_in(self, i: int) -> int:
        self._require_polynomial()
        return max(exp[i] for exp in self._terms)

    def _require_polynomial(self):
        if self.is_zero:
            raise ZeroPolynomialError("zero polynomial has no degree")
        if not self.is_polynomial:
            raise LaurentError("degree of a Laurent polynomial")

    # serialization
    def to_string(self, names: Sequence[str] | None = None) -> str:
        names = list(names) if names is not None else default_names(self.dim)
        if self.is_zero:
            return "0"
        parts = []
        for exp, c in sorted(self._terms.items(), reverse=True):
            factors = []
            for name, e in zip(names, exp):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}" if e > 0 else f"{name}^({e})")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "terms": [{"coeff": str(c), "exp": list(e)} for e, c in sorted(self._terms.items())],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "LaurentPolynomial":
        try:
            dim = int(data["dim"])
            terms: dict = {}
            for t in data["terms"]:
                exp = tuple(int(e) for e in t["exp"])
                terms[exp] = terms.get(exp, Fraction(0)) + _frac(t["coeff"])
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad polynomial JSON: {exc}") from exc
        return cls(dim, terms)


def default_names(n: int) -> list[str]:
    return [f"x{i + 1}" for i in range(n)]


_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class _Parser:
    def __init__(self, text: str, names: Sequence[str]):
        self.names = {name: i for i, name in enumerate(names)}
        self.dim = len(names)
        self.tokens = []
        pos = 0
        text = text.replace("−", "-")
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m:
                raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
            kind = "num" if m.group(1) else "name" if m.group(2) else "op"
            self.tokens.append((kind, m.group(m.lastindex)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise ParseError(f"expected {value or 'token'}, got {tok[1]!r}")
        self.i += 1
        return tok

    def parse(self) -> LaurentPolynomial:
        if not self.tokens:
            raise ParseError("empty expression")
        p = self.expr()
        if self.i != len(self.tokens):
            raise ParseError(f"trailing input at token {self.peek()[1]!r}")
        return p

    def expr(self):
        p = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            q = self.unary()
            if op == "*":
                p = p * q
            elif q.is_constant and not q.is_zero:
                p = p / q.constant_term()
            else:
                p = p / q
        return p

    def unary(self):
        if self.peek()[1] == "-":
            self.take()
            return -self.unary()
        if self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] in ("^", "**"):
            self.take()
            return base ** self.exponent()
        return base

    def exponent(self) -> int:
        sign = 1
        if self.peek()[1] == "(":
            self.take()
            e = self.exponent()
            self.take(")")
            return e
        if self.peek()[1] == "-":
            self.take()
            sign = -1
        kind, value = self.take()
        if kind != "num" or not value.isdigit():
            raise ParseError(f"exponent must be an integer, got {value!r}")
        return sign * int(value)

    def atom(self):
        kind, value = self.peek()
        if kind == "num":
            self.take()
            return LaurentPolynomial.constant(self.dim, Fraction(value))
        if kind == "name":
            self.take()
            if value not in self.names:
                raise ParseError(f"unknown variable {value!r}; expected one of {sorted(self.names)}")
            return LaurentPolynomial.variable(self.dim, self.names[value])
        if value == "(":
            self.take()
            p = self.expr()
            self.take(")")
            return p
        raise ParseError(f"unexpected token {value!r}")


def parse_polynomial(text: str, variables: Sequence[str] | int) -> LaurentPolynomial:
    """Parse ``2/3*x1^2*x2^-1 - (x1 + 1)^3`` style expressions."""
    names = default_names(variables) if isinstance(variables, int) else list(variables)
    return _Parser(text, names).parse()


class PolyVectorField:
    """xi = sum_i xi_i d/dx_i, optionally with a distinguished time coordinate."""

    __slots__ = ("components", "time_index")

    def __init__(self, components: Sequence[LaurentPolynomial], time_index: int | None = None):
        components = tuple(components)
        if not components:
            raise DimensionMismatch("vector field needs at least one component")
        n = len(components)
        if any(c.dim != n for c in components):
            raise DimensionMismatch("components must live in the field's own dimension")
        if time_index is not None and not 0 <= time_index < n:
            raise DimensionMismatch(f"time index {time_index} out of range")
        self.components = components
        self.time_index = time_index

    @property
    def dim(self) -> int:
        return len(self.components)

    @property
    def is_polynomial(self) -> bool:
        return all(c.is_polynomial for c in self.components)

    @property
    def delta(self) -> int:
        """max_i deg xi_i, zero components skipped."""
        if not self.is_polynomial:
            raise LaurentError("delta is only defined for polynomial fields")
        degs = [c.total_degree() for c in self.components if not c.is_zero]
        if not degs:
            raise ZeroPolynomialError("zero vector field")
        return max(degs)

    def evaluate(self, point: Sequence) -> tuple[Fraction, ...]:
        return tuple(c.evaluate(point) for c in self.components)

    def is_singular_at(self, point: Sequence) -> bool:
        return not any(self.evaluate(point))

    def __call__(self, p: LaurentPolynomial) -> LaurentPolynomial:
        return lie_derivative(self, p)

    def __eq__(self, other):
        if not isinstance(other, PolyVectorField):
            return NotImplemented
        return self.components == other.components and self.time_index == other.time_index

    def __hash__(self):
        return hash((self.components, self.time_index))

    def __repr__(self):
        return f"PolyVectorField({[c.to_string() for c in self.components]})"

    def to_json(self, names: Sequence[str] | None = None) -> dict:
        out = {"dim": self.dim, "components": [c.to_json() for c in self.components]}
        if self.time_index is not None:
            out["time_index"] = self.time_index
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "PolyVectorField":
        comps = [LaurentPolynomial.from_json(c) for c in data["components"]]
        return cls(comps, data.get("time_index"))


def parse_field(components: Sequence[str], variables: Sequence[str] | int,
                time_index: int | None = None) -> PolyVectorField:
    return PolyVectorField([parse_polynomial(c, variables) for c in components], time_index)


def lie_derivative(xi: PolyVectorField, p: LaurentPolynomial) -> LaurentPolynomial:
    """xi(p) = sum_i xi_i * dp/dx_i."""
    if xi.dim != p.dim:
        raise DimensionMismatch(f"field of dimension {xi.dim} applied to polynomial of dimension {p.dim}")
    result = LaurentPolynomial(p.dim)
    for i, comp in enumerate(xi.components):
        if comp.is_zero:
            continue
        d = p.derivative(i)
        if not d.is_zero:
            result = result + comp * d
    return result


def iterated_lie(xi: PolyVectorField, p: LaurentPolynomial, k: int) -> LaurentPolynomial:
    if k < 0:
        raise ValueError("k must be >= 0")
    for _ in range(k):
        if p.is_zero:
            break
        p = lie_derivative(xi, p)
    return p


def total_degree(p: LaurentPolynomial) -> int:
    return p.total_degree()


def mixed_degrees(p: LaurentPolynomial, time_index: int) -> tuple[int, int]:
    """(d_z, d_x): degree in the time variable and in the rest, both floored at 1."""
    if not 0 <= time_index < p.dim:
        raise DimensionMismatch(f"time index {time_index} out of range")
    if not p.is_polynomial:
        raise LaurentError("mixed degrees of a Laurent polynomial")
    if p.is_zero:
        return 1, 1
    d_z = max(exp[time_index] for exp in p.support)
    d_x = max(sum(exp) - exp[time_index] for exp in p.support)
    return max(d_z, 1), max(d_x, 1)


def newton_polytope(p: LaurentPolynomial) -> IntegralPolytope:
    """conv(supp p)."""
    if p.is_zero:
        raise ZeroPolynomialError("Newton polytope of the zero polynomial")
    return hull(p.support)


def field_points(xi: PolyVectorField) -> list[Exponent]:
    """alpha - e_i for every term x^alpha d/dx_i of the field."""
    pts = set()
    for i, comp in enumerate(xi.components):
        for exp in comp.support:
            e = list(exp)
            e[i] -= 1
            pts.add(tuple(e))
    return sorted(pts)


def field_polytope(xi: PolyVectorField, *, adjust: bool = True) -> tuple[IntegralPolytope, Exponent]:
    """Newton polytope of the field and the lattice shift applied to it.

    Rescaling xi by a monomial translates the polytope, so when it misses
    the origin it is moved by minus its smallest vertex.  With
    ``adjust=False`` the raw polytope is returned with a zero shift.
    """
    pts = field_points(xi)
    if not pts:
        raise ZeroPolynomialError("all components of the field are zero")
    poly = hull(pts)
    zero = (0,) * xi.dim
    if not adjust or poly.contains(zero):
        return poly, zero
    shift = tuple(-c for c in poly.vertices[0])
    return translate(poly, shift), shift
