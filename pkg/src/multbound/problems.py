"""Problem files ("multbound/1") and the builtin examples.

A problem names its variables, optionally a vector field, and one or
more trajectory sources: regular base points, a Fuchsian system, a
rational graph system or stored germs.  Polynomial strings are parsed
against the declared variables.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

import jsonschema

from .algebra import LaurentPolynomial, PolyVectorField, parse_polynomial
from .errors import ParseError, PreconditionError
from .series import (FuchsianExpansion, RationalExpansion, RegularExpansion, TrajectoryGerm, fuchsian_field,
                     polynomial_germ, rational_system_field, residual_check)

VERSION = "multbound/1"

_NUM = {"type": ["string", "integer"]}
_EXPRS = {"type": "array", "items": {"type": "string"}, "minItems": 1}

SCHEMA = {
    "type": "object",
    "required": ["version", "variables"],
    "additionalProperties": False,
    "properties": {
        "version": {"const": VERSION},
        "name": {"type": "string"},
        "variables": {"type": "array", "items": {"type": "string", "pattern": "^[A-Za-z_][A-Za-z0-9_]*$"},
                      "minItems": 1, "uniqueItems": True},
        "field": _EXPRS,
        "time_index": {"type": ["integer", "null"], "minimum": 0},
        "base_points": {"type": "array", "items": {"type": "array", "items": _NUM}},
        "fuchsian": {
            "type": "object", "required": ["F", "x0"], "additionalProperties": False,
            "properties": {
                "F": _EXPRS,
                "x0": {"type": "array", "items": _NUM},
                "prescribed": {"type": "object", "patternProperties": {
                    "^[0-9]+$": {"type": "array", "items": {"type": ["string", "integer", "null"]}}},
                    "additionalProperties": False},
            },
        },
        "rational": {
            "type": "object", "required": ["P", "Q", "z0", "x0"], "additionalProperties": False,
            "properties": {"P": _EXPRS, "Q": _EXPRS, "z0": _NUM, "x0": {"type": "array", "items": _NUM}},
        },
        "germs": {"type": "array", "items": {
            "type": "object", "required": ["components"], "additionalProperties": False,
            "properties": {
                "components": {"type": "array", "items": {"type": "array", "items": _NUM, "minItems": 1}},
                "time_index": {"type": ["integer", "null"], "minimum": 0},
                "label": {"type": "string"},
            }}},
        "polynomials": {"type": "array", "items": {"type": "string"}},
        "chi": {"type": "integer", "minimum": 0},
        "delta": {"type": "integer", "minimum": 0},
        "notes": {"type": "string"},
    },
}


def validate(doc: dict) -> None:
    try:
        jsonschema.validate(doc, SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ParseError(f"problem file invalid at {where}: {exc.message}") from None


def canonical(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


@dataclass
class Problem:
    """A validated problem file with its objects built."""
    doc: dict
    variables: list[str]
    field: PolyVectorField | None
    sources: list[tuple[str, object]] = field(default_factory=list)
    polynomials: list[str] = field(default_factory=list)
    chi: int | None = None
    delta: int | None = None

    @property
    def time_index(self) -> int | None:
        return self.field.time_index if self.field is not None else None

    def parse(self, text: str) -> LaurentPolynomial:
        return parse_polynomial(text, self.variables)


def _frac(v) -> Fraction:
    try:
        return Fraction(v)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {v!r}") from None


def _point_label(p) -> str:
    return "regular at (" + ", ".join(str(v) for v in p) + ")"


def load(doc: dict) -> Problem:
    """Validate ``doc`` and build the field and trajectory sources.

    Stored germs are certified against the field when one is present.
    """
    validate(doc)
    names = doc["variables"]
    n = len(names)

    def parse_all(exprs):
        return [parse_polynomial(e, names) for e in exprs]

    xi = None
    ti = doc.get("time_index")
    if "field" in doc:
        comps = parse_all(doc["field"])
        if len(comps) != n:
            raise ParseError(f"field has {len(comps)} components for {n} variables")
        xi = PolyVectorField(comps, ti)
    sources: list[tuple[str, object]] = []
    for pt in doc.get("base_points", []):
        if xi is None:
            raise ParseError("base points need a field")
        if len(pt) != n:
            raise ParseError(f"base point {pt} has the wrong length")
        p = [_frac(v) for v in pt]
        sources.append((_point_label(p), RegularExpansion(xi, p)))
    if "fuchsian" in doc:
        fu = doc["fuchsian"]
        F = parse_all(fu["F"])
        if len(F) != n - 1:
            raise ParseError("a Fuchsian system needs one equation per variable after the first")
        pres = {int(k): [None if v is None else _frac(v) for v in vals]
                for k, vals in fu.get("prescribed", {}).items()}
        sources.append(("fuchsian at z = 0", FuchsianExpansion(F, [_frac(v) for v in fu["x0"]], pres or None)))
        if xi is None:
            xi = fuchsian_field(F)
    if "rational" in doc:
        ra = doc["rational"]
        P, Q = parse_all(ra["P"]), parse_all(ra["Q"])
        z0 = _frac(ra["z0"])
        sources.append((f"rational graph at z = {z0}",
                        RationalExpansion(P, Q, z0, [_frac(v) for v in ra["x0"]])))
        if xi is None:
            xi = rational_system_field(P, Q)
    for i, g in enumerate(doc.get("germs", [])):
        if len(g["components"]) != n:
            raise ParseError(f"germ {i} has {len(g['components'])} components for {n} variables")
        germ = polynomial_germ([[_frac(c) for c in comp] for comp in g["components"]], g.get("time_index"))
        if xi is not None:
            bad = residual_check(xi, germ)
            if bad is not None:
                raise PreconditionError(f"germ {i} is not a trajectory of the field: residual at order {bad}")
        sources.append((g.get("label", f"germ {i}"), germ))
    return Problem(doc, list(names), xi, sources, list(doc.get("polynomials", [])),
                   doc.get("chi"), doc.get("delta"))


def _ramanujan(**_) -> dict:
    return {
        "version": VERSION,
        "name": "ramanujan",
        "variables": ["z", "X", "Y", "R"],
        "fuchsian": {
            "F": ["(X^2 - Y)/12", "(X*Y - R)/3", "(X*R - Y^2)/2"],
            "x0": [1, 1, 1],
            "prescribed": {"1": [-24, None, None]},
        },
        "polynomials": ["X - 1", "Y - 1", "R - 1", "X^2 - Y"],
        "chi": 2,
        "delta": 2,
        "notes": "Eisenstein series E2, E4, E6 in q = z; the first-order coefficient of X is a free "
                 "parameter of the recursion and is fixed to -24. D-property at z = 0 with chi = 2.",
    }


def _parabola(**_) -> dict:
    return {
        "version": VERSION,
        "name": "parabola",
        "variables": ["x", "y"],
        "field": ["1", "2*x"],
        "base_points": [[0, 0]],
        "polynomials": ["y", "y - x^2"],
    }


def _power_a(a: int = 5, **_) -> dict:
    if not isinstance(a, int) or a < 1:
        raise PreconditionError("a must be a positive integer")
    return {
        "version": VERSION,
        "name": f"power-{a}",
        "variables": ["x", "y"],
        "field": ["x", f"{a}*y"],
        "time_index": 0,
        "germs": [{"components": [[0, 1], [0] * a + [1]], "time_index": 0, "label": f"(t, t^{a})"}],
        "polynomials": ["y"],
        "notes": "x d/dx + a y d/dy is singular at the origin; every curve y = c x^a is invariant and "
                 "y vanishes to order a along (t, t^a), so no bound independent of a exists without chi.",
    }


def _linear_diagonal(**_) -> dict:
    return {
        "version": VERSION,
        "name": "linear-diagonal",
        "variables": ["x", "y"],
        "field": ["x", "2*y"],
        "base_points": [[1, 1]],
        "polynomials": ["y - x^2", "x - 1"],
    }


EXAMPLES = {
    "ramanujan": _ramanujan,
    "parabola": _parabola,
    "power-a": _power_a,
    "linear-diagonal": _linear_diagonal,
}


def example(name: str, **params) -> dict:
    if name not in EXAMPLES:
        raise ParseError(f"unknown example {name!r}; choose from {sorted(EXAMPLES)}")
    return EXAMPLES[name](**params)


__all__ = ["VERSION", "SCHEMA", "Problem", "load", "validate", "canonical", "example", "EXAMPLES"]
