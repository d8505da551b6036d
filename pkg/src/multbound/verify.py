"""Brute-force oracles and seeded property suites.

Torus root counting in two variables is done with Sylvester resultants
computed by evaluation and exact interpolation.  Genericity (no common
components, no collapsing leading coefficients, simple roots) is
certified by coprimality and squarefreeness modulo a large prime, which
implies the same over Q.
"""
from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .algebra import LaurentPolynomial, PolyVectorField, lie_derivative, newton_polytope, field_points
from .bounds import hf_upper_pure, nmorse_bound
from .errors import LaurentError, MultboundError, PreconditionError
from .mult import multiplicity, rolle_order_check
from .polytope import (_nullspace, cube, hull, intersect_box, lattice_count, minkowski_sum, mixed_volume,
                       rank, scale, volume)
from .series import FuchsianExpansion, RegularExpansion, composed_stream, fuchsian_field

PRIME = 2**61 - 1


# univariate helpers (coefficient lists, lowest degree first)

def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _mod_poly(a, p=PRIME) -> list[int]:
    out = []
    for c in a:
        c = Fraction(c)
        out.append(c.numerator % p * pow(c.denominator, -1, p) % p)
    return _trim(out)


def _gcd_mod(a: list[int], b: list[int], p=PRIME) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b):
            f = a[-1] * inv % p
            shift = len(a) - len(b)
            for i, c in enumerate(b):
                a[i + shift] = (a[i + shift] - f * c) % p
            _trim(a)
            if not a:
                break
        a, b = b, a
    return a


def _degree(a) -> int:
    return len(_trim(list(a))) - 1


def coprime_certified(a: Sequence, b: Sequence) -> bool | None:
    """True if gcd(a, b) is constant over Q (certified mod p); None if undecided."""
    ma, mb = _mod_poly(a), _mod_poly(b)
    if _degree(ma) != _degree(a) or _degree(mb) != _degree(b):
        return None
    if not ma or not mb:
        return None
    return len(_gcd_mod(ma, mb)) == 1


def squarefree_certified(a: Sequence) -> bool | None:
    ma = _mod_poly(a)
    if _degree(ma) != _degree(a) or len(ma) >= PRIME:
        return None
    if len(ma) <= 2:
        return True
    deriv = [i * c % PRIME for i, c in enumerate(ma)][1:]
    return len(_gcd_mod(ma, deriv)) == 1


def _bareiss(mat: list[list[int]]) -> int:
    n = len(mat)
    if n == 0:
        return 1
    m = [row[:] for row in mat]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def sylvester_resultant(f: Sequence[int], g: Sequence[int]) -> int:
    """Resultant of f and g with their formal degrees len - 1."""
    m, l = len(f) - 1, len(g) - 1
    size = m + l
    rows = []
    for i in range(l):
        row = [0] * size
        for j, c in enumerate(reversed(f)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for j, c in enumerate(reversed(g)):
            row[i + j] = c
        rows.append(row)
    return _bareiss(rows)


def _interpolate(xs: list[int], ys: list[int]) -> list[Fraction]:
    """Coefficients of the interpolating polynomial (Newton form, exact)."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        # poly = poly * (x - xs[i]) + coef[i]
        new = [Fraction(0)] * n
        for k in range(n - 1):
            new[k + 1] += poly[k]
            new[k] -= poly[k] * xs[i]
        new[0] += coef[i]
        poly = new
    return _trim(poly)


# bivariate systems as dicts {(i, j): int}

def _integerize(p: LaurentPolynomial) -> dict[tuple[int, int], int]:
    den = math.lcm(*(c.denominator for _, c in p.items()))
    lo = [min(e[k] for e in p.support) for k in range(2)]
    return {(e[0] - lo[0], e[1] - lo[1]): int(c * den) for e, c in p.items()}


def _y_coeffs_at(q: dict, a: int, dy: int) -> list[int]:
    out = [0] * (dy + 1)
    for (i, j), c in q.items():
        out[j] += c * a ** i
    return out


def _x_poly(q: dict, j: int) -> list[int]:
    """Coefficient of y^j as a polynomial in x."""
    dx = max((i for (i, jj) in q if jj == j), default=-1)
    out = [0] * (dx + 1)
    for (i, jj), c in q.items():
        if jj == j:
            out[i] += c
    return out


def _strip_x(a: list[int]) -> list[int]:
    k = next(i for i, c in enumerate(a) if c)
    return a[k:]


def _count_projection(q1: dict, q2: dict) -> tuple[int | None, str | None]:
    """Torus roots via Res_y, assuming exponents are nonnegative with zero minima."""
    dx1 = max(i for i, _ in q1)
    dy1 = max(j for _, j in q1)
    dx2 = max(i for i, _ in q2)
    dy2 = max(j for _, j in q2)
    lc1, lc2 = _x_poly(q1, dy1), _x_poly(q2, dy2)
    # common roots at x = 0 lie outside the torus and do not matter
    ok = coprime_certified(_strip_x(lc1), _strip_x(lc2))
    if not ok:
        return None, "leading coefficients share a root"
    ok = coprime_certified(_strip_x(_x_poly(q1, 0)), _strip_x(_x_poly(q2, 0)))
    if not ok:
        return None, "common root on the axis y = 0"
    D = dx1 * dy2 + dx2 * dy1
    xs = list(range(D + 1))
    ys = [sylvester_resultant(_y_coeffs_at(q1, a, dy1), _y_coeffs_at(q2, a, dy2)) for a in xs]
    R = _interpolate(xs, ys)
    if not R:
        return None, "resultant vanishes identically"
    k = next(i for i, c in enumerate(R) if c)
    R = R[k:]
    sf = squarefree_certified(R)
    if not sf:
        return None, "resultant has repeated roots"
    return len(R) - 1, None


def _lattice_basis(vectors: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Hermite-style basis of the subgroup of Z^2 generated by the vectors."""
    rows = [list(v) for v in vectors if any(v)]
    basis = []
    for col in range(2):
        rows = [r for r in rows if any(r)]
        pivots = [r for r in rows if r[col] != 0]
        rest = [r for r in rows if r[col] == 0]
        while len(pivots) > 1:
            pivots.sort(key=lambda r: abs(r[col]))
            head = pivots[0]
            new = [head]
            for r in pivots[1:]:
                f = r[col] // head[col]
                r = [a - f * b for a, b in zip(r, head)]
                (new if r[col] != 0 else rest).append(r)
            pivots = new
        if pivots:
            basis.append(tuple(pivots[0]))
        rows = rest
    return basis


def _gauss_reduce(u, v):
    """Lagrange-Gauss reduction of a basis of a rank-2 lattice."""
    def norm(w):
        return w[0] * w[0] + w[1] * w[1]
    if norm(u) > norm(v):
        u, v = v, u
    while True:
        m = round(Fraction(u[0] * v[0] + u[1] * v[1], norm(u)))
        v = (v[0] - m * u[0], v[1] - m * u[1])
        if norm(v) >= norm(u):
            return u, v
        u, v = v, u


def _apply(q: dict, W) -> dict:
    out = {}
    for (i, j), c in q.items():
        e = (W[0][0] * i + W[0][1] * j, W[1][0] * i + W[1][1] * j)
        out[e] = out.get(e, 0) + c
    lo = [min(e[k] for e in out) for k in range(2)]
    return {(e[0] - lo[0], e[1] - lo[1]): c for e, c in out.items() if c}


_DIRECTIONS = [((1, 0), (0, 1)), ((0, 1), (1, 0)), ((1, 1), (0, 1)), ((1, 0), (1, 1)),
               ((1, -1), (0, 1)), ((1, 0), (-1, 1)), ((2, 1), (1, 1)), ((1, 1), (1, 2))]


@dataclass(frozen=True)
class RootCount:
    count: int | None
    reason: str | None = None
    lattice_index: int = 1
    directions: tuple = ()
    disagreement: bool = False

    @property
    def degenerate(self) -> bool:
        return self.count is None and not self.disagreement


def count_torus_roots_2d(p1: LaurentPolynomial, p2: LaurentPolynomial) -> RootCount:
    """Number of common zeros in (C*)^2, or a degeneracy flag.

    The supports are first rewritten in a basis of the lattice they
    generate (index r); every root of the reduced system has r preimages.
    Each coordinate system in a short list of torus automorphisms gives
    a count by eliminating the second variable; two of them must succeed
    and agree.
    """
    if p1.dim != 2 or p2.dim != 2:
        raise PreconditionError("root counting is implemented for n = 2 only")
    if p1.is_zero or p2.is_zero:
        raise PreconditionError("zero polynomial")
    q1, q2 = _integerize(p1), _integerize(p2)
    diffs = [e for q in (q1, q2) for e in q]
    basis = _lattice_basis(diffs)
    if len(basis) == 0:
        return RootCount(0, None, 0)
    if len(basis) == 1:
        # both are univariate in one monomial w; isolated roots are impossible
        v = basis[0]
        g = math.gcd(*v)
        step = (v[0] // g, v[1] // g)

        def univ(q):
            coeffs = {}
            for e, c in q.items():
                t = (e[0] * step[0] + e[1] * step[1]) // (step[0] ** 2 + step[1] ** 2)
                coeffs[t] = coeffs.get(t, 0) + c
            lo = min(coeffs)
            out = [0] * (max(coeffs) - lo + 1)
            for t, c in coeffs.items():
                out[t - lo] = c
            return out
        ok = coprime_certified(univ(q1), univ(q2))
        if ok:
            return RootCount(0, None, 0)
        return RootCount(None, "common factor in a single monomial direction", 0)
    (a, b), (c, d) = _gauss_reduce(*basis)
    r = abs(a * d - b * c)
    if r == 1:
        a, b, c, d = 1, 0, 0, 1
    inv = ((d, -c), (-b, a))

    def reduce(q):
        out = {}
        for (i, j), coeff in q.items():
            x = inv[0][0] * i + inv[0][1] * j
            y = inv[1][0] * i + inv[1][1] * j
            out[(x // (a * d - b * c), y // (a * d - b * c))] = coeff
        return out
    # exponents of each polynomial are in a coset of the lattice; shift to the lattice first
    base1, base2 = min(q1), min(q2)
    r1 = reduce({(i - base1[0], j - base1[1]): v for (i, j), v in q1.items()})
    r2 = reduce({(i - base2[0], j - base2[1]): v for (i, j), v in q2.items()})
    results = []
    good = []
    for W in _DIRECTIONS:
        n, why = _count_projection(_apply(r1, W), _apply(r2, W))
        results.append(n if why is None else why)
        if why is None:
            good.append(n)
            if len(good) == 2:
                break
    if len(good) < 2:
        reasons = sorted({x for x in results if isinstance(x, str)})
        return RootCount(None, "; ".join(reasons), r, tuple(results))
    if good[0] != good[1]:
        return RootCount(None, "elimination directions disagree", r, tuple(results), True)
    return RootCount(r * good[0], None, r, tuple(results))


# hf oracle

def hf_parametrized(g: Sequence[LaurentPolynomial], A: Sequence[Sequence[int]]) -> int:
    """dim span{ g^a : a in A } for univariate g_1..g_n, by exact elimination."""
    if not g:
        raise PreconditionError("empty parametrization")
    if any(p.dim != 1 for p in g):
        raise PreconditionError("parametrization components must be univariate")
    images = []
    one = LaurentPolynomial.constant(1, 1)
    for a in A:
        if len(a) != len(g):
            raise PreconditionError("exponent length differs from the number of components")
        term = one
        for gi, e in zip(g, a):
            if e < 0:
                if len(gi) != 1:
                    raise LaurentError("negative exponent on a non-monomial component")
                term = term * gi ** e
            elif e:
                term = term * gi ** e
        images.append(term)
    exps = sorted({e for p in images for e in p.support})
    rows = [[p.coefficient(e) for e in exps] for p in images]
    return rank(rows, len(exps)) if exps else 0


# harness

@dataclass(frozen=True)
class InstanceSpec:
    seed: int = 0
    trials: int = 100
    n: int | None = None
    delta: int | None = None
    d: int | None = None
    height_bits: int = 32
    max_points: int = 6
    box: int = 3


@dataclass
class TrialReport:
    instance_id: str
    check: str
    lhs: object
    rhs: object
    verdict: str
    instance: dict = field(default_factory=dict)
    regenerations: int = 0

    def to_json(self) -> dict:
        return {"instance_id": self.instance_id, "check": self.check, "lhs": _enc(self.lhs),
                "rhs": _enc(self.rhs), "verdict": self.verdict, "regenerations": self.regenerations,
                "instance": _enc(self.instance)}


def _enc(v):
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else str(v)
    if isinstance(v, dict):
        return {str(k): _enc(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_enc(x) for x in v]
    return v


@dataclass
class SuiteSummary:
    name: str
    seed: int
    trials: int
    passed: int = 0
    failed: int = 0
    degenerate: int = 0
    draws: int = 0
    degenerate_draws: int = 0
    reports: list[TrialReport] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    @property
    def degenerate_rate(self) -> float:
        return self.degenerate_draws / self.draws if self.draws else 0.0

    def to_json(self) -> dict:
        return {"suite": self.name, "seed": self.seed, "trials": self.trials, "passed": self.passed,
                "failed": self.failed, "degenerate": self.degenerate, "draws": self.draws,
                "degenerate_draws": self.degenerate_draws,
                "first_failure": next((r.to_json() for r in self.reports if r.verdict == "fail"), None)}

    def jsonl(self) -> str:
        return "".join(json.dumps(r.to_json(), sort_keys=True) + "\n" for r in self.reports)


def _poly_json(p: LaurentPolynomial) -> dict:
    return p.to_json()


def _rand_coeff(rng: random.Random, bits: int) -> int:
    while True:
        c = rng.randint(-(2 ** bits), 2 ** bits)
        if c:
            return c


def _random_support(rng: random.Random, box_size: int, max_points: int) -> list[tuple[int, int]]:
    grid = list(itertools.product(range(-box_size, box_size + 1), repeat=2))
    k = rng.randint(2, max_points)
    return sorted(rng.sample(grid, k))


def bk_check(spec: InstanceSpec, supports: tuple | None = None) -> SuiteSummary:
    """Generic torus root counts against 2! V(conv A_1, conv A_2)."""
    rng = random.Random(spec.seed)
    out = SuiteSummary("bk", spec.seed, spec.trials)
    for t in range(spec.trials):
        if supports is None:
            A1 = _random_support(rng, spec.box, spec.max_points)
            A2 = _random_support(rng, spec.box, spec.max_points)
        else:
            A1, A2 = supports
        mu = 2 * mixed_volume([hull(A1), hull(A2)])
        report = None
        for attempt in range(11):
            p1 = LaurentPolynomial(2, {e: _rand_coeff(rng, spec.height_bits) for e in A1})
            p2 = LaurentPolynomial(2, {e: _rand_coeff(rng, spec.height_bits) for e in A2})
            out.draws += 1
            rc = count_torus_roots_2d(p1, p2)
            inst = {"A1": A1, "A2": A2, "p1": _poly_json(p1), "p2": _poly_json(p2)}
            if rc.degenerate:
                out.degenerate_draws += 1
                if attempt < 10:
                    continue
                report = TrialReport(f"bk-{spec.seed}-{t}", "count == 2! V", rc.reason, mu,
                                     "degenerate", inst, attempt)
                break
            verdict = "pass" if rc.count == mu and not rc.disagreement else "fail"
            report = TrialReport(f"bk-{spec.seed}-{t}", "count == 2! V", rc.count, mu, verdict, inst, attempt)
            break
        _record(out, report)
        if report.verdict == "fail":
            break
    return out


def _record(out: SuiteSummary, report: TrialReport):
    out.reports.append(report)
    if report.verdict == "pass":
        out.passed += 1
    elif report.verdict == "fail":
        out.failed += 1
    else:
        out.degenerate += 1


def _random_points(rng, n, k, lo, hi):
    return [tuple(rng.randint(lo, hi) for _ in range(n)) for _ in range(k)]


def _suite_vol_ivol(spec: InstanceSpec) -> SuiteSummary:
    rng = random.Random(spec.seed)
    out = SuiteSummary("vol-ivol", spec.seed, spec.trials)
    nmax = spec.n or 4
    for t in range(spec.trials):
        n = rng.randint(1, nmax)
        k = rng.randint(1, 8)
        pts = _random_points(rng, n, k, -spec.box, spec.box)
        with_cube = t % 2 == 1
        if with_cube:
            pts = pts + list(cube(n, n).vertices)
        D = hull(pts)
        vol = volume(D)
        Pi = cube(n, 1)
        inst = {"n": n, "points": pts}
        checks = [("ivol(D + Pi_n) >= vol(D)", lattice_count(minkowski_sum(D, Pi)), vol)]
        lo = [rng.randint(-spec.box - n, 0) for _ in range(n)]
        hi = [lo[i] + rng.randint(0, 2 * spec.box + n) for i in range(n)]
        inst["box"] = [lo, hi]
        boxed = intersect_box(D, lo, hi)
        boxed_vol = volume(boxed) if not boxed.is_empty else Fraction(0)
        wide = intersect_box(minkowski_sum(D, Pi), lo, hi)
        checks.append(("ivol(box & (D + Pi_n)) >= vol(box & D)",
                       lattice_count(wide) if not wide.is_empty else 0, boxed_vol))
        if with_cube:
            checks.append(("ivol(D) >= vol(D)/4", lattice_count(D), vol / 4))
            checks.append(("ivol(box & D) >= vol(box & D)/4",
                           lattice_count(boxed) if not boxed.is_empty else 0, boxed_vol / 4))
        report = None
        for name, lhs, rhs in checks:
            out.draws += 1
            if lhs < rhs:
                report = TrialReport(f"vol-ivol-{spec.seed}-{t}", name, lhs, rhs, "fail", inst)
                break
        if report is None:
            report = TrialReport(f"vol-ivol-{spec.seed}-{t}", "; ".join(c[0] for c in checks),
                                 checks[0][1], checks[0][2], "pass", inst)
        _record(out, report)
        if report.verdict == "fail":
            break
    return out


def _monomials(n: int, deg: int) -> list[tuple[int, ...]]:
    return [e for e in itertools.product(range(deg + 1), repeat=n) if sum(e) <= deg]


def _random_poly(rng, n, deg, terms, coeff=5, exact_degree=False) -> LaurentPolynomial:
    mons = _monomials(n, deg)
    chosen = rng.sample(mons, min(terms, len(mons)))
    if exact_degree:
        top = [e for e in mons if sum(e) == deg]
        chosen.append(rng.choice(top))
    return LaurentPolynomial(n, {e: _rand_coeff_small(rng, coeff) for e in chosen})


def _rand_coeff_small(rng, c):
    while True:
        v = rng.randint(-c, c)
        if v:
            return v


def _random_regular_instance(rng, n, delta):
    while True:
        comps = [_random_poly(rng, n, delta, rng.randint(1, 3)) for _ in range(n)]
        if delta and rng.random() < 0.7:
            i = rng.randrange(n)
            comps[i] = comps[i] + _random_poly(rng, n, delta, 1, exact_degree=True)
        if all(c.is_zero for c in comps):
            continue
        xi = PolyVectorField(comps)
        p = [rng.randint(-2, 2) for _ in range(n)]
        if not xi.is_singular_at(p):
            return xi, p


def _field_json(xi: PolyVectorField) -> dict:
    return xi.to_json()


RAMANUJAN_VARIABLES = ("z", "X", "Y", "R")


def ramanujan_system():
    """(F, x0, prescribed) of z x' = F(z, x) for the Eisenstein series E2, E4, E6."""
    from .algebra import parse_polynomial
    F = [parse_polynomial(e, RAMANUJAN_VARIABLES) for e in ("(X^2 - Y)/12", "(X*Y - R)/3", "(X*R - Y^2)/2")]
    return F, (1, 1, 1), {1: (-24, None, None)}


def _suite_rolle(spec: InstanceSpec, singular_trials: int = 50) -> SuiteSummary:
    rng = random.Random(spec.seed)
    out = SuiteSummary("rolle-order", spec.seed, spec.trials + singular_trials)
    nmax, dmax = spec.n or 3, spec.delta if spec.delta is not None else 2
    for t in range(spec.trials):
        report = None
        for attempt in range(11):
            n = rng.randint(1, nmax)
            delta = rng.randint(0, dmax)
            xi, p = _random_regular_instance(rng, n, delta)
            f = _random_poly(rng, n, rng.randint(1, 3), rng.randint(1, 4))
            if rng.random() < 0.5 and not f.is_zero:
                f = f - f.evaluate(p)
            out.draws += 1
            inst = {"xi": _field_json(xi), "p": p, "f": _poly_json(f)}
            if f.is_zero:
                out.degenerate_draws += 1
                continue
            try:
                rep = rolle_order_check(xi, f, RegularExpansion(xi, p), cap=64)
            except PreconditionError:
                out.degenerate_draws += 1
                continue
            report = TrialReport(f"rolle-{spec.seed}-{t}", "ord(xi f) >= ord(f) - 1", rep.lhs, rep.rhs,
                                 "pass" if rep.passed else "fail", inst, attempt)
            break
        if report is None:
            report = TrialReport(f"rolle-{spec.seed}-{t}", "ord(xi f) >= ord(f) - 1", None, None, "degenerate")
        _record(out, report)
        if report.verdict == "fail":
            return out
    F, x0, pres = ramanujan_system()
    xi = fuchsian_field(F)
    exp = FuchsianExpansion(F, x0, pres)
    for t in range(singular_trials):
        report = None
        for attempt in range(11):
            f = _random_poly(rng, 4, rng.randint(1, 3), rng.randint(1, 4))
            out.draws += 1
            inst = {"system": "ramanujan", "f": _poly_json(f)}
            try:
                rep = rolle_order_check(xi, f, exp, cap=64)
            except PreconditionError:
                out.degenerate_draws += 1
                continue
            report = TrialReport(f"rolle-singular-{spec.seed}-{t}", "ord(xi f) >= ord(f)", rep.lhs, rep.rhs,
                                 "pass" if rep.passed and rep.details["singular"] else "fail", inst, attempt)
            break
        if report is None:
            report = TrialReport(f"rolle-singular-{spec.seed}-{t}", "ord(xi f) >= ord(f)", None, None, "degenerate")
        _record(out, report)
        if report.verdict == "fail":
            break
    return out


def _kernel_vector(rows: list[list[Fraction]], ncols: int, rng) -> list[Fraction] | None:
    """A random nonzero element of the right kernel of rows, or None."""
    basis = _nullspace(rows, ncols)
    if not basis:
        return None
    vec = [Fraction(0)] * ncols
    for b in basis:
        c = _rand_coeff_small(rng, 3)
        vec = [v + c * x for v, x in zip(vec, b)]
    return vec if any(vec) else None


def _suite_soundness(spec: InstanceSpec, search_cap: int = 128) -> SuiteSummary:
    rng = random.Random(spec.seed)
    out = SuiteSummary("bound-soundness", spec.seed, spec.trials)
    nmax = spec.n or 3
    dmax_delta = spec.delta if spec.delta is not None else 2
    dmax = spec.d or 4
    for t in range(spec.trials):
        report = None
        extremal = t % 2 == 1
        for attempt in range(11):
            n = rng.randint(1, nmax)
            delta = rng.randint(0, dmax_delta)
            d = rng.randint(1, dmax)
            xi, p = _random_regular_instance(rng, n, delta)
            expansion = RegularExpansion(xi, p)
            mons = _monomials(n, d)
            if extremal:
                M = len(mons) - 1
                shifted = [LaurentPolynomial.monomial(n, e).translate([-v for v in p]) for e in mons]
                streams = [composed_stream(m, expansion) for m in shifted]
                rows = [[s[i] for s in streams] for i in range(M)]
                vec = _kernel_vector(rows, len(mons), rng)
                if vec is None:
                    out.draws += 1
                    out.degenerate_draws += 1
                    continue
                P = LaurentPolynomial(n, {})
                for c, m in zip(vec, shifted):
                    P = P + m * c
            else:
                P = _random_poly(rng, n, d, rng.randint(1, 5))
                if not P.is_zero:
                    P = P - P.evaluate(p)
            out.draws += 1
            if P.is_zero:
                out.degenerate_draws += 1
                continue
            B = nmorse_bound(n, delta, max(P.total_degree(), 1))
            # reaching the cap means P is suspected to vanish identically along the trajectory
            m = multiplicity(P, expansion, cap=min(B, search_cap))
            inst = {"xi": _field_json(xi), "p": p, "P": _poly_json(P), "n": n, "delta": delta, "d": d}
            if m.is_exact:
                report = TrialReport(f"soundness-{spec.seed}-{t}", "mult <= 2^(n+1)(d+(n-1)delta)^n",
                                     m.value, B, "pass" if m.value <= B else "fail", inst, attempt)
                break
            out.degenerate_draws += 1
        if report is None:
            report = TrialReport(f"soundness-{spec.seed}-{t}", "mult <= 2^(n+1)(d+(n-1)delta)^n",
                                 None, None, "degenerate")
        _record(out, report)
        if report.verdict == "fail":
            break
    return out


def _suite_delta_additivity(spec: InstanceSpec) -> SuiteSummary:
    rng = random.Random(spec.seed)
    out = SuiteSummary("delta-additivity", spec.seed, spec.trials)
    nmax = spec.n or 3
    for t in range(spec.trials):
        n = rng.randint(1, nmax)
        p = _random_laurent(rng, n)
        q = _random_laurent(rng, n)
        comps = [_random_laurent(rng, n) for _ in range(n)]
        xi = PolyVectorField(comps)
        out.draws += 1
        inst = {"p": _poly_json(p), "q": _poly_json(q), "xi": _field_json(xi)}
        lhs = newton_polytope(p * q)
        rhs = minkowski_sum(newton_polytope(p), newton_polytope(q))
        ok = lhs == rhs
        xp = lie_derivative(xi, p)
        if ok and not xp.is_zero:
            big = minkowski_sum(newton_polytope(p), hull(field_points(xi)))
            ok = all(big.contains(e) for e in xp.support)
        report = TrialReport(f"delta-{spec.seed}-{t}", "Delta(pq) = Delta(p) + Delta(q); Delta(xi p) in Delta(p) + Delta_xi",
                             [list(v) for v in lhs.vertices], [list(v) for v in rhs.vertices],
                             "pass" if ok else "fail", inst)
        _record(out, report)
        if not ok:
            break
    return out


def _random_laurent(rng, n) -> LaurentPolynomial:
    while True:
        k = rng.randint(1, 4)
        terms = {tuple(rng.randint(-2, 2) for _ in range(n)): _rand_coeff_small(rng, 5) for _ in range(k)}
        p = LaurentPolynomial(n, terms)
        if not p.is_zero:
            return p


def _suite_hf(spec: InstanceSpec) -> SuiteSummary:
    rng = random.Random(spec.seed)
    out = SuiteSummary("hf", spec.seed, spec.trials)
    nmax = spec.n or 3
    for t in range(spec.trials):
        n = rng.randint(1, nmax)
        w = [rng.randint(1, 5) for _ in range(n)]
        g0 = math.gcd(*w)
        w = [a // g0 for a in w]
        deg_v = max(w)
        tdeg = rng.randint(1, spec.d or 4)
        g = [LaurentPolynomial.monomial(1, (a,)) for a in w]
        A = _monomials(n, tdeg)
        h = hf_parametrized(g, A)
        upper = hf_upper_pure(deg_v, tdeg, 1)
        # toric class of a monomial curve against L_A: roots of sum c_a t^(w.a)
        vals = [sum(a * b for a, b in zip(w, e)) for e in A]
        toric = max(vals) - min(vals) + 1
        out.draws += 1
        inst = {"w": w, "t": tdeg, "n": n}
        ok = h <= upper and h <= toric and h <= len(A)
        report = TrialReport(f"hf-{spec.seed}-{t}", "hf <= deg(V) t + 1 and hf <= tc(V) L_A + 1",
                             h, min(upper, toric), "pass" if ok else "fail", inst)
        _record(out, report)
        if not ok:
            break
    return out


def _suite_mv_axioms(spec: InstanceSpec) -> SuiteSummary:
    rng = random.Random(spec.seed)
    out = SuiteSummary("mv-axioms", spec.seed, spec.trials)
    nmax = spec.n or 3
    for t in range(spec.trials):
        n = rng.randint(1, nmax)
        bodies = [hull(_random_points(rng, n, rng.randint(1, 5), -2, 2)) for _ in range(n)]
        extra = hull(_random_points(rng, n, rng.randint(1, 5), -2, 2))
        perm = list(range(n))
        rng.shuffle(perm)
        v = mixed_volume(bodies)
        checks = [
            ("symmetry", mixed_volume([bodies[i] for i in perm]), v),
            ("diagonal", mixed_volume([bodies[0]] * n), volume(bodies[0])),
            ("additivity", mixed_volume([minkowski_sum(bodies[0], extra)] + bodies[1:]),
             v + mixed_volume([extra] + bodies[1:])),
        ]
        out.draws += 1
        inst = {"n": n, "bodies": [[list(x) for x in b.vertices] for b in bodies],
                "extra": [list(x) for x in extra.vertices], "perm": perm}
        bad = next((c for c in checks if c[1] != c[2]), None)
        if bad:
            report = TrialReport(f"mv-{spec.seed}-{t}", bad[0], bad[1], bad[2], "fail", inst)
        else:
            report = TrialReport(f"mv-{spec.seed}-{t}", "symmetry; diagonal; additivity", v, v, "pass", inst)
        _record(out, report)
        if bad:
            break
    return out


SUITES: dict[str, Callable[[InstanceSpec], SuiteSummary]] = {
    "bk": bk_check,
    "vol-ivol": _suite_vol_ivol,
    "rolle-order": _suite_rolle,
    "bound-soundness": _suite_soundness,
    "delta-additivity": _suite_delta_additivity,
    "hf": _suite_hf,
    "mv-axioms": _suite_mv_axioms,
}


def run_property_suite(name: str, spec: InstanceSpec) -> SuiteSummary:
    if name not in SUITES:
        raise MultboundError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return SUITES[name](spec)
