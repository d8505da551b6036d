"""Truncated power series and trajectory germs of polynomial vector fields.

Coefficients are produced lazily by small stream objects: a monomial in
the germ's components is a chain of products (and inverses, for negative
exponents), each caching the coefficients it has already produced.  The
ODE solvers are streams too, so asking a composed series for its k-th
coefficient expands the trajectory exactly as far as needed and no
further.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import LaurentPolynomial, PolyVectorField
from .errors import (DimensionMismatch, InconsistentBasePoint, ResonanceError, SeriesError,
                     SingularPointError, TruncationReached)

PROVENANCES = ("regular-expansion", "rational-system", "fuchsian", "user-supplied")


class TruncatedSeries:
    """c_0 + c_1 t + ... + c_N t^N, known exactly up to order N."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        if not coeffs:
            raise SeriesError("a series needs at least the constant coefficient")
        self.coeffs = tuple(Fraction(c) for c in coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"TruncatedSeries({[str(c) for c in self.coeffs]})"

    def _other(self, other):
        if isinstance(other, TruncatedSeries):
            return other
        return TruncatedSeries([other])._pad(self.order)

    def _pad(self, n):
        return TruncatedSeries(self.coeffs + (Fraction(0),) * (n + 1 - len(self.coeffs)))

    def __add__(self, other):
        other = self._other(other)
        n = min(self.order, other.order)
        return TruncatedSeries([a + b for a, b in zip(self.coeffs[:n + 1], other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            c = Fraction(other)
            return TruncatedSeries([a * c for a in self.coeffs])
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        return TruncatedSeries([sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(n + 1)])

    __rmul__ = __mul__

    def inverse(self) -> "TruncatedSeries":
        if self.coeffs[0] == 0:
            raise SeriesError("series with zero constant term is not invertible")
        inv0 = 1 / self.coeffs[0]
        out = [inv0]
        for k in range(1, len(self.coeffs)):
            out.append(-inv0 * sum(self.coeffs[i] * out[k - i] for i in range(1, k + 1)))
        return TruncatedSeries(out)

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return self * other.inverse()
        return self * (1 / Fraction(other))

    def derivative(self) -> "TruncatedSeries":
        if self.order == 0:
            return TruncatedSeries([0])
        return TruncatedSeries([k * c for k, c in enumerate(self.coeffs) if k][:self.order])

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, None if all known ones vanish."""
        return next((k for k, c in enumerate(self.coeffs) if c), None)

    def truncate(self, n: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs[:n + 1])


# lazy coefficient streams

class _Stream:
    __slots__ = ("c", "nz")

    def __init__(self):
        self.c: list[Fraction] = []
        self.nz: list[int] = []

    def _push(self, v):
        if v:
            self.nz.append(len(self.c))
        self.c.append(v)

    def __getitem__(self, k: int) -> Fraction:
        while len(self.c) <= k:
            self._push(self._next(len(self.c)))
        return self.c[k]

    def _next(self, k: int) -> Fraction:
        raise NotImplementedError

    def truncate(self, k: int):
        del self.c[k:]
        while self.nz and self.nz[-1] >= k:
            self.nz.pop()


class _Fixed(_Stream):
    """Stored coefficients; past the end either zero (exact) or an error."""
    __slots__ = ("data", "exact")

    def __init__(self, data: Sequence[Fraction], exact: bool = False):
        super().__init__()
        self.data = list(data)
        self.exact = exact

    def _next(self, k):
        if k < len(self.data):
            return self.data[k]
        if self.exact:
            return Fraction(0)
        raise TruncationReached(len(self.data) - 1)


class _One(_Stream):
    def _next(self, k):
        return Fraction(1 if k == 0 else 0)


def _nz_upto(s: _Stream, k: int) -> list[int]:
    nz = s.nz
    if nz and nz[-1] > k:
        return [i for i in nz if i <= k]
    return nz


class _Product(_Stream):
    __slots__ = ("a", "b")

    def __init__(self, a, b):
        super().__init__()
        self.a, self.b = a, b

    def _next(self, k):
        a, b = self.a, self.b
        a[k]
        b[k]
        na, nb = _nz_upto(a, k), _nz_upto(b, k)
        if len(nb) < len(na):
            a, na = b, nb
            b = self.a
        bc, ac = b.c, a.c
        total = Fraction(0)
        for i in na:
            v = bc[k - i]
            if v:
                total += ac[i] * v
        return total


class _Inverse(_Stream):
    __slots__ = ("a",)

    def __init__(self, a):
        super().__init__()
        self.a = a

    def _next(self, k):
        a = self.a
        a0 = a[0]
        if a0 == 0:
            raise SeriesError("negative exponent on a component with zero constant term")
        if k == 0:
            return 1 / a0
        a[k]
        total = Fraction(0)
        for i in _nz_upto(a, k):
            if i:
                total += a.c[i] * self.c[k - i]
        return -total / a0


class _LinComb(_Stream):
    __slots__ = ("parts",)

    def __init__(self, parts):
        super().__init__()
        self.parts = parts

    def _next(self, k):
        return sum((c * s[k] for c, s in self.parts), Fraction(0))


class _Quotient(_Stream):
    """p / q with q(0) != 0."""
    __slots__ = ("p", "q")

    def __init__(self, p, q):
        super().__init__()
        self.p, self.q = p, q

    def _next(self, k):
        q0 = self.q[0]
        if q0 == 0:
            raise SingularPointError("vanishing denominator at the base point")
        total = self.p[k]
        self.q[k]
        for i in _nz_upto(self.q, k):
            if i:
                total -= self.q.c[i] * self.c[k - i]
        return total / q0


class _Engine:
    """Builds and caches monomial streams over a list of variable streams."""

    def __init__(self, variables: Sequence[_Stream]):
        self.vars = list(variables)
        self.dim = len(self.vars)
        self.monos: dict[tuple[int, ...], _Stream] = {(0,) * self.dim: _One()}
        self.invs: dict[int, _Stream] = {}
        self.derived: list[_Stream] = []

    def _track(self, s):
        self.derived.append(s)
        return s

    def monomial(self, exp: tuple[int, ...]) -> _Stream:
        s = self.monos.get(exp)
        if s is not None:
            return s
        j = max(i for i, e in enumerate(exp) if e)
        parent = list(exp)
        if exp[j] > 0:
            parent[j] -= 1
            factor = self.vars[j]
        else:
            parent[j] += 1
            if j not in self.invs:
                self.invs[j] = self._track(_Inverse(self.vars[j]))
            factor = self.invs[j]
        p = self.monomial(tuple(parent))
        s = factor if isinstance(p, _One) else self._track(_Product(p, factor))
        self.monos[exp] = s
        return s

    def poly(self, p: LaurentPolynomial) -> _Stream:
        if p.dim != self.dim:
            raise DimensionMismatch(f"polynomial of dimension {p.dim} on a germ of dimension {self.dim}")
        return self._track(_LinComb([(c, self.monomial(e)) for e, c in p.items()]))

    def quotient(self, p: _Stream, q: _Stream) -> _Stream:
        return self._track(_Quotient(p, q))

    def reset_from(self, k: int):
        for s in self.derived:
            s.truncate(k)


@dataclass(frozen=True)
class TrajectoryGerm:
    """Vector of truncated series in a local time t.

    ``time_index`` marks graph germs, whose component at that index is
    z0 + t; residual checks then multiply through by the field's time
    component instead of dividing.  ``exact`` germs are polynomial in t,
    so their coefficients past ``order`` are known to vanish.
    """
    components: tuple[TruncatedSeries, ...]
    provenance: str = "user-supplied"
    time_index: int | None = None
    exact: bool = False

    def __post_init__(self):
        if not self.components:
            raise DimensionMismatch("germ needs at least one component")
        if len({c.order for c in self.components}) != 1:
            raise SeriesError("germ components must share one truncation order")
        if self.provenance not in PROVENANCES:
            raise SeriesError(f"unknown provenance {self.provenance!r}")

    @property
    def dim(self) -> int:
        return len(self.components)

    @property
    def order(self) -> int:
        return self.components[0].order

    @property
    def base_point(self) -> tuple[Fraction, ...]:
        return tuple(c[0] for c in self.components)

    @property
    def max_order(self) -> int | None:
        return None if self.exact else self.order

    def streams(self) -> list[_Stream]:
        return [_Fixed(c.coeffs, self.exact) for c in self.components]

    def truncate(self, n: int) -> "TrajectoryGerm":
        if n > self.order and not self.exact:
            raise TruncationReached(self.order)
        comps = tuple(TruncatedSeries([s[k] for k in range(n + 1)]) for s in self.streams())
        return TrajectoryGerm(comps, self.provenance, self.time_index, self.exact)

    def to_json(self) -> dict:
        out = {
            "dim": self.dim,
            "order": self.order,
            "components": [[str(c) for c in s] for s in self.components],
            "provenance": self.provenance,
        }
        if self.time_index is not None:
            out["time_index"] = self.time_index
        if self.exact:
            out["exact"] = True
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "TrajectoryGerm":
        comps = tuple(TruncatedSeries([Fraction(c) for c in s]) for s in data["components"])
        if "dim" in data and int(data["dim"]) != len(comps):
            raise DimensionMismatch("germ dim does not match its component count")
        germ = cls(comps, data.get("provenance", "user-supplied"), data.get("time_index"),
                   bool(data.get("exact", False)))
        if "order" in data and int(data["order"]) != germ.order:
            raise SeriesError("germ order does not match its coefficient lists")
        return germ


def polynomial_germ(components: Sequence[Sequence], time_index: int | None = None) -> TrajectoryGerm:
    """Germ whose components are polynomials in t, given by coefficient lists."""
    n = max(len(c) for c in components)
    comps = tuple(TruncatedSeries(list(c) + [0] * (n - len(c))) for c in components)
    return TrajectoryGerm(comps, "user-supplied", time_index, exact=True)


class Expansion:
    """A trajectory solved lazily, one order at a time."""

    provenance = "user-supplied"
    time_index: int | None = None
    max_order = None

    def __init__(self):
        self.order = 0

    def streams(self) -> list[_Stream]:
        return self.vars

    @property
    def dim(self) -> int:
        return len(self.vars)

    def _ensure(self, k):
        while self.order < k:
            self._step(self.order + 1)
            self.order += 1

    def germ(self, N: int) -> TrajectoryGerm:
        if N < 1:
            raise SeriesError("truncation order must be >= 1")
        self._ensure(N)
        comps = tuple(TruncatedSeries([v[k] for k in range(N + 1)]) for v in self.vars)
        return TrajectoryGerm(comps, self.provenance, self.time_index)


class _Solved(_Stream):
    __slots__ = ("owner",)

    def __init__(self, owner, c0):
        super().__init__()
        self.owner = owner
        self._push(Fraction(c0))

    def __getitem__(self, k):
        if len(self.c) <= k:
            self.owner._ensure(k)
        return self.c[k]

    def set(self, k, v):
        self.truncate(k)
        self._push(v)


class RegularExpansion(Expansion):
    """x' = xi(x), x(0) = p, at a non-singular point."""

    provenance = "regular-expansion"

    def __init__(self, xi: PolyVectorField, p: Sequence):
        super().__init__()
        p = [Fraction(v) for v in p]
        if len(p) != xi.dim:
            raise DimensionMismatch("base point dimension differs from the field")
        if xi.is_singular_at(p):
            raise SingularPointError("field vanishes at the base point; use a Fuchsian expansion or a user germ")
        self.vars = [_Solved(self, v) for v in p]
        self.engine = _Engine(self.vars)
        self.rhs = [self.engine.poly(c) for c in xi.components]

    def _step(self, k):
        vals = [r[k - 1] / k for r in self.rhs]
        for v, c in zip(self.vars, vals):
            v.set(k, c)


class RationalExpansion(Expansion):
    """dx_i/dz = P_i/Q_i as a graph germ (z0 + t, x_1(t), ..., x_n(t))."""

    provenance = "rational-system"
    time_index = 0

    def __init__(self, P: Sequence[LaurentPolynomial], Q: Sequence[LaurentPolynomial], z0, x0: Sequence):
        super().__init__()
        if len(P) != len(Q) or len(P) != len(x0):
            raise DimensionMismatch("P, Q and x0 must have the same length")
        point = [Fraction(z0)] + [Fraction(v) for v in x0]
        for q in Q:
            if q.evaluate(point) == 0:
                raise SingularPointError("vanishing denominator at the base point")
        self.vars = [_Fixed([point[0], Fraction(1)], exact=True)] + [_Solved(self, v) for v in point[1:]]
        self.engine = _Engine(self.vars)
        self.rhs = [self.engine.quotient(self.engine.poly(p), self.engine.poly(q)) for p, q in zip(P, Q)]

    def _step(self, k):
        vals = [r[k - 1] / k for r in self.rhs]
        for v, c in zip(self.vars[1:], vals):
            v.set(k, c)


def _solve(mat, rhs, fixed: Mapping[int, Fraction] | None = None):
    """Solve mat . c = rhs with some entries of c prescribed.

    Returns None when the free entries are not uniquely determined and
    raises ValueError when the prescribed entries make the system
    inconsistent.
    """
    fixed = fixed or {}
    n = len(mat)
    free = [j for j in range(n) if j not in fixed]
    rows = []
    for i in range(n):
        b = rhs[i] - sum((mat[i][j] * v for j, v in fixed.items()), Fraction(0))
        rows.append([mat[i][j] for j in free] + [b])
    r = 0
    pivots = []
    for col in range(len(free)):
        piv = next((i for i in range(r, n) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    if any(rows[i][-1] != 0 for i in range(r, n)):
        raise ValueError("inconsistent linear system")
    if r < len(free):
        return None
    sol = dict(fixed)
    for i, col in enumerate(pivots):
        sol[free[col]] = rows[i][-1]
    return [Fraction(sol[j]) for j in range(n)]


class FuchsianExpansion(Expansion):
    """z x' = F(z, x) through (0, x0), as a graph germ (t, x(t)).

    Order k solves (k I - J) c_k = F(t, x)[k] evaluated with c_k = 0,
    where J = dF/dx at (0, x0).  At a resonant order the solution is not
    unique; ``prescribed`` maps such an order to the coefficients that
    pin it down (a list with None for entries left to the solver).
    """

    provenance = "fuchsian"
    time_index = 0

    def __init__(self, F: Sequence[LaurentPolynomial], x0: Sequence,
                 prescribed: Mapping[int, Sequence] | None = None):
        super().__init__()
        n = len(F)
        self.prescribed = {}
        for k, vals in (prescribed or {}).items():
            if int(k) < 1 or len(vals) != n:
                raise SeriesError(f"prescribed order {k} needs {n} entries (None for free)")
            self.prescribed[int(k)] = {j: Fraction(v) for j, v in enumerate(vals) if v is not None}
        if len(x0) != n:
            raise DimensionMismatch("x0 must have one entry per equation")
        if any(f.dim != n + 1 for f in F):
            raise DimensionMismatch("F must be polynomials in (z, x_1..x_n)")
        point = [Fraction(0)] + [Fraction(v) for v in x0]
        if any(f.evaluate(point) != 0 for f in F):
            raise InconsistentBasePoint("F(0, x0) must vanish componentwise")
        self.J = [[f.derivative(j + 1).evaluate(point) for j in range(n)] for f in F]
        self.vars = [_Fixed([Fraction(0), Fraction(1)], exact=True)] + [_Solved(self, v) for v in point[1:]]
        self.engine = _Engine(self.vars)
        self.rhs = [self.engine.poly(f) for f in F]

    def _step(self, k):
        xs = self.vars[1:]
        for v in xs:
            v.set(k, Fraction(0))
        rhs = [r[k] for r in self.rhs]
        n = len(xs)
        mat = [[Fraction(k * (i == j)) - self.J[i][j] for j in range(n)] for i in range(n)]
        try:
            sol = _solve(mat, rhs, self.prescribed.get(k))
        except ValueError:
            sol = None
            msg = f"resonance at order k={k}: prescribed coefficients are inconsistent"
        else:
            msg = None
        if sol is None:
            for v in xs:
                v.truncate(k)
            self.engine.reset_from(k)
            raise ResonanceError(k, msg)
        for v, c in zip(xs, sol):
            v.set(k, c)
        self.engine.reset_from(k)


def expand_regular(xi: PolyVectorField, p: Sequence, N: int) -> TrajectoryGerm:
    return RegularExpansion(xi, p).germ(N)


def expand_rational(P, Q, z0, x0, N: int) -> TrajectoryGerm:
    return RationalExpansion(P, Q, z0, x0).germ(N)


def expand_fuchsian(F, x0, N: int, prescribed: Mapping[int, Sequence] | None = None) -> TrajectoryGerm:
    return FuchsianExpansion(F, x0, prescribed).germ(N)


def rational_system_field(P: Sequence[LaurentPolynomial], Q: Sequence[LaurentPolynomial]) -> PolyVectorField:
    """Clear denominators: prod_j Q_j d/dz + sum_i P_i prod_{j != i} Q_j d/dx_i."""
    dim = P[0].dim
    one = LaurentPolynomial.constant(dim, 1)
    total = one
    for q in Q:
        total = total * q
    comps = [total]
    for i, p in enumerate(P):
        others = one
        for j, q in enumerate(Q):
            if j != i:
                others = others * q
        comps.append(p * others)
    return PolyVectorField(comps, time_index=0)


def fuchsian_field(F: Sequence[LaurentPolynomial]) -> PolyVectorField:
    """z d/dz + sum_i F_i d/dx_i."""
    dim = F[0].dim
    return PolyVectorField([LaurentPolynomial.variable(dim, 0)] + list(F), time_index=0)


def _check_dims(p_dim: int, germ) -> None:
    if p_dim != germ.dim:
        raise DimensionMismatch(f"polynomial of dimension {p_dim} on a germ of dimension {germ.dim}")


def compose(p: LaurentPolynomial, germ: TrajectoryGerm) -> TruncatedSeries:
    """p(gamma(t)) to the germ's order."""
    _check_dims(p.dim, germ)
    s = _Engine(germ.streams()).poly(p)
    return TruncatedSeries([s[k] for k in range(germ.order + 1)])


def composed_stream(p: LaurentPolynomial, source) -> _Stream:
    """Lazy p(gamma(t)) over a germ or an :class:`Expansion`."""
    _check_dims(p.dim, source)
    return _Engine(source.streams()).poly(p)


def residual_check(xi: PolyVectorField, germ: TrajectoryGerm) -> int | None:
    """First order at which the germ fails to be xi-invariant, None when clean.

    Coefficient j of gamma' pairs with coefficient j of xi(gamma), which
    involves gamma up to order j + 1; the reported order is j + 1.
    Checked through residual index N - 1, or for an exact polynomial germ
    through the degree of the residual, which certifies it completely.
    """
    if xi.dim != germ.dim:
        raise DimensionMismatch("field and germ dimensions differ")
    engine = _Engine(germ.streams())
    comps = [engine.poly(c) for c in xi.components]
    N = germ.order
    if germ.exact and xi.is_polynomial:
        N = N * (max(xi.delta, 1) + 1) + 1
    g = [s for s in engine.vars]
    ti = germ.time_index
    T = comps[ti] if ti is not None else None
    for j in range(N):
        for i in range(germ.dim):
            if T is None:
                lhs = (j + 1) * g[i][j + 1]
            else:
                lhs = sum(((a + 1) * g[i][a + 1] * T[j - a] for a in range(j + 1)), Fraction(0))
            if lhs != comps[i][j]:
                return j + 1
    return None
