"""Exact integral polytopes.

Hulls are computed with an integer double-description routine, so every
vertex, facet and volume is exact.  Lower-dimensional point sets are
handled by projecting onto a set of pivot coordinates of their affine
hull, which keeps lattice points lattice points.

Facets are stored as ``normal . x <= offset`` with a primitive integer
normal; lower-dimensional bodies additionally carry affine equations
``normal . x == offset``.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, GuardError, PolytopeError

MAX_DIM = 6
MAX_BOX = 10**7


def _num(v):
    """Normalize a scalar to int when it is integral, else Fraction."""
    if isinstance(v, int):
        return v
    v = Fraction(v)
    return v.numerator if v.denominator == 1 else v


def _point(p) -> tuple:
    return tuple(_num(c) for c in p)


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _lcm(values: Iterable[int]) -> int:
    return reduce(lambda x, y: x * y // math.gcd(x, y), values, 1)


def _primitive(vec: Sequence) -> tuple[int, ...]:
    """Scale a rational vector to the primitive integer vector in the same direction."""
    den = _lcm(Fraction(c).denominator for c in vec)
    ints = [int(Fraction(c) * den) for c in vec]
    g = reduce(math.gcd, ints, 0)
    if g == 0:
        return tuple(ints)
    return tuple(c // g for c in ints)


def _row_echelon(rows: list[list[Fraction]], ncols: int):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    m = [list(map(Fraction, r)) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    return len(_row_echelon(rows, ncols if ncols is not None else len(rows[0]))[1])


def _nullspace(rows: list[list], ncols: int) -> list[tuple[int, ...]]:
    """Integer basis of {c : row . c = 0 for all rows}."""
    if not rows:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    red, pivots = _row_echelon(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(_primitive(v))
    return basis


def _independent_rows(rows: Sequence[Sequence[int]], m: int) -> list[int]:
    """Greedy indices of m linearly independent rows (fewer if rank-deficient)."""
    chosen: list[int] = []
    basis: list[tuple[list[Fraction], int]] = []
    for idx, row in enumerate(rows):
        v = [Fraction(x) for x in row]
        for b, p in basis:
            if v[p] != 0:
                f = v[p] / b[p]
                v = [x - f * y for x, y in zip(v, b)]
        p = next((i for i, x in enumerate(v) if x != 0), None)
        if p is None:
            continue
        basis.append((v, p))
        chosen.append(idx)
        if len(chosen) == m:
            break
    return chosen


def _inverse(mat: list[list[int]]) -> list[list[Fraction]]:
    n = len(mat)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(mat)]
    red, pivots = _row_echelon(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise PolytopeError("singular basis in double description")
    return [row[n:] for row in red]


def extreme_rays(rows: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone ``{y : r . y >= 0 for every row r}``.

    Double-description method in exact integer arithmetic with the
    combinatorial adjacency test.  The rows must have full column rank,
    which makes the cone pointed.  Returns primitive integer rays.
    """
    rows = [tuple(int(x) for x in r) for r in rows]
    m = len(rows[0])
    start = _independent_rows(rows, m)
    if len(start) < m:
        raise PolytopeError("constraint rows do not have full column rank")
    inv = _inverse([list(rows[i]) for i in start])
    rays = [_primitive([inv[i][j] for i in range(m)]) for j in range(m)]
    full = (1 << m) - 1
    masks = [full ^ (1 << j) for j in range(m)]
    nbits = m
    in_start = set(start)
    for idx, h in enumerate(rows):
        if idx in in_start:
            continue
        bit = 1 << nbits
        nbits += 1
        vals = [_dot(h, r) for r in rays]
        minus = [i for i, v in enumerate(vals) if v < 0]
        if not minus:
            masks = [mk | bit if v == 0 else mk for mk, v in zip(masks, vals)]
            continue
        plus = [i for i, v in enumerate(vals) if v > 0]
        new_rays, new_masks = [], []
        for i, v in enumerate(vals):
            if v > 0:
                new_rays.append(rays[i])
                new_masks.append(masks[i])
            elif v == 0:
                new_rays.append(rays[i])
                new_masks.append(masks[i] | bit)
        for i in plus:
            for j in minus:
                common = masks[i] & masks[j]
                if common.bit_count() < m - 2:
                    continue
                if any(k != i and k != j and (masks[k] & common) == common
                       for k in range(len(rays))):
                    continue
                vi, vj = vals[i], vals[j]
                combo = [vi * a - vj * b for a, b in zip(rays[j], rays[i])]
                new_rays.append(_primitive(combo))
                new_masks.append(common | bit)
        rays, masks = new_rays, new_masks
    return rays


@dataclass(frozen=True, eq=False)
class IntegralPolytope:
    """Convex hull of finitely many points of Z^n (or Q^n after truncation).

    Build instances with :func:`hull`; the constructor does no checking.
    """
    dim: int
    vertices: tuple[tuple, ...]
    inequalities: tuple[tuple[tuple[int, ...], object], ...]
    equations: tuple[tuple[tuple[int, ...], object], ...]
    affine_dim: int

    def __eq__(self, other):
        if not isinstance(other, IntegralPolytope):
            return NotImplemented
        return self.dim == other.dim and self.vertices == other.vertices

    def __hash__(self):
        return hash((self.dim, self.vertices))

    def __repr__(self):
        verts = ", ".join("(" + ", ".join(str(c) for c in v) + ")" for v in self.vertices)
        return f"IntegralPolytope(dim={self.dim}, vertices=[{verts}])"

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @property
    def is_full_dimensional(self) -> bool:
        return self.affine_dim == self.dim

    @property
    def integral(self) -> bool:
        return all(isinstance(c, int) for v in self.vertices for c in v)

    def contains(self, point) -> bool:
        point = _point(point)
        if self.is_empty:
            return False
        return (all(_dot(a, point) <= b for a, b in self.inequalities)
                and all(_dot(a, point) == b for a, b in self.equations))

    def contains_polytope(self, other: "IntegralPolytope") -> bool:
        return all(self.contains(v) for v in other.vertices)

    def facets(self):
        return self.inequalities

    def to_json(self) -> dict:
        def enc(c):
            return c if isinstance(c, int) else str(c)
        return {
            "dim": self.dim,
            "vertices": [[enc(c) for c in v] for v in self.vertices],
            "affine_dim": self.affine_dim,
            "facets": [{"normal": list(a), "offset": enc(b)} for a, b in self.inequalities],
            "equations": [{"normal": list(a), "offset": enc(b)} for a, b in self.equations],
            "integral": self.integral,
        }

    @classmethod
    def from_json(cls, data: dict) -> "IntegralPolytope":
        dim = int(data["dim"])
        verts = [tuple(_num(Fraction(c)) for c in v) for v in data["vertices"]]
        if any(len(v) != dim for v in verts):
            raise DimensionMismatch("vertex length does not match dim")
        if not verts:
            return empty(dim)
        return hull(verts)


def empty(n: int) -> IntegralPolytope:
    return IntegralPolytope(n, (), (), (), -1)


def _full_dim_facets(points: list[tuple]):
    """Facets of a full-dimensional hull of distinct points in R^k."""
    k = len(points[0])
    centroid = [sum(Fraction(p[i]) for p in points) / len(points) for i in range(k)]
    order = sorted(points, key=lambda p: -sum((Fraction(c) - g) ** 2 for c, g in zip(p, centroid)))
    rows = []
    for p in order:
        den = _lcm(Fraction(c).denominator for c in p)
        rows.append((den,) + tuple(int(Fraction(c) * den) for c in p))
    facets = []
    for ray in extreme_rays(rows):
        b, a = ray[0], ray[1:]
        g = reduce(math.gcd, a, 0)
        if g == 0:
            raise PolytopeError("degenerate facet")
        facets.append((tuple(-c // g for c in a), _num(Fraction(b, g))))
    return sorted(set(facets))


def hull(points: Iterable[Sequence], max_dim: int = MAX_DIM) -> IntegralPolytope:
    """Convex hull with a minimal vertex set and a facet description."""
    pts = sorted(set(_point(p) for p in points))
    if not pts:
        raise PolytopeError("hull of an empty point set")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise DimensionMismatch("points of mixed dimension")
    if n < 1:
        raise PolytopeError("ambient dimension must be positive")
    if n > max_dim:
        raise GuardError(f"dimension {n} exceeds guard {max_dim}")
    p0 = pts[0]
    diffs = [[Fraction(a) - b for a, b in zip(p, p0)] for p in pts[1:]]
    if diffs:
        _, pivots = _row_echelon(diffs, n)
    else:
        pivots = []
    k = len(pivots)
    equations = []
    for c in _nullspace(diffs, n) if k < n else []:
        equations.append((c, _num(_dot(c, p0))))
    equations.sort()
    if k == 0:
        return IntegralPolytope(n, (p0,), (), tuple(equations), 0)
    proj = [tuple(p[j] for j in pivots) for p in pts]
    rel = _full_dim_facets(proj)
    ineqs = []
    for a, b in rel:
        full = [0] * n
        for j, c in zip(pivots, a):
            full[j] = c
        ineqs.append((tuple(full), b))
    ineqs.sort()
    vertices = []
    for p, q in zip(pts, proj):
        tight = [a for a, b in rel if _dot(a, q) == b]
        if len(tight) >= k and rank(tight, k) == k:
            vertices.append(p)
    poly = IntegralPolytope(n, tuple(vertices), tuple(ineqs), tuple(equations), k)
    for v in vertices:
        if not poly.contains(v):
            raise PolytopeError("vertex/facet representations disagree")
    return poly


def point(p: Sequence) -> IntegralPolytope:
    return hull([p])


def standard_simplex(n: int, coords: Sequence[int] | None = None) -> IntegralPolytope:
    """conv{0, e_i : i in coords}; all coordinates by default."""
    coords = range(n) if coords is None else coords
    pts = [tuple([0] * n)]
    for i in coords:
        pts.append(tuple(int(j == i) for j in range(n)))
    return hull(pts)


def box(lo: Sequence[int], hi: Sequence[int]) -> IntegralPolytope:
    ranges = [(a, b) for a, b in zip(lo, hi)]
    return hull(itertools.product(*ranges))


def cube(n: int, d: int = 1) -> IntegralPolytope:
    """d * Pi_n, where Pi_n = [-1, 1]^n."""
    return box([-d] * n, [d] * n)


def minkowski_sum(a: IntegralPolytope, b: IntegralPolytope) -> IntegralPolytope:
    if a.dim != b.dim:
        raise DimensionMismatch(f"Minkowski sum of dimensions {a.dim} and {b.dim}")
    if a.is_empty or b.is_empty:
        return empty(a.dim)
    return hull(tuple(x + y for x, y in zip(u, v)) for u in a.vertices for v in b.vertices)


def minkowski_sum_all(bodies: Sequence[IntegralPolytope]) -> IntegralPolytope:
    return reduce(minkowski_sum, bodies)


def scale(a: IntegralPolytope, k) -> IntegralPolytope:
    """Dilation k * a for a nonnegative integer (or rational) k."""
    k = _num(k)
    if k < 0:
        raise PolytopeError("dilation factor must be nonnegative")
    if a.is_empty:
        return a
    if k == 0:
        return point([0] * a.dim)
    verts = tuple(tuple(_num(k * c) for c in v) for v in a.vertices)
    return IntegralPolytope(
        a.dim, verts,
        tuple((n, _num(k * b)) for n, b in a.inequalities),
        tuple((n, _num(k * b)) for n, b in a.equations),
        a.affine_dim,
    )


def translate(a: IntegralPolytope, shift: Sequence) -> IntegralPolytope:
    shift = _point(shift)
    if a.is_empty:
        return a
    verts = tuple(tuple(_num(c + s) for c, s in zip(v, shift)) for v in a.vertices)
    return IntegralPolytope(
        a.dim, verts,
        tuple((n, _num(b + _dot(n, shift))) for n, b in a.inequalities),
        tuple((n, _num(b + _dot(n, shift))) for n, b in a.equations),
        a.affine_dim,
    )


@lru_cache(maxsize=4096)
def _volume_of(vertices: tuple, inequalities: tuple, d: int) -> Fraction:
    if d == 1:
        xs = [v[0] for v in vertices]
        return Fraction(max(xs) - min(xs))
    v0 = vertices[0]
    total = Fraction(0)
    for normal, offset in inequalities:
        h = offset - _dot(normal, v0)
        if h == 0:
            continue
        face = [v for v in vertices if _dot(normal, v) == offset]
        j = max(range(d), key=lambda i: abs(normal[i]))
        proj = hull([v[:j] + v[j + 1:] for v in face])
        if proj.affine_dim < d - 1:
            raise PolytopeError("facet is not (d-1)-dimensional")
        total += h * _volume_of(proj.vertices, proj.inequalities, d - 1) / abs(normal[j])
    return total / d


def volume(a: IntegralPolytope) -> Fraction:
    """Exact Euclidean volume; 0 for lower-dimensional (or empty) bodies."""
    if a.is_empty or a.affine_dim < a.dim:
        return Fraction(0)
    return _volume_of(a.vertices, a.inequalities, a.dim)


def _lattice_range(a: IntegralPolytope):
    lo = [math.ceil(min(Fraction(v[i]) for v in a.vertices)) for i in range(a.dim)]
    hi = [math.floor(max(Fraction(v[i]) for v in a.vertices)) for i in range(a.dim)]
    return lo, hi


def _constraint_matrix(a: IntegralPolytope):
    A, b, E, e = [], [], [], []
    for normal, offset in a.inequalities:
        den = Fraction(offset).denominator
        A.append([c * den for c in normal])
        b.append(int(Fraction(offset) * den))
    for normal, offset in a.equations:
        den = Fraction(offset).denominator
        E.append([c * den for c in normal])
        e.append(int(Fraction(offset) * den))
    return A, b, E, e


def _iter_lattice_blocks(a: IntegralPolytope, max_box: int):
    """Yield (points array, mask) blocks covering the lattice points of the bounding box."""
    lo, hi = _lattice_range(a)
    if any(l > h for l, h in zip(lo, hi)):
        return
    size = math.prod(h - l + 1 for l, h in zip(lo, hi))
    if size > max_box:
        raise GuardError(f"bounding box holds {size} lattice points, guard is {max_box}")
    A, b, E, e = _constraint_matrix(a)
    bound = max([abs(x) for x in lo + hi] + [1])
    coef = max([abs(x) for row in A + E for x in row] + [abs(x) for x in b + e] + [1])
    dtype = np.int64 if bound * coef * (a.dim + 1) < 2**62 else object
    A_ = np.array(A, dtype=dtype).reshape(len(A), a.dim)
    b_ = np.array(b, dtype=dtype)
    E_ = np.array(E, dtype=dtype).reshape(len(E), a.dim)
    e_ = np.array(e, dtype=dtype)
    inner = min(a.dim, 2)
    outer_ranges = [range(l, h + 1) for l, h in zip(lo[:-inner], hi[:-inner])]
    axes = [np.arange(l, h + 1, dtype=np.int64).astype(dtype) for l, h in zip(lo[-inner:], hi[-inner:])]
    grids = np.meshgrid(*axes, indexing="ij")
    tail = np.stack([g.ravel() for g in grids], axis=1)
    for head in itertools.product(*outer_ranges):
        pts = np.empty((tail.shape[0], a.dim), dtype=dtype)
        if head:
            pts[:, :len(head)] = np.array(head, dtype=dtype)
        pts[:, len(head):] = tail
        ok = np.ones(pts.shape[0], dtype=bool)
        if len(A):
            ok &= np.all(pts @ A_.T <= b_, axis=1)
        if len(E):
            ok &= np.all(pts @ E_.T == e_, axis=1)
        yield pts, ok


def lattice_count(a: IntegralPolytope, max_box: int = MAX_BOX) -> int:
    """Number of integer points of a (ivol)."""
    if a.is_empty:
        return 0
    return int(sum(int(ok.sum()) for _, ok in _iter_lattice_blocks(a, max_box)))


def lattice_points(a: IntegralPolytope, max_box: int = MAX_BOX) -> list[tuple[int, ...]]:
    if a.is_empty:
        return []
    out = []
    for pts, ok in _iter_lattice_blocks(a, max_box):
        out.extend(tuple(int(c) for c in p) for p in pts[ok])
    return sorted(out)


def mixed_volume(bodies: Sequence[IntegralPolytope]) -> Fraction:
    """V(K_1, ..., K_n) by the polarization formula.

    Identical bodies are grouped so that each Minkowski combination is
    formed once, as a sum of dilations.
    """
    n = len(bodies)
    if n == 0:
        raise DimensionMismatch("mixed volume of no bodies")
    for k in bodies:
        if k.dim != n:
            raise DimensionMismatch(f"{n} bodies in dimension {k.dim}")
    distinct: list[IntegralPolytope] = []
    slots = []
    for k in bodies:
        for i, d in enumerate(distinct):
            if d == k:
                slots.append(i)
                break
        else:
            distinct.append(k)
            slots.append(len(distinct) - 1)
    cache: dict[tuple[int, ...], Fraction] = {}
    total = Fraction(0)
    for size in range(1, n + 1):
        sign = -1 if (n - size) % 2 else 1
        for subset in itertools.combinations(range(n), size):
            counts = Counter(slots[i] for i in subset)
            key = tuple(counts.get(i, 0) for i in range(len(distinct)))
            if key not in cache:
                parts = [scale(distinct[i], c) for i, c in enumerate(key) if c]
                cache[key] = volume(minkowski_sum_all(parts))
            total += sign * cache[key]
    return total / math.factorial(n)


def quermassintegral(a: IntegralPolytope, j: int) -> Fraction:
    """W_j(a) = V(a, ..., a, S, ..., S) with j copies of the standard simplex S."""
    n = a.dim
    if not 0 <= j <= n:
        raise PolytopeError(f"quermassintegral index {j} outside 0..{n}")
    if j == 0:
        return volume(a)
    return mixed_volume([a] * (n - j) + [standard_simplex(n)] * j)


def pi_degree(a: IntegralPolytope) -> int:
    """Smallest d in N with a inside d * [-1, 1]^n."""
    if a.is_empty:
        return 0
    return max((math.ceil(abs(Fraction(c))) for v in a.vertices for c in v), default=0)


def intersect_halfspaces(a: IntegralPolytope, extra: Sequence[tuple[Sequence[int], object]]) -> IntegralPolytope:
    """Intersection of a with extra halfspaces ``normal . x <= offset``.

    The extra constraints must bound the result (a box always does).
    """
    n = a.dim
    if a.is_empty:
        return a
    rows = []

    def add(normal, offset):
        offset = Fraction(offset)
        den = offset.denominator
        rows.append((int(offset * den),) + tuple(-c * den for c in normal))

    for normal, offset in list(a.inequalities) + list(extra):
        add(normal, offset)
    for normal, offset in a.equations:
        add(normal, offset)
        add(tuple(-c for c in normal), -Fraction(offset))
    rows.append((1,) + (0,) * n)
    verts = [tuple(Fraction(r[i + 1], r[0]) for i in range(n)) for r in extreme_rays(rows) if r[0] > 0]
    if not verts:
        return empty(n)
    return hull(verts)


def intersect_box(a: IntegralPolytope, lo: Sequence[int], hi: Sequence[int]) -> IntegralPolytope:
    n = a.dim
    extra = []
    for i in range(n):
        e = tuple(int(j == i) for j in range(n))
        extra.append((e, hi[i]))
        extra.append((tuple(-c for c in e), -lo[i]))
    return intersect_halfspaces(a, extra)


def truncate_to_box(a: IntegralPolytope, d: int) -> IntegralPolytope:
    """a intersected with d * Pi_n.  The result may have rational vertices."""
    if d < 1:
        raise PolytopeError("box size d must be >= 1")
    return intersect_box(a, [-d] * a.dim, [d] * a.dim)


def is_coideal(a: IntegralPolytope) -> bool:
    """True when the lattice points of a are closed under decreasing coordinates inside Z_{>=0}^n."""
    if any(c < 0 for v in a.vertices for c in v):
        raise PolytopeError("co-ideal test needs vertices in the nonnegative orthant")
    pts = set(lattice_points(a))
    for p in pts:
        for i, c in enumerate(p):
            if c > 0 and p[:i] + (c - 1,) + p[i + 1:] not in pts:
                return False
    return True
