"""Explicit multiplicity bounds and the constants behind them.

Everything is exact: integers stay Python ints (the constants overflow
64 bits almost immediately), volumes are Fractions, and a ceiling is
taken only on the final value.  Each bound returns a :class:`BoundReport`
that names every intermediate constant.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import BoundInputError
from .polytope import (IntegralPolytope, minkowski_sum, mixed_volume, pi_degree, point, scale,
                       standard_simplex, truncate_to_box, volume)


@dataclass
class BoundReport:
    theorem: str
    inputs: dict
    constants: dict
    value: int
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "inputs": _jsonable(self.inputs),
            "constants": _jsonable(self.constants),
            "value": self.value,
            "notes": list(self.notes),
        }


def _jsonable(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return obj.numerator if obj.denominator == 1 else str(obj)
    if isinstance(obj, IntegralPolytope):
        return obj.to_json()
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return str(obj)


def _ceil(x) -> int:
    return math.ceil(Fraction(x))


def _require(cond: bool, msg: str):
    if not cond:
        raise BoundInputError(msg)


def _check_n_delta(n: int, delta: int, min_delta: int = 0):
    _require(isinstance(n, int) and n >= 1, f"n must be an integer >= 1, got {n!r}")
    _require(isinstance(delta, int) and delta >= min_delta, f"delta must be an integer >= {min_delta}, got {delta!r}")


def nmorse_bound(n: int, delta: int, d: int) -> int:
    """2^(n+1) (d + (n-1) delta)^n."""
    _check_n_delta(n, delta)
    _require(isinstance(d, int) and d >= 1, f"d must be an integer >= 1, got {d!r}")
    return 2 ** (n + 1) * (d + (n - 1) * delta) ** n


def A_const(n: int) -> int:
    return 2 * math.factorial(n)


def B_const(n: int) -> int:
    return 16 * math.factorial(n)


def a_const(n: int, delta: int) -> tuple[int, int, int]:
    """(A_n, a, a~) with a = N(n, delta, A_n 2^n n delta) and a~ = delta * a.

    For delta = 0 the argument of N vanishes and both constants are 0.
    """
    _check_n_delta(n, delta)
    A = A_const(n)
    if delta == 0:
        return A, 0, 0
    a = nmorse_bound(n, delta, A * 2 ** n * n * delta)
    return A, a, delta * a


def b_const(n: int, delta: int) -> tuple[int, int]:
    """(B_n, b) with b = N(n, delta, 2n B_n 2^n n delta)."""
    _check_n_delta(n, delta)
    B = B_const(n)
    if delta == 0:
        return B, 0
    return B, nmorse_bound(n, delta, 2 * n * B * 2 ** n * n * delta)


def forest_degree_profile(n: int, delta: int, d: int) -> list[int]:
    """Degree caps (d + a~)^k of the forest levels k = 1..n."""
    _require(isinstance(d, int) and d >= 1, "d must be >= 1")
    _, _, at = a_const(n, delta)
    return [(d + at) ** k for k in range(1, n + 1)]


def pure_bound(n: int, delta: int, d: int, chi: int) -> BoundReport:
    """(d + a~)^n + (2 + chi)(d + a~)^(n-1)."""
    _require(chi >= 0, "chi must be >= 0")
    A, a, at = a_const(n, delta)
    profile = forest_degree_profile(n, delta, d)
    levels = [1] + profile
    value = levels[n] + (2 + chi) * levels[n - 1]
    notes = []
    if delta == 0:
        notes.append("delta = 0: a and a~ vanish")
    return BoundReport(
        "pure",
        {"n": n, "delta": delta, "d": d, "chi": chi},
        {"A_n": A, "N_argument": A * 2 ** n * n * delta, "a": a, "a_tilde": at,
         "d_plus_a_tilde": d + at, "profile": profile},
        value, notes,
    )


def delta_nxi(n: int, delta: int, xi_polytope: IntegralPolytope) -> tuple[IntegralPolytope, int]:
    """(B_n 2^n n + b) * Delta_xi and the scale factor."""
    _require(xi_polytope.dim == n, f"field polytope lives in dimension {xi_polytope.dim}, expected {n}")
    _require(xi_polytope.contains([0] * n), "field polytope must contain the origin")
    B, b = b_const(n, delta)
    factor = B * 2 ** n * n + b
    return scale(xi_polytope, factor), factor


def _mixed_chain(n: int, K: IntegralPolytope) -> list[int | Fraction]:
    """n! V(K^(n-k), S^k) for k = 1..n, S the standard simplex."""
    S = standard_simplex(n)
    return [math.factorial(n) * mixed_volume([K] * (n - k) + [S] * k) for k in range(1, n + 1)]


def toric_bound(n: int, delta: int, Delta: IntegralPolytope, xi_polytope: IntegralPolytope,
                chi: int) -> BoundReport:
    """n! vol(K) + n!(2 + chi) W_1(K), K = Delta + Delta_{n,xi}.

    The coarse form n!(3 + chi) vol(K) is reported alongside; it is not
    an upper bound for the refined one when K is flat.
    """
    _require(chi >= 0, "chi must be >= 0")
    _require(Delta.dim == n, f"Delta lives in dimension {Delta.dim}, expected {n}")
    _require(not Delta.is_empty and Delta.integral, "Delta must be a nonempty integral polytope")
    D_nxi, factor = delta_nxi(n, delta, xi_polytope)
    B, b = b_const(n, delta)
    K = minkowski_sum(Delta, D_nxi)
    vol = volume(K)
    chain = _mixed_chain(n, K)
    W1 = chain[0] / math.factorial(n)
    nf = math.factorial(n)
    refined = nf * vol + nf * (2 + chi) * W1
    coarse = nf * (3 + chi) * vol
    notes = []
    if coarse < refined:
        notes.append("coarse form is below the refined value (K is flat or thin); the refined value is the bound")
    if any(c > chain[0] for c in chain):
        notes.append("some n! V(K^(n-k), S^k) exceeds n! W_1(K)")
    return BoundReport(
        "toric",
        {"n": n, "delta": delta, "chi": chi, "Delta": Delta, "Delta_xi": xi_polytope},
        {"B_n": B, "b": b, "scale": factor, "vol_K": vol, "W1_K": W1,
         "n_fact_vol": nf * vol, "n_fact_W1": chain[0],
         "mixed_chain": chain, "coarse": _ceil(coarse), "refined": _ceil(refined)},
        _ceil(refined), notes,
    )


def _graph_simplices(N: int):
    dz = standard_simplex(N, [0])
    dx = standard_simplex(N, range(1, N))
    return dz, dx


def simplex_sum_factor(K: IntegralPolytope) -> int:
    """Smallest integer E with some lattice translate of K inside E (Delta_z + Delta_x).

    The first coordinate is the time variable z.
    """
    if K.is_empty:
        return 0
    N = K.dim
    mins = [min(Fraction(v[i]) for v in K.vertices) for i in range(N)]
    zwidth = max(Fraction(v[0]) for v in K.vertices) - mins[0]
    xspread = max(sum(Fraction(v[i]) - mins[i] for i in range(1, N)) for v in K.vertices)
    return _ceil(max(zwidth, xspread, 0))


def _check_mixed_inputs(n, d_z, d_x, chi, q=1):
    _require(isinstance(n, int) and n >= 1, "n must be >= 1")
    _require(d_z >= 1 and d_x >= 1, "d_z and d_x must be >= 1")
    _require(q >= 1, "q must be >= 1")
    _require(chi >= 0, "chi must be >= 0")


def _field_chain(n: int, delta: int, xi_polytope: IntegralPolytope | None):
    N = n + 1
    if xi_polytope is None:
        xi_polytope = point([0] * N)
    _require(xi_polytope.dim == N, f"field polytope must live in dimension n + 1 = {N}")
    D_nxi, factor = delta_nxi(N, delta, xi_polytope)
    E = simplex_sum_factor(D_nxi)
    return xi_polytope, D_nxi, factor, E


def mixed_single_bound(n: int, delta: int, xi_polytope: IntegralPolytope | None,
                       d_z: int, d_x: int, chi: int) -> BoundReport:
    """alpha d_z d_x^n for a single point, with alpha made explicit.

    Delta(P) + Delta_{N,xi} (N = n + 1) fits, up to translation, inside
    (d_z + E) Delta_z + (d_x + E) Delta_x.  On that body W_1 <= vol, so
    the refined toric estimate is at most N (3 + chi)(d_z + E)(d_x + E)^n
    <= N (3 + chi)(1 + E)^N d_z d_x^n.
    """
    _check_mixed_inputs(n, d_z, d_x, chi)
    N = n + 1
    xi_polytope, D_nxi, factor, E = _field_chain(n, delta, xi_polytope)
    alpha = N * (3 + chi) * (1 + E) ** N
    dz, dx = _graph_simplices(N)
    Q = minkowski_sum(scale(dx, d_x), scale(dz, d_z))
    volQ = volume(Q)
    volume_line = math.factorial(N) * (3 + chi) * pi_degree(D_nxi) * volQ
    direct = N * (3 + chi) * (d_z + E) * (d_x + E) ** n
    notes = []
    if pi_degree(D_nxi) == 0:
        notes.append("deg_Pi(Delta_{N,xi}) = 0, so the (N)!(3+chi) deg_Pi vol(Q) line vanishes and is not used")
    return BoundReport(
        "mixed",
        {"n": n, "delta": delta, "d_z": d_z, "d_x": d_x, "chi": chi, "Delta_xi": xi_polytope},
        {"N": N, "scale": factor, "E": E, "alpha": alpha, "dz_dx_n": d_z * d_x ** n,
         "vol_Q": volQ, "deg_Pi_Delta_nxi": pi_degree(D_nxi), "volume_line": _ceil(volume_line),
         "direct": direct},
        alpha * d_z * d_x ** n, notes,
    )


def _levels(N, Q, others_fn, count):
    return [math.factorial(N) * mixed_volume([Q] * k + others_fn(k)) for k in range(1, count + 1)]


def mixed_multi_bound(n: int, delta: int, xi_polytope: IntegralPolytope | None,
                      d_z: int, d_x: int, q: int, chi: int) -> BoundReport:
    """beta (d_z + q) d_x^n for q points, with beta_1, beta_2, beta_3 made explicit.

    Forest levels k = 1..N have toric class at most (L_{beta_1 Q})^k,
    Q = d_x Delta_x + d_z Delta_z, beta_1 = 1 + E.  Level k components in
    a hyperplane z = const contribute at most N! V(beta_1 Q^k, S^(N-k))
    in total; the others at most N! V(beta_1 Q^k, Delta_z, (Delta_z +
    Delta_x)^(N-1-k)) at each point.  Positive-dimensional nodes carry
    weight max(1, chi), points weight 1.
    """
    _check_mixed_inputs(n, d_z, d_x, chi, q)
    N = n + 1
    xi_polytope, D_nxi, factor, E = _field_chain(n, delta, xi_polytope)
    beta1 = 1 + E
    dz, dx = _graph_simplices(N)
    S = standard_simplex(N)
    Q = minkowski_sum(scale(dx, d_x), scale(dz, d_z))
    zx = minkowski_sum(dz, dx)
    weights = [max(1, chi)] * n + [1]
    tilde = [beta1 ** k * v for k, v in enumerate(_levels(N, Q, lambda k: [S] * (N - k), N), 1)]
    hat = [beta1 ** k * v for k, v in enumerate(_levels(N, Q, lambda k: [dz] + [zx] * (N - 1 - k), n), 1)]
    level_sum = sum(w * t for w, t in zip(weights, tilde)) + q * sum(w * h for w, h in zip(weights, hat))
    beta2 = N * sum(w * beta1 ** k for k, w in enumerate(weights, 1))
    beta3 = sum(w * beta1 ** k for k, w in enumerate(weights[:n], 1))
    value = beta2 * d_z * d_x ** n + q * beta3 * d_x ** n
    double_z = math.factorial(N) * mixed_volume([dz, dz] + [zx] * (N - 2)) if N >= 2 else 0
    notes = []
    if double_z != 0:
        notes.append("mixed volume with Delta_z twice is nonzero")
    return BoundReport(
        "mixed-multi",
        {"n": n, "delta": delta, "d_z": d_z, "d_x": d_x, "q": q, "chi": chi, "Delta_xi": xi_polytope},
        {"N": N, "scale": factor, "E": E, "beta_1": beta1, "beta_2": beta2, "beta_3": beta3,
         "beta": max(beta2, beta3), "weights": weights, "tilde_levels": tilde, "hat_levels": hat,
         "level_sum": _ceil(level_sum), "double_Delta_z_mixed_volume": double_z},
        value, notes,
    )


def caseAB_bound(n: int, delta: int, xi_polytope: IntegralPolytope | None, m: int, case: str,
                 D: int, d_z: int, d_x: int, q: int, chi: int, d: int | None = None) -> BoundReport:
    """Bound when the Zariski closure Z of the trajectory has dimension m.

    The toric class of Z is capped by D^(N-m) (L_C)^(N-m), C = Delta_x in
    case A and Delta_x + Delta_z in case B; the forest then lives inside
    Z, with levels k = 1..m.  ``d`` is the truncation degree for the
    Hilbert-function lower bound (defaults to max(d_z, d_x)).
    """
    _check_mixed_inputs(n, d_z, d_x, chi, q)
    N = n + 1
    case = case.upper()
    _require(case in ("A", "B"), f"case must be A or B, got {case!r}")
    _require(isinstance(m, int) and 1 <= m <= N, f"m must satisfy 1 <= m <= n + 1 = {N}")
    _require(D >= 1, "D must be >= 1")
    xi_polytope, D_nxi, factor, E = _field_chain(n, delta, xi_polytope)
    beta1 = 1 + E
    dz, dx = _graph_simplices(N)
    S = standard_simplex(N)
    zx = minkowski_sum(dz, dx)
    C = dx if case == "A" else zx
    Q = minkowski_sum(scale(dx, d_x), scale(dz, d_z))
    cap = D ** (N - m)
    weights = [max(1, chi)] * (m - 1) + [1]
    tilde = [cap * beta1 ** k * v
             for k, v in enumerate(_levels(N, Q, lambda k: [S] * (m - k) + [C] * (N - m), m), 1)]
    hat = [cap * beta1 ** k * v
           for k, v in enumerate(_levels(N, Q, lambda k: [dz] + [zx] * (m - k - 1) + [C] * (N - m), m - 1), 1)]
    total = sum(w * t for w, t in zip(weights, tilde)) + q * sum(w * h for w, h in zip(weights, hat))
    value = _ceil(total)
    d = max(d_z, d_x) if d is None else d
    dpz, dpx = min(d_z, d), min(d_x, d)
    if case == "A":
        hf_lower = Fraction(dpz * dpx ** (m - 1), math.factorial(m))
        shape = (d_z + q) * d_x ** (m - 1)
    else:
        hf_lower = Fraction(max(dpz * dpx ** (m - 1), dpx ** m), math.factorial(m))
        shape = (d_z + d_x + q) * d_x ** (m - 1)
    Qd = minkowski_sum(scale(dx, dpx), scale(dz, dpz))
    tc_cap = cap * math.factorial(N) * mixed_volume([Qd] * m + [C] * (N - m))
    notes = []
    if m == N:
        notes.append("m = n + 1: Z is the whole space and D plays no role; levels match mixed-multi")
    return BoundReport(
        "case" + case,
        {"n": n, "delta": delta, "m": m, "case": case, "D": D, "d_z": d_z, "d_x": d_x, "q": q,
         "chi": chi, "d": d, "Delta_xi": xi_polytope},
        {"N": N, "scale": factor, "E": E, "beta_1": beta1, "tc_Z_factor": cap, "weights": weights,
         "tilde_levels": tilde, "hat_levels": hat, "d_prime_z": dpz, "d_prime_x": dpx,
         "hf_lower": hf_lower, "tc_Z_times_L_Delta_d_m": tc_cap,
         "C_nZ_witness": Fraction(tc_cap) / hf_lower, "beta_gamma": Fraction(value, shape)},
        value, notes,
    )


def hf_upper_pure(degV: int, t: int, k: int) -> int:
    """deg(V) t^k + k."""
    _require(min(degV, t, k) >= 0, "arguments must be nonnegative")
    return degV * t ** k + k


def hf_ambient_pure(n: int, t: int) -> int:
    """Hilbert function of C^n: binom(t + n, n)."""
    _require(n >= 0 and t >= 0, "arguments must be nonnegative")
    return math.comb(t + n, n)


def hf_finder_threshold(n: int, d: int, degV: int, k: int) -> bool:
    """deg V <= A_n^-1 d^(n-k), for d > 2n."""
    _require(n >= 1 and 0 <= k <= n, "need n >= 1 and 0 <= k <= n")
    _require(d > 2 * n, f"d must exceed 2n = {2 * n}")
    return A_const(n) * degV <= d ** (n - k)


def hf_finder_report(n: int, d: int, degV: int, k: int) -> BoundReport:
    ok = hf_finder_threshold(n, d, degV, k)
    return BoundReport(
        "hf-finder",
        {"n": n, "d": d, "degV": degV, "k": k},
        {"A_n": A_const(n), "rhs": Fraction(d ** (n - k), A_const(n)), "holds": ok},
        int(ok),
        ["exponent n - k as in the finder lemma; its later use quotes n - l for the ambient dimension l"],
    )


def toric_finder_threshold(n: int, d: int, tc_value, Delta: IntegralPolytope) -> bool:
    """tc(V)(L_{Delta_d})^k <= B_n^-1 n! vol(Delta_d), for d > 2n.

    ``tc_value`` is the left side, already evaluated.
    """
    _require(d > 2 * n, f"d must exceed 2n = {2 * n}")
    _require(Delta.dim == n, "Delta has the wrong dimension")
    Dd = truncate_to_box(Delta, d)
    return Fraction(tc_value) <= Fraction(math.factorial(n) * volume(Dd), B_const(n))


def level_weights(levels: Sequence[int], chi: int) -> int:
    """Weighted sum used by the pure bound: top level plus (2 + chi) times the one below."""
    n = len(levels)
    lv = [1] + list(levels)
    return lv[n] + (2 + chi) * lv[n - 1]
