import pytest
import sympy

from multbound.algebra import LaurentPolynomial, newton_polytope, parse_polynomial
from multbound.errors import LaurentError, MultboundError, PreconditionError
from multbound.polytope import hull, mixed_volume
from multbound.verify import (InstanceSpec, bk_check, coprime_certified, count_torus_roots_2d, hf_parametrized,
                              run_property_suite, squarefree_certified, sylvester_resultant)

NAMES = ["x", "y"]


def P(text):
    return parse_polynomial(text, NAMES)


def sympy_torus_count(a, b):
    x, y = sympy.symbols("x y")
    sols = sympy.solve([sympy.sympify(a), sympy.sympify(b)], [x, y], dict=True)
    return sum(1 for s in sols if s[x] != 0 and s[y] != 0)


@pytest.mark.parametrize("a, b", [
    ("1 + x + y", "1 + 2*x - 3*y"),
    ("x^2 + y - 4", "x*y - 2"),
    ("x^2*y + 3*y^2 - 1", "x - y + 5"),
    ("2 + x*y^2 - x^2", "y - 7*x + 1"),
])
def test_counts_match_sympy_and_bk(a, b):
    rc = count_torus_roots_2d(P(a), P(b))
    assert rc.count == sympy_torus_count(a, b)
    assert rc.count == 2 * mixed_volume([newton_polytope(P(a)), newton_polytope(P(b))])


def test_lattice_index():
    rc = count_torus_roots_2d(P("1 + x^2"), P("3 + y^2"))
    assert rc.count == 4 and rc.lattice_index == 4


def test_laurent_supports():
    rc = count_torus_roots_2d(P("x + x^-1 + y"), P("y^-1 + 2*x - 5"))
    assert rc.count == 2 * mixed_volume([hull([(1, 0), (-1, 0), (0, 1)]), hull([(0, -1), (1, 0), (0, 0)])])


def test_degenerate_systems():
    assert count_torus_roots_2d(P("1 + x + y"), P("2 + 2*x + 2*y")).degenerate
    # x^3 - 3x + 2 = (x - 1)^2 (x + 2): a double root
    assert count_torus_roots_2d(P("x^2 + y - 3"), P("x*y - 2")).degenerate
    assert count_torus_roots_2d(P("1 + x"), P("x + x^2")).degenerate
    assert count_torus_roots_2d(P("1 + x"), P("2 + x")).count == 0
    assert count_torus_roots_2d(P("3*x*y"), P("x^2")).count == 0


def test_root_count_rejects_other_dimensions():
    with pytest.raises(PreconditionError):
        count_torus_roots_2d(parse_polynomial("x", ["x"]), parse_polynomial("x", ["x"]))


def test_modular_certificates():
    assert coprime_certified([1, 1], [2, 1])
    assert coprime_certified([1, 2, 1], [1, 1]) is False
    assert squarefree_certified([1, 2, 1]) is False
    assert squarefree_certified([-1, 0, 1])


def test_sylvester_resultant():
    # Res(x^2 - 1, x - 2) = (2 - 1)(2 + 1) up to sign conventions
    assert abs(sylvester_resultant([-1, 0, 1], [-2, 1])) == 3
    assert sylvester_resultant([-1, 0, 1], [-1, 1]) == 0


def test_hf_parametrized():
    t = LaurentPolynomial.variable(1, 0)
    A = [(i, j) for i in range(3) for j in range(3) if i + j <= 2]
    assert hf_parametrized([t, t ** 2], A) == 5
    assert hf_parametrized([t, t + 1], A) == 3
    assert hf_parametrized([t ** -1, t], [(1, 0), (0, 1), (1, 1)]) == 3
    with pytest.raises(LaurentError):
        hf_parametrized([t + 1, t], [(-1, 0)])


def test_bk_check_fixed_supports():
    out = bk_check(InstanceSpec(seed=3, trials=5), supports=([(0, 0), (1, 0), (0, 1)], [(0, 0), (2, 1), (1, 2)]))
    assert out.failed == 0 and out.passed == 5
    assert all(r.rhs == 3 for r in out.reports)


@pytest.mark.parametrize("suite", ["bk", "vol-ivol", "rolle-order", "bound-soundness", "delta-additivity", "hf",
                                   "mv-axioms"])
def test_suites_are_deterministic(suite):
    spec = InstanceSpec(seed=11, trials=4)
    a = run_property_suite(suite, spec)
    b = run_property_suite(suite, spec)
    assert a.failed == 0
    assert a.jsonl() == b.jsonl()
    assert a.to_json() == b.to_json()


def test_unknown_suite():
    with pytest.raises(MultboundError):
        run_property_suite("nope", InstanceSpec())
