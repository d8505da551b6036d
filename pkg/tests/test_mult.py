import pytest

from multbound.algebra import parse_field, parse_polynomial
from multbound.errors import CapExhausted, PreconditionError
from multbound.mult import (AtLeast, Exact, ZeroSuspected, divisor_multiplicity, first_transversal_derivative,
                            max_order_cap, mult_ratio_check, multiplicity, multiplicity_sum, rolle_order_check)
from multbound.series import RegularExpansion, expand_regular, polynomial_germ

NAMES = ["x", "y"]


def P(text):
    return parse_polynomial(text, NAMES)


@pytest.fixture
def parabola():
    return parse_field(["1", "2*x"], NAMES), RegularExpansion(parse_field(["1", "2*x"], NAMES), [0, 0])


def test_parabola_orders(parabola):
    _, exp = parabola
    assert multiplicity(P("y"), exp) == Exact(2, 1)
    assert multiplicity(P("x"), exp).value == 1
    assert multiplicity(P("1 + x"), exp).value == 0
    assert multiplicity(P("y - x^2"), exp, cap=200) == ZeroSuspected(200)


@pytest.mark.parametrize("a", [1, 2, 7])
def test_power_germ(a):
    germ = polynomial_germ([[0, 1], [0] * a + [1]], time_index=0)
    m = multiplicity(P("y"), germ)
    assert m.is_exact and m.value == a


def test_truncated_germ_gives_lower_bound():
    germ = expand_regular(parse_field(["1", "2*x"], NAMES), [0, 0], 1)
    assert multiplicity(P("y"), germ) == AtLeast(2)


def test_bound_capped_search_flags_violation(parabola):
    _, exp = parabola
    m = multiplicity(P("y - x^2"), exp, bound=10)
    assert m.kind == "at_least" and m.value == 11 and m.violation
    assert m.to_json()["bound_violation_candidate"] is True
    assert not multiplicity(P("y"), exp, bound=10).violation


def test_env_cap(monkeypatch, parabola):
    _, exp = parabola
    monkeypatch.setenv("MULTBOUND_MAX_ORDER", "17")
    assert max_order_cap() == 17
    assert multiplicity(P("y - x^2"), exp) == ZeroSuspected(17)
    monkeypatch.setenv("MULTBOUND_MAX_ORDER", "lots")
    with pytest.raises(PreconditionError):
        max_order_cap()


def test_multiplicity_sum():
    xi = parse_field(["1", "2*x"], NAMES)
    sources = [RegularExpansion(xi, [0, 0]), RegularExpansion(xi, [1, 1])]
    total, per = multiplicity_sum(P("y - x"), sources)
    assert [r.value for r in per] == [1, 1]
    assert total == Exact(2)
    total, _ = multiplicity_sum(P("y - x^2"), sources, cap=20, bound=5)
    assert total.kind == "at_least" and total.violation


def test_first_transversal_derivative():
    xi = parse_field(["1", "2*x"], NAMES)
    exp = RegularExpansion(xi, [0, 0])
    with pytest.raises(CapExhausted):
        first_transversal_derivative(xi, P("y - x^2"), exp, cap_k=4)
    with pytest.raises(PreconditionError):
        first_transversal_derivative(xi, P("y"), exp)
    k, q, m = first_transversal_derivative(parse_field(["0", "1"], NAMES), P("y - x^2"), exp)
    assert (k, m.value) == (1, 0) and q == P("1")


def test_rolle_order():
    xi = parse_field(["1", "2*x"], NAMES)
    rep = rolle_order_check(xi, P("y + x^3"), RegularExpansion(xi, [0, 0]))
    assert rep.passed and rep.lhs == 1 and rep.rhs == 1
    assert not rep.details["singular"]


def test_ratio_check():
    xi = parse_field(["1", "2*x"], NAMES)
    rep = mult_ratio_check(P("y"), RegularExpansion(xi, [0, 0]))
    assert rep.passed and rep.lhs == 2 and rep.rhs == 1
    assert divisor_multiplicity(P("x^2 + y^3"), [0, 0]) == 2
    with pytest.raises(PreconditionError):
        mult_ratio_check(P("y + 1"), RegularExpansion(xi, [0, 0]))
