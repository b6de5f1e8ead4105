import random

import pytest
from hypothesis import given, settings, strategies as st

from tamewitt.literals import (
    LiteralError,
    format_form,
    format_norm,
    parse_element,
    parse_form,
    parse_norm,
)
from tamewitt.quadratic_forms import QuadraticForm, norm_form
from tamewitt.sampling import random_element
from tamewitt.valued_fields import field_by_name
from tamewitt.valuegroup import vg

rngs = st.integers(0, 2 ** 32).map(random.Random)


def test_parse_elements():
    F = field_by_name("Q2((t))")
    a = parse_element("(1/2)*t^-1 + 5*t^2", F)
    expected = F.add(F.mul(F.from_int(1), F.inv(F.mul(F.from_int(2), F.t))), F.mul(F.from_int(5), F.pow(F.t, 2)))
    assert F.eq(a, expected)
    assert F.eq(parse_element("-(t - 1)^2", F), F.neg(F.pow(F.sub(F.t, F.one), 2)))


def test_parse_forms():
    F = field_by_name("Q2((t))")
    q = parse_form("scale(t, diag(1,-5))", F)
    assert q == QuadraticForm.diagonal(F, [F.t, F.mul(F.from_int(-5), F.t)])
    s = parse_form("sum(hyp(1), norm(1))", F)
    assert s == QuadraticForm.hyperbolic(F).orthogonal_sum(norm_form(F, 1))
    G = field_by_name("F4((t))")
    w = G.symbols["w"]
    assert parse_form("norm(w)", G) == norm_form(G, w)
    assert parse_form("[[t, 1], [0, t]]", field_by_name("F2((t))")).dim == 2


def test_parse_norm():
    F = field_by_name("Q2((t))")
    basis, values = parse_norm("norm{basis=[[1,0],[1,1]], values=[(0,0),(1/2,0)]}", F)
    assert values == [vg(0, 0), vg(0.5, 0)]
    assert F.eq(basis[1][0], F.one)
    basis, values = parse_norm("norm{values=[(0,0)]}", F)
    assert len(basis) == 1


@pytest.mark.parametrize("text, column", [("diag(1,,2)", 8), ("diag(1, 2", 10), ("frob(1)", 1)])
def test_errors_carry_positions(text, column):
    with pytest.raises(LiteralError) as exc:
        parse_form(text, field_by_name("F2((t))"))
    assert exc.value.line == 1 and exc.value.column == column


def test_unknown_symbol():
    with pytest.raises(LiteralError):
        parse_element("z + 1", field_by_name("F2((t))"))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["F2((t))", "Q2((t))", "F4((t))", "F2((s))((t))"]), st.integers(1, 3), rngs)
def test_form_round_trip(name, n, rng):
    F = field_by_name(name)
    q = QuadraticForm(F, [[random_element(F, rng) if j >= i else F.zero for j in range(n)] for i in range(n)])
    assert parse_form(format_form(q), F) == q


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["F2((t))", "Q2((t))"]), rngs)
def test_norm_round_trip(name, rng):
    F = field_by_name(name)
    basis = [[random_element(F, rng) for _ in range(2)] for _ in range(2)]
    values = [vg(*[rng.randint(-2, 2) / 2 for _ in range(F.rank)]) for _ in range(2)]
    b2, v2 = parse_norm(format_norm(basis, values, F), F)
    assert v2 == values
    assert all(F.eq(x, y) for r, s in zip(basis, b2) for x, y in zip(r, s))
