import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tamewitt.sampling import random_element
from tamewitt.valued_fields import (
    DYADIC,
    FieldError,
    HenselError,
    field_by_name,
    finite_field,
    hensel_quadratic_root,
    make_inertial_extension,
    v2,
)
from tamewitt.valuegroup import INF, ValueGroupElement, lex_compare, vg

FIELDS = ["F2((t))", "F4((t))", "Q2((t))", "F2((s))((t))"]
rngs = st.integers(0, 2 ** 32).map(random.Random)


def test_lex_compare_examples():
    assert lex_compare(vg(1, 0), vg(0, 5)) == 1
    assert lex_compare(INF, vg(3, -7)) == 1
    assert lex_compare(vg(0, 1), vg(0, 1)) == 0
    assert lex_compare(vg(0, 5), vg(1, 0)) == -1


def test_value_group_arithmetic():
    a = vg(Fraction(1, 2), 3)
    assert a + (-a) == ValueGroupElement.zero(2)
    assert (a * 2).is_integral()
    assert not a.is_integral()
    assert a + INF == INF
    with pytest.raises(ValueError):
        vg(1) < vg(1, 2)


def test_arith_and_valuation_examples():
    F = field_by_name("F2((t))")
    t = F.t
    inv = F.inv(t)
    assert F.eq(F.mul(inv, t), F.one)
    assert F.valuation(inv) == vg(-1)
    s = F.add(F.one, t)
    assert F.valuation(s) == vg(0)
    assert F.valuation(F.zero) == INF
    Q = field_by_name("Q2((t))")
    two_t = Q.mul(Q.from_int(2), Q.t)
    assert Q.valuation(two_t) == vg(1, 1)
    assert Q.valuation(Q.from_int(5)) == vg(0, 0)
    assert Q.valuation(Q.add(two_t, Q.mul(Q.t, Q.t))) == vg(1, 1)


def test_residue_component_examples():
    Q = field_by_name("Q2((t))")
    assert Q.residue_component(Q.from_int(5), vg(0, 0)) == 1
    assert Q.residue_component(Q.mul(Q.from_int(2), Q.t), vg(1, 0)) == Q.residue_field.zero
    F = field_by_name("F2((t))")
    assert F.residue_component(F.add(F.t, F.mul(F.t, F.t)), vg(1)) == 1
    with pytest.raises(FieldError):
        F.residue_component(F.one, vg(1))


def test_dyadic_valuation():
    assert v2(Fraction(12, 5)) == 2
    assert v2(Fraction(3, 8)) == -3
    assert v2(0) is None
    assert DYADIC.residue(Fraction(5, 3)) == 1


def _as_poly(F, a):
    return F.add(F.add(F.mul(a, a), a), F.zero)


def test_hensel_zero_constant():
    F = field_by_name("F2((t))")
    assert F.is_zero(hensel_quadratic_root(F, F.zero, vg(5)))


def test_hensel_artin_schreier_series():
    F = field_by_name("F2((t))")
    t = F.t
    lam = hensel_quadratic_root(F, t, vg(17))
    assert F.eq(lam, F.sum(F.pow(t, 2 ** i) for i in range(5)))
    assert F.valuation(F.add(_as_poly(F, lam), t)) == vg(32)


def test_hensel_dyadic_root():
    # Newton on X^2 + X + 2: the root is -22, i.e. 10 mod 16 (6 is not a root mod 16)
    lam = hensel_quadratic_root(DYADIC, DYADIC.from_int(2), vg(4))
    assert lam % 16 == 10
    assert v2(lam * lam + lam + 2) >= 4
    assert v2(6 * 6 + 6 + 2) == 2


def test_hensel_rejects_nonintegral():
    F = field_by_name("F2((t))")
    with pytest.raises(HenselError):
        hensel_quadratic_root(F, F.inv(F.t), vg(4))


def test_inertial_extensions():
    F = field_by_name("F2((t))")
    K = make_inertial_extension(F, F.one)
    assert K.residue_field.size == 4
    L = make_inertial_extension(F, degree=3)
    assert L.residue_field.size == 8
    mu = K.gen
    assert K.is_zero(K.add(K.add(K.mul(mu, mu), mu), K.one))
    with pytest.raises(FieldError):
        make_inertial_extension(F, F.zero)  # X^2 + X splits


def test_q2_inertial_extension_contains_sqrt5():
    Q = field_by_name("Q2((t))")
    K = make_inertial_extension(Q, Q.one)
    # (2 mu + 1)^2 = 4(mu^2 + mu) + 1 = -3, and -3 * 5 = -15 is a 2-adic square
    s = K.add(K.mul(K.embed(Q.from_int(2)), K.gen), K.one)
    assert K.eq(K.mul(s, s), K.embed(Q.from_int(-3)))
    assert (-15) % 8 == 1


def test_finite_fields():
    k = finite_field(4)
    elems = list(k.elements())
    assert len(elems) == 4
    irred = [u for u in elems if k.artin_schreier_root(u) is None]
    assert len(irred) == 2
    for a in elems:
        if not k.is_zero(a):
            assert k.eq(k.mul(a, k.inv(a)), k.one)


@st.composite
def field_and_elements(draw, count=3, nonzero=False):
    F = field_by_name(draw(st.sampled_from(FIELDS)))
    rng = draw(rngs)
    return F, [random_element(F, rng, nonzero=nonzero) for _ in range(count)]


@settings(max_examples=60, deadline=None)
@given(field_and_elements())
def test_field_axioms(data):
    F, (a, b, c) = data
    assert F.eq(F.add(a, b), F.add(b, a))
    assert F.eq(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)))
    assert F.eq(F.mul(F.mul(a, b), c), F.mul(a, F.mul(b, c)))
    assert F.is_zero(F.add(a, F.neg(a)))
    if not F.is_zero(a):
        assert F.eq(F.mul(a, F.inv(a)), F.one)


@settings(max_examples=60, deadline=None)
@given(field_and_elements())
def test_valuation_axioms(data):
    F, (a, b, _) = data
    assert F.valuation(F.mul(a, b)) == F.valuation(a) + F.valuation(b)
    va, vb = F.valuation(a), F.valuation(b)
    assert not (F.valuation(F.add(a, b)) < min(va, vb))
    if va != vb:
        assert F.valuation(F.add(a, b)) == min(va, vb)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["F2((t))", "F4((t))", "Q2((t))"]), rngs)
def test_hensel_back_substitution(name, rng):
    F = field_by_name(name)
    zero = ValueGroupElement.zero(F.rank)
    x = random_element(F, rng, nonzero=True)
    if F.valuation(x) < zero:
        x = F.inv(x)
    c = F.mul(F.t, x)
    N = vg(*([6] + [0] * (F.rank - 1)))
    lam = hensel_quadratic_root(F, c, N)
    if F.valuation(c) < N:
        assert F.valuation(lam) == F.valuation(c)
    assert not (F.valuation(F.add(_as_poly(F, lam), c)) < N)
