import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from tamewitt import linalg
from tamewitt.quadratic_forms import (
    FormError,
    QuadraticForm,
    SearchBudget,
    arf_invariant,
    combine,
    finite_isotropic_vector,
    isotropy_search_bounded,
    norm_form,
    signed_discriminant,
    strip_hyperbolic_planes,
    witt_decompose_finite,
)
from tamewitt.q2_witt import square_class_q2
from tamewitt.sampling import random_element, random_vector
from tamewitt.tame_witt import hensel_isotropic_vector
from tamewitt.valued_fields import DYADIC, field_by_name, finite_field
from tamewitt.valuegroup import vg

rngs = st.integers(0, 2 ** 32).map(random.Random)
F2 = finite_field(2)


def random_form(F, n, rng):
    return QuadraticForm(F, [[random_element(F, rng) if j >= i else F.zero for j in range(n)] for i in range(n)])


def random_nonsingular(F, n, rng):
    while True:
        q = random_form(F, n, rng)
        if q.is_nonsingular():
            return q


def random_invertible(F, n, rng):
    while True:
        M = [[random_element(F, rng) for _ in range(n)] for _ in range(n)]
        if not F.is_zero(linalg.det(F, M)):
            return linalg.columns(M)


def test_evaluate_and_polar_example():
    q = QuadraticForm.binary(F2, 0, 1, 0)
    assert q([1, 1]) == 1
    assert q.polar([1, 0], [0, 1]) == 1


def test_combine_examples():
    h = QuadraticForm.hyperbolic(F2)
    s = combine("orthogonal_sum", h, h)
    assert s.dim == 4
    assert witt_decompose_finite(s).witt_index == 2
    F = field_by_name("F2((t))")
    t = F.t
    g = combine("scale_by", t, norm_form(F, 1)).gram
    assert F.eq(g[0][0], t) and F.eq(g[1][1], t) and F.eq(g[0][1], t) and F.is_zero(g[1][0])
    r = combine("restrict_to", s, [[1, 0, 0, 0], [0, 1, 0, 0]])
    assert r.dim == 2 and r.is_nonsingular()


def test_norm_form_examples():
    q0 = norm_form(F2, 0)
    assert q0([1, 1]) == 0
    q1 = norm_form(F2, 1)
    assert [q1(v) for v in ([1, 0], [0, 1], [1, 1])] == [1, 1, 1]
    q = norm_form(DYADIC, 1)
    assert [q(v) for v in ([1, 0], [0, 1], [1, 1])] == [1, 1, 1]
    assert square_class_q2(signed_discriminant(q)) == 5


def test_witt_decompose_finite_rejects_bad_input():
    with pytest.raises(FormError):
        witt_decompose_finite(QuadraticForm.diagonal(finite_field(3), [1]))
    with pytest.raises(FormError):
        witt_decompose_finite(QuadraticForm.binary(F2, 1, 0, 1))


def test_witt_decompose_finite_examples():
    d = witt_decompose_finite(QuadraticForm.hyperbolic(F2))
    assert d.witt_index == 1 and d.invariant == ("arf", 0)
    n = norm_form(F2, 1)
    d = witt_decompose_finite(n)
    assert d.witt_index == 0 and d.invariant == ("arf", 1)
    assert witt_decompose_finite(n.orthogonal_sum(n)).witt_index == 2


def _totally_isotropic_planes(q):
    F = q.field
    vecs = [list(v) for v in itertools.product(list(F.elements()), repeat=q.dim) if any(v)]
    iso = [v for v in vecs if F.is_zero(q(v))]
    return any(F.is_zero(q.polar(x, y)) and linalg.rank(F, [x, y]) == 2 for x in iso for y in iso)


def test_witt_index_two_by_brute_force():
    n = norm_form(F2, 1)
    assert _totally_isotropic_planes(n.orthogonal_sum(n))


def test_arf_examples():
    assert arf_invariant(QuadraticForm.hyperbolic(F2, 3)) == 0
    n = norm_form(F2, 1)
    assert arf_invariant(n) == 1
    # every basis change of the F4 norm form over F2
    for cols in itertools.product(itertools.product((0, 1), repeat=2), repeat=2):
        cols = [list(c) for c in cols]
        if F2.is_zero(linalg.det(F2, linalg.from_columns(cols))):
            continue
        assert arf_invariant(n.change_basis(cols)) == 1
    with pytest.raises(FormError):
        arf_invariant(QuadraticForm.diagonal(finite_field(3), [1, 1]))


def test_isotropy_search_examples():
    F = field_by_name("F2((t))")
    w = isotropy_search_bounded(QuadraticForm.binary(F, 0, 1, 0), SearchBudget(degree=1))
    assert w is not None and F.is_zero(QuadraticForm.binary(F, 0, 1, 0)(w))
    assert isotropy_search_bounded(norm_form(F, 1), SearchBudget(degree=3)) is None


def test_tadic_hensel_form_has_only_approximate_witnesses():
    # t x^2 + x y + t y^2 is isotropic over k((t)) but not over k(t): the
    # bounded exact search finds nothing, while the Hensel vector is exact to N
    F = field_by_name("F2((t))")
    t = F.t
    q = QuadraticForm.binary(F, t, 1, t)
    assert isotropy_search_bounded(q, SearchBudget(degree=8)) is None
    w = hensel_isotropic_vector(q, [1, 0], [0, 1], vg(8))
    assert not (F.valuation(q(w)) < vg(8))


def test_strip_hyperbolic_planes_counts():
    F = field_by_name("F2((t))")
    assert strip_hyperbolic_planes(QuadraticForm.hyperbolic(F, 3)).count == 3
    assert strip_hyperbolic_planes(norm_form(F, 1)).count == 0
    r = strip_hyperbolic_planes(QuadraticForm.hyperbolic(F2, 2).orthogonal_sum(norm_form(F2, 1)))
    assert r.count == 2 and len(r.kernel) == 2


@pytest.mark.parametrize("size", [2, 4])
def test_binary_classification_by_arf(size):
    # over F2 and F4 two nonsingular binary forms are Witt equivalent iff their Arf invariants agree
    k = finite_field(size)
    E = list(k.elements())
    forms = [QuadraticForm.binary(k, a, b, c) for a, b, c in itertools.product(E, repeat=3)]
    forms = [q for q in forms if q.is_nonsingular()]
    for p, q in itertools.product(forms, repeat=2):
        same = witt_decompose_finite(p.orthogonal_sum(q.negate())).witt_index == 2
        assert same == (arf_invariant(p) == arf_invariant(q))


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(["F2((t))", "Q2((t))", "F4((t))"]), rngs)
def test_polar_identity(name, rng):
    F = field_by_name(name)
    q = random_form(F, 3, rng)
    x, y = random_vector(F, 3, rng), random_vector(F, 3, rng)
    lhs = q.polar(x, y)
    rhs = F.sub(F.sub(q(linalg.vec_add(F, x, y)), q(x)), q(y))
    assert F.eq(lhs, rhs)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 4, 5]), st.integers(1, 3), rngs)
def test_witt_decompose_finite_transports_and_kernel_anisotropic(size, half, rng):
    k = finite_field(size)
    q = random_nonsingular(k, 2 * half, rng)
    d = witt_decompose_finite(q)
    assert d.anisotropic_gram.dim <= 2
    dec = d.decomposed_form(q)
    h = QuadraticForm.hyperbolic(k, d.witt_index)
    expected = h.orthogonal_sum(d.anisotropic_gram)
    for x in itertools.islice(itertools.product(list(k.elements()), repeat=q.dim), 200):
        assert k.eq(dec(list(x)), expected(list(x)))
    assert finite_isotropic_vector(d.anisotropic_gram) is None


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 4]), rngs)
def test_arf_additive_and_invariant(size, rng):
    k = finite_field(size)
    p = random_nonsingular(k, 2, rng)
    q = random_nonsingular(k, 4, rng)
    assert arf_invariant(p.orthogonal_sum(q)) == (arf_invariant(p) + arf_invariant(q)) % 2
    assert arf_invariant(q.change_basis(random_invertible(k, 4, rng))) == arf_invariant(q)
