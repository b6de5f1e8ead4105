import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from instances import tame_instance, unimodular
from tamewitt import linalg
from tamewitt.graded_forms import GradedQuadraticForm, graded_witt_class
from tamewitt.norms import Norm, NormError, alpha_hat, direct_sum_norms, is_tame_norm
from tamewitt.quadratic_forms import QuadraticForm, norm_form
from tamewitt.sampling import random_vector
from tamewitt.tame_witt import (
    DecompositionCertificate,
    PreconditionError,
    extend_scalars_inertial,
    hensel_isotropic_vector,
    is_in_Iqt,
    isotropic_over_inertial_quadratic,
    lift_graded,
    property_S_check,
    residue_class,
    springer_tame_decompose,
    tame_class_ops,
    value_group_obstruction,
    witt_index_tame,
)
from tamewitt.q2_witt import tame_generators
from tamewitt.valued_fields import field_by_name, make_inertial_extension
from tamewitt.valuegroup import vg

rngs = st.integers(0, 2 ** 32).map(random.Random)
F2t = field_by_name("F2((t))")
Q2t = field_by_name("Q2((t))")
k2 = F2t.residue_field
D = QuadraticForm.diagonal
half = Fraction(1, 2)


def test_residue_class_examples():
    h = QuadraticForm.hyperbolic(F2t, 2)
    assert residue_class(h, Norm.identity(F2t, [vg(0)] * 4)).is_zero
    gens = tame_generators(Q2t)
    c = is_in_Iqt(gens["<1,-5>"]).tame_class
    assert c.bits() == (1, 0, 0, 0)
    assert is_in_Iqt(gens["<2t><1,-5>"]).tame_class.bits() == (0, 0, 0, 1)
    with pytest.raises(NormError):
        residue_class(norm_form(F2t, F2t.inv(F2t.t)), Norm.identity(F2t, [vg(0), vg(-half)]))


def test_lift_examples():
    L = lift_graded(GradedQuadraticForm.hyperbolic(k2, vg(Fraction(1, 3))), F2t)
    assert L.form == QuadraticForm.binary(F2t, 0, 1, 0)
    L = lift_graded(GradedQuadraticForm.from_coefficients(k2, [vg(0), vg(0)], [[1, 1], [0, 1]]), F2t)
    assert L.form == norm_form(F2t, 1) and L.norm == Norm.identity(F2t, [vg(0), vg(0)])
    L = lift_graded(GradedQuadraticForm.from_coefficients(k2, [vg(half), vg(-half)], [[1, 1], [0, 1]]), F2t)
    assert L.form == QuadraticForm.binary(F2t, F2t.t, 1, F2t.inv(F2t.t))
    assert L.norm.values == [vg(half), vg(-half)]


def test_witt_index_examples():
    assert witt_index_tame(QuadraticForm.hyperbolic(F2t, 3), Norm.identity(F2t, [vg(0)] * 6)) == 3
    r = is_in_Iqt(D(Q2t, [1, -5]).orthogonal_sum(D(Q2t, [-1, 5])))
    assert r.status == "yes" and witt_index_tame(r.certificate.form, r.norm) == 2
    assert witt_index_tame(norm_form(F2t, 1), Norm.identity(F2t, [vg(0), vg(0)])) == 0


def test_hensel_isotropic_vector_examples():
    t = F2t.t
    q = QuadraticForm.binary(F2t, t, 1, t)
    w = hensel_isotropic_vector(q, [1, 0], [0, 1], vg(16))
    assert F2t.eq(w[0], F2t.sum(F2t.pow(t, e) for e in (2, 4, 8))) and F2t.eq(w[1], t)
    assert F2t.valuation(q(w)) == vg(17)
    w = hensel_isotropic_vector(q, [1, 0], [0, 1], vg(17))
    assert F2t.eq(w[0], F2t.sum(F2t.pow(t, e) for e in (2, 4, 8, 16)))
    assert hensel_isotropic_vector(QuadraticForm.binary(F2t, 0, 1, 0), [1, 0], [0, 1], vg(4)) == [F2t.one, F2t.zero]
    with pytest.raises(PreconditionError):
        hensel_isotropic_vector(norm_form(F2t, 1), [1, 0], [0, 1], vg(4))


def test_property_S_examples():
    assert property_S_check(norm_form(F2t, 1), pairs=[([1, 0], [0, 1])]).status == "violation"
    assert property_S_check(D(Q2t, [1, -5]), pairs=[([1, 0], [1, 1])]).status == "holds_on_samples"
    chk = property_S_check(D(Q2t, [1, -2]), height=3)
    assert chk.status == "holds_on_samples"


def test_isotropic_over_inertial_examples():
    w = isotropic_over_inertial_quadratic(norm_form(F2t, 1))
    assert w.verified and F2t.eq(w.u, F2t.one)
    w = isotropic_over_inertial_quadratic(D(Q2t, [1, -5]))
    assert w.verified and Q2t.residue(w.u) == 1
    assert isotropic_over_inertial_quadratic(D(Q2t, [1, -2])) is None


def test_springer_examples():
    c = springer_tame_decompose(norm_form(F2t, 1))
    assert c.verify() and len(c.summands) == 1 and F2t.eq(c.summands[0].u, F2t.one)
    c = springer_tame_decompose(D(Q2t, [1, -5]))
    assert c.verify() and len(c.summands) == 1
    q = D(Q2t, [1, -5]).orthogonal_sum(D(Q2t, [1, -5]).scale(Q2t.t))
    c = springer_tame_decompose(q)
    assert c.verify() and [Q2t.valuation(s.a) for s in c.summands] == [vg(0, 0), vg(1, 0)]
    again = DecompositionCertificate.from_json(c.to_json())
    assert again.verify()


def test_is_in_Iqt_examples():
    r = is_in_Iqt(QuadraticForm.hyperbolic(Q2t, 2))
    assert r.status == "yes" and r.tame_class.is_zero
    assert is_in_Iqt(D(Q2t, [1, -5])).status == "yes"
    r = is_in_Iqt(D(Q2t, [1, -2]))
    assert r.status == "no" and r.obstruction


def test_tame_class_ops_examples():
    classes = [is_in_Iqt(g).tame_class for g in tame_generators(Q2t).values()]
    for c in classes:
        assert tame_class_ops("is_zero", tame_class_ops("add", c, c))
        assert tame_class_ops("negate", c) == c
    assert tame_class_ops("add", *classes).bits() == (1, 1, 1, 1)


def test_extend_scalars_examples():
    K = make_inertial_extension(F2t, F2t.one)
    qK = extend_scalars_inertial(norm_form(F2t, 1), K)
    assert K.is_zero(qK([K.one, K.gen]))
    KQ = make_inertial_extension(Q2t, Q2t.one)
    assert value_group_obstruction(extend_scalars_inertial(D(Q2t, [1, -2]), KQ)) is not None
    L = make_inertial_extension(F2t, degree=1)
    q = QuadraticForm.binary(F2t, F2t.t, 1, F2t.one)
    qL = extend_scalars_inertial(q, L)
    x = [F2t.add(F2t.t, F2t.one), F2t.inv(F2t.t)]
    assert L.eq(qL([L.embed(a) for a in x]), L.embed(q(x)))


@settings(max_examples=30, deadline=None)
@given(rngs)
def test_residue_is_well_defined_under_basis_perturbation(rng):
    q, alpha, _ = tame_instance(F2t, rng, conjugate=False)
    n = q.dim
    # e_j += c e_i with v(c) + alpha(e_i) > alpha(e_j): alpha(e_j) and the residues are unchanged
    M = linalg.identity(F2t, n)
    g = [a.coords[0] for a in alpha.values]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.5:
                M[i][j] = F2t.monomial(F2t.base.one, max(0, math.floor(g[j] - g[i])) + rng.randint(1, 2))
    beta = Norm(F2t, [linalg.mat_vec(F2t, M, e) for e in alpha.basis], alpha.values)
    assert is_tame_norm(beta, q)
    assert residue_class(q, alpha) == residue_class(q, beta)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["F2((t))", "F4((t))"]), rngs)
def test_residue_homomorphism(name, rng):
    F = field_by_name(name)
    q1, a1, _ = tame_instance(F, rng)
    q2, a2, _ = tame_instance(F, rng)
    assert residue_class(q1.orthogonal_sum(q2), direct_sum_norms(a1, a2)) == residue_class(q1, a1) + residue_class(q2, a2)


@settings(max_examples=30, deadline=None)
@given(rngs)
def test_lift_round_trip(rng):
    k = k2
    blocks = []
    for _ in range(rng.randint(1, 3)):
        d = vg(Fraction(rng.randint(-2, 2), 2))
        blocks.append(GradedQuadraticForm.from_coefficients(k, [d, -d], [[1, 1], [0, rng.choice([0, 1])]]))
    phi = blocks[0]
    for b in blocks[1:]:
        phi = phi.orthogonal_sum(b)
    L = lift_graded(phi, F2t)
    assert is_tame_norm(L.norm, L.form)
    assert residue_class(L.form, L.norm) == graded_witt_class(phi)


@settings(max_examples=25, deadline=None)
@given(rngs)
def test_springer_certificates_verify(rng):
    F = Q2t if rng.random() < 0.5 else F2t
    q = QuadraticForm(F, [])
    for _ in range(rng.randint(1, 2)):
        a = F.monomial(F.base.one, rng.randint(-1, 1))
        if F is Q2t:
            a = F.mul(a, F.from_int(rng.choice([1, 2, 3, -5])))
        u = F.from_int(rng.choice([0, 1])) if F is Q2t else rng.choice([F.zero, F.one])
        q = q.orthogonal_sum(norm_form(F, u).scale(a))
    q = q.change_basis(unimodular(F, q.dim, rng))
    c = springer_tame_decompose(q)
    assert c.verify()
    assert is_tame_norm(c.tame_norm(), q)


@settings(max_examples=20, deadline=None)
@given(rngs)
def test_inertial_witnesses_verify(rng):
    t = F2t.t
    a = F2t.pow(t, rng.randint(-2, 2))
    f = F2t.sum(F2t.monomial(F2t.base.one, e) for e in (1, 2) if rng.random() < 0.5)
    u = F2t.add(F2t.one, F2t.add(F2t.mul(f, f), f))
    q = norm_form(F2t, u).scale(a)
    w = isotropic_over_inertial_quadratic(q)
    assert w is not None and w.verified


@settings(max_examples=20, deadline=None)
@given(rngs)
def test_oddext_min_formula(rng):
    L = make_inertial_extension(F2t, degree=3)
    t = F2t.t
    q = norm_form(F2t, 1).orthogonal_sum(QuadraticForm.binary(F2t, t, t, t))
    qL = extend_scalars_inertial(q, L)
    xs = [random_vector(F2t, 4, rng) for _ in range(3)]
    w = [L.sum(L.mul(L.embed(xs[i][j]), L.pow(L.gen, i)) for i in range(3)) for j in range(4)]
    assert alpha_hat(qL, w) == min(alpha_hat(q, x) for x in xs)
