"""Norms on quadratic spaces over valued fields.

A norm is given by a splitting basis (e_i) and values gamma_i in the
divisible hull: alpha(sum e_i l_i) = min(gamma_i + v(l_i)).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from . import linalg
from .graded_forms import (
    GradedQuadraticForm,
    GradedScalar,
    is_nonsingular_graded,
)
from .quadratic_forms import QuadraticForm, colex_vectors
from .sampling import random_element, random_vector
from .valued_fields import DyadicRationals, Field, RationalFunctionField
from .valuegroup import INF, ValueGroupElement, vmin


class NormError(ValueError):
    pass


class Norm:
    def __init__(self, F: Field, basis, values):
        """``basis``: list of vectors (the e_i, in ambient coordinates)."""
        self.field = F
        self.basis = [[F.coerce(a) for a in v] for v in basis]
        self.values = [g if isinstance(g, ValueGroupElement) else ValueGroupElement(g) for g in values]
        n = len(self.basis)
        if len(self.values) != n:
            raise NormError("one value per basis vector")
        if any(len(v) != n for v in self.basis):
            raise NormError("basis must be square")
        for g in self.values:
            if g.is_infinite or g.rank != F.rank:
                raise NormError(f"value {g} does not match rank {F.rank}")
            if any(c.denominator > 2 for c in g.coords):
                raise NormError(f"value {g} is not in (1/2) Gamma")
        self._inv = linalg.inverse(F, linalg.from_columns(self.basis)) if n else []

    @classmethod
    def identity(cls, F, values):
        n = len(values)
        return cls(F, linalg.identity(F, n), values)

    @classmethod
    def diagonal_default(cls, q: QuadraticForm):
        """Identity basis with values v(c_ii)/2; zero diagonal entries get value 0."""
        F = q.field
        vals = []
        for i in range(q.dim):
            c = q.gram[i][i]
            vals.append(ValueGroupElement.zero(F.rank) if F.is_zero(c) else F.valuation(c).half())
        return cls.identity(F, vals)

    @property
    def dim(self):
        return len(self.basis)

    def coordinates(self, x):
        F = self.field
        return linalg.mat_vec(F, self._inv, [F.coerce(a) for a in x])

    def shift(self, g: ValueGroupElement) -> "Norm":
        return Norm(self.field, self.basis, [a + g for a in self.values])

    def __eq__(self, other):
        return (isinstance(other, Norm) and self.field == other.field
                and self.basis == other.basis and self.values == other.values)

    def __repr__(self):
        return f"Norm(values={self.values})"

    def to_literal(self):
        from .literals import format_norm

        return format_norm(self.basis, self.values, self.field)


def evaluate_norm(alpha: Norm, x) -> ValueGroupElement:
    F = alpha.field
    lam = alpha.coordinates(x)
    return vmin(g + F.valuation(l) for g, l in zip(alpha.values, lam))


@dataclass
class BoundedReport:
    bounded: bool
    witness: tuple | None = None  # (x, y) violating (a), or (x, None) violating (b)
    detail: str = ""

    def __bool__(self):
        return self.bounded


def check_bounded(alpha: Norm, q: QuadraticForm) -> BoundedReport:
    """Decide alpha < q on the splitting basis.

    Expanding q(sum e_i l_i) = sum q(e_i) l_i^2 + sum_{i<j} b(e_i,e_j) l_i l_j
    ultrametrically shows the basis conditions imply both conditions for
    all vectors.
    """
    F = q.field
    if alpha.dim != q.dim or alpha.field != F:
        raise NormError("norm and form do not match")
    E, G = alpha.basis, alpha.values
    for i in range(q.dim):
        vq = F.valuation(q(E[i]))
        if vq < G[i] + G[i]:
            return BoundedReport(False, (E[i], None), f"v(q(e_{i})) = {vq} < {G[i] + G[i]}")
    for i in range(q.dim):
        for j in range(i + 1, q.dim):
            vb = F.valuation(q.polar(E[i], E[j]))
            if vb < G[i] + G[j]:
                return BoundedReport(False, (E[i], E[j]), f"v(b(e_{i}, e_{j})) = {vb} < {G[i] + G[j]}")
    return BoundedReport(True)


def induce_graded_form(q: QuadraticForm, alpha: Norm) -> GradedQuadraticForm:
    rep = check_bounded(alpha, q)
    if not rep:
        raise NormError(f"norm is not bounded by q: {rep.detail}")
    F = q.field
    k = F.residue_field
    E, G = alpha.basis, alpha.values
    n = q.dim
    gram = [[GradedScalar(k) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            deg = G[i] + G[j]
            val = q(E[i]) if i == j else q.polar(E[i], E[j])
            if deg.is_integral():
                c = F.residue_component(val, deg)
                if not k.is_zero(c):
                    gram[i][j] = GradedScalar.homogeneous(k, deg, c)
    return GradedQuadraticForm(k, list(G), gram, F.rank)


def is_tame_norm(alpha: Norm, q: QuadraticForm) -> bool:
    if not check_bounded(alpha, q):
        return False
    return is_nonsingular_graded(induce_graded_form(q, alpha))


def direct_sum_norms(a1: Norm, a2: Norm) -> Norm:
    if a1.field != a2.field:
        raise NormError("norms over different fields")
    F = a1.field
    n, m = a1.dim, a2.dim
    basis = [list(v) + [F.zero] * m for v in a1.basis] + [[F.zero] * n + list(v) for v in a2.basis]
    return Norm(F, basis, a1.values + a2.values)


def transport_norm(alpha: Norm, P) -> Norm:
    """Norm on the source of a basis change x -> P x, P given by its columns."""
    F = alpha.field
    Pinv = linalg.inverse(F, linalg.from_columns(P))
    basis = [linalg.mat_vec(F, Pinv, e) for e in alpha.basis]
    return Norm(F, basis, alpha.values)


# --------------------------------------------------------------------------
# the value function x -> v(q(x))/2
# --------------------------------------------------------------------------


@dataclass
class IsotropicVector:
    """Returned instead of a value when q(x) = 0 for x != 0."""

    vector: list


def alpha_hat(q: QuadraticForm, x):
    F = q.field
    if all(F.is_zero(F.coerce(a)) for a in x):
        return INF
    qx = q(x)
    if F.is_zero(qx):
        return IsotropicVector(list(x))
    return F.valuation(qx).half()


@dataclass
class SampleReport:
    samples: int
    violations: list = field(default_factory=list)
    isotropic: list | None = None

    @property
    def ok(self):
        return not self.violations and self.isotropic is None


def sample_validate(q: QuadraticForm, samples: int = 200, seed: int = 0, **kw) -> SampleReport:
    """Spot-check the value-function axioms for alpha-hat and alpha-hat < q."""
    F = q.field
    rng = random.Random(seed)
    rep = SampleReport(samples)
    for _ in range(samples):
        x = random_vector(F, q.dim, rng, **kw)
        y = random_vector(F, q.dim, rng, **kw)
        lam = random_element(F, rng, nonzero=True, **kw)
        s = [F.add(a, b) for a, b in zip(x, y)]
        vals = {}
        for name, v in (("x", x), ("y", y), ("x+y", s)):
            a = alpha_hat(q, v)
            if isinstance(a, IsotropicVector):
                rep.isotropic = a.vector
                return rep
            vals[name] = a
        ax, ay, axy = vals["x"], vals["y"], vals["x+y"]
        if not axy.is_infinite and axy < min(ax, ay):
            rep.violations.append(("ultrametric", x, y))
        xl = [F.mul(lam, a) for a in x]
        if alpha_hat(q, xl) != ax + F.valuation(lam):
            rep.violations.append(("scaling", x, lam))
        if F.valuation(q.polar(x, y)) < ax + ay:
            rep.violations.append(("bounded", x, y))
    return rep


@dataclass
class Reduction:
    """Outcome of :func:`reduce_alpha_hat`.

    kind is one of
      ``split``     basis splits alpha-hat (``basis``, ``values``, ``classes``);
      ``isotropic`` an exact isotropic vector (``vector``);
      ``pair``      vectors x, y with 2 v(b(x,y)) < v(q(x)) + v(q(y)) (``pair``),
                    with the current ``basis`` and ``values``;
      ``limit``     iteration limit reached (last ``basis`` and ``values``).
    """

    kind: str
    iterations: int
    basis: list | None = None
    values: list | None = None
    classes: dict | None = None
    vector: list | None = None
    pair: tuple | None = None


def _leading_form(q, k, scaled, two):
    F = q.field
    m = len(scaled)
    gram = [[k.zero] * m for _ in range(m)]
    for a in range(m):
        gram[a][a] = F.residue_component(q(scaled[a]), two)
        for b in range(a + 1, m):
            gram[a][b] = F.residue_component(q.polar(scaled[a], scaled[b]), two)
    return QuadraticForm(k, gram)


def _rational_roots(a: Fraction, b: Fraction, c: Fraction):
    """Rational roots of c l^2 + b l + a."""
    if c == 0:
        return [] if b == 0 else [-a / b]
    disc = b * b - 4 * a * c
    if disc < 0:
        return []
    n, d = disc.numerator, disc.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn != n or rd * rd != d:
        return []
    r = Fraction(rn, rd)
    return sorted({(-b + r) / (2 * c), (-b - r) / (2 * c)})


def _exact_base_step(q: QuadraticForm, x, y):
    """x + l y, l in the base field, raising the t-order of q(x); or None.

    Over Q2((t)) the graded reduction lifts one residue digit per step and
    may only approach such an l 2-adically; a rational root of the lowest
    t-coefficient of q(x + l y) is taken directly instead.
    """
    F = q.field
    if not (isinstance(F, RationalFunctionField) and isinstance(F.base, DyadicRationals)):
        return None
    qx = q(x)
    if F.is_zero(qx):
        return None
    coeffs = [qx, q.polar(x, y), q(y)]
    m = min(F.t_order(c) for c in coeffs if not F.is_zero(c))
    if F.t_order(qx) != m:
        return None
    a, b, c = (F.series(e, m).get(m, Fraction(0)) for e in coeffs)
    for lam in _rational_roots(a, b, c):
        if lam == 0:
            continue
        new = linalg.vec_add(F, x, linalg.vec_scale(F, F.from_base(lam), y))
        qn = q(new)
        if F.is_zero(qn) or F.t_order(qn) > m:
            return new
    return None


def reduce_alpha_hat(q: QuadraticForm, basis=None, max_iterations: int = 64) -> Reduction:
    """Graded reduction of a basis towards one that splits alpha-hat.

    With gamma_i = alpha-hat(e_i), the basis splits alpha-hat exactly when
    it is bounded by q and, in every class of the gamma_i modulo the value
    group, the leading coefficient form over the residue field is
    anisotropic.  An isotropic leading form gives a combination with larger
    alpha-hat, which replaces a basis vector; a pair breaking boundedness is
    returned since Hensel's lemma makes its span isotropic.
    """
    F = q.field
    k = F.residue_field
    basis = [list(v) for v in (basis if basis is not None else linalg.identity(F, q.dim))]
    for it in range(max_iterations):
        vals = []
        for e in basis:
            a = alpha_hat(q, e)
            if isinstance(a, IsotropicVector):
                return Reduction("isotropic", it, vector=a.vector)
            vals.append(a)
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                if F.valuation(q.polar(basis[i], basis[j])) < vals[i] + vals[j]:
                    return Reduction("pair", it, pair=(basis[i], basis[j]), basis=basis, values=vals)
        groups: dict = {}
        for i, g in enumerate(vals):
            groups.setdefault(g.coset_mod_lattice(), []).append(i)
        improved = False
        for coset, idx in groups.items():
            ref = vals[idx[0]]
            scaled = [linalg.vec_scale(F, F.pi(ref - vals[i]), basis[i]) for i in idx]
            lead = _leading_form(q, k, scaled, ref + ref)
            w = next((c for c in colex_vectors(k, list(k.elements()), len(idx)) if k.is_zero(lead(c))), None)
            if w is None:
                continue
            new = [F.zero] * q.dim
            pivot = None
            support = [a for a, c in enumerate(w) if not k.is_zero(c)]
            for a in support:
                new = linalg.vec_add(F, new, linalg.vec_scale(F, F.lift_residue(w[a]), scaled[a]))
                pivot = idx[a] if pivot is None else pivot
            if len(support) == 2:
                exact = _exact_base_step(q, linalg.vec_scale(F, F.lift_residue(w[support[0]]), scaled[support[0]]),
                                         scaled[support[1]])
                if exact is not None:
                    new = exact
            basis[pivot] = new
            improved = True
            break
        if not improved:
            return Reduction("split", it, basis=basis, values=vals, classes=groups)
    vals = [alpha_hat(q, e) for e in basis]
    if any(isinstance(a, IsotropicVector) for a in vals):
        return Reduction("isotropic", max_iterations, vector=next(a for a in vals if isinstance(a, IsotropicVector)).vector)
    return Reduction("limit", max_iterations, basis=basis, values=vals)


@dataclass
class SplittingAttempt:
    success: bool
    norm: Norm | None
    iterations: int
    note: str = ""
    isotropic: list | None = None


def try_splitting_basis(q: QuadraticForm, max_iterations: int = 64) -> SplittingAttempt:
    """Best-effort search for a basis splitting alpha-hat (see :func:`reduce_alpha_hat`).

    Failure is reported, never hidden: an isotropic vector refutes the
    anisotropy assumption, and a pair breaking boundedness shows q is
    isotropic over the completion.
    """
    F = q.field
    r = reduce_alpha_hat(q, max_iterations=max_iterations)
    if r.kind == "split":
        return SplittingAttempt(True, Norm(F, r.basis, r.values), r.iterations)
    if r.kind == "isotropic":
        return SplittingAttempt(False, None, r.iterations, "isotropic vector", r.vector)
    if r.kind == "pair":
        return SplittingAttempt(False, None, r.iterations, "pair with 2v(b) < v(q(x)) + v(q(y))")
    return SplittingAttempt(False, None, r.iterations, "iteration limit reached")
