"""Residue classes, lifting, Witt indices and inertial splitting over Henselian fields."""
from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg
from .graded_forms import (
    GradedQuadraticForm,
    TameWittClass,
    graded_witt_class,
    graded_witt_index,
    orthogonal_decomposition,
    residue_forms,
)
from .norms import (
    Norm,
    NormError,
    check_bounded,
    direct_sum_norms,
    induce_graded_form,
    is_tame_norm,
    reduce_alpha_hat,
)
from .quadratic_forms import (
    FormError,
    QuadraticForm,
    SearchBudget,
    _combine,
    colex_vectors,
    isotropy_search_bounded,
    norm_form,
    symplectic_basis,
)
from .valued_fields import (
    Field,
    FieldError,
    FiniteExtension,
    RationalFunctionField,
    hensel_quadratic_root,
    laurent,
    make_inertial_extension,
)
from .valuegroup import ValueGroupElement

__all__ = [
    "TameWittClass",
    "DecompositionCertificate",
    "residue_class",
    "lift_graded",
    "witt_index_tame",
    "hensel_isotropic_vector",
    "property_S_check",
    "isotropic_over_inertial_quadratic",
    "springer_tame_decompose",
    "is_in_Iqt",
    "extend_scalars_inertial",
]


# --------------------------------------------------------------------------
# residue map and lifting
# --------------------------------------------------------------------------


def _require_tame(q, alpha):
    rep = check_bounded(alpha, q)
    if not rep:
        raise NormError(f"norm is not bounded by q: {rep.detail}")
    if not is_tame_norm(alpha, q):
        raise NormError("induced graded form is singular: norm is not tame")


def residue_class(q: QuadraticForm, alpha: Norm, pi: dict | None = None) -> TameWittClass:
    if q.dim % 2:
        raise FormError("odd-dimensional form")
    _require_tame(q, alpha)
    return graded_witt_class(induce_graded_form(q, alpha), pi)


def tame_class_ops(op: str, *classes):
    if op == "add":
        out = classes[0]
        for c in classes[1:]:
            out = out + c
        return out
    if op == "negate":
        return -classes[0]
    if op == "is_zero":
        return classes[0].is_zero
    raise ValueError(f"unknown op {op!r}")


def orthogonal_basis_odd(q: QuadraticForm):
    """Orthogonal basis over a field of characteristic not 2 (q nonsingular)."""
    F = q.field
    basis = [list(r) for r in linalg.identity(F, q.dim)]
    out = []
    while basis:
        v = next((b for b in basis if not F.is_zero(q(b))), None)
        if v is None:
            # every q(b_i) = 0, so q(b_i + b_j) = b(b_i, b_j)
            pair = next(((a, c) for a in range(len(basis)) for c in range(a + 1, len(basis))
                         if not F.is_zero(q.polar(basis[a], basis[c]))), None)
            if pair is None:
                raise FormError("form is singular")
            v = linalg.vec_add(F, basis[pair[0]], basis[pair[1]])
        out.append(v)
        two_qv = F.add(q(v), q(v))
        proj = [linalg.vec_sub(F, w, linalg.vec_scale(F, F.div(q.polar(w, v), two_qv), v)) for w in basis]
        basis = [proj[i] for i in linalg.independent_subset(F, proj)]
        if len(basis) != q.dim - len(out):
            raise FormError("form is singular")
    return out


@dataclass
class LiftedForm:
    form: QuadraticForm
    norm: Norm


def lift_graded(phi: GradedQuadraticForm, F: Field) -> LiftedForm:
    """Lift a nonsingular graded form to a form over F with a tame norm.

    In residue characteristic 2 each residue form is split into binary
    blocks by symplectic reduction; the block a_1 x^2 + x y + a_2 y^2 over
    the residue field at class delta is lifted to
    A_1 x^2 + x y + A_2 y^2 with A_1 = a_1 pi(delta), A_2 = a_2 pi(-delta)
    and values (delta/2, -delta/2).  Otherwise residue forms are
    diagonalised and each entry lifted at value delta/2.  The part of
    degrees outside (1/2) Gamma_F is hyperbolic and becomes hyperbolic
    planes (one per pair of partner degrees) with value 0.
    """
    if F.residue_field != phi.field:
        raise FieldError(f"residue field of {F} is not {phi.field}")
    if phi.dim % 2:
        raise FormError("odd-dimensional graded form")
    dec = orthogonal_decomposition(phi)
    blocks = []
    values = []
    canon = {}
    for i in dec.w_indices:
        canon.setdefault(phi.degrees[i].coset_mod_lattice(), []).append(i)
    seen = set()
    for c, idx in canon.items():
        if c in seen:
            continue
        partner = tuple((-x) % 1 for x in c)
        seen.update({c, partner})
        zero = ValueGroupElement.zero(F.rank)
        for _ in idx:
            # norm values stay in (1/2) Gamma: the plane is lifted at value 0
            blocks.append(QuadraticForm.hyperbolic(F, 1))
            values += [zero, zero]
    res = residue_forms(phi)
    for delta, r in res.items():
        d = ValueGroupElement(delta)
        half = d.half()
        k = r.field
        if k.characteristic == 2:
            for e, f in symplectic_basis(r):
                a1 = F.mul(F.lift_residue(r(e)), F.pi(d))
                a2 = F.mul(F.lift_residue(r(f)), F.pi(-d))
                blocks.append(QuadraticForm.binary(F, a1, 1, a2))
                values += [half, -half]
        else:
            for v in orthogonal_basis_odd(r):
                blocks.append(QuadraticForm.diagonal(F, [F.mul(F.lift_residue(r(v)), F.pi(d))]))
                values.append(half)
    q = QuadraticForm(F, [])
    for b in blocks:
        q = q.orthogonal_sum(b)
    return LiftedForm(q, Norm.identity(F, values))


def witt_index_tame(q: QuadraticForm, alpha: Norm) -> int:
    _require_tame(q, alpha)
    return graded_witt_index(induce_graded_form(q, alpha))


# --------------------------------------------------------------------------
# Hensel rewriting of a pair of vectors
# --------------------------------------------------------------------------


class PreconditionError(ValueError):
    pass


def pair_invariant(q: QuadraticForm, x, y):
    """u = q(x) q(y) / b(x, y)^2 and z = y q(x) / b(x, y).

    On span(x, z): q(x l + z) = q(x) (l^2 + l + u), b(x, z) = q(x) and
    q(z) = u q(x).
    """
    F = q.field
    b = q.polar(x, y)
    if F.is_zero(b):
        raise PreconditionError("b(x, y) = 0")
    qx = q(x)
    u = F.div(F.mul(qx, q(y)), F.mul(b, b))
    z = linalg.vec_scale(F, F.div(qx, b), y)
    return u, z


def hensel_isotropic_vector(q: QuadraticForm, x, y, N: ValueGroupElement, max_steps: int = 64):
    """w = x l0 + y q(x)/b(x,y) with v(q(w)) >= N + v(q(x)).

    Needs 2 v(b(x,y)) < v(q(x)) + v(q(y)); returns x when q(x) = 0.
    """
    F = q.field
    x = [F.coerce(a) for a in x]
    y = [F.coerce(a) for a in y]
    if F.is_zero(q(x)):
        return x
    b = q.polar(x, y)
    if F.is_zero(b):
        raise PreconditionError("b(x, y) = 0")
    vb = F.valuation(b)
    if not vb + vb < F.valuation(q(x)) + F.valuation(q(y)):
        raise PreconditionError("need 2 v(b(x,y)) < v(q(x)) + v(q(y))")
    u, z = pair_invariant(q, x, y)
    lam = hensel_quadratic_root(F, u, N, max_steps)
    return linalg.vec_add(F, linalg.vec_scale(F, lam, x), z)


# --------------------------------------------------------------------------
# Property (S) and inertial quadratic extensions
# --------------------------------------------------------------------------


def is_violation(q: QuadraticForm, x, y) -> bool:
    """Exact test of v(b(x,y)) <= min(v(q(x)), v(q(y))) for nonzero x, y."""
    F = q.field
    return F.valuation(q.polar(x, y)) <= min(F.valuation(q(x)), F.valuation(q(y)))


@dataclass
class SCheck:
    status: str  # "violation" | "holds_on_samples" | "isotropic"
    witness: tuple | None = None
    certified_by_splitting: bool = False
    pairs_checked: int = 0
    note: str = ""


def _splitting_violation(q, red):
    """In a splitting basis, a same-class pair with nonzero leading polar term."""
    F = q.field
    for coset, idx in red.classes.items():
        ref = red.values[idx[0]]
        scaled = [linalg.vec_scale(F, F.pi(ref - red.values[i]), red.basis[i]) for i in idx]
        for a in range(len(idx)):
            for b in range(a + 1, len(idx)):
                if is_violation(q, scaled[a], scaled[b]):
                    return scaled[a], scaled[b]
    return None


def _small_vectors(F, n, height):
    """Vectors with small entries for pair enumeration."""
    from .valued_fields import DyadicRationals

    if F.is_finite:
        coeffs = list(F.elements())
        return list(colex_vectors(F, coeffs, n))
    if isinstance(F, DyadicRationals) or (isinstance(F, RationalFunctionField)
                                         and isinstance(F.base, DyadicRationals)):
        coeffs = [F.from_int(a) for a in range(-height, height + 1)]
        return [v for v in colex_vectors(F, coeffs, n, normalise=False)]
    if isinstance(F, RationalFunctionField) and F.base.is_finite:
        B = F.base
        coeffs = [F.from_base(c) for c in B.elements()]
        coeffs += [F.add(F.from_base(c), F.t) for c in B.elements()]
        return list(colex_vectors(F, coeffs, n))
    raise FormError(f"no pair enumeration for {F}")


def property_S_check(q: QuadraticForm, pairs=None, height: int = 3, max_pairs: int = 20000) -> SCheck:
    """Look for nonzero x, y with v(b(x,y)) <= min(v(q(x)), v(q(y))).

    Explicit ``pairs`` are tested as given.  Otherwise the graded
    reduction of alpha-hat is run first: a splitting basis decides the
    question, since a violation then exists iff two basis vectors in the
    same class have a nonzero leading polar term.  If no splitting basis
    is reached, pairs of small vectors are enumerated.  A returned
    witness is exact; absence is only "holds on samples".
    """
    F = q.field
    if F.residue_field.characteristic != 2:
        raise FormError("the property needs residue characteristic 2")
    if pairs is not None:
        for x, y in pairs:
            for v in (x, y):
                if not any(not F.is_zero(F.coerce(a)) for a in v):
                    raise FormError("pairs must be nonzero")
                if F.is_zero(q(v)):
                    return SCheck("isotropic", (list(v), None))
            x = [F.coerce(a) for a in x]
            y = [F.coerce(a) for a in y]
            if is_violation(q, x, y):
                return SCheck("violation", (x, y), pairs_checked=len(pairs))
        return SCheck("holds_on_samples", pairs_checked=len(pairs))
    red = reduce_alpha_hat(q)
    if red.kind == "isotropic":
        return SCheck("isotropic", (red.vector, None))
    if red.kind == "pair":
        return SCheck("isotropic", red.pair, note="isotropic over the completion (Hensel pair)")
    if red.kind == "split":
        w = _splitting_violation(q, red)
        if w is not None:
            return SCheck("violation", w, certified_by_splitting=True)
        return SCheck("holds_on_samples", certified_by_splitting=True,
                      note="splitting basis has no same-class polar term")
    vecs = _small_vectors(F, q.dim, height)
    count = 0
    for i, x in enumerate(vecs):
        if F.is_zero(q(x)):
            return SCheck("isotropic", (x, None))
        for y in vecs[i + 1:]:
            count += 1
            if count > max_pairs:
                return SCheck("holds_on_samples", pairs_checked=count, note="pair budget exhausted")
            if is_violation(q, x, y):
                return SCheck("violation", (x, y), pairs_checked=count)
    return SCheck("holds_on_samples", pairs_checked=count)


@dataclass
class InertialWitness:
    u: object
    x0: list
    x1: list
    extension: Field
    verified: bool
    violation: tuple


def verify_inertial_witness(q: QuadraticForm, u, x0, x1, K=None) -> bool:
    """q(x0) = u q(x1), b(x0, x1) = q(x1), and q_K(x0 + x1 mu) = 0 when K is given."""
    F = q.field
    if F.is_zero(q(x1)) and all(F.is_zero(a) for a in x1):
        return False
    ok = F.eq(q(x0), F.mul(u, q(x1))) and F.eq(q.polar(x0, x1), q(x1))
    if ok and K is not None:
        qK = q.extend_scalars(K)
        w = [K.add(K.embed(a), K.mul(K.embed(b), K.gen)) for a, b in zip(x0, x1)]
        ok = K.is_zero(qK(w))
    return ok


def isotropic_over_inertial_quadratic(q: QuadraticForm, **kw) -> InertialWitness | None:
    """From a violation (x, y): u = q(x)q(y)/b(x,y)^2, x1 = x, x0 = y q(x)/b(x,y).

    Then q(x0 + x1 mu) = 0 over K = F(mu), mu^2 + mu + u = 0.
    """
    chk = property_S_check(q, **kw)
    if chk.status != "violation":
        return None
    x, y = chk.witness
    u, z = pair_invariant(q, x, y)
    F = q.field
    try:
        K = make_inertial_extension(F, u)
    except FieldError:
        K = None  # residue polynomial splits: q is already isotropic over F
    ok = verify_inertial_witness(q, u, z, x, K)
    return InertialWitness(u, z, x, K, ok, (x, y))


def quadratic_extension_of_finite(k):
    """k[w]/(w^2 + w + c), c the least element with X^2 + X + c irreducible."""
    if k.characteristic != 2:
        raise FieldError("characteristic 2 only")
    for c in k.elements():
        if k.artin_schreier_root(c) is None:
            return FiniteExtension(k, (c, k.one, k.one), "w" if k.size == 2 else "y"), c
    raise FieldError("no irreducible Artin-Schreier polynomial")


def inertial_isotropy_search(q: QuadraticForm, budget: SearchBudget | None = None):
    """Isotropy search for q over k2((t)), k2 the quadratic extension of the residue field.

    Independent of the pair search: a polynomial witness over k2 is split
    into x0 + x1 w and checked through q(x0) = c q(x1), b(x0, x1) = q(x1).
    Returns (c, x0, x1) or None.
    """
    F = q.field
    if not (isinstance(F, RationalFunctionField) and F.base.is_finite and F.characteristic == 2):
        raise FormError("needs k((t)) with k a finite field of characteristic 2")
    k = F.base
    k2, c = quadratic_extension_of_finite(k)
    L = laurent(k2, F.var)

    def up(a):
        num, den = a
        return L._make(tuple(k2.embed(x) for x in num), tuple(k2.embed(x) for x in den))

    qL = QuadraticForm(L, [[up(a) for a in row] for row in q.gram])
    w = isotropy_search_bounded(qL, budget, precondition=False)
    if w is None:
        return None

    def part(a, j):
        num, den = a
        if any(not k.is_zero(x[1]) for x in den):
            raise FormError("witness denominator outside the base field")
        return F._make(tuple(x[j] for x in num), tuple(x[0] for x in den))

    x0 = [part(a, 0) for a in w]
    x1 = [part(a, 1) for a in w]
    if all(F.is_zero(a) for a in x1):
        # witness already over F: w * (x0) has parts (0, x0)
        x0, x1 = [F.zero] * len(x0), x0
    u = F.from_base(c)
    if not verify_inertial_witness(q, u, x0, x1):
        raise FormError("inertial witness failed verification")
    return u, x0, x1


def extend_scalars_inertial(q: QuadraticForm, K) -> QuadraticForm:
    return q.extend_scalars(K)


# --------------------------------------------------------------------------
# decomposition into scaled norm forms
# --------------------------------------------------------------------------


@dataclass
class Summand:
    a: object
    u: object
    split: bool  # True when N(u) is hyperbolic over F


@dataclass
class DecompositionCertificate:
    field: Field
    form: QuadraticForm
    summands: list
    basis_change: list  # columns: (x, -z) per summand, then the leftover kernel
    kernel: list = field(default_factory=list)
    obstruction: str | None = None

    @property
    def complete(self):
        return not self.kernel

    def block_form(self) -> QuadraticForm:
        F = self.field
        out = QuadraticForm(F, [])
        for s in self.summands:
            out = out.orthogonal_sum(norm_form(F, s.u).scale(s.a))
        return out

    def verify(self) -> bool:
        if not self.complete:
            return False
        cols = self.basis_change
        F = self.field
        if len(cols) != self.form.dim or linalg.rank(F, cols) < len(cols):
            return False
        return self.form.change_basis(cols) == self.block_form()

    def tame_norm(self) -> Norm:
        """Direct sum of the valuation norms of the blocks, in the original coordinates."""
        F = self.field
        alpha = Norm(F, [], [])
        for s in self.summands:
            h = F.valuation(s.a).half()
            alpha = direct_sum_norms(alpha, Norm.identity(F, [h, h]))
        Pm = linalg.from_columns(self.basis_change)
        basis = [linalg.mat_vec(F, Pm, e) for e in alpha.basis]
        return Norm(F, basis, alpha.values)

    def to_json(self):
        F = self.field
        n = self.form.dim
        rows = [[F.fmt(self.basis_change[j][i]) for j in range(len(self.basis_change))] for i in range(n)]
        from .literals import format_form

        return {
            "field": F.name,
            "form": format_form(self.form),
            "summands": [{"a": F.fmt(s.a), "u": F.fmt(s.u), "split": s.split} for s in self.summands],
            "basis_change": rows,
            "verified": self.verify(),
        }

    @classmethod
    def from_json(cls, data):
        from .literals import parse_element, parse_form
        from .valued_fields import field_by_name

        F = field_by_name(data["field"])
        q = parse_form(data["form"], F)
        summands = [Summand(parse_element(s["a"], F), parse_element(s["u"], F), bool(s.get("split", False)))
                    for s in data["summands"]]
        rows = [[parse_element(x, F) for x in r] for r in data["basis_change"]]
        cols = linalg.transpose(rows)
        return cls(F, q, summands, cols)


def _is_split(F, u) -> bool:
    if F.is_zero(u):
        return True
    zero = ValueGroupElement.zero(F.rank)
    vu = F.valuation(u)
    if vu > zero:
        return True
    R = F.residue_field
    ub = F.residue(u)
    if R.characteristic == 2:
        return R.artin_schreier_root(ub) is not None
    return R.is_square(R.sub(R.one, R.mul(R.from_int(4), ub)))


def _complement(q, W, plane):
    """b-orthogonal complement of span(plane) inside span(W) (q nonsingular on the plane)."""
    F = q.field
    x, y = plane
    G = [[q.polar(x, x), q.polar(x, y)], [q.polar(y, x), q.polar(y, y)]]
    Ginv = linalg.inverse(F, G)
    out = []
    for w in W:
        r = [q.polar(w, x), q.polar(w, y)]
        c = linalg.mat_vec(F, Ginv, r)
        out.append(linalg.vec_sub(F, w, linalg.vec_add(F, linalg.vec_scale(F, c[0], x), linalg.vec_scale(F, c[1], y))))
    keep = linalg.independent_subset(F, out)
    comp = [out[i] for i in keep]
    if len(comp) != len(W) - 2:
        raise FormError("plane is not a direct summand")
    return comp


def _find_pair(q, W, max_iterations):
    """A pair (x, y) in span(W) with b(x, y) != 0 and v(u) >= 0, or a reason for stopping."""
    F = q.field
    qW = q.change_basis(W)
    red = reduce_alpha_hat(qW, max_iterations=max_iterations)

    def amb(c):
        return _combine(F, c, W)

    if red.kind == "isotropic":
        w = red.vector
        y = next((e for e in linalg.identity(F, qW.dim) if not F.is_zero(qW.polar(w, e))), None)
        if y is None:
            raise FormError("form is singular")
        return ("pair", (amb(w), amb(y)))
    if red.kind == "pair":
        return ("pair", tuple(amb(v) for v in red.pair))
    if red.kind == "split":
        w = _splitting_violation(qW, red)
        if w is not None:
            return ("pair", (amb(w[0]), amb(w[1])))
        return ("S", None)
    # no convergence (e.g. a 2-adic approximation): any basis pair with v(u) >= 0 still gives a block
    for i in range(len(red.basis)):
        for j in range(i + 1, len(red.basis)):
            x, y = red.basis[i], red.basis[j]
            b = qW.polar(x, y)
            if not F.is_zero(b) and F.valuation(b) + F.valuation(b) <= F.valuation(qW(x)) + F.valuation(qW(y)):
                return ("pair", (amb(x), amb(y)))
    return ("limit", None)


def springer_tame_decompose(q: QuadraticForm, max_iterations: int = 64) -> DecompositionCertificate:
    """Split q into blocks <a>N(u) using pairs with v(q(x)q(y)/b(x,y)^2) >= 0.

    For such a pair, span(x, y) with basis (x, -z), z = y q(x)/b(x, y), is
    exactly <q(x)> N(u).  Pairs come from the graded reduction of
    alpha-hat on the current complement: exact isotropic vectors (u = 0),
    Hensel pairs (v(u) > 0, a hyperbolic plane) and same-class pairs of a
    splitting basis (v(u) = 0).  When the reduction splits alpha-hat with
    no usable pair, the remaining kernel satisfies the strict inequality
    for all equal-value pairs and the decomposition stops there.
    """
    F = q.field
    if q.dim % 2:
        raise FormError("odd-dimensional form")
    if not q.is_nonsingular():
        raise FormError("form is singular")
    W = [list(r) for r in linalg.identity(F, q.dim)]
    summands, cols = [], []
    obstruction = None
    while W:
        kind, pair = _find_pair(q, W, max_iterations)
        if kind != "pair":
            obstruction = ("kernel satisfies the strict pair inequality" if kind == "S"
                           else "reduction did not converge")
            break
        x, y = pair
        qx = q(x)
        if F.is_zero(qx):
            # hyperbolic plane: rewrite with a vector of value 1
            b = q.polar(x, y)
            y = linalg.vec_scale(F, F.inv(b), y)
            y = linalg.vec_sub(F, y, linalg.vec_scale(F, q(y), x))  # q(y) = 0, b(x, y) = 1
            e_r = linalg.vec_add(F, x, y)
            e_s = linalg.vec_scale(F, F.neg(F.one), x)
            summands.append(Summand(F.one, F.zero, True))
            cols += [e_r, e_s]
            W = _complement(q, W, (x, y))
            continue
        # rescale x so that v(a) has coordinates in {0, 1}
        g = ValueGroupElement(tuple(c // 2 for c in F.valuation(qx).coords))
        x = linalg.vec_scale(F, F.inv(F.pi(g)), x)
        qx = q(x)
        u, z = pair_invariant(q, x, y)
        summands.append(Summand(qx, u, _is_split(F, u)))
        cols += [x, linalg.vec_scale(F, F.neg(F.one), z)]
        W = _complement(q, W, (x, z))
    cert = DecompositionCertificate(F, q, summands, cols + W, kernel=W, obstruction=obstruction)
    return cert


# --------------------------------------------------------------------------
# membership in the tame part
# --------------------------------------------------------------------------


@dataclass
class IqtResult:
    status: str  # "yes" | "no" | "inconclusive"
    tame_class: TameWittClass | None = None
    norm: Norm | None = None
    certificate: DecompositionCertificate | None = None
    obstruction: str | None = None
    budgets: dict = field(default_factory=dict)


def value_group_obstruction(q: QuadraticForm) -> str | None:
    """Diagonal binary <a, b> with v(a/b) outside 2 Gamma_F (residue characteristic 2).

    Both alpha-hat values then lie in distinct classes modulo the value
    group, which no inertial extension changes, so the form stays
    anisotropic with no equal-value pairs and cannot be split tamely.
    """
    F = q.field
    if q.dim != 2 or not F.is_zero(q.gram[0][1]):
        return None
    a, b = q.gram[0][0], q.gram[1][1]
    if F.is_zero(a) or F.is_zero(b):
        return None
    d = F.valuation(a) - F.valuation(b)
    if any(c % 2 for c in d.coords):
        return f"v(a) - v(b) = {d} is not in 2 Gamma_F"
    return None


def is_in_Iqt(q: QuadraticForm, max_iterations: int = 64) -> IqtResult:
    F = q.field
    budgets = {"max_iterations": max_iterations}
    if q.dim % 2:
        raise FormError("odd-dimensional form")
    if F.residue_field.characteristic != 2:
        alpha = _odd_residue_tame_norm(q)
        return IqtResult("yes", residue_class(q, alpha), alpha, None, budgets=budgets)
    obs = value_group_obstruction(q)
    if obs is not None:
        return IqtResult("no", obstruction=obs, budgets=budgets)
    cert = springer_tame_decompose(q, max_iterations)
    if cert.complete:
        if not cert.verify():
            raise FormError("decomposition certificate failed verification")
        alpha = cert.tame_norm()
        return IqtResult("yes", residue_class(q, alpha), alpha, cert, budgets=budgets)
    if cert.obstruction and cert.obstruction.startswith("kernel"):
        return IqtResult("no", certificate=cert, budgets=budgets,
                         obstruction=f"anisotropic kernel of dimension {len(cert.kernel)} with "
                                     "v(b(x,y)) > alpha(x) + alpha(y) for all equal-value pairs")
    return IqtResult("inconclusive", certificate=cert, obstruction=cert.obstruction, budgets=budgets)


def _odd_residue_tame_norm(q: QuadraticForm) -> Norm:
    F = q.field
    basis = orthogonal_basis_odd(q)
    return Norm(F, basis, [F.valuation(q(v)).half() for v in basis])
