"""Quadratic forms stored as upper-triangular quadratic Gram data.

q(x) = sum_{i<=j} c_ij x_i x_j.  The polar form has b(e_i, e_j) = c_ij for
i < j and b(e_i, e_i) = 2 c_ii, so nothing is lost in characteristic 2.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from . import linalg, polys
from .valued_fields import DyadicRationals, Field, FieldError, RationalFunctionField


class FormError(ValueError):
    pass


class QuadraticForm:
    __slots__ = ("field", "gram")

    def __init__(self, F: Field, gram):
        n = len(gram)
        rows = []
        for i in range(n):
            if len(gram[i]) != n:
                raise FormError("Gram data must be square")
            row = []
            for j in range(n):
                c = F.coerce(gram[i][j])
                if j < i and not F.is_zero(c):
                    raise FormError("Gram data must be upper triangular")
                row.append(F.zero if j < i else c)
            rows.append(tuple(row))
        self.field = F
        self.gram = tuple(rows)

    # constructors -----------------------------------------------------------
    @classmethod
    def diagonal(cls, F, entries):
        n = len(entries)
        return cls(F, [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def binary(cls, F, a, b, c):
        """a x^2 + b xy + c y^2."""
        return cls(F, [[a, b], [0, c]])

    @classmethod
    def hyperbolic(cls, F, n: int = 1):
        """x1 x2 + x3 x4 + ... (n planes)."""
        form = cls(F, [])
        for _ in range(n):
            form = form.orthogonal_sum(cls.binary(F, 0, 1, 0))
        return form

    @classmethod
    def zero_form(cls, F, n):
        return cls(F, [[0] * n for _ in range(n)])

    # evaluation -------------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.gram)

    def _check(self, x):
        if len(x) != self.dim:
            raise FormError(f"vector of length {len(x)} for a form of dimension {self.dim}")

    def __call__(self, x):
        return self.evaluate(x)

    def evaluate(self, x):
        self._check(x)
        F = self.field
        x = [F.coerce(a) for a in x]
        acc = F.zero
        for i in range(self.dim):
            if F.is_zero(x[i]):
                continue
            row = self.gram[i]
            s = F.zero
            for j in range(i, self.dim):
                if not F.is_zero(row[j]) and not F.is_zero(x[j]):
                    s = F.add(s, F.mul(row[j], x[j]))
            acc = F.add(acc, F.mul(x[i], s))
        return acc

    def polar_matrix(self):
        F = self.field
        n = self.dim
        M = [[F.zero] * n for _ in range(n)]
        for i in range(n):
            M[i][i] = F.add(self.gram[i][i], self.gram[i][i])
            for j in range(i + 1, n):
                M[i][j] = self.gram[i][j]
                M[j][i] = self.gram[i][j]
        return M

    def polar(self, x, y):
        self._check(x)
        self._check(y)
        F = self.field
        x = [F.coerce(a) for a in x]
        y = [F.coerce(a) for a in y]
        return linalg.dot(F, x, linalg.mat_vec(F, self.polar_matrix(), y))

    def evaluate_and_polar(self, x, y=None):
        return self.evaluate(x) if y is None else self.polar(x, y)

    # structure --------------------------------------------------------------
    def is_nonsingular(self) -> bool:
        F = self.field
        return self.dim == 0 or not F.is_zero(linalg.det(F, self.polar_matrix()))

    def change_basis(self, cols):
        """The form y -> q(sum_k y_k cols[k]) in the basis ``cols``."""
        F = self.field
        cols = [[F.coerce(a) for a in c] for c in cols]
        k = len(cols)
        P = self.polar_matrix()
        Pc = [linalg.mat_vec(F, P, c) for c in cols]
        gram = [[F.zero] * k for _ in range(k)]
        for a in range(k):
            gram[a][a] = self.evaluate(cols[a])
            for b in range(a + 1, k):
                gram[a][b] = linalg.dot(F, cols[a], Pc[b])
        return QuadraticForm(F, gram)

    def restrict(self, vectors):
        F = self.field
        if vectors and linalg.rank(F, [list(v) for v in vectors]) < len(vectors):
            raise linalg.SingularMatrix("restriction vectors are dependent")
        return self.change_basis(vectors)

    def orthogonal_sum(self, other: "QuadraticForm") -> "QuadraticForm":
        if other.field != self.field:
            raise FieldError("orthogonal sum over different fields")
        F = self.field
        n, m = self.dim, other.dim
        gram = [[F.zero] * (n + m) for _ in range(n + m)]
        for i in range(n):
            for j in range(i, n):
                gram[i][j] = self.gram[i][j]
        for i in range(m):
            for j in range(i, m):
                gram[n + i][n + j] = other.gram[i][j]
        return QuadraticForm(F, gram)

    __add__ = orthogonal_sum

    def scale(self, a) -> "QuadraticForm":
        F = self.field
        a = F.coerce(a)
        if F.is_zero(a):
            raise FormError("scaling by zero")
        return QuadraticForm(F, [[F.mul(a, c) for c in row] for row in self.gram])

    def negate(self):
        return self.scale(self.field.neg(self.field.one))

    def extend_scalars(self, K) -> "QuadraticForm":
        """Reinterpret Gram entries over an extension K (which has ``embed``)."""
        if getattr(K, "base", None) != self.field:
            raise FieldError(f"{K} is not an extension of {self.field}")
        return QuadraticForm(K, [[K.embed(c) for c in row] for row in self.gram])

    def __eq__(self, other):
        return isinstance(other, QuadraticForm) and self.field == other.field and self.gram == other.gram

    def __hash__(self):
        return hash(self.gram)

    def __repr__(self):
        F = self.field
        rows = ", ".join("[" + ", ".join(F.fmt(c) for c in row) + "]" for row in self.gram)
        return f"QuadraticForm({F}, [{rows}])"


def combine(op: str, *inputs):
    """``orthogonal_sum`` of forms, ``scale_by`` (a, q) or ``restrict_to`` (q, vectors)."""
    if op == "orthogonal_sum":
        out = inputs[0]
        for q in inputs[1:]:
            out = out.orthogonal_sum(q)
        return out
    if op == "scale_by":
        a, q = inputs
        return q.scale(a)
    if op == "restrict_to":
        q, vectors = inputs
        return q.restrict(vectors)
    raise FormError(f"unknown combine op {op!r}")


def norm_form(F: Field, u) -> QuadraticForm:
    """N(r + s mu) = r^2 - r s + u s^2 for mu^2 + mu + u = 0."""
    return QuadraticForm.binary(F, F.one, F.neg(F.one), F.coerce(u))


# --------------------------------------------------------------------------
# invariants and decompositions over arbitrary fields
# --------------------------------------------------------------------------


def symplectic_basis(q: QuadraticForm):
    """Pairs (e, f) with b(e, f) = 1, mutually b-orthogonal.

    Requires an alternating nondegenerate polar form (characteristic 2,
    nonsingular q).
    """
    F = q.field
    if F.characteristic != 2:
        raise FormError("symplectic reduction needs characteristic 2")
    if not q.is_nonsingular():
        raise FormError("form is singular")
    basis = [list(r) for r in linalg.identity(F, q.dim)]
    pairs = []
    while basis:
        e = basis[0]
        idx = next((k for k in range(1, len(basis)) if not F.is_zero(q.polar(e, basis[k]))), None)
        if idx is None:
            raise FormError("form is singular")
        f = linalg.vec_scale(F, F.inv(q.polar(e, basis[idx])), basis[idx])
        pairs.append((e, f))
        rest = [basis[k] for k in range(1, len(basis)) if k != idx]
        basis = [_project_out(q, v, e, f) for v in rest]
    return pairs


def _project_out(q, v, e, f):
    """v - b(v,f) e - b(v,e) f; orthogonal to span(e, f) when b(e,f)=1, b(e,e)=b(f,f)=0."""
    F = q.field
    v = linalg.vec_sub(F, v, linalg.vec_scale(F, q.polar(v, f), e))
    return linalg.vec_sub(F, v, linalg.vec_scale(F, q.polar(v, e), f))


def arf_element(q: QuadraticForm):
    """sum q(e_i) q(f_i) over a symplectic basis; its class mod {a^2 + a} is the Arf invariant."""
    F = q.field
    return F.sum(F.mul(q(e), q(f)) for e, f in symplectic_basis(q))


def arf_invariant(q: QuadraticForm) -> int:
    """Arf invariant over a finite field of characteristic 2, as 0 or 1 (via the trace)."""
    F = q.field
    if not F.is_finite or F.characteristic != 2:
        raise FormError("arf_invariant needs a finite field of characteristic 2")
    if q.dim % 2:
        raise FormError("odd dimension")
    return F.trace(arf_element(q))


def signed_discriminant(q: QuadraticForm):
    """(-1)^(n(n-1)/2) det(b/2), characteristic not 2."""
    F = q.field
    if F.characteristic == 2:
        raise FormError("no discriminant in characteristic 2")
    n = q.dim
    d = linalg.det(F, q.polar_matrix())
    d = F.div(d, F.pow(F.from_int(2), n))
    if (n * (n - 1) // 2) % 2:
        d = F.neg(d)
    return d


def hyperbolic_partner(q: QuadraticForm, w, basis):
    """Given isotropic w, a vector w' with q(w') = 0 and b(w, w') = 1, drawn from ``basis``."""
    F = q.field
    z = next((v for v in basis if not F.is_zero(q.polar(w, v))), None)
    if z is None:
        raise FormError("isotropic vector lies in the radical")
    z = linalg.vec_scale(F, F.inv(q.polar(w, z)), z)
    qz = q(z)
    return linalg.vec_sub(F, z, linalg.vec_scale(F, qz, w))


def split_hyperbolic_plane(q: QuadraticForm, w, basis):
    """Split span(w, w') off the nonsingular subspace spanned by ``basis``.

    Returns (w', complement basis) with the complement b-orthogonal to the plane.
    """
    F = q.field
    w2 = hyperbolic_partner(q, w, basis)
    proj = [_project_out(q, v, w, w2) for v in basis]
    keep = linalg.independent_subset(F, proj)
    comp = [proj[k] for k in keep]
    if len(comp) != len(basis) - 2:
        raise FormError("complement has the wrong dimension")
    return w2, comp


# --------------------------------------------------------------------------
# finite fields
# --------------------------------------------------------------------------


def finite_isotropic_vector(q: QuadraticForm, within=None):
    """Least isotropic vector over a finite field (colex order), or None.

    ``within`` restricts the search to the span of the given vectors; the
    order is then on coefficient vectors.  By Chevalley-Warning a witness
    exists on the first three coordinates whenever dim >= 3, so the
    enumeration stops early.
    """
    F = q.field
    basis = within if within is not None else [list(r) for r in linalg.identity(F, q.dim)]
    for coeffs in colex_vectors(F, list(F.elements()), len(basis)):
        v = _combine(F, coeffs, basis)
        if F.is_zero(q(v)):
            return v
    return None


def _combine(F, coeffs, basis):
    v = [F.zero] * len(basis[0])
    for c, b in zip(coeffs, basis):
        if not F.is_zero(c):
            v = linalg.vec_add(F, v, linalg.vec_scale(F, c, b))
    return v


@dataclass
class FiniteWittData:
    witt_index: int
    anisotropic_gram: QuadraticForm
    invariant: tuple
    basis_change: list  # columns: hyperbolic pairs first, then the anisotropic basis
    hyperbolic_pairs: list = field(default_factory=list)

    def decomposed_form(self, q: QuadraticForm) -> QuadraticForm:
        return q.change_basis(self.basis_change)


def witt_decompose_finite(q: QuadraticForm) -> FiniteWittData:
    F = q.field
    if not F.is_finite:
        raise FormError("witt_decompose_finite needs a finite field")
    if q.dim % 2:
        raise FormError("odd dimension")
    if not q.is_nonsingular():
        raise FormError("form is singular")
    basis = [list(r) for r in linalg.identity(F, q.dim)]
    pairs = []
    while basis:
        w = finite_isotropic_vector(q, basis)
        if w is None:
            break
        w2, basis = split_hyperbolic_plane(q, w, basis)
        pairs.append((w, w2))
    aniso = q.change_basis(basis) if basis else QuadraticForm(F, [])
    cols = [v for p in pairs for v in p] + basis
    return FiniteWittData(len(pairs), aniso, finite_witt_invariant(q), cols, pairs)


def finite_witt_invariant(q: QuadraticForm) -> tuple:
    """Classifier of the Witt class over a finite field.

    Characteristic 2 (even dimension): ``("arf", 0|1)``.
    Odd characteristic: ``("disc", dim mod 2, d)`` with d = 0 when the
    signed discriminant is a square, 1 otherwise (this is W(F_q)).
    """
    F = q.field
    if F.characteristic == 2:
        return ("arf", arf_invariant(q) if q.dim else 0)
    if q.dim == 0:
        return ("disc", 0, 0)
    d = signed_discriminant(q)
    return ("disc", q.dim % 2, 0 if F.is_square(d) else 1)


def add_finite_invariants(F, a: tuple, b: tuple) -> tuple:
    if a[0] == "arf":
        return ("arf", (a[1] + b[1]) % 2)
    e1, d1 = a[1], a[2]
    e2, d2 = b[1], b[2]
    minus_one_nonsquare = 0 if F.is_square(F.neg(F.one)) else 1
    d = (d1 + d2 + e1 * e2 * minus_one_nonsquare) % 2
    return ("disc", (e1 + e2) % 2, d)


def zero_invariant(F) -> tuple:
    return ("arf", 0) if F.characteristic == 2 else ("disc", 0, 0)


# --------------------------------------------------------------------------
# bounded isotropy search
# --------------------------------------------------------------------------


@dataclass
class SearchBudget:
    degree: int = 6
    height: int = 8
    max_nodes: int = 2_000_000


def isotropy_search_bounded(q: QuadraticForm, budget: SearchBudget | None = None,
                            constraints=None, avoid=None, precondition: bool = True):
    """A nonzero exact zero of q within the budget, or None (not a proof).

    ``constraints``: vectors c that the witness must be b-orthogonal to.
    ``avoid``: vectors whose span the witness must not lie in.
    ``precondition``: over k((t)), k finite, first run the graded reduction
    of alpha-hat and search in the reduced basis (degrees then refer to that
    basis).
    """
    budget = budget or SearchBudget()
    F = q.field
    constraints = [list(c) for c in (constraints or [])]
    avoid = [list(a) for a in (avoid or [])]
    if F.is_finite:
        return _finite_search(q, constraints, avoid)
    if isinstance(F, DyadicRationals):
        return _integer_search(q, budget, constraints, avoid)
    if isinstance(F, RationalFunctionField):
        if precondition and F.base.is_finite and not constraints and not avoid and q.dim:
            return _preconditioned_search(q, budget)
        return _tadic_search(q, budget, constraints, avoid)
    raise FormError(f"no bounded search for {F}")


def _acceptable(q, v, constraints, avoid):
    F = q.field
    if all(F.is_zero(a) for a in v):
        return False
    if not F.is_zero(q(v)):
        return False
    if any(not F.is_zero(q.polar(v, c)) for c in constraints):
        return False
    if avoid and linalg.rank(F, avoid + [v]) == linalg.rank(F, avoid):
        return False
    return True


def colex_vectors(F, coeffs, n, normalise=True):
    """Nonzero vectors over ``coeffs`` in colexicographic order.

    Every vector supported on the first m coordinates comes before any
    vector involving coordinate m + 1.  With ``normalise`` the first nonzero
    entry is 1 (finite fields); otherwise it is positive (integers).
    """
    for tup in product(coeffs, repeat=n):
        v = tup[::-1]
        nz = next((a for a in v if not F.is_zero(a)), None)
        if nz is None:
            continue
        if normalise and nz != F.one:
            continue
        if not normalise and nz < 0:
            continue
        yield list(v)


def _finite_search(q, constraints, avoid):
    F = q.field
    for v in colex_vectors(F, list(F.elements()), q.dim):
        if _acceptable(q, v, constraints, avoid):
            return v
    return None


def _integer_search(q, budget, constraints, avoid):
    from math import gcd

    F = q.field
    n = q.dim
    h = budget.height
    for height in range(1, h + 1):
        for v in product(range(-height, height + 1), repeat=n):
            if max(abs(a) for a in v) != height:
                continue
            nz = next(a for a in v if a)
            if nz < 0:
                continue
            g = 0
            for a in v:
                g = gcd(g, a)
            if g != 1:
                continue
            vec = [F.from_int(a) for a in v]
            if _acceptable(q, vec, constraints, avoid):
                return vec
    return None


def _preconditioned_search(q, budget):
    kind, w = _reduced_search(q, budget)
    if kind == "unreduced":
        return _tadic_search(q, budget, [], [])
    return w


def _reduced_search(q, budget):
    """("found", w) | ("split", w or None) | ("unreduced", None).

    "split" means the search ran in a basis splitting alpha-hat.
    """
    from .norms import reduce_alpha_hat

    F = q.field
    red = reduce_alpha_hat(q, max_iterations=4 * q.dim + 8)
    if red.kind == "isotropic":
        return "found", red.vector
    if red.kind == "pair":
        # capped: when the plane has no low-degree zero other bases are cheaper
        plane = list(red.pair)
        cap = SearchBudget(degree=budget.degree, height=budget.height, max_nodes=min(budget.max_nodes, 5000))
        w = _tadic_search(q.change_basis(plane), cap, [], [])
        if w is not None:
            return "found", _combine(F, w, plane)
    if red.kind not in ("split", "pair"):
        return "unreduced", None
    # shift to values in {0, 1/2}: the lowest t-levels then see the leading forms
    P = []
    for e, g in zip(red.basis, red.values):
        s = F.monomial(F.base.one, -(g.coords[0].numerator // g.coords[0].denominator))
        P.append(linalg.vec_scale(F, s, e))
    if red.kind == "pair":
        cap = SearchBudget(degree=budget.degree, height=budget.height, max_nodes=min(budget.max_nodes, 600_000))
        w = _tadic_search(q.change_basis(P), cap, [], [])
        return ("found", _combine(F, w, P)) if w is not None else ("unreduced", None)
    w = _tadic_search(q.change_basis(P), budget, [], [])
    return "split", (None if w is None else _combine(F, w, P))


@dataclass
class StrippingResult:
    planes: list  # (w, w') with q(w) = q(w') = 0, b(w, w') = 1
    kernel: list  # basis of the b-orthogonal complement of the planes

    @property
    def count(self):
        return len(self.planes)


def strip_hyperbolic_planes(q: QuadraticForm, budget: SearchBudget | None = None) -> StrippingResult:
    """Split off hyperbolic planes using exact witnesses found by bounded searches.

    Each witness is searched for b-orthogonal to the planes already split,
    in the ambient coordinates; over k((t)) the complement is first reduced
    and searched in a basis splitting alpha-hat when there is one.  The
    count is a lower bound for the Witt index.
    """
    budget = budget or SearchBudget()
    F = q.field
    W = [list(r) for r in linalg.identity(F, q.dim)]
    planes = []
    while W:
        cons = [v for p in planes for v in p]
        if isinstance(F, RationalFunctionField) and F.base.is_finite:
            kind, w = _reduced_search(q.change_basis(W), budget)
            if w is not None:
                w = _combine(F, w, W)
            if kind == "unreduced":
                w = _tadic_search(q, budget, cons, [])
        else:
            w = isotropy_search_bounded(q, budget, constraints=cons)
        if w is None:
            break
        w2, W = split_hyperbolic_plane(q, w, W)
        planes.append((w, w2))
    return StrippingResult(planes, W)


def _poly_coeffs(F: RationalFunctionField, x, shift: int, top: int):
    """Coefficient list of t^shift * x (must be a polynomial) up to degree top."""
    s = F.series(x, top - shift)
    out = [F.base.zero] * (top + 1)
    for e, c in s.items():
        k = e + shift
        if k < 0:
            raise FormError("not a polynomial after scaling")
        if k <= top:
            out[k] = c
    return out


def _clear_denominators(q: QuadraticForm):
    """A scalar multiple of q whose Gram entries are polynomials in t."""
    F = q.field
    B = F.base
    den = (B.one,)
    for row in q.gram:
        for c in row:
            if not F.is_zero(c):
                d = c[1]
                g = polys.gcd(B, den, d)
                den = polys.divmod_(B, polys.mul(B, den, d), g)[0]
    scaled = q.scale(F._make(den, (B.one,)))
    low = min((F.t_order(c) for row in scaled.gram for c in row if not F.is_zero(c)), default=0)
    if low:
        scaled = scaled.scale(F.monomial(B.one, -low))
    return scaled


class _TableField:
    """A finite field re-encoded as 0..q-1 (0 = zero, 1 = one) with lookup tables.

    The searches run the same code over this encoding; it only replaces
    the per-operation cost of the underlying field arithmetic.
    """

    is_finite = True
    zero = 0
    one = 1

    def __init__(self, B):
        elems = list(B.elements())
        elems.remove(B.zero)
        elems.remove(B.one)
        self.base = B
        self.decode = [B.zero, B.one] + elems
        index = {x: i for i, x in enumerate(self.decode)}
        self.encode = index.__getitem__
        r = range(len(self.decode))
        D = self.decode
        self._add = [[index[B.add(D[a], D[b])] for b in r] for a in r]
        self._mul = [[index[B.mul(D[a], D[b])] for b in r] for a in r]
        self._neg = [index[B.neg(D[a])] for a in r]
        self._inv = [None] + [index[B.inv(D[a])] for a in r if a]

    def elements(self):
        return iter(range(len(self.decode)))

    def add(self, a, b):
        return self._add[a][b]

    def sub(self, a, b):
        return self._add[a][self._neg[b]]

    def neg(self, a):
        return self._neg[a]

    def mul(self, a, b):
        return self._mul[a][b]

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return self._inv[a]

    def div(self, a, b):
        return self._mul[a][self.inv(b)]

    def is_zero(self, a):
        return a == 0

    def eq(self, a, b):
        return a == b

    def sum(self, items):
        acc = 0
        for x in items:
            acc = self._add[acc][x]
        return acc


@lru_cache(maxsize=None)
def _table_field(B):
    return _TableField(B)


def _tadic_search(q, budget, constraints, avoid):
    """Depth-first search over polynomial vectors sum_j x_j t^j, j <= degree.

    Gram entries are scaled to polynomials, so the t^m coefficient of q(x)
    depends only on x_0..x_m and must vanish; branches are pruned level by
    level.  Primitive solutions have x_0 != 0.
    """
    F = q.field
    B = F.base
    if q.dim == 0:
        return None
    qs = _clear_denominators(q)
    n = q.dim
    if B.is_finite:
        T = _table_field(B)
        coeff_set = list(T.elements())
        normalise = True
    elif isinstance(B, DyadicRationals):
        coeff_set = [B.from_int(a) for a in range(-budget.height, budget.height + 1)]
        normalise = False
    else:
        raise FormError(f"no bounded search over {B}")

    # constraint linear forms l(x) = b(x, c), scaled to polynomials
    cons = []
    for c in constraints:
        row = linalg.mat_vec(F, qs.polar_matrix(), [F.coerce(a) for a in c])
        nz = [a for a in row if not F.is_zero(a)]
        if not nz:
            continue
        den = (B.one,)
        for a in nz:
            g = polys.gcd(B, den, a[1])
            den = polys.divmod_(B, polys.mul(B, den, a[1]), g)[0]
        row = [F.mul(a, F._make(den, (B.one,))) for a in row]
        low = min(F.t_order(a) for a in row if not F.is_zero(a))
        row = [F.mul(a, F.monomial(B.one, -low)) for a in row]
        cons.append(row)

    nodes = [0]
    for d in range(budget.degree + 1):
        top_q = 2 * d + max((len(c[0]) for row in qs.gram for c in row), default=1) + 2
        G = [[_poly_coeffs(F, qs.gram[i][j], 0, top_q) for j in range(n)] for i in range(n)]
        top_c = d + max((len(a[0]) for row in cons for a in row), default=1) + 2
        C = [[_poly_coeffs(F, a, 0, top_c) for a in row] for row in cons]
        if B.is_finite:
            G = [[[T.encode(c) for c in g] for g in row] for row in G]
            C = [[[T.encode(c) for c in g] for g in row] for row in C]
            found = _dfs(F, T, q, G, C, n, d, coeff_set, normalise, constraints, avoid, budget, nodes)
        else:
            found = _dfs(F, B, q, G, C, n, d, coeff_set, normalise, constraints, avoid, budget, nodes)
        if found is not None:
            return found
        if nodes[0] > budget.max_nodes:
            break
    return None


def _coef_q(B, G, X, n, m):
    """t^m coefficient of sum_{i<=j} G_ij(t) x_i(t) x_j(t); X[a][i] = coeff of t^a in x_i."""
    acc = B.zero
    levels = len(X)
    for i in range(n):
        for j in range(i, n):
            g = G[i][j]
            for k in range(min(m, len(g) - 1) + 1):
                if B.is_zero(g[k]):
                    continue
                r = m - k
                for a in range(max(0, r - levels + 1), min(r, levels - 1) + 1):
                    xa = X[a][i]
                    xb = X[r - a][j]
                    if B.is_zero(xa) or B.is_zero(xb):
                        continue
                    acc = B.add(acc, B.mul(g[k], B.mul(xa, xb)))
    return acc


def _coef_l(B, row, X, n, m):
    acc = B.zero
    levels = len(X)
    for i in range(n):
        g = row[i]
        for k in range(min(m, len(g) - 1) + 1):
            a = m - k
            if a < levels and not B.is_zero(g[k]) and not B.is_zero(X[a][i]):
                acc = B.add(acc, B.mul(g[k], X[a][i]))
    return acc


def _dfs(F, B, q, G, C, n, d, coeff_set, normalise, constraints, avoid, budget, nodes):
    X = []
    # for m >= 1 the t^m coefficients of q(x) and of the constraint forms are
    # affine in X[m]: q gives c + (B0 X[0]) . X[m], B0 the constant polar matrix
    B0 = [[B.add(G[i][j][0], G[j][i][0]) for j in range(n)] for i in range(n)]

    def level_vectors(m):
        if not B.is_finite:
            if m == 0:
                return colex_vectors(B, coeff_set, n, normalise)
            return (list(v[::-1]) for v in product(coeff_set, repeat=n))
        return affine_level(m)

    def affine_level(m):
        rows, rhs = [], []
        X.append([B.zero] * n)
        if m >= 1:
            rows.append([B.sum(B.mul(B0[p][j], X[0][j]) for j in range(n)) for p in range(n)])
            rhs.append(B.neg(_coef_q(B, G, X, n, m)))
        for row in C:
            rows.append([row[i][0] for i in range(n)])
            rhs.append(B.neg(_coef_l(B, row, X, n, m)))
        X.pop()
        sol = linalg.affine_solutions(B, rows, rhs, n)
        if sol is None:
            return
        x0, null = sol
        if m == 0:
            combos = colex_vectors(B, coeff_set, len(null), normalise)
        else:
            combos = (list(v[::-1]) for v in product(coeff_set, repeat=len(null)))
        for cs in combos:
            v = list(x0)
            for c, e in zip(cs, null):
                if not B.is_zero(c):
                    v = [B.add(a, B.mul(c, b)) for a, b in zip(v, e)]
            yield v

    def rec(m):
        if m > d:
            if B.is_finite and any(not B.is_zero(_coef_q(B, G, X, n, k)) for k in range(d + 1, len(G[0][0]))):
                return None
            dec = B.decode.__getitem__ if isinstance(B, _TableField) else (lambda c: c)
            vec = [F.from_laurent({a: dec(X[a][i]) for a in range(d + 1) if not B.is_zero(X[a][i])})
                   for i in range(n)]
            return vec if _acceptable(q, vec, constraints, avoid) else None
        for v in level_vectors(m):
            nodes[0] += 1
            if nodes[0] > budget.max_nodes:
                return None
            X.append(v)
            ok = (B.is_finite and m > 0) or (B.is_zero(_coef_q(B, G, X, n, m)) and all(
                B.is_zero(_coef_l(B, row, X, n, m)) for row in C))
            if ok:
                r = rec(m + 1)
                if r is not None:
                    return r
            X.pop()
        return None

    return rec(0)
