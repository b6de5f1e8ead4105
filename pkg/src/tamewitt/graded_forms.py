"""Graded quadratic forms over the monomial graded field k[Gamma_F].

A homogeneous scalar of degree gamma is c * x^gamma with c in the residue
field k; the monomials x^gamma correspond to the field elements
``F.pi(gamma)``.  A graded form has a homogeneous basis with degrees in the
divisible hull, and Gram entry (i, j) is a homogeneous scalar of degree
deg_i + deg_j (or zero).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from . import linalg
from .quadratic_forms import (
    FormError,
    QuadraticForm,
    add_finite_invariants,
    colex_vectors,
    finite_witt_invariant,
)
from .valued_fields import Field
from .valuegroup import ValueGroupElement


class GradedScalar:
    """Finitely supported map degree -> coefficient (the monomial model of gr(F))."""

    __slots__ = ("field", "terms")

    def __init__(self, k: Field, terms: dict | None = None):
        self.field = k
        self.terms = {g: c for g, c in (terms or {}).items() if not k.is_zero(c)}

    @classmethod
    def homogeneous(cls, k, degree: ValueGroupElement, coeff):
        return cls(k, {degree: k.coerce(coeff)})

    @property
    def is_zero(self):
        return not self.terms

    @property
    def is_homogeneous(self):
        return len(self.terms) <= 1

    @property
    def degree(self):
        if len(self.terms) != 1:
            raise ValueError("degree of a zero or inhomogeneous scalar")
        return next(iter(self.terms))

    @property
    def coeff(self):
        return next(iter(self.terms.values())) if self.terms else self.field.zero

    def __add__(self, other):
        k = self.field
        out = dict(self.terms)
        for g, c in other.terms.items():
            out[g] = k.add(out.get(g, k.zero), c)
        return GradedScalar(k, out)

    def __mul__(self, other):
        k = self.field
        out = {}
        for g, c in self.terms.items():
            for h, d in other.terms.items():
                out[g + h] = k.add(out.get(g + h, k.zero), k.mul(c, d))
        return GradedScalar(k, out)

    def inverse(self):
        if len(self.terms) != 1:
            raise ZeroDivisionError("only nonzero homogeneous scalars are invertible")
        g, c = next(iter(self.terms.items()))
        return GradedScalar(self.field, {-g: self.field.inv(c)})

    def __eq__(self, other):
        return isinstance(other, GradedScalar) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{self.field.fmt(c)}*x^{g}" for g, c in self.terms.items())


def _is_lattice(g: ValueGroupElement) -> bool:
    return g.is_integral()


class GradedQuadraticForm:
    """Homogeneous basis degrees plus an upper-triangular array of homogeneous entries.

    ``gram[i][j]`` (i <= j) is a :class:`GradedScalar`; its degree should
    be deg_i + deg_j, which :func:`validate_graded_form` checks.
    """

    def __init__(self, k: Field, degrees, gram, rank: int | None = None):
        self.field = k
        self.degrees = [d if isinstance(d, ValueGroupElement) else ValueGroupElement(d) for d in degrees]
        n = len(self.degrees)
        if rank is None:
            if not n:
                raise FormError("rank needed for the empty graded form")
            rank = self.degrees[0].rank
        self.rank = rank
        if len(gram) != n or any(len(r) != n for r in gram):
            raise FormError("Gram data must be square")
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                e = gram[i][j]
                if not isinstance(e, GradedScalar):
                    if k.is_zero(k.coerce(e)):
                        e = GradedScalar(k)
                    else:
                        raise FormError("Gram entries must be graded scalars or 0")
                if j < i and not e.is_zero:
                    raise FormError("Gram data must be upper triangular")
                row.append(e)
            rows.append(row)
        self.gram = rows

    @classmethod
    def from_coefficients(cls, k, degrees, coeffs, rank=None):
        """Entry (i, j) = coeffs[i][j] * x^(deg_i + deg_j)."""
        degrees = [d if isinstance(d, ValueGroupElement) else ValueGroupElement(d) for d in degrees]
        n = len(degrees)
        gram = [[GradedScalar(k) for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                c = k.coerce(coeffs[i][j])
                if not k.is_zero(c):
                    gram[i][j] = GradedScalar.homogeneous(k, degrees[i] + degrees[j], c)
        return cls(k, degrees, gram, rank)

    @classmethod
    def hyperbolic(cls, k, gamma: ValueGroupElement):
        """The graded hyperbolic plane on degrees (gamma, -gamma)."""
        return cls.from_coefficients(k, [gamma, -gamma], [[0, 1], [0, 0]])

    @property
    def dim(self):
        return len(self.degrees)

    def coefficients(self):
        """Coefficient matrix (entry coefficients, ignoring degrees)."""
        return [[e.coeff for e in row] for row in self.gram]

    def polar_coefficients(self):
        k = self.field
        C = self.coefficients()
        n = self.dim
        M = [[k.zero] * n for _ in range(n)]
        for i in range(n):
            M[i][i] = k.add(C[i][i], C[i][i])
            for j in range(i + 1, n):
                M[i][j] = M[j][i] = C[i][j]
        return M

    def polar_determinant(self) -> GradedScalar:
        """det of the graded polar matrix; homogeneous of degree 2 * sum(deg_i) or zero."""
        k = self.field
        d = linalg.det(k, self.polar_coefficients())
        total = ValueGroupElement.zero(self.rank)
        for g in self.degrees:
            total = total + g + g
        return GradedScalar.homogeneous(k, total, d)

    def orthogonal_sum(self, other: "GradedQuadraticForm") -> "GradedQuadraticForm":
        if other.field != self.field or other.rank != self.rank:
            raise FormError("graded forms over different graded fields")
        k = self.field
        n, m = self.dim, other.dim
        gram = [[GradedScalar(k) for _ in range(n + m)] for _ in range(n + m)]
        for i in range(n):
            for j in range(i, n):
                gram[i][j] = self.gram[i][j]
        for i in range(m):
            for j in range(i, m):
                gram[n + i][n + j] = other.gram[i][j]
        return GradedQuadraticForm(k, self.degrees + other.degrees, gram, self.rank)

    __add__ = orthogonal_sum

    def restrict(self, indices):
        k = self.field
        gram = [[self.gram[a][b] if a <= b else GradedScalar(k) for b in indices] for a in indices]
        return GradedQuadraticForm(k, [self.degrees[a] for a in indices], gram, self.rank)

    def __eq__(self, other):
        return (isinstance(other, GradedQuadraticForm) and self.field == other.field
                and self.degrees == other.degrees and self.gram == other.gram)

    def __repr__(self):
        return f"GradedQuadraticForm(degrees={self.degrees}, gram={self.gram})"

    # serialisation -------------------------------------------------------
    def to_json(self):
        k = self.field
        entries = []
        for i in range(self.dim):
            for j in range(i, self.dim):
                e = self.gram[i][j]
                for g, c in e.terms.items():
                    entries.append([i, j, [str(x) for x in g.coords], k.fmt(c)])
        return {
            "rank": self.rank,
            "degrees": [[str(x) for x in g.coords] for g in self.degrees],
            "entries": entries,
        }

    @classmethod
    def from_json(cls, k, data):
        from .literals import parse_element

        degrees = [ValueGroupElement(Fraction(x) for x in d) for d in data["degrees"]]
        n = len(degrees)
        gram = [[GradedScalar(k) for _ in range(n)] for _ in range(n)]
        for i, j, exp, coeff in data["entries"]:
            term = GradedScalar(k, {ValueGroupElement(Fraction(x) for x in exp): parse_element(coeff, k)})
            gram[i][j] = gram[i][j] + term
        return cls(k, degrees, gram, data["rank"])


@dataclass
class GradedReport:
    valid: bool
    violations: list = field(default_factory=list)


def validate_graded_form(phi: GradedQuadraticForm) -> GradedReport:
    """Check entry degrees and the forced vanishing off the lattice."""
    bad = []
    for i in range(phi.dim):
        for j in range(i, phi.dim):
            e = phi.gram[i][j]
            if e.is_zero:
                continue
            want = phi.degrees[i] + phi.degrees[j]
            if not e.is_homogeneous:
                bad.append((i, j, "inhomogeneous entry"))
            elif e.degree != want:
                bad.append((i, j, f"degree {e.degree}, expected {want}"))
            elif not _is_lattice(want):
                bad.append((i, j, f"nonzero entry in degree {want} outside the value group"))
    return GradedReport(not bad, bad)


def _require_valid(phi):
    rep = validate_graded_form(phi)
    if not rep.valid:
        raise FormError(f"invalid graded form: {rep.violations}")


def is_nonsingular_graded(phi: GradedQuadraticForm) -> bool:
    return phi.dim == 0 or not phi.polar_determinant().is_zero


def canonical_decomposition(phi: GradedQuadraticForm) -> dict:
    """Indices grouped by the class of their degree modulo the value group."""
    out: dict = {}
    for i, g in enumerate(phi.degrees):
        out.setdefault(g.coset_mod_lattice(), []).append(i)
    return out


def _is_half_lattice(coset) -> bool:
    return all(c in (0, Fraction(1, 2)) for c in coset)


def _negate_coset(coset):
    return tuple((-c) % 1 for c in coset)


@dataclass
class OrthogonalDecomposition:
    components: dict  # coset in (1/2)Z^n / Z^n -> index list
    w_indices: list
    w_witness: list  # unit vectors spanning a totally isotropic half of the W-part

    def component_form(self, phi, coset):
        return phi.restrict(self.components[coset])


def orthogonal_decomposition(phi: GradedQuadraticForm) -> OrthogonalDecomposition:
    _require_valid(phi)
    if not is_nonsingular_graded(phi):
        raise FormError("graded form is singular")
    canon = canonical_decomposition(phi)
    comps = {c: idx for c, idx in canon.items() if _is_half_lattice(c)}
    w_indices = sorted(i for c, idx in canon.items() if not _is_half_lattice(c) for i in idx)
    witness = []
    for c, idx in canon.items():
        if _is_half_lattice(c):
            continue
        partner = _negate_coset(c)
        if c < partner:
            if len(canon.get(partner, [])) != len(idx):
                raise FormError("unpaired coset in a nonsingular form")
            for i in idx:
                witness.append([1 if a == i else 0 for a in range(phi.dim)])
    return OrthogonalDecomposition(comps, w_indices, witness)


def coset_of_component(coset) -> tuple:
    """Delta = 2 Lambda modulo 2 Gamma_F, as a vector in {0,1}^n."""
    return tuple(int(2 * c) for c in coset)


def residue_forms(phi: GradedQuadraticForm, pi: dict | None = None) -> dict:
    """Map Delta -> residue form over k after shifting to degree delta/2 and dividing by pi_delta.

    ``pi`` optionally overrides the default monomial x^delta for Delta: a
    homogeneous :class:`GradedScalar` whose degree lies in Delta.
    """
    k = phi.field
    dec = orthogonal_decomposition(phi)
    pi = pi or {}
    out = {}
    for coset, idx in dec.components.items():
        delta = coset_of_component(coset)
        p = k.one
        if delta in pi:
            s = pi[delta]
            g = s.degree
            if not g.is_integral() or g.parity() != delta:
                raise FormError(f"pi for {delta} has degree {g}")
            if delta == (0,) * phi.rank and s.coeff != k.one:
                raise FormError("pi for the trivial class must be 1")
            p = s.coeff
        pinv = k.inv(p)
        C = phi.coefficients()
        gram = [[k.mul(pinv, C[a][b]) if a <= b else k.zero for b in idx] for a in idx]
        out[delta] = QuadraticForm(k, gram)
    return out


def all_cosets(rank: int):
    return list(product((0, 1), repeat=rank))


class TameWittClass:
    """Finitely supported map Delta -> Witt invariant over the residue field.

    Components carry representative forms; zero components are dropped.
    """

    def __init__(self, k: Field, rank: int, components: dict | None = None):
        self.field = k
        self.rank = rank
        self.components = {}
        for delta, (inv, rep) in (components or {}).items():
            if inv != _zero_inv(k):
                self.components[tuple(delta)] = (inv, rep)

    @classmethod
    def from_residue_forms(cls, k, rank, forms: dict):
        return cls(k, rank, {d: (finite_witt_invariant(f), f) for d, f in forms.items()})

    def invariant(self, delta):
        inv = self.components.get(tuple(delta))
        return inv[0] if inv else _zero_inv(self.field)

    def _check(self, other):
        if other.field != self.field or other.rank != self.rank:
            raise FormError("classes over different residue fields or ranks")

    def __add__(self, other):
        self._check(other)
        k = self.field
        out = dict(self.components)
        for d, (inv, rep) in other.components.items():
            if d in out:
                inv0, rep0 = out[d]
                out[d] = (add_finite_invariants(k, inv0, inv), rep0.orthogonal_sum(rep))
            else:
                out[d] = (inv, rep)
        return TameWittClass(k, self.rank, out)

    def __neg__(self):
        k = self.field
        return TameWittClass(k, self.rank, {d: (_neg_inv(k, inv), rep.negate())
                                            for d, (inv, rep) in self.components.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, n: int):
        out = TameWittClass(self.field, self.rank)
        for _ in range(n):
            out = out + self
        return out

    __rmul__ = __mul__

    @property
    def is_zero(self):
        return not self.components

    def __eq__(self, other):
        return (isinstance(other, TameWittClass) and self.field == other.field
                and self.rank == other.rank and self.key() == other.key())

    def __hash__(self):
        return hash(self.key())

    def key(self):
        return tuple(sorted((d, inv) for d, (inv, _) in self.components.items()))

    def vector(self):
        """Invariants listed over all Delta in {0,1}^n (lexicographic)."""
        return tuple(self.invariant(d) for d in all_cosets(self.rank))

    def bits(self):
        """0/1 vector for residue characteristic 2."""
        return tuple(inv[1] for inv in self.vector())

    def order(self):
        n, acc = 1, self
        while not acc.is_zero:
            acc = acc + self
            n += 1
        return n

    def to_json(self):
        return {
            "residue_field": self.field.name,
            "rank": self.rank,
            "components": {"".join(map(str, d)): list(inv) for d, (inv, _) in sorted(self.components.items())},
        }

    def __repr__(self):
        body = ", ".join(f"{d}: {inv}" for d, (inv, _) in sorted(self.components.items()))
        return f"TameWittClass({{{body}}})"


def _zero_inv(k):
    return ("arf", 0) if k.characteristic == 2 else ("disc", 0, 0)


def _neg_inv(k, inv):
    if inv[0] == "arf":
        return inv
    # -<a> has discriminant class shifted by the class of -1 in odd dimension
    e, d = inv[1], inv[2]
    if e:
        d = (d + (0 if k.is_square(k.neg(k.one)) else 1)) % 2
    return ("disc", e, d)


def graded_witt_class(phi: GradedQuadraticForm, pi: dict | None = None) -> TameWittClass:
    if phi.dim % 2:
        raise FormError("odd-dimensional graded form")
    forms = residue_forms(phi, pi)
    return TameWittClass.from_residue_forms(phi.field, phi.rank, forms)


def graded_witt_index(phi: GradedQuadraticForm) -> int:
    """dim(W)/2 plus the Witt indices of the residue forms."""
    from .quadratic_forms import witt_decompose_finite, finite_isotropic_vector, split_hyperbolic_plane

    dec = orthogonal_decomposition(phi)
    total = len(dec.w_indices) // 2
    for q in residue_forms(phi).values():
        if q.dim % 2 == 0:
            total += witt_decompose_finite(q).witt_index
        else:
            # odd residue characteristic: strip planes one at a time
            basis = [list(r) for r in linalg.identity(q.field, q.dim)]
            while True:
                w = finite_isotropic_vector(q, basis)
                if w is None:
                    break
                _, basis = split_hyperbolic_plane(q, w, basis)
                total += 1
    return total


def graded_lagrangian(phi: GradedQuadraticForm):
    """Search for a totally isotropic graded subspace of half the dimension.

    Independent of the invariants: the W-part contributes its coset
    witness; inside each component, isotropic vectors orthogonal to the
    ones already chosen are added greedily by exhaustive search over the
    residue field.  Returns a list of (coset, coefficient vector on the
    component's indices) or None.
    """
    k = phi.field
    if phi.dim % 2:
        return None
    dec = orthogonal_decomposition(phi)
    found = [("W", w) for w in dec.w_witness]
    for coset, idx in dec.components.items():
        q = residue_forms(phi)[coset_of_component(coset)]
        chosen = []
        while True:
            nxt = None
            for v in colex_vectors(k, list(k.elements()), q.dim):
                if not k.is_zero(q(v)):
                    continue
                if any(not k.is_zero(q.polar(v, c)) for c in chosen):
                    continue
                if linalg.rank(k, chosen + [v]) == len(chosen):
                    continue
                nxt = v
                break
            if nxt is None:
                break
            chosen.append(nxt)
        if 2 * len(chosen) != len(idx):
            return None
        found.extend((coset, v) for v in chosen)
    return found
