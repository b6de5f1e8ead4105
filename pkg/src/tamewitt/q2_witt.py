"""The Witt group of Q_2 and the t-adic residue pair on Q_2((t)).

Classes of W(Q_2) are compared through (dimension parity, discriminant,
Hasse invariant) after padding with hyperbolic planes to a common
dimension.  The Hasse invariant is s(<a_1..a_n>) = prod_{i<j} (a_i, a_j).
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, product

from .quadratic_forms import FormError, QuadraticForm
from .valued_fields import DYADIC, RationalFunctionField, v2

SQUARE_CLASSES = (1, -1, 2, -2, 5, -5, 10, -10)


def _odd_part_mod8(a: Fraction) -> int:
    e = v2(a)
    u = a / Fraction(2) ** e
    return (u.numerator * pow(u.denominator, -1, 8)) % 8


def square_class_q2(a) -> int:
    """Representative in {+-1, +-2, +-5, +-10} of a modulo Q_2 squares."""
    a = Fraction(a)
    if a == 0:
        raise ValueError("zero has no square class")
    unit = {1: 1, 3: -5, 5: 5, 7: -1}[_odd_part_mod8(a)]
    return unit * 2 if v2(a) % 2 else unit


def _eps(u: int) -> int:
    return ((u - 1) // 2) % 2


def _omega(u: int) -> int:
    return ((u * u - 1) // 8) % 2


def hilbert_symbol_2(a, b) -> int:
    """(a, b)_2 = (-1)^(eps(u) eps(w) + alpha omega(w) + beta omega(u)) for a = 2^alpha u, b = 2^beta w."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol of zero")
    al, be = v2(a), v2(b)
    u, w = _odd_part_mod8(a), _odd_part_mod8(b)
    e = _eps(u) * _eps(w) + al * _omega(w) + be * _omega(u)
    return -1 if e % 2 else 1


def _primitive_zero_mod(coeffs, modulus: int) -> bool:
    """Is there a zero of sum c_i x_i^2 mod ``modulus`` with some x_i odd?"""
    sq_all = {(x * x) % modulus for x in range(modulus)}
    sq_odd = {(x * x) % modulus for x in range(1, modulus, 2)}
    *rest, last = coeffs
    # -last * z^2 = sum rest; solve for z^2 when last is a unit, else brute force
    if last % 2:
        inv = pow(-last % modulus, -1, modulus)
        for xs in product(range(modulus), repeat=len(rest)):
            s = sum(c * x * x for c, x in zip(rest, xs)) * inv % modulus
            if any(x % 2 for x in xs):
                if s in sq_all:
                    return True
            elif s in sq_odd:
                return True
        return False
    for xs in product(range(modulus), repeat=len(coeffs)):
        if any(x % 2 for x in xs) and sum(c * x * x for c, x in zip(coeffs, xs)) % modulus == 0:
            return True
    return False


def hilbert_symbol_search(a, b, modulus: int = 64) -> int:
    """The Hilbert symbol from solvability of z^2 = a x^2 + b y^2 modulo 2^6.

    a, b are reduced to square-class representatives (valuation <= 1), so
    any primitive solution has a coordinate whose partial derivative has
    valuation <= 2, and a solution mod 2^5 already lifts.
    """
    ra, rb = square_class_q2(a), square_class_q2(b)
    return 1 if _primitive_zero_mod([-ra, -rb, 1], modulus) else -1


def is_isotropic_search(entries, modulus: int = 64) -> bool:
    """Isotropy of a diagonal form of dim <= 4 by the same mod 2^6 criterion."""
    reps = [square_class_q2(a) for a in entries]
    return _primitive_zero_mod(reps, modulus)


# --------------------------------------------------------------------------
# invariants
# --------------------------------------------------------------------------


def _invariants(reps):
    """(product of entries as a square class, Hasse invariant)."""
    d, s = 1, 1
    for a in reps:
        s *= hilbert_symbol_2(d, a)
        d = square_class_q2(d * a)
    return d, s


def _padded_key(reps) -> tuple:
    """(parity, d, s) after padding with hyperbolic planes to dimension = parity mod 8.

    Adding four planes leaves d and s unchanged, so this is a Witt-class
    invariant; over a local field it is complete.
    """
    n = len(reps)
    d, s = _invariants(reps)
    target = n % 2
    m = 0
    while (n + 2 * m) % 8 != target:
        m += 1
    for _ in range(m):
        for b in (1, -1):
            s *= hilbert_symbol_2(d, b)
            d = square_class_q2(d * b)
    return (n % 2, d, s)


@lru_cache(maxsize=None)
def _representatives() -> dict:
    """Smallest diagonal representative (by dimension, then entries) for every key."""
    table = {}
    for n in range(0, 5):
        for reps in combinations_with_replacement(SQUARE_CLASSES, n):
            table.setdefault(_padded_key(reps), reps)
    return table


class Q2WittClass:
    """A class of W(Q_2) stored as a short diagonal representative."""

    __slots__ = ("entries", "key")

    def __init__(self, entries=()):
        reps = tuple(square_class_q2(a) for a in entries)
        self.key = _padded_key(reps)
        self.entries = _representatives()[self.key]

    @property
    def dim_parity(self) -> int:
        return self.key[0]

    @property
    def stabilized_dim(self) -> int:
        return len(self.entries)

    @property
    def disc(self) -> int:
        """Signed discriminant (-1)^(n(n-1)/2) prod a_i of the stored representative."""
        n = len(self.entries)
        d, _ = _invariants(self.entries)
        return square_class_q2(d * (-1) ** (n * (n - 1) // 2))

    @property
    def hasse(self) -> int:
        return _invariants(self.entries)[1]

    def __add__(self, other: "Q2WittClass") -> "Q2WittClass":
        return Q2WittClass(self.entries + other.entries)

    def __neg__(self):
        return Q2WittClass(tuple(-a for a in self.entries))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, n: int):
        out = Q2WittClass()
        for _ in range(n):
            out = out + self
        return out

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Q2WittClass) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    @property
    def is_zero(self) -> bool:
        return self.key == _padded_key(())

    def order(self) -> int:
        n, acc = 1, self
        while not acc.is_zero:
            acc = acc + self
            n += 1
        return n

    def __repr__(self):
        return f"Q2WittClass(<{', '.join(map(str, self.entries))}>)"


def witt_class_q2(entries) -> Q2WittClass:
    if any(Fraction(a) == 0 for a in entries):
        raise ValueError("zero entry")
    return Q2WittClass(entries)


def witt_class_of_form(q: QuadraticForm) -> Q2WittClass:
    """Class of a (possibly non-diagonal) form over the dyadic rationals."""
    from .tame_witt import orthogonal_basis_odd

    if q.field != DYADIC:
        raise FormError("needs a form over Q2")
    return witt_class_q2([q(v) for v in orthogonal_basis_odd(q)])


def is_equal(a, b) -> bool:
    return Q2WittClass(a) == Q2WittClass(b)


def is_isotropic(entries) -> bool:
    """Isotropy of a diagonal form over Q_2 from its invariants."""
    reps = [square_class_q2(a) for a in entries]
    n = len(reps)
    if n <= 1:
        return False
    if n >= 5:
        return True
    d, s = _invariants(reps)
    if n == 2:
        return square_class_q2(-d) == 1
    if n == 3:
        return s == hilbert_symbol_2(-1, -d)
    return not (d == 1 and s == -hilbert_symbol_2(-1, -1))


# --------------------------------------------------------------------------
# Q_2((t)): the two t-adic residues
# --------------------------------------------------------------------------


class WFClass:
    """Class in W(Q_2((t))) as its pair of t-adic residue classes."""

    __slots__ = ("first", "second")

    def __init__(self, first: Q2WittClass, second: Q2WittClass):
        self.first = first
        self.second = second

    def __add__(self, other):
        return WFClass(self.first + other.first, self.second + other.second)

    def __neg__(self):
        return WFClass(-self.first, -self.second)

    def __mul__(self, n: int):
        out = WFClass(Q2WittClass(), Q2WittClass())
        for _ in range(n):
            out = out + self
        return out

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, WFClass) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def key(self):
        return (self.first.key, self.second.key)

    @property
    def is_zero(self):
        return self.first.is_zero and self.second.is_zero

    def order(self):
        n, acc = 1, self
        while not acc.is_zero:
            acc = acc + self
            n += 1
        return n

    def __repr__(self):
        return f"WFClass({self.first}, {self.second})"


def two_residue_classes_t(q: QuadraticForm) -> WFClass:
    """Residue classes of q over Q_2((t)) for the t-adic valuation.

    After diagonalising, an entry t^e u with u(0) = c contributes <c> to
    the first residue when e is even and to the second when e is odd.
    """
    from .tame_witt import orthogonal_basis_odd

    F = q.field
    if not (isinstance(F, RationalFunctionField) and F.base == DYADIC):
        raise FormError("needs a form over Q2((t))")
    first, second = [], []
    for v in orthogonal_basis_odd(q):
        a = q(v)
        e, c = F._lead(a)
        (first if e % 2 == 0 else second).append(c)
    return WFClass(Q2WittClass(first), Q2WittClass(second))


def generated_subgroup(gens) -> set:
    """All sums of the generators (closure under addition)."""
    zero = gens[0] * 0
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x + g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def invariant_factors(group) -> tuple:
    """Invariant factors of a finite abelian 2-group from the sizes of its 2^k-torsion."""
    elems = list(group)
    orders = [g.order() for g in elems]
    N = len(elems)
    if N & (N - 1):
        raise ValueError("not a 2-group")
    torsion = []
    k = 0
    while True:
        size = sum(1 for o in orders if (2 ** k) % o == 0)
        torsion.append(size)
        if size == N:
            break
        k += 1
    # number of cyclic factors of order >= 2^j is log2(|G[2^j]| / |G[2^(j-1)]|)
    counts = [(torsion[j] // torsion[j - 1]).bit_length() - 1 for j in range(1, len(torsion))]
    factors = []
    for j in range(len(counts), 0, -1):
        exact = counts[j - 1] - (counts[j] if j < len(counts) else 0)
        factors += [2 ** j] * exact
    return tuple(factors)


def paper_generators_w(F) -> dict:
    """The six named generators of W(Q_2((t)))."""
    t = F.t
    one = F.one
    D = QuadraticForm.diagonal
    return {
        "<1>": D(F, [one]),
        "<t>": D(F, [t]),
        "<1,-2>": D(F, [1, -2]),
        "<t><1,-2>": D(F, [t, F.mul(F.from_int(-2), t)]),
        "<1,-5>": D(F, [1, -5]),
        "<t><1,-5>": D(F, [t, F.mul(F.from_int(-5), t)]),
    }


def tame_generators(F) -> dict:
    t = F.t
    two_t = F.mul(F.from_int(2), t)
    D = QuadraticForm.diagonal
    base = D(F, [1, -5])
    return {
        "<1,-5>": base,
        "<2><1,-5>": base.scale(2),
        "<t><1,-5>": base.scale(t),
        "<2t><1,-5>": base.scale(two_t),
    }


def in_tame_subgroup_t(q: QuadraticForm) -> bool:
    """Membership of the class of q in the subgroup generated by the four tame generators."""
    F = q.field
    H = _tame_subgroup_keys(F)
    if q.dim % 2:
        return False
    return two_residue_classes_t(q).key() in H


@lru_cache(maxsize=None)
def _tame_subgroup_keys(F):
    gens = [two_residue_classes_t(g) for g in tame_generators(F).values()]
    return frozenset(x.key() for x in generated_subgroup(gens))
