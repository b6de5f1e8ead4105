"""Exact valued-field backends.

Every backend is a *field object* whose methods act on plain hashable
payloads (ints, tuples, fractions).  The backends are

* :class:`PrimeField` and :class:`FiniteExtension`: finite fields, trivially
  valued (rank 0);
* :class:`DyadicRationals`: Q with the 2-adic valuation, residue F_2;
* :class:`RationalFunctionField`: k(t) with the t-adic valuation composed
  with the valuation of k.  Over a finite field it models k((t)); over the
  dyadic rationals it models Q_2((t)) with value group Z^2 ordered
  (t-adic, 2-adic);
* :class:`InertialExtension`: F[X]/(m) for a monic m whose reduction is
  irreducible over the residue field.

Henselian operations (:func:`hensel_quadratic_root`) are answered by
truncated Newton iteration with an explicit valuation certificate.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product

from . import polys
from .valuegroup import INF, ValueGroupElement, vmin


class FieldError(ValueError):
    pass


class Field:
    """Interface shared by the backends.  Subclasses fill in arithmetic."""

    name = "field"
    characteristic = 0
    rank = 0
    is_finite = False
    henselian = False

    # identity ----------------------------------------------------------
    def key(self):
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Field) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return self.name

    # derived arithmetic -----------------------------------------------
    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return a == self.zero

    def eq(self, a, b):
        return a == b

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        result, base = self.one, a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def sum(self, items):
        acc = self.zero
        for x in items:
            acc = self.add(acc, x)
        return acc

    def coerce(self, x):
        """Convert ints and Fractions; anything else is taken as a payload."""
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, Fraction):
            return self.div(self.from_int(x.numerator), self.from_int(x.denominator))
        return x

    # valuation defaults (trivial valuation) ------------------------------
    def valuation(self, a) -> ValueGroupElement:
        return INF if self.is_zero(a) else ValueGroupElement(())

    @property
    def residue_field(self):
        return self

    def residue(self, a):
        return a

    def leading_residue(self, a):
        if self.is_zero(a):
            raise FieldError("leading residue of zero")
        return a

    def pi(self, gamma: ValueGroupElement):
        if gamma.coords:
            raise FieldError(f"{gamma} not in the value group of {self}")
        return self.one

    def lift_residue(self, r):
        return r

    def residue_component(self, x, gamma: ValueGroupElement):
        """Image of ``x`` in F_gamma = F^{>=gamma}/F^{>gamma}, as a residue scalar.

        F_gamma is identified with the residue field through the monomial
        ``pi(gamma)`` when gamma lies in the value group, and is zero
        otherwise.
        """
        v = self.valuation(x)
        if v < gamma:
            raise FieldError(f"valuation {v} below {gamma}")
        if v > gamma:
            return self.residue_field.zero
        return self.leading_residue(x)

    # misc ---------------------------------------------------------------
    @property
    def symbols(self) -> dict:
        return {}

    def fmt(self, a) -> str:
        return str(a)


# --------------------------------------------------------------------------
# finite fields
# --------------------------------------------------------------------------


class FiniteField(Field):
    is_finite = True

    @property
    def size(self) -> int:
        return self.prime ** self.degree

    def trace(self, a) -> int:
        """Absolute trace to the prime field, returned as an int mod p."""
        acc = self.zero
        x = a
        for _ in range(self.degree):
            acc = self.add(acc, x)
            x = self.pow(x, self.prime)
        return self.to_prime(acc)

    def sqrt(self, a):
        """Square root; in characteristic 2 every element has exactly one."""
        if self.characteristic == 2:
            return self.pow(a, self.size // 2)
        for x in self.elements():
            if self.mul(x, x) == a:
                return x
        raise FieldError(f"{self.fmt(a)} is not a square in {self}")

    def is_square(self, a) -> bool:
        if self.is_zero(a) or self.characteristic == 2:
            return True
        return self.pow(a, (self.size - 1) // 2) == self.one

    def nonsquare(self):
        for x in self.elements():
            if not self.is_square(x):
                return x
        raise FieldError("no nonsquares in characteristic 2")

    def artin_schreier_root(self, c):
        """A root of X^2 + X + c, or None."""
        for x in self.elements():
            if self.add(self.add(self.mul(x, x), x), c) == self.zero:
                return x
        return None

    def nonzero_elements(self):
        for x in self.elements():
            if not self.is_zero(x):
                yield x


class PrimeField(FiniteField):
    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise FieldError(f"{p} is not prime")
        self.prime = p
        self.degree = 1
        self.characteristic = p
        self.name = f"F{p}"
        self.zero = 0
        self.one = 1

    def key(self):
        return ("GF", self.prime)

    def from_int(self, n):
        return n % self.prime

    def add(self, a, b):
        return (a + b) % self.prime

    def neg(self, a):
        return (-a) % self.prime

    def sub(self, a, b):
        return (a - b) % self.prime

    def mul(self, a, b):
        return (a * b) % self.prime

    def inv(self, a):
        if a % self.prime == 0:
            raise ZeroDivisionError(f"inverse of 0 in {self}")
        return pow(a, -1, self.prime)

    def to_prime(self, a):
        return a

    def elements(self):
        return iter(range(self.prime))

    def fmt(self, a):
        return str(a)


class _QuotientArith:
    """Arithmetic in base[X]/(m), m monic of degree d; payloads are d-tuples."""

    def _setup(self, base, minpoly):
        minpoly = polys.trim(base, minpoly)
        if len(minpoly) < 2 or minpoly[-1] != base.one:
            raise FieldError("minimal polynomial must be monic of degree >= 1")
        self.base = base
        self.minpoly = tuple(minpoly)
        self.degree_over_base = len(minpoly) - 1
        d = self.degree_over_base
        self.zero = (base.zero,) * d
        self.one = (base.one,) + (base.zero,) * (d - 1)
        self.gen = ((base.zero, base.one) + (base.zero,) * (d - 2)) if d > 1 else (
            base.neg(minpoly[0]),)
        self.characteristic = base.characteristic

    def _pad(self, p):
        p = tuple(p)
        return p + (self.base.zero,) * (self.degree_over_base - len(p))

    def embed(self, a):
        return self._pad((a,))

    def from_int(self, n):
        return self.embed(self.base.from_int(n))

    def add(self, a, b):
        B = self.base
        return tuple(B.add(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def sub(self, a, b):
        B = self.base
        return tuple(B.sub(x, y) for x, y in zip(a, b))

    def mul(self, a, b):
        B = self.base
        prod_ = polys.mul(B, polys.trim(B, a), polys.trim(B, b))
        rem = polys.divmod_(B, prod_, self.minpoly)[1] if len(prod_) > self.degree_over_base else prod_
        return self._pad(rem)

    def inv(self, a):
        B = self.base
        p = polys.trim(B, a)
        if not p:
            raise ZeroDivisionError(f"inverse of 0 in {self}")
        g, s, _ = polys.ext_gcd(B, p, self.minpoly)
        if len(g) != 1:
            raise FieldError(f"{self.minpoly} is reducible; element not invertible")
        return self._pad(polys.divmod_(B, s, self.minpoly)[1])

    def components(self, a):
        return tuple(a)

    def _fmt_poly(self, a, var):
        terms = []
        for i, c in enumerate(a):
            if self.base.is_zero(c):
                continue
            cs = self.base.fmt(c)
            if i == 0:
                terms.append(cs)
                continue
            mono = var if i == 1 else f"{var}^{i}"
            if c == self.base.one:
                terms.append(mono)
            else:
                terms.append(f"({cs})*{mono}")
        return " + ".join(terms) if terms else "0"


class FiniteExtension(_QuotientArith, FiniteField):
    """A finite field built as an extension of another finite field."""

    def __init__(self, base: FiniteField, minpoly, gen_name: str = "z"):
        self._setup(base, minpoly)
        if not _is_irreducible(base, self.minpoly):
            raise FieldError(f"{minpoly} is reducible over {base}")
        self.prime = base.prime
        self.degree = base.degree * self.degree_over_base
        self.gen_name = gen_name
        self.name = f"F{self.size}"

    def key(self):
        return ("ext", self.base.key(), self.minpoly)

    def to_prime(self, a):
        if any(not self.base.is_zero(c) for c in a[1:]):
            raise FieldError("element is not in the prime field")
        return self.base.to_prime(a[0])

    def elements(self):
        for coeffs in product(list(self.base.elements()), repeat=self.degree_over_base):
            yield tuple(coeffs)

    @property
    def symbols(self):
        out = dict(self.base.symbols)
        out = {k: self.embed(v) for k, v in out.items()}
        out[self.gen_name] = self.gen
        return out

    def fmt(self, a):
        return self._fmt_poly(a, self.gen_name)


def _is_irreducible(base: FiniteField, m) -> bool:
    d = len(m) - 1
    if d <= 1:
        return True
    elems = list(base.elements())
    for k in range(1, d // 2 + 1):
        for coeffs in product(elems, repeat=k):
            cand = tuple(coeffs) + (base.one,)
            if not polys.divmod_(base, m, cand)[1]:
                return False
    return True


@lru_cache(maxsize=None)
def finite_field(q: int, gen_name: str | None = None) -> FiniteField:
    """F_q with a deterministic defining polynomial (least irreducible)."""
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise FieldError(f"{q} is not a prime power")
    base = PrimeField(p)
    if k == 1:
        return base
    elems = list(base.elements())
    for coeffs in product(elems, repeat=k):
        m = tuple(coeffs) + (base.one,)
        if _is_irreducible(base, m):
            return FiniteExtension(base, m, gen_name or ("w" if q == 4 else "z"))
    raise FieldError("no irreducible polynomial found")


# --------------------------------------------------------------------------
# dyadic rationals
# --------------------------------------------------------------------------


def v2_int(n: int) -> int:
    if n == 0:
        raise ValueError("v2(0)")
    n = abs(n)
    return (n & -n).bit_length() - 1


def v2(x) -> int | None:
    x = Fraction(x)
    if x == 0:
        return None
    return v2_int(x.numerator) - v2_int(x.denominator)


class DyadicRationals(Field):
    """Q with the 2-adic valuation; a stand-in for Q_2."""

    name = "Q2"
    characteristic = 0
    rank = 1
    henselian = True

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def key(self):
        return ("Q2",)

    def from_int(self, n):
        return Fraction(n)

    def coerce(self, x):
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in Q2")
        return 1 / a

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by 0 in Q2")
        return a / b

    def valuation(self, a):
        if a == 0:
            return INF
        return ValueGroupElement((v2(a),))

    @property
    def residue_field(self):
        return finite_field(2)

    def residue(self, a):
        if a == 0:
            return 0
        if v2(a) < 0:
            raise FieldError(f"{a} is not integral")
        return 1 if v2(a) == 0 else 0

    def leading_residue(self, a):
        if a == 0:
            raise FieldError("leading residue of zero")
        return 1

    def pi(self, gamma):
        (k,) = gamma.coords
        if k.denominator != 1:
            raise FieldError(f"{gamma} not in the value group")
        return Fraction(2) ** int(k)

    def lift_residue(self, r):
        return Fraction(r)

    def truncate(self, x, prec: ValueGroupElement):
        """A rational r with v(x - r) >= prec and small height."""
        if x == 0 or self.valuation(x) >= prec:
            return self.zero
        (n,) = prec.coords
        n = -((-n.numerator) // n.denominator)  # ceiling
        e = v2_int(x.denominator)
        odd = x.denominator >> e
        if n + e <= 0:
            return self.zero
        mod = 1 << (n + e)
        r = (x.numerator * pow(odd, -1, mod)) % mod
        if r > mod // 2:
            r -= mod
        return Fraction(r, 1 << e)

    def fmt(self, a):
        return str(a)


DYADIC = DyadicRationals()


# --------------------------------------------------------------------------
# rational function fields k(t) with the (composite) t-adic valuation
# --------------------------------------------------------------------------


class RationalFunctionField(Field):
    """k(t) standing in for k((t)).

    Payloads are ``(num, den)`` with coprime polynomial tuples and ``den``
    monic.  The valuation of ``t^e * u`` (u a t-adic unit) is
    ``(e,) + v_k(u(0))``, i.e. t-adic first, then the valuation of k.
    """

    henselian = True

    def __init__(self, base: Field, var: str = "t"):
        self.base = base
        self.var = var
        self.characteristic = base.characteristic
        self.rank = 1 + base.rank
        self.name = f"{base.name}(({var}))"
        self.zero = ((), (base.one,))
        self.one = ((base.one,), (base.one,))

    def key(self):
        return ("rff", self.base.key(), self.var)

    # construction ---------------------------------------------------------
    def _make(self, num, den):
        B = self.base
        num, den = polys.trim(B, num), polys.trim(B, den)
        if not den:
            raise ZeroDivisionError(f"division by zero in {self}")
        if not num:
            return self.zero
        g = polys.gcd(B, num, den)
        if len(g) > 1:
            num = polys.divmod_(B, num, g)[0]
            den = polys.divmod_(B, den, g)[0]
        c = B.inv(den[-1])
        return polys.scale(B, c, num), polys.scale(B, c, den)

    def from_base(self, c):
        c = self.base.coerce(c)
        return self._make((c,), (self.base.one,))

    def from_int(self, n):
        return self.from_base(self.base.from_int(n))

    def coerce(self, x):
        if isinstance(x, tuple):
            return x
        return self.from_base(self.base.coerce(x))

    def monomial(self, c, e: int):
        c = self.base.coerce(c)
        if e >= 0:
            return self._make((self.base.zero,) * e + (c,), (self.base.one,))
        return self._make((c,), (self.base.zero,) * (-e) + (self.base.one,))

    def from_laurent(self, terms: dict):
        if not terms:
            return self.zero
        lo = min(terms)
        shift = -lo if lo < 0 else 0
        num = [self.base.zero] * (max(terms) + shift + 1)
        for e, c in terms.items():
            num[e + shift] = self.base.coerce(c)
        den = (self.base.zero,) * shift + (self.base.one,)
        return self._make(num, den)

    @property
    def t(self):
        return self.monomial(self.base.one, 1)

    # arithmetic -----------------------------------------------------------
    def add(self, a, b):
        B = self.base
        if a == self.zero:
            return b
        if b == self.zero:
            return a
        if a[1] == b[1]:
            return self._make(polys.add(B, a[0], b[0]), a[1])
        return self._make(
            polys.add(B, polys.mul(B, a[0], b[1]), polys.mul(B, b[0], a[1])),
            polys.mul(B, a[1], b[1]),
        )

    def neg(self, a):
        return (polys.neg(self.base, a[0]), a[1])

    def mul(self, a, b):
        B = self.base
        if a == self.zero or b == self.zero:
            return self.zero
        return self._make(polys.mul(B, a[0], b[0]), polys.mul(B, a[1], b[1]))

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError(f"inverse of 0 in {self}")
        return self._make(a[1], a[0])

    # valuation --------------------------------------------------------------
    def _lead(self, a):
        B = self.base
        i = polys.order(B, a[0])
        j = polys.order(B, a[1])
        return i - j, B.div(a[0][i], a[1][j])

    def t_order(self, a):
        return self._lead(a)[0]

    def valuation(self, a):
        if a == self.zero:
            return INF
        e, c = self._lead(a)
        return ValueGroupElement((e,) + self.base.valuation(c).coords)

    @property
    def residue_field(self):
        return self.base.residue_field

    def residue(self, a):
        if a == self.zero:
            return self.residue_field.zero
        e, c = self._lead(a)
        if e < 0:
            raise FieldError(f"{self.fmt(a)} is not integral")
        if e > 0:
            return self.residue_field.zero
        return self.base.residue(c)

    def leading_residue(self, a):
        if a == self.zero:
            raise FieldError("leading residue of zero")
        return self.base.leading_residue(self._lead(a)[1])

    def pi(self, gamma):
        e = gamma.coords[0]
        if e.denominator != 1:
            raise FieldError(f"{gamma} not in the value group")
        rest = ValueGroupElement(gamma.coords[1:])
        return self.monomial(self.base.pi(rest), int(e))

    def lift_residue(self, r):
        return self.from_base(self.base.lift_residue(r))

    # series -----------------------------------------------------------------
    def series(self, a, max_exp: int) -> dict:
        """Laurent expansion {exponent: coefficient} for exponents <= max_exp."""
        if a == self.zero:
            return {}
        B = self.base
        num, den = a
        i, j = polys.order(B, num), polys.order(B, den)
        num, den = num[i:], den[j:]
        e = i - j
        n = max_exp - e + 1
        if n <= 0:
            return {}
        inv0 = B.inv(den[0])
        rem = list(num[:n]) + [B.zero] * max(0, n - len(num))
        out = {}
        for k in range(n):
            c = B.mul(rem[k], inv0)
            if not B.is_zero(c):
                out[k + e] = c
                for m in range(1, min(len(den), n - k)):
                    rem[k + m] = B.sub(rem[k + m], B.mul(c, den[m]))
        return out

    def truncate(self, x, prec: ValueGroupElement):
        """Laurent polynomial r with v(x - r) >= prec.

        Coefficients below the t-exponent of ``prec`` are kept exactly;
        the coefficient at that exponent is truncated in the base field
        when the base supports it.
        """
        if x == self.zero:
            return x
        n = prec.coords[0]
        top = int(n) if n.denominator == 1 else int(n) + 1
        terms = self.series(x, top)
        if top in terms and hasattr(self.base, "truncate") and n.denominator == 1:
            t = self.base.truncate(terms[top], ValueGroupElement(prec.coords[1:]))
            if self.base.is_zero(t):
                del terms[top]
            else:
                terms[top] = t
        elif top in terms and n.denominator == 1 and self.base.rank == 0:
            del terms[top]
        return self.from_laurent(terms)

    # io -------------------------------------------------------------------
    @property
    def symbols(self):
        out = {k: self.from_base(v) for k, v in self.base.symbols.items()}
        out[self.var] = self.t
        return out

    def _fmt_poly(self, p):
        B = self.base
        terms = []
        for i, c in enumerate(p):
            if B.is_zero(c):
                continue
            mono = "" if i == 0 else (self.var if i == 1 else f"{self.var}^{i}")
            cs = B.fmt(c)
            if not mono:
                terms.append(f"({cs})" if _needs_parens(cs) else cs)
            elif c == B.one:
                terms.append(mono)
            else:
                terms.append(f"({cs})*{mono}")
        return " + ".join(terms) if terms else "0"

    def fmt(self, a):
        num, den = a
        if den == (self.base.one,):
            return self._fmt_poly(num)
        return f"({self._fmt_poly(num)})/({self._fmt_poly(den)})"


def _needs_parens(s: str) -> bool:
    return any(ch in s for ch in "+/ ") or s.startswith("-")


# --------------------------------------------------------------------------
# inertial extensions of valued fields
# --------------------------------------------------------------------------


class InertialExtension(_QuotientArith, Field):
    """K = F[X]/(m) with m monic over the valuation ring and m-bar irreducible.

    The unique extension of v is v(sum x_i X^i) = min v(x_i); the value
    group is unchanged and the residue field is F-bar[X]/(m-bar).
    """

    def __init__(self, base: Field, minpoly, gen_name: str = "mu"):
        self._setup(base, minpoly)
        R = base.residue_field
        reduced = []
        for c in self.minpoly:
            if base.valuation(c) < ValueGroupElement.zero(base.rank):
                raise FieldError("minimal polynomial is not integral")
            reduced.append(base.residue(c))
        self._residue = (
            FiniteExtension(R, tuple(reduced), gen_name + "bar")
            if R.is_finite
            else InertialExtension(R, tuple(reduced), gen_name + "bar")
        ) if self.degree_over_base > 1 else R
        self.rank = base.rank
        self.henselian = base.henselian
        self.gen_name = gen_name
        self.name = f"{base.name}[{gen_name}]"

    def key(self):
        return ("inert", self.base.key(), self.minpoly)

    def valuation(self, a):
        return vmin(self.base.valuation(c) for c in a)

    @property
    def residue_field(self):
        return self._residue

    def residue(self, a):
        return tuple(self.base.residue(c) for c in a) if self.degree_over_base > 1 else self.base.residue(a[0])

    def leading_residue(self, a):
        gamma = self.valuation(a)
        if gamma.is_infinite:
            raise FieldError("leading residue of zero")
        p = self.base.inv(self.base.pi(gamma))
        return self.residue(tuple(self.base.mul(c, p) for c in a))

    def pi(self, gamma):
        return self.embed(self.base.pi(gamma))

    def lift_residue(self, r):
        if self.degree_over_base == 1:
            return self.embed(self.base.lift_residue(r))
        return tuple(self.base.lift_residue(c) for c in r)

    @property
    def symbols(self):
        out = {k: self.embed(v) for k, v in self.base.symbols.items()}
        out[self.gen_name] = self.gen
        return out

    def fmt(self, a):
        return self._fmt_poly(a, self.gen_name)


def make_inertial_extension(F: Field, u=None, degree: int | None = None, gen_name: str = "mu"):
    """Inertial extension of F.

    With ``u``: K = F(mu), mu^2 + mu + u = 0, requiring X^2 + X + u-bar
    irreducible over the residue field.  With an odd ``degree``: adjoin a
    root of the least irreducible residue polynomial of that degree, lifted
    with prime-field coefficients.  Returns the extension; ``K.embed`` is the
    embedding of F.
    """
    R = F.residue_field
    if u is not None:
        u = F.coerce(u)
        if F.valuation(u) < ValueGroupElement.zero(F.rank):
            raise FieldError("u must be integral")
        ub = F.residue(u)
        if R.is_finite and R.artin_schreier_root(ub) is not None and R.characteristic == 2:
            raise FieldError("X^2 + X + u is reducible over the residue field")
        if R.is_finite and R.characteristic != 2:
            # X^2 + X + u splits iff 1 - 4u is a square
            disc = R.sub(R.one, R.mul(R.from_int(4), ub))
            if R.is_square(disc):
                raise FieldError("X^2 + X + u is reducible over the residue field")
        return InertialExtension(F, (u, F.one, F.one), gen_name)
    if degree is None:
        raise FieldError("give u or degree")
    if degree == 1:
        return InertialExtension(F, (F.zero, F.one), gen_name)
    if degree % 2 == 0:
        raise FieldError("the odd-degree constructor needs odd degree")
    if not R.is_finite:
        raise FieldError("odd-degree construction needs a finite residue field")
    for coeffs in product(range(R.prime), repeat=degree):
        m_res = tuple(R.from_int(c) for c in coeffs) + (R.one,)
        if _is_irreducible(R, m_res):
            m = tuple(F.from_int(c) for c in coeffs) + (F.one,)
            return InertialExtension(F, m, gen_name)
    raise FieldError("no irreducible residue polynomial found")


# --------------------------------------------------------------------------
# named fields
# --------------------------------------------------------------------------


def laurent(base: Field, var: str = "t") -> RationalFunctionField:
    return _laurent_cached(base, var)


@lru_cache(maxsize=None)
def _laurent_cached(base, var):
    return RationalFunctionField(base, var)


def field_by_name(name: str) -> Field:
    """Parse names such as ``F2``, ``F4``, ``Q2``, ``F2((t))``, ``Q2((t))``,
    ``F2((s))((t))``."""
    import re

    s = name.replace(" ", "")
    m = re.fullmatch(r"(F\d+|Q2)((?:\(\([a-z]\)\))*)", s)
    if not m:
        raise FieldError(f"unknown field {name!r}")
    head, tail = m.groups()
    F: Field = DYADIC if head == "Q2" else finite_field(int(head[1:]))
    for var in re.findall(r"\(\(([a-z])\)\)", tail):
        F = laurent(F, var)
    return F


# --------------------------------------------------------------------------
# Hensel lifting for X^2 + X + c
# --------------------------------------------------------------------------


class HenselError(FieldError):
    pass


def hensel_quadratic_root(F: Field, c, N: ValueGroupElement, max_steps: int = 64):
    """Approximate root l of l^2 + l + c with v(l^2 + l + c) >= N.

    Requires v(c) > 0.  The returned root has v(l) = v(c).  Newton steps
    l <- l - P(l)/(2l + 1) are followed by truncation; in characteristic 2
    the step is l <- l + P(l), doubling v(P(l)).
    """
    c = F.coerce(c)
    zero = ValueGroupElement.zero(F.rank)
    if F.rank == 0 or not F.henselian:
        raise HenselError(f"{F} is not a Henselian backend")
    if not F.valuation(c) > zero:
        raise HenselError("need v(c) > 0")
    if F.is_zero(c):
        return F.zero

    def P(l):
        return F.add(F.add(F.mul(l, l), l), c)

    lam = F.zero
    for _ in range(max_steps):
        r = P(lam)
        if F.valuation(r) >= N:
            return lam
        if F.characteristic == 2:
            lam = F.add(lam, r)
        else:
            lam = F.sub(lam, F.div(r, F.add(F.add(lam, lam), F.one)))
        if hasattr(F, "truncate") and not N.is_infinite:
            # keeps payloads small; the margin keeps the truncation error above N
            lam = F.truncate(lam, _margin(N))
    r = P(lam)
    if F.valuation(r) >= N:
        return lam
    raise HenselError(f"precision {N} not reached in {max_steps} steps")


def _margin(N: ValueGroupElement) -> ValueGroupElement:
    coords = list(N.coords)
    coords[-1] += 2
    return ValueGroupElement(coords)
