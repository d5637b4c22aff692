"""Dense univariate polynomials over any constructed finite field.

This is the engine of the brute-force splitting oracle: complete
factorization into monic irreducibles via squarefree decomposition,
distinct-degree splitting, and seeded Cantor-Zassenhaus equal-degree
splitting.  For a fixed seed the output is identical across runs; across
seeds the factor multiset is identical (only internal random choices vary).

Coefficients are stored lowest degree first and live in the coefficient
field's element representation (ints for F_p, tuples for F_{p^m}).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    MixedModulusError,
    NotSquarefreeError,
    ZeroPolynomialError,
)
from .finite_field import PrimeField
from .seeds import derive_seed


class Poly:
    """Immutable dense polynomial over a fixed finite field."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        zero = field.zero
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == zero:
            coeffs.pop()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, name, value):  # pragma: no cover
        raise AttributeError("Poly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, field) -> "Poly":
        return cls(field, ())

    @classmethod
    def one(cls, field) -> "Poly":
        return cls(field, (field.one,))

    @classmethod
    def x(cls, field) -> "Poly":
        return cls(field, (field.zero, field.one))

    @classmethod
    def constant(cls, field, c) -> "Poly":
        return cls(field, (c,))

    # -- basic queries -----------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self):
        if not self.coeffs:
            raise ZeroPolynomialError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def sort_key(self) -> tuple:
        """(degree, coefficient encoding) for canonical ordering."""
        key = self.field.elem_key
        return (self.degree, tuple(key(c) for c in self.coeffs))

    # -- arithmetic --------------------------------------------------------

    def _same_field(self, other: "Poly"):
        if self.field != other.field:
            raise MixedModulusError("polynomials over different fields")

    def __add__(self, other: "Poly") -> "Poly":
        self._same_field(other)
        f = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = f.add(out[i], c)
        return Poly(f, out)

    def __sub__(self, other: "Poly") -> "Poly":
        self._same_field(other)
        f = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [f.zero] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] = f.sub(a[i], c)
        return Poly(f, a)

    def __neg__(self) -> "Poly":
        f = self.field
        return Poly(f, [f.neg(c) for c in self.coeffs])

    def __mul__(self, other: "Poly") -> "Poly":
        self._same_field(other)
        f = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(f)
        if isinstance(f, PrimeField):
            # fast path: bare int convolution, one reduction per coefficient
            p = f.p
            out = [0] * (len(a) + len(b) - 1)
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        out[i + j] += ai * bj
            return Poly(f, [v % p for v in out])
        out = [f.zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai != f.zero:
                for j, bj in enumerate(b):
                    out[i + j] = f.add(out[i + j], f.mul(ai, bj))
        return Poly(f, out)

    def scale(self, c) -> "Poly":
        f = self.field
        return Poly(f, [f.mul(c, x) for x in self.coeffs])

    def shift(self, n: int) -> "Poly":
        """Multiply by x^n."""
        if self.is_zero:
            return self
        return Poly(self.field, (self.field.zero,) * n + self.coeffs)

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        self._same_field(other)
        if other.is_zero:
            raise ZeroPolynomialError("division by the zero polynomial")
        f = self.field
        a = list(self.coeffs)
        b = other.coeffs
        if len(a) < len(b):
            return Poly.zero(f), self
        inv_lead = f.one if b[-1] == f.one else f.inv(b[-1])
        q = [f.zero] * (len(a) - len(b) + 1)
        for shift in range(len(a) - len(b), -1, -1):
            c = f.mul(a[shift + len(b) - 1], inv_lead)
            if c != f.zero:
                q[shift] = c
                for i, bi in enumerate(b):
                    a[shift + i] = f.sub(a[shift + i], f.mul(c, bi))
        return Poly(f, q), Poly(f, a[: len(b) - 1])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if self.is_zero or self.is_monic:
            return self
        return self.scale(self.field.inv(self.leading))

    def gcd(self, other: "Poly") -> "Poly":
        """Monic greatest common divisor."""
        self._same_field(other)
        a, b = self, other
        while not b.is_zero:
            a, b = b, a % b
        return a.monic()

    def derivative(self) -> "Poly":
        f = self.field
        p = f.char
        out = []
        for i in range(1, len(self.coeffs)):
            k = i % p
            if k == 0:
                out.append(f.zero)
            elif isinstance(f, PrimeField):
                out.append(k * self.coeffs[i] % p)
            else:
                out.append(f.mul(f.embed(k), self.coeffs[i]))
        return Poly(f, out)

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative polynomial power")
        f = self.field
        if e == 0:
            return Poly.one(f)
        # binomial fast path: (c0 + c1 x)^e coefficientwise over F_p
        if isinstance(f, PrimeField) and self.degree == 1 and e < f.p:
            p = f.p
            c0, c1 = self.coeffs
            out = [0] * (e + 1)
            binom = 1
            pow0 = pow(c0, e, p)
            inv0 = pow(c0, -1, p) if c0 else None
            if inv0 is None:
                # pure monomial plus nothing: c0 == 0
                return Poly(f, [0] * e + [pow(c1, e, p)])
            acc = pow0
            for k in range(e + 1):
                out[k] = binom * acc % p
                if k < e:  # k + 1 <= e < p stays invertible
                    binom = binom * (e - k) % p * pow(k + 1, -1, p) % p
                    acc = acc * inv0 % p * c1 % p
            return Poly(f, out)
        acc = Poly.one(f)
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def pow_mod(self, e: int, modulus: "Poly") -> "Poly":
        """self^e reduced modulo ``modulus``."""
        acc = Poly.one(self.field) % modulus
        base = self % modulus
        while e:
            if e & 1:
                acc = (acc * base) % modulus
            base = (base * base) % modulus
            e >>= 1
        return acc

    def evaluate(self, x):
        f = self.field
        if isinstance(f, PrimeField):
            p = f.p
            acc = 0
            for c in reversed(self.coeffs):
                acc = (acc * x + c) % p
            return acc
        acc = f.zero
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, x), c)
        return acc

    # -- dunder plumbing ---------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Poly)
            and other.field == self.field
            and other.coeffs == self.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __repr__(self) -> str:
        if self.is_zero:
            return "Poly(0)"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == self.field.zero:
                continue
            if i == 0:
                terms.append(f"{c}")
            elif i == 1:
                terms.append(f"{c}*x" if c != self.field.one else "x")
            else:
                terms.append(f"{c}*x^{i}" if c != self.field.one else f"x^{i}")
        return "Poly(" + " + ".join(terms) + ")"


def binomial(field, n: int, c) -> Poly:
    """x^n - c over ``field``."""
    coeffs = [field.neg(c)] + [field.zero] * (n - 1) + [field.one]
    return Poly(field, coeffs)


@dataclass(frozen=True)
class Factorization:
    """Complete factorization: unit * prod(poly^multiplicity)."""

    field: object
    unit: object
    factors: tuple[tuple[Poly, int], ...]

    def expand(self) -> Poly:
        """Re-multiply; must reproduce the input exactly."""
        acc = Poly.constant(self.field, self.unit)
        for poly, mult in self.factors:
            for _ in range(mult):
                acc = acc * poly
        return acc

    def __iter__(self):
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)


# ---------------------------------------------------------------------------
# Factorization machinery
# ---------------------------------------------------------------------------


def _pth_root_poly(f: Poly) -> Poly:
    """For f = g(x^p), recover g (taking p-th roots of coefficients)."""
    fld = f.field
    p = fld.char
    # p-th root of c in F_{p^m} is c^(p^(m-1)); in F_p it is c itself.
    root_exp = fld.order // p
    out = []
    for i in range(0, len(f.coeffs), p):
        c = f.coeffs[i]
        out.append(c if root_exp == 1 else fld.pow(c, root_exp))
    return Poly(fld, out)


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Monic squarefree parts with multiplicities (characteristic-p aware)."""
    fld = f.field
    p = fld.char
    out: list[tuple[Poly, int]] = []
    e = 1
    f = f.monic()
    while f.degree > 0:
        df = f.derivative()
        if df.is_zero:
            f = _pth_root_poly(f)
            e *= p
            continue
        g = f.gcd(df)
        w = f // g
        i = 1
        while w.degree > 0:
            y = w.gcd(g)
            z = w // y
            if z.degree > 0:
                out.append((z, i * e))
            w = y
            g = g // y
            i += 1
        f = g
    out.sort(key=lambda pair: (pair[1], pair[0].sort_key()))
    return out


def _ddf(f: Poly) -> list[tuple[Poly, int]]:
    """Distinct-degree split of a monic squarefree polynomial.

    Returns (product of irreducibles of degree d, d) pairs.
    """
    fld = f.field
    q = fld.order
    out = []
    x = Poly.x(fld)
    h = x % f
    d = 0
    while f.degree >= 2 * (d + 1):
        d += 1
        h = h.pow_mod(q, f)
        g = f.gcd(h - x)
        if g.degree > 0:
            out.append((g, d))
            f = f // g
            h = h % f
    if f.degree > 0:
        out.append((f, f.degree))
    return out


def _random_poly(fld, max_degree: int, rng: random.Random) -> Poly:
    while True:
        cand = Poly(fld, [fld.sample(rng) for _ in range(max_degree + 1)])
        if cand.degree >= 1:
            return cand


def _edf(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Equal-degree split: f is monic, all irreducible factors have degree d."""
    fld = f.field
    if f.degree == d:
        return [f]
    q = fld.order
    one = Poly.one(fld)
    while True:
        h = _random_poly(fld, f.degree - 1, rng)
        g = f.gcd(h)
        if 0 < g.degree < f.degree:
            break
        if fld.char == 2:
            # additive trace map splits in characteristic 2
            k = d * (q.bit_length() - 1)  # q = 2^k exactly
            t = h % f
            acc = t
            for _ in range(k - 1):
                t = t.pow_mod(2, f)
                acc = acc + t
            g = f.gcd(acc)
        else:
            w = h.pow_mod((q**d - 1) // 2, f)
            g = f.gcd(w - one)
        if 0 < g.degree < f.degree:
            break
    return _edf(g, d, rng) + _edf(f // g, d, rng)


def factor(f: Poly, seed: int) -> Factorization:
    """Complete factorization into monic irreducibles, canonically sorted.

    Deterministic for a fixed seed; the factor multiset does not depend on
    the seed at all.
    """
    if f.is_zero:
        raise ZeroPolynomialError("cannot factor the zero polynomial")
    unit = f.leading
    f = f.monic()
    if f.degree == 0:
        return Factorization(field=f.field, unit=unit, factors=())
    factors: list[tuple[Poly, int]] = []
    for part, mult in squarefree_decomposition(f):
        for prod, d in _ddf(part):
            rng = random.Random(derive_seed(seed, "edf", d, prod.sort_key()))
            for irred in _edf(prod, d, rng):
                factors.append((irred, mult))
    factors.sort(key=lambda pair: pair[0].sort_key())
    return Factorization(field=f.field, unit=unit, factors=tuple(factors))


def is_irreducible(f: Poly) -> bool:
    """Rabin irreducibility test over the coefficient field."""
    if f.degree <= 0:
        return False
    if f.degree == 1:
        return True
    fld = f.field
    q = fld.order
    m = f.degree
    x = Poly.x(fld)
    h = x.pow_mod(q**m, f)
    if not (h - x).is_zero:
        return False
    deg_factors = set()
    n = m
    dd = 2
    while dd * dd <= n:
        if n % dd == 0:
            deg_factors.add(dd)
            while n % dd == 0:
                n //= dd
        dd += 1
    if n > 1:
        deg_factors.add(n)
    for r in deg_factors:
        h = x.pow_mod(q ** (m // r), f)
        if f.gcd(h - x).degree != 0:
            return False
    return True


def count_irreducible_factors(f: Poly, seed: int) -> tuple[int, tuple[int, ...]]:
    """(number of irreducible factors, sorted degree multiset) of squarefree f."""
    if f.is_zero:
        raise ZeroPolynomialError("cannot factor the zero polynomial")
    df = f.derivative()
    if df.is_zero or f.gcd(df).degree > 0:
        raise NotSquarefreeError("polynomial has repeated factors")
    fac = factor(f, seed)
    degrees = tuple(sorted(p.degree for p, _ in fac.factors))
    return len(fac.factors), degrees


def roots_in_field(f: Poly) -> tuple:
    """All roots of f in its coefficient field, sorted canonically.

    Found via gcd(f, x^q - x) followed by equal-degree splitting; the root
    set is choice-free, so a fixed internal seed keeps this deterministic.
    """
    if f.is_zero:
        raise ZeroPolynomialError("cannot take roots of the zero polynomial")
    fld = f.field
    if f.degree == 0:
        return ()
    x = Poly.x(fld)
    h = x.pow_mod(fld.order, f)
    g = f.gcd(h - x)
    if g.degree == 0:
        return ()
    rng = random.Random(derive_seed(0, "roots", g.sort_key()))
    roots = []
    for lin in _edf(g, 1, rng):
        c0, c1 = lin.coeffs
        root = fld.neg(fld.mul(c0, fld.inv(c1)))
        roots.append(root)
    roots.sort(key=fld.elem_key)
    return tuple(roots)


@lru_cache(maxsize=None)
def _embedding_powers(sub, sup) -> tuple:
    """Powers 1, r, ..., r^(m-1) of the canonical image of sub's generator."""
    mod_poly = Poly(sup, [sup.embed(c) for c in sub.modulus])
    roots = roots_in_field(mod_poly)
    assert roots, "subfield modulus must split in the larger field"
    r = roots[0]
    powers = [sup.one]
    for _ in range(sub.degree - 1):
        powers.append(sup.mul(powers[-1], r))
    return tuple(powers)


def field_embedding(sub, sup):
    """Canonical embedding F_{p^m} -> F_{p^n} for m | n, as a callable.

    The image of the subfield generator is the canonical (smallest-key) root
    of the subfield modulus in the larger field.
    """
    if isinstance(sub, PrimeField):
        if isinstance(sup, PrimeField):
            if sub.p != sup.p:
                raise MixedModulusError("different characteristics")
            return lambda c: c % sub.p
        if sub.p != sup.p:
            raise MixedModulusError("different characteristics")
        return sup.embed
    if isinstance(sup, PrimeField) or sub.p != sup.p:
        raise MixedModulusError("no embedding between these fields")
    if sup.degree % sub.degree != 0:
        raise MixedModulusError(
            f"degree {sub.degree} does not divide {sup.degree}"
        )
    if sub == sup:
        return lambda a: a
    powers = _embedding_powers(sub, sup)

    def embed(a):
        acc = sup.zero
        for c, rp in zip(a, powers):
            if c:
                acc = sup.add(acc, sup.mul(sup.embed(c), rp))
        return acc

    return embed
