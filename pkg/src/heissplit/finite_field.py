"""Exact arithmetic in F_p and in explicitly constructed extensions F_{p^m}.

Representation conventions, used throughout the package:

* elements of F_p are plain ints in ``[0, p)``; the :class:`PrimeField`
  object carries the modulus and the operations;
* elements of F_{p^m} are tuples of ``m`` ints, the coefficients of the
  residue class modulo a fixed monic irreducible polynomial, lowest degree
  first.

Field objects are immutable after construction and all operations are pure,
so everything here is safe to use concurrently.  Extension moduli are chosen
deterministically (lexicographically smallest monic irreducible, reading
coefficients from the constant term upward as base-p digits), which makes
residue fields bit-reproducible across runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    DivisibilityError,
    NotPrimeError,
    ZeroArgumentError,
)

# Deterministic Miller-Rabin witness set, exact for n < 3.3e24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Contract bound: primes are machine-word scale by design.
MAX_PRIME = 1 << 31


def is_prime(n: int) -> bool:
    """Deterministic primality test for machine-word-scale integers."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n == q:
            return True
        if n % q == 0:
            return False
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for w in _MR_WITNESSES:
        x = pow(w, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n by trial division (desk-scale n)."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def primitive_root(p: int) -> int:
    """Smallest generator of (Z/p)^x; returns 1 for p = 2 (trivial group)."""
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    if p == 2:
        return 1
    qs = _prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
    raise AssertionError("unreachable: every prime has a primitive root")


class PrimeField:
    """F_p acting on plain int representatives in [0, p)."""

    __slots__ = ("p",)

    degree = 1
    zero = 0
    one = 1

    def __init__(self, p: int):
        if not is_prime(p):
            raise NotPrimeError(f"{p} is not prime")
        self.p = p

    @property
    def char(self) -> int:
        return self.p

    @property
    def order(self) -> int:
        return self.p

    def embed(self, c: int) -> int:
        return c % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroArgumentError("inverse of zero")
        return pow(a, -1, self.p)

    def pow(self, a: int, e: int) -> int:
        return pow(a, e, self.p)

    def elem_key(self, a: int) -> int:
        """Canonical integer encoding, used for deterministic ordering."""
        return a

    def sample(self, rng) -> int:
        return rng.randrange(self.p)

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


# ---------------------------------------------------------------------------
# Minimal dense-polynomial helpers over F_p (coefficient lists, ascending).
# Only what the modulus search and extension inverses need; the full Poly
# type lives in heissplit.polynomial and builds on the fields defined here.
# ---------------------------------------------------------------------------


def _pnorm(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _pnorm([v % p for v in out])


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    a = a[:]
    inv_lead = pow(m[-1], -1, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        if c:
            shift = len(a) - len(m)
            for i, mi in enumerate(m):
                a[shift + i] = (a[shift + i] - c * mi) % p
        a.pop()
    return _pnorm(a)


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    while b:
        a, b = b, _pmod(a, b, p)
    if a:
        inv_lead = pow(a[-1], -1, p)
        a = [c * inv_lead % p for c in a]
    return a


def _x_qpow_mod(m: list[int], p: int, reps: int) -> list[int]:
    """x^(p^reps) modulo the monic polynomial m, over F_p."""
    h = [0, 1]
    h = _pmod(h, m, p)
    for _ in range(reps):
        acc = [1]
        base = h
        e = p
        while e:
            if e & 1:
                acc = _pmod(_pmul(acc, base, p), m, p)
            base = _pmod(_pmul(base, base, p), m, p)
            e >>= 1
        h = acc
    return h


def _is_irreducible_mod_p(m: list[int], p: int) -> bool:
    """Rabin test for a monic polynomial over F_p (coefficient list)."""
    deg = len(m) - 1
    if deg <= 0:
        return False
    if deg == 1:
        return True
    # x^(p^deg) == x mod m
    h = _x_qpow_mod(m, p, deg)
    if _pnorm([(hi - xi) % p for hi, xi in _zip_pad(h, [0, 1])]):
        return False
    # gcd(x^(p^(deg/r)) - x, m) == 1 for every prime r | deg
    for r in _prime_factors(deg):
        h = _x_qpow_mod(m, p, deg // r)
        diff = _pnorm([(hi - xi) % p for hi, xi in _zip_pad(h, [0, 1])])
        g = _pgcd(m[:], diff, p)
        if len(g) - 1 != 0:
            return False
    return True


def _zip_pad(a: list[int], b: list[int]):
    n = max(len(a), len(b))
    for i in range(n):
        yield (a[i] if i < len(a) else 0, b[i] if i < len(b) else 0)


class ExtField:
    """F_{p^m} as F_p[x]/(modulus); elements are m-tuples of ints.

    The modulus is monic of degree m and irreducible over F_p.  The power map
    x -> x^p is the Frobenius automorphism, of order exactly m.
    """

    __slots__ = ("p", "degree", "modulus", "order", "zero", "one", "_tail")

    def __init__(self, p: int, modulus: tuple[int, ...]):
        if not is_prime(p):
            raise NotPrimeError(f"{p} is not prime")
        m = len(modulus) - 1
        if m < 2 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree >= 2")
        if not _is_irreducible_mod_p(list(modulus), p):
            raise ValueError("modulus is reducible")
        self.p = p
        self.degree = m
        self.modulus = modulus
        self.order = p**m
        self.zero = (0,) * m
        self.one = (1,) + (0,) * (m - 1)
        # x^m = sum(tail[i] * x^i): negated lower part of the modulus
        self._tail = tuple(-modulus[i] % p for i in range(m))

    @property
    def char(self) -> int:
        return self.p

    def embed(self, c: int) -> tuple[int, ...]:
        return (c % self.p,) + (0,) * (self.degree - 1)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a, b):
        p = self.p
        m = self.degree
        acc = [0] * (2 * m - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    acc[i + j] += ai * bj
        tail = self._tail
        for k in range(2 * m - 2, m - 1, -1):
            c = acc[k] % p
            if c:
                base = k - m
                for i, ti in enumerate(tail):
                    acc[base + i] += c * ti
        return tuple(v % p for v in acc[:m])

    def inv(self, a):
        if all(c == 0 for c in a):
            raise ZeroArgumentError("inverse of zero")
        p = self.p
        # extended Euclid in F_p[x] against the modulus
        r0, r1 = list(self.modulus), _pnorm(list(a))
        s0, s1 = [], [1]
        while r1:
            q, rem = _pdivmod(r0, r1, p)
            r0, r1 = r1, rem
            s0, s1 = s1, _pnorm(
                [(x - y) % p for x, y in _zip_pad(s0, _pmul(q, s1, p))]
            )
        # r0 is a nonzero constant gcd
        c = pow(r0[0], -1, p)
        out = [x * c % p for x in s0]
        out += [0] * (self.degree - len(out))
        return tuple(out[: self.degree])

    def pow(self, a, e: int):
        acc = self.one
        base = a
        while e:
            if e & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            e >>= 1
        return acc

    def frobenius(self, a):
        return self.pow(a, self.p)

    def elem_key(self, a) -> int:
        """Canonical integer encoding (base-p digits, constant term least)."""
        k = 0
        for c in reversed(a):
            k = k * self.p + c
        return k

    def sample(self, rng) -> tuple[int, ...]:
        p = self.p
        return tuple(rng.randrange(p) for _ in range(self.degree))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ExtField)
            and other.p == self.p
            and other.modulus == self.modulus
        )

    def __hash__(self) -> int:
        return hash(("ExtField", self.p, self.modulus))

    def __repr__(self) -> str:
        return f"ExtField(p={self.p}, degree={self.degree})"


def _pdivmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    q = [0] * max(len(a) - len(b) + 1, 0)
    r = a[:]
    inv_lead = pow(b[-1], -1, p)
    while len(r) >= len(b) and r:
        c = r[-1] * inv_lead % p
        shift = len(r) - len(b)
        q[shift] = c
        if c:
            for i, bi in enumerate(b):
                r[shift + i] = (r[shift + i] - c * bi) % p
        r.pop()
        _pnorm(r)
    return _pnorm(q), r


@lru_cache(maxsize=None)
def prime_field(p: int) -> PrimeField:
    return PrimeField(p)


@lru_cache(maxsize=None)
def build_extension(p: int, m: int) -> PrimeField | ExtField:
    """Deterministic field of size p^m; for m = 1 this is F_p itself.

    The modulus is the irreducible monic polynomial whose coefficient vector
    (c_0, ..., c_{m-1}) encodes the smallest integer sum(c_i * p^i).
    """
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    if m < 1:
        raise ValueError("extension degree must be >= 1")
    if m == 1:
        return prime_field(p)
    n = 0
    while True:
        digits = []
        k = n
        for _ in range(m):
            digits.append(k % p)
            k //= p
        cand = digits + [1]
        if _is_irreducible_mod_p(cand, p):
            return ExtField(p, tuple(cand))
        n += 1


@dataclass(frozen=True)
class Context:
    """Ambient arithmetic data for a prime pair (p, ell) with ell | p - 1.

    ``g`` is the smallest primitive root mod p and ``zeta`` = g^((p-1)/ell)
    has multiplicative order exactly ell.
    """

    p: int
    ell: int
    g: int
    zeta: int

    @property
    def field(self) -> PrimeField:
        return prime_field(self.p)

    @property
    def cofactor(self) -> int:
        """(p - 1) // ell, the exponent defining the power residue symbol."""
        return (self.p - 1) // self.ell


def make_context(p: int, ell: int) -> Context:
    """Validate (p, ell) and fix the canonical generator and root of unity."""
    if not is_prime(p):
        raise NotPrimeError(f"p = {p} is not prime")
    if p >= MAX_PRIME:
        raise NotPrimeError(f"p = {p} exceeds the supported bound 2^31")
    if not is_prime(ell):
        raise NotPrimeError(f"ell = {ell} is not prime")
    if (p - 1) % ell != 0:
        raise DivisibilityError(f"ell = {ell} does not divide p - 1 = {p - 1}")
    g = primitive_root(p)
    zeta = pow(g, (p - 1) // ell, p)
    assert pow(zeta, ell, p) == 1 and zeta != 1
    return Context(p=p, ell=ell, g=g, zeta=zeta)


def power_residue_symbol(ctx: Context, a: int) -> int:
    """Index n in [0, ell) with a^((p-1)/ell) = zeta^n; 0 iff a is an ell-th power."""
    p = ctx.p
    if a % p == 0:
        raise ZeroArgumentError("power residue symbol of zero")
    t = pow(a, ctx.cofactor, p)
    z = 1
    for n in range(ctx.ell):
        if z == t:
            return n
        z = z * ctx.zeta % p
    raise AssertionError("a^((p-1)/ell) must be a power of zeta")


@lru_cache(maxsize=None)
def _baby_steps(p: int, g: int, m: int) -> dict[int, int]:
    table = {}
    e = 1
    for j in range(m):
        table.setdefault(e, j)
        e = e * g % p
    return table


def discrete_log(ctx: Context, a: int) -> int:
    """log_g(a) in [0, p-1) by baby-step/giant-step."""
    p, g = ctx.p, ctx.g
    if a % p == 0:
        raise ZeroArgumentError("discrete log of zero")
    if p == 2:
        return 0
    m = math.isqrt(p - 1) + 1
    table = _baby_steps(p, g, m)
    giant = pow(g, -m, p)
    y = a % p
    for i in range(m + 1):
        j = table.get(y)
        if j is not None:
            return (i * m + j) % (p - 1)
        y = y * giant % p
    raise AssertionError("unreachable: g generates the full group")


def lth_root(ctx: Context, a: int) -> int | None:
    """Canonical ell-th root of a in F_p, or None when a is a non-residue.

    The canonical choice is the smallest integer representative; the full
    root set is {zeta^i * root}.
    """
    p, ell = ctx.p, ctx.ell
    if a % p == 0:
        raise ZeroArgumentError("ell-th root of zero")
    e = discrete_log(ctx, a)
    if e % ell != 0:
        return None
    root = pow(ctx.g, e // ell, p)
    best = root
    for _ in range(ell - 1):
        root = root * ctx.zeta % p
        if root < best:
            best = root
    return best
