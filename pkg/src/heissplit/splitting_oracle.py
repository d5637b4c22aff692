"""Ground-truth prime counting above (t - a), by direct factorization.

The degree-ell^2 abelian layer K is generated by an ell-th root u of t and
an ell-th root v of 1 - t; its maximal order is F_p[t][u, v], so the residue
algebra at (t - a) is F_p[u, v] / (u^ell - a, v^ell - (1 - a)).  ``split_K``
factors it directly: one prime of K per pair (irreducible factor of
u^ell - a over F_p, irreducible factor of v^ell - (1 - a) over the residue
field of the first factor).

The full cover R adjoins an ell-th root of the unit product
eps(t) = prod (1 - zeta^i t^(1/ell))^i.  Above a K-prime with residue field
F_q and image xbar of u, the relevant residue algebra is F_q[z]/(z^ell -
epsbar) with epsbar = prod (1 - zeta^i xbar)^i; ``split_R`` factors that.
For K-primes of residue degree > 1 this uses that R/K is unramified and
that epsbar != 0 with gcd(ell, p) = 1, which makes z^ell - epsbar
squarefree over the residue field; the ell = 2 curve model gives an
independent cross-check (``split_R2_curve``).

Towers are flattened: every residue field is one of the canonical absolute
extensions from ``build_extension``, with images mapped through explicit
embeddings, never a field built on top of another extension.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    DegenerateValueError,
    SymbolNotTrivialError,
    WrongEllError,
)
from .finite_field import (
    Context,
    build_extension,
    lth_root,
    power_residue_symbol,
    prime_field,
)
from .polynomial import Poly, binomial, factor, field_embedding, roots_in_field
from .seeds import derive_seed


@dataclass(frozen=True)
class PrimeTrace:
    """Which factor pair/triple produced one prime, and its residue degree."""

    u_index: int
    v_index: int
    z_index: int | None
    degree: int


@dataclass(frozen=True)
class SplitReport:
    """Oracle output: prime count and residue degrees at one level.

    ``level`` is "K" (degree ell^2) or "R" (degree ell^3); the residue
    degrees sum to that degree since (t - a) is unramified for a not in
    {0, 1}.
    """

    level: str
    p: int
    ell: int
    a: int
    seed: int
    prime_count: int
    residue_degrees: tuple[int, ...]
    traces: tuple[PrimeTrace, ...]


@dataclass(frozen=True)
class _KPrime:
    field: object
    x_image: object  # image of u in the residue field
    degree: int
    u_index: int
    v_index: int


def _check_a(ctx: Context, a: int) -> int:
    a %= ctx.p
    if a in (0, 1):
        raise DegenerateValueError("a must avoid {0, 1}")
    return a


@lru_cache(maxsize=2048)
def _k_primes(ctx: Context, a: int, seed: int) -> tuple[_KPrime, ...]:
    """Primes of K above (t - a), with flattened residue fields.

    Cached so that split_K and split_R at the same point share the work.
    """
    p, ell = ctx.p, ctx.ell
    base = prime_field(p)
    u_fac = factor(binomial(base, ell, a), derive_seed(seed, "u"))
    assert all(mult == 1 for _, mult in u_fac), "u^ell - a must be squarefree"
    out = []
    for iu, (u_factor, _) in enumerate(u_fac.factors):
        m = u_factor.degree
        mid = build_extension(p, m)
        if m == 1:
            x_mid = base.neg(u_factor.coeffs[0])
        else:
            lifted = Poly(mid, [mid.embed(c) for c in u_factor.coeffs])
            x_mid = roots_in_field(lifted)[0]
        v_poly = binomial(mid, ell, mid.embed((1 - a) % p))
        v_fac = factor(v_poly, derive_seed(seed, "v", iu))
        assert all(mult == 1 for _, mult in v_fac)
        for iv, (v_factor, _) in enumerate(v_fac.factors):
            d = v_factor.degree
            if d == 1:
                out.append(_KPrime(mid, x_mid, m, iu, iv))
            else:
                top = build_extension(p, m * d)
                embed = field_embedding(mid, top)
                out.append(_KPrime(top, embed(x_mid), m * d, iu, iv))
    return tuple(out)


def split_K(ctx: Context, a: int, seed: int) -> SplitReport:
    """Count primes of the abelian layer K above (t - a), by factorization."""
    a = _check_a(ctx, a)
    primes = _k_primes(ctx, a, seed)
    degrees = tuple(sorted(kp.degree for kp in primes))
    ell = ctx.ell
    assert sum(degrees) == ell * ell, "residue degrees must sum to ell^2"
    assert len(set(degrees)) == 1, "conjugate primes share the residue degree"
    # independent abelian cross-check: count = ell^2 / lcm of symbol orders
    sym_order = 1
    if power_residue_symbol(ctx, a) != 0 or power_residue_symbol(ctx, (1 - a) % ctx.p) != 0:
        sym_order = ell
    assert len(primes) * sym_order == ell * ell
    traces = tuple(
        PrimeTrace(kp.u_index, kp.v_index, None, kp.degree) for kp in primes
    )
    return SplitReport(
        level="K",
        p=ctx.p,
        ell=ell,
        a=a,
        seed=seed,
        prime_count=len(primes),
        residue_degrees=degrees,
        traces=traces,
    )


def _epsilon_at(ctx: Context, fld, x_image, shift: int = 0):
    """prod (1 - zeta^(i+shift) xbar)^i inside a residue field."""
    zeta = fld.embed(ctx.zeta)
    acc = fld.one
    w = fld.pow(zeta, (1 + shift) % ctx.ell)
    for i in range(1, ctx.ell):
        acc = fld.mul(acc, fld.pow(fld.sub(fld.one, fld.mul(w, x_image)), i))
        w = fld.mul(w, zeta)
    return acc


def split_R(ctx: Context, a: int, seed: int) -> SplitReport:
    """Count primes of the full degree-ell^3 cover R above (t - a)."""
    a = _check_a(ctx, a)
    ell = ctx.ell
    primes: list[PrimeTrace] = []
    for kp in _k_primes(ctx, a, seed):
        fld = kp.field
        eps = _epsilon_at(ctx, fld, kp.x_image)
        assert eps != fld.zero, "unit product cannot vanish for a != 1"
        # shift-independence guard: shifting by one multiplies eps by
        # (1 - xbar)^ell / (1 - a), an ell-th power in the residue field,
        # so the factor pattern of z^ell - eps does not depend on the shift.
        eps1 = _epsilon_at(ctx, fld, kp.x_image, shift=1)
        ratio = fld.mul(eps1, fld.inv(eps))
        assert fld.pow(ratio, (fld.order - 1) // ell) == fld.one
        z_fac = factor(
            binomial(fld, ell, eps),
            derive_seed(seed, "z", kp.u_index, kp.v_index),
        )
        assert all(mult == 1 for _, mult in z_fac)
        for iz, (z_factor, _) in enumerate(z_fac.factors):
            primes.append(
                PrimeTrace(kp.u_index, kp.v_index, iz, kp.degree * z_factor.degree)
            )
    degrees = tuple(sorted(t.degree for t in primes))
    assert sum(degrees) == ell**3, "residue degrees must sum to ell^3"
    assert len(set(degrees)) == 1, "conjugate primes share the residue degree"
    assert ell**3 % len(primes) == 0
    return SplitReport(
        level="R",
        p=ctx.p,
        ell=ell,
        a=a,
        seed=seed,
        prime_count=len(primes),
        residue_degrees=degrees,
        traces=tuple(primes),
    )


def split_R2_curve(ctx: Context, a: int) -> SplitReport:
    """ell = 2 cross-check via the smooth curve model U^2 + V^2 = 2 W^2.

    The degree-2 cover of the abelian layer sends (U : V : W) to
    (W^2 - U^2 : U V : W^2), so above the base point with x-choice xs and
    y-choice ys the fiber is cut out by 1 - U^2 = xs, U V = ys.  It consists
    of two rational points when 1 - xs is a square mod p and of one closed
    point of degree two otherwise (ramification is impossible away from
    t in {0, 1, infinity}).  Requires both quadratic symbols trivial, the
    regime where the base points are rational.
    """
    if ctx.ell != 2:
        raise WrongEllError("the curve model applies to ell = 2 only")
    a = _check_a(ctx, a)
    p = ctx.p
    if power_residue_symbol(ctx, a) != 0 or power_residue_symbol(ctx, (1 - a) % p) != 0:
        raise SymbolNotTrivialError("both quadratic symbols must be trivial")
    x = lth_root(ctx, a)
    y = lth_root(ctx, (1 - a) % p)
    assert x is not None and y is not None
    traces = []
    for ix, xs in enumerate((x, p - x)):
        for iy, _ys in enumerate((y, p - y)):
            w = (1 - xs) % p
            assert w != 0, "1 - xs = 0 forces a = 1"
            if pow(w, (p - 1) // 2, p) == 1:
                traces.append(PrimeTrace(ix, iy, 0, 1))
                traces.append(PrimeTrace(ix, iy, 1, 1))
            else:
                traces.append(PrimeTrace(ix, iy, 0, 2))
    degrees = tuple(sorted(t.degree for t in traces))
    assert sum(degrees) == 8
    return SplitReport(
        level="R",
        p=p,
        ell=2,
        a=a,
        seed=0,
        prime_count=len(traces),
        residue_degrees=degrees,
        traces=tuple(traces),
    )
