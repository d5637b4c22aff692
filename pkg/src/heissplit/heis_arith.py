"""Splitting-criterion formulas: the unit product eps, its shifted
specializations, the criterion polynomial A_ell, and the Frobenius-side
prediction of how many primes lie above (t - a).

Background, in the notation used throughout this package.  With zeta a fixed
primitive ell-th root of unity mod p and x an ell-th root of a, put

    eps_n(a) = prod_{i=1}^{ell-1} (1 - zeta^(i+n) * x)^i .

The criterion value is A_ell(a):

  * ell = 2:   A_2(a) = ((1 - x)^((p-1)/2) + (1 + x)^((p-1)/2)) / 2,
               computed by the linear recurrence
               x_{n+1} = 2 x_n + (a - 1) x_{n-1}, x_0 = x_1 = 1,
               as x_{(p-1)/2};
  * ell >= 3:  A_ell(a) = (1/ell) * sum_n eps_n(a)^((p-1)/ell), which for a
               with both ell-th power symbols trivial collapses to
               eps_0(a)^((p-1)/ell), independent of the root choice.

Both cases are polynomials in a with F_p coefficients; ``expand_a_poly``
produces the coefficient vector and checks the cancellation that makes the
contraction legal.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    DegenerateSpecializationError,
    DegenerateValueError,
    NotResidueError,
    PolynomialityViolationError,
    WrongEllError,
    ZeroArgumentError,
)
from .finite_field import (
    Context,
    build_extension,
    lth_root,
    power_residue_symbol,
    prime_field,
)
from .heisenberg import HeisElem, class_label, element_order
from .polynomial import Poly, binomial, roots_in_field

# Four-way classification of A_2(a) (exactly one holds for admissible a):
A2_UNIT = "unit"                        # A_2 = +1 or -1
A2_ZERO = "zero"                        # A_2 = 0
A2_INV_ONE_MINUS_A = "inv_one_minus_a"  # A_2^2 = 1/(1-a)
A2_A_OVER_ONE_MINUS_A = "a_over_one_minus_a"  # A_2^2 = a/(1-a)

# Expected classification for each pair of quadratic symbol indices of
# (a, 1-a); 0 = residue, 1 = non-residue.
A2_CASE_BY_SYMBOLS = {
    (0, 0): A2_UNIT,
    (0, 1): A2_ZERO,
    (1, 0): A2_INV_ONE_MINUS_A,
    (1, 1): A2_A_OVER_ONE_MINUS_A,
}


def epsilon_value(ctx: Context, root_x, shift: int = 0, field=None):
    """prod_{i=1}^{ell-1} (1 - zeta^(i+shift) * root_x)^i in root_x's field.

    ``field`` defaults to F_p; pass an extension to evaluate at images of
    the root living there.  Rejects root_x = 0 and root_x^ell = 1 (the
    specialization a = 1 where the product can degenerate).
    """
    fld = field if field is not None else prime_field(ctx.p)
    if root_x == fld.zero:
        raise ZeroArgumentError("root_x must be nonzero")
    if fld.pow(root_x, ctx.ell) == fld.one:
        raise DegenerateSpecializationError("root_x^ell = 1 (a = 1)")
    zeta = fld.embed(ctx.zeta)
    acc = fld.one
    w = fld.pow(zeta, (1 + shift) % ctx.ell)
    for i in range(1, ctx.ell):
        term = fld.sub(fld.one, fld.mul(w, root_x))
        acc = fld.mul(acc, fld.pow(term, i))
        w = fld.mul(w, zeta)
    return acc


def _mat2_pow(m, n: int, p: int):
    """2x2 matrix power mod p (row-major tuples)."""
    def mul(a, b):
        return (
            (a[0] * b[0] + a[1] * b[2]) % p,
            (a[0] * b[1] + a[1] * b[3]) % p,
            (a[2] * b[0] + a[3] * b[2]) % p,
            (a[2] * b[1] + a[3] * b[3]) % p,
        )

    acc = (1, 0, 0, 1)
    while n:
        if n & 1:
            acc = mul(acc, m)
        m = mul(m, m)
        n >>= 1
    return acc


def a2_by_recurrence(p: int, a: int, index: int) -> int:
    """x_index for x_{n+1} = 2 x_n + (a - 1) x_{n-1}, x_0 = x_1 = 1, mod p.

    Logarithmic time via a 2x2 matrix power.  Defined for every a in F_p;
    x_p = 1 identically.
    """
    a %= p
    if index == 0:
        return 1 % p
    m = _mat2_pow((2, (a - 1) % p, 1, 0), index - 1, p)
    # (x_index, x_{index-1}) = M^(index-1) . (x_1, x_0)
    return (m[0] + m[1]) % p


def a2_by_closed_form(ctx: Context, a: int) -> int:
    """((1 - s)^((p-1)/2) + (1 + s)^((p-1)/2)) / 2 with s a square root of a.

    When a is a non-residue the computation runs in F_{p^2} and the result
    is checked to lie in the base field.
    """
    p = ctx.p
    a %= p
    exp = (p - 1) // 2
    root = lth_root(ctx, a) if a % p != 0 else 0
    if root is not None:
        lo = pow((1 - root) % p, exp, p)
        hi = pow((1 + root) % p, exp, p)
        return (lo + hi) * pow(2, -1, p) % p
    ext = build_extension(p, 2)
    s = roots_in_field(binomial(ext, 2, ext.embed(a)))[0]
    one = ext.one
    lo = ext.pow(ext.sub(one, s), exp)
    hi = ext.pow(ext.add(one, s), exp)
    val = ext.mul(ext.add(lo, hi), ext.embed(pow(2, -1, p)))
    assert all(c == 0 for c in val[1:]), "value must descend to F_p"
    return val[0]


def a2_value(ctx: Context, a: int) -> int:
    """A_2(a) = x_{(p-1)/2}, the ell = 2 criterion value.

    The recurrence is the fast path; the closed form and the polynomial
    expansion are computed as cross-checks and must agree exactly.
    """
    if ctx.ell != 2:
        raise WrongEllError("a2_value requires ell = 2")
    p = ctx.p
    a %= p
    if a in (0, 1):
        raise DegenerateValueError("a must avoid {0, 1}")
    val = a2_by_recurrence(p, a, (p - 1) // 2)
    assert val == a2_by_closed_form(ctx, a)
    assert val == expand_a_poly(ctx).evaluate(a)
    return val


@lru_cache(maxsize=None)
def expand_a_poly(ctx: Context) -> Poly:
    """Coefficients of A_ell as a polynomial in a, over F_p.

    Expands sum_n eps_n(s)^((p-1)/ell) with s an indeterminate standing for
    an ell-th root of a, verifies that only exponents divisible by ell
    survive (raising PolynomialityViolationError otherwise, which would be a
    bug), contracts s^ell -> a and divides by ell.
    """
    p, ell = ctx.p, ctx.ell
    fld = prime_field(p)
    exp = (p - 1) // ell
    total = Poly.zero(fld)
    for shift in range(ell):
        base = Poly.one(fld)
        w = pow(ctx.zeta, 1 + shift, p)
        for i in range(1, ell):
            factor_i = Poly(fld, (1, -w % p))
            base = base * factor_i**i
            w = w * ctx.zeta % p
        term = base**exp
        total = total + term
    assert total.degree <= (ell - 1) * (p - 1) // 2
    for d, c in enumerate(total.coeffs):
        if d % ell != 0 and c != 0:
            raise PolynomialityViolationError(
                f"exponent {d} not divisible by {ell} survived expansion"
            )
    inv_ell = pow(ell, -1, p)
    contracted = [c * inv_ell % p for c in total.coeffs[::ell]]
    return Poly(fld, contracted)


def a_poly_eval(ctx: Context, a: int) -> int:
    """A_ell(a) by evaluating the expanded polynomial (valid for every a)."""
    return expand_a_poly(ctx).evaluate(a % ctx.p)


def a_ell_value(ctx: Context, a: int) -> int:
    """A_ell(a) for ell >= 3 via eps_0(a)^((p-1)/ell) at the canonical root.

    Requires a to be an ell-th power residue.  When 1 - a is also a residue
    the value is independent of the root choice and equals the average of
    all shifted values; both facts are asserted.  (When 1 - a is a
    non-residue the shifted powers differ by powers of zeta and only the
    polynomial evaluation computes A_ell(a) itself.)
    """
    if ctx.ell < 3:
        raise WrongEllError("a_ell_value requires ell >= 3")
    p = ctx.p
    a %= p
    if a in (0, 1):
        raise DegenerateValueError("a must avoid {0, 1}")
    if power_residue_symbol(ctx, a) != 0:
        raise NotResidueError(f"{a} is not an ell-th power mod {p}")
    root = lth_root(ctx, a)
    assert root is not None
    exp = ctx.cofactor
    shifted = [
        pow(epsilon_value(ctx, root, shift=n), exp, p) for n in range(ctx.ell)
    ]
    val = shifted[0]
    if power_residue_symbol(ctx, (1 - a) % p) == 0:
        # root choice cannot matter here: shifting the root by zeta shifts n
        assert all(v == val for v in shifted)
        assert sum(shifted) * pow(ctx.ell, -1, p) % p == val
        assert val == a_poly_eval(ctx, a)
    return val


def classify_a2(ctx: Context, a: int) -> str:
    """Which of the four A_2 cases holds; exactly one does for admissible a."""
    if ctx.ell != 2:
        raise WrongEllError("classify_a2 requires ell = 2")
    p = ctx.p
    a %= p
    half = pow(2, -1, p)
    if a in (0, 1) or a == half:
        raise DegenerateValueError("a must avoid {0, 1, 1/2}")
    val = a2_value(ctx, a)
    sq = val * val % p
    inv_one_minus_a = pow((1 - a) % p, -1, p)
    hits = []
    if val in (1, p - 1):
        hits.append(A2_UNIT)
    if val == 0:
        hits.append(A2_ZERO)
    if sq == inv_one_minus_a:
        hits.append(A2_INV_ONE_MINUS_A)
    if sq == a * inv_one_minus_a % p:
        hits.append(A2_A_OVER_ONE_MINUS_A)
    assert len(hits) == 1, f"cases not mutually exclusive at a={a}: {hits}"
    return hits[0]


@dataclass(frozen=True)
class FrobPrediction:
    """Formula-side prediction for the prime count above (t - a).

    ``e_alpha``/``e_beta`` are the power residue symbol indices of a and
    1 - a.  ``a_value`` is A_ell(a) whenever it was computed (always for
    ell = 2; for ell >= 3 only when both symbols are trivial, the only case
    the total-splitting criterion consumes).  ``e_central`` is the resolved
    central exponent of the Frobenius class when known.
    """

    p: int
    ell: int
    a: int
    e_alpha: int
    e_beta: int
    central_resolved: bool
    a_value: int | None
    a2_case: str | None
    e_central: int | None
    predicted_count: int
    class_label: str


def _zeta_log(ctx: Context, value: int) -> int:
    """n in [0, ell) with zeta^n = value (value must be an ell-th root of 1)."""
    z = 1
    for n in range(ctx.ell):
        if z == value:
            return n
        z = z * ctx.zeta % ctx.p
    raise AssertionError("value is not a power of zeta")


def frobenius_prediction(ctx: Context, a: int) -> FrobPrediction:
    """Predicted number of primes above (t - a) in the degree-ell^3 cover.

    ell = 2 case table, driven by A_2(a) (a != 0, 1, 1/2):
        8 if A_2(a) = 1;  4 if A_2(a) in {-1, 0} or A_2(a)^2 = 1/(1-a);
        2 if A_2(a)^2 = a/(1-a).
    ell >= 3: ell^3 iff both symbols are trivial and A_ell(a) = 1, else
    ell^2.
    """
    p, ell = ctx.p, ctx.ell
    a %= p
    if a in (0, 1):
        raise DegenerateValueError("a must avoid {0, 1}")
    e_alpha = power_residue_symbol(ctx, a)
    e_beta = power_residue_symbol(ctx, (1 - a) % p)
    both_trivial = e_alpha == 0 and e_beta == 0

    if ell == 2:
        if a == pow(2, -1, p):
            raise DegenerateValueError("a = 1/2 is excluded for ell = 2")
        val = a2_value(ctx, a)
        case = classify_a2(ctx, a)
        if val == 1:
            predicted = 8
            e_central: int | None = 0
        elif val == p - 1 or val == 0 or case == A2_INV_ONE_MINUS_A:
            predicted = 4
            e_central = 1 if val == p - 1 else None
        else:
            assert case == A2_A_OVER_ONE_MINUS_A
            predicted = 2
            e_central = None
        rep = HeisElem(2, e_alpha, e_beta, e_central or 0)
        label = class_label(rep)
        prediction = FrobPrediction(
            p=p,
            ell=ell,
            a=a,
            e_alpha=e_alpha,
            e_beta=e_beta,
            central_resolved=both_trivial,
            a_value=val,
            a2_case=case,
            e_central=e_central,
            predicted_count=predicted,
            class_label=label,
        )
    else:
        if both_trivial:
            val = a_ell_value(ctx, a)
            e_central = _zeta_log(ctx, val)
            predicted = ell**3 if e_central == 0 else ell**2
            rep = HeisElem(ell, 0, 0, e_central)
        else:
            val = None
            e_central = None
            predicted = ell**2
            rep = HeisElem(ell, e_alpha, e_beta, 0)
        prediction = FrobPrediction(
            p=p,
            ell=ell,
            a=a,
            e_alpha=e_alpha,
            e_beta=e_beta,
            central_resolved=both_trivial,
            a_value=val,
            a2_case=None,
            e_central=e_central,
            predicted_count=predicted,
            class_label=class_label(rep),
        )

    # group-theoretic consistency: count = ell^3 / order(Frobenius class rep)
    assert prediction.predicted_count * element_order(rep) == ell**3
    return prediction
