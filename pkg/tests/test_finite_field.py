"""Context construction, symbols, roots, and extension fields.

Expected values marked by brute-force helpers below were computed by
exhaustive enumeration, independent of the implementation under test.
"""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heissplit import (
    Context,
    DivisibilityError,
    ExtField,
    NotPrimeError,
    PrimeField,
    ZeroArgumentError,
    build_extension,
    discrete_log,
    is_prime,
    lth_root,
    make_context,
    power_residue_symbol,
    prime_field,
    primitive_root,
)

SMALL_CONTEXTS = [(13, 2), (5, 2), (7, 3), (31, 3), (11, 5), (199, 2), (43, 7)]


def brute_order(g: int, p: int) -> int:
    n, x = 1, g % p
    while x != 1:
        x = x * g % p
        n += 1
    return n


def brute_primitive_root(p: int) -> int:
    if p == 2:
        return 1
    return next(g for g in range(2, p) if brute_order(g, p) == p - 1)


def brute_lth_powers(p: int, ell: int) -> set[int]:
    return {pow(x, ell, p) for x in range(1, p)}


class TestPrimality:
    def test_small_values(self):
        primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43}
        for n in range(-2, 45):
            assert is_prime(n) == (n in primes)

    def test_carmichael_number(self):
        assert not is_prime(561)
        assert not is_prime(1729)

    def test_larger(self):
        assert is_prime(2**31 - 1)
        assert not is_prime(2**31)


class TestPrimitiveRoot:
    def test_examples(self):
        assert primitive_root(7) == 3  # 2 has order 3 mod 7
        assert primitive_root(2) == 1  # trivial group
        assert primitive_root(13) == 2

    def test_matches_brute_force(self):
        for p in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 101):
            assert primitive_root(p) == brute_primitive_root(p)

    def test_rejects_composite(self):
        with pytest.raises(NotPrimeError):
            primitive_root(12)


class TestMakeContext:
    def test_zeta_2_is_minus_one(self):
        ctx = make_context(13, 2)
        assert ctx.zeta == 12

    def test_example_7_3(self):
        ctx = make_context(7, 3)
        assert ctx.g == 3 and ctx.zeta == 2

    def test_divisibility_failure(self):
        with pytest.raises(DivisibilityError):
            make_context(7, 5)

    def test_not_prime(self):
        with pytest.raises(NotPrimeError):
            make_context(15, 2)
        with pytest.raises(NotPrimeError):
            make_context(13, 4)

    @pytest.mark.parametrize("p,ell", SMALL_CONTEXTS)
    def test_zeta_has_exact_order_ell(self, p, ell):
        ctx = make_context(p, ell)
        assert pow(ctx.zeta, ell, p) == 1
        for k in range(1, ell):
            assert pow(ctx.zeta, k, p) != 1

    def test_deterministic(self):
        assert make_context(31, 3) == make_context(31, 3)


class TestPowerResidueSymbol:
    def test_examples(self):
        assert power_residue_symbol(make_context(7, 3), 1) == 0
        assert power_residue_symbol(make_context(7, 3), 2) == 2
        assert power_residue_symbol(make_context(31, 3), 2) == 0

    def test_zero_rejected(self):
        with pytest.raises(ZeroArgumentError):
            power_residue_symbol(make_context(7, 3), 0)

    @pytest.mark.parametrize("p,ell", SMALL_CONTEXTS)
    def test_trivial_iff_power(self, p, ell):
        ctx = make_context(p, ell)
        powers = brute_lth_powers(p, ell)
        for a in range(1, p):
            assert (power_residue_symbol(ctx, a) == 0) == (a in powers)

    @given(st.integers(1, 10**6), st.integers(1, 10**6))
    @settings(max_examples=60)
    def test_invariant_under_lth_power_scaling(self, a, b):
        ctx = make_context(31, 3)
        a %= 31
        b %= 31
        if a == 0 or b == 0:
            return
        scaled = a * pow(b, 3, 31) % 31
        assert power_residue_symbol(ctx, scaled) == power_residue_symbol(ctx, a)


class TestLthRoot:
    def test_examples(self):
        ctx = make_context(7, 3)
        assert lth_root(ctx, 6) == 3  # roots are {3, 5, 6}
        assert lth_root(ctx, 2) is None  # cubes mod 7 are {1, 6}
        assert lth_root(ctx, 1) == 1

    def test_zero_rejected(self):
        with pytest.raises(ZeroArgumentError):
            lth_root(make_context(7, 3), 0)

    @pytest.mark.parametrize("p,ell", SMALL_CONTEXTS)
    def test_root_is_canonical_and_consistent(self, p, ell):
        ctx = make_context(p, ell)
        for a in range(1, p):
            root = lth_root(ctx, a)
            if root is None:
                assert power_residue_symbol(ctx, a) != 0
            else:
                assert pow(root, ell, p) == a
                # smallest representative among all ell roots
                allroots = {root * pow(ctx.zeta, i, p) % p for i in range(ell)}
                assert root == min(allroots)

    def test_discrete_log_roundtrip(self):
        ctx = make_context(199, 2)
        for a in range(1, 60):
            assert pow(ctx.g, discrete_log(ctx, a), 199) == a


class TestBuildExtension:
    def test_degree_one_is_base(self):
        assert build_extension(7, 1) is prime_field(7)
        assert isinstance(build_extension(7, 1), PrimeField)

    def test_field_343(self):
        ext = build_extension(7, 3)
        assert isinstance(ext, ExtField)
        assert ext.order == 343
        # Frobenius has order exactly 3
        rng = random.Random(11)
        x = next(e for e in (ext.sample(rng) for _ in range(99))
                 if ext.frobenius(e) != e)
        assert ext.pow(x, 7**3) == x
        assert ext.frobenius(ext.frobenius(ext.frobenius(x))) == x

    def test_every_f5_element_has_sqrt_in_f25(self):
        ext = build_extension(5, 2)
        squares = {ext.mul(e, e) for e in
                   (tuple((i, j)) for i in range(5) for j in range(5))}
        for c in range(5):
            assert ext.embed(c) in squares

    def test_rejects_composite_p(self):
        with pytest.raises(NotPrimeError):
            build_extension(6, 2)

    def test_deterministic_modulus(self):
        assert build_extension(7, 3).modulus == (2, 0, 0, 1)
        assert build_extension(7, 3) is build_extension(7, 3)

    @pytest.mark.parametrize("p,m", [(7, 2), (7, 3), (5, 4), (13, 2), (3, 5)])
    def test_power_map_fixes_field(self, p, m):
        ext = build_extension(p, m)
        rng = random.Random(p * 1000 + m)
        for _ in range(1000):
            x = ext.sample(rng)
            assert ext.pow(x, p**m) == x

    @pytest.mark.parametrize("p,m", [(7, 2), (5, 3), (13, 2)])
    def test_inverse_and_group_order(self, p, m):
        ext = build_extension(p, m)
        rng = random.Random(9)
        for _ in range(200):
            x = ext.sample(rng)
            if x == ext.zero:
                with pytest.raises(ZeroArgumentError):
                    ext.inv(x)
                continue
            assert ext.mul(x, ext.inv(x)) == ext.one
            assert ext.pow(x, ext.order - 1) == ext.one


class TestPrimeFieldOps:
    @given(st.integers(0, 10**9), st.integers(0, 10**9))
    @settings(max_examples=80)
    def test_field_axioms_sample(self, a, b):
        f = prime_field(101)
        a, b = a % 101, b % 101
        assert f.add(a, b) == (a + b) % 101
        assert f.mul(a, b) == a * b % 101
        assert f.sub(f.add(a, b), b) == a
        if b:
            assert f.mul(f.mul(a, b), f.inv(b)) == a
