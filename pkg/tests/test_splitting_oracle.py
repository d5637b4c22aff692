"""The factorization oracle: counts, degrees, determinism, and the ell = 2
curve-model cross-check."""

import pytest

from heissplit import (
    DegenerateValueError,
    SymbolNotTrivialError,
    WrongEllError,
    make_context,
    power_residue_symbol,
    split_K,
    split_R,
    split_R2_curve,
)

C13 = make_context(13, 2)
C7 = make_context(7, 3)
C31 = make_context(31, 3)


class TestSplitK:
    def test_example_13_2_4(self):
        rep = split_K(C13, 4, seed=1)
        assert rep.prime_count == 4
        assert rep.residue_degrees == (1, 1, 1, 1)

    def test_example_7_3_6(self):
        rep = split_K(C7, 6, seed=1)
        assert rep.prime_count == 3
        assert rep.residue_degrees == (3, 3, 3)

    def test_example_31_3_2(self):
        rep = split_K(C31, 2, seed=1)
        assert rep.prime_count == 9
        assert rep.residue_degrees == (1,) * 9

    def test_rejects_degenerate_a(self):
        with pytest.raises(DegenerateValueError):
            split_K(C13, 0, seed=1)
        with pytest.raises(DegenerateValueError):
            split_K(C13, 1, seed=1)

    @pytest.mark.parametrize("p,ell", [(13, 2), (7, 3), (31, 3), (11, 5)])
    def test_count_matches_symbol_orders(self, p, ell):
        # abelian layer: count = ell^2 / lcm of the symbol orders in Z/ell
        ctx = make_context(p, ell)
        for a in range(2, p):
            both_trivial = (
                power_residue_symbol(ctx, a) == 0
                and power_residue_symbol(ctx, (1 - a) % p) == 0
            )
            rep = split_K(ctx, a, seed=3)
            assert rep.prime_count == (ell * ell if both_trivial else ell)
            assert sum(rep.residue_degrees) == ell * ell


class TestSplitR:
    def test_example_13_2_4(self):
        assert split_R(C13, 4, seed=1).prime_count == 8

    def test_example_31_3_2(self):
        assert split_R(C31, 2, seed=1).prime_count == 27

    def test_example_7_3_6(self):
        assert split_R(C7, 6, seed=1).prime_count == 9

    @pytest.mark.parametrize("p,ell", [(13, 2), (29, 2), (7, 3), (31, 3), (11, 5)])
    def test_structural_invariants(self, p, ell):
        ctx = make_context(p, ell)
        for a in range(2, p):
            rep = split_R(ctx, a, seed=9)
            assert sum(rep.residue_degrees) == ell**3
            assert len(set(rep.residue_degrees)) == 1
            assert ell**3 % rep.prime_count == 0
            if ell >= 3:
                assert rep.prime_count in (ell**3, ell**2)
            else:
                assert rep.prime_count > 1

    def test_seed_independence(self):
        for a in (2, 3, 4, 5, 6):
            reports = [split_R(C31, a, seed=s) for s in (0, 1, 77, 123456)]
            counts = {r.prime_count for r in reports}
            degrees = {r.residue_degrees for r in reports}
            assert len(counts) == 1 and len(degrees) == 1

    def test_determinism_for_fixed_seed(self):
        a, seed = 5, 31337
        assert split_R(C31, a, seed) == split_R(C31, a, seed)

    def test_trace_indices_consistent(self):
        rep = split_R(C13, 4, seed=1)
        assert len(rep.traces) == rep.prime_count
        for t in rep.traces:
            assert t.z_index is not None
            assert t.degree in rep.residue_degrees


class TestCurveModel:
    def test_example_13_2_4(self):
        assert split_R2_curve(C13, 4).prime_count == 8

    def test_example_13_2_10(self):
        assert (
            split_R2_curve(C13, 10).prime_count == split_R(C13, 10, seed=5).prime_count
        )

    def test_rejects_wrong_ell(self):
        with pytest.raises(WrongEllError):
            split_R2_curve(C7, 2)

    def test_rejects_nontrivial_symbols(self):
        assert power_residue_symbol(C13, 2) != 0
        with pytest.raises(SymbolNotTrivialError):
            split_R2_curve(C13, 2)

    @pytest.mark.parametrize("p", [5, 13, 29, 37, 53])
    def test_matches_split_r_wherever_defined(self, p):
        ctx = make_context(p, 2)
        for a in range(2, p):
            if power_residue_symbol(ctx, a) != 0:
                continue
            if power_residue_symbol(ctx, (1 - a) % p) != 0:
                continue
            curve = split_R2_curve(ctx, a)
            oracle = split_R(ctx, a, seed=2)
            assert curve.prime_count == oracle.prime_count
            assert curve.residue_degrees == oracle.residue_degrees
            assert sum(curve.residue_degrees) == 8
