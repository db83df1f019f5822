"""Ball resonance enumeration: poles, multiplicities, widths, figure data.

Multiplicity oracle: the dimension of degree-ell harmonic polynomials in
n variables, C(n+ell-1, ell) - C(n+ell-3, ell-2), checked against the
product formula used by the implementation.
"""

import math

import pytest

from resgap.sphere_spectrum import (DegreeTooLarge, UnsupportedDimension,
                                    figure1_data, min_width, multiplicity,
                                    resonances_for_ell)


def harmonic_dim(ell, n):
    """Independent multiplicity oracle via harmonic polynomial dimensions."""
    a = math.comb(n + ell - 1, ell)
    b = math.comb(n + ell - 3, ell - 2) if ell >= 2 else 0
    return a - b


class TestResonancesForEll:
    def test_n3_l1_unit(self):
        res = resonances_for_ell(3, 1, 1.0)
        assert len(res) == 1
        assert abs(res[0].lam - (-1j)) < 1e-14
        assert res[0].multiplicity == 3
        assert res[0].residual <= 1e-10

    def test_n3_l0_empty(self):
        assert resonances_for_ell(3, 0, 1.0) == []

    def test_dilation_scaling(self):
        res = resonances_for_ell(3, 1, 2.0)
        assert len(res) == 1
        assert res[0].lam == -1j / 2

    def test_dilation_covariance_exact(self):
        for ell in (1, 2, 7):
            unit = resonances_for_ell(3, ell, 1.0)
            scaled = resonances_for_ell(3, ell, 2.5)
            assert [r.lam / 2.5 for r in unit] == [r.lam for r in scaled]

    def test_rejects_even_or_small_dimension(self):
        with pytest.raises(UnsupportedDimension):
            resonances_for_ell(4, 1, 1.0)
        with pytest.raises(UnsupportedDimension):
            resonances_for_ell(1, 1, 1.0)

    def test_degree_cap(self):
        with pytest.raises(DegreeTooLarge):
            resonances_for_ell(3, 61, 1.0)
        with pytest.raises(DegreeTooLarge):
            resonances_for_ell(5, 60, 1.0)


class TestMultiplicity:
    def test_paper_values_n3(self):
        assert multiplicity(5, 3) == 11
        for ell in range(101):
            assert multiplicity(ell, 3) == 2 * ell + 1

    def test_l0_any_dim(self):
        for n in (3, 5, 7, 9):
            assert multiplicity(0, n) == 1

    def test_l1_n5(self):
        assert multiplicity(1, 5) == 5

    @pytest.mark.parametrize("n", [3, 5, 7, 9])
    def test_against_harmonic_dimension_oracle(self, n):
        for ell in range(30):
            assert multiplicity(ell, n) == harmonic_dim(ell, n)


class TestMinWidth:
    def test_n3(self):
        width, witness = min_width(3, 30, 1.0)
        assert abs(width - 1.0) <= 1e-9
        assert witness.ell == 1
        assert abs(witness.lam - (-1j)) <= 1e-9

    def test_n5(self):
        width, witness = min_width(5, 30, 1.0)
        assert abs(width - 1.0) <= 1e-9
        assert witness.ell == 0

    def test_radius_half(self):
        width, _ = min_width(3, 30, 0.5)
        assert abs(width - 2.0) <= 2e-9

    def test_higher_dimensions_report_only(self):
        # no expected value is asserted beyond positivity and finiteness
        for n in (7, 9):
            width, witness = min_width(n, 20, 1.0)
            assert width > 0 and math.isfinite(width)
            print(f"min width n={n}, ell<=20: {width:.6f} at ell={witness.ell}")

    def test_width_floor_n3(self):
        for ell in range(31):
            for res in resonances_for_ell(3, ell, 1.0):
                assert abs(res.lam.imag) >= 1.0 - 1e-9


class TestFigureData:
    def test_single_point(self):
        sl = figure1_data(1)
        assert len(sl.resonances) == 1
        assert not sl.highlighted(sl.resonances[0])

    def test_ellmax_2_adds_quadratic_roots(self):
        sl = figure1_data(2)
        assert len(sl.resonances) == 3
        pair = [r.lam for r in sl.resonances if r.ell == 2]
        want = sorted([(math.sqrt(3) - 3j) / 2, (-math.sqrt(3) - 3j) / 2],
                      key=lambda z: z.real)
        for g, w in zip(sorted(pair, key=lambda z: z.real), want):
            assert abs(g - w) < 1e-12

    def test_highlight_count(self):
        sl = figure1_data(20, highlight_ell=20)
        assert sum(1 for r in sl.resonances if sl.highlighted(r)) == 20

    def test_total_count_formula(self):
        for L in (5, 12, 30):
            sl = figure1_data(L)
            assert len(sl.resonances) == L * (L + 1) // 2

    def test_sorted_by_ell_then_real(self):
        sl = figure1_data(6)
        keys = [(r.ell, r.lam.real) for r in sl.resonances]
        assert keys == sorted(keys)
