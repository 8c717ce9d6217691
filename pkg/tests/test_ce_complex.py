import math
import random
from fractions import Fraction

import pytest

from qflab.ce_complex import (
    AltForm,
    DegreeOverflowError,
    betti,
    ce_differential,
    cocycle_space,
    d_squared_is_zero,
    differential_matrix,
    monomial_keys,
)
from qflab.kernel import RatMatrix
from qflab.lie_algebra import CATALOG_NAMES, catalog


def bareiss_rank(m: RatMatrix) -> int:
    """Independent exact rank oracle: clear denominators rowwise, then run
    fraction-free Bareiss elimination over the integers."""
    rows = []
    for i in range(m.rows):
        den = math.lcm(*(x.denominator for x in m.row(i))) if m.cols else 1
        rows.append([int(x * den) for x in m.row(i)])
    nr, nc = m.rows, m.cols
    rank = 0
    prev = 1
    r = 0
    for c in range(nc):
        pr = next((i for i in range(r, nr) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        for i in range(r + 1, nr):
            for j in range(c + 1, nc):
                rows[i][j] = (rows[r][c] * rows[i][j] - rows[i][c] * rows[r][j]) // prev
            rows[i][c] = 0
        prev = rows[r][c]
        r += 1
        rank += 1
        if r == nr:
            break
    return rank


class TestAltForm:
    def test_value_sign_normalization(self):
        w = AltForm(3, 2, {(0, 2): Fraction(5)})
        assert w.value((0, 2)) == 5
        assert w.value((2, 0)) == -5
        assert w.value((1, 1)) == 0

    def test_as_matrix_skew(self):
        w = AltForm(4, 2, {(0, 2): 1, (1, 3): Fraction(1, 2)})
        m = w.as_matrix()
        assert m.is_skew_symmetric()
        assert m[0, 2] == 1 and m[2, 0] == -1 and m[1, 3] == Fraction(1, 2)

    def test_rejects_unsorted_keys(self):
        with pytest.raises(ValueError):
            AltForm(3, 2, {(2, 0): 1})


class TestDifferential:
    def test_heisenberg_dual_center(self):
        g = catalog("heisenberg3")
        w = AltForm.basis(3, (2,))  # e^3
        dw = ce_differential(g, w)
        assert dw == AltForm(3, 2, {(0, 1): -1})

    def test_zero_form_differential_vanishes(self):
        for name in ["aff(1)", "so(3)"]:
            g = catalog(name)
            c = AltForm(g.dim, 0, {(): Fraction(7, 2)})
            assert ce_differential(g, c).is_zero()

    def test_aff1_frobenius_potential_form(self):
        g = catalog("aff(1)")
        theta = AltForm.basis(2, (1,))  # e^2
        dtheta = ce_differential(g, theta)
        assert dtheta == AltForm(2, 2, {(0, 1): -1})
        # nondegenerate: the Frobenius structure on aff(1)
        assert dtheta.as_matrix().det() != 0

    def test_top_degree_raises(self):
        g = catalog("heisenberg3")
        with pytest.raises(DegreeOverflowError):
            ce_differential(g, AltForm.basis(3, (0, 1, 2)))

    def test_d_squared_zero_all_catalog(self):
        for name in CATALOG_NAMES:
            g = catalog(name)
            for k in range(g.dim + 1):
                assert d_squared_is_zero(g, k), (name, k)


class TestCocycleSpace:
    def test_abelian_everything_closed(self):
        g = catalog("abelian(4)")
        for k in range(5):
            assert len(cocycle_space(g, k)) == len(monomial_keys(4, k))

    def test_heisenberg_two_cocycles(self):
        g = catalog("heisenberg3")
        z2 = cocycle_space(g, 2)
        # the bracket lands in the center, so every 2-form is closed...
        assert len(z2) == 3
        # ...and the cohomology in degree 2 is two-dimensional, with
        # e1^e3 and e2^e3 surviving while e1^e2 is a coboundary
        assert betti(g)[2] == 2
        for key in [(0, 2), (1, 2)]:
            assert ce_differential(g, AltForm.basis(3, key)).is_zero()
        b2 = ce_differential(g, AltForm.basis(3, (2,)))
        assert b2.coeffs.keys() == {(0, 1)}

    def test_h3_plus_r_membership(self):
        g = catalog("h3_plus_R")
        beta = AltForm(4, 2, {(0, 2): 1, (1, 3): 1})
        assert ce_differential(g, beta).is_zero()
        # the only cocycle condition in this algebra is beta(e3, e4) = 0
        bad = AltForm(4, 2, {(2, 3): 1})
        d = ce_differential(g, bad)
        assert d.value((0, 1, 3)) == -1
        z2 = cocycle_space(g, 2)
        assert len(z2) == 5

    def test_every_returned_form_is_closed(self):
        for name in CATALOG_NAMES:
            g = catalog(name)
            for k in range(g.dim):
                for w in cocycle_space(g, k):
                    assert ce_differential(g, w).is_zero()


class TestBetti:
    def test_abelian3(self):
        assert betti(catalog("abelian(3)")) == [1, 3, 3, 1]

    def test_heisenberg(self):
        assert betti(catalog("heisenberg3")) == [1, 2, 2, 1]

    def test_so3_whitehead(self):
        assert betti(catalog("so(3)")) == [1, 0, 0, 1]

    def test_rank_oracle_agreement(self):
        for name in CATALOG_NAMES:
            g = catalog(name)
            for k in range(g.dim):
                m = differential_matrix(g, k)
                assert m.rank() == bareiss_rank(m), (name, k)

    def test_euler_characteristic_zero(self):
        for name in CATALOG_NAMES:
            g = catalog(name)
            assert sum((-1) ** k * b for k, b in enumerate(betti(g))) == 0, name

    def test_b1_is_abelianization_dim(self):
        for name in CATALOG_NAMES:
            g = catalog(name)
            assert betti(g)[1] == g.dim - g.derived_subalgebra_dim(), name
