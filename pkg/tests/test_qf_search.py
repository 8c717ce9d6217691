import random
from fractions import Fraction
from itertools import permutations

from qflab.ce_complex import AltForm, ce_differential, cocycle_space
from qflab.kernel import Poly
from qflab.lie_algebra import catalog
from qflab.qf_search import (
    CERT_GENERIC_PFAFFIAN_ZERO,
    CERT_ODD_DIMENSION,
    STATUS_FROBENIUS,
    STATUS_NONE,
    STATUS_QUASI_FROBENIUS,
    RationalStream,
    find_quasi_frobenius,
    frobenius_potential,
    generic_cocycle_pfaffian,
    qf_validate,
)


def poly_pfaffian_by_pairings(rows):
    """Independent symbolic oracle: Pfaffian as a signed sum over perfect
    matchings, enumerated by brute force."""
    n = len(rows)
    nv = rows[0][0].num_vars
    total = Poly.zero(nv)
    for perm in permutations(range(n)):
        if any(perm[2 * k] > perm[2 * k + 1] for k in range(n // 2)):
            continue
        if any(perm[2 * k] > perm[2 * k + 2] for k in range(n // 2 - 1)):
            continue
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        prod = Poly.constant(sign, nv)
        for k in range(n // 2):
            prod = prod * rows[perm[2 * k]][perm[2 * k + 1]]
        total = total + prod
    return total


class TestQfValidate:
    def test_aff1_top_form_passes(self):
        g = catalog("aff(1)")
        assert qf_validate(g, AltForm(2, 2, {(0, 1): 1}))

    def test_h3_plus_r_good_form(self):
        g = catalog("h3_plus_R")
        assert qf_validate(g, AltForm(4, 2, {(0, 2): 1, (1, 3): 1}))

    def test_h3_plus_r_non_cocycle(self):
        g = catalog("h3_plus_R")
        v = qf_validate(g, AltForm(4, 2, {(0, 1): 1, (2, 3): 1}))
        assert not v
        assert v.reason == "not_closed"
        assert v.witness == (1, 2, 4)

    def test_degenerate_form(self):
        g = catalog("abelian(4)")
        v = qf_validate(g, AltForm(4, 2, {(0, 1): 1}))
        assert not v
        assert v.reason == "degenerate"


class TestFrobeniusPotential:
    def test_aff1_explicit(self):
        g = catalog("aff(1)")
        beta = AltForm(2, 2, {(0, 1): -1})
        theta = frobenius_potential(g, beta)
        assert theta == AltForm(2, 1, {(1,): 1})  # theta = e^2

    def test_abelian_not_exact(self):
        g = catalog("abelian(2)")
        assert frobenius_potential(g, AltForm(2, 2, {(0, 1): 1})) is None

    def test_h3_plus_r_inexact_confirmed_by_enumeration(self):
        g = catalog("h3_plus_R")
        beta = AltForm(4, 2, {(0, 2): 1, (1, 3): 1})
        assert frobenius_potential(g, beta) is None
        # brute-force confirmation: d(theta) is always a multiple of e1^e2
        for m in range(4):
            d = ce_differential(g, AltForm(4, 1, {(m,): 1}))
            assert set(d.coeffs) <= {(0, 1)}

    def test_round_trip_on_exact_forms(self):
        rng = random.Random(17)
        for name in ["aff(1)", "heisenberg3", "sl(2)", "oscillator4"]:
            g = catalog(name)
            for _ in range(10):
                theta = AltForm(g.dim, 1, {(m,): Fraction(rng.randint(-5, 5))
                                           for m in range(g.dim)})
                beta = ce_differential(g, theta)
                found = frobenius_potential(g, beta)
                assert found is not None
                assert ce_differential(g, found) == beta


class TestFindQuasiFrobenius:
    def test_odd_dimension(self):
        for name in ["heisenberg3", "so(3)"]:
            v = find_quasi_frobenius(catalog(name), seed=1)
            assert v.status == STATUS_NONE
            assert v.certificate == CERT_ODD_DIMENSION

    def test_aff1_frobenius_with_round_trip(self):
        g = catalog("aff(1)")
        v = find_quasi_frobenius(g, seed=3)
        assert v.status == STATUS_FROBENIUS
        assert qf_validate(g, v.witness)
        assert ce_differential(g, v.potential) == v.witness

    def test_h3_plus_r_quasi_only(self):
        g = catalog("h3_plus_R")
        v = find_quasi_frobenius(g, seed=3)
        assert v.status == STATUS_QUASI_FROBENIUS
        assert v.potential is None
        assert qf_validate(g, v.witness)

    def test_so3_plus_so3_generic_pfaffian_zero(self):
        g = catalog("so3_plus_so3")
        v = find_quasi_frobenius(g, seed=7)
        assert v.status == STATUS_NONE
        assert v.certificate == CERT_GENERIC_PFAFFIAN_ZERO
        assert v.certificate_poly is not None and v.certificate_poly.is_zero()
        # independent symbolic expansion of the same generic matrix
        basis, rows, pf = generic_cocycle_pfaffian(g)
        assert len(basis) == 6
        assert poly_pfaffian_by_pairings(rows).is_zero()

    def test_soundness_of_impossibility(self):
        g = catalog("so3_plus_so3")
        v = find_quasi_frobenius(g, seed=11)
        assert v.certificate == CERT_GENERIC_PFAFFIAN_ZERO
        basis = cocycle_space(g, 2)
        rng = random.Random(4242)  # independent of the search's stream
        for _ in range(100):
            w = AltForm.zero(g.dim, 2)
            for z in basis:
                w = w + z.scale(Fraction(rng.randint(-9, 9), rng.randint(1, 3)))
            assert not qf_validate(g, w)

    def test_determinism(self):
        for name in ["aff(1)", "h3_plus_R", "abelian(4)", "oscillator4"]:
            g = catalog(name)
            a = find_quasi_frobenius(g, seed=99)
            b = find_quasi_frobenius(g, seed=99)
            assert a == b
            assert repr(a.witness) == repr(b.witness)

    def test_witness_always_validates(self):
        for name in ["aff(1)", "abelian(2)", "abelian(4)", "h3_plus_R"]:
            for seed in [0, 1, 2]:
                g = catalog(name)
                v = find_quasi_frobenius(g, seed)
                assert v.status in (STATUS_FROBENIUS, STATUS_QUASI_FROBENIUS)
                assert qf_validate(g, v.witness)
                if v.status == STATUS_FROBENIUS:
                    assert ce_differential(g, v.potential) == v.witness

    def test_oscillator4_center_is_obstructed(self):
        # the central direction of the diamond algebra sits in the radical
        # of every 2-cocycle, so the generic Pfaffian vanishes identically
        v = find_quasi_frobenius(catalog("oscillator4"), seed=5)
        assert v.status == STATUS_NONE
        assert v.certificate == CERT_GENERIC_PFAFFIAN_ZERO
        basis = cocycle_space(catalog("oscillator4"), 2)
        assert all(all(2 not in key for key in z.coeffs) for z in basis)


class TestRationalStream:
    def test_values_in_box(self):
        s = RationalStream(seed=8, box=8)
        for _ in range(500):
            x = s.next_rational()
            assert -8 <= x <= 8
            assert 1 <= x.denominator <= 4

    def test_deterministic(self):
        a = RationalStream(5)
        b = RationalStream(5)
        assert [a.next_rational() for _ in range(50)] == \
               [b.next_rational() for _ in range(50)]

    def test_box_widening(self):
        s = RationalStream(5, box=1)
        s.box *= 2
        for _ in range(100):
            assert -2 <= s.next_rational() <= 2
