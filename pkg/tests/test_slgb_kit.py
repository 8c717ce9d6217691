import random
from fractions import Fraction

import pytest

from qflab.ce_complex import AltForm
from qflab.lie_algebra import LinearMap, automorphism_check, catalog
from qflab.slgb_kit import (
    CoverNerve,
    PreconditionNotVerifiedError,
    SLGBSpec,
    TransitionData,
    associated_qflab,
    check_cocycle,
    check_transitions,
    shear,
)

AFF1 = catalog("aff(1)")
BETA = AltForm(2, 2, {(0, 1): 1})


def three_open_nerve():
    """Circular nerve on three opens with one shared triple point."""
    return CoverNerve(
        opens=["U0", "U1", "U2"],
        pairwise={(0, 1): ["a", "t"], (1, 2): ["b", "t"], (0, 2): ["c", "t"]},
        triples=[((0, 1, 2), ["t"])],
    )


def shear_spec(mu01=1, mu12=2, mu02=3):
    """Transitions phi_ji as shears; mu composes additively, so the cocycle
    condition on the triple is mu02 = mu01 + mu12."""
    transitions = TransitionData({
        (0, 1): {"a": shear(mu01), "t": shear(mu01)},
        (1, 2): {"b": shear(mu12), "t": shear(mu12)},
        (0, 2): {"c": shear(mu02), "t": shear(mu02)},
    })
    return SLGBSpec(AFF1, BETA, three_open_nerve(), transitions)


class TestCoverNerve:
    def test_triple_points_must_be_carried(self):
        with pytest.raises(ValueError):
            CoverNerve(
                opens=["U0", "U1", "U2"],
                pairwise={(0, 1): ["a"], (1, 2): ["b"], (0, 2): ["c"]},
                triples=[((0, 1, 2), ["a"])],  # "a" missing from (1,2), (0,2)
            )

    def test_trivial_cover(self):
        nerve = CoverNerve(opens=["U0"], pairwise={}, triples=[])
        spec = SLGBSpec(AFF1, BETA, nerve, TransitionData({}))
        assert check_transitions(spec)
        assert check_cocycle(spec)  # vacuous


class TestTransitionData:
    def test_identity_on_diagonal_enforced(self):
        with pytest.raises(ValueError):
            TransitionData({(0, 0): {"a": shear(1)}})

    def test_inverse_pairing_enforced(self):
        with pytest.raises(ValueError):
            TransitionData({
                (0, 1): {"a": shear(1)},
                (1, 0): {"a": shear(1)},  # should be shear(-1)
            })
        TransitionData({
            (0, 1): {"a": shear(1)},
            (1, 0): {"a": shear(-1)},
        })

    def test_missing_direction_is_inverted(self):
        td = TransitionData({(0, 1): {"a": shear(5)}})
        back = td.at(1, 0, "a")
        assert back is not None
        assert back.matrix == shear(-5).matrix


class TestCheckTransitions:
    def test_identity_transitions_pass(self):
        transitions = TransitionData({
            (0, 1): {"a": LinearMap.identity(2), "t": LinearMap.identity(2)},
            (1, 2): {"b": LinearMap.identity(2), "t": LinearMap.identity(2)},
            (0, 2): {"c": LinearMap.identity(2), "t": LinearMap.identity(2)},
        })
        spec = SLGBSpec(AFF1, BETA, three_open_nerve(), transitions)
        assert check_transitions(spec)

    def test_shears_pass_for_any_rational_mu(self):
        rng = random.Random(12)
        for _ in range(10):
            mu = Fraction(rng.randint(-20, 20), rng.randint(1, 5))
            spec = shear_spec(mu01=mu, mu12=2, mu02=mu + 2)
            assert check_transitions(spec)

    def test_scaling_corruption_detected(self):
        spec = shear_spec()
        spec.transitions.maps[(1, 2)]["b"] = LinearMap.from_rows([[1, 0], [0, 2]])
        v = check_transitions(spec)
        assert not v
        assert v.reason == "transition_not_automorphism"
        assert v.witness[0] == (1, 2) and v.witness[1] == "b"
        assert v.witness[2] == "form"


class TestCheckCocycle:
    def test_additive_shears_pass(self):
        spec = shear_spec(1, 2, 3)
        assert check_transitions(spec)
        assert check_cocycle(spec)

    def test_broken_triple_detected(self):
        spec = shear_spec(1, 2, 4)
        assert check_transitions(spec)  # each map is still an automorphism
        v = check_cocycle(spec)
        assert not v
        assert v.reason == "cocycle"
        assert v.witness == ((0, 1, 2), "t")

    def test_composition_convention(self):
        # phi_02 = phi_01 . phi_12 at the shared point
        spec = shear_spec(1, 2, 3)
        t = spec.transitions
        assert (t.at(0, 1, "t").matrix * t.at(1, 2, "t").matrix
                == t.at(0, 2, "t").matrix)


class TestAssociatedQflab:
    def test_trivial_cover_record(self):
        nerve = CoverNerve(opens=["U0"], pairwise={}, triples=[])
        spec = SLGBSpec(AFF1, BETA, nerve, TransitionData({}))
        rec = associated_qflab(spec)
        assert rec.anchor_is_zero
        assert rec.fiber_dim == 2 and rec.fiber_dim_even
        assert "simply connected" in rec.caveat

    def test_shear_spec_record(self):
        rec = associated_qflab(shear_spec())
        assert rec.anchor_is_zero
        assert rec.transitions_verified == 6
        assert rec.fiber_dim_even

    def test_invalid_beta_rejected(self):
        spec = SLGBSpec(AFF1, AltForm.zero(2, 2), three_open_nerve(),
                        shear_spec().transitions)
        with pytest.raises(PreconditionNotVerifiedError):
            associated_qflab(spec)

    def test_broken_cocycle_rejected(self):
        with pytest.raises(PreconditionNotVerifiedError):
            associated_qflab(shear_spec(1, 2, 4))


class TestGroupClosure:
    def test_products_and_inverses_of_passing_transitions_pass(self):
        rng = random.Random(5)
        maps = [shear(Fraction(rng.randint(-8, 8), rng.randint(1, 4)))
                for _ in range(6)]
        for a in maps:
            assert automorphism_check(AFF1, BETA, a)
            assert automorphism_check(AFF1, BETA, a.inverse())
            for b in maps:
                assert automorphism_check(AFF1, BETA, a.compose(b))

    def test_order_independence_of_cocycle_verdict(self):
        # same data, triples listed in a different order: same verdict
        nerve = three_open_nerve()
        spec1 = shear_spec(1, 2, 4)
        v1 = check_cocycle(spec1)
        reordered = CoverNerve(
            opens=nerve.opens,
            pairwise={(0, 2): ["c", "t"], (1, 2): ["b", "t"], (0, 1): ["a", "t"]},
            triples=[((2, 1, 0), ["t"])],
        )
        spec2 = SLGBSpec(AFF1, BETA, reordered, shear_spec(1, 2, 4).transitions)
        v2 = check_cocycle(spec2)
        assert v1.ok == v2.ok == False
        assert v1.witness == v2.witness
