"""Validation of symplectic Lie group bundle data given as transition
cocycles over an abstract cover.

The base topology contributes nothing checkable at this scale, so covers
are nerves: named opens, pairwise overlaps carrying opaque sample points,
and triple overlaps whose points belong to all three pairwise overlaps.
Transitions are exact linear maps on the fiber algebra; membership in the
structure group is decided at the Lie-algebra level (bracket and form
preservation plus invertibility), which identifies the group-level
automorphisms whenever the fiber group is simply connected — every report
carries that caveat.

Transitions are indexed phi[(j, i)]: the map from chart i to chart j on
their overlap, so the compatibility condition on a triple (i, j, k) reads
phi_kj(p) . phi_ji(p) = phi_ki(p).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .ce_complex import AltForm
from .kernel import Verdict
from .lie_algebra import LieAlgebra, LinearMap, automorphism_check
from .qf_search import qf_validate

SIMPLY_CONNECTED_CAVEAT = (
    "structure-group membership tested on the fiber algebra; identification "
    "with group-level automorphisms assumes a simply connected fiber group"
)


class PreconditionNotVerifiedError(RuntimeError):
    """associated_qflab called on data that fails its entry checks."""


class CoverNerve:
    """Abstract cover: opens, sampled pairwise overlaps, triple overlaps.

    Every triple overlap's points must be carried by each of its three
    pairwise overlaps; violations are malformed input, not domain verdicts.
    """

    def __init__(self, opens, pairwise, triples=()):
        self.opens = tuple(opens)
        n = len(self.opens)
        self.pairwise = {}
        for (i, j), points in dict(pairwise).items():
            if not (0 <= i < n and 0 <= j < n and i != j):
                raise ValueError(f"bad overlap pair ({i},{j})")
            self.pairwise[_norm_pair(i, j)] = tuple(points)
        self.triples = {}
        for entry in (triples.items() if isinstance(triples, dict) else triples):
            (i, j, k), points = entry
            key = tuple(sorted((i, j, k)))
            if len(set(key)) != 3 or not all(0 <= t < n for t in key):
                raise ValueError(f"bad triple {key}")
            points = tuple(points)
            for a, b in ((key[0], key[1]), (key[0], key[2]), (key[1], key[2])):
                carried = set(self.pairwise.get((a, b), ()))
                missing = [p for p in points if p not in carried]
                if missing:
                    raise ValueError(
                        f"triple {key} points {missing} absent from overlap ({a},{b})")
            self.triples[key] = points


def _norm_pair(i, j):
    return (i, j) if i < j else (j, i)


class TransitionData:
    """phi[(j, i)][point] = LinearMap from chart i to chart j at the point.

    Structural invariants checked on construction: any stored phi_ii is the
    identity, and whenever both directions of a pair are stored at a point
    they must be exact inverses.
    """

    def __init__(self, maps: dict):
        self.maps = {}
        for (j, i), per_point in maps.items():
            self.maps[(j, i)] = {p: m for p, m in per_point.items()}
        for (j, i), per_point in self.maps.items():
            if j == i:
                for p, m in per_point.items():
                    if m.matrix != LinearMap.identity(m.dim).matrix:
                        raise ValueError(f"phi[{j},{i}] at {p!r} is not the identity")
        for (j, i), per_point in self.maps.items():
            back = self.maps.get((i, j))
            if back is None or j == i:
                continue
            for p, m in per_point.items():
                if p in back and (m.matrix * back[p].matrix
                                  != LinearMap.identity(m.dim).matrix):
                    raise ValueError(
                        f"phi[{j},{i}] and phi[{i},{j}] at {p!r} are not inverse")

    def at(self, j: int, i: int, point) -> LinearMap | None:
        """Transition from chart i to chart j at the point, inverting the
        reverse direction when only that one is stored."""
        if j == i:
            stored = self.maps.get((j, i), {}).get(point)
            if stored is not None:
                return stored
            dims = [m.dim for per in self.maps.values() for m in per.values()]
            return LinearMap.identity(dims[0]) if dims else None
        direct = self.maps.get((j, i), {}).get(point)
        if direct is not None:
            return direct
        back = self.maps.get((i, j), {}).get(point)
        if back is not None:
            return back.inverse()
        return None


@dataclass
class SLGBSpec:
    """Fiber data plus cover plus transitions.

    The fiber pair stands in for a symplectic Lie group through its
    algebra-level cocycle; its validity is enforced by associated_qflab,
    not at construction, so corrupted specs can be built and reported on.
    """

    algebra: LieAlgebra
    beta: AltForm
    nerve: CoverNerve
    transitions: TransitionData


def check_transitions(spec: SLGBSpec) -> Verdict:
    """Every stored transition value must preserve bracket and form exactly.

    Iterates pairs and points in stored order; the witness of the first
    failure is (pair, point, failed condition).
    """
    for (j, i), per_point in spec.transitions.maps.items():
        for point, m in per_point.items():
            v = automorphism_check(spec.algebra, spec.beta, m)
            if not v:
                return Verdict.failed("transition_not_automorphism",
                                      ((j, i), point, v.reason))
    return Verdict.passed()


def check_cocycle(spec: SLGBSpec) -> Verdict:
    """phi_kj(p) . phi_ji(p) = phi_ki(p) at every sampled triple point.

    Triples are examined in sorted-key order and points in listed order;
    the verdict does not depend on that order because all points are
    checked against an exact identity.
    """
    for (i, j, k), points in sorted(spec.nerve.triples.items()):
        for point in points:
            kj = spec.transitions.at(k, j, point)
            ji = spec.transitions.at(j, i, point)
            ki = spec.transitions.at(k, i, point)
            if kj is None or ji is None or ki is None:
                raise ValueError(
                    f"triple ({i},{j},{k}) at {point!r} lacks a transition value")
            if kj.matrix * ji.matrix != ki.matrix:
                return Verdict.failed("cocycle", ((i, j, k), point))
    return Verdict.passed()


@dataclass(frozen=True)
class QFLABRecord:
    """Associated quasi-Frobenius Lie algebra bundle data.

    The anchor of the bundle's algebroid is identically zero (source and
    target coincide), the bracket is fiberwise, and the fiber dimension is
    even; per-overlap transitions are re-verified to preserve the fiber
    bracket and cocycle.
    """

    anchor_is_zero: bool
    fiber_dim: int
    fiber_dim_even: bool
    fiber_algebra_name: str
    opens: tuple
    transitions_verified: int
    caveat: str = SIMPLY_CONNECTED_CAVEAT


def associated_qflab(spec: SLGBSpec) -> QFLABRecord:
    """Emit the Lie algebra bundle data of a validated SLGB spec.

    Raises PreconditionNotVerifiedError when the fiber cocycle, the
    transition checks, or the cocycle condition fail.
    """
    v = qf_validate(spec.algebra, spec.beta)
    if not v:
        raise PreconditionNotVerifiedError(f"fiber form invalid: {v.reason}")
    if not check_transitions(spec):
        raise PreconditionNotVerifiedError("transition check failed")
    if not check_cocycle(spec):
        raise PreconditionNotVerifiedError("cocycle check failed")
    verified = 0
    for (j, i), per_point in spec.transitions.maps.items():
        for point, m in per_point.items():
            if not automorphism_check(spec.algebra, spec.beta, m):
                raise PreconditionNotVerifiedError(
                    f"re-verification failed at {(j, i)} {point!r}")
            verified += 1
    return QFLABRecord(
        anchor_is_zero=True,
        fiber_dim=spec.algebra.dim,
        fiber_dim_even=spec.algebra.dim % 2 == 0,
        fiber_algebra_name=spec.algebra.name or f"dim {spec.algebra.dim}",
        opens=spec.nerve.opens,
        transitions_verified=verified,
    )


def shear(mu, dim: int = 2) -> LinearMap:
    """The aff(1)-fiber shear e1 -> e1 + mu e2, e2 -> e2.

    Shears preserve the bracket and the standard cocycle, and compose
    additively in mu, which makes them convenient cocycle building blocks.
    """
    if dim != 2:
        raise ValueError("shear is the 2-dimensional building block")
    return LinearMap.from_rows([[1, 0], [mu, 1]])
