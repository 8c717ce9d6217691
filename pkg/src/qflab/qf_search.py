"""Decision procedure for quasi-Frobenius structures on a Lie algebra.

A quasi-Frobenius structure is a nondegenerate closed 2-form.  The search
is complete at these dimensions: parametrize the closed 2-forms exactly,
take the polynomial Pfaffian of the generic element, and either

  * certify impossibility (odd dimension, or the generic Pfaffian is the
    zero polynomial, so every cocycle is degenerate), or
  * produce a witness by deterministic seeded sampling of rational
    coefficient vectors, which terminates because a nonzero polynomial
    cannot vanish on all of an expanding rational box.

Every witness is additionally tested for exactness (beta = d theta); when a
potential exists the structure is reported as Frobenius.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .ce_complex import AltForm, ce_differential, cocycle_space, monomial_keys
from .kernel import Poly, RatMatrix, Verdict, pfaffian, poly_pfaffian, solve
from .lie_algebra import LieAlgebra

STATUS_FROBENIUS = "frobenius"
STATUS_QUASI_FROBENIUS = "quasi_frobenius"
STATUS_NONE = "none"

CERT_ODD_DIMENSION = "odd_dimension"
CERT_GENERIC_PFAFFIAN_ZERO = "generic_pfaffian_zero"

_WIDEN_EVERY = 100
_MAX_ATTEMPTS = 100_000


@dataclass(frozen=True)
class QFVerdict:
    """Outcome of the search: a witness, or a certificate of impossibility."""

    status: str
    witness: AltForm | None = None
    potential: AltForm | None = None
    certificate: str | None = None
    certificate_poly: Poly | None = None
    attempts: int = 0

    def __bool__(self) -> bool:
        return self.status != STATUS_NONE


class RationalStream:
    """Deterministic stream of small rationals from a linear congruential
    generator.  Values land in [-box, box] with denominators up to 4; the
    box can be widened by the caller without disturbing the state sequence.
    """

    _A = 1664525
    _C = 1013904223
    _M = 2 ** 32

    def __init__(self, seed: int, box: int = 8):
        self.state = (seed * 2654435761 + 12345) % self._M
        self.box = box

    def _next(self) -> int:
        self.state = (self._A * self.state + self._C) % self._M
        return self.state

    def next_rational(self) -> Fraction:
        den = 1 + self._next() % 4
        span = 2 * self.box * den + 1
        num = self._next() % span - self.box * den
        return Fraction(num, den)

    def next_vector(self, length: int) -> list:
        return [self.next_rational() for _ in range(length)]


def qf_validate(g: LieAlgebra, beta: AltForm) -> Verdict:
    """Pass iff beta is exactly closed and has nonzero Pfaffian.

    On failure reports which condition broke; the cocycle witness is the
    first basis triple (1-based) where d(beta) is nonzero.
    """
    if beta.degree != 2 or beta.algebra_dim != g.dim:
        return Verdict.failed("not_a_2_form", (beta.degree, beta.algebra_dim))
    n = g.dim
    if n >= 3:
        d = ce_differential(g, beta)
        if not d.is_zero():
            key = min(d.coeffs)
            return Verdict.failed("not_closed", tuple(i + 1 for i in key))
    if n % 2 != 0:
        return Verdict.failed("degenerate", ("odd_dimension",))
    if pfaffian(beta.as_matrix()) == 0:
        return Verdict.failed("degenerate", ("pfaffian_zero",))
    return Verdict.passed()


def frobenius_potential(g: LieAlgebra, beta: AltForm) -> AltForm | None:
    """Solve d(theta) = beta for a 1-form theta, or report inexactness.

    The solution (when it exists) uses the deterministic pivot
    parametrization with free coefficients set to zero.
    """
    n = g.dim
    pairs = monomial_keys(n, 2)
    # d(theta)(e_i, e_j) = -theta([e_i, e_j]); unknowns are theta(e_m)
    rows = []
    rhs = []
    for (i, j) in pairs:
        rows.append([-c for c in g.bracket_basis(i, j)])
        rhs.append(beta.value((i, j)))
    theta = solve(RatMatrix.from_rows(rows), rhs) if rows else None
    if theta is None:
        return None
    return AltForm(n, 1, {(m,): theta[m] for m in range(n)})


def generic_cocycle_pfaffian(g: LieAlgebra):
    """Z^2 basis, the generic element's matrix over Poly, and its Pfaffian.

    The generic element is sum_a t_a z_a with one fresh variable per basis
    cocycle; returns (basis, matrix rows, pfaffian polynomial).
    """
    basis = cocycle_space(g, 2)
    m = len(basis)
    n = g.dim
    rows = [[Poly.zero(m) for _ in range(n)] for _ in range(n)]
    for a, z in enumerate(basis):
        t_a = Poly.variable(a, m)
        for (i, j), c in z.coeffs.items():
            rows[i][j] += t_a * c
            rows[j][i] -= t_a * c
    return basis, rows, poly_pfaffian(rows)


def find_quasi_frobenius(g: LieAlgebra, seed: int) -> QFVerdict:
    """Decide quasi-Frobenius existence; deterministic for fixed (g, seed)."""
    n = g.dim
    if n % 2 != 0:
        return QFVerdict(STATUS_NONE, certificate=CERT_ODD_DIMENSION)
    basis, _, pf = generic_cocycle_pfaffian(g)
    if pf.is_zero():
        return QFVerdict(STATUS_NONE, certificate=CERT_GENERIC_PFAFFIAN_ZERO,
                         certificate_poly=pf)
    stream = RationalStream(seed)
    attempts = 0
    while True:
        attempts += 1
        if attempts > _MAX_ATTEMPTS:
            raise RuntimeError("sampling failed to leave the Pfaffian's zero set")
        t = stream.next_vector(len(basis))
        if pf.evaluate(t) == 0:
            if attempts % _WIDEN_EVERY == 0:
                stream.box *= 2
            continue
        witness = AltForm.zero(n, 2)
        for c, z in zip(t, basis):
            witness = witness + z.scale(c)
        potential = frobenius_potential(g, witness)
        if potential is not None:
            return QFVerdict(STATUS_FROBENIUS, witness=witness,
                             potential=potential, attempts=attempts)
        return QFVerdict(STATUS_QUASI_FROBENIUS, witness=witness,
                         attempts=attempts)
