"""Alternating forms on a Lie algebra and the Chevalley–Eilenberg complex:
the coboundary operator for trivial real coefficients, cocycle spaces, and
Betti numbers.

Monomial bases of Lambda^k are ordered lexicographically on strictly
increasing index tuples, so every matrix of the differential (and hence
every downstream certificate) is reproducible.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .kernel import RatMatrix, Verdict, nullspace
from .lie_algebra import LieAlgebra


class DegreeOverflowError(ValueError):
    """Differential requested on a top-degree form."""


def _sort_with_sign(indices: Sequence[int]):
    """Sort an index tuple, returning (sorted tuple, permutation sign).

    Returns sign 0 when an index repeats.
    """
    idx = list(indices)
    sign = 1
    # insertion sort; counts transpositions exactly
    for a in range(1, len(idx)):
        b = a
        while b > 0 and idx[b - 1] > idx[b]:
            idx[b - 1], idx[b] = idx[b], idx[b - 1]
            sign = -sign
            b -= 1
    for a in range(1, len(idx)):
        if idx[a - 1] == idx[a]:
            return tuple(idx), 0
    return tuple(idx), sign


class AltForm:
    """Alternating k-form with exact rational coefficients.

    Coefficients are keyed by strictly increasing 0-based index tuples;
    zeros are never stored.
    """

    __slots__ = ("algebra_dim", "degree", "coeffs")

    def __init__(self, algebra_dim: int, degree: int, coeffs: dict | None = None):
        if not 0 <= degree <= algebra_dim:
            raise ValueError(f"degree {degree} out of range for dim {algebra_dim}")
        clean = {}
        for key, c in (coeffs or {}).items():
            c = Fraction(c)
            if c == 0:
                continue
            key = tuple(int(i) for i in key)
            if len(key) != degree or any(not 0 <= i < algebra_dim for i in key):
                raise ValueError(f"bad index tuple {key}")
            if any(key[a] >= key[a + 1] for a in range(len(key) - 1)):
                raise ValueError(f"index tuple {key} not strictly increasing")
            clean[key] = c
        super().__setattr__("algebra_dim", algebra_dim)
        super().__setattr__("degree", degree)
        super().__setattr__("coeffs", clean)

    def __setattr__(self, key, value):
        raise AttributeError("AltForm is immutable")

    @classmethod
    def zero(cls, algebra_dim: int, degree: int) -> "AltForm":
        return cls(algebra_dim, degree, {})

    @classmethod
    def basis(cls, algebra_dim: int, key: tuple) -> "AltForm":
        """Dual monomial e^{i1} ^ ... ^ e^{ik} for an increasing 0-based key."""
        return cls(algebra_dim, len(key), {tuple(key): Fraction(1)})

    def value(self, indices: Sequence[int]) -> Fraction:
        """Evaluation on basis vectors e_{i1}, ..., e_{ik}, any order."""
        key, sign = _sort_with_sign(indices)
        if sign == 0:
            return Fraction(0)
        return sign * self.coeffs.get(key, Fraction(0))

    def value_on_vectors(self, u: Sequence, v: Sequence) -> Fraction:
        """Bilinear evaluation for degree-2 forms on coordinate vectors."""
        if self.degree != 2:
            raise ValueError("value_on_vectors requires a 2-form")
        total = Fraction(0)
        for (i, j), c in self.coeffs.items():
            total += c * (Fraction(u[i]) * Fraction(v[j])
                          - Fraction(u[j]) * Fraction(v[i]))
        return total

    def as_matrix(self) -> RatMatrix:
        """Skew matrix B with B[i][j] = value on (e_i, e_j); degree 2 only."""
        if self.degree != 2:
            raise ValueError("as_matrix requires a 2-form")
        n = self.algebra_dim
        entries = [Fraction(0)] * (n * n)
        for (i, j), c in self.coeffs.items():
            entries[i * n + j] = c
            entries[j * n + i] = -c
        return RatMatrix(n, n, entries)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "AltForm") -> "AltForm":
        self._compatible(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            s = out.get(k, Fraction(0)) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return AltForm(self.algebra_dim, self.degree, out)

    def __sub__(self, other: "AltForm") -> "AltForm":
        return self + other.scale(-1)

    def scale(self, c) -> "AltForm":
        c = Fraction(c)
        return AltForm(self.algebra_dim, self.degree,
                       {k: c * v for k, v in self.coeffs.items()})

    def _compatible(self, other: "AltForm"):
        if self.algebra_dim != other.algebra_dim or self.degree != other.degree:
            raise ValueError("forms live on different spaces")

    def __eq__(self, other) -> bool:
        return (isinstance(other, AltForm) and self.algebra_dim == other.algebra_dim
                and self.degree == other.degree and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.algebra_dim, self.degree,
                     frozenset(self.coeffs.items())))

    def sorted_entries(self) -> list:
        return sorted(self.coeffs.items())

    def __repr__(self):
        if self.is_zero():
            return f"AltForm(0; deg {self.degree})"
        bits = []
        for key, c in self.sorted_entries():
            mono = "^".join(f"e{i + 1}" for i in key) or "1"
            bits.append(f"{c}*{mono}")
        return "AltForm(" + " + ".join(bits) + ")"


def monomial_keys(n: int, k: int) -> list:
    """Increasing k-tuples from range(n) in lexicographic order."""
    return list(combinations(range(n), k))


def ce_differential(g: LieAlgebra, omega: AltForm) -> AltForm:
    """Coboundary of a k-form, trivial coefficients:

        (d w)(x_1, ..., x_{k+1}) =
            sum_{a<b} (-1)^{a+b} w([x_a, x_b], x_1, ..., ^x_a, ..., ^x_b, ...)

    With this convention d(theta)(x, y) = -theta([x, y]) for 1-forms.
    """
    if omega.algebra_dim != g.dim:
        raise ValueError("form dimension does not match algebra")
    n, k = g.dim, omega.degree
    if k >= n:
        raise DegreeOverflowError(f"degree {k} form on dim {n} algebra")
    coeffs = {}
    for key in monomial_keys(n, k + 1):
        total = Fraction(0)
        for a in range(k + 1):
            for b in range(a + 1, k + 1):
                sign = 1 if (a + b) % 2 == 0 else -1  # (-1)^{(a+1)+(b+1)}
                rest = key[:a] + key[a + 1:b] + key[b + 1:]
                for m, c in enumerate(g.bracket_basis(key[a], key[b])):
                    if c:
                        total += sign * c * omega.value((m,) + rest)
        if total:
            coeffs[key] = total
    return AltForm(n, k + 1, coeffs)


def differential_matrix(g: LieAlgebra, k: int) -> RatMatrix:
    """Matrix of d: Lambda^k -> Lambda^{k+1} in the monomial bases."""
    n = g.dim
    cols = monomial_keys(n, k)
    rows = monomial_keys(n, k + 1)
    row_index = {key: r for r, key in enumerate(rows)}
    entries = [Fraction(0)] * (len(rows) * len(cols))
    for c, key in enumerate(cols):
        if k >= n:
            break
        image = ce_differential(g, AltForm.basis(n, key))
        for rkey, val in image.coeffs.items():
            entries[row_index[rkey] * len(cols) + c] = val
    return RatMatrix(len(rows), len(cols), entries)


def cocycle_space(g: LieAlgebra, k: int) -> list:
    """Basis of the closed k-forms Z^k, in the deterministic nullspace order."""
    n = g.dim
    keys = monomial_keys(n, k)
    if k >= n:
        # top degree (or above): the differential is the zero map
        return [AltForm.basis(n, key) for key in keys]
    basis = []
    for v in nullspace(differential_matrix(g, k)):
        flat = v.col(0)
        basis.append(AltForm(n, k, {key: flat[c] for c, key in enumerate(keys)}))
    return basis


def betti(g: LieAlgebra) -> list:
    """Betti numbers b_0..b_n of the complex (trivial coefficients)."""
    n = g.dim
    ranks = [differential_matrix(g, k).rank() if k < n else 0 for k in range(n + 1)]
    out = []
    for k in range(n + 1):
        dim_k = len(monomial_keys(n, k))
        prev = ranks[k - 1] if k > 0 else 0
        out.append(dim_k - ranks[k] - prev)
    return out


def d_squared_is_zero(g: LieAlgebra, k: int) -> Verdict:
    """Exact check that d(d(w)) = 0 for every monomial k-form."""
    n = g.dim
    if k + 1 >= n:
        return Verdict.passed()
    for key in monomial_keys(n, k):
        dd = ce_differential(g, ce_differential(g, AltForm.basis(n, key)))
        if not dd.is_zero():
            return Verdict.failed("d_squared", tuple(i + 1 for i in key))
    return Verdict.passed()
