"""Finite-dimensional Lie algebras over the rationals, given by structure
constants.  Provides Jacobi validation, a small named catalog, derivation
algebras, and automorphism membership tests for a pair (algebra, 2-form).

Bracket data is stored for i < j only; antisymmetry is implicit.  All
indices are 0-based internally; verdict witnesses are reported 1-based to
match the file formats.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .kernel import RatMatrix, Verdict, nullspace, pfaffian


class UnknownNameError(KeyError):
    """Catalog lookup with an unrecognized algebra name."""


class DegenerateFormError(ValueError):
    """A nondegenerate 2-form was required but the given one is degenerate."""


class LieAlgebra:
    """Structure-constant presentation of a Lie algebra.

    `brackets` maps (i, j) with i < j to a dict {k: c} meaning
    [e_i, e_j] = sum_k c^k_ij e_k.  Zero coefficients are not stored.
    """

    __slots__ = ("dim", "basis_names", "brackets", "name")

    def __init__(self, dim: int, brackets: dict, basis_names=None, name: str = ""):
        clean = {}
        for (i, j), comp in brackets.items():
            if not 0 <= i < j < dim:
                raise ValueError(f"bracket key ({i},{j}) must satisfy 0 <= i < j < dim")
            entry = {int(k): Fraction(c) for k, c in comp.items() if Fraction(c) != 0}
            for k in entry:
                if not 0 <= k < dim:
                    raise ValueError(f"bracket target index {k} out of range")
            if entry:
                clean[(i, j)] = entry
        if basis_names is None:
            basis_names = tuple(f"e{i + 1}" for i in range(dim))
        if len(basis_names) != dim:
            raise ValueError("basis_names length mismatch")
        super().__setattr__("dim", dim)
        super().__setattr__("brackets", clean)
        super().__setattr__("basis_names", tuple(basis_names))
        super().__setattr__("name", name)

    def __setattr__(self, key, value):
        raise AttributeError("LieAlgebra is immutable")

    def structure_constant(self, i: int, j: int, k: int) -> Fraction:
        """c^k_ij for arbitrary i, j (antisymmetry applied)."""
        if i == j:
            return Fraction(0)
        if i < j:
            return self.brackets.get((i, j), {}).get(k, Fraction(0))
        return -self.brackets.get((j, i), {}).get(k, Fraction(0))

    def bracket_basis(self, i: int, j: int) -> list:
        """Coordinates of [e_i, e_j]."""
        out = [Fraction(0)] * self.dim
        if i == j:
            return out
        sign = 1
        if i > j:
            i, j, sign = j, i, -1
        for k, c in self.brackets.get((i, j), {}).items():
            out[k] = sign * c
        return out

    def bracket(self, u: Sequence, v: Sequence) -> list:
        """Bilinear extension of the bracket to coordinate vectors."""
        out = [Fraction(0)] * self.dim
        for (i, j), comp in self.brackets.items():
            f = Fraction(u[i]) * Fraction(v[j]) - Fraction(u[j]) * Fraction(v[i])
            if f:
                for k, c in comp.items():
                    out[k] += f * c
        return out

    def derived_subalgebra_dim(self) -> int:
        """Dimension of [g, g] (span of all basis bracket values)."""
        vals = [comp for comp in self.brackets.values()]
        if not vals:
            return 0
        rows = []
        for comp in vals:
            rows.append([comp.get(k, Fraction(0)) for k in range(self.dim)])
        return RatMatrix.from_rows(rows).rank()

    def __repr__(self):
        return f"LieAlgebra({self.name or 'dim ' + str(self.dim)})"


def validate(g: LieAlgebra) -> Verdict:
    """Check the Jacobi identity exactly on all basis triples.

    Fails with the first violating (i, j, k, l), reported 1-based.
    """
    n = g.dim
    basis = [[Fraction(1) if t == s else Fraction(0) for t in range(n)] for s in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            bij = g.bracket_basis(i, j)
            for k in range(j + 1, n):
                total = g.bracket(bij, basis[k])
                bjk = g.bracket_basis(j, k)
                for t, c in enumerate(g.bracket(bjk, basis[i])):
                    total[t] += c
                bki = g.bracket_basis(k, i)
                for t, c in enumerate(g.bracket(bki, basis[j])):
                    total[t] += c
                for l in range(n):
                    if total[l] != 0:
                        return Verdict.failed("jacobi", (i + 1, j + 1, k + 1, l + 1))
    return Verdict.passed()


def direct_sum(a: LieAlgebra, b: LieAlgebra, name: str = "") -> LieAlgebra:
    brackets = {k: dict(v) for k, v in a.brackets.items()}
    for (i, j), comp in b.brackets.items():
        brackets[(i + a.dim, j + a.dim)] = {k + a.dim: c for k, c in comp.items()}
    return LieAlgebra(a.dim + b.dim, brackets, name=name or f"{a.name}+{b.name}")


_ABELIAN_RE = re.compile(r"^abelian\((\d+)\)$")

CATALOG_NAMES = (
    "abelian(3)",
    "aff(1)",
    "heisenberg3",
    "h3_plus_R",
    "so(3)",
    "sl(2)",
    "so3_plus_so3",
    "oscillator4",
)


def catalog(name: str) -> LieAlgebra:
    """Named small Lie algebras with fixed bracket conventions.

    Conventions (1-based basis):
      aff(1):        [e1,e2] = e2
      heisenberg3:   [e1,e2] = e3
      h3_plus_R:     heisenberg3 + abelian(1), so only [e1,e2] = e3 in dim 4
      so(3):         [e1,e2] = e3, [e2,e3] = e1, [e3,e1] = e2
      sl(2):         [e1,e2] = e3, [e3,e1] = 2 e1, [e3,e2] = -2 e2
      so3_plus_so3:  two commuting so(3) blocks, dim 6
      oscillator4:   [e1,e2] = e3, [e4,e1] = e2, [e4,e2] = -e1
      abelian(n):    all brackets zero
    """
    m = _ABELIAN_RE.match(name)
    if m:
        return LieAlgebra(int(m.group(1)), {}, name=name)
    if name == "aff(1)":
        return LieAlgebra(2, {(0, 1): {1: 1}}, name=name)
    if name == "heisenberg3":
        return LieAlgebra(3, {(0, 1): {2: 1}}, name=name)
    if name == "h3_plus_R":
        return LieAlgebra(4, {(0, 1): {2: 1}}, name=name)
    if name == "so(3)":
        return LieAlgebra(3, {(0, 1): {2: 1}, (1, 2): {0: 1}, (0, 2): {1: -1}},
                          name=name)
    if name == "sl(2)":
        return LieAlgebra(3, {(0, 1): {2: 1}, (0, 2): {0: -2}, (1, 2): {1: 2}},
                          name=name)
    if name == "so3_plus_so3":
        return direct_sum(catalog("so(3)"), catalog("so(3)"), name=name)
    if name == "oscillator4":
        return LieAlgebra(4, {(0, 1): {2: 1}, (0, 3): {1: -1}, (1, 3): {0: 1}},
                          name=name)
    raise UnknownNameError(name)


@dataclass(frozen=True)
class LinearMap:
    """Linear endomorphism in basis coordinates (column k = image of e_k)."""

    matrix: RatMatrix

    def __post_init__(self):
        if self.matrix.rows != self.matrix.cols:
            raise ValueError("LinearMap must be square")

    @property
    def dim(self) -> int:
        return self.matrix.rows

    def apply(self, vec: Sequence) -> list:
        return self.matrix.apply(vec)

    def compose(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(self.matrix * other.matrix)

    def inverse(self) -> "LinearMap":
        return LinearMap(self.matrix.inverse())

    @classmethod
    def identity(cls, n: int) -> "LinearMap":
        return cls(RatMatrix.identity(n))

    @classmethod
    def from_rows(cls, rows) -> "LinearMap":
        return cls(RatMatrix.from_rows(rows))


def _derivation_equations(g: LieAlgebra) -> list:
    """Rows of the linear system D[e_i,e_j] = [De_i,e_j] + [e_i,De_j].

    Unknowns are the n^2 matrix entries d[r][c] flattened as r*n + c,
    where column c holds the coordinates of D e_c.
    """
    n = g.dim
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            for l in range(n):
                row = [Fraction(0)] * (n * n)
                for m in range(n):
                    c = g.structure_constant(i, j, m)
                    if c:
                        row[l * n + m] += c
                for k in range(n):
                    c = g.structure_constant(k, j, l)
                    if c:
                        row[k * n + i] -= c
                    c = g.structure_constant(i, k, l)
                    if c:
                        row[k * n + j] -= c
                rows.append(row)
    return rows


def _maps_from_nullspace(vectors, n: int) -> list:
    out = []
    for v in vectors:
        flat = v.col(0)
        out.append(LinearMap.from_rows(
            [flat[r * n:(r + 1) * n] for r in range(n)]))
    return out


def derivations(g: LieAlgebra) -> list:
    """Basis of the derivation algebra Der(g), via an exact nullspace."""
    n = g.dim
    rows = _derivation_equations(g)
    if not rows:
        return _maps_from_nullspace(nullspace(RatMatrix(0, n * n, [])), n)
    return _maps_from_nullspace(nullspace(RatMatrix.from_rows(rows)), n)


def symplectic_derivations(g: LieAlgebra, beta) -> list:
    """Derivations D additionally satisfying beta(Dx, y) + beta(x, Dy) = 0.

    Raises DegenerateFormError when beta is not a nondegenerate 2-form.
    """
    n = g.dim
    bm = beta.as_matrix()
    if n % 2 != 0 or pfaffian(bm) == 0:
        raise DegenerateFormError("form has zero Pfaffian")
    rows = _derivation_equations(g)
    for i in range(n):
        for j in range(i + 1, n):
            row = [Fraction(0)] * (n * n)
            for k in range(n):
                if bm[k, j]:
                    row[k * n + i] += bm[k, j]
                if bm[i, k]:
                    row[k * n + j] += bm[i, k]
            rows.append(row)
    return _maps_from_nullspace(nullspace(RatMatrix.from_rows(rows)), n)


def automorphism_check(g: LieAlgebra, beta, a: LinearMap) -> Verdict:
    """Membership test for the automorphism group of (g, beta).

    Passes iff A[e_i,e_j] = [Ae_i, Ae_j] and beta(Ae_i, Ae_j) = beta(e_i,e_j)
    hold exactly on all basis pairs, and det(A) != 0.
    """
    n = g.dim
    if a.dim != n:
        return Verdict.failed("dimension_mismatch", (a.dim, n))
    if a.matrix.det() == 0:
        return Verdict.failed("singular", ())
    cols = [a.matrix.col(k) for k in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            lhs = a.apply(g.bracket_basis(i, j))
            rhs = g.bracket(cols[i], cols[j])
            if lhs != rhs:
                return Verdict.failed("bracket", (i + 1, j + 1))
            if beta.value_on_vectors(cols[i], cols[j]) != beta.value((i, j)):
                return Verdict.failed("form", (i + 1, j + 1))
    return Verdict.passed()
