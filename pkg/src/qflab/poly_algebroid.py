"""Lie algebroids with polynomial coefficients over a single affine chart.

A rank-r algebroid over a chart with n coordinates is given by an anchor
matrix (r rows of polynomial vector-field components) and structure
functions f^c_ab for the basis-section brackets.  Everything the axioms
require — the anchor being a bracket homomorphism, the Jacobi identity with
its Leibniz corrections, the exterior derivative — is then an exact
polynomial identity, checked term by term.

Brackets of general sections phi, tau : chart -> R^r are recovered from the
basis data by bilinearity and the Leibniz rule:

    [phi, tau]^c = sum_{a<b} (phi^a tau^b - phi^b tau^a) f^c_ab
                   + rho(phi) tau^c - rho(tau) phi^c.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .ce_complex import AltForm, _sort_with_sign
from .kernel import Poly, Verdict, poly_diff, poly_pfaffian
from .lie_algebra import LieAlgebra


class NotAnActionError(ValueError):
    """The supplied vector fields do not define a Lie algebra action."""

    def __init__(self, pair: tuple, defect):
        self.pair = pair
        self.defect = defect
        super().__init__(f"action defect at basis pair {pair}: {defect}")


class OddRankError(ValueError):
    """Nondegenerate 2-sections need even rank."""


class PolyVectorField:
    """Vector field on an affine chart with polynomial components."""

    __slots__ = ("chart_dim", "components")

    def __init__(self, components: Sequence[Poly]):
        components = tuple(components)
        n = len(components)
        for c in components:
            if c.num_vars != n:
                raise ValueError("component variable count must equal chart_dim")
        super().__setattr__("chart_dim", n)
        super().__setattr__("components", components)

    def __setattr__(self, key, value):
        raise AttributeError("PolyVectorField is immutable")

    def apply(self, f: Poly) -> Poly:
        """Directional derivative X(f) = sum_j X^j df/dx_j."""
        out = Poly.zero(self.chart_dim)
        for j, comp in enumerate(self.components):
            if not comp.is_zero():
                out = out + comp * poly_diff(f, j)
        return out

    def commutator(self, other: "PolyVectorField") -> "PolyVectorField":
        """Lie bracket of vector fields, [X, Y]^i = X(Y^i) - Y(X^i)."""
        if self.chart_dim != other.chart_dim:
            raise ValueError("chart dimension mismatch")
        return PolyVectorField([self.apply(yi) - other.apply(xi)
                                for xi, yi in zip(self.components, other.components)])

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __add__(self, other: "PolyVectorField") -> "PolyVectorField":
        return PolyVectorField([a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other: "PolyVectorField") -> "PolyVectorField":
        return PolyVectorField([a - b for a, b in zip(self.components, other.components)])

    def scale(self, f: Poly) -> "PolyVectorField":
        return PolyVectorField([f * c for c in self.components])

    def __eq__(self, other):
        return (isinstance(other, PolyVectorField)
                and self.components == other.components)

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        return f"PolyVectorField({list(self.components)})"

    @classmethod
    def zero(cls, chart_dim: int) -> "PolyVectorField":
        return cls([Poly.zero(chart_dim)] * chart_dim)


class PolyAlgebroid:
    """Anchored bracket structure on a trivial rank-r bundle over a chart.

    anchor: r x n matrix of Poly (row a = components of rho(eps_a));
    structure: {(a, b) with a < b: r-tuple of Poly} for [eps_a, eps_b].
    """

    __slots__ = ("rank", "chart_dim", "anchor", "structure")

    def __init__(self, rank: int, chart_dim: int, anchor, structure):
        anchor = tuple(tuple(p for p in row) for row in anchor)
        if len(anchor) != rank or any(len(row) != chart_dim for row in anchor):
            raise ValueError("anchor must be rank x chart_dim")
        for row in anchor:
            for p in row:
                if p.num_vars != chart_dim:
                    raise ValueError("anchor entries must use chart variables")
        clean = {}
        for (a, b), fns in structure.items():
            if not 0 <= a < b < rank:
                raise ValueError(f"structure key ({a},{b}) out of order")
            fns = tuple(fns)
            if len(fns) != rank:
                raise ValueError("structure entry must have rank components")
            if any(f.num_vars != chart_dim for f in fns):
                raise ValueError("structure entries must use chart variables")
            if any(not f.is_zero() for f in fns):
                clean[(a, b)] = fns
        super().__setattr__("rank", rank)
        super().__setattr__("chart_dim", chart_dim)
        super().__setattr__("anchor", anchor)
        super().__setattr__("structure", clean)

    def __setattr__(self, key, value):
        raise AttributeError("PolyAlgebroid is immutable")

    def anchor_field(self, a: int) -> PolyVectorField:
        return PolyVectorField(self.anchor[a])

    def structure_fns(self, a: int, b: int) -> tuple:
        """Components of [eps_a, eps_b] for arbitrary a, b."""
        zero = Poly.zero(self.chart_dim)
        if a == b:
            return (zero,) * self.rank
        if a < b:
            return self.structure.get((a, b), (zero,) * self.rank)
        return tuple(-f for f in self.structure.get((b, a), (zero,) * self.rank))

    def basis_section(self, a: int) -> tuple:
        return tuple(Poly.constant(1 if c == a else 0, self.chart_dim)
                     for c in range(self.rank))

    def anchor_of_section(self, phi: Sequence[Poly]) -> PolyVectorField:
        """rho(phi) = sum_a phi^a rho(eps_a), a polynomial vector field."""
        out = [Poly.zero(self.chart_dim) for _ in range(self.chart_dim)]
        for a, coeff in enumerate(phi):
            if coeff.is_zero():
                continue
            for j in range(self.chart_dim):
                out[j] = out[j] + coeff * self.anchor[a][j]
        return PolyVectorField(out)

    def section_bracket(self, phi: Sequence[Poly], tau: Sequence[Poly]) -> tuple:
        """Bracket of general sections via bilinearity + the Leibniz rule."""
        r = self.rank
        out = [Poly.zero(self.chart_dim) for _ in range(r)]
        for a in range(r):
            if phi[a].is_zero():
                continue
            for b in range(r):
                if tau[b].is_zero() or a == b:
                    continue
                coeff = phi[a] * tau[b]
                for c, f in enumerate(self.structure_fns(a, b)):
                    if not f.is_zero():
                        out[c] = out[c] + coeff * f
        rho_phi = self.anchor_of_section(phi)
        rho_tau = self.anchor_of_section(tau)
        for c in range(r):
            out[c] = out[c] + rho_phi.apply(tau[c]) - rho_tau.apply(phi[c])
        return tuple(out)

    def __repr__(self):
        return f"PolyAlgebroid(rank={self.rank}, chart_dim={self.chart_dim})"


class PolyAlgebroidForm:
    """Alternating k-section of the dual bundle, polynomial coefficients."""

    __slots__ = ("rank", "chart_dim", "degree", "coeffs")

    def __init__(self, rank: int, chart_dim: int, degree: int, coeffs=None):
        clean = {}
        for key, p in (coeffs or {}).items():
            if p.is_zero():
                continue
            key = tuple(int(i) for i in key)
            if len(key) != degree or any(not 0 <= i < rank for i in key):
                raise ValueError(f"bad index tuple {key}")
            if any(key[a] >= key[a + 1] for a in range(len(key) - 1)):
                raise ValueError(f"index tuple {key} not strictly increasing")
            if p.num_vars != chart_dim:
                raise ValueError("coefficients must use chart variables")
            clean[key] = p
        super().__setattr__("rank", rank)
        super().__setattr__("chart_dim", chart_dim)
        super().__setattr__("degree", degree)
        super().__setattr__("coeffs", clean)

    def __setattr__(self, key, value):
        raise AttributeError("PolyAlgebroidForm is immutable")

    def value(self, indices: Sequence[int]) -> Poly:
        key, sign = _sort_with_sign(indices)
        if sign == 0:
            return Poly.zero(self.chart_dim)
        p = self.coeffs.get(key)
        if p is None:
            return Poly.zero(self.chart_dim)
        return p if sign == 1 else -p

    def is_zero(self) -> bool:
        return not self.coeffs

    def matrix(self) -> list:
        """Skew r x r matrix of a degree-2 form, entries Poly."""
        if self.degree != 2:
            raise ValueError("matrix requires a 2-section")
        zero = Poly.zero(self.chart_dim)
        rows = [[zero for _ in range(self.rank)] for _ in range(self.rank)]
        for (i, j), p in self.coeffs.items():
            rows[i][j] = p
            rows[j][i] = -p
        return rows

    def __eq__(self, other):
        return (isinstance(other, PolyAlgebroidForm)
                and (self.rank, self.chart_dim, self.degree) ==
                    (other.rank, other.chart_dim, other.degree)
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.rank, self.degree, frozenset(self.coeffs.items())))

    def __repr__(self):
        return (f"PolyAlgebroidForm(deg {self.degree}: "
                + ", ".join(f"{key}: {p}" for key, p in sorted(self.coeffs.items()))
                + ")")

    @classmethod
    def zero(cls, rank: int, chart_dim: int, degree: int) -> "PolyAlgebroidForm":
        return cls(rank, chart_dim, degree, {})


def tangent_algebroid(n: int) -> PolyAlgebroid:
    """Tangent bundle of the chart: identity anchor, vanishing structure."""
    anchor = [[Poly.constant(1 if i == j else 0, n) for j in range(n)]
              for i in range(n)]
    return PolyAlgebroid(n, n, anchor, {})


def point_algebroid(g: LieAlgebra) -> PolyAlgebroid:
    """A Lie algebra as an algebroid over the zero-dimensional chart."""
    structure = {}
    for (a, b), comp in g.brackets.items():
        structure[(a, b)] = tuple(Poly.constant(comp.get(c, 0), 0)
                                  for c in range(g.dim))
    return PolyAlgebroid(g.dim, 0, [[] for _ in range(g.dim)], structure)


def form_on_point_algebroid(w: AltForm) -> PolyAlgebroidForm:
    """Constant-coefficient copy of an alternating form, chart_dim 0."""
    return PolyAlgebroidForm(w.algebra_dim, 0, w.degree,
                             {k: Poly.constant(c, 0) for k, c in w.coeffs.items()})


def action_algebroid(g: LieAlgebra, action: Sequence[PolyVectorField]) -> PolyAlgebroid:
    """Action algebroid of a Lie algebra acting by polynomial vector fields.

    Requires the assignment e_a -> (e_a)_M to be a bracket homomorphism into
    vector fields; the check is an exact polynomial identity, and its first
    failure is raised as NotAnActionError with the defect field.
    """
    n = g.dim
    if len(action) != n:
        raise ValueError("need one vector field per basis element")
    chart_dim = action[0].chart_dim
    for x in action:
        if x.chart_dim != chart_dim:
            raise ValueError("all fields must share the chart")
    for a in range(n):
        for b in range(a + 1, n):
            lhs = action[a].commutator(action[b])
            rhs = PolyVectorField.zero(chart_dim)
            for m, c in enumerate(g.bracket_basis(a, b)):
                if c:
                    rhs = rhs + action[m].scale(Poly.constant(c, chart_dim))
            defect = lhs - rhs
            if not defect.is_zero():
                raise NotAnActionError((a + 1, b + 1), defect)
    structure = {}
    for (a, b), comp in g.brackets.items():
        structure[(a, b)] = tuple(Poly.constant(comp.get(c, 0), chart_dim)
                                  for c in range(n))
    anchor = [x.components for x in action]
    return PolyAlgebroid(n, chart_dim, anchor, structure)


def linear_action_fields(g: LieAlgebra, matrices: Sequence[Sequence[Sequence]]) -> list:
    """Infinitesimal action fields of a matrix realization on its chart.

    For the flow through exp(-t x), the field of the basis matrix X_a is
    x_M(p) = -X_a p, which turns the matrix commutator into a bracket
    homomorphism.  `matrices[a]` is the n x n rational matrix of e_a.
    """
    n = len(matrices[0])
    fields = []
    for mat in matrices:
        comps = []
        for i in range(n):
            p = Poly.zero(n)
            for j in range(n):
                c = Fraction(mat[i][j])
                if c:
                    p = p - c * Poly.variable(j, n)
            comps.append(p)
        fields.append(PolyVectorField(comps))
    return fields


def algebroid_differential(a: PolyAlgebroid, w: PolyAlgebroidForm) -> PolyAlgebroidForm:
    """Exterior derivative on basis sections:

        (d w)(X_1..X_{k+1}) = sum_i (-1)^{i+1} rho(X_i) w(.. ^X_i ..)
                              + sum_{i<j} (-1)^{i+j} w([X_i,X_j], .. ^ ..)

    with anchor rows acting as polynomial derivations.  Top-degree input is
    allowed; the result is then the empty form.
    """
    if (w.rank, w.chart_dim) != (a.rank, a.chart_dim):
        raise ValueError("form does not live on this algebroid")
    r, k = a.rank, w.degree
    coeffs = {}
    for key in combinations(range(r), k + 1):
        total = Poly.zero(a.chart_dim)
        for i in range(k + 1):
            rest = key[:i] + key[i + 1:]
            val = w.value(rest)
            if not val.is_zero():
                term = a.anchor_field(key[i]).apply(val)
                total = total + term if i % 2 == 0 else total - term
        for i in range(k + 1):
            for j in range(i + 1, k + 1):
                sign = 1 if (i + j) % 2 == 0 else -1
                rest = key[:i] + key[i + 1:j] + key[j + 1:]
                for c, f in enumerate(a.structure_fns(key[i], key[j])):
                    if f.is_zero():
                        continue
                    val = w.value((c,) + rest)
                    if not val.is_zero():
                        total = total + sign * f * val
        if not total.is_zero():
            coeffs[key] = total
    return PolyAlgebroidForm(r, a.chart_dim, k + 1, coeffs)


def algebroid_validate(a: PolyAlgebroid) -> Verdict:
    """Exact axiom check on basis sections.

    (1) the anchor is a bracket homomorphism: rho([eps_a, eps_b]) equals the
        vector-field commutator of the anchor rows;
    (2) the full section bracket (Leibniz terms included) satisfies the
        Jacobi identity on all basis triples.
    """
    r = a.rank
    for i in range(r):
        for j in range(i + 1, r):
            lhs = a.anchor_of_section(a.structure_fns(i, j))
            rhs = a.anchor_field(i).commutator(a.anchor_field(j))
            if not (lhs - rhs).is_zero():
                return Verdict.failed("anchor", (i + 1, j + 1))
    for i in range(r):
        for j in range(i + 1, r):
            for k in range(j + 1, r):
                ei, ej, ek = (a.basis_section(t) for t in (i, j, k))
                total = list(a.section_bracket(a.section_bracket(ei, ej), ek))
                for c, p in enumerate(a.section_bracket(a.section_bracket(ej, ek), ei)):
                    total[c] = total[c] + p
                for c, p in enumerate(a.section_bracket(a.section_bracket(ek, ei), ej)):
                    total[c] = total[c] + p
                if any(not p.is_zero() for p in total):
                    return Verdict.failed("jacobi", (i + 1, j + 1, k + 1))
    return Verdict.passed()


class QFAlgebroidVerdict:
    """Outcome of the quasi-Frobenius check over a chart.

    Closedness is an exact polynomial identity.  Nondegeneracy over a chart
    is reported as "generic plus sampled": the polynomial Pfaffian, and its
    value at each supplied sample point.  A nonzero Pfaffian can still
    vanish on a subvariety, so sample failures are listed instead of any
    global claim.
    """

    __slots__ = ("ok", "closed", "pfaffian", "sample_values", "zero_samples",
                 "reason")

    def __init__(self, ok, closed, pfaffian, sample_values, zero_samples, reason=""):
        self.ok = ok
        self.closed = closed
        self.pfaffian = pfaffian
        self.sample_values = sample_values
        self.zero_samples = zero_samples
        self.reason = reason

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return (f"QFAlgebroidVerdict(ok={self.ok}, closed={self.closed}, "
                f"zero_samples={self.zero_samples}, reason={self.reason!r})")


def qf_algebroid_check(a: PolyAlgebroid, w: PolyAlgebroidForm,
                       sample_points: Sequence[Sequence]) -> QFAlgebroidVerdict:
    """Closed + generically nondegenerate test for a 2-section."""
    if a.rank % 2 != 0:
        raise OddRankError(f"rank {a.rank} is odd; nondegeneracy is impossible")
    if w.degree != 2:
        raise ValueError("expected a 2-section")
    closed = algebroid_differential(a, w).is_zero()
    pf = poly_pfaffian(w.matrix()) if a.rank > 0 else Poly.constant(1, a.chart_dim)
    values = [pf.evaluate(pt) for pt in sample_points]
    zero_samples = [i for i, v in enumerate(values) if v == 0]
    if not closed:
        return QFAlgebroidVerdict(False, False, pf, values, zero_samples,
                                  "not_closed")
    if pf.is_zero():
        return QFAlgebroidVerdict(False, True, pf, values, zero_samples,
                                  "pfaffian_identically_zero")
    if zero_samples:
        return QFAlgebroidVerdict(False, True, pf, values, zero_samples,
                                  "degenerate_at_samples")
    return QFAlgebroidVerdict(True, True, pf, values, zero_samples)


def algebroid_morphism_check(a: PolyAlgebroid, a2: PolyAlgebroid,
                             phi: Sequence[Sequence[Poly]]) -> Verdict:
    """Bundle-map test phi: A -> A' over the identity on the chart.

    `phi` is an r' x r matrix of Poly: phi(eps_a) = sum_{a'} phi[a'][a] eps'_{a'}.
    Checks rho' o phi = rho and phi[eps_a, eps_b] = [phi eps_a, phi eps_b]
    exactly, the right side expanded with its Leibniz terms.
    """
    if a.chart_dim != a2.chart_dim:
        return Verdict.failed("chart_mismatch", (a.chart_dim, a2.chart_dim))
    r, r2 = a.rank, a2.rank
    if len(phi) != r2 or any(len(row) != r for row in phi):
        return Verdict.failed("shape", (len(phi), r2))
    images = [tuple(phi[c2][c] for c2 in range(r2)) for c in range(r)]
    for c in range(r):
        lhs = a2.anchor_of_section(images[c])
        rhs = a.anchor_field(c)
        if not (lhs - rhs).is_zero():
            return Verdict.failed("anchor_compat", (c + 1,))
    for i in range(r):
        for j in range(i + 1, r):
            bracket_img = [Poly.zero(a.chart_dim) for _ in range(r2)]
            for c, f in enumerate(a.structure_fns(i, j)):
                if f.is_zero():
                    continue
                for c2 in range(r2):
                    bracket_img[c2] = bracket_img[c2] + f * images[c][c2]
            rhs = a2.section_bracket(images[i], images[j])
            if any(not (x - y).is_zero() for x, y in zip(bracket_img, rhs)):
                return Verdict.failed("bracket_compat", (i + 1, j + 1))
    return Verdict.passed()
