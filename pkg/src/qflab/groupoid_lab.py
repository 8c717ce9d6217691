"""Numeric realizations of t-symplectic structures on matrix-group groupoids.

Three concrete groupoid kinds are realized in explicit charts:

  * action groupoid G x M over a chart M (including the degenerate chart of
    dimension 0, which is just the group G over a point),
  * pair groupoid M x M,
  * the bundle-style groupoid M x G x M with fiberwise group multiplication
    (r, h, q)(q, g, p) = (r, h g, p).

For each kind, multiplication in chart coordinates is built from matrix
products, so left-translation pushforwards restricted to the target-fiber
tangent bundle are computed exactly by bilinearity; finite differences
enter only the fiber closedness probe, where no closed form is available.

The evaluator produced by `build_t_symplectic` realizes a fiberwise
2-cocycle through the left-translation pullback

    w~_g(u, v) = beta_{s(g)}((l_{g^{-1}})_* u, (l_{g^{-1}})_* v),

which is what makes each target fiber a symplectic manifold and left
translations symplectomorphisms.  The defect operations measure how far a
candidate evaluator is from those identities at seeded sample points.

Tolerances: 1e-10 for identities that are algebraically exact and only see
float rounding; 1e-6 for second-order central differences at step 1e-5.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.linalg import expm

from .ce_complex import AltForm
from .kernel import Verdict
from .lie_algebra import LieAlgebra, catalog, direct_sum
from .qf_search import qf_validate

TOL_EXACT = 1e-10
FD_STEP = 1e-5
MEMBERSHIP_TOL = 1e-9

GROUP_COORD_BOUND = 2.0   # group exp-coordinates sampled in [-2, 2]
CHART_BOUND = 1.0         # chart points sampled in [-1, 1]


class FiberAlgebraMismatchError(ValueError):
    """Cocycle lives on a different algebra than the realization's fiber."""


class DegenerateInputError(ValueError):
    """The supplied fiber form fails the exact cocycle/nondegeneracy test."""


class RoundingUnstableError(ValueError):
    """A numeric unit-restriction entry is too far from any small rational."""


def form_to_float(beta: AltForm) -> np.ndarray:
    m = beta.as_matrix()
    n = beta.algebra_dim
    return np.array([[float(m[i, j]) for j in range(n)] for i in range(n)])


class MatrixGroupModel:
    """Matrix Lie group together with an exact structure-constant algebra.

    `lie_basis` spans the Lie algebra inside N x N matrices; commutators of
    the basis are verified against `algebra` on construction, so the exact
    and numeric sides cannot drift apart.
    """

    def __init__(self, name: str, lie_basis: Sequence[np.ndarray],
                 algebra: LieAlgebra, membership_defect,
                 membership_tol: float = MEMBERSHIP_TOL):
        self.name = name
        self.lie_basis = [np.asarray(b, dtype=float) for b in lie_basis]
        self.embed_dim = self.lie_basis[0].shape[0]
        self.algebra = algebra
        self.dim = algebra.dim
        self.membership_tol = membership_tol
        self._membership_defect = membership_defect
        if len(self.lie_basis) != self.dim:
            raise ValueError("basis size does not match algebra dimension")
        flat = np.stack([b.reshape(-1) for b in self.lie_basis], axis=1)
        if np.linalg.matrix_rank(flat) != self.dim:
            raise ValueError("lie_basis matrices are linearly dependent")
        self._basis_pinv = np.linalg.pinv(flat)
        self._check_structure_constants()
        self._check_membership()

    def _check_structure_constants(self):
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                comm = (self.lie_basis[i] @ self.lie_basis[j]
                        - self.lie_basis[j] @ self.lie_basis[i])
                expected = sum(float(c) * self.lie_basis[k]
                               for k, c in enumerate(self.algebra.bracket_basis(i, j)))
                expected = expected if isinstance(expected, np.ndarray) else \
                    np.zeros_like(comm)
                if np.max(np.abs(comm - expected)) > 1e-12:
                    raise ValueError(
                        f"lie_basis commutator ({i},{j}) disagrees with algebra")

    def _check_membership(self):
        rng = np.random.default_rng(0)
        for _ in range(5):
            g = self.exp(rng.uniform(-GROUP_COORD_BOUND, GROUP_COORD_BOUND, self.dim))
            if self._membership_defect(g) > self.membership_tol:
                raise ValueError(f"exp leaves the modeled group {self.name}")

    def exp(self, coords: Sequence[float]) -> np.ndarray:
        x = sum(float(c) * b for c, b in zip(coords, self.lie_basis))
        return expm(x)

    def identity(self) -> np.ndarray:
        return np.eye(self.embed_dim)

    def membership_defect(self, mat: np.ndarray) -> float:
        return self._membership_defect(mat)

    def algebra_coords(self, x: np.ndarray) -> np.ndarray:
        """Coordinates of an algebra element in lie_basis (least squares)."""
        return self._basis_pinv @ np.asarray(x, dtype=float).reshape(-1)

    def tangent_coords(self, g: np.ndarray, xdot: np.ndarray) -> np.ndarray:
        """Coordinates of the left-translated tangent g^{-1} xdot."""
        return self.algebra_coords(np.linalg.solve(g, xdot))

    def random_element(self, rng) -> np.ndarray:
        return self.exp(rng.uniform(-GROUP_COORD_BOUND, GROUP_COORD_BOUND, self.dim))


def aff1_model() -> MatrixGroupModel:
    """aff(1) as upper-triangular [[a, b], [0, 1]] with a > 0."""
    e1 = np.array([[1.0, 0.0], [0.0, 0.0]])
    e2 = np.array([[0.0, 1.0], [0.0, 0.0]])

    def defect(m):
        d = max(abs(m[1, 0]), abs(m[1, 1] - 1.0))
        return d if m[0, 0] > 0 else 1.0

    return MatrixGroupModel("aff(1)", [e1, e2], catalog("aff(1)"), defect)


def translation_model(n: int) -> MatrixGroupModel:
    """R^n as (n+1) x (n+1) translation matrices."""
    basis = []
    for i in range(n):
        b = np.zeros((n + 1, n + 1))
        b[i, n] = 1.0
        basis.append(b)

    def defect(m):
        expected = np.eye(n + 1)
        mask = np.ones_like(m, dtype=bool)
        mask[:n, n] = False  # translation entries are free
        return float(np.max(np.abs((m - expected)[mask])))

    return MatrixGroupModel(f"abelian({n})", basis, catalog(f"abelian({n})"), defect)


def h3_plus_r_model() -> MatrixGroupModel:
    """Heisenberg x R in block form: 3x3 unitriangular plus an exp scalar."""
    def unit(i, j):
        b = np.zeros((4, 4))
        b[i, j] = 1.0
        return b

    basis = [unit(0, 1), unit(1, 2), unit(0, 2), unit(3, 3)]

    def defect(m):
        d = 0.0
        for i in range(3):
            d = max(d, abs(m[i, i] - 1.0), abs(m[i, 3]), abs(m[3, i]))
            for j in range(i):
                d = max(d, abs(m[i, j]))
        return d if m[3, 3] > 0 else 1.0

    return MatrixGroupModel("h3_plus_R", basis, catalog("h3_plus_R"), defect)


_MODEL_BUILDERS = {
    "aff(1)": aff1_model,
    "h3_plus_R": h3_plus_r_model,
}


def matrix_group_model(name: str) -> MatrixGroupModel:
    if name in _MODEL_BUILDERS:
        return _MODEL_BUILDERS[name]()
    import re
    m = re.match(r"^abelian\((\d+)\)$", name)
    if m:
        return translation_model(int(m.group(1)))
    raise KeyError(f"no matrix group model named {name!r}")


# ---------------------------------------------------------------------------
# Groupoid realizations
# ---------------------------------------------------------------------------

def _base_diff(a, b) -> float:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return float(np.max(np.abs(a - b))) if a.size else 0.0


class GroupoidRealization:
    """Shared interface: structure maps, fiber tangents, sampling, self-test."""

    kind = "abstract"

    def __init__(self, base_dim: int, fiber_dim: int, fiber_algebra: LieAlgebra):
        self.base_dim = base_dim
        self.fiber_dim = fiber_dim
        self.total_dim = base_dim + fiber_dim
        self.fiber_algebra = fiber_algebra
        self._self_test()

    # -- structure maps, implemented per kind ------------------------------
    def source(self, pt):
        raise NotImplementedError

    def target(self, pt):
        raise NotImplementedError

    def unit(self, base):
        raise NotImplementedError

    def multiply(self, a, b):
        raise NotImplementedError

    def inverse(self, pt):
        raise NotImplementedError

    def left_push(self, a, tangent):
        """(l_a)_* on ker t_* at a point of t^{-1}(s(a)); exact (bilinear)."""
        raise NotImplementedError

    def fiber_basis_tangent(self, pt, a: int):
        """Left-invariant extension of the a-th fiber algebra basis vector."""
        raise NotImplementedError

    def fiber_flow(self, pt, a: int, eps: float):
        """Time-eps flow of that extension inside the target fiber."""
        raise NotImplementedError

    def point_diff(self, a, b) -> float:
        raise NotImplementedError

    # -- sampling -----------------------------------------------------------
    def sample_base(self, rng) -> np.ndarray:
        return rng.uniform(-CHART_BOUND, CHART_BOUND, self.base_dim)

    def sample_point(self, rng):
        raise NotImplementedError

    def sample_fiber_point(self, base, rng):
        """A point of t^{-1}(base)."""
        raise NotImplementedError

    def sample_tangent(self, pt, rng):
        """Random element of ker t_* at pt (coefficients in [-1, 1])."""
        coeffs = rng.uniform(-1.0, 1.0, self.fiber_dim)
        out = None
        for a, c in enumerate(coeffs):
            term = _scale_tangent(self.fiber_basis_tangent(pt, a), c)
            out = term if out is None else _add_tangent(out, term)
        return out

    def sample_composable(self, rng):
        g = self.sample_point(rng)
        h = self.sample_fiber_point(self.source(g), rng)
        return g, h

    # -- construction self-test ---------------------------------------------
    def _self_test(self, seed: int = 0, count: int = 8):
        rng = np.random.default_rng(seed)
        worst = 0.0
        for _ in range(count):
            g, h = self.sample_composable(rng)
            k = self.sample_fiber_point(self.source(h), rng)
            gh = self.multiply(g, h)
            worst = max(worst, _base_diff(self.source(gh), self.source(h)))
            worst = max(worst, _base_diff(self.target(gh), self.target(g)))
            worst = max(worst,
                        self.point_diff(self.multiply(gh, k),
                                        self.multiply(g, self.multiply(h, k))))
            worst = max(worst,
                        self.point_diff(self.multiply(g, self.unit(self.source(g))), g))
            worst = max(worst,
                        self.point_diff(self.multiply(self.unit(self.target(g)), g), g))
            worst = max(worst,
                        self.point_diff(self.multiply(g, self.inverse(g)),
                                        self.unit(self.target(g))))
            worst = max(worst,
                        self.point_diff(self.multiply(self.inverse(g), g),
                                        self.unit(self.source(g))))
        if worst > TOL_EXACT:
            raise RuntimeError(f"groupoid axioms violated at samples: {worst:.3e}")


def _scale_tangent(t, c):
    if isinstance(t, tuple):
        return tuple(np.asarray(x) * c for x in t)
    return np.asarray(t) * c


def _add_tangent(a, b):
    if isinstance(a, tuple):
        return tuple(x + y for x, y in zip(a, b))
    return a + b


class ActionGroupoidRealization(GroupoidRealization):
    """G x M over M for a matrix group acting on an affine chart.

    Actions: "linear" (embed_dim = chart_dim), "affine" (homogeneous
    coordinates, embed_dim = chart_dim + 1), or "trivial" (chart_dim = 0:
    the group as a groupoid over a point).  Points are (matrix, chart);
    target-fiber tangents are matrices in T_g G, the chart slot frozen.
    """

    kind = "action"

    def __init__(self, model: MatrixGroupModel, chart_dim: int, action: str):
        self.model = model
        self.chart_dim = chart_dim
        self.action = action
        if action == "linear" and model.embed_dim != chart_dim:
            raise ValueError("linear action needs embed_dim == chart_dim")
        if action == "affine" and model.embed_dim != chart_dim + 1:
            raise ValueError("affine action needs embed_dim == chart_dim + 1")
        if action == "trivial" and chart_dim != 0:
            raise ValueError("trivial action is only the chart_dim 0 case")
        super().__init__(chart_dim, model.dim, model.algebra)

    def act(self, mat: np.ndarray, p: np.ndarray) -> np.ndarray:
        if self.action == "linear":
            return mat @ p
        if self.action == "affine":
            return (mat @ np.append(p, 1.0))[:-1]
        return p

    def source(self, pt):
        g, p = pt
        return self.act(np.linalg.inv(g), p)

    def target(self, pt):
        return pt[1]

    def unit(self, base):
        return (self.model.identity(), np.asarray(base, dtype=float))

    def multiply(self, a, b):
        return (a[0] @ b[0], a[1])

    def inverse(self, pt):
        g, p = pt
        gi = np.linalg.inv(g)
        return (gi, self.act(gi, p))

    def left_push(self, a, tangent):
        return a[0] @ tangent

    def fiber_basis_tangent(self, pt, a):
        return pt[0] @ self.model.lie_basis[a]

    def fiber_flow(self, pt, a, eps):
        return (pt[0] @ expm(eps * self.model.lie_basis[a]), pt[1])

    def point_diff(self, a, b):
        d = float(np.max(np.abs(a[0] - b[0])))
        if self.chart_dim:
            d = max(d, float(np.max(np.abs(a[1] - b[1]))))
        return d

    def sample_point(self, rng):
        return (self.model.random_element(rng), self.sample_base(rng))

    def sample_fiber_point(self, base, rng):
        return (self.model.random_element(rng), np.asarray(base, dtype=float))


class PairGroupoidRealization(GroupoidRealization):
    """M x M over M; target t(p, q) = p, fibers {p} x M, tangents are the
    second-slot chart vectors and left translation acts as the identity on
    them."""

    kind = "pair"

    def __init__(self, chart_dim: int):
        self.chart_dim = chart_dim
        super().__init__(chart_dim, chart_dim, catalog(f"abelian({chart_dim})"))

    def source(self, pt):
        return pt[1]

    def target(self, pt):
        return pt[0]

    def unit(self, base):
        b = np.asarray(base, dtype=float)
        return (b, b.copy())

    def multiply(self, a, b):
        return (a[0], b[1])

    def inverse(self, pt):
        return (pt[1], pt[0])

    def left_push(self, a, tangent):
        return tangent

    def fiber_basis_tangent(self, pt, a):
        e = np.zeros(self.chart_dim)
        e[a] = 1.0
        return e

    def fiber_flow(self, pt, a, eps):
        q = pt[1].copy()
        q[a] += eps
        return (pt[0], q)

    def point_diff(self, a, b):
        return float(np.max(np.abs(np.concatenate(a) - np.concatenate(b))))

    def sample_point(self, rng):
        return (self.sample_base(rng), self.sample_base(rng))

    def sample_fiber_point(self, base, rng):
        return (np.asarray(base, dtype=float), self.sample_base(rng))


class MGMRealization(GroupoidRealization):
    """M x G x M over M with (r, h, q)(q, g, p) = (r, h g, p).

    Fibers are {q} x G x M; the fiber algebra is the direct sum of the
    group's algebra and the abelian chart algebra, in that basis order.
    The chart symplectic matrix is part of the realization.
    """

    kind = "mgm"

    def __init__(self, model: MatrixGroupModel, chart_dim: int,
                 chart_form: AltForm):
        self.model = model
        self.chart_dim = chart_dim
        if chart_form.algebra_dim != chart_dim or chart_form.degree != 2:
            raise FiberAlgebraMismatchError("chart form must be a 2-form on the chart")
        if chart_form.as_matrix().det() == 0:
            raise DegenerateInputError("chart form is degenerate")
        self.chart_form = chart_form
        self.chart_mat = form_to_float(chart_form)
        fiber = direct_sum(model.algebra, catalog(f"abelian({chart_dim})"),
                           name=f"{model.algebra.name}+abelian({chart_dim})")
        super().__init__(chart_dim, model.dim + chart_dim, fiber)

    def source(self, pt):
        return pt[2]

    def target(self, pt):
        return pt[0]

    def unit(self, base):
        b = np.asarray(base, dtype=float)
        return (b, self.model.identity(), b.copy())

    def multiply(self, a, b):
        return (a[0], a[1] @ b[1], b[2])

    def inverse(self, pt):
        return (pt[2], np.linalg.inv(pt[1]), pt[0])

    def left_push(self, a, tangent):
        xdot, pdot = tangent
        return (a[1] @ xdot, pdot)

    def fiber_basis_tangent(self, pt, a):
        if a < self.model.dim:
            return (pt[1] @ self.model.lie_basis[a], np.zeros(self.chart_dim))
        e = np.zeros(self.chart_dim)
        e[a - self.model.dim] = 1.0
        return (np.zeros((self.model.embed_dim, self.model.embed_dim)), e)

    def fiber_flow(self, pt, a, eps):
        if a < self.model.dim:
            return (pt[0], pt[1] @ expm(eps * self.model.lie_basis[a]), pt[2])
        p = pt[2].copy()
        p[a - self.model.dim] += eps
        return (pt[0], pt[1], p)

    def point_diff(self, a, b):
        return max(float(np.max(np.abs(a[0] - b[0]))),
                   float(np.max(np.abs(a[1] - b[1]))),
                   float(np.max(np.abs(a[2] - b[2]))))

    def sample_point(self, rng):
        return (self.sample_base(rng), self.model.random_element(rng),
                self.sample_base(rng))

    def sample_fiber_point(self, base, rng):
        return (np.asarray(base, dtype=float), self.model.random_element(rng),
                self.sample_base(rng))


def group_over_point(model: MatrixGroupModel) -> ActionGroupoidRealization:
    """A matrix group viewed as a groupoid over a single point."""
    return ActionGroupoidRealization(model, 0, "trivial")


# ---------------------------------------------------------------------------
# t-symplectic evaluators
# ---------------------------------------------------------------------------

class TSymplecticEvaluator:
    """Evaluates the left-invariant fiberwise 2-form at groupoid points.

    Antisymmetry and bilinearity hold by construction: every evaluation is
    a skew matrix sandwiched between exact tangent coordinates.
    """

    def __init__(self, realization: GroupoidRealization, beta: AltForm,
                 beta_mat: np.ndarray):
        self.realization = realization
        self.beta = beta
        self.beta_mat = beta_mat

    def evaluate(self, pt, u, v) -> float:
        r = self.realization
        if r.kind == "action":
            x = r.model.tangent_coords(pt[0], u)
            y = r.model.tangent_coords(pt[0], v)
            return float(x @ self.beta_mat @ y)
        if r.kind == "pair":
            return float(np.asarray(u) @ self.beta_mat @ np.asarray(v))
        x = r.model.tangent_coords(pt[1], u[0])
        y = r.model.tangent_coords(pt[1], v[0])
        return float(x @ self.beta_mat @ y + u[1] @ r.chart_mat @ v[1])


def build_t_symplectic(realization: GroupoidRealization, beta: AltForm,
                       require_valid: bool = True) -> TSymplecticEvaluator:
    """Left-translation pullback evaluator from a fiber-algebra 2-cocycle.

    `beta` lives on the matrix group's algebra for action/mgm realizations
    and on the abelian chart algebra for pair realizations.  By default the
    exact cocycle + nondegeneracy test is enforced; the falsification
    probes in the test suite disable it deliberately.
    """
    if realization.kind in ("action",):
        expected = realization.model.algebra
    elif realization.kind == "pair":
        expected = realization.fiber_algebra
    elif realization.kind == "mgm":
        expected = realization.model.algebra
    else:
        raise ValueError(f"unknown realization kind {realization.kind}")
    if beta.algebra_dim != expected.dim or beta.degree != 2:
        raise FiberAlgebraMismatchError(
            f"form on dim {beta.algebra_dim} vs fiber algebra dim {expected.dim}")
    if require_valid:
        v = qf_validate(expected, beta)
        if not v:
            raise DegenerateInputError(f"fiber form rejected: {v.reason}")
    return TSymplecticEvaluator(realization, beta, form_to_float(beta))


# ---------------------------------------------------------------------------
# Defect measurements
# ---------------------------------------------------------------------------

def left_invariance_defect(realization: GroupoidRealization, w, seed: int,
                           count: int) -> float:
    """max |w~_{gh}((l_g)_* u, (l_g)_* v) - w~_h(u, v)| over seeded samples.

    Pushforwards are exact, so a correct evaluator only shows float
    rounding here.
    """
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(count):
        g, h = realization.sample_composable(rng)
        u = realization.sample_tangent(h, rng)
        v = realization.sample_tangent(h, rng)
        gh = realization.multiply(g, h)
        pushed = abs(w.evaluate(gh, realization.left_push(g, u),
                                realization.left_push(g, v))
                     - w.evaluate(h, u, v))
        worst = max(worst, pushed)
    return worst


def fiber_closedness_defect(realization: GroupoidRealization, w,
                            base, seed: int, count: int,
                            step: float = FD_STEP) -> float:
    """max |d(w~ restricted to t^{-1}(base))| on left-invariant frames.

    Uses the invariant formula for the exterior derivative of a 2-form:
    directional derivatives along the frame flows are central differences
    (step 1e-5); the frame brackets are exact structure constants of the
    fiber algebra.  Returns 0 for fibers of dimension < 3, where every
    3-form vanishes identically.
    """
    fib = realization.fiber_algebra
    d = realization.fiber_dim
    if d < 3:
        return 0.0
    rng = np.random.default_rng(seed)
    c = [[[float(fib.structure_constant(i, j, m)) for m in range(d)]
          for j in range(d)] for i in range(d)]

    def frame_value(pt, a, b):
        return w.evaluate(pt, realization.fiber_basis_tangent(pt, a),
                          realization.fiber_basis_tangent(pt, b))

    def frame_derivative(pt, c_idx, a, b):
        plus = realization.fiber_flow(pt, c_idx, step)
        minus = realization.fiber_flow(pt, c_idx, -step)
        return (frame_value(plus, a, b) - frame_value(minus, a, b)) / (2 * step)

    worst = 0.0
    for _ in range(count):
        pt = realization.sample_fiber_point(np.asarray(base, dtype=float), rng)
        vals = [[frame_value(pt, a, b) for b in range(d)] for a in range(d)]
        for i in range(d):
            for j in range(i + 1, d):
                for k in range(j + 1, d):
                    total = (frame_derivative(pt, i, j, k)
                             - frame_derivative(pt, j, i, k)
                             + frame_derivative(pt, k, i, j))
                    for m in range(d):
                        total -= c[i][j][m] * vals[m][k]
                        total += c[i][k][m] * vals[m][j]
                        total -= c[j][k][m] * vals[m][i]
                    worst = max(worst, abs(total))
    return worst


def unit_restriction(realization: GroupoidRealization, w) -> AltForm:
    """Evaluate the form at a unit point on fiber frames and round exactly.

    Rounds to the nearest rational with denominator <= 10^6 and demands the
    numeric value sit within 1e-9 of it; the round trip through
    build_t_symplectic must reproduce the input cocycle.
    """
    pt = realization.unit(np.zeros(realization.base_dim))
    d = realization.fiber_dim
    coeffs = {}
    for a in range(d):
        for b in range(a + 1, d):
            val = w.evaluate(pt, realization.fiber_basis_tangent(pt, a),
                             realization.fiber_basis_tangent(pt, b))
            q = Fraction(val).limit_denominator(10 ** 6)
            if abs(val - float(q)) > 1e-9:
                raise RoundingUnstableError(
                    f"entry ({a + 1},{b + 1}) = {val!r} has no small rational")
            if q:
                coeffs[(a, b)] = q
    return AltForm(d, 2, coeffs)


def sampled_fiber_pfaffian_min(realization: GroupoidRealization, w,
                               seed: int, count: int) -> float:
    """min |Pf| of the frame matrix of the form at sampled fiber points.

    |Pf| is recovered as sqrt|det| of the skew frame matrix; this is the
    sampled nondegeneracy bound (never a global claim).
    """
    rng = np.random.default_rng(seed)
    d = realization.fiber_dim
    best = math.inf
    for _ in range(count):
        pt = realization.sample_fiber_point(realization.sample_base(rng), rng)
        m = np.zeros((d, d))
        for a in range(d):
            for b in range(a + 1, d):
                m[a, b] = w.evaluate(pt, realization.fiber_basis_tangent(pt, a),
                                     realization.fiber_basis_tangent(pt, b))
                m[b, a] = -m[a, b]
        best = min(best, math.sqrt(abs(np.linalg.det(m))))
    return best


def multiplicativity_defect(w, g: np.ndarray, h: np.ndarray,
                            u: tuple, v: tuple) -> float:
    """|m*w - pi_1*w - pi_2*w| at one pair of a group-over-a-point evaluator.

    u = (x, y) and v = (x', y') are tangent pairs in T_g G x T_h G;
    pushforwards of the product map are x -> x h and y -> g y.
    """
    r = w.realization
    if r.kind != "action" or r.chart_dim != 0:
        raise ValueError("multiplicativity probe needs a group over a point")
    x, y = u
    x2, y2 = v
    empty = np.zeros(0)
    pt_g, pt_h, pt_gh = (g, empty), (h, empty), (g @ h, empty)
    pulled = w.evaluate(pt_gh, x @ h + g @ y, x2 @ h + g @ y2)
    split = w.evaluate(pt_g, x, x2) + w.evaluate(pt_h, y, y2)
    return abs(pulled - split)


def weinstein_defect(model: MatrixGroupModel, w, seed: int,
                     count: int) -> tuple:
    """(min, max) of the multiplicativity defect over seeded sample pairs.

    For any nonzero left-invariant form the defect cannot vanish
    identically (setting h = e and crossing the two tangent slots isolates
    w_g(x, (l_g)_* y')), so the max is expected to stay away from zero.
    """
    rng = np.random.default_rng(seed)
    lo, hi = math.inf, 0.0
    for _ in range(count):
        g = model.random_element(rng)
        h = model.random_element(rng)

        def tangent(at):
            coeffs = rng.uniform(-1.0, 1.0, model.dim)
            return at @ sum(c * b for c, b in zip(coeffs, model.lie_basis))

        d = multiplicativity_defect(w, g, h, (tangent(g), tangent(h)),
                                    (tangent(g), tangent(h)))
        lo, hi = min(lo, d), max(hi, d)
    return lo, hi


def parity_check(realization: GroupoidRealization) -> Verdict:
    """dim(total space) - dim(base) must be even to carry fiberwise
    symplectic structure."""
    diff = realization.total_dim - realization.base_dim
    if diff % 2 == 0:
        return Verdict.passed()
    return Verdict.failed("odd_fiber_dimension", (realization.total_dim,
                                                  realization.base_dim))
