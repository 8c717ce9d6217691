"""Exact arithmetic kernel: rational scalars, dense rational matrices,
sparse multivariate polynomials, and the handful of linear-algebra
primitives (nullspace, rank, determinant, Pfaffian) everything else uses.

All values are immutable after construction; every operation is a pure
function over exact rationals, so results are reproducible byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction


def rat(num, den=1) -> Fraction:
    """Shorthand rational constructor, accepts ints or 'p/q' strings."""
    if isinstance(num, str):
        return Fraction(num)
    return Fraction(num, den)


class KernelError(Exception):
    pass


class OddDimensionError(KernelError):
    """Pfaffian of an odd-sized matrix was requested."""


class NotSkewSymmetricError(KernelError):
    """Pfaffian input is not exactly skew-symmetric."""


@dataclass(frozen=True)
class Verdict:
    """Pass/fail result carrying a first-failure witness for debugging.

    `witness` is kept JSON-friendly (tuples of ints/strings) so verdicts can
    be embedded in reports unchanged.
    """

    ok: bool
    reason: str = ""
    witness: tuple = ()

    def __bool__(self) -> bool:
        return self.ok

    @staticmethod
    def passed() -> "Verdict":
        return Verdict(True)

    @staticmethod
    def failed(reason: str, witness: tuple = ()) -> "Verdict":
        return Verdict(False, reason, witness)


# ---------------------------------------------------------------------------
# Rational matrices
# ---------------------------------------------------------------------------

class RatMatrix:
    """Dense matrix with Fraction entries, stored row-major and immutable."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[Fraction]):
        entries = tuple(Fraction(e) for e in entries)
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        super().__setattr__("rows", rows)
        super().__setattr__("cols", cols)
        super().__setattr__("entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("RatMatrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RatMatrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        flat = []
        for row in rows:
            if len(row) != c:
                raise ValueError("ragged rows")
            flat.extend(Fraction(x) for x in row)
        return cls(r, c, flat)

    @classmethod
    def zero(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, [Fraction(0)] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, [Fraction(1) if i == j else Fraction(0)
                          for i in range(n) for j in range(n)])

    @classmethod
    def column(cls, values: Sequence) -> "RatMatrix":
        return cls(len(values), 1, [Fraction(v) for v in values])

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows,
                         [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def __eq__(self, other) -> bool:
        return (isinstance(other, RatMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        self._same_shape(other)
        return RatMatrix(self.rows, self.cols,
                         [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        self._same_shape(other)
        return RatMatrix(self.rows, self.cols,
                         [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> "RatMatrix":
        return RatMatrix(self.rows, self.cols, [-a for a in self.entries])

    def scale(self, c) -> "RatMatrix":
        c = Fraction(c)
        return RatMatrix(self.rows, self.cols, [c * a for a in self.entries])

    def __mul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} * {other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                out.append(sum((ri[k] * other[k, j] for k in range(self.cols)),
                               Fraction(0)))
        return RatMatrix(self.rows, other.cols, out)

    def apply(self, vec: Sequence) -> list:
        """Matrix-vector product on a plain coordinate list."""
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return [sum((self[i, k] * Fraction(vec[k]) for k in range(self.cols)),
                    Fraction(0)) for i in range(self.rows)]

    def _same_shape(self, other: "RatMatrix"):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")

    def is_skew_symmetric(self) -> bool:
        if self.rows != self.cols:
            return False
        return all(self[i, j] == -self[j, i]
                   for i in range(self.rows) for j in range(i, self.cols))

    def rref(self) -> tuple:
        """Reduced row echelon form.  Returns (rows-as-lists, pivot column list).

        Pivot selection is by position (first nonzero, scanning down), which
        makes the output deterministic for a given input.
        """
        m = self.to_rows()
        nr, nc = self.rows, self.cols
        pivots = []
        r = 0
        for c in range(nc):
            if r == nr:
                break
            pr = next((i for i in range(r, nr) if m[i][c] != 0), None)
            if pr is None:
                continue
            m[r], m[pr] = m[pr], m[r]
            inv = Fraction(1) / m[r][c]
            m[r] = [x * inv for x in m[r]]
            for i in range(nr):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
        return m, pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def det(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        m = self.to_rows()
        n = self.rows
        sign = 1
        out = Fraction(1)
        for c in range(n):
            pr = next((i for i in range(c, n) if m[i][c] != 0), None)
            if pr is None:
                return Fraction(0)
            if pr != c:
                m[c], m[pr] = m[pr], m[c]
                sign = -sign
            out *= m[c][c]
            inv = Fraction(1) / m[c][c]
            for i in range(c + 1, n):
                if m[i][c] != 0:
                    f = m[i][c] * inv
                    m[i] = [a - f * b for a, b in zip(m[i], m[c])]
        return sign * out

    def inverse(self) -> "RatMatrix":
        if self.rows != self.cols:
            raise ValueError("inverse of non-square matrix")
        n = self.rows
        aug = RatMatrix(n, 2 * n,
                        [self[i, j] if j < n else
                         (Fraction(1) if j - n == i else Fraction(0))
                         for i in range(n) for j in range(2 * n)])
        red, pivots = aug.rref()
        if pivots[:n] != list(range(n)):
            raise ValueError("matrix is singular")
        return RatMatrix.from_rows([row[n:] for row in red])

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows))
        return f"RatMatrix({self.rows}x{self.cols}: {body})"


def nullspace(m: RatMatrix) -> list:
    """Basis of the right kernel {v : m v = 0} as column vectors.

    Parametrized from the reduced echelon form: one basis vector per free
    column, carrying 1 in that slot.  Output order follows ascending free
    column index, so the basis is reproducible.
    """
    red, pivots = m.rref()
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        basis.append(RatMatrix.column(v))
    return basis


def solve(m: RatMatrix, b: Sequence) -> list | None:
    """One exact solution of m x = b with free variables set to 0, or None.

    The particular solution is deterministic (pivot variables carry the
    whole solution), matching the nullspace parametrization.
    """
    if len(b) != m.rows:
        raise ValueError("rhs length mismatch")
    aug = RatMatrix(m.rows, m.cols + 1,
                    [m[i, j] if j < m.cols else Fraction(b[i])
                     for i in range(m.rows) for j in range(m.cols + 1)])
    red, pivots = aug.rref()
    if m.cols in pivots:
        return None  # inconsistent: pivot in the rhs column
    x = [Fraction(0)] * m.cols
    for r, p in enumerate(pivots):
        x[p] = red[r][m.cols]
    return x


def _check_skew_even(n_rows: int, n_cols: int, entry, is_zero) -> None:
    if n_rows != n_cols:
        raise NotSkewSymmetricError("matrix is not square")
    if n_rows % 2 != 0:
        raise OddDimensionError(f"Pfaffian undefined for odd size {n_rows}")
    for i in range(n_rows):
        for j in range(i, n_cols):
            if not is_zero(entry(i, j), entry(j, i)):
                raise NotSkewSymmetricError(f"entry ({i},{j}) breaks skew symmetry")


def pfaffian(m: RatMatrix) -> Fraction:
    """Exact Pfaffian of an even skew-symmetric rational matrix.

    Recursive expansion along the first remaining row; O(n!!) terms is fine
    at the desk-scale sizes this kernel serves, and keeps the code auditable.
    """
    _check_skew_even(m.rows, m.cols, lambda i, j: m[i, j],
                     lambda a, b: a == -b)

    def pf(active: tuple) -> Fraction:
        if not active:
            return Fraction(1)
        i0 = active[0]
        total = Fraction(0)
        for pos in range(1, len(active)):
            a = m[i0, active[pos]]
            if a == 0:
                continue
            rest = active[1:pos] + active[pos + 1:]
            # expansion sign (-1)^j for the j-th column, j = pos+1 one-based
            term = a * pf(rest)
            total += term if pos % 2 == 1 else -term
        return total

    return pf(tuple(range(m.rows)))


def poly_pfaffian(rows: Sequence[Sequence["Poly"]]) -> "Poly":
    """Pfaffian of a skew matrix of polynomials, by the same expansion.

    An identically-zero result comes back as the empty (zero) polynomial.
    """
    n = len(rows)
    if n == 0:
        raise NotSkewSymmetricError("empty matrix")
    nv = rows[0][0].num_vars
    _check_skew_even(n, len(rows[0]), lambda i, j: rows[i][j],
                     lambda a, b: (a + b).is_zero())
    zero = Poly.zero(nv)
    one = Poly.constant(1, nv)

    def pf(active: tuple) -> Poly:
        if not active:
            return one
        i0 = active[0]
        total = zero
        for pos in range(1, len(active)):
            a = rows[i0][active[pos]]
            if a.is_zero():
                continue
            rest = active[1:pos] + active[pos + 1:]
            term = a * pf(rest)
            total = total + term if pos % 2 == 1 else total - term
        return total

    return pf(tuple(range(n)))


# ---------------------------------------------------------------------------
# Sparse multivariate polynomials
# ---------------------------------------------------------------------------

class Poly:
    """Sparse polynomial over the rationals in a fixed number of variables.

    Terms map exponent tuples (length num_vars) to nonzero Fraction
    coefficients; the zero polynomial stores no terms.
    """

    __slots__ = ("num_vars", "terms")

    def __init__(self, num_vars: int, terms: dict | None = None):
        clean = {}
        for expo, coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            expo = tuple(int(e) for e in expo)
            if len(expo) != num_vars or any(e < 0 for e in expo):
                raise ValueError(f"bad exponent tuple {expo} for {num_vars} variables")
            clean[expo] = coeff
        super().__setattr__("num_vars", num_vars)
        super().__setattr__("terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def zero(cls, num_vars: int) -> "Poly":
        return cls(num_vars, {})

    @classmethod
    def constant(cls, c, num_vars: int) -> "Poly":
        c = Fraction(c)
        return cls(num_vars, {(0,) * num_vars: c} if c else {})

    @classmethod
    def variable(cls, index: int, num_vars: int) -> "Poly":
        if not 0 <= index < num_vars:
            raise ValueError(f"variable index {index} out of range")
        expo = tuple(1 if i == index else 0 for i in range(num_vars))
        return cls(num_vars, {expo: Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in expo) for expo in self.terms)

    def constant_value(self) -> Fraction:
        return self.terms.get((0,) * self.num_vars, Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.num_vars != self.num_vars:
                raise ValueError("polynomials over different variable counts")
            return other
        return Poly.constant(other, self.num_vars)

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        out = dict(self.terms)
        for expo, c in other.terms.items():
            s = out.get(expo, Fraction(0)) + c
            if s:
                out[expo] = s
            else:
                out.pop(expo, None)
        return Poly(self.num_vars, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.num_vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        other = self._coerce(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                expo = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(expo, Fraction(0)) + c1 * c2
                if s:
                    out[expo] = s
                else:
                    out.pop(expo, None)
        return Poly(self.num_vars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly.constant(1, self.num_vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.num_vars == other.num_vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.constant(other, self.num_vars)
        return NotImplemented

    def __hash__(self):
        return hash((self.num_vars, frozenset(self.terms.items())))

    def evaluate(self, point: Sequence) -> Fraction:
        """Exact evaluation at a rational point."""
        if len(point) != self.num_vars:
            raise ValueError("point length mismatch")
        point = [Fraction(p) for p in point]
        total = Fraction(0)
        for expo, c in self.terms.items():
            term = c
            for x, e in zip(point, expo):
                if e:
                    term *= x ** e
            total += term
        return total

    def sorted_terms(self) -> list:
        """Terms in ascending lexicographic exponent order (deterministic)."""
        return sorted(self.terms.items())

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        bits = []
        for expo, c in self.sorted_terms():
            mono = "*".join(f"x{i + 1}^{e}" for i, e in enumerate(expo) if e)
            bits.append(f"{c}" + (f"*{mono}" if mono else ""))
        return "Poly(" + " + ".join(bits) + ")"


def poly_diff(p: Poly, var: int) -> Poly:
    """Formal partial derivative with respect to variable `var`."""
    if not 0 <= var < p.num_vars:
        raise ValueError(f"variable index {var} out of range")
    out = {}
    for expo, c in p.terms.items():
        e = expo[var]
        if e == 0:
            continue
        new = list(expo)
        new[var] = e - 1
        out[tuple(new)] = c * e
    return Poly(p.num_vars, out)
