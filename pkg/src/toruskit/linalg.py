"""Exact integer and rational linear algebra.

Everything here works on Python integers and :class:`fractions.Fraction`,
so results are exact regardless of entry size.  Matrices are immutable;
all functions are pure.

Conventions
-----------
* Hermite normal form is row style: pivots strictly move right going down,
  pivots are positive, and the entries above a pivot lie in ``[0, pivot)``.
* A lattice of rank ``k`` in ``Z^n`` is stored through its ``k x n`` HNF
  basis; the trivial lattice has a ``0 x n`` basis.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import NamedTuple, Optional, Sequence

from .exceptions import RankDeficientError, ShapeError

__all__ = [
    "Matrix",
    "Lattice",
    "IntegerSolve",
    "hnf",
    "snf",
    "determinant",
    "is_unimodular",
    "unimodular_inverse",
    "rational_kernel_basis",
    "integer_kernel",
    "rational_kernel_lattice",
    "preimage_lattice",
    "solve_integer_linear",
    "xgcd",
]


def xgcd(a, b):
    """Return ``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def _as_exact(value):
    if isinstance(value, bool):
        raise TypeError("booleans are not matrix entries")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, str):
        return _as_exact(Fraction(value))
    # numpy integers and the like
    if hasattr(value, "__index__"):
        return int(value)
    raise TypeError(f"cannot use {value!r} as an exact matrix entry")


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix with exact entries.

    Entries are ``int`` or :class:`~fractions.Fraction`; integral fractions
    are stored as ``int`` so that equality between integer and rational
    matrices behaves as expected.  ``rows`` and ``cols`` are kept explicitly
    so that ``0 x n`` matrices remember their width.
    """

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ShapeError("matrix dimensions must be non-negative")
        if len(self.entries) != self.rows * self.cols:
            raise ShapeError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                f"entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ShapeError("cols must be given for a matrix without rows")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise ShapeError("ragged rows")
        return cls(len(rows), cols, tuple(_as_exact(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def __getitem__(self, index):
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def tolist(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def T(self) -> "Matrix":
        return Matrix.from_rows([self.column(j) for j in range(self.cols)], cols=self.rows)

    def is_integral(self) -> bool:
        return all(isinstance(x, int) for x in self.entries)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        cols = [other.column(j) for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.append([sum(a * b for a, b in zip(r, c)) for c in cols])
        return Matrix.from_rows(out, cols=other.cols)

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(-x for x in self.entries))

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return Matrix(self.rows, self.cols,
                      tuple(_as_exact(a + b) for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, factor) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(_as_exact(factor * x) for x in self.entries))

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise ShapeError("vstack needs equal column counts")
        return Matrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise ShapeError("hstack needs equal row counts")
        return Matrix.from_rows([self.row(i) + other.row(i) for i in range(self.rows)],
                                cols=self.cols + other.cols)

    def take_rows(self, indices) -> "Matrix":
        return Matrix.from_rows([self.row(i) for i in indices], cols=self.cols)

    def take_cols(self, indices) -> "Matrix":
        indices = list(indices)
        return Matrix.from_rows([[self[i, j] for j in indices] for i in range(self.rows)],
                                cols=len(indices))

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols}, {self.tolist()})"


def _require_integral(m: Matrix, what: str):
    if not m.is_integral():
        raise ShapeError(f"{what} requires an integer matrix")


def hnf(m: Matrix):
    """Row-style Hermite normal form with transform.

    Returns
    -------
    h : Matrix
        ``r x n`` HNF basis of the row span of ``m`` (zero rows removed).
    u : Matrix
        Square unimodular matrix with ``u @ m`` equal to ``h`` stacked on
        ``rows(m) - r`` zero rows.
    """
    _require_integral(m, "hnf")
    R, C = m.shape
    a = m.tolist()
    u = Matrix.identity(R).tolist()
    r = 0
    for c in range(C):
        if r == R:
            break
        for i in range(r + 1, R):
            if a[i][c] == 0:
                continue
            p, q = a[r][c], a[i][c]
            g, x, y = xgcd(p, q)
            pg, qg = p // g, q // g
            for mat in (a, u):
                rr, ri = mat[r], mat[i]
                mat[r] = [x * s + y * t for s, t in zip(rr, ri)]
                mat[i] = [-qg * s + pg * t for s, t in zip(rr, ri)]
        pivot = a[r][c]
        if pivot == 0:
            continue
        if pivot < 0:
            a[r] = [-s for s in a[r]]
            u[r] = [-s for s in u[r]]
            pivot = -pivot
        for i in range(r):
            f = a[i][c] // pivot
            if f:
                a[i] = [s - f * t for s, t in zip(a[i], a[r])]
                u[i] = [s - f * t for s, t in zip(u[i], u[r])]
        r += 1
    return Matrix.from_rows(a[:r], cols=C), Matrix.from_rows(u, cols=R)


def snf(m: Matrix):
    """Smith normal form ``d = u @ m @ v`` with unimodular ``u`` and ``v``.

    ``d`` has the shape of ``m``; its diagonal ``d_1 | d_2 | ...`` is
    non-negative, with any zeros at the end.
    """
    _require_integral(m, "snf")
    R, C = m.shape
    a = m.tolist()
    u = Matrix.identity(R).tolist()
    v = Matrix.identity(C).tolist()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        a[dst] = [s + f * t for s, t in zip(a[dst], a[src])]
        u[dst] = [s + f * t for s, t in zip(u[dst], u[src])]

    def add_col(dst, src, f):
        for row in a:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    for t in range(min(R, C)):
        while True:
            best = None
            for i in range(t, R):
                for j in range(t, C):
                    if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = a[t][t]
            dirty = False
            for i in range(t + 1, R):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, C):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                continue
            bad = next((i for i in range(t + 1, R)
                        for j in range(t + 1, C) if a[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-s for s in a[t]]
            u[t] = [-s for s in u[t]]
        if a[t][t] == 0:
            break
    return (Matrix.from_rows(a, cols=C), Matrix.from_rows(u, cols=R),
            Matrix.from_rows(v, cols=C))


def determinant(m: Matrix):
    """Exact determinant; fraction-free Bareiss elimination for integer input."""
    if not m.is_square():
        raise ShapeError(f"determinant of non-square {m.shape} matrix")
    n = m.rows
    if n == 0:
        return 1
    if not m.is_integral():
        return _fraction_determinant(m)
    a = m.tolist()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _fraction_determinant(m: Matrix):
    a = [[Fraction(x) for x in row] for row in m.tolist()]
    n, det = m.rows, Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            a[i] = [s - f * t for s, t in zip(a[i], a[k])]
    return _as_exact(det)


def is_unimodular(m: Matrix) -> bool:
    """True iff ``m`` is an integer matrix with determinant +1 or -1."""
    if not m.is_square():
        raise ShapeError(f"unimodularity needs a square matrix, got {m.shape}")
    return m.is_integral() and abs(determinant(m)) == 1


def _rref(rows, ncols):
    """Reduced row echelon form over Q. Returns (rows, pivot columns)."""
    a = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [s - f * t for s, t in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def unimodular_inverse(m: Matrix) -> Matrix:
    """Inverse of a unimodular integer matrix (itself integral)."""
    if not is_unimodular(m):
        raise ShapeError("matrix is not unimodular")
    n = m.rows
    aug = [list(m.row(i)) + [1 if i == j else 0 for j in range(n)] for i in range(n)]
    red, _ = _rref(aug, n)
    return Matrix.from_rows([r[n:] for r in red], cols=n)


def rational_kernel_basis(m: Matrix) -> list:
    """Basis of ``{x in Q^n : m x = 0}`` as a list of Fraction vectors."""
    n = m.cols
    red, pivots = _rref(m.tolist(), n)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(x)
    return basis


def _primitive_integer(vec) -> list:
    den = lcm(*(Fraction(x).denominator for x in vec)) if vec else 1
    ints = [int(Fraction(x) * den) for x in vec]
    g = gcd(*ints) if ints else 0
    return [x // g for x in ints] if g > 1 else ints


@dataclass(frozen=True)
class Lattice:
    """Sublattice of ``Z^n`` held by its canonical row HNF basis."""

    ambient_dim: int
    basis: Matrix

    def __post_init__(self):
        if self.basis.cols != self.ambient_dim:
            raise ShapeError("lattice basis width differs from ambient dimension")

    @classmethod
    def from_generators(cls, generators, ambient_dim: Optional[int] = None) -> "Lattice":
        """Lattice spanned over Z by ``generators`` (Matrix or row list)."""
        if not isinstance(generators, Matrix):
            generators = Matrix.from_rows(generators, cols=ambient_dim)
        h, _ = hnf(generators)
        return cls(generators.cols, h)

    @classmethod
    def full(cls, n: int) -> "Lattice":
        return cls(n, Matrix.identity(n))

    @classmethod
    def trivial(cls, n: int) -> "Lattice":
        return cls(n, Matrix.zeros(0, n))

    @property
    def rank(self) -> int:
        return self.basis.rows

    def is_trivial(self) -> bool:
        return self.rank == 0

    def rows(self) -> list:
        return [list(self.basis.row(i)) for i in range(self.rank)]

    def contains(self, u) -> bool:
        """Membership test by reduction against the HNF pivots."""
        u = [_as_exact(x) for x in u]
        if len(u) != self.ambient_dim:
            raise ShapeError("vector length differs from ambient dimension")
        if not all(isinstance(x, int) for x in u):
            return False
        for i in range(self.rank):
            row = self.basis.row(i)
            c = next(j for j, x in enumerate(row) if x)
            q, rem = divmod(u[c], row[c])
            if rem:
                return False
            if q:
                u = [s - q * t for s, t in zip(u, row)]
        return not any(u)

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(self.contains(r) for r in other.rows())

    def index_in_saturation(self) -> int:
        """Product of the nonzero invariant factors of the basis."""
        if self.is_trivial():
            return 1
        d, _, _ = snf(self.basis)
        out = 1
        for i in range(self.rank):
            out *= d[i, i]
        return out


def integer_kernel(m: Matrix) -> Lattice:
    """``{u in Z^n : m u = 0}`` for an integer matrix ``m``.

    The kernel rows are read off the unimodular HNF transform of ``m^T``,
    so the result is automatically saturated.
    """
    _require_integral(m, "integer_kernel")
    h, u = hnf(m.T)
    return Lattice.from_generators(u.take_rows(range(h.rows, u.rows)), m.cols)


def rational_kernel_lattice(m: Matrix) -> Lattice:
    """The full integral kernel ``{u in Z^n : m u = 0}`` of a rational matrix.

    A Q-basis of the kernel is scaled to primitive integer vectors and then
    saturated: with ``U B V = D`` in Smith form, the first ``k`` rows of
    ``V^{-1}`` span ``Q-span(B) \\cap Z^n``.
    """
    n = m.cols
    qbasis = rational_kernel_basis(m)
    if not qbasis:
        return Lattice.trivial(n)
    b = Matrix.from_rows([_primitive_integer(x) for x in qbasis], cols=n)
    _, _, v = snf(b)
    vinv = unimodular_inverse(v)
    return Lattice.from_generators(vinv.take_rows(range(b.rows)), n)


def preimage_lattice(b: Matrix, sub: Lattice) -> Lattice:
    """``{u in sub : b u in Z^d}`` for a rational ``d x n`` matrix ``b``.

    Writing ``u = c S`` over the basis ``S`` of ``sub`` and clearing the
    common denominator ``D`` of ``b S^T`` turns the condition into
    ``N c = D y`` for some integer ``y``; the admissible ``c`` are the
    projection of the integer kernel of ``[N | -D I]``.
    """
    if b.cols != sub.ambient_dim:
        raise ShapeError("preimage: matrix width differs from lattice dimension")
    n, k, d = sub.ambient_dim, sub.rank, b.rows
    if k == 0 or d == 0 or b.is_integral():
        return sub
    bs = b @ sub.basis.T
    den = lcm(*(Fraction(x).denominator for x in bs.entries))
    if den == 1:
        return sub
    nmat = bs.scale(den)
    system = nmat.hstack(Matrix.identity(d).scale(-den))
    ker = integer_kernel(system)
    coeffs = ker.basis.take_cols(range(k))
    return Lattice.from_generators(coeffs @ sub.basis, n)


class IntegerSolve(NamedTuple):
    """Outcome of :func:`solve_integer_linear`.

    ``status`` is ``"integral"``, ``"non-integral"`` or ``"inconsistent"``.
    ``solution`` is set only for ``"integral"``; ``rational_solution`` is set
    whenever a rational solution exists.
    """

    status: str
    solution: Optional[Matrix]
    rational_solution: Optional[Matrix]


def solve_integer_linear(a: Matrix, rhs: Matrix) -> IntegerSolve:
    """Solve ``a x = rhs`` for a full-column-rank rational ``a``.

    Raises
    ------
    RankDeficientError
        If ``a`` does not have full column rank (the solution would not be
        unique).
    """
    if a.rows != rhs.rows:
        raise ShapeError(f"lhs has {a.rows} rows, rhs has {rhs.rows}")
    k, p = a.cols, rhs.cols
    aug = [list(a.row(i)) + list(rhs.row(i)) for i in range(a.rows)]
    red, pivots = _rref(aug, k + p) if aug else ([], [])
    lhs_pivots = [c for c in pivots if c < k]
    if len(lhs_pivots) < k:
        raise RankDeficientError(
            f"coefficient matrix has rank {len(lhs_pivots)} < {k} columns")
    if len(pivots) > k:
        return IntegerSolve("inconsistent", None, None)
    x = Matrix.from_rows([red[i][k:] for i in range(k)], cols=p)
    if x.is_integral():
        return IntegerSolve("integral", x, x)
    return IntegerSolve("non-integral", None, x)
