"""Exact arithmetic over the Gaussian rationals Q(i) and dense linear algebra.

Everything downstream computes on :class:`Scalar` values, so there is no
rounding anywhere: a check that passes here is a proof at the sampled point.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple

__all__ = [
    "Scalar",
    "Matrix",
    "Subspace",
    "NonSquareError",
    "ZERO",
    "ONE",
    "I",
    "as_scalar",
    "parse_scalar",
    "scalar_arith",
    "rref",
    "rank",
    "kernel",
    "solve",
    "invert",
    "zero_vector",
    "unit_vector",
    "vec_add",
    "vec_sub",
    "vec_scale",
    "is_zero_vector",
]


class NonSquareError(ValueError):
    pass


class Scalar:
    """A Gaussian rational ``re + im*i`` with both parts in lowest terms."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    # Fraction already normalizes, so construction from parts is canonical.

    @classmethod
    def _make(cls, re: Fraction, im: Fraction) -> "Scalar":
        s = object.__new__(cls)
        s.re = re
        s.im = im
        return s

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def conjugate(self) -> "Scalar":
        return Scalar._make(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __add__(self, other):
        if type(other) is not Scalar:
            other = as_scalar(other)
        return Scalar._make(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if type(other) is not Scalar:
            other = as_scalar(other)
        return Scalar._make(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return as_scalar(other) - self

    def __neg__(self):
        return Scalar._make(-self.re, -self.im)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if type(other) is not Scalar:
            other = as_scalar(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return Scalar._make(a * c, b)
        return Scalar._make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if type(other) is not Scalar:
            other = as_scalar(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero scalar")
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return Scalar._make(a / c, b)
        n = c * c + d * d
        return Scalar._make((a * c + b * d) / n, (b * c - a * d) / n)

    def __rtruediv__(self, other):
        return as_scalar(other) / self

    def __pow__(self, k):
        if not isinstance(k, int):
            raise TypeError("only integer powers of scalars are exact")
        if k < 0:
            return ONE / (self ** -k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if type(other) is Scalar:
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)


def as_scalar(x) -> Scalar:
    if type(x) is Scalar:
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar._make(Fraction(x), Fraction(0))
    if isinstance(x, complex):
        raise TypeError("floating complex values are not exact; use Scalar")
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Scalar")


def _fmt_frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(s: Scalar) -> str:
    if not s.im:
        return _fmt_frac(s.re)
    im = "i" if s.im == 1 else "-i" if s.im == -1 else _fmt_frac(s.im) + "*i"
    if not s.re:
        return im
    sign = "" if im.startswith("-") else "+"
    return _fmt_frac(s.re) + sign + im


_RAT = r"\d+(?:/\d+)?"
_REAL_RE = re.compile(rf"^[+-]?{_RAT}$")
_IMAG_RE = re.compile(rf"^(?P<re>[+-]?{_RAT}(?=[+-]))?(?P<isign>[+-])?(?:(?P<icoef>{_RAT})\*)?i$")


def parse_scalar(text: str) -> Scalar:
    """Parse ``p``, ``p/q``, ``p/q+r/s*i``, ``i``, ``-2*i`` (no spaces)."""
    text = text.strip()
    try:
        if _REAL_RE.match(text):
            return Scalar._make(Fraction(text), Fraction(0))
        m = _IMAG_RE.match(text)
        if m is None:
            raise ValueError(f"malformed scalar {text!r}")
        re_val = Fraction(m.group("re")) if m.group("re") else Fraction(0)
        im_val = Fraction(m.group("icoef")) if m.group("icoef") else Fraction(1)
        if m.group("isign") == "-":
            im_val = -im_val
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in scalar {text!r}") from None
    return Scalar._make(re_val, im_val)


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


# -- vectors are plain tuples of Scalars ------------------------------------

Vector = Tuple[Scalar, ...]


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def vec_add(u: Sequence[Scalar], v: Sequence[Scalar]) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Sequence[Scalar], v: Sequence[Scalar]) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c: Scalar, v: Sequence[Scalar]) -> Vector:
    return tuple(c * a for a in v)


def is_zero_vector(v: Sequence[Scalar]) -> bool:
    return not any(v)


# -- matrices ----------------------------------------------------------------


class Matrix:
    """Immutable dense matrix of Scalars.

    Acts on column vectors: ``m.apply(x)`` is ``m @ x``.
    """

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: Optional[int] = None):
        self.rows = tuple(tuple(as_scalar(x) for x in r) for r in rows)
        self.nrows = len(self.rows)
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        self.ncols = ncols
        for r in self.rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix rows")

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([unit_vector(n, i) for i in range(n)], n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls([zero_vector(ncols)] * nrows, ncols)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: Optional[int] = None) -> "Matrix":
        if nrows is None:
            nrows = len(cols[0]) if cols else 0
        return cls([[c[i] for c in cols] for i in range(nrows)], len(cols))

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def entries(self) -> Vector:
        return tuple(x for r in self.rows for x in r)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "Matrix":
        return Matrix(zip(*self.rows), self.nrows) if self.rows else Matrix([], 0)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def apply(self, x: Sequence[Scalar]) -> Vector:
        if len(x) != self.ncols:
            raise ValueError("dimension mismatch in matrix-vector product")
        out = []
        for r in self.rows:
            acc = ZERO
            for a, b in zip(r, x):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch in matrix product")
        cols = [self.apply(c) for c in other.columns()]
        return Matrix.from_columns(cols, self.nrows) if cols else Matrix([[]] * self.nrows, 0)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self):
        return "Matrix(" + repr([[str(x) for x in r] for r in self.rows]) + ")"

    def format(self) -> str:
        """Matrix file format: one row per line, whitespace-separated scalars."""
        return "\n".join(" ".join(str(x) for x in r) for r in self.rows)


def parse_matrix(text: str) -> Matrix:
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append([parse_scalar(tok) for tok in line.split()])
    return Matrix(rows)


def _rref_rows(rows: list, ncols: int) -> Tuple[list, list]:
    """In-place Gauss-Jordan on a list of lists; returns (rows, pivot columns)."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((k for k in range(r, nrows) if rows[k][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pivot_row = rows[r]
        inv = ONE / pivot_row[c]
        if inv != ONE:
            pivot_row = [x * inv if x else x for x in pivot_row]
            rows[r] = pivot_row
        for k in range(nrows):
            if k != r:
                f = rows[k][c]
                if f:
                    rows[k] = [a - f * b if b else a for a, b in zip(rows[k], pivot_row)]
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(m: Matrix) -> Tuple[Matrix, int]:
    """Reduced row-echelon form and rank; the input is not modified."""
    rows, pivots = _rref_rows([list(r) for r in m.rows], m.ncols)
    return Matrix(rows, m.ncols), len(pivots)


def rank(m: Matrix) -> int:
    return rref(m)[1]


def _kernel_basis(rows: list, ncols: int) -> list:
    red, pivots = _rref_rows(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for row, p in zip(red, pivots):
            if row[f]:
                v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def kernel(m: Matrix) -> "Subspace":
    """Null space {x : m x = 0}, returned in canonical (RREF) form."""
    return Subspace.span(_kernel_basis([list(r) for r in m.rows], m.ncols), m.ncols)


def kernel_of_rows(rows: Sequence[Sequence[Scalar]], ncols: int) -> "Subspace":
    """Kernel of the linear system whose equations are ``rows``."""
    return Subspace.span(_kernel_basis([list(r) for r in rows], ncols), ncols)


def solve(m: Matrix, rhs: Sequence[Scalar]) -> Optional[Vector]:
    """One exact solution of m x = rhs, or None when the system is inconsistent."""
    if len(rhs) != m.nrows:
        raise ValueError("rhs length must equal the number of rows")
    aug = [list(r) + [as_scalar(b)] for r, b in zip(m.rows, rhs)]
    red, pivots = _rref_rows(aug, m.ncols + 1)
    if pivots and pivots[-1] == m.ncols:
        return None
    x = [ZERO] * m.ncols
    for row, p in zip(red, pivots):
        x[p] = row[m.ncols]
    return tuple(x)


def invert(m: Matrix) -> Optional[Matrix]:
    if not m.is_square():
        raise NonSquareError(f"cannot invert a {m.nrows}x{m.ncols} matrix")
    n = m.nrows
    aug = [list(r) + list(unit_vector(n, i)) for i, r in enumerate(m.rows)]
    red, pivots = _rref_rows(aug, n)
    if len(pivots) < n:
        return None
    return Matrix([row[n:] for row in red], n)


def det(m: Matrix) -> Scalar:
    if not m.is_square():
        raise NonSquareError("determinant needs a square matrix")
    rows = [list(r) for r in m.rows]
    n = len(rows)
    d = ONE
    for c in range(n):
        p = next((k for k in range(c, n) if rows[k][c]), None)
        if p is None:
            return ZERO
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            d = -d
        piv = rows[c][c]
        d = d * piv
        for k in range(c + 1, n):
            f = rows[k][c] / piv
            if f:
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[c])]
    return d


# -- subspaces ---------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """A linear subspace stored by its unique RREF basis.

    Two equal subspaces have identical ``basis`` tuples, so ``==`` decides
    equality.
    """

    ambient_dim: int
    basis: Tuple[Vector, ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        rows = [[as_scalar(x) for x in v] for v in vectors]
        for r in rows:
            if len(r) != ambient_dim:
                raise ValueError("vector length does not match ambient dimension")
        red, pivots = _rref_rows(rows, ambient_dim)
        return cls(ambient_dim, tuple(tuple(r) for r in red[: len(pivots)]))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, tuple(unit_vector(n, i) for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def pivots(self) -> list:
        return [next(k for k, x in enumerate(v) if x) for v in self.basis]

    def reduce(self, v: Sequence[Scalar]) -> Vector:
        """Remainder of v after eliminating the pivot coordinates of the basis."""
        v = list(v)
        for b, p in zip(self.basis, self.pivots()):
            f = v[p]
            if f:
                v = [x - f * y if y else x for x, y in zip(v, b)]
        return tuple(v)

    def contains(self, v: Sequence[Scalar]) -> bool:
        return is_zero_vector(self.reduce(v))

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def join(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.basis + other.basis, self.ambient_dim)

    def extend(self, vectors: Iterable[Sequence]) -> "Subspace":
        return Subspace.span(list(self.basis) + list(vectors), self.ambient_dim)

    def annihilator_rows(self) -> list:
        """Rows of a matrix whose kernel is exactly this subspace."""
        return list(_kernel_basis([list(b) for b in self.basis], self.ambient_dim))

    def intersect(self, other: "Subspace") -> "Subspace":
        rows = self.annihilator_rows() + other.annihilator_rows()
        return kernel_of_rows(rows, self.ambient_dim) if rows else Subspace.full(self.ambient_dim)

    def coordinates(self, v: Sequence[Scalar]) -> Optional[Vector]:
        """Coefficients of v in this basis, or None when v is not in the span."""
        if not self.contains(v):
            return None
        return tuple(v[p] for p in self.pivots())

    def __repr__(self):
        return f"Subspace(dim={self.dim}, basis={[[str(x) for x in b] for b in self.basis]})"
