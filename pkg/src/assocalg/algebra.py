"""Finite-dimensional algebras given by structure constants.

``A.sc[i][j]`` is the coordinate vector of ``e_i e_j`` (0-based internally).
Public constructors and file formats use 1-based basis indices, matching the
way multiplication tables are usually written (``e_1 e_1 = e_2``).

Basis-change convention, used everywhere in the package: the new basis vectors
are the *columns* of ``P`` written in the old basis, and a homomorphism matrix
``M`` sends the coordinate column ``x`` to ``M x``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from .exactnum import (
    ONE,
    ZERO,
    Matrix,
    Scalar,
    Subspace,
    Vector,
    as_scalar,
    invert,
    parse_scalar,
    unit_vector,
    zero_vector,
)

__all__ = [
    "Algebra",
    "AssociativityResult",
    "IndexOutOfRange",
    "DuplicateProduct",
    "DimensionMismatch",
    "SingularMatrix",
    "make_algebra",
    "zero_algebra",
    "multiply",
    "is_associative",
    "subspace_product",
    "power_chain",
    "generated_subalgebra",
    "change_basis",
    "direct_sum",
    "parse_algebra",
    "format_algebra",
]


class IndexOutOfRange(IndexError):
    pass


class DuplicateProduct(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


class SingularMatrix(ValueError):
    pass


class Algebra:
    __slots__ = ("dim", "sc", "label")

    def __init__(self, dim: int, sc: Sequence[Sequence[Sequence]], label: str = ""):
        self.dim = dim
        self.sc = tuple(
            tuple(tuple(as_scalar(c) for c in sc[i][j]) for j in range(dim)) for i in range(dim)
        )
        self.label = label

    def product(self, i: int, j: int) -> Vector:
        """e_i e_j for 0-based indices."""
        return self.sc[i][j]

    def multiply(self, x: Sequence[Scalar], y: Sequence[Scalar]) -> Vector:
        n = self.dim
        if len(x) != n or len(y) != n:
            raise DimensionMismatch(f"elements must have {n} coordinates")
        out = [ZERO] * n
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = self.sc[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                for k, v in enumerate(row[j]):
                    if v:
                        out[k] = out[k] + c * v
        return tuple(out)

    def basis(self) -> List[Vector]:
        return [unit_vector(self.dim, i) for i in range(self.dim)]

    def left_mult(self, x: Sequence[Scalar]) -> Matrix:
        """Matrix of y -> x y."""
        return Matrix.from_columns([self.multiply(x, e) for e in self.basis()], self.dim)

    def right_mult(self, x: Sequence[Scalar]) -> Matrix:
        """Matrix of y -> y x."""
        return Matrix.from_columns([self.multiply(e, x) for e in self.basis()], self.dim)

    def nonzero_products(self) -> List[Tuple[int, int, int, Scalar]]:
        """(i, j, k, coeff) with 1-based indices, in row-major order."""
        out = []
        for i in range(self.dim):
            for j in range(self.dim):
                for k, c in enumerate(self.sc[i][j]):
                    if c:
                        out.append((i + 1, j + 1, k + 1, c))
        return out

    def full_space(self) -> Subspace:
        return Subspace.full(self.dim)

    def with_label(self, label: str) -> "Algebra":
        a = Algebra.__new__(Algebra)
        a.dim, a.sc, a.label = self.dim, self.sc, label
        return a

    def __eq__(self, other):
        if not isinstance(other, Algebra):
            return NotImplemented
        return self.dim == other.dim and self.sc == other.sc

    def __hash__(self):
        return hash((self.dim, self.sc))

    def __repr__(self):
        prods = ", ".join(f"e{i}e{j}={c}*e{k}" for i, j, k, c in self.nonzero_products())
        return f"Algebra({self.label or 'dim ' + str(self.dim)}: {prods or '0'})"


def make_algebra(dim: int, products: Iterable[Tuple[int, int, int, object]], label: str = "") -> Algebra:
    """Build an algebra from its nonzero products ``(i, j, k, coeff)``: e_i e_j += coeff e_k."""
    sc = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
    seen = set()
    for i, j, k, coeff in products:
        for idx in (i, j, k):
            if not 1 <= idx <= dim:
                raise IndexOutOfRange(f"basis index {idx} outside 1..{dim}")
        if (i, j, k) in seen:
            raise DuplicateProduct(f"product e{i}e{j} -> e{k} given twice")
        seen.add((i, j, k))
        sc[i - 1][j - 1][k - 1] = as_scalar(coeff)
    return Algebra(dim, sc, label)


def zero_algebra(dim: int, label: str = "") -> Algebra:
    return make_algebra(dim, [], label)


def multiply(A: Algebra, x: Sequence[Scalar], y: Sequence[Scalar]) -> Vector:
    return A.multiply(x, y)


@dataclass(frozen=True)
class AssociativityResult:
    ok: bool
    witness: Optional[Tuple[int, int, int, Vector, Vector]] = None  # 1-based i, j, k, (e_ie_j)e_k, e_i(e_je_k)

    def __bool__(self):
        return self.ok


def is_associative(A: Algebra) -> AssociativityResult:
    basis = A.basis()
    for i in range(A.dim):
        for j in range(A.dim):
            eij = A.sc[i][j]
            for k in range(A.dim):
                lhs = A.multiply(eij, basis[k])
                rhs = A.multiply(basis[i], A.sc[j][k])
                if lhs != rhs:
                    return AssociativityResult(False, (i + 1, j + 1, k + 1, lhs, rhs))
    return AssociativityResult(True)


def subspace_product(A: Algebra, U: Subspace, V: Subspace) -> Subspace:
    return Subspace.span([A.multiply(u, v) for u in U.basis for v in V.basis], A.dim)


def power_chain(A: Algebra) -> List[Subspace]:
    """[A^1, A^2, ...] ending at the first zero term or the first repeat.

    A^{k+1} = A A^k; associativity makes this the span of all k+1-fold products.
    """
    full = A.full_space()
    chain = [full]
    for _ in range(A.dim + 1):
        if chain[-1].dim == 0:
            break
        nxt = subspace_product(A, full, chain[-1])
        chain.append(nxt)
        if nxt.dim == chain[-2].dim:
            break
    return chain


def generated_subalgebra(A: Algebra, gens: Iterable[Sequence[Scalar]]) -> Subspace:
    """Smallest product-closed subspace containing ``gens``."""
    S = Subspace.span(list(gens), A.dim)
    while True:
        nxt = S.extend(subspace_product(A, S, S).basis)
        if nxt.dim == S.dim:
            return S
        S = nxt


def is_subalgebra(A: Algebra, S: Subspace) -> bool:
    return S.contains_subspace(subspace_product(A, S, S))


def change_basis(A: Algebra, P: Matrix) -> Algebra:
    """The same algebra written in the basis f_j = P e_j (columns of P)."""
    if P.shape != (A.dim, A.dim):
        raise DimensionMismatch("basis change must be dim x dim")
    Pinv = invert(P)
    if Pinv is None:
        raise SingularMatrix("basis change matrix is singular")
    f = P.columns()
    sc = [[Pinv.apply(A.multiply(f[i], f[j])) for j in range(A.dim)] for i in range(A.dim)]
    return Algebra(A.dim, sc, A.label)


def direct_sum(A: Algebra, B: Algebra, label: str = "") -> Algebra:
    n, m = A.dim, B.dim
    sc = [[zero_vector(n + m) for _ in range(n + m)] for _ in range(n + m)]
    for i in range(n):
        for j in range(n):
            sc[i][j] = A.sc[i][j] + zero_vector(m)
    for i in range(m):
        for j in range(m):
            sc[n + i][n + j] = zero_vector(n) + B.sc[i][j]
    return Algebra(n + m, sc, label or f"{A.label or '?'}+{B.label or '?'}")


def quotient(A: Algebra, ideal: Subspace) -> Algebra:
    """A / ideal on the complement spanned by the non-pivot basis vectors."""
    pivots = set(ideal.pivots())
    keep = [c for c in range(A.dim) if c not in pivots]

    def project(v):
        r = ideal.reduce(v)
        return [r[c] for c in keep]

    sc = [[project(A.sc[i][j]) for j in keep] for i in keep]
    return Algebra(len(keep), sc, f"{A.label}/I" if A.label else "")


def restrict(A: Algebra, S: Subspace) -> Algebra:
    """A product-closed subspace as an algebra in its own RREF basis."""
    sc = []
    for u in S.basis:
        row = []
        for v in S.basis:
            coords = S.coordinates(A.multiply(u, v))
            if coords is None:
                raise ValueError("subspace is not closed under the product")
            row.append(coords)
        sc.append(row)
    return Algebra(S.dim, sc, A.label)


# -- text format ---------------------------------------------------------------

_PRODUCT_RE = re.compile(r"^(\d+)\s+(\d+)\s*->\s*(\d+)\s*:\s*(\S+)$")


def parse_algebra(text: str) -> Algebra:
    dim = None
    label = ""
    products = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("dim "):
            dim = int(line.split()[1])
        elif line.startswith("label"):
            label = line[5:].strip()
        else:
            m = _PRODUCT_RE.match(line)
            if m is None:
                raise ValueError(f"line {lineno}: cannot parse {raw!r}")
            i, j, k = (int(g) for g in m.groups()[:3])
            products.append((i, j, k, parse_scalar(m.group(4))))
    if dim is None:
        raise ValueError("algebra file has no 'dim' line")
    return make_algebra(dim, products, label)


def format_algebra(A: Algebra) -> str:
    lines = [f"dim {A.dim}"]
    if A.label:
        lines.append(f"label {A.label}")
    lines.append("# e_i e_j = coeff * e_k")
    for i, j, k, c in A.nonzero_products():
        lines.append(f"{i} {j} -> {k} : {c}")
    return "\n".join(lines) + "\n"
