"""Homomorphism checks, parametrized automorphism families, isomorphism search.

A matrix ``M`` represents the linear map ``x -> M x`` on coordinate columns,
so the image of ``e_j`` is column ``j`` of ``M``.  Printed automorphism
matrices are tried under that reading first ("columns") and, failing that,
transposed ("rows").
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .algebra import Algebra, DimensionMismatch
from .exactnum import ONE, ZERO, Matrix, Scalar, Vector, as_scalar, invert
from .expr import Expr, InexactRoot

__all__ = [
    "AutFamilyTemplate",
    "HomCheckResult",
    "FamilyReport",
    "ConstraintViolated",
    "InexactRoot",
    "is_homomorphism",
    "is_automorphism",
    "instantiate_family",
    "sample_assignments",
    "verify_family",
    "search_isomorphism",
]

CONVENTIONS = ("columns", "rows")


class ConstraintViolated(ValueError):
    pass


@dataclass(frozen=True)
class HomCheckResult:
    ok: bool
    witness: Optional[Tuple[int, int, Vector, Vector]] = None  # 1-based i, j, M(e_i e_j), (M e_i)(M e_j)

    def __bool__(self):
        return self.ok


def is_homomorphism(A: Algebra, B: Algebra, M: Matrix) -> HomCheckResult:
    if M.shape != (B.dim, A.dim):
        raise DimensionMismatch(f"expected a {B.dim}x{A.dim} matrix, got {M.nrows}x{M.ncols}")
    images = M.columns()
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = M.apply(A.sc[i][j])
            rhs = B.multiply(images[i], images[j])
            if lhs != rhs:
                return HomCheckResult(False, (i + 1, j + 1, lhs, rhs))
    return HomCheckResult(True)


def is_automorphism(A: Algebra, M: Matrix) -> HomCheckResult:
    if not M.is_square() or M.nrows != A.dim:
        raise DimensionMismatch("automorphism matrix must be dim x dim")
    res = is_homomorphism(A, A, M)
    if res.ok and invert(M) is None:
        return HomCheckResult(False, None)
    return res


@dataclass(frozen=True)
class AutFamilyTemplate:
    """A printed automorphism matrix with symbolic entries."""

    entries: Tuple[Tuple[Expr, ...], ...]
    note: str = ""

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[str]], note: str = "") -> "AutFamilyTemplate":
        return cls(tuple(tuple(Expr(c) for c in r) for r in rows), note)

    @property
    def dim(self) -> int:
        return len(self.entries)

    @property
    def params(self) -> Tuple[str, ...]:
        names = set()
        for r in self.entries:
            for e in r:
                names |= e.names
        return tuple(sorted(names))

    def root_orders(self) -> Dict[str, int]:
        out: Dict[str, int] = {}
        for r in self.entries:
            for e in r:
                for name, k in e.root_names.items():
                    out[name] = max(out.get(name, 1), k)
        return out

    def rows_text(self) -> List[List[str]]:
        return [[e.text for e in r] for r in self.entries]


def instantiate_family(t: AutFamilyTemplate, assignment: Mapping[str, object]) -> Matrix:
    """Evaluate a template; denominators and invertibility are implicit constraints."""
    env = {k: as_scalar(v) for k, v in assignment.items()}
    try:
        M = Matrix([[e.evaluate(env) for e in r] for r in t.entries], t.dim)
    except ZeroDivisionError as exc:
        raise ConstraintViolated(f"vanishing denominator: {exc}") from None
    if invert(M) is None:
        raise ConstraintViolated("instantiated matrix is singular")
    return M


_RANDOM_VALUES = [Fraction(v) for v in (-3, -2, -1, 1, 2, 3)] + [
    Fraction(1, 2), Fraction(-2, 3), Fraction(3, 2), Fraction(5, 4),
]


def sample_assignments(
    t: AutFamilyTemplate,
    samples: int,
    seed: int = 0,
    fixed: Optional[Mapping[str, object]] = None,
) -> List[Dict[str, Scalar]]:
    """Structured then seeded-random admissible assignments.

    ``fixed`` pins names that are not free family parameters (the algebra's
    own parameter, e.g. alpha).  A parameter under a k-th root is drawn as
    s**k so the root stays rational.  Assignments violating an implicit
    constraint are skipped.
    """
    fixed = {k: as_scalar(v) for k, v in (fixed or {}).items()}
    names = tuple(k for k in t.params if k not in fixed)
    orders = t.root_orders()
    rng = random.Random(seed)
    if not names:
        samples = min(samples, 1)

    def lift(raw: Dict[str, Fraction]) -> Dict[str, Scalar]:
        env = {k: Scalar(v ** orders.get(k, 1)) for k, v in raw.items()}
        env.update(fixed)
        return env

    candidates = [
        {k: Fraction(1) for k in names},
        {k: Fraction(i + 2) for i, k in enumerate(names)},
        {k: Fraction(-1) if i % 2 else Fraction(2) for i, k in enumerate(names)},
    ]
    out: List[Dict[str, Scalar]] = []
    attempts = 0
    while len(out) < samples and attempts < 50 * max(samples, 1):
        if attempts < len(candidates):
            raw = candidates[attempts]
        else:
            raw = {k: rng.choice(_RANDOM_VALUES) for k in names}
        attempts += 1
        env = lift(raw)
        try:
            instantiate_family(t, env)
        except (ConstraintViolated, InexactRoot):
            continue
        if env not in out:
            out.append(env)
    return out


@dataclass
class FamilyReport:
    ok: bool
    convention: Optional[str]
    samples_checked: int
    detail: str = ""
    failures: List[Tuple[Dict[str, Scalar], HomCheckResult]] = field(default_factory=list)


def _oriented(M: Matrix, convention: str) -> Matrix:
    return M if convention == "columns" else M.transpose()


def _check_convention(A: Algebra, mats: List[Matrix], assigns, convention: str) -> FamilyReport:
    failures = []
    oriented = [_oriented(M, convention) for M in mats]
    for env, M in zip(assigns, oriented):
        res = is_automorphism(A, M)
        if not res.ok:
            failures.append((env, res))
    if failures:
        return FamilyReport(False, convention, len(mats), f"{len(failures)}/{len(mats)} samples fail", failures)
    # group sanity on the verified samples: products and inverses
    for X, Y in zip(oriented, oriented[1:] + oriented[:1]):
        if not is_automorphism(A, X @ Y).ok:
            return FamilyReport(False, convention, len(mats), "product of samples is not an automorphism")
        if not is_automorphism(A, invert(X)).ok:
            return FamilyReport(False, convention, len(mats), "inverse of a sample is not an automorphism")
    return FamilyReport(True, convention, len(mats), "all samples, products and inverses verified")


def verify_family(
    A: Algebra,
    t: AutFamilyTemplate,
    samples: int = 3,
    seed: int = 0,
    fixed: Optional[Mapping[str, object]] = None,
) -> FamilyReport:
    if t.dim != A.dim:
        raise DimensionMismatch("family and algebra dimensions differ")
    assigns = sample_assignments(t, samples, seed, fixed)
    free = [k for k in t.params if k not in (fixed or {})]
    if len(assigns) < (samples if free else 1):
        return FamilyReport(False, None, len(assigns), f"only {len(assigns)} admissible samples found")
    mats = [instantiate_family(t, env) for env in assigns]
    first = None
    for conv in CONVENTIONS:
        rep = _check_convention(A, mats, assigns, conv)
        if rep.ok:
            return rep
        first = first or rep
    first.convention = None
    first.detail = "no convention verifies: " + first.detail
    return first


# -- isomorphism search ------------------------------------------------------------


def _perm_matrix(perm: Sequence[int], signs: Sequence[int]) -> Matrix:
    n = len(perm)
    rows = [[ZERO] * n for _ in range(n)]
    for j, (i, s) in enumerate(zip(perm, signs)):
        rows[i][j] = Scalar(s)
    return Matrix(rows, n)


def search_isomorphism(
    A: Algebra,
    B: Algebra,
    budget: int = 500,
    seed: int = 0,
    families: Sequence[AutFamilyTemplate] = (),
    fixed: Optional[Mapping[str, object]] = None,
) -> Optional[Matrix]:
    """Best-effort search for an isomorphism A -> B.

    Returns a verified certificate or None; None proves nothing unless the
    fingerprints differ.
    """
    from .invariants import fingerprint

    if A.dim != B.dim:
        return None
    if fingerprint(A) != fingerprint(B):
        return None
    n = A.dim

    def good(M: Matrix) -> bool:
        return invert(M) is not None and is_homomorphism(A, B, M).ok

    structured: List[Matrix] = []
    if n <= 6:
        for perm in permutations(range(n)):
            P = _perm_matrix(perm, [1] * n)
            if good(P):
                return P
            structured.append(P)
        if n <= 4:
            for perm in permutations(range(n)):
                for signs in product((1, -1), repeat=n):
                    if all(s == 1 for s in signs):
                        continue
                    P = _perm_matrix(perm, signs)
                    if good(P):
                        return P
    for t in families:
        if t.dim != n:
            continue
        for env in sample_assignments(t, 3, seed, fixed):
            Q = instantiate_family(t, env)
            for conv in CONVENTIONS:
                Qc = _oriented(Q, conv)
                for P in structured or [Matrix.identity(n)]:
                    M = Qc @ P
                    if good(M):
                        return M
    rng = random.Random(seed)
    values = [ZERO, ZERO, ONE, -ONE, Scalar(2), Scalar(Fraction(1, 2))]
    for _ in range(budget):
        M = Matrix([[rng.choice(values) for _ in range(n)] for _ in range(n)], n)
        if good(M):
            return M
    return None
