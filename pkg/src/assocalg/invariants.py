"""Basis-independent invariants of structure-constant algebras.

Annihilators, center, unit and the radical are all kernels of explicit
linear systems built from the structure constants.  The radical uses the
Dickson trace criterion (characteristic 0) and is re-validated before it is
returned.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import List, Optional, Sequence, Tuple

from .algebra import (
    Algebra,
    generated_subalgebra,
    is_subalgebra,
    power_chain,
    quotient,
    restrict,
    subspace_product,
)
from .exactnum import (
    ONE,
    ZERO,
    Matrix,
    Scalar,
    Subspace,
    Vector,
    kernel_of_rows,
    rank,
    solve,
    unit_vector,
)

__all__ = [
    "InternalInconsistency",
    "Fingerprint",
    "WedderburnClaim",
    "WedderburnReport",
    "CommSubalgebraReport",
    "left_annihilator",
    "right_annihilator",
    "two_sided_annihilator",
    "center",
    "centralizer",
    "is_commutative",
    "find_unit",
    "nilpotency_index",
    "radical",
    "verify_wedderburn",
    "max_commutative_subalgebra",
    "fingerprint",
]


class InternalInconsistency(RuntimeError):
    """A self-check failed; this is a bug in the library, not bad input."""


def _sc(A: Algebra, i: int, j: int, k: int) -> Scalar:
    return A.sc[i][j][k]


def left_annihilator(A: Algebra) -> Subspace:
    """{x : x e_j = 0 for all j}."""
    n = A.dim
    rows = [[A.sc[i][j][k] for i in range(n)] for j in range(n) for k in range(n)]
    return kernel_of_rows(rows, n)


def right_annihilator(A: Algebra) -> Subspace:
    """{x : e_i x = 0 for all i}."""
    n = A.dim
    rows = [[A.sc[i][j][k] for j in range(n)] for i in range(n) for k in range(n)]
    return kernel_of_rows(rows, n)


def two_sided_annihilator(A: Algebra) -> Subspace:
    n = A.dim
    rows = [[A.sc[i][j][k] for i in range(n)] for j in range(n) for k in range(n)]
    rows += [[A.sc[i][j][k] for j in range(n)] for i in range(n) for k in range(n)]
    return kernel_of_rows(rows, n)


def centralizer(A: Algebra, S: Subspace) -> Subspace:
    """{x : x s = s x for every s in S}."""
    n = A.dim
    rows = []
    for s in S.basis:
        # x s - s x, linear in x
        Ls = A.left_mult(s)
        Rs = A.right_mult(s)
        for k in range(n):
            rows.append([Rs[k, j] - Ls[k, j] for j in range(n)])
    if not rows:
        return Subspace.full(n)
    return kernel_of_rows(rows, n)


def center(A: Algebra) -> Subspace:
    n = A.dim
    rows = [
        [A.sc[j][i][k] - A.sc[i][j][k] for j in range(n)]
        for i in range(n)
        for k in range(n)
    ]
    return kernel_of_rows(rows, n)


def is_commutative(A: Algebra) -> bool:
    return all(A.sc[i][j] == A.sc[j][i] for i in range(A.dim) for j in range(i + 1, A.dim))


def find_unit(A: Algebra) -> Optional[Vector]:
    """The two-sided identity element, if there is one."""
    n = A.dim
    rows, rhs = [], []
    for i in range(n):
        for k in range(n):
            target = ONE if i == k else ZERO
            rows.append([A.sc[j][i][k] for j in range(n)])  # u e_i
            rhs.append(target)
            rows.append([A.sc[i][j][k] for j in range(n)])  # e_i u
            rhs.append(target)
    if n == 0:
        return ()
    return solve(Matrix(rows, n), rhs)


def nilpotency_index(A: Algebra) -> Optional[int]:
    """Smallest k with A^k = 0, or None."""
    chain = power_chain(A)
    return len(chain) if chain[-1].dim == 0 else None


def _trace_functional(A: Algebra) -> List[Scalar]:
    """t with t(x) = trace of y -> x y."""
    n = A.dim
    out = []
    for i in range(n):
        acc = ZERO
        for j in range(n):
            c = A.sc[i][j][j]
            if c:
                acc = acc + c
        out.append(acc)
    return out


def _apply_functional(t: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    acc = ZERO
    for a, b in zip(t, v):
        if a and b:
            acc = acc + a * b
    return acc


def trace_form(A: Algebra) -> Matrix:
    """tau(e_i, e_j) = trace of left multiplication by e_i e_j."""
    t = _trace_functional(A)
    n = A.dim
    return Matrix([[_apply_functional(t, A.sc[i][j]) for j in range(n)] for i in range(n)], n)


def _dickson_kernel(A: Algebra) -> Subspace:
    # On the unitalization A + <1>, the trace of L_z for z in A equals its trace
    # on A, and pairing with the adjoined unit contributes the row t itself.
    t = _trace_functional(A)
    tau = trace_form(A)
    rows = [list(tau.column(j)) for j in range(A.dim)] + [t]
    return kernel_of_rows(rows, A.dim)


def _subspace_power_chain(A: Algebra, R: Subspace) -> List[Subspace]:
    chain = [R]
    for _ in range(A.dim + 1):
        if chain[-1].dim == 0:
            break
        nxt = subspace_product(A, R, chain[-1])
        chain.append(nxt)
        if nxt.dim == chain[-2].dim:
            break
    return chain


def radical(A: Algebra, validate: bool = True) -> Subspace:
    R = _dickson_kernel(A)
    if validate:
        full = A.full_space()
        if not (
            R.contains_subspace(subspace_product(A, full, R))
            and R.contains_subspace(subspace_product(A, R, full))
        ):
            raise InternalInconsistency(f"radical of {A.label or A} is not a two-sided ideal")
        if _subspace_power_chain(A, R)[-1].dim != 0:
            raise InternalInconsistency(f"radical of {A.label or A} is not nilpotent")
        if R.dim < A.dim and _dickson_kernel(quotient(A, R)).dim != 0:
            raise InternalInconsistency(f"quotient of {A.label or A} by its radical is not semisimple")
    return R


# -- Wedderburn splitting ----------------------------------------------------


@dataclass(frozen=True)
class WedderburnClaim:
    """Claimed radical N and semisimple complement S, as spanning vectors."""

    n_span: Tuple[Vector, ...]
    s_span: Tuple[Vector, ...]

    @classmethod
    def from_indices(cls, dim: int, n_idx: Sequence[int], s_idx: Sequence[int]) -> "WedderburnClaim":
        """Build from 1-based basis indices, as the tables print them."""
        return cls(
            tuple(unit_vector(dim, i - 1) for i in n_idx),
            tuple(unit_vector(dim, i - 1) for i in s_idx),
        )


@dataclass
class WedderburnReport:
    checks: List[Tuple[str, bool, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failed(self) -> List[str]:
        return [name for name, ok, _ in self.checks if not ok]


def verify_wedderburn(A: Algebra, claim: WedderburnClaim) -> WedderburnReport:
    n = A.dim
    N = Subspace.span(claim.n_span, n)
    S = Subspace.span(claim.s_span, n)
    R = radical(A)
    rep = WedderburnReport()
    rep.checks.append(("N=rad", N == R, f"claimed dim {N.dim}, radical dim {R.dim}"))
    closed = is_subalgebra(A, S)
    rep.checks.append(("S_closed", closed, f"dim S {S.dim}"))
    meet = N.intersect(S)
    rep.checks.append(("N_cap_S=0", meet.dim == 0, f"dim(N cap S) {meet.dim}"))
    rep.checks.append(("dimN+dimS=dimA", N.dim + S.dim == n, f"{N.dim}+{S.dim} vs {n}"))
    if closed:
        rs = radical(restrict(A, S)).dim
        rep.checks.append(("rad(S)=0", rs == 0, f"dim rad(S) {rs}"))
    else:
        rep.checks.append(("rad(S)=0", False, "S is not a subalgebra"))
    return rep


# -- commutative subalgebras ---------------------------------------------------


@dataclass(frozen=True)
class CommSubalgebraReport:
    claimed_dim: int
    found_dim: int
    witness: Subspace
    upper_bound_proved: bool


def _is_commutative_subspace(A: Algebra, S: Subspace) -> bool:
    b = S.basis
    return all(A.multiply(b[i], b[j]) == A.multiply(b[j], b[i]) for i in range(len(b)) for j in range(i + 1, len(b)))


def candidate_pool(n: int, seed: int = 0, n_random: int = 50) -> List[Vector]:
    """Basis vectors, +-1/0 vectors with at most two nonzeros, then seeded random vectors."""
    one, mone = ONE, -ONE
    pool: List[Vector] = [unit_vector(n, i) for i in range(n)]
    for i in range(n):
        v = [ZERO] * n
        v[i] = mone
        pool.append(tuple(v))
    for i, j in combinations(range(n), 2):
        for a, b in product((one, mone), repeat=2):
            v = [ZERO] * n
            v[i], v[j] = a, b
            pool.append(tuple(v))
    rng = random.Random(seed)
    values = [Scalar(k) for k in range(-2, 3)] + [Scalar(Fraction(1, 2))]
    for _ in range(n_random):
        pool.append(tuple(rng.choice(values) for _ in range(n)))
    return pool


def _grow(A: Algebra, S: Subspace, rng: random.Random) -> Subspace:
    """Greedily enlarge a commutative subalgebra inside its centralizer."""
    while True:
        Z = centralizer(A, S)
        cands = [z for z in Z.basis if not S.contains(z)]
        if not cands:
            return S
        extra = []
        for _ in range(4):
            coeffs = [Scalar(rng.choice((-2, -1, 1, 2, 3))) for _ in Z.basis]
            v = tuple(sum((c * z[k] for c, z in zip(coeffs, Z.basis)), ZERO) for k in range(A.dim))
            if not S.contains(v):
                extra.append(v)
        best = S
        for y in cands + extra:
            T = generated_subalgebra(A, list(S.basis) + [y])
            if T.dim > best.dim and _is_commutative_subspace(A, T):
                best = T
        if best.dim == S.dim:
            return S
        S = best


def max_commutative_subalgebra(A: Algebra, claimed: int, seed: int = 0) -> CommSubalgebraReport:
    """Constructive lower bound on the largest commutative subalgebra dimension.

    The upper bound is only certified when it is forced: claimed == n
    (commutative A) or claimed == n - 1 with A noncommutative.
    """
    n = A.dim
    comm = is_commutative(A)
    if comm:
        best = A.full_space()
    else:
        ceiling = n - 1
        rng = random.Random(seed)
        best = center(A)
        starts = [best] + [generated_subalgebra(A, [x]) for x in candidate_pool(n, seed)]
        seen = set()
        for S in starts:
            if best.dim >= ceiling:
                break
            if S in seen:
                continue
            seen.add(S)
            T = _grow(A, S, rng)
            if T.dim > best.dim:
                best = T
    upper = (claimed == n and comm) or (claimed == n - 1 and not comm) or best.dim == n
    return CommSubalgebraReport(claimed, best.dim, best, upper)


# -- fingerprint ---------------------------------------------------------------


@dataclass(frozen=True)
class Fingerprint:
    dim: int
    commutative: bool
    unital: bool
    nilpotency_index: Optional[int]
    power_dims: Tuple[int, ...]
    dim_left_ann: int
    dim_right_ann: int
    dim_two_sided_ann: int
    dim_center: int
    dim_radical: int
    radical_power_dims: Tuple[int, ...]
    dim_commutator_span: int
    trace_form_rank: int

    def first_difference(self, other: "Fingerprint") -> Optional[Tuple[str, object, object]]:
        for name in self.__dataclass_fields__:
            a, b = getattr(self, name), getattr(other, name)
            if a != b:
                return name, a, b
        return None


def commutator_span(A: Algebra) -> Subspace:
    n = A.dim
    vecs = [
        tuple(x - y for x, y in zip(A.sc[i][j], A.sc[j][i]))
        for i in range(n)
        for j in range(i + 1, n)
    ]
    return Subspace.span(vecs, n)


def fingerprint(A: Algebra) -> Fingerprint:
    full = A.full_space()
    powers = [full]
    for _ in range(3):
        powers.append(subspace_product(A, full, powers[-1]))
    R = radical(A)
    return Fingerprint(
        dim=A.dim,
        commutative=is_commutative(A),
        unital=find_unit(A) is not None,
        nilpotency_index=nilpotency_index(A),
        power_dims=tuple(p.dim for p in powers[1:]),
        dim_left_ann=left_annihilator(A).dim,
        dim_right_ann=right_annihilator(A).dim,
        dim_two_sided_ann=two_sided_annihilator(A).dim,
        dim_center=center(A).dim,
        dim_radical=R.dim,
        radical_power_dims=tuple(s.dim for s in _subspace_power_chain(A, R)),
        dim_commutator_span=commutator_span(A).dim,
        trace_form_rank=rank(trace_form(A)),
    )
