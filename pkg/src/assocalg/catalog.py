"""The classification tables of dimensions 2-4 as data, plus the harness that
recomputes every printed column.

Catalog file format (``assocalg-catalog v1``)::

    entry As_3_2
    dim 3
    source dim-3 table, row 2
    param alpha exclude=1
    1 3 -> 2 : 1
    3 1 -> 2 : alpha
    claimed types=nilpotent dim_C=2 dim_L=1 dim_R=1
    wedderburn N=1,2 S=3
    autfamily
    note <free text attached to the family above>
    | a 0 0
    | b a*c d
    | 0 0 c
"""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from itertools import combinations, combinations_with_replacement
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .algebra import Algebra, direct_sum, is_associative, make_algebra, power_chain
from .exactnum import Scalar, as_scalar, format_scalar, parse_scalar
from .expr import Expr
from .invariants import (
    WedderburnClaim,
    center,
    find_unit,
    fingerprint,
    is_commutative,
    left_annihilator,
    max_commutative_subalgebra,
    nilpotency_index,
    radical,
    right_annihilator,
    verify_wedderburn,
)
from .morphisms import AutFamilyTemplate, verify_family

__all__ = [
    "CATALOG_HEADER",
    "STANDARD_ALPHA",
    "Param",
    "Claimed",
    "CatalogEntry",
    "CheckLine",
    "VerificationReport",
    "ExcludedParameter",
    "AssociativityFailure",
    "UnknownEntry",
    "parse_catalog",
    "format_catalog",
    "builtin_catalog",
    "get_entry",
    "instantiate",
    "param_samples",
    "verify_entry",
    "verify_all",
    "separation_matrix",
    "one_dim_algebras",
    "generate_decomposables",
    "emit_table",
]

CATALOG_HEADER = "assocalg-catalog v1"
STANDARD_ALPHA = (Scalar(0), Scalar(2), Scalar(-1), Scalar(Fraction(1, 2)))


class ExcludedParameter(ValueError):
    pass


class AssociativityFailure(ValueError):
    pass


class UnknownEntry(KeyError):
    pass


@dataclass(frozen=True)
class Param:
    name: str
    excluded: Tuple[Scalar, ...] = ()


@dataclass(frozen=True)
class Claimed:
    commutative: bool
    unital: bool
    nilpotent: bool
    dim_C: int
    dim_L: int
    dim_R: int
    wedderburn: Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]] = None  # 1-based N, S indices


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    dim: int
    products: Tuple[Tuple[int, int, int, Expr], ...]
    params: Tuple[Param, ...]
    claimed: Claimed
    aut_families: Tuple[AutFamilyTemplate, ...]
    source: str = ""
    notes: Tuple[str, ...] = ()

    @property
    def param_names(self) -> Tuple[str, ...]:
        return tuple(p.name for p in self.params)


# -- parsing / serialization -------------------------------------------------

_PRODUCT_RE = re.compile(r"^(\d+)\s+(\d+)\s*->\s*(\d+)\s*:\s*(\S+)$")


def _parse_types(text: str) -> Tuple[bool, bool, bool]:
    types = set() if text == "-" else set(text.split(","))
    unknown = types - {"commutative", "unital", "nilpotent"}
    if unknown:
        raise ValueError(f"unknown type labels {sorted(unknown)}")
    return "commutative" in types, "unital" in types, "nilpotent" in types


def parse_catalog(text: str) -> List[CatalogEntry]:
    lines = text.splitlines()
    if not lines or lines[0].strip() != CATALOG_HEADER:
        raise ValueError(f"catalog must start with {CATALOG_HEADER!r}")
    entries: List[CatalogEntry] = []
    cur: Optional[dict] = None

    def finish():
        if cur is None:
            return
        fams = tuple(AutFamilyTemplate.from_rows(rows, note) for rows, note in cur["fams"])
        entries.append(
            CatalogEntry(
                id=cur["id"],
                dim=cur["dim"],
                products=tuple(cur["products"]),
                params=tuple(cur["params"]),
                claimed=cur["claimed"],
                aut_families=fams,
                source=cur["source"],
                notes=tuple(cur["notes"]),
            )
        )

    for lineno, raw in enumerate(lines[1:], 2):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, rest = line.partition(" ")
        try:
            if key == "entry":
                finish()
                cur = dict(id=rest.strip(), dim=None, products=[], params=[], claimed=None,
                           wedderburn=None, fams=[], source="", notes=[])
            elif cur is None:
                raise ValueError("content before the first 'entry'")
            elif key == "dim":
                cur["dim"] = int(rest)
            elif key == "source":
                cur["source"] = rest.strip()
            elif key == "param":
                name, _, excl = rest.partition(" ")
                excl = excl.strip()
                values = ()
                if excl.startswith("exclude="):
                    spec = excl[len("exclude="):]
                    values = () if spec == "-" else tuple(parse_scalar(v) for v in spec.split(","))
                cur["params"].append(Param(name, values))
            elif key == "claimed":
                fields = dict(tok.split("=", 1) for tok in rest.split())
                comm, unital, nil = _parse_types(fields["types"])
                cur["claimed"] = Claimed(comm, unital, nil, int(fields["dim_C"]),
                                         int(fields["dim_L"]), int(fields["dim_R"]))
            elif key == "wedderburn":
                fields = dict(tok.split("=", 1) for tok in rest.split())
                n_idx = tuple(int(x) for x in fields["N"].split(","))
                s_idx = tuple(int(x) for x in fields["S"].split(","))
                c = cur["claimed"]
                cur["claimed"] = Claimed(c.commutative, c.unital, c.nilpotent, c.dim_C, c.dim_L, c.dim_R,
                                         (n_idx, s_idx))
            elif key == "autfamily":
                cur["fams"].append(([], ""))
            elif key == "note":
                if cur["fams"]:
                    rows, note = cur["fams"][-1]
                    cur["fams"][-1] = (rows, (note + "; " if note else "") + rest.strip())
                else:
                    cur["notes"].append(rest.strip())
            elif key == "|":
                cur["fams"][-1][0].append(rest.split())
            else:
                m = _PRODUCT_RE.match(line)
                if m is None:
                    raise ValueError(f"cannot parse {raw!r}")
                cur["products"].append((int(m[1]), int(m[2]), int(m[3]), Expr(m[4])))
        except (ValueError, KeyError, IndexError) as exc:
            raise ValueError(f"catalog line {lineno}: {exc}") from None
    finish()
    ids = [e.id for e in entries]
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate entry ids in catalog")
    return entries


def _format_types(c: Claimed) -> str:
    labels = [name for name, flag in (("commutative", c.commutative), ("unital", c.unital),
                                      ("nilpotent", c.nilpotent)) if flag]
    return ",".join(labels) or "-"


def format_catalog(entries: Iterable[CatalogEntry]) -> str:
    out = [CATALOG_HEADER]
    for e in entries:
        out.append("")
        out.append(f"entry {e.id}")
        out.append(f"dim {e.dim}")
        if e.source:
            out.append(f"source {e.source}")
        for note in e.notes:
            out.append(f"note {note}")
        for p in e.params:
            excl = ",".join(format_scalar(v) for v in p.excluded) or "-"
            out.append(f"param {p.name} exclude={excl}")
        for i, j, k, coeff in e.products:
            out.append(f"{i} {j} -> {k} : {coeff.text}")
        c = e.claimed
        out.append(f"claimed types={_format_types(c)} dim_C={c.dim_C} dim_L={c.dim_L} dim_R={c.dim_R}")
        if c.wedderburn:
            n_idx, s_idx = c.wedderburn
            out.append(f"wedderburn N={','.join(map(str, n_idx))} S={','.join(map(str, s_idx))}")
        for t in e.aut_families:
            out.append("autfamily")
            if t.note:
                out.append(f"note {t.note}")
            for row in t.rows_text():
                out.append("| " + " ".join(row))
    return "\n".join(out) + "\n"


@lru_cache(maxsize=1)
def _builtin() -> Tuple[CatalogEntry, ...]:
    text = resources.files("assocalg").joinpath("data/catalog.txt").read_text()
    return tuple(parse_catalog(text))


def builtin_catalog() -> List[CatalogEntry]:
    return list(_builtin())


def get_entry(entry_id: str) -> CatalogEntry:
    for e in _builtin():
        if e.id == entry_id:
            return e
    raise UnknownEntry(entry_id)


# -- instantiation -------------------------------------------------------------


def _label(entry: CatalogEntry, assignment: Mapping[str, Scalar]) -> str:
    if not entry.params:
        return entry.id
    inner = ",".join(f"{p.name}={format_scalar(as_scalar(assignment[p.name]))}" for p in entry.params)
    return f"{entry.id}({inner})"


def instantiate(entry: CatalogEntry, assignment: Optional[Mapping[str, object]] = None) -> Algebra:
    env = {k: as_scalar(v) for k, v in (assignment or {}).items()}
    for p in entry.params:
        if p.name not in env:
            raise ExcludedParameter(f"{entry.id}: no value given for {p.name}")
        if env[p.name] in p.excluded:
            raise ExcludedParameter(f"{entry.id}: {p.name}={env[p.name]} is excluded")
    try:
        prods = [(i, j, k, c.evaluate(env)) for i, j, k, c in entry.products]
    except ZeroDivisionError:
        raise ExcludedParameter(f"{entry.id}: parameter value makes a coefficient undefined") from None
    A = make_algebra(entry.dim, prods, _label(entry, env))
    res = is_associative(A)
    if not res.ok:
        i, j, k, _, _ = res.witness
        raise AssociativityFailure(f"{A.label}: (e{i}e{j})e{k} != e{i}(e{j}e{k})")
    return A


def param_samples(entry: CatalogEntry) -> List[Dict[str, Scalar]]:
    """Standard assignments: alpha in {0, 2, -1, 1/2} minus the entry's exclusions."""
    if not entry.params:
        return [{}]
    out: List[Dict[str, Scalar]] = [{}]
    for p in entry.params:
        out = [dict(env, **{p.name: v}) for env in out for v in STANDARD_ALPHA if v not in p.excluded]
    return out


def catalog_algebras(dim: Optional[int] = None) -> List[Tuple[CatalogEntry, Algebra]]:
    return [
        (e, instantiate(e, env))
        for e in _builtin()
        if dim is None or e.dim == dim
        for env in param_samples(e)
    ]


# -- verification ----------------------------------------------------------------

STATUSES = ("PASS", "FAIL", "DISCREPANCY", "LOWER_BOUND_ONLY", "NOTE")


@dataclass(frozen=True)
class CheckLine:
    subject: str
    check: str
    status: str
    details: str = ""

    def text(self) -> str:
        return f"{self.subject} {self.check} {self.status} {self.details}".rstrip()

    def record(self, entry_id: str) -> str:
        return json.dumps(
            {"entry": entry_id, "subject": self.subject, "check": self.check,
             "status": self.status, "details": self.details},
            sort_keys=True,
        )


@dataclass
class VerificationReport:
    entry_id: str
    lines: List[CheckLine] = field(default_factory=list)

    @property
    def overall(self) -> str:
        statuses = {ln.status for ln in self.lines}
        if "DISCREPANCY" in statuses:
            return "DISCREPANCY"
        if any(ln.status == "FAIL" and "note:" not in ln.details for ln in self.lines):
            return "FAIL"
        if statuses - {"PASS"}:
            return "PASS_WITH_NOTES"
        return "PASS"

    def discrepancies(self) -> List[CheckLine]:
        return [ln for ln in self.lines if ln.status == "DISCREPANCY"]

    def text(self) -> str:
        body = [ln.text() for ln in self.lines]
        body.append(f"{self.entry_id} overall {self.overall}")
        return "\n".join(body)

    def records(self) -> str:
        body = [ln.record(self.entry_id) for ln in self.lines]
        body.append(json.dumps({"entry": self.entry_id, "overall": self.overall}, sort_keys=True))
        return "\n".join(body)


def _vec(v) -> str:
    return "(" + ",".join(format_scalar(x) for x in v) + ")"


def _basis(S) -> str:
    return "[" + " ".join(_vec(v) for v in S.basis) + "]"


def _compare(subject: str, check: str, got, claimed, witness: str = "") -> CheckLine:
    if got == claimed:
        return CheckLine(subject, check, "PASS", f"{got}")
    return CheckLine(subject, check, "DISCREPANCY", f"computed={got} table={claimed} {witness}".rstrip())


def _verify_instance(entry: CatalogEntry, env: Dict[str, Scalar], samples: int, seed: int) -> List[CheckLine]:
    A = instantiate(entry, env)
    s = A.label
    c = entry.claimed
    lines = [CheckLine(s, "associative", "PASS", "all basis triples")]

    comm = is_commutative(A)
    wit = ""
    if not comm:
        i, j = next((i, j) for i in range(A.dim) for j in range(i + 1, A.dim) if A.sc[i][j] != A.sc[j][i])
        wit = f"witness: e{i + 1}e{j + 1}={_vec(A.sc[i][j])} e{j + 1}e{i + 1}={_vec(A.sc[j][i])}"
    else:
        wit = "witness: structure constants symmetric"
    lines.append(_compare(s, "commutative", comm, c.commutative, wit))

    unit = find_unit(A)
    lines.append(_compare(s, "unital", unit is not None, c.unital,
                          f"witness: unit={_vec(unit)}" if unit is not None else "witness: unit equations inconsistent"))

    chain = power_chain(A)
    idx = nilpotency_index(A)
    dims = ",".join(str(p.dim) for p in chain)
    line = _compare(s, "nilpotent", idx is not None, c.nilpotent, f"witness: power dims {dims}")
    if line.status == "PASS":
        line = CheckLine(s, "nilpotent", "PASS", f"{idx is not None} index={idx} power dims {dims}")
    lines.append(line)

    L = left_annihilator(A)
    R = right_annihilator(A)
    lines.append(_compare(s, "dim_L", L.dim, c.dim_L, f"witness: L={_basis(L)}"))
    lines.append(_compare(s, "dim_R", R.dim, c.dim_R, f"witness: R={_basis(R)}"))

    rep = max_commutative_subalgebra(A, c.dim_C, seed)
    wit = f"witness={_basis(rep.witness)}"
    if rep.found_dim > c.dim_C:
        lines.append(CheckLine(s, "dim_C", "DISCREPANCY",
                               f"computed>={rep.found_dim} table={c.dim_C} {wit}"))
    elif rep.found_dim == c.dim_C:
        if rep.upper_bound_proved:
            lines.append(CheckLine(s, "dim_C", "PASS", f"{rep.found_dim} upper bound forced {wit}"))
        else:
            lines.append(CheckLine(s, "dim_C", "LOWER_BOUND_ONLY",
                                   f"found {rep.found_dim}=table, upper bound not proved {wit}"))
    elif c.dim_C == A.dim and not comm:
        lines.append(CheckLine(s, "dim_C", "DISCREPANCY",
                               f"table={c.dim_C} but the algebra is not commutative, so dim C<{A.dim}"))
    else:
        lines.append(CheckLine(s, "dim_C", "FAIL", f"search found only {rep.found_dim} < table {c.dim_C}"))

    if c.wedderburn:
        claim = WedderburnClaim.from_indices(A.dim, *c.wedderburn)
        wrep = verify_wedderburn(A, claim)
        summary = " ".join(f"{name}:{'ok' if ok else 'fail'}" for name, ok, _ in wrep.checks)
        if wrep.ok:
            lines.append(CheckLine(s, "wedderburn", "PASS", summary))
        else:
            rad = radical(A)
            lines.append(CheckLine(s, "wedderburn", "DISCREPANCY",
                                   f"{summary} witness: radical={_basis(rad)}"))

    for n, t in enumerate(entry.aut_families, 1):
        frep = verify_family(A, t, samples, seed, fixed=env)
        if frep.ok:
            lines.append(CheckLine(s, f"autfamily{n}", "PASS",
                                   f"convention={frep.convention} samples={frep.samples_checked}"
                                   + (f" note: {t.note}" if t.note else "")))
        else:
            detail = frep.detail
            if frep.failures:
                env_f, res = frep.failures[0]
                free = {k: v for k, v in env_f.items() if k not in env}
                at = ",".join(f"{k}={format_scalar(v)}" for k, v in sorted(free.items()))
                if res.witness:
                    i, j, lhs, rhs = res.witness
                    detail += f"; at {at}: phi(e{i}e{j})={_vec(lhs)} phi(e{i})phi(e{j})={_vec(rhs)}"
            if t.note:
                detail += f" note: {t.note}"
            lines.append(CheckLine(s, f"autfamily{n}", "FAIL", detail))
    return lines


def verify_entry(
    entry: CatalogEntry,
    param_samples_: Optional[Sequence[Mapping[str, object]]] = None,
    seed: int = 0,
    samples: int = 3,
) -> VerificationReport:
    envs = param_samples(entry) if param_samples_ is None else [
        {k: as_scalar(v) for k, v in env.items()} for env in param_samples_
    ]
    rep = VerificationReport(entry.id)
    for env in envs:
        rep.lines.extend(_verify_instance(entry, env, samples, seed))
    return rep


def verify_all(dims: Optional[Iterable[int]] = None, samples: int = 3, seed: int = 0) -> List[VerificationReport]:
    dims = None if dims is None else set(dims)
    return [verify_entry(e, None, seed, samples) for e in _builtin() if dims is None or e.dim in dims]


def report_header(dims, samples: int, seed: int) -> str:
    alpha = ",".join(format_scalar(a) for a in STANDARD_ALPHA)
    d = "all" if dims is None else ",".join(str(x) for x in sorted(dims))
    return f"# assocalg verify-catalog dims={d} seed={seed} samples={samples} alpha-samples={alpha}"


# -- separation ------------------------------------------------------------------------


@dataclass
class SeparationReport:
    dim: int
    total_pairs: int
    separated: int
    unseparated: List[Tuple[str, str]]
    same_family_ties: List[Tuple[str, str]]

    @property
    def fraction(self) -> float:
        return self.separated / self.total_pairs if self.total_pairs else 1.0

    def text(self) -> str:
        out = [f"# separation dim={self.dim} pairs={self.total_pairs} separated={self.separated} "
               f"rate={self.fraction:.4f}"]
        out += [f"UNSEPARATED {a} {b}" for a, b in self.unseparated]
        out += [f"SAME_FAMILY_TIE {a} {b}" for a, b in self.same_family_ties]
        return "\n".join(out)


def separation_matrix(dim: int, param_samples_: Optional[Mapping[str, Sequence[Mapping]]] = None) -> SeparationReport:
    """Pairwise fingerprint comparison of the catalog algebras of one dimension.

    Pairs of samples from the same parametrized entry are reported as ties
    when their fingerprints agree but are not counted as catalog pairs.
    """
    items = []
    for e in _builtin():
        if e.dim != dim:
            continue
        envs = (param_samples_ or {}).get(e.id) or param_samples(e)
        for env in envs:
            A = instantiate(e, env)
            items.append((e.id, A.label, fingerprint(A)))
    total = sep = 0
    unsep, ties = [], []
    for (ea, la, fa), (eb, lb, fb) in combinations(items, 2):
        if ea == eb:
            if fa == fb:
                ties.append((la, lb))
            continue
        total += 1
        if fa != fb:
            sep += 1
        else:
            unsep.append((la, lb))
    return SeparationReport(dim, total, sep, unsep, ties)


# -- decomposables ---------------------------------------------------------------------


def one_dim_algebras() -> List[Algebra]:
    """The zero algebra and the field: every 1-dimensional algebra up to isomorphism."""
    return [make_algebra(1, [], "Z1"), make_algebra(1, [(1, 1, 1, 1)], "F1")]


def generate_decomposables(dim: int) -> List[Algebra]:
    """Direct sums (at least two summands) of indecomposables with total dimension dim."""
    if not 2 <= dim <= 4:
        raise ValueError("decomposables are generated for dimensions 2..4")
    pieces = one_dim_algebras() + [A for _, A in catalog_algebras() if A.dim < dim]
    out = []
    for k in range(2, dim + 1):
        for combo in combinations_with_replacement(range(len(pieces)), k):
            summands = [pieces[i] for i in combo]
            if sum(p.dim for p in summands) != dim:
                continue
            A = summands[0]
            for B in summands[1:]:
                A = direct_sum(A, B)
            A = A.with_label("+".join(p.label for p in summands))
            if not is_associative(A).ok:
                raise AssociativityFailure(A.label)
            out.append(A)
    return out


def decomposable_collisions(dim: int) -> List[Tuple[str, str]]:
    """(decomposable, indecomposable) label pairs whose fingerprints coincide."""
    catalog = [(A.label, fingerprint(A)) for _, A in catalog_algebras(dim)]
    out = []
    for D in generate_decomposables(dim):
        fd = fingerprint(D)
        out.extend((D.label, label) for label, f in catalog if f == fd)
    return out


# -- tables -----------------------------------------------------------------------------


def _product_text(entry: CatalogEntry) -> str:
    parts = []
    for i, j, k, c in entry.products:
        coeff = "" if c.text == "1" else ("-" if c.text == "-1" else f"{c.text}*")
        parts.append(f"e{i}e{j}={coeff}e{k}")
    return ", ".join(parts)


def table_rows(dim: int, seed: int = 0) -> List[Dict[str, str]]:
    rows = []
    for e in _builtin():
        if e.dim != dim:
            continue
        for env in param_samples(e):
            A = instantiate(e, env)
            comm = is_commutative(A)
            labels = [name for name, flag in (
                ("commutative", comm),
                ("unitary", find_unit(A) is not None),
                ("nilpotent", nilpotency_index(A) is not None),
            ) if flag]
            R = radical(A)
            if R.dim not in (0, A.dim):
                labels.append(f"N=rad dim {R.dim}")
            rep = max_commutative_subalgebra(A, e.claimed.dim_C, seed)
            exact = comm or rep.found_dim == A.dim - 1
            dim_c = str(rep.found_dim) if exact else f">={rep.found_dim}"
            rows.append({
                "id": A.label,
                "products": _product_text(e),
                "type": ", ".join(labels) or "-",
                "dim C": dim_c,
                "dim L": str(left_annihilator(A).dim),
                "dim R": str(right_annihilator(A).dim),
            })
    return rows


def emit_table(dim: int, fmt: str = "md", seed: int = 0) -> str:
    rows = table_rows(dim, seed)
    cols = ["id", "products", "type", "dim C", "dim L", "dim R"]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()
    if fmt != "md":
        raise ValueError(f"unknown table format {fmt!r}")
    out = ["| " + " | ".join(cols) + " |", "|" + "---|" * len(cols)]
    for r in rows:
        out.append("| " + " | ".join(r[c] for c in cols) + " |")
    return "\n".join(out) + "\n"
