"""Command-line interface.

Exit codes: 0 clean, 1 usage or internal error, 2 mathematical
discrepancy or refutation.

Algebras are named either by catalog id (``As_3_2``, optionally with inline
parameters ``As_3_2:alpha=2``) or by the path of an algebra file.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Dict, List, Optional, Sequence

from .algebra import Algebra, format_algebra, parse_algebra
from .catalog import (
    AssociativityFailure,
    ExcludedParameter,
    UnknownEntry,
    builtin_catalog,
    emit_table,
    get_entry,
    instantiate,
    param_samples,
    report_header,
    verify_entry,
)
from .exactnum import format_scalar, invert, parse_matrix, parse_scalar
from .invariants import (
    center,
    find_unit,
    fingerprint,
    left_annihilator,
    max_commutative_subalgebra,
    radical,
    right_annihilator,
    two_sided_annihilator,
)
from .morphisms import DimensionMismatch, is_homomorphism, search_isomorphism

EXIT_OK, EXIT_USAGE, EXIT_REFUTED = 0, 1, 2
VALID_DIMS = (2, 3, 4)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _vec(v) -> str:
    return "(" + ",".join(format_scalar(x) for x in v) + ")"


def _basis(S) -> str:
    return "[" + " ".join(_vec(v) for v in S.basis) + "]"


def _parse_params(items: Sequence[str]) -> Dict[str, object]:
    out = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep or not name:
            raise UsageError(f"--param expects NAME=VALUE, got {item!r}")
        try:
            out[name.strip()] = parse_scalar(value)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return out


def _entry(entry_id: str):
    try:
        return get_entry(entry_id)
    except UnknownEntry:
        raise UsageError(f"unknown catalog id {entry_id!r}") from None


def load_algebra(ref: str, params: Dict[str, object]) -> Algebra:
    if os.path.isfile(ref):
        with open(ref, encoding="utf-8") as fh:
            try:
                return parse_algebra(fh.read())
            except ValueError as exc:
                raise UsageError(f"{ref}: {exc}") from None
    entry_id, _, inline = ref.partition(":")
    entry = _entry(entry_id)
    env = dict(params)
    if inline:
        env.update(_parse_params(inline.split(",")))
    env = {k: v for k, v in env.items() if k in entry.param_names}
    for p in entry.params:
        if p.name not in env:
            raise UsageError(f"{entry.id} needs a value for {p.name} (use --param {p.name}=VALUE)")
    try:
        return instantiate(entry, env)
    except ExcludedParameter as exc:
        raise UsageError(str(exc)) from None


def _select(args) -> List:
    if args.dim is not None and args.dim not in VALID_DIMS:
        raise UsageError(f"--dim must be one of {VALID_DIMS}, got {args.dim}")
    entries = [_entry(i) for i in args.ids] if args.ids else builtin_catalog()
    if args.dim is not None:
        entries = [e for e in entries if e.dim == args.dim]
    return entries


# -- commands -----------------------------------------------------------------------


def cmd_verify_catalog(args):
    entries = _select(args)
    params = _parse_params(args.param)
    fmt = args.format or "text"
    if fmt not in ("text", "records"):
        raise UsageError("verify-catalog supports --format text or records")
    dims = None if args.dim is None else [args.dim]
    out = [report_header(dims, args.samples, args.seed)] if fmt == "text" else []
    status = EXIT_OK
    for e in entries:
        envs = None
        if params and e.params:
            envs = [{p.name: params[p.name] for p in e.params if p.name in params}]
            if any(p.name not in envs[0] for p in e.params):
                envs = None
        rep = verify_entry(e, envs, args.seed, args.samples)
        out.append(rep.text() if fmt == "text" else rep.records())
        if rep.overall in ("DISCREPANCY", "FAIL"):
            status = EXIT_REFUTED
    return "\n".join(out) + "\n", status


def cmd_invariants(args):
    A = load_algebra(args.algebra, _parse_params(args.param))
    fp = fingerprint(A)
    lines = [f"algebra {A.label or args.algebra}"]
    for name in fp.__dataclass_fields__:
        value = getattr(fp, name)
        if isinstance(value, tuple):
            value = ",".join(str(x) for x in value)
        lines.append(f"{name} {value}")
    unit = find_unit(A)
    lines.append(f"unit {_vec(unit) if unit is not None else 'none'}")
    lines.append(f"left_annihilator {_basis(left_annihilator(A))}")
    lines.append(f"right_annihilator {_basis(right_annihilator(A))}")
    lines.append(f"two_sided_annihilator {_basis(two_sided_annihilator(A))}")
    lines.append(f"center {_basis(center(A))}")
    lines.append(f"radical {_basis(radical(A))}")
    rep = max_commutative_subalgebra(A, A.dim, args.seed)
    bound = "exact" if rep.upper_bound_proved or rep.found_dim >= A.dim - 1 else "lower bound"
    lines.append(f"commutative_subalgebra dim={rep.found_dim} ({bound}) {_basis(rep.witness)}")
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_compare(args):
    params = _parse_params(args.param)
    A = load_algebra(args.a, params)
    B = load_algebra(args.b, params)
    fa, fb = fingerprint(A), fingerprint(B)
    diff = fa.first_difference(fb)
    if diff is not None:
        name, x, y = diff
        return f"DISTINGUISHED {name}: {x} vs {y}\n", EXIT_OK
    M = search_isomorphism(A, B, budget=args.budget, seed=args.seed)
    if M is not None:
        return "ISOMORPHIC\n" + M.format() + "\n", EXIT_OK
    return f"UNDECIDED fingerprints agree, no certificate within budget {args.budget}\n", EXIT_OK


def cmd_check_hom(args):
    params = _parse_params(args.param)
    A = load_algebra(args.a, params)
    B = load_algebra(args.b, params)
    try:
        with open(args.matrix, encoding="utf-8") as fh:
            M = parse_matrix(fh.read())
    except (OSError, ValueError) as exc:
        raise UsageError(f"{args.matrix}: {exc}") from None
    try:
        res = is_homomorphism(A, B, M)
    except DimensionMismatch as exc:
        raise UsageError(str(exc)) from None
    if not res.ok:
        i, j, lhs, rhs = res.witness
        return f"NOT_HOMOMORPHISM at (e{i},e{j}): M(e{i}e{j})={_vec(lhs)} (Me{i})(Me{j})={_vec(rhs)}\n", EXIT_REFUTED
    if M.is_square() and invert(M) is not None:
        return "ISOMORPHISM\n", EXIT_OK
    return "HOMOMORPHISM\n", EXIT_OK


def cmd_table(args):
    if args.dim not in VALID_DIMS:
        raise UsageError(f"--dim must be one of {VALID_DIMS}, got {args.dim}")
    fmt = args.format or "md"
    if fmt not in ("md", "csv"):
        raise UsageError("table supports --format md or csv")
    return emit_table(args.dim, fmt, args.seed), EXIT_OK


def cmd_dump(args):
    entry = _entry(args.id.partition(":")[0])
    params = _parse_params(args.param)
    if entry.params and not params and ":" not in args.id:
        params = dict(param_samples(entry)[0])
    return format_algebra(load_algebra(args.id, params)), EXIT_OK


# -- wiring ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--param", action="append", default=[], metavar="NAME=VALUE")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("text", "md", "csv", "records"))
    common.add_argument("--out", metavar="PATH")

    p = _Parser(prog="assocalg", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    v = sub.add_parser("verify-catalog", parents=[common], help="recompute every tabulated invariant")
    v.add_argument("ids", nargs="*")
    v.add_argument("--dim", type=int)
    v.add_argument("--samples", type=int, default=3)
    v.set_defaults(func=cmd_verify_catalog)

    i = sub.add_parser("invariants", parents=[common], help="fingerprint and witnesses of one algebra")
    i.add_argument("algebra")
    i.set_defaults(func=cmd_invariants)

    c = sub.add_parser("compare", parents=[common], help="separate two algebras or find an isomorphism")
    c.add_argument("a")
    c.add_argument("b")
    c.add_argument("--budget", type=int, default=500)
    c.set_defaults(func=cmd_compare)

    h = sub.add_parser("check-hom", parents=[common], help="check a matrix is a homomorphism A -> B")
    h.add_argument("a")
    h.add_argument("b")
    h.add_argument("matrix")
    h.set_defaults(func=cmd_check_hom)

    t = sub.add_parser("table", parents=[common], help="re-emit a classification table from computed values")
    t.add_argument("--dim", type=int, required=True)
    t.set_defaults(func=cmd_table)

    d = sub.add_parser("dump", parents=[common], help="write a catalog entry as an algebra file")
    d.add_argument("id")
    d.set_defaults(func=cmd_dump)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        text, status = args.func(args)
    except UsageError as exc:
        print(f"assocalg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (AssociativityFailure, ArithmeticError, ValueError, RuntimeError) as exc:
        print(f"assocalg: internal error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
