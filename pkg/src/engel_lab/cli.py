"""``engel-lab`` command line.

Exit codes: 0 ran cleanly, 1 invalid mathematical input or a theorem or
property violation, 2 I/O or parse failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import engel, gen, leibniz, properties, reps
from .exactlin import FieldSpec
from .formats import (
    FormatError,
    algebra_from_json,
    algebra_to_json,
    dumps,
    load_json,
    rep_from_json,
    write_text,
)

EXIT_OK, EXIT_VIOLATION, EXIT_PARSE = 0, 1, 2


class _Exit(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        self.message = message


def _fmt_vec(F, v) -> list[str]:
    return [F.format(x) for x in v]


def _emit(args, payload: dict, lines: list[str]):
    if getattr(args, "json", False):
        sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        for line in lines:
            print(line)


def _load_algebra(path) -> leibniz.LeibnizAlgebra:
    obj = load_json(path)
    try:
        return algebra_from_json(obj)
    except leibniz.IdentityViolation as exc:
        raise _Exit(EXIT_VIOLATION, f"invalid algebra: {exc}") from exc


def _load_pair(alg_path, rep_path) -> reps.Representation:
    L = _load_algebra(alg_path)
    try:
        rep = rep_from_json(load_json(rep_path), L)
    except ValueError as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(str(exc)) from exc
    try:
        return reps.validate_representation(rep)
    except reps.NotARepresentation as exc:
        raise _Exit(EXIT_VIOLATION, f"invalid representation: {exc}") from exc


def _parse_field(text: str) -> FieldSpec:
    t = text.strip().upper()
    if t == "Q":
        return FieldSpec()
    t = t[1:] if t.startswith("F") else t
    try:
        return FieldSpec(int(t))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"field must be Q or Fp with p an odd prime: {text!r}") from exc


# --------------------------------------------------------------------------


def cmd_validate(args) -> int:
    L = _load_algebra(args.algebra)
    _emit(args, {"valid": True, "dim": L.dim}, [f"valid (dim {L.dim}, field {L.field})"])
    return EXIT_OK


def cmd_analyze(args) -> int:
    L = _load_algebra(args.algebra)
    a = leibniz.analyze(L)
    F = L.field
    payload = {
        "dim": a.dim,
        "is_lie": a.is_lie,
        "leib_dim": a.leibniz_kernel.dim,
        "leib_basis": [_fmt_vec(F, v) for v in a.leibniz_kernel.basis],
        "lcs_dims": [s.dim for s in a.lower_central_series],
        "nilpotent": a.nilpotent,
        "class": a.nilpotency_class,
    }
    lines = [
        f"dim: {a.dim}",
        f"field: {F}",
        f"is_lie: {str(a.is_lie).lower()}",
        f"leibniz kernel: dim {a.leibniz_kernel.dim} basis {payload['leib_basis']}",
        f"lower central series dims: {payload['lcs_dims']}",
        "nilpotent: " + (f"yes, class {a.nilpotency_class}" if a.nilpotent else "no"),
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_engel(args) -> int:
    L = _load_algebra(args.algebra)
    r = engel.check_engel_algebra(L)
    payload = {
        "certificate": r.flag is not None,
        "chain_dims": r.flag.dims if r.flag else None,
        "failure_stage": r.failure_point.stage if r.failure_point else None,
        "failure_dim": r.failure_point.residual.dim if r.failure_point else None,
        "nilpotent": r.nilpotent,
        "class": r.nilpotency_class,
        "violation": r.violation,
    }
    if r.flag:
        lines = [f"flag for all d_a: chain dims {r.flag.dims}"]
    else:
        lines = [f"no flag: stalls at stage {r.failure_point.stage} "
                 f"(common kernel dim {r.failure_point.residual.dim} < {L.dim})"]
    lines.append("nilpotent: " + (f"yes, class {r.nilpotency_class}" if r.nilpotent else "no"))
    if r.violation:
        lines.append(f"THEOREM VIOLATION: {r.violation}")
    _emit(args, payload, lines)
    return EXIT_VIOLATION if r.violation else EXIT_OK


def cmd_engel_rep(args) -> int:
    rep = _load_pair(args.algebra, args.rep)
    r = engel.engel_report(rep)
    F = rep.field
    payload = {
        "hypothesis_satisfied": r.t_nilpotent,
        "t_nilpotent": r.t_nilpotent,
        "s_nilpotent": r.s_nilpotent,
        "t_chain_dims": r.t_flag.dims if r.t_flag else None,
        "chain_dims": r.flag.dims if r.flag else None,
        "witness": _fmt_vec(F, r.witness) if r.witness is not None else None,
        "failure_stage": r.failure_point.stage if r.failure_point else None,
        "violation": r.violation,
    }
    if not r.t_nilpotent:
        lines = [f"hypothesis not satisfied: some T_a is not nilpotent "
                 f"(flag stalls at stage {r.failure_point.stage})"]
    elif r.violation:
        lines = [f"THEOREM VIOLATION: {r.violation}"]
    else:
        lines = [f"T flag chain dims: {r.t_flag.dims}",
                 f"joint T,S flag chain dims: {r.flag.dims}",
                 f"witness v with T_a v = S_a v = 0: {payload['witness']}"]
    _emit(args, payload, lines)
    return EXIT_VIOLATION if r.violation else EXIT_OK


def cmd_extend(args) -> int:
    rep = _load_pair(args.algebra, args.rep)
    X = reps.split_extension(rep.algebra, rep)
    write_text(args.out, dumps(algebra_to_json(X)))
    print(f"wrote split extension of dim {X.dim} to {args.out}")
    return EXIT_OK


def cmd_verify_irred(args) -> int:
    rep = _load_pair(args.algebra, args.rep)
    F = rep.field
    try:
        r = engel.verify_irred_theorem(rep)
    except engel.NotIrreducible as exc:
        w = exc.witness
        payload = {"irreducible": False,
                   "witness": [_fmt_vec(F, v) for v in w.subspace.basis],
                   "generator": _fmt_vec(F, w.generator)}
        _emit(args, payload, [f"not irreducible: invariant subspace spanned by {payload['witness']}"])
        return EXIT_VIOLATION
    certified = F.is_finite or rep.dim <= 1
    payload = {
        "irreducible": True,
        "certified": certified,
        "centraliser_dim": r.centraliser.dim,
        "quotient_dim": r.quotient_dim,
        "quotient_is_lie": r.quotient_is_lie,
        "branch": r.branch,
        "violation": r.violation,
    }
    lines = [
        "irreducible: " + ("certified" if certified else "assumed (no witness found over Q)"),
        f"centraliser dim: {r.centraliser.dim}; quotient dim {r.quotient_dim}, "
        f"Lie: {str(r.quotient_is_lie).lower()}",
        f"branch: {r.branch}",
    ]
    if r.violation:
        lines.append(f"THEOREM VIOLATION: {r.violation}")
    _emit(args, payload, lines)
    return EXIT_VIOLATION if r.violation else EXIT_OK


def cmd_selftest(args) -> int:
    results = properties.run_all(args.seed, inject_fault=args.inject_fault)
    ok = all(r.passed for r in results)
    payload = {"seed": args.seed, "ok": ok, "suites": [r.to_json() for r in results]}
    lines = [f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.checks} checks" for r in results]
    failed = next((r for r in results if not r.passed), None)
    if failed:
        lines.append(f"first failure in {failed.name}: "
                     + json.dumps(failed.counterexample, sort_keys=True))
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_export(args) -> int:
    try:
        L = gen.catalog_algebra(args.name, args.field)
    except KeyError as exc:
        raise _Exit(EXIT_PARSE, str(exc.args[0])) from exc
    text = dumps(algebra_to_json(L))
    if args.out:
        write_text(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _default_seed() -> int:
    raw = os.environ.get("ENGEL_LAB_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="engel-lab", description="Leibniz algebras, bimodules and Engel flags.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help, alg=True, rep=False, js=True):
        sp = sub.add_parser(name, help=help)
        if alg:
            sp.add_argument("algebra", help="algebra JSON file")
        if rep:
            sp.add_argument("rep", help="representation JSON file")
        if js:
            sp.add_argument("--json", action="store_true", help="emit a JSON report")
        sp.set_defaults(func=func)
        return sp

    add("validate", cmd_validate, "check the left Leibniz identity")
    add("analyze", cmd_analyze, "Leibniz kernel, lower central series, nilpotency")
    add("engel", cmd_engel, "flag for the left multiplications vs nilpotency")
    add("engel-rep", cmd_engel_rep, "flags and common null vector for a bimodule", rep=True)
    sp = add("extend", cmd_extend, "write the split extension as an algebra file", rep=True, js=False)
    sp.add_argument("out", help="output algebra JSON file")
    add("verify-irred", cmd_verify_irred, "structure of an irreducible bimodule", rep=True)
    sp = add("selftest", cmd_selftest, "run every property suite on seeded instances", alg=False)
    sp.add_argument("--seed", type=int, default=_default_seed(),
                    help="instance seed (default: $ENGEL_LAB_SEED or 0)")
    sp.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    sp = add("export", cmd_export, "write a catalog algebra as an algebra file", alg=False, js=False)
    sp.add_argument("name", help="catalog name, e.g. A2, NF3, H3, sl2")
    sp.add_argument("out", nargs="?", help="output path (default: stdout)")
    sp.add_argument("--field", type=_parse_field, default=FieldSpec(), help="Q or Fp (e.g. F5)")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except _Exit as exc:
        print(exc.message, file=sys.stderr if exc.code == EXIT_PARSE else sys.stdout)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
