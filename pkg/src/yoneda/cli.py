"""Command line front end: ``yoneda <command> [options]``.

Exit codes: 0 all checks passed, 1 a check failed, 2 bad input,
3 internal invariant violation. Reports are JSON with sorted keys and a
``schema_version`` field.
"""

from __future__ import annotations

import argparse
import json
import sys
import traceback
from typing import Any, Sequence

from .exactla import FieldSpec
from .keller import (
    KellerError,
    SequenceLengths,
    build_b,
    check_m_ell_identity,
    check_vanishing_groups,
    generation_closure,
    kupisch_from_sequence,
)
from .quiveralg import (
    AlgebraError,
    algebra_from_json,
    algebra_to_json,
    make_nakayama_cyclic,
    make_nakayama_linear,
    truncated_polynomial,
)
from .quiveralg.module import ModuleError
from .resolution import chain_counts, ext_table
from .suites import MAX_P, enumerate_cyclic, enumerate_kupisch
from .transfer import (
    PIVOT_RULES,
    SCHEMA_VERSION,
    ContractionError,
    HomComplexError,
    check_stasheff,
    transfer_minimal_model,
)

MAX_DEGREE = 12
COMMANDS = ("ext", "chains", "transfer", "check-stasheff", "check-generation",
            "build-b", "check-keller", "madsen")

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class InputError(Exception):
    pass


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="yoneda", description="Ext algebras and their A-infinity structure "
                                 "for monomial and Nakayama algebras.")
    ap.add_argument("command", choices=COMMANDS)
    src = ap.add_mutually_exclusive_group()
    src.add_argument("--algebra", metavar="SPEC.json", help="algebra specification file")
    src.add_argument("--kupisch", metavar="C", help="linear Nakayama algebra, e.g. 1,2,2")
    src.add_argument("--cyclic", metavar="C", help="cyclic Nakayama algebra, e.g. 3 for k[x]/(x^3)")
    src.add_argument("--lengths", metavar="L", help="interior lengths of an exact sequence, e.g. 3,3,2")
    ap.add_argument("--max-degree", type=int, default=None, metavar="D")
    ap.add_argument("--k-max", type=int, default=None, metavar="K")
    ap.add_argument("--field", default=None, help="q or fp:P (default fp:32003)")
    ap.add_argument("--out", default=None, help="report path (default stdout)")
    ap.add_argument("--format", choices=("json", "csv"), default="json")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--ell", type=int, default=None, help="exponent for the madsen command")
    ap.add_argument("--pivot-rule", choices=PIVOT_RULES, default="leftmost")
    ap.add_argument("--mutate", default=None, metavar="LABELS",
                    help="check-stasheff: add 1 to the first output coordinate of m_k on these basis labels")
    ap.add_argument("--exhaustive", type=int, default=None, metavar="P",
                    help="check-generation over all linear Kupisch series of length <= P")
    ap.add_argument("--exhaustive-cyclic", type=int, default=None, metavar="P",
                    help="check-generation over all cyclic series of length <= P (with --c-max)")
    ap.add_argument("--c-max", type=int, default=5)
    return ap


def _field(args) -> FieldSpec | None:
    if args.field is None:
        return None
    try:
        return FieldSpec.parse(args.field)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _algebra(args, field: FieldSpec | None):
    F = field or FieldSpec.prime()
    if args.algebra:
        try:
            with open(args.algebra) as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read {args.algebra}: {exc}") from None
        return algebra_from_json(doc, field)
    if args.kupisch:
        return make_nakayama_linear(_ints(args.kupisch), F)
    if args.cyclic:
        return make_nakayama_cyclic(_ints(args.cyclic), F)
    if args.lengths:
        return build_b(_ints(args.lengths), F).alg
    raise InputError("no algebra given (use --algebra, --kupisch, --cyclic or --lengths)")


def _degree(args, default: int) -> int:
    D = default if args.max_degree is None else args.max_degree
    if not 0 <= D <= MAX_DEGREE:
        raise InputError(f"--max-degree must be in 0..{MAX_DEGREE}")
    return D


def _kmax(args, D: int, default: int) -> int:
    K = default if args.k_max is None else args.k_max
    if not 2 <= K <= D + 1:
        raise InputError(f"--k-max must be in 2..{D + 1}")
    return K


def _report(alg=None, **body) -> dict:
    out = {"schema_version": SCHEMA_VERSION}
    if alg is not None:
        out["algebra"] = algebra_to_json(alg)
    out.update(body)
    return out


def cmd_ext(args):
    field = _field(args)
    alg = _algebra(args, field)
    D = _degree(args, 4)
    ext = ext_table(alg, D)
    if args.format == "csv":
        return EXIT_OK, ext.to_csv()
    return EXIT_OK, _report(alg, command="ext", ext=ext.to_json(), passed=True)


def cmd_chains(args):
    alg = _algebra(args, _field(args))
    D = _degree(args, 4)
    ext = ext_table(alg, D)
    rows, ok = [], True
    for n in range(D + 1):
        counts = chain_counts(alg, n)
        for j in alg.vertices:
            for i in alg.vertices:
                c, e = counts.get((j, i), 0), ext.dim(n, j, i)
                ok &= c == e
                if c or e:
                    rows.append({"n": n, "src": j, "tgt": i, "chains": c, "ext": e, "match": c == e})
    if args.format == "csv":
        lines = ["n,src,tgt,chains,ext"] + [f"{r['n']},{r['src']},{r['tgt']},{r['chains']},{r['ext']}" for r in rows]
        return (EXIT_OK if ok else EXIT_FAIL), "\n".join(lines) + "\n"
    return (EXIT_OK if ok else EXIT_FAIL), _report(alg, command="chains", degree=D, counts=rows, passed=ok)


def _transfer(args, alg, D_default=4, k_default=4):
    D = _degree(args, D_default)
    if D < 1:
        raise InputError("--max-degree must be >= 1 for A-infinity computations")
    K = _kmax(args, D, min(k_default, D + 1))
    return transfer_minimal_model(alg, D, K, pivot_rule=args.pivot_rule)


def cmd_transfer(args):
    alg = _algebra(args, _field(args))
    A = _transfer(args, alg)
    return EXIT_OK, _report(alg, command="transfer", structure=A.to_json(), passed=True)


def cmd_check_stasheff(args):
    alg = _algebra(args, _field(args))
    A = _transfer(args, alg)
    mutated = None
    if args.mutate:
        labels = [t.strip() for t in args.mutate.split(",") if t.strip()]
        try:
            xs = tuple(A.ext.by_label[t] for t in labels)
        except KeyError as exc:
            raise InputError(f"unknown basis label {exc}") from None
        if not 2 <= len(xs) <= A.k_max or not A.is_trusted(xs):
            raise InputError("mutated tuple must have arity in 2..k_max and trusted output degree")
        n, s, t = A.output_block(xs)
        dim = A.ext.dim(n, s, t)
        if dim == 0:
            raise InputError("mutated tuple has no output space")
        delta = A.field.zeros(dim)
        delta[0] = A.field.scalar(1)
        A = A.perturbed(xs, delta)
        mutated = labels
    rep = check_stasheff(A)
    return (EXIT_OK if rep.passed else EXIT_FAIL), _report(
        alg, command="check-stasheff", mutated=mutated, stasheff=rep.to_json(), passed=rep.passed)


def _generation_one(alg, args):
    A = _transfer(args, alg, D_default=5, k_default=6)
    g = generation_closure(A, seed=args.seed)
    st = check_stasheff(A)
    return g, st


def cmd_check_generation(args):
    field = _field(args) or FieldSpec.prime()
    if args.exhaustive is not None or args.exhaustive_cyclic is not None:
        algs = []
        for P, kind in ((args.exhaustive, "linear"), (args.exhaustive_cyclic, "cyclic")):
            if P is None:
                continue
            if not 1 <= P <= MAX_P:
                raise InputError(f"exhaustive bound must be in 1..{MAX_P}")
            if kind == "linear":
                algs += [make_nakayama_linear(s, field) for s in enumerate_kupisch(P)]
            else:
                if args.c_max < 2:
                    raise InputError("--c-max must be >= 2")
                algs += [make_nakayama_cyclic(s, field) for s in enumerate_cyclic(P, args.c_max)]
        results, ok = [], True
        for alg in algs:
            g, st = _generation_one(alg, args)
            good = g.passed and st.passed
            ok &= good
            results.append({"algebra": algebra_to_json(alg)["algebra"], "generation": g.passed,
                            "stasheff": st.passed, "iterations": g.iterations,
                            "dim_ext": [g.dim_ext[n] for n in sorted(g.dim_ext)],
                            "dim_closure": [g.dim_closure[n] for n in sorted(g.dim_closure)]})
        return (EXIT_OK if ok else EXIT_FAIL), _report(
            None, command="check-generation", instances=len(results), results=results, passed=ok)
    alg = _algebra(args, _field(args))
    g, st = _generation_one(alg, args)
    ok = g.passed and st.passed
    return (EXIT_OK if ok else EXIT_FAIL), _report(
        alg, command="check-generation", generation=g.to_json(), stasheff=st.to_json(), passed=ok)


def _lengths(args) -> SequenceLengths:
    if not args.lengths:
        raise InputError("--lengths is required")
    return SequenceLengths(tuple(_ints(args.lengths)))


def cmd_build_b(args):
    s = _lengths(args)
    series, p = kupisch_from_sequence(s)
    return EXIT_OK, _report(None, command="build-b", p=p, kupisch=list(series.c),
                            lengths=s.to_json(), passed=True)


def cmd_check_keller(args):
    s = _lengths(args)
    B = build_b(s, _field(args) or FieldSpec.prime())
    D = _degree(args, s.d + 1)
    if D < s.d + 1:
        raise InputError(f"--max-degree must be >= d + 1 = {s.d + 1}")
    K = _kmax(args, D, max(s.ell, 2))
    if K < s.ell:
        raise InputError(f"--k-max must be >= l = {s.ell}")
    runs = {}
    ok = True
    for rule in PIVOT_RULES:
        A = transfer_minimal_model(B.alg, D, K, pivot_rule=rule)
        m = check_m_ell_identity(B, A)
        st = check_stasheff(A)
        runs[rule] = {"m_ell": m.to_json(), "stasheff": st.to_json()}
        ok &= m.passed and st.passed
    van = check_vanishing_groups(B, A.ext)
    ok &= van.passed
    return (EXIT_OK if ok else EXIT_FAIL), _report(
        B.alg, command="check-keller", lengths=s.to_json(), kupisch=list(B.series.c),
        runs=runs, vanishing=van.to_json(), passed=ok)


def cmd_madsen(args):
    if args.ell is None or args.ell < 2:
        raise InputError("--ell >= 2 is required")
    ell = args.ell
    field = _field(args) or FieldSpec.prime()
    alg = truncated_polynomial(ell, field)
    D = _degree(args, 6)
    if D < 2:
        raise InputError("--max-degree must be >= 2")
    K = _kmax(args, D, min(max(ell, 2), D + 1))
    if K < ell:
        raise InputError(f"--k-max must be >= ell = {ell}")
    ext = ext_table(alg, D)
    dims = [ext.total_dim(n) for n in range(D + 1)]
    A = transfer_minimal_model(alg, D, K, pivot_rule=args.pivot_rule)
    F = A.field
    u = A.ext.block(1, 1, 1)[0]
    ops, ok = [], all(x == 1 for x in dims)
    for k in range(2, K + 1):
        val = A.m((u,) * k)
        zero = F.is_zero(val)
        expect_zero = k != ell
        ok &= zero == expect_zero
        ops.append({"k": k, "value": [F.format(x) for x in val], "zero": bool(zero),
                    "expected_zero": expect_zero})
    st = check_stasheff(A)
    ok &= st.passed
    return (EXIT_OK if ok else EXIT_FAIL), _report(
        alg, command="madsen", ell=ell, dims=dims, m_u=ops, stasheff=st.to_json(), passed=bool(ok))


HANDLERS = {
    "ext": cmd_ext,
    "chains": cmd_chains,
    "transfer": cmd_transfer,
    "check-stasheff": cmd_check_stasheff,
    "check-generation": cmd_check_generation,
    "build-b": cmd_build_b,
    "check-keller": cmd_check_keller,
    "madsen": cmd_madsen,
}


def _emit(report: Any, out: str | None) -> None:
    text = report if isinstance(report, str) else json.dumps(report, sort_keys=True, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv: Sequence[str] | None = None) -> int:
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        code, report = HANDLERS[args.command](args)
    except (InputError, KellerError, AlgebraError) as exc:
        print(f"yoneda: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ContractionError, HomComplexError, ModuleError, Exception) as exc:  # noqa: BLE001
        print(f"yoneda: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        traceback.print_exc(file=sys.stderr)
        return EXIT_INTERNAL
    _emit(report, args.out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
