"""Command-line front end: ``surfcodes <subcommand> [flags]``.

Human-readable tables go to standard output; ``--format json`` prints the
machine format instead, and ``--out PATH`` writes it to a file.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import codes, experiments, laurent, ldpc, parity, projgeo
from .gf import FieldError, parse_field
from .rings import QQ


class CliError(Exception):
    pass


def _read_arg(value: str) -> str:
    if value.startswith("@"):
        return Path(value[1:]).read_text().strip()
    return value


def _surface(args):
    if not args.surface:
        raise CliError("projgeo: --surface is required")
    spec = parse_field(args.field)
    try:
        S = projgeo.parse_surface(_read_arg(args.surface), spec)
    except ValueError as exc:
        raise CliError(f"projgeo: {exc}") from exc
    order = projgeo.load_point_order(args.order_file, spec) if args.order_file else None
    affine, at_inf = projgeo.surface_points(S, order)
    return spec, S, affine, at_inf


def _emit(args, human: str, machine: str):
    if args.out:
        Path(args.out).write_text(machine + ("\n" if not machine.endswith("\n") else ""))
    print(machine if args.format == "json" else human)


def _fmt_point(spec, p) -> str:
    return "(" + " : ".join(spec.format(c) for c in p.coords) + ")"


def points_to_json(spec, affine, at_inf) -> str:
    return json.dumps({
        "field": {"p": spec.p, "e": spec.e, "modulus": list(spec.modulus)},
        "affine": [list(p.affine()) for p in affine],
        "at_infinity": [list(p.coords) for p in at_inf],
    })


def points_from_json(text: str):
    raw = json.loads(text)
    from .gf import field_new

    spec = field_new(raw["field"]["p"], raw["field"]["e"])
    affine = [projgeo.ProjectivePoint.from_affine(spec, a) for a in raw["affine"]]
    at_inf = [projgeo.ProjectivePoint(tuple(c), spec) for c in raw["at_infinity"]]
    return spec, affine, at_inf


def cmd_points(args) -> int:
    spec, S, affine, at_inf = _surface(args)
    lines = [f"surface {S} over {spec!r}", f"{len(affine)} affine points:"]
    for i, p in enumerate(affine, 1):
        lines.append(f"  P{i} = " + "(" + " : ".join(spec.format(c) for c in p.affine() + (1,)) + ")")
    lines.append(f"{len(at_inf)} points at infinity:")
    lines += ["  " + _fmt_point(spec, p) for p in at_inf]
    _emit(args, "\n".join(lines), points_to_json(spec, affine, at_inf))
    return 0


def cmd_code(args) -> int:
    spec, S, affine, _ = _surface(args)
    try:
        C = codes.functional_code(S, args.m, affine)
    except ValueError as exc:
        raise CliError(f"codes: {exc}") from exc
    human = [f"functional code [{C.n},{C.k}] over {spec!r} (m = {args.m})"]
    if spec.q**C.k <= codes.DEFAULT_BUDGET:
        human[0] = human[0][:-1] + f", d = {codes.min_distance_bruteforce(C)})"
    human.append(codes.matrix_to_text(spec, C.generator))
    _emit(args, "\n".join(human), codes.code_to_json(C))
    return 0


def cmd_parity(args) -> int:
    spec, S, affine, _ = _surface(args)
    try:
        res = parity.is_positive_test(S, args.m, affine)
    except ValueError as exc:
        raise CliError(f"residue-parity: {exc}") from exc
    H = res.matrix
    human = [
        f"{len(H.rows)} parity rows, n = {res.n}, k = {res.k}, rank = {res.rank}, "
        f"{'positive' if res.positive else 'negative'} (gap {res.gap})",
        H.to_text(),
    ]
    if args.verbose:
        for r in H.rows:
            eqs = r.line.equations().tolist()
            human.append(f"  line {eqs} support {[i + 1 for i in r.support]} direction {list(r.direction)}")
    _emit(args, "\n".join(human), H.to_json())
    return 0


def _load_decode_input(args):
    if args.input:
        raw = json.loads(_read_arg("@" + args.input if not args.input.startswith("@") else args.input))
        spec = parse_field(raw.get("field", args.field))
        H = np.array([[spec.parse(v) if isinstance(v, str) else int(v) for v in row] for row in raw["H"]])
        y = [spec.parse(v) if isinstance(v, str) else int(v) for v in raw["y"]]
        return ldpc.tanner_from_matrix(H, spec), y
    spec, S, affine, _ = _surface(args)
    H = parity.build_parity_matrix(S, args.m, affine)
    if not args.word:
        raise CliError("ldpc: --word is required when decoding on a surface")
    y = [spec.parse(v) for v in args.word.split(",")]
    return ldpc.tanner_from_matrix(H), y


def cmd_decode(args) -> int:
    graph, y = _load_decode_input(args)
    try:
        res = ldpc.decode(graph, y, args.iters, args.ties, keep_snapshots=True)
    except ValueError as exc:
        raise CliError(f"ldpc: {exc}") from exc
    spec = graph.spec
    word = ",".join("?" if w is None else spec.format(w) for w in res.word)
    human = [f"decoded after {res.iterations} iterations: ({word})"]
    for i, c in enumerate(res.costs, 1):
        human.append(f"  C_glob^{i} = {c.to_list()}")
    _emit(args, "\n".join(human), ldpc.trace_to_json(res))
    return 0


def cmd_table(args) -> int:
    spec = parse_field(args.field)
    d = args.degree if args.degree else args.m + 2

    def stream(rec):
        if args.verbose:
            print(rec.to_json(), flush=True)

    try:
        summary = experiments.run_table(spec, d, args.m, args.trials, args.seed, args.smooth_mode, stream)
    except (ValueError, RuntimeError) as exc:
        raise CliError(f"experiments: {exc}") from exc
    csv_text = experiments.summaries_to_csv([summary])
    gap = "-" if summary.mean_gap_negative != summary.mean_gap_negative else f"{summary.mean_gap_negative:.2f}"
    human = (
        f"F_{spec.q}, degree {d}, m = {args.m}: {summary.positives}/{summary.trials} positive "
        f"({100 * summary.rate:.2f} %), mean gap {gap}, mean length {summary.mean_length:.2f}, "
        f"smoothness {summary.smooth_mode}, rejected {summary.rejected_singular} singular / "
        f"{summary.rejected_empty} empty"
    )
    if args.out:
        Path(args.out).write_text(csv_text)
    print(csv_text.rstrip() if args.format == "json" else human)
    return 0


def residue_demo() -> list[tuple[str, object]]:
    """The three residues of dx/x ^ dy/y along different curve presentations, and the x dx^dy/y^2 example."""
    P = laurent.parse_series
    w = laurent.Form2(P("x^-1*y^-1", QQ, ("x", "y")), ("x", "y"))
    out = [("dx/x^dy/y along (x;y)", laurent.res2(w))]
    out.append(("dx/x^dy/y along (y;x)", laurent.res2(w.swap())))
    # y = v + x: the pair (x, v) is not a change of variables of the admissible kind
    pulled = laurent.pullback(w, P("x", QQ, ("x", "v")), P("v+x", QQ, ("x", "v")), variables=("x", "v"))
    out.append(("dx/x^dy/y with y = v + x", laurent.res2(pulled)))
    ex = laurent.Form2(P("x*y^-2", QQ, ("x", "y")), ("x", "y"))
    out.append(("res1 of x dx^dy/y^2", _fmt1(laurent.res1(ex).terms(), "x")))
    moved = laurent.apply_cv(ex, laurent.ChangeOfVars(P("u+y", QQ, ("u", "y")), P("y", QQ, ("u", "y"))),
                             variables=("u", "y"))
    out.append(("res1 after x = u + y", _fmt1(laurent.res1(moved).terms(), "u")))
    return out


def _fmt1(terms: dict, var: str) -> str:
    if not terms:
        return "0"
    parts = []
    for i, c in sorted(terms.items()):
        mon = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        parts.append(str(c) if not mon else (mon if c == 1 else f"{c}*{mon}"))
    return " + ".join(parts) + f" d{var}"


def cmd_residue_demo(args) -> int:
    vals = residue_demo()
    human = "\n".join(f"{name}: {val}" for name, val in vals)
    machine = json.dumps({name: str(v) for name, v in vals})
    _emit(args, human, machine)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="surfcodes", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="3^1", help="base field as p^e")
    common.add_argument("--surface", help="surface equation in X,Y,Z,T, or @file")
    common.add_argument("--m", type=int, default=1, help="degree bound of the functional code")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=100)
    common.add_argument("--iters", type=int, default=10, help="min-sum iterations")
    common.add_argument("--smooth-mode", choices=["full", "rational"], default="full")
    common.add_argument("--order-file", help="JSON list of affine points fixing their order")
    common.add_argument("--out", help="write the machine-readable output here")
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--verbose", action="store_true")
    for name, fn, extra in [
        ("points", cmd_points, None),
        ("code", cmd_code, None),
        ("parity", cmd_parity, None),
        ("decode", cmd_decode, "decode"),
        ("table", cmd_table, "table"),
        ("residue_demo", cmd_residue_demo, None),
    ]:
        sp = sub.add_parser(name, parents=[common])
        sp.set_defaults(func=fn)
        if extra == "decode":
            sp.add_argument("--input", help="JSON file with field, H and y")
            sp.add_argument("--word", help="comma-separated received symbols")
            sp.add_argument("--ties", choices=["undecided", "keep"], default="undecided")
        if extra == "table":
            sp.add_argument("--degree", type=int, default=0, help="surface degree (default m+2)")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, FieldError, laurent.PrecisionError, codes.BudgetExceeded, OSError,
            json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
