"""Command-line front end.

Exit status: 0 on success (including a witness), 10 when an obstruction is
established, 2 on usage or parameter errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import criterion, enumeration, generators, oracles, pipeline
from .domains import format_rational, parse_domain, parse_rational
from .errors import ToricECHError
from .generators import ConvexGenerator, parse_generator

SCHEMA = 1
EXIT_OK = 0
EXIT_USAGE = 2
EXIT_OBSTRUCTED = 10


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _gen(text: str) -> ConvexGenerator:
    try:
        return parse_generator(text)
    except ToricECHError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _dom(text: str):
    try:
        return parse_domain(text)
    except ToricECHError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _rat(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ToricECHError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def _positive(text: str) -> int:
    v = _nonneg(text)
    if v == 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


# ---- output -----------------------------------------------------------------


class Output:
    """Collects a payload and renders it as json, csv or text."""

    def __init__(self, fmt: str):
        self.fmt = fmt
        self.color = fmt == "text" and sys.stdout.isatty() and "NO_COLOR" not in os.environ

    def emit(self, payload: dict, rows=None, header=None, text=None) -> str:
        if self.fmt == "json":
            return json.dumps({"schema": SCHEMA, **payload}, indent=2) + "\n"
        if self.fmt == "csv":
            if rows is None:
                rows = [[k, _cell(v)] for k, v in payload.items()]
                header = header or ["key", "value"]
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            if header:
                w.writerow(header)
            w.writerows(rows)
            return buf.getvalue()
        if text is None:
            text = "\n".join(f"{k}: {_cell(v)}" for k, v in payload.items())
        return text + "\n"

    def verdict(self, word: str, good: bool) -> str:
        if not self.color:
            return word
        return f"\033[{32 if good else 31}m{word}\033[0m"


def _cell(v) -> str:
    if isinstance(v, (list, tuple)):
        return ";".join(_cell(t) for t in v)
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    if isinstance(v, Fraction):
        return format_rational(v)
    return str(v)


def _stats_payload(g: ConvexGenerator) -> dict:
    s = g.stats
    lc = generators.lattice_count(g)
    return {
        "generator": str(g),
        "x": s.x,
        "y": s.y,
        "m": s.m,
        "h": s.h,
        "b": s.b,
        "doubled_area": s.doubled_area,
        "L": s.L,
        "index": s.index,
        "interior_points": lc.interior,
        "boundary_points": lc.boundary,
    }


# ---- subcommands ------------------------------------------------------------


def cmd_stats(args, out):
    return EXIT_OK, out.emit(_stats_payload(args.generator))


def cmd_index(args, out):
    g = args.generator
    return EXIT_OK, out.emit({"generator": str(g), "index": g.index}, text=str(g.index))


def cmd_product(args, out):
    g1, g2 = args.left, args.right
    p = generators.product(g1, g2)
    payload = {
        "left": str(g1),
        "right": str(g2),
        "product": str(p),
        "index": p.index,
        "index_formula": generators.product_index_formula(g1, g2),
    }
    return EXIT_OK, out.emit(payload)


def cmd_action(args, out):
    a = args.domain.action(args.generator)
    payload = {"domain": str(args.domain), "generator": str(args.generator), "action": format_rational(a)}
    return EXIT_OK, out.emit(payload, text=format_rational(a))


def cmd_capacities(args, out):
    caps = enumeration.capacities(args.domain, args.k_max)
    rows = [[k, c.numerator, c.denominator] for k, c in enumerate(caps)]
    payload = {
        "domain": str(args.domain),
        "capacities": [{"k": k, "capacity": format_rational(c)} for k, c in enumerate(caps)],
    }
    text = "\n".join(f"c_{k} = {format_rational(c)}" for k, c in enumerate(caps))
    return EXIT_OK, out.emit(payload, rows=rows, header=["k", "capacity_num", "capacity_den"], text=text)


def cmd_minimal(args, out):
    dom = args.domain
    if args.generator is not None:
        g = args.generator
        if not g.all_e or g.index % 2:
            raise ToricECHError("minimality is defined for all-e generators of even index")
        ok = enumeration.is_minimal(dom, g)
        payload = {"domain": str(dom), "generator": str(g), "minimal": ok}
        return EXIT_OK, out.emit(payload, text=f"{g} minimal for {dom}: {ok}")
    if args.k is None:
        raise UsageError("minimal: give --k or --generator")
    gens = enumeration.minimal_generators(dom, args.k)
    payload = {
        "domain": str(dom),
        "k": args.k,
        "capacity": format_rational(enumeration.capacity(dom, args.k)),
        "minimizers": [str(g) for g in gens],
        "unique": len(gens) == 1,
    }
    rows = [[str(g)] for g in gens]
    return EXIT_OK, out.emit(payload, rows=rows, header=["generator"], text="\n".join(map(str, gens)))


def cmd_enumerate(args, out):
    cap = None
    if args.max_action is not None:
        if args.domain is None:
            raise UsageError("enumerate: --max-action needs --domain")
        cap = (args.domain, args.max_action)
    bounds = enumeration.EnumBounds(
        max_x=args.max_x,
        max_y=args.max_y,
        target_index=args.index,
        max_action=cap,
        allow_h=args.allow_h,
    )
    gens = list(enumeration.enumerate_generators(bounds))
    payload = {"count": len(gens), "generators": [str(g) for g in gens]}
    rows = [[str(g), g.index] for g in gens]
    text = "\n".join(f"{g}\tI={g.index}" for g in gens)
    return EXIT_OK, out.emit(payload, rows=rows, header=["generator", "index"], text=text)


def cmd_leq(args, out):
    w = criterion.leq(args.source, args.dest, args.lhs, args.rhs)
    payload = {
        "source": str(args.source),
        "dest": str(args.dest),
        "lhs": str(w.lhs),
        "rhs": str(w.rhs),
        "index_ok": w.index_ok,
        "action_ok": w.action_ok,
        "genus_ok": w.genus_ok,
        "holds": w.holds,
    }
    return EXIT_OK, out.emit(payload)


def cmd_obstruct(args, out):
    if args.nonminimal_target:
        raise UsageError("obstruct: --nonminimal-target is not supported")
    cfg = criterion.CriterionConfig(
        args.source,
        args.dest,
        args.target,
        max_parts=args.max_parts,
        forbid_repeats=args.forbid_repeats,
        check_minimal=not args.skip_minimal_check,
    )
    rep = criterion.run_criterion(cfg)
    payload = {"source": str(args.source), "dest": str(args.dest), "target": str(args.target), **rep.to_dict()}
    lines = [f"outcome: {out.verdict(rep.outcome, not rep.obstructed)}"]
    if rep.witness:
        lines += [f"  {p}  >=  {g}" for p, g in rep.witness]
    lines.append(f"nodes explored: {rep.nodes_explored}")
    code = EXIT_OBSTRUCTED if rep.obstructed else EXIT_OK
    return code, out.emit(payload, text="\n".join(lines))


def cmd_pipeline(args, out):
    if args.explain_endpoint:
        return EXIT_OK, out.emit({"explanation": pipeline.ENDPOINT_NOTE}, text=pipeline.ENDPOINT_NOTE)
    if args.a is None or args.c is None:
        raise UsageError("pipeline: --a and --c are required")
    rep = pipeline.obstruction_pipeline(pipeline.PipelineParams(args.a, args.c, args.d_max))
    payload = rep.to_dict()
    payload.pop("schema")
    if args.trace:
        payload["trace_markdown"] = rep.markdown()
    if args.trace and out.fmt == "text":
        text = rep.markdown()
    else:
        text = "\n".join(
            [
                f"d_a = {rep.d_a}",
                f"N = {rep.N}",
                f"D = {rep.D}",
                f"verdict: {out.verdict(rep.verdict, False)}",
            ]
        )
    code = EXIT_OBSTRUCTED if rep.verdict == pipeline.EMBEDDING_OBSTRUCTED else EXIT_OK
    return code, out.emit(payload, text=text)


def cmd_construct(args, out):
    if args.kind == "large-d":
        g = pipeline.large_d_witness(args.d)
        payload = {"kind": "large-d", "d": args.d, "generator": str(g), "x": g.x, "y": g.y, "index": g.index}
        return EXIT_OK, out.emit(payload, text=str(g))
    if args.delta is None:
        raise UsageError("construct y: --delta is required")
    y, x = enumeration.construct_Y_sequence(args.d, args.delta)
    payload = {"kind": "y", "d": args.d, "delta": args.delta, "Y": str(y), "X": str(x)}
    return EXIT_OK, out.emit(payload, text=f"Y = {y}\nX = {x}")


def cmd_witness(args, out):
    eps, lam = pipeline.sharpness_witness(args.a, args.d)
    payload = {
        "a": format_rational(args.a),
        "d": args.d,
        "epsilon": format_rational(eps),
        "c": format_rational(2 + args.a / 2 - eps),
        "witness": str(lam),
    }
    return EXIT_OK, out.emit(payload)


def cmd_verify(args, out):
    results = oracles.run_all(quick=not args.full, seed=args.seed)
    payload = {"suites": [r.to_dict() for r in results], "passed": all(r.passed for r in results)}
    rows = [[r.name, r.checked, len(r.failures)] for r in results]
    text = "\n".join(
        f"{out.verdict('PASS' if r.passed else 'FAIL', r.passed)} {r.name}: {r.checked} checked, {len(r.failures)} failed"
        for r in results
    )
    code = EXIT_OK if payload["passed"] else 1
    return code, out.emit(payload, rows=rows, header=["suite", "checked", "failed"], text=text)


# ---- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "text"], default="json")

    p = _Parser(prog="toric-ech", description="Exact ECH computations for convex toric domains.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    sp = add("stats", cmd_stats, "invariants of a generator")
    sp.add_argument("generator", type=_gen)

    sp = add("index", cmd_index, "ECH index of a generator")
    sp.add_argument("generator", type=_gen)

    sp = add("product", cmd_product, "product of two generators")
    sp.add_argument("left", type=_gen)
    sp.add_argument("right", type=_gen)

    sp = add("action", cmd_action, "action of a generator in a domain")
    sp.add_argument("domain", type=_dom)
    sp.add_argument("generator", type=_gen)

    sp = add("capacities", cmd_capacities, "ECH capacities c_0..c_k")
    sp.add_argument("domain", type=_dom)
    sp.add_argument("--k-max", type=_nonneg, required=True)

    sp = add("minimal", cmd_minimal, "minimal generators of index 2k")
    sp.add_argument("domain", type=_dom)
    sp.add_argument("--k", type=_nonneg)
    sp.add_argument("--generator", type=_gen)

    sp = add("enumerate", cmd_enumerate, "generators in a box")
    sp.add_argument("--max-x", type=_nonneg, required=True)
    sp.add_argument("--max-y", type=_nonneg, required=True)
    sp.add_argument("--index", type=_nonneg)
    sp.add_argument("--allow-h", action="store_true")
    sp.add_argument("--domain", type=_dom)
    sp.add_argument("--max-action", type=_rat)

    sp = add("leq", cmd_leq, "check lhs <= rhs")
    sp.add_argument("--from", dest="source", type=_dom, required=True)
    sp.add_argument("--to", dest="dest", type=_dom, required=True)
    sp.add_argument("lhs", type=_gen)
    sp.add_argument("rhs", type=_gen)

    sp = add("obstruct", cmd_obstruct, "run the embedding criterion on a target")
    sp.add_argument("--from", dest="source", type=_dom, required=True)
    sp.add_argument("--to", dest="dest", type=_dom, required=True)
    sp.add_argument("target", type=_gen)
    sp.add_argument("--max-parts", type=_positive)
    sp.add_argument("--forbid-repeats", action="store_true")
    sp.add_argument("--skip-minimal-check", action="store_true")
    sp.add_argument("--nonminimal-target", action="store_true", help="not supported; rejected")

    sp = add("pipeline", cmd_pipeline, "decide P(a,1) -> B(c)")
    sp.add_argument("--a", type=_rat)
    sp.add_argument("--c", type=_rat)
    sp.add_argument("--d-max", type=_positive, default=10**7)
    sp.add_argument("--trace", action="store_true")
    sp.add_argument("--explain-endpoint", action="store_true", help="explain the irrational endpoint")

    sp = add("construct", cmd_construct, "explicit generators")
    sp.add_argument("kind", choices=["large-d", "y"])
    sp.add_argument("--d", type=_positive, required=True)
    sp.add_argument("--delta", type=_positive)

    sp = add("witness", cmd_witness, "sharpness witness above the threshold")
    sp.add_argument("--a", type=_rat, required=True)
    sp.add_argument("--d", type=_positive, required=True)

    sp = add("verify", cmd_verify, "run the built-in oracle suites")
    sp.add_argument("--full", action="store_true", help="acceptance-size suites")
    sp.add_argument("--seed", type=int, default=0)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        out = Output(args.format)
        code, text = args.func(args, out)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except (ToricECHError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
