"""Command-line front end: ``realizer <command> ...``.

Exit status is 2 for unreadable input, 1 when something is refuted (or, with
``--strict``, left unknown) and 0 otherwise.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from . import formulas as F
from . import hf, model, pca, trees, typesys
from .corpus import standard_codes
from .pca import DEFAULT_FUEL, IR
from .realizability import build_formula_type, check, realizer_pool
from .syntax import (ParseError, parse_code, parse_formula, parse_hf, parse_term,
                     parse_tree, read, show, show_code)
from .typesys import DEFAULT_CUTOFF
from .verdict import Verdict

log = logging.getLogger("realizer")

CONSTS = dict(typesys.TYPE_CONSTS, ir=IR)


class InputError(Exception):
    """Unreadable input file; reported with exit status 2."""


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


def _verdict_json(v: Verdict) -> dict:
    return {"status": v.status, "reason": v.reason, "universe_relative": v.relative}


def _status(v: Verdict, strict: bool) -> int:
    return 1 if v.refuted or (strict and v.unknown) else 0


def _emit(args, text: str, obj: dict) -> None:
    if args.format == "json":
        print(json.dumps(obj, indent=2, ensure_ascii=False))
    else:
        print(text)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_eval(args) -> int:
    term = parse_term(_read(args.file), CONSTS)
    steps = []
    hook = (lambda f, a: steps.append(f"apply {show(f)} to {show(a)}")) if args.trace else None
    res = pca.evaluate(term, args.fuel, trace=hook)
    if isinstance(res, pca.Converged):
        text, obj = f"Converged: {show(res.value)}", {"result": "converged", "value": show(res.value)}
    elif isinstance(res, pca.Stuck):
        text, obj = f"Stuck: {res.site}", {"result": "stuck", "site": res.site}
    else:
        text, obj = f"OutOfFuel: {args.fuel}", {"result": "out-of-fuel", "fuel": args.fuel}
    if args.trace:
        obj["trace"] = steps
        text = "\n".join(steps + [text])
    _emit(args, text, obj)
    return 0


def cmd_dump_tree(args) -> int:
    tree = parse_tree(_read(args.file), CONSTS)
    obj = trees.to_json_obj(tree, args.cutoff, args.fuel)
    if args.dot:
        print(trees.to_dot(tree, args.cutoff, args.fuel))
    else:
        print(json.dumps(obj, indent=2, ensure_ascii=False))
    return 0


def cmd_check_v(args) -> int:
    code = parse_code(_read(args.file), CONSTS)
    v = typesys.is_v_code(code, args.fuel, args.cutoff)
    _emit(args, f"V-code: {v}", {"code": show_code(code), "verdict": _verdict_json(v)})
    return _status(v, args.strict)


def _universe(path: str | None) -> list | None:
    if path is None:
        return None
    return [parse_tree(x, CONSTS) for x in read(_read(path))]


def cmd_check(args) -> int:
    e = pca.compile_term(parse_term(_read(args.realizer), CONSTS), args.fuel)
    phi = parse_formula(_read(args.formula), CONSTS)
    trace = [] if args.trace else None
    v = check(e, phi, args.fuel, args.cutoff, universe=_universe(args.universe),
              pool=realizer_pool(seed=args.seed), trace=trace)
    text = "\n".join((trace or []) + [str(v)])
    obj = {"verdict": _verdict_json(v)}
    if trace is not None:
        obj["trace"] = trace
    _emit(args, text, obj)
    return _status(v, args.strict)


def cmd_compile_type(args) -> int:
    phi = parse_formula(_read(args.formula), CONSTS)
    if not F.is_bounded(phi):
        raise ParseError("only bounded formulas have a type")
    code = build_formula_type(phi, fuel=args.fuel)
    _emit(args, show_code(code), {"type": show_code(code)})
    return 0


def _corpus(source: str) -> list:
    if source == "standard":
        return standard_codes()
    return [(f"#{i}", parse_code(x, CONSTS)) for i, x in enumerate(read(_read(source)))]


def run_axiom(name: str, corpus: str, fuel: int, cutoff: int) -> model.Report:
    codes = None if corpus == "standard" else _corpus(corpus)
    if name in ("transitivity", "union"):
        return model.DRIVERS[name](codes or standard_codes(), fuel=fuel, cutoff=cutoff)
    if name == "separation":
        return model.verify_separation(codes, fuel=fuel, cutoff=cutoff)
    if name == "infinity":
        return model.verify_infinity(cutoff=cutoff, fuel=fuel)
    if name == "strong-collection":
        cases = None if codes is None else model.strong_collection_cases(codes)
        return model.verify_strong_collection(cases, fuel=fuel, cutoff=cutoff)
    pairs = None if codes is None else [(la, a, lb, b) for la, a in codes for lb, b in codes]
    return model.verify_subset_collection(pairs, fuel=fuel, cutoff=cutoff)


def _report_text(rep: model.Report, elapsed: float) -> str:
    c = rep.counts()
    lines = [f"{rep.axiom}: {len(rep.instances)} instances, {c['realized']} realized, "
             f"{c['refuted']} refuted, {c['unknown']} unknown, "
             f"{c['oracle_mismatch']} oracle mismatches ({elapsed:.1f}s)"]
    for inst in rep.instances:
        if not inst.verdict.realized or inst.oracle_ok is False:
            extra = " [oracle mismatch]" if inst.oracle_ok is False else ""
            lines.append(f"  {inst.label}: {inst.verdict}{extra}")
    return "\n".join(lines)


def _report_json(rep: model.Report, elapsed: float) -> dict:
    return {"axiom": rep.axiom, "counts": rep.counts(), "seconds": round(elapsed, 3),
            "instances": [{"label": i.label, "verdict": _verdict_json(i.verdict),
                           "oracle_ok": i.oracle_ok, "detail": i.detail}
                          for i in rep.instances]}


def _report_status(rep: model.Report, strict: bool) -> int:
    c = rep.counts()
    return 1 if not rep.ok or (strict and c["unknown"]) else 0


def cmd_verify_axiom(args) -> int:
    start = time.perf_counter()
    rep = run_axiom(args.name, args.corpus, args.fuel, args.cutoff)
    elapsed = time.perf_counter() - start
    _emit(args, _report_text(rep, elapsed), _report_json(rep, elapsed))
    return _report_status(rep, args.strict)


def _bindings(src: str) -> dict:
    path = Path(src)
    text = path.read_text() if path.is_file() else src
    env = {}
    for item in read(text):
        if not (isinstance(item, list) and len(item) == 2):
            raise ParseError("bindings are (name set) pairs")
        name = str(item[0])
        env[name] = parse_hf(item[1])
    return env


def cmd_hf_eval(args) -> int:
    phi = parse_formula(_read(args.formula), CONSTS)
    env = _bindings(args.env) if args.env else {}
    trace = [] if args.trace else None
    out = hf.truth(phi, env, trace)
    text = "\n".join((trace or []) + ["true" if out else "false"])
    obj = {"truth": out}
    if trace is not None:
        obj["trace"] = trace
    _emit(args, text, obj)
    return 0


DEMO_AXIOMS = ["transitivity", "separation", "union", "infinity",
               "strong-collection", "subset-collection"]


def cmd_demo(args) -> int:
    reports, texts, status = [], [], 0
    for name in DEMO_AXIOMS:
        cutoff = 6 if name == "infinity" else args.cutoff
        start = time.perf_counter()
        rep = run_axiom(name, "standard", args.fuel, cutoff)
        elapsed = time.perf_counter() - start
        log.info("%s done in %.1fs", name, elapsed)
        reports.append(_report_json(rep, elapsed))
        texts.append(_report_text(rep, elapsed))
        status = max(status, _report_status(rep, args.strict))
    texts.append("all realizers verified" if status == 0 else "verification FAILED")
    _emit(args, "\n".join(texts), {"reports": reports, "ok": status == 0})
    return status


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fuel", type=int, default=DEFAULT_FUEL,
                        help="application budget per evaluation (default 10^6)")
    common.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF,
                        help="how many elements of an infinite type to inspect (default 8)")
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--strict", action="store_true", help="treat Unknown as failure")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled realizers")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="realizer",
                                     description="Realizability checker for the V-code model.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate a term")
    p.add_argument("file")
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("dump-tree", parents=[common], help="print a tree as JSON or DOT")
    p.add_argument("file")
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_dump_tree)

    p = sub.add_parser("check-v", parents=[common], help="decide whether a code is a V-code")
    p.add_argument("file")
    p.set_defaults(func=cmd_check_v)

    p = sub.add_parser("check", parents=[common], help="decide e ⊩ φ")
    p.add_argument("--realizer", required=True)
    p.add_argument("--formula", required=True)
    p.add_argument("--universe")
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("compile-type", parents=[common], help="print ‖φ‖ as a type code")
    p.add_argument("--formula", required=True)
    p.set_defaults(func=cmd_compile_type)

    p = sub.add_parser("verify-axiom", parents=[common], help="run an axiom driver")
    p.add_argument("name", choices=DEMO_AXIOMS)
    p.add_argument("--corpus", default="standard")
    p.set_defaults(func=cmd_verify_axiom)

    p = sub.add_parser("hf-eval", parents=[common], help="classical truth over HF sets")
    p.add_argument("--formula", required=True)
    p.add_argument("--env", help="file or inline list of (name set) bindings")
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_hf_eval)

    p = sub.add_parser("demo", parents=[common], help="verify all six axiom realizers")
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except (ParseError, InputError, trees.TreeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except pca.EvalError as e:
        print(f"error: evaluation failed: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
