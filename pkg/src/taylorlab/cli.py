"""Command-line front end.

Exit codes: 0 success / pass, 1 check failed, 2 check inconclusive,
3 usage or input error. All output is deterministic for a fixed input and
configuration; ``--json`` emits sorted-key JSON.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .beta import (
    beta_step,
    bohm_tree,
    head_normalize,
    leftmost_redex,
    position_from_str,
    position_to_str,
    stratify,
)
from .lab import (
    check_commutation,
    check_genericity,
    check_head_charac,
    check_norm_charac,
    check_simulation,
    terms_equal_via_taylor,
)
from .resource import (
    parse_resource_monomial,
    parse_resource_sum,
    parse_resource_term,
    pretty_resource,
    pretty_sum,
    r_subst,
)
from .resource_reduction import (
    first_redex_site,
    r_normalize,
    r_step,
    site_to_str,
)
from .selftest import run_selftest
from .syntax import (
    Bottom,
    FreeVar,
    Hole,
    Lam,
    LambdaError,
    ParseError,
    RationalSystem,
    Term,
    Var,
    App,
    contains_hole,
    parse_term,
    pretty,
    pretty_system,
)

CUT = "◻"


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # usage errors are exit code 3
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(3)


def _read_term_arg(text: str) -> str:
    if text == "-":
        return sys.stdin.read()
    return text


def _emit(payload: dict, as_json: bool, text_lines: list[str]) -> None:
    if as_json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _print_target(target) -> str:
    if isinstance(target, RationalSystem):
        return pretty_system(target)
    return pretty(target)


def _cmd_parse(args) -> int:
    target = parse_term(_read_term_arg(args.term))
    if isinstance(target, RationalSystem):
        kind = "system"
    elif contains_hole(target):
        kind = "context"
    else:
        kind = "term"
    text = _print_target(target)
    _emit({"kind": kind, "pretty": text}, args.json, [f"{kind}: {text}"])
    return 0


def _cmd_reduce(args) -> int:
    target = parse_term(_read_term_arg(args.term))
    if isinstance(target, RationalSystem):
        raise LambdaError("reduce expects a finite term")
    if args.at is not None:
        pos = position_from_str(args.at)
        result = beta_step(target, pos)
        trace = [{"position": args.at, "term": pretty(result)}]
        cur = result
    else:
        trace = []
        cur = target
        for _ in range(args.max_steps):
            pos = leftmost_redex(cur)
            if pos is None:
                break
            cur = beta_step(cur, pos)
            trace.append({"position": position_to_str(pos), "term": pretty(cur)})
    payload = {
        "input": pretty(target),
        "normal": leftmost_redex(cur) is None,
        "result": pretty(cur),
        "trace": trace,
    }
    lines = [f"{i:3d} [{e['position']}] {e['term']}" for i, e in enumerate(trace)]
    lines.append(f"result: {payload['result']}")
    if not payload["normal"]:
        lines.append(f"stopped after {len(trace)} steps (not normal)")
    _emit(payload, args.json, lines)
    return 0


def _cmd_head(args) -> int:
    target = parse_term(_read_term_arg(args.term))
    if isinstance(target, RationalSystem):
        run = head_normalize(target.root_term(), args.fuel, target)
    else:
        run = head_normalize(target, args.fuel)
    payload = {
        "input": _print_target(target),
        "result": pretty(run.term),
        "verdict": run.verdict.describe(),
        "steps": run.verdict.steps,
    }
    _emit(payload, args.json, [f"{payload['verdict']}: {payload['result']}"])
    return 0


def _bohm_dot(t: Term) -> str:
    lines = ["digraph bohm {", "  node [shape=plaintext];"]
    counter = [0]

    def label(u: Term, env: tuple[str, ...]) -> str:
        if isinstance(u, Var):
            return env[u.index] if u.index < len(env) else f"#{u.index}"
        if isinstance(u, FreeVar):
            return u.name
        if isinstance(u, Bottom):
            return "_|_"
        if isinstance(u, Hole):
            return CUT
        return "?"

    def walk(u: Term, env: tuple[str, ...]) -> int:
        me = counter[0]
        counter[0] += 1
        if isinstance(u, Lam):
            hints = []
            while isinstance(u, Lam):
                hints.append(u.hint)
                env = (u.hint,) + env
                u = u.body
            lines.append(f'  n{me} [label="\\\\{" ".join(hints)}"];')
            child = walk(u, env)
            lines.append(f"  n{me} -> n{child};")
            return me
        if isinstance(u, App):
            lines.append(f'  n{me} [label="@"];')
            left = walk(u.fn, env)
            right = walk(u.arg, env)
            lines.append(f"  n{me} -> n{left};")
            lines.append(f"  n{me} -> n{right};")
            return me
        lines.append(f'  n{me} [label="{label(u, env)}"];')
        return me

    walk(t, ())
    lines.append("}")
    return "\n".join(lines)


def _cmd_bohm(args) -> int:
    target = parse_term(_read_term_arg(args.term))
    tree = bohm_tree(target, args.depth, args.fuel)
    text = pretty(tree, cut=CUT)
    if args.dot:
        print(_bohm_dot(tree))
        return 0
    payload = {
        "input": _print_target(target),
        "depth": args.depth,
        "fuel": args.fuel,
        "tree": text,
    }
    _emit(payload, args.json, [text])
    return 0


def _cmd_taylor(args) -> int:
    from .taylor import enumerate_taylor, enumerate_taylor_context

    target = parse_term(_read_term_arg(args.term))
    if not isinstance(target, RationalSystem) and contains_hole(target):
        terms = list(enumerate_taylor_context(target, args.size))
        payload = {
            "source": pretty(target),
            "size_bound": args.size,
            "depth_bound": None,
            "approximants": [pretty_resource(t) for t in terms],
        }
    else:
        sl = enumerate_taylor(target, args.size, args.depth)
        payload = sl.to_dict()
    _emit(payload, args.json, payload["approximants"] or ["0"])
    return 0


def _cmd_nf_taylor(args) -> int:
    from .taylor import enumerate_taylor

    target = parse_term(_read_term_arg(args.term))
    sl = enumerate_taylor(target, args.size, args.depth)
    normal = r_normalize(sl.terms)
    payload = {
        "source": _print_target(target),
        "size_bound": args.size,
        "approximants": len(sl),
        "normal_forms": [pretty_resource(t) for t in normal],
    }
    _emit(payload, args.json, payload["normal_forms"] or ["0"])
    return 0


def _cmd_rsubst(args) -> int:
    s = parse_resource_term(args.term)
    mono = parse_resource_monomial(args.monomial)
    out = r_subst(s, args.var, mono)
    payload = {
        "term": pretty_resource(s),
        "var": args.var,
        "monomial": args.monomial,
        "result": pretty_sum(out),
    }
    _emit(payload, args.json, [payload["result"]])
    return 0


def _cmd_rnf(args) -> int:
    s = parse_resource_sum(_read_term_arg(args.term))
    trace = []
    work = list(s)
    normal = []
    while work:
        t = work.pop(0)
        site = first_redex_site(t)
        if site is None:
            normal.append(t)
            continue
        out = r_step(t, site)
        trace.append(
            {
                "addend": pretty_resource(t),
                "site": site_to_str(site),
                "reducts": [pretty_resource(u) for u in out],
            }
        )
        work.extend(out)
    result = r_normalize(s)
    payload = {"input": pretty_sum(s), "normal_form": pretty_sum(result), "trace": trace}
    lines = [f"[{e['site']}] {e['addend']} -> {' + '.join(e['reducts']) or '0'}" for e in trace]
    lines.append(f"normal form: {payload['normal_form']}")
    _emit(payload, args.json, lines)
    return 0


def _cmd_stratify(args) -> int:
    target = parse_term(_read_term_arg(args.term))
    if isinstance(target, RationalSystem):
        raise LambdaError("stratify expects a finite term")
    res = stratify(target, args.depth, args.fuel)
    payload = {
        "input": pretty(target),
        "levels": [pretty(t) for t in res.levels],
        "steps": [[position_to_str(p) for p in steps] for steps in res.step_positions],
        "diagnostic": res.diagnostic,
    }
    lines = [f"M{d} = {text}" for d, text in enumerate(payload["levels"])]
    if res.diagnostic:
        lines.append(f"diagnostic: {res.diagnostic}")
    _emit(payload, args.json, lines)
    return 0 if res.diagnostic is None else 2


def _report_out(report, as_json: bool) -> int:
    if as_json:
        print(report.to_json())
    else:
        line = f"{report.theorem}: {report.verdict}"
        if report.reason:
            line += f" ({report.reason})"
        if report.witness:
            line += f" witness: {report.witness}"
        print(line)
    return report.exit_code


def _cmd_check(args) -> int:
    kind = args.kind
    if kind == "commutation":
        target = parse_term(_read_term_arg(args.terms[0]))
        report = check_commutation(target, args.size, args.fuel, args.backstop)
    elif kind == "head":
        target = parse_term(_read_term_arg(args.terms[0]))
        report = check_head_charac(target, args.size, args.fuel)
    elif kind == "norm":
        target = parse_term(_read_term_arg(args.terms[0]))
        report = check_norm_charac(target, args.dmax, args.size, args.fuel)
    elif kind == "simulation":
        target = parse_term(_read_term_arg(args.terms[0]))
        if isinstance(target, RationalSystem):
            raise LambdaError("simulation expects a finite term")
        steps = [position_from_str(p) for p in (args.steps.split(",") if args.steps else [])]
        report = check_simulation(target, steps, args.size)
    elif kind == "genericity":
        if len(args.terms) < 2:
            raise LambdaError("genericity needs CONTEXT UNSOLVABLE [REPLACEMENT...]")
        ctx = parse_term(args.terms[0])
        hole_filler = parse_term(args.terms[1])
        repl = [parse_term(t) for t in args.terms[2:]]
        if isinstance(ctx, RationalSystem) or isinstance(hole_filler, RationalSystem):
            raise LambdaError("genericity expects finite terms")
        report = check_genericity(ctx, hole_filler, repl, args.size, args.fuel, depth=args.dmax)
    elif kind == "equal":
        if len(args.terms) != 2:
            raise LambdaError("equal needs exactly two terms")
        left = parse_term(args.terms[0])
        right = parse_term(args.terms[1])
        report = terms_equal_via_taylor(left, right, args.dmax, args.size)
    else:  # pragma: no cover - argparse restricts choices
        raise LambdaError(f"unknown check {kind!r}")
    return _report_out(report, args.json)


def _cmd_selftest(args) -> int:
    out = run_selftest(args.seed, fuel=args.fuel, size_bound=args.size)
    if args.json:
        print(json.dumps(out, indent=2, sort_keys=True))
    else:
        for r in out["results"]:
            extra = {k: v for k, v in r.items() if k not in ("name", "checked", "failures")}
            print(f"{r['name']}: {r['checked']} checked, {r['failures']} failures {extra or ''}")
        print(f"verdict: {out['verdict']}")
    if out["verdict"] == "fail":
        return 1
    return 2 if out["inconclusive"] else 0


def _add_common(p: argparse.ArgumentParser, *, fuel=True, size=False, depth=False, dmax=False, backstop=False):
    p.add_argument("--json", action="store_true", help="emit machine-readable JSON")
    if fuel:
        p.add_argument("--fuel", type=int, default=1000, help="head-step budget per node")
    if size:
        p.add_argument("--size", type=int, default=10, help="approximant size bound")
    if depth:
        p.add_argument("--depth", type=int, default=None, help="height bound on approximants")
    if dmax:
        p.add_argument("--dmax", type=int, default=5, help="maximum tested depth")
    if backstop:
        p.add_argument("--backstop", type=int, default=None, help="fallback search size bound")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="taylorlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse and reprint a term, context, or system")
    p.add_argument("term")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_parse)

    p = sub.add_parser("reduce", help="beta-reduce (one position or normal order) with a trace")
    p.add_argument("term")
    p.add_argument("--at", default=None, help="dotted position of one step (e.g. body.arg)")
    p.add_argument("--max-steps", type=int, default=100)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_reduce)

    p = sub.add_parser("head", help="head-normalize with cycle detection")
    p.add_argument("term")
    _add_common(p)
    p.set_defaults(fn=_cmd_head)

    p = sub.add_parser("bohm", help="depth-bounded Boehm tree")
    p.add_argument("term")
    p.add_argument("--depth", type=int, default=5)
    p.add_argument("--dot", action="store_true", help="emit graphviz instead of text")
    p.add_argument("--json", action="store_true")
    p.add_argument("--fuel", type=int, default=1000)
    p.set_defaults(fn=_cmd_bohm)

    p = sub.add_parser("taylor", help="enumerate the approximant slice")
    p.add_argument("term")
    _add_common(p, fuel=False, size=True, depth=True)
    p.set_defaults(fn=_cmd_taylor)

    p = sub.add_parser("nf-taylor", help="normalize the approximant slice")
    p.add_argument("term")
    _add_common(p, fuel=False, size=True, depth=True)
    p.set_defaults(fn=_cmd_nf_taylor)

    p = sub.add_parser("rsubst", help="linear substitution on a resource term")
    p.add_argument("term")
    p.add_argument("var")
    p.add_argument("monomial")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_rsubst)

    p = sub.add_parser("rnf", help="normalize a resource term or sum, with a trace")
    p.add_argument("term")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_rnf)

    p = sub.add_parser("stratify", help="depth-ordered reduction stages")
    p.add_argument("term")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--fuel", type=int, default=1000)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_stratify)

    p = sub.add_parser("check", help="run a theorem check")
    p.add_argument("kind", choices=["commutation", "head", "norm", "simulation", "genericity", "equal"])
    p.add_argument("terms", nargs="+")
    p.add_argument("--steps", default="", help="comma-separated positions (simulation)")
    _add_common(p, size=True, dmax=True, backstop=True)
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("selftest", help="run the whole property suite")
    p.add_argument("--seed", type=int, default=42)
    _add_common(p, size=True)
    p.set_defaults(fn=_cmd_selftest)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as err:
        print(f"parse error: {err}", file=sys.stderr)
        return 3
    except LambdaError as err:
        print(f"error: {err}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
