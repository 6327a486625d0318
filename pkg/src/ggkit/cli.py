"""Command-line front end.

Exit codes: 0 all verdicts pass, 1 a mathematical comparison failed,
2 usage or parse errors.  Overlined parts are written with a trailing ``~``
in all text output; a combining overline is accepted on input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import bailey as bailey_mod
from .bijections import (
    Trace,
    double,
    fh_toggle,
    fh_untoggle,
    halve,
    lambda_chain,
    lambda_full,
    lambda_step,
    phi_chain,
    phi_full,
    phi_step,
    psi_chain,
    psi_full,
    psi_step,
    theta_chain,
    theta_full,
    theta_step,
)
from .marking import MarkedOverpartition, gg_mark, gordon_mark
from .partitions import (
    FamilySpec,
    Overpartition,
    ParseError,
    enumerate_overpartitions,
    satisfies_family,
)
from .verify import run_suite

USAGE_EXIT = 2
MISMATCH_EXIT = 1

_MAPS = {
    "phi-p": (phi_step, "p"),
    "psi-p": (psi_step, "p"),
    "phi-chain": (phi_chain, "p"),
    "psi-chain": (psi_chain, "p"),
    "theta-p": (theta_step, "p"),
    "lambda-p": (lambda_step, "p"),
    "theta-chain": (theta_chain, "p"),
    "lambda-chain": (lambda_chain, "p"),
    "phi": (phi_full, "full"),
    "theta": (theta_full, "full"),
    "psi": (psi_full, "tau"),
    "lambda": (lambda_full, "eta"),
    "toggle": (fh_toggle, "ki"),
    "untoggle": (fh_untoggle, "ki"),
    "halve": (halve, "plain"),
    "double": (double, "plain"),
}


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ggkit", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list overpartitions of a given weight")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--family", choices=list("OPFH"))
    p.add_argument("--k", type=int)
    p.add_argument("--i", type=int)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("mark", help="show the marking array of an overpartition")
    p.add_argument("overpartition", help='e.g. "1,1,2~,2,3~,4~,6,7,8,8" ("-" for empty)')
    p.add_argument("--gordon", action="store_true",
                   help="treat the input as an ordinary partition and use the greedy marking")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("biject", help="apply one of the weight-tracked maps")
    p.add_argument("overpartition")
    p.add_argument("--map", required=True, choices=sorted(_MAPS))
    p.add_argument("--p", type=int, help="first-row position for positional maps")
    p.add_argument("--k", type=int)
    p.add_argument("--i", type=int)
    p.add_argument("--tau", help="comma-separated negative even parts (psi)")
    p.add_argument("--eta", help="comma-separated negative odd parts (lambda)")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("bailey", help="dump a chain stage's sequences as JSON series")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--T", type=int, default=40)
    p.add_argument("--stage", type=int, default=-1, help="stage index (default: final)")
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--format", choices=("text", "json"), default="json")

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True,
                   choices=("identities", "counting", "bijections", "bailey", "all"))
    p.add_argument("--k", type=int)
    p.add_argument("--i", type=int)
    p.add_argument("--n-max", type=int)
    p.add_argument("--T", type=int)
    p.add_argument("--profile", help="comma-separated row profile, e.g. 2,1")
    p.add_argument("--jobs", type=int,
                   default=int(os.environ.get("GGKIT_JOBS", "1")))
    p.add_argument("--format", choices=("text", "json"), default="text")
    return ap


def _parse_overpartition(text: str) -> Overpartition:
    try:
        return Overpartition.from_text(text)
    except ParseError as exc:
        print(f"ggkit: {exc}", file=sys.stderr)
        raise SystemExit(USAGE_EXIT) from exc


def _parse_int_list(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        print(f"ggkit: cannot parse {what} {text!r}", file=sys.stderr)
        raise SystemExit(USAGE_EXIT) from exc


def _cmd_enumerate(args) -> int:
    spec = None
    if args.family:
        if args.k is None or args.i is None:
            print("ggkit: --family needs --k and --i", file=sys.stderr)
            return USAGE_EXIT
        spec = FamilySpec(args.family, args.k, args.i)
    items = [op for op in enumerate_overpartitions(args.n)
             if spec is None or satisfies_family(op, spec)]
    if args.format == "json":
        print(json.dumps({"n": args.n, "count": len(items),
                          "overpartitions": [op.to_json() for op in items]}))
    else:
        for op in items:
            print(op.to_text())
        print(f"# {len(items)} overpartition(s) of {args.n}")
    return 0


def _cmd_mark(args) -> int:
    op = _parse_overpartition(args.overpartition)
    if args.gordon:
        if any(p.overlined for p in op.parts):
            print("ggkit: the greedy marking takes a plain partition", file=sys.stderr)
            return USAGE_EXIT
        parts = tuple(p.size for p in op.parts)
        marks = gordon_mark(parts)
        marked = MarkedOverpartition(op, marks)
    else:
        marked = gg_mark(op)
    if args.format == "json":
        print(json.dumps(marked.to_json()))
    else:
        print(marked.render())
        print(f"rows: {marked.row_counts()}")
    return 0


def _cmd_biject(args) -> int:
    fn, mode = _MAPS[args.map]
    op = _parse_overpartition(args.overpartition)
    trace = Trace()
    try:
        if mode == "p":
            if args.p is None:
                print("ggkit: this map needs --p", file=sys.stderr)
                return USAGE_EXIT
            result = fn(op, args.p, trace)
            extra = {}
        elif mode == "full":
            emitted, result = fn(op, trace)
            extra = {"emitted": list(emitted)}
        elif mode == "tau":
            if args.tau is None:
                print("ggkit: psi needs --tau", file=sys.stderr)
                return USAGE_EXIT
            result = fn(_parse_int_list(args.tau, "--tau"), op, trace)
            extra = {}
        elif mode == "eta":
            if args.eta is None:
                print("ggkit: lambda needs --eta", file=sys.stderr)
                return USAGE_EXIT
            result = fn(_parse_int_list(args.eta, "--eta"), op, trace)
            extra = {}
        elif mode == "ki":
            if args.k is None or args.i is None:
                print("ggkit: this map needs --k and --i", file=sys.stderr)
                return USAGE_EXIT
            result = fn(op, args.k, args.i, trace)
            extra = {}
        else:  # plain: halve / double
            if args.map == "halve":
                result = fn(op)
                extra = {"partition": list(result)}
                result = None
            else:
                result = fn(tuple(p.size for p in op.parts))
                extra = {}
    except ValueError as exc:
        print(f"ggkit: {exc}", file=sys.stderr)
        return USAGE_EXIT
    payload = {
        "map": args.map,
        "input": op.to_text(),
        "output": result.to_text() if isinstance(result, Overpartition) else None,
        "trace": trace.to_json(),
        **extra,
    }
    if args.format == "json":
        print(json.dumps(payload))
    else:
        print(f"input : {gg_mark(op).render()}" if op.parts else "input : (empty)")
        if isinstance(result, Overpartition):
            print(f"output: {gg_mark(result).render()}" if result.parts else "output: (empty)")
        for key, val in extra.items():
            print(f"{key}: {val}")
        for step in trace.steps:
            print(f"  {step.name}: {step.before.to_text()} -> {step.after.to_text()} "
                  f"(delta {step.delta:+d})")
    return 0


def _cmd_bailey(args) -> int:
    try:
        chain = bailey_mod.run_chain(args.k, args.i, args.T)
    except bailey_mod.ChainParameterError as exc:
        print(f"ggkit: {exc}", file=sys.stderr)
        return USAGE_EXIT
    idx = args.stage if args.stage >= 0 else len(chain.stages) - 1
    if idx >= len(chain.stages):
        print(f"ggkit: stage {idx} out of range 0..{len(chain.stages) - 1}", file=sys.stderr)
        return USAGE_EXIT
    st = chain.stages[idx]
    payload = {
        "k": args.k,
        "i": args.i,
        "stage": st.index,
        "note": st.note,
        "exponent_denominator": st.pair.grid,
        "alpha": {n: st.pair.alpha(n).to_json() for n in range(args.n_max + 1)},
        "beta": {n: st.pair.beta(n).to_json() for n in range(args.n_max + 1)},
    }
    if args.format == "json":
        print(json.dumps(payload))
    else:
        print(f"stage {st.index} ({st.note}), exponents in q^(1/{st.pair.grid})")
        for n in range(args.n_max + 1):
            print(f"alpha_{n}: {st.pair.alpha(n)!r}")
            print(f"beta_{n} : {st.pair.beta(n)!r}")
    return 0


def _cmd_verify(args) -> int:
    profile = _parse_int_list(args.profile, "--profile") if args.profile else None
    try:
        reports = run_suite(args.suite, k=args.k, i=args.i, n_max=args.n_max,
                            T=args.T, profile=profile, jobs=args.jobs)
    except ValueError as exc:
        print(f"ggkit: {exc}", file=sys.stderr)
        return USAGE_EXIT
    if args.format == "json":
        print(json.dumps([r.to_json() for r in reports]))
    else:
        for r in reports:
            print(str(r))
        bad = sum(1 for r in reports if not r.ok)
        print(f"# {len(reports) - bad}/{len(reports)} checks passed")
    return 0 if all(r.ok for r in reports) else MISMATCH_EXIT


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {
        "enumerate": _cmd_enumerate,
        "mark": _cmd_mark,
        "biject": _cmd_biject,
        "bailey": _cmd_bailey,
        "verify": _cmd_verify,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
