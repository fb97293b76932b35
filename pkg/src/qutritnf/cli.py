"""Command-line interface.

Exit codes: 0 success (equal, member, checks pass), 1 negative result,
2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .clifford import dump_tables
from .exactmat import PhasedOp, phase_between
from .normalform import ParseError, normalize, parse, string_to_matrix
from .synth import PEEL_FAILED, exact_synthesize, synth_report

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


def _read_text(args) -> str:
    if args.text is not None and args.input is not None:
        raise InputError("give either TEXT or -i, not both")
    if args.text is not None:
        return args.text
    try:
        if args.input is not None:
            with open(args.input, encoding="utf-8") as f:
                return f.read()
        return sys.stdin.read()
    except OSError as e:
        raise InputError(str(e)) from e


def _load_matrix(text: str) -> PhasedOp:
    try:
        return PhasedOp.from_json(json.loads(text))
    except (ValueError, TypeError, KeyError) as e:
        raise InputError(f"bad matrix JSON: {e}") from e


def _operand(arg: str) -> PhasedOp:
    """A gate string, or a JSON matrix file if arg names an existing file."""
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as f:
            return _load_matrix(f.read())
    return string_to_matrix(parse(arg))


def cmd_normalize(args, out) -> int:
    tokens = parse(_read_text(args))
    nf = normalize(tokens)
    if args.json:
        print(_dumps(synth_report(nf, string_to_matrix(tokens).denom_exp())), file=out)
        return EXIT_OK
    print(nf.to_string(expand=args.expand), file=out)
    print(f"t_count: {nf.t_count}", file=out)
    print(f"h_count: {nf.h_count}", file=out)
    print(f"phase: {nf.phase}", file=out)
    return EXIT_OK


def cmd_tcount(args, out) -> int:
    print(normalize(parse(_read_text(args))).t_count, file=out)
    return EXIT_OK


def cmd_matrix(args, out) -> int:
    op = string_to_matrix(parse(_read_text(args)))
    print(_dumps(op.to_json()), file=out)
    return EXIT_OK


def cmd_synth(args, out) -> int:
    op = _load_matrix(_read_text(args))
    res = exact_synthesize(op, prefilter=args.prefilter)
    if res.is_member:
        if args.json:
            rep = synth_report(res.nf, res.denom_exp)
            rep["member"] = True
            print(_dumps(rep), file=out)
        else:
            print(res.nf.to_string(expand=args.expand), file=out)
        return EXIT_OK
    # for rejected inputs also run the peeling loop on its own, which
    # certifies non-membership independently of the unitarity test
    cert = res
    if res.reason != PEEL_FAILED:
        cert = exact_synthesize(op, check_unitary=False)
    if args.json:
        rep = {"member": False, "reason": res.reason, "denom_exp": res.denom_exp,
               "step": res.step}
        if cert is not res:
            rep["peeling"] = {"member": cert.is_member,
                              "reason": getattr(cert, "reason", None),
                              "step": getattr(cert, "step", None)}
        print(_dumps(rep), file=out)
    else:
        line = f"not in group: {res.reason} (k={res.denom_exp})"
        if res.step is not None:
            line += f" at step {res.step}"
        print(line, file=out)
        if cert is not res and not cert.is_member:
            print(f"peeling: {cert.reason} at step {cert.step}", file=out)
    return EXIT_NEGATIVE


def cmd_equal(args, out) -> int:
    a, b = _operand(args.a), _operand(args.b)
    u = phase_between(a, b)
    if args.json:
        print(_dumps({"equal": u is not None, "phase": u.to_json() if u else None}), file=out)
    elif u is None:
        print("not equal", file=out)
    else:
        print(f"equal, phase {u}", file=out)
    return EXIT_OK if u is not None else EXIT_NEGATIVE


def cmd_selftest(args, out) -> int:
    if args.dump_tables:
        print(_dumps(dump_tables()), file=out)
        return EXIT_OK
    from . import oracle

    atlas = oracle.bfs_enumerate(args.max_t)
    reports = [oracle.check_witnesses(atlas), oracle.check_theorem1(atlas),
               oracle.check_t_optimality(atlas), oracle.check_uniqueness(atlas)]
    ok = all(r.ok for r in reports) and not atlas.incomplete
    if args.json:
        print(_dumps({"layer_sizes": atlas.layer_sizes, "elements": len(atlas),
                      "reports": {r.name: {"checked": r.checked,
                                           "violations": [list(v) for v in r.violations]}
                                  for r in reports},
                      "ok": ok}), file=out)
    else:
        print(f"layer sizes: {atlas.layer_sizes} ({len(atlas)} elements)", file=out)
        for r in reports:
            print(r, file=out)
            for w, msg in r.violations:
                print(f"  {w}: {msg}", file=out)
        print("selftest passed" if ok else "selftest FAILED", file=out)
    return EXIT_OK if ok else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qutritnf",
                                description="Exact qutrit Clifford+T normal forms and synthesis.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, text=True):
        if text:
            sp.add_argument("text", nargs="?", help="input (default: -i file or stdin)")
            sp.add_argument("-i", "--input", help="read input from a file")
        sp.add_argument("-o", "--output", help="write output to a file")
        sp.add_argument("--json", action="store_true", help="machine-readable output")

    sp = sub.add_parser("normalize", help="rewrite a gate string into normal form")
    common(sp)
    sp.add_argument("--expand", action="store_true", help="spell syllables in H, S, T")
    sp.set_defaults(func=cmd_normalize)

    sp = sub.add_parser("synth", help="exact synthesis of a JSON matrix")
    common(sp)
    sp.add_argument("--expand", action="store_true", help="spell syllables in H, S, T")
    sp.add_argument("--prefilter", action="store_true", help="reject early on the parity test")
    sp.set_defaults(func=cmd_synth)

    sp = sub.add_parser("matrix", help="exact matrix of a gate string as JSON")
    common(sp)
    sp.set_defaults(func=cmd_matrix)

    sp = sub.add_parser("tcount", help="minimal T-count of a gate string")
    common(sp)
    sp.set_defaults(func=cmd_tcount)

    sp = sub.add_parser("equal", help="compare two operators up to phase")
    sp.add_argument("a", help="gate string or JSON matrix file")
    sp.add_argument("b", help="gate string or JSON matrix file")
    common(sp, text=False)
    sp.set_defaults(func=cmd_equal)

    sp = sub.add_parser("selftest", help="brute-force checks against a BFS atlas")
    common(sp, text=False)
    sp.add_argument("--max-t", type=int, default=2, help="atlas depth in T-count")
    sp.add_argument("--dump-tables", action="store_true", help="print the rewrite tables and exit")
    sp.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = sys.stdout
    try:
        if args.output:
            out = open(args.output, "w", encoding="utf-8")
        try:
            return args.func(args, out)
        finally:
            if out is not sys.stdout:
                out.close()
    except (ParseError, InputError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
