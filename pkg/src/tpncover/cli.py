"""Command-line front end.

Exit codes: 0 YES / success, 1 NO, 2 usage or input error, 3 oracle divergence.
"""
from __future__ import annotations

import argparse
import sys

from . import oracle
from .circuit import circuit_to_tpn, parse_circuit, parse_vector
from .coverset import (
    DEFAULT_STREAMING_BUDGET,
    CoverQuery,
    compute_coverset,
    exists_cover,
    exists_cover_streaming,
    expression_count_bound,
)
from .errors import TPNError
from .model import Marking, Net, cmax, is_nonconsuming
from .netdoc import dump_net, parse_net
from .reduce import make_nonconsuming
from .regions import Alphabet

EXIT_YES, EXIT_NO, EXIT_ERROR, EXIT_DIVERGENCE = 0, 1, 2, 3


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def load_net(path: str) -> Net:
    return parse_net(_read(path))


def _query(args) -> tuple[CoverQuery, Net]:
    """Build the query; consuming nets are reduced first. Returns the original net too."""
    net = load_net(args.net)
    reduced = net if is_nonconsuming(net) else make_nonconsuming(net)
    return CoverQuery(reduced, args.initial, args.target), net


def _show_marking(m: Marking) -> str:
    return repr(m)[len("Marking"):]


def _print_trace(verdict, ab: Alphabet | None, out):
    for op, item in verdict.trace:
        shown = _show_marking(item) if isinstance(item, Marking) else ab.render(item)
        print(f"{op} : {shown}", file=out)


def cmd_check(args, out) -> int:
    q, _ = _query(args)
    ab = q.alphabet
    if args.streaming:
        answer = exists_cover_streaming(q, args.budget, args.force)
        print("YES" if answer else "NO", file=out)
        return EXIT_YES if answer else EXIT_NO
    res = exists_cover(q)
    if res.answer:
        print("YES", file=out)
        print(f"witness: {ab.render(res.witness)}", file=out)
        print(f"round: {res.round}", file=out)
    else:
        print("NO", file=out)
        print(f"rounds: {res.coverset.rounds}", file=out)
    print(f"expressions: {len(res.coverset.expressions)}", file=out)
    return EXIT_YES if res.answer else EXIT_NO


def cmd_coverset(args, out) -> int:
    net = load_net(args.net)
    if not is_nonconsuming(net):
        net = make_nonconsuming(net)
    q = CoverQuery(net, args.initial)
    cs = compute_coverset(q)
    for e in cs.expressions:
        print(q.alphabet.render(e), file=out)
    print(f"rounds: {cs.rounds}", file=out)
    return EXIT_YES


def cmd_reduce(args, out) -> int:
    out.write(dump_net(make_nonconsuming(load_net(args.net))))
    return EXIT_YES


def cmd_oracle(args, out) -> int:
    q, original = _query(args)
    if args.concrete:
        verdict = oracle.concrete_bfs(original, q.initial, q.target, args.m, args.depth,
                                      args.denom, args.states)
    else:
        verdict = oracle.word_bfs(q, args.depth, args.states)
    print(f"verdict: {verdict.outcome}", file=out)
    print(f"states: {verdict.states}", file=out)
    _print_trace(verdict, q.alphabet, out)
    return EXIT_YES if verdict.found else EXIT_NO


def cmd_crosscheck(args, out) -> int:
    q, original = _query(args)
    report = oracle.crosscheck(q, original, depth=args.depth, states=args.states, m=args.m,
                               concrete_depth=args.concrete_depth, denominator=args.denom,
                               concrete_states=args.concrete_states)
    print(f"cover set: {'YES' if report.answer else 'NO'}", file=out)
    print(f"word oracle: {report.word.outcome} ({report.word.states} states)", file=out)
    if report.concrete is not None:
        print(f"concrete oracle: {report.concrete.outcome} ({report.concrete.states} states)", file=out)
    for line in report.divergences:
        print(f"DIVERGENCE: {line}", file=out)
    print("agree" if report.ok else "disagree", file=out)
    return EXIT_YES if report.ok else EXIT_DIVERGENCE


def cmd_gen_circuit(args, out) -> int:
    c = parse_circuit(_read(args.circuit))
    v = parse_vector(args.vector, c.n)
    q = circuit_to_tpn(c, v)
    text = dump_net(q.net)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    # the query goes to stderr when the document is on stdout, so both can be piped
    print(f"query: --initial {q.initial} --target {q.target}", file=out if args.output else args.err)
    return EXIT_YES


def cmd_info(args, out) -> int:
    net = load_net(args.net)
    if not is_nonconsuming(net):
        net = make_nonconsuming(net)
    n, c = len(net.places), cmax(net)
    b2 = expression_count_bound(2, n, c)
    print(f"|P| = {n}", file=out)
    print(f"|T| = {len(net.transitions)}", file=out)
    print(f"cmax = {c}", file=out)
    print(f"B(2) = {b2}", file=out)
    print(f"3*B(2) = {3 * b2}", file=out)
    return EXIT_YES


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tpncover",
                                     description="Existential coverability for 1-clock timed-arc Petri nets.")
    sub = parser.add_subparsers(dest="command", required=True)

    def query_args(p):
        p.add_argument("net", help="net document (JSON), or - for stdin")
        p.add_argument("--initial", required=True, help="initial place")
        p.add_argument("--target", required=True, help="target transition")

    p = sub.add_parser("check", help="decide whether the target can be enabled")
    query_args(p)
    p.add_argument("--streaming", action="store_true", help="keep only the current round")
    p.add_argument("--force", action="store_true", help="stream even above the budget")
    p.add_argument("--budget", type=int, default=DEFAULT_STREAMING_BUDGET,
                   help="largest 3*B(2) streamed without --force (default %(default)s)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("coverset", help="print the recorded cover-set expressions")
    p.add_argument("net")
    p.add_argument("--initial", required=True)
    p.set_defaults(func=cmd_coverset)

    p = sub.add_parser("reduce", help="print the non-consuming version of a net")
    p.add_argument("net")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("oracle", help="run one of the explicit search oracles")
    query_args(p)
    p.add_argument("--depth", type=int, default=20)
    p.add_argument("--states", type=int, default=10_000)
    p.add_argument("--concrete", action="store_true", help="simulate markings instead of words")
    p.add_argument("--m", type=int, default=3, help="initial token count for --concrete")
    p.add_argument("--denom", type=int, default=8, help="delay granularity for --concrete")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("crosscheck", help="compare the decision against both oracles")
    query_args(p)
    p.add_argument("--depth", type=int, default=20)
    p.add_argument("--states", type=int, default=10_000)
    p.add_argument("--m", type=int, default=3, help="0 skips the concrete oracle")
    p.add_argument("--concrete-depth", type=int, default=8)
    p.add_argument("--concrete-states", type=int, default=20_000)
    p.add_argument("--denom", type=int, default=4)
    p.set_defaults(func=cmd_crosscheck)

    p = sub.add_parser("gen-circuit", help="encode an iterated circuit as a net")
    p.add_argument("circuit", help="circuit file: n, then lines 'i: j AND k' or 'i: j OR k'")
    p.add_argument("--vector", required=True, help="initial bitstring")
    p.add_argument("-o", "--output", help="write the net here instead of stdout")
    p.set_defaults(func=cmd_gen_circuit)

    p = sub.add_parser("info", help="print size figures of a net")
    p.add_argument("net")
    p.set_defaults(func=cmd_info)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_YES
    args.err = err
    try:
        return args.func(args, out)
    except (TPNError, OSError) as exc:
        print(f"tpncover: error: {exc}", file=err)
        return EXIT_ERROR


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
