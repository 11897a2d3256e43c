"""Command-line front end.

Exit codes: 0 success, 2 usage/parameter error, 3 integrity error,
4 verification failure (oracle mismatches or capability violations).
"""
from __future__ import annotations

import argparse
import itertools
import random
import sys
from pathlib import Path

from .channel import GEParams
from .code import (ParameterError, build_generator, derive_params, encode, format_symbols,
                   optimal_sliding_window_rate, parse_symbols)
from .decoder import IntegrityError, Status, decode, decode_pattern, oracle_recoverable, parse_received
from .harness import capability_report, parse_scheme, reports_to_csv, sweep

EXIT_USAGE = 2
EXIT_INTEGRITY = 3
EXIT_CHECK = 4


def _code_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--N", type=int, required=True, help="arbitrary-erasure design parameter")
    p.add_argument("--B", type=int, required=True, help="burst design parameter")
    p.add_argument("--T", type=int, required=True, help="maximum decoding delay")
    p.add_argument("--q", type=int, default=None, help="prime field size (default: smallest prime >= T)")


def _params(args):
    return derive_params(args.N, args.B, args.T, args.q)


def cmd_params(args, out) -> int:
    P = _params(args)
    print(f"n={P.n} k={P.k} q={P.q} rate={P.rate}", file=out)
    print(f"N={P.N} B={P.B} T={P.T} Q={P.Q} r={P.r}", file=out)
    print(f"sliding_window_optimal_rate={optimal_sliding_window_rate(P.N, P.B, P.T)}", file=out)
    return 0


def cmd_encode(args, out) -> int:
    P = _params(args)
    u = parse_symbols(args.message)
    if len(u) != P.k:
        raise ValueError(f"expected k={P.k} symbols, got {len(u)}")
    print(format_symbols(encode(u, build_generator(P))), file=out)
    return 0


def cmd_decode(args, out) -> int:
    P = _params(args)
    y = parse_received(args.received)
    if len(y) != P.n:
        raise ValueError(f"expected n={P.n} symbols, got {len(y)}")
    res = decode(y, P, build_generator(P), sweep=not args.structured)
    print(f"n={P.n} k={P.k} T={P.T} N2={res.phase2_load}", file=out)
    for i, s in enumerate(res.symbols, start=1):
        if s.status is Status.LOST:
            print(f"u{i} LOST", file=out)
        elif s.status is Status.RECEIVED:
            print(f"u{i} RECEIVED delay=0 value={res.message[i - 1]}", file=out)
        else:
            print(f"u{i} RECOVERED delay={s.delay} phase={s.phase.value} value={res.message[i - 1]}", file=out)
    print(f"message={format_symbols(res.message)}", file=out)
    return 0


def cmd_capability(args, out) -> int:
    P = _params(args)
    rep = capability_report(P, max_patterns=args.max_patterns, sliding_window=args.sliding_window,
                            seed=args.seed)
    for line in rep.lines():
        print(line, file=out)
    print("OK" if rep.ok else "FAIL", file=out)
    return 0 if rep.ok else EXIT_CHECK


def cmd_oracle_diff(args, out) -> int:
    P = _params(args)
    G = build_generator(P)
    if args.exhaustive:
        if P.n > 14 and not args.force:
            raise ValueError(f"exhaustive enumeration of 2^{P.n} patterns needs --force")
        patterns = itertools.product((0, 1), repeat=P.n)
        total = 2 ** P.n
    else:
        rng = random.Random(args.seed)
        total = args.samples
        patterns = ([rng.getrandbits(1) for _ in range(P.n)] for _ in range(args.samples))
    mismatches = delay_bad = 0
    for pat in patterns:
        res = decode_pattern(pat, P, G)
        expect = {i for i in range(1, P.k + 1) if oracle_recoverable(pat, i, P, G)}
        if res.recovered_positions() != expect:
            mismatches += 1
            if mismatches <= 10:
                print(f"mismatch pattern={''.join(map(str, pat))}", file=out)
        delay_bad += sum(1 for s in res.symbols if s.delay is not None and s.delay > P.T)
    print(f"patterns={total} mismatches={mismatches} delay_violations={delay_bad}", file=out)
    return EXIT_CHECK if mismatches or delay_bad else 0


def _float_list(text: str) -> list[float]:
    return [float(v) for v in text.split(",") if v.strip()]


def cmd_simulate(args, out) -> int:
    schemes = [parse_scheme(s) for s in args.codes.split(";") if s.strip()]
    base = GEParams(args.alpha, args.beta, 0.0, args.eps1)
    reports = sweep(schemes, base, _float_list(args.eps0_list), args.len, args.seed,
                    workers=args.workers)
    text = reports_to_csv(reports)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {len(reports)} rows to {args.out}", file=out)
    else:
        out.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="delayfec", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", help="derive code parameters")
    _code_args(p)
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("encode", help="encode one message")
    _code_args(p)
    p.add_argument("--message", required=True, help='comma-separated field values, e.g. "1,2,3"')
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="decode one received word")
    _code_args(p)
    p.add_argument("--received", required=True, help='comma-separated values, "?" for erased')
    p.add_argument("--structured", action="store_true", help="disable the completion sweep")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("capability", help="verify the guaranteed correction cases")
    _code_args(p)
    p.add_argument("--max-patterns", type=int, default=200_000)
    p.add_argument("--sliding-window", action="store_true", help="also enumerate C(N,B,T+1) patterns")
    p.add_argument("--seed", type=int, default=0, help="sampling seed when a family is truncated")
    p.set_defaults(func=cmd_capability)

    p = sub.add_parser("oracle-diff", help="compare decode against the rank oracle")
    _code_args(p)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--exhaustive", action="store_true")
    g.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--force", action="store_true", help="allow exhaustive runs with n > 14")
    p.set_defaults(func=cmd_oracle_diff)

    p = sub.add_parser("simulate", help="PLP sweep over the Gilbert-Elliot channel")
    p.add_argument("--codes", required=True, help="e.g. 'new:4,7,15;new:4,6,14;mds:16,8,15'")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--eps0-list", required=True, help="comma-separated good-state erasure probabilities")
    p.add_argument("--eps1", type=float, default=1.0)
    p.add_argument("--len", type=int, required=True, help="channel length in packets")
    p.add_argument("--seed", type=int, required=True, help="master seed")
    p.add_argument("--out", default=None, help="CSV path (stdout if omitted)")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_simulate)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except IntegrityError as exc:
        print(f"integrity error: {exc}", file=sys.stderr)
        return EXIT_INTEGRITY
    except (ParameterError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
