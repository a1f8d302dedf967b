"""Command-line entry point: ``gabinterp <subcommand> ...``.

Exit status is 0 on success, 1 on a configuration or input error and 2 when
an oracle or implication check finds a mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager

from gabinterp.channel import read_erasures
from gabinterp.codes import InterleavedCode, encode, read_word, write_word
from gabinterp.erasure_decoder import decode_error_erasure
from gabinterp.experiment import (ExperimentConfig, bounds_table, predicate_check, run_oracle_check, sweep,
                                  write_csv)
from gabinterp.ffield import Field
from gabinterp.interp_decoder import DEFAULT_LIST_CAP, decode
from gabinterp.linpoly import read_polys, write_polys
from gabinterp.reference import bounds

EXIT_OK, EXIT_CONFIG, EXIT_MISMATCH = 0, 1, 2


class ConfigError(Exception):
    pass


@contextmanager
def _open(path: str | None, mode: str = "r"):
    if path in (None, "-"):
        yield sys.stdin if "r" in mode else sys.stdout
    else:
        with open(path, mode) as fh:
            yield fh


def _dims(k: list[int], s: int) -> tuple[int, ...]:
    if len(k) == 1:
        return tuple(k * s)
    if len(k) != s:
        raise ConfigError(f"--k needs 1 or {s} values, got {len(k)}")
    return tuple(k)


def _code(args, n: int | None = None, s: int | None = None) -> InterleavedCode:
    s = s or args.s
    field = Field(args.q, args.m)
    return InterleavedCode.build(field, s, n or getattr(args, "n", None) or args.m, _dims(args.k, s))


def _add_code_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, default=None, help="code length (default m)")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--k", type=int, nargs="+", required=True, help="one dimension or one per row")


def _seed_args(p: argparse.ArgumentParser, trials: int) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=trials)


# --- subcommands -------------------------------------------------------------

def cmd_encode(args) -> int:
    code = _code(args)
    with _open(args.input) as fh:
        msg = read_polys(code.field, fh)
    if len(msg) != code.s:
        raise ConfigError(f"expected {code.s} message polynomials, got {len(msg)}")
    word = encode(code, tuple(msg))
    with _open(args.output, "w") as fh:
        write_word(fh, code.field, word)
    return EXIT_OK


def cmd_decode(args) -> int:
    with _open(args.input) as fh:
        (q, m, s, n), word = read_word(fh)
    args.q, args.m = q, m
    code = _code(args, n=n, s=s)
    if args.erasures:
        with open(args.erasures) as fh:
            info = read_erasures(fh, code.field, n)
        out = decode_error_erasure(code, word, info, args.mode, args.cap)
    else:
        out = decode(code, word, args.mode, args.cap)
    with _open(args.output, "w") as fh:
        if not out.ok:
            fh.write(f"failure {out.failure_reason.value}\n")
        elif args.mode == "unique":
            fh.write("unique\n")
        else:
            fh.write(f"list {len(out.messages)}\n")
        for idx, msg in enumerate(out.messages):
            if idx:
                fh.write("\n")
            write_polys(fh, msg)
    return EXIT_OK


def _points(text: str, cast):
    return [cast(x) for x in text.split(",") if x.strip()]


def cmd_simulate(args) -> int:
    s = args.s
    rho = tuple(_dims(args.rho, s)) if args.rho else ()
    channel = "erasure" if (rho or args.gamma) else ("qsc" if args.p_qsc is not None else "fixed")
    if channel == "erasure" and not rho:
        rho = (0,) * s
    if channel == "erasure" and args.p_qsc is not None:
        raise ConfigError("erasure scenarios use a fixed full-error rank (--t)")
    cfg = ExperimentConfig(q=args.q, m=args.m, n=args.n, s=s, k=_dims(args.k, s), channel=channel,
                           t=_points(args.t, int)[0] if args.t else 0,
                           p_qsc=_points(args.p_qsc, float)[0] if args.p_qsc else 0.0,
                           rho=rho, gamma=args.gamma, trials=args.trials, seed=args.seed, mode=args.mode,
                           workers=args.workers, compare=args.compare, list_cap=args.cap)
    points = _points(args.p_qsc, float) if channel == "qsc" else (_points(args.t, int) if args.t else [0])
    results = sweep(cfg, points)
    for pt, (res, row) in zip(points, results):
        lo, hi = res.wilson()
        label = f"p_qsc={pt}" if channel == "qsc" else f"t={pt}"
        print(f"{label}: trials={res.trials} success={res.successes} failure={res.failures} "
              f"wrong={res.wrong} overflow={res.overflow} rate={res.failure_rate:.3e} "
              f"wilson95=[{lo:.3e}, {hi:.3e}] elapsed={res.elapsed:.1f}s")
        if len(res.per_t) > 1:
            print("  per-t trials/errors: " + ", ".join(
                f"{t}:{res.per_t[t]}/{res.per_t_errors[t]}" for t in sorted(res.per_t)))
        if res.compare:
            print("  compare: " + json.dumps(dict(sorted(res.compare.items()))))
    if args.csv:
        with _open(args.csv, "w") as fh:
            write_csv([row for _, row in results], fh)
    return EXIT_OK


def cmd_bounds(args) -> int:
    code = _code(args)
    report = bounds(code, args.t)
    if args.csv:
        with _open(args.csv, "w") as fh:
            fh.write(",".join(report.as_dict()) + "\n")
            fh.write(",".join("" if v is None else str(v) for v in report.as_dict().values()) + "\n")
    else:
        print(bounds_table(report))
    return EXIT_OK


def cmd_oracle_check(args) -> int:
    code = _code(args)
    report = run_oracle_check(code, args.trials, args.seed, list_cap=args.cap)
    print(f"oracle-check: trials={report.trials} mismatches={len(report.mismatches)} "
          f"per_t={dict(sorted(report.per_t.items()))} list_sizes={dict(sorted(report.list_sizes.items()))}")
    for mm in report.mismatches[:10]:
        print("  mismatch: " + json.dumps(mm))
    return EXIT_OK if report.ok else EXIT_MISMATCH


def cmd_predicate_check(args) -> int:
    code = _code(args)
    counter = predicate_check(code, args.trials, args.seed)
    print("lemma-check: " + json.dumps(dict(sorted(counter.items()))))
    measured = counter["measured"]
    bad = (measured - counter["predicates_agree"]) + counter["q_def_not_rr"] + counter["q0bar_def_not_rr"] \
        + counter["q_def_not_q0_def"]
    if measured == 0:
        print("  no draws fell inside the range where both predicates are defined")
    return EXIT_OK if bad == 0 else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gabinterp", description="Interleaved Gabidulin interpolation decoding")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="encode s message polynomials into a word file")
    _add_code_args(p)
    p.add_argument("--input", "-i", default="-")
    p.add_argument("--output", "-o", default="-")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="decode a word file")
    p.add_argument("--k", type=int, nargs="+", required=True)
    p.add_argument("--mode", choices=["unique", "list"], default="unique")
    p.add_argument("--cap", type=int, default=DEFAULT_LIST_CAP)
    p.add_argument("--erasures", default=None, help="erasure side-information file")
    p.add_argument("--input", "-i", default="-")
    p.add_argument("--output", "-o", default="-")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("simulate", help="seeded Monte Carlo experiment")
    _add_code_args(p)
    _seed_args(p, 1000)
    p.add_argument("--t", default=None, help="error rank, or a comma-separated list of ranks")
    p.add_argument("--p-qsc", default=None, help="symmetric-channel probability, or a comma-separated list")
    p.add_argument("--rho", type=int, nargs="+", default=None)
    p.add_argument("--gamma", type=int, default=0)
    p.add_argument("--mode", choices=["unique", "list"], default="unique")
    p.add_argument("--cap", type=int, default=DEFAULT_LIST_CAP)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--compare", action="store_true", help="co-measure the rank predicates on each draw")
    p.add_argument("--csv", default=None)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("bounds", help="closed-form failure and list-size bounds")
    _add_code_args(p)
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--csv", default=None)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("oracle-check", help="list decoder versus exhaustive rank-ball search")
    _add_code_args(p)
    _seed_args(p, 200)
    p.add_argument("--cap", type=int, default=DEFAULT_LIST_CAP)
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("lemma-check", help="co-measure rk(Q), R_R and S on rank-tau draws")
    _add_code_args(p)
    _seed_args(p, 1000)
    p.set_defaults(func=cmd_predicate_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG
    try:
        return args.func(args)
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
