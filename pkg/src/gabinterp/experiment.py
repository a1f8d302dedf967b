"""Seeded Monte Carlo experiments, bound tables and the exhaustive list-decoder oracle."""

from __future__ import annotations

import csv
import io
import itertools
import math
import multiprocessing as mp
import time
from collections import Counter
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

from gabinterp import linalg
from gabinterp.channel import qsc_rank_channel, sample_erasure_scenario, sample_rank_error, trial_rng
from gabinterp.codes import InterleavedCode, MessageTuple, encode, rank_distance, word_add
from gabinterp.erasure_decoder import decode_error_erasure
from gabinterp.ffield import Field
from gabinterp.interp_decoder import (DEFAULT_LIST_CAP, FailureReason, Kind, Mode, decode, interpolate,
                                      q0_matrix, q0bar_matrix, radius_list, radius_unique, root_find)
from gabinterp.linpoly import LinPoly
from gabinterp.reference import BoundsReport, bound_alt, bounds, rr_fails, sb_fails

CSV_COLUMNS = ["point", "trials", "successes", "failures", "wrong", "overflow", "failure_rate",
               "wilson_lo", "wilson_hi", "bound_lo", "bound_alt", "floor"]


@dataclass(frozen=True)
class ExperimentConfig:
    m: int
    s: int
    k: tuple[int, ...]
    q: int = 2
    n: int | None = None
    channel: str = "fixed"  # fixed | qsc | erasure
    t: int = 0
    p_qsc: float = 0.0
    rho: tuple[int, ...] = ()
    gamma: int = 0
    trials: int = 1000
    seed: int = 0
    mode: str = "unique"
    workers: int = 1
    compare: bool = False
    list_cap: int = DEFAULT_LIST_CAP

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.channel not in ("fixed", "qsc", "erasure"):
            raise ValueError(f"unknown channel {self.channel!r}")
        if self.channel == "erasure" and len(self.rho) != self.s:
            raise ValueError("erasure channel needs one rho per interleaved row")
        Mode(self.mode)

    def build_code(self) -> InterleavedCode:
        field = Field(self.q, self.m)
        return InterleavedCode.build(field, self.s, self.n or self.m, self.k)


@dataclass
class ExperimentResult:
    trials: int = 0
    successes: int = 0
    failures: int = 0
    wrong: int = 0
    overflow: int = 0
    per_t: Counter = dc_field(default_factory=Counter)
    per_t_errors: Counter = dc_field(default_factory=Counter)
    reasons: Counter = dc_field(default_factory=Counter)
    compare: Counter = dc_field(default_factory=Counter)
    elapsed: float = 0.0
    bounds: BoundsReport | None = None

    def merge(self, other: ExperimentResult) -> None:
        for name in ("trials", "successes", "failures", "wrong", "overflow"):
            setattr(self, name, getattr(self, name) + getattr(other, name))
        for name in ("per_t", "per_t_errors", "reasons", "compare"):
            getattr(self, name).update(getattr(other, name))

    @property
    def errors(self) -> int:
        return self.trials - self.successes

    @property
    def failure_rate(self) -> float:
        return self.errors / self.trials if self.trials else 0.0

    def wilson(self, z: float = 1.959963984540054) -> tuple[float, float]:
        return wilson_interval(self.errors, self.trials, z)


def wilson_interval(k: int, n: int, z: float = 1.959963984540054) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion k/n."""
    if n == 0:
        return 0.0, 1.0
    p = k / n
    denom = 1 + z * z / n
    centre = (p + z * z / (2 * n)) / denom
    half = z * math.sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom
    lo = 0.0 if k == 0 else max(0.0, centre - half)
    hi = 1.0 if k == n else min(1.0, centre + half)
    return lo, hi


def random_message(code: InterleavedCode, rng) -> MessageTuple:
    return tuple(LinPoly(code.field, [int(v) for v in rng.integers(0, code.field.order, size=ki)])
                 for ki in code.k)


def run_trial(cfg: ExperimentConfig, code: InterleavedCode, index: int, result: ExperimentResult) -> None:
    rng = trial_rng(cfg.seed, index)
    field = code.field
    msg = random_message(code, rng)
    cw = encode(code, msg)
    info = None
    if cfg.channel == "fixed":
        t = cfg.t
        err = sample_rank_error(field, code.s, code.n, t, rng)
    elif cfg.channel == "qsc":
        err, t = qsc_rank_channel(field, code.s, code.n, cfg.p_qsc, rng)
    else:
        t = cfg.t
        draw = sample_erasure_scenario(code, cfg.rho, cfg.gamma, t, rng)
        err, info = draw.error, draw.erasures
    r = word_add(field, cw, err)
    mode = Mode(cfg.mode)

    if info is not None:
        out = decode_error_erasure(code, r, info, mode, cfg.list_cap)
    elif cfg.compare:
        tau = radius_unique(code) if mode is Mode.UNIQUE else radius_list(code)
        sol = interpolate(code, r, tau)
        out = root_find(sol, code, r, mode, cfg.list_cap)
        _compare(code, r, t, sol, out, result.compare)
    else:
        out = decode(code, r, mode, cfg.list_cap)

    result.trials += 1
    result.per_t[t] += 1
    if out.kind is Kind.FAILURE:
        if out.failure_reason is FailureReason.LIST_OVERFLOW:
            result.overflow += 1
        else:
            result.failures += 1
        result.reasons[out.failure_reason.value] += 1
        result.per_t_errors[t] += 1
    elif msg in out.messages:
        result.successes += 1
    elif not out.messages:
        result.failures += 1
        result.reasons["empty-list"] += 1
        result.per_t_errors[t] += 1
    else:
        result.wrong += 1
        result.per_t_errors[t] += 1


def _compare(code, r, t, sol, out, counter: Counter) -> None:
    """Co-measure the interpolation decoder with both rank predicates on one draw."""
    tau_u = radius_unique(code)
    if not 1 <= t <= tau_u or t >= code.n - code.kmax:
        return
    field = code.field
    rr = rr_fails(code, r, t)
    sb = sb_fails(code, r, t)
    q_def = out.rank_q < out.n_unknowns
    q0_def = linalg.rank(field, q0_matrix(sol)) < code.s
    q0bar_def = linalg.rank(field, q0bar_matrix(sol)) < code.s
    counter["measured"] += 1
    counter["rr_fails"] += rr
    counter["sb_fails"] += sb
    counter["q_deficient"] += q_def
    counter["q0bar_deficient"] += q0bar_def
    counter["predicates_agree"] += rr == sb
    counter["q_def_not_q0_def"] += q_def and not q0_def
    counter["q0bar_def_not_rr"] += q0bar_def and not rr
    counter["q_def_not_rr"] += q_def and not rr
    counter["rr_not_q_def"] += rr and not q_def


def _run_range(args) -> ExperimentResult:
    cfg, start, stop = args
    code = cfg.build_code()
    res = ExperimentResult()
    for idx in range(start, stop):
        run_trial(cfg, code, idx, res)
    return res


def _chunks(trials: int, workers: int) -> list[tuple[int, int]]:
    step = math.ceil(trials / workers)
    return [(a, min(a + step, trials)) for a in range(0, trials, step)]


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Run ``cfg.trials`` seeded trials; the counters do not depend on ``cfg.workers``."""
    code = cfg.build_code()
    t0 = time.perf_counter()
    result = ExperimentResult()
    jobs = [(cfg, a, b) for a, b in _chunks(cfg.trials, max(cfg.workers, 1))]
    if cfg.workers > 1 and len(jobs) > 1:
        with mp.get_context("spawn").Pool(cfg.workers) as pool:
            parts = pool.map(_run_range, jobs)
    else:
        parts = [_run_range(j) for j in jobs]
    for p in parts:
        result.merge(p)
    result.elapsed = time.perf_counter() - t0
    eff = code if cfg.channel != "erasure" else code.with_dims(
        [ki + ri + cfg.gamma for ki, ri in zip(code.k, cfg.rho)])
    if cfg.channel != "qsc":
        tau = radius_unique(eff)
        result.bounds = bounds(eff, min(cfg.t, tau))
    else:
        result.bounds = bounds(eff)
    return result


def prob_rank_exceeds(n: int, p: float, tau: int) -> float:
    """P(t > tau) for t ~ Binomial(n, p)."""
    return sum(math.comb(n, t) * p**t * (1 - p) ** (n - t) for t in range(tau + 1, n + 1))


def csv_row(point, res: ExperimentResult, cfg: ExperimentConfig, code: InterleavedCode) -> dict:
    lo, hi = res.wilson()
    b = res.bounds
    tau = b.tau_u if cfg.mode == "unique" else b.tau_list
    if cfg.channel == "qsc":
        q, m, s, n, k = code.field.q, code.field.m, code.s, code.n, code.k
        floor = prob_rank_exceeds(n, cfg.p_qsc, tau)
        alt = floor + sum(math.comb(n, t) * cfg.p_qsc**t * (1 - cfg.p_qsc) ** (n - t)
                          * float(min(bound_alt(q, m, s, n, k, b.tau_u, t), 1)) for t in range(1, tau + 1))
        bound_lo = ""
    else:
        floor = 1.0 if cfg.t > tau else 0.0
        alt = b.p_alt if cfg.t > 0 else 0.0
        bound_lo = "" if b.p_lo is None else f"{b.p_lo:.6e}"
    return {
        "point": point, "trials": res.trials, "successes": res.successes, "failures": res.failures,
        "wrong": res.wrong, "overflow": res.overflow, "failure_rate": f"{res.failure_rate:.6e}",
        "wilson_lo": f"{lo:.6e}", "wilson_hi": f"{hi:.6e}", "bound_lo": bound_lo,
        "bound_alt": f"{alt:.6e}", "floor": f"{floor:.6e}",
    }


def write_csv(rows: Iterable[dict], stream) -> None:
    writer = csv.DictWriter(stream, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)


def sweep(cfg: ExperimentConfig, points: Sequence[float | int]) -> list[tuple[ExperimentResult, dict]]:
    """One experiment per p_qsc (qsc channel) or t (fixed/erasure channel) value."""
    code = cfg.build_code()
    out = []
    for pt in points:
        if cfg.channel == "qsc":
            c = ExperimentConfig(**{**cfg.__dict__, "p_qsc": float(pt)})
        else:
            c = ExperimentConfig(**{**cfg.__dict__, "t": int(pt)})
        res = run_experiment(c)
        out.append((res, csv_row(pt, res, c, code)))
    return out


def sweep_csv(cfg: ExperimentConfig, points: Sequence[float | int]) -> str:
    buf = io.StringIO()
    write_csv([row for _, row in sweep(cfg, points)], buf)
    return buf.getvalue()


# --- exhaustive oracle for the list decoder ---------------------------------

@dataclass
class OracleReport:
    trials: int
    mismatches: list[dict]
    per_t: Counter
    list_sizes: Counter

    @property
    def ok(self) -> bool:
        return not self.mismatches


def all_messages(code: InterleavedCode) -> list[MessageTuple]:
    field = code.field
    total = field.order ** sum(code.k)
    if total > 1 << 20:
        raise ValueError(f"codebook of {total} words is too large for exhaustive search")
    per_row = [[LinPoly(field, c) for c in itertools.product(range(field.order), repeat=ki)] for ki in code.k]
    return list(itertools.product(*per_row))


def ball_search(code: InterleavedCode, codebook: list[tuple[MessageTuple, list]], r, tau: int) -> set:
    return {msg for msg, cw in codebook if rank_distance(code.field, cw, r) <= tau}


def run_oracle_check(code: InterleavedCode, trials: int, seed: int = 0,
                     ts: Sequence[int] | None = None, list_cap: int = DEFAULT_LIST_CAP) -> OracleReport:
    """List-decode seeded noisy words and compare with brute-force rank-ball search.

    Trial ``i`` uses error rank ``ts[i % len(ts)]``; by default every rank in
    0..tau+1 is covered.
    """
    tau = radius_list(code)
    ts = list(ts) if ts is not None else list(range(tau + 2))
    codebook = [(msg, encode(code, msg)) for msg in all_messages(code)]
    field = code.field
    report = OracleReport(trials, [], Counter(), Counter())
    for idx in range(trials):
        rng = trial_rng(seed, idx)
        t = min(ts[idx % len(ts)], code.n, code.s * field.m)
        msg = random_message(code, rng)
        r = word_add(field, encode(code, msg), sample_rank_error(field, code.s, code.n, t, rng))
        out = decode(code, r, Mode.LIST, list_cap)
        expected = ball_search(code, codebook, r, tau)
        report.per_t[t] += 1
        if out.kind is Kind.FAILURE:
            report.mismatches.append({"trial": idx, "t": t, "reason": out.failure_reason.value})
            continue
        got = set(out.messages)
        report.list_sizes[len(got)] += 1
        if got != expected or len(got) != len(out.messages):
            report.mismatches.append({"trial": idx, "t": t, "got": len(got), "expected": len(expected)})
    return report


def predicate_check(code: InterleavedCode, trials: int, seed: int = 0) -> Counter:
    """Co-measure rk(Q), rk(Q0bar), R_R and S predicates on rank-tau_u draws."""
    cfg_code = code
    tau = radius_unique(cfg_code)
    field = code.field
    counter: Counter = Counter()
    for idx in range(trials):
        rng = trial_rng(seed, idx)
        msg = random_message(code, rng)
        r = word_add(field, encode(code, msg), sample_rank_error(field, code.s, code.n, tau, rng))
        sol = interpolate(code, r, tau)
        out = root_find(sol, code, r, Mode.UNIQUE)
        _compare(code, r, tau, sol, out, counter)
    return counter


def bounds_table(report: BoundsReport) -> str:
    def fmt(x):
        return "n/a" if x is None else f"{x:.4g}"
    lines = [
        f"tau_unique                  {report.tau_u}",
        f"tau_list                    {report.tau_list}",
        f"t                           {report.t}",
        f"kernel_dimension_bound      {fmt(report.p_alt)}",
        f"received_matrix_bound       {fmt(report.p_lo)}",
        f"syndrome_bound              {fmt(report.p_sb)}",
        f"avg_list_size_bound         {fmt(report.avg_list)}",
        f"avg_list_excess_bound       {fmt(report.avg_list_excess)}",
    ]
    return "\n".join(lines)


def exact_bounds(code: InterleavedCode, t: int) -> dict[str, Fraction]:
    """Unrounded rationals behind :func:`bounds`, for tests."""
    from gabinterp.reference import avg_list_excess, bound_lo
    q, m, s, n, k = code.field.q, code.field.m, code.s, code.n, code.k
    return {"p_lo": bound_lo(q, m, s, t), "p_alt": bound_alt(q, m, s, n, k, radius_unique(code), t),
            "excess": avg_list_excess(q, m, s, n, k, radius_list(code))}
