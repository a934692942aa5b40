"""Command line front end.

    interval-orders counts  --max-n 20 --format csv
    interval-orders counts  --max-n 100 --format bfile --seq l
    interval-orders verify  --max-n 200
    interval-orders asympt  --max-n 200
    interval-orders dist    --model labelled --n 100

JSON reports have the shape {config, results, checks}; exact integers and
rationals are written as decimal strings.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction
from math import comb
from typing import Callable

import mpmath

from . import asymptotics as asy
from .counts import (
    CountTable,
    bgp_upper_check,
    build,
    multiplicity_identity_check,
    rigid_by_transform,
    surjections,
)
from .distributions import pair_pmf, poisson_pmf, reduction_size_pmf, tv_distance
from .oracle import MAX_ORACLE_N, oracle_census
from .series import TruncSeries, substitute_moebius

DIST_TREND_POINTS = (50, 100, 200)
DEFECT_HALVING_RATIO = Fraction(3, 4)


@dataclass(frozen=True)
class RunConfig:
    max_n: int = 200
    precision_bits: int = 256
    format: str = "json"
    oracle_max_n: int = MAX_ORACLE_N
    seq: str = "i"
    model: str = "unlabelled"
    n: int | None = None
    printed_transform: bool = False

    def __post_init__(self):
        if self.max_n < 0:
            raise ValueError("max_n must be >= 0")
        if self.precision_bits < 64:
            raise ValueError("precision_bits must be >= 64")
        if not 0 <= self.oracle_max_n <= MAX_ORACLE_N:
            raise ValueError(f"oracle_max_n must be in [0, {MAX_ORACLE_N}]")


def _frac(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _digits(precision_bits: int) -> int:
    return min(40, max(15, int(precision_bits * 0.30103) - 5))


def _real(x, cfg: RunConfig) -> str:
    return mpmath.nstr(x, _digits(cfg.precision_bits), strip_zeros=False)


def _dump(report: dict, out) -> None:
    json.dump(report, out, indent=2)
    out.write("\n")


# -- counts ------------------------------------------------------------------


def cmd_counts(cfg: RunConfig, out=sys.stdout) -> int:
    table = build(cfg.max_n)
    rows = [(n, table.i_seq[n], table.r_seq[n], table.l_seq[n]) for n in range(cfg.max_n + 1)]
    if cfg.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["n", "i", "r", "l"])
        w.writerows(rows)
    elif cfg.format == "bfile":
        seq = {"i": table.i_seq, "r": table.r_seq, "l": table.l_seq}[cfg.seq]
        for n, v in enumerate(seq):
            out.write(f"{n} {v}\n")
    else:
        _dump(
            {
                "config": asdict(cfg),
                "results": {
                    "rows": [{"n": n, "i": str(i), "r": str(r), "l": str(l)} for n, i, r, l in rows]
                },
                "checks": [],
            },
            out,
        )
    return 0


# -- verify ------------------------------------------------------------------


def _check(name: str, anchor: str, ok: bool, detail: str) -> dict:
    return {"name": name, "paper_anchor": anchor, "pass": bool(ok), "detail": detail}


def _first_bad(ns, pred: Callable[[int], bool]) -> int | None:
    for n in ns:
        if not pred(n):
            return n
    return None


def _verify_checks(cfg: RunConfig, table: CountTable) -> list[dict]:
    checks = []
    top = cfg.max_n

    mismatches = []
    hist_bad = []
    for n in range(cfg.oracle_max_n + 1):
        c = oracle_census(n)
        got = (c.unlabelled_interval, c.rigid_unlabelled, c.labelled_interval)
        want = (table.i_seq[n], table.r_seq[n], table.l_seq[n])
        if got != want:
            mismatches.append(f"n={n}: oracle {got} vs formulas {want}")
        if n >= 1 and c.pair_histogram.get(1, 0) != table.r_seq[n - 1] * (n - 1):
            hist_bad.append(n)
    checks.append(
        _check(
            "oracle_counts",
            "brute force vs I(x), R(x), l_n = sum_k r_k k! S(n,k)",
            not mismatches,
            "; ".join(mismatches) or f"i, r, l agree for n = 0..{cfg.oracle_max_n}",
        )
    )
    checks.append(
        _check(
            "oracle_single_pair_classes",
            "exactly one duplicated pair: r_{n-1}(n-1)",
            not hist_bad,
            f"mismatch at n in {hist_bad}" if hist_bad else f"agrees for n = 1..{cfg.oracle_max_n}",
        )
    )

    diffs = {}
    for n in range(1, top + 1):
        d = rigid_by_transform(n, table.i_seq, include_i0=cfg.printed_transform) - table.r_seq[n]
        if d:
            diffs[n] = d
    if diffs:
        values = sorted(set(diffs.values()))
        detail = (
            f"transform minus series nonzero at {len(diffs)} of {top} indices, "
            f"first n={min(diffs)}, discrepancies {values}"
        )
    else:
        detail = f"equal for n = 1..{top}"
    checks.append(
        _check(
            "rigid_series_vs_transform",
            "r_n = sum_k (-1)^k C(n-1,k) i_{n-k}",
            not diffs,
            detail,
        )
    )

    I = TruncSeries.from_coeffs(table.i_seq)
    R = TruncSeries.from_coeffs(table.r_seq)
    i_to_r = substitute_moebius(I, 1)
    r_to_i = substitute_moebius(R, -1)
    checks.append(
        _check(
            "moebius_substitution",
            "I(x) = R(x/(1-x)), R(x) = I(x/(1+x))",
            i_to_r == R and r_to_i == I,
            f"order {top}: I(x/(1+x)) == R: {i_to_r == R}; R(x/(1-x)) == I: {r_to_i == I}",
        )
    )
    back_i = substitute_moebius(i_to_r, -1)
    back_r = substitute_moebius(r_to_i, 1)
    checks.append(
        _check(
            "moebius_round_trip",
            "x/(1+x) and x/(1-x) are mutually inverse",
            back_i == I and back_r == R,
            f"order {top}: I round trip {back_i == I}; R round trip {back_r == R}",
        )
    )

    bad = _first_bad(range(1, top + 1), lambda n: multiplicity_identity_check(n, table))
    checks.append(
        _check(
            "multiplicity_identity",
            "i_n = sum_m r_m C(n-1, m-1)",
            bad is None,
            f"fails at n={bad}" if bad else f"holds for n = 1..{top}",
        )
    )

    bad = _first_bad(
        range(1, top + 1),
        lambda n: table.l_seq[n] == sum(table.r_seq[k] * surjections(n, k, table) for k in range(1, n + 1)),
    )
    checks.append(
        _check(
            "labelled_surjection_decomposition",
            "l_n = sum_k r_k k! S(n,k)",
            bad is None,
            f"fails at n={bad}" if bad else f"holds for n = 1..{top}",
        )
    )

    bad = _first_bad(range(1, top + 1), lambda n: table.S(n, n - 1) == comb(n, 2))
    checks.append(
        _check(
            "stirling_near_diagonal",
            "S(n, n-1) = C(n, 2)",
            bad is None,
            f"fails at n={bad}" if bad else f"holds for n = 1..{top}",
        )
    )

    bad = _first_bad(range(1, top + 1), lambda n: bgp_upper_check(n, table))
    checks.append(
        _check(
            "labelled_upper_bound",
            "l_n <= (2n)!/2^n",
            bad is None,
            f"fails at n={bad}" if bad else f"holds for n = 1..{top}",
        )
    )
    return checks


def cmd_verify(cfg: RunConfig, out=sys.stdout, err=sys.stderr) -> int:
    table = build(max(cfg.max_n, cfg.oracle_max_n))
    checks = _verify_checks(cfg, table)
    failed = [c["name"] for c in checks if not c["pass"]]
    report = {
        "config": asdict(cfg),
        "results": {"passed": len(checks) - len(failed), "failed": len(failed)},
        "checks": checks,
    }
    _dump(report, out)
    if failed:
        err.write(f"verify failed: {failed[0]}\n")
        return 1
    return 0


# -- asympt ------------------------------------------------------------------


def sample_points(max_n: int) -> tuple[int, ...] | None:
    """Fit points: (100, 150, 200) when available, else the top half of the table."""
    if max_n >= 200:
        return (100, 150, 200)
    pts = tuple(sorted({max_n // 2, (3 * max_n) // 4, max_n}))
    if len(pts) < 3 or pts[0] < 1:
        return None
    return pts


def cmd_asympt(cfg: RunConfig, out=sys.stdout) -> int:
    bits = cfg.precision_bits
    table = build(cfg.max_n)
    k = asy.constants(bits)
    real = lambda x: _real(x, cfg)  # noqa: E731

    const = {
        "c0": real(k.c0),
        "d0": real(k.d0),
        "e0": real(k.e0),
        "exp_neg_pi2_over_6": real(k.exp_neg_pi2_over_6),
        "lambda_unlabelled": real(k.lambda_unlabelled),
        "lambda_labelled": real(k.lambda_labelled),
    }
    pts = sample_points(cfg.max_n)
    show = sorted({n for n in (10, 25, 50, 100, 150, 200, cfg.max_n) if 1 <= n <= cfg.max_n})
    ratios = {
        str(n): {kind: real(asy.scaled_ratio(kind, n, table, bits)) for kind in asy.KINDS}
        for n in show
    }

    checks = []
    fits = {}
    d1 = None
    if pts is not None:
        fit_objs = {kind: asy.extrapolate(kind, pts, table, bits) for kind in asy.KINDS}
        for kind, f in fit_objs.items():
            rel = abs(f.a0 / k.leading(kind) - 1)
            fits[kind] = {
                "a0": real(f.a0),
                "a1": real(f.a1),
                "a2": real(f.a2),
                "sample_points": list(f.sample_points),
                "residual": real(f.residual),
                "a0_relative_error": real(rel),
            }
            checks.append(
                _check(
                    f"leading_constant_{kind}",
                    {"unlabelled": "C_0", "rigid": "D_0", "labelled": "E_0"}[kind],
                    rel <= asy.A0_REL_TOL,
                    f"a0 relative error {mpmath.nstr(rel, 6)} (tolerance {asy.A0_REL_TOL})",
                )
            )
        dc = asy.d1_consistency(fit_objs["unlabelled"], fit_objs["rigid"], k)
        d1 = {
            "predicted_d1": real(dc.predicted_d1),
            "observed_d1": real(dc.observed_d1),
            "relative_gap": real(dc.relative_gap),
        }
        checks.append(
            _check(
                "d1_consistency",
                "D_1 = (C_1 + pi^2 C_0 / 4) e^(-pi^2/6)",
                dc.relative_gap <= asy.D1_REL_GAP_TOL,
                f"relative gap {mpmath.nstr(dc.relative_gap, 6)} (tolerance {asy.D1_REL_GAP_TOL})",
            )
        )

    proportion = []
    for n in show:
        with mpmath.workprec(bits):
            ratio = mpmath.mpf(table.r_seq[n]) / table.i_seq[n]
            gap = abs(ratio - k.exp_neg_pi2_over_6)
        proportion.append({"n": n, "rigid_over_unlabelled": real(ratio), "gap": real(gap)})
    if cfg.max_n >= 1:
        with mpmath.workprec(bits):
            gap_top = abs(mpmath.mpf(table.r_seq[cfg.max_n]) / table.i_seq[cfg.max_n] - k.exp_neg_pi2_over_6)
        checks.append(
            _check(
                "rigid_proportion",
                "r_n / i_n -> e^(-pi^2/6)",
                gap_top <= asy.RIGID_PROPORTION_TOL,
                f"gap {mpmath.nstr(gap_top, 6)} at n={cfg.max_n} (tolerance {asy.RIGID_PROPORTION_TOL})",
            )
        )

    report = {
        "config": asdict(cfg),
        "results": {
            "constants": const,
            "scaled_ratios": ratios,
            "fits": fits,
            "d1_consistency": d1,
            "ratio_rigid_over_unlabelled": proportion,
        },
        "checks": checks,
    }
    _dump(report, out)
    return 0


# -- dist --------------------------------------------------------------------


def _tv(model: str, n: int, table: CountTable, k: asy.AsymptoticConstants):
    lam = k.lambda_unlabelled if model == "unlabelled" else k.lambda_labelled
    p = pair_pmf(model, n, table)
    return p, tv_distance(p, poisson_pmf(lam, n))


def cmd_dist(cfg: RunConfig, out=sys.stdout, err=sys.stderr) -> int:
    n = cfg.n if cfg.n is not None else cfg.max_n
    if not 1 <= n <= cfg.max_n:
        err.write(f"--n must be in [1, {cfg.max_n}], got {n}\n")
        return 2
    bits = cfg.precision_bits
    table = build(cfg.max_n)
    k = asy.constants(bits)
    lam = k.lambda_unlabelled if cfg.model == "unlabelled" else k.lambda_labelled
    real = lambda x: _real(x, cfg)  # noqa: E731

    with mpmath.workprec(bits):
        pp, tv = _tv(cfg.model, n, table, k)
        poisson = poisson_pmf(lam, n)
        red = reduction_size_pmf(cfg.model, n, table)

        trend_ns = [m for m in DIST_TREND_POINTS if m <= cfg.max_n]
        trend = [(m, *_tv(cfg.model, m, table, k)) for m in trend_ns]
    tvs = [t for _, _, t in trend]
    if len(trend) < 2:
        tv_trend = "n/a"
    else:
        tv_trend = "pass" if all(a > b for a, b in zip(tvs, tvs[1:])) else "fail"
    halving = []
    for m, p, _ in trend:
        if m % 2 == 0 and m // 2 >= 1:
            half = pair_pmf(cfg.model, m // 2, table)
            halving.append(
                {
                    "n": m,
                    "defect": _frac(p.defect),
                    "defect_half_n": _frac(half.defect),
                    "pass": p.defect <= DEFECT_HALVING_RATIO * half.defect,
                }
            )

    checks = [
        _check(
            "tv_trend",
            "pair count -> Poisson(pi^2/6) unlabelled, Poisson(pi^2/12) labelled",
            tv_trend != "fail",
            f"trend: {tv_trend} over n in {trend_ns}",
        ),
        _check(
            "defect_halving",
            "orders with a duplicated triple are O(1/n)",
            all(h["pass"] for h in halving),
            f"defect(n) <= {DEFECT_HALVING_RATIO} defect(n/2) at n in {[h['n'] for h in halving]}",
        ),
    ]
    report = {
        "config": asdict(cfg),
        "results": {
            "model": cfg.model,
            "n": n,
            "lambda": real(lam),
            "pair_pmf": {
                "support_offset": pp.support_offset,
                "masses": [_frac(m) for m in pp.masses],
                "defect": _frac(pp.defect),
                "defect_value": real(asy.fraction_to_mpf(pp.defect, bits)),
            },
            "reduction_size_pmf": {
                "support_offset": red.support_offset,
                "masses": [_frac(m) for m in red.masses],
            },
            "poisson": [real(x) for x in poisson],
            "tv_distance": real(tv),
            "trend": {
                "tv": [{"n": m, "tv_distance": real(t)} for m, _, t in trend],
                "status": tv_trend,
                "defect_halving": halving,
            },
        },
        "checks": checks,
    }
    _dump(report, out)
    return 0


# -- argument parsing ----------------------------------------------------------


def _positive_bits(s: str) -> int:
    v = int(s)
    if v < 64:
        raise argparse.ArgumentTypeError("precision must be at least 64 bits")
    return v


def _nonneg(s: str) -> int:
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def _oracle_n(s: str) -> int:
    v = _nonneg(s)
    if v > MAX_ORACLE_N:
        raise argparse.ArgumentTypeError(f"oracle is capped at {MAX_ORACLE_N}")
    return v


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-n", type=_nonneg, default=200)
    common.add_argument("--precision-bits", type=_positive_bits, default=256)

    parser = argparse.ArgumentParser(
        prog="interval-orders",
        description="Exact and asymptotic enumeration of interval orders.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("counts", parents=[common], help="print i_n, r_n, l_n")
    p.add_argument("--format", choices=("csv", "json", "bfile"), default="csv")
    p.add_argument("--seq", choices=("i", "r", "l"), default="i", help="sequence for bfile output")

    p = sub.add_parser("verify", parents=[common], help="run exact identity checks")
    p.add_argument("--oracle-max-n", type=_oracle_n, default=MAX_ORACLE_N)
    p.add_argument(
        "--printed-transform",
        action="store_true",
        help="add the stray i_0 term to the binomial transform (expected to fail)",
    )

    sub.add_parser("asympt", parents=[common], help="asymptotic constants and fits")

    p = sub.add_parser("dist", parents=[common], help="duplicated-pair laws vs Poisson")
    p.add_argument("--model", choices=("unlabelled", "labelled"), default="unlabelled")
    p.add_argument("--n", type=int, default=None)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        max_n=args.max_n,
        precision_bits=args.precision_bits,
        format=getattr(args, "format", "json"),
        oracle_max_n=getattr(args, "oracle_max_n", MAX_ORACLE_N),
        seq=getattr(args, "seq", "i"),
        model=getattr(args, "model", "unlabelled"),
        n=getattr(args, "n", None),
        printed_transform=getattr(args, "printed_transform", False),
    )


def main(argv=None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    args = make_parser().parse_args(argv)
    cfg = config_from_args(args)
    if args.command == "counts":
        return cmd_counts(cfg, out)
    if args.command == "verify":
        return cmd_verify(cfg, out, err)
    if args.command == "asympt":
        if cfg.max_n < 1:
            err.write("asympt needs --max-n >= 1\n")
            return 2
        return cmd_asympt(cfg, out)
    return cmd_dist(cfg, out, err)


def run(argv) -> tuple[int, str, str]:
    """Invoke ``main`` and capture its output; used by the tests."""
    out, err = io.StringIO(), io.StringIO()
    try:
        code = main(argv, out, err)
    except SystemExit as e:
        code = e.code if isinstance(e.code, int) else 1
    return code, out.getvalue(), err.getvalue()
