"""Command-line front end.

Exit codes: 0 ok, 1 property violation, 2 usage or parse error,
3 infeasible length, 4 mate-count mismatch.
"""
from __future__ import annotations

import argparse
import itertools
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .analysis import metrics, peak_sidelobe_ratio, sac, scc
from .core import generate_ccc
from .errors import (
    BarkerNestError,
    FormatError,
    LengthCapExceeded,
    MateCountMismatch,
    NotFeasible,
)
from .extend import (
    NestingPlan,
    barker_extend,
    cdos_extend,
    count_feasible,
    min_multiplier,
    plan_length,
    power_of_two_at_least,
)
from .figures import FIGURES, build_figure
from .formats import fraction_decimal, profile_csv, read_set, write_set
from .verify import are_uncorrelated, is_complementary

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3
EXIT_MISMATCH = 4


class CommandError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _nonneg_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {v}")
    return v


def _gain(text):
    try:
        g = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if g < 1:
        raise argparse.ArgumentTypeError(f"gain must be >= 1, got {text}")
    return g


def _range(text):
    lo, sep, hi = text.partition("..")
    try:
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}") from None
    if not sep or not 1 <= lo <= hi:
        raise argparse.ArgumentTypeError(f"expected 1 <= LO <= HI, got {text!r}")
    return lo, hi


def _frac(x: Fraction) -> str:
    return f"{x} ({fraction_decimal(x)})"


def _load(path):
    try:
        return read_set(path)
    except FileNotFoundError:
        raise CommandError(f"no such file: {path}", EXIT_USAGE) from None
    except (FormatError, ValueError) as exc:
        raise CommandError(f"{path}: {exc}", EXIT_USAGE) from None


def cmd_generate(args) -> int:
    code = generate_ccc(args.m, args.n_stages)
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    ext = "json" if args.format == "json" else "txt"
    print(f"M={code.M} L={code.length} SAC mainlobe={code.M * code.length}")
    for s in code.sets:
        path = write_set(s, out / f"set_{s.set_index}.{ext}", args.format)
        print(path)
    return EXIT_OK


def _parse_plan(spec: str, exhaustive: bool):
    key, sep, value = spec.partition("=")
    if not sep or not value:
        raise CommandError(f"bad plan spec {spec!r}", EXIT_USAGE)
    try:
        if key == "cdos":
            return "cdos", int(value)
        if key == "multiplier":
            return "plan", plan_length(int(value), "exhaustive" if exhaustive else "default")
        if key == "factors":
            ids = []
            for item in value.split(","):
                n, _, v = item.partition(":")
                ids.append((int(n), int(v) if v else 0))
            return "plan", NestingPlan.from_factors(ids)
    except (NotFeasible, LengthCapExceeded):
        raise
    except ValueError as exc:
        raise CommandError(f"bad plan spec {spec!r}: {exc}", EXIT_USAGE) from None
    raise CommandError(f"unknown plan kind {key!r} (use factors=, cdos= or multiplier=)", EXIT_USAGE)


def cmd_extend(args) -> int:
    base = _load(args.input)
    kind, plan = _parse_plan(args.plan, args.exhaustive)
    if kind == "cdos":
        if plan < 0:
            raise CommandError("cdos depth must be >= 0", EXIT_USAGE)
        ext = cdos_extend(base, plan)
        report = [
            "scheme: cdos",
            f"depth: {plan}",
            f"multiplier: {ext.multiplier}",
            f"predicted_smr: {_frac(peak_sidelobe_ratio(ext.envelope))}",
        ]
    else:
        ext = barker_extend(base, plan)
        report = [
            "scheme: barker",
            f"multiplier: {plan.multiplier}",
            f"factors: {plan.factorization}",
            "order: " + (", ".join(f"{n}:{v}" for n, v in plan.factors) or "identity"),
            f"predicted_smr: {_frac(plan.predicted_smr)}",
        ]
    report.append(f"length: {ext.length}")
    out = Path(args.output)
    write_set(ext, out, args.format)
    text = "\n".join(report) + "\n"
    out.with_name(out.name + ".plan.txt").write_text(text, encoding="utf-8")
    sys.stdout.write(text)
    print(out)
    return EXIT_OK


def cmd_analyze(args) -> int:
    sets = [_load(p) for p in args.inputs]
    metric = args.metric or ("scc" if len(sets) == 2 else "sac")
    if metric == "sac":
        if len(sets) != 1:
            raise CommandError("sac takes exactly one input", EXIT_USAGE)
        prof = sac(sets[0])
    else:
        if len(sets) != 2:
            raise CommandError("scc takes exactly two inputs", EXIT_USAGE)
        prof = scc(sets[0], sets[1])
    if args.csv:
        Path(args.csv).write_text(
            profile_csv(prof, comments=[f"{metric} of {', '.join(args.inputs)}"]), encoding="utf-8"
        )
        print(f"wrote {args.csv} ({len(prof)} rows)")
    if metric == "sac":
        met = metrics(prof)
        print(f"mainlobe: {prof.mainlobe}")
        print(f"smr: {_frac(met.smr)}")
        print(f"signed_sum_ratio: {_frac(met.signed_sum_ratio)}")
        print(f"abs_sum_ratio: {_frac(met.abs_sum_ratio)}")
        print(f"complementary: {str(prof.is_impulse()).lower()}")
    else:
        nz = int((prof.values != 0).sum())
        print(f"nonzero lags: {nz}")
        print(f"uncorrelated: {str(prof.is_zero()).lower()}")
    return EXIT_OK


def cmd_plan(args) -> int:
    if args.gain is None and args.count is None:
        raise CommandError("give a GAIN and/or --count LO..HI", EXIT_USAGE)
    if args.gain is not None:
        n = min_multiplier(args.gain)
        plan = plan_length(n, "exhaustive" if args.exhaustive else "default")
        line = f"{n} ({plan.factorization})"
        if args.compare_pow2:
            p2 = power_of_two_at_least(args.gain)
            saving = Fraction(p2 - n, p2) * 100
            line += f" vs {p2}; {fraction_decimal(saving)}% shorter"
        print(line)
        print("order: " + (", ".join(f"{k}:{v}" for k, v in plan.factors) or "identity"))
        print(f"predicted_smr: {_frac(plan.predicted_smr)}")
    if args.count is not None:
        lo, hi = args.count
        print(f"feasible in {lo}..{hi}: {count_feasible(lo, hi)}")
    return EXIT_OK


def cmd_figures(args) -> int:
    names = sorted(FIGURES) if args.figure == "all" else [args.figure]
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    for name in names:
        fig = build_figure(name)
        for fname, text in fig.files.items():
            (out / fname).write_text(text, encoding="utf-8")
            print(out / fname)
        for line in fig.summary:
            print(f"{name}: {line}")
    return EXIT_OK


def cmd_verify(args) -> int:
    sets = [(p, _load(p)) for p in args.inputs]
    failed = False
    for path, s in sets:
        v = is_complementary(s)
        print(f"{path}: complementary: {str(v.ok).lower()}")
        if not v.ok:
            print(f"  witness: lag {v.lag} value {v.value}")
            if not args.extended:
                failed = True
    for (pa, a), (pb, b) in itertools.combinations(sets, 2):
        if a.M != b.M:
            raise CommandError(f"{pa} and {pb} hold {a.M} and {b.M} sequences", EXIT_MISMATCH)
        v = are_uncorrelated(a, b)
        print(f"{pa} x {pb}: uncorrelated: {str(v.ok).lower()}")
        if not v.ok:
            print(f"  witness: lag {v.lag} value {v.value}")
            failed = True
    return EXIT_VIOLATION if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="barkernest",
        description="Uncorrelated binary complementary sequences via nested Barker envelopes.",
    )
    p.add_argument("--version", action="version", version=f"barkernest {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="generate a complete complementary code")
    g.add_argument("--m", type=_positive_int, required=True, help="M = 2**m sequences per set")
    g.add_argument("--n-stages", type=_nonneg_int, required=True, help="L = M**n_stages")
    g.add_argument("-o", "--output", required=True, help="output directory")
    g.add_argument("--format", choices=("json", "text"), default="json")
    g.set_defaults(func=cmd_generate)

    e = sub.add_parser("extend", help="extend a set by CDOS or a nested Barker envelope")
    e.add_argument("input")
    e.add_argument("--plan", required=True, help="factors=4:0,5 | cdos=Q | multiplier=N")
    e.add_argument("--exhaustive", action="store_true", help="search all nesting orders")
    e.add_argument("-o", "--output", required=True)
    e.add_argument("--format", choices=("json", "text"), default="json")
    e.set_defaults(func=cmd_extend)

    a = sub.add_parser("analyze", help="summed auto/cross-correlation and sidelobe metrics")
    a.add_argument("inputs", nargs="+")
    a.add_argument("--metric", choices=("sac", "scc"))
    a.add_argument("--csv", help="write the lag,value profile here")
    a.set_defaults(func=cmd_analyze)

    pl = sub.add_parser("plan", help="smallest achievable multiplier for a required gain")
    pl.add_argument("gain", nargs="?", type=_gain)
    pl.add_argument("--compare-pow2", action="store_true")
    pl.add_argument("--count", type=_range, metavar="LO..HI")
    pl.add_argument("--exhaustive", action="store_true")
    pl.set_defaults(func=cmd_plan)

    f = sub.add_parser("figures", help="emit figure data as CSV")
    f.add_argument("figure", choices=sorted(FIGURES) + ["all"])
    f.add_argument("-o", "--output", default=".")
    f.set_defaults(func=cmd_figures)

    v = sub.add_parser("verify", help="brute-force complementarity and uncorrelation checks")
    v.add_argument("inputs", nargs="+")
    v.add_argument("--extended", action="store_true",
                   help="inputs are extended sets; non-complementarity is expected")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (NotFeasible, LengthCapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except MateCountMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (BarkerNestError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
