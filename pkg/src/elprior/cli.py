"""Command-line interface: eval | estimate | simulate | bootstrap.

Exit codes: 0 success, 1 computation error, 2 usage or validation error.
"""

import argparse
import configparser
import os
import sys

from .bias import first_order_bias
from .bootstrap import ingest_csv, make_synthetic_group, run_study
from .distributions import parse_distribution
from .elcore import ElConfig, adjusted_log_el_ratio, el_evaluate
from .errors import ElpriorError, ParseError
from .estfun import AnalyticOracle, EstimatingFunctionSpec, SampleMomentOracle
from .estimators import mele, penalized_mele
from .mc import ScenarioSpec, run_table, theta0_of
from .prior import PriorSpec
from .tables import mc_row, render, study_row

_GFUN_ALIASES = {
    "mean": "mean",
    "smr": "second_moment_ratio",
    "second_moment_ratio": "second_moment_ratio",
    "exp_scale": "exp_scale",
    "cubic": "cubic_centered",
    "cubic_centered": "cubic_centered",
}


class UsageError(Exception):
    pass


def _gfun(name: str, mu: float) -> EstimatingFunctionSpec:
    try:
        kind = _GFUN_ALIASES[name]
    except KeyError:
        raise UsageError(f"unknown estimating function {name!r}")
    return EstimatingFunctionSpec(kind, mu=mu)


def _read_sample(path):
    if not os.path.exists(path):
        raise UsageError(f"data file not found: {path}")
    try:
        return ingest_csv(path).values
    except (ParseError, ElpriorError) as exc:
        raise UsageError(str(exc))


def _default_threads():
    return os.cpu_count() or 1


def cmd_eval(args) -> int:
    sample = _read_sample(args.data)
    spec = _gfun(args.gfun, args.mu)
    config = ElConfig(m_threshold=args.m_threshold, c0=args.c0)
    ev = el_evaluate(sample, spec, args.theta, config)
    lr_e = adjusted_log_el_ratio(sample, spec, args.theta, config)
    print(f"n = {sample.size}")
    print(f"theta = {args.theta:.6g}")
    print(f"lambda = {ev.lam:.6g}")
    lr = "undefined" if ev.log_ratio is None else f"{ev.log_ratio:.6g}"
    print(f"lr = {lr}")
    print(f"lr_e = {lr_e:.6g}")
    print(f"w1 = {ev.w1:.6g}")
    print(f"w2 = {ev.w2:.6g}")
    print(f"feasible = {str(ev.feasible).lower()}")
    return 0


def cmd_estimate(args) -> int:
    sample = _read_sample(args.data)
    spec = _gfun(args.gfun, args.mu)
    dist = None
    if args.prior == "analytic":
        if not args.dist:
            raise UsageError("--dist is required with --prior analytic")
        dist = parse_distribution(args.dist)
        prior = PriorSpec(spec, AnalyticOracle(dist))
    elif args.prior == "sample":
        prior = PriorSpec(spec, SampleMomentOracle(sample))
    else:
        prior = None
    hat = mele(sample, spec)
    tilde = penalized_mele(sample, spec, prior)
    lo, hi = hat.feasible_interval
    print(f"n = {sample.size}")
    print(f"feasible_interval = ({lo:.6g}, {hi:.6g})")
    print(f"mele = {hat.theta:.6g}")
    print(f"penalized_mele = {tilde.theta:.6g}")
    if dist is not None:
        t0 = theta0_of(spec, dist)
        report = first_order_bias(spec, AnalyticOracle(dist), t0)
        print(f"theta0 = {t0:.6g}")
        print(f"n_bias_mele_theory = {report.n_bias_mele:.6g}")
        print(f"n_bias_pmele_theory = {report.n_bias_pmele:.6g}")
    return 0


def _load_config(path) -> configparser.ConfigParser:
    if not os.path.exists(path):
        raise UsageError(f"config file not found: {path}")
    cp = configparser.ConfigParser()
    try:
        cp.read(path)
    except configparser.Error as exc:
        raise UsageError(f"bad config file {path}: {exc}")
    if not cp.sections():
        raise UsageError(f"config file {path} has no sections")
    return cp


def _scenario_from_section(sec, overrides) -> ScenarioSpec:
    try:
        gfun = sec.get("gfun", "second_moment_ratio")
        mu = sec.getfloat("mu", 0.0)
        spec = _gfun(gfun, mu)
        dist = parse_distribution(sec.get("distribution"))
        n_list = tuple(int(v) for v in sec.get("n_list").split(","))
        reps = overrides.reps if overrides.reps is not None else sec.getint("reps")
        seed = overrides.seed if overrides.seed is not None else sec.getint("seed")
        prior_source = sec.get("prior", "analytic")
        theta0 = sec.getfloat("theta0", fallback=None)
    except (ParseError, ValueError, TypeError) as exc:
        raise UsageError(f"bad scenario section [{sec.name}]: {exc}")
    if reps < 1:
        raise UsageError(f"[{sec.name}] reps must be >= 1, got {reps}")
    try:
        return ScenarioSpec(spec=spec, dist=dist, n_list=n_list, reps=reps,
                            seed=seed, prior_source=prior_source,
                            theta0=theta0, label=sec.name)
    except (ValueError, ElpriorError) as exc:
        raise UsageError(f"bad scenario section [{sec.name}]: {exc}")


def _provenance(command, args):
    lines = [f"elprior {command}", f"config: {os.path.basename(args.config)}"]
    if args.seed is not None:
        lines.append(f"seed override: {args.seed}")
    if args.reps is not None:
        lines.append(f"reps override: {args.reps}")
    return lines


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_simulate(args) -> int:
    cp = _load_config(args.config)
    threads = args.threads if args.threads else _default_threads()
    sections = []
    for name in cp.sections():
        scenario = _scenario_from_section(cp[name], args)
        cells = run_table(scenario, threads=threads)
        sections.append((name, [mc_row(c) for c in cells]))
    _emit(render(sections, args.format, _provenance("simulate", args)), args.out)
    return 0


def cmd_bootstrap(args) -> int:
    cp = _load_config(args.config)
    sec = cp[cp.sections()[0]]
    threads = args.threads if args.threads else _default_threads()
    try:
        n_list = tuple(int(v) for v in sec.get("n_list").split(","))
        reps = args.reps if args.reps is not None else sec.getint("reps")
        seed = args.seed if args.seed is not None else sec.getint("seed")
    except (ValueError, TypeError) as exc:
        raise UsageError(f"bad study section [{sec.name}]: {exc}")
    if reps < 1:
        raise UsageError(f"[{sec.name}] reps must be >= 1, got {reps}")
    if args.data:
        if not os.path.exists(args.data):
            raise UsageError(f"data file not found: {args.data}")
        group = ingest_csv(args.data)
    else:
        try:
            dist = parse_distribution(sec.get("synthetic_distribution"))
            size = sec.getint("synthetic_size")
            label = sec.get("label", "synthetic")
        except (ParseError, ValueError, TypeError) as exc:
            raise UsageError(f"bad study section [{sec.name}]: {exc}")
        group = make_synthetic_group(dist, size, seed, label)
    result = run_study(group, n_list, reps, seed, threads=threads)
    sections = [(group.label, [study_row(r) for r in result.rows])]
    _emit(render(sections, args.format, _provenance("bootstrap", args)), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="elprior",
        description="Empirical-likelihood estimation with reference-prior "
                    "penalization: pointwise EL evaluation, estimation, and "
                    "Monte Carlo / bootstrap studies.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="EL solve at a fixed theta")
    p.add_argument("data", help="file with one observation per line")
    p.add_argument("--gfun", required=True, choices=sorted(_GFUN_ALIASES))
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--mu", type=float, default=0.0,
                   help="location parameter for exp_scale")
    p.add_argument("--m-threshold", type=float, default=1e-8)
    p.add_argument("--c0", type=float, default=1.0)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("estimate", help="plain and penalized estimates")
    p.add_argument("data")
    p.add_argument("--gfun", required=True, choices=sorted(_GFUN_ALIASES))
    p.add_argument("--mu", type=float, default=0.0)
    p.add_argument("--prior", choices=("flat", "sample", "analytic"),
                   default="flat")
    p.add_argument("--dist", help="e.g. 'exponential(1)'; analytic prior only")
    p.set_defaults(func=cmd_estimate)

    for name, fn in (("simulate", cmd_simulate), ("bootstrap", cmd_bootstrap)):
        p = sub.add_parser(name, help=f"run the {name} study from a config")
        p.add_argument("--config", required=True)
        if name == "bootstrap":
            p.add_argument("--data", help="CSV group data; synthetic if omitted")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--reps", type=int, default=None)
        p.add_argument("--threads", type=int, default=None)
        p.add_argument("--format", choices=("csv", "markdown"), default="csv")
        p.add_argument("--out", default=None)
        p.set_defaults(func=fn)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ElpriorError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
