"""Command-line interface.

Exit codes: 0 success, 1 validation error, 2 theory-comparison failure,
3 resource guard refusal.  All output is byte-reproducible for identical
flags and seeds; the only wall-clock line is the summary footer, which
`--no-footer` suppresses.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from .combinatorics import TheoryParams, binomial
from .enumeration import (
    enum_report,
    exp_reciprocal_bounds,
    expected_Cs_lower_reference,
    expected_Rs_upper,
    laplace_sum_check,
    unicycle_bound,
    wheel_bound,
)
from .errors import ResourceLimitError, ValidationError
from .experiments import (
    ExperimentConfig,
    compare_to_theory,
    csv_lines,
    format_summary,
    parse_config_file,
    run_experiment,
)
from .hypergraph import j_components, read_hypergraph, sample, write_hypergraph

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_COMPARISON = 2
EXIT_RESOURCE = 3


class _Parser(argparse.ArgumentParser):
    # route argparse failures through the validation exit code
    def error(self, message: str):
        raise ValidationError(message)


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _build_parser() -> _Parser:
    parser = _Parser(prog="hyperlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_gen = sub.add_parser("gen", help="sample a hypergraph to a file")
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--k", type=int, required=True)
    p_gen.add_argument("--p", type=float, default=None, help="explicit edge probability")
    p_gen.add_argument("--epsilon", type=float, default=None,
                       help="use p = (1-epsilon)*p0 for the given j")
    p_gen.add_argument("--j", type=int, default=None,
                       help="connectivity level for --epsilon (default k-1)")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", required=True)

    p_comp = sub.add_parser("components", help="decompose a hypergraph file into j-components")
    p_comp.add_argument("--in", dest="infile", required=True)
    p_comp.add_argument("--j", type=int, required=True)
    p_comp.add_argument("--wheels", action="store_true",
                        help="print a wheel witness per non-hypertree component")

    p_enum = sub.add_parser("enumerate", help="exact tree counts and their two-sided bracket")
    p_enum.add_argument("--k", type=int, required=True)
    p_enum.add_argument("--j", type=int, required=True)
    p_enum.add_argument("--n", type=int, required=True)
    p_enum.add_argument("--s-max", type=int, required=True)

    p_bounds = sub.add_parser("bounds", help="evaluate analytic bound expressions")
    p_bounds.add_argument("--which", required=True,
                          choices=["wheel", "laplace", "rs", "cs", "unicycle"])
    p_bounds.add_argument("--n", type=int)
    p_bounds.add_argument("--k", type=int)
    p_bounds.add_argument("--j", type=int)
    p_bounds.add_argument("--epsilon", type=float)
    p_bounds.add_argument("--ell", type=int)
    p_bounds.add_argument("--a", type=int)
    p_bounds.add_argument("--s", type=int)
    p_bounds.add_argument("--constant", type=float, default=244.0)

    p_exp = sub.add_parser("experiment", help="Monte Carlo run: CSV records plus summary")
    p_exp.add_argument("--config", default=None, help="flat key=value config file")
    p_exp.add_argument("--n", type=int, default=None)
    p_exp.add_argument("--k", type=int, default=None)
    p_exp.add_argument("--j", type=int, default=None)
    p_exp.add_argument("--epsilon", type=float, default=None)
    p_exp.add_argument("--trials", type=int, default=None)
    p_exp.add_argument("--m", type=int, default=None)
    p_exp.add_argument("--base-seed", type=int, default=None)
    p_exp.add_argument("--cap", type=int, default=None)
    p_exp.add_argument("--csv", default=None, help="write trial records to this path")
    p_exp.add_argument("--workers", type=int, default=None,
                       help="trial parallelism (env HYPERLAB_WORKERS as fallback)")
    p_exp.add_argument("--spread-width", type=float, default=6.0)
    p_exp.add_argument("--hypertree-threshold", type=float, default=0.95)
    p_exp.add_argument("--no-footer", action="store_true")
    return parser


def _cmd_gen(args) -> int:
    if (args.p is None) == (args.epsilon is None):
        raise ValidationError("gen needs exactly one of --p or --epsilon")
    if args.p is not None:
        p = args.p
    else:
        j = args.j if args.j is not None else args.k - 1
        p = TheoryParams(args.n, args.k, j, args.epsilon).p
    h = sample(args.n, args.k, p, args.seed)
    with open(args.out, "w", encoding="ascii") as fh:
        fh.write(write_hypergraph(h))
    print(f"wrote {len(h.edges)} edges to {args.out}")
    return EXIT_OK


def _cmd_components(args) -> int:
    with open(args.infile, "r", encoding="ascii") as fh:
        h = read_hypergraph(fh.read())
    comps, jset_map = j_components(h, args.j)
    isolated = binomial(h.n, args.j) - len(jset_map)
    print("id size order hypertree")
    for c in comps:
        print(f"{c.id} {c.size} {c.order} {'yes' if c.is_hypertree else 'no'}")
    print(f"isolated_jsets {isolated}")
    if args.wheels:
        for c in comps:
            if c.wheel_witness is None:
                continue
            w = c.wheel_witness
            ks = "|".join(",".join(str(v) for v in e) for e in w.edges)
            js = "|".join(",".join(str(v) for v in s) for s in w.jsets)
            print(f"wheel {c.id} length={w.length} K={ks} J={js}")
    return EXIT_OK


def _cmd_enumerate(args) -> int:
    if args.s_max < 1:
        raise ValidationError(f"--s-max must be >= 1, got {args.s_max}")
    # epsilon does not enter any printed column; any valid value carries (n, k, j)
    params = TheoryParams(args.n, args.k, args.j, 0.5)
    bracket = exp_reciprocal_bounds(params.c0, args.s_max + 2)
    print("s\tF_s\tB_s\tlower\tupper\tbounds_hold")
    for s in range(1, args.s_max + 1):
        rep = enum_report(params, s, bracket)
        print(
            f"{rep.s}\t{_frac(rep.f_s)}\t{_frac(rep.b_s)}\t{_frac(rep.lower)}"
            f"\t{_frac(rep.upper)}\t{'true' if rep.bounds_hold else 'false'}"
        )
    return EXIT_OK


def _require(args, names: list[str]) -> None:
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise ValidationError(f"--which {args.which} needs {', '.join(missing)}")


def _cmd_bounds(args) -> int:
    if args.which == "wheel":
        _require(args, ["n", "k", "j", "ell"])
        cw, bound = wheel_bound(args.n, args.k, args.j, args.ell)
        print(f"c_w={_frac(cw)}")
        print(f"wheel_bound={bound:.10g}")
    elif args.which == "laplace":
        _require(args, ["a", "s"])
        chk = laplace_sum_check(args.a, args.s)
        print(f"lhs={chk.lhs:.10g}")
        print(f"rhs={chk.rhs:.10g}")
        print(f"holds={'true' if chk.holds else 'false'}")
    elif args.which in ("rs", "cs"):
        _require(args, ["n", "k", "j", "epsilon", "s"])
        params = TheoryParams(args.n, args.k, args.j, args.epsilon)
        if args.which == "rs":
            print(f"expected_Rs_upper={expected_Rs_upper(params, args.s):.10g}")
        else:
            print(f"expected_Cs_lower_reference={expected_Cs_lower_reference(params, args.s):.10g}")
    else:
        _require(args, ["n", "k", "j", "epsilon", "s"])
        params = TheoryParams(args.n, args.k, args.j, args.epsilon)
        logv = unicycle_bound(params, args.s, args.constant)
        print(f"log_unicycle_bound={logv:.10g}")
    return EXIT_OK


def _experiment_config(args) -> ExperimentConfig:
    values: dict[str, str] = {}
    if args.config:
        with open(args.config, "r", encoding="ascii") as fh:
            values = parse_config_file(fh.read())
    def pick(flag, key, cast):
        if flag is not None:
            return flag
        if key in values:
            try:
                return cast(values[key])
            except ValueError as exc:
                raise ValidationError(f"bad config value for {key}: {values[key]!r}") from exc
        return None
    fields = {
        "n": pick(args.n, "n", int),
        "k": pick(args.k, "k", int),
        "j": pick(args.j, "j", int),
        "epsilon": pick(args.epsilon, "epsilon", float),
        "trials": pick(args.trials, "trials", int),
    }
    missing = [name for name, v in fields.items() if v is None]
    if missing:
        raise ValidationError(f"experiment needs {', '.join('--' + m for m in missing)}")
    optional = {
        "m": pick(args.m, "m", int),
        "base_seed": pick(args.base_seed, "base_seed", int),
        "cap": pick(args.cap, "cap", int),
    }
    fields.update({key: v for key, v in optional.items() if v is not None})
    return ExperimentConfig(**fields)


def _workers(args) -> int:
    if args.workers is not None:
        return max(1, args.workers)
    env = os.environ.get("HYPERLAB_WORKERS")
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise ValidationError(f"HYPERLAB_WORKERS must be an integer, got {env!r}") from exc
    return 1


def _cmd_experiment(args) -> int:
    config = _experiment_config(args)
    records, summary = run_experiment(config, workers=_workers(args))
    if args.csv:
        with open(args.csv, "w", encoding="ascii", newline="") as fh:
            fh.write(csv_lines(records))
    sys.stdout.write(format_summary(summary, footer=not args.no_footer))
    if config.trials < 30:
        print("comparison skipped: needs >= 30 trials")
        return EXIT_OK
    verdict = compare_to_theory(
        summary,
        records,
        spread_width=args.spread_width,
        hypertree_threshold=args.hypertree_threshold,
    )
    for crit in verdict.criteria:
        print(f"criterion {crit.name}: {'PASS' if crit.passed else 'FAIL'} ({crit.detail})")
    return EXIT_OK if verdict.passed else EXIT_COMPARISON


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "gen":
            return _cmd_gen(args)
        if args.command == "components":
            return _cmd_components(args)
        if args.command == "enumerate":
            return _cmd_enumerate(args)
        if args.command == "bounds":
            return _cmd_bounds(args)
        return _cmd_experiment(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ResourceLimitError as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


def entry() -> None:
    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":
    entry()
