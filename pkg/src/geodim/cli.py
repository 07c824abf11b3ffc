"""``geodim`` command line: wd table, graph generation, estimation, simulation."""

import argparse
import json
import sys

from .errors import ConfigurationError, DomainError, ParseError
from .estimators import METHODS, estimate_dimension
from .geograph import read_edge_list
from .harness import ExperimentConfig, RadiusRule, gen_graph, resolve_radius, run_experiment
from .pointcloud import TORUS, DensitySpec
from .wd import DEFAULT_CAP, wd_table

EXIT_CONFIG = 2
EXIT_PARSE = 3


def _cmd_wd(args):
    out = ["d,w_d"]
    out.extend(f"{d},{w:.12g}" for d, w in wd_table(args.max_d))
    sys.stdout.write("\n".join(out) + "\n")


def _cmd_gen(args):
    spec = DensitySpec.parse(args.density, args.d)
    if args.r is not None:
        rule = RadiusRule("explicit", args.r)
    elif args.nrd is not None:
        rule = RadiusRule("nrd", args.nrd)
    else:
        rule = RadiusRule("n32rd", args.n32rd)
    if args.n < 0:
        raise ConfigurationError(f"n must be nonnegative, got {args.n}")
    if args.n == 0:
        # no pairs to connect; any radius is acceptable
        r = min(rule.value, 0.5) if rule.kind == "explicit" else 0.5
    else:
        r = resolve_radius(rule, args.n, args.d, spec.metric == TORUS)
    g = gen_graph(spec, args.n, r, args.seed, args.out)
    print(f"n={g.n} edges={g.edge_count} max_degree={g.max_degree()} r={r!r}", file=sys.stderr)


def _cmd_estimate(args):
    with open(args.input) as fh:
        g = read_edge_list(fh)
    out = estimate_dimension(g, args.method, args.seed, args.cap)
    print(json.dumps(out.to_dict(), sort_keys=True))


def _cmd_simulate(args):
    try:
        with open(args.config) as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigurationError(f"cannot read config: {exc}") from None
    config = ExperimentConfig.from_json(text)
    result = run_experiment(config, workers=args.workers, timing=args.timing)
    with open(args.out, "w", newline="") as fh:
        fh.write(result.to_csv())
    if args.summary:
        with open(args.summary, "w", newline="") as fh:
            fh.write(result.summary_json())
    for row in result.summary:
        print(
            f"n={row['n']} {row['method']}: correct={row['fraction_correct']:.3f} "
            f"failed={row['fraction_failed']:.3f}",
            file=sys.stderr,
        )


def _seed(text):
    value = int(text, 0)
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError(f"seed must fit in 64 bits, got {text}")
    return value


def build_parser():
    parser = argparse.ArgumentParser(prog="geodim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("wd", help="print the table d, w_d")
    p.add_argument("--max-d", type=int, required=True)
    p.set_defaults(func=_cmd_wd)

    p = sub.add_parser("gen", help="sample a random geometric graph and write its edge list")
    p.add_argument("--density", required=True, help="torus | cube | gauss:sigma=<v> | beta:a=<v>,b=<v>")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    radius = p.add_mutually_exclusive_group(required=True)
    radius.add_argument("--r", type=float)
    radius.add_argument("--nrd", type=float, help="choose r with n r^d = value")
    radius.add_argument("--n32rd", type=float, help="choose r with n^(3/2) r^d = value")
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("estimate", help="estimate the dimension behind an edge list")
    p.add_argument("--input", required=True)
    p.add_argument("--method", choices=METHODS, required=True)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=_cmd_estimate)

    p = sub.add_parser("simulate", help="run a Monte Carlo experiment from a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--summary")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="fill the seconds column (output no longer reproducible)")
    p.set_defaults(func=_cmd_simulate)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except ParseError as exc:
        print(f"geodim: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ConfigurationError, DomainError) as exc:
        print(f"geodim: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"geodim: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return 0


if __name__ == "__main__":
    sys.exit(main())
