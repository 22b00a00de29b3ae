"""
pyperf benchmarks of the moment engine and its oracles.

    python benchmarks/bench_oracles.py -o oracles.json
    python benchmarks/bench_oracles.py --digits 50 --k 4 --fast
    python -m pyperf compare_to before.json after.json
"""

import os
import sys

import pyperf

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from fracmom.moments import Power, SymPower, identity_suite, moment  # noqa: E402
from fracmom.oracle import oracle_interval_series, oracle_polygamma  # noqa: E402
from fracmom.symbolic import eval_sym  # noqa: E402


def closed_form(family, k, digits):
    return eval_sym(moment(family, k).value, digits)


def interval_series(family, k, digits, intervals):
    return oracle_interval_series(family, k, digits, intervals)


def polygamma_kernel(family, k, digits):
    return oracle_polygamma(family, k, digits)


def add_cmdline_args(cmd, args):
    cmd.extend(("--digits", str(args.digits), "--k", str(args.k), "--m", str(args.m)))
    cmd.extend(("--intervals", str(args.intervals), "--m-max", str(args.m_max)))


if __name__ == "__main__":
    runner = pyperf.Runner(add_cmdline_args=add_cmdline_args)
    parser = runner.argparser
    parser.description = "Benchmark closed-form evaluation, both numerical oracles and the identity suites"
    parser.add_argument("--digits", type=int, default=30, help="Decimal digits (default: 30)")
    parser.add_argument("--k", type=int, default=3, help="Moment order (default: 3)")
    parser.add_argument("--m", type=int, default=3, help="Exponent of the power families (default: 3)")
    parser.add_argument("--intervals", type=int, default=2000, help="Interval-series J (default: 2000)")
    parser.add_argument("--m-max", type=int, default=40, help="Identity suite range (default: 40)")
    args = runner.parse_args()

    for family in (Power(args.m), SymPower(args.m)):
        label = f"{family.name}-m{args.m}-k{args.k}-p{args.digits}"
        runner.bench_func(f"closed-form-{label}", closed_form, family, args.k, args.digits)
        runner.bench_func(
            f"interval-series-{label}", interval_series, family, args.k, args.digits, args.intervals
        )
        runner.bench_func(f"polygamma-kernel-{label}", polygamma_kernel, family, args.k, args.digits)

    for which in ("factorial-ratio-sums", "sympower-binomial-sums", "sympower-p-sums"):
        runner.bench_func(f"identity-{which}-m{args.m_max}", identity_suite, which, args.m_max)
