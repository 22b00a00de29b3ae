"""
Command-line interface: python -m fracmom {compute,verify,table} ...

Records go to stdout (JSON lines or CSV), logs to stderr.
Exit codes: 0 ok, 1 verification failures, 2 bad arguments,
3 precision unachievable, 4 I/O error.
"""

import argparse
import csv
import json
import logging
import multiprocessing
import sys

import mpmath

from .config import Precision, default_precision
from .errors import FracMomError, PrecisionUnachievable
from .exactmath import Poly, as_rational
from .monitor import RunMonitor
from .moments import BernoulliPoly, Cosine, GenericPoly, Power, Sine, Source, SymPower, engine_moment, moment
from .oracle import INTERVAL_SERIES, POLYGAMMA_KERNEL, oracle_interval_series, oracle_polygamma
from .registry import load_registry
from .symbolic import eval_sym
from .verify import SUITES, GridOptions, build_cells, classify, run_cells

logger = logging.getLogger(__name__)

FAMILIES = ("sine", "cosine", "bernoulli", "power", "sympower", "poly")
CSV_COLUMNS = (
    "family", "m", "n", "coeffs", "k", "symbolic", "value", "precision", "method", "regime", "discrepancy", "error_bound",
)

EXIT_OK = 0
EXIT_FAILURES = 1
EXIT_USAGE = 2
EXIT_PRECISION = 3
EXIT_IO = 4


def index_range(text):
    """'A..B' (inclusive) or a single integer."""
    lo, sep, hi = text.partition("..")
    try:
        start = int(lo)
        stop = int(hi) if sep else start
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None
    if stop < start:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(start, stop + 1)


def rational_list(text):
    return [as_rational(part.strip()) for part in text.split(",") if part.strip()]


def make_families(name, indices=None, coeffs=None):
    if name == "sine":
        return [Sine()]
    if name == "cosine":
        return [Cosine()]
    if name == "poly":
        if coeffs is None:
            raise FracMomError("--family poly needs --coeffs")
        return [GenericPoly(Poly(coeffs))]
    if not indices:
        flag = "--n" if name == "bernoulli" else "--m"
        raise FracMomError(f"--family {name} needs {flag}")
    cls = {"bernoulli": BernoulliPoly, "power": Power, "sympower": SymPower}[name]
    return [cls(i) for i in indices]


def compute_record(family, k, precision, method="theorem", oracle=INTERVAL_SERIES):
    """One output record for I_k f."""
    P = Precision.of(precision)
    record = {"family": family.name}
    record.update(family.params())
    record["k"] = k
    if method == "engine":
        value = engine_moment(family, k)
        record.update(symbolic=value.to_text(), value=eval_sym(value, P).to_fixed(), regime="engine")
        record.update(precision=P.digits, method=Source.ENGINE.value, discrepancy=None)
        return record
    result = moment(family, k)
    record["symbolic"] = result.value.to_text()
    if method == "oracle":
        run = oracle_interval_series if oracle == INTERVAL_SERIES else oracle_polygamma
        found = run(family, k, P)
        record.update(value=found.value.to_fixed(), precision=P.digits, method="oracle", regime=result.regime)
        record.update(discrepancy=result.discrepancy, error_bound=mpmath.nstr(found.error_bound, 5))
        return record
    record.update(value=eval_sym(result.value, P).to_fixed(), precision=P.digits, method=result.source.value)
    record.update(regime=result.regime, discrepancy=result.discrepancy)
    return record


def _compute_job(job):
    return compute_record(*job)


def write_jsonl(records, out):
    for record in records:
        out.write(json.dumps(record) + "\n")


def write_csv(records, out):
    writer = csv.DictWriter(out, fieldnames=CSV_COLUMNS, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for record in records:
        writer.writerow(record)


def _precision(args):
    return Precision.of(args.precision if args.precision is not None else default_precision())


def cmd_compute(args):
    precision = _precision(args)
    indices = args.n if args.family == "bernoulli" else args.m
    families = make_families(args.family, indices, args.coeffs)
    records = [
        compute_record(family, k, precision, args.method, args.oracle) for family in families for k in args.k
    ]
    (write_csv if args.format == "csv" else write_jsonl)(records, sys.stdout)
    return EXIT_OK


def cmd_table(args):
    precision = _precision(args)
    indices = None if args.family in ("sine", "cosine", "poly") else list(args.m_range)
    families = make_families(args.family, indices, args.coeffs)
    jobs = [(family, k, precision.digits) for family in families for k in args.k_range]
    if args.workers > 1:
        with multiprocessing.Pool(args.workers) as pool:
            records = pool.map(_compute_job, jobs)
    else:
        records = [_compute_job(job) for job in jobs]

    def emit(out):
        if args.format == "csv":
            write_csv(records, out)
        else:
            json.dump(records, out, indent=2)
            out.write("\n")

    if args.out in (None, "-"):
        emit(sys.stdout)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            emit(fh)
        logger.info("wrote %d rows to %s", len(records), args.out)
    return EXIT_OK


def cmd_verify(args):
    precision = _precision(args)
    try:
        mpmath.mpf(args.tol)
    except ValueError:
        raise FracMomError(f"--tol {args.tol!r} is not a number") from None
    registry = load_registry(args.registry)
    opts = GridOptions(args.max_m, args.max_k, args.tol, precision.digits)
    cells = build_cells(args.suite, opts)
    logger.info("verify %s: %d cells on %d worker(s)", args.suite, len(cells), args.workers)
    with RunMonitor() as monitor:
        records = run_cells(cells, opts, args.workers)
    failed, unexplained = classify(records, registry)
    write_jsonl(records, sys.stdout)
    summary = {
        "summary": args.suite,
        "records": len(records),
        "failed": failed,
        "known": failed - unexplained,
        "unexplained": unexplained,
    }
    summary.update(monitor.summary())
    write_jsonl([summary], sys.stdout)
    return EXIT_FAILURES if unexplained else EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="fracmom",
        description="Exact and high-precision fractional moments I_k f = integral_0^1 x^k f({1/x}) dx.",
        epilog="""Examples:
  python -m fracmom compute --family power --m 1 --k 0 --precision 12
  python -m fracmom compute --family poly --coeffs 0,1,-1 --k 0 1 2 --format csv
  python -m fracmom verify --suite identities --max-m 40
  python -m fracmom table --family sympower --m-range 1..2 --k-range 0..4 --format json --out grid.json

CSV columns: """ + ",".join(CSV_COLUMNS) + """
The default precision comes from FRACMOM_PRECISION when it is set.""",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--verbose", action="store_true", help="Log at DEBUG level on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_family_flags(p):
        p.add_argument("--family", required=True, choices=FAMILIES)
        p.add_argument("--coeffs", type=rational_list, help="Polynomial coefficients, constant first (e.g. 0,1,-1)")
        p.add_argument("--precision", type=int, default=None, help="Decimal digits (default: FRACMOM_PRECISION or 30)")

    compute = sub.add_parser("compute", help="Closed form and value of I_k f")
    add_family_flags(compute)
    compute.add_argument("--k", type=int, nargs="+", required=True)
    compute.add_argument("--m", type=int, nargs="+", help="Exponent(s) m for power and sympower")
    compute.add_argument("--n", type=int, nargs="+", help="Degree(s) n for bernoulli")
    compute.add_argument("--method", choices=("theorem", "engine", "oracle"), default="theorem")
    compute.add_argument("--oracle", choices=(INTERVAL_SERIES, POLYGAMMA_KERNEL), default=INTERVAL_SERIES)
    compute.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    compute.set_defaults(handler=cmd_compute)

    verify = sub.add_parser("verify", help="Cross-check closed forms, sequences and identities")
    verify.add_argument("--suite", choices=("all",) + SUITES, default="all")
    verify.add_argument("--max-m", type=int, default=6)
    verify.add_argument("--max-k", type=int, default=12)
    verify.add_argument("--tol", default="1e-10")
    verify.add_argument("--precision", type=int, default=None)
    verify.add_argument("--workers", type=int, default=1)
    verify.add_argument("--registry", default=None, help="Known-discrepancy file (default: bundled registry)")
    verify.set_defaults(handler=cmd_verify)

    table = sub.add_parser("table", help="Write a (family, m, k) grid")
    add_family_flags(table)
    table.add_argument("--m-range", type=index_range, default=index_range("1"))
    table.add_argument("--k-range", type=index_range, required=True)
    table.add_argument("--format", choices=("csv", "json"), default="csv")
    table.add_argument("--out", default=None, help="Output path (default: stdout)")
    table.add_argument("--workers", type=int, default=1)
    table.set_defaults(handler=cmd_table)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.handler(args)
    except PrecisionUnachievable as exc:
        logger.error("%s", exc)
        return EXIT_PRECISION
    except FracMomError as exc:
        logger.error("%s", exc)
        return EXIT_USAGE
    except OSError as exc:
        logger.error("%s", exc)
        return EXIT_IO
