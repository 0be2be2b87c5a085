"""
Command line front end

Examples
--------
    superfit ann 1 1 1 1
    superfit verify thm1a 0 2 2 0 --json
    superfit verify cauchy --tmax 4 --dims 2 2 2 2
    superfit resolve 2 0 3 0 --imax 3
    superfit z 1 1 2 0
    superfit sweep thm1a --d 0-1 --e 0-1 --m 0-2 --n 0-2 --out thm1a.jsonl
"""
import argparse
import itertools
import json
import logging
import os
import sys

from superfit.core.executor import (ExecutionMode, SweepExecutor, Task, TaskType,
                                    configure_logging)
from superfit.core.limits import ComputeLimits
from superfit.drivers import (CLAIMS, CONJECTURES, ann_summary, counts_as_failure, run_claim,
                              z_summary)
from superfit.errors import SuperFitError
from superfit.fitting import GenericSetup
from superfit.resolution import (ConjectureReading, compare, format_betti,
                                 predict_conjecture41, resolve_complex)
from superfit.schur import verify_cauchy

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _print_json(data):
    print(json.dumps(data, sort_keys=True, indent=2))


def _setup(args):
    if len(args.dims) != 4:
        raise ValueError("Expected the four dimensions d e m n, got %d values" % len(args.dims))
    return GenericSetup(*args.dims, characteristic=args.char)


def _label(setup):
    return "(d,e,m,n)=(%d,%d,%d,%d), char %d" % (setup.d, setup.e, setup.m, setup.n,
                                                 setup.characteristic)


def cmd_ann(args):
    setup = _setup(args)
    summary = ann_summary(setup, ComputeLimits.from_args(args))
    if args.json:
        _print_json({"instance": setup.instance(), "annihilator": summary})
        return EXIT_OK
    print("Ann(coker Phi) for %s: %d minimal generators" % (_label(setup), summary["count"]))
    for text, degree in sorted(zip(summary["generators"], summary["degrees"]),
                               key=lambda pair: pair[1]):
        print("  [%d] %s" % (degree, text))
    return EXIT_OK


def _cauchy_report(args, limits):
    if args.cauchy_dims:
        d, e, m, n = args.cauchy_dims
    elif args.dims:
        d, e, m, n = _setup(args).dims
    else:
        return verify_cauchy(limits.t_max)
    return verify_cauchy(limits.t_max, (m, n), (d, e))


def cmd_verify(args):
    limits = ComputeLimits.from_args(args)
    if args.claim == "cauchy":
        report = _cauchy_report(args, limits)
    else:
        report = run_claim(args.claim, _setup(args), limits, seed=args.seed,
                           reading=ConjectureReading(args.reading))
    if args.json:
        _print_json(report.to_dict())
    else:
        print("%s %s: %s" % (report.claim, report.instance, report.status.value))
        for witness in report.witnesses:
            print("  " + witness)
        for key, value in sorted(report.details.items()):
            if not isinstance(value, (dict, list)):
                print("  %s: %s" % (key, value))
    return EXIT_FAILED if counts_as_failure(report) else EXIT_OK


def cmd_resolve(args):
    setup = _setup(args)
    limits = ComputeLimits.from_args(args)
    j_max = limits.j_max_for(setup.d, setup.e)
    resolution = resolve_complex(setup.phi, limits.i_max, j_max, limits.max_pairs,
                                 setup.instance())
    actual = resolution.betti
    reading = ConjectureReading(args.reading)
    predicted = predict_conjecture41(setup.d, setup.e, setup.m, setup.n, limits.i_max, j_max,
                                     reading)
    report = compare(actual, predicted, setup.instance())
    if args.json:
        _print_json(report.to_dict())
        return EXIT_OK
    print("Betti table of coker Phi for %s:" % _label(setup))
    print(format_betti(actual))
    print("Predicted (%s reading):" % reading.value)
    print(format_betti(predicted))
    for i, verdict in sorted(report.details["degrees"].items(), key=lambda kv: int(kv[0])):
        print("  F_%s: %s%s" % (i, "match" if verdict["match"] else "mismatch",
                                "" if verdict["match"] or not verdict["total_match"]
                                else " (totals agree)"))
    return EXIT_OK


def cmd_z(args):
    setup = _setup(args)
    summary = z_summary(setup)
    if args.json:
        _print_json({"instance": setup.instance(), **summary})
    else:
        print("Z = %s  (degree %d)" % (summary["z"], summary["degree"]))
    return EXIT_OK


def parse_range(text):
    """``"2"``, ``"0-2"`` or ``"0,3"``; a descending range is empty."""
    values = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part:
            low, high = part.split("-", 1)
            values.extend(range(int(low), int(high) + 1))
        else:
            values.append(int(part))
    if any(v < 0 for v in values):
        raise ValueError("Dimension ranges can't contain negative values: '%s'" % text)
    return sorted(set(values))


def sweep_instances(args):
    grid = itertools.product(parse_range(args.d), parse_range(args.e),
                             parse_range(args.m), parse_range(args.n), args.chars)
    return [{"d": d, "e": e, "m": m, "n": n, "char": p} for d, e, m, n, p in grid
            if (args.max_de is None or d + e <= args.max_de)
            and (args.max_mn is None or m + n <= args.max_mn)]


def cmd_sweep(args):
    limits = ComputeLimits.from_args(args)
    if args.claim == "ann":
        task = Task(TaskType.ANN, limits)
    else:
        if args.claim not in CLAIMS:
            raise ValueError("Unknown claim '%s'" % args.claim)
        params = {"claim": args.claim, "seed": args.seed}
        if args.claim in CONJECTURES:
            params["reading"] = args.reading
        task = Task(TaskType.VERIFY, limits, **params)
    out = args.out or os.path.join(os.environ.get("SUPERFIT_LOG_DIR", "."),
                                   "superfit_%s.jsonl" % args.claim)
    executor = SweepExecutor()
    executor.add_task(task)
    mode = ExecutionMode.PILOT_JOB if args.pilot_job else ExecutionMode.SEQUENTIAL
    if mode == ExecutionMode.PILOT_JOB:
        executor.create_manager(dir=os.path.dirname(os.path.abspath(out)),
                                resources=args.resources, log_level=args.log_level or "info")
    try:
        records = executor.run(sweep_instances(args), out, mode)
    finally:
        if mode == ExecutionMode.PILOT_JOB:
            executor.terminate_manager()
    failed = 0
    for record in records:
        status = record.summary.get("status", "pass")
        print("%s %s: %s" % (record.command, record.instance, status))
        # ann and conj41 sweeps are exploratory: only errors fail them
        if status == "error" or (status != "pass" and args.claim not in ("ann",) + CONJECTURES):
            failed += 1
    print("%d new records in %s" % (len(records), out))
    return EXIT_FAILED if failed else EXIT_OK


def _add_instance(parser, required=True):
    parser.add_argument("dims", nargs=4 if required else "*", type=int, metavar="DIM",
                        help="d e m n")
    parser.add_argument("--char", type=int, default=0, help="0 or a prime (default: 0)")
    parser.add_argument("--json", action="store_true", help="print JSON instead of text")


def _add_limits(parser):
    parser.add_argument("--imax", dest="i_max", type=int, help="last homological degree")
    parser.add_argument("--jmax", dest="j_max", type=int, help="last internal degree")
    parser.add_argument("--tmax", dest="t_max", type=int, help="last Cauchy degree")
    parser.add_argument("--max-pairs", dest="max_pairs", type=int, help="S-pair budget")
    parser.add_argument("--sample-cap", dest="sample_cap", type=int,
                        help="products sampled per containment")


def _add_reading(parser):
    parser.add_argument("--reading", choices=[r.value for r in ConjectureReading],
                        default=ConjectureReading.CORRECTED.value,
                        help="index shapes of the predicted resolution")


def build_parser():
    parser = argparse.ArgumentParser(prog="superfit",
                                     description="Annihilators of generic super cokernels")
    parser.add_argument("--log-level", default=None,
                        help="logging level (default: $SUPERFIT_LOG_LEVEL or warning)")
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("ann", help="minimal generators of the annihilator")
    _add_instance(pa)
    pa.set_defaults(func=cmd_ann)

    pv = sub.add_parser("verify", help="check a statement on one instance")
    pv.add_argument("claim", choices=CLAIMS)
    _add_instance(pv, required=False)
    _add_limits(pv)
    _add_reading(pv)
    pv.add_argument("--dims", dest="cauchy_dims", nargs=4, type=int, metavar="DIM",
                    help="d e m n for the cauchy claim")
    pv.add_argument("--seed", type=int, default=0)
    pv.set_defaults(func=cmd_verify)

    pr = sub.add_parser("resolve", help="Betti table and its predicted counterpart")
    _add_instance(pr)
    _add_limits(pr)
    _add_reading(pr)
    pr.set_defaults(func=cmd_resolve)

    pz = sub.add_parser("z", help="the annihilating element Z")
    _add_instance(pz)
    pz.set_defaults(func=cmd_z)

    ps = sub.add_parser("sweep", help="run a claim over a grid, appending JSON records")
    ps.add_argument("claim", choices=("ann",) + CLAIMS)
    for name in ("d", "e", "m", "n"):
        ps.add_argument("--" + name, default="0-1", help="range such as 0-2 or 0,3")
    ps.add_argument("--char", dest="chars", type=int, nargs="+", default=[0])
    ps.add_argument("--max-de", dest="max_de", type=int, help="bound on d + e")
    ps.add_argument("--max-mn", dest="max_mn", type=int, help="bound on m + n")
    ps.add_argument("--out", help="record file (default: $SUPERFIT_LOG_DIR/superfit_CLAIM.jsonl)")
    ps.add_argument("--seed", type=int, default=0)
    ps.add_argument("--pilot-job", action="store_true", help="run instances as QCG PJ tasks")
    ps.add_argument("--resources", help="QCG PJ nodes, e.g. 4")
    _add_limits(ps)
    _add_reading(ps)
    ps.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level)
    try:
        return args.func(args)
    except (SuperFitError, ValueError, OSError) as err:
        print("superfit: error: %s" % err, file=sys.stderr)
        return EXIT_USAGE
