"""Command line entry point.

Subcommands: run (execute a scenario file and write report artifacts),
selftest (invariant corpus), list-builtins (catalog of builders,
observables, tasks, defaults). Exit codes: 0 success, 1 assertion or
verdict failure, 2 usage or parse error, 3 computation error.
"""

import argparse
import os
import sys

from . import cache
from .errors import ConfigurationError, ContractViolation
from .functors import BUILDER_NAMES
from .reports import write_artifacts
from .runner import ENGINE_VERSION, run_scenario_object
from .scenario import TASK_NAMES, bundled_scenario_path, bundled_scenarios, load_scenario
from .selftest import run_selftest
from .stability import OBSERVABLE_NAMES


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="functorlab",
        description="exact stability laboratory for coherent functors on module families",
    )
    parser.add_argument("--version", action="version", version="functorlab " + ENGINE_VERSION)
    sub = parser.add_subparsers(dest="command")

    run_p = sub.add_parser("run", help="execute a scenario file")
    run_p.add_argument("scenario", help="path to a scn/1 file, or a bundled scenario name")
    run_p.add_argument("--out", default=".", help="directory for report artifacts")
    run_p.add_argument("--char", type=int, default=None,
                       help="override the coefficient characteristic")
    run_p.add_argument("--jobs", type=int, default=1, help="concurrent grid points")
    run_p.add_argument("--no-cache", action="store_true", help="disable the computation cache")

    self_p = sub.add_parser("selftest", help="run the invariant corpus")
    self_p.add_argument("--inject-fault", action="store_true",
                        help="flip one length to demonstrate the tripwire")

    sub.add_parser("list-builtins", help="print builders, observables, tasks, defaults")
    return parser


def _cmd_run(args):
    if args.jobs < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return 2
    if args.no_cache:
        cache.configure(enabled=False)
    else:
        cache.configure(directory=os.environ.get("FUNCTORLAB_CACHE_DIR"), enabled=True)
    target = args.scenario
    if not os.path.exists(target):
        target = bundled_scenario_path(target)
    scn = load_scenario(target, char_override=args.char)
    code, report, meta = run_scenario_object(scn, jobs=args.jobs)
    written = write_artifacts(report, meta, args.out, scn.output_stem)
    for path in written:
        print("wrote %s" % path)
    for entry in report["tasks"]:
        line = "%-16s %s" % (entry["task"], entry["status"])
        failures = entry.get("failures") or ([entry["error"]] if "error" in entry else [])
        if failures:
            line += "  (%s)" % failures[0]
        print(line)
    print("status: %s (exit %d)" % (report["status"], code))
    return code


def _cmd_list_builtins():
    print("functor builders:")
    arity = {
        "hom": "(module)", "tensor": "(module)", "tor": "(module, i)",
        "ext": "(module, i)", "compose": "(expression...)",
    }
    for name in BUILDER_NAMES:
        print("  %-8s %s" % (name, arity[name]))
    print("observables:")
    notes = {
        "lambda": "exact length, inf allowed outside fit windows",
        "ass": "associated primes via the strategy ladder",
        "grade": "Ext-minimum; requires a named ideal J",
        "betti": "beta_i over i <= i_max",
        "bass": "mu^i over i <= i_max",
        "pd": "projective dimension (cap-aware)",
        "id": "injective dimension (cap-aware)",
    }
    for name in OBSERVABLE_NAMES:
        print("  %-8s %s" % (name, notes[name]))
    print("tasks:")
    for name in TASK_NAMES:
        print("  %s" % name)
    print("bundled scenarios:")
    for name in bundled_scenarios():
        print("  %s" % name)
    print("defaults: characteristic 32003, order grevlex, shell 1,")
    print("  degree cap max{dim F(M), spread - r} + 1, Artin-Rees mode certified")
    print("cache: FUNCTORLAB_CACHE_DIR selects the directory; --no-cache disables")
    return 0


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return 2
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "selftest":
            return run_selftest(inject_fault=args.inject_fault)
        if args.command == "list-builtins":
            return _cmd_list_builtins()
    except ConfigurationError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except ContractViolation as exc:
        print("computation error: %s" % exc, file=sys.stderr)
        return 3
    return 2


if __name__ == "__main__":
    sys.exit(main())
