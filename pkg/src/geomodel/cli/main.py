"""Command-line front end.

Exit status: 0 success/true, 2 input error, 3 refuted or not Galois,
4 inconclusive or budget exhausted, 5 internal invariant failure.
"""

import argparse
import json
import sys

from .. import __version__
from .. import limits as _limits
from ..errors import GeomodelError, InputError, NotGalois
from ..pipeline import Pipeline
from .report import Report, render_json, render_text

EXIT_OK, EXIT_INPUT, EXIT_REFUTED, EXIT_INCONCLUSIVE, EXIT_INTERNAL = 0, 2, 3, 4, 5


def _verify_galois(rep):
    rep.add("field", "galois", "quasi_galois")
    v = rep.p.fixed_field
    if v.is_galois:
        return EXIT_OK
    print(f"geomodel: {NotGalois(v.fixed_dimension, v.degree)}", file=sys.stderr)
    return EXIT_REFUTED


def _build_model(rep):
    rep.add("field", "galois", "quasi_galois")
    rep.p.require_galois()
    rep.add("nice_basis", "cover_y", "model", "aut", "qgc")
    return EXIT_OK


def _report(rep):
    _build_model(rep)
    rep.add("probes")
    return EXIT_OK


def _check_qgc(rep):
    rep.add("field", "galois")
    rep.p.require_galois()
    rep.add("model", "qgc")
    return {"true": EXIT_OK, "refuted": EXIT_REFUTED}.get(rep.p.qgc.verdict, EXIT_INCONCLUSIVE)


def _aut_group(rep):
    rep.add("field", "galois")
    rep.p.require_galois()
    rep.add("model", "aut")
    aut = rep.p.aut
    if rep.p.iso.passed:
        return EXIT_OK
    return EXIT_INCONCLUSIVE if aut.undecided else EXIT_REFUTED


COMMANDS = {
    "verify-galois": (_verify_galois, "certify that L is Galois over K and print Gal(L/K)"),
    "build-model": (_build_model, "construct X over Y and check Aut(X/Y) and quasi-galois closedness"),
    "check-qgc": (_check_qgc, "decide quasi-galois closedness of the (built or given) X over Y"),
    "aut-group": (_aut_group, "compute Aut(X/Y) and compare it with Gal(L/K)"),
    "report": (_report, "build-model plus the invariant-subring and essential-equality probes"),
}


def _nonneg(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("expected a non-negative integer")
    return v


def build_parser():
    ap = argparse.ArgumentParser(prog="geomodel", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"geomodel {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("input", help="model description (JSON)")
        p.add_argument("--degree-bound", type=_nonneg, default=6,
                       help="degree bound for membership and symmetrization searches (default 6)")
        p.add_argument("--gb-budget", type=_nonneg, default=100_000,
                       help="maximum S-pair reductions per Groebner basis (default 100000)")
        p.add_argument("--factor-degree-cap", type=_nonneg, default=24,
                       help="largest degree factored over Q (default 24)")
        p.add_argument("--seed", type=int, default=0, help="seed for randomized steps (default 0)")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("-o", "--output", help="write the report here instead of stdout")
        p.add_argument("--timings", action="store_true",
                       help="include per-stage timings (makes output run-dependent)")
    return ap


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv=None):
    """Run the CLI and return the exit status."""
    args = build_parser().parse_args(argv)
    fn = COMMANDS[args.command][0]
    with _limits.limits(degree_bound=args.degree_bound, gb_budget=args.gb_budget,
                        factor_degree_cap=args.factor_degree_cap, seed=args.seed):
        try:
            pipeline = Pipeline.from_path(args.input)
        except GeomodelError as exc:
            print(f"geomodel: {exc}", file=sys.stderr)
            if args.format == "json":
                _emit(json.dumps({"command": args.command, "error": {
                    "type": type(exc).__name__, "message": str(exc), "exit_code": exc.exit_code,
                }}, indent=2, sort_keys=True) + "\n", args.output)
            return exc.exit_code
        rep = Report(args.command, pipeline, timings=args.timings)
        try:
            status = fn(rep)
        except GeomodelError as exc:
            rep.fail(exc)
            status = exc.exit_code
        except RecursionError as exc:
            rep.fail(InputError(f"input too deeply nested ({exc})"))
            status = EXIT_INPUT
        render = render_json if args.format == "json" else render_text
        _emit(render(rep), args.output)
        if rep.error:
            print(f"geomodel: {rep.error['message']}", file=sys.stderr)
    return status


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
