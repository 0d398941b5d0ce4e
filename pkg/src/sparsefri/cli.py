"""Command-line front end: ``validate``, ``eval`` and ``compare``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import DimensionMismatchError, DomainError, FisParseError, MethodError
from .export import write_conclusion_csv, write_svg
from .fisformat import read_fis, read_obs
from .fuzzy import validate_cnf
from .methods import Method, evaluate, observation_sets
from .validation import make_config

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_DIMENSION = 4
EXIT_METHOD = 5
EXIT_IO = 6


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _method_list(values):
    names = [part for v in values for part in v.split(",") if part.strip()]
    return [Method.parse(n) for n in names]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sparsefri", description="Fuzzy rule interpolation on sparse rule bases.")
    sub = parser.add_subparsers(dest="command", required=True)

    def io_args(p):
        p.add_argument("--fis", required=True, help="rule base file (.fis)")
        p.add_argument("--obs", required=True, help="observation file (.obs)")

    def config_args(p):
        p.add_argument("--alpha", default="breakpoints", help="breakpoints | userdefined:<n>")
        p.add_argument("--num-points", type=int, default=501, help="defuzzification samples")
        p.add_argument("--rp", default="corecentre", help="corecentre | centroid")
        p.add_argument("--w", type=float, default=2.0, help="Minkowski exponent")
        p.add_argument("--csv", help="write the conclusion as CSV")
        p.add_argument("--svg", help="write partitions, observation and conclusion as SVG")
        p.add_argument("--precision", type=int, default=6, help="decimals of printed crisp values")
        p.add_argument("-q", "--quiet", action="store_true", help="suppress diagnostics")

    p = sub.add_parser("validate", help="parse and cross-check a FIS/OBS pair")
    io_args(p)

    p = sub.add_parser("eval", help="interpolate one conclusion")
    io_args(p)
    p.add_argument("--method", default="KH", help="KH, KHstab, VKK, MACI, CRF, IMUL, GM or ScaleMove")
    config_args(p)

    p = sub.add_parser("compare", help="evaluate several methods side by side")
    io_args(p)
    p.add_argument("--method", nargs="+", default=["KH", "KHstab", "VKK", "ScaleMove"], help="methods, space or comma separated")
    config_args(p)
    return parser


def _read(reader, path):
    try:
        return reader(Path(path))
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_IO) from exc
    except FisParseError as exc:
        raise CliError("\n".join(f"{path}: {d}" for d in exc.diagnostics), EXIT_PARSE) from exc


def _load(args):
    fis = _read(read_fis, args.fis)
    obs = _read(read_obs, args.obs)
    if obs.num_inputs != fis.num_inputs:
        raise CliError(
            f"dimension mismatch: {args.obs} has {obs.num_inputs} inputs, {args.fis} expects {fis.num_inputs}",
            EXIT_DIMENSION,
        )
    return fis, obs


def _config(args, method, parser):
    try:
        return make_config(method, args.alpha, args.num_points, args.rp, args.w)
    except (DomainError, ValueError) as exc:
        parser.error(str(exc))


def _csv_path(base, fis, k, method=None):
    base = Path(base)
    parts = [base.stem]
    if method is not None:
        parts.append(str(method))
    if fis.num_outputs > 1:
        parts.append(fis.outputs[k].name)
    return base.with_name(".".join(parts) + (base.suffix or ".csv"))


def _emit_csv(args, fis, result, method=None):
    for k in range(fis.num_outputs):
        path = args.csv if method is None and fis.num_outputs == 1 else _csv_path(args.csv, fis, k, method)
        write_conclusion_csv(path, result.defuzzified_set(k), result.cuts[k], args.num_points)


def cmd_validate(args, out, err) -> int:
    fis, obs = _load(args)
    print(f"{args.fis}: ok ({fis.num_inputs} inputs, {fis.num_outputs} outputs, {fis.num_rules} rules)", file=out)
    print(f"{args.obs}: ok ({obs.num_inputs} inputs)", file=out)
    return EXIT_OK


def cmd_eval(args, out, err, parser) -> int:
    fis, obs = _load(args)
    cfg = _config(args, args.method, parser)
    try:
        result = evaluate(fis, obs, cfg)
    except DimensionMismatchError as exc:
        raise CliError(str(exc), EXIT_DIMENSION) from exc
    except MethodError as exc:
        raise CliError(str(exc), EXIT_METHOD) from exc
    for k, var in enumerate(fis.outputs):
        flag = "abnormal" if result.abnormal[k] else "normal"
        print(f"{var.name} {result.crisp[k]:.{args.precision}f} {flag}", file=out)
    if not args.quiet:
        for note in result.diagnostics:
            print(f"note: {note}", file=err)
    try:
        if args.csv:
            _emit_csv(args, fis, result)
        if args.svg:
            write_svg(args.svg, fis, observation_sets(obs), {str(cfg.method): result.fuzzy})
    except OSError as exc:
        raise CliError(f"cannot write {exc.filename}: {exc.strerror}", EXIT_IO) from exc
    return EXIT_OK


def cmd_compare(args, out, err, parser) -> int:
    try:
        methods = _method_list(args.method)
    except DomainError as exc:
        parser.error(str(exc))
    if not methods:
        parser.error("compare needs at least one method")
    fis, obs = _load(args)
    rows, drawn, failed = [], {}, False
    for method in methods:
        cfg = _config(args, method, parser)
        try:
            result = evaluate(fis, obs, cfg)
        except (MethodError, DimensionMismatchError) as exc:
            failed = True
            rows.append((str(method), ["-"] * fis.num_outputs, f"error: {exc}"))
            continue
        valid = all(validate_cnf(s).valid for s in result.fuzzy)
        rows.append((str(method), [f"{v:.{args.precision}f}" for v in result.crisp], "valid" if valid else "abnormal"))
        drawn[str(method)] = result.fuzzy
        if args.csv:
            try:
                _emit_csv(args, fis, result, method)
            except OSError as exc:
                raise CliError(f"cannot write {exc.filename}: {exc.strerror}", EXIT_IO) from exc

    header = ("method", [v.name for v in fis.outputs], "status")
    widths = [max(len(r[0]) for r in rows + [header])]
    for k in range(fis.num_outputs):
        widths.append(max(len(r[1][k]) for r in rows + [header]))
    for name, values, status in [header] + rows:
        cells = [name.ljust(widths[0])] + [v.rjust(widths[k + 1]) for k, v in enumerate(values)]
        print("  ".join(cells + [status]), file=out)
    if args.svg and drawn:
        try:
            write_svg(args.svg, fis, observation_sets(obs), drawn)
        except OSError as exc:
            raise CliError(f"cannot write {exc.filename}: {exc.strerror}", EXIT_IO) from exc
    return EXIT_METHOD if failed else EXIT_OK


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "validate":
            return cmd_validate(args, out, err)
        if args.command == "eval":
            return cmd_eval(args, out, err, parser)
        return cmd_compare(args, out, err, parser)
    except CliError as exc:
        print(f"error: {exc}", file=err)
        return exc.code
    except SystemExit as exc:
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
