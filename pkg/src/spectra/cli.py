"""Command-line front end.

Commands:
  compute {spectrum|polys|preintersection|moments} --from KIND FILE
  convert --path P FILE
  check {drg|bipartite|girth|gamma|monic} [--from KIND] FILE
  roundtrip --path P --tol T FILE

FILE may be '-' for stdin. Exit status: 0 success, 1 domain error (error
code on stderr), 2 usage error. SPECTRA_LOG={off,info,debug} controls
logging.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import transforms
from .drg import (
    check_bipartite_oddgirth,
    check_bipartite_omega,
    check_gamma_sufficient,
    check_girth_regular,
    check_monic_sufficient,
    check_spectral_excess,
)
from .errors import ParseError, SpectraError
from .graphs import GRAPH_FORMATS, Graph, parse_graph
from .orthopoly import PolySequence, polys_from_spectrum
from .preintersect import PreintersectionSet, preintersection_from_polys
from .spectral import Spectrum, spectrum_of_graph, walk_moments

logger = logging.getLogger(__name__)

INPUT_KINDS = ("graph", "spectrum", "polys", "preintersection")
COMPUTE_TARGETS = ("spectrum", "polys", "preintersection", "moments")


class UsageError(Exception):
    """Bad command usage that argparse cannot catch itself."""


def main(argv=None) -> int:
    _configure_logging()
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.each:
            return _run_each(args)
        result = _dispatch(args, _read_input(args.file))
        sys.stdout.write(_render(result, args) + "\n")
        if result.get("status") == "FAIL":
            print(f"RoundtripFailed: deviation {result['deviation']:.6e} "
                  f"exceeds {result['tol']:.6e}", file=sys.stderr)
            return 1
        return 0
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"usage error: cannot read input: {exc}", file=sys.stderr)
        return 2
    except SpectraError as exc:
        print(f"{exc.code}: {exc}", file=sys.stderr)
        return 1


def _configure_logging() -> None:
    level_name = os.environ.get("SPECTRA_LOG", "off").strip().lower()
    levels = {"off": logging.CRITICAL + 10, "info": logging.INFO, "debug": logging.DEBUG}
    logging.basicConfig(
        level=levels.get(level_name, logging.CRITICAL + 10),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spectra",
        description="Spectra, predistance polynomials, and preintersection "
                    "numbers of connected graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("file", help="input file, or '-' for stdin")
        p.add_argument("--format", choices=("json", "table"), default="json")
        p.add_argument("--rationalize", action="store_true",
                       help="add nearest small-denominator fractions to the output")
        p.add_argument("--graph-format", choices=GRAPH_FORMATS + ("auto",),
                       default="auto")
        p.add_argument("--cluster-tol", type=float, default=1e-8,
                       help="eigenvalue clustering tolerance")
        p.add_argument("--check-tol", type=float, default=1e-7,
                       help="tolerance for structural verdicts")
        p.add_argument("--each", action="store_true",
                       help="treat FILE as a directory and process every file in it")

    p = sub.add_parser("compute", help="compute one representation from another")
    p.add_argument("target", choices=COMPUTE_TARGETS)
    p.add_argument("--from", dest="source", choices=INPUT_KINDS, required=True)
    p.add_argument("--via", choices=("polys", "moments"), default="polys",
                   help="route for preintersection-from-spectrum")
    p.add_argument("--length", type=int, default=None,
                   help="number of walk moments (default 2d+1)")
    common(p)

    p = sub.add_parser("convert", help="apply a comma-separated conversion path")
    p.add_argument("--path", required=True,
                   help="e.g. 'sp→poly,poly→pre' (ASCII '->' accepted)")
    common(p)

    p = sub.add_parser("check", help="structural predicates and DRG criteria")
    p.add_argument("predicate", choices=("drg", "bipartite", "girth", "gamma", "monic"))
    p.add_argument("--from", dest="source", choices=INPUT_KINDS, default="graph")
    common(p)

    p = sub.add_parser("roundtrip", help="convert around a cycle and measure the deviation")
    p.add_argument("--path", required=True)
    p.add_argument("--tol", type=float, default=1e-6)
    common(p)
    return parser


def _read_input(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def _run_each(args) -> int:
    root = Path(args.file)
    if not root.is_dir():
        raise UsageError(f"--each expects a directory, got {args.file!r}")
    failed = False
    for entry in sorted(root.iterdir()):
        if not entry.is_file():
            continue
        record: dict = {"file": entry.name}
        try:
            single = argparse.Namespace(**{**vars(args), "file": str(entry), "each": False})
            record["result"] = _dispatch(single, entry.read_bytes())
        except SpectraError as exc:
            record["error"] = exc.code
            record["message"] = str(exc)
            failed = True
        sys.stdout.write(json.dumps(record) + "\n")
    return 1 if failed else 0


def _sniff_graph_format(data: bytes) -> str:
    lines = [ln.strip() for ln in data.decode("utf-8", "replace").splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty graph input")
    if all(set(ln) <= {"0", "1"} for ln in lines) and all(len(ln) == len(lines) for ln in lines):
        return "adjmatrix"
    if len(lines) == 1 and " " not in lines[0] and not set(lines[0]) <= {"0", "1"}:
        return "graph6"
    return "edgelist"


def _load_graph(data: bytes, args) -> Graph:
    fmt = args.graph_format
    if fmt == "auto":
        if args.file.endswith(".g6"):
            fmt = "graph6"
        else:
            fmt = _sniff_graph_format(data)
        logger.info("graph format detected: %s", fmt)
    return parse_graph(data, fmt)


def _load_json(data: bytes, kind: str):
    try:
        payload = json.loads(data)
        if kind == "spectrum":
            return Spectrum.from_dict(payload)
        if kind == "polys":
            return PolySequence.from_dict(payload)
        return PreintersectionSet.from_dict(payload)
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"not a valid {kind} file: {exc}") from exc


def _load_input(kind: str, data: bytes, args):
    if kind == "graph":
        return _load_graph(data, args)
    return _load_json(data, kind)


def _dispatch(args, data: bytes) -> dict:
    if args.command == "compute":
        return _cmd_compute(args, data)
    if args.command == "convert":
        return _cmd_convert(args, data)
    if args.command == "check":
        return _cmd_check(args, data)
    return _cmd_roundtrip(args, data)


def _as_spectrum(obj, args) -> Spectrum:
    if isinstance(obj, Graph):
        return spectrum_of_graph(obj, tol=args.cluster_tol)
    if isinstance(obj, Spectrum):
        return obj
    if isinstance(obj, PolySequence):
        return transforms.spectrum_from_polys(obj)
    return transforms.spectrum_from_preintersection(obj)


def _as_polys(obj, args) -> PolySequence:
    if isinstance(obj, PolySequence):
        return obj
    if isinstance(obj, PreintersectionSet):
        return transforms.polys_from_preintersection(obj)
    return polys_from_spectrum(_as_spectrum(obj, args))


def _as_preintersection(obj, args, via: str = "polys") -> PreintersectionSet:
    if isinstance(obj, PreintersectionSet):
        return obj
    if isinstance(obj, PolySequence):
        return preintersection_from_polys(obj)
    s = _as_spectrum(obj, args)
    if via == "moments":
        return transforms.preintersection_from_moments(
            transforms.walk_moments_for(s, s.d), s.d, lambda0=s.lambda0)
    return preintersection_from_polys(polys_from_spectrum(s))


def _cmd_compute(args, data: bytes) -> dict:
    obj = _load_input(args.source, data, args)
    if args.target == "spectrum":
        return _as_spectrum(obj, args).to_dict()
    if args.target == "polys":
        return _as_polys(obj, args).to_dict()
    if args.target == "preintersection":
        return _as_preintersection(obj, args, via=args.via).to_dict()
    # moments
    if isinstance(obj, Graph):
        length = args.length if args.length is not None else 2 * spectrum_of_graph(obj).d + 1
        return walk_moments(obj, length).to_dict()
    s = _as_spectrum(obj, args)
    length = args.length if args.length is not None else 2 * s.d + 1
    return walk_moments(s, length).to_dict()


def _conversion_source_kind(path_names: list[str]) -> str:
    first = transforms.normalize_conversion_name(path_names[0])
    return transforms.CONVERSIONS[first][0]


def _split_path(raw: str) -> list[str]:
    names = [piece for piece in (p.strip() for p in raw.split(",")) if piece]
    if not names:
        raise UsageError("--path must list at least one conversion")
    return names


def _cmd_convert(args, data: bytes) -> dict:
    names = _split_path(args.path)
    try:
        kind = _conversion_source_kind(names)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    obj = _load_json(data, kind)
    for name in names:
        try:
            obj = transforms.apply_conversion(name, obj)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    return obj.to_dict()


def _cmd_check(args, data: bytes) -> dict:
    if args.predicate == "drg":
        if args.source != "graph":
            raise UsageError("check drg requires graph input")
        g = _load_graph(data, args)
        return check_spectral_excess(g, tol=args.check_tol).to_dict()
    obj = _load_input(args.source, data, args)
    pre = _as_preintersection(obj, args)
    ps = _as_polys(obj, args)
    if args.predicate == "bipartite":
        bip, odd = check_bipartite_oddgirth(pre, tol=args.check_tol)
        bip2, odd2 = check_bipartite_omega(ps, tol=args.check_tol)
        return {
            "bipartite": bip, "odd_girth": odd,
            "bipartite_parity": bip2, "odd_girth_parity": odd2,
        }
    if args.predicate == "girth":
        girth = check_girth_regular(pre, tol=args.check_tol)
        out = {"girth": girth}
        if girth is None:
            out["note"] = f">= {2 * pre.d + 1} (indeterminate from the first {pre.d} coefficients)"
        return out
    bip, _ = check_bipartite_oddgirth(pre, tol=args.check_tol)
    if args.predicate == "gamma":
        return {"verdict": check_gamma_sufficient(pre, bip, tol=args.check_tol),
                "bipartite": bip}
    return {"verdict": check_monic_sufficient(ps, bip, tol=args.check_tol),
            "bipartite": bip}


def _cmd_roundtrip(args, data: bytes) -> dict:
    names = _split_path(args.path)
    try:
        kind = _conversion_source_kind(names)
        obj = _load_json(data, kind)
        report = transforms.roundtrip_check(obj, names, tol=args.tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    out = report.to_dict()
    out["status"] = "PASS" if report.passed else "FAIL"
    return out


# ---------------------------------------------------------------------------
# output rendering

def _rationalize(value: float) -> str:
    frac = Fraction(value).limit_denominator(10 ** 6)
    return f"{frac.numerator}/{frac.denominator}"


def _with_rationals(obj):
    if isinstance(obj, dict):
        out = {}
        for key, value in obj.items():
            out[key] = _with_rationals(value)
            if isinstance(value, float):
                out[f"{key}_rational"] = _rationalize(value)
            elif isinstance(value, list) and value and all(isinstance(x, float) for x in value):
                out[f"{key}_rational"] = [_rationalize(x) for x in value]
            elif (isinstance(value, list) and value
                  and all(isinstance(x, list) and all(isinstance(y, float) for y in x)
                          for x in value)):
                out[f"{key}_rational"] = [[_rationalize(y) for y in x] for x in value]
        return out
    return obj


def _fmt_scalar(value) -> str:
    if isinstance(value, float):
        return f"{value:.15g}"
    return str(value)


def _fmt_value(value) -> str:
    if isinstance(value, list):
        if value and isinstance(value[0], list):
            return "; ".join(" ".join(_fmt_scalar(y) for y in x) for x in value)
        if value and isinstance(value[0], dict):
            return "; ".join(_fmt_value(x) for x in value)
        return " ".join(_fmt_scalar(x) for x in value)
    if isinstance(value, dict):
        return ", ".join(f"{k}={_fmt_value(v)}" for k, v in value.items())
    return _fmt_scalar(value)


def _render(result: dict, args) -> str:
    if args.rationalize:
        result = _with_rationals(result)
    if args.format == "json":
        return json.dumps(result, indent=2)
    width = max(len(k) for k in result)
    lines = [f"{k.ljust(width)}  {_fmt_value(v)}" for k, v in result.items()]
    return "\n".join(lines)


if __name__ == "__main__":
    sys.exit(main())
