"""Command-line entry point.

Every verb prints one JSON result document on stdout.  Failures print an
``{"error": ...}`` document on stderr and exit with

    1  parse error (bad JSON, bad rational, unknown flag, unreadable file)
    2  domain error (non-invertible mean, dimension mismatch, ...)
    3  bound error (n or order out of range)
    4  self-check or route-agreement failure
"""

from __future__ import annotations

import argparse
import json
import sys

from . import commands
from .errors import BoundError, DimensionError, DomainError, ParseError, ValidationError
from .formats import dump_json, parse_cumulants, parse_distribution, result_document
from .transforms import Distribution

EXIT_OK, EXIT_PARSE, EXIT_DOMAIN, EXIT_BOUND, EXIT_CHECK = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dnfree", description="Exact free probability over the diagonal algebra D_N.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("nc", help="enumerate NC(n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--table", action="store_true", help="add Kreweras complement and μ(π, 1_n) per row")

    p = sub.add_parser("transform", help="moments <-> cumulants")
    p.add_argument("--in", dest="inputs", action="append", required=True)
    p.add_argument("--direction", choices=("m2k", "k2m"), required=True)

    p = sub.add_parser("convolve", help="free additive or multiplicative convolution")
    p.add_argument("--op", choices=("add", "mult"), required=True)
    p.add_argument("--method", choices=("product-formula", "boxed", "s-transform", "all"), default="all")
    p.add_argument("--in", dest="inputs", action="append", required=True)
    p.add_argument("--order", type=int)

    p = sub.add_parser("stransform", help="S-transform (order of the result is order - 1)")
    p.add_argument("--in", dest="inputs", action="append", required=True)
    p.add_argument("--order", type=int)

    p = sub.add_parser("classify", help="semicircular / even / r-diagonal / free")
    p.add_argument("--in", dest="inputs", action="append", required=True)
    p.add_argument("--kind", choices=("semicircular", "even", "r-diagonal", "free"), required=True)
    p.add_argument("--order", type=int)

    p = sub.add_parser("divide", help="split into n free identically distributed summands")
    p.add_argument("--in", dest="inputs", action="append", required=True)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("selfcheck", help="run the oracle invariant suite")
    p.add_argument("--order", type=int, default=5)
    return parser


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _inputs(args, count: int) -> list:
    if len(args.inputs) != count:
        raise ParseError(f"{args.verb} takes exactly {count} --in file(s), got {len(args.inputs)}")
    return [_read(path) for path in args.inputs]


def _distribution(text: str) -> Distribution:
    value = parse_distribution(text)
    if not isinstance(value, Distribution):
        raise ParseError("expected a distribution document, got a joint table")
    return value


def _echo(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if v is not None}


def run(args) -> tuple:
    """Execute a parsed command; returns (exit code, result document)."""
    verb = args.verb
    if verb == "nc":
        payload, prov = commands.nc_payload(args.n, args.table)
    elif verb == "transform":
        (text,) = _inputs(args, 1)
        value = _distribution(text) if args.direction == "m2k" else parse_cumulants(text)
        payload, prov = commands.transform_payload(value, args.direction)
    elif verb == "convolve":
        x, y = (_distribution(t) for t in _inputs(args, 2))
        payload, prov = commands.convolve_payload(x, y, args.op, args.method, args.order)
    elif verb == "stransform":
        (text,) = _inputs(args, 1)
        payload, prov = commands.stransform_payload(_distribution(text), args.order)
    elif verb == "classify":
        (text,) = _inputs(args, 1)
        payload, prov = commands.classify_payload(parse_distribution(text), args.kind, args.order)
    elif verb == "divide":
        (text,) = _inputs(args, 1)
        payload, prov = commands.divide_payload(_distribution(text), args.n)
    elif verb == "selfcheck":
        from .selfcheck import run_selfcheck

        results = run_selfcheck(args.order)
        for r in results:
            print(f"{'PASS' if r.ok else 'FAIL'} {r.name} ({r.seconds:.2f}s): {r.detail}", file=sys.stderr)
        failed = [r for r in results if not r.ok]
        payload = {
            "passed": len(results) - len(failed),
            "failed": len(failed),
            "checks": [{"name": r.name, "ok": r.ok, "detail": r.detail} for r in results],
        }
        prov = {"order": args.order}
        return (EXIT_CHECK if failed else EXIT_OK), result_document(_echo(args), payload, prov)
    else:  # pragma: no cover - argparse restricts verbs
        raise ParseError(f"unknown verb {verb!r}")
    code = EXIT_CHECK if payload.get("agreement") is False else EXIT_OK
    return code, result_document(_echo(args), payload, prov)


def _error_doc(kind: str, exc: Exception) -> dict:
    err = {"type": kind, "message": str(exc)}
    for attr in ("field", "line", "column", "index"):
        value = getattr(exc, attr, None)
        if value is not None:
            err[attr] = value
    return {"error": err}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        code, doc = run(args)
    except (ParseError, ValidationError) as exc:
        code, err = EXIT_PARSE, _error_doc("parse", exc)
    except (DomainError, DimensionError) as exc:
        code, err = EXIT_DOMAIN, _error_doc("domain", exc)
    except BoundError as exc:
        code, err = EXIT_BOUND, _error_doc("bound", exc)
    else:
        sys.stdout.write(dump_json(doc))
        return code
    sys.stderr.write(json.dumps(err, ensure_ascii=False) + "\n")
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
