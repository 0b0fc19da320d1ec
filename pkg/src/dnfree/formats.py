"""JSON documents for distributions, cumulant sequences and results."""

from __future__ import annotations

import json

from .dalg import parse_rational
from .errors import ParseError, ValidationError
from .series import series_from_json, series_to_json
from .stardist import joint_from_json, joint_to_json
from .transforms import CumulantSequence, Distribution, cumulants_to_moments, model_cumulants

SCHEMA_VERSION = "1"

_MODEL_PARAMS = {"semicircular": "variance", "point_mass": "value", "free_poisson": "rate"}


def load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from exc


def dump_json(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _header(doc, where):
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object", where)
    for key in ("N", "order", "components"):
        if key not in doc:
            raise ParseError(f"missing key {key!r}", where)
    n, order, comps = doc["N"], doc["order"], doc["components"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError("N must be a positive integer", "N")
    if not isinstance(order, int) or isinstance(order, bool) or order < 1:
        raise ParseError("order must be a positive integer", "order")
    if not isinstance(comps, list):
        raise ParseError("components must be a list", "components")
    if len(comps) != n:
        raise ParseError(f"N is {n} but {len(comps)} components were given", "components")
    return n, order, comps


def _model_row(spec, order, where):
    if not isinstance(spec, dict) or len(spec) != 1:
        raise ParseError("model must be an object with exactly one named model", where)
    (name, params), = spec.items()
    if name not in _MODEL_PARAMS:
        raise ParseError(f"unknown model {name!r}; expected one of {sorted(_MODEL_PARAMS)}", where)
    key = _MODEL_PARAMS[name]
    if not isinstance(params, dict) or set(params) != {key}:
        raise ParseError(f"model {name} takes exactly the parameter {key!r}", f"{where}.{name}")
    value = parse_rational(params[key], f"{where}.{name}.{key}")
    return model_cumulants(name, {key: value}, order)


def _row(comp, kind, order, where):
    if not isinstance(comp, dict) or len(comp) != 1:
        raise ParseError(f"component must be {{{kind!r}: [...]}} or {{'model': {{...}}}}", where)
    (key, value), = comp.items()
    if key == "model":
        return "model", _model_row(value, order, f"{where}.model")
    if key != kind:
        raise ParseError(f"unexpected key {key!r}; expected {kind!r} or 'model'", where)
    if not isinstance(value, list):
        raise ParseError(f"{kind} must be a list", f"{where}.{kind}")
    if len(value) != order:
        raise ParseError(f"expected {order} entries (degrees 1..{order}), got {len(value)}", f"{where}.{kind}")
    return kind, [parse_rational(v, f"{where}.{kind}[{i}]") for i, v in enumerate(value)]


def distribution_from_json(doc) -> Distribution:
    """Components are explicit ``moments`` or a named ``model``; models are
    expanded through their cumulants."""
    n, order, comps = _header(doc, None)
    rows = []
    for i, comp in enumerate(comps):
        kind, row = _row(comp, "moments", order, f"components[{i}]")
        if kind == "model":
            row = cumulants_to_moments(CumulantSequence.from_components([row])).as_rows()[0]
        rows.append(row)
    return Distribution.from_components(rows)


def cumulants_from_json(doc) -> CumulantSequence:
    n, order, comps = _header(doc, None)
    rows = [_row(comp, "cumulants", order, f"components[{i}]")[1] for i, comp in enumerate(comps)]
    return CumulantSequence.from_components(rows)


def distribution_to_json(d: Distribution) -> dict:
    return {
        "N": d.N,
        "order": d.order,
        "components": [{"moments": [str(v) for v in row]} for row in d.as_rows()],
    }


def cumulants_to_json(k: CumulantSequence) -> dict:
    return {
        "N": k.N,
        "order": k.order,
        "components": [{"cumulants": [str(v) for v in row]} for row in k.as_rows()],
    }


def parse_distribution(text: str):
    """Parse a Distribution document, or a JointDistribution when it carries ``vars``."""
    doc = load_json(text)
    if isinstance(doc, dict) and "vars" in doc:
        return joint_from_json(doc)
    return distribution_from_json(doc)


def parse_cumulants(text: str) -> CumulantSequence:
    return cumulants_from_json(load_json(text))


def result_document(command: dict, payload: dict, provenance: dict | None = None) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "payload": payload,
        "provenance": provenance or {},
    }


def parse_result(text: str) -> dict:
    """Re-parse a result document, decoding any distribution/series/joint payload entries."""
    doc = load_json(text)
    if not isinstance(doc, dict) or doc.get("schema_version") != SCHEMA_VERSION:
        raise ValidationError("not a result document of this schema version")
    out = {}
    for key, value in doc["payload"].items():
        if key == "distribution":
            out[key] = distribution_from_json(value)
        elif key == "cumulants":
            out[key] = cumulants_from_json(value)
        elif key in ("r_transform", "s_transform", "moment_series"):
            out[key] = series_from_json(value, key)
        elif key == "joint":
            out[key] = joint_from_json(value)
        else:
            out[key] = value
    return out


__all__ = [
    "SCHEMA_VERSION",
    "load_json",
    "dump_json",
    "distribution_from_json",
    "distribution_to_json",
    "cumulants_from_json",
    "cumulants_to_json",
    "parse_distribution",
    "parse_cumulants",
    "series_to_json",
    "series_from_json",
    "joint_to_json",
    "joint_from_json",
    "result_document",
    "parse_result",
]
