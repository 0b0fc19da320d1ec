"""Payload builders behind each CLI verb.

Each function takes parsed values and returns ``(payload, provenance)`` as
plain JSON-ready dicts, so the CLI, the self-check suite and the tests all
emit exactly the same documents.
"""

from __future__ import annotations

from .errors import DomainError, TruncationError
from .formats import cumulants_to_json, distribution_to_json
from .ncpart import enumerate_noncrossing, kreweras_complement, mobius_full
from .series import series_to_json
from .stardist import (
    JointDistribution,
    classify_even,
    classify_r_diagonal,
    classify_semicircular,
    divide_free,
    check_freeness,
    word_text,
)
from .transforms import (
    Distribution,
    METHODS,
    cumulants_to_moments,
    free_add_convolve,
    free_mult_convolve,
    free_mult_convolve_all,
    moment_series,
    moments_to_cumulants,
    r_transform,
    s_transform,
)


def nc_payload(n: int, table: bool = False):
    parts = enumerate_noncrossing(n)
    payload = {"n": n, "count": len(parts)}
    if table:
        payload["rows"] = [
            {"partition": str(p), "kreweras": str(kreweras_complement(p)), "mobius": str(mobius_full(p))}
            for p in parts
        ]
    else:
        payload["partitions"] = [str(p) for p in parts]
    return payload, {"mobius": "Kreweras-block Catalan product"}


def transform_payload(value, direction: str):
    if direction == "m2k":
        k = moments_to_cumulants(value)
        return (
            {"cumulants": cumulants_to_json(k), "r_transform": series_to_json(r_transform(value))},
            {"route": "Möbius inversion over NC(n)"},
        )
    if direction == "k2m":
        d = cumulants_to_moments(value)
        return (
            {"distribution": distribution_to_json(d), "moment_series": series_to_json(moment_series(d))},
            {"route": "sum over NC(n) of cumulant block products"},
        )
    raise ValueError(f"unknown direction {direction!r}")


def _fit(d: Distribution, order: int | None) -> Distribution:
    if order is None:
        return d
    if order > d.order:
        raise TruncationError(f"requested order {order} exceeds input order {d.order}")
    return d.truncate(order)


def convolve_payload(x: Distribution, y: Distribution, op: str, method: str = "all", order: int | None = None):
    if order is None:
        order = min(x.order, y.order)
    x, y = _fit(x, order), _fit(y, order)
    if op == "add":
        return {"distribution": distribution_to_json(free_add_convolve(x, y))}, {"route": "cumulant addition"}
    if op != "mult":
        raise ValueError(f"unknown op {op!r}")
    if method == "all":
        res = free_mult_convolve_all(x, y)
        payload = {
            "distribution": distribution_to_json(res.distribution),
            "agreement": res.agreement,
            "routes": sorted(res.routes),
        }
        return payload, {"method": "all", "skipped": dict(res.skipped)}
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    return {"distribution": distribution_to_json(free_mult_convolve(x, y, method))}, {"method": method}


def stransform_payload(x: Distribution, order: int | None = None):
    x = _fit(x, order)
    s = s_transform(x)
    return {"s_transform": series_to_json(s)}, {"route": "compositional inverse of R divided by z"}


def classify_payload(value, kind: str, order: int | None = None):
    if kind == "semicircular":
        res = classify_semicircular(value, order)
    elif kind == "even":
        res = classify_even(value, order)
    elif kind == "r-diagonal":
        if not isinstance(value, JointDistribution):
            raise DomainError("r-diagonal classification needs a joint star table")
        res = classify_r_diagonal(value, order)
    elif kind == "free":
        if not isinstance(value, JointDistribution):
            raise DomainError("freeness check needs a joint table")
        report = check_freeness(value, (0, 1), order)
        payload = {"kind": "free", "holds": report.free}
        if not report.free:
            payload["witness"] = word_text(report.witness, value.vars)
            payload["cumulant"] = report.cumulant.to_json()
        return payload, {"route": "mixed cumulants over NC(n)"}
    else:
        raise ValueError(f"unknown kind {kind!r}")
    payload = {
        "kind": res.kind,
        "holds": res.holds,
        "degenerate": res.degenerate,
        "components": list(res.components),
        "notes": list(res.notes),
    }
    return payload, {"convention": "all-zero components are exempt"}


def divide_payload(d: Distribution, n: int):
    return {"distribution": distribution_to_json(divide_free(d, n))}, {"route": "cumulants divided by n"}


__all__ = [
    "nc_payload",
    "transform_payload",
    "convolve_payload",
    "stransform_payload",
    "classify_payload",
    "divide_payload",
]
