"""Oracle-backed invariant suite, run by ``dnfree selfcheck``.

Every check pits a computation against an independent route (brute force,
a second formula, or a roundtrip) at a fixed desk scale.  ``order`` caps the
truncation order of the distribution-level checks; the lattice checks run at
their own fixed sizes.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable

from . import commands
from .dalg import DiagonalScalar
from .errors import BoundError, NotInvertibleError
from .formats import (
    cumulants_from_json,
    cumulants_to_json,
    distribution_to_json,
    distribution_from_json,
    dump_json,
    load_json,
    series_from_json,
)
from .ncpart import (
    NoncrossingPartition,
    catalan,
    enumerate_noncrossing,
    kreweras_brute,
    kreweras_complement,
    leq,
    mobius_brute,
    mobius_full,
)
from .series import (
    TruncatedSeries,
    boxed_convolve,
    boxed_inverse,
    mob_series,
    s_comp_inverse,
    s_compose,
    zeta_series,
)
from .stardist import (
    check_freeness,
    classify_even,
    classify_r_diagonal,
    classify_semicircular,
    divide_free,
    free_pair_cumulant,
    free_power_sum,
    is_alternating,
    is_mixed,
    joint_from_cumulants,
    joint_from_free_pair,
    product_moments_via_joint,
    sum_moments_via_joint,
)
from .transforms import (
    CumulantSequence,
    Distribution,
    METHODS,
    cumulants_to_moments,
    f_homomorphism,
    free_add_convolve,
    free_mult_convolve,
    free_poisson,
    moment_series,
    moments_to_cumulants,
    point_mass,
    r_transform,
    s_transform,
    s_transform_via_moments,
    semicircular,
)

MIN_ORDER, MAX_ORDER = 3, 8


# -- random exact data --------------------------------------------------------------


def random_rational(rng: random.Random, nonzero: bool = False) -> Fraction:
    while True:
        q = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
        if q or not nonzero:
            return q


def random_scalar(rng, n, nonzero=False) -> DiagonalScalar:
    return DiagonalScalar(tuple(random_rational(rng, nonzero) for _ in range(n)))


def random_distribution(rng, n, order, invertible_mean=False) -> Distribution:
    moments = [random_scalar(rng, n, nonzero=invertible_mean)]
    moments += [random_scalar(rng, n) for _ in range(order - 1)]
    return Distribution(tuple(moments))


def random_series(rng, n, order, theta=False, invertible_linear=False) -> TruncatedSeries:
    coeffs = [DiagonalScalar.zero(n) if theta else random_scalar(rng, n)]
    for k in range(1, order + 1):
        coeffs.append(random_scalar(rng, n, nonzero=invertible_linear and k == 1))
    return TruncatedSeries(n, order, tuple(coeffs))


# -- registry ----------------------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str
    seconds: float


_CHECKS: list = []


def check(name: str):
    def register(fn: Callable):
        _CHECKS.append((name, fn))
        return fn

    return register


def check_names() -> list:
    return [name for name, _ in _CHECKS]


def _expect(cond, message):
    if not cond:
        raise AssertionError(message)


# -- ncpart ----------------------------------------------------------------------------


@check("ncpart.catalan_counts")
def _catalan_counts(order, rng):
    for n in range(1, 11):
        _expect(len(enumerate_noncrossing(n)) == catalan(n), f"|NC({n})| != C_{n}")
    return "n = 1..10"


@check("ncpart.kreweras")
def _kreweras(order, rng):
    for n in range(1, 9):
        for p in enumerate_noncrossing(n):
            k = kreweras_complement(p)
            _expect(len(p) + len(k) == n + 1, f"|p|+|Kr p| != n+1 at {p}")
            _expect(sorted(kreweras_complement(k).block_sizes()) == sorted(p.block_sizes()), f"Kr^2 type at {p}")
    for n in range(1, 7):
        for p in enumerate_noncrossing(n):
            _expect(kreweras_complement(p) == kreweras_brute(p), f"Kr({p}) disagrees with brute force")
    return "sizes n <= 8, brute-force maximal complement n <= 6"


@check("ncpart.mobius_closed_form")
def _mobius(order, rng):
    for n in range(1, 8):
        top = NoncrossingPartition.one(n)
        for p in enumerate_noncrossing(n):
            _expect(mobius_full(p) == mobius_brute(p, top), f"μ({p}, 1_{n})")
    return "n <= 7"


@check("ncpart.zeta_mobius_inversion")
def _zeta_mobius(order, rng):
    for n in range(1, 7):
        parts = enumerate_noncrossing(n)
        bottom = NoncrossingPartition.zero(n)
        for p in parts:
            total = sum(mobius_brute(s, p) for s in parts if leq(s, p))
            _expect(total == (1 if p == bottom else 0), f"Σ μ(σ,{p}) = {total}")
    return "n <= 6"


@check("ncpart.partial_order")
def _partial_order(order, rng):
    for n in range(1, 7):
        parts = enumerate_noncrossing(n)
        up = {p: {q for q in parts if leq(p, q)} for p in parts}
        for p in parts:
            _expect(p in up[p], f"not reflexive at {p}")
            for q in up[p]:
                _expect(q == p or p not in up[q], f"not antisymmetric at {p}, {q}")
                _expect(up[q] <= up[p], f"not transitive through {p} <= {q}")
    return "n <= 6"


# -- dalg ------------------------------------------------------------------------------


@check("dalg.ring_axioms")
def _ring(order, rng):
    for _ in range(1000):
        n = rng.randint(1, 8)
        a, b, c = (random_scalar(rng, n) for _ in range(3))
        one, zero = DiagonalScalar.one(n), DiagonalScalar.zero(n)
        _expect((a + b) + c == a + (b + c) and (a * b) * c == a * (b * c), "associativity")
        _expect(a + b == b + a and a * b == b * a, "commutativity")
        _expect(a * (b + c) == a * b + a * c, "distributivity")
        _expect(a + zero == a and a * one == a and a + (-a) == zero, "identities")
    return "1000 random triples, N <= 8"


@check("dalg.inverse")
def _inverse(order, rng):
    for _ in range(500):
        n = rng.randint(1, 8)
        a = random_scalar(rng, n)
        try:
            inv = a.inverse()
        except NotInvertibleError as exc:
            _expect(a[exc.index - 1] == 0 and not a.is_invertible(), "spurious non-invertibility")
            continue
        _expect(a.is_invertible(), "inverted a non-member of D_N^-1")
        _expect(a * inv == DiagonalScalar.one(n) and inv.inverse() == a, "inverse laws")
    return "500 random scalars"


# -- series ----------------------------------------------------------------------------


@check("series.ring_laws")
def _series_ring(order, rng):
    for _ in range(40):
        n, m = rng.randint(1, 4), rng.randint(1, min(order, 8))
        f, g, h = (random_series(rng, n, m) for _ in range(3))
        one = TruncatedSeries.constant(DiagonalScalar.one(n), m)
        _expect((f + g) + h == f + (g + h) and f + g == g + f, "additive laws")
        _expect((f * g) * h == f * (g * h) and f * g == g * f, "multiplicative laws")
        _expect(f * (g + h) == f * g + f * h and f * one == f, "distributivity / unit")
    return "40 random triples"


@check("series.composition")
def _composition(order, rng):
    for _ in range(25):
        n, m = rng.randint(1, 3), rng.randint(1, order)
        f = random_series(rng, n, m)
        g, h = random_series(rng, n, m, theta=True), random_series(rng, n, m, theta=True)
        _expect(s_compose(s_compose(f, g), h) == s_compose(f, s_compose(g, h)), "composition not associative")
        g = random_series(rng, n, m, theta=True, invertible_linear=True)
        inv = s_comp_inverse(g)
        ident = TruncatedSeries.identity(n, m)
        _expect(s_compose(g, inv) == ident and s_compose(inv, g) == ident, "compositional inverse")
    return "25 random cases"


@check("series.boxed_group")
def _boxed_group(order, rng):
    m = min(order, 5)
    for _ in range(15):
        n = rng.randint(1, 3)
        a, b, c = (random_series(rng, n, m, theta=True, invertible_linear=True) for _ in range(3))
        _expect(boxed_convolve(boxed_convolve(a, b), c) == boxed_convolve(a, boxed_convolve(b, c)), "associativity")
        ident = TruncatedSeries.identity(n, m)
        _expect(boxed_convolve(a, ident) == a and boxed_convolve(ident, a) == a, "identity")
        inv = boxed_inverse(a)
        _expect(boxed_convolve(a, inv) == ident and boxed_convolve(inv, a) == ident, "inverse")
    return f"15 random triples, M = {m}"


@check("series.zeta_mob")
def _zeta_mob(order, rng):
    for n in (1, 3):
        z, mb, ident = zeta_series(n, 6), mob_series(n, 6), TruncatedSeries.identity(n, 6)
        _expect(boxed_convolve(z, mb) == ident and boxed_convolve(mb, z) == ident, "Zeta ⊞ Mob != z")
    for k in range(1, 7):
        _expect(
            mob_series(1, 6)[k][0] == mobius_brute(NoncrossingPartition.zero(k), NoncrossingPartition.one(k)),
            f"Mob coefficient {k}",
        )
    return "M = 6"


# -- transforms ----------------------------------------------------------------------


@check("transforms.roundtrip")
def _roundtrip(order, rng):
    for _ in range(200):
        d = random_distribution(rng, rng.randint(1, 4), rng.randint(1, order))
        _expect(cumulants_to_moments(moments_to_cumulants(d)) == d, "moments -> cumulants -> moments")
    return "200 random distributions"


@check("transforms.series_inversion")
def _series_inversion(order, rng):
    m = min(order, 6)
    for _ in range(20):
        d = random_distribution(rng, rng.randint(1, 4), m)
        mx, rx = moment_series(d), r_transform(d)
        _expect(boxed_convolve(rx, zeta_series(d.N, m)) == mx, "M != R ⊞ Zeta")
        _expect(boxed_convolve(mx, mob_series(d.N, m)) == rx, "R != M ⊞ Mob")
    return f"20 random distributions, M = {m}"


@check("transforms.semicircular_catalan")
def _semicircular(order, rng):
    for var in (Fraction(1), Fraction(1, 2), Fraction(3)):
        k = CumulantSequence.from_components([[0, var] + [0] * 8] * 2)
        d = cumulants_to_moments(k)
        for n in range(1, 6):
            _expect(d[2 * n] == DiagonalScalar.constant(catalan(n) * var**n, 2), f"m_{2 * n}")
            _expect(d[2 * n - 1].is_zero(), f"m_{2 * n - 1}")
    return "n <= 5, variance in {1, 1/2, 3}"


@check("transforms.additivity_via_joint")
def _additivity(order, rng):
    m = min(order, 5)
    for _ in range(10):
        n = rng.randint(1, 3)
        x, y = random_distribution(rng, n, m), random_distribution(rng, n, m)
        s = free_add_convolve(x, y)
        kx, ky, ks = (moments_to_cumulants(v) for v in (x, y, s))
        _expect(all(ks[i] == kx[i] + ky[i] for i in range(1, m + 1)), "cumulants do not add")
        _expect(sum_moments_via_joint(joint_from_free_pair(x, y)) == s, "joint expansion of (x+y)^n")
    return f"10 random pairs, M = {m}"


@check("transforms.mult_triple_agreement")
def _triple(order, rng):
    m = min(order, 5)
    for _ in range(50):
        n = rng.randint(1, 3)
        x = random_distribution(rng, n, m, invertible_mean=True)
        y = random_distribution(rng, n, m, invertible_mean=True)
        results = [free_mult_convolve(x, y, meth) for meth in METHODS]
        _expect(results[0] == results[1] == results[2], "routes disagree")
    return f"50 random pairs, M = {m}"


@check("transforms.s_transform")
def _s_transform(order, rng):
    m = max(order, 6)
    for _ in range(20):
        x = random_distribution(rng, rng.randint(1, 3), order, invertible_mean=True)
        s = s_transform(x)
        _expect(s[0] == x.mean().inverse(), "constant term != 1/E(x)")
        for i in range(x.N):
            _expect(s_transform_via_moments(x.component(i)) == s.component(i), "moment-series form at N = 1")
    for c in (Fraction(2), Fraction(-1, 3)):
        s = s_transform(point_mass(c, m, 2))
        _expect(s == TruncatedSeries.constant(DiagonalScalar.constant(1 / c, 2), m - 1), "S(δ_c)")
    for lam in (Fraction(1), Fraction(2), Fraction(3, 2)):
        s = s_transform(free_poisson(lam, 6))
        expect = [(-1) ** k / lam ** (k + 1) for k in range(6)]
        _expect(s == TruncatedSeries.from_scalar_coeffs(expect), f"S(free Poisson {lam})")
    return "random invertible means, closed forms"


@check("transforms.f_homomorphism")
def _f_hom(order, rng):
    m = min(order, 5)
    for _ in range(30):
        n = rng.randint(1, 3)
        g1 = random_series(rng, n, m, theta=True, invertible_linear=True)
        g2 = random_series(rng, n, m, theta=True, invertible_linear=True)
        _expect(f_homomorphism(boxed_convolve(g1, g2)) == f_homomorphism(g1) * f_homomorphism(g2), "F not multiplicative")
    return f"30 random pairs, M = {m}"


# -- stardist --------------------------------------------------------------------------


@check("stardist.marginals")
def _marginals(order, rng):
    m = min(order, 6)
    for _ in range(5):
        n = rng.randint(1, 3)
        x, y = random_distribution(rng, n, m), random_distribution(rng, n, m)
        j = joint_from_free_pair(x, y)
        _expect(j.marginal(0) == x and j.marginal(1) == y, "marginals changed")
    return f"M = {m}"


@check("stardist.freeness")
def _freeness(order, rng):
    m = min(order, 5)
    for _ in range(20):
        n = rng.randint(1, 2)
        x, y = random_distribution(rng, n, m), random_distribution(rng, n, m)
        _expect(check_freeness(joint_from_free_pair(x, y)).free, "free pair rejected")
    x, y = random_distribution(rng, 1, m), random_distribution(rng, 1, m)
    base = free_pair_cumulant(moments_to_cumulants(x), moments_to_cumulants(y))
    words = [w for length in range(2, m + 1) for w in product([(0, False), (1, False)], repeat=length) if is_mixed(w)]
    for w0 in rng.sample(words, min(12, len(words))):
        delta = random_scalar(rng, 1, nonzero=True)
        table = joint_from_cumulants(1, m, ("x", "y"), False, lambda w, w0=w0, d=delta: d if w == w0 else base(w))
        report = check_freeness(table)
        _expect(not report.free and report.witness == w0 and report.cumulant == delta, f"perturbation at {w0} missed")
    return f"20 free pairs + {min(12, len(words))} single perturbations, M = {m}"


@check("stardist.product_via_joint")
def _product_joint(order, rng):
    m = min(order, 4)
    for _ in range(6):
        n = rng.randint(1, 2)
        x, y = random_distribution(rng, n, m), random_distribution(rng, n, m)
        _expect(product_moments_via_joint(x, y, m) == free_mult_convolve(x, y, "product-formula"), "E((xy)^n)")
    return f"M = {m}"


@check("stardist.divide")
def _divide(order, rng):
    for _ in range(20):
        d = random_distribution(rng, rng.randint(1, 3), rng.randint(1, order))
        for n in (1, 2, 3, 5):
            _expect(free_power_sum(divide_free(d, n), n) == d, f"recombination n = {n}")
    return "20 random d, n in {1,2,3,5}"


def _haar_table(n, order, scale):
    def cum(w):
        if not is_alternating(w):
            return None
        h = len(w) // 2
        return scale * ((-1) ** (h - 1) * catalan(h - 1))

    return joint_from_cumulants(n, order, ("u",), True, cum)


@check("stardist.classifiers_componentwise")
def _classifiers(order, rng):
    m = min(order, 6)
    pool = [
        semicircular(Fraction(2), m),
        free_poisson(1, m),
        point_mass(3, m),
        point_mass(0, m),
        Distribution.from_components([[0, 1, 0, 3, 0, 15, 0, 105][:m]]),
    ]
    for _ in range(25):
        comps = [rng.choice(pool) for _ in range(3)]
        d = Distribution.zip(comps)
        for fn in (classify_semicircular, classify_even):
            whole = fn(d, m)
            parts = [fn(c, m) for c in comps]
            active = [p for p in parts if not p.degenerate]
            _expect(whole.holds == (bool(active) and all(p.holds for p in active)), f"{fn.__name__} componentwise")
            _expect(whole.degenerate == (not active), "degeneracy flag")
    scales = [DiagonalScalar.of(1, 0, 2), DiagonalScalar.of(1, 1, 1), DiagonalScalar.of(0, 0, 0)]
    expected = [True, True, False]
    for sc, want in zip(scales, expected):
        _expect(classify_r_diagonal(_haar_table(3, m, sc)).holds == want, f"r-diagonal {sc}")
    return f"25 random 3-tuples, M = {m}"


# -- cli / componentwise --------------------------------------------------------------------


def _zip_doc(docs):
    first = docs[0]
    return {
        "N": sum(d["N"] for d in docs),
        "order": first["order"],
        "components": [c for d in docs for c in d["components"]],
    }


def _zip_series_doc(docs):
    degrees = sorted({int(k) for d in docs for k in d["coeffs"]})
    coeffs = {}
    for k in degrees:
        entry = []
        for d in docs:
            entry += d["coeffs"].get(str(k), ["0"] * d["N"])
        coeffs[str(k)] = entry
    return {"N": sum(d["N"] for d in docs), "order": docs[0]["order"], "coeffs": coeffs}


def zip_payloads(payloads: list) -> dict:
    """Combine the payloads of N=1 runs into the payload the N-component run
    must produce."""
    out = {}
    for key, value in payloads[0].items():
        values = [p[key] for p in payloads]
        if key in ("distribution", "cumulants"):
            out[key] = _zip_doc(values)
        elif key in ("r_transform", "s_transform", "moment_series"):
            out[key] = _zip_series_doc(values)
        elif key == "components":
            out[key] = [c for v in values for c in v]
        elif key == "agreement":
            out[key] = all(values)
        else:
            out[key] = value
    if "components" in out and "holds" in out:
        active = [c for c in out["components"] if c != "exempt"]
        out["holds"] = bool(active) and all(c == "pass" for c in active)
        out["degenerate"] = not active
    return out


def _pipelines(rng, order):
    m = min(order, 5)
    x = random_distribution(rng, 3, m, invertible_mean=True)
    y = random_distribution(rng, 3, m, invertible_mean=True)
    k = CumulantSequence(tuple(random_scalar(rng, 3) for _ in range(m)))
    sc = Distribution.zip([semicircular(1, m), point_mass(0, m), free_poisson(2, m)])
    haar = _haar_table(3, min(m, 4), DiagonalScalar.of(1, 0, 1))
    return [
        ("transform m2k", lambda v: commands.transform_payload(v[0], "m2k"), (x,)),
        ("transform k2m", lambda v: commands.transform_payload(v[0], "k2m"), (k,)),
        ("convolve add", lambda v: commands.convolve_payload(v[0], v[1], "add"), (x, y)),
        ("convolve mult all", lambda v: commands.convolve_payload(v[0], v[1], "mult", "all"), (x, y)),
        ("stransform", lambda v: commands.stransform_payload(v[0]), (x,)),
        ("classify semicircular", lambda v: commands.classify_payload(v[0], "semicircular"), (sc,)),
        ("classify even", lambda v: commands.classify_payload(v[0], "even"), (sc,)),
        ("classify r-diagonal", lambda v: commands.classify_payload(v[0], "r-diagonal"), (haar,)),
        ("divide 3", lambda v: commands.divide_payload(v[0], 3), (x,)),
    ]


@check("cli.componentwise_decomposition")
def _componentwise(order, rng):
    count = 0
    for name, run, inputs in _pipelines(rng, order):
        whole = dump_json(run(inputs)[0])
        parts = [run(tuple(v.component(i) for v in inputs))[0] for i in range(3)]
        zipped = dump_json(zip_payloads([load_json(dump_json(p)) for p in parts]))
        _expect(whole == zipped, f"{name}: N=3 output differs from zipped N=1 outputs")
        count += 1
    return f"{count} pipelines, byte-exact"


@check("cli.json_closure_and_determinism")
def _closure(order, rng):
    for name, run, inputs in _pipelines(rng, order):
        first = dump_json(run(inputs)[0])
        _expect(first == dump_json(run(inputs)[0]), f"{name}: nondeterministic output")
        doc = load_json(first)
        for key, value in doc.items():
            if key == "distribution":
                _expect(dump_json(distribution_to_json(distribution_from_json(value))) == dump_json(value), key)
            elif key == "cumulants":
                _expect(dump_json(cumulants_to_json(cumulants_from_json(value))) == dump_json(value), key)
            elif key in ("r_transform", "s_transform", "moment_series"):
                _expect(series_from_json(value).to_json() == value, key)
    return "all pipeline payloads re-parse identically"


# -- runner ----------------------------------------------------------------------------


def run_selfcheck(order: int = 5, seed: int = 0, only: list | None = None) -> list:
    if not MIN_ORDER <= order <= MAX_ORDER:
        raise BoundError(f"selfcheck order must be in {MIN_ORDER}..{MAX_ORDER}, got {order}")
    results = []
    for name, fn in _CHECKS:
        if only is not None and name not in only:
            continue
        rng = random.Random(f"{seed}:{name}")
        t0 = time.perf_counter()
        try:
            detail = fn(order, rng)
            ok = True
        except AssertionError as exc:
            detail, ok = str(exc), False
        results.append(CheckResult(name, ok, detail, time.perf_counter() - t0))
    return results
