"""Moments, free cumulants, R- and S-transforms and free convolutions over D_N.

Every D_N-valued variable here is described by its trivial moments
E(x^k), k = 1..M.  Because D_N is commutative and central, partition-dependent
moments factor as plain block products, so the whole calculus is the scalar
Nica-Speicher calculus run in every component at once.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .dalg import DiagonalScalar, d_prod, zip_scalars
from .errors import DimensionError, DomainError, NotInvertibleError, TruncationError, ValidationError
from .ncpart import block_type_counts, kreweras_complement, mobius_type_weights, nc_table
from .series import (
    TruncatedSeries,
    boxed_convolve,
    multiplicative_extension,
    s_comp_inverse,
)

METHODS = ("product-formula", "boxed", "s-transform")


class _Graded:
    """Shared plumbing for sequences indexed by degree 1..order."""

    __slots__ = ()
    _values_attr = ""

    def _values(self) -> tuple:
        return getattr(self, self._values_attr)

    def _validate(self):
        vals = tuple(self._values())
        if not vals:
            raise ValidationError("order must be at least 1")
        n = vals[0].n_components
        for v in vals:
            if not isinstance(v, DiagonalScalar) or v.n_components != n:
                raise DimensionError("all degrees must carry scalars of the same D_N")
        object.__setattr__(self, self._values_attr, vals)

    @property
    def order(self) -> int:
        return len(self._values())

    @property
    def n_components(self) -> int:
        return self._values()[0].n_components

    N = n_components

    def __getitem__(self, k: int) -> DiagonalScalar:
        if not 1 <= k <= self.order:
            raise TruncationError(f"degree {k} outside 1..{self.order}")
        return self._values()[k - 1]

    def truncate(self, order: int):
        if not 1 <= order <= self.order:
            raise TruncationError(f"cannot truncate order {self.order} to {order}")
        return type(self)(self._values()[:order])

    def component(self, i: int):
        return type(self)(tuple(v.component(i) for v in self._values()))

    def components(self) -> list:
        return [self.component(i) for i in range(self.n_components)]

    @classmethod
    def zip(cls, parts: Sequence):
        order = min(p.order for p in parts)
        return cls(tuple(zip_scalars([p[k] for p in parts]) for k in range(1, order + 1)))

    @classmethod
    def from_components(cls, rows: Sequence[Sequence]):
        """One row of rationals per component, degree 1 first."""
        order = min(len(r) for r in rows)
        if any(len(r) != order for r in rows):
            raise DimensionError("all components need the same number of degrees")
        return cls(tuple(DiagonalScalar(tuple(Fraction(r[k]) for r in rows)) for k in range(order)))

    def as_rows(self) -> list:
        return [[v[i] for v in self._values()] for i in range(self.n_components)]


@dataclass(frozen=True, slots=True)
class Distribution(_Graded):
    """Trivial moments m_k = E(x^k) for k = 1..order."""

    moments: tuple
    _values_attr = "moments"

    def __post_init__(self):
        self._validate()

    def mean(self) -> DiagonalScalar:
        return self.moments[0]


@dataclass(frozen=True, slots=True)
class CumulantSequence(_Graded):
    """Trivial free cumulants k_k for k = 1..order."""

    cumulants: tuple
    _values_attr = "cumulants"

    def __post_init__(self):
        self._validate()


def _same_shape(x: _Graded, y: _Graded) -> None:
    if x.N != y.N:
        raise DimensionError(f"D_N mismatch: {x.N} vs {y.N}")
    if x.order != y.order:
        raise DimensionError(f"order mismatch: {x.order} vs {y.order}; truncate first")


def _indexed(values: tuple) -> tuple:
    # degree-indexed view with a dummy slot at 0
    return (None,) + tuple(values)


# -- moments <-> cumulants -----------------------------------------------------


def moments_to_cumulants(d: Distribution) -> CumulantSequence:
    """k_n = Σ_{π∈NC(n)} m_π μ(π, 1_n)."""
    m = _indexed(d.moments)
    n_comp = d.N
    out = []
    for n in range(1, d.order + 1):
        acc = DiagonalScalar.zero(n_comp)
        for sizes, weight in mobius_type_weights(n).items():
            acc = acc + d_prod((m[s] for s in sizes), n_comp) * weight
        out.append(acc)
    return CumulantSequence(tuple(out))


def cumulants_to_moments(k: CumulantSequence) -> Distribution:
    """m_n = Σ_{π∈NC(n)} k_π."""
    c = _indexed(k.cumulants)
    n_comp = k.N
    out = []
    for n in range(1, k.order + 1):
        acc = DiagonalScalar.zero(n_comp)
        for sizes, count in block_type_counts(n).items():
            acc = acc + d_prod((c[s] for s in sizes), n_comp) * count
        out.append(acc)
    return Distribution(tuple(out))


def moment_series(d: Distribution) -> TruncatedSeries:
    """M_x(z) = Σ_{n>=1} E(x^n) z^n."""
    return TruncatedSeries(d.N, d.order, (DiagonalScalar.zero(d.N),) + d.moments)


def r_transform(d: Distribution) -> TruncatedSeries:
    """R_x(z) = Σ_{n>=1} k_n z^n."""
    k = moments_to_cumulants(d)
    return TruncatedSeries(d.N, d.order, (DiagonalScalar.zero(d.N),) + k.cumulants)


def cumulants_from_series(g: TruncatedSeries) -> CumulantSequence:
    if not g.in_theta():
        raise DomainError("an R-transform has zero constant term")
    return CumulantSequence(g.coeffs[1:])


def distribution_from_r(g: TruncatedSeries) -> Distribution:
    return cumulants_to_moments(cumulants_from_series(g))


# -- convolutions ------------------------------------------------------------


def free_add_convolve(x: Distribution, y: Distribution) -> Distribution:
    """Distribution of x + y for x, y free over D_N: cumulants add."""
    _same_shape(x, y)
    kx, ky = moments_to_cumulants(x), moments_to_cumulants(y)
    return cumulants_to_moments(CumulantSequence(tuple(a + b for a, b in zip(kx.cumulants, ky.cumulants))))


def product_cumulants(x: Distribution, y: Distribution) -> CumulantSequence:
    """k_n(xy) = Σ_{π∈NC(n)} k_π(x) k_{Kr(π)}(y), one partition at a time."""
    _same_shape(x, y)
    kx = _indexed(moments_to_cumulants(x).cumulants)
    ky = _indexed(moments_to_cumulants(y).cumulants)
    out = []
    for n in range(1, x.order + 1):
        acc = DiagonalScalar.zero(x.N)
        for p, _, _ in nc_table(n):
            acc = acc + multiplicative_extension(kx, p) * multiplicative_extension(ky, kreweras_complement(p))
        out.append(acc)
    return CumulantSequence(tuple(out))


def s_transform(x: Distribution) -> TruncatedSeries:
    """S_x(z) = R_x^{<-1>}(z) / z, defined when E(x) is invertible.

    The result has order ``x.order - 1`` and constant term E(x)^{-1}.
    """
    try:
        x.mean().inverse()
    except NotInvertibleError as exc:
        raise NotInvertibleError(exc.index, f"S-transform needs an invertible mean; component {exc.index} is zero") from exc
    return s_comp_inverse(r_transform(x)).div_z()


def s_transform_via_moments(x: Distribution) -> TruncatedSeries:
    """((1 + z)/z) M_x^{<-1>}(z), the moment-series form of the S-transform."""
    try:
        inv = s_comp_inverse(moment_series(x))
    except NotInvertibleError as exc:
        raise NotInvertibleError(exc.index, f"S-transform needs an invertible mean; component {exc.index} is zero") from exc
    one_plus_z = TruncatedSeries.from_map(x.N, inv.order, {0: DiagonalScalar.one(x.N), 1: DiagonalScalar.one(x.N)})
    return (one_plus_z * inv).div_z()


def r_from_s(s: TruncatedSeries) -> TruncatedSeries:
    """Recover R from S: R^{<-1>}(z) = z S(z), then invert."""
    return s_comp_inverse(s.mul_z())


def f_homomorphism(g: TruncatedSeries) -> TruncatedSeries:
    """F(g) = g^{<-1>}(z) / z, taking (Θ^inv, ⊞) into (D_N^inv[[z]], ·)."""
    return s_comp_inverse(g).div_z()


def free_mult_convolve(x: Distribution, y: Distribution, method: str = "product-formula") -> Distribution:
    """Distribution of xy for x, y free over D_N.

    ``method`` picks the route: ``"product-formula"`` sums k_π(x) k_Kr(π)(y)
    partition by partition, ``"boxed"`` takes R_x ⊞ R_y, ``"s-transform"``
    multiplies S-transforms and inverts back (needs invertible means).
    """
    _same_shape(x, y)
    if method == "product-formula":
        return cumulants_to_moments(product_cumulants(x, y))
    if method == "boxed":
        return distribution_from_r(boxed_convolve(r_transform(x), r_transform(y)))
    if method == "s-transform":
        sxy = s_transform(x) * s_transform(y)
        return distribution_from_r(r_from_s(sxy))
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


@dataclass(frozen=True)
class MultResult:
    distribution: Distribution
    routes: dict
    skipped: dict

    @property
    def agreement(self) -> bool:
        values = list(self.routes.values())
        return all(v == values[0] for v in values)


def free_mult_convolve_all(x: Distribution, y: Distribution) -> MultResult:
    """Run every applicable route; the S-transform route is skipped (and
    reported) when a mean has a zero component."""
    routes, skipped = {}, {}
    for method in METHODS:
        try:
            routes[method] = free_mult_convolve(x, y, method)
        except NotInvertibleError as exc:
            if method != "s-transform":
                raise
            skipped[method] = str(exc)
    return MultResult(routes["product-formula"], routes, skipped)


# -- named models --------------------------------------------------------------


def model_cumulants(name: str, params: dict, order: int) -> list:
    """Scalar cumulants k_1..k_order of a named one-component model."""
    if name == "semicircular":
        v = Fraction(params["variance"])
        return [Fraction(0), v] + [Fraction(0)] * (order - 2) if order >= 2 else [Fraction(0)]
    if name == "point_mass":
        c = Fraction(params["value"])
        return [c] + [Fraction(0)] * (order - 1)
    if name == "free_poisson":
        lam = Fraction(params["rate"])
        return [lam] * order
    raise ValidationError(f"unknown model {name!r}")


def semicircular(variance, order: int, n_components: int = 1) -> Distribution:
    return _model("semicircular", {"variance": variance}, order, n_components)


def point_mass(value, order: int, n_components: int = 1) -> Distribution:
    return _model("point_mass", {"value": value}, order, n_components)


def free_poisson(rate, order: int, n_components: int = 1) -> Distribution:
    return _model("free_poisson", {"rate": rate}, order, n_components)


def _model(name, params, order, n_components) -> Distribution:
    row = model_cumulants(name, params, order)
    return cumulants_to_moments(CumulantSequence.from_components([row] * n_components))
