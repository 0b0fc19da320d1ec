"""Truncated formal series over D_N.

A :class:`TruncatedSeries` stores coefficients of degrees 0..order densely.
Binary operations truncate to the smaller order.  Coefficients commute with
the indeterminate, so composition and the boxed convolution are the usual
commutative constructions applied componentwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .dalg import DiagonalScalar, d_prod, zip_scalars
from .errors import DimensionError, DomainError, NotInvertibleError, ParseError, TruncationError
from .ncpart import NoncrossingPartition, kreweras_type_counts, mobius_full


@dataclass(frozen=True, slots=True)
class TruncatedSeries:
    n_components: int
    order: int
    coeffs: tuple

    def __post_init__(self):
        if self.order < 0:
            raise TruncationError("series order must be nonnegative")
        coeffs = tuple(self.coeffs)
        if len(coeffs) != self.order + 1:
            raise DimensionError(f"expected {self.order + 1} coefficients, got {len(coeffs)}")
        for c in coeffs:
            if not isinstance(c, DiagonalScalar) or c.n_components != self.n_components:
                raise DimensionError(f"coefficient {c!r} is not in D_{self.n_components}")
        object.__setattr__(self, "coeffs", coeffs)

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_map(cls, n: int, order: int, coeffs: Mapping[int, DiagonalScalar]) -> "TruncatedSeries":
        """Build from a sparse degree -> coefficient map (absent means zero)."""
        dense = [DiagonalScalar.zero(n)] * (order + 1)
        for k, c in coeffs.items():
            if not 0 <= k <= order:
                raise TruncationError(f"degree {k} outside 0..{order}")
            dense[k] = c
        return cls(n, order, tuple(dense))

    @classmethod
    def zero(cls, n: int, order: int) -> "TruncatedSeries":
        return cls.from_map(n, order, {})

    @classmethod
    def constant(cls, c: DiagonalScalar, order: int) -> "TruncatedSeries":
        return cls.from_map(c.n_components, order, {0: c})

    @classmethod
    def identity(cls, n: int, order: int) -> "TruncatedSeries":
        """The series 1_{D_N} z."""
        return cls.from_map(n, order, {1: DiagonalScalar.one(n)})

    @classmethod
    def from_scalar_coeffs(cls, values: Sequence, n: int = 1) -> "TruncatedSeries":
        """Series whose degree-k coefficient is values[k] * 1_{D_N}."""
        return cls(n, len(values) - 1, tuple(DiagonalScalar.constant(v, n) for v in values))

    # -- access ------------------------------------------------------------

    @property
    def N(self) -> int:
        return self.n_components

    def __getitem__(self, k: int) -> DiagonalScalar:
        if not 0 <= k <= self.order:
            raise TruncationError(f"degree {k} is beyond the truncation order {self.order}")
        return self.coeffs[k]

    def in_theta(self) -> bool:
        """Zero constant term."""
        return self.coeffs[0].is_zero()

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise TruncationError(f"cannot raise order {self.order} to {order}")
        return TruncatedSeries(self.n_components, order, self.coeffs[: order + 1])

    def component(self, i: int) -> "TruncatedSeries":
        return TruncatedSeries(1, self.order, tuple(c.component(i) for c in self.coeffs))

    def _check(self, other: "TruncatedSeries") -> int:
        if other.n_components != self.n_components:
            raise DimensionError(f"D_N mismatch: {self.n_components} vs {other.n_components}")
        return min(self.order, other.order)

    # -- ring operations -----------------------------------------------------

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        m = self._check(other)
        return TruncatedSeries(self.N, m, tuple(self.coeffs[k] + other.coeffs[k] for k in range(m + 1)))

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.N, self.order, tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, DiagonalScalar):
            return TruncatedSeries(self.N, self.order, tuple(c * other for c in self.coeffs))
        m = self._check(other)
        zero = DiagonalScalar.zero(self.N)
        out = []
        for k in range(m + 1):
            acc = zero
            for i in range(k + 1):
                acc = acc + self.coeffs[i] * other.coeffs[k - i]
            out.append(acc)
        return TruncatedSeries(self.N, m, tuple(out))

    def mul_z(self) -> "TruncatedSeries":
        """z * f, with the order raised by one."""
        return TruncatedSeries(self.N, self.order + 1, (DiagonalScalar.zero(self.N),) + self.coeffs)

    def div_z(self) -> "TruncatedSeries":
        """f / z for f with zero constant term; the order drops by one."""
        if not self.in_theta():
            raise DomainError("division by z needs a zero constant term")
        if self.order < 1:
            raise TruncationError("nothing left after dividing an order-0 series by z")
        return TruncatedSeries(self.N, self.order - 1, self.coeffs[1:])

    def reciprocal(self) -> "TruncatedSeries":
        """Multiplicative inverse in D_N^inv[[z]] (constant term invertible)."""
        inv0 = self.coeffs[0].inverse()
        out = [inv0]
        for k in range(1, self.order + 1):
            acc = DiagonalScalar.zero(self.N)
            for i in range(1, k + 1):
                acc = acc + self.coeffs[i] * out[k - i]
            out.append(-(acc * inv0))
        return TruncatedSeries(self.N, self.order, tuple(out))

    def to_json(self) -> dict:
        return series_to_json(self)

    def __repr__(self):
        terms = [f"{c!r}z^{k}" for k, c in enumerate(self.coeffs) if not c.is_zero()]
        return f"TruncatedSeries(N={self.N}, order={self.order}: " + (" + ".join(terms) or "0") + ")"


def s_add(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    return f + g


def s_mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    return f * g


def s_compose(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """f(g(z)) by Horner's rule; g must have zero constant term."""
    m = f._check(g)
    if not g.in_theta():
        raise DomainError("composition f∘g needs g with zero constant term")
    g = g.truncate(m)
    acc = TruncatedSeries.constant(f.coeffs[m], m)
    for k in range(m - 1, -1, -1):
        acc = acc * g + TruncatedSeries.constant(f.coeffs[k], m)
    return acc


def s_comp_inverse(g: TruncatedSeries) -> TruncatedSeries:
    """The series h with g(h(z)) = z = h(g(z)) up to g's order.

    Requires zero constant term and an invertible linear coefficient.  The
    degree-k coefficient of g∘h equals g_1 h_k plus terms in h_1..h_{k-1}, so
    each h_k is read off after composing with h_k = 0.
    """
    if not g.in_theta():
        raise DomainError("compositional inverse needs zero constant term")
    if g.order < 1:
        raise TruncationError("compositional inverse needs order >= 1")
    try:
        inv1 = g.coeffs[1].inverse()
    except NotInvertibleError as exc:
        raise NotInvertibleError(exc.index, f"linear coefficient not invertible at component {exc.index}") from exc
    n, m = g.N, g.order
    zero = DiagonalScalar.zero(n)
    h = [zero, inv1] + [zero] * (m - 1)
    for k in range(2, m + 1):
        # coefficient k of g(h) with h truncated at k-1
        partial = TruncatedSeries(n, k, tuple(h[: k + 1]))
        comp = s_compose(g.truncate(k), partial)
        h[k] = -(comp.coeffs[k] * inv1)
    return TruncatedSeries(n, m, tuple(h))


def multiplicative_extension(coeffs, p: NoncrossingPartition, n_components: int | None = None) -> DiagonalScalar:
    """a_p = Π over blocks V of p of a_{|V|}.

    ``coeffs`` is anything indexable by degree (a :class:`TruncatedSeries`, a
    dict, or a sequence with index = degree).
    """
    factors = []
    for size in p.block_sizes():
        try:
            factors.append(coeffs[size])
        except (KeyError, IndexError, TruncationError) as exc:
            raise TruncationError(f"coefficient of degree {size} is not available") from exc
    n = n_components if n_components is not None else factors[0].n_components
    return d_prod(factors, n)


def _type_product(coeffs: Sequence[DiagonalScalar], sizes: tuple, n: int) -> DiagonalScalar:
    return d_prod((coeffs[s] for s in sizes), n)


def boxed_convolve(g1: TruncatedSeries, g2: TruncatedSeries) -> TruncatedSeries:
    """Restricted boxed convolution: d_n = Σ_{π∈NC(n)} a_π b_{Kr(π)}."""
    m = g1._check(g2)
    if not g1.in_theta() or not g2.in_theta():
        raise DomainError("boxed convolution is defined on series with zero constant term")
    n = g1.N
    out = [DiagonalScalar.zero(n)]
    for deg in range(1, m + 1):
        acc = DiagonalScalar.zero(n)
        for (ta, tb), count in kreweras_type_counts(deg).items():
            acc = acc + _type_product(g1.coeffs, ta, n) * _type_product(g2.coeffs, tb, n) * count
        out.append(acc)
    return TruncatedSeries(n, m, tuple(out))


def boxed_inverse(g: TruncatedSeries) -> TruncatedSeries:
    """The ⊞-inverse h of g (g ⊞ h = 1_{D_N} z), by triangular solve.

    In degree k, h_k only enters through π = 0_k (Kr(π) = 1_k) with factor
    g_1^k, so g_1 must be invertible.
    """
    if not g.in_theta():
        raise DomainError("boxed inverse needs zero constant term")
    n, m = g.N, g.order
    inv1 = g.coeffs[1].inverse()
    zero = DiagonalScalar.zero(n)
    h = [zero, inv1] + [zero] * (m - 1)
    for k in range(2, m + 1):
        partial = TruncatedSeries(n, k, tuple(h[: k + 1]))
        rest = boxed_convolve(g.truncate(k), partial).coeffs[k]
        h[k] = -(rest * inv1**k)
    return TruncatedSeries(n, m, tuple(h))


def zeta_series(n: int, order: int) -> TruncatedSeries:
    """Σ_{k>=1} 1_{D_N} z^k."""
    one = DiagonalScalar.one(n)
    return TruncatedSeries(n, order, (DiagonalScalar.zero(n),) + (one,) * order)


def mob_series(n: int, order: int) -> TruncatedSeries:
    """Σ_{k>=1} μ(0_k, 1_k) 1_{D_N} z^k."""
    coeffs = [DiagonalScalar.zero(n)]
    for k in range(1, order + 1):
        coeffs.append(DiagonalScalar.constant(mobius_full(NoncrossingPartition.zero(k)), n))
    return TruncatedSeries(n, order, tuple(coeffs))


def zip_series(parts: Sequence[TruncatedSeries]) -> TruncatedSeries:
    order = min(p.order for p in parts)
    coeffs = tuple(zip_scalars([p.coeffs[k] for p in parts]) for k in range(order + 1))
    return TruncatedSeries(sum(p.N for p in parts), order, coeffs)


# -- JSON ------------------------------------------------------------------


def series_to_json(f: TruncatedSeries) -> dict:
    """``{"N": 2, "order": 6, "coeffs": {"1": ["1","1"], ...}}``; all-zero degrees are omitted."""
    return {
        "N": f.N,
        "order": f.order,
        "coeffs": {str(k): c.to_json() for k, c in enumerate(f.coeffs) if not c.is_zero()},
    }


def series_from_json(doc, field: str = "series") -> TruncatedSeries:
    if not isinstance(doc, dict):
        raise ParseError("series must be a JSON object", field)
    for key in ("N", "order", "coeffs"):
        if key not in doc:
            raise ParseError(f"missing key {key!r}", field)
    n, order, coeffs = doc["N"], doc["order"], doc["coeffs"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError("N must be a positive integer", f"{field}.N")
    if not isinstance(order, int) or isinstance(order, bool) or order < 0:
        raise ParseError("order must be a nonnegative integer", f"{field}.order")
    if not isinstance(coeffs, dict):
        raise ParseError("coeffs must be an object", f"{field}.coeffs")
    sparse = {}
    for key, value in coeffs.items():
        where = f"{field}.coeffs.{key}"
        if not key.isdigit() or (len(key) > 1 and key[0] == "0"):
            raise ParseError(f"degree key {key!r} is not a nonnegative integer", where)
        deg = int(key)
        if deg > order:
            raise ParseError(f"degree {deg} exceeds order {order}", where)
        c = DiagonalScalar.from_json(value, where)
        if c.N != n:
            raise ParseError(f"expected {n} components, got {c.N}", where)
        sparse[deg] = c
    return TruncatedSeries.from_map(n, order, sparse)


__all__ = [
    "TruncatedSeries",
    "s_add",
    "s_mul",
    "s_compose",
    "s_comp_inverse",
    "multiplicative_extension",
    "boxed_convolve",
    "boxed_inverse",
    "zeta_series",
    "mob_series",
    "zip_series",
    "series_to_json",
    "series_from_json",
]
