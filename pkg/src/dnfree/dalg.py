"""The diagonal algebra D_N: N-tuples of exact rationals with componentwise
addition and multiplication.

Exact rationals are :class:`fractions.Fraction`; they are always reduced with a
positive denominator, which is the invariant the rest of the package relies on.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DimensionError, NotInvertibleError, ParseError

RationalLike = Union[int, Fraction, str]

_RATIONAL_RE = re.compile(r"^(-?)(0|[1-9][0-9]*)(?:/([1-9][0-9]*))?$")


def parse_rational(text, field=None) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into a Fraction.

    The text must already be in lowest terms with a positive denominator;
    anything else (``"2/4"``, ``"1/0"``, ``"1/-2"``, ``"0.5"``) is rejected.
    Plain JSON integers are accepted as well, floats are not.
    """
    if isinstance(text, bool):
        raise ParseError("expected a rational string, got a boolean", field)
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParseError(f"expected a rational string, got {type(text).__name__}", field)
    m = _RATIONAL_RE.match(text.strip())
    if m is None:
        if re.match(r"^-?\d+/0+$", text.strip()):
            raise ParseError(f"zero denominator in {text!r}", field)
        raise ParseError(f"malformed rational {text!r}", field)
    sign, num, den = m.groups()
    value = Fraction(int(sign + num), int(den) if den else 1)
    if den is not None and (value.denominator != int(den) or value == 0):
        raise ParseError(f"rational {text!r} is not in lowest terms", field)
    if sign and num == "0":
        raise ParseError(f"negative zero {text!r}", field)
    return value


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


@dataclass(frozen=True, slots=True)
class DiagonalScalar:
    """An element (a_1, ..., a_N) of D_N."""

    entries: tuple

    def __post_init__(self):
        if not self.entries:
            raise DimensionError("a diagonal scalar needs at least one component")
        object.__setattr__(self, "entries", tuple(Fraction(e) for e in self.entries))

    @classmethod
    def of(cls, *values: RationalLike) -> "DiagonalScalar":
        return cls(tuple(Fraction(v) for v in values))

    @classmethod
    def constant(cls, value: RationalLike, n: int) -> "DiagonalScalar":
        """``value * 1_{D_N}``."""
        return cls((Fraction(value),) * n)

    @classmethod
    def one(cls, n: int) -> "DiagonalScalar":
        return cls.constant(1, n)

    @classmethod
    def zero(cls, n: int) -> "DiagonalScalar":
        return cls.constant(0, n)

    @property
    def n_components(self) -> int:
        return len(self.entries)

    N = n_components

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def _check(self, other: "DiagonalScalar"):
        if not isinstance(other, DiagonalScalar):
            raise TypeError(f"expected DiagonalScalar, got {type(other).__name__}")
        if len(other.entries) != len(self.entries):
            raise DimensionError(
                f"D_N dimension mismatch: {len(self.entries)} vs {len(other.entries)}"
            )

    def __add__(self, other):
        self._check(other)
        return DiagonalScalar(tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other):
        self._check(other)
        return DiagonalScalar(tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self):
        return DiagonalScalar(tuple(-a for a in self.entries))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return DiagonalScalar(tuple(a * other for a in self.entries))
        self._check(other)
        return DiagonalScalar(tuple(a * b for a, b in zip(self.entries, other.entries)))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return DiagonalScalar(tuple(a**k for a in self.entries))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_invertible(self) -> bool:
        return all(self.entries)

    def inverse(self) -> "DiagonalScalar":
        for i, a in enumerate(self.entries, start=1):
            if a == 0:
                raise NotInvertibleError(i)
        return DiagonalScalar(tuple(1 / a for a in self.entries))

    def component(self, i: int) -> "DiagonalScalar":
        """The i-th component (0-based) as an element of D_1."""
        return DiagonalScalar((self.entries[i],))

    def to_json(self) -> list:
        return [format_rational(a) for a in self.entries]

    @classmethod
    def from_json(cls, items, field=None) -> "DiagonalScalar":
        if not isinstance(items, list) or not items:
            raise ParseError("expected a nonempty list of rationals", field)
        return cls(
            tuple(parse_rational(s, f"{field}[{i}]" if field else f"[{i}]") for i, s in enumerate(items))
        )

    def __repr__(self):
        return "(" + ", ".join(format_rational(a) for a in self.entries) + ")"


def zip_scalars(parts: Sequence[DiagonalScalar]) -> DiagonalScalar:
    """Concatenate D_{N1}, D_{N2}, ... scalars into one element of D_{N1+N2+...}."""
    return DiagonalScalar(tuple(e for p in parts for e in p.entries))


def d_add(a: DiagonalScalar, b: DiagonalScalar) -> DiagonalScalar:
    return a + b


def d_mul(a: DiagonalScalar, b: DiagonalScalar) -> DiagonalScalar:
    return a * b


def d_invert(a: DiagonalScalar) -> DiagonalScalar:
    """Componentwise reciprocal; raises :class:`NotInvertibleError` with the
    1-based index of the first zero component."""
    return a.inverse()


def d_prod(items: Iterable[DiagonalScalar], n: int) -> DiagonalScalar:
    out = DiagonalScalar.one(n)
    for it in items:
        out = out * it
    return out
