"""The lattice NC(n) of noncrossing partitions of {1, ..., n}.

Partitions are kept in canonical form (blocks sorted by minimum, ascending
elements inside a block), which makes them hashable and gives enumeration a
deterministic order.  The Kreweras complement is computed from permutations,
the Möbius function both from its defining recursion and from the Catalan
product over Kreweras blocks; the tests hold the two against each other.
"""

from __future__ import annotations

import re
import threading
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import BoundError, DimensionError, OrderError, ParseError, ValidationError

MAX_N = 12


def set_max_n(n: int) -> None:
    """Change the enumeration cap (default 12)."""
    global MAX_N
    if n < 1:
        raise BoundError("enumeration cap must be positive")
    MAX_N = n


def catalan(n: int) -> int:
    """n-th Catalan number by the convolution recurrence."""
    c = [1]
    for k in range(n):
        c.append(sum(c[i] * c[k - i] for i in range(k + 1)))
    return c[n]


def _validate_partition(n: int, blocks) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"ground set size must be a positive integer, got {n!r}")
    seen = set()
    for b in blocks:
        if len(b) == 0:
            raise ValidationError("empty block")
        for e in b:
            if not isinstance(e, int) or not 1 <= e <= n:
                raise ValidationError(f"element {e!r} outside 1..{n}")
            if e in seen:
                raise ValidationError(f"element {e} appears in two blocks")
            seen.add(e)
    if len(seen) != n:
        missing = sorted(set(range(1, n + 1)) - seen)
        raise ValidationError(f"elements {missing} are not covered")


def _crossing(blocks) -> bool:
    label = {}
    for i, b in enumerate(blocks):
        for e in b:
            label[e] = i
    elems = sorted(label)
    for a, b, c, d in combinations(elems, 4):
        if label[a] == label[c] and label[b] == label[d] and label[a] != label[b]:
            return True
    return False


def is_noncrossing(blocks: Iterable[Iterable[int]], n: int | None = None) -> bool:
    """True iff no a<b<c<d has a, c in one block and b, d in another.

    ``blocks`` must be a set partition of {1..n}; ``n`` defaults to the number
    of elements present.
    """
    blocks = [tuple(b) for b in blocks]
    if n is None:
        n = sum(len(b) for b in blocks)
    _validate_partition(n, blocks)
    return not _crossing(blocks)


@dataclass(frozen=True, slots=True)
class NoncrossingPartition:
    n: int
    blocks: tuple

    def __post_init__(self):
        blocks = [tuple(b) for b in self.blocks]
        _validate_partition(self.n, blocks)
        canon = tuple(sorted(tuple(sorted(b)) for b in blocks))
        if _crossing(canon):
            raise ValidationError(f"blocks {format_blocks(canon)} cross")
        object.__setattr__(self, "blocks", canon)

    @classmethod
    def _trusted(cls, n: int, blocks: tuple) -> "NoncrossingPartition":
        # blocks already canonical and noncrossing
        obj = object.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "blocks", blocks)
        return obj

    @classmethod
    def zero(cls, n: int) -> "NoncrossingPartition":
        """0_n, all singletons."""
        return cls._trusted(n, tuple((i,) for i in range(1, n + 1)))

    @classmethod
    def one(cls, n: int) -> "NoncrossingPartition":
        """1_n, a single block."""
        return cls._trusted(n, (tuple(range(1, n + 1)),))

    @classmethod
    def parse(cls, text: str) -> "NoncrossingPartition":
        return parse_partition(text)

    def __len__(self):
        return len(self.blocks)

    def block_sizes(self) -> tuple:
        return tuple(len(b) for b in self.blocks)

    def labels(self) -> tuple:
        """labels()[i-1] is the index of the block containing i."""
        lab = [0] * self.n
        for k, b in enumerate(self.blocks):
            for e in b:
                lab[e - 1] = k
        return tuple(lab)

    def __str__(self):
        return format_blocks(self.blocks)

    def __repr__(self):
        return f"NoncrossingPartition({self})"


def format_blocks(blocks) -> str:
    return "{" + ",".join("{" + ",".join(str(e) for e in b) + "}" for b in blocks) + "}"


_PART_RE = re.compile(r"^\{(\{\d+(,\d+)*\})(,\{\d+(,\d+)*\})*\}$")


def parse_partition(text: str, n: int | None = None) -> NoncrossingPartition:
    """Parse the text form ``{{1,3},{2}}`` (whitespace is ignored)."""
    compact = re.sub(r"\s+", "", text)
    if not _PART_RE.match(compact):
        raise ParseError(f"malformed partition text {text!r}")
    blocks = [tuple(int(e) for e in grp.split(",")) for grp in re.findall(r"\{([\d,]+)\}", compact[1:-1])]
    size = sum(len(b) for b in blocks)
    try:
        return NoncrossingPartition(n if n is not None else size, tuple(blocks))
    except ValidationError as exc:
        raise ParseError(str(exc)) from exc


# -- enumeration -----------------------------------------------------------

_cache_lock = threading.Lock()
_nc_cache: dict = {}


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 1 or n > MAX_N:
        raise BoundError(f"n must satisfy 1 <= n <= {MAX_N}, got {n!r}")


def _generate(n: int) -> list:
    memo = {}

    def gen(lo, hi):
        # all NC partitions of the integer interval [lo, hi)
        key = (lo, hi)
        if key in memo:
            return memo[key]
        if lo == hi:
            memo[key] = [()]
            return memo[key]
        out = []

        def grow(block, last, inner):
            for rest in gen(last + 1, hi):
                out.append(inner + (tuple(block),) + rest)
            for nxt in range(last + 1, hi):
                for gap in gen(last + 1, nxt):
                    grow(block + [nxt], nxt, inner + gap)

        grow([lo], lo, ())
        memo[key] = out
        return out

    parts = [tuple(sorted(p)) for p in gen(1, n + 1)]
    parts.sort()
    return [NoncrossingPartition._trusted(n, p) for p in parts]


def enumerate_noncrossing(n: int) -> list:
    """All of NC(n) in lexicographic order of the canonical block form."""
    _check_n(n)
    with _cache_lock:
        cached = _nc_cache.get(n)
        if cached is None:
            cached = tuple(_generate(n))
            _nc_cache[n] = cached
    return list(cached)


def _check_same_n(p: NoncrossingPartition, q: NoncrossingPartition) -> None:
    if p.n != q.n:
        raise DimensionError(f"partitions of different ground sets: {p.n} vs {q.n}")


def leq(p: NoncrossingPartition, q: NoncrossingPartition) -> bool:
    """Refinement order: every block of p lies inside a block of q."""
    _check_same_n(p, q)
    lab = q.labels()
    return all(len({lab[e - 1] for e in b}) == 1 for b in p.blocks)


def kreweras_complement(p: NoncrossingPartition) -> NoncrossingPartition:
    """Kr(p) as the cycle decomposition of p^{-1} o (1 2 ... n).

    p acts as the permutation sending each element to the next one of its
    block (cyclically); point i of the complement sits between i and i+1.
    """
    n = p.n
    prev = [0] * (n + 1)
    for b in p.blocks:
        for k, e in enumerate(b):
            prev[e] = b[k - 1]
    perm = [0] * (n + 1)
    for i in range(1, n + 1):
        perm[i] = prev[i % n + 1]
    seen = [False] * (n + 1)
    blocks = []
    for i in range(1, n + 1):
        if seen[i]:
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = perm[j]
        blocks.append(tuple(sorted(cyc)))
    return NoncrossingPartition._trusted(n, tuple(sorted(blocks)))


def kreweras_brute(p: NoncrossingPartition) -> NoncrossingPartition:
    """Maximal sigma in NC(n) with p ∪ sigma noncrossing on 1,1',2,2',...,n,n'.

    Exhaustive search; kept as the reference for :func:`kreweras_complement`.
    """
    n = p.n
    candidates = []
    for s in enumerate_noncrossing(n):
        merged = [tuple(2 * e - 1 for e in b) for b in p.blocks]
        merged += [tuple(2 * e for e in b) for b in s.blocks]
        if not _crossing(merged):
            candidates.append(s)
    top = [s for s in candidates if all(leq(t, s) for t in candidates)]
    if len(top) != 1:
        raise AssertionError(f"no unique maximal complement for {p}")
    return top[0]


def interval(p: NoncrossingPartition, q: NoncrossingPartition) -> list:
    """All sigma with p <= sigma <= q, finest first."""
    _check_same_n(p, q)
    out = [s for s in enumerate_noncrossing(p.n) if leq(p, s) and leq(s, q)]
    out.sort(key=lambda s: -len(s.blocks))
    return out


def mobius_brute(p: NoncrossingPartition, q: NoncrossingPartition) -> Fraction:
    """μ(p, q) from μ(p, p) = 1 and Σ_{p<=s<=t} μ(p, s) = 0 for p < t."""
    _check_same_n(p, q)
    if not leq(p, q):
        raise OrderError(f"{p} is not below {q}")
    elems = interval(p, q)
    labels = {s: s.labels() for s in elems}

    def below(s, t):
        lab = labels[t]
        return all(len({lab[e - 1] for e in b}) == 1 for b in s.blocks)

    mu = {}
    for t in elems:
        if t == p:
            mu[t] = 1
            continue
        mu[t] = -sum(mu[s] for s in mu if below(s, t))
    return Fraction(mu[q])


def mobius_full(p: NoncrossingPartition) -> Fraction:
    """μ(p, 1_n) = Π over blocks W of Kr(p) of (-1)^{|W|-1} C_{|W|-1}."""
    value = 1
    for size in kreweras_complement(p).block_sizes():
        value *= (-1) ** (size - 1) * catalan(size - 1)
    return Fraction(value)


# -- cached per-n tables used by the transform code ------------------------

_table_cache: dict = {}


def _cached(key, build):
    with _cache_lock:
        if key in _table_cache:
            return _table_cache[key]
    value = build()
    with _cache_lock:
        return _table_cache.setdefault(key, value)


def nc_table(n: int) -> tuple:
    """Tuple of (π, Kr(π), μ(π, 1_n)) over NC(n), in enumeration order."""
    _check_n(n)

    def build():
        return tuple((p, kreweras_complement(p), mobius_full(p)) for p in enumerate_noncrossing(n))

    return _cached(("table", n), build)


def _type(sizes: Sequence[int]) -> tuple:
    return tuple(sorted(sizes, reverse=True))


def block_type_counts(n: int) -> dict:
    """Number of π ∈ NC(n) of each block-size type (sizes sorted descending)."""
    return _cached(("types", n), lambda: dict(Counter(_type(p.block_sizes()) for p, _, _ in nc_table(n))))


def mobius_type_weights(n: int) -> dict:
    """Σ μ(π, 1_n) over π ∈ NC(n) of each block-size type."""

    def build():
        acc: dict = {}
        for p, _, mu in nc_table(n):
            t = _type(p.block_sizes())
            acc[t] = acc.get(t, 0) + mu
        return {t: w for t, w in acc.items() if w != 0}

    return _cached(("mobius", n), build)


def kreweras_type_counts(n: int) -> dict:
    """Multiplicity of each pair (type of π, type of Kr(π)) over NC(n)."""
    return _cached(
        ("kr", n),
        lambda: dict(Counter((_type(p.block_sizes()), _type(k.block_sizes())) for p, k, _ in nc_table(n))),
    )
