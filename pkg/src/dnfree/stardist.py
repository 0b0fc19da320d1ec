"""Joint D_N-valued distributions of a few (possibly starred) variables.

A joint distribution is the dense table of mixed moments m(w) over all words w
of length 1..M in the letters x_i and x_i^*.  Mixed cumulants come from that
table by Möbius inversion over NC(|w|); conversely a cumulant table determines
the moments.  Freeness of two variables is the vanishing of every cumulant of
a word that uses both.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Mapping, Sequence

from .dalg import DiagonalScalar, d_prod
from .errors import BoundError, DimensionError, ParseError, TruncationError, ValidationError
from .ncpart import nc_table
from .transforms import (
    CumulantSequence,
    Distribution,
    cumulants_to_moments,
    free_add_convolve,
    moments_to_cumulants,
)

MAX_TABLE_ORDER = 8

Letter = tuple  # (variable index, starred?)
Word = tuple  # tuple of letters


# -- words -----------------------------------------------------------------------


def alphabet(n_vars: int, star: bool) -> list:
    letters = [(v, False) for v in range(n_vars)]
    if star:
        letters = [(v, s) for v in range(n_vars) for s in (False, True)]
    return letters


def all_words(n_vars: int, star: bool, max_len: int, min_len: int = 1):
    """Words ordered by length, then lexicographically in alphabet order."""
    letters = alphabet(n_vars, star)
    for length in range(min_len, max_len + 1):
        for w in product(letters, repeat=length):
            yield w


def word_text(word: Word, names: Sequence[str]) -> str:
    return " ".join(names[v] + ("*" if s else "") for v, s in word)


def parse_word(text: str, names: Sequence[str], field_name=None) -> Word:
    """Parse ``"x x* y"`` against the variable names."""
    letters = []
    for tok in text.split():
        starred = tok.endswith("*")
        name = tok[:-1] if starred else tok
        if name not in names:
            raise ParseError(f"unknown variable {name!r} in word {text!r}", field_name)
        letters.append((list(names).index(name), starred))
    if not letters:
        raise ParseError("empty word", field_name)
    return tuple(letters)


def adjoint(word: Word) -> Word:
    """(w_1 ... w_n)^* = w_n^* ... w_1^*."""
    return tuple((v, not s) for v, s in reversed(word))


def is_mixed(word: Word, a: int = 0, b: int = 1) -> bool:
    used = {v for v, _ in word}
    return a in used and b in used


def is_alternating(word: Word) -> bool:
    """Even length, one variable, star marks strictly alternating."""
    if len(word) % 2 or len({v for v, _ in word}) != 1:
        return False
    return all(word[i][1] != word[i + 1][1] for i in range(len(word) - 1))


def restrict(word: Word, block: Sequence[int]) -> Word:
    return tuple(word[i - 1] for i in block)


# -- tables ------------------------------------------------------------------


@dataclass(frozen=True, eq=True)
class JointDistribution:
    n_components: int
    order: int
    vars: tuple
    star: bool
    moments: Mapping = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        if len(set(self.vars)) != len(self.vars) or not self.vars:
            raise ValidationError("variable names must be nonempty and distinct")
        if not 1 <= self.order <= MAX_TABLE_ORDER:
            raise BoundError(f"joint table order must be in 1..{MAX_TABLE_ORDER}")
        table = dict(self.moments)
        for w in all_words(len(self.vars), self.star, self.order):
            if w not in table:
                raise ValidationError(f"incomplete table: missing word {word_text(w, self.vars)!r}")
            if table[w].n_components != self.n_components:
                raise DimensionError(f"word {word_text(w, self.vars)!r} has the wrong number of components")
        extra = set(table) - set(all_words(len(self.vars), self.star, self.order))
        if extra:
            raise ValidationError(f"table has {len(extra)} words outside the alphabet/order")
        object.__setattr__(self, "moments", table)

    __hash__ = None

    @property
    def N(self) -> int:
        return self.n_components

    def words(self, min_len: int = 1, max_len: int | None = None):
        return all_words(len(self.vars), self.star, self.order if max_len is None else max_len, min_len)

    def moment(self, word: Word) -> DiagonalScalar:
        if len(word) > self.order:
            raise TruncationError(f"word of length {len(word)} exceeds table order {self.order}")
        return self.moments[word]

    def marginal(self, var: int = 0) -> Distribution:
        """Trivial moments of one variable (unstarred words)."""
        return Distribution(tuple(self.moments[((var, False),) * k] for k in range(1, self.order + 1)))

    def component(self, i: int) -> "JointDistribution":
        return JointDistribution(1, self.order, self.vars, self.star, {w: m.component(i) for w, m in self.moments.items()})

    def truncate(self, order: int) -> "JointDistribution":
        if order > self.order:
            raise TruncationError(f"cannot raise order {self.order} to {order}")
        return JointDistribution(
            self.N, order, self.vars, self.star, {w: m for w, m in self.moments.items() if len(w) <= order}
        )


def moment_from_cumulants(word: Word, cumulant: Callable[[Word], DiagonalScalar | None], n_components: int) -> DiagonalScalar:
    """m(w) = Σ_{π∈NC(|w|)} Π_{V∈π} k(w|_V); ``cumulant`` may return None for zero."""
    acc = DiagonalScalar.zero(n_components)
    for p, _, _ in nc_table(len(word)):
        factors = []
        for b in p.blocks:
            k = cumulant(restrict(word, b))
            if k is None or k.is_zero():
                break
            factors.append(k)
        else:
            acc = acc + d_prod(factors, n_components)
    return acc


def joint_from_cumulants(
    n_components: int,
    order: int,
    names: Sequence[str],
    star: bool,
    cumulants: Mapping[Word, DiagonalScalar] | Callable[[Word], DiagonalScalar | None],
) -> JointDistribution:
    """Moment table determined by a cumulant table (missing words mean zero)."""
    lookup = cumulants if callable(cumulants) else cumulants.get
    table = {w: moment_from_cumulants(w, lookup, n_components) for w in all_words(len(names), star, order)}
    return JointDistribution(n_components, order, tuple(names), star, table)


def mixed_cumulant(j: JointDistribution, w: Word) -> DiagonalScalar:
    """k(w) = Σ_{π∈NC(|w|)} μ(π, 1_{|w|}) Π_{V∈π} m(w|_V)."""
    if len(w) > j.order:
        raise TruncationError(f"word of length {len(w)} exceeds table order {j.order}")
    acc = DiagonalScalar.zero(j.N)
    for p, _, mu in nc_table(len(w)):
        acc = acc + d_prod((j.moments[restrict(w, b)] for b in p.blocks), j.N) * mu
    return acc


def free_pair_cumulant(kx: CumulantSequence, ky: CumulantSequence) -> Callable:
    """Cumulant function of two free self-adjoint variables with the given
    marginal cumulants: zero on mixed words."""

    def cumulant(w: Word):
        used = {v for v, _ in w}
        if len(used) != 1:
            return None
        return (kx if 0 in used else ky)[len(w)]

    return cumulant


def joint_from_free_pair(x: Distribution, y: Distribution, order: int | None = None, names=("x", "y")) -> JointDistribution:
    """The joint table of x and y under freeness over D_N."""
    if x.N != y.N:
        raise DimensionError(f"D_N mismatch: {x.N} vs {y.N}")
    order = min(x.order, y.order) if order is None else order
    if order > min(x.order, y.order):
        raise TruncationError(f"marginals only known to order {min(x.order, y.order)}")
    kx = moments_to_cumulants(x.truncate(order))
    ky = moments_to_cumulants(y.truncate(order))
    return joint_from_cumulants(x.N, order, names, False, free_pair_cumulant(kx, ky))


@dataclass(frozen=True)
class FreenessReport:
    free: bool
    witness: Word | None = None
    cumulant: DiagonalScalar | None = None

    def __bool__(self):
        return self.free


def check_freeness(j: JointDistribution, vars: tuple = (0, 1), order: int | None = None) -> FreenessReport:
    """All mixed cumulants of words of length 2..order vanish; otherwise the
    shortest (then lexicographically first) offending word is the witness."""
    a, b = vars
    for v in (a, b):
        if not 0 <= v < len(j.vars):
            raise ValidationError(f"variable index {v} not in table")
    order = j.order if order is None else order
    if order > j.order:
        raise TruncationError(f"table only known to order {j.order}")
    for w in j.words(min_len=2, max_len=order):
        if not is_mixed(w, a, b):
            continue
        k = mixed_cumulant(j, w)
        if not k.is_zero():
            return FreenessReport(False, w, k)
    return FreenessReport(True)


# -- classifiers -------------------------------------------------------------


@dataclass(frozen=True)
class Classification:
    """Outcome of a classifier.

    ``components`` holds ``"pass"``, ``"fail"`` or ``"exempt"`` (all-zero
    component) per coordinate.  A variable with every component exempt is
    ``degenerate`` and does not hold.
    """

    kind: str
    holds: bool
    degenerate: bool
    components: tuple
    notes: tuple = ()

    def __bool__(self):
        return self.holds


def _verdict(kind: str, per_component: list, notes=()) -> Classification:
    active = [c for c in per_component if c != "exempt"]
    degenerate = not active
    holds = bool(active) and all(c == "pass" for c in active)
    return Classification(kind, holds, degenerate, tuple(per_component), tuple(notes))


def _order(avail: int, order: int | None, minimum: int) -> int:
    order = avail if order is None else order
    if order > avail:
        raise TruncationError(f"only {avail} degrees available, {order} requested")
    if order < minimum:
        raise BoundError(f"classifier needs order >= {minimum}")
    return order


def is_self_adjoint(j: JointDistribution) -> bool:
    """m(w) does not depend on star marks (x^* = x as far as moments see)."""
    return all(m == j.moments[tuple((v, False) for v, _ in w)] for w, m in j.moments.items())


def _single_variable(d) -> tuple:
    notes = []
    if isinstance(d, JointDistribution):
        if len(d.vars) != 1:
            raise ValidationError("classifier expects a single-variable table")
        if d.star:
            if not is_self_adjoint(d):
                return d.marginal(0), ["star table is not self-adjoint"], False
            notes.append("self-adjointness verified on star table")
        else:
            notes.append("self-adjointness not checkable without a star table")
        return d.marginal(0), notes, True
    notes.append("self-adjointness not checkable without a star table")
    return d, notes, True


def classify_semicircular(d, order: int | None = None) -> Classification:
    """Only the second cumulant is nonzero, componentwise over nonzero components."""
    dist, notes, sa = _single_variable(d)
    order = _order(dist.order, order, 3)
    dist = dist.truncate(order)
    k = moments_to_cumulants(dist)
    per = []
    for i in range(dist.N):
        if all(dist[n][i] == 0 for n in range(1, order + 1)):
            per.append("exempt")
        elif sa and k[2][i] != 0 and all(k[n][i] == 0 for n in range(1, order + 1) if n != 2):
            per.append("pass")
        else:
            per.append("fail")
    return _verdict("semicircular", per, notes)


def classify_even(d, order: int | None = None) -> Classification:
    """All odd trivial moments vanish, componentwise over nonzero components."""
    dist, notes, sa = _single_variable(d)
    order = _order(dist.order, order, 2)
    per = []
    for i in range(dist.N):
        if all(dist[n][i] == 0 for n in range(1, order + 1)):
            per.append("exempt")
        elif sa and all(dist[n][i] == 0 for n in range(1, order + 1, 2)):
            per.append("pass")
        else:
            per.append("fail")
    return _verdict("even", per, notes)


def classify_r_diagonal(j: JointDistribution, order: int | None = None) -> Classification:
    """Only cumulants of alternating words x x* x x* ... / x* x x* x ... survive,
    and some alternating cumulant is nonzero in each nonzero component."""
    if len(j.vars) != 1 or not j.star:
        raise ValidationError("R-diagonality needs a one-variable star table")
    order = _order(j.order, order, 2)
    cums = {w: mixed_cumulant(j, w) for w in j.words(max_len=order)}
    per = []
    for i in range(j.N):
        if all(j.moments[w][i] == 0 for w in j.words(max_len=order)):
            per.append("exempt")
            continue
        bad = any(k[i] != 0 for w, k in cums.items() if not is_alternating(w))
        some = any(k[i] != 0 for w, k in cums.items() if is_alternating(w))
        per.append("pass" if some and not bad else "fail")
    return _verdict("r-diagonal", per)


def classify_free(j: JointDistribution, order: int | None = None) -> Classification:
    report = check_freeness(j, (0, 1), order)
    notes = ()
    if not report.free:
        notes = (f"witness {word_text(report.witness, j.vars)}: {report.cumulant!r}",)
    return Classification("free", report.free, False, (), notes)


# -- infinite divisibility and the joint-table oracles ------------------------------


def divide_free(d: Distribution, n: int) -> Distribution:
    """The distribution whose cumulants are those of d divided by n."""
    if not isinstance(n, int) or n < 1:
        raise BoundError(f"number of free summands must be a positive integer, got {n!r}")
    k = moments_to_cumulants(d)
    return cumulants_to_moments(CumulantSequence(tuple(c * Fraction(1, n) for c in k.cumulants)))


def free_power_sum(d: Distribution, n: int) -> Distribution:
    """n-fold free additive self-convolution."""
    out = d
    for _ in range(n - 1):
        out = free_add_convolve(out, d)
    return out


def sum_moments_via_joint(j: JointDistribution, a: int = 0, b: int = 1) -> Distribution:
    """Moments of x_a + x_b by expanding (x_a + x_b)^n into all 2^n words."""
    out = []
    for n in range(1, j.order + 1):
        acc = DiagonalScalar.zero(j.N)
        for letters in product((a, b), repeat=n):
            acc = acc + j.moments[tuple((v, False) for v in letters)]
        out.append(acc)
    return Distribution(tuple(out))


def product_moments_via_joint(x: Distribution, y: Distribution, order: int) -> Distribution:
    """E((xy)^n) as the mixed moment of the word x y x y ... of length 2n,
    built directly from vanishing mixed cumulants."""
    if order > min(x.order, y.order):
        raise TruncationError("marginals too short")
    cum = free_pair_cumulant(moments_to_cumulants(x.truncate(order)), moments_to_cumulants(y.truncate(order)))
    out = []
    for n in range(1, order + 1):
        word = ((0, False), (1, False)) * n
        out.append(moment_from_cumulants(word, cum, x.N))
    return Distribution(tuple(out))


# -- JSON ----------------------------------------------------------------------


def joint_to_json(j: JointDistribution) -> dict:
    return {
        "N": j.N,
        "order": j.order,
        "vars": list(j.vars),
        "star": j.star,
        "moments": {word_text(w, j.vars): j.moments[w].to_json() for w in j.words()},
    }


def joint_from_json(doc, where: str = "joint") -> JointDistribution:
    if not isinstance(doc, dict):
        raise ParseError("joint distribution must be a JSON object", where)
    for key in ("N", "order", "vars", "moments"):
        if key not in doc:
            raise ParseError(f"missing key {key!r}", where)
    n, order, names = doc["N"], doc["order"], doc["vars"]
    star = doc.get("star", False)
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError("N must be a positive integer", f"{where}.N")
    if not isinstance(order, int) or isinstance(order, bool) or not 1 <= order <= MAX_TABLE_ORDER:
        raise ParseError(f"order must be an integer in 1..{MAX_TABLE_ORDER}", f"{where}.order")
    if not isinstance(names, list) or not names or not all(isinstance(s, str) and s and "*" not in s and " " not in s for s in names):
        raise ParseError("vars must be a nonempty list of plain names", f"{where}.vars")
    if len(set(names)) != len(names):
        raise ParseError("duplicate variable names", f"{where}.vars")
    if not isinstance(star, bool):
        raise ParseError("star must be a boolean", f"{where}.star")
    if not isinstance(doc["moments"], dict):
        raise ParseError("moments must be an object keyed by word", f"{where}.moments")
    table = {}
    for text, value in doc["moments"].items():
        fld = f"{where}.moments[{text!r}]"
        w = parse_word(text, names, fld)
        if any(s for _, s in w) and not star:
            raise ParseError("starred letter in a table declared without stars", fld)
        if len(w) > order:
            raise ParseError(f"word longer than order {order}", fld)
        if w in table:
            raise ParseError("duplicate word", fld)
        m = DiagonalScalar.from_json(value, fld)
        if m.N != n:
            raise ParseError(f"expected {n} components, got {m.N}", fld)
        table[w] = m
    for w in all_words(len(names), star, order):
        if w not in table:
            raise ParseError(f"missing word {word_text(w, names)!r}", f"{where}.moments")
    return JointDistribution(n, order, tuple(names), star, table)
