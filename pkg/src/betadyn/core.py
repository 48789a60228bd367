"""Digit expansions and cylinder combinatorics for the map x -> beta*x mod 1.

For a real base beta > 1 the transformation T x = beta*x - floor(beta*x) acts
on [0, 1); the digit string of x is eps_k = floor(beta * T^{k-1} x), drawn from
the alphabet {0, ..., ceil(beta) - 1}.  Which digit strings actually occur is
governed by the quasi-greedy expansion of 1: a finite word is admissible
exactly when every suffix is lexicographically <= the quasi-greedy stream
truncated to the suffix length.  Everything in this module (admissibility,
enumeration, counting, cylinder endpoints, fullness) is derived from that one
comparison.

Two arithmetic backends are supported.  ``BetaBasis(2.5)`` works in float64
with documented tolerances; ``BetaBasis(Fraction(5, 2))`` works in exact
rational arithmetic, where every comparison is exact.  The quasi-greedy digit
cache is append-only: extending it to a greater depth never changes digits
already produced, so cached bases are safe for a single writer and many
readers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence, Union

from .errors import BudgetError, DomainError, InvalidWordError

Number = Union[float, Fraction]
Word = tuple[int, ...]

BACKEND_FLOAT = "float64"
BACKEND_RATIONAL = "rational"

#: Default cap on materialized words per enumeration call.
DEFAULT_WORD_BUDGET = 5_000_000

#: Relative tolerance for float-backend cylinder/fullness comparisons.
FLOAT_FULL_TOL = 1e-9

#: Largest cylinder order supported under the float backend.
MAX_FLOAT_ORDER = 40


class BetaBasis:
    """A base beta > 1 together with its arithmetic backend.

    Pass a ``float`` (or int) for the float64 backend, a ``Fraction`` for the
    exact rational backend.  The digit alphabet is {0, ..., digit_max} with
    digit_max = ceil(beta) - 1.
    """

    def __init__(self, beta: Number):
        if isinstance(beta, Fraction):
            if beta <= 1:
                raise DomainError(f"beta must be > 1, got {beta}")
            self.beta: Number = beta
            self.backend = BACKEND_RATIONAL
        else:
            beta = float(beta)
            if not math.isfinite(beta) or beta <= 1.0:
                raise DomainError(f"beta must be a finite real > 1, got {beta}")
            self.beta = beta
            self.backend = BACKEND_FLOAT
        self.digit_max: int = math.ceil(self.beta) - 1
        # quasi-greedy expansion of 1: digits d*_1.. and remainders r_0=1, r_1, ..
        self._qg_digits: list[int] = []
        self._qg_rems: list[Number] = [self._one()]
        # integer detection tolerance for the float quasi-greedy iteration
        self._int_tol = 1e-12 * max(1.0, float(self.beta))

    # -- backend helpers ---------------------------------------------------

    def _one(self) -> Number:
        return Fraction(1) if self.backend == BACKEND_RATIONAL else 1.0

    def _zero(self) -> Number:
        return Fraction(0) if self.backend == BACKEND_RATIONAL else 0.0

    @property
    def is_exact(self) -> bool:
        return self.backend == BACKEND_RATIONAL

    @property
    def is_integer_base(self) -> bool:
        b = self.beta
        return b == int(b)

    def coerce(self, x) -> Number:
        """Bring a point into the backend's number type (exactly)."""
        if self.backend == BACKEND_RATIONAL and not isinstance(x, Fraction):
            return Fraction(x)
        if self.backend == BACKEND_FLOAT and isinstance(x, Fraction):
            return float(x)
        return x

    def __repr__(self) -> str:
        return f"BetaBasis({self.beta!r}, backend={self.backend})"

    # -- quasi-greedy expansion of 1 ---------------------------------------

    def quasi_greedy_one(self, depth: int) -> Word:
        """First ``depth`` digits of the quasi-greedy expansion of 1.

        The iteration keeps the remainder strictly positive: the digit is the
        largest d with beta*r - d > 0, i.e. ceil(beta*r) - 1.  Under float64,
        beta*r within ``1e-12 * beta`` of an integer is treated as that
        integer (the remainder then snaps to exactly 1.0, which keeps
        algebraic bases such as the golden ratio on their periodic stream).
        The cache only ever extends; recomputing at greater depth never
        alters earlier digits.
        """
        while len(self._qg_digits) < depth:
            r = self._qg_rems[-1]
            y = self.beta * r
            if self.backend == BACKEND_RATIONAL:
                if y.denominator == 1:
                    d = int(y) - 1
                    r_next: Number = Fraction(1)
                else:
                    d = math.floor(y)
                    r_next = y - d
            else:
                k = round(y)
                if k >= 1 and abs(y - k) <= self._int_tol:
                    d = k - 1
                    r_next = 1.0
                else:
                    d = math.floor(y)
                    r_next = y - d
            self._qg_digits.append(d)
            self._qg_rems.append(r_next)
        return tuple(self._qg_digits[:depth])

    def quasi_greedy_remainder(self, m: int) -> Number:
        """Remainder r_m after emitting m quasi-greedy digits (r_0 = 1)."""
        self.quasi_greedy_one(m)
        return self._qg_rems[m]

    def _restarts_at(self, m: int) -> bool:
        # shift of the quasi-greedy stream by m equals the stream itself
        # exactly when the remainder returns to 1
        r = self.quasi_greedy_remainder(m)
        if self.backend == BACKEND_RATIONAL:
            return r == 1
        return abs(r - 1.0) <= FLOAT_FULL_TOL


# ---------------------------------------------------------------------------
# orbit and digits
# ---------------------------------------------------------------------------


def _check_point(basis: BetaBasis, x) -> Number:
    x = basis.coerce(x)
    if x < 0 or x >= 1:
        raise DomainError(
            f"x={x} outside the half-open domain [0, 1); the convention here "
            "excludes x=1 (its expansion is the separate quasi-greedy stream)"
        )
    return x


def t_apply(basis: BetaBasis, x) -> Number:
    """One step of the map: beta*x - floor(beta*x)."""
    x = _check_point(basis, x)
    y = basis.beta * x
    return y - math.floor(y)


def t_iterate(basis: BetaBasis, x, n: int) -> list:
    """Orbit segment [x, Tx, ..., T^n x] (length n+1)."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    x = _check_point(basis, x)
    out = [x]
    for _ in range(n):
        x = t_apply(basis, x)
        out.append(x)
    return out


def digits(basis: BetaBasis, x, n: int) -> Word:
    """First n digits eps_1..eps_n of the expansion of x."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    r = _check_point(basis, x)
    out = []
    for _ in range(n):
        y = basis.beta * r
        d = math.floor(y)
        out.append(d)
        r = y - d
    return tuple(out)


# ---------------------------------------------------------------------------
# admissibility and enumeration
# ---------------------------------------------------------------------------


def _validate_word(basis: BetaBasis, word: Sequence[int]) -> Word:
    w = tuple(int(d) for d in word)
    if not w:
        raise InvalidWordError("empty word")
    for d in w:
        if d < 0 or d > basis.digit_max:
            raise InvalidWordError(
                f"digit {d} outside alphabet [0, {basis.digit_max}] for beta={basis.beta}"
            )
    return w


def is_admissible(basis: BetaBasis, word: Sequence[int]) -> bool:
    """Parry-style test: every suffix <= the quasi-greedy stream, truncated."""
    w = _validate_word(basis, word)
    n = len(w)
    dstar = basis.quasi_greedy_one(n)
    for i in range(n):
        if w[i:] > dstar[: n - i]:
            return False
    return True


def _tie_lengths(basis: BetaBasis, word: Word) -> tuple[int, ...]:
    """Suffix lengths m where the suffix equals the quasi-greedy prefix."""
    n = len(word)
    dstar = basis.quasi_greedy_one(n)
    return tuple(m for m in range(1, n + 1) if word[n - m :] == dstar[:m])


def renyi_bounds(basis: BetaBasis, n: int) -> tuple[float, float]:
    """Bracket beta^n <= #admissible words of length n <= beta^{n+1}/(beta-1)."""
    b = float(basis.beta)
    return b**n, b ** (n + 1) / (b - 1.0)


def count_words(basis: BetaBasis, n: int) -> int:
    """Exact number of admissible words of length n.

    Uses the recursion a_m = 1 + sum_{i=1}^{m} d*_i a_{m-i} (a_0 = 1): an
    admissible word either is the length-m quasi-greedy prefix itself or
    first drops strictly below it at some position i, after which the
    remaining m-i digits are unconstrained admissible.  Integer arithmetic
    throughout, so the count is exact at any order the digit cache reaches.
    """
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    dstar = basis.quasi_greedy_one(n)
    a = [1]
    for m in range(1, n + 1):
        a.append(1 + sum(dstar[i - 1] * a[m - i] for i in range(1, m + 1)))
    return a[n]


def _dfs_words(basis: BetaBasis, n: int, budget: int) -> Iterator[tuple[Word, tuple[int, ...]]]:
    """Yield (word, tie_lengths) over admissible words of length n, lex order.

    The DFS carries, per node, the set of suffix lengths that currently tie a
    prefix of the quasi-greedy stream; those ties are the only constraints on
    the next digit, which keeps the admissibility bookkeeping incremental.
    """
    dstar = basis.quasi_greedy_one(n)
    top = basis.digit_max
    produced = 0
    prefix: list[int] = []

    def rec(ties: tuple[int, ...]) -> Iterator[tuple[Word, tuple[int, ...]]]:
        nonlocal produced
        if len(prefix) == n:
            produced += 1
            if produced > budget:
                raise BudgetError(
                    f"enumeration exceeded budget of {budget} words at order {n}"
                )
            yield tuple(prefix), ties
            return
        cap = top
        for m in ties:
            nd = dstar[m]  # next digit of a tie matched to length m
            if nd < cap:
                cap = nd
        for d in range(cap + 1):
            new_ties = tuple(m + 1 for m in ties if d == dstar[m]) + (
                (1,) if d == dstar[0] else ()
            )
            prefix.append(d)
            yield from rec(new_ties)
            prefix.pop()

    yield from rec(())


def _check_enumeration_budget(basis: BetaBasis, n: int, budget: int) -> None:
    _, upper = renyi_bounds(basis, n)
    if upper > budget:
        raise BudgetError(
            f"projected word count {upper:.4g} at order {n} (Renyi upper bound "
            f"beta^(n+1)/(beta-1)) exceeds budget {budget}; raise the budget or "
            "lower the order"
        )


def enumerate_words(
    basis: BetaBasis, n: int, budget: int = DEFAULT_WORD_BUDGET
) -> list[Word]:
    """All admissible words of length n in lexicographic order.

    Refuses up front (resource error) when the Renyi projection
    beta^{n+1}/(beta-1) exceeds ``budget``.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    _check_enumeration_budget(basis, n, budget)
    return [w for w, _ in _dfs_words(basis, n, budget)]


# ---------------------------------------------------------------------------
# cylinders
# ---------------------------------------------------------------------------


class PrecisionOrderError(DomainError):
    def __init__(self, n: int):
        super().__init__(
            f"order {n} exceeds the float-backend limit {MAX_FLOAT_ORDER}; "
            "use the rational backend for deeper cylinders"
        )


@dataclass(frozen=True)
class CylinderInterval:
    """Half-open interval [left, right) of points whose digits start with word."""

    word: Word
    left: Number
    right: Number
    is_full: bool

    @property
    def order(self) -> int:
        return len(self.word)

    @property
    def length(self) -> Number:
        return self.right - self.left

    def contains(self, x) -> bool:
        return self.left <= x < self.right


def word_value(basis: BetaBasis, word: Sequence[int]) -> Number:
    """Left endpoint sum_{i} eps_i beta^{-i}, evaluated by Horner from the tail."""
    v = basis._zero()
    for d in reversed(tuple(word)):
        v = (v + d) / basis.beta
    return v


def _successor(basis: BetaBasis, word: Word) -> Word | None:
    """Lexicographic successor of ``word`` among admissible words of equal
    length, or None when ``word`` is the last one (the quasi-greedy prefix).

    Any admissible word extended by zeros stays admissible, so the successor
    is the smallest admissible bump at the latest possible position, padded
    with zeros.
    """
    n = len(word)
    for i in range(n - 1, -1, -1):
        for d in range(word[i] + 1, basis.digit_max + 1):
            cand = word[:i] + (d,)
            if is_admissible(basis, cand):
                return cand + (0,) * (n - 1 - i)
    return None


def _is_full_from_ties(basis: BetaBasis, ties: tuple[int, ...]) -> bool:
    return all(basis._restarts_at(m) for m in ties)


def is_full(basis: BetaBasis, word: Sequence[int]) -> bool:
    """Whether the cylinder of ``word`` has the maximal length beta^-order.

    Equivalent to: every admissible continuation is allowed after ``word``.
    Decided through the tie structure: each suffix of the word that ties a
    prefix of the quasi-greedy stream must restart it (remainder exactly 1),
    otherwise that tie caps the continuations strictly.  Exact under the
    rational backend; the float backend compares remainders with tolerance
    1e-9.
    """
    w = _validate_word(basis, word)
    if not is_admissible(basis, w):
        raise InvalidWordError(f"word {w} is not admissible for beta={basis.beta}")
    return _is_full_from_ties(basis, _tie_lengths(basis, w))


def cylinder_interval(basis: BetaBasis, word: Sequence[int]) -> CylinderInterval:
    """Cylinder of ``word``: [value(word), value(successor)) with right = 1
    for the last word of its order."""
    w = _validate_word(basis, word)
    n = len(w)
    if basis.backend == BACKEND_FLOAT and n > MAX_FLOAT_ORDER:
        raise PrecisionOrderError(n)
    if not is_admissible(basis, w):
        raise InvalidWordError(f"word {w} is not admissible for beta={basis.beta}")
    left = word_value(basis, w)
    succ = _successor(basis, w)
    right = basis._one() if succ is None else word_value(basis, succ)
    full = _is_full_from_ties(basis, _tie_lengths(basis, w))
    return CylinderInterval(word=w, left=left, right=right, is_full=full)


def cylinder_of_point(basis: BetaBasis, x, n: int) -> CylinderInterval:
    """Order-n cylinder containing x; consistent with digits(basis, x, n)."""
    return cylinder_interval(basis, digits(basis, x, n))


def cylinders(
    basis: BetaBasis, n: int, budget: int = DEFAULT_WORD_BUDGET
) -> list[CylinderInterval]:
    """All order-n cylinders in increasing (= lexicographic) order.

    Right endpoints chain: each right is the next cylinder's left, the last
    right is 1, so the list tiles [0, 1).
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if basis.backend == BACKEND_FLOAT and n > MAX_FLOAT_ORDER:
        raise PrecisionOrderError(n)
    _check_enumeration_budget(basis, n, budget)
    leaves = list(_dfs_words(basis, n, budget))
    lefts = [word_value(basis, w) for w, _ in leaves]
    out = []
    for i, (w, ties) in enumerate(leaves):
        right = lefts[i + 1] if i + 1 < len(leaves) else basis._one()
        out.append(
            CylinderInterval(
                word=w, left=lefts[i], right=right,
                is_full=_is_full_from_ties(basis, ties),
            )
        )
    return out


def full_words(
    basis: BetaBasis, n: int, budget: int = DEFAULT_WORD_BUDGET
) -> list[Word]:
    """Admissible words of length n whose cylinders are full, lex order."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    _check_enumeration_budget(basis, n, budget)
    return [
        w
        for w, ties in _dfs_words(basis, n, budget)
        if _is_full_from_ties(basis, ties)
    ]
