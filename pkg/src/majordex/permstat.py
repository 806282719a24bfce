"""Brute-force permutation-statistic oracles: multiset and r-signed
permutation enumeration, descent statistics, maj/des distributions, and the
truncated Carlitz series check.

Everything enumerates lazily and counts exactly; these are the independent
reference implementations the algebraic identities are verified against.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import permutations
from math import factorial
from typing import Iterator, Sequence

from .abindex import AbWord
from .qarith import QPoly, QTPoly, TSeriesQ, q_int

MultisetPerm = tuple[int, ...]
SignedEntry = tuple[int, int]
# A signed permutation is ((j1,p1),...,(jn,pn),0); the sentinel keeps descent
# positions 1..n aligned with the label order.
SignedPerm = tuple


class EnumerationLimitError(ValueError):
    pass


@dataclass(frozen=True)
class EnumBounds:
    """Safety bounds for the brute-force enumerations."""

    multiset_max_size: int = 10
    signed_max_count: int = 1_000_000
    qeulerian_max_n: int = 9
    # When MAJORDEX_MAX_ENUM is set, that single count bound replaces all of
    # the defaults above.
    max_count: int | None = None


def current_bounds() -> EnumBounds:
    raw = os.environ.get("MAJORDEX_MAX_ENUM")
    if raw is None:
        return EnumBounds()
    try:
        return EnumBounds(max_count=int(raw))
    except ValueError:
        raise EnumerationLimitError(
            f"MAJORDEX_MAX_ENUM must be an integer, got {raw!r}"
        ) from None


def _multinomial(alpha: Sequence[int]) -> int:
    out = factorial(sum(alpha))
    for a in alpha:
        out //= factorial(a)
    return out


# -- descent statistics ---------------------------------------------------------


def descent_set(pi: Sequence[int]) -> frozenset[int]:
    """Positions i (1-based) with pi_i > pi_{i+1}; strict descents only."""
    return frozenset(i + 1 for i in range(len(pi) - 1) if pi[i] > pi[i + 1])


def maj(pi: Sequence[int]) -> int:
    return sum(descent_set(pi))


def des(pi: Sequence[int]) -> int:
    return len(descent_set(pi))


def descent_word(pi: Sequence[int]) -> AbWord:
    """Word of degree len(pi)-1 with b at every descent position."""
    bits = 0
    for i in range(len(pi) - 1):
        if pi[i] > pi[i + 1]:
            bits |= 1 << i
    return AbWord(len(pi) - 1, bits)


# -- multiset permutations --------------------------------------------------------


def enumerate_multiset(alpha: Sequence[int]) -> Iterator[MultisetPerm]:
    """All permutations of {1^a1, ..., k^ak}, lazily, in lexicographic order."""
    parts = list(alpha)
    if not parts or any(a < 1 for a in parts):
        raise ValueError("composition must be non-empty with positive entries")
    bounds = current_bounds()
    if bounds.max_count is not None:
        if _multinomial(parts) > bounds.max_count:
            raise EnumerationLimitError(
                f"multiset enumeration of size {_multinomial(parts)} exceeds "
                f"MAJORDEX_MAX_ENUM={bounds.max_count}"
            )
    elif sum(parts) > bounds.multiset_max_size:
        raise EnumerationLimitError(
            f"|alpha| = {sum(parts)} exceeds the multiset bound "
            f"{bounds.multiset_max_size} (set MAJORDEX_MAX_ENUM to raise)"
        )
    counts = parts[:]
    n = sum(counts)
    prefix: list[int] = []

    def rec() -> Iterator[MultisetPerm]:
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for v in range(1, len(counts) + 1):
            if counts[v - 1]:
                counts[v - 1] -= 1
                prefix.append(v)
                yield from rec()
                prefix.pop()
                counts[v - 1] += 1

    return rec()


def maj_distribution(alpha: Sequence[int]) -> QPoly:
    """Generating polynomial of maj over the multiset permutations of alpha."""
    c: dict[int, int] = {}
    for pi in enumerate_multiset(alpha):
        m = maj(pi)
        c[m] = c.get(m, 0) + 1
    return QPoly(c)


# -- r-signed permutations ---------------------------------------------------------


def signed_label_key(entry):
    """Order on sign pairs and the sentinel: pairs lexicographic, 0 at (0,0)."""
    if entry == 0:
        return (0, 0)
    return entry


def sign_set(r: int) -> list[int]:
    """Allowed signs for a letter with bound r: {-1} plus 2..r."""
    return [-1] + list(range(2, r + 1))


def enumerate_signed(r: Sequence[int]) -> Iterator[SignedPerm]:
    """All r-signed permutations, each a tuple of (sign, value) pairs ending
    with the sentinel 0."""
    rs = list(r)
    if not rs or any(x < 1 for x in rs):
        raise ValueError("sign bounds must be a non-empty vector of positive integers")
    n = len(rs)
    total = factorial(n)
    for x in rs:
        total *= x
    bounds = current_bounds()
    limit = bounds.max_count if bounds.max_count is not None else bounds.signed_max_count
    if total > limit:
        raise EnumerationLimitError(
            f"signed enumeration of size {total} exceeds the bound {limit} "
            f"(set MAJORDEX_MAX_ENUM to raise)"
        )

    def rec(pi_prefix: list[SignedEntry], remaining: list[int]) -> Iterator[SignedPerm]:
        if not remaining:
            yield tuple(pi_prefix) + (0,)
            return
        for idx, v in enumerate(remaining):
            rest = remaining[:idx] + remaining[idx + 1 :]
            for j in sign_set(rs[v - 1]):
                pi_prefix.append((j, v))
                yield from rec(pi_prefix, rest)
                pi_prefix.pop()

    return rec([], list(range(1, n + 1)))


def signed_maj(sigma: SignedPerm) -> int:
    """Sum of descent positions under the signed label order (sentinel included)."""
    return sum(
        i + 1
        for i in range(len(sigma) - 1)
        if signed_label_key(sigma[i]) > signed_label_key(sigma[i + 1])
    )


def signed_maj_distribution(r: Sequence[int]) -> QPoly:
    c: dict[int, int] = {}
    for sigma in enumerate_signed(r):
        m = signed_maj(sigma)
        c[m] = c.get(m, 0) + 1
    return QPoly(c)


def signed_maj_formula(r: Sequence[int]) -> QPoly:
    """Closed form [n]! * prod(1 + (r_i - 1) q) that the distribution must hit."""
    rs = list(r)
    out = QPoly.one()
    for k in range(1, len(rs) + 1):
        out = out * q_int(k)
    for ri in rs:
        out = out * QPoly({0: 1, 1: ri - 1})
    return out


# -- joint maj/des over the symmetric group ------------------------------------------


def q_eulerian(n: int) -> QTPoly:
    """Joint distribution of (maj, des) over all permutations of 1..n."""
    if n < 0:
        raise ValueError("n must be >= 0")
    bounds = current_bounds()
    if bounds.max_count is not None:
        if factorial(n) > bounds.max_count:
            raise EnumerationLimitError(
                f"n! = {factorial(n)} exceeds MAJORDEX_MAX_ENUM={bounds.max_count}"
            )
    elif n > bounds.qeulerian_max_n:
        raise EnumerationLimitError(
            f"n = {n} exceeds the bound {bounds.qeulerian_max_n} "
            f"(set MAJORDEX_MAX_ENUM to raise)"
        )
    c: dict[tuple[int, int], int] = {}
    for pi in permutations(range(1, n + 1)):
        d = descent_set(pi)
        key = (sum(d), len(d))
        c[key] = c.get(key, 0) + 1
    return QTPoly(c)


@dataclass(frozen=True)
class CarlitzCheck:
    """Falsy with the first failing t-order when the series disagree."""

    ok: bool
    first_failure: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def carlitz_check(n: int, torder: int) -> CarlitzCheck:
    """Compare sum_k [k+1]^n t^k with the Eulerian rational form, as series
    in t truncated at t^torder with exact q-polynomial coefficients."""
    if n < 0 or torder < 0:
        raise ValueError("n and torder must be >= 0")
    left = TSeriesQ(torder, {k: q_int(k + 1) ** n for k in range(torder + 1)})
    numerator = TSeriesQ.from_qtpoly(q_eulerian(n), torder)
    denominator = TSeriesQ(torder, {0: QPoly.one()})
    for j in range(n + 1):
        factor = TSeriesQ(torder, {0: QPoly.one(), 1: QPoly.monomial(j, -1)})
        denominator = denominator * factor
    right = numerator * denominator.inverse()
    bad = left.first_mismatch(right)
    return CarlitzCheck(bad is None, bad)
