"""Geometrically decaying partitions of d and the lower-bound decompositions.

A partition here is d = d_1 + ... + d_s with p * d_(k+1) <= d_k.  The
maximum of s + min v_p(d_k) over such partitions is tau_p(d); the search in
:func:`tau_oracle` computes it by enumeration and is kept independent of the
closed forms in :mod:`frobsharp.bounds`.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from typing import Iterator

from .arith import as_prime, p_sum, v_p
from .bounds import NonAdmissibleError, is_admissible


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]
    p: int

    def __post_init__(self):
        if not self.parts or any(x < 1 for x in self.parts):
            raise ValueError(f"parts must be positive and non-empty: {self.parts}")
        for a, b in zip(self.parts, self.parts[1:]):
            if self.p * b > a:
                raise ValueError(f"decay violated: {self.p}*{b} > {a}")

    @property
    def total(self) -> int:
        return sum(self.parts)

    def score(self) -> int:
        """s + min v_p(d_k)."""
        return len(self.parts) + min(v_p(self.p, x) for x in self.parts)


def _max_tail(p: int, cap: int) -> int:
    """Largest sum of a decaying sequence whose first part is <= cap."""
    total = 0
    while cap:
        total += cap
        cap //= p
    return total


def enumerate_partitions(p, d: int) -> Iterator[Partition]:
    """Yield every decaying partition of d once, lexicographically decreasing."""
    p = as_prime(p)
    if d < 1:
        raise ValueError(f"expected a positive integer, got {d}")

    def walk(remaining: int, cap: int, prefix: tuple[int, ...]):
        if remaining == 0:
            yield prefix
            return
        for first in range(min(cap, remaining), 0, -1):
            rest = remaining - first
            if rest > _max_tail(p, first // p):
                # smaller first parts only shrink the tail capacity
                break
            yield from walk(rest, first // p, prefix + (first,))

    for parts in walk(d, d, ()):
        yield Partition(parts, p)


def count_partitions(p, d: int) -> int:
    return sum(1 for _ in enumerate_partitions(p, d))


def _more_parts(p: int, remaining: int, cap: int) -> int:
    """Upper bound on how many further parts fit below ``cap``."""
    # k parts need p^(k-1) <= cap and P_0^(k-1) <= remaining
    k = 0
    need, power = 1, 1
    while power <= cap and need <= remaining:
        k += 1
        power *= p
        need += power
    return k


def max_length(p, n: int) -> int:
    """Largest s over decaying partitions of n, by depth-first branch and bound."""
    p = as_prime(p)
    best = 0

    def walk(remaining: int, cap: int, s: int) -> bool:
        nonlocal best
        if remaining == 0:
            best = max(best, s)
            return False
        ceiling = s + _more_parts(p, remaining, cap)
        if ceiling <= best:
            return False
        hi = min(cap, remaining)
        lo = bisect_left(
            range(1, hi + 1), True, key=lambda f: remaining - f <= _max_tail(p, f // p)
        ) + 1
        # small leading parts leave room for more parts, so try them first
        for first in range(lo, hi + 1):
            walk(remaining - first, first // p, s + 1)
            if best == ceiling:
                return True
        return False

    walk(n, n, 0)
    return best


def tau_oracle(p, d: int) -> int:
    """max over decaying partitions of d of s + min v_p(d_k).

    Partitions whose parts are all divisible by p^m are p^m times decaying
    partitions of d / p^m, so the maximum splits over m.
    """
    p = as_prime(p)
    if d < 1:
        raise ValueError(f"expected a positive integer, got {d}")
    best = 0
    for m in range(v_p(p, d), -1, -1):
        n = d // p**m
        if m + _more_parts(p, n, n) <= best:
            continue
        best = max(best, m + max_length(p, n))
    return best


def tau_oracle_brute(p, d: int) -> int:
    """Plain maximum over :func:`enumerate_partitions`; only for small d."""
    return max(part.score() for part in enumerate_partitions(p, d))


@dataclass(frozen=True)
class FormA:
    """d = r P_0^i + ell p^i."""

    i: int
    r: int
    ell: int

    def value(self, p) -> int:
        return self.r * p_sum(p, 0, self.i) + self.ell * as_prime(p) ** self.i


@dataclass(frozen=True)
class FormB:
    """d = r P_0^i + P_j^i + r' p^j + ell p^(j+1), with 0 < j < i."""

    i: int
    j: int
    r: int
    r_prime: int
    ell: int

    def value(self, p) -> int:
        p = as_prime(p)
        return (
            self.r * p_sum(p, 0, self.i)
            + p_sum(p, self.j, self.i)
            + self.r_prime * p**self.j
            + self.ell * p ** (self.j + 1)
        )


LemmaRepresentation = FormA | FormB


def lemma_hypothesis(p, d: int, i: int) -> bool:
    """r P_0^i + P_1^i - 2p < d, with r = d mod p."""
    p = as_prime(p)
    return i > 0 and (d % p) * p_sum(p, 0, i) + p_sum(p, 1, i) - 2 * p < d


def decompose_lemma(p, d: int, i: int) -> LemmaRepresentation:
    """Write d in one of the two shapes realised by the example families.

    The shape is picked by the valuation of e = d - r P_0^i: if p^i divides e
    the first shape applies, otherwise j = v_p(e) gives the second.
    """
    p = as_prime(p)
    if d < 1:
        raise ValueError(f"expected a positive integer, got {d}")
    if not is_admissible(p, d):
        raise NonAdmissibleError(p, d)
    if not lemma_hypothesis(p, d, i):
        raise ValueError(f"d={d} does not satisfy the lemma hypothesis for p={p}, i={i}")
    r = d % p
    e = d - r * p_sum(p, 0, i)
    if e == 0 or v_p(p, e) >= i:
        rep = FormA(i, r, e // p**i)
        assert rep.ell >= 0
        return rep
    j = v_p(p, e)
    assert 0 < j < i, (p, d, i, j)
    r_prime = (e // p**j) % p - 1
    num = e - p_sum(p, j, i) - r_prime * p**j
    assert num % p ** (j + 1) == 0
    rep = FormB(i, j, r, r_prime, num // p ** (j + 1))
    assert rep.ell >= 0 and 0 <= r_prime <= p - 2
    return rep
