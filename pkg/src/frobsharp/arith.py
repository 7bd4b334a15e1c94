"""Exact integer primitives: consecutive p-power sums, valuations, base-p digits."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt


@lru_cache(maxsize=256)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for k in range(3, isqrt(n) + 1, 2):
        if n % k == 0:
            return False
    return True


@dataclass(frozen=True)
class Characteristic:
    """A prime characteristic p >= 2."""

    p: int

    def __post_init__(self):
        if isinstance(self.p, bool) or not isinstance(self.p, int):
            raise TypeError(f"characteristic must be an int, got {self.p!r}")
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def __int__(self) -> int:
        return self.p

    def __index__(self) -> int:
        return self.p


def as_prime(p: int | Characteristic) -> int:
    """Coerce ``p`` to a validated prime int."""
    if isinstance(p, Characteristic):
        return p.p
    return Characteristic(p).p


def p_sum(p: int | Characteristic, j: int, i: int) -> int:
    """Return p^j + ... + p^i, or 0 when i < j."""
    p = as_prime(p)
    if j < 0:
        raise ValueError(f"lower index must be >= 0, got {j}")
    if i < j:
        return 0
    return (p ** (i + 1) - p**j) // (p - 1)


def v_p(p: int | Characteristic, n: int) -> int:
    p = as_prime(p)
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    n = abs(n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def base_p_digits(p: int | Characteristic, d: int) -> list[int]:
    """Base-p digits of ``d``, least significant first; ``[]`` for 0."""
    p = as_prime(p)
    if d < 0:
        raise ValueError(f"expected a non-negative integer, got {d}")
    digits = []
    while d:
        d, r = divmod(d, p)
        digits.append(r)
    return digits


def is_power_of(p: int, x: int) -> bool:
    if x < 1:
        return False
    while x % p == 0:
        x //= p
    return x == 1


def consecutive_p_power_form(p: int | Characteristic, d: int) -> tuple[int, int] | None:
    """Return the unique (j, i) with d = p^j + ... + p^i, or None.

    Uses (p-1) * P_j^i = p^(i+1) - p^j: the lower index is the valuation of
    (p-1)d and the sum plus p^j must be a pure power of p.
    """
    p = as_prime(p)
    if d < 1:
        raise ValueError(f"expected a positive integer, got {d}")
    m = (p - 1) * d
    j = v_p(p, m)
    top = m + p**j
    if not is_power_of(p, top):
        return None
    i = v_p(p, top) - 1
    return (j, i)


def consecutive_p_power_form_scan(p: int | Characteristic, d: int) -> tuple[int, int] | None:
    """Exhaustive-scan version of :func:`consecutive_p_power_form`."""
    p = as_prime(p)
    j = 0
    while p**j <= d:
        i = j
        while (s := p_sum(p, j, i)) <= d:
            if s == d:
                return (j, i)
            i += 1
        j += 1
    return None


def ceil_log_p(p: int | Characteristic, x: int) -> int:
    """Smallest n >= 0 with p^n >= x, by integer comparison."""
    p = as_prime(p)
    if x < 1:
        raise ValueError(f"expected a positive integer, got {x}")
    n, power = 0, 1
    while power < x:
        power *= p
        n += 1
    return n
