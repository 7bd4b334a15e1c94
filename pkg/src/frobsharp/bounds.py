"""Admissibility, the pullback bound tau_p(d), its sharp refinement lambda_p(d),
the lemma lower bound and the separability bound.

Everything here is a function of the integer d = 2*delta/(p-1); no curve or
function-field data is involved.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import as_prime, ceil_log_p, consecutive_p_power_form, p_sum


class NonAdmissibleError(ValueError):
    """Raised when lambda_p is requested for d congruent to -1 mod p."""

    def __init__(self, p: int, d: int):
        super().__init__(f"d={d} is non-admissible for p={p} (d = -1 mod p)")
        self.p = p
        self.d = d


def is_admissible(p, d: int) -> bool:
    p = as_prime(p)
    _check_positive(d)
    return d % p != p - 1


def tau_piecewise(p, d: int) -> int:
    """tau_p(d) via the P-form / window description."""
    p = as_prime(p)
    _check_positive(d)
    form = consecutive_p_power_form(p, d)
    if form is not None:
        return form[1] + 1
    i = 0
    while p_sum(p, 0, i) < d:
        i += 1
    # here P_0^(i-1) < d < P_0^i; equality would have been a P-form
    return i


def tau_log(p, d: int) -> int:
    """tau_p(d) via the ceiling-logarithm closed form."""
    p = as_prime(p)
    _check_positive(d)
    n = ceil_log_p(p, (p - 1) * d + 1)
    if consecutive_p_power_form(p, d) is None:
        n -= 1
    return n


tau = tau_piecewise


@dataclass(frozen=True)
class Sharp:
    def __str__(self) -> str:
        return "Sharp"


@dataclass(frozen=True)
class NonSharp:
    """lambda_p(d) = tau_p(d) - 1, witnessed by the window index ``i``."""

    i: int

    def __str__(self) -> str:
        return f"NonSharp({self.i})"


@dataclass(frozen=True)
class BoundReport:
    p: int
    d: int
    admissible: bool
    r: int | None
    tau: int
    lam: int | None
    classification: Sharp | NonSharp | None

    @property
    def witness_i(self) -> int | None:
        if isinstance(self.classification, NonSharp):
            return self.classification.i
        return None

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "d": self.d,
            "admissible": self.admissible,
            "r": self.r,
            "tau": self.tau,
            "lambda": self.lam,
            "classification": None if self.classification is None else str(self.classification),
            "witness_i": self.witness_i,
        }


def exclusion_set(p, r: int, i: int) -> set[int]:
    """{ r P_0^(i-1) + P_j^(i-1) : 0 < j <= i }, with P_i^(i-1) = 0."""
    base = r * p_sum(p, 0, i - 1)
    return {base + p_sum(p, j, i - 1) for j in range(1, i + 1)}


def is_nonsharp_witness(p, d: int, i: int) -> bool:
    """Independent re-check of a NonSharp(i) classification."""
    p = as_prime(p)
    r = d % p
    low = p_sum(p, 0, i - 1)
    return i > 1 and low < d < (r + 1) * low and d not in exclusion_set(p, r, i)


def lambda_p(p, d: int) -> BoundReport:
    """The sharp bound lambda_p(d) together with tau_p(d) and the witness."""
    p = as_prime(p)
    _check_positive(d)
    if not is_admissible(p, d):
        raise NonAdmissibleError(p, d)
    r = d % p
    t = tau_piecewise(p, d)
    witnesses = []
    i = 2
    # P_0^(i-1) < d forces i - 1 < tau
    while p_sum(p, 0, i - 1) < d:
        if is_nonsharp_witness(p, d, i):
            witnesses.append(i)
        i += 1
    assert len(witnesses) <= 1, f"multiple windows {witnesses} for p={p}, d={d}"
    if witnesses:
        assert witnesses[0] == t, (p, d, witnesses, t)
        return BoundReport(p, d, True, r, t, t - 1, NonSharp(witnesses[0]))
    return BoundReport(p, d, True, r, t, t, Sharp())


def report(p, d: int) -> BoundReport:
    """Like :func:`lambda_p` but total: non-admissible d get an empty report."""
    p = as_prime(p)
    _check_positive(d)
    if is_admissible(p, d):
        return lambda_p(p, d)
    return BoundReport(p, d, False, None, tau_piecewise(p, d), None, None)


def lemma_lower_bound(p, d: int) -> int:
    """1 + the largest i > 0 with r P_0^i + P_1^i - 2p < d (or 1 if none)."""
    p = as_prime(p)
    _check_positive(d)
    if not is_admissible(p, d):
        raise NonAdmissibleError(p, d)
    r = d % p
    best = 0
    i = 1
    # the left-hand side is strictly increasing in i
    while r * p_sum(p, 0, i) + p_sum(p, 1, i) - 2 * p < d:
        best = i
        i += 1
    return best + 1


@dataclass(frozen=True)
class SeparabilityQuery:
    delta: int
    sep_degree: int
    p: int

    def __post_init__(self):
        as_prime(self.p)
        if self.delta < 0:
            raise ValueError(f"delta must be non-negative, got {self.delta}")
        if self.sep_degree < 1:
            raise ValueError(f"separable degree must be positive, got {self.sep_degree}")
        if (2 * self.delta) % ((self.p - 1) * self.sep_degree):
            raise ValueError(
                f"2*delta={2 * self.delta} is not divisible by (p-1)*sep_degree="
                f"{(self.p - 1) * self.sep_degree}"
            )

    @property
    def reduced_d(self) -> int:
        return 2 * self.delta // ((self.p - 1) * self.sep_degree)


def sep_bound(q: SeparabilityQuery) -> int:
    """Number of pullbacks after which the image point is separable.

    A smooth point (delta = 0) needs none, so this returns 0 there.
    """
    if q.delta == 0:
        return 0
    return lambda_p(q.p, q.reduced_d).lam


def _check_positive(d: int) -> None:
    if d < 1:
        raise ValueError(f"expected a positive integer, got {d}")
