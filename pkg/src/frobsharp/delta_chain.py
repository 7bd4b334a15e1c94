"""Singularity-degree recurrence over finite towers of Frobenius pullbacks.

A chain records, for levels n = 0..h, the geometric delta-invariant of the
restricted prime and its residue degree.  Step n links level n to level n+1:

    delta_n = p * delta_(n+1) + (p-1)/2 * v_n

where v_n is the order of the relevant exact differential at the rational
top.  Residue degrees multiply by p across unramified steps.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction

from .arith import as_prime, p_sum


SCHEMA = "delta-chain/1"


class Kind(str, enum.Enum):
    RAMIFIED = "Ramified"
    UNRAMIFIED = "Unramified"


class ChainError(ValueError):
    pass


@dataclass(frozen=True)
class ExtensionStep:
    level: int
    kind: Kind
    diff_order: int

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.level < 0:
            raise ChainError(f"level must be >= 0, got {self.level}")
        if self.diff_order < 0:
            raise ChainError(f"differential order must be >= 0, got {self.diff_order}")


@dataclass(frozen=True)
class DeltaChain:
    p: int
    height: int
    steps: tuple[ExtensionStep, ...]  # levels h-1 down to 0
    deltas: tuple[int, ...]  # delta_0 .. delta_h
    degrees: tuple[int, ...]  # deg_0 .. deg_h

    @property
    def total_delta(self) -> int:
        return self.deltas[0]

    @property
    def differences(self) -> tuple[int, ...]:
        return tuple(a - b for a, b in zip(self.deltas, self.deltas[1:]))

    def step(self, level: int) -> ExtensionStep:
        return self.steps[self.height - 1 - level]

    def check(self) -> None:
        """Raise :class:`ChainError` unless every chain invariant holds."""
        p, h = self.p, self.height
        if self.deltas[h] != 0 or self.degrees[h] != 1:
            raise ChainError("top of the chain must be rational with delta 0")
        for n in range(h):
            st = self.step(n)
            if 2 * self.deltas[n] != 2 * p * self.deltas[n + 1] + (p - 1) * st.diff_order:
                raise ChainError(f"recurrence fails at level {n}")
            factor = p if st.kind is Kind.UNRAMIFIED else 1
            if self.degrees[n] != factor * self.degrees[n + 1]:
                raise ChainError(f"degree rule fails at level {n}")
        diffs = self.differences
        for n, gap in enumerate(diffs):
            if gap < 0:
                raise ChainError(f"delta increases at level {n}")
            if p > 2 and gap % ((p - 1) // 2):
                raise ChainError(f"difference at level {n} not divisible by (p-1)/2")
        for n in range(len(diffs) - 1):
            if p * diffs[n + 1] > diffs[n]:
                raise ChainError(f"differences do not decay at level {n}")
        if sum(diffs) != self.deltas[0]:
            raise ChainError("differences do not telescope to delta_0")

    def to_json_dict(self, expected_d: int | None = None, family_params=None) -> dict:
        doc = {
            "schema": SCHEMA,
            "p": self.p,
            "height": self.height,
            "steps": [
                {"level": st.level, "kind": st.kind.value, "diff_order": st.diff_order}
                for st in self.steps
            ],
            "deltas": list(self.deltas),
            "degrees": list(self.degrees),
            "total_delta": self.total_delta,
        }
        if expected_d is not None:
            doc["expected_d"] = expected_d
        if family_params is not None:
            doc["family_params"] = family_params.to_dict()
        return doc


def simulate(p, height: int, steps) -> DeltaChain:
    """Run the recurrence from the rational top down to level 0."""
    p = as_prime(p)
    if height < 1:
        raise ChainError(f"height must be >= 1, got {height}")
    by_level: dict[int, ExtensionStep] = {}
    for st in steps:
        if st.level in by_level:
            raise ChainError(f"duplicate step for level {st.level}")
        by_level[st.level] = st
    if sorted(by_level) != list(range(height)):
        raise ChainError(f"steps must cover levels 0..{height - 1} exactly, got {sorted(by_level)}")
    if p == 2:
        odd = [lv for lv, st in by_level.items() if st.diff_order % 2]
        if odd:
            raise ChainError(f"p=2 needs even differential orders, odd at levels {sorted(odd)}")

    deltas = [0] * (height + 1)
    degrees = [1] * (height + 1)
    for n in range(height - 1, -1, -1):
        st = by_level[n]
        # (p-1)*v is even here, for p=2 by the parity check above
        deltas[n] = p * deltas[n + 1] + (p - 1) * st.diff_order // 2
        degrees[n] = degrees[n + 1] * (p if st.kind is Kind.UNRAMIFIED else 1)

    unrolled = Fraction(p - 1, 2) * sum(by_level[n].diff_order * p**n for n in range(height))
    assert deltas[0] == unrolled, (deltas[0], unrolled)

    chain = DeltaChain(
        p=p,
        height=height,
        steps=tuple(by_level[n] for n in range(height - 1, -1, -1)),
        deltas=tuple(deltas),
        degrees=tuple(degrees),
    )
    chain.check()
    return chain


@dataclass(frozen=True)
class ExampleParams:
    family: str
    p: int
    i: int
    j: int
    r: int
    ell: int
    r_prime: int = 0

    def __post_init__(self):
        as_prime(self.p)
        if self.family not in ("A", "B"):
            raise ValueError(f"family must be 'A' or 'B', got {self.family!r}")
        if self.family == "A" and not self.i >= self.j > 0:
            raise ValueError(f"family A requires i >= j > 0, got i={self.i}, j={self.j}")
        if self.family == "B" and not self.i > self.j > 0:
            raise ValueError(f"family B requires i > j > 0, got i={self.i}, j={self.j}")
        if not 0 <= self.r <= self.p - 2:
            raise ValueError(f"r must lie in 0..{self.p - 2}, got {self.r}")
        if not 0 <= self.r_prime <= self.p - 2:
            raise ValueError(f"r' must lie in 0..{self.p - 2}, got {self.r_prime}")
        if self.family == "A" and self.r_prime:
            raise ValueError("r' only applies to family B")
        if self.ell < 0:
            raise ValueError(f"ell must be >= 0, got {self.ell}")

    def expected_d(self) -> int:
        p, i, j, r, ell = self.p, self.i, self.j, self.r, self.ell
        if self.family == "A":
            return r * p_sum(p, 0, i) + ell * p_sum(p, j, i)
        return r * p_sum(p, 0, i) + p_sum(p, j, i) + self.r_prime * p**j + ell * p ** (j + 1)

    def steps(self) -> list[ExtensionStep]:
        p, i, j, r, ell = self.p, self.i, self.j, self.r, self.ell
        out = []
        for n in range(i + 1):
            if self.family == "A":
                v = r + ell * p**j if n <= i - j else r
                out.append(ExtensionStep(n, Kind.UNRAMIFIED, v))
            elif n == 0:
                v = (self.r_prime + 1) * p**j + r + ell * p ** (j + 1)
                out.append(ExtensionStep(0, Kind.UNRAMIFIED, v))
            elif n <= i - j:
                out.append(ExtensionStep(n, Kind.RAMIFIED, p**j + r))
            else:
                out.append(ExtensionStep(n, Kind.UNRAMIFIED, r))
        return out

    def to_dict(self) -> dict:
        doc = {"family": self.family, "p": self.p, "i": self.i, "j": self.j, "r": self.r}
        if self.family == "B":
            doc["r_prime"] = self.r_prime
        doc["ell"] = self.ell
        return doc


def example_family(params: ExampleParams) -> tuple[DeltaChain, int]:
    """Build the tower of one of the two example families.

    Both towers have height i+1 with level i non-rational.
    """
    chain = simulate(params.p, params.i + 1, params.steps())
    d = params.expected_d()
    if 2 * chain.total_delta != (params.p - 1) * d:
        raise ChainError(f"chain total {chain.total_delta} does not match d={d}")
    return chain, d


def non_rationality_witness(chain: DeltaChain, params: ExampleParams | int) -> bool:
    """True iff level i has residue degree > 1 and level i+1 is rational."""
    i = params.i if isinstance(params, ExampleParams) else params
    if not 0 <= i < chain.height:
        return False
    return chain.degrees[i] > 1 and chain.degrees[i + 1] == 1


def dumps(chain: DeltaChain, expected_d: int | None = None, params: ExampleParams | None = None) -> str:
    return json.dumps(chain.to_json_dict(expected_d, params), indent=2) + "\n"


def loads(text: str) -> DeltaChain:
    """Parse a chain document and re-simulate it from its steps."""
    doc = json.loads(text)
    if doc.get("schema") != SCHEMA:
        raise ChainError(f"unsupported schema {doc.get('schema')!r}")
    steps = [ExtensionStep(s["level"], Kind(s["kind"]), s["diff_order"]) for s in doc["steps"]]
    chain = simulate(doc["p"], doc["height"], steps)
    if list(chain.deltas) != doc["deltas"] or list(chain.degrees) != doc["degrees"]:
        raise ChainError("stored deltas/degrees disagree with the recurrence")
    return chain
