"""Closed-form gamma for A5 x N with N nilpotent.

N is described by exponents: |N_2| = 2^a, |N_3| = 3^b, |N_5| = 5^c and
|N_q| = q^e_q for the new primes q. Nothing here calls the generic engine;
the two are compared in the tests.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .groups import BuiltinA5, Cyclic, GroupExpr
from .numerics import format_rat, is_power_of, is_prime, parse_rat, rat_sum

OLD_PRIMES = (2, 3, 5)
GAMMA_A5 = Fraction(9, 2)

# Sylow data of A5 as (nu, sigma) per old prime.
_A5_DATA = {2: (5, 4), 3: (10, 3), 5: (6, 5)}


@dataclass(frozen=True)
class NilpotentSpec:
    a: int = 0
    b: int = 0
    c: int = 0
    new_parts: tuple = field(default=())  # sorted ((q, e_q), ...)

    def __post_init__(self):
        for name in ("a", "b", "c"):
            if getattr(self, name) < 0:
                raise ValueError(f"exponent {name} must be >= 0")
        parts = self.new_parts
        if isinstance(parts, Mapping):
            parts = parts.items()
        parts = tuple(sorted((int(q), int(e)) for q, e in parts))
        qs = [q for q, _ in parts]
        if len(set(qs)) != len(qs):
            raise ValueError(f"repeated new prime in {qs}")
        for q, e in parts:
            if not is_prime(q):
                raise ValueError(f"new part {q} is not prime")
            if q in OLD_PRIMES:
                raise ValueError(f"new part {q} must avoid 2, 3, 5")
            if e < 1:
                raise ValueError(f"exponent of {q} must be >= 1")
        object.__setattr__(self, "new_parts", parts)

    @property
    def old_exponents(self) -> dict[int, int]:
        return {2: self.a, 3: self.b, 5: self.c}

    def is_trivial(self) -> bool:
        return self.a == self.b == self.c == 0 and not self.new_parts

    def to_expr(self) -> GroupExpr:
        """A5 * C2^a * C3^b * C5^c * prod Cq^e (zero exponents omitted)."""
        factors = [BuiltinA5()]
        for p, k in self.old_exponents.items():
            if k:
                factors.append(Cyclic(p, k))
        factors.extend(Cyclic(q, e) for q, e in self.new_parts)
        return GroupExpr(tuple(factors))

    def with_exponent(self, which, value: int) -> "NilpotentSpec":
        """Copy with one exponent replaced; `which` is "a", "b", "c" or a new prime."""
        if which in ("a", "b", "c"):
            return NilpotentSpec(**{**self._kw(), which: value})
        parts = dict(self.new_parts)
        parts[which] = value
        return NilpotentSpec(self.a, self.b, self.c, tuple(parts.items()))

    def _kw(self):
        return {"a": self.a, "b": self.b, "c": self.c, "new_parts": self.new_parts}


def defect(p: int, d: int) -> Fraction:
    """Loss of the A5 p-term when the layer's Sylow p-subgroup has order d."""
    if p not in OLD_PRIMES:
        raise ValueError(f"defects are defined for p in (2, 3, 5), not {p}")
    if not is_power_of(d, p):
        raise ValueError(f"{d} is not a power of {p}")
    if p == 2:
        return Fraction(4 * (d - 1), 4 * d + 1)
    if p == 3:
        return Fraction(15 * (d - 1), 2 * (3 * d + 1))
    return Fraction(5 * (d - 1), 5 * d + 1)


def defect_by_difference(p: int, d: int) -> Fraction:
    """Same quantity from its definition: old A5 term minus the enlarged one."""
    if not is_power_of(d, p):
        raise ValueError(f"{d} is not a power of {p}")
    nu, sigma = _A5_DATA[p]
    return Fraction(nu, sigma + 1) - Fraction(nu, sigma * d + 1)


@dataclass(frozen=True)
class DefectReport:
    d2: Fraction
    d3: Fraction
    d5: Fraction
    gain: Fraction
    gamma_value: Fraction

    @property
    def balanced(self) -> bool:
        return self.gain == self.d2 + self.d3 + self.d5

    @property
    def total_defect(self) -> Fraction:
        return self.d2 + self.d3 + self.d5

    def to_json(self) -> dict:
        return {
            "d2": format_rat(self.d2),
            "d3": format_rat(self.d3),
            "d5": format_rat(self.d5),
            "gain": format_rat(self.gain),
            "gamma": format_rat(self.gamma_value),
            "balanced": self.balanced,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data) -> "DefectReport":
        if isinstance(data, str):
            data = json.loads(data)
        rep = cls(*(parse_rat(data[k]) for k in ("d2", "d3", "d5", "gain", "gamma")))
        if "balanced" in data and data["balanced"] != rep.balanced:
            raise ValueError("'balanced' flag inconsistent with the defects and gain")
        return rep


def gamma_a5_times(spec: NilpotentSpec) -> DefectReport:
    d2 = defect(2, 2**spec.a)
    d3 = defect(3, 3**spec.b)
    d5 = defect(5, 5**spec.c)
    gain = rat_sum(Fraction(1, q**e + 1) for q, e in spec.new_parts)
    # direct prime-power formula, kept separate from the defect route
    value = (
        Fraction(5, 2 ** (spec.a + 2) + 1)
        + Fraction(10, 3 ** (spec.b + 1) + 1)
        + Fraction(6, 5 ** (spec.c + 1) + 1)
        + gain
    )
    return DefectReport(d2, d3, d5, gain, value)


class Threshold(enum.Enum):
    BELOW = "Below"
    EQUAL = "Equal"
    ABOVE = "Above"


def theta(Q: Iterable[int]) -> Fraction:
    return rat_sum(Fraction(1, q + 1) for q in Q)


def threshold_classify(Q: Iterable[int]) -> tuple[Threshold, Fraction]:
    """Compare sum 1/(q+1) over Q with the C2 defect 4/9; returns (class, difference)."""
    Q = list(Q)
    if len(set(Q)) != len(Q):
        raise ValueError(f"repeated prime in {sorted(Q)}")
    for q in Q:
        if not is_prime(q) or q in OLD_PRIMES:
            raise ValueError(f"{q} is not an admissible new prime")
    diff = theta(Q) - Fraction(4, 9)
    if diff < 0:
        return Threshold.BELOW, diff
    if diff > 0:
        return Threshold.ABOVE, diff
    return Threshold.EQUAL, diff


class Sidedness(enum.Enum):
    TRIVIAL = "Trivial"
    OLD_ONLY_BELOW = "OldOnlyBelow"
    NEW_ONLY_ABOVE = "NewOnlyAbove"
    MIXED = "Mixed"


def one_sided_check(spec: NilpotentSpec) -> Sidedness:
    old = spec.a or spec.b or spec.c
    new = bool(spec.new_parts)
    if not old and not new:
        return Sidedness.TRIVIAL
    if old and not new:
        return Sidedness.OLD_ONLY_BELOW
    if new and not old:
        return Sidedness.NEW_ONLY_ABOVE
    return Sidedness.MIXED


SPECIAL_CASES = (
    NilpotentSpec(0, 0, 0),
    NilpotentSpec(1, 0, 0),
    NilpotentSpec(0, 1, 0),
    NilpotentSpec(0, 0, 1),
)
