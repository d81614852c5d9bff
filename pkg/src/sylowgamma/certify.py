"""Egyptian-fraction certificates: exact verification and bounded search.

A certificate is a set of prime powers q^e (distinct primes, none from the
forbidden set) claimed to satisfy sum 1/(q^e + 1) = target. Verification
works over the common denominator D, so a third party can re-check it by
adding integers.
"""

from __future__ import annotations

import bisect
import enum
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import CrossCheckError, Refusal
from .groups import BuiltinA5, Cyclic, GroupExpr, order_of
from .numerics import (
    PrimePower,
    format_rat,
    integer_root,
    is_prime,
    lcm_all,
    next_prime,
    parse_rat,
    primes_up_to,
    rat_sum,
)

DEFAULT_FORBIDDEN = frozenset({2, 3, 5})
DEFAULT_NODE_BUDGET = 10**8


@dataclass(frozen=True)
class Certificate:
    parts: tuple  # PrimePower, strictly increasing primes
    target: Fraction
    forbidden: frozenset = field(default=DEFAULT_FORBIDDEN, compare=False)

    def __post_init__(self):
        parts = tuple(p if isinstance(p, PrimePower) else PrimePower(*p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "target", Fraction(self.target))
        object.__setattr__(self, "forbidden", frozenset(self.forbidden))
        prev = 0
        for part in parts:
            if part.prime in self.forbidden:
                raise ValueError(f"part {part} uses forbidden prime {part.prime}")
            if part.prime <= prev:
                raise ValueError(f"part {part} breaks strictly increasing prime order")
            prev = part.prime
        if self.target < 0:
            raise ValueError("target must be nonnegative")

    @classmethod
    def from_primes(cls, primes: Iterable[int], target, forbidden=DEFAULT_FORBIDDEN) -> "Certificate":
        return cls(tuple(PrimePower(q) for q in sorted(primes)), Fraction(target), forbidden)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p.prime for p in self.parts)

    def terms(self) -> list[Fraction]:
        return [Fraction(1, p.value + 1) for p in self.parts]

    def sort_key(self):
        return tuple((p.prime, p.exponent) for p in self.parts)

    def to_json(self) -> dict:
        return {
            "target": format_rat(self.target),
            "parts": [{"q": p.prime, "e": p.exponent} for p in self.parts],
        }

    @classmethod
    def from_json(cls, data, forbidden=DEFAULT_FORBIDDEN) -> "Certificate":
        if isinstance(data, str):
            data = json.loads(data)
        parts = tuple(PrimePower(int(p["q"]), int(p["e"])) for p in data["parts"])
        return cls(parts, parse_rat(data["target"]), forbidden)

    def __str__(self):
        return "{" + ",".join(str(p) for p in self.parts) + "}"


@dataclass(frozen=True)
class PartitionWitness:
    common_denominator: int
    numerators: tuple
    total: int
    target_numerator: int

    @property
    def valid(self) -> bool:
        return self.total == self.target_numerator

    @property
    def deficit(self) -> Fraction:
        """target - sum, as an exact rational."""
        return Fraction(self.target_numerator - self.total, self.common_denominator)

    def to_json(self) -> dict:
        return {
            "denominator": self.common_denominator,
            "numerators": list(self.numerators),
            "total": self.total,
            "target_numerator": self.target_numerator,
            "valid": self.valid,
        }


def verify_certificate(c: Certificate) -> PartitionWitness:
    """Check sum 1/(q^e+1) == target by integer addition over the common denominator."""
    for part in c.parts:
        if not is_prime(part.prime) or part.exponent < 1 or part.prime in c.forbidden:
            raise ValueError(f"inadmissible part {part}")
    dens = [p.value + 1 for p in c.parts] + [c.target.denominator]
    D = lcm_all(dens)
    numerators = tuple(D // (p.value + 1) for p in c.parts)
    target_numerator = c.target.numerator * (D // c.target.denominator)
    return PartitionWitness(D, numerators, sum(numerators), target_numerator)


# ---------------------------------------------------------------- search


@dataclass(frozen=True)
class SearchBounds:
    max_prime: int
    max_parts: int
    max_exponent: int = 1
    forbidden: frozenset = DEFAULT_FORBIDDEN

    def __post_init__(self):
        object.__setattr__(self, "forbidden", frozenset(self.forbidden))
        for name in ("max_prime", "max_parts", "max_exponent"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")

    def admissible_primes(self) -> list[int]:
        return [q for q in primes_up_to(self.max_prime) if q not in self.forbidden]


class Residual(enum.Enum):
    FEASIBLE = "Feasible"
    PRUNE = "Prune"


def residual_bounds(
    target_remaining: Fraction,
    next_prime_: int,
    parts_remaining: int,
    *,
    max_prime: int | None = None,
    max_exponent: int = 1,
    forbidden: frozenset = DEFAULT_FORBIDDEN,
) -> Residual:
    """Decide whether a search node whose next candidate prime is `next_prime_` can still succeed.

    Only sound tests are used: a Prune answer means no completion exists.
    """
    r = Fraction(target_remaining)
    if r == 0:
        return Residual.FEASIBLE
    if r < 0 or parts_remaining <= 0:
        return Residual.PRUNE
    upcoming = []
    q = next_prime_
    while len(upcoming) < parts_remaining and (max_prime is None or q <= max_prime):
        if is_prime(q) and q not in forbidden:
            upcoming.append(q)
        q = next_prime(q)
    if not upcoming:
        return Residual.PRUNE
    if max_prime is not None:
        largest = [q for q in range(max_prime, upcoming[-1] - 1, -1) if is_prime(q) and q not in forbidden][0]
        if Fraction(1, largest**max_exponent + 1) > r:
            return Residual.PRUNE
    if rat_sum(Fraction(1, q + 1) for q in upcoming) < r:
        return Residual.PRUNE
    return Residual.FEASIBLE


class _Search:
    def __init__(self, target: Fraction, bounds: SearchBounds, node_budget: int):
        self.bounds = bounds
        self.budget = node_budget
        self.nodes = 0
        self.primes = bounds.admissible_primes()
        self.prime_pos = {q: i for i, q in enumerate(self.primes)}
        self.succ = [q + 1 for q in self.primes]
        n = len(self.primes)
        # window[k][j]: sum of 1/(P_t + 1) for t in j..j+k-1 (clipped), an upper bound on k parts
        rows = [[Fraction(0)] * (n + 1)]
        for k in range(1, bounds.max_parts + 1):
            row = [Fraction(0)] * (n + 1)
            for j in range(n - 1, -1, -1):
                row[j] = Fraction(1, self.succ[j]) + rows[k - 1][j + 1]
            rows.append(row)
        self.window = [[(w.numerator, w.denominator) for w in row] for row in rows]
        self.min_term = (0, 1)
        if self.primes:
            smallest = Fraction(1, self.primes[-1] ** bounds.max_exponent + 1)
            self.min_term = (smallest.numerator, smallest.denominator)
        self.target = target
        self.found: list[tuple] = []

    def run(self):
        t = self.target
        if t == 0:
            self.found.append(())
            return
        if self.primes:
            self._dfs(0, t.numerator, t.denominator, self.bounds.max_parts, [])

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise Refusal(
                f"search exceeded the node budget of {self.budget} nodes; "
                f"tighten --max-prime/--max-parts or raise --node-budget"
            )

    def _dfs(self, i, n, d, k, chosen):
        self._tick()
        if n == 0:
            self.found.append(tuple(chosen))
            return
        if k == 0 or i >= len(self.primes):
            return
        mn, md = self.min_term
        if n * md < mn * d:
            return
        max_e = self.bounds.max_exponent
        if k == 1:
            self._last(i, n, d, chosen)
            return
        start = i
        if max_e == 1:
            # first prime whose term 1/(q+1) fits into n/d
            start = max(i, bisect.bisect_left(self.succ, -(-d // n)))
        win = self.window[k]
        for j in range(start, len(self.primes)):
            wn, wd = win[j]
            if wn * d < n * wd:
                break
            q = self.primes[j]
            v = q
            for e in range(1, max_e + 1):
                if e > 1:
                    v *= q
                m = v + 1
                nn = n * m - d
                if nn < 0:
                    continue
                dd = d * m
                g = math.gcd(nn, dd)
                chosen.append((q, e))
                self._dfs(j + 1, nn // g, dd // g, k - 1, chosen)
                chosen.pop()

    def _last(self, i, n, d, chosen):
        """One part left: the remainder must itself be 1/(q^e + 1)."""
        if n != 1:
            return
        m = d - 1
        for e in range(1, self.bounds.max_exponent + 1):
            q = integer_root(m, e)
            if q is None:
                continue
            j = self.prime_pos.get(q)
            if j is not None and j >= i:
                self._tick()
                self.found.append(tuple(chosen) + ((q, e),))
                return


def search_certificates(
    target: Fraction, bounds: SearchBounds, node_budget: int = DEFAULT_NODE_BUDGET
) -> list[Certificate]:
    """Every certificate within `bounds` summing exactly to `target`, in canonical order."""
    target = Fraction(target)
    if target <= 0:
        raise ValueError("search target must be positive")
    s = _Search(target, bounds, node_budget)
    s.run()
    certs = [
        Certificate(tuple(PrimePower(q, e) for q, e in parts), target, bounds.forbidden)
        for parts in s.found
    ]
    certs.sort(key=Certificate.sort_key)
    for c in certs:
        if not verify_certificate(c).valid:
            raise CrossCheckError(f"search produced an invalid certificate {c}")
    return certs


def search_with_stats(target, bounds, node_budget=DEFAULT_NODE_BUDGET):
    target = Fraction(target)
    if target <= 0:
        raise ValueError("search target must be positive")
    s = _Search(target, bounds, node_budget)
    s.run()
    certs = sorted(
        (Certificate(tuple(PrimePower(q, e) for q, e in p), target, bounds.forbidden) for p in s.found),
        key=Certificate.sort_key,
    )
    return certs, s.nodes


# ---------------------------------------------------------------- groups from certificates


@dataclass(frozen=True)
class CertificateGroup:
    expr: GroupExpr
    prime_product: int  # M(Q)
    order: int  # |G(Q)| = 120 M(Q)


def certificate_to_group(c: Certificate) -> CertificateGroup:
    """A5 * C2 * prod C_q for a squarefree certificate of 4/9."""
    if c.target != Fraction(4, 9):
        raise ValueError(f"certificate target is {c.target}, expected 4/9")
    if any(p.exponent != 1 for p in c.parts):
        raise ValueError("certificate is not squarefree (some exponent > 1)")
    if any(p.prime in DEFAULT_FORBIDDEN for p in c.parts):
        raise ValueError("certificate uses one of the primes 2, 3, 5")
    if not verify_certificate(c).valid:
        raise ValueError(f"{c} does not sum to 4/9")
    expr = GroupExpr((BuiltinA5(), Cyclic(2)) + tuple(Cyclic(q) for q in c.primes))
    M = math.prod(c.primes)
    order = order_of(expr)
    if order != 120 * M:
        raise CrossCheckError(f"|G(Q)| = {order} but 120*M(Q) = {120 * M}")
    return CertificateGroup(expr, M, order)


# ---------------------------------------------------------------- file format


def format_certificate_file(c: Certificate, w: PartitionWitness | None = None) -> str:
    w = w or verify_certificate(c)
    lines = [f"target {format_rat(c.target)}"]
    for part, num in zip(c.parts, w.numerators):
        lines.append(f"{part.prime} {part.exponent} {num}")
    lines.append(f"denominator {w.common_denominator}")
    lines.append(f"total {w.total}")
    return "\n".join(lines) + "\n"


def parse_certificate_file(text: str, forbidden=DEFAULT_FORBIDDEN) -> tuple[Certificate, PartitionWitness]:
    """Read the line format back and check every stated integer against a fresh verification."""
    target = None
    parts, stated_nums = [], []
    stated_den = stated_total = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        try:
            if fields[0] == "target" and len(fields) == 2:
                target = parse_rat(fields[1])
            elif fields[0] == "denominator" and len(fields) == 2:
                stated_den = int(fields[1])
            elif fields[0] == "total" and len(fields) == 2:
                stated_total = int(fields[1])
            elif len(fields) == 3:
                q, e, num = map(int, fields)
                parts.append(PrimePower(q, e))
                stated_nums.append(num)
            else:
                raise ValueError("unrecognised line")
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}: {raw!r}") from None
    if target is None:
        raise ValueError("certificate file has no 'target' line")
    cert = Certificate(tuple(parts), target, forbidden)
    w = verify_certificate(cert)
    if stated_den is not None and stated_den != w.common_denominator:
        raise ValueError(f"stated denominator {stated_den} != {w.common_denominator}")
    if list(stated_nums) != list(w.numerators):
        raise ValueError(f"stated numerators {stated_nums} != {list(w.numerators)}")
    if stated_total is not None and stated_total != w.total:
        raise ValueError(f"stated total {stated_total} != {w.total}")
    return cert, w
