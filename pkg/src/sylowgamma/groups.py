"""Group atoms, direct-product expressions and their Sylow profiles.

Grammar (whitespace-insensitive)::

    expr    := "1" | atom ("*" atom)*
    atom    := "A5" | cyclic | layer | perm
    cyclic  := "C" integer ["^" integer]      C7, C2^3, C9
    layer   := "N{" p ":" order ("," p ":" order)* "}"
    perm    := "P[" cycles (";" cycles)* "]"

A profile only stores primes that divide the group order. Primes outside
it behave as (nu, sigma) = (1, 1) when profiles are multiplied.
"""

from __future__ import annotations

import json
import math
import threading
from dataclasses import dataclass
from typing import Iterable, Mapping, Union

from .errors import CrossCheckError, GroupSyntaxError, Refusal
from .numerics import is_power_of, is_prime, p_part, prime_power_decompose
from . import perm as _perm


@dataclass(frozen=True)
class SylowDatum:
    prime: int
    nu: int
    sigma: int

    def __post_init__(self):
        if not is_prime(self.prime):
            raise ValueError(f"{self.prime} is not prime")
        if self.sigma < self.prime or not is_power_of(self.sigma, self.prime):
            raise ValueError(f"sigma={self.sigma} is not a positive power of {self.prime}")
        if self.nu < 1:
            raise ValueError(f"nu must be >= 1, got {self.nu}")
        if self.nu % self.prime != 1 % self.prime:
            raise CrossCheckError(
                f"Sylow congruence fails: nu_{self.prime} = {self.nu} is not 1 mod {self.prime}"
            )

    def to_json(self) -> dict:
        return {"p": self.prime, "nu": self.nu, "sigma": self.sigma}


class SylowProfile(Mapping):
    """Immutable map prime -> SylowDatum, iterated in increasing prime order."""

    __slots__ = ("_data",)

    def __init__(self, entries: Iterable[SylowDatum] = ()):
        data = {}
        for d in entries:
            if d.prime in data:
                raise ValueError(f"duplicate prime {d.prime} in profile")
            data[d.prime] = d
        self._data = dict(sorted(data.items()))

    def __getitem__(self, p):
        return self._data[p]

    def __iter__(self):
        return iter(self._data)

    def __len__(self):
        return len(self._data)

    def __eq__(self, other):
        if isinstance(other, SylowProfile):
            return self._data == other._data
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._data.values()))

    def __repr__(self):
        body = ", ".join(f"{p}:({d.nu},{d.sigma})" for p, d in self._data.items())
        return "SylowProfile{" + body + "}"

    def datum(self, p: int) -> SylowDatum | None:
        return self._data.get(p)

    def sigma_product(self) -> int:
        return math.prod(d.sigma for d in self._data.values())

    def to_json(self) -> list[dict]:
        return [d.to_json() for d in self._data.values()]

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data) -> "SylowProfile":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(SylowDatum(int(d["p"]), int(d["nu"]), int(d["sigma"])) for d in data)

    @classmethod
    def from_triples(cls, triples: Mapping[int, tuple[int, int]]) -> "SylowProfile":
        """Shorthand: {2: (5, 4), 3: (10, 3)} -> profile."""
        return cls(SylowDatum(p, nu, sigma) for p, (nu, sigma) in triples.items())


# ---------------------------------------------------------------- atoms


@dataclass(frozen=True)
class BuiltinA5:
    @property
    def order(self) -> int:
        return 60

    def render(self) -> str:
        return "A5"


# Fixed Sylow data of A5; the perm oracle re-derives it independently in tests.
A5_PROFILE = SylowProfile.from_triples({2: (5, 4), 3: (10, 3), 5: (6, 5)})


@dataclass(frozen=True)
class NilpotentLayer:
    """A nilpotent group known only through the orders of its Sylow subgroups."""

    orders: tuple  # sorted ((p, |N_p|), ...)

    def __post_init__(self):
        seen = set()
        for p, order in self.orders:
            if not is_prime(p):
                raise ValueError(f"layer key {p} is not prime")
            if p in seen:
                raise ValueError(f"layer key {p} repeated")
            seen.add(p)
            if order <= 1 or not is_power_of(order, p):
                raise ValueError(f"layer order {order} is not a proper power of {p}")
        if list(self.orders) != sorted(self.orders):
            object.__setattr__(self, "orders", tuple(sorted(self.orders)))

    @classmethod
    def of(cls, orders: Mapping[int, int]) -> "NilpotentLayer":
        return cls(tuple(sorted(orders.items())))

    @property
    def order(self) -> int:
        return math.prod(o for _, o in self.orders)

    def render(self) -> str:
        return "N{" + ", ".join(f"{p}:{o}" for p, o in self.orders) + "}"


@dataclass(frozen=True)
class Cyclic(NilpotentLayer):
    """C_{p^e}: the single-prime nilpotent layer {p: p^e}."""

    def __init__(self, prime: int, exponent: int = 1):
        if exponent < 1:
            raise ValueError(f"cyclic exponent must be >= 1, got {exponent}")
        if not is_prime(prime):
            raise ValueError(f"cyclic base {prime} is not prime")
        object.__setattr__(self, "orders", ((prime, prime**exponent),))

    @property
    def prime(self) -> int:
        return self.orders[0][0]

    @property
    def exponent(self) -> int:
        p, o = self.orders[0]
        e = 0
        while o > 1:
            o //= p
            e += 1
        return e

    def render(self) -> str:
        return f"C{self.prime}" if self.exponent == 1 else f"C{self.prime}^{self.exponent}"


@dataclass(frozen=True)
class PermAtom:
    """A group given by permutation generators (0-based image tuples on `degree` points)."""

    degree: int
    generators: tuple

    @classmethod
    def from_cycles(cls, gens_cycles: list[list[list[int]]]) -> "PermAtom":
        degree = max([max(c) for cyc in gens_cycles for c in cyc if len(c) > 1] or [1])
        if degree > _perm.MAX_DEGREE:
            raise Refusal(f"permutation degree {degree} exceeds {_perm.MAX_DEGREE}")
        gens = []
        for cycles in gens_cycles:
            need = max([max(c) for c in cycles] or [1])
            g = _perm.perm_from_cycles(cycles, max(need, degree))
            gens.append(g[:degree])
        return cls(degree, tuple(gens))

    def group(self) -> _perm.PermGroup:
        return _perm_group_cached(self)

    @property
    def order(self) -> int:
        return self.group().order

    def render(self) -> str:
        return "P[" + ";".join(_perm.format_perm(g) for g in self.generators) + "]"


GroupAtom = Union[BuiltinA5, NilpotentLayer, Cyclic, PermAtom]

_cache_lock = threading.Lock()
_group_cache: dict = {}
_profile_cache: dict = {}


def _perm_group_cached(atom: PermAtom) -> _perm.PermGroup:
    # Fill is idempotent: two racing threads compute equal groups.
    G = _group_cache.get(atom)
    if G is None:
        G = _perm.enumerate_group(atom.generators, atom.degree)
        with _cache_lock:
            G = _group_cache.setdefault(atom, G)
    return G


@dataclass(frozen=True)
class GroupExpr:
    factors: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))

    def render(self) -> str:
        return render_group(self)

    def __str__(self):
        return render_group(self)

    def __mul__(self, other: "GroupExpr") -> "GroupExpr":
        return GroupExpr(self.factors + other.factors)


# ---------------------------------------------------------------- parser


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg, pos=None):
        raise GroupSyntaxError(msg, self.text, self.pos if pos is None else pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, s: str):
        self.skip_ws()
        if not self.text.startswith(s, self.pos):
            self.error(f"expected {s!r}")
        self.pos += len(s)

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an integer")
        return int(self.text[start : self.pos])

    def parse(self) -> GroupExpr:
        if self.peek() == "":
            self.error("empty group expression")
        if self.peek() == "1":
            self.pos += 1
            if self.peek() != "":
                self.error("trailing input after trivial group '1'")
            return GroupExpr(())
        factors = [self.atom()]
        while self.peek() == "*":
            self.pos += 1
            factors.append(self.atom())
        if self.peek() != "":
            self.error(f"unexpected {self.peek()!r}")
        return GroupExpr(tuple(factors))

    def atom(self):
        c = self.peek()
        start = self.pos
        if self.text.startswith("A5", self.pos):
            self.pos += 2
            return BuiltinA5()
        if c == "C":
            self.pos += 1
            n = self.integer()
            if self.peek() == "^":
                self.pos += 1
                e = self.integer()
                if not is_prime(n):
                    self.error(f"cyclic base {n} must be prime when an exponent is given", start)
                if e < 1:
                    self.error("cyclic exponent must be >= 1", start)
                return Cyclic(n, e)
            pe = prime_power_decompose(n)
            if pe is None:
                self.error(
                    f"C{n}: order is not a prime power; write it as a product of prime-power cyclic factors",
                    start,
                )
            return Cyclic(*pe)
        if c == "N":
            self.pos += 1
            self.expect("{")
            orders = {}
            while True:
                at = self.pos
                p = self.integer()
                self.expect(":")
                o = self.integer()
                if not is_prime(p):
                    self.error(f"layer key {p} is not prime", at)
                if p in orders:
                    self.error(f"layer key {p} repeated", at)
                if o <= 1 or not is_power_of(o, p):
                    self.error(f"layer order {o} is not a proper power of {p}", at)
                orders[p] = o
                if self.peek() == ",":
                    self.pos += 1
                    continue
                self.expect("}")
                break
            return NilpotentLayer.of(orders)
        if c == "P":
            self.pos += 1
            self.expect("[")
            end = self.text.find("]", self.pos)
            if end < 0:
                self.error("unterminated permutation atom")
            body = self.text[self.pos : end]
            gens = []
            offset = self.pos
            for part in body.split(";"):
                try:
                    gens.append(_perm.parse_cycles(part))
                except GroupSyntaxError as exc:
                    pos = offset + (exc.position or 0)
                    raise GroupSyntaxError(str(exc).split(" at position")[0], self.text, pos) from None
                offset += len(part) + 1
            self.pos = end + 1
            return PermAtom.from_cycles(gens)
        if c == "":
            self.error("expected an atom")
        word = self.text[self.pos :].split("*")[0].strip()
        self.error(f"unknown atom {word!r}")


def parse_group(text: str) -> GroupExpr:
    return _Parser(text).parse()


def render_group(g: GroupExpr) -> str:
    if not g.factors:
        return "1"
    return " * ".join(a.render() for a in g.factors)


# ---------------------------------------------------------------- profiles


def atom_profile(a) -> SylowProfile:
    if isinstance(a, BuiltinA5):
        return A5_PROFILE
    if isinstance(a, NilpotentLayer):
        return SylowProfile(SylowDatum(p, 1, o) for p, o in a.orders)
    if isinstance(a, PermAtom):
        cached = _profile_cache.get(a)
        if cached is None:
            cached = _perm.sylow_profile_bruteforce(a.group())
            with _cache_lock:
                cached = _profile_cache.setdefault(a, cached)
        return cached
    raise TypeError(f"not a group atom: {a!r}")


def atom_order(a) -> int:
    return a.order


def order_of(g: GroupExpr) -> int:
    return math.prod(atom_order(a) for a in g.factors)


def check_profile(profile: SylowProfile, order: int) -> None:
    """Every prime of the order is present and each sigma is the full p-part."""
    if profile.sigma_product() != _prime_power_part(order, profile):
        raise CrossCheckError(f"profile {profile!r} does not match group order {order}")
    rest = order
    for p in profile:
        rest //= p_part(rest, p)
    if rest != 1:
        raise CrossCheckError(f"profile {profile!r} misses primes of the order {order}")


def _prime_power_part(order: int, profile: SylowProfile) -> int:
    out = 1
    for p in profile:
        part = p_part(order, p)
        if part != profile[p].sigma:
            raise CrossCheckError(f"sigma_{p} = {profile[p].sigma} but the {p}-part of {order} is {part}")
        out *= part
    return out


# ---------------------------------------------------------------- realization


def atom_permutation_group(a) -> _perm.PermGroup:
    """A faithful permutation representation of one atom.

    Nilpotent layers are realized as products of cyclic groups, which is
    enough because only their Sylow orders matter here.
    """
    if isinstance(a, BuiltinA5):
        return _perm.alternating_a5()
    if isinstance(a, NilpotentLayer):
        return _perm.direct_product(*(_perm.cyclic_group(o) for _, o in a.orders))
    if isinstance(a, PermAtom):
        return a.group()
    raise TypeError(f"not a group atom: {a!r}")


def realize(g: GroupExpr, cap: int = _perm.DEFAULT_CAP) -> _perm.PermGroup:
    """The whole expression as one permutation group on disjoint blocks of points."""
    if not g.factors:
        return _perm.enumerate_group([], 1)
    degree = sum(_atom_degree(a) for a in g.factors)
    if degree > _perm.MAX_DEGREE:
        raise Refusal(f"{render_group(g)} needs {degree} points; the oracle stops at {_perm.MAX_DEGREE}")
    return _perm.direct_product(*(atom_permutation_group(a) for a in g.factors), cap=cap)


def _atom_degree(a) -> int:
    if isinstance(a, BuiltinA5):
        return 5
    if isinstance(a, NilpotentLayer):
        return sum(o for _, o in a.orders)
    return a.degree
