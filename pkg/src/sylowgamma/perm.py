"""Brute-force permutation groups at desk scale.

Everything here works on fully enumerated element lists, so it is slow but
independent of the product rule and of any stored Sylow table. Permutations
are tuples of 0-based images. Products read left to right: ``mul(a, b)``
applies ``a`` first, then ``b`` (the GAP convention, so "(1 2)(2 3)" means
(1 2) followed by (2 3)).
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import CrossCheckError, GroupSyntaxError, Refusal
from .numerics import is_prime, p_part

MAX_DEGREE = 16
DEFAULT_CAP = 100_000

Perm = tuple


def identity(n: int) -> Perm:
    return tuple(range(n))


def mul(a: Perm, b: Perm) -> Perm:
    return tuple(b[x] for x in a)


def inverse(a: Perm) -> Perm:
    inv = [0] * len(a)
    for i, x in enumerate(a):
        inv[x] = i
    return tuple(inv)


def perm_order(a: Perm) -> int:
    e, x, k = identity(len(a)), a, 1
    while x != e:
        x = mul(x, a)
        k += 1
    return k


def extend(a: Perm, n: int, shift: int = 0) -> Perm:
    """Embed a permutation into degree n, acting on points shift..shift+len(a)-1."""
    out = list(range(n))
    for i, x in enumerate(a):
        out[i + shift] = x + shift
    return tuple(out)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str) -> list[list[int]]:
    """Parse "(1 2 3)(4 5)" into [[1, 2, 3], [4, 5]] (1-based points).

    Points may be separated by spaces or commas. "()" is the identity.
    """
    s = text.strip()
    pos = 0
    cycles = []
    while pos < len(s):
        if s[pos].isspace():
            pos += 1
            continue
        m = _CYCLE_RE.match(s, pos)
        if not m:
            raise GroupSyntaxError("expected '(' starting a cycle", s, pos)
        body = m.group(1).replace(",", " ").split()
        try:
            pts = [int(t) for t in body]
        except ValueError:
            raise GroupSyntaxError(f"non-integer point in cycle {m.group(0)!r}", s, pos) from None
        if any(p < 1 for p in pts):
            raise GroupSyntaxError("cycle points are 1-based positive integers", s, pos)
        if len(set(pts)) != len(pts):
            raise GroupSyntaxError(f"repeated point in cycle {m.group(0)!r}", s, pos)
        if pts:
            cycles.append(pts)
        pos = m.end()
    return cycles


def perm_from_cycles(cycles: Sequence[Sequence[int]], degree: int) -> Perm:
    """Compose the given cycles left to right into one permutation on `degree` points."""
    result = identity(degree)
    for cyc in cycles:
        if any(p > degree for p in cyc):
            raise ValueError(f"cycle {tuple(cyc)} exceeds degree {degree}")
        img = list(range(degree))
        for i, p in enumerate(cyc):
            img[p - 1] = cyc[(i + 1) % len(cyc)] - 1
        result = mul(result, tuple(img))
    return result


def cycles_of(a: Perm) -> list[tuple[int, ...]]:
    """Disjoint cycle decomposition (1-based), each cycle led by its smallest point, fixed points dropped."""
    seen = set()
    out = []
    for start in range(len(a)):
        if start in seen or a[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        x = a[start]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = a[x]
        out.append(tuple(p + 1 for p in cyc))
    return out


def format_perm(a: Perm) -> str:
    cyc = cycles_of(a)
    if not cyc:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


def moved_degree(a: Perm) -> int:
    """Largest moved point (1-based), 0 for the identity."""
    for i in range(len(a) - 1, -1, -1):
        if a[i] != i:
            return i + 1
    return 0


class PermGroup:
    """A permutation group with its complete element list.

    Build instances with :func:`enumerate_group`.
    """

    def __init__(self, degree: int, generators: Sequence[Perm], elements: list[Perm]):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = elements
        self.index = {g: i for i, g in enumerate(elements)}
        self.identity = self.index[identity(degree)]

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, i: int, j: int) -> int:
        return self.index[mul(self.elements[i], self.elements[j])]

    def inv(self, i: int) -> int:
        return self.index[inverse(self.elements[i])]

    def conj(self, g: int, h: int) -> int:
        """Index of g h g^-1."""
        a = self.elements[g]
        return self.index[mul(mul(a, self.elements[h]), inverse(a))]

    def whole(self) -> "Subgroup":
        return Subgroup(self, frozenset(range(self.order)))

    def __repr__(self):
        gens = ", ".join(format_perm(g) for g in self.generators)
        return f"PermGroup(degree={self.degree}, order={self.order}, generators=[{gens}])"


@dataclass(frozen=True)
class Subgroup:
    parent: PermGroup = field(repr=False, compare=False)
    indices: frozenset

    @property
    def order(self) -> int:
        return len(self.indices)

    def elements(self) -> list[Perm]:
        return [self.parent.elements[i] for i in sorted(self.indices)]

    def __contains__(self, i):
        return i in self.indices


def enumerate_group(generators: Iterable[Perm], degree: int, cap: int = DEFAULT_CAP) -> PermGroup:
    """Breadth-first closure of the generators; refuses beyond `cap` elements."""
    if degree < 1 or degree > MAX_DEGREE:
        raise Refusal(f"degree {degree} outside the supported range 1..{MAX_DEGREE}")
    gens = []
    for g in generators:
        g = tuple(g)
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise ValueError(f"{g!r} is not a permutation of {degree} points")
        gens.append(g)
    e = identity(degree)
    seen = {e}
    elements = [e]
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = mul(x, g)
            if y not in seen:
                seen.add(y)
                elements.append(y)
                if len(elements) > cap:
                    raise Refusal(f"group closure exceeds the element cap of {cap}")
                queue.append(y)
    return PermGroup(degree, gens, elements)


def group_from_text(text: str, cap: int = DEFAULT_CAP) -> PermGroup:
    """Parse "(1 2 3 4 5);(1 2 3)" (optionally wrapped in P[...]) and enumerate."""
    s = text.strip()
    if s.startswith("P[") and s.endswith("]"):
        s = s[2:-1]
    gens_cycles = [parse_cycles(part) for part in s.split(";")] if s.strip() else []
    degree = max([max(c) for cyc in gens_cycles for c in cyc if c] or [1])
    return enumerate_group([perm_from_cycles(c, degree) for c in gens_cycles], degree, cap)


def generated_subgroup(G: PermGroup, gens: Iterable[int]) -> Subgroup:
    """Closure of a set of element indices inside G."""
    gens = list(gens)
    seen = {G.identity}
    queue = deque([G.identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = G.mul(x, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return Subgroup(G, frozenset(seen))


def subgroup_from_elements(G: PermGroup, elements: Iterable[Perm]) -> Subgroup:
    """Wrap a set of permutations as a subgroup of G, checking closure."""
    try:
        idx = frozenset(G.index[tuple(e)] for e in elements)
    except KeyError as exc:
        raise ValueError(f"element {exc.args[0]!r} is not in the group") from None
    H = Subgroup(G, idx)
    _check_subgroup(G, H)
    return H


def _check_subgroup(G: PermGroup, H: Subgroup):
    if H.parent is not G:
        raise ValueError("subgroup belongs to a different parent group")
    if G.identity not in H.indices:
        raise ValueError("subset does not contain the identity")
    for a in H.indices:
        for b in H.indices:
            if G.mul(a, b) not in H.indices:
                raise ValueError("subset is not closed under multiplication")


def small_generating_set(H: Subgroup) -> list[int]:
    """Greedy generating set: add the first element not yet generated."""
    G = H.parent
    gens: list[int] = []
    current = {G.identity}
    for i in sorted(H.indices):
        if i not in current:
            gens.append(i)
            current = set(generated_subgroup(G, gens).indices)
            if len(current) == H.order:
                break
    return gens


def element_order(G: PermGroup, i: int) -> int:
    return perm_order(G.elements[i])


def is_p_power(n: int, p: int) -> bool:
    return p_part(n, p) == n


def normalizer(G: PermGroup, H: Subgroup) -> Subgroup:
    """{g in G : g H g^-1 = H}, by scanning every element of G."""
    if H.parent is not G:
        raise ValueError("H is not a subgroup of G")
    if G.identity not in H.indices:
        raise ValueError("H is not a subgroup of G")
    gens_H = small_generating_set(H)
    if generated_subgroup(G, gens_H).indices != H.indices:
        raise ValueError("H is not a subgroup of G")
    keep = []
    for g in range(G.order):
        # H is finite, so g H g^-1 ⊆ H already forces equality
        if all(G.conj(g, h) in H.indices for h in gens_H):
            keep.append(g)
    return Subgroup(G, frozenset(keep))


def conjugates(G: PermGroup, H: Subgroup) -> set[frozenset]:
    """All distinct subgroups g H g^-1."""
    out = set()
    for g in range(G.order):
        out.add(frozenset(G.conj(g, h) for h in H.indices))
    return out


def sylow_subgroup(G: PermGroup, p: int) -> Subgroup:
    """Grow a Sylow p-subgroup one p-element at a time through normalizers."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    target = p_part(G.order, p)
    if target == 1:
        raise ValueError(f"{p} does not divide |G| = {G.order}")
    p_elements = [i for i in range(G.order) if i != G.identity and is_p_power(element_order(G, i), p)]
    H = Subgroup(G, frozenset([G.identity]))
    gens: list[int] = []
    while H.order < target:
        N = normalizer(G, H)
        ext = next((x for x in p_elements if x in N.indices and x not in H.indices), None)
        if ext is None:
            raise CrossCheckError(
                f"no p-element extends the {p}-subgroup of order {H.order} (target {target})"
            )
        gens.append(ext)
        H = generated_subgroup(G, gens)
        if not is_p_power(H.order, p):
            raise CrossCheckError(f"adjoining a normalizing {p}-element gave order {H.order}")
    if H.order != target:
        raise CrossCheckError(f"Sylow {p}-subgroup overshot: {H.order} != {target}")
    return H


def prime_divisors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def sylow_profile_bruteforce(G: PermGroup):
    """Sylow data of G from first principles.

    The count of Sylow p-subgroups is computed twice, as the normalizer index
    and as the number of distinct conjugates; disagreement is a hard failure.
    """
    from .groups import SylowDatum, SylowProfile

    entries = []
    for p in prime_divisors(G.order):
        P = sylow_subgroup(G, p)
        N = normalizer(G, P)
        by_index, rem = divmod(G.order, N.order)
        if rem:
            raise CrossCheckError(f"|N_G(P)| = {N.order} does not divide |G| = {G.order}")
        conj = conjugates(G, P)
        if by_index != len(conj):
            raise CrossCheckError(
                f"p={p}: normalizer index {by_index} != conjugate count {len(conj)}"
            )
        if any(len(c) != P.order for c in conj):
            raise CrossCheckError(f"p={p}: conjugate of a different order")
        entries.append(SylowDatum(p, by_index, P.order))
    return SylowProfile(entries)


def commutes_with_all(G: PermGroup, i: int, gens: Iterable[int]) -> bool:
    return all(G.mul(i, g) == G.mul(g, i) for g in gens)


def center(G: PermGroup) -> Subgroup:
    """Elements commuting with every element of G (checking generators suffices)."""
    gens = [G.index[g] for g in G.generators]
    return Subgroup(G, frozenset(i for i in range(G.order) if commutes_with_all(G, i, gens)))


def derived_subgroup(H: Subgroup) -> Subgroup:
    """[H, H]: normal closure in H of the commutators of a generating set of H."""
    G = H.parent
    gens = small_generating_set(H)
    comms = set()
    for a in gens:
        for b in gens:
            c = G.mul(G.mul(G.inv(a), G.inv(b)), G.mul(a, b))
            if c != G.identity:
                comms.add(c)
    D = generated_subgroup(G, comms)
    while True:
        extra = {G.conj(g, d) for g in gens for d in D.indices} - D.indices
        if not extra:
            return D
        D = generated_subgroup(G, set(D.indices) | extra)


def derived_series(G: PermGroup) -> list[Subgroup]:
    series = [G.whole()]
    while True:
        nxt = derived_subgroup(series[-1])
        if nxt.indices == series[-1].indices:
            return series
        series.append(nxt)


def is_solvable(G: PermGroup) -> bool:
    return derived_series(G)[-1].order == 1


def direct_product(*groups: PermGroup, cap: int = DEFAULT_CAP) -> PermGroup:
    """External direct product acting on disjoint blocks of points."""
    degree = sum(G.degree for G in groups)
    gens = []
    shift = 0
    for G in groups:
        gens.extend(extend(g, degree, shift) for g in G.generators)
        shift += G.degree
    return enumerate_group(gens, max(degree, 1), cap)


def cyclic_group(n: int) -> PermGroup:
    """C_n as the regular action of an n-cycle."""
    if n == 1:
        return enumerate_group([], 1)
    return enumerate_group([tuple((i + 1) % n for i in range(n))], n)


def alternating_a5() -> PermGroup:
    """A5 from (1 2 3 4 5) and (1 2 3)."""
    return group_from_text("(1 2 3 4 5);(1 2 3)")
