"""Direct-product rule for Sylow profiles, the Sylow polynomial and gamma."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import CrossCheckError
from .groups import (
    GroupExpr,
    SylowDatum,
    SylowProfile,
    atom_profile,
    check_profile,
    order_of,
)
from .numerics import rat_sum


def merge_profiles(profiles: Iterable[SylowProfile]) -> SylowProfile:
    """Multiply nu and sigma prime by prime; a missing prime counts as (1, 1)."""
    nu: dict[int, int] = {}
    sigma: dict[int, int] = {}
    for prof in profiles:
        for p, d in prof.items():
            nu[p] = nu.get(p, 1) * d.nu
            sigma[p] = sigma.get(p, 1) * d.sigma
    return SylowProfile(SylowDatum(p, nu[p], sigma[p]) for p in sorted(nu))


def profile_of(g: GroupExpr) -> SylowProfile:
    prof = merge_profiles(atom_profile(a) for a in g.factors)
    check_profile(prof, order_of(g))
    return prof


@dataclass(frozen=True)
class Term:
    prime: int
    nu: int
    sigma: int

    def integral(self) -> Fraction:
        return Fraction(self.nu, self.sigma + 1)


@dataclass(frozen=True)
class SylowPolynomial:
    """sum of nu_p x^sigma_p over the primes of the group, kept in prime order."""

    terms: tuple

    def __post_init__(self):
        sigmas = [t.sigma for t in self.terms]
        if len(set(sigmas)) != len(sigmas):
            raise CrossCheckError(f"two primes share an exponent in {sigmas}")

    @classmethod
    def from_profile(cls, prof: SylowProfile) -> "SylowPolynomial":
        return cls(tuple(Term(p, d.nu, d.sigma) for p, d in prof.items()))

    def integral(self) -> Fraction:
        """Term-by-term integral over [0, 1]."""
        return rat_sum(t.integral() for t in self.terms)

    def coefficients(self) -> dict[int, int]:
        return {t.sigma: t.nu for t in self.terms}

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for t in sorted(self.terms, key=lambda t: -t.sigma):
            coef = "" if t.nu == 1 else str(t.nu)
            parts.append(f"{coef}x^{t.sigma}")
        return " + ".join(parts)

    def to_json(self) -> list[dict]:
        return [{"prime": t.prime, "nu": t.nu, "sigma": t.sigma} for t in self.terms]


def sylow_polynomial(g: GroupExpr) -> SylowPolynomial:
    return SylowPolynomial.from_profile(profile_of(g))


def gamma_of_profile(prof: SylowProfile) -> Fraction:
    return rat_sum(Fraction(d.nu, d.sigma + 1) for d in prof.values())


def gamma(g: GroupExpr) -> Fraction:
    return gamma_of_profile(profile_of(g))


def gamma_breakdown(g: GroupExpr) -> tuple[list[tuple[int, int, int, Fraction]], Fraction]:
    """Rows (p, nu, sigma, nu/(sigma+1)) and their exact total.

    The total is recomputed from the polynomial as a second route.
    """
    prof = profile_of(g)
    rows = [(p, d.nu, d.sigma, Fraction(d.nu, d.sigma + 1)) for p, d in prof.items()]
    total = rat_sum(r[3] for r in rows)
    if total != SylowPolynomial.from_profile(prof).integral():
        raise CrossCheckError("gamma from profile differs from the polynomial integral")
    return rows, total
