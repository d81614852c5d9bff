"""The eleven acceptance criteria, one test each.

The conftest hook prints a PASS/FAIL line per criterion after the run.
"""

import random
import time
from fractions import Fraction

from hypothesis import HealthCheck, example, given, settings, strategies as st

from sylowgamma.certify import (
    Certificate,
    SearchBounds,
    certificate_to_group,
    search_certificates,
    verify_certificate,
)
from sylowgamma.compensation import (
    NilpotentSpec,
    Sidedness,
    Threshold,
    gamma_a5_times,
    one_sided_check,
    threshold_classify,
)
from sylowgamma.groups import A5_PROFILE, SylowProfile, parse_group
from sylowgamma.perm import (
    center,
    direct_product,
    enumerate_group,
    group_from_text,
    is_solvable,
    normalizer,
    perm_from_cycles,
    sylow_profile_bruteforce,
    sylow_subgroup,
)
from sylowgamma.sylow import gamma, gamma_breakdown, merge_profiles, profile_of, sylow_polynomial

from conftest import G0_TEXT, Q0, Q_SETS
from oracles import subset_search, sylow_counts_by_subgroup_enumeration
from test_groups import exprs

NINE_HALVES = Fraction(9, 2)
FOUR_NINTHS = Fraction(4, 9)
NEW_PRIMES_200 = [q for q in range(7, 200) if all(q % d for d in range(2, q))]
MANY = settings(max_examples=1000, derandomize=True, suppress_health_check=[HealthCheck.too_slow])

specs = st.builds(
    NilpotentSpec,
    st.integers(0, 3),
    st.integers(0, 3),
    st.integers(0, 3),
    st.dictionaries(st.sampled_from(NEW_PRIMES_200), st.integers(1, 3), max_size=5),
)


def test_ac1_gamma_a5():
    """AC1: gamma(A5) = 9/2 with per-prime terms 1, 5/2, 1"""
    rows, total = gamma_breakdown(parse_group("A5"))
    assert [t for *_, t in rows] == [Fraction(1), Fraction(5, 2), Fraction(1)]
    assert total == gamma(parse_group("A5")) == NINE_HALVES


def test_ac2_gamma_g0_breakdown():
    """AC2: gamma(G0) = 9/2 and the breakdown matches all 11 table rows"""
    rows, total = gamma_breakdown(parse_group(G0_TEXT))
    table = [
        (2, 5, 8, Fraction(5, 9)),
        (3, 10, 3, Fraction(10, 4)),
        (5, 6, 5, Fraction(6, 6)),
        (7, 1, 7, Fraction(1, 8)),
        (11, 1, 11, Fraction(1, 12)),
        (13, 1, 13, Fraction(1, 14)),
        (17, 1, 17, Fraction(1, 18)),
        (19, 1, 19, Fraction(1, 20)),
        (29, 1, 29, Fraction(1, 30)),
        (71, 1, 71, Fraction(1, 72)),
        (83, 1, 83, Fraction(1, 84)),
    ]
    assert [tuple(r) for r in rows] == table
    assert total == NINE_HALVES


def test_ac3_sylow_polynomial_g0():
    """AC3: SP(G0, x) equals the 11-term polynomial in canonical order"""
    poly = sylow_polynomial(parse_group(G0_TEXT))
    assert str(poly) == "x^83 + x^71 + x^29 + x^19 + x^17 + x^13 + x^11 + 5x^8 + x^7 + 6x^5 + 10x^3"
    assert poly.coefficients() == {8: 5, 3: 10, 5: 6, 7: 1, 11: 1, 13: 1, 17: 1, 19: 1, 29: 1, 71: 1, 83: 1}


def test_ac4_verify_certificates():
    """AC4: Q1-Q4 verify with denominator 2520 and total 1120; Q0 minus 83 is short by 1/84"""
    for Q in Q_SETS.values():
        w = verify_certificate(Certificate.from_primes(Q, FOUR_NINTHS))
        assert (w.common_denominator, w.total, w.target_numerator, w.valid) == (2520, 1120, 1120, True)
    w = verify_certificate(Certificate.from_primes(Q0[:-1], FOUR_NINTHS))
    assert not w.valid
    assert w.deficit == Fraction(30, 2520) == Fraction(1, 84)


def test_ac5_certificate_groups():
    """AC5: certificate_to_group reproduces M(Q), |G(Q)| = 120 M(Q) and gamma = 9/2 for Q1-Q4"""
    expected = {
        1: (55254930731, 6630591687720),
        2: (110483025653, 13257963078360),
        3: (193368816641, 23204257996920),
        4: (552385382549, 66286245905880),
    }
    for i, Q in Q_SETS.items():
        g = certificate_to_group(Certificate.from_primes(Q, FOUR_NINTHS))
        assert (g.prime_product, g.order) == expected[i]
        assert g.order == 120 * g.prime_product
        assert gamma(g.expr) == NINE_HALVES


def test_ac6_search():
    """AC6: search to 1300 with 8 parts finds Q1-Q4 in < 30 s and matches brute force on 12 primes"""
    start = time.perf_counter()
    found = search_certificates(FOUR_NINTHS, SearchBounds(1300, 8, 1))
    elapsed = time.perf_counter() - start
    assert elapsed < 30
    assert set(Q_SETS.values()) <= {c.primes for c in found}

    bounds = SearchBounds(47, 12)
    primes = bounds.admissible_primes()
    assert len(primes) == 12
    rnd = random.Random(2024)
    targets = [FOUR_NINTHS, Fraction(1, 8) + Fraction(1, 12)]
    targets += [sum(Fraction(1, q + 1) for q in rnd.sample(primes, rnd.randint(1, 6))) for _ in range(8)]
    for t in targets:
        got = [tuple((p.prime, p.exponent) for p in c.parts) for c in search_certificates(t, bounds)]
        assert got == subset_search(t, 47, 12)


def test_ac7_oracle_a5():
    """AC7: the permutation oracle on A5 gives order 60, its profile, normalizers 12/6/10, trivial center, nonsolvable"""
    G = enumerate_group([perm_from_cycles([[1, 2, 3, 4, 5]], 5), perm_from_cycles([[1, 2, 3]], 5)], 5)
    assert G.order == 60
    prof = sylow_profile_bruteforce(G)
    # independent count over every subgroup with at most two generators
    for p, d in prof.items():
        assert sylow_counts_by_subgroup_enumeration(G.elements, 5, p) == (d.nu, d.sigma)
    assert [normalizer(G, sylow_subgroup(G, p)).order for p in (2, 3, 5)] == [12, 6, 10]
    assert center(G).order == 1
    assert is_solvable(G) is False
    assert prof == SylowProfile.from_triples({2: (5, 4), 3: (10, 3), 5: (6, 5)})
    assert prof == A5_PROFILE


def test_ac8_product_rule_a5_c2():
    """AC8: oracle profile of A5 x C2 on 7 points equals the merged profile, gamma = 73/18"""
    G = direct_product(group_from_text("(1 2 3 4 5);(1 2 3)"), group_from_text("(1 2)"))
    assert G.degree == 7
    merged = merge_profiles([profile_of(parse_group("A5")), profile_of(parse_group("C2"))])
    assert sylow_profile_bruteforce(G) == merged == SylowProfile.from_triples({2: (5, 8), 3: (10, 3), 5: (6, 5)})
    assert gamma(parse_group("A5 * C2")) == Fraction(73, 18)


@MANY
@given(specs, st.sampled_from(["a", "b", "c"]))
def _monotone(spec, which):
    bigger = spec.with_exponent(which, getattr(spec, which) + 1)
    assert gamma_a5_times(bigger).gamma_value < gamma_a5_times(spec).gamma_value


@MANY
@given(st.frozensets(st.sampled_from(NEW_PRIMES_200), max_size=8))
@example(frozenset(Q_SETS[1]))
@example(frozenset(Q_SETS[2]))
@example(frozenset(Q_SETS[3]))
@example(frozenset(Q_SETS[4]))
def _trichotomy(Q):
    cls, diff = threshold_classify(Q)
    g = gamma(parse_group(" * ".join(["A5", "C2"] + [f"C{q}" for q in sorted(Q)])))
    assert g - NINE_HALVES == diff
    expected = {-1: Threshold.BELOW, 0: Threshold.EQUAL, 1: Threshold.ABOVE}[(diff > 0) - (diff < 0)]
    assert cls is expected


@MANY
@given(specs)
def _one_sided(spec):
    side = one_sided_check(spec)
    value = gamma_a5_times(spec).gamma_value
    if side is Sidedness.OLD_ONLY_BELOW:
        assert value < NINE_HALVES
    elif side is Sidedness.NEW_ONLY_ABOVE:
        assert value > NINE_HALVES
    elif side is Sidedness.TRIVIAL:
        assert value == NINE_HALVES


@MANY
@given(exprs)
def _congruence(g):
    for p, d in profile_of(g).items():
        assert d.nu % p == 1


def test_ac9_property_suite():
    """AC9: monotonicity, trichotomy, one-sidedness and nu = 1 mod p over 1000 cases each"""
    _monotone()
    _trichotomy()
    _one_sided()
    _congruence()


def test_ac10_engine_matches_closed_form():
    """AC10: closed-form gamma(A5 x N) equals the generic engine on 1000 generated specs"""
    rnd = random.Random(10)
    checked = 0
    for _ in range(1000):
        new = rnd.sample(NEW_PRIMES_200, rnd.randint(0, 5))
        spec = NilpotentSpec(
            rnd.randint(0, 3), rnd.randint(0, 3), rnd.randint(0, 3), {q: rnd.randint(1, 3) for q in new}
        )
        assert gamma_a5_times(spec).gamma_value == gamma(spec.to_expr())
        checked += 1
    assert checked == 1000


def test_ac11_three_signs():
    """AC11: gamma(A5 x N) - gamma(A5) is -4/9, +1/8 and 0 for N = C2, C7, N0"""
    base = gamma(parse_group("A5"))
    assert gamma(parse_group("A5 * C2")) - base == Fraction(-4, 9)
    assert gamma(parse_group("A5 * C7")) - base == Fraction(1, 8)
    assert gamma(parse_group(G0_TEXT)) - base == 0
