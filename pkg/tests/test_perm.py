import pytest

from sylowgamma.errors import Refusal
from sylowgamma.groups import SylowProfile
from sylowgamma.perm import (
    Subgroup,
    alternating_a5,
    center,
    conjugates,
    cyclic_group,
    derived_series,
    direct_product,
    enumerate_group,
    format_perm,
    group_from_text,
    is_solvable,
    normalizer,
    parse_cycles,
    perm_from_cycles,
    subgroup_from_elements,
    sylow_profile_bruteforce,
    sylow_subgroup,
)

from oracles import all_subgroups_upto_two_generators, closure, derived_series_orders

CORPUS = {
    "A5": "(1 2 3 4 5);(1 2 3)",
    "S4": "(1 2);(1 2 3 4)",
    "A4": "(1 2 3);(1 2)(3 4)",
    "D8": "(1 2 3 4);(1 3)",
    "S3": "(1 2 3);(1 2)",
    "C2": "(1 2)",
    "C3": "(1 2 3)",
    "C4": "(1 2 3 4)",
    "C5": "(1 2 3 4 5)",
    "C7": "(1 2 3 4 5 6 7)",
    "Q8": "(1 2 4 7)(3 6 8 5);(1 3 4 8)(2 5 7 6)",
}


@pytest.fixture(scope="module")
def groups():
    return {name: group_from_text(text) for name, text in CORPUS.items()}


def test_enumerate_a5():
    assert alternating_a5().order == 60


def test_enumerate_trivial():
    assert enumerate_group([], 1).order == 1


def test_enumerate_s4_matches_closure():
    G = group_from_text(CORPUS["S4"])
    assert G.order == len(closure([(1, 0, 2, 3), (1, 2, 3, 0)], 4)) == 24


def test_enumerate_cap():
    with pytest.raises(Refusal, match="cap of 100"):
        enumerate_group([perm_from_cycles([[1, 2, 3, 4, 5]], 5), perm_from_cycles([[1, 2]], 5)], 5, cap=100)


def test_enumerate_degree_cap():
    with pytest.raises(Refusal):
        enumerate_group([], 17)


def test_cycle_parsing_left_to_right():
    # (1 2) then (2 3): 1->2->3, 2->1, 3->2
    assert format_perm(perm_from_cycles(parse_cycles("(1 2)(2 3)"), 3)) == "(1 3 2)"
    assert parse_cycles("()") == []


def test_sylow_subgroups_of_a5():
    G = alternating_a5()
    P2 = sylow_subgroup(G, 2)
    assert P2.order == 4
    # Klein four: every nonidentity element is an involution
    assert all(G.mul(i, i) == G.identity for i in P2.indices)
    P5 = sylow_subgroup(G, 5)
    assert P5.order == 5


def test_sylow_subgroup_s4_is_maximal_two_subgroup(groups):
    G = groups["S4"]
    P = sylow_subgroup(G, 2)
    assert P.order == 8
    subs = all_subgroups_upto_two_generators(G.elements, 4)
    two_orders = {len(H) for H in subs if len(H) & (len(H) - 1) == 0}
    assert max(two_orders) == 8


def test_sylow_subgroup_requires_divisor():
    with pytest.raises(ValueError):
        sylow_subgroup(alternating_a5(), 7)


def test_normalizers_in_a5():
    G = alternating_a5()
    assert normalizer(G, sylow_subgroup(G, 2)).order == 12
    assert normalizer(G, sylow_subgroup(G, 3)).order == 6
    assert normalizer(G, sylow_subgroup(G, 5)).order == 10
    assert normalizer(G, G.whole()).indices == G.whole().indices


def test_normalizer_rejects_non_subgroup():
    G = alternating_a5()
    H = Subgroup(G, frozenset({G.identity, 1}))
    with pytest.raises(ValueError):
        normalizer(G, H)
    with pytest.raises(ValueError):
        normalizer(G, Subgroup(cyclic_group(3), frozenset({0})))


def test_subgroup_from_elements_checks_closure():
    G = group_from_text(CORPUS["S3"])
    with pytest.raises(ValueError):
        subgroup_from_elements(G, [(0, 1, 2), (1, 2, 0)])
    H = subgroup_from_elements(G, [(0, 1, 2), (1, 2, 0), (2, 0, 1)])
    assert H.order == 3


def test_profile_a5():
    assert sylow_profile_bruteforce(alternating_a5()) == SylowProfile.from_triples(
        {2: (5, 4), 3: (10, 3), 5: (6, 5)}
    )


def test_profile_c7():
    assert sylow_profile_bruteforce(cyclic_group(7)) == SylowProfile.from_triples({7: (1, 7)})


def test_profile_a5_times_c2():
    G = direct_product(alternating_a5(), cyclic_group(2))
    assert G.degree == 7
    assert sylow_profile_bruteforce(G) == SylowProfile.from_triples({2: (5, 8), 3: (10, 3), 5: (6, 5)})


def test_center():
    assert center(alternating_a5()).order == 1
    assert center(direct_product(alternating_a5(), cyclic_group(2))).order == 2
    C = cyclic_group(7)
    assert center(C).order == 7


def test_solvability():
    assert not is_solvable(alternating_a5())
    assert is_solvable(cyclic_group(7))
    G = direct_product(alternating_a5(), cyclic_group(2))
    assert not is_solvable(G)
    # frozen from the all-commutators oracle: orders 120 then 60, perfect from there
    assert [H.order for H in derived_series(G)] == derived_series_orders(G.elements, 7) == [120, 60]


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_derived_series_matches_oracle(groups, name):
    G = groups[name]
    assert [H.order for H in derived_series(G)] == derived_series_orders(G.elements, G.degree)


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_sylow_facts_on_corpus(groups, name):
    G = groups[name]
    prof = sylow_profile_bruteforce(G)
    for p, d in prof.items():
        P = sylow_subgroup(G, p)
        assert P.order == d.sigma
        assert G.order % d.sigma == 0 and (G.order // d.sigma) % p != 0
        conj = conjugates(G, P)
        assert len(conj) == d.nu == G.order // normalizer(G, P).order
        assert all(len(c) == d.sigma for c in conj)
        assert d.nu % p == 1
        assert (G.order // d.sigma) % d.nu == 0


_built = {name: group_from_text(text) for name, text in CORPUS.items()}
PAIRS = [
    (a, b)
    for i, a in enumerate(sorted(CORPUS))
    for b in sorted(CORPUS)[i:]
    if _built[a].order * _built[b].order <= 2000 and _built[a].degree + _built[b].degree <= 16
]


@pytest.mark.parametrize("a,b", PAIRS)
def test_center_and_solvability_of_products(groups, a, b):
    G, H = groups[a], groups[b]
    GH = direct_product(G, H)
    assert center(GH).order == center(G).order * center(H).order
    assert is_solvable(GH) == (is_solvable(G) and is_solvable(H))
