from functools import lru_cache
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from goodaction.action_theory import (
    Action,
    check_prop_2_2,
    check_prop_2_5,
    commutator,
    commutator_via_GA,
    fixed_points,
    has_regular_orbits,
    inner_action,
    invariant_hall,
    is_cqwrcq_free,
    is_good,
    make_action,
    prop23_criterion,
    regular_orbits_check,
    trivial_action,
)
from goodaction.constructors import (
    cyclic,
    direct_product,
    evaluate,
    example_3_2,
    power_map,
    symmetric,
    wreath_cyclic,
)
from goodaction.errors import HypothesisFailed, NotAHomomorphism, NotAnAutomorphism, ParentMismatch
from goodaction.group_core import all_subgroups, is_isomorphic, is_normal, is_solvable, pi, sylow_subgroup
from goodaction.harness.pipeline import all_actions

PAIRS = [("cyclic(4)", "cyclic(2)"), ("cyclic(6)", "cyclic(2)"), ("dp(cyclic(2),cyclic(2))", "cyclic(2)"),
         ("dp(cyclic(2),cyclic(2))", "cyclic(3)"), ("sym(3)", "cyclic(2)"), ("sym(3)", "cyclic(3)"),
         ("cyclic(8)", "dp(cyclic(2),cyclic(2))"), ("sd(cyclic(4),cyclic(2),inv)", "cyclic(2)"),
         ("named(q8)", "cyclic(2)"), ("dp(cyclic(3),cyclic(3))", "cyclic(3)"), ("cyclic(9)", "cyclic(3)"),
         ("cyclic(7)", "cyclic(6)"), ("cyclic(5)", "cyclic(4)")]


@lru_cache(maxsize=None)
def actions_of(g, a):
    G, A = evaluate(g), evaluate(a)
    return [act for _, act in all_actions(G, A)]


actions = st.sampled_from(PAIRS).flatmap(lambda p: st.sampled_from(actions_of(*p)))


def c2_on(n):
    G, A = cyclic(n), cyclic(2)
    return make_action(G, A, [power_map(G, -1)])


def elems(H):
    return frozenset(map(int, H.elements))


def test_make_action_examples():
    G, A = cyclic(3), cyclic(2)
    t = trivial_action(G, A)
    assert is_isomorphic(t.GA, direct_product(G, A)) is not None
    s = c2_on(3)
    assert is_isomorphic(s.GA, symmetric(3)) is not None
    with pytest.raises(NotAnAutomorphism):
        make_action(cyclic(4), A, [np.array([0, 2, 0, 2])])
    with pytest.raises(NotAHomomorphism):
        make_action(cyclic(7), A, [power_map(cyclic(7), 2)])


def test_inner_action_small():
    S3 = symmetric(3)
    x = int(np.flatnonzero(S3.element_orders == 3)[0])
    act = inner_action(S3, x)
    assert act.A.order == 3
    for g in range(S3.order):
        assert act.autos[1][g] == S3.conj(g, x)


def test_fixed_points_and_commutators():
    act = c2_on(3)
    A = act.A
    assert fixed_points(act, A.trivial()).is_whole()
    assert commutator(act, A.trivial()).is_trivial()
    assert fixed_points(act).is_trivial()
    assert commutator(act).order == 3
    e = example_3_2()
    from goodaction.group_core import centralizer, intersection
    assert intersection(e.G, centralizer(e.GA.whole(), e.A)).order == 21
    with pytest.raises(ParentMismatch):
        fixed_points(act, cyclic(5).whole())


def test_goodness_examples():
    assert is_good(trivial_action(cyclic(4), cyclic(2))).good
    rep = is_good(c2_on(4))
    assert not rep.good
    assert rep.witness_sizes() == {"B": 2, "H": 4, "[H,B]": 2, "C_H(B)": 2}
    assert is_good(c2_on(5)).good


def test_prop23_examples():
    assert prop23_criterion(trivial_action(cyclic(1), cyclic(1)))
    assert prop23_criterion(c2_on(3))
    assert not prop23_criterion(c2_on(4))


def test_prop22_examples():
    assert check_prop_2_2(trivial_action(cyclic(3), cyclic(2))).ok
    assert check_prop_2_2(c2_on(3)).ok
    with pytest.raises(HypothesisFailed):
        check_prop_2_2(c2_on(4))


def test_invariant_hall_examples():
    act = c2_on(3)
    assert invariant_hall(act, {3}).is_whole()
    G = symmetric(3)
    t = int(np.flatnonzero(G.element_orders == 2)[0])
    inn = inner_action(G, t)
    H = invariant_hall(inn, {3})
    assert H == sylow_subgroup(G, 3)
    H2 = invariant_hall(inn, {2})
    assert H2 is not None and H2.order == 2 and inn.is_invariant(H2)


def test_regular_orbits_examples():
    act = c2_on(3)
    assert regular_orbits_check(act, act.A.trivial()).ok
    assert regular_orbits_check(act).ok
    assert regular_orbits_check(trivial_action(cyclic(2), cyclic(2))).ok


def test_cqwrcq_free_examples():
    assert is_cqwrcq_free(cyclic(8))
    assert is_cqwrcq_free(evaluate("dp(cyclic(9),cyclic(3))"))
    assert not is_cqwrcq_free(wreath_cyclic(cyclic(2), 2))
    assert not is_cqwrcq_free(wreath_cyclic(cyclic(3), 3))
    assert is_cqwrcq_free(evaluate("named(q8)"))


@settings(max_examples=60)
@given(actions)
def test_is_good_matches_oracle(act):
    good, wit = oracles.is_good(oracles.table_of(act.G), act.autos.tolist(), oracles.table_of(act.A))
    rep = is_good(act)
    assert rep.good == good
    if not rep.good:
        prod = {int(act.G.table[x, y]) for x in rep.HB.elements for y in rep.CHB.elements}
        assert len(prod) < rep.H.order


@given(actions, st.data())
def test_commutator_and_fixed_points_oracle(act, data):
    B = data.draw(st.sampled_from(all_subgroups(act.A)))
    T = oracles.table_of(act.G)
    inv = oracles.inverses(T)
    gens = {T[inv[g]][int(act.autos[b][g])] for g in range(act.G.order) for b in B.elements}
    GB = commutator(act, B)
    assert elems(GB) == oracles.close(T, gens)
    assert GB == commutator_via_GA(act, B)
    assert is_normal(GB) and act.is_invariant(GB, B)
    assert elems(fixed_points(act, B)) == {g for g in range(act.G.order)
                                           if all(act.autos[b][g] == g for b in B.elements)}
    # monotone in B
    assert commutator(act, act.A.trivial()) <= GB <= commutator(act)
    assert fixed_points(act) <= fixed_points(act, B)


@given(actions)
def test_conjugation_reproduces_autos(act):
    GA = act.GA
    for a in range(act.A.order):
        conj = GA.conj(act.embed_G, int(act.embed_A[a]))
        assert (conj == act.embed_G[act.autos[a]]).all()


@settings(max_examples=60)
@given(actions)
def test_goodness_consequences(act):
    good = is_good(act).good
    if act.is_coprime():
        assert good
    if prop23_criterion(act) and is_solvable(act.G) and is_solvable(act.A):
        assert good
    if good:
        assert check_prop_2_2(act).ok
        if is_solvable(act.G):
            for p in set(pi(act.A)) & set(pi(act.G)):
                assert check_prop_2_5(act, p)


def test_prop26_on_sweep_pairs():
    from itertools import combinations
    from goodaction.group_core import is_nilpotent
    for pair in PAIRS:
        for act in actions_of(*pair):
            if not (is_good(act).good and is_nilpotent(act.A)):
                continue
            primes = sorted(pi(act.G))
            for k in range(1, len(primes) + 1):
                for s in combinations(primes, k):
                    H = invariant_hall(act, s)
                    assert H is not None and act.is_invariant(H)
                    assert gcd(H.order, act.G.order // H.order) == 1


def test_coprime_actions_have_regular_orbits_when_abelian():
    # an abelian group acting coprimely and faithfully on an irreducible section
    # acts semiregularly there, so regular orbits exist
    for act in actions_of("dp(cyclic(3),cyclic(3))", "dp(cyclic(2),cyclic(2))"):
        assert has_regular_orbits(act)
