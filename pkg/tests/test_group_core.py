import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from goodaction.constructors import (
    cyclic,
    direct_product,
    evaluate,
    extraspecial_27_exp9,
    frobenius600,
    quaternion8,
    symmetric,
)
from goodaction.errors import NotNormal, OrderBoundExceeded, ParentMismatch
from goodaction.group_core import (
    Group,
    Homomorphism,
    PrimeSet,
    Subgroup,
    all_subgroups,
    center,
    centralizer,
    closure,
    commutator_subgroup,
    derived_series,
    exponent,
    frattini_subgroup,
    hall_subgroup,
    intersection,
    is_isomorphic,
    is_normal,
    is_solvable,
    join,
    minimal_normal_subgroups,
    normal_subgroups,
    normalizer,
    quotient,
    sylow_subgroup,
)

SMALL = ["cyclic(6)", "sym(3)", "sym(4)", "named(q8)", "dp(cyclic(2),cyclic(4))",
         "sd(cyclic(7),cyclic(3),pow2)", "sd(cyclic(4),cyclic(2),inv)", "dp(cyclic(3),cyclic(3))",
         "named(sl2_3)", "wr(cyclic(2),2)"]


def masks(subs):
    return {frozenset(map(int, s.elements)) for s in subs}


@pytest.fixture(scope="module")
def S4():
    return symmetric(4)


def test_group_table_invariants():
    for expr in SMALL:
        G = evaluate(expr)
        n = G.order
        assert (G.table[0] == np.arange(n)).all()
        assert (np.sort(G.table, axis=0) == np.arange(n)[:, None]).all()
        assert (G.table[np.arange(n), G.inverse] == 0).all()
        assert (n % G.element_orders == 0).all()


def test_bad_tables_rejected():
    with pytest.raises(ValueError):
        Group([[0, 1], [1, 1]])
    with pytest.raises(ValueError):
        Group([[1, 0], [0, 1]])
    with pytest.raises(OrderBoundExceeded):
        cyclic(20001)


def test_closure_examples(S4):
    C6 = cyclic(6)
    three = int(np.flatnonzero(C6.element_orders == 3)[0])
    assert closure(C6, [three]).order == 3
    assert closure(C6, []).is_trivial()
    # sym(n) indexes elements in itertools.permutations order
    perms = list(itertools.permutations(range(4)))
    four, t = perms.index((1, 2, 3, 0)), perms.index((1, 0, 2, 3))
    assert closure(S4, [four, t]).is_whole()
    table, _ = oracles.perm_group([(1, 2, 3, 0), (1, 0, 2, 3)])
    assert len(table) == 24


@given(st.sampled_from(SMALL), st.lists(st.integers(0, 10 ** 6), max_size=3),
       st.lists(st.integers(0, 10 ** 6), max_size=2))
def test_closure_idempotent_monotone(expr, a, b):
    G = evaluate(expr)
    S = [x % G.order for x in a]
    T = S + [x % G.order for x in b]
    cS = closure(G, S)
    assert closure(G, cS.elements) == cS
    assert cS <= closure(G, T)
    assert frozenset(map(int, cS.elements)) == oracles.close(oracles.table_of(G), S)
    assert G.order % cS.order == 0
    assert closure(G, list(reversed(S))) == cS


def test_commutators_and_centers():
    S3 = symmetric(3)
    W = S3.whole()
    assert commutator_subgroup(W, S3.trivial()).is_trivial()
    D = commutator_subgroup(W, W)
    assert D.order == 3
    assert masks([D]) == {oracles.commutator(oracles.table_of(S3), range(6), range(6))}
    C5 = cyclic(5).whole()
    assert commutator_subgroup(C5, C5).is_trivial()
    assert center(cyclic(8)).is_whole()
    assert centralizer(W, D) == D
    assert center(extraspecial_27_exp9()).order == 3


def test_parent_mismatch():
    with pytest.raises(ParentMismatch):
        commutator_subgroup(cyclic(3).whole(), cyclic(4).whole())


@given(st.sampled_from(SMALL), st.data())
def test_commutator_properties(expr, data):
    G = evaluate(expr)
    subs = all_subgroups(G)
    H = data.draw(st.sampled_from(subs))
    K = data.draw(st.sampled_from(subs))
    HK = commutator_subgroup(H, K)
    assert HK <= join(H, K)
    assert frozenset(map(int, HK.elements)) == oracles.commutator(
        oracles.table_of(G), H.elements.tolist(), K.elements.tolist())
    assert is_normal(commutator_subgroup(H, G.whole()))


def test_normalizer_examples():
    S3 = symmetric(3)
    two = sylow_subgroup(S3, 2)
    assert normalizer(S3, two).order == 2
    assert normalizer(S3, S3.whole()).is_whole()
    assert is_normal(sylow_subgroup(S3, 3))
    assert not is_normal(two)


def test_quotients(S4):
    Q, pi = quotient(S4, S4.whole())
    assert Q.order == 1
    V4 = next(N for N in normal_subgroups(S4) if N.order == 4)
    Q, pi = quotient(S4, V4)
    assert Q.order == 6
    assert pi.is_homomorphism() and pi.kernel() == V4
    assert is_isomorphic(Q, symmetric(3)) is not None
    C6 = cyclic(6)
    Q, _ = quotient(C6, closure(C6, [3]))
    assert Q.order == 3
    with pytest.raises(NotNormal):
        S3 = symmetric(3)
        quotient(S3, sylow_subgroup(S3, 2))


@pytest.mark.parametrize("expr", SMALL[:8])
def test_all_subgroups_match_oracle(expr):
    G = evaluate(expr)
    subs = all_subgroups(G)
    assert len(subs) == len(masks(subs))
    assert [s.order for s in subs] == sorted(s.order for s in subs)
    assert masks(subs) == oracles.subgroups(oracles.table_of(G), 3)


def test_subgroup_counts(S4):
    assert len(all_subgroups(cyclic(7))) == 2
    assert len(all_subgroups(S4)) == 30
    assert len(all_subgroups(quaternion8())) == 6
    assert [N.order for N in normal_subgroups(S4)] == [1, 4, 12, 24]
    assert len(normal_subgroups(cyclic(5))) == 2


def test_normal_subgroups_match_filter():
    for expr in SMALL:
        G = evaluate(expr)
        expected = {s for s in masks(all_subgroups(G)) if oracles.is_normal(oracles.table_of(G), s)}
        assert masks(normal_subgroups(G)) == expected


def test_sylow_and_hall():
    S3 = symmetric(3)
    assert sylow_subgroup(S3, 3).order == 3
    assert hall_subgroup(S3, {2}).order == 2
    F = frobenius600()
    H = hall_subgroup(F, PrimeSet({2, 3}))
    assert H.order == 24
    assert is_isomorphic(H.as_group()[0], evaluate("named(sl2_3)")) is not None


def test_frobenius600_minimal_normal():
    mins = minimal_normal_subgroups(frobenius600())
    assert [M.order for M in mins] == [25]


def test_isomorphism():
    G = symmetric(3)
    phi = is_isomorphic(G, G)
    assert phi is not None and phi.is_isomorphism()
    assert is_isomorphic(cyclic(4), direct_product(cyclic(2), cyclic(2))) is None
    a, b = evaluate("sd(cyclic(3),cyclic(2),inv)"), symmetric(3)
    f, g = is_isomorphic(a, b), is_isomorphic(b, a)
    assert f is not None and g is not None
    assert f.is_homomorphism() and g.is_homomorphism()


def test_series_exponent_frattini():
    assert len(derived_series(cyclic(6))) == 2
    X = extraspecial_27_exp9()
    assert exponent(X) == 9
    assert frattini_subgroup(X) == center(X)
    assert is_solvable(symmetric(4))
    assert not is_solvable(symmetric(5))


def test_intersection_join():
    G = cyclic(12)
    a, b = closure(G, [4]), closure(G, [6])
    assert intersection(a, b).is_trivial()
    assert join(a, b).order == 6


def test_homomorphism_checks():
    C4, C2 = cyclic(4), cyclic(2)
    assert Homomorphism(C4, C2, [0, 1, 0, 1]).kernel().order == 2
    with pytest.raises(Exception):
        Homomorphism(C4, C2, [0, 1, 1, 1])


def test_prime_set():
    assert PrimeSet({2, 3}) == {2, 3}
    with pytest.raises(ValueError):
        PrimeSet({4})


def test_as_group_roundtrip():
    S4 = symmetric(4)
    H = sylow_subgroup(S4, 2)
    Hg, emb = H.as_group()
    assert Hg.order == 8
    assert (S4.table[np.ix_(emb, emb)] == emb[Hg.table]).all()
    assert isinstance(Subgroup(S4, H.members), Subgroup)
