from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from goodaction.constructors import cyclic, evaluate, example_3_2, symmetric
from goodaction.cyclotomic import (
    Cyclotomic,
    LinearCharacter,
    MonomialRep,
    character_of,
    component_action,
    fixed_space_dim,
    homogeneous_components,
    induce_from_linear,
    inner_product,
    irreducible_characters,
    linear_characters,
    trivial_character,
)
from goodaction.errors import ArithmeticMismatch, IndexBoundExceeded, NotLinearCharacter, NotNormal, SearchExhausted
from goodaction.group_core import all_subgroups, closure, normal_subgroups, sylow_subgroup

F21 = "sd(cyclic(7),cyclic(3),pow2)"


def numeric(x: Cyclotomic) -> complex:
    return sum(complex(float(c)) * np.exp(2j * np.pi * k / x.n) for k, c in enumerate(x.coeffs))


def z(n, k=1):
    return Cyclotomic.zeta(n, k)


cyc = st.builds(
    lambda n, cs: Cyclotomic.from_powers(n, dict(enumerate(cs))),
    st.sampled_from([1, 3, 4, 5, 7, 8, 9, 12, 21]),
    st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), max_size=6),
)


def test_cyclotomic_examples():
    s = Cyclotomic.rational(0)
    for k in range(7):
        s = s + z(7, k)
    assert s.is_zero() and s == 0
    assert z(12).conjugate() == z(12, 11)
    assert z(3).embed(21) == z(21, 7)
    assert z(3) == z(21, 7)
    assert z(4) * z(4) == -1
    assert (z(5) * z(5).inverse()) == 1
    assert Cyclotomic.rational(Fraction(3, 2)).to_rational() == Fraction(3, 2)
    assert not z(3).is_rational()


@given(cyc, cyc, cyc)
def test_ring_axioms_against_numeric(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert abs(numeric(a * b) - numeric(a) * numeric(b)) < 1e-9
    assert abs(numeric(a + b) - (numeric(a) + numeric(b))) < 1e-9
    assert abs(numeric(a.conjugate()) - numeric(a).conjugate()) < 1e-9
    if not a.is_zero():
        assert a * a.inverse() == 1
    assert (a == b) == (abs(numeric(a) - numeric(b)) < 1e-9)


@given(st.sampled_from([3, 5, 8, 9, 12, 15]), st.integers(0, 100))
def test_embedding_compatible(n, k):
    x = z(n, k)
    for m in (2 * n, 3 * n):
        assert x.embed(m) == x
        assert abs(numeric(x.embed(m)) - numeric(x)) < 1e-9


def test_linear_character_checks():
    C6 = cyclic(6)
    chars = linear_characters(C6.whole())
    assert len(chars) == 6
    assert sum(ch.is_trivial() for ch in chars) == 1
    with pytest.raises(NotLinearCharacter):
        LinearCharacter(C6.whole(), 6, np.array([0, 1, 1, 1, 1, 1]))


def test_induce_examples():
    G = cyclic(4)
    lam = linear_characters(G.whole())[0]
    rep = induce_from_linear(G, G.whole(), lam)
    assert rep.degree == 1 and character_of(rep) == trivial_character(G)

    F = evaluate(F21)
    K = sylow_subgroup(F, 7)
    for lam in linear_characters(K):
        chi = character_of(induce_from_linear(F, K, lam))
        assert chi.degree == 3
        # trivial lambda: one term per (K, K) double coset, i.e. |F:K| = 3
        assert inner_product(chi, chi) == (3 if lam.is_trivial() else 1)

    S3 = symmetric(3)
    C3 = sylow_subgroup(S3, 3)
    lam = next(l for l in linear_characters(C3) if not l.is_trivial())
    chi = character_of(induce_from_linear(S3, C3, lam))
    assert chi.degree == 2 and inner_product(chi, chi) == 1


def test_index_bound():
    G = cyclic(30)
    with pytest.raises(IndexBoundExceeded):
        induce_from_linear(G, G.trivial(), linear_characters(G.trivial())[0])


def test_regular_and_trivial_inner_products():
    G = symmetric(3)
    reg = induce_from_linear(G, G.trivial(), linear_characters(G.trivial())[0])
    chi = character_of(reg)
    one = trivial_character(G)
    assert inner_product(one, one) == 1
    assert inner_product(chi, one) == 1
    assert inner_product(chi, chi) == 6


def test_non_monomial_group_reported():
    # SL(2,3) has a degree-2 character induced from no linear character
    with pytest.raises(SearchExhausted):
        irreducible_characters(evaluate("named(sl2_3)"))


def test_bad_monomial_rep():
    G = cyclic(2)
    with pytest.raises(ArithmeticMismatch):
        MonomialRep(G, 2, np.array([[0, 1], [1, 0]]), np.array([[0, 0], [1, 0]]))


GROUPS = ["sym(3)", "sym(4)", F21, "named(q8)", "sd(cyclic(4),cyclic(2),inv)", "dp(cyclic(3),cyclic(2))",
          "dp(cyclic(2),cyclic(2))"]


@pytest.mark.parametrize("expr", GROUPS)
def test_irreducible_characters(expr):
    G = evaluate(expr)
    irr = irreducible_characters(G)
    assert len(irr) == len(G.classes)
    assert sum(int(c.degree) ** 2 for c in irr) == G.order
    for i, a in enumerate(irr):
        for j, b in enumerate(irr):
            assert inner_product(a, b) == (i == j)
        for g in range(G.order):
            assert a(int(G.inverse[g])) == a(g).conjugate()


@settings(max_examples=30)
@given(st.sampled_from(GROUPS), st.data())
def test_induced_reps_against_numeric(expr, data):
    G = evaluate(expr)
    H = data.draw(st.sampled_from([H for H in all_subgroups(G) if G.order // H.order <= 12]))
    lam = data.draw(st.sampled_from(linear_characters(H)))
    rep = induce_from_linear(G, H, lam)
    assert rep.degree == G.order // H.order
    chi = character_of(rep)
    assert abs(inner_product(chi, chi) - oracles.inner_numeric(rep, rep)) < 1e-8
    for g in range(G.order):
        assert abs(numeric(rep.trace(g)) - np.trace(oracles.monomial_matrix(rep, g))) < 1e-8
    B = data.draw(st.sampled_from(all_subgroups(G)))
    assert fixed_space_dim(rep, B) == oracles.fixed_dim_numeric(rep, B.elements)
    N = data.draw(st.sampled_from(normal_subgroups(G)))
    dec = homogeneous_components(rep, N)
    assert sum(c.dim for c in dec.components) == rep.degree
    for n in N.elements:
        assert component_action(dec, int(n)) == tuple(range(len(dec)))


def test_decomposition_examples():
    C2 = cyclic(2)
    reg = induce_from_linear(C2, C2.trivial(), linear_characters(C2.trivial())[0])
    assert len(homogeneous_components(reg, C2.trivial())) == 1
    assert len(homogeneous_components(reg, C2.whole())) == 2
    assert fixed_space_dim(reg, C2.trivial()) == 2
    assert fixed_space_dim(reg, C2.whole()) == 1
    S3 = symmetric(3)
    reg3 = induce_from_linear(S3, S3.trivial(), linear_characters(S3.trivial())[0])
    with pytest.raises(NotNormal):
        homogeneous_components(reg3, sylow_subgroup(S3, 2))


def test_example_3_2_module():
    e = example_3_2()
    GA = e.GA
    A0 = closure(GA, list(e.N.generators) + [e.alpha])
    sig3 = GA.power(e.sigma, 3)
    lam = next(l for l in linear_characters(A0)
               if l.exps[e.r] % l.n and l.exps[sig3] % l.n == 0 and l.exps[e.alpha] == l.n // 3)
    V = induce_from_linear(GA, A0, lam)
    psi = character_of(V)
    assert V.degree == 3 and inner_product(psi, psi) == 1
    assert fixed_space_dim(V, e.A) == 0 == oracles.fixed_dim_numeric(V, e.A.elements)
    dec = homogeneous_components(V, e.N)
    assert len(dec) == 3 and all(c.dim == 1 for c in dec.components)
    assert component_action(dec, e.alpha) == (0, 1, 2)
    perm = component_action(dec, e.sigma)
    assert sorted(perm) == [0, 1, 2] and all(perm[i] != i for i in range(3))
