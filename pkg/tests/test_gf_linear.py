import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from goodaction.constructors import cyclic, evaluate, frobenius600, symmetric
from goodaction.errors import NotAHomomorphism, PreconditionFailed
from goodaction.gf_linear import (
    AffineGroup,
    GModule,
    affine_commutator_with,
    composition_factors,
    exhaustive_irreducible,
    faithful_irreducible_module,
    is_irreducible,
    mat_inv,
    nullspace,
    permutation_module,
    rank,
    spin,
)
from goodaction.group_core import all_subgroups

C3_ON_F4 = np.array([[0, 1], [1, 1]])


def oracle_irreducible(M):
    """Irreducible iff every nonzero vector's invariant span is everything."""
    d, p = M.dim, M.p
    mats = [M.matrix(g) for g in range(M.group.order)]
    for v in oracles.gf_span(list(np.eye(d, dtype=int)), p, d):
        if not any(v):
            continue
        orbit = {tuple(int(x) for x in (m @ np.array(v)) % p) for m in mats}
        if len(oracles.gf_span([np.array(w) for w in orbit], p, d)) < p ** d:
            return False
    return True


def conjugated(M, seed):
    """M twisted by a random change of basis: same module, unrecognisable matrices."""
    rng = np.random.default_rng(seed)
    while True:
        P = rng.integers(0, M.p, size=(M.dim, M.dim))
        if rank(P, M.p) == M.dim:
            break
    Pi = mat_inv(P, M.p)
    return GModule(M.group, M.p, [(P @ m @ Pi) % M.p for m in M.gen_matrices])


def direct_sum(M1, M2):
    mats = []
    for a, b in zip(M1.gen_matrices, M2.gen_matrices):
        z = np.zeros((a.shape[0] + b.shape[0],) * 2, dtype=np.int64)
        z[:a.shape[0], :a.shape[0]] = a
        z[a.shape[0]:, a.shape[0]:] = b
        mats.append(z)
    return GModule(M1.group, M1.p, mats)


def test_linear_algebra():
    m = np.array([[1, 2], [2, 4]])
    assert rank(m, 5) == 1
    ns = nullspace(m, 5)
    assert ns.shape == (1, 2) and not ((m @ ns[0]) % 5).any()
    a = np.array([[2, 1], [1, 1]])
    assert (a @ mat_inv(a, 7) % 7 == np.eye(2)).all()
    with pytest.raises(ZeroDivisionError):
        mat_inv(m, 5)


def test_spin_examples():
    M = GModule(cyclic(3), 2, [C3_ON_F4])
    assert spin(M, np.zeros(2, dtype=int)).dim == 0
    assert spin(M, np.array([1, 0])).dim == 2
    T = GModule.trivial(cyclic(1), 2, 2)
    assert spin(T, np.array([1, 0])).dim == 1
    with pytest.raises(ValueError):
        spin(M, np.array([1, 0, 0]))


def test_module_homomorphism_checked():
    with pytest.raises(NotAHomomorphism):
        GModule(cyclic(2), 2, [C3_ON_F4])


def test_irreducible_examples():
    M = GModule(cyclic(3), 2, [C3_ON_F4])
    v = is_irreducible(M)
    assert v.irreducible and oracle_irreducible(M)
    assert exhaustive_irreducible(M) == (True, None)
    T = GModule.trivial(cyclic(1), 2, 2)
    v = is_irreducible(T)
    assert not v.irreducible and v.witness.dim == 1 and v.witness.is_invariant()
    sign = GModule(cyclic(2), 3, [np.array([[2]])])
    assert is_irreducible(sign).irreducible


PERM_CASES = [("sym(3)", 2), ("sym(3)", 3), ("sym(4)", 2), ("sym(4)", 3), ("cyclic(5)", 2),
              ("cyclic(7)", 2), ("sd(cyclic(7),cyclic(3),pow2)", 2), ("named(q8)", 3),
              ("dp(cyclic(3),cyclic(3))", 2)]


@pytest.mark.parametrize("expr,p", PERM_CASES)
def test_composition_factors_of_permutation_modules(expr, p):
    H = evaluate(expr)
    for L in all_subgroups(H):
        if L.is_whole() or H.order // L.order > 12:
            continue
        P = permutation_module(H, L, p)
        facs = composition_factors(P)
        assert sum(f.dim for f in facs) == P.dim
        for f in facs:
            if p ** f.dim <= 4096:
                assert oracle_irreducible(f)


@settings(max_examples=25)
@given(st.sampled_from(PERM_CASES), st.integers(0, 2 ** 16), st.data())
def test_irreducible_matches_oracle(case, seed, data):
    expr, p = case
    H = evaluate(expr)
    subs = [L for L in all_subgroups(H) if p ** (H.order // L.order) <= 4096 and not L.is_whole()]
    L = data.draw(st.sampled_from(subs))
    facs = composition_factors(permutation_module(H, L, p))
    f = data.draw(st.sampled_from(facs))
    twisted = conjugated(f, seed)
    assert is_irreducible(twisted, seed=seed).irreducible == oracle_irreducible(twisted)
    if len(facs) > 1:
        s = direct_sum(f, facs[0])
        v = is_irreducible(s, seed=seed)
        assert not v.irreducible
        assert v.witness.is_invariant() and v.witness.is_proper_nonzero()


@given(st.sampled_from(PERM_CASES), st.data())
def test_spin_is_closed(case, data):
    expr, p = case
    H = evaluate(expr)
    P = permutation_module(H, H.trivial(), p)
    v = np.array(data.draw(st.lists(st.integers(0, p - 1), min_size=P.dim, max_size=P.dim)))
    S = spin(P, v)
    assert S.is_invariant() and S.contains(v)
    if P.dim <= 8:
        orbit = [tuple((P.matrix(g) @ v) % p) for g in range(H.order)]
        assert p ** S.dim == len(oracles.gf_span([np.array(w) for w in orbit], p, P.dim))


def test_faithful_irreducible_small():
    M = faithful_irreducible_module(cyclic(3), 2)
    assert M.dim == 2 and M.is_faithful() and oracle_irreducible(M)
    M = faithful_irreducible_module(symmetric(3), 2)
    assert M.is_faithful() and oracle_irreducible(M)
    with pytest.raises(PreconditionFailed):
        faithful_irreducible_module(cyclic(2), 2)
    with pytest.raises(PreconditionFailed):
        faithful_irreducible_module(cyclic(6), 5)


@pytest.fixture(scope="module")
def example1():
    H = frobenius600()
    M = faithful_irreducible_module(H, 2)
    return H, M


def test_example1_module(example1):
    H, M = example1
    assert M.is_faithful()
    assert is_irreducible(M, seed=7).irreducible
    assert M.dim == M.provenance["dimension"]


def test_affine_arithmetic(example1):
    H, M = example1
    G = AffineGroup(M)
    assert G.order == 2 ** M.dim * 600
    e = G.identity()
    assert G.eq(G.mul(e, e), e)
    rng = np.random.default_rng(3)
    for _ in range(20):
        a, b, c = (G.random_element(rng) for _ in range(3))
        assert G.eq(G.mul(G.mul(a, b), c), G.mul(a, G.mul(b, c)))
        assert G.is_identity(G.mul(a, G.inv(a)))
        v, w = (G.element(rng.integers(0, 2, M.dim), 0) for _ in range(2))
        assert G.eq(G.mul(v, w), G.element(v[0] + w[0], 0))
        # translations form a normal subgroup
        assert G.conj(v, a)[1] == 0


def test_affine_commutator(example1):
    H, M = example1
    G = AffineGroup(M)
    triv = affine_commutator_with(G, G.identity())
    assert triv.order == 1 and triv.quotient_order == G.order
    x3 = (np.zeros(M.dim, dtype=np.int64), int(np.flatnonzero(H.element_orders == 3)[0]))
    com = affine_commutator_with(G, x3)
    assert com.coprime and com.action_order == 3
    assert com.order * com.quotient_order == G.order * 3
    rng = np.random.default_rng(0)
    for _ in range(15):
        g = G.random_element(rng)
        assert G.comm(g, G.element(*x3)) in com.subgroup
        for t in com.subgroup.gens[:5]:
            assert G.conj(t, g) in com.subgroup
    with pytest.raises(ValueError):
        affine_commutator_with(G, (np.zeros(M.dim + 1, dtype=np.int64), 0))


def test_affine_central_conjugator():
    M = GModule.trivial(cyclic(2), 3, 1)
    G = AffineGroup(M)
    assert affine_commutator_with(G, (np.array([1]), 1)).order == 1
