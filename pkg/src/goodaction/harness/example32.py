"""Reconstruction of the order-189 example where goodness fails and G != N_G(W) C_G(A).

R = C7, sigma of order 9 acting on R by r -> r^2, alpha: sigma -> sigma^4
fixing R.  G = R<sigma>, A = <alpha>, S = <sigma, alpha>, N = R Z(S).
"""
from __future__ import annotations

import numpy as np

from ..constructors import example_3_2
from ..cyclotomic import (
    Character,
    character_of,
    component_action,
    fixed_space_dim,
    homogeneous_components,
    induce_from_linear,
    inner_product,
    linear_characters,
)
from ..group_core import (
    Group,
    Subgroup,
    all_subgroups,
    center,
    centralizer,
    closure,
    commutator_subgroup,
    exponent,
    frattini_subgroup,
    derived_subgroup,
    intersection,
    normal_subgroups,
    quotient,
)
from .report import TheoremReport


def frobenius_structure(Q: Group) -> tuple[int, int] | None:
    """(|kernel|, |complement|) if Q is a Frobenius group, else None."""
    for K in normal_subgroups(Q):
        if K.is_trivial() or K.is_whole():
            continue
        for C in all_subgroups(Q):
            if C.order * K.order != Q.order or not intersection(C, K).is_trivial():
                continue
            if C.is_trivial():
                continue
            fpf = all(
                int((Q.conj(K.elements, int(c)) == K.elements).sum()) == 1
                for c in C.elements if c != 0
            )
            if fpf:
                return K.order, C.order
    return None


def _stabilizer(dec, G_sub: Subgroup, index: int) -> Subgroup:
    """Elements of G_sub fixing component `index`, via permutations of generators."""
    GA = dec.rep.group
    perms = {int(g): component_action(dec, int(g)) for g in G_sub.generators}
    # walk the Cayley graph of G_sub: (x s) W = x (s W)
    act = {0: tuple(range(len(dec)))}
    frontier = [0]
    while frontier:
        new = []
        for x in frontier:
            for s, ps in perms.items():
                y = int(GA.table[x, s])
                if y not in act:
                    act[y] = tuple(act[x][ps[i]] for i in range(len(ps)))
                    new.append(y)
        frontier = new
    m = np.zeros(GA.order, dtype=bool)
    for x, p in act.items():
        if p[index] == index:
            m[x] = True
    return Subgroup(GA, m)


def verify_example_3_2() -> TheoremReport:
    e = example_3_2()
    GA, G, A, N, S, ZS = e.GA, e.G, e.A, e.N, e.S, e.ZS
    clauses: list[tuple[str, str]] = []
    wit: dict = {}

    def clause(name: str, ok: bool):
        clauses.append((name, "pass" if ok else "fail"))

    # 1. S extraspecial of order 27 and exponent 9 with Z(S) = <sigma^3>
    Sg, semb = S.as_group()
    ZSg = center(Sg)
    z_in_GA = Subgroup(GA, np.isin(np.arange(GA.order), semb[ZSg.elements]))
    extraspecial = (ZSg.order == 3 and derived_subgroup(Sg.whole()) == ZSg
                    and frattini_subgroup(Sg) == ZSg)
    clause("S is extraspecial of order 27 and exponent 9 with Z(S) = <sigma^3>",
           S.order == 27 and exponent(Sg) == 9 and extraspecial and z_in_GA == ZS)
    wit["S_order"], wit["S_exponent"] = S.order, exponent(Sg)

    # 2. F = G/Z(S) is Frobenius of order 21
    Gg, gemb = G.as_group()
    pos = np.full(GA.order, -1, dtype=np.int64)
    pos[gemb] = np.arange(Gg.order)
    ZSg_in_G = Subgroup(Gg, np.isin(np.arange(Gg.order), pos[ZS.elements]))
    F, piF = quotient(Gg, ZSg_in_G)
    frob = frobenius_structure(F)
    clause("F = G/Z(S) is a Frobenius group of order 21", F.order == 21 and frob == (7, 3))
    wit["F_order"], wit["F_frobenius"] = F.order, list(frob) if frob else None

    # The GA-module V: induced from A0 = N x <alpha>, lambda nontrivial on R,
    # trivial on sigma^3 and a primitive cube root of unity on alpha.
    A0 = closure(GA, list(N.generators) + [e.alpha])
    sig3 = GA.power(e.sigma, 3)
    lamV = next(l for l in linear_characters(A0)
                if l.exps[e.r] % l.n and l.exps[sig3] % l.n == 0 and l.exps[e.alpha] == l.n // 3)
    V = induce_from_linear(GA, A0, lamV)
    psi = character_of(V)
    V_G = Character(Gg, [V.trace(int(gemb[int(c[0])])) for c in Gg.classes])

    # 3. faithful irreducible chi of F with chi(1) = 3; of the two such
    # characters take the one whose inflation to G is afforded by V.
    K7 = next(K for K in normal_subgroups(F) if K.order == 7)
    cands = []
    for lam in linear_characters(K7):
        if lam.is_trivial():
            continue
        c = character_of(induce_from_linear(F, K7, lam))
        infl = Character(Gg, [c(int(piF.images[int(x[0])])) for x in Gg.classes])
        cands.append((infl != V_G, c, infl))
    cands.sort(key=lambda t: t[0])
    _, chi, chi_G = cands[0]
    clause("chi is an irreducible faithful character of F with chi(1) = 3",
           chi.degree == 3 and inner_product(chi, chi) == 1 and chi.kernel().is_trivial())
    wit["chi_degree"] = int(chi.degree)
    wit["faithful_degree3_characters_of_F"] = len({tuple(c.values) for _, c, _ in cands})

    # 4. chi_N = theta_1 + theta_2 + theta_3, distinct, each fixed by alpha
    dec = homogeneous_components(V, N)
    alpha_perm = component_action(dec, e.alpha)
    sigma_perm = component_action(dec, e.sigma)
    thetas = [c.theta for c in dec.components]
    distinct = len({tuple(t.values) for t in thetas}) == len(thetas)
    clause("chi_N is a sum of three distinct linear characters, each fixed by alpha",
           V_G == chi_G and len(dec) == 3 and all(c.dim == 1 and c.multiplicity == 1 for c in dec.components)
           and distinct and alpha_perm == tuple(range(3)))
    wit["alpha_on_components"] = list(alpha_perm)
    wit["sigma_on_components"] = list(sigma_perm)

    # 5. N_G(W1) = N = C_G(A), both of order 21
    NGW1 = _stabilizer(dec, G, 0)
    CGA = intersection(G, centralizer(GA.whole(), A))
    clause("N_G(W1) = N = C_G(A), of order 21", NGW1 == N == CGA and N.order == 21)
    wit["N_G(W1)_order"], wit["C_G(A)_order"] = NGW1.order, CGA.order

    # 6. G != N_G(W1) C_G(A)
    prod = np.zeros(GA.order, dtype=bool)
    prod[GA.table[np.ix_(NGW1.elements, CGA.elements)].ravel()] = True
    clause("G != N_G(W1) C_G(A)", not (prod == G.members).all())
    wit["product_size"] = int(prod.sum())

    # 7. V irreducible over GA, affording chi on G, with C_V(A) = 0
    cva = fixed_space_dim(V, A)
    clause("V is an irreducible GA-module affording chi on G with C_V(A) = 0",
           inner_product(psi, psi) == 1 and V_G == chi_G and cva == 0)
    wit["dim_C_V(A)"] = cva
    wit["[G,A]_order"] = commutator_subgroup(G, A).order
    wit["[G,A]_in_Z(S)"] = bool(commutator_subgroup(G, A) <= ZS)

    rep = TheoremReport("example3.2", "example32", clauses)
    rep.conclusion = "pass" if all(s == "pass" for _, s in clauses) else "fail"
    rep.failed_hypothesis = None
    rep.witnesses = wit
    return rep
