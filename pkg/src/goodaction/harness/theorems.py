"""Hypothesis checklists and conclusion checks for the Fitting-height and module theorems.

Hypotheses are always established mechanically.  A conclusion is evaluated
only when every hypothesis passes; otherwise the report is not-applicable and
names the first failed hypothesis.
"""
from __future__ import annotations

from functools import cached_property
import numpy as np

from ..action_theory import (
    Action,
    commutator,
    fixed_points,
    has_regular_orbits,
    invariant_hall,
    is_cqwrcq_free,
    is_good,
    regular_orbits_check,
)
from ..config import DEFAULT_BOUNDS, Bounds
from ..cyclotomic import (
    component_action,
    fixed_space_dim,
    homogeneous_components,
    irreducible_monomial_reps,
)
from ..errors import GroupError, SearchExhausted
from ..fitting_towers import ell, ell_index, fitting_height
from ..group_core import (
    Subgroup,
    all_subgroups,
    center,
    centralizer,
    commutator_subgroup,
    conjugates,
    exponent,
    hall_subgroup,
    intersection,
    is_elementary_abelian,
    is_nilpotent,
    is_normal,
    is_solvable,
    normal_subgroups,
    normalizer,
    pi,
    prime_divisors,
    sylow_subgroup,
)
from .report import Checklist, TheoremReport


class Context:
    """Lazily computed facts about one action, shared by all verifiers."""

    def __init__(self, act: Action, instance: str, B: Subgroup | None = None, seed: int = 0,
                 bounds: Bounds = DEFAULT_BOUNDS):
        self.act, self.instance, self.seed, self.bounds = act, instance, seed, bounds
        self.B = B if B is not None else act.A.trivial()

    @cached_property
    def good(self) -> bool:
        return is_good(self.act).good

    @cached_property
    def G_solvable(self) -> bool:
        return is_solvable(self.act.G)

    @cached_property
    def A_solvable(self) -> bool:
        return is_solvable(self.act.A)

    @cached_property
    def A_nilpotent(self) -> bool:
        return is_nilpotent(self.act.A)

    @cached_property
    def CGA(self) -> Subgroup:
        return fixed_points(self.act)

    @cached_property
    def h_G(self) -> int:
        return fitting_height(self.act.G)

    @cached_property
    def h_CGA(self) -> int:
        return fitting_height(self.CGA)

    @cached_property
    def ell_A(self) -> int:
        return ell(self.act.A)

    def CGB_odd_all(self) -> bool:
        for B in all_subgroups(self.act.A, self.bounds):
            if not B.is_trivial() and fixed_points(self.act, B).order % 2 == 0:
                return False
        return True


def _report(name: str, ctx: Context, cl: Checklist) -> TheoremReport:
    return TheoremReport.from_checklist(name, ctx.instance, cl, ctx.seed)


def verify_thm_2_9(ctx: Context) -> TheoremReport:
    """|A| prime, C_G(A) odd, good  =>  h(G) <= h(C_G(A)) + 4."""
    cl = Checklist()
    cl.check("A has prime order", lambda: len(prime_divisors(ctx.act.A.order)) == 1
             and ctx.act.A.order in prime_divisors(ctx.act.A.order))
    cl.check("G solvable", lambda: ctx.G_solvable)
    cl.check("C_G(A) has odd order", lambda: ctx.CGA.order % 2 == 1)
    cl.check("action good", lambda: ctx.good)
    r = _report("thm2.9", ctx, cl)
    if cl.ok:
        r.witnesses = {"h(G)": ctx.h_G, "h(C_G(A))": ctx.h_CGA, "bound": ctx.h_CGA + 4}
        r.conclude(ctx.h_G <= ctx.h_CGA + 4)
    return r


def verify_thm_2_10(ctx: Context) -> TheoremReport:
    """C_G(B) odd for all B != 1, good  =>  h(G) <= h(C_G(A)) + 4 l(A)."""
    cl = Checklist()
    cl.check("A solvable", lambda: ctx.A_solvable)
    cl.check("G solvable", lambda: ctx.G_solvable)
    cl.check("C_G(B) has odd order for every nontrivial B <= A", ctx.CGB_odd_all)
    cl.check("action good", lambda: ctx.good)
    r = _report("thm2.10", ctx, cl)
    if cl.ok:
        bound = ctx.h_CGA + 4 * ctx.ell_A
        r.witnesses = {"h(G)": ctx.h_G, "h(C_G(A))": ctx.h_CGA, "l(A)": ctx.ell_A, "bound": bound}
        r.conclude(ctx.h_G <= bound)
    return r


def verify_cor_2_11(ctx: Context) -> TheoremReport:
    """|G| odd, good  =>  h(G) <= h(C_G(A)) + 4 l(A)."""
    cl = Checklist()
    cl.check("A solvable", lambda: ctx.A_solvable)
    cl.check("G solvable", lambda: ctx.G_solvable)
    cl.check("G has odd order", lambda: ctx.act.G.order % 2 == 1)
    cl.check("action good", lambda: ctx.good)
    r = _report("cor2.11", ctx, cl)
    if cl.ok:
        bound = ctx.h_CGA + 4 * ctx.ell_A
        r.witnesses = {"h(G)": ctx.h_G, "h(C_G(A))": ctx.h_CGA, "l(A)": ctx.ell_A, "bound": bound}
        r.conclude(ctx.h_G <= bound)
    return r


def verify_thm_4_2(ctx: Context) -> TheoremReport:
    """A nilpotent, C_G(A) = 1, good  =>  h(G) <= 2 l(A)."""
    cl = Checklist()
    cl.check("G solvable", lambda: ctx.G_solvable)
    cl.check("A nilpotent", lambda: ctx.A_nilpotent)
    cl.check("C_G(A) = 1", lambda: ctx.CGA.is_trivial())
    cl.check("action good", lambda: ctx.good)
    r = _report("thm4.2", ctx, cl)
    if cl.ok:
        r.witnesses = {"h(G)": ctx.h_G, "l(A)": ctx.ell_A, "bound": 2 * ctx.ell_A}
        r.conclude(ctx.h_G <= 2 * ctx.ell_A)
    return r


def _squarefree(n: int) -> bool:
    return all(n % (p * p) for p in prime_divisors(n))


def verify_thm_4_4(ctx: Context) -> TheoremReport:
    """Abelian Sylow 2-subgroups, A abelian of squarefree exponent, C_G(A) = 1, good  =>  h(G) <= l(A)."""
    act = ctx.act
    cl = Checklist()
    cl.check("G solvable", lambda: ctx.G_solvable)
    cl.check("A solvable", lambda: ctx.A_solvable)
    cl.check("G has abelian Sylow 2-subgroups",
             lambda: act.G.order % 2 == 1 or sylow_subgroup(act.G, 2).as_group()[0].is_abelian)
    cl.check("A abelian", lambda: act.A.is_abelian)
    cl.check("A has squarefree exponent", lambda: _squarefree(exponent(act.A)))
    cl.check("action good", lambda: ctx.good)
    cl.check("C_G(A) = 1", lambda: ctx.CGA.is_trivial())
    r = _report("thm4.4", ctx, cl)
    if cl.ok:
        r.witnesses = {"h(G)": ctx.h_G, "l(A)": ctx.ell_A, "bound": ctx.ell_A}
        r.conclude(ctx.h_G <= ctx.ell_A)
    return r


def conjugate_intersection(act: Action, B: Subgroup) -> Subgroup:
    """The intersection of [G,B]^a over a in A, checked A-invariant and normal."""
    GB = commutator(act, B)
    m = GB.members.copy()
    for a in range(act.A.order):
        img = np.zeros(act.G.order, dtype=bool)
        img[act.autos[a][GB.elements]] = True
        m &= img
    X = Subgroup(act.G, m)
    if not (act.is_invariant(X) and is_normal(X)):
        raise GroupError("intersection of conjugates is not A-invariant and normal")
    return X


def verify_thm_4_5(ctx: Context) -> TheoremReport:
    """(a)-(d) for a nilpotent odd-order C_q wr C_q-free A  =>  h(G) <= l(A:B)."""
    act = ctx.act
    B = ctx.B
    cl = Checklist()
    cl.check("G solvable", lambda: ctx.G_solvable)
    cl.check("A nilpotent", lambda: ctx.A_nilpotent)
    cl.check("A has odd order", lambda: act.A.order % 2 == 1)
    cl.check("A is C_q wr C_q-free", lambda: is_cqwrcq_free(act.A, ctx.bounds))
    cl.check("(a) C_G(A) = 1", lambda: ctx.CGA.is_trivial())
    cl.check("(b) action good", lambda: ctx.good)
    cl.check("(c) every subgroup of A acts with regular orbits", lambda: has_regular_orbits(act))
    cl.check("(d) intersection of [G,B]^a over A is trivial",
             lambda: conjugate_intersection(act, B).is_trivial())
    r = _report("thm4.5", ctx, cl)
    if cl.ok:
        li = ell_index(act.A, B)
        r.witnesses = {"h(G)": ctx.h_G, "l(A:B)": li, "|B|": B.order, "bound": li}
        r.conclude(ctx.h_G <= li)
    return r


# -- module theorems: brute-force sweeps over (V, N) ---------------------------------------

def _perm_action(dec, sub: Subgroup) -> dict[int, tuple[int, ...]]:
    """Permutation of components for every element of sub, from generator images."""
    GA = dec.rep.group
    gens = {int(g): component_action(dec, int(g)) for g in sub.generators}
    out = {0: tuple(range(len(dec)))}
    frontier = [0]
    while frontier:
        new = []
        for x in frontier:
            for s, ps in gens.items():
                y = int(GA.table[x, s])
                if y not in out:
                    out[y] = tuple(out[x][ps[i]] for i in range(len(ps)))
                    new.append(y)
        frontier = new
    return out


def _stab_mask(perms: dict, order: int, index: int) -> np.ndarray:
    m = np.zeros(order, dtype=bool)
    for x, p in perms.items():
        if p[index] == index:
            m[x] = True
    return m


def _is_chief_factor(act: Action, N: Subgroup, normals_GA: list[Subgroup]) -> bool:
    G = act.G_in_GA
    if not (N < G):
        return False
    return not any(N < M < G for M in normals_GA)


def _elementary_prime(act: Action, N: Subgroup) -> int | None:
    from ..group_core import quotient
    Gg, emb = act.G_in_GA.as_group()
    pos = np.full(act.GA.order, -1, dtype=np.int64)
    pos[emb] = np.arange(Gg.order)
    Nm = np.zeros(Gg.order, dtype=bool)
    Nm[pos[N.elements]] = True
    Q, _ = quotient(Gg, Subgroup(Gg, Nm))
    ps = prime_divisors(Q.order)
    if len(ps) == 1 and is_elementary_abelian(Q.whole()):
        return ps[0]
    return None


def _A_normalizes_hall(act: Action, r: int) -> bool:
    GA = act.GA
    sigma = [q for q in prime_divisors(GA.order) if q != r]
    if not sigma:
        return True
    H0 = hall_subgroup(GA, sigma)
    if H0 is None:
        return False
    return any(act.A_in_GA <= normalizer(GA, H) for H in conjugates(H0))


def module_sweep_eligible(act: Action, bounds: Bounds) -> str | None:
    """Reason the (V, N) sweep is skipped, or None when it runs."""
    if act.G.order > 100 or act.A.order > 9:
        return "|G| > 100 or |A| > 9"
    if not is_solvable(act.GA):
        return "GA not solvable"
    return None


def _sweep_reps(act: Action, bounds: Bounds):
    try:
        return irreducible_monomial_reps(act.GA, bounds)
    except SearchExhausted:
        return None


def verify_thm_3_1(ctx: Context) -> TheoremReport:
    """Existence of a component U of V_N and B <= A with B <= N_A(U), C_V(B) = 0, [G,B] <= N_G(U)."""
    act, bounds = ctx.act, ctx.bounds
    GA = act.GA
    cl = Checklist()
    cl.check("|G| <= 100 and |A| <= 9 with GA solvable", lambda: module_sweep_eligible(act, bounds) is None)
    cl.check("A nilpotent", lambda: ctx.A_nilpotent)
    cl.check("A acts with regular orbits", lambda: regular_orbits_check(act).ok)
    reps = None
    if cl.ok:
        reps = _sweep_reps(act, bounds)
    cl.check("irreducible GA-modules available as monomial modules", lambda: reps is not None)
    r = _report("thm3.1", ctx, cl)
    if not cl.ok:
        return r
    A_sub = act.A_in_GA
    G_sub = act.G_in_GA
    subsA = [act.to_GA(B, "A") for B in all_subgroups(act.A, bounds)]
    subcases = []
    normals_GA = normal_subgroups(GA, bounds)
    chief = [N for N in normals_GA if N <= G_sub and _is_chief_factor(act, N, normals_GA)]
    chief_r = [(N, _elementary_prime(act, N)) for N in chief]
    hall_ok = {}
    for vi, (V, psi) in enumerate(reps):
        if fixed_space_dim(V, A_sub) != 0:
            continue
        if not homogeneous_components(V, G_sub, bounds).is_homogeneous:
            continue
        cvb = {B.key: fixed_space_dim(V, B) for B in subsA}
        for N, rr in chief_r:
            sc = {"V": vi, "degree": V.degree, "|N|": N.order}
            if rr is None:
                sc["failed_hypothesis"] = "G/N elementary abelian"
                subcases.append(sc)
                continue
            if rr not in hall_ok:
                hall_ok[rr] = _A_normalizes_hall(act, rr)
            sc["r"] = rr
            if not hall_ok[rr]:
                sc["failed_hypothesis"] = "A normalizes a Hall r'-subgroup of GA"
                subcases.append(sc)
                continue
            dec = homogeneous_components(V, N, bounds)
            pG = _perm_action(dec, G_sub)
            pA = _perm_action(dec, A_sub)
            found = None
            for ui in range(len(dec)):
                NGU = _stab_mask(pG, GA.order, ui)
                NAU = _stab_mask(pA, GA.order, ui)
                for B in subsA:
                    if cvb[B.key] != 0 or not NAU[B.elements].all():
                        continue
                    GB = commutator_subgroup(G_sub, B)
                    if not NGU[GB.elements].all():
                        continue
                    if len(dec) > 1 and not GB <= N:
                        continue
                    found = (ui, B)
                    break
                if found:
                    break
            sc["components"] = len(dec)
            sc["conclusion"] = "pass" if found else "fail"
            if found:
                sc["U"], sc["|B|"] = found[0], found[1].order
            subcases.append(sc)
    applicable = [s for s in subcases if "conclusion" in s]
    r.witnesses = {"subcases": subcases, "applicable_subcases": len(applicable)}
    if not applicable:
        r.hypotheses.append(("some (V, N) satisfies all hypotheses", "fail"))
        r.failed_hypothesis = "some (V, N) satisfies all hypotheses"
        return r
    r.hypotheses.append(("some (V, N) satisfies all hypotheses", "pass"))
    return r.conclude(all(s["conclusion"] == "pass" for s in applicable))


def _proper_subgroups(act: Action):
    return [B for B in all_subgroups(act.A, act.bounds) if not B.is_whole()]


def _acts_trivially(V, X: Subgroup) -> bool:
    ident = np.arange(V.degree)
    return all((V.perms[x] == ident).all() and not V.exps[x].any() for x in X.generators)


def verify_thm_3_3(ctx: Context) -> TheoremReport:
    """For every component W of V_N: W is A-invariant, [G,A] <= N_G(W) and G = N_G(W) C_G(A)."""
    act, bounds = ctx.act, ctx.bounds
    GA = act.GA
    cl = Checklist()
    cl.check("|G| <= 100 and |A| <= 9 with GA solvable", lambda: module_sweep_eligible(act, bounds) is None)
    cl.check("G solvable", lambda: ctx.G_solvable)
    cl.check("A nilpotent", lambda: ctx.A_nilpotent)
    cl.check("A acts with regular orbits", lambda: regular_orbits_check(act).ok)
    cl.check("action good", lambda: ctx.good)
    reps = None
    if cl.ok:
        reps = _sweep_reps(act, bounds)
    cl.check("irreducible GA-modules available as monomial modules", lambda: reps is not None)
    r = _report("thm3.3", ctx, cl)
    if not cl.ok:
        return r
    A_sub, G_sub = act.A_in_GA, act.G_in_GA
    proper = [act.to_GA(B, "A") for B in _proper_subgroups(act)]
    normals_GA = normal_subgroups(GA, bounds)
    GA_comm = commutator_subgroup(G_sub, A_sub)
    CGA = act.to_GA(ctx.CGA, "G")
    subcases = []
    counts = {"C_V(A) = 0": 0, "C_V(A0) != 0 for every proper A0 < A": 0}
    for vi, (V, psi) in enumerate(reps):
        if fixed_space_dim(V, A_sub) != 0:
            continue
        counts["C_V(A) = 0"] += 1
        if not homogeneous_components(V, G_sub, bounds).is_homogeneous:
            continue
        if any(fixed_space_dim(V, A0) == 0 for A0 in proper):
            continue
        counts["C_V(A0) != 0 for every proper A0 < A"] += 1
        for N in normals_GA:
            ZN = centralizer(N, N)
            if _acts_trivially(V, commutator_subgroup(ZN, A_sub)):
                continue
            dec = homogeneous_components(V, N, bounds)
            pG = _perm_action(dec, G_sub)
            pA = _perm_action(dec, A_sub)
            ok = True
            for wi in range(len(dec)):
                NGW = _stab_mask(pG, GA.order, wi)
                a_fix = all(p[wi] == wi for p in pA.values())
                comm_in = bool(NGW[GA_comm.elements].all())
                prod = np.zeros(GA.order, dtype=bool)
                prod[GA.table[np.ix_(np.flatnonzero(NGW), CGA.elements)].ravel()] = True
                ok &= a_fix and comm_in and bool((prod == G_sub.members).all())
            subcases.append({"V": vi, "|N|": N.order, "components": len(dec),
                             "conclusion": "pass" if ok else "fail"})
    r.witnesses = {"subcases": subcases, "applicable_subcases": len(subcases), "filter_counts": counts}
    name = "some (V, N) satisfies all hypotheses"
    if not subcases:
        r.hypotheses.append((name, "fail"))
        r.failed_hypothesis = name
        return r
    r.hypotheses.append((name, "pass"))
    return r.conclude(all(s["conclusion"] == "pass" for s in subcases))


THEOREMS = {
    "thm2.9": verify_thm_2_9,
    "thm2.10": verify_thm_2_10,
    "cor2.11": verify_cor_2_11,
    "thm3.1": verify_thm_3_1,
    "thm3.3": verify_thm_3_3,
    "thm4.2": verify_thm_4_2,
    "thm4.4": verify_thm_4_4,
    "thm4.5": verify_thm_4_5,
}
