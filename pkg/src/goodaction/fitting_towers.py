"""Fitting series, prime lengths and A-towers."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
from sympy import factorint

from .action_theory import Action, invariant_hall
from .config import DEFAULT_BOUNDS, Bounds
from .errors import NonSolvableUnsupported, ParentMismatch, PreconditionFailed, SearchExhausted
from .group_core import (
    Group,
    PrimeSet,
    Subgroup,
    all_subgroups,
    center,
    closure,
    exponent,
    frattini_subgroup,
    intersection,
    is_elementary_abelian,
    is_nilpotent,
    is_normal,
    is_solvable,
    join,
    normal_subgroups,
    normalizer,
    prime_divisors,
    quotient,
    sylow_subgroup,
    conjugates,
    core,
    hall_subgroup,
)


# -- cores and the Fitting series --------------------------------------------------

def sigma_core(G: Group, sigma) -> Subgroup:
    """Largest normal subgroup whose order involves only primes in sigma."""
    sigma = PrimeSet(sigma)
    out = G.trivial()
    for N in normal_subgroups(G):
        if set(prime_divisors(N.order)) <= sigma:
            out = join(out, N)
    return out


def p_core(G: Group, p: int) -> Subgroup:
    return core(sylow_subgroup(G, p)) if G.order % p == 0 else G.trivial()


def pprime_core(G: Group, p: int) -> Subgroup:
    return sigma_core(G, [q for q in prime_divisors(G.order) if q != p])


def fitting_subgroup(G: Group) -> Subgroup:
    """F(G) as the product of the O_p(G)."""
    out = G.trivial()
    for p in prime_divisors(G.order):
        out = join(out, p_core(G, p))
    return out


@dataclass(frozen=True, eq=False)
class FittingData:
    series: tuple[Subgroup, ...]     # 1 = F_0 < F_1 < ... < F_h = G

    @property
    def height(self) -> int:
        return len(self.series) - 1


def fitting_series(G: Group) -> FittingData:
    if not is_solvable(G):
        raise NonSolvableUnsupported("Fitting series of a non-solvable group does not reach G")
    series = [G.trivial()]
    while not series[-1].is_whole():
        Q, pi_ = quotient(G, series[-1])
        series.append(pi_.preimage(fitting_subgroup(Q)))
    return FittingData(tuple(series))


def fitting_height(G: Group | Subgroup) -> int:
    if isinstance(G, Subgroup):
        G = G.as_group()[0]
    return fitting_series(G).height


def ell(n) -> int:
    """Number of prime factors of n (or of |n| for a group) with multiplicity."""
    if isinstance(n, (Group, Subgroup)):
        n = n.order
    return sum(factorint(n).values())


def ell_index(A: Group | Subgroup, B: Subgroup) -> int:
    if isinstance(A, Subgroup):
        if not B <= A:
            raise ParentMismatch("B is not a subgroup of A")
        return ell(A.order // B.order)
    if B.parent is not A:
        raise ParentMismatch("B is not a subgroup of A")
    return ell(A.order // B.order)


# -- towers --------------------------------------------------------------------------

def _prime_of(S: Subgroup) -> int | None:
    ps = prime_divisors(S.order)
    return ps[0] if len(ps) == 1 else None


def _normalizes(G: Group, X: Subgroup, Y: Subgroup) -> bool:
    if not X.generators:
        return True
    c = G.conj(Y.elements[:, None], np.array(X.generators)[None, :])
    return bool(Y.members[c].all())


def _centralizer_mod(G: Group, S: Subgroup, U: Subgroup, T: Subgroup) -> Subgroup:
    """{s in S : u^-1 u^s in T for all u in U}, i.e. C_S(U/T)."""
    us = U.elements
    m = S.members.copy()
    for s in S.elements:
        c = G.table[G.inverse[us], G.conj(us, s)]
        if not T.members[c].all():
            m[s] = False
    return Subgroup(G, m)


@dataclass
class TowerData:
    S: list[Subgroup]
    T: list[Subgroup] = field(default_factory=list)
    primes: list[int | None] = field(default_factory=list)
    H: list[Subgroup | None] = field(default_factory=list)   # witnesses for (7), index i-1
    route: str = ""

    @property
    def height(self) -> int:
        return len(self.S)


def complete_tower(G: Group, S: list[Subgroup]) -> TowerData:
    """Fill in T_i = C_{S_i}(P_{i+1}) top-down and the primes."""
    h = len(S)
    T = [None] * h
    for i in range(h - 1, -1, -1):
        if i == h - 1:
            T[i] = G.trivial()
        else:
            T[i] = _centralizer_mod(G, S[i], S[i + 1], T[i + 1])
    return TowerData(list(S), T, [_prime_of(s) for s in S])


@dataclass
class ConditionReport:
    results: dict[str, bool]
    details: dict[str, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.results.values())


def verify_tower(act: Action, t: TowerData) -> ConditionReport:
    G = act.G
    for s in t.S:
        if s.parent is not G or not act.is_invariant(s):
            raise PreconditionFailed("tower terms must be A-invariant subgroups of G")
    h = t.height
    res, det = {}, {}
    res["1"] = all(p is not None for p in t.primes)
    res["2"] = all(_normalizes(G, t.S[i], t.S[j]) for i in range(h) for j in range(i, h))
    res["3"] = all(t.T[i] != t.S[i] for i in range(h))
    res["4"] = all(t.primes[i] != t.primes[i + 1] for i in range(h - 1))
    for k, v in res.items():
        if not v:
            det[k] = f"condition {k} fails"
    return ConditionReport(res, det)


def _P_group(G: Group, S: Subgroup, T: Subgroup):
    """P = S/T as a Cayley group together with the composite map S -> P."""
    Sg, emb = S.as_group()
    pos = np.full(G.order, -1, dtype=np.int64)
    pos[emb] = np.arange(Sg.order)
    Tm = np.zeros(Sg.order, dtype=bool)
    Tm[pos[T.elements]] = True
    P, pi_ = quotient(Sg, Subgroup(Sg, Tm))
    return P, pi_, emb, pos


def _frattini_lift(G: Group, S: Subgroup, T: Subgroup) -> tuple[Subgroup, object]:
    """Preimage in S of Phi(S/T), plus the quotient data."""
    P, pi_, emb, pos = _P_group(G, S, T)
    F = frattini_subgroup(P)
    pre = pi_.preimage(F)
    m = np.zeros(G.order, dtype=bool)
    m[emb[pre.elements]] = True
    return Subgroup(G, m), (P, pi_, emb, pos, F)


def _elementary_basis(Q: Group, p: int):
    """Basis and coordinates of an elementary abelian p-group."""
    basis = []
    span = np.zeros(Q.order, dtype=bool)
    span[0] = True
    for x in range(Q.order):
        if not span[x]:
            basis.append(x)
            span = closure(Q, basis).members
    coords = np.zeros((Q.order, len(basis)), dtype=np.int64)
    for c in itertools.product(range(p), repeat=len(basis)):
        x = 0
        for b, k in zip(basis, c):
            x = Q.table[x, Q.power(b, k)]
        coords[x] = c
    return basis, coords


def frattini_factor_module(act: Action, t: TowerData, i: int, seed: int = 0):
    """P_i / Phi(P_i) as a GF(p_i)-module for (S_1 ... S_{i-1}) A acting by conjugation."""
    from .gf_linear import GModule
    G, GA = act.G, act.GA
    p = t.primes[i]
    F, _ = _frattini_lift(G, t.S[i], t.T[i])
    Sg, emb = t.S[i].as_group()
    pos = np.full(G.order, -1, dtype=np.int64)
    pos[emb] = np.arange(Sg.order)
    Fm = np.zeros(Sg.order, dtype=bool)
    Fm[pos[F.elements]] = True
    Q, pi_ = quotient(Sg, Subgroup(Sg, Fm))
    basis, coords = _elementary_basis(Q, p)
    # acting group X inside GA
    gens = [int(act.embed_G[x]) for j in range(i) for x in t.S[j].generators]
    gens += [int(act.embed_A[a]) for a in act.A.generators]
    X = closure(GA, gens)
    Xg, xemb = X.as_group()
    posG = np.full(GA.order, -1, dtype=np.int64)
    posG[act.embed_G] = np.arange(G.order)
    lifts = [int(emb[np.flatnonzero(pi_.images == b)[0]]) for b in basis]
    mats = []
    for x in Xg.generators:
        xi = GA.inverse[int(xemb[x])]
        m = np.zeros((len(basis), len(basis)), dtype=np.int64)
        for k, v in enumerate(lifts):
            w = posG[GA.conj(int(act.embed_G[v]), int(xi))]      # v^(x^-1)
            m[:, k] = coords[pi_.images[pos[w]]]
        mats.append(m)
    return GModule(Xg, p, mats, dim=len(basis))


def verify_irreducible_tower(act: Action, t: TowerData, seed: int = 0) -> ConditionReport:
    from .gf_linear import is_irreducible
    base = verify_tower(act, t)
    if not base.ok:
        raise PreconditionFailed("conditions (1)-(4) fail")
    G = act.G
    h = t.height
    res, det = {}, {}
    ok5 = True
    lifts = []
    for i in range(h):
        F, (P, _pi, _emb, _pos, PhiP) = _frattini_lift(G, t.S[i], t.T[i])
        lifts.append(F)
        PhiPg = PhiP.as_group()[0]
        if not frattini_subgroup(PhiPg).is_trivial():
            ok5 = False
            det.setdefault("5", f"Phi(Phi(P_{i + 1})) != 1")
        if not PhiP <= center(P):
            ok5 = False
            det.setdefault("5", f"Phi(P_{i + 1}) not central")
        if t.primes[i] != 2 and exponent(P) not in (1, t.primes[i]):
            ok5 = False
            det.setdefault("5", f"P_{i + 1} has exponent {exponent(P)}")
        if i > 0 and _centralizer_mod(G, t.S[i - 1], F, t.T[i]) != t.S[i - 1]:
            ok5 = False
            det.setdefault("5", f"P_{i} does not centralize Phi(P_{i + 1})")
    res["5"] = ok5
    P1 = _P_group(G, t.S[0], t.T[0])[0]
    res["6"] = P1.order > 1 and is_elementary_abelian(P1.whole())
    ok7 = True
    witnesses = [None] * h
    for i in range(1, h):
        w = _find_h_witness(act, t, i)
        witnesses[i] = w
        if w is None:
            ok7 = False
            det.setdefault("7", f"no H_{i + 1}")
    res["7"] = ok7
    t.H = witnesses
    ok8 = True
    for i in range(h):
        M = frattini_factor_module(act, t, i, seed)
        if M.dim > 1 and not is_irreducible(M, seed=seed).irreducible:
            ok8 = False
            det.setdefault("8", f"P_{i + 1}/Phi(P_{i + 1}) is reducible")
    res["8"] = ok8
    return ConditionReport(res, det)


def _find_h_witness(act: Action, t: TowerData, i: int) -> Subgroup | None:
    """L with T_{i-1} <= L <= S_{i-1}, L/T_{i-1} elementary abelian, A-invariant, [L,S_i]T_i = S_i."""
    G = act.G
    S_prev, T_prev = t.S[i - 1], t.T[i - 1]
    Sg, emb = S_prev.as_group()
    for Lg in all_subgroups(Sg):
        m = np.zeros(G.order, dtype=bool)
        m[emb[Lg.elements]] = True
        L = Subgroup(G, m)
        if not (T_prev <= L and act.is_invariant(L)):
            continue
        P, _, _, _ = _P_group(G, L, T_prev)
        if not is_elementary_abelian(P.whole()):
            continue
        us = t.S[i].elements
        seeds = [int(G.comm(int(u), int(l))) for u in us for l in L.generators]
        C = join(closure(G, seeds), t.T[i])
        if C == t.S[i]:
            return L
    return None


def _invariant_p_subgroups(act: Action) -> list[Subgroup]:
    return [S for S in all_subgroups(act.G, act.bounds)
            if not S.is_trivial() and _prime_of(S) is not None and act.is_invariant(S)]


def _extend_down(G: Group, chain: list[Subgroup], T_top: Subgroup | None, cand: Subgroup):
    """Try placing cand below the current bottom-most index; return its T or None."""
    if chain:
        top = chain[0]
        if _prime_of(cand) == _prime_of(top):
            return None
        if not all(_normalizes(G, cand, s) for s in chain):
            return None
        T = _centralizer_mod(G, cand, top, T_top)
    else:
        T = G.trivial()
    return T if T != cand else None


def tallest_tower(act: Action, pool: list[Subgroup] | None = None, stop_at: int | None = None) -> TowerData:
    """Exhaustive DFS for a tallest tower built from the pool (default: all A-invariant p-subgroups)."""
    G = act.G
    pool = _invariant_p_subgroups(act) if pool is None else pool
    best: list[list[Subgroup]] = [[]]

    def dfs(chain, T_top):
        if len(chain) > len(best[0]):
            best[0] = list(chain)
        if stop_at is not None and len(best[0]) >= stop_at:
            return True
        for c in pool:
            T = _extend_down(G, chain, T_top, c)
            if T is not None:
                if dfs([c] + chain, T):
                    return True
        return False

    dfs([], None)
    t = complete_tower(G, best[0])
    t.route = "exhaustive"
    return t


def find_tower(act: Action, bounds: Bounds = DEFAULT_BOUNDS) -> TowerData:
    """A tower of height h(G) built along the Fitting series, with an exhaustive fallback."""
    G = act.G
    fd = fitting_series(G)
    h = fd.height
    if h == 0:
        return TowerData([], [], [], [], route="trivial")

    def sylows(M: Subgroup, p: int) -> list[Subgroup]:
        Mg, memb = M.as_group()
        out = []
        if Mg.order % p:
            return out
        H0 = hall_subgroup(Mg, {p})
        for H in conjugates(H0):
            m = np.zeros(G.order, dtype=bool)
            m[memb[H.elements]] = True
            S = Subgroup(G, m)
            if act.is_invariant(S):
                out.append(S)
        return out

    def dfs(level: int, chain: list[Subgroup], T_top):
        # chain holds S_{level+1..h}; choose S_level inside F_{h-level+1}
        if level == 0:
            return chain
        F = fd.series[h - level + 1]
        M = F
        for s in chain:
            M = intersection(M, normalizer(G, s))
        for p in prime_divisors(M.order):
            for S in sylows(M, p):
                T = _extend_down(G, chain, T_top, S)
                if T is None:
                    continue
                got = dfs(level - 1, [S] + chain, T)
                if got is not None:
                    return got
        return None

    chain = dfs(h, [], None)
    if chain is not None:
        t = complete_tower(G, chain)
        t.route = "fitting"
    elif G.order <= bounds.tower_search:
        t = tallest_tower(act, stop_at=h)
        if t.height < h:
            raise SearchExhausted(f"no tower of height {h} found")
    else:
        raise SearchExhausted(f"no tower of height {h} along the Fitting series")
    if not verify_tower(act, t).ok or t.height != h:
        raise SearchExhausted("constructed tower fails verification")
    return t
