"""Automorphism actions A -> Aut(G), realized inside the semidirect product GA.

Every subgroup-valued answer is a Subgroup of the abstract group G (or A);
the GA realization is kept alongside and cross-checked against the
automorphism tables.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

import numpy as np

from .config import DEFAULT_BOUNDS, Bounds
from .constructors import semidirect_product, wreath_cyclic, cyclic
from .errors import (
    ArithmeticMismatch,
    HypothesisFailed,
    NonSolvableUnsupported,
    OrderBoundExceeded,
    ParentMismatch,
    PreconditionFailed,
)
from .group_core import (
    Group,
    PrimeSet,
    Subgroup,
    _invariants,
    all_subgroups,
    closure,
    commutator_subgroup,
    conjugates,
    derived_length,
    exponent,
    hall_subgroup,
    is_isomorphic,
    is_normal,
    is_nilpotent,
    is_solvable,
    normal_subgroups,
    pi,
    prime_divisors,
    quotient,
    center,
)


class Action:
    """A acting on G from the right: ``autos[a][g] = g^a``."""

    def __init__(self, G: Group, A: Group, gen_maps: Sequence[np.ndarray],
                 bounds: Bounds = DEFAULT_BOUNDS, label: str = ""):
        self.G, self.A, self.bounds = G, A, bounds
        self.label = label or f"{A.label} on {G.label}"
        sd = semidirect_product(G, A, gen_maps, label=f"GA[{self.label}]", bounds=bounds)
        self.GA = sd.group
        self.embed_G = sd.embed_normal
        self.embed_A = sd.embed_complement
        self.G_in_GA = sd.normal
        self.A_in_GA = sd.complement
        self.autos = sd.auto
        self._check()
        self._memo: dict = {}

    def _check(self) -> None:
        GA, eg, ea = self.GA, self.embed_G, self.embed_A
        if not is_normal(self.G_in_GA):
            raise ArithmeticMismatch("G is not normal in GA")
        if self.G_in_GA.order * self.A_in_GA.order != GA.order:
            raise ArithmeticMismatch("G and A do not fill GA")
        for a in self.A.generators:
            conj = GA.conj(eg, int(ea[a]))
            if not (conj == eg[self.autos[a]]).all():
                raise ArithmeticMismatch("conjugation in GA disagrees with the automorphism table")

    # -- translation between G and GA ---------------------------------------------
    def to_GA(self, H: Subgroup, side: str | None = None) -> Subgroup:
        """Image of a subgroup of G (side="G") or of A (side="A") in GA.

        The side may be omitted unless G and A are the same group object.
        """
        if side is None:
            if self.G is self.A:
                raise ParentMismatch("G and A coincide; pass side='G' or side='A'")
            side = "G" if H.parent is self.G else "A" if H.parent is self.A else ""
        if side not in ("G", "A") or H.parent is not (self.G if side == "G" else self.A):
            raise ParentMismatch("subgroup of neither G nor A")
        m = np.zeros(self.GA.order, dtype=bool)
        m[(self.embed_G if side == "G" else self.embed_A)[H.elements]] = True
        return Subgroup(self.GA, m)

    def from_GA(self, X: Subgroup) -> Subgroup:
        """Pull back a subgroup of GA that lies inside the copy of G."""
        if not X <= self.G_in_GA:
            raise ParentMismatch("subgroup is not inside G")
        m = X.members[self.embed_G]
        return Subgroup(self.G, m)

    # -- basic predicates -------------------------------------------------------------
    def is_invariant(self, H: Subgroup, B: Subgroup | None = None) -> bool:
        gens = (B or self.A.whole()).generators
        return all(H.members[self.autos[b][H.elements]].all() for b in gens)

    def is_coprime(self) -> bool:
        return gcd(self.G.order, self.A.order) == 1

    def restrict(self, H: Subgroup, B: Subgroup) -> "Action":
        """The action of B on the B-invariant subgroup H, as a new Action."""
        if not self.is_invariant(H, B):
            raise PreconditionFailed("H is not B-invariant")
        Hg, hemb = H.as_group()
        Bg, bemb = B.as_group()
        pos = np.full(self.G.order, -1, dtype=np.int64)
        pos[hemb] = np.arange(Hg.order)
        maps = [pos[self.autos[int(bemb[b])][hemb]] for b in Bg.generators]
        return Action(Hg, Bg, maps, self.bounds, label=f"{Bg.label} on {Hg.label}")

    def induced_on_quotient(self, N: Subgroup, B: Subgroup | None = None) -> tuple["Action", object]:
        """The induced action of B on G/N; returns the action and the quotient map."""
        B = B or self.A.whole()
        if not (is_normal(N) and self.is_invariant(N, B)):
            raise PreconditionFailed("N must be normal and B-invariant")
        Q, pi_ = quotient(self.G, N)
        Bg, bemb = B.as_group()
        maps = []
        for b in Bg.generators:
            img = np.empty(Q.order, dtype=np.int64)
            auto = self.autos[int(bemb[b])]
            for x in range(self.G.order):
                img[pi_.images[x]] = pi_.images[auto[x]]
            maps.append(img)
        return Action(Q, Bg, maps, self.bounds, label=f"{Bg.label} on {Q.label}"), pi_

    def __repr__(self):
        return f"Action({self.label}: |G|={self.G.order}, |A|={self.A.order})"


def make_action(G: Group, A: Group, gen_maps: Sequence[np.ndarray],
                bounds: Bounds = DEFAULT_BOUNDS, label: str = "") -> Action:
    return Action(G, A, gen_maps, bounds, label)


def trivial_action(G: Group, A: Group) -> Action:
    return Action(G, A, [np.arange(G.order)] * len(A.generators))


def inner_action(G: Group, x: int, bounds: Bounds = DEFAULT_BOUNDS) -> Action:
    """A = <conjugation by x>, with |A| the order of x modulo Z(G)."""
    Z = center(G)
    k, y = 1, x
    while not Z.members[y]:
        y = G.table[y, x]
        k += 1
    auto = G.conj(np.arange(G.order), x)
    return Action(G, cyclic(k), [auto], bounds, label=f"inner({x}) on {G.label}")


# -- fixed points and commutators -------------------------------------------------------

def _check_sub_of_A(act: Action, B: Subgroup | None) -> Subgroup:
    if B is None:
        return act.A.whole()
    if B.parent is not act.A:
        raise ParentMismatch("B must be a subgroup of A")
    return B


def fixed_points(act: Action, B: Subgroup | None = None, H: Subgroup | None = None) -> Subgroup:
    """C_H(B), with H = G by default."""
    B = _check_sub_of_A(act, B)
    m = np.ones(act.G.order, dtype=bool) if H is None else H.members.copy()
    for b in B.generators:
        m &= act.autos[b] == np.arange(act.G.order)
    return Subgroup(act.G, m)


def commutator(act: Action, B: Subgroup | None = None, H: Subgroup | None = None) -> Subgroup:
    """[H, B] generated by h^-1 h^b for h in H, b in B."""
    B = _check_sub_of_A(act, B)
    G = act.G
    hs = np.arange(G.order) if H is None else H.elements
    seeds = set()
    for b in B.elements:
        seeds.update(int(x) for x in G.table[G.inverse[hs], act.autos[b][hs]])
    return closure(G, sorted(seeds))


def commutator_via_GA(act: Action, B: Subgroup | None = None) -> Subgroup:
    B = _check_sub_of_A(act, B)
    return act.from_GA(commutator_subgroup(act.G_in_GA, act.to_GA(B, "A")))


# -- goodness ------------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GoodnessReport:
    good: bool
    B: Subgroup | None = None
    H: Subgroup | None = None
    HB: Subgroup | None = None
    CHB: Subgroup | None = None
    pairs_checked: int = 0

    def __bool__(self):
        return self.good

    def witness_sizes(self):
        if self.good:
            return None
        return {"B": self.B.order, "H": self.H.order, "[H,B]": self.HB.order, "C_H(B)": self.CHB.order}


def _product_mask(G: Group, X: Subgroup, Y: Subgroup) -> np.ndarray:
    m = np.zeros(G.order, dtype=bool)
    m[G.table[np.ix_(X.elements, Y.elements)].ravel()] = True
    return m


def invariant_subgroups(act: Action, B: Subgroup | None = None) -> list[Subgroup]:
    B = _check_sub_of_A(act, B)
    return [H for H in all_subgroups(act.G, act.bounds) if act.is_invariant(H, B)]


def _pair_good(act: Action, B: Subgroup, H: Subgroup):
    HB = commutator(act, B, H)
    CHB = fixed_points(act, B, H)
    ok = bool((_product_mask(act.G, HB, CHB) == H.members).all())
    return ok, HB, CHB


def is_good(act: Action) -> GoodnessReport:
    """Check H = [H,B] C_H(B) for every B <= A and B-invariant H <= G.

    Pairs are scanned by (|B|, |H|) so the first failure is the minimal one.
    """
    if "good" in act._memo:
        return act._memo["good"]
    subsA = all_subgroups(act.A, act.bounds)
    subsG = all_subgroups(act.G, act.bounds)
    checked = 0
    report = None
    for B in subsA:
        if B.is_trivial():
            continue
        for H in subsG:
            if H.is_trivial() or not act.is_invariant(H, B):
                continue
            checked += 1
            ok, HB, CHB = _pair_good(act, B, H)
            if not ok:
                if len(_product_mask(act.G, HB, CHB).nonzero()[0]) >= H.order:
                    raise ArithmeticMismatch("failure witness does not have a smaller product")
                report = GoodnessReport(False, B, H, HB, CHB, checked)
                break
        if report is not None:
            break
    if report is None:
        report = GoodnessReport(True, pairs_checked=checked)
    act._memo["good"] = report
    return report


def prop23_criterion(act: Action) -> bool:
    """gcd(|[G,A]|, |GA / [G,A]|) = 1."""
    c = commutator(act).order
    return gcd(c, act.GA.order // c) == 1


# -- Prop 2.2 / 2.5 identities ----------------------------------------------------------------

@dataclass
class Prop22Report:
    part1: bool = True
    part2: bool = True
    part3: bool = True
    part4: bool = True
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.part1 and self.part2 and self.part3 and self.part4


def check_prop_2_2(act: Action, quotient_goodness: bool = True) -> Prop22Report:
    """Check the four consequences of goodness for every B <= A.

    (1) the restricted action of B on each B-invariant H is good,
    (2) [H,B,B] = [H,B],
    (3) C_{H/N}(B) = C_H(B)N/N for normal B-invariant N <= H,
    (4) the induced action on G/N is good.
    """
    if not is_good(act):
        raise HypothesisFailed("the action is not good")
    rep = Prop22Report()
    G = act.G
    subsA = all_subgroups(act.A, act.bounds)
    subsG = all_subgroups(act.G, act.bounds)
    normals = normal_subgroups(G, act.bounds)
    good_pairs: dict[tuple[bytes, bytes], bool] = {}
    for B in subsA:
        invH = [H for H in subsG if act.is_invariant(H, B)]
        for H in invH:
            good_pairs[(B.key, H.key)] = _pair_good(act, B, H)[0]
    for B in subsA:
        subsB = [C for C in subsA if C <= B]
        invH = [H for H in subsG if act.is_invariant(H, B)]
        for H in invH:
            # (1) from the table of pairs inside (H, B)
            for C in subsB:
                for K in subsG:
                    if K <= H and act.is_invariant(K, C) and not good_pairs[(C.key, K.key)]:
                        rep.part1 = False
                        rep.failures.append(("1", B.order, H.order))
            # (2)
            HB = commutator(act, B, H)
            if commutator(act, B, HB) != HB:
                rep.part2 = False
                rep.failures.append(("2", B.order, H.order))
        # (3) and (4)
        for N in normals:
            if not act.is_invariant(N, B) or N.is_trivial():
                continue
            qact, pi_ = act.induced_on_quotient(N, B)
            Bq = qact.A.whole()
            for H in invH:
                if not N <= H:
                    continue
                Hq = pi_.image_of(H)
                lhs = fixed_points(qact, Bq, Hq)
                rhs = pi_.image_of(fixed_points(act, B, H))
                if lhs != rhs:
                    rep.part3 = False
                    rep.failures.append(("3", B.order, H.order, N.order))
            if quotient_goodness and not is_good(qact):
                rep.part4 = False
                rep.failures.append(("4", B.order, N.order))
    return rep


def check_prop_2_5(act: Action, p: int) -> bool:
    """p does not divide |[G,B]| for every p-subgroup B of A (needs a good action)."""
    if not is_solvable(act.G):
        raise NonSolvableUnsupported("G must be p-solvable")
    if not is_good(act):
        raise HypothesisFailed("the action is not good")
    for B in all_subgroups(act.A, act.bounds):
        if set(prime_divisors(B.order)) <= {p} and commutator(act, B).order % p == 0:
            return False
    return True


# -- Hall subgroups ---------------------------------------------------------------------------

def invariant_hall(act: Action, sigma) -> Subgroup | None:
    """An A-invariant Hall sigma-subgroup of G (canonical smallest), or None."""
    G = act.G
    if not is_solvable(G):
        raise NonSolvableUnsupported("Hall subgroups need a solvable G")
    sigma = PrimeSet(sigma) & pi(G)
    if not sigma:
        return G.trivial()
    if sigma == pi(G):
        return G.whole()
    H0 = hall_subgroup(G, sigma)
    if H0 is None:
        raise ArithmeticMismatch("solvable group without a Hall subgroup")
    # Hall subgroups of a solvable group form a single conjugacy class.
    cands = [H for H in conjugates(H0) if act.is_invariant(H)]
    if not cands:
        return None
    return min(cands, key=lambda H: H.sort_key())


# -- regular orbits --------------------------------------------------------------------------

def _cover_pairs(subs: list[Subgroup]) -> list[tuple[int, int]]:
    """(i, j) with subs[i] < subs[j] and nothing from subs strictly between."""
    if not subs:
        return []
    M = np.array([s.members for s in subs], dtype=np.float64)
    outside = M @ (1 - M).T          # elements of i not in j
    orders = np.array([s.order for s in subs])
    strict = (outside == 0) & (orders[:, None] < orders[None, :])
    S = strict.astype(np.float64)
    between = S @ S
    cover = strict & (between == 0)
    return [(int(i), int(j)) for i, j in zip(*np.nonzero(cover))]


@dataclass(frozen=True, eq=False)
class RegularOrbitsReport:
    ok: bool
    sections_checked: int
    H: Subgroup | None = None
    K: Subgroup | None = None

    def __bool__(self):
        return self.ok


def regular_orbits_check(act: Action, B: Subgroup | None = None) -> RegularOrbitsReport:
    """Every B-irreducible section H/K has a coset xK with C_B(xK) = C_B(H/K)."""
    B = _check_sub_of_A(act, B)
    G = act.G
    if B.is_trivial():
        return RegularOrbitsReport(True, 0)
    subs = invariant_subgroups(act, B)
    belems = B.elements
    checked = 0
    for i, j in _cover_pairs(subs):
        K, H = subs[i], subs[j]
        if not is_normal(K, H):
            continue
        checked += 1
        hs = H.elements
        # stab[b, x]: b fixes the coset xK
        imgs = act.autos[belems][:, hs]
        stab = K.members[G.table[G.inverse[hs][None, :], imgs]]
        CBS = stab.all(axis=1)
        if not any((stab[:, x] == CBS).all() for x in range(len(hs))):
            return RegularOrbitsReport(False, checked, H, K)
    return RegularOrbitsReport(True, checked)


def has_regular_orbits(act: Action) -> bool:
    """Regular orbits for every subgroup B of A."""
    return all(regular_orbits_check(act, B) for B in all_subgroups(act.A, act.bounds))


# -- C_q wr C_q-freeness -------------------------------------------------------------------------

def is_cqwrcq_free(A: Group, bounds: Bounds = DEFAULT_BOUNDS) -> bool:
    n = A.order
    primes = [q for q in prime_divisors(n) if n % q ** (q + 1) == 0]
    if not primes:
        return True
    if n > bounds.subgroups * 10:
        raise OrderBoundExceeded("group too large for the section scan")
    for q in primes:
        target = q ** (q + 1)
        W = wreath_cyclic(cyclic(q), q, bounds)
        winv = _invariants(W)
        wdl, wz, wexp = derived_length(W), center(W).order, exponent(W)
        for H in all_subgroups(A, bounds):
            if H.order % target:
                continue
            Hg, _ = H.as_group()
            for K in normal_subgroups(Hg, bounds):
                if Hg.order // K.order != target:
                    continue
                Q, _ = quotient(Hg, K)
                if (exponent(Q), derived_length(Q), center(Q).order) != (wexp, wdl, wz):
                    continue
                if _invariants(Q) != winv:
                    continue
                if is_isomorphic(Q, W, bounds) is not None:
                    return False
    return True
