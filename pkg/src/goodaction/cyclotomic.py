"""Exact arithmetic in Q(zeta_n) and monomial complex representations.

A value of conductor n is stored by its coefficients on 1, z, ..., z^(phi(n)-1)
after reduction modulo the n-th cyclotomic polynomial.  Values of different
conductors are embedded into the lcm before any operation.
"""
from __future__ import annotations

import weakref
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

import numpy as np
from sympy import Poly, QQ, Symbol, cyclotomic_poly

from .config import DEFAULT_BOUNDS, Bounds
from .errors import (
    ArithmeticMismatch,
    IndexBoundExceeded,
    NotLinearCharacter,
    NotNormal,
    ParentMismatch,
    PreconditionFailed,
    SearchExhausted,
)
from .group_core import Group, Subgroup, all_subgroups, exponent, is_normal

_X = Symbol("x")


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@lru_cache(maxsize=None)
def _phi_poly(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, low degree first."""
    return tuple(int(c) for c in reversed(Poly(cyclotomic_poly(n, _X), _X).all_coeffs()))


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Reduced coefficient vector of z^k for k = 0 .. 2n-1."""
    phi = _phi_poly(n)
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(2 * n):
        rows.append(tuple(cur))
        # multiply by z: shift, then replace z^deg by -sum phi_i z^i
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * phi[i] for i, c in enumerate(cur)]
    return tuple(rows)


def _reduce(n: int, coeffs: dict[int, object]) -> tuple:
    """Reduce sum coeffs[k] z^k (any k >= 0) to canonical form."""
    table = _power_table(n)
    deg = len(table[0])
    out = [0] * deg
    for k, c in coeffs.items():
        if not c:
            continue
        row = table[k % n]
        for i, r in enumerate(row):
            if r:
                out[i] += c * r
    return tuple(_norm(c) for c in out)


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


class Cyclotomic:
    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Sequence):
        deg = len(_phi_poly(n)) - 1
        if len(coeffs) != deg:
            raise ValueError(f"conductor {n} needs {deg} coefficients")
        self.n = n
        self.coeffs = tuple(_norm(c) for c in coeffs)

    # constructors
    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "Cyclotomic":
        return cls(n, _power_table(n)[k % n])

    @classmethod
    def rational(cls, q, n: int = 1) -> "Cyclotomic":
        deg = len(_phi_poly(n)) - 1
        return cls(n, (q,) + (0,) * (deg - 1))

    @classmethod
    def from_powers(cls, n: int, coeffs: dict[int, object]) -> "Cyclotomic":
        return cls(n, _reduce(n, coeffs))

    # conversions
    def embed(self, m: int) -> "Cyclotomic":
        if m % self.n:
            raise ValueError(f"cannot embed conductor {self.n} into {m}")
        if m == self.n:
            return self
        step = m // self.n
        return Cyclotomic.from_powers(m, {k * step: c for k, c in enumerate(self.coeffs) if c})

    def _align(self, other) -> tuple["Cyclotomic", "Cyclotomic"]:
        if not isinstance(other, Cyclotomic):
            other = Cyclotomic.rational(other)
        m = _lcm(self.n, other.n)
        return self.embed(m), other.embed(m)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ArithmeticMismatch(f"{self} is not rational")
        return Fraction(self.coeffs[0])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    # ring operations
    def __add__(self, other):
        a, b = self._align(other)
        return Cyclotomic(a.n, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.n, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other if isinstance(other, Cyclotomic) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Cyclotomic):
            return Cyclotomic(self.n, [c * other for c in self.coeffs])
        a, b = self._align(other)
        prod: dict[int, object] = {}
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in enumerate(b.coeffs):
                if y:
                    prod[i + j] = prod.get(i + j, 0) + x * y
        return Cyclotomic.from_powers(a.n, prod)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return Cyclotomic.rational(Fraction(1) / Fraction(self.coeffs[0]), self.n)
        f = Poly(list(reversed([QQ(Fraction(c).numerator, Fraction(c).denominator) for c in self.coeffs])),
                 _X, domain=QQ)
        g = Poly(list(reversed(_phi_poly(self.n))), _X, domain=QQ)
        inv = f.invert(g)
        cs = [Fraction(int(c.numerator), int(c.denominator)) for c in reversed(inv.all_coeffs())]
        deg = len(self.coeffs)
        cs = cs + [0] * (deg - len(cs))
        out = Cyclotomic(self.n, cs)
        if (out * self) != 1:
            raise ArithmeticMismatch("cyclotomic inverse check failed")
        return out

    def __truediv__(self, other):
        if not isinstance(other, Cyclotomic):
            return Cyclotomic(self.n, [Fraction(c) / Fraction(other) for c in self.coeffs])
        return self * other.inverse()

    def galois(self, j: int) -> "Cyclotomic":
        """Image under z -> z^j (j coprime to n)."""
        if gcd(j, self.n) != 1:
            raise ValueError("Galois exponent must be a unit")
        return Cyclotomic.from_powers(self.n, {(k * j) % self.n: c for k, c in enumerate(self.coeffs) if c})

    def conjugate(self) -> "Cyclotomic":
        return self.galois(-1 % self.n if self.n > 1 else 1)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.rational(other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._align(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(Fraction(self.coeffs[0]))
        return hash(("cyclotomic", self.embed_minimal().n, self.embed_minimal().coeffs))

    def embed_minimal(self) -> "Cyclotomic":
        """Same value at the smallest conductor dividing n that holds it."""
        for d in sorted(d for d in range(1, self.n + 1) if self.n % d == 0):
            cand = self._restrict(d)
            if cand is not None:
                return cand
        return self

    def _restrict(self, d: int):
        if d == self.n:
            return self
        deg = len(_phi_poly(d)) - 1
        # coordinates of z_d^k (k < deg) at conductor n form an injective map; solve exactly
        cols = [Cyclotomic.zeta(d, k).embed(self.n).coeffs for k in range(deg)]
        mat = [[Fraction(cols[k][i]) for k in range(deg)] + [Fraction(self.coeffs[i])]
               for i in range(len(self.coeffs))]
        sol = _solve_rational(mat, deg)
        if sol is None:
            return None
        return Cyclotomic(d, sol)

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*z{self.n}^{k}")
        return " + ".join(terms) if terms else "0"


def _solve_rational(aug: list[list[Fraction]], nvars: int):
    rows = [r[:] for r in aug]
    piv_cols = []
    r = 0
    for c in range(nvars):
        k = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if k is None:
            continue
        rows[r], rows[k] = rows[k], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(row[-1] != 0 for row in rows[r:]):
        return None
    sol = [Fraction(0)] * nvars
    for i, c in enumerate(piv_cols):
        sol[c] = rows[i][-1]
    return sol


ZERO = Cyclotomic.rational(0)
ONE = Cyclotomic.rational(1)


# -- dense matrices over Q(zeta) -----------------------------------------------

def cyc_rank(mat: list[list[Cyclotomic]]) -> int:
    return len(cyc_rref(mat)[1])


def cyc_rref(mat: list[list[Cyclotomic]]) -> tuple[list[list[Cyclotomic]], list[int]]:
    rows = [list(r) for r in mat]
    if not rows:
        return [], []
    ncols = len(rows[0])
    piv = []
    r = 0
    for c in range(ncols):
        k = next((i for i in range(r, len(rows)) if not rows[i][c].is_zero()), None)
        if k is None:
            continue
        rows[r], rows[k] = rows[k], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], piv


def column_space(mat: list[list[Cyclotomic]]) -> list[list[Cyclotomic]]:
    """Basis vectors (as lists) of the column space, in reduced form."""
    if not mat:
        return []
    t = [list(col) for col in zip(*mat)]
    return cyc_rref(t)[0]


# -- monomial representations ---------------------------------------------------

class MonomialRep:
    """rho(g) e_i = z_n^{exps[g, i]} e_{perms[g, i]} for every element g."""

    def __init__(self, group: Group, conductor: int, perms: np.ndarray, exps: np.ndarray,
                 check: bool = True):
        self.group = group
        self.n = conductor
        self.perms = np.asarray(perms, dtype=np.int64)
        self.exps = np.asarray(exps, dtype=np.int64) % conductor
        self.degree = int(self.perms.shape[1])
        if check:
            self.check_homomorphism()

    def check_homomorphism(self) -> None:
        G, n = self.group, self.n
        P, E = self.perms, self.exps
        if not (P[0] == np.arange(self.degree)).all() or E[0].any():
            raise ArithmeticMismatch("identity is not represented by the identity matrix")
        for g in range(G.order):
            # rho(g) rho(h) e_i = z^{E[h,i] + E[g, P[h,i]]} e_{P[g, P[h,i]]}
            pg = P[g][P]
            eg = (E + E[g][P]) % n
            gh = G.table[g]
            if not ((P[gh] == pg).all() and (E[gh] == eg).all()):
                raise ArithmeticMismatch("monomial matrices do not form a homomorphism")

    def dense(self, g: int) -> list[list[Cyclotomic]]:
        d = self.degree
        m = [[ZERO] * d for _ in range(d)]
        for i in range(d):
            m[int(self.perms[g, i])][i] = Cyclotomic.zeta(self.n, int(self.exps[g, i]))
        return m

    def trace(self, g: int) -> Cyclotomic:
        fixed = np.flatnonzero(self.perms[g] == np.arange(self.degree))
        return Cyclotomic.from_powers(self.n, _count(self.exps[g, fixed]))

    def apply(self, g: int, vec: Sequence[Cyclotomic]) -> list[Cyclotomic]:
        out = [ZERO] * self.degree
        for i, v in enumerate(vec):
            if not v.is_zero():
                j = int(self.perms[g, i])
                out[j] = out[j] + v * Cyclotomic.zeta(self.n, int(self.exps[g, i]))
        return out

    def group_sum(self, weights: dict[int, Cyclotomic]) -> list[list[Cyclotomic]]:
        """Dense matrix of sum_g w_g rho(g), accumulated in power form."""
        d, n = self.degree, self.n
        m = max([n] + [w.n for w in weights.values()])
        m = n
        for w in weights.values():
            m = _lcm(m, w.n)
        acc: list[list[dict]] = [[{} for _ in range(d)] for _ in range(d)]
        step = m // n
        for g, w in weights.items():
            w = w.embed(m)
            wpow = {k: c for k, c in enumerate(w.coeffs) if c}
            for i in range(d):
                j, e = int(self.perms[g, i]), int(self.exps[g, i]) * step
                cell = acc[j][i]
                for k, c in wpow.items():
                    cell[(k + e) % m] = cell.get((k + e) % m, 0) + c
        return [[Cyclotomic.from_powers(m, cell) for cell in row] for row in acc]


def _count(exps) -> dict[int, int]:
    out: dict[int, int] = {}
    for e in exps:
        out[int(e)] = out.get(int(e), 0) + 1
    return out


# -- linear characters ------------------------------------------------------------

class LinearCharacter:
    """lambda(a) = z_n^{exps[a]} on the members of a subgroup."""

    def __init__(self, subgroup: Subgroup, conductor: int, exps: np.ndarray):
        self.subgroup = subgroup
        self.n = conductor
        self.exps = np.asarray(exps, dtype=np.int64)
        G = subgroup.parent
        el = subgroup.elements
        if (self.exps[el] < 0).any():
            raise NotLinearCharacter("values missing on the subgroup")
        tab = G.table[np.ix_(el, el)]
        lhs = self.exps[tab] % conductor
        rhs = (self.exps[el][:, None] + self.exps[el][None, :]) % conductor
        if not (lhs == rhs).all():
            raise NotLinearCharacter("lambda is not multiplicative")

    def value(self, a: int) -> Cyclotomic:
        return Cyclotomic.zeta(self.n, int(self.exps[a]))

    def is_trivial(self) -> bool:
        el = self.subgroup.elements
        return not (self.exps[el] % self.n).any()


def linear_characters(A0: Subgroup) -> list[LinearCharacter]:
    """All linear characters of a subgroup, in a fixed order."""
    G = A0.parent
    tab = G.table
    n = exponent(A0)
    gens = list(A0.generators)
    out = []
    from itertools import product
    ranges = [range(0, n, n // int(G.element_orders[g])) for g in gens]
    for imgs in product(*ranges):
        exps = np.full(G.order, -1, dtype=np.int64)
        exps[0] = 0
        frontier = [0]
        ok = True
        while frontier and ok:
            new = []
            for x in frontier:
                for g, e in zip(gens, imgs):
                    y = int(tab[x, g])
                    v = (exps[x] + e) % n
                    if exps[y] < 0:
                        exps[y] = v
                        new.append(y)
                    elif exps[y] != v:
                        ok = False
                        break
            frontier = new
        if ok:
            try:
                out.append(LinearCharacter(A0, n, exps))
            except NotLinearCharacter:
                pass
    return out


# -- induction and characters ---------------------------------------------------------

def left_transversal(G: Group, H: Subgroup) -> list[int]:
    seen = np.zeros(G.order, dtype=bool)
    reps = []
    for x in range(G.order):
        if not seen[x]:
            seen[G.table[x, H.elements]] = True
            reps.append(x)
    return reps


def induce_from_linear(G: Group, A0: Subgroup, lam: LinearCharacter,
                       bounds: Bounds = DEFAULT_BOUNDS) -> MonomialRep:
    if A0.parent is not G or lam.subgroup != A0:
        raise ParentMismatch("character and subgroup must live in G")
    k = G.order // A0.order
    if k > bounds.induce_index:
        raise IndexBoundExceeded(f"index {k} exceeds {bounds.induce_index}")
    reps = left_transversal(G, A0)
    coset = np.empty(G.order, dtype=np.int64)
    for i, t in enumerate(reps):
        coset[G.table[t, A0.elements]] = i
    reps_inv = G.inverse[np.array(reps)]
    perms = np.empty((G.order, k), dtype=np.int64)
    exps = np.empty((G.order, k), dtype=np.int64)
    for g in range(G.order):
        gt = G.table[g, reps]            # g t_i
        j = coset[gt]                    # = t_j a
        a = G.table[reps_inv[j], gt]     # a = t_j^-1 g t_i
        perms[g] = j
        exps[g] = lam.exps[a]
    return MonomialRep(G, lam.n, perms, exps)


def restrict(rep: MonomialRep, H: Subgroup) -> tuple[MonomialRep, np.ndarray]:
    """Representation of H (as an abstract group) and the embedding used."""
    Hg, emb = H.as_group()
    return MonomialRep(Hg, rep.n, rep.perms[emb], rep.exps[emb], check=False), emb


class Character:
    """Class function stored per conjugacy class."""

    def __init__(self, group: Group, class_values: Sequence[Cyclotomic], genuine: bool = True):
        self.group = group
        self.values = tuple(class_values)
        self.genuine = genuine
        if len(self.values) != len(group.classes):
            raise ValueError("one value per conjugacy class")

    def __call__(self, g: int) -> Cyclotomic:
        return self.values[self.group.class_of[g]]

    @property
    def degree(self):
        return self.values[self.group.class_of[0]].to_rational()

    def conjugate(self) -> "Character":
        return Character(self.group, [v.conjugate() for v in self.values], self.genuine)

    def __eq__(self, other):
        return isinstance(other, Character) and other.group is self.group and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def kernel(self) -> Subgroup:
        d = self.values[self.group.class_of[0]]
        m = np.array([self(g) == d for g in range(self.group.order)])
        return Subgroup(self.group, m)


def character_of(rep: MonomialRep) -> Character:
    G = rep.group
    return Character(G, [rep.trace(int(c[0])) for c in G.classes])


def trivial_character(G: Group) -> Character:
    return Character(G, [ONE] * len(G.classes))


def character_from_function(G: Group, f) -> Character:
    return Character(G, [f(int(c[0])) for c in G.classes])


def inner_product(c1: Character, c2: Character) -> Fraction:
    if c1.group is not c2.group:
        raise ParentMismatch("characters of different groups")
    G = c1.group
    total = ZERO
    for cls, a, b in zip(G.classes, c1.values, c2.values):
        total = total + a * b.conjugate() * len(cls)
    q = total.to_rational() / G.order
    if c1.genuine and c2.genuine and (q.denominator != 1 or q < 0):
        raise ArithmeticMismatch(f"inner product of characters is {q}")
    return q


def restrict_character(chi: Character, H: Subgroup) -> Character:
    Hg, emb = H.as_group()
    return Character(Hg, [chi(int(emb[c[0]])) for c in Hg.classes], chi.genuine)


# -- irreducible characters of small M-groups ----------------------------------------

def irreducible_monomial_reps(N: Group, bounds: Bounds = DEFAULT_BOUNDS) -> list[tuple[MonomialRep, Character]]:
    """One monomial representation per irreducible character of N.

    Works when every irreducible character is induced from a linear
    character of some subgroup; completeness is checked via sum of squares.
    """
    if N in _IRR_CACHE:
        return _IRR_CACHE[N]
    found: list[tuple[MonomialRep, Character]] = []
    total = 0
    subs = list(all_subgroups(N, bounds))
    subs.sort(key=lambda A: (-A.order, A.sort_key()[1]))
    for A in subs:
        if N.order // A.order > bounds.induce_index:
            continue
        for lam in linear_characters(A):
            rep = induce_from_linear(N, A, lam, bounds)
            chi = character_of(rep)
            if any(chi == c for _, c in found) or inner_product(chi, chi) != 1:
                continue
            found.append((rep, chi))
            total += int(chi.degree) ** 2
            if total == N.order:
                out = sorted(found, key=lambda rc: _char_sort_key(rc[1]))
                _IRR_CACHE[N] = out
                return out
    raise SearchExhausted("irreducible characters are not all monomial within bounds")


_IRR_CACHE: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()


def irreducible_characters(N: Group, bounds: Bounds = DEFAULT_BOUNDS) -> list[Character]:
    return [c for _, c in irreducible_monomial_reps(N, bounds)]


def _char_sort_key(chi: Character):
    return (chi.degree, tuple(repr(v.embed(_conductor_lcm(chi))) for v in chi.values))


def _conductor_lcm(chi: Character) -> int:
    m = 1
    for v in chi.values:
        m = _lcm(m, v.n)
    return m


# -- homogeneous components, fixed spaces, permutation of components -----------------

class Component:
    def __init__(self, basis: list[list[Cyclotomic]], theta: Character, multiplicity: int):
        self.basis = basis
        self.theta = theta
        self.multiplicity = multiplicity

    @property
    def dim(self) -> int:
        return len(self.basis)


class HomogeneousDecomposition:
    def __init__(self, rep: MonomialRep, N: Subgroup, components: list[Component], embed: np.ndarray):
        self.rep = rep
        self.N = N
        self.components = components
        self.embed = embed     # N-as-group index -> parent element

    def __len__(self):
        return len(self.components)

    @property
    def is_homogeneous(self) -> bool:
        return len(self.components) == 1


def _span_contains(basis: list[list[Cyclotomic]], vecs: list[list[Cyclotomic]]) -> bool:
    return cyc_rank(basis + vecs) == cyc_rank(basis)


def homogeneous_components(rep: MonomialRep, N: Subgroup,
                           bounds: Bounds = DEFAULT_BOUNDS) -> HomogeneousDecomposition:
    G = rep.group
    if N.parent is not G:
        raise ParentMismatch("N must be a subgroup of the acting group")
    if not is_normal(N):
        raise NotNormal("N is not normal")
    Ng, emb = N.as_group()
    chiN = Character(Ng, [rep.trace(int(emb[c[0]])) for c in Ng.classes])
    comps = []
    for theta in irreducible_characters(Ng, bounds):
        m = inner_product(chiN, theta)
        if m == 0:
            continue
        t1 = theta.degree
        weights = {int(emb[x]): theta(int(Ng.inverse[x])) * (t1 / Ng.order) for x in range(Ng.order)}
        proj = rep.group_sum(weights)
        basis = column_space(proj)
        if len(basis) != int(m * t1):
            raise ArithmeticMismatch("projector rank disagrees with the multiplicity")
        comps.append(Component(basis, theta, int(m)))
    if sum(c.dim for c in comps) != rep.degree:
        raise ArithmeticMismatch("component dimensions do not sum to the degree")
    for c in comps:
        for x in N.generators:
            if not _span_contains(c.basis, [rep.apply(int(x), b) for b in c.basis]):
                raise ArithmeticMismatch("component is not N-invariant")
    return HomogeneousDecomposition(rep, N, comps, emb)


def component_action(dec: HomogeneousDecomposition, g: int) -> tuple[int, ...]:
    """Permutation i -> j with g W_i = W_j, matched by characters and checked by spans."""
    rep, N = dec.rep, dec.N
    G = rep.group
    from .group_core import conjugate
    if conjugate(N, g) != N:
        raise NotNormal("element does not normalize N")
    Ng = N.as_group()[0]
    index = {int(x): i for i, x in enumerate(dec.embed)}
    gi = G.inverse[g]
    perm = []
    for comp in dec.components:
        # g W_theta has character n -> theta(g^-1 n g)
        img = [comp.theta(index[int(G.conj(int(dec.embed[c[0]]), g))]) for c in Ng.classes]
        j = next(k for k, c in enumerate(dec.components) if list(c.theta.values) == img)
        moved = [rep.apply(g, b) for b in comp.basis]
        if not _span_contains(dec.components[j].basis, moved):
            raise ArithmeticMismatch("character matching and span check disagree")
        perm.append(j)
    del gi
    return tuple(perm)


def fixed_space_dim(rep: MonomialRep, B: Subgroup) -> int:
    """dim C_V(B) by the inner product and by the rank of the averaging projector."""
    el = [int(b) for b in B.elements]
    s = ZERO
    for b in el:
        s = s + rep.trace(b)
    a = s.to_rational() / len(el)
    if a.denominator != 1:
        raise ArithmeticMismatch("non-integral fixed-space dimension")
    avg = rep.group_sum({b: Cyclotomic.rational(Fraction(1, len(el))) for b in el})
    r = cyc_rank(avg)
    if r != a:
        raise ArithmeticMismatch(f"fixed-space routes disagree: {a} vs {r}")
    return r


def fixed_space(rep: MonomialRep, B: Subgroup) -> list[list[Cyclotomic]]:
    avg = rep.group_sum({int(b): Cyclotomic.rational(Fraction(1, B.order)) for b in B.elements})
    return column_space(avg)
