"""Linear algebra over GF(p), group modules and a small MeatAxe.

Matrices act on column vectors from the left and a module's matrix map is a
homomorphism: ``M(gh) = M(g) M(h)``.  Subspaces are stored as row-reduced
bases whose rows are the spanning vectors.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

import numpy as np
from sympy import GF as SymGF
from sympy import ZZ
from sympy.polys.galoistools import gf_factor
from sympy.polys.matrices import DomainMatrix

from .config import DEFAULT_BOUNDS, Bounds
from .errors import (
    ArithmeticMismatch,
    NotAHomomorphism,
    PreconditionFailed,
    SearchExhausted,
)
from .group_core import (
    Group,
    Subgroup,
    all_subgroups,
    core,
    minimal_normal_subgroups,
    normal_closure,
    normal_subgroups,
    closure,
    commutator_subgroup,
)


# -- dense GF(p) helpers -------------------------------------------------------

def mat_mul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return (a @ b) % p


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p and pivot columns."""
    a = np.array(m, dtype=np.int64) % p
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        col = a[:, c].copy()
        col[r] = 0
        nzr = np.flatnonzero(col)
        if nzr.size:
            a[nzr] = (a[nzr] - np.outer(col[nzr], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(m: np.ndarray, p: int) -> int:
    return len(rref(m, p)[1])


def nullspace(m: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows) of {v : m v = 0}."""
    m = np.asarray(m, dtype=np.int64)
    cols = m.shape[1]
    r, piv = rref(m, p)
    free = [c for c in range(cols) if c not in piv]
    out = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        out[i, f] = 1
        for row, pc in enumerate(piv):
            out[i, pc] = (-r[row, f]) % p
    return out


def mat_inv(m: np.ndarray, p: int) -> np.ndarray:
    d = m.shape[0]
    aug = np.concatenate([np.asarray(m, dtype=np.int64) % p, np.eye(d, dtype=np.int64)], axis=1)
    r, piv = rref(aug, p)
    if piv[:d] != list(range(d)):
        raise ZeroDivisionError("matrix is singular mod p")
    return r[:, d:]


class Echelon:
    """Incrementally built row-reduced basis."""

    def __init__(self, dim: int, p: int):
        self.dim, self.p = dim, p
        self.rows: list[np.ndarray] = []
        self.pivots: list[int] = []

    def reduce(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=np.int64) % self.p
        for row, c in zip(self.rows, self.pivots):
            if v[c]:
                v = (v - v[c] * row) % self.p
        return v

    def add(self, v: np.ndarray) -> bool:
        v = self.reduce(v)
        nz = np.flatnonzero(v)
        if nz.size == 0:
            return False
        c = int(nz[0])
        v = (v * pow(int(v[c]), -1, self.p)) % self.p
        for i, row in enumerate(self.rows):
            if row[c]:
                self.rows[i] = (row - row[c] * v) % self.p
        self.rows.append(v)
        self.pivots.append(c)
        return True

    def basis(self) -> np.ndarray:
        if not self.rows:
            return np.zeros((0, self.dim), dtype=np.int64)
        order = np.argsort(self.pivots)
        return np.array([self.rows[i] for i in order])

    def __len__(self):
        return len(self.rows)


# -- modules -------------------------------------------------------------------

class GModule:
    """A matrix representation of ``group`` over GF(p).

    ``gen_matrices[i]`` is the matrix of ``group.generators[i]``.  The full
    element-to-matrix map is built by walking the Cayley graph, which also
    verifies that the assignment is a homomorphism.
    """

    def __init__(self, group: Group, p: int, gen_matrices: Sequence[np.ndarray], check: bool = True,
                 dim: int | None = None):
        self.group = group
        self.p = p
        mats = [np.asarray(m, dtype=np.int64) % p for m in gen_matrices]
        if len(mats) != len(group.generators):
            raise ValueError("need one matrix per group generator")
        if dim is None:
            if not mats:
                raise ValueError("a group without generators needs an explicit dimension")
            dim = mats[0].shape[0]
        if any(m.shape != (dim, dim) for m in mats):
            raise ValueError("generator matrices must be square of the module dimension")
        self.dim = dim
        self.gen_matrices = tuple(mats)
        self._elements = self._walk(check)

    @classmethod
    def trivial(cls, group: Group, p: int, dim: int) -> "GModule":
        return cls(group, p, [np.eye(dim, dtype=np.int64)] * len(group.generators), dim=dim)

    def _walk(self, check: bool) -> np.ndarray:
        G, d, p = self.group, self.dim, self.p
        out = np.full((G.order, d, d), -1, dtype=np.int64)
        out[0] = np.eye(d, dtype=np.int64)
        frontier = [0]
        while frontier:
            new = []
            for x in frontier:
                for s, m in zip(G.generators, self.gen_matrices):
                    y = int(G.table[x, s])
                    prod = (out[x] @ m) % p
                    if out[y, 0, 0] < 0 if d else False:
                        out[y] = prod
                        new.append(y)
                    elif d and not (out[y] == prod).all():
                        if check:
                            raise NotAHomomorphism("generator matrices violate a group relation")
            frontier = new
        if d and (out[:, 0, 0] < 0).any():
            raise ValueError("generators do not reach every element")
        return out

    def matrix(self, g: int) -> np.ndarray:
        return self._elements[g]

    @property
    def element_matrices(self) -> np.ndarray:
        return self._elements

    def kernel(self) -> Subgroup:
        eye = np.eye(self.dim, dtype=np.int64)
        m = (self._elements == eye).all(axis=(1, 2))
        return Subgroup(self.group, m)

    def is_faithful(self) -> bool:
        return self.kernel().is_trivial()

    def restrict_to_submodule(self, sub: "Submodule") -> "GModule":
        B, piv = sub.basis, list(sub.pivots)
        mats = [np.array([(m @ b % self.p)[piv] for b in B], dtype=np.int64).T.reshape(len(B), len(B))
                for m in self.gen_matrices]
        return GModule(self.group, self.p, mats, check=False, dim=len(B))

    def quotient_by(self, sub: "Submodule") -> "GModule":
        ech = Echelon(self.dim, self.p)
        for b in sub.basis:
            ech.add(b)
        free = [c for c in range(self.dim) if c not in set(sub.pivots)]
        k = len(free)
        mats = []
        for m in self.gen_matrices:
            q = np.zeros((k, k), dtype=np.int64)
            for j, c in enumerate(free):
                r = ech.reduce(m[:, c])
                q[:, j] = r[free]
            mats.append(q)
        return GModule(self.group, self.p, mats, check=False, dim=k)

    def __repr__(self):
        return f"GModule(dim={self.dim}, p={self.p}, group={self.group.order})"


@dataclass(frozen=True, eq=False)
class Submodule:
    module: GModule
    basis: np.ndarray       # rows, reduced echelon form
    pivots: tuple[int, ...]

    @property
    def dim(self) -> int:
        return int(self.basis.shape[0])

    def is_proper_nonzero(self) -> bool:
        return 0 < self.dim < self.module.dim

    def is_invariant(self) -> bool:
        ech = Echelon(self.module.dim, self.module.p)
        for b in self.basis:
            ech.add(b)
        for m in self.module.gen_matrices:
            for b in self.basis:
                if ech.reduce(m @ b).any():
                    return False
        return True

    def contains(self, v: np.ndarray) -> bool:
        ech = Echelon(self.module.dim, self.module.p)
        for b in self.basis:
            ech.add(b)
        return not ech.reduce(v).any()


def _submodule(M: GModule, ech: Echelon) -> Submodule:
    B = ech.basis()
    piv = tuple(int(np.flatnonzero(r)[0]) for r in B)
    return Submodule(M, B, piv)


def spin_vectors(mats: Sequence[np.ndarray], p: int, dim: int, vectors: Iterable[np.ndarray]) -> Echelon:
    ech = Echelon(dim, p)
    queue = []
    for v in vectors:
        v = np.asarray(v, dtype=np.int64) % p
        if ech.add(v):
            queue.append(v)
    while queue and len(ech) < dim:
        v = queue.pop()
        for m in mats:
            w = (m @ v) % p
            if ech.add(w):
                queue.append(w)
    return ech


def spin(M: GModule, v) -> Submodule:
    """Smallest submodule containing v."""
    v = np.asarray(v, dtype=np.int64)
    if v.shape != (M.dim,):
        raise ValueError(f"vector of length {v.shape} for module of dimension {M.dim}")
    return _submodule(M, spin_vectors(M.gen_matrices, M.p, M.dim, [v]))


def spin_many(M: GModule, vectors) -> Submodule:
    return _submodule(M, spin_vectors(M.gen_matrices, M.p, M.dim, vectors))


# -- irreducibility ------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class IrreducibilityVerdict:
    irreducible: bool
    witness: Submodule | None
    method: str
    seed: int
    attempts: int = 0

    def __bool__(self):
        return self.irreducible


def _charpoly(theta: np.ndarray, p: int) -> list[int]:
    F = SymGF(p)
    dm = DomainMatrix([[F(int(x)) for x in row] for row in theta], theta.shape, F)
    return [int(F.to_int(c)) % p for c in dm.charpoly()]


def _poly_at(poly: Sequence[int], theta: np.ndarray, p: int) -> np.ndarray:
    d = theta.shape[0]
    out = np.zeros((d, d), dtype=np.int64)
    eye = np.eye(d, dtype=np.int64)
    for c in poly:
        out = (out @ theta + c * eye) % p
    return out


def exhaustive_irreducible(M: GModule) -> tuple[bool, Submodule | None]:
    """Spin every vector up to scalars; the reference answer for small p^d."""
    d, p = M.dim, M.p
    if d == 0:
        return False, None
    for lead in range(d):
        for tail in itertools.product(range(p), repeat=d - lead - 1):
            v = np.zeros(d, dtype=np.int64)
            v[lead] = 1
            v[lead + 1:] = tail
            s = spin(M, v)
            if s.dim < d:
                return False, s
    return True, None


def norton_test(M: GModule, seed: int = 0, max_tries: int = 400) -> IrreducibilityVerdict:
    """Holt-Rees style test: random algebra element, nullspace spins, dual check."""
    d, p = M.dim, M.p
    if d == 1:
        return IrreducibilityVerdict(True, None, "dimension-one", seed)
    rng = np.random.default_rng(seed)
    mats = list(M.gen_matrices) or [np.eye(d, dtype=np.int64)]
    trans = [m.T.copy() for m in mats]
    words = list(mats)
    eye = np.eye(d, dtype=np.int64)
    for attempt in range(1, max_tries + 1):
        i, j = rng.integers(len(words), size=2)
        words.append((words[i] @ words[j]) % p)
        words = words[-12:]
        coeffs = rng.integers(0, p, size=len(words))
        theta = sum(int(c) * w for c, w in zip(coeffs, words)) % p
        cp = _charpoly(theta, p)
        _, factors = gf_factor([ZZ(c) for c in cp], p, ZZ)
        for f, _mult in sorted(factors, key=lambda fm: len(fm[0])):
            f = [int(c) for c in f]
            deg = len(f) - 1
            if deg > max(2, d // 2):
                continue
            ft = _poly_at(f, theta, p)
            null = nullspace(ft, p)
            if null.shape[0] == 0:
                continue
            sub = spin_vectors(mats, p, d, [null[0]])
            if len(sub) < d:
                return IrreducibilityVerdict(False, _submodule(M, sub), "norton", seed, attempt)
            nullt = nullspace(ft.T, p)
            dual = spin_vectors(trans, p, d, [nullt[0]])
            if len(dual) < d:
                ann = nullspace(dual.basis(), p)
                ech = Echelon(d, p)
                for r in ann:
                    ech.add(r)
                return IrreducibilityVerdict(False, _submodule(M, ech), "norton-dual", seed, attempt)
            if null.shape[0] == deg:
                return IrreducibilityVerdict(True, None, "norton", seed, attempt)
    raise SearchExhausted(f"Norton test inconclusive after {max_tries} random elements")


def is_irreducible(M: GModule, seed: int = 0, bounds: Bounds = DEFAULT_BOUNDS) -> IrreducibilityVerdict:
    """Decide irreducibility; cross-checked by exhaustive spinning when p^d is small."""
    if M.dim == 0:
        return IrreducibilityVerdict(False, None, "zero-module", seed)
    small = M.p ** M.dim <= bounds.exhaustive_spin
    try:
        verdict = norton_test(M, seed)
    except SearchExhausted:
        if not small:
            raise
        ok, wit = exhaustive_irreducible(M)
        return IrreducibilityVerdict(ok, wit, "exhaustive", seed)
    if small:
        ok, wit = exhaustive_irreducible(M)
        if ok != verdict.irreducible:
            raise ArithmeticMismatch("Norton test and exhaustive spin disagree")
    if verdict.witness is not None and not (verdict.witness.is_invariant()
                                            and verdict.witness.is_proper_nonzero()):
        raise ArithmeticMismatch("reducibility witness is not a proper submodule")
    return verdict


def composition_factors(M: GModule, seed: int = 0, bounds: Bounds = DEFAULT_BOUNDS) -> list[GModule]:
    v = is_irreducible(M, seed, bounds)
    if v.irreducible:
        return [M]
    sub = v.witness
    return (composition_factors(M.restrict_to_submodule(sub), seed, bounds)
            + composition_factors(M.quotient_by(sub), seed, bounds))


def permutation_module(H: Group, L: Subgroup, p: int) -> GModule:
    """GF(p) permutation module on the left cosets xL; M(h) e_xL = e_hxL."""
    coset = np.full(H.order, -1, dtype=np.int64)
    k = 0
    for x in range(H.order):
        if coset[x] < 0:
            coset[H.table[x, L.elements]] = k
            k += 1
    reps = [int(np.flatnonzero(coset == i)[0]) for i in range(k)]
    mats = []
    for h in H.generators:
        m = np.zeros((k, k), dtype=np.int64)
        for i, x in enumerate(reps):
            m[coset[H.table[h, x]], i] = 1
        mats.append(m)
    return GModule(H, p, mats, check=False, dim=k)


def p_core(H: Group, p: int) -> Subgroup:
    from .group_core import is_p_group
    cands = [N for N in normal_subgroups(H) if is_p_group(N, p)]
    return max(cands, key=lambda N: N.order)


def faithful_irreducible_module(H: Group, p: int, seed: int = 0,
                                bounds: Bounds = DEFAULT_BOUNDS) -> GModule:
    """Find a faithful irreducible GF(p)H-module by chopping permutation modules.

    Needs O_p(H) = 1 and a unique minimal normal subgroup.  Coset spaces are
    tried largest subgroup first; subgroups with a nontrivial core are
    skipped since every constituent of their permutation module has that
    core in its kernel.
    """
    if not p_core(H, p).is_trivial():
        raise PreconditionFailed(f"O_{p}(H) is not trivial")
    mins = minimal_normal_subgroups(H, bounds)
    if len(mins) != 1:
        raise PreconditionFailed(f"H has {len(mins)} minimal normal subgroups, not one")
    subs = [L for L in all_subgroups(H, bounds) if not L.is_whole()]
    subs.sort(key=lambda L: (-L.order, L.sort_key()[1]))
    tried = 0
    for L in subs:
        if H.order // L.order > bounds.module_dim:
            break
        if not core(L).is_trivial():
            continue
        tried += 1
        P = permutation_module(H, L, p)
        for factor in composition_factors(P, seed, bounds):
            if factor.is_faithful():
                factor.provenance = {"coset_subgroup_order": L.order, "permutation_dim": P.dim,
                                     "dimension": factor.dim, "seed": seed,
                                     "coset_spaces_tried": tried}
                return factor
    raise SearchExhausted("no faithful irreducible constituent within the module-size bound")


# -- affine groups V x| H ------------------------------------------------------

class AffineGroup:
    """Pairs (v, h) with (v1,h1)(v2,h2) = (v1 + h1.v2, h1 h2); no table is built."""

    def __init__(self, module: GModule):
        self.V = module
        self.H = module.group
        self.p = module.p
        self.dim = module.dim
        self._mats = module.element_matrices

    @property
    def order(self) -> int:
        return self.p ** self.dim * self.H.order

    def identity(self):
        return (np.zeros(self.dim, dtype=np.int64), 0)

    def element(self, v, h: int):
        return (np.asarray(v, dtype=np.int64) % self.p, int(h))

    def mul(self, a, b):
        v1, h1 = a
        v2, h2 = b
        return ((v1 + self._mats[h1] @ v2) % self.p, int(self.H.table[h1, h2]))

    def inv(self, a):
        v, h = a
        hi = int(self.H.inverse[h])
        return ((-(self._mats[hi] @ v)) % self.p, hi)

    def comm(self, a, b):
        return self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))

    def conj(self, a, g):
        return self.mul(self.mul(self.inv(g), a), g)

    def power(self, a, k: int):
        out = self.identity()
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def eq(self, a, b) -> bool:
        return a[1] == b[1] and bool((a[0] == b[0]).all())

    def is_identity(self, a) -> bool:
        return a[1] == 0 and not a[0].any()

    def element_order(self, a) -> int:
        k, x = 1, a
        while not self.is_identity(x):
            x = self.mul(x, a)
            k += 1
        return k

    def generators(self):
        eye = np.eye(self.dim, dtype=np.int64)
        return [(eye[i], 0) for i in range(self.dim)] + \
               [(np.zeros(self.dim, dtype=np.int64), h) for h in self.H.generators]

    def is_central(self, a) -> bool:
        return all(self.eq(self.mul(a, g), self.mul(g, a)) for g in self.generators())

    def random_element(self, rng):
        return (rng.integers(0, self.p, size=self.dim), int(rng.integers(self.H.order)))

    v_part = staticmethod(lambda a: a[0])
    h_part = staticmethod(lambda a: a[1])


class AffineSubgroup:
    """{(c_q + d, q) : q in Q, d in D} inside an AffineGroup."""

    def __init__(self, G: AffineGroup, gens):
        self.G = G
        self.gens = list(gens)
        H, p, dim = G.H, G.p, G.dim
        trans = {0: np.zeros(dim, dtype=np.int64)}
        queue = [0]
        ech = Echelon(dim, p)
        while queue:
            q = queue.pop(0)
            base = (trans[q], q)
            for s in self.gens:
                v, q2 = G.mul(base, s)
                if q2 not in trans:
                    trans[q2] = v
                    queue.append(q2)
                else:
                    ech.add((v - trans[q2]) % p)
        self._trans = trans
        self._ech = ech
        m = np.zeros(H.order, dtype=bool)
        m[list(trans)] = True
        self.h_part = Subgroup(H, m)
        self.v_part = _submodule(G.V, ech)

    @property
    def order(self) -> int:
        return self.G.p ** self.v_part.dim * self.h_part.order

    def __contains__(self, a) -> bool:
        v, q = a
        if q not in self._trans:
            return False
        return not self._ech.reduce(v - self._trans[q]).any()


def affine_normal_closure(G: AffineGroup, seeds) -> AffineSubgroup:
    gens = list(seeds)
    while True:
        L = AffineSubgroup(G, gens)
        extra = []
        for t in L.gens:
            for y in G.generators():
                c = G.conj(t, y)
                if c not in L:
                    extra.append(c)
                    break
        if not extra:
            return L
        gens = gens + extra


@dataclass(frozen=True, eq=False)
class AffineCommutator:
    subgroup: AffineSubgroup
    v_part: Submodule
    h_part: Subgroup
    order: int
    action_order: int        # |A|: order of the inner automorphism
    ga_order: int
    quotient_order: int      # |GA / [G, A]|

    @property
    def coprime(self) -> bool:
        return gcd(self.order, self.quotient_order) == 1


def affine_commutator_with(G: AffineGroup, x) -> AffineCommutator:
    """[G, A] for A generated by conjugation with x, computed structurally."""
    x = G.element(*x)
    if not (0 <= x[1] < G.H.order) or x[0].shape != (G.dim,):
        raise ValueError("conjugator is not an element of G")
    seeds = [G.comm(g, x) for g in G.generators()]
    L = affine_normal_closure(G, seeds)
    # The V-part must contain the module generated by (h_x^-1 - 1)V.
    hx_inv = G.H.inverse[x[1]]
    diff = (G._mats[hx_inv] - np.eye(G.dim, dtype=np.int64)) % G.p
    w0 = spin_many(G.V, list(diff.T))
    for b in w0.basis:
        if not L.v_part.contains(b):
            raise ArithmeticMismatch("[V, x] is not inside the computed [G, A]")
    # H-part by an independent route: the normal closure of [H, h_x] in H.
    H = G.H
    hq = normal_closure(commutator_subgroup(H.whole(), closure(H, [x[1]])))
    if hq != L.h_part:
        raise ArithmeticMismatch("H-projection of [G, A] disagrees with [H, h_x]")
    k, y = 1, x
    while not G.is_central(y):
        y = G.mul(y, x)
        k += 1
    ga = G.order * k
    return AffineCommutator(L, L.v_part, L.h_part, L.order, k, ga, ga // L.order)
