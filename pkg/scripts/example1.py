"""Affine example: a faithful irreducible GF(2)-module for the order-600 Frobenius group.

Builds V, checks faithfulness and irreducibility independently, forms
G = V H and A = <x> with x of order 3, and reports |[G,A]| against |GA/[G,A]|.

    python scripts/example1.py [--seed S]
"""
import argparse
import time
from math import gcd

import numpy as np

from goodaction.constructors import frobenius600
from goodaction.gf_linear import (
    AffineGroup,
    affine_commutator_with,
    exhaustive_irreducible,
    faithful_irreducible_module,
    is_irreducible,
)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ns = ap.parse_args()
    t0 = time.perf_counter()
    H = frobenius600()
    M = faithful_irreducible_module(H, 2, seed=ns.seed)
    print(f"module: dimension {M.dim} over GF(2), provenance {M.provenance}")
    print(f"faithful: {M.is_faithful()}")
    v = is_irreducible(M, seed=ns.seed + 17)
    print(f"irreducible: {v.irreducible} via {v.method} after {v.attempts} attempts")
    G = AffineGroup(M)
    hx = int(np.flatnonzero(H.element_orders == 3)[0])
    c = affine_commutator_with(G, (np.zeros(M.dim, dtype=np.int64), hx))
    print(f"|G| = 2^{M.dim} * {H.order}, |A| = {c.action_order}")
    print(f"|[G,A]| = {c.order}, |GA/[G,A]| = {c.quotient_order}, gcd = {gcd(c.order, c.quotient_order)}")
    print(f"coprime criterion holds: {c.coprime}   ({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    main()
