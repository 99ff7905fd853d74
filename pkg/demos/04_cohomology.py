"""The quasi-cocycle invariant that separates same-size groups.

Groups with orders in {1,2,4}, no special pairs and no single-valued factor
are encoded by a map phi: V x V -> V defined modulo span(u,v).  A single
cohomology bit decides the family: 0 for unipotent, 1 for principal chains
of 4s.  The two 36-element groups below have equal order spectra, so this
bit is the only thing telling them apart.
"""

import random

from twovalued import (
    change_basis,
    cohomology_invariant,
    extract_quasicocycle,
    linear_rank,
    perturb,
    phi_basis,
    principal,
    trivial_cocycle,
    unipotent,
)

for X, name in ((principal(4, 4, 4), "principal(4,4,4)"), (unipotent(3), "unipotent(3)")):
    data = extract_quasicocycle(X)
    sigma = cohomology_invariant(data.phi)
    print(f"{name}: dim V = {data.dim}, invariant = {sigma}")

# the invariant is a class function: cohomologous perturbations and basis
# changes never move it
rng = random.Random(4)
phi = phi_basis(3)
print("\nbase cocycle invariant:", cohomology_invariant(phi))
chi = {u: rng.randrange(8) for u in range(8)}
chi[0] = 0
print("after a random perturbation:", cohomology_invariant(perturb(phi, chi)))
while True:
    M = tuple(rng.randrange(1, 8) for _ in range(3))
    if linear_rank(M, 3) == 3:
        break
print("after a random basis change:", cohomology_invariant(change_basis(phi, M)))
print("trivial cocycle, any dim:", [cohomology_invariant(trivial_cocycle(d)) for d in range(6)])
