"""Classification and isomorphism testing.

Every finite involutive commutative two-valued group lands in exactly one of
three families; classify() computes the canonical label.  Two low-rank
coincidences are folded into the principal family, which is why the
unipotent label starts at rank 3 and the special label at rank 2.
"""

from twovalued import (
    classify,
    are_isomorphic,
    principal,
    product_with_boolean,
    reconstruct_abelian,
    special_series,
    unipotent,
    witness_isomorphism,
)

samples = [
    principal(9),
    principal(4, 4),
    unipotent(2),          # same class as the line above
    unipotent(3),
    principal(4, 4, 4),    # same size as unipotent(3), different class
    special_series(1),     # collapses into the principal family
    special_series(2),
    product_with_boolean(special_series(2), 1),
]
for X in samples:
    print(f"{len(X.names):>3} elements -> {classify(X)}")

A, B = principal(4, 4), unipotent(2)
print(f"\nprincipal(4,4) ~ unipotent(2): {are_isomorphic(A, B)}")
f = witness_isomorphism(A, B)
print("witness map:", {A.names[i]: B.names[f[i]] for i in range(len(f))})

# a seed of order not in {1,2,4} rebuilds the underlying abelian group
res = reconstruct_abelian(principal(2, 6))
print(f"\nreconstructed invariant factors of the (2,6) quotient: {res.chain}")
print(f"seed element index {res.t}, group elements as (class, component) pairs:")
print(res.pairs)
