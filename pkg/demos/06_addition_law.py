"""The one-parameter family of algebraic two-valued addition laws.

F(x,y,z) is symmetric of degree 2 in each variable; fixing x,y it is a
quadratic in z whose two roots are the product x*y.  The family is governed
by three coefficients (a1, a2, a3); at zero it degenerates to the law
x*y = [(sqrt(x)+sqrt(y))^2, (sqrt(x)-sqrt(y))^2].
"""

from twovalued import (
    LawParams,
    canonical_operator_polys,
    check_associativity,
    eval_F,
    mul2,
    random_sample_suite,
)

zero = LawParams(0, 0, 0)
print("boundary identities (hold for every parameter choice):")
print("  F(0,2,5) =", eval_F(zero, 0, 2, 5), " expected (5-2)^2 = 9")
print("  F(3,1,0) =", eval_F(LawParams(2, -1, 3), 3, 1, 0), " expected (3-1)^2 = 4")

print("\ndegenerate product 1*1 at zero parameters:", mul2(zero, 1, 1))

p = LawParams(0.2, -0.1, 0.05)
print(f"\nproduct 2*3 at {p}: {mul2(p, 2, 3)}")
print("associativity at (0.4, -1.1, 0.9):", check_associativity(p, 0.4, -1.1, 0.9))

passed, total, redrawn = random_sample_suite(n_samples=100, tol=1e-6)
print(f"seeded random associativity suite: {passed}/{total} (redrawn {redrawn})")

phi1, phi2 = canonical_operator_polys(zero)
print(f"\ncanonical operator coefficients at zero parameters: phi1 = {phi1}, phi2 = {phi2}")
phi1s, phi2s = canonical_operator_polys()
print(f"with free parameters: phi1 = {phi1s}")
print(f"                      phi2 = {phi2s}")
