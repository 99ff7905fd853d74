"""Structural analysis: orders, the Boolean subgroup action, quotients,
and splitting off single-valued C2 factors."""

from twovalued import (
    UNDEFINED,
    boolean_subgroup,
    is_special,
    order,
    principal,
    product_with_boolean,
    quotient,
    special_series,
    split_direct_factor,
    squares_subgroup,
    unipotent,
    v_dot,
)

X = principal(2, 6)
print("orders in the (2,6) principal group:")
for i, name in enumerate(X.names):
    print(f"  {name}: order {order(X, i)}")

V = boolean_subgroup(X)
print(f"\nBoolean subgroup V: dim {V.dim}, members {[X.names[i] for i in V.members]}")

# elements of order <= 2 act single-valuedly; a generic pair does not
v = V.members[1]
print(f"dot action of {X.names[v]}:", [X.names[v_dot(X, v, x)] for x in range(len(X.names))])
hi = next(x for x in range(len(X.names)) if order(X, x) > 2)
val = v_dot(X, hi, hi)
print(f"v_dot({X.names[hi]},{X.names[hi]}) =", "undefined" if val is UNDEFINED else X.names[val])

Y = special_series(2)
flag, pairs = is_special(Y)
print(f"\nspecial pairs in the 5-element special group: {flag}, witnesses {pairs}")
print("squares:", sorted(Y.names[i] for i in squares_subgroup(Y)))

Q, cls = quotient(Y, squares_subgroup(Y))
print(f"quotient by the squares: {len(Q.names)} classes, projection {cls}")

# a direct C2^m factor is recovered from non-square involutions
Z = product_with_boolean(unipotent(2), 2)
base, m, witnesses = split_direct_factor(Z)
print(f"\n{len(Z.names)}-element product splits as base({len(base.names)}) x C2^{m}")
print("splitting witnesses:", witnesses)
