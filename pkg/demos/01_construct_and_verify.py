"""Build groups from the three standard series and check the axioms.

A two-valued group multiplies elements into unordered pairs.  The library
stores the full n x n table of pairs; verify_axioms sweeps identity,
associativity (as 4-element multisets) and inverse uniqueness.
"""

from twovalued import principal, special_series, unipotent, verify_axioms


def show(X, title):
    print(f"\n{title}: {len(X.names)} elements")
    width = max(len(n) for n in X.names) * 2 + 3
    header = " ".join(f"{n:>{width}}" for n in X.names)
    print(" " * 6 + header)
    for i, row in enumerate(X.table):
        cells = " ".join(
            f"{'[' + X.names[p.lo] + ',' + X.names[p.hi] + ']':>{width}}" for p in row
        )
        print(f"{X.names[i]:>5} {cells}")
    rep = verify_axioms(X)
    print(
        f"two-valued group: {rep.is_two_valued_group}, "
        f"commutative: {rep.is_commutative}, involutive: {rep.is_involutive}"
    )


# quotient of the cyclic group C5 by negation: 3 classes
show(principal(5), "principal chain (5)")

# quotient of C2^2 x C2^2 by (a,b) -> (a, a+b): 10 classes
show(unipotent(2), "unipotent rank 2")

# Boolean group of rank 2 plus the absorbing square s
show(special_series(2), "special rank 2")
