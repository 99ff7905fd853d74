"""Core pair/table machinery: products, axiom checks, powers and orders."""

import pytest

from twovalued.core import (
    AmbiguousPower,
    Pair,
    TwoValuedGroup,
    order,
    power,
    product,
    product_fold,
    verify_axioms,
)
from twovalued.constructions import (
    FinAbelianGroup,
    double,
    principal,
    special_series,
    unipotent,
)


def test_pair_of_sorts():
    assert Pair.of(3, 1) == Pair(1, 3)
    assert Pair.of(2, 2) == Pair(2, 2)


def test_pair_other():
    p = Pair(1, 3)
    assert p.other(1) == 3
    assert p.other(3) == 1
    assert Pair(2, 2).other(2) == 2


def test_pair_other_rejects_foreign_element():
    with pytest.raises(ValueError):
        Pair(1, 3).other(2)


def test_pair_support_and_contains():
    assert Pair(1, 3).support() == (1, 3)
    assert Pair(2, 2).support() == (2,)
    assert 1 in Pair(1, 3)
    assert 2 not in Pair(1, 3)
    assert Pair(2, 2).is_doubled
    assert not Pair(1, 3).is_doubled


def test_table_must_be_square_with_sorted_cells():
    with pytest.raises(ValueError):
        TwoValuedGroup(names=("e", "x"), table=((Pair(0, 0),),))
    with pytest.raises(ValueError):
        TwoValuedGroup(
            names=("e", "x"),
            table=(
                (Pair(0, 0), Pair(1, 1)),
                (Pair(1, 1), Pair(1, 0)),  # unsorted cell
            ),
        )


def test_names_must_be_unique():
    with pytest.raises(ValueError):
        TwoValuedGroup(
            names=("e", "e"),
            table=(
                (Pair(0, 0), Pair(1, 1)),
                (Pair(1, 1), Pair(0, 0)),
            ),
        )


# 3-element quotient of C5 by negation; classes {0},{1,4},{2,3}.
# Hand check: 1+1=2, 1-1=0; 1+2=3~2, 1-2=-1~1; 2+2=4~1, 2-2=0.
X5_TABLE = (
    (Pair(0, 0), Pair(1, 1), Pair(2, 2)),
    (Pair(1, 1), Pair(0, 2), Pair(1, 2)),
    (Pair(2, 2), Pair(1, 2), Pair(0, 1)),
)


def test_product_matches_hand_table():
    X = principal(5)
    assert X.table == X5_TABLE
    assert product(X, 1, 1) == Pair(0, 2)
    assert product(X, 2, 2) == Pair(0, 1)
    assert product(X, 1, 2) == Pair(1, 2)


def test_product_fold_is_sorted_multiset():
    X = principal(5)
    # (1*1) folded with 2: supports of 0*2 and 2*2 merged
    assert product_fold(X, product(X, 1, 1), 2) == (0, 1, 2, 2)
    Y = special_series(2)
    # x*(x*x) in the 5-element special group: e*x and s*x both double x
    assert product_fold(Y, (0, 4), 1) == (1, 1, 1, 1)


@pytest.mark.parametrize(
    "X",
    [
        principal(2),
        principal(5),
        principal(6),
        principal(4, 4),
        principal(2, 2, 2),
        unipotent(1),
        unipotent(2),
        special_series(1),
        special_series(3),
    ],
)
def test_verify_axioms_accepts_valid_groups(X):
    rep = verify_axioms(X)
    assert rep.is_two_valued_group
    assert rep.is_commutative
    assert rep.is_involutive
    assert rep.violations == []


def test_doubled_group_is_two_valued_but_not_involutive():
    X = double(FinAbelianGroup((3,)))
    rep = verify_axioms(X)
    assert rep.is_two_valued_group
    assert rep.is_commutative
    assert not rep.is_involutive


def test_verify_axioms_flags_broken_identity():
    bad = (
        (Pair(0, 0), Pair(0, 1)),  # e*x should be [x,x]
        (Pair(0, 1), Pair(0, 0)),
    )
    rep = verify_axioms(TwoValuedGroup(names=("e", "x"), table=bad))
    assert not rep.is_two_valued_group
    assert rep.violations_for("strong_identity")


def test_verify_axioms_flags_broken_associativity():
    # tamper one off-diagonal cell of the 4-element principal group
    X = principal(6)
    rows = [list(r) for r in X.table]
    rows[1][2] = rows[2][1] = Pair(1, 1)
    rep = verify_axioms(TwoValuedGroup(names=X.names, table=tuple(map(tuple, rows))))
    assert not rep.is_two_valued_group
    assert rep.violations_for("associativity")


def test_verify_axioms_flags_nonunique_inverse():
    # x*x and x*y both contain e: two inverse candidates for x
    bad = (
        (Pair(0, 0), Pair(1, 1), Pair(2, 2)),
        (Pair(1, 1), Pair(0, 0), Pair(0, 2)),
        (Pair(2, 2), Pair(0, 2), Pair(0, 0)),
    )
    rep = verify_axioms(TwoValuedGroup(names=("e", "x", "y"), table=bad))
    assert rep.violations_for("inverse_uniqueness")


def test_power_sequence_cyclic_case():
    X = principal(5)  # classes of 0,1,2 in C5
    assert [power(X, 1, k) for k in range(6)] == [0, 1, 2, 2, 1, 0]
    # negative exponents fold back onto the same sequence
    assert power(X, 1, -1) == 1
    assert power(X, 1, 7) == power(X, 1, 2)


def test_orders_match_underlying_cyclic_group():
    X = principal(6)
    assert [order(X, i) for i in range(4)] == [1, 6, 3, 2]
    Y = special_series(2)
    assert [order(Y, i) for i in range(5)] == [1, 4, 4, 4, 2]


def test_power_ambiguous_on_noninvolutive_double():
    X = double(FinAbelianGroup((3,)))
    with pytest.raises(AmbiguousPower):
        power(X, 1, 2)


def test_identity_power_and_order():
    X = principal(5)
    assert order(X, 0) == 1
    assert power(X, 0, 12345) == 0
