"""Classification: labels, reconstruction, isomorphism decision, search."""

import pytest

from twovalued.core import verify_axioms
from twovalued.constructions import (
    FinAbelianGroup,
    double,
    principal,
    product_with_boolean,
    special_series,
    unipotent,
)
from twovalued.classify import (
    ClassLabel,
    NotAbelian,
    NotAssociative,
    Timeout,
    all_labels_of_size,
    are_isomorphic,
    canonical_key,
    classify,
    invariant_factors,
    merge_chains,
    realize,
    reconstruct_abelian,
    witness_isomorphism,
)


class TestMergeChains:
    def test_single_primes(self):
        assert merge_chains((4,), (2,)) == (2, 4)
        assert merge_chains((3,), (3,)) == (3, 3)

    def test_mixed_primes_collapse(self):
        # C6 x C4 = C2 x C12 in invariant factor form
        assert merge_chains((6,), (4,)) == (2, 12)

    def test_empty_chain_is_neutral(self):
        assert merge_chains((), (2, 6)) == (2, 6)
        assert merge_chains((4, 4), ()) == (4, 4)

    def test_boolean_merge(self):
        assert merge_chains((4, 4), (2, 2, 2)) == (2, 2, 2, 4, 4)


class TestClassLabel:
    def test_principal_requires_divisibility_chain(self):
        with pytest.raises(ValueError):
            ClassLabel.principal_label((4, 2))
        with pytest.raises(ValueError):
            ClassLabel.principal_label((3, 4))

    def test_small_unipotent_ranks_fold_into_principal(self):
        assert ClassLabel.unipotent_label(1, 0) == ClassLabel.principal_label((4,))
        assert ClassLabel.unipotent_label(2, 1) == ClassLabel.principal_label((2, 4, 4))
        lab = ClassLabel.unipotent_label(3, 0)
        assert lab.kind == "unipotent" and lab.n == 3

    def test_small_special_rank_folds_into_principal(self):
        assert ClassLabel.special_label(1, 0) == ClassLabel.principal_label((4,))
        lab = ClassLabel.special_label(2, 2)
        assert lab.kind == "special" and (lab.n, lab.m) == (2, 2)

    def test_size_formulas(self):
        assert ClassLabel.principal_label((4, 4)).size() == 10
        assert ClassLabel.unipotent_label(3, 1).size() == 72
        assert ClassLabel.special_label(2, 1).size() == 10

    def test_str_forms(self):
        assert str(ClassLabel.principal_label((2, 6))) == "Principal(2,6)"
        assert str(ClassLabel.unipotent_label(3, 0)) == "Unipotent(3,0)"
        assert str(ClassLabel.special_label(2, 1)) == "Special(2,1)"


@pytest.mark.parametrize(
    "label",
    [
        ClassLabel.principal_label(()),
        ClassLabel.principal_label((5,)),
        ClassLabel.principal_label((2, 6)),
        ClassLabel.unipotent_label(3, 0),
        ClassLabel.special_label(2, 0),
        ClassLabel.special_label(2, 2),
    ],
)
def test_realize_then_classify_round_trip(label):
    X = realize(label)
    assert len(X.names) == label.size()
    assert classify(X) == label


class TestClassify:
    def test_trivial_group(self):
        assert classify(principal()) == ClassLabel.principal_label(())

    def test_odd_cyclic(self):
        assert str(classify(principal(9))) == "Principal(9)"

    def test_boolean_only(self):
        X = double(FinAbelianGroup((2, 2, 2)))
        assert str(classify(X)) == "Principal(2,2,2)"

    def test_exceptional_unipotent_rank_two(self):
        assert str(classify(unipotent(2))) == "Principal(4,4)"

    def test_exceptional_special_rank_one(self):
        assert str(classify(special_series(1))) == "Principal(4)"

    def test_unipotent_rank_three_survives(self):
        assert str(classify(unipotent(3))) == "Unipotent(3,0)"

    def test_principal_chain_444_stays_principal(self):
        assert str(classify(principal(4, 4, 4))) == "Principal(4,4,4)"

    def test_special_with_boolean_factor(self):
        X = product_with_boolean(special_series(2), 2)
        assert str(classify(X)) == "Special(2,2)"

    def test_mixed_order_chain(self):
        assert str(classify(principal(2, 12))) == "Principal(2,12)"

    def test_attached_factors_merge_into_chain(self):
        X = product_with_boolean(principal(4), 1)
        assert str(classify(X)) == "Principal(2,4)"

    def test_unipotent_with_factor(self):
        X = product_with_boolean(unipotent(3), 1)
        assert str(classify(X)) == "Unipotent(3,1)"


class TestAllLabelsOfSize:
    # label counts by size, cross-checked against the exhaustive search
    @pytest.mark.parametrize(
        "k,count", [(1, 1), (2, 2), (3, 2), (4, 3), (5, 4), (6, 3), (10, 6)]
    )
    def test_counts(self, k, count):
        assert len(all_labels_of_size(k)) == count

    def test_size_five_contents(self):
        labels = {str(l) for l in all_labels_of_size(5)}
        assert labels == {
            "Principal(8)",
            "Principal(9)",
            "Principal(3,3)",
            "Special(2,0)",
        }

    def test_sizes_are_consistent(self):
        for k in range(1, 12):
            for lab in all_labels_of_size(k):
                assert lab.size() == k

    def test_no_duplicate_canonical_forms(self):
        # exceptional identifications must already be canonicalized away
        for k in (3, 10, 36):
            labels = all_labels_of_size(k)
            assert len({str(l) for l in labels}) == len(labels)
            for lab in labels:
                if lab.kind == "unipotent":
                    assert lab.n >= 3
                if lab.kind == "special":
                    assert lab.n >= 2


class TestInvariantFactors:
    def test_of_fin_abelian_group(self):
        assert invariant_factors(FinAbelianGroup((4, 6))) == (2, 12)
        assert invariant_factors(FinAbelianGroup(())) == ()
        assert invariant_factors(FinAbelianGroup((2, 3))) == (6,)

    def test_of_reconstruction_table(self):
        res = reconstruct_abelian(principal(3, 3))
        assert invariant_factors(res.table) == (3, 3)


class TestReconstruction:
    @pytest.mark.parametrize("chain", [(3,), (5,), (6,), (8,), (2, 6)])
    def test_recovers_invariant_factors(self, chain):
        X = principal(*chain)
        res = reconstruct_abelian(X)
        assert res.chain == chain

    def test_every_admissible_seed_gives_same_answer(self):
        X = principal(2, 6)
        from twovalued.core import order

        seeds = [t for t in range(len(X.names)) if order(X, t) not in (1, 2, 4)]
        assert seeds
        for t in seeds:
            assert reconstruct_abelian(X, t).chain == (2, 6)

    def test_rejects_inadmissible_seed(self):
        X = principal(6)
        with pytest.raises(ValueError):
            reconstruct_abelian(X, 0)  # identity has order 1

    def test_rejects_special_group(self):
        with pytest.raises(ValueError):
            reconstruct_abelian(special_series(2))

    def test_table_is_group_with_doubling_pairs(self):
        X = principal(5)
        res = reconstruct_abelian(X)
        n = len(res.table.labels)
        assert n == 5
        # elements are pairs (x, p) with p a component of t*x
        for x, p in res.pairs:
            assert p in X.table[res.t][x]
        # identity class appears once, every other class exactly twice
        from collections import Counter

        first = Counter(x for x, _ in res.pairs)
        assert first[0] == 1
        assert all(first[x] == 2 for x in range(1, len(X.names)))


class TestIsomorphism:
    def test_exceptional_pair_is_isomorphic(self):
        assert are_isomorphic(principal(4, 4), unipotent(2))

    def test_same_size_different_structure(self):
        assert not are_isomorphic(principal(9), principal(3, 3))

    def test_witness_on_exceptional_pair(self):
        A, B = principal(4, 4), unipotent(2)
        f = witness_isomorphism(A, B)
        assert f is not None
        assert sorted(f) == list(range(10))
        for x in range(10):
            for y in range(10):
                p = A.table[x][y]
                q = B.table[f[x]][f[y]]
                assert sorted((f[p.lo], f[p.hi])) == [q.lo, q.hi]

    def test_witness_none_when_colors_differ(self):
        assert witness_isomorphism(principal(9), principal(3, 3)) is None

    def test_witness_budget_exhaustion_raises(self):
        A, B = principal(4, 4, 4), unipotent(3)  # same colors, not isomorphic
        with pytest.raises(Timeout):
            witness_isomorphism(A, B, node_budget=50)

    def test_canonical_key_separates_and_identifies(self):
        assert canonical_key(principal(4, 4)) == canonical_key(unipotent(2))
        assert canonical_key(principal(9)) != canonical_key(principal(3, 3))

    def test_canonical_key_invariant_under_relabeling(self):
        import random

        X = principal(2, 6)
        n = len(X.names)
        rng = random.Random(17)
        perm = list(range(1, n))
        rng.shuffle(perm)
        perm = [0] + perm  # keep identity at 0
        inv = [perm.index(i) for i in range(n)]
        from twovalued.core import Pair, TwoValuedGroup

        table = tuple(
            tuple(
                Pair.of(perm[X.table[inv[i]][inv[j]].lo], perm[X.table[inv[i]][inv[j]].hi])
                for j in range(n)
            )
            for i in range(n)
        )
        Y = TwoValuedGroup(names=tuple(f"g{i}" for i in range(n)), table=table)
        assert verify_axioms(Y).is_two_valued_group
        assert canonical_key(Y) == canonical_key(X)
        assert classify(Y) == classify(X)
