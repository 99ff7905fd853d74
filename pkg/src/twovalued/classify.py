"""Classification of finite involutive commutative two-valued groups.

Every such group is isomorphic to exactly one of

* Principal(d1,...,dk): a finite abelian group modulo negation,
* Unipotent(n, m) with n >= 3: the rank-n unipotent group times C2^m,
* Special(n, m) with n >= 2: the rank-n special group times C2^m,

where the principal chain is in invariant-factor form.  The low-rank
unipotent and special groups coincide with principal ones and are
canonicalized away (rank 1 and the rank-2 unipotent case).

classify() runs the decision procedure: strip single-valued C2 factors,
detect special pairs, reconstruct an abelian group when an element of order
outside {1,2,4} exists, and otherwise read off the quasi-cocycle and its
cohomology class.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .constructions import (
    FinAbelianGroup,
    principal,
    product_with_boolean,
    special_series,
    unipotent,
)
from .core import AmbiguousPower, TwoValuedGroup, order
from .cocycle import cohomology_invariant, extract_quasicocycle
from .structure import is_special, split_direct_factor

__all__ = [
    "ClassLabel",
    "GroupTable",
    "ReconstructionResult",
    "NonUniquePair",
    "NotAssociative",
    "NotAbelian",
    "Timeout",
    "merge_chains",
    "reconstruct_abelian",
    "invariant_factors",
    "classify",
    "realize",
    "all_labels_of_size",
    "are_isomorphic",
    "witness_isomorphism",
    "canonical_key",
]


class NonUniquePair(Exception):
    pass


class NotAssociative(Exception):
    pass


class NotAbelian(Exception):
    pass


class Timeout(Exception):
    """Witness search exceeded its node budget."""


def _factorint(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def merge_chains(c1, c2) -> tuple[int, ...]:
    """Invariant factors of the direct product of two abelian groups given
    by invariant-factor chains."""
    parts: dict[int, list[int]] = {}
    for d in tuple(c1) + tuple(c2):
        for p, e in _factorint(d).items():
            parts.setdefault(p, []).append(p ** e)
    if not parts:
        return ()
    k = max(len(v) for v in parts.values())
    chain = []
    for i in range(k):
        d = 1
        for p in parts:
            ps = sorted(parts[p], reverse=True)
            if i < len(ps):
                d *= ps[i]
        chain.append(d)
    return tuple(sorted(chain))


@dataclass(frozen=True)
class ClassLabel:
    """Canonical isomorphism-class label.  Use the constructors principal /
    unipotent / special; they fold the exceptional low-rank coincidences
    into principal form, so label equality is isomorphism."""

    kind: str
    chain: tuple[int, ...] = ()
    n: int = 0
    m: int = 0

    @classmethod
    def principal_label(cls, chain) -> "ClassLabel":
        chain = tuple(chain)
        for a, b in zip(chain, chain[1:]):
            if b % a != 0:
                raise ValueError(f"chain {chain} not ordered by divisibility")
        if any(d < 2 for d in chain):
            raise ValueError("chain entries must be >= 2")
        return cls(kind="principal", chain=chain)

    @classmethod
    def unipotent_label(cls, n: int, m: int) -> "ClassLabel":
        if n < 1 or m < 0:
            raise ValueError("need n >= 1, m >= 0")
        if n == 1:
            return cls.principal_label(merge_chains((4,), (2,) * m))
        if n == 2:
            return cls.principal_label(merge_chains((4, 4), (2,) * m))
        return cls(kind="unipotent", n=n, m=m)

    @classmethod
    def special_label(cls, n: int, m: int) -> "ClassLabel":
        if n < 1 or m < 0:
            raise ValueError("need n >= 1, m >= 0")
        if n == 1:
            # the 3-element special group is the 3-element unipotent one
            return cls.principal_label(merge_chains((4,), (2,) * m))
        return cls(kind="special", n=n, m=m)

    def size(self) -> int:
        if self.kind == "principal":
            prod = 1
            r = 0
            for d in self.chain:
                prod *= d
                r += 1 - d % 2
            return (prod + 2 ** r) // 2
        if self.kind == "unipotent":
            return (2 ** (2 * self.n - 1) + 2 ** (self.n - 1)) << self.m
        return (2 ** self.n + 1) << self.m

    def __str__(self) -> str:
        if self.kind == "principal":
            return f"Principal({','.join(map(str, self.chain))})"
        return f"{self.kind.capitalize()}({self.n},{self.m})"


def realize(label: ClassLabel) -> TwoValuedGroup:
    """Construct a group in the given isomorphism class."""
    if label.kind == "principal":
        return principal(*label.chain)
    if label.kind == "unipotent":
        return product_with_boolean(unipotent(label.n), label.m)
    return product_with_boolean(special_series(label.n), label.m)


def _chains_with_product_up_to(limit: int):
    """All divisibility chains (d1 | d2 | ... | dk), di >= 2, with product
    <= limit; includes the empty chain."""
    out = [()]
    stack = [((), 1)]
    while stack:
        chain, prod = stack.pop()
        last = chain[-1] if chain else 1
        for d in range(2, limit // prod + 1):
            if d % last == 0:
                nxt = chain + (d,)
                out.append(nxt)
                stack.append((nxt, prod * d))
    return out


def all_labels_of_size(k: int) -> set[ClassLabel]:
    """Every isomorphism class of the given cardinality, by label
    arithmetic: enumerate the three series, dedup through the canonical
    constructors."""
    labels: set[ClassLabel] = set()
    for chain in _chains_with_product_up_to(2 * k):
        lab = ClassLabel.principal_label(chain)
        if lab.size() == k:
            labels.add(lab)
    n = 1
    while 2 ** (2 * n - 1) + 2 ** (n - 1) <= k:
        m = 0
        while (2 ** (2 * n - 1) + 2 ** (n - 1)) << m <= k:
            if (2 ** (2 * n - 1) + 2 ** (n - 1)) << m == k:
                labels.add(ClassLabel.unipotent_label(n, m))
            m += 1
        n += 1
    n = 1
    while 2 ** n + 1 <= k:
        m = 0
        while (2 ** n + 1) << m <= k:
            if (2 ** n + 1) << m == k:
                labels.add(ClassLabel.special_label(n, m))
            m += 1
        n += 1
    return labels


@dataclass(frozen=True)
class GroupTable:
    """A single-valued finite group as an index table with identity 0."""

    table: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] = ()

    @property
    def size(self) -> int:
        return len(self.table)

    def order_of(self, x: int) -> int:
        k, acc = 1, x
        while acc != 0:
            acc = self.table[acc][x]
            k += 1
        return k


def _check_group_table(G: GroupTable):
    n = G.size
    t = G.table
    for x in range(n):
        if t[0][x] != x or t[x][0] != x:
            raise NotAbelian(f"index 0 is not an identity (element {x})")
        if sorted(t[x]) != list(range(n)):
            raise NotAbelian(f"row {x} is not a permutation")
        if 0 not in t[x]:
            raise NotAbelian(f"element {x} has no inverse")
    arr = np.array(t, dtype=np.int32)
    if not np.array_equal(arr, arr.T):
        raise NotAbelian("multiplication is not commutative")
    left = arr[arr, :]
    right = arr[:, arr]
    if not np.array_equal(left, right):
        bad = np.argwhere(left != right)
        raise NotAssociative(f"first failing triple: {tuple(map(int, bad[0]))}")


def invariant_factors(G) -> tuple[int, ...]:
    """Invariant-factor chain (d1 | d2 | ... | dk) of a finite abelian group
    given by an explicit multiplication table (or a FinAbelianGroup).

    Works by order counting: for each prime p, the number of elements whose
    order divides p^j determines the partition of the p-primary component.
    """
    if isinstance(G, FinAbelianGroup):
        return merge_chains(G.factors, ())
    _check_group_table(G)
    n = G.size
    orders = [G.order_of(x) for x in range(n)]
    parts: dict[int, list[int]] = {}
    for p in _factorint(n):
        # c[j] = #elements whose order divides p^j; stabilizes at the size
        # of the p-primary component
        c = [1]
        j = 1
        while True:
            c.append(sum(1 for o in orders if p ** j % o == 0))
            if c[-1] == c[-2]:
                break
            j += 1
        # ranks[j-1] = log_p(c[j]/c[j-1]) = #cyclic p-factors with exponent >= j
        ranks = []
        for i in range(1, len(c)):
            q, r = c[i] // c[i - 1], 0
            while q > 1:
                q //= p
                r += 1
            ranks.append(r)
        ranks.append(0)
        exact: list[int] = []
        for i in range(1, len(ranks)):
            exact.extend([p ** i] * (ranks[i - 1] - ranks[i]))
        parts[p] = sorted(exact, reverse=True)
    chain: list[int] = []
    k = max((len(v) for v in parts.values()), default=0)
    for i in range(k):
        d = 1
        for p in parts:
            if i < len(parts[p]):
                d *= parts[p][i]
        chain.append(d)
    return tuple(sorted(x for x in chain if x > 1))


@dataclass
class ReconstructionResult:
    """Output of reconstruct_abelian: the abelian group in invariant-factor
    form, the raw reconstructed table on pairs (x, p), and bookkeeping."""

    abelian: FinAbelianGroup
    chain: tuple[int, ...]
    table: GroupTable
    t: int
    pairs: tuple[tuple[int, int], ...]


def reconstruct_abelian(X: TwoValuedGroup, t: int | None = None) -> ReconstructionResult:
    """Rebuild a single-valued abelian group A with X = A modulo negation.

    Requires a non-special group and an element t of order outside
    {1, 2, 4}.  The group lives on pairs A = {(x, p) : p in t*x}; the product
    of (x, p) and (y, q) is the unique (z, r) in A with

      (i)   z in x*y, z in p*q', z in p'*q
      (ii)  r in t*z, r in x*q, r in p*y
      (iii) r' in x*q', r' in p'*y   for t*z = [r, r']

    where p', q' are the companions of p, q in t*x, t*y.  NonUniquePair if a
    product is not pinned down, NotAssociative if the result fails the group
    axioms.  With t omitted, the smallest admissible element index is used.
    """
    special, pairs_w = is_special(X)
    if special:
        raise ValueError(f"group has special pairs, e.g. {pairs_w[0]}")
    if t is None:
        for x in range(len(X)):
            if order(X, x) not in (1, 2, 4):
                t = x
                break
        if t is None:
            raise ValueError("no element of order outside {1, 2, 4}")
    elif order(X, t) in (1, 2, 4):
        raise ValueError(f"t = {t} has order {order(X, t)}")

    n = len(X)
    tab = X.table
    A: list[tuple[int, int]] = []
    for x in range(n):
        p = tab[t][x]
        A.append((x, p.lo))
        if p.hi != p.lo:
            A.append((x, p.hi))
    pos = {a: i for i, a in enumerate(A)}
    na = len(A)

    def companion(x: int, p: int) -> int:
        return tab[t][x].other(p)

    def mul(a: tuple[int, int], b: tuple[int, int]) -> int:
        x, p = a
        y, q = b
        pp = companion(x, p)
        qq = companion(y, q)
        zs = (
            set(tab[x][y].support())
            & set(tab[p][qq].support())
            & set(tab[pp][q].support())
        )
        found = []
        for z in zs:
            for r in set(tab[t][z].support()):
                if r not in tab[x][q] or r not in tab[p][y]:
                    continue
                rr = tab[t][z].other(r)
                if rr not in tab[x][qq] or rr not in tab[pp][y]:
                    continue
                found.append((z, r))
        if len(found) != 1:
            raise NonUniquePair(
                f"product of {a} and {b}: candidates {sorted(found)}"
            )
        return pos[found[0]]

    table = tuple(tuple(mul(a, b) for b in A) for a in A)
    G = GroupTable(table=table, labels=tuple(f"({X.names[x]};{X.names[p]})" for x, p in A))
    # (0, t) sits at index 0 because t*e = [t, t] contributes exactly one pair
    _check_group_table(G)
    chain = invariant_factors(G)
    return ReconstructionResult(
        abelian=FinAbelianGroup(chain), chain=chain, table=G, t=t, pairs=tuple(A)
    )


def classify(X: TwoValuedGroup) -> ClassLabel:
    """Decide the isomorphism class of a finite involutive commutative
    two-valued group (assumed valid; run verify_axioms first for untrusted
    input)."""
    Xp, m, _witnesses = split_direct_factor(X)
    special, _ = is_special(Xp)
    if special:
        sz = len(Xp)
        n = (sz - 1).bit_length() - 1
        if sz != (1 << n) + 1 or n < 2:
            raise ValueError(
                f"special part has size {sz}, not of the form 2^n + 1 with n >= 2"
            )
        return ClassLabel.special_label(n, m)
    has_big = any(order(Xp, x) not in (1, 2, 4) for x in range(len(Xp)))
    if has_big:
        rec = reconstruct_abelian(Xp)
        return ClassLabel.principal_label(merge_chains(rec.chain, (2,) * m))
    if len(Xp) == 1:
        return ClassLabel.principal_label((2,) * m)
    data = extract_quasicocycle(Xp)
    nn = data.dim
    expected = 2 ** (2 * nn - 1) + 2 ** (nn - 1)
    if len(Xp) != expected:
        raise ValueError(
            f"orders in {{1,2,4}} but size {len(Xp)} != {expected} for rank {nn}"
        )
    if cohomology_invariant(data.phi):
        return ClassLabel.principal_label(merge_chains((4,) * nn, (2,) * m))
    return ClassLabel.unipotent_label(nn, m)


def are_isomorphic(X: TwoValuedGroup, Z: TwoValuedGroup) -> bool:
    """Label equality; the classification makes this a complete invariant."""
    return classify(X) == classify(Z)


# --- explicit isomorphism search -------------------------------------------

def _normalize(keys) -> list[int]:
    ranks = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [ranks[k] for k in keys]


def _initial_colors(X: TwoValuedGroup) -> list[int]:
    n = len(X)
    t = X.table
    try:
        ords = [order(X, x) for x in range(n)]
    except AmbiguousPower:
        ords = None
    keys = []
    for x in range(n):
        row = t[x]
        doubled = sum(1 for p in row if p.is_doubled)
        e_in = sum(1 for p in row if 0 in p)
        self_in = sum(1 for p in row if x in p)
        key = (x == 0, t[x][x].is_doubled, 0 in t[x][x], doubled, e_in, self_in)
        if ords is not None:
            big = ords[x] > 2
            special_partners = sum(
                1 for y in range(n) if big and ords[y] > 2 and t[x][y].is_doubled
            )
            key += (ords[x], special_partners)
        keys.append(key)
    return _normalize(keys)


def _refine(X: TwoValuedGroup, cols: list[int]) -> list[int]:
    n = len(X)
    t = X.table
    while True:
        keys = []
        for x in range(n):
            sig = sorted(
                (cols[y], tuple(sorted((cols[p.lo], cols[p.hi]))))
                for y, p in enumerate(t[x])
            )
            keys.append((cols[x], tuple(sig)))
        new = _normalize(keys)
        if new == cols:
            return cols
        cols = new


def witness_isomorphism(
    X: TwoValuedGroup, Z: TwoValuedGroup, node_budget: int = 10_000_000
) -> list[int] | None:
    """Search for an explicit isomorphism (a list mapping X indices to Z
    indices).  Color refinement prunes the search; assignments propagate
    forced values through half-known product cells.  Returns None when no
    isomorphism exists; raises Timeout when the node budget runs out."""
    n = len(X)
    if len(Z) != n:
        return None
    cx = _refine(X, _initial_colors(X))
    cz = _refine(Z, _initial_colors(Z))
    if sorted(cx) != sorted(cz):
        return None
    tx, tz = X.table, Z.table
    cand = {c: [z for z in range(n) if cz[z] == c] for c in set(cz)}
    f = [-1] * n
    finv = [-1] * n
    budget = node_budget

    def propagate(x: int, z: int, trail: list[int]) -> bool:
        nonlocal budget
        queue = [(x, z)]
        while queue:
            a, b = queue.pop()
            if f[a] == b:
                continue
            if f[a] != -1 or finv[b] != -1 or cx[a] != cz[b]:
                return False
            budget -= 1
            if budget < 0:
                raise Timeout(f"node budget exhausted ({node_budget})")
            f[a] = b
            finv[b] = a
            trail.append(a)
            for y in range(n):
                if f[y] == -1:
                    continue
                for (pa, pb) in ((tx[a][y], tz[b][f[y]]), (tx[y][a], tz[f[y]][b])):
                    l1, l2 = pa.lo, pa.hi
                    m1, m2 = f[l1], f[l2]
                    if m1 != -1 and m2 != -1:
                        if tuple(sorted((m1, m2))) != pb.as_multiset():
                            return False
                    elif m1 != -1:
                        if m1 not in pb:
                            return False
                        queue.append((l2, pb.other(m1)))
                    elif m2 != -1:
                        if m2 not in pb:
                            return False
                        queue.append((l1, pb.other(m2)))
                    elif l1 == l2:
                        if not pb.is_doubled:
                            return False
                        queue.append((l1, pb.lo))
        return True

    def undo(trail: list[int], mark: int):
        while len(trail) > mark:
            a = trail.pop()
            finv[f[a]] = -1
            f[a] = -1

    # static order: rare colors first, identity is its own color class
    by_class = sorted(range(n), key=lambda x: (len(cand[cx[x]]), cx[x], x))
    trail: list[int] = []

    def search(depth: int) -> bool:
        while depth < n and f[by_class[depth]] != -1:
            depth += 1
        if depth == n:
            for a in range(n):
                for b in range(n):
                    p = tx[a][b]
                    if tuple(sorted((f[p.lo], f[p.hi]))) != tz[f[a]][f[b]].as_multiset():
                        return False
            return True
        x = by_class[depth]
        for z in cand[cx[x]]:
            if finv[z] != -1:
                continue
            mark = len(trail)
            if propagate(x, z, trail) and search(depth + 1):
                return True
            undo(trail, mark)
        return False

    if search(0):
        return list(f)
    return None


def canonical_key(X: TwoValuedGroup, perm_budget: int = 1_000_000):
    """A complete isomorphism invariant for small groups: the minimal
    relabeled table over all color-respecting bijections.  Intended for
    enumeration-scale sizes; raises ValueError when the color classes are
    too symmetric to iterate."""
    n = len(X)
    cols = _refine(X, _initial_colors(X))
    classes: dict[int, list[int]] = {}
    for x in range(n):
        classes.setdefault(cols[x], []).append(x)
    ordered = [classes[c] for c in sorted(classes)]
    total = 1
    for cl in ordered:
        for i in range(2, len(cl) + 1):
            total *= i
        if total > perm_budget:
            raise ValueError("color classes too symmetric for canonical form")
    sig = tuple(sorted((len(cl), c) for c, cl in zip(sorted(classes), ordered)))
    best = None
    for perms in itertools.product(*[itertools.permutations(cl) for cl in ordered]):
        relabel = [0] * n
        idx = 0
        for block in perms:
            for old in block:
                relabel[old] = idx
                idx += 1
        tab = [[None] * n for _ in range(n)]
        for a in range(n):
            ra = relabel[a]
            for b in range(n):
                p = X.table[a][b]
                q = (relabel[p.lo], relabel[p.hi])
                tab[ra][relabel[b]] = (min(q), max(q))
        key = tuple(tuple(row) for row in tab)
        if best is None or key < best:
            best = key
    return (sig, best)
