"""Core data model for finite two-valued groups.

A two-valued group multiplies two elements into an *unordered pair* (a
2-element multiset).  Everything downstream works with element indices into a
fixed tuple of names; index 0 is always the identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

__all__ = [
    "Pair",
    "TwoValuedGroup",
    "ValidationReport",
    "AmbiguousPower",
    "product",
    "product_fold",
    "verify_axioms",
    "power",
    "order",
]

# Axiom tags whose violation disqualifies a table from being a two-valued
# group at all.  Commutativity and involutivity are reported as flags, not
# disqualifying violations.
AXIOM_TAGS = (
    "square_table",
    "strong_identity",
    "associativity",
    "inverse_existence",
    "inverse_uniqueness",
)

# Deterministic cap on recorded witnesses per tag; verdicts always come from
# the full sweep.
MAX_WITNESSES_PER_TAG = 1000


class Pair(NamedTuple):
    """Unordered pair of element indices, stored sorted (lo <= hi)."""

    lo: int
    hi: int

    @classmethod
    def of(cls, a: int, b: int) -> "Pair":
        return cls(a, b) if a <= b else cls(b, a)

    def as_multiset(self) -> tuple[int, int]:
        return (self.lo, self.hi)

    def __contains__(self, x: object) -> bool:
        return x == self.lo or x == self.hi

    def other(self, x: int) -> int:
        """The companion of x in this pair (x itself if the pair is [x,x])."""
        if x == self.lo:
            return self.hi
        if x == self.hi:
            return self.lo
        raise ValueError(f"{x} not in pair {self}")

    @property
    def is_doubled(self) -> bool:
        return self.lo == self.hi

    def support(self) -> tuple[int, ...]:
        return (self.lo,) if self.lo == self.hi else (self.lo, self.hi)


class AmbiguousPower(Exception):
    """Raised when the power recurrence does not determine x^k uniquely.

    For involutive elements the sequence x^0, x^1, x^2, ... is uniquely
    determined by x * x^k = [x^(k-1), x^(k+1)]; without involutivity the
    recurrence can branch, and we refuse to guess.
    """


@dataclass(frozen=True)
class TwoValuedGroup:
    """A finite two-valued group as an explicit multiplication table.

    table[i][j] is the unordered pair i*j.  names are unique display labels;
    names[0] is the identity.  Construction validates shape only -- use
    verify_axioms to check the actual axioms.
    """

    names: tuple[str, ...]
    table: tuple[tuple[Pair, ...], ...]
    identity: int = 0
    # per-instance caches for power sequences and orders
    _pow_cache: dict = field(default_factory=dict, repr=False, compare=False)
    _ord_cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.names)
        if n == 0:
            raise ValueError("empty element set")
        if len(set(self.names)) != n:
            raise ValueError("element names must be unique")
        if self.identity != 0:
            raise ValueError("identity must sit at index 0")
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise ValueError("multiplication table must be n x n")
        for row in self.table:
            for p in row:
                if not isinstance(p, Pair) or p.lo > p.hi:
                    raise ValueError(f"table cell {p!r} is not a sorted Pair")
                if not (0 <= p.lo < n and 0 <= p.hi < n):
                    raise ValueError(f"table cell {p} out of range")

    @classmethod
    def from_pairs(
        cls,
        names: Sequence[str],
        cells: Sequence[Sequence[tuple[int, int]]],
    ) -> "TwoValuedGroup":
        table = tuple(tuple(Pair.of(a, b) for (a, b) in row) for row in cells)
        return cls(names=tuple(names), table=table)

    def __len__(self) -> int:
        return len(self.names)

    @property
    def size(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"no element named {name!r}") from None

    def product(self, x: int, y: int) -> Pair:
        return self.table[x][y]


def product(X: TwoValuedGroup, x: int, y: int) -> Pair:
    """The unordered pair x*y."""
    return X.table[x][y]


def product_fold(X: TwoValuedGroup, m: Iterable[int], b: int) -> tuple[int, ...]:
    """Multiply every element of the multiset m by b and merge the results.

    A multiset of size 2^k folds to one of size 2^(k+1); the result is a
    sorted tuple of indices (our multiset normal form).
    """
    out: list[int] = []
    for x in m:
        p = X.table[x][b]
        out.append(p.lo)
        out.append(p.hi)
    return tuple(sorted(out))


def _int_tables(X: TwoValuedGroup) -> tuple[np.ndarray, np.ndarray]:
    n = len(X)
    dtype = np.int32
    lo = np.empty((n, n), dtype=dtype)
    hi = np.empty((n, n), dtype=dtype)
    for i, row in enumerate(X.table):
        for j, p in enumerate(row):
            lo[i, j] = p.lo
            hi[i, j] = p.hi
    return lo, hi


@dataclass
class ValidationReport:
    """Outcome of the exhaustive axiom sweep.

    violations holds (tag, witness) entries where witness is a tuple of the
    element indices involved.  Witness lists are capped at
    MAX_WITNESSES_PER_TAG per tag (lexicographically first kept); the boolean
    verdicts always reflect the full sweep.
    """

    size: int
    violations: list[tuple[str, tuple[int, ...]]]
    is_commutative: bool
    is_involutive: bool
    _axiom_ok: bool = True

    @property
    def is_two_valued_group(self) -> bool:
        return self._axiom_ok

    def violations_for(self, tag: str) -> list[tuple[int, ...]]:
        return [w for t, w in self.violations if t == tag]


def verify_axioms(X: TwoValuedGroup) -> ValidationReport:
    """Exhaustively check the two-valued group axioms on the full table.

    Checks, in order: strong identity (e*x = x*e = [x,x]), associativity as
    equality of 4-element multisets over all n^3 triples, and the inverse
    axiom: for each x the set C_x = {y : e in x*y or e in y*x} must be a
    single element x' with e contained in both x*x' and x'*x.  Commutativity
    and involutivity (e in x*x for every x) are reported as flags.

    Associativity is done with vectorized integer gathers, chunked along one
    axis so memory stays bounded for large tables.  Violations are collected,
    not raised.
    """
    n = len(X)
    e = X.identity
    lo, hi = _int_tables(X)
    violations: list[tuple[str, tuple[int, ...]]] = []
    counts = {tag: 0 for tag in AXIOM_TAGS}

    def record(tag: str, witness: tuple[int, ...]):
        counts[tag] += 1
        if counts[tag] <= MAX_WITNESSES_PER_TAG:
            violations.append((tag, witness))

    # strong identity
    for x in range(n):
        if not (lo[e, x] == x and hi[e, x] == x):
            record("strong_identity", (e, x))
        if x != e and not (lo[x, e] == x and hi[x, e] == x):
            record("strong_identity", (x, e))

    # commutativity (flag only)
    comm_mismatch = (lo != lo.T) | (hi != hi.T)
    is_commutative = not comm_mismatch.any()

    # involutivity (flag only): e in x*x for all x
    diag_lo = lo.diagonal()
    diag_hi = hi.diagonal()
    is_involutive = bool(np.all((diag_lo == e) | (diag_hi == e)))

    # associativity, chunked over z
    chunk = max(1, 4_000_000 // (n * n)) if n > 1 else 1
    for z0 in range(0, n, chunk):
        z1 = min(n, z0 + chunk)
        # (x*y)*z components: P[P[x,y], z] etc.
        lhs = np.stack(
            [
                lo[lo, z0:z1],
                hi[lo, z0:z1],
                lo[hi, z0:z1],
                hi[hi, z0:z1],
            ],
            axis=-1,
        )
        lhs.sort(axis=-1)
        # x*(y*z) components: P[x, P[y,z]] etc.
        lyz = lo[:, z0:z1]
        hyz = hi[:, z0:z1]
        rhs = np.stack(
            [
                lo[:, lyz],
                lo[:, hyz],
                hi[:, lyz],
                hi[:, hyz],
            ],
            axis=-1,
        )
        rhs.sort(axis=-1)
        bad = (lhs != rhs).any(axis=-1)
        if bad.any():
            for x, y, dz in zip(*np.nonzero(bad)):
                record("associativity", (int(x), int(y), int(z0 + dz)))

    # inverse axiom: C_x = {y : e in x*y or e in y*x} must be exactly one
    # element, with e in both x*y and y*x for that element.
    e_in_xy = (lo == e) | (hi == e)  # [x, y] -> e in x*y
    cand = e_in_xy | e_in_xy.T  # e in x*y or y*x
    for x in range(n):
        ys = np.nonzero(cand[x])[0]
        if len(ys) == 0:
            record("inverse_existence", (x,))
        elif len(ys) > 1:
            record("inverse_uniqueness", (x, *map(int, ys)))
        else:
            y = int(ys[0])
            if not (e_in_xy[x, y] and e_in_xy[y, x]):
                record("inverse_existence", (x, y))

    axiom_ok = all(counts[tag] == 0 for tag in AXIOM_TAGS)
    return ValidationReport(
        size=n,
        violations=violations,
        is_commutative=is_commutative,
        is_involutive=is_involutive,
        _axiom_ok=axiom_ok,
    )


def _power_sequence(X: TwoValuedGroup, x: int) -> list[int]:
    """The sequence e = x^0, x^1, x^2, ... up to (and including) the first
    return to e, computed by the forward recurrence
    x * x^k = [x^(k-1), x^(k+1)].

    Raises AmbiguousPower when the recurrence branches, which happens exactly
    when the defining multiset does not contain the previous term.
    """
    if x in X._pow_cache:
        return X._pow_cache[x]
    e = X.identity
    seq = [e, x]
    if x == e:
        seq = [e]
        X._pow_cache[x] = seq
        return seq
    # defensive cap: a valid sequence returns to e within 2n steps
    cap = 2 * len(X) + 2
    while len(seq) <= cap:
        prev, cur = seq[-2], seq[-1]
        p = X.table[x][cur]
        q = X.table[cur][x]
        if p != q:
            raise AmbiguousPower(
                f"x*x^k and x^k*x differ for x={x}, k={len(seq) - 1}"
            )
        if prev not in p:
            raise AmbiguousPower(
                f"x^(k-1) missing from x*x^k for x={x}, k={len(seq) - 1}"
            )
        nxt = p.other(prev)
        seq.append(nxt)
        if nxt == e:
            break
    else:
        raise AmbiguousPower(f"power sequence of x={x} never returns to e")
    X._pow_cache[x] = seq
    return seq


def power(X: TwoValuedGroup, x: int, k: int) -> int:
    """x^k, defined through the unique power sequence.

    Powers satisfy x^(-k) = x^k and are periodic with period ord(x), so any
    integer exponent is accepted.
    """
    seq = _power_sequence(X, x)
    m = len(seq) - 1  # seq[m] == e, the order of x
    if m == 0:
        return X.identity
    return seq[abs(k) % m]


def order(X: TwoValuedGroup, x: int) -> int:
    """Least k >= 1 with x^k = e."""
    if x in X._ord_cache:
        return X._ord_cache[x]
    seq = _power_sequence(X, x)
    m = max(1, len(seq) - 1)
    X._ord_cache[x] = m
    return m
