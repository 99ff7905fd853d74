"""Quasi-cocycles on Boolean groups and their cohomology invariant.

A group X with orders in {1, 2, 4}, no special pairs and no single-valued
direct factor is determined by a map phi: V x V -> V on its Boolean subgroup
V, defined modulo span(u, v) and satisfying a relaxed cocycle identity.  This
module extracts phi from a group table, validates the identities, and
computes the one-bit cohomology class that separates the two families with
the same order spectrum.

F2 vectors are Python ints used as bitmasks, with coordinate 0 the most
significant bit of `dim` bits, so integer order coincides with lexicographic
order on coordinate tuples and the canonical (lex smallest) coset
representative is plain min().  vec_to_tuple / tuple_to_vec convert.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import TwoValuedGroup, order, power
from .structure import UNDEFINED, boolean_subgroup, is_special, squares_subgroup, v_dot

__all__ = [
    "QuasiCocycle",
    "ExtractionData",
    "PreconditionViolated",
    "InvalidCocycle",
    "vec_to_tuple",
    "tuple_to_vec",
    "f2_span",
    "canonical_rep",
    "apply_linear",
    "linear_rank",
    "validate_quasicocycle",
    "phi_basis",
    "trivial_cocycle",
    "extract_quasicocycle",
    "cohomology_invariant",
    "perturb",
    "change_basis",
    "restrict_along",
]


class PreconditionViolated(Exception):
    pass


class InvalidCocycle(Exception):
    pass


def vec_to_tuple(v: int, dim: int) -> tuple[int, ...]:
    return tuple((v >> (dim - 1 - i)) & 1 for i in range(dim))


def tuple_to_vec(bits) -> int:
    v = 0
    for b in bits:
        v = (v << 1) | (1 if b else 0)
    return v


def f2_span(vectors) -> frozenset[int]:
    """All F2-linear combinations of the given bitmask vectors."""
    span = {0}
    for v in vectors:
        if v not in span:
            span |= {v ^ s for s in span}
    return frozenset(span)


def canonical_rep(w: int, span) -> int:
    """Lex-smallest element of the coset w + span."""
    return min(w ^ s for s in span)


def _pair_span(u: int, v: int) -> tuple[int, ...]:
    return (0, u, v, u ^ v)


def apply_linear(M, v: int) -> int:
    """Apply the linear map sending basis vector i to M[i]."""
    dim = len(M)
    out = 0
    for i in range(dim):
        if (v >> (dim - 1 - i)) & 1:
            out ^= M[i]
    return out


def linear_rank(vectors, dim: int) -> int:
    basis: dict[int, int] = {}  # leading bit -> vector
    for v in vectors:
        while v:
            lead = v.bit_length() - 1
            if lead not in basis:
                basis[lead] = v
                break
            v ^= basis[lead]
    return len(basis)


@dataclass(frozen=True)
class QuasiCocycle:
    """A map phi on pairs of F2 vectors, with values defined modulo
    span(u, v) and stored as the canonical coset representative.

    values has an entry for every ordered pair of dim-bit vectors.  The value
    space equals the domain space (a deliberate simplification: every
    operation in this library preserves that, including restriction, which
    re-expresses values in subspace coordinates).
    """

    dim: int
    values: dict

    def phi(self, u: int, v: int) -> int:
        return self.values[(u, v)]

    @classmethod
    def from_function(cls, dim: int, fn) -> "QuasiCocycle":
        n = 1 << dim
        values = {}
        for u in range(n):
            for v in range(n):
                values[(u, v)] = canonical_rep(fn(u, v), _pair_span(u, v))
        return cls(dim=dim, values=values)

    def as_tuples(self) -> dict:
        """values keyed/valued by coordinate tuples, for display."""
        d = self.dim
        return {
            (vec_to_tuple(u, d), vec_to_tuple(v, d)): vec_to_tuple(w, d)
            for (u, v), w in self.values.items()
        }


def trivial_cocycle(dim: int) -> QuasiCocycle:
    return QuasiCocycle.from_function(dim, lambda u, v: 0)


def phi_basis(dim: int) -> QuasiCocycle:
    """The coordinatewise-AND quasi-cocycle; its class generates the
    cohomology group in every dimension >= 3."""
    return QuasiCocycle.from_function(dim, lambda u, v: u & v)


def validate_quasicocycle(
    phi: QuasiCocycle,
    *,
    require_symmetric: bool = True,
    require_involutive: bool = True,
) -> bool:
    """Exhaustive check of the quasi-cocycle identities.

    Always checked: normalization phi(e,u) = phi(u,e) = e mod span(u), and
    the cocycle identity
        phi(u,v) + phi(u+v,w) + phi(u,v+w) + phi(v,w)  in  span(u,v,w)
    for all triples.  Symmetry (phi(u,v) = phi(v,u) mod span(u,v)) and
    involutivity (phi(u,u) = e mod span(u)) are on by default.  The checks
    are independent of coset representatives.  O(8^dim).
    """
    n = 1 << phi.dim
    val = phi.values
    if set(val) != {(u, v) for u in range(n) for v in range(n)}:
        return False
    for (u, v), w in val.items():
        if canonical_rep(w, _pair_span(u, v)) != w:
            return False
    for u in range(n):
        if val[(0, u)] != 0 or val[(u, 0)] != 0:
            return False
        if require_involutive and val[(u, u)] != 0:
            return False
    if require_symmetric:
        for u in range(n):
            for v in range(u + 1, n):
                if val[(u, v)] != val[(v, u)]:
                    return False
    for u in range(n):
        for v in range(n):
            puv = val[(u, v)]
            uv = u ^ v
            for w in range(n):
                acc = puv ^ val[(uv, w)] ^ val[(u, v ^ w)] ^ val[(v, w)]
                if acc == 0:
                    continue
                # membership in span(u, v, w) without building a set
                if acc in (u, v, w, u ^ v, u ^ w, v ^ w, u ^ v ^ w):
                    continue
                return False
    return True


@dataclass(frozen=True)
class ExtractionData:
    """Result of reading a quasi-cocycle off a group table.

    coords maps each element of the Boolean subgroup V to its F2 coordinate
    vector; representatives maps each vector v to the chosen representative
    of the orbit X_v = {x : x^2 = v} (identity for v = 0, smallest index
    otherwise)."""

    group: TwoValuedGroup
    dim: int
    coords: dict
    representatives: dict
    phi: QuasiCocycle


def extract_quasicocycle(X: TwoValuedGroup) -> ExtractionData:
    """Read the multiplication cocycle off a group whose orders lie in
    {1, 2, 4}, with no special pair and no single-valued direct factor.

    V acts on each orbit X_v transitively with stabilizer {e, v}; picking the
    smallest-index representative x_v of each orbit, the product
    x_u * x_v = [c . x_uv, (c+u) . x_uv] defines phi(u, v) = c modulo
    span(u, v).  Raises PreconditionViolated when the structural assumptions
    fail.
    """
    n = len(X)
    for x in range(n):
        if order(X, x) not in (1, 2, 4):
            raise PreconditionViolated(
                f"element {X.names[x]} has order {order(X, x)}"
            )
    special, pairs = is_special(X)
    if special:
        raise PreconditionViolated(f"special pairs present: {pairs[:3]}")
    V = boolean_subgroup(X)
    sq = squares_subgroup(X)
    for v in V.members:
        if v not in sq:
            raise PreconditionViolated(
                f"order-2 element {X.names[v]} is not a square "
                "(single-valued factor present)"
            )
    dim = V.dim
    # greedy basis by element index; coords filled by closing under dot
    coords = {X.identity: 0}
    nbasis = 0
    for m in V.members:
        if m in coords:
            continue
        bit = 1 << (dim - 1 - nbasis)
        nbasis += 1
        for el, vec in list(coords.items()):
            coords[V.dot(m, el)] = vec ^ bit
    if nbasis != dim or len(coords) != len(V.members):
        raise PreconditionViolated("order-2 elements do not span as expected")

    orbits: dict[int, list[int]] = {}
    for x in range(n):
        orbits.setdefault(coords[power(X, x, 2)], []).append(x)
    if len(orbits) != 1 << dim:
        raise PreconditionViolated("some square class is empty")
    reps = {vec: min(orb) for vec, orb in orbits.items()}

    members_by_vec = {vec: el for el, vec in coords.items()}

    def phi_fn(u: int, v: int) -> int:
        x, y = reps[u], reps[v]
        z1 = X.table[x][y].lo
        target = reps[u ^ v]
        for c_el, c_vec in coords.items():
            if v_dot(X, c_el, target) == z1:
                return c_vec
        raise PreconditionViolated(
            f"V does not act transitively on the orbit of {X.names[target]}"
        )

    phi = QuasiCocycle.from_function(dim, phi_fn)
    return ExtractionData(
        group=X, dim=dim, coords=coords, representatives=reps, phi=phi
    )


def _lambda_table(phi: QuasiCocycle) -> dict[frozenset, int]:
    """For dim 3: the indicator lambda(P) over 2-dimensional subspaces P,
    where lambda = 0 iff phi(u, v) lies in span(u, v) for (any) independent
    pair spanning P.  Consistency across the six ordered pairs of each
    subspace is enforced."""
    if phi.dim != 3:
        raise ValueError("lambda table is defined for dim 3")
    lam: dict[frozenset, int] = {}
    for u in range(1, 8):
        for v in range(1, 8):
            if u == v:
                continue
            key = frozenset({u, v, u ^ v})
            bit = 0 if phi.phi(u, v) in _pair_span(u, v) else 1
            if key in lam and lam[key] != bit:
                raise InvalidCocycle(
                    f"lambda inconsistent on subspace {sorted(key)}"
                )
            lam[key] = bit
    if len(lam) != 7:
        raise InvalidCocycle("wrong number of 2-dimensional subspaces")
    return lam


def cohomology_invariant(phi: QuasiCocycle) -> int:
    """The one-bit cohomology class of a symmetric involutive quasi-cocycle.

    dim <= 2: always 0 (everything is cohomologous to the trivial cocycle).
    dim == 3: the parity of lambda summed over the seven 2-dimensional
    subspaces; cohomologous cocycles give equal parity and the basis cocycle
    gives 1.
    dim > 3: restrict to the span of the first three standard coordinates
    (projecting values along the remaining ones) and recurse; restriction is
    a bijection on classes in these dimensions.

    Validation: full identity check for dim <= 4; above that only the dim-3
    restriction is fully validated (the lambda consistency check screens the
    restricted values).  InvalidCocycle on failure.
    """
    if phi.dim <= 4 and not validate_quasicocycle(phi):
        raise InvalidCocycle("quasi-cocycle identities fail")
    if phi.dim <= 2:
        return 0
    cur = phi
    if cur.dim > 3:
        s = cur.dim - 3
        base = cur
        cur = QuasiCocycle.from_function(
            3, lambda u, v: base.phi(u << s, v << s) >> s
        )
        if not validate_quasicocycle(cur):
            raise InvalidCocycle("restriction to dim 3 is not a quasi-cocycle")
    lam = _lambda_table(cur)
    sigma = 0
    for bit in lam.values():
        sigma ^= bit
    return sigma


def perturb(phi: QuasiCocycle, chi: dict) -> QuasiCocycle:
    """The cohomologous cocycle phi'(u,v) = phi(u,v) + chi(u) + chi(v) +
    chi(u+v); chi must send 0 to 0."""
    if chi.get(0, 0) != 0:
        raise ValueError("chi must fix the zero vector")
    return QuasiCocycle.from_function(
        phi.dim, lambda u, v: phi.phi(u, v) ^ chi[u] ^ chi[v] ^ chi[u ^ v]
    )


def change_basis(phi: QuasiCocycle, M) -> QuasiCocycle:
    """Push phi forward along the invertible linear map with basis images M
    (f(e_i) = M[i]): phi'(u, v) = f(phi(f^-1 u, f^-1 v))."""
    dim = phi.dim
    if len(M) != dim or linear_rank(M, dim) != dim:
        raise ValueError("basis images must be linearly independent")
    inv = {apply_linear(M, v): v for v in range(1 << dim)}
    return QuasiCocycle.from_function(
        dim, lambda u, v: apply_linear(M, phi.phi(inv[u], inv[v]))
    )


def restrict_along(phi: QuasiCocycle, u_basis, k_basis) -> QuasiCocycle:
    """Restrict phi to the subspace U spanned by u_basis, projecting values
    along the complement spanned by k_basis; the result is expressed in
    u_basis coordinates.  u_basis + k_basis must be a basis of the whole
    space."""
    dim = phi.dim
    k = len(u_basis)
    if linear_rank(list(u_basis) + list(k_basis), dim) != dim or k + len(
        k_basis
    ) != dim:
        raise ValueError("u_basis and k_basis must jointly form a basis")
    # decompose every vector as U-part (in U coordinates) + complement
    proj: dict[int, int] = {}
    for a in range(1 << k):
        ua = 0
        for i in range(k):
            if (a >> (k - 1 - i)) & 1:
                ua ^= u_basis[i]
        for b in range(1 << (dim - k)):
            w = ua
            for j in range(dim - k):
                if (b >> (dim - k - 1 - j)) & 1:
                    w ^= k_basis[j]
            proj[w] = a
    # embed: U-coords -> ambient vector with zero complement part
    embed = {}
    for a in range(1 << k):
        w = 0
        for i in range(k):
            if (a >> (k - 1 - i)) & 1:
                w ^= u_basis[i]
        embed[a] = w
    return QuasiCocycle.from_function(
        k, lambda a, b: proj[phi.phi(embed[a], embed[b])]
    )
