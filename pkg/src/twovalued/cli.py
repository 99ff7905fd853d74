"""File format, brute-force enumeration, and the command-line interface.

GroupFile is a small JSON document:

    {
      "format_version": 1,
      "elements": ["e", "a", "b"],
      "identity": "e",
      "table": [[["e","e"], ...], ...]
    }

The identity must be listed first; cells are 2-element arrays of element
names.  write_group emits a canonical form (cells ordered by element index,
2-space indent, trailing newline) so read/write round trips are
byte-stable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .classify import canonical_key, classify
from .constructions import principal, product_with_boolean, special_series, unipotent
from .core import Pair, TwoValuedGroup, verify_axioms
from .formal import LawParams, random_sample_suite

__all__ = [
    "ParseError",
    "NonSquareTable",
    "BudgetExceeded",
    "read_group",
    "write_group",
    "group_to_json",
    "group_from_json",
    "enumerate_all",
    "cli_main",
]

FORMAT_VERSION = 1
DEFAULT_K6_BUDGET = 50_000_000
BUDGET_ENV_VAR = "TWOVALUED_ENUM_BUDGET"


class ParseError(Exception):
    pass


class NonSquareTable(ParseError):
    pass


class BudgetExceeded(Exception):
    pass


def group_to_json(X: TwoValuedGroup) -> str:
    """Canonical GroupFile text for a group."""
    doc = {
        "format_version": FORMAT_VERSION,
        "elements": list(X.names),
        "identity": X.names[X.identity],
        "table": [
            [[X.names[p.lo], X.names[p.hi]] for p in row] for row in X.table
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def group_from_json(text: str) -> TwoValuedGroup:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be a JSON object")
    if doc.get("format_version") != FORMAT_VERSION:
        raise ParseError(
            f"unsupported format_version {doc.get('format_version')!r}"
        )
    elements = doc.get("elements")
    if (
        not isinstance(elements, list)
        or not elements
        or not all(isinstance(s, str) for s in elements)
    ):
        raise ParseError("'elements' must be a non-empty list of strings")
    if len(set(elements)) != len(elements):
        raise ParseError("element names must be unique")
    if doc.get("identity") != elements[0]:
        raise ParseError("'identity' must be the first listed element")
    table = doc.get("table")
    n = len(elements)
    if not isinstance(table, list) or len(table) != n:
        raise NonSquareTable(f"table must have {n} rows")
    idx = {s: i for i, s in enumerate(elements)}
    rows = []
    for i, row in enumerate(table):
        if not isinstance(row, list) or len(row) != n:
            raise NonSquareTable(f"row {i} must have {n} cells")
        cells = []
        for j, cell in enumerate(row):
            if (
                not isinstance(cell, list)
                or len(cell) != 2
                or any(c not in idx for c in cell)
            ):
                raise ParseError(
                    f"cell ({i},{j}) must be a 2-element list of element names"
                )
            cells.append(Pair.of(idx[cell[0]], idx[cell[1]]))
        rows.append(tuple(cells))
    return TwoValuedGroup(names=tuple(elements), table=tuple(rows))


def read_group(path: str) -> TwoValuedGroup:
    """Read a GroupFile; '-' reads stdin."""
    if path == "-":
        return group_from_json(sys.stdin.read())
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return group_from_json(fh.read())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None


def write_group(X: TwoValuedGroup, path: str):
    """Write canonical GroupFile text; '-' writes stdout."""
    text = group_to_json(X)
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


# --- enumeration ------------------------------------------------------------

def enumerate_all(
    k: int,
    involutive_commutative: bool = True,
    budget: int | None = None,
) -> list[TwoValuedGroup]:
    """All two-valued groups of size k up to isomorphism.

    Depth-first fill of the multiplication table's upper triangle in
    row-major order, with partial associativity pruning after each cell;
    complete tables pass the full axiom sweep, and isomorphs are removed via
    a canonical form.  In involutive-commutative mode the cell domains bake
    in symmetry, the identity-in-diagonal condition, and inverse uniqueness.

    Sizes: k <= 5 runs unbudgeted; k = 6 (involutive mode) needs a node
    budget (default 50M, override via TWOVALUED_ENUM_BUDGET or the budget
    argument).  General mode is capped at k <= 4.  BudgetExceeded when the
    node count runs out.
    """
    if k < 1:
        raise ValueError("size must be >= 1")
    maxk = 6 if involutive_commutative else 4
    if k > maxk:
        raise ValueError(
            f"enumeration supported up to size {maxk} in this mode"
        )
    if budget is None:
        env = os.environ.get(BUDGET_ENV_VAR)
        if env is not None:
            budget = int(env)
        elif k == 6:
            budget = DEFAULT_K6_BUDGET
    names = tuple(["e"] + [f"x{i}" for i in range(1, k)])
    if k == 1:
        return [TwoValuedGroup(names=names, table=((Pair(0, 0),),))]

    n = k
    T: list[list[Pair | None]] = [[None] * n for _ in range(n)]
    # parallel table of multiset codes: a pair [a, b] contributes one count
    # in byte a and one in byte b, so a 4-element multiset is the sum of two
    # codes and multiset equality is integer equality
    C: list[list[int | None]] = [[None] * n for _ in range(n)]

    def code(p: Pair) -> int:
        return (1 << (8 * p.lo)) + (1 << (8 * p.hi))

    for x in range(n):
        T[0][x] = T[x][0] = Pair(x, x)
        C[0][x] = C[x][0] = code(Pair(x, x))

    if involutive_commutative:
        cells = [(i, j) for i in range(1, n) for j in range(i, n)]
    else:
        cells = [(i, j) for i in range(1, n) for j in range(1, n)]
    diag_domain = [Pair.of(0, w) for w in range(n)]
    offd_domain = [Pair.of(a, b) for a in range(1, n) for b in range(a, n)]
    full_domain = [Pair.of(a, b) for a in range(n) for b in range(a, n)]

    def domain(i: int, j: int) -> list[Pair]:
        if not involutive_commutative:
            return full_domain
        return diag_domain if i == j else offd_domain

    # identity-free triples; for a symmetric table (x,y,z) and (z,y,x) give
    # the same multiset equation, so keep x <= z in that mode
    if involutive_commutative:
        triples = [
            (x, y, z)
            for x in range(1, n)
            for y in range(1, n)
            for z in range(x, n)
        ]
    else:
        triples = [
            (x, y, z)
            for x in range(1, n)
            for y in range(1, n)
            for z in range(1, n)
        ]
    per_cell: dict[tuple[int, int], list[tuple[int, int, int]]] = {}
    for (i, j) in cells:
        seen = set()
        mine = []
        for tr in triples:
            if i in tr or j in tr:
                if tr not in seen:
                    seen.add(tr)
                    mine.append(tr)
        per_cell[(i, j)] = mine

    # guard bits for the per-byte >= test: counts stay below 0x80, so after
    # (big | H) - small each byte keeps its guard bit iff big_byte >= small_byte
    H = sum(0x80 << (8 * b) for b in range(n))

    def partial_ok(i: int, j: int) -> bool:
        for (x, y, z) in per_cell[(i, j)]:
            pxy = T[x][y]
            pyz = T[y][z]
            if pxy is None or pyz is None:
                continue
            l1, l2 = C[pxy.lo][z], C[pxy.hi][z]
            r1, r2 = C[x][pyz.lo], C[x][pyz.hi]
            if l1 is not None and l2 is not None:
                if r1 is not None and r2 is not None:
                    if l1 + l2 != r1 + r2:
                        return False
                else:
                    half = r1 if r1 is not None else r2
                    if half is not None:
                        if (((l1 + l2) | H) - half) & H != H:
                            return False
            elif r1 is not None and r2 is not None:
                half = l1 if l1 is not None else l2
                if half is not None:
                    if (((r1 + r2) | H) - half) & H != H:
                        return False
        if not involutive_commutative:
            # inverse uniqueness: no element may have two inverse candidates
            for x in range(1, n):
                cnt = 0
                for y in range(n):
                    pa, pb = T[x][y], T[y][x]
                    if (pa is not None and 0 in pa) or (pb is not None and 0 in pb):
                        cnt += 1
                if cnt > 1:
                    return False
        return True

    found: list[TwoValuedGroup] = []
    nodes = 0

    def place(ci: int):
        nonlocal nodes
        if ci == len(cells):
            tab = tuple(tuple(row) for row in T)
            X = TwoValuedGroup(names=names, table=tab)
            rep = verify_axioms(X)
            if rep.is_two_valued_group and (
                not involutive_commutative
                or (rep.is_commutative and rep.is_involutive)
            ):
                found.append(X)
            return
        i, j = cells[ci]
        for p in domain(i, j):
            nodes += 1
            if budget is not None and nodes > budget:
                raise BudgetExceeded(f"node budget {budget} exhausted")
            cp = code(p)
            T[i][j] = p
            C[i][j] = cp
            if involutive_commutative:
                T[j][i] = p
                C[j][i] = cp
            if partial_ok(i, j):
                place(ci + 1)
            T[i][j] = None
            C[i][j] = None
            if involutive_commutative and i != j:
                T[j][i] = None
                C[j][i] = None

    place(0)

    seen_keys = {}
    for X in found:
        key = canonical_key(X)
        if key not in seen_keys:
            seen_keys[key] = X
    return [seen_keys[key] for key in sorted(seen_keys)]


# --- command line -----------------------------------------------------------

def _cmd_construct(args) -> int:
    if args.principal is not None:
        text = args.principal.strip()
        chain = tuple(int(s) for s in text.split(",")) if text else ()
        X = principal(*chain)
    elif args.unipotent is not None:
        X = unipotent(args.unipotent)
    else:
        X = special_series(args.special)
    if args.times_c2:
        X = product_with_boolean(X, args.times_c2)
    write_group(X, args.output)
    return 0


def _cmd_verify(args) -> int:
    X = read_group(args.group)
    rep = verify_axioms(X)
    print(f"elements: {len(X)}")
    print(f"two_valued_group: {str(rep.is_two_valued_group).lower()}")
    print(f"commutative: {str(rep.is_commutative).lower()}")
    print(f"involutive: {str(rep.is_involutive).lower()}")
    for tag, witness in rep.violations[: args.max_violations]:
        shown = ",".join(X.names[w] for w in witness)
        print(f"violation: {tag} at ({shown})")
    extra = len(rep.violations) - args.max_violations
    if extra > 0:
        print(f"... and {extra} more violations")
    return 0 if rep.is_two_valued_group else 1


def _require_valid(X: TwoValuedGroup, label: str) -> bool:
    rep = verify_axioms(X)
    if not (rep.is_two_valued_group and rep.is_commutative and rep.is_involutive):
        print(
            f"{label} is not a valid involutive commutative two-valued group",
            file=sys.stderr,
        )
        return False
    return True


def _cmd_classify(args) -> int:
    X = read_group(args.group)
    if not _require_valid(X, args.group):
        return 1
    print(str(classify(X)))
    return 0


def _cmd_iso(args) -> int:
    from .classify import Timeout, witness_isomorphism

    X = read_group(args.left)
    Z = read_group(args.right)
    if not _require_valid(X, args.left) or not _require_valid(Z, args.right):
        return 1
    same = classify(X) == classify(Z)
    print("isomorphic" if same else "not isomorphic")
    if same and args.witness:
        try:
            f = witness_isomorphism(X, Z, node_budget=args.budget)
        except Timeout:
            print("witness search hit the node budget", file=sys.stderr)
            f = None
        if f is not None:
            for x, z in enumerate(f):
                print(f"{X.names[x]} -> {Z.names[z]}")
    return 0 if same else 1


def _cmd_enumerate(args) -> int:
    try:
        groups = enumerate_all(
            args.size,
            involutive_commutative=not args.all,
            budget=args.budget,
        )
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 1
    if args.json:
        docs = [json.loads(group_to_json(X)) for X in groups]
        print(json.dumps(docs, indent=2))
        return 0
    mode = "two-valued groups" if args.all else "involutive commutative two-valued groups"
    print(f"found {len(groups)} {mode} of size {args.size}")
    for i, X in enumerate(groups):
        if args.all:
            desc = json.dumps(
                [[[X.names[p.lo], X.names[p.hi]] for p in row] for row in X.table],
                separators=(",", ":"),
            )
        else:
            desc = str(classify(X))
        print(f"{i + 1}: {desc}")
    return 0


def _parse_params(text: str) -> LawParams:
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError("expected three comma-separated values")
    vals = [complex(s.strip().replace("i", "j")) for s in parts]
    return LawParams(*vals)


def _cmd_elliptic(args) -> int:
    params = None
    if args.params is not None:
        try:
            params = _parse_params(args.params)
        except ValueError as exc:
            print(f"bad --params: {exc}", file=sys.stderr)
            return 2
    passed, total, redrawn = random_sample_suite(
        n_samples=args.samples, tol=args.tol, seed=args.seed, params=params
    )
    print(
        f"associativity: {passed}/{total} samples passed "
        f"(tol={args.tol:g}, redrawn {redrawn} near-degenerate)"
    )
    return 0 if passed == total else 1


def cli_main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="twovalued",
        description="Finite involutive commutative two-valued groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a standard-series group")
    kind = p.add_mutually_exclusive_group(required=True)
    kind.add_argument("--principal", metavar="D1,D2,..",
                      help="invariant-factor chain, comma separated (empty = trivial group)")
    kind.add_argument("--unipotent", type=int, metavar="N", help="unipotent rank")
    kind.add_argument("--special", type=int, metavar="N", help="special rank")
    p.add_argument("-m", "--times-c2", type=int, default=0, metavar="M",
                   help="multiply by the Boolean group of rank M")
    p.add_argument("-o", "--output", default="-", help="output path ('-' = stdout)")
    p.set_defaults(fn=_cmd_construct)

    p = sub.add_parser("verify", help="run the axiom sweep on a GroupFile")
    p.add_argument("group", help="GroupFile path ('-' = stdin)")
    p.add_argument("--max-violations", type=int, default=20)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("classify", help="print the isomorphism-class label")
    p.add_argument("group", help="GroupFile path ('-' = stdin)")
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("iso", help="decide isomorphism of two GroupFiles")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--witness", action="store_true",
                   help="also print an explicit isomorphism")
    p.add_argument("--budget", type=int, default=10_000_000,
                   help="node budget for the witness search")
    p.set_defaults(fn=_cmd_iso)

    p = sub.add_parser("enumerate", help="list all groups of a given size")
    p.add_argument("size", type=int)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--all", action="store_true",
                      help="drop the involutivity/commutativity restriction")
    mode.add_argument("--involutive-commutative", action="store_true",
                      help="restrict to involutive commutative groups (the default)")
    p.add_argument("--budget", type=int, default=None,
                   help="search node budget (required scale for size 6)")
    p.add_argument("--json", action="store_true",
                   help="also print each group as a GroupFile")
    p.set_defaults(fn=_cmd_enumerate)

    p = sub.add_parser("elliptic", help="check the algebraic addition law numerically")
    p.add_argument("--params", default=None, metavar="A1,A2,A3",
                   help="law parameters as three complex numbers (default: random per sample)")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--seed", type=int, default=20240801)
    p.set_defaults(fn=_cmd_elliptic)

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2 if isinstance(exc, ValueError) else 1


if __name__ == "__main__":
    sys.exit(cli_main())
