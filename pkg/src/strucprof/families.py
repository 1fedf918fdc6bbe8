"""Generators for infinite structures and tools around almost-multichains.

Every family here lives on ``F | (L x K)`` with ``L`` a chain: a finite set
``F`` of fixed points followed by chain slots, each slot holding ``|K|``
points.  In a prefix with ``l`` slots the fixed point ``j`` is vertex ``j``
and ``(n, k)`` is vertex ``|F| + n*|K| + k``; a longer prefix restricted to
its first ``l`` slots is literally the shorter one.

Relation values in such a structure depend only on the pattern of a tuple:
which fixed points occur where, and for chain points their ``K`` coordinate
and the rank of their slot among the slots the tuple touches.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Mapping, Sequence

from .errors import (
    MalformedTemplate,
    NotAGraphFamily,
    ParseError,
    RangeError,
    SizeMismatch,
    StrucprofError,
)
from .structures import (
    RelStructure,
    embeds,
    graph,
    is_graph,
    make_structure,
    read_structure,
)

# --- the ten graphs -------------------------------------------------------------

_CROSS: dict[str, Callable[[int, int], bool]] = {
    "eq": lambda n, m: n == m,
    "le": lambda n, m: n <= m,
    "ne": lambda n, m: n != m,
}

# index -> (cross rule on {(n,0),(m,1)}, A clique, B clique)
TEN_GRAPH_RULES: dict[int, tuple[str, bool, bool]] = {
    1: ("eq", False, False),
    2: ("le", False, False),
    3: ("ne", False, False),
    4: ("eq", True, False),
    5: ("le", True, False),
    6: ("le", False, True),
    7: ("ne", True, False),
    8: ("eq", True, True),
    9: ("le", True, True),
    10: ("ne", True, True),
}


def _ten_graph_edge(i: int, a: tuple[int, int], b: tuple[int, int]) -> bool:
    rule, a_clique, b_clique = TEN_GRAPH_RULES[i]
    (n, s), (m, t) = a, b
    if (n, s) == (m, t):
        return False
    if s == t:
        return a_clique if s == 0 else b_clique
    if s == 1:
        n, m = m, n
    return _CROSS[rule](n, m)


def ten_graph(i: int, length: int) -> RelStructure:
    """Prefix of ``G_i`` on slots ``0..length-1``; vertex ``(n, k)`` is ``2n + k``."""
    if i not in TEN_GRAPH_RULES:
        raise RangeError(f"ten-graph index must be 1..10, got {i}")
    if length < 1:
        raise RangeError("prefix length must be at least 1")
    verts = [(n, k) for n in range(length) for k in (0, 1)]
    es = [
        (2 * a[0] + a[1], 2 * b[0] + b[1])
        for a, b in itertools.combinations(verts, 2)
        if _ten_graph_edge(i, a, b)
    ]
    return graph(2 * length, es, [f"({n},{k})" for n, k in verts])


# --- patterns and almost-multichain templates -------------------------------------

Coord = tuple  # ("f", j) for fixed point j, (rank, k) for a chain point
Pattern = tuple


def tuple_pattern(t: Sequence[int], f_size: int, k_size: int) -> Pattern:
    slots = sorted({(v - f_size) // k_size for v in t if v >= f_size})
    rank = {s: r for r, s in enumerate(slots)}
    return tuple(
        ("f", v) if v < f_size else (rank[(v - f_size) // k_size], (v - f_size) % k_size)
        for v in t
    )


def _valid_pattern(p: Pattern, arity: int, f_size: int, k_size: int) -> bool:
    if len(p) != arity:
        return False
    ranks = set()
    for c in p:
        if c[0] == "f":
            if not (len(c) == 2 and 0 <= c[1] < f_size):
                return False
        else:
            r, k = c
            if not (isinstance(r, int) and 0 <= k < k_size and r >= 0):
                return False
            ranks.add(r)
    return ranks == set(range(len(ranks)))


def all_patterns(arity: int, f_size: int, k_size: int) -> list[Pattern]:
    options = [("f", j) for j in range(f_size)]
    options += [(r, k) for r in range(arity) for k in range(k_size)]
    return [
        p for p in itertools.product(options, repeat=arity)
        if _valid_pattern(p, arity, f_size, k_size)
    ]


def format_pattern(p: Pattern) -> str:
    if not p:
        return "-"
    return ",".join(f"f{c[1]}" if c[0] == "f" else f"{c[0]}.{c[1]}" for c in p)


def parse_pattern(text: str) -> Pattern:
    if text == "-":
        return ()
    out = []
    for tok in text.split(","):
        if tok.startswith("f"):
            out.append(("f", int(tok[1:])))
        else:
            r, _, k = tok.partition(".")
            out.append((int(r), int(k)))
    return tuple(out)


@dataclass(frozen=True)
class AMCTemplate:
    """Relation values of an almost-multichainable structure, one per tuple pattern.

    ``default`` fills patterns missing from ``table``; with no default the
    table must list every pattern of every relation.
    """

    signature: tuple[int, ...]
    f_size: int
    k_size: int
    table: Mapping[tuple[int, Pattern], bool]
    default: bool | None = None

    def __post_init__(self):
        if self.f_size < 0 or self.k_size < 0:
            raise MalformedTemplate("negative F or K size")
        if self.k_size == 0:
            raise MalformedTemplate("K must be non-empty")
        for (i, p), val in self.table.items():
            if not 0 <= i < len(self.signature):
                raise MalformedTemplate(f"relation index {i} outside signature")
            if not _valid_pattern(p, self.signature[i], self.f_size, self.k_size):
                raise MalformedTemplate(f"invalid pattern {format_pattern(p)} for relation {i}")
            if not isinstance(val, bool):
                raise MalformedTemplate(f"value for {format_pattern(p)} is not boolean")
        if self.default is None:
            for i, m in enumerate(self.signature):
                for p in all_patterns(m, self.f_size, self.k_size):
                    if (i, p) not in self.table:
                        raise MalformedTemplate(
                            f"relation {i}: no value for pattern {format_pattern(p)}"
                        )

    def value(self, i: int, p: Pattern) -> bool:
        v = self.table.get((i, p))
        return self.default if v is None else v

    @classmethod
    def from_predicate(
        cls,
        signature: Sequence[int],
        f_size: int,
        k_size: int,
        pred: Callable[[int, Pattern], bool],
    ) -> "AMCTemplate":
        signature = tuple(signature)
        table = {
            (i, p): bool(pred(i, p))
            for i, m in enumerate(signature)
            for p in all_patterns(m, f_size, k_size)
        }
        return cls(signature, f_size, k_size, table)


def parse_template(text: str) -> AMCTemplate:
    """Template file: ``signature``, ``fixed``, ``kinds``, optional ``default``, then ``rel <i> <pattern> <0|1>``."""
    signature = None
    f_size = 0
    k_size = None
    default = None
    table: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "signature":
                signature = tuple(int(x) for x in parts[1:])
            elif parts[0] == "fixed":
                f_size = int(parts[1])
            elif parts[0] == "kinds":
                k_size = int(parts[1])
            elif parts[0] == "default":
                default = parts[1] == "1"
            elif parts[0] == "rel" and len(parts) == 4:
                key = (int(parts[1]), parse_pattern(parts[2]))
                val = parts[3] == "1"
                if parts[3] not in ("0", "1"):
                    raise MalformedTemplate(f"line {lineno}: value must be 0 or 1")
                if key in table and table[key] != val:
                    raise MalformedTemplate(f"line {lineno}: conflicting value for {parts[2]}")
                table[key] = val
            else:
                raise MalformedTemplate(f"line {lineno}: cannot parse {line!r}")
        except (ValueError, IndexError) as exc:
            raise MalformedTemplate(f"line {lineno}: {exc}") from None
    if signature is None or k_size is None:
        raise MalformedTemplate("template needs signature and kinds lines")
    return AMCTemplate(signature, f_size, k_size, table, default)


def format_template(T: AMCTemplate) -> str:
    lines = [
        f"signature {' '.join(map(str, T.signature))}",
        f"fixed {T.f_size}",
        f"kinds {T.k_size}",
    ]
    if T.default is not None:
        lines.append(f"default {int(T.default)}")
    for i, m in enumerate(T.signature):
        for p in all_patterns(m, T.f_size, T.k_size):
            if (i, p) in T.table:
                lines.append(f"rel {i} {format_pattern(p)} {int(T.table[(i, p)])}")
    return "\n".join(lines) + "\n"


def amc_build(T: AMCTemplate, length: int) -> RelStructure:
    """Structure on ``F | ([length] x K)`` read off the pattern table."""
    if length < 0:
        raise RangeError("length must be non-negative")
    N = T.f_size + length * T.k_size
    rels = []
    for i, m in enumerate(T.signature):
        rel = set()
        for t in itertools.product(range(N), repeat=m):
            if T.value(i, tuple_pattern(t, T.f_size, T.k_size)):
                rel.add(t)
        rels.append(rel)
    labels = [f"f{j}" for j in range(T.f_size)]
    labels += [f"({n},{k})" for n in range(length) for k in range(T.k_size)]
    return make_structure(T.signature, N, rels, labels)


def almost_multichain(f_size: int, k_size: int, length: int) -> RelStructure:
    """The almost-multichain itself on ``F | ([length] x K)``.

    Relations: the order (fixed points minimal and pairwise incomparable,
    slots totally ordered, each slot an antichain), the slot equivalence,
    one unary predicate per element of ``K`` and one singleton per fixed point.
    """
    N = f_size + length * k_size

    def slot(v):
        return None if v < f_size else (v - f_size) // k_size

    order, same = set(), set()
    for u in range(N):
        for v in range(N):
            su, sv = slot(u), slot(v)
            if u == v or (su is None and sv is not None) or (
                su is not None and sv is not None and su < sv
            ):
                order.add((u, v))
            if u == v or (su is not None and su == sv):
                same.add((u, v))
    unary = [{(v,) for v in range(f_size, N) if (v - f_size) % k_size == k} for k in range(k_size)]
    consts = [{(j,)} for j in range(f_size)]
    sig = (2, 2) + (1,) * (k_size + f_size)
    return make_structure(sig, N, [order, same] + unary + consts)


def ten_graph_template(i: int) -> AMCTemplate:
    def pred(_, p):
        (r1, k1), (r2, k2) = p
        return _ten_graph_edge(i, (r1, k1), (r2, k2))

    return AMCTemplate.from_predicate((2,), 0, 2, pred)


def lex_order_pattern(p: Pattern) -> bool:
    """Reflexive lexicographic order on slot rank then ``K`` index (fixed points first, by index)."""
    a, b = p

    def key(c):
        return (0, c[1], 0) if c[0] == "f" else (1, c[0], c[1])

    return key(a) <= key(b)


def ordered_block_template(s: int) -> AMCTemplate:
    """Ordered structure on ``L x {0..s-1}``: lexicographic order plus "distinct points in the same slot".

    Each slot is an interval of ``s`` points, so an ``n``-subset is described
    by a composition of ``n`` into parts of size at most ``s``; the profile
    is at least ``w_s`` for ``s >= 2``.
    """
    if s < 1:
        raise RangeError("block size must be at least 1")

    def pred(i, p):
        if i == 0:
            return lex_order_pattern(p)
        return p[0] != p[1] and p[0][0] == p[1][0]

    return AMCTemplate.from_predicate((2, 2), 0, s, pred)


def ordered_matching_template() -> AMCTemplate:
    """Slots of two points joined by an edge; the profile is ``w_2`` exactly."""
    return ordered_block_template(2)


# --- invariant triples ------------------------------------------------------------


@dataclass
class InvariantTriple:
    """A chain, a structure and maps from increasing tuples of the chain into the structure."""

    chain: tuple[int, ...]
    structure: RelStructure
    maps: dict[str, tuple[int, dict[tuple[int, ...], int]]]

    def __post_init__(self):
        self.chain = tuple(sorted(self.chain))
        for name, (arity, table) in self.maps.items():
            for args, v in table.items():
                if not 0 <= v < self.structure.n:
                    raise StrucprofError(f"map {name} sends {args} outside the structure")

    @property
    def length(self) -> int:
        return len(self.chain)

    @classmethod
    def from_functions(
        cls,
        length: int,
        R: RelStructure,
        funcs: Mapping[str, tuple[int, Callable[..., int]]],
    ) -> "InvariantTriple":
        maps = {
            name: (a, {args: f(*args) for args in itertools.combinations(range(length), a)})
            for name, (a, f) in funcs.items()
        }
        return cls(tuple(range(length)), R, maps)

    def restrict(self, X: Iterable[int]) -> "InvariantTriple":
        X = tuple(sorted(X))
        keep = set(X)
        maps = {
            name: (a, {args: v for args, v in table.items() if keep.issuperset(args)})
            for name, (a, table) in self.maps.items()
        }
        return InvariantTriple(X, self.structure, maps)


def _order_type(xs: Sequence[int]) -> tuple[int, ...]:
    rank = {v: r for r, v in enumerate(sorted(set(xs)))}
    return tuple(rank[x] for x in xs)


def is_invariant(L: InvariantTriple) -> bool:
    """Relation values and coincidences among map images depend only on the order type of the arguments."""
    points = []
    allowed = set(L.chain)
    for name, (a, table) in sorted(L.maps.items()):
        for args in itertools.combinations(L.chain, a):
            if args in table:
                points.append((name, args, table[args]))
            elif allowed.issuperset(args):
                raise StrucprofError(f"map {name} undefined at {args}")
    R = L.structure
    for i, (m, rel) in enumerate(zip(R.signature, R.relations)):
        seen: dict = {}
        for combo in itertools.product(points, repeat=m):
            key = (
                tuple(c[0] for c in combo),
                tuple(len(c[1]) for c in combo),
                _order_type([x for c in combo for x in c[1]]),
            )
            val = tuple(c[2] for c in combo) in rel
            if seen.setdefault(key, val) != val:
                return False
    seen = {}
    for p, q in itertools.product(points, repeat=2):
        key = (p[0], q[0], _order_type(p[1] + q[1]))
        val = p[2] == q[2]
        if seen.setdefault(key, val) != val:
            return False
    return True


def extract_invariant_subset(L: InvariantTriple, target: int) -> tuple[int, ...] | None:
    """Lexicographically least ``target``-subset of the chain on which ``L`` is invariant, or None."""
    if target < 0 or target > L.length:
        raise RangeError(f"target {target} outside 0..{L.length}")
    for X in itertools.combinations(L.chain, target):
        if is_invariant(L.restrict(X)):
            return X
    return None


def amc_triple(T: AMCTemplate, length: int) -> InvariantTriple:
    """``amc_build(T, length)`` with its defining maps: one unary map per ``K`` element, one constant per fixed point."""
    R = amc_build(T, length)
    funcs: dict = {}
    for k in range(T.k_size):
        funcs[f"k{k}"] = (1, lambda a, k=k: T.f_size + a * T.k_size + k)
    for j in range(T.f_size):
        funcs[f"f{j}"] = (0, lambda j=j: j)
    return InvariantTriple.from_functions(length, R, funcs)


# --- lexicographic sums -------------------------------------------------------------


def lex_sum(H: RelStructure, parts: Sequence[tuple[int, str]]) -> RelStructure:
    """Replace vertex ``i`` of ``H`` by a clique or independent set of ``parts[i][0]`` vertices."""
    if not is_graph(H):
        raise NotAGraphFamily("index structure of a lexicographic sum must be a graph")
    if len(parts) != H.n:
        raise SizeMismatch(f"{len(parts)} parts for {H.n} index vertices")
    owner = []
    for i, (size, kind) in enumerate(parts):
        if kind not in ("clique", "independent"):
            raise StrucprofError(f"part kind must be clique or independent, got {kind!r}")
        owner += [i] * size
    hrel = H.relations[0]
    es = []
    for u, v in itertools.combinations(range(len(owner)), 2):
        a, b = owner[u], owner[v]
        if (a == b and parts[a][1] == "clique") or (a != b and (a, b) in hrel):
            es.append((u, v))
    return graph(len(owner), es)


# --- family generators ---------------------------------------------------------------


@dataclass(frozen=True)
class FamilyGenerator:
    """Descriptor producing arbitrarily long prefixes of an infinite structure."""

    kind: str
    name: str
    f_size: int
    k_size: int
    builder: Callable[[int], RelStructure] = field(compare=False, repr=False)
    _memo: dict = field(default_factory=dict, compare=False, repr=False)

    def prefix(self, length: int) -> RelStructure:
        if length < 0:
            raise RangeError("prefix length must be non-negative")
        R = self._memo.get(length)
        if R is None:
            R = self.builder(length)
            self._memo[length] = R
        return R

    def vertex(self, slot: int, k: int) -> int:
        return self.f_size + slot * self.k_size + k

    def prefix_size(self, length: int) -> int:
        return self.f_size + length * self.k_size


def ten_graph_family(i: int) -> FamilyGenerator:
    if i not in TEN_GRAPH_RULES:
        raise RangeError(f"ten-graph index must be 1..10, got {i}")
    return FamilyGenerator("TenGraph", f"G{i}", 0, 2, lambda l: ten_graph(i, max(l, 1)) if l else graph(0, []))


def halfgraph_family() -> FamilyGenerator:
    return FamilyGenerator("HalfGraph", "halfgraph", 0, 2, lambda l: ten_graph(2, l) if l else graph(0, []))


def amc_family(T: AMCTemplate, name: str = "amc") -> FamilyGenerator:
    return FamilyGenerator("AMCTemplate", name, T.f_size, T.k_size, lambda l: amc_build(T, l))


def direct_sum_family(H: RelStructure, name: str = "directsum") -> FamilyGenerator:
    """Disjoint copies of ``H``, one per slot."""
    if H.n == 0:
        raise StrucprofError("direct sum of empty structures")
    k = H.n

    def build(length):
        rels = [
            {tuple(s * k + x for x in t) for s in range(length) for t in rel}
            for rel in H.relations
        ]
        return make_structure(H.signature, length * k, rels)

    return FamilyGenerator("DirectSum", name, 0, k, build)


def lex_sum_family(H: RelStructure, parts: Sequence[tuple[int | None, str]], name: str = "lexsum") -> FamilyGenerator:
    """Lexicographic sum over ``H``; a part of size ``None`` grows by one vertex per slot.

    Fixed parts come first (in index order), then the slots of growing parts.
    """
    if not is_graph(H):
        raise NotAGraphFamily("index structure of a lexicographic sum must be a graph")
    if len(parts) != H.n:
        raise SizeMismatch(f"{len(parts)} parts for {H.n} index vertices")
    fixed = [i for i, (s, _) in enumerate(parts) if s is not None]
    growing = [i for i, (s, _) in enumerate(parts) if s is None]
    f_size = sum(parts[i][0] for i in fixed)
    k_size = len(growing)

    def build(length):
        if k_size == 0:
            length = 0
        owner = [i for i in fixed for _ in range(parts[i][0])]
        owner += [growing[k] for _ in range(length) for k in range(k_size)]
        hrel = H.relations[0]
        es = [
            (u, v)
            for u, v in itertools.combinations(range(len(owner)), 2)
            if (owner[u] == owner[v] and parts[owner[u]][1] == "clique")
            or (owner[u] != owner[v] and (owner[u], owner[v]) in hrel)
        ]
        return graph(len(owner), es)

    return FamilyGenerator("LexSumOfCliques", name, f_size, k_size, build)


def _parse_parts(parts: str) -> list[tuple[int | None, str]]:
    out = []
    for tok in parts.split(","):
        tok = tok.strip()
        if not tok or tok[-1] not in "ci":
            raise ParseError(f"part {tok!r}: expected <size|*><c|i>")
        size = None if tok[:-1] == "*" else int(tok[:-1])
        out.append((size, "clique" if tok[-1] == "c" else "independent"))
    return out


def parse_family(desc: str, base: str | Path | None = None) -> FamilyGenerator:
    """``G1``..``G10``, ``halfgraph``, ``lexsum:<H-file>:<parts>``, ``amc:<template-file>``, ``directsum:<H-file>``.

    ``<parts>`` is comma-separated ``<size><c|i>`` with ``*`` for a growing
    part, e.g. ``*c,2i``.
    """
    def path(p):
        p = Path(p)
        return p if base is None or p.is_absolute() else Path(base) / p

    d = desc.strip()
    if d[:1] in "Gg" and d[1:].isdigit():
        return ten_graph_family(int(d[1:]))
    if d == "halfgraph":
        return halfgraph_family()
    kind, _, rest = d.partition(":")
    if kind == "amc" and rest:
        T = parse_template(path(rest).read_text(encoding="utf-8"))
        return amc_family(T, d)
    if kind == "lexsum" and rest:
        hfile, sep, parts = rest.rpartition(":")
        if not sep:
            raise ParseError("lexsum descriptor needs lexsum:<H-file>:<parts>")
        return lex_sum_family(read_structure(path(hfile)), _parse_parts(parts), d)
    if kind == "directsum" and rest:
        return direct_sum_family(read_structure(path(rest)), d)
    raise ParseError(f"unknown family descriptor {desc!r}")


# --- obstructions -------------------------------------------------------------------


def obstruction_search(F: FamilyGenerator, length: int, t: int) -> list[int]:
    """Indices ``i`` whose ``t``-slot prefix of ``G_i`` embeds in the ``length``-slot prefix of ``F``."""
    if t < 1 or t > length:
        raise RangeError(f"need 1 <= t <= prefix length, got t={t}, length={length}")
    host = F.prefix(length)
    if not is_graph(host):
        raise NotAGraphFamily(f"{F.name} is not a graph family")
    return [i for i in range(1, 11) if embeds(ten_graph(i, t), host) is not None]
