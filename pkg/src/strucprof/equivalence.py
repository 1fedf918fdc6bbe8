"""Vertex equivalences, monomorphic decompositions and hypomorphy.

``x`` and ``y`` are A-equivalent when the restrictions to ``{x} | A`` and
``{y} | A`` are isomorphic.  Quantifying over all k-subsets A gives the
k-equivalence; over all sizes, full equivalence, whose classes are the
monomorphic components.  Isomorphism tests go through canonical keys of
restrictions memoised on the structure, so repeated tests are lookups.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    DomainMismatch,
    NotAGraph,
    OverlapError,
    SignatureMismatch,
    StrucprofError,
    VertexOutOfRange,
)
from .structures import RelStructure, is_graph, order_sequence, subset_key


@dataclass(frozen=True)
class Partition:
    """Partition of ``0..n-1``; blocks are sorted tuples, ordered by their minimum."""

    n: int
    blocks: tuple[tuple[int, ...], ...]
    kind: str = "user"

    def __post_init__(self):
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[:1]))
        seen: set[int] = set()
        for b in blocks:
            if not b:
                raise StrucprofError("empty block")
            for v in b:
                if not 0 <= v < self.n:
                    raise VertexOutOfRange(f"vertex {v} outside 0..{self.n - 1}")
                if v in seen:
                    raise StrucprofError(f"vertex {v} in two blocks")
                seen.add(v)
        if len(seen) != self.n:
            raise StrucprofError("blocks do not cover the domain")
        if self.kind not in ("components", "interval", "user"):
            raise StrucprofError(f"unknown partition kind {self.kind!r}")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_labels(cls, labels: Sequence[int], kind: str = "user") -> "Partition":
        groups: dict[int, list[int]] = {}
        for v, c in enumerate(labels):
            groups.setdefault(c, []).append(v)
        return cls(len(labels), tuple(tuple(g) for g in groups.values()), kind)

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls(n, tuple((v,) for v in range(n)))

    def block_of(self, v: int) -> int:
        for i, b in enumerate(self.blocks):
            if v in b:
                return i
        raise VertexOutOfRange(f"vertex {v} not in partition")

    def refines(self, other: "Partition") -> bool:
        """Every block of ``self`` lies inside a block of ``other``."""
        return all(len({other.block_of(v) for v in b}) == 1 for b in self.blocks)

    def same_blocks(self, other: "Partition") -> bool:
        return self.n == other.n and self.blocks == other.blocks

    def to_text(self) -> str:
        return "".join(",".join(map(str, b)) + "\n" for b in self.blocks)


def parse_partition(text: str, n: int, kind: str = "user") -> Partition:
    blocks = []
    for line in text.splitlines():
        line = line.strip()
        if line:
            blocks.append(tuple(int(x) for x in line.split(",")))
    return Partition(n, tuple(blocks), kind)


@dataclass(frozen=True)
class EquivalenceWitness:
    x: int
    y: int
    A: tuple[int, ...]
    verdict: bool


def _check_pair(R: RelStructure, x: int, y: int) -> None:
    for v in (x, y):
        if not 0 <= v < R.n:
            raise VertexOutOfRange(f"vertex {v} outside 0..{R.n - 1}")
    if x == y:
        raise OverlapError("x and y must be distinct")


def _a_equiv(R: RelStructure, x: int, y: int, A: tuple[int, ...]) -> bool:
    return subset_key(R, sorted(A + (x,))) == subset_key(R, sorted(A + (y,)))


def a_equivalent(R: RelStructure, x: int, y: int, A: Iterable[int]) -> bool:
    _check_pair(R, x, y)
    A = tuple(sorted(set(A)))
    if x in A or y in A:
        raise OverlapError("A must avoid x and y")
    for v in A:
        if not 0 <= v < R.n:
            raise VertexOutOfRange(f"vertex {v} outside 0..{R.n - 1}")
    return _a_equiv(R, x, y, A)


def _witness_of_size(R: RelStructure, x: int, y: int, k: int) -> tuple[int, ...] | None:
    others = [v for v in range(R.n) if v != x and v != y]
    for A in itertools.combinations(others, k):
        if not _a_equiv(R, x, y, A):
            return A
    return None


def k_equivalent(R: RelStructure, x: int, y: int, k: int) -> bool:
    """A-equivalence for every k-element A avoiding x, y (vacuously true when none exist)."""
    _check_pair(R, x, y)
    if k < 0:
        raise StrucprofError("k must be non-negative")
    return _witness_of_size(R, x, y, k) is None


def le_k_equivalent(R: RelStructure, x: int, y: int, k: int) -> bool:
    _check_pair(R, x, y)
    return all(_witness_of_size(R, x, y, j) is None for j in range(k + 1))


def equivalence_witness(R: RelStructure, x: int, y: int, max_k: int | None = None) -> EquivalenceWitness:
    """Smallest distinguishing set A (by size, then lexicographically), if any."""
    _check_pair(R, x, y)
    top = R.n - 2 if max_k is None else min(max_k, R.n - 2)
    for k in range(top + 1):
        A = _witness_of_size(R, x, y, k)
        if A is not None:
            return EquivalenceWitness(x, y, A, False)
    return EquivalenceWitness(x, y, (), True)


def fully_equivalent(R: RelStructure, x: int, y: int) -> bool:
    return equivalence_witness(R, x, y).verdict


def _classes(R: RelStructure, test) -> list[list[int]]:
    # one representative per class suffices because the relation is transitive
    classes: list[list[int]] = []
    for v in range(R.n):
        for c in classes:
            if test(c[0], v):
                c.append(v)
                break
        else:
            classes.append([v])
    return classes


def k_partition(R: RelStructure, k: int) -> Partition:
    return Partition(R.n, tuple(map(tuple, _classes(R, lambda x, y: k_equivalent(R, x, y, k)))))


def le_k_partition(R: RelStructure, k: int) -> Partition:
    return Partition(R.n, tuple(map(tuple, _classes(R, lambda x, y: le_k_equivalent(R, x, y, k)))))


def components(R: RelStructure) -> Partition:
    """Monomorphic components: the classes of full equivalence."""
    return Partition(
        R.n,
        tuple(map(tuple, _classes(R, lambda x, y: fully_equivalent(R, x, y)))),
        "components",
    )


def is_monomorphic_part(R: RelStructure, B: Iterable[int], size_cap: int | None = None) -> bool:
    """Sets of equal size agreeing outside ``B`` induce isomorphic structures (sizes up to ``size_cap``)."""
    B = set(B)
    for v in B:
        if not 0 <= v < R.n:
            raise VertexOutOfRange(f"vertex {v} outside 0..{R.n - 1}")
    cap = R.n if size_cap is None else min(size_cap, R.n)
    inside = sorted(B)
    outside = [v for v in range(R.n) if v not in B]
    for size in range(cap + 1):
        for j in range(max(0, size - len(outside)), min(size, len(inside)) + 1):
            if j < 1 or j == len(inside):
                continue  # a single choice of A & B: nothing to compare
            for rest in itertools.combinations(outside, size - j):
                ref = None
                for part in itertools.combinations(inside, j):
                    key = subset_key(R, sorted(rest + part))
                    if ref is None:
                        ref = key
                    elif key != ref:
                        return False
    return True


def is_monomorphic_decomposition(R: RelStructure, P: Partition, size_cap: int | None = None) -> bool:
    if P.n != R.n:
        raise DomainMismatch("partition and structure have different domains")
    return all(is_monomorphic_part(R, b, size_cap) for b in P.blocks if len(b) > 1)


def interval_decomposition(R: RelStructure) -> Partition:
    """Monomorphic components cut into maximal runs of consecutive vertices along relation 0."""
    seq = order_sequence(R)
    comp = components(R)
    cls = {v: i for i, b in enumerate(comp.blocks) for v in b}
    blocks: list[list[int]] = []
    prev = None
    for v in seq:
        if prev is not None and cls[v] == cls[prev]:
            blocks[-1].append(v)
        else:
            blocks.append([v])
        prev = v
    return Partition(R.n, tuple(map(tuple, blocks)), "interval")


def is_interval_partition(R: RelStructure, P: Partition) -> bool:
    pos = {v: i for i, v in enumerate(order_sequence(R))}
    for b in P.blocks:
        ps = sorted(pos[v] for v in b)
        if ps[-1] - ps[0] != len(ps) - 1:
            return False
    return True


def k_hypomorphic(R: RelStructure, S: RelStructure, k: int) -> bool:
    if R.signature != S.signature:
        raise SignatureMismatch(f"{R.signature} vs {S.signature}")
    if R.n != S.n:
        raise DomainMismatch(f"domain sizes {R.n} and {S.n}")
    return all(
        subset_key(R, A) == subset_key(S, A) for A in itertools.combinations(range(R.n), k)
    )


def identify(R: RelStructure, x: int, y: int) -> tuple[RelStructure, RelStructure]:
    """The pair ``(R(x), R(y))``: the rest keeps its order and the merged point is last."""
    _check_pair(R, x, y)
    rest = [v for v in range(R.n) if v != x and v != y]
    z = len(rest)

    def glue(keep: int, drop: int) -> RelStructure:
        idx = {v: i for i, v in enumerate(rest)}
        idx[keep] = z
        rels = tuple(
            frozenset(tuple(idx[a] for a in t) for t in rel if drop not in t)
            for rel in R.relations
        )
        return RelStructure(R.signature, z + 1, rels)

    return glue(x, y), glue(y, x)


def p_monomorphic(R: RelStructure, p: int) -> bool:
    if not 0 <= p <= R.n:
        raise StrucprofError(f"p={p} outside 0..{R.n}")
    keys = set()
    for A in itertools.combinations(range(R.n), p):
        keys.add(subset_key(R, A))
        if len(keys) > 1:
            return False
    return True


def _extends(R: RelStructure, f: dict[int, int], a: int) -> bool:
    dom = list(f)
    for m, rel in zip(R.signature, R.relations):
        if m == 0:
            continue
        for t in itertools.product(dom, repeat=m):
            if a in t and ((t in rel) != (tuple(f[u] for u in t) in rel)):
                return False
    return True


def freely_interpreted_by(R: RelStructure, S: RelStructure, size_cap: int | None = None) -> bool:
    """Every local isomorphism of ``S`` on at most ``size_cap`` points is one of ``R``."""
    if R.n != S.n:
        raise DomainMismatch(f"domain sizes {R.n} and {S.n}")
    cap = min(R.n, 6) if size_cap is None else min(size_cap, R.n)
    n = R.n
    f: dict[int, int] = {}
    used: set[int] = set()

    # partial maps are grown along increasing domain points, so each local
    # isomorphism of S is reached through its restrictions, which are local
    # isomorphisms of S as well
    def grow(start: int) -> bool:
        if len(f) == cap:
            return True
        for a in range(start, n):
            for b in range(n):
                if b in used:
                    continue
                f[a] = b
                if _extends(S, f, a):
                    if not _extends(R, f, a):
                        del f[a]
                        return False
                    used.add(b)
                    ok = grow(a + 1)
                    used.discard(b)
                    if not ok:
                        del f[a]
                        return False
                del f[a]
        return True

    return grow(0)


def is_autonomous(G: RelStructure, S: Iterable[int]) -> bool:
    S = set(S)
    rel = G.relations[0]
    for z in range(G.n):
        if z in S:
            continue
        if len({(x, z) in rel for x in S}) > 1:
            return False
    return True


def autonomous_partition(G: RelStructure) -> Partition:
    """Maximal autonomous sets that are cliques or independent sets, straight from adjacency.

    A set is such a module exactly when each of its pairs is autonomous, and
    pairwise autonomy is transitive, so the blocks are its classes.
    """
    if not is_graph(G):
        raise NotAGraph("autonomous_partition needs a loopless undirected graph")
    blocks: list[list[int]] = []
    for v in range(G.n):
        for b in blocks:
            if is_autonomous(G, (b[0], v)):
                b.append(v)
                break
        else:
            blocks.append([v])
    return Partition(G.n, tuple(map(tuple, blocks)))
