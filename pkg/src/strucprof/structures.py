"""Finite relational structures on the domain ``0..n-1``.

A structure is a signature (tuple of arities), a domain size and one frozen
tuple set per relation.  Values are immutable; canonical codes are memoised
on the instance.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .canon import canonical_form
from .errors import (
    ArityMismatch,
    NotAGraph,
    NotOrdered,
    ParseError,
    VertexOutOfRange,
)

Tuple = tuple[int, ...]


@dataclass(frozen=True)
class RelStructure:
    signature: tuple[int, ...]
    n: int
    relations: tuple[frozenset, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)
    strict_order_input: bool = field(default=False, compare=False)
    _memo: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @property
    def domain(self) -> range:
        return range(self.n)

    def __hash__(self) -> int:
        h = self._memo.get("hash")
        if h is None:
            h = hash((self.signature, self.n, self.relations))
            self._memo["hash"] = h
        return h

    def __len__(self) -> int:
        return self.n

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v)


def make_structure(
    signature: Sequence[int],
    n: int,
    relations: Sequence[Iterable[Sequence[int]]],
    labels: Sequence[str] | None = None,
) -> RelStructure:
    """Validate and freeze a structure.

    >>> make_structure((2,), 2, [{(0, 1), (1, 0)}]).n
    2
    """
    signature = tuple(int(m) for m in signature)
    if not signature:
        raise ArityMismatch("signature must be non-empty")
    if any(m < 0 for m in signature):
        raise ArityMismatch(f"negative arity in {signature}")
    if n < 0:
        raise VertexOutOfRange(f"negative domain size {n}")
    if len(relations) != len(signature):
        raise ArityMismatch(f"{len(relations)} relations for signature of length {len(signature)}")
    rels = []
    for i, (m, rel) in enumerate(zip(signature, relations)):
        frozen = set()
        for t in rel:
            t = tuple(int(x) for x in t)
            if len(t) != m:
                raise ArityMismatch(f"tuple {t} in relation {i} has length {len(t)}, expected {m}")
            for x in t:
                if not 0 <= x < n:
                    raise VertexOutOfRange(f"vertex {x} outside 0..{n - 1} in relation {i}")
            frozen.add(t)
        rels.append(frozenset(frozen))
    if labels is not None:
        labels = tuple(str(s) for s in labels)
        if len(labels) != n:
            raise ArityMismatch(f"{len(labels)} labels for {n} vertices")
    return RelStructure(signature, n, tuple(rels), labels)


def graph(n: int, edges: Iterable[Sequence[int]], labels: Sequence[str] | None = None) -> RelStructure:
    """Loopless undirected graph as one symmetric irreflexive binary relation."""
    rel = set()
    for u, v in edges:
        if u == v:
            raise NotAGraph(f"loop at {u}")
        rel.add((u, v))
        rel.add((v, u))
    return make_structure((2,), n, [rel], labels)


def is_graph(R: RelStructure) -> bool:
    if R.signature != (2,):
        return False
    rel = R.relations[0]
    return all(u != v and (v, u) in rel for u, v in rel)


def edges(G: RelStructure) -> list[tuple[int, int]]:
    return sorted((u, v) for u, v in G.relations[0] if u < v)


def restrict(R: RelStructure, A: Iterable[int]) -> tuple[RelStructure, dict[int, int]]:
    """Induced substructure on ``A``, relabelled to ``0..|A|-1`` in increasing order.

    Returns the structure and the map old vertex -> new vertex.
    """
    verts = sorted(set(A))
    for v in verts:
        if not 0 <= v < R.n:
            raise VertexOutOfRange(f"vertex {v} outside 0..{R.n - 1}")
    return _restrict_sorted(R, verts)


def _restrict_sorted(R: RelStructure, verts: Sequence[int]) -> tuple[RelStructure, dict[int, int]]:
    idx = {v: i for i, v in enumerate(verts)}
    k = len(verts)
    rels = []
    for m, rel in zip(R.signature, R.relations):
        if k ** m < len(rel):
            new = frozenset(
                tuple(idx[x] for x in t)
                for t in itertools.product(verts, repeat=m)
                if t in rel
            )
        else:
            new = frozenset(
                tuple(idx[x] for x in t) for t in rel if all(x in idx for x in t)
            )
        rels.append(new)
    labels = tuple(R.labels[v] for v in verts) if R.labels else None
    return RelStructure(R.signature, k, tuple(rels), labels), idx


def relabel(R: RelStructure, perm: Sequence[int]) -> RelStructure:
    """Image of ``R`` under the bijection ``v -> perm[v]``."""
    rels = tuple(frozenset(tuple(perm[x] for x in t) for t in rel) for rel in R.relations)
    return RelStructure(R.signature, R.n, rels)


def _form(R: RelStructure) -> tuple:
    memo = R._memo
    f = memo.get("form")
    if f is None:
        f = canonical_form(R.n, R.signature, R.relations)
        memo["form"] = f
    return f


def canonical_key(R: RelStructure) -> tuple:
    """Hashable isomorphism invariant that is complete within a fixed signature."""
    return (R.signature, R.n, _form(R)[0])


def canonical_code(R: RelStructure) -> bytes:
    """Byte string identifying the isomorphism class of ``R`` among structures of its signature."""
    sig, n, cert = canonical_key(R)
    parts = [" ".join(map(str, sig)), str(n)]
    for rel in cert:
        parts.append(" ".join(",".join(map(str, t)) for t in rel))
    return "|".join(parts).encode()


def canonical_relabeling(R: RelStructure) -> RelStructure:
    perm = _form(R)[1]
    lab = [0] * R.n
    for p, v in enumerate(perm):
        lab[v] = p
    return relabel(R, lab)


def is_isomorphic(R: RelStructure, S: RelStructure) -> bool:
    if R.signature != S.signature or R.n != S.n:
        return False
    if tuple(map(len, R.relations)) != tuple(map(len, S.relations)):
        return False
    return canonical_key(R) == canonical_key(S)


def subset_key(R: RelStructure, verts: Sequence[int]) -> tuple:
    """Canonical key of the restriction to the sorted vertex list ``verts``, memoised on ``R``."""
    cache = R._memo.setdefault("subset", {})
    key = tuple(verts)
    k = cache.get(key)
    if k is None:
        k = canonical_key(_restrict_sorted(R, key)[0])
        cache[key] = k
    return k


# --- embeddings ---------------------------------------------------------------


def _consistent(R: RelStructure, S: RelStructure, f: dict[int, int], a: int) -> bool:
    dom = list(f)
    for m, rr, sr in zip(R.signature, R.relations, S.relations):
        if m == 0:
            continue
        for t in itertools.product(dom, repeat=m):
            if a not in t:
                continue
            if (t in rr) != (tuple(f[x] for x in t) in sr):
                return False
    return True


def embeds(R: RelStructure, S: RelStructure) -> dict[int, int] | None:
    """Injective map witnessing ``R`` isomorphic to an induced substructure of ``S``, or None."""
    if R.signature != S.signature or R.n > S.n:
        return None
    for m, rr, sr in zip(R.signature, R.relations, S.relations):
        if m == 0 and rr != sr:
            return None
    deg_r = _degrees(R)
    deg_s = _degrees(S)
    cand = {
        v: [w for w in range(S.n) if _fits(deg_r[v], deg_s[w], R.n, S.n)]
        for v in range(R.n)
    }
    order = _embedding_order(R, cand)
    f: dict[int, int] = {}
    used: set[int] = set()

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in cand[v]:
            if w in used:
                continue
            f[v] = w
            if _consistent(R, S, f, v):
                used.add(w)
                if extend(i + 1):
                    return True
                used.discard(w)
            del f[v]
        return False

    return dict(sorted(f.items())) if extend(0) else None


def _degrees(R: RelStructure) -> list[tuple]:
    # per vertex: loop flags and in/out degrees of each binary relation
    out = []
    for v in range(R.n):
        d = []
        for m, rel in zip(R.signature, R.relations):
            if m == 1:
                d.append(("u", (v,) in rel))
            elif m == 2:
                d.append((
                    "b",
                    (v, v) in rel,
                    sum(1 for t in rel if t[0] == v and t[1] != v),
                    sum(1 for t in rel if t[1] == v and t[0] != v),
                ))
        out.append(tuple(d))
    return out


def _fits(dr: tuple, ds: tuple, nr: int, ns: int) -> bool:
    for a, b in zip(dr, ds):
        if a[0] == "u":
            if a[1] != b[1]:
                return False
        else:
            if a[1] != b[1]:
                return False
            # out/in degrees and non-degrees can only grow in a host
            if a[2] > b[2] or a[3] > b[3]:
                return False
            if (nr - 1 - a[2]) > (ns - 1 - b[2]) or (nr - 1 - a[3]) > (ns - 1 - b[3]):
                return False
    return True


def _embedding_order(R: RelStructure, cand: dict[int, list[int]]) -> list[int]:
    # connected-first order: each next vertex has the most ties to those already placed
    adj = [set() for _ in range(R.n)]
    for m, rel in zip(R.signature, R.relations):
        for t in rel:
            for x in t:
                adj[x].update(t)
    remaining = set(range(R.n))
    order: list[int] = []
    while remaining:
        placed = set(order)
        v = min(remaining, key=lambda u: (-len(adj[u] & placed), len(cand[u]), u))
        order.append(v)
        remaining.discard(v)
    return order


def complement(G: RelStructure) -> RelStructure:
    if not is_graph(G):
        raise NotAGraph("complement needs a single symmetric irreflexive binary relation")
    rel = G.relations[0]
    new = frozenset(
        (u, v) for u in range(G.n) for v in range(G.n) if u != v and (u, v) not in rel
    )
    return RelStructure((2,), G.n, (new,), G.labels)


# --- orders -------------------------------------------------------------------


def order_sequence(R: RelStructure) -> list[int]:
    """Vertices of an ordered structure listed along relation 0 (strict or reflexive)."""
    if not R.signature or R.signature[0] != 2:
        raise NotOrdered("relation 0 is not binary")
    rel = R.relations[0]
    n = R.n
    reflexive = all((v, v) in rel for v in range(n))
    if not reflexive and any((v, v) in rel for v in range(n)):
        raise NotOrdered("relation 0 mixes reflexive and irreflexive pairs")
    below = [sum(1 for u in range(n) if u != v and (u, v) in rel) for v in range(n)]
    seq = sorted(range(n), key=lambda v: below[v])
    if sorted(below) != list(range(n)):
        raise NotOrdered("relation 0 is not a linear order")
    for i, u in enumerate(seq):
        for v in seq[i + 1:]:
            if (u, v) not in rel or (v, u) in rel:
                raise NotOrdered("relation 0 is not a linear order")
    return seq


def normalize_order(R: RelStructure) -> RelStructure:
    """Return ``R`` with relation 0 stored as the reflexive order, flagging strict input."""
    order_sequence(R)
    rel = R.relations[0]
    if R.n == 0 or (0, 0) in rel:
        return R
    new = rel | frozenset((v, v) for v in range(R.n))
    return RelStructure(R.signature, R.n, (new,) + R.relations[1:], R.labels, True)


def is_ordered(R: RelStructure) -> bool:
    try:
        order_sequence(R)
    except NotOrdered:
        return False
    return True


def chain(n: int) -> RelStructure:
    """Reflexive chain ``0 < 1 < ... < n-1``."""
    return make_structure((2,), n, [{(u, v) for u in range(n) for v in range(u, n)}])


# --- enumeration --------------------------------------------------------------


def graphs_up_to_iso(n: int) -> list[RelStructure]:
    """One representative per isomorphism type of graphs on ``n`` vertices."""
    reps = [graph(0, [])]
    for k in range(1, n + 1):
        seen: dict = {}
        for G in reps:
            es = edges(G)
            for mask in range(1 << (k - 1)):
                nbrs = [u for u in range(k - 1) if mask >> u & 1]
                H = graph(k, es + [(u, k - 1) for u in nbrs])
                key = canonical_key(H)
                if key not in seen:
                    seen[key] = H
        reps = list(seen.values())
    return reps


# --- text format --------------------------------------------------------------


def parse_structure(text: str) -> RelStructure:
    """Parse the ``signature/domain/rel`` text format.

    An optional ``order strict|reflexive`` line declares relation 0 a linear
    order; strict input is normalised to the reflexive form.
    """
    signature = None
    n = None
    rels: dict[int, set] = {}
    order_mode = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        try:
            if head == "signature":
                signature = tuple(int(x) for x in rest.split())
            elif head == "domain":
                n = int(rest)
            elif head == "order":
                order_mode = rest.strip()
                if order_mode not in ("strict", "reflexive"):
                    raise ParseError(f"line {lineno}: order must be strict or reflexive")
            elif head == "rel":
                idx, sep, body = rest.partition(":")
                if not sep:
                    raise ParseError(f"line {lineno}: missing ':'")
                i = int(idx)
                tuples = rels.setdefault(i, set())
                for tok in body.split():
                    if tok == "()":
                        tuples.add(())
                    else:
                        tuples.add(tuple(int(x) for x in tok.split(",")))
            else:
                raise ParseError(f"line {lineno}: unknown directive {head!r}")
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"line {lineno}: {exc}") from None
    if signature is None or n is None:
        raise ParseError("missing signature or domain line")
    for i in rels:
        if not 0 <= i < len(signature):
            raise ParseError(f"relation index {i} outside signature")
    R = make_structure(signature, n, [rels.get(i, set()) for i in range(len(signature))])
    if order_mode is not None:
        R = normalize_order(R)
    return R


def format_structure(R: RelStructure) -> str:
    lines = [f"signature {' '.join(map(str, R.signature))}", f"domain {R.n}"]
    for i, rel in enumerate(R.relations):
        if not rel:
            continue
        toks = ["()" if not t else ",".join(map(str, t)) for t in sorted(rel)]
        lines.append(f"rel {i} : {' '.join(toks)}")
    return "\n".join(lines) + "\n"


def read_structure(path) -> RelStructure:
    with open(path, encoding="utf-8") as fh:
        return parse_structure(fh.read())
