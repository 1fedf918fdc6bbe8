"""Canonical labelling of finite relational structures.

Individualisation-refinement over ordered vertex partitions.  Refinement is
1-dimensional colour refinement on the tuple incidence structure, where each
tuple through ``v`` contributes ``(relation, colours of its coordinates)``
with ``v``'s own positions marked, so repeated coordinates are encoded by
position and not only by incidence.

The canonical form is the least leaf certificate over the search tree.
Subtrees are skipped only when an automorphism already found proves them
equivalent to an explored one, so the minimum is exact.
"""

from __future__ import annotations

from typing import Sequence

Relations = Sequence[frozenset]

_SELF = -1


def _incidence(n: int, relations: Relations) -> list[list[tuple[int, tuple[int, ...]]]]:
    inc: list[list[tuple[int, tuple[int, ...]]]] = [[] for _ in range(n)]
    for i, rel in enumerate(relations):
        for t in rel:
            for v in set(t):
                inc[v].append((i, t))
    return inc


def _refine(cells: list[list[int]], inc) -> list[list[int]]:
    while True:
        col = {}
        pos = 0
        for c in cells:
            for v in c:
                col[v] = pos
            pos += len(c)
        changed = False
        out: list[list[int]] = []
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            groups: dict = {}
            for v in c:
                sig = tuple(sorted(
                    (i, tuple(_SELF if u == v else col[u] for u in t)) for i, t in inc[v]
                ))
                groups.setdefault(sig, []).append(v)
            if len(groups) == 1:
                out.append(c)
                continue
            changed = True
            for key in sorted(groups):
                out.append(groups[key])
        cells = out
        if not changed:
            return cells


def _certificate(perm: list[int], relations: Relations) -> tuple:
    lab = [0] * len(perm)
    for p, v in enumerate(perm):
        lab[v] = p
    return tuple(tuple(sorted(tuple(lab[x] for x in t) for t in rel)) for rel in relations)


def _orbit_closure(seed: set[int], gens: list[list[int]]) -> set[int]:
    seen = set(seed)
    stack = list(seed)
    while stack:
        v = stack.pop()
        for g in gens:
            w = g[v]
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def _common_prefix(a: list[int], b: list[int]) -> int:
    k = 0
    for x, y in zip(a, b):
        if x != y:
            break
        k += 1
    return k


class _Search:
    def __init__(self, n: int, arities: Sequence[int], relations: Relations):
        self.n = n
        self.arities = arities
        self.relations = relations
        self.inc = _incidence(n, relations)
        self.first: tuple | None = None  # (cert, path, perm)
        self.best: tuple | None = None
        self.autos: list[list[int]] = []

    def initial(self) -> list[list[int]]:
        # vertex colour = the restriction of R to {v}
        groups: dict = {}
        for v in range(self.n):
            key = tuple(
                i for i, m in enumerate(self.arities)
                if m > 0 and (v,) * m in self.relations[i]
            )
            groups.setdefault(key, []).append(v)
        return _refine([groups[k] for k in sorted(groups)], self.inc)

    def run(self) -> tuple[tuple, list[int]]:
        if self.n == 0:
            return _certificate([], self.relations), []
        self._visit(self.initial(), [])
        cert, _, perm = self.best
        return cert, perm

    def _leaf(self, cells, path):
        perm = [c[0] for c in cells]
        cert = _certificate(perm, self.relations)
        if self.first is None:
            self.first = self.best = (cert, path, perm)
            return None
        if cert == self.first[0]:
            self._record(self.first[2], perm)
            return _common_prefix(path, self.first[1])
        if cert == self.best[0]:
            self._record(self.best[2], perm)
            return _common_prefix(path, self.best[1])
        if cert < self.best[0]:
            self.best = (cert, path, perm)
        return None

    def _record(self, perm_a: list[int], perm_b: list[int]) -> None:
        g = [0] * self.n
        for a, b in zip(perm_a, perm_b):
            g[a] = b
        if any(g[v] != v for v in range(self.n)):
            self.autos.append(g)

    def _visit(self, cells: list[list[int]], path: list[int]):
        if len(cells) == self.n:
            return self._leaf(cells, path)
        depth = len(path)
        k = min(
            (i for i, c in enumerate(cells) if len(c) > 1),
            key=lambda i: (len(cells[i]), i),
        )
        target = cells[k]
        explored: set[int] = set()
        for v in target:
            if explored:
                gens = [g for g in self.autos if all(g[p] == p for p in path)]
                if gens and v in _orbit_closure(explored, gens):
                    continue
            explored.add(v)
            rest = [u for u in target if u != v]
            child = cells[:k] + [[v], rest] + cells[k + 1:]
            r = self._visit(_refine(child, self.inc), path + [v])
            if r is not None and r < depth:
                return r
        return None


def canonical_form(n: int, arities: Sequence[int], relations: Relations) -> tuple[tuple, list[int]]:
    """Return ``(certificate, perm)`` where ``perm[p]`` is the vertex placed at position ``p``.

    Two structures of the same signature are isomorphic iff their
    certificates are equal.
    """
    return _Search(n, arities, relations).run()
