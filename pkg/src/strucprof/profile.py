"""Exact profiles: counting isomorphism types of induced substructures.

For a family prefix the subsets are enumerated shape-first.  A subset of
``F | (L x K)`` is a set of fixed points together with a word of non-empty
subsets of ``K``, one letter per chain slot it touches.  Since relation values
depend only on tuple patterns, two subsets with the same fixed part and the
same word are isomorphic, so it suffices to place each word on the first
slots of the chain.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import os
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .equivalence import Partition, is_monomorphic_decomposition
from .errors import (
    NotMonomorphic,
    NotStabilized,
    PrefixCapExceededWarning,
    RangeError,
    TooSmall,
)
from .families import FamilyGenerator
from .structures import RelStructure, make_structure, subset_key


def _workers() -> int:
    raw = os.environ.get("STRUCPROF_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            return 1
    return os.cpu_count() or 1


def _chunk_keys(args) -> list:
    sig, n, rels, subsets = args
    R = make_structure(sig, n, rels)
    return [subset_key(R, s) for s in subsets]


def _keys(R: RelStructure, subsets: Sequence[tuple[int, ...]]) -> list:
    """Canonical keys of the given restrictions, in order; split across worker processes when asked."""
    workers = _workers()
    if workers == 1 or len(subsets) < 2000:
        return [subset_key(R, s) for s in subsets]
    size = -(-len(subsets) // workers)
    chunks = [
        (R.signature, R.n, R.relations, subsets[i:i + size])
        for i in range(0, len(subsets), size)
    ]
    with ProcessPoolExecutor(workers) as pool:
        return [k for part in pool.map(_chunk_keys, chunks) for k in part]


def _distinct_keys(R: RelStructure, subsets: Sequence[tuple[int, ...]]) -> set:
    return set(_keys(R, subsets))


def profile_exact(R: RelStructure, n: int) -> int:
    """Number of isomorphism types among the ``n``-element induced substructures of ``R``."""
    if not 0 <= n <= R.n:
        raise RangeError(f"n={n} outside 0..{R.n}")
    return len(_distinct_keys(R, list(itertools.combinations(range(R.n), n))))


def profile_counts(R: RelStructure, n_max: int | None = None) -> list[int]:
    """``profile_exact(R, n)`` for ``n = 0..n_max``; zero above ``|V|``."""
    n_max = R.n if n_max is None else n_max
    if n_max < 0:
        raise RangeError("n_max must be non-negative")
    return [profile_exact(R, n) if n <= R.n else 0 for n in range(n_max + 1)]


def shape(A, P: Partition) -> tuple[int, ...]:
    A = set(A)
    return tuple(len(A.intersection(b)) for b in P.blocks)


def _compositions(n: int, caps: Sequence[int]) -> Iterator[tuple[int, ...]]:
    if not caps:
        if n == 0:
            yield ()
        return
    rest = sum(caps[1:])
    for a in range(max(0, n - rest), min(n, caps[0]) + 1):
        for tail in _compositions(n - a, caps[1:]):
            yield (a,) + tail


def profile_by_shapes(R: RelStructure, P: Partition, n: int, check: bool = True) -> int:
    """Same value as ``profile_exact`` using one subset per shape; ``P`` must be a monomorphic decomposition."""
    if not 0 <= n <= R.n:
        raise RangeError(f"n={n} outside 0..{R.n}")
    if P.n != R.n:
        raise RangeError("partition and structure have different domains")
    if check and not is_monomorphic_decomposition(R, P):
        raise NotMonomorphic("partition is not a monomorphic decomposition")
    caps = [len(b) for b in P.blocks]
    reps = [
        tuple(sorted(v for b, a in zip(P.blocks, sh) for v in b[:a]))
        for sh in _compositions(n, caps)
    ]
    return len(_distinct_keys(R, reps))


def monotonicity_check(R: RelStructure, n: int, p: int) -> bool:
    if n < 0 or p < 0:
        raise RangeError("n and p must be non-negative")
    if R.n < 2 * n + p:
        raise TooSmall(f"need at least {2 * n + p} vertices, have {R.n}")
    return profile_exact(R, n) <= profile_exact(R, n + p)


# --- family tables -------------------------------------------------------------------


@dataclass(frozen=True)
class ProfileTable:
    values: tuple[int, ...]
    source: str
    prefix_used: int
    stabilized: bool

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "count"])
        w.writerows(enumerate(self.values))
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(
            {
                "source": self.source,
                "prefix_used": self.prefix_used,
                "stabilized": self.stabilized,
                "values": list(self.values),
            },
            indent=2,
        ) + "\n"


def _words(k_size: int, total: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Words over non-empty subsets of ``range(k_size)`` whose letter sizes sum to ``total``."""
    letters = [
        s for r in range(1, k_size + 1) for s in itertools.combinations(range(k_size), r)
    ]

    def rec(left):
        if left == 0:
            yield ()
            return
        for a in letters:
            if len(a) <= left:
                for tail in rec(left - len(a)):
                    yield (a,) + tail

    yield from rec(total)


def _family_subsets(F: FamilyGenerator, length: int, n: int) -> list[tuple[int, ...]]:
    out = []
    for f in range(min(n, F.f_size) + 1):
        if F.k_size == 0 and f != n:
            continue
        for fixed in itertools.combinations(range(F.f_size), f):
            if F.k_size == 0:
                out.append(fixed)
                continue
            for word in _words(F.k_size, n - f):
                if len(word) > length:
                    continue
                out.append(fixed + tuple(
                    F.vertex(s, k) for s, letter in enumerate(word) for k in letter
                ))
    return out


def prefix_profile(
    F: FamilyGenerator, length: int, n_max: int, cache: dict | None = None
) -> list[int]:
    """Profile of ``F.prefix(length)`` for ``n = 0..n_max``.

    ``cache`` maps vertex tuples to canonical keys; since prefixes are
    consistent it can be shared between prefix lengths.
    """
    R = F.prefix(length)
    cache = {} if cache is None else cache
    values = []
    for n in range(n_max + 1):
        if n > R.n:
            values.append(0)
            continue
        subsets = _family_subsets(F, length, n)
        todo = [s for s in subsets if s not in cache]
        if todo:
            cache.update(zip(todo, _keys(R, todo)))
        values.append(len({cache[s] for s in subsets}))
    return values


def profile_table(
    F: FamilyGenerator, n_max: int, prefix_cap: int | None = None, step: int = 2
) -> ProfileTable:
    """Profile of the infinite structure generated by ``F``, computed on growing prefixes.

    Starts at ``n_max + 2`` slots and grows by ``step`` until two consecutive
    prefixes agree; gives up (with a warning) past ``prefix_cap``.
    """
    if n_max < 0:
        raise RangeError("n_max must be non-negative")
    cap = 4 * n_max + 8 if prefix_cap is None else prefix_cap
    length = min(n_max + 2, cap)
    cache: dict = {}
    prev = prefix_profile(F, length, n_max, cache)
    while True:
        nxt_len = length + step
        if nxt_len > cap:
            warnings.warn(
                f"{F.name}: no agreement between consecutive prefixes up to {length} slots",
                PrefixCapExceededWarning,
                stacklevel=2,
            )
            return ProfileTable(tuple(prev), F.name, length, False)
        cur = prefix_profile(F, nxt_len, n_max, cache)
        if cur == prev:
            return ProfileTable(tuple(cur), F.name, nxt_len, True)
        prev, length = cur, nxt_len


def structure_table(R: RelStructure, n_max: int | None = None, source: str = "structure") -> ProfileTable:
    vals = profile_counts(R, n_max)
    return ProfileTable(tuple(vals), source, R.n, True)


# --- growth classification -------------------------------------------------------------


@dataclass(frozen=True)
class GrowthVerdict:
    kind: str  # "eventually-polynomial", "exponential-at-least" or "undetermined"
    degree: int | None = None
    base: float | None = None
    window: tuple[int, ...] = field(default=())

    def __str__(self) -> str:
        if self.kind == "eventually-polynomial":
            return f"eventually-polynomial({self.degree})"
        if self.kind == "exponential-at-least":
            return f"exponential-at-least({self.base:.6g})"
        return "undetermined"


def _poly_degree(seq: Sequence[int]) -> int | None:
    """Least ``k`` with vanishing ``(k+1)``-th differences, using at least one difference."""
    diffs = list(seq)
    for k in range(len(seq) - 1):
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
        if diffs and all(d == 0 for d in diffs):
            return k
    return None


def classify_growth(T: ProfileTable, min_ratio: float = 1.2) -> GrowthVerdict:
    """Heuristic growth class from the tail of a stabilized table.

    Polynomial test: even and odd subsequences of ``values[3:]`` are fitted
    separately, degree is the larger one; the first entries are skipped since
    quasi-polynomial profiles often settle only from ``n = 3`` on.  Exponential
    test: every one of the last ``max(4, n_max/2)`` successive ratios is at
    least ``min_ratio``; the base reported is the smallest of them.
    """
    if not T.stabilized:
        raise NotStabilized(f"table for {T.source} did not stabilize")
    N = T.n_max
    if N < 8:
        raise NotStabilized("classification needs n_max >= 8")
    v = T.values
    window = tuple(range(3, N + 1))
    degs = [_poly_degree([v[n] for n in window if n % 2 == r]) for r in (0, 1)]
    if all(d is not None for d in degs):
        return GrowthVerdict("eventually-polynomial", degree=max(degs), window=window)
    r = max(4, N // 2)
    ratio_window = tuple(range(N - r, N + 1))
    if all(v[n] > 0 for n in ratio_window):
        base = min(v[n + 1] / v[n] for n in ratio_window[:-1])
        if base >= min_ratio:
            return GrowthVerdict("exponential-at-least", base=base, window=ratio_window)
    return GrowthVerdict("undetermined", window=window)

