import itertools
import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from strucprof.structures import graph, make_structure

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", deadline=None, max_examples=400)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


# --- oracles that never touch the canonical labelling -------------------------------


def brute_isomorphic(R, S) -> bool:
    if R.signature != S.signature or R.n != S.n:
        return False
    if any(len(a) != len(b) for a, b in zip(R.relations, S.relations)):
        return False
    for p in itertools.permutations(range(R.n)):
        if all(
            {tuple(p[x] for x in t) for t in a} == set(b)
            for a, b in zip(R.relations, S.relations)
        ):
            return True
    return False


def brute_restrict(R, A):
    A = sorted(A)
    idx = {v: i for i, v in enumerate(A)}
    rels = [
        {tuple(idx[x] for x in t) for t in rel if all(x in idx for x in t)}
        for rel in R.relations
    ]
    return make_structure(R.signature, len(A), rels)


def brute_profile(R, n) -> int:
    """Isomorphism classes of n-subsets, found by pairwise permutation tests."""
    reps = []
    for A in itertools.combinations(range(R.n), n):
        S = brute_restrict(R, A)
        if not any(brute_isomorphic(S, T) for T in reps):
            reps.append(S)
    return len(reps)


def brute_embeds(R, S) -> bool:
    for B in itertools.permutations(range(S.n), R.n):
        img = {v: B[v] for v in range(R.n)}
        ok = True
        for m, a, b in zip(R.signature, R.relations, S.relations):
            for t in itertools.product(range(R.n), repeat=m):
                if (t in a) != (tuple(img[x] for x in t) in b):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False


# --- strategies ----------------------------------------------------------------------


@st.composite
def graphs(draw, min_n=0, max_n=6):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return graph(n, [e for e, keep in zip(pairs, mask) if keep])


@st.composite
def structures(draw, max_n=5, signature=None):
    sig = signature or tuple(draw(st.lists(st.integers(0, 3), min_size=1, max_size=2)))
    n = draw(st.integers(0, max_n))
    rels = []
    for m in sig:
        universe = list(itertools.product(range(n), repeat=m))
        if len(universe) > 40:
            chosen = draw(st.sets(st.sampled_from(universe), max_size=12)) if universe else set()
        else:
            mask = draw(st.lists(st.booleans(), min_size=len(universe), max_size=len(universe)))
            chosen = {t for t, keep in zip(universe, mask) if keep}
        rels.append(chosen)
    return make_structure(sig, n, rels)


@st.composite
def permuted(draw, R):
    p = draw(st.permutations(range(R.n)))
    rels = [{tuple(p[x] for x in t) for t in rel} for rel in R.relations]
    return make_structure(R.signature, R.n, rels)


@pytest.fixture
def c4():
    return graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


@pytest.fixture
def c5():
    return graph(5, [(i, (i + 1) % 5) for i in range(5)])
