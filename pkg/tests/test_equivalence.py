import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strucprof.equivalence import (
    Partition,
    a_equivalent,
    autonomous_partition,
    components,
    equivalence_witness,
    freely_interpreted_by,
    fully_equivalent,
    identify,
    interval_decomposition,
    is_autonomous,
    is_interval_partition,
    is_monomorphic_decomposition,
    is_monomorphic_part,
    k_equivalent,
    k_hypomorphic,
    k_partition,
    le_k_equivalent,
    le_k_partition,
    p_monomorphic,
    parse_partition,
)
from strucprof.errors import (
    DomainMismatch,
    NotAGraph,
    NotOrdered,
    OverlapError,
    SignatureMismatch,
    StrucprofError,
)
from strucprof.families import ten_graph
from strucprof.structures import chain, complement, graph, make_structure

from conftest import brute_isomorphic, brute_restrict, graphs, structures

K3 = graph(3, [(0, 1), (1, 2), (0, 2)])
P3 = graph(3, [(0, 1), (1, 2)])
P4 = graph(4, [(0, 1), (1, 2), (2, 3)])


def brute_full_equivalent(R, x, y):
    others = [v for v in range(R.n) if v not in (x, y)]
    for k in range(len(others) + 1):
        for A in itertools.combinations(others, k):
            if not brute_isomorphic(brute_restrict(R, A + (x,)), brute_restrict(R, A + (y,))):
                return False
    return True


def brute_monomorphic_part(R, B):
    B = set(B)
    for size in range(R.n + 1):
        for S, T in itertools.combinations(itertools.combinations(range(R.n), size), 2):
            if set(S) - B == set(T) - B and not brute_isomorphic(brute_restrict(R, S), brute_restrict(R, T)):
                return False
    return True


def ordered(n, seq_second):
    """Chain 0<..<n-1 as relation 0; relation 1 is the order listed by ``seq_second``."""
    first = {(u, v) for u in range(n) for v in range(u, n)}
    pos = {v: i for i, v in enumerate(seq_second)}
    second = {(u, v) for u in range(n) for v in range(n) if pos[u] <= pos[v]}
    return make_structure((2, 2), n, [first, second])


class TestPartition:
    def test_blocks_canonical_order(self):
        P = Partition(4, ((3, 1), (2, 0)))
        assert P.blocks == ((0, 2), (1, 3))
        assert P.block_of(3) == 1

    @pytest.mark.parametrize("blocks", [((0,), (0, 1)), ((0,),), ((0, 5), (1,)), ((), (0, 1))])
    def test_invalid(self, blocks):
        with pytest.raises(StrucprofError):
            Partition(2, blocks)

    def test_text_roundtrip(self):
        P = Partition(5, ((0, 3), (1,), (2, 4)))
        assert P.to_text() == "0,3\n1\n2,4\n"
        assert parse_partition(P.to_text(), 5) == P

    def test_refines(self):
        fine = Partition(4, ((0,), (2,), (1, 3)))
        coarse = Partition(4, ((0, 2), (1, 3)))
        assert fine.refines(coarse) and not coarse.refines(fine)


class TestAEquivalence:
    def test_clique(self):
        assert a_equivalent(K3, 0, 1, {2})

    def test_path(self):
        assert not a_equivalent(P3, 0, 1, {2})
        assert a_equivalent(P3, 0, 2, {1})

    def test_overlap(self):
        with pytest.raises(OverlapError):
            a_equivalent(P3, 0, 1, {1})
        with pytest.raises(OverlapError):
            k_equivalent(P3, 0, 0, 1)

    def test_empty_set(self, c4):
        assert all(k_equivalent(c4, x, y, 0) for x, y in itertools.combinations(range(4), 2))

    def test_unary_distinction_at_k0(self):
        R = make_structure((1,), 2, [{(0,)}])
        assert not k_equivalent(R, 0, 1, 0)


class TestFullEquivalence:
    def test_c4(self, c4):
        assert fully_equivalent(c4, 0, 2)
        assert not fully_equivalent(c4, 0, 1)

    def test_two_edges(self):
        G = graph(4, [(0, 1), (2, 3)])
        assert fully_equivalent(G, 0, 1)
        w = equivalence_witness(G, 0, 2)
        assert not w.verdict and w.A == (1,)

    @given(graphs(min_n=2, max_n=5), st.data())
    def test_matches_oracle(self, G, data):
        x, y = data.draw(st.lists(st.integers(0, G.n - 1), min_size=2, max_size=2, unique=True))
        assert fully_equivalent(G, x, y) == brute_full_equivalent(G, x, y)

    @given(structures(max_n=4, signature=(2, 1)), st.data())
    def test_matches_oracle_general(self, R, data):
        if R.n < 2:
            return
        x, y = data.draw(st.lists(st.integers(0, R.n - 1), min_size=2, max_size=2, unique=True))
        assert fully_equivalent(R, x, y) == brute_full_equivalent(R, x, y)

    @given(graphs(min_n=3, max_n=6), st.integers(0, 3))
    def test_le_k_is_intersection(self, G, k):
        for x, y in itertools.combinations(range(G.n), 2):
            want = all(k_equivalent(G, x, y, j) for j in range(k + 1))
            assert le_k_equivalent(G, x, y, k) == want


class TestComponents:
    def test_clique(self):
        assert components(K3).blocks == ((0, 1, 2),)

    def test_c4(self, c4):
        P = components(c4)
        assert P.blocks == ((0, 2), (1, 3)) and P.kind == "components"

    def test_half_graph_is_rigid(self):
        G = ten_graph(2, 5)
        P = components(G)
        tops = [2 * n for n in range(4)]
        assert len({P.block_of(v) for v in tops}) == len(tops)

    @pytest.mark.parametrize("i", range(1, 11))
    def test_ten_graph_left_side_inequivalent(self, i):
        G = ten_graph(i, 6)
        for n, m in itertools.combinations(range(5), 2):
            assert not fully_equivalent(G, 2 * n, 2 * m)

    @given(graphs(max_n=6))
    def test_components_are_monomorphic(self, G):
        assert is_monomorphic_decomposition(G, components(G))

    @given(graphs(max_n=6))
    def test_matches_autonomous_oracle(self, G):
        assert components(G).same_blocks(autonomous_partition(G))

    @given(graphs(min_n=3, max_n=6))
    def test_k_partition_coarser_than_components(self, G):
        comp = components(G)
        for k in range(G.n - 1):
            assert comp.refines(k_partition(G, k))
            assert comp.refines(le_k_partition(G, k))


class TestMonomorphicParts:
    def test_singletons_and_classes(self, c4):
        assert all(is_monomorphic_part(c4, [v]) for v in range(4))
        assert is_monomorphic_part(c4, [0, 2])

    def test_path_pair(self):
        assert not is_monomorphic_part(P3, [0, 1])

    def test_merging_components_fails(self, c4):
        assert is_monomorphic_decomposition(c4, Partition.singletons(4))
        assert not is_monomorphic_decomposition(c4, Partition(4, ((0, 1, 2, 3),)))

    @given(graphs(max_n=5), st.data())
    def test_matches_oracle(self, G, data):
        B = data.draw(st.sets(st.integers(0, max(G.n - 1, 0)), max_size=G.n)) if G.n else set()
        assert is_monomorphic_part(G, B) == brute_monomorphic_part(G, B)

    def test_domain_mismatch(self, c4):
        with pytest.raises(DomainMismatch):
            is_monomorphic_decomposition(c4, Partition.singletons(3))


class TestIntervals:
    def test_bichain_identical(self):
        R = ordered(4, [0, 1, 2, 3])
        assert interval_decomposition(R).blocks == ((0, 1, 2, 3),)

    def test_bichain_swapped_pairs(self):
        R = ordered(4, [1, 0, 3, 2])
        P = interval_decomposition(R)
        assert P.blocks == ((0, 1), (2, 3)) and P.kind == "interval"

    def test_ordered_graph(self):
        R = make_structure(
            (2, 2), 4,
            [{(u, v) for u in range(4) for v in range(u, 4)}, {(0, 1), (1, 0)}],
        )
        assert interval_decomposition(R).blocks == ((0, 1), (2, 3))

    def test_class_split_by_gap(self):
        # 0 and 2 are equivalent but 1 separates them along the order
        R = make_structure((2, 2), 3, [{(u, v) for u in range(3) for v in range(u, 3)}, {(2, 0)}])
        assert components(R).blocks == ((0, 2), (1,))
        assert interval_decomposition(R).blocks == ((0,), (1,), (2,))

    def test_needs_order(self, c4):
        with pytest.raises(NotOrdered):
            interval_decomposition(c4)

    @given(st.permutations(range(5)), st.permutations(range(5)))
    def test_bichains(self, first, second):
        n = 5
        p1 = {v: i for i, v in enumerate(first)}
        p2 = {v: i for i, v in enumerate(second)}
        R = make_structure(
            (2, 2), n,
            [{(u, v) for u in range(n) for v in range(n) if p1[u] <= p1[v]},
             {(u, v) for u in range(n) for v in range(n) if p2[u] <= p2[v]}],
        )
        P = interval_decomposition(R)
        assert is_interval_partition(R, P)
        assert is_monomorphic_decomposition(R, P)


class TestHypomorphy:
    def test_self(self, c5):
        assert all(k_hypomorphic(c5, c5, k) for k in range(6))

    def test_edge_vs_nonedge(self):
        E, N = graph(2, [(0, 1)]), graph(2, [])
        assert k_hypomorphic(E, N, 1) and not k_hypomorphic(E, N, 2)

    def test_c5_complement(self, c5):
        assert k_hypomorphic(c5, complement(c5), 4)

    def test_mismatch(self, c5):
        with pytest.raises(SignatureMismatch):
            k_hypomorphic(c5, make_structure((1,), 5, [set()]), 2)
        with pytest.raises(DomainMismatch):
            k_hypomorphic(c5, graph(4, []), 2)

    def test_identify_clique(self):
        Rx, Ry = identify(K3, 0, 1)
        assert Rx == Ry == graph(2, [(0, 1)])
        assert k_hypomorphic(Rx, Ry, 2)

    def test_identify_path_ends(self):
        Rx, Ry = identify(P3, 0, 2)
        assert Rx == Ry == graph(2, [(0, 1)])

    @given(graphs(min_n=3, max_n=6), st.data())
    def test_identify_hypomorphy(self, G, data):
        x, y = data.draw(st.lists(st.integers(0, G.n - 1), min_size=2, max_size=2, unique=True))
        Rx, Ry = identify(G, x, y)
        for k in range(G.n - 1):
            assert k_equivalent(G, x, y, k) == k_hypomorphic(Rx, Ry, k + 1)


class TestMonomorphy:
    def test_chain(self):
        assert all(p_monomorphic(chain(5), p) for p in range(6))

    def test_cycles(self, c4, c5):
        assert not p_monomorphic(c4, 2)
        assert not p_monomorphic(c5, 2)
        assert p_monomorphic(c5, 1)

    def test_range(self, c4):
        with pytest.raises(StrucprofError):
            p_monomorphic(c4, 5)


class TestFreeInterpretation:
    def test_self(self, c4):
        assert freely_interpreted_by(c4, c4)

    def test_clique_by_chain(self):
        Kn = graph(5, itertools.combinations(range(5), 2))
        assert freely_interpreted_by(Kn, chain(5))

    def test_c4_not_chainable(self, c4):
        assert not freely_interpreted_by(c4, chain(4))

    def test_chain_interprets_random_order_relation(self):
        # a binary relation defined by the order type of the pair
        R = make_structure((2,), 5, [{(u, v) for u in range(5) for v in range(5) if u > v}])
        assert freely_interpreted_by(R, chain(5))

    def test_domain_mismatch(self, c4):
        with pytest.raises(DomainMismatch):
            freely_interpreted_by(c4, chain(3))


class TestAutonomous:
    def test_examples(self, c4):
        assert autonomous_partition(K3).blocks == ((0, 1, 2),)
        assert autonomous_partition(c4).blocks == ((0, 2), (1, 3))
        assert autonomous_partition(P4).blocks == ((0,), (1,), (2,), (3,))

    def test_is_autonomous(self, c4):
        assert is_autonomous(c4, {0, 2}) and not is_autonomous(c4, {0, 1})

    def test_not_a_graph(self):
        with pytest.raises(NotAGraph):
            autonomous_partition(make_structure((2,), 2, [{(0, 1)}]))
