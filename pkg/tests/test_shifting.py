"""Zagreb-monotone rewiring moves and their structural guarantees."""

import random
from collections import Counter

import pytest

from cherrymax.constructions import ak_bipartite
from cherrymax.graph_core import (
    BipartiteGraph,
    ConstraintWitness,
    Graph,
    z1_index,
)
from cherrymax.shifting import (
    SwapMove,
    analyze_omega,
    apply_swap,
    is_shifted,
    is_shifted_general,
    left_compress,
    left_compress_with_log,
    shift_general,
    shift_general_with_log,
    swap_delta,
    swap_sides,
)


def random_bipartite(rng: random.Random, max_cells: int = 20):
    r = rng.randint(1, max_cells)
    s = rng.randint(1, max(1, max_cells // r))
    cells = [(i, j) for i in range(r) for j in range(s)]
    m = rng.randint(0, len(cells))
    return BipartiteGraph(r, s, rng.sample(cells, m))


def witness_for(rng: random.Random, b: BipartiteGraph) -> ConstraintWitness:
    """The ell busiest rows, with the degree floor they actually meet."""
    degs = b.left_degrees()
    ell = rng.randint(1, b.r)
    rows = sorted(range(b.r), key=lambda i: (-degs[i], i))[:ell]
    return ConstraintWitness(tuple(rows), ell, min(degs[i] for i in rows))


def test_swap_delta_path_ends():
    path = Graph(3, [(0, 1), (1, 2)])
    assert swap_delta(path, SwapMove((0, 1), (0, 2))) == 0


def test_swap_delta_triangle_to_pendant():
    g = Graph(4, [(0, 1), (0, 2), (1, 2)])
    move = SwapMove((0, 1), (0, 3))
    assert swap_delta(g, move) == -2
    assert z1_index(apply_swap(g, move)) == 10


def test_swap_delta_matches_recomputation():
    rng = random.Random(4242)
    trials = 0
    while trials < 200:
        n = rng.randint(3, 10)
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        m = rng.randint(1, len(pairs) - 1)
        g = Graph(n, rng.sample(pairs, m))
        non_edges = [p for p in pairs if p not in g.edges]
        move = SwapMove(rng.choice(sorted(g.edges)), rng.choice(non_edges))
        trials += 1
        assert swap_delta(g, move) == z1_index(apply_swap(g, move)) - z1_index(g)


def test_swap_validation():
    g = Graph(3, [(0, 1)])
    with pytest.raises(ValueError):
        swap_delta(g, SwapMove((0, 2), (1, 2)))  # removed pair absent
    with pytest.raises(ValueError):
        swap_delta(g, SwapMove((0, 1), (0, 1)))  # no-op
    with pytest.raises(ValueError):
        swap_delta(g, SwapMove((0, 1), (2, 2)))  # loop


def test_left_compress_fixed_point():
    b = ak_bipartite(3, 2, 4)
    out, log, _, _ = left_compress_with_log(b, ConstraintWitness((0,), 1, 0))
    assert out == b
    assert log == []


def test_left_compress_antidiagonal():
    b = BipartiteGraph(2, 2, [(0, 1), (1, 0)])
    out = left_compress(b, ConstraintWitness((0,), 1, 1))
    assert sorted(out.edges) == [(0, 0), (1, 0)]
    assert z1_index(out) == 6


def test_left_compress_properties():
    rng = random.Random(31337)
    for _ in range(200):
        b = random_bipartite(rng)
        w = witness_for(rng, b)
        before = z1_index(b)
        out, log, _, _ = left_compress_with_log(b, w)
        assert out.num_edges == b.num_edges
        assert z1_index(out) >= before
        assert z1_index(out) == before + sum(delta for _, delta in log)
        assert all(delta >= 0 for _, delta in log)
        assert is_shifted(out)
        assert sum(1 for d in out.left_degrees() if d >= w.degree_floor) >= w.target_size
        # second pass is a no-op (rows were relabeled, so re-aim the witness
        # at the leading rows, which now carry the largest degrees)
        w2 = ConstraintWitness(tuple(range(w.target_size)), w.target_size, w.degree_floor)
        again, log2, _, _ = left_compress_with_log(out, w2)
        assert again == out and log2 == []


def test_left_compress_nested_columns():
    rng = random.Random(11)
    for _ in range(200):
        b = random_bipartite(rng, 12)
        out = left_compress(b, ConstraintWitness((0,), 1, 0))
        cols = [{i for i, j in out.edges if j == c} for c in range(out.s)]
        for left, right in zip(cols, cols[1:]):
            assert right <= left


def test_swap_sides_properties():
    rng = random.Random(555)
    exercised = 0
    while exercised < 150:
        # swap_sides lives in the wide setting, so keep r >= s
        s = rng.randint(1, 4)
        r = rng.randint(s, max(s, 20 // s))
        cells = [(i, j) for i in range(r) for j in range(s)]
        b = BipartiteGraph(r, s, rng.sample(cells, rng.randint(0, len(cells))))
        shifted = left_compress(b, ConstraintWitness((0,), 1, 0))
        degs = shifted.left_degrees()
        ell = rng.randint(1, shifted.r)
        # family hypotheses: ell rows of degree >= k with ell >= k
        w = ConstraintWitness(tuple(range(ell)), ell, min(ell, degs[ell - 1]))
        out = swap_sides(shifted, w)
        exercised += 1
        assert out.num_edges == shifted.num_edges
        assert z1_index(out) == z1_index(shifted)
        assert Counter(out.left_degrees() + out.right_degrees()) == Counter(
            shifted.left_degrees() + shifted.right_degrees()
        )
        assert out.delta_right >= out.delta_left
        assert sum(1 for d in out.left_degrees() if d >= w.degree_floor) >= ell


def test_swap_sides_requires_shifted_input():
    b = BipartiteGraph(2, 2, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        swap_sides(b, ConstraintWitness((), 1, 1))


def test_shift_general_small():
    # star with an extra far edge; witness is the two leaves 3, 4
    g = Graph(5, [(0, 1), (0, 2), (3, 4)])
    with pytest.raises(ValueError):
        shift_general(g, ConstraintWitness((3, 4), 2, 1))  # 3-4 not independent
    g = Graph(5, [(0, 3), (0, 4), (1, 2)])
    out, log, order = shift_general_with_log(g, ConstraintWitness((3, 4), 2, 1))
    assert out.num_edges == 3
    assert is_shifted_general(out, 2)
    assert order[:2] == [3, 4]


def test_shift_general_properties():
    rng = random.Random(777)
    for _ in range(200):
        n = rng.randint(3, 9)
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        g = Graph(n, rng.sample(pairs, rng.randint(0, len(pairs))))
        # pick any independent set of size 1..2 as witness
        deg = g.degrees()
        singles = sorted(range(n), key=lambda v: deg[v])
        w_vertices = (singles[0],)
        k = deg[singles[0]]
        w = ConstraintWitness(w_vertices, 1, k)
        before = z1_index(g)
        out, log, _ = shift_general_with_log(g, w)
        assert out.num_edges == g.num_edges
        assert z1_index(out) >= before
        assert z1_index(out) == before + sum(delta for _, delta in log)
        assert is_shifted_general(out, 1)
        # witness degree preserved exactly
        assert out.degrees()[0] == k
        # fixed point on a second run
        again, log2, _ = shift_general_with_log(
            out, ConstraintWitness((0,), 1, k)
        )
        assert again == out and log2 == []


def test_compress_log_replays_from_input():
    rng = random.Random(606)
    for _ in range(50):
        b = random_bipartite(rng, 16)
        out, log, row_order, col_order = left_compress_with_log(
            b, ConstraintWitness((0,), 1, 0)
        )
        edges = set(b.edges)
        for move, delta in log:
            assert move.removed in edges and move.added not in edges
            before = z1_index(BipartiteGraph(b.r, b.s, edges))
            edges.remove(move.removed)
            edges.add(move.added)
            assert z1_index(BipartiteGraph(b.r, b.s, edges)) == before + delta
        rr = {old: new for new, old in enumerate(row_order)}
        cc = {old: new for new, old in enumerate(col_order)}
        assert BipartiteGraph(b.r, b.s, {(rr[i], cc[j]) for i, j in edges}) == out


def test_shift_log_replays_from_input():
    rng = random.Random(607)
    for _ in range(50):
        n = rng.randint(3, 8)
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        g = Graph(n, rng.sample(pairs, rng.randint(0, len(pairs))))
        deg = g.degrees()
        v0 = min(range(n), key=lambda v: deg[v])
        out, log, order = shift_general_with_log(
            g, ConstraintWitness((v0,), 1, deg[v0])
        )
        replay = g
        for move, delta in log:
            assert swap_delta(replay, move) == delta
            replay = apply_swap(replay, move)
        relabel = {old: new for new, old in enumerate(order)}
        relabeled = Graph(n, {(relabel[u], relabel[v]) for u, v in replay.edges})
        assert relabeled == out


def test_analyze_omega_blocks():
    rng = random.Random(909)
    for _ in range(100):
        n = rng.randint(4, 9)
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        g = Graph(n, rng.sample(pairs, rng.randint(0, len(pairs))))
        deg = g.degrees()
        v0 = min(range(n), key=lambda v: deg[v])
        w = ConstraintWitness((v0,), 1, deg[v0])
        out = shift_general(g, w)
        analysis = analyze_omega(out, ConstraintWitness((0,), 1, deg[v0]))
        omega = analysis.omega
        assert 0 <= omega <= n - 1
        # the clique block is complete, the trailing block is empty
        for i, u in enumerate(analysis.clique_block):
            for v in analysis.clique_block[i + 1 :]:
                assert out.has_edge(u, v)
        for i, u in enumerate(analysis.independent_block):
            for v in analysis.independent_block[i + 1 :]:
                assert not out.has_edge(u, v)
