import random

import pytest

import oracles
from subspace_graph.graph import BipartiteDisjointGraph, BitGraph, ConsistencyError
from subspace_graph.solvers import (
    PROVEN,
    TIMEOUT,
    BOUNDED,
    Budget,
    BrooksPreconditionError,
    _brooks_cut_vertex,
    brooks_coloring,
    chromatic_number,
    dsatur_coloring,
    hopcroft_karp,
    hopcroft_karp_lists,
    max_clique,
    max_independent_set,
    min_dominating_set,
)
from subspace_graph.verify import verify_certificate, verify_coloring


def complete(n):
    return BitGraph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle(n):
    return BitGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star(m):
    return BitGraph.from_edges(m + 1, [(0, i) for i in range(1, m + 1)])


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return BitGraph.from_edges(10, outer + spokes + inner)


def cubic_with_bridge():
    # two copies of (K4 minus an edge, plus a vertex on the missing pair), joined by a bridge
    edges = []
    for off in (0, 5):
        a, b, c, d, x = (off + i for i in range(5))
        edges += [(a, c), (a, d), (b, c), (b, d), (c, d), (x, a), (x, b)]
    edges.append((4, 9))
    return BitGraph.from_edges(10, edges)


def test_small_examples():
    assert max_clique(complete(3)).value == 3
    assert chromatic_number(complete(4)).value == 4
    assert chromatic_number(cycle(6)).value == 2
    assert chromatic_number(cycle(7)).value == 3
    assert min_dominating_set(star(6)).value == 1
    assert max_independent_set(complete(5)).value == 1
    edgeless = BitGraph([0] * 4)
    assert min_dominating_set(edgeless).value == 4
    assert dsatur_coloring(edgeless).value == 1
    assert dsatur_coloring(complete(4)).value == 4


def test_empty_graph():
    g = BitGraph([])
    for fn in (max_clique, max_independent_set, min_dominating_set, chromatic_number):
        r = fn(g)
        assert (r.value, r.status) == (0, PROVEN)


def test_intersection_graph_examples(G):
    assert max_clique(G(3, 2)).value == 7
    assert max_clique(G(3, 3)).value == 13
    assert chromatic_number(G(3, 2)).value == 7
    assert min_dominating_set(G(3, 2)).value == 3
    assert min_dominating_set(G(4, 2)).value == 3
    assert max_independent_set(G(3, 2)).value == 7
    assert max_independent_set(G(4, 2)).value == 15


@pytest.mark.parametrize("seed", range(60))
def test_against_exhaustive(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 12)
    adj = oracles.random_graph(rng, n, rng.choice([0.2, 0.5, 0.8]))
    g = BitGraph(adj)
    results = {
        "clique": (max_clique(g), oracles.brute_clique(adj)),
        "independent": (max_independent_set(g), oracles.brute_independence(adj)),
        "dominating": (min_dominating_set(g), oracles.brute_domination(adj)),
        "chromatic": (chromatic_number(g), oracles.brute_chromatic(adj)),
    }
    for name, (res, want) in results.items():
        assert res.status == PROVEN, name
        assert res.value == want, name
        assert verify_certificate(g, res.certificate), name
    assert results["clique"][0].value <= results["chromatic"][0].value
    assert results["independent"][0].value == max_clique(g.complement()).value


@pytest.mark.parametrize("n,q", [(2, 2), (2, 3), (5, 2)])
def test_domination_and_independence_outside_main_grid(G, n, q):
    g = G(n, q)
    a = max_independent_set(g, 60)
    assert a.status == PROVEN and a.value == (q**n - 1) // (q - 1)
    assert verify_certificate(g, a.certificate)
    d = min_dominating_set(g, 60)
    assert d.status == PROVEN and d.value == q + 1


def test_timeout_keeps_valid_bounds(G):
    g = G(4, 3)
    r = chromatic_number(g, Budget(None, max_nodes=50))
    assert r.status in (BOUNDED, TIMEOUT)
    assert r.lo <= r.hi and r.lo >= 53
    assert verify_certificate(g, r.certificate)
    r = max_clique(G(5, 2), Budget(None, max_nodes=1))
    assert r.lo <= 186 <= r.hi


def test_node_cap_is_deterministic(G):
    a = chromatic_number(G(4, 3), Budget(None, max_nodes=200))
    b = chromatic_number(G(4, 3), Budget(None, max_nodes=200))
    assert (a.lo, a.hi, a.certificate.members) == (b.lo, b.hi, b.certificate.members)


def test_hopcroft_karp_single_edge():
    assert hopcroft_karp_lists([[0]], 1) == [0]
    b = BipartiteDisjointGraph(1, [0], [1], [[0]], 1)
    assert hopcroft_karp(b).value == 1


def test_hopcroft_karp_maximum():
    # left 0,1 both only see right 0; left 2 sees 0,1
    assert sorted(x for x in hopcroft_karp_lists([[0], [0], [0, 1]], 2) if x >= 0) == [0, 1]


def test_hopcroft_karp_long_augmenting_path():
    # a chain that forces many augmentations
    n = 300
    adj = [[i, i + 1] if i + 1 < n else [i] for i in range(n)]
    m = hopcroft_karp_lists(adj, n)
    assert sorted(m) == list(range(n))


def test_hopcroft_karp_rejects_imperfect_regular():
    # claims 1-regular, but both left vertices only reach right 0
    b = BipartiteDisjointGraph(1, [0, 1], [2, 3], [[0], [0]], 1)
    with pytest.raises(ConsistencyError):
        hopcroft_karp(b)


@pytest.mark.parametrize("n,q,t,size", [(3, 2, 1, 7), (5, 2, 2, 155), (5, 2, 1, 31)])
def test_perfect_matchings(G, n, q, t, size):
    from subspace_graph.graph import disjointness_bipartite
    from subspace_graph.verify import verify_matching

    g = G(n, q)
    m = hopcroft_karp(disjointness_bipartite(g, t))
    assert m.value == size
    assert verify_matching(g, m.members, t)


def test_brooks_preconditions():
    with pytest.raises(BrooksPreconditionError, match="complete"):
        brooks_coloring(complete(4))
    with pytest.raises(BrooksPreconditionError, match="odd cycle"):
        brooks_coloring(cycle(5))
    with pytest.raises(BrooksPreconditionError, match="disconnected"):
        brooks_coloring(BitGraph.from_edges(4, [(0, 1), (2, 3)]))


@pytest.mark.parametrize("force", [False, True])
def test_brooks_examples(force):
    c = brooks_coloring(cycle(6), force_constructive=force)
    assert c.value == 2 and verify_coloring(cycle(6), c.members)
    p = petersen()
    c = brooks_coloring(p, force_constructive=force)
    assert c.value <= 3 and verify_coloring(p, c.members)
    g = cubic_with_bridge()
    c = brooks_coloring(g, force_constructive=force)
    assert c.value <= 3 and verify_coloring(g, c.members)


def test_brooks_cut_vertex_branch():
    g = cubic_with_bridge()
    colors = _brooks_cut_vertex(g, 3)
    assert max(colors) < 3 and verify_coloring(g, colors)


@pytest.mark.parametrize("seed", range(40))
def test_brooks_constructive_random(seed):
    rng = random.Random(seed)
    n = rng.randint(4, 14)
    g = BitGraph(oracles.random_graph(rng, n, rng.choice([0.3, 0.5, 0.7])))
    if not g.is_connected() or g.is_complete() or (g.is_cycle() and n % 2):
        pytest.skip("Brooks hypotheses fail")
    c = brooks_coloring(g, force_constructive=True)
    assert c.value <= g.max_degree()
    assert verify_coloring(g, c.members)


def test_brooks_middle_class(G):
    from subspace_graph.graph import induced_middle

    g1, _ = induced_middle(G(4, 2))
    for force in (False, True):
        c = brooks_coloring(g1, force_constructive=force)
        assert c.value <= 18 and verify_coloring(g1, c.members)
    assert dsatur_coloring(g1).value <= 18
