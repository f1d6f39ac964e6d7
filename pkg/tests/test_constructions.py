import pytest

from subspace_graph import constructions as C
from subspace_graph.counting import gaussian_binomial
from subspace_graph.linalg import span
from subspace_graph.solvers import Certificate
from subspace_graph.verify import verify_certificate


@pytest.mark.parametrize("n,q,size", [(3, 2, 7), (3, 3, 13), (5, 2, 186), (3, 4, 21)])
def test_half_dim_clique(G, n, q, size):
    c = C.half_dim_clique(G(n, q))
    assert c.value == size and c.verified


@pytest.mark.parametrize("n,q,colors", [(3, 2, 7), (3, 3, 13), (5, 2, 186)])
def test_matching_coloring_odd(G, n, q, colors):
    g = G(n, q)
    mc = C.matching_coloring_odd(g)
    assert mc.color_count == colors
    assert verify_certificate(g, mc.certificate)
    assert sorted(mc.matchings) == list(range(1, n // 2 + 1))


def test_odd_constructions_reject_even(G):
    with pytest.raises(ValueError):
        C.half_dim_clique(G(4, 2))
    with pytest.raises(ValueError):
        C.matching_coloring_odd(G(4, 2))


def test_even_clique_lower(G):
    assert C.even_clique_lower(G(4, 2)).value == 22
    assert C.even_clique_lower(G(4, 3)).value == 40 + 13
    with pytest.raises(ValueError):
        C.even_clique_lower(G(4, 2), line=G(4, 2).dim_offsets[2])
    with pytest.raises(ValueError):
        C.even_clique_lower(G(3, 2))


def test_even_clique_any_line(G):
    g = G(4, 2)
    sizes = {C.even_clique_lower(g, line=v).value for v in g.dim_class(1)}
    assert sizes == {22}
    assert C.even_clique_lower(g, line=span(g.field, [(0, 0, 1, 1)])).value == 22


@pytest.mark.parametrize("n,q,low,bound", [(4, 2, 15, 33), (4, 3, 40, 88)])
def test_even_coloring_upper(G, n, q, low, bound):
    g = G(n, q)
    mc = C.even_coloring_upper(g)
    assert mc.low_colors == low == sum(gaussian_binomial(n, i, q) for i in range(1, n // 2))
    assert mc.color_count <= bound
    assert mc.middle_method == "brooks"
    assert mc.middle_colors <= gaussian_binomial(n, n // 2, q) - q ** (n * n // 4) - 1
    assert verify_certificate(g, mc.certificate)


def test_even_coloring_g2_part(G):
    g = G(4, 2)
    mc = C.even_coloring_upper(g)
    outside = {mc.colors[v] for v in range(g.order) if g.dim_of(v) != 2}
    assert len(outside) == 15


@pytest.mark.parametrize("n,q", [(3, 2), (4, 2), (3, 3), (4, 3), (3, 4)])
def test_hyperplane_dominating_set(G, n, q):
    g = G(n, q)
    d = C.hyperplane_dominating_set(g)
    assert d.value == q + 1
    assert all(g.dim_of(v) == n - 1 for v in d.members)
    assert C.covers_space(g, d.members)


def test_hyperplane_every_choice_of_w(G):
    g = G(4, 2)
    for w in g.dim_class(2):
        assert C.hyperplane_dominating_set(g, w).value == 3


def test_hyperplane_preconditions(G):
    with pytest.raises(ValueError):
        C.hyperplane_dominating_set(G(2, 2))
    with pytest.raises(ValueError):
        C.hyperplane_dominating_set(G(4, 2), w=0)


def test_two_hyperplanes_do_not_cover(G):
    g = G(3, 2)
    d = C.hyperplane_dominating_set(g)
    assert not C.covers_space(g, d.members[:2])


@pytest.mark.parametrize("n,q,size", [(3, 2, 7), (4, 2, 15), (2, 3, 4), (3, 3, 13), (4, 3, 40)])
def test_lines_independent_set(G, n, q, size):
    c = C.lines_independent_set(G(n, q))
    assert c.value == size and c.verified


def test_verifier_rejects_bad_certificates(G):
    g = G(3, 2)
    lines = list(g.dim_class(1))
    planes = list(g.dim_class(2))
    assert not verify_certificate(g, Certificate("clique", lines[:2], 2), geometric=True)
    assert not verify_certificate(g, Certificate("independent-set", planes[:2], 2))
    assert not verify_certificate(g, Certificate("dominating-set", planes[:1], 1))
    assert not verify_certificate(g, Certificate("coloring", [0] * g.order, 1))
    assert not verify_certificate(g, Certificate("clique", planes[:3], 4))
