import pytest
from hypothesis import given

from conftest import perms
from mobiuspair.config import build
from mobiuspair.levi import check_adjacency, export_dot, levi_graph
from mobiuspair.perm import conjugacy_class_reps, parse_permutation


def graph(n, text):
    return levi_graph(build(n, parse_permutation(text, n)))


def test_vertex_and_edge_counts():
    G = graph(4, "1 2 3 4")
    assert len(G.vertices) == 16 and len(G.edges()) == 32
    G = graph(3, "1 2 3")
    assert len(G.vertices) == 12 and all(G.rank(v) == 3 for v in range(12))
    G = graph(5, "(1 2 3 4 5)")
    assert len(G.vertices) == 20 and all(G.rank(v) == 5 for v in range(20))


def test_identity_adjacency():
    G = graph(4, "1 2 3 4")
    # position order a1..a4, b1..b4, A1..A4, B1..B4
    assert G.adjacent(8, 4) and not G.adjacent(8, 0)
    assert G.adjacent(12, 0) and not G.adjacent(12, 1)


@given(perms(min_n=3, max_n=8))
def test_levi_invariants(phi):
    M = build(phi.n, phi)
    G = levi_graph(M)
    n = phi.n
    assert len(G.edges()) == 2 * n * n
    for p in M.points():
        for b in M.block_ids():
            u, v = M.point_index(p), 2 * n + M.block_index(b)
            assert G.adjacent(u, v) == G.adjacent(v, u) == M.incident(p, b)
    for u in range(4 * n):
        assert G.rank(u) == n
        for v in range(4 * n):
            if G.is_point(u) == G.is_point(v):
                assert not G.adjacent(u, v)
    # inside one simplex: bipartite complement of a perfect matching
    for pts, blks in ((range(0, n), range(2 * n, 3 * n)), (range(n, 2 * n), range(3 * n, 4 * n))):
        for p in pts:
            assert sum(not G.adjacent(p, b) for b in blks) == 1
        for b in blks:
            assert sum(not G.adjacent(p, b) for p in pts) == 1


def test_dot_export():
    text = export_dot(graph(3, "1 2 3"))
    assert text.startswith("graph levi {\n") and text.endswith("}\n")
    assert sum(" -- " in line for line in text.splitlines()) == 18
    assert "  a1 [shape=circle];" in text and "  B3 [shape=box];" in text
    assert "  B1 -- a2;" in export_dot(graph(4, "(1 2 3 4)"))


def test_dot_is_stable():
    assert export_dot(graph(5, "(1 2)(3 4 5)")) == export_dot(graph(5, "(1 2)(3 4 5)"))


@pytest.mark.parametrize("n", range(3, 9))
def test_adjacency_pattern_holds_for_every_class(n):
    for rep in conjugacy_class_reps(n):
        report = check_adjacency(levi_graph(build(n, rep)))
        assert report.ok, report.violations


def test_removed_edge_is_reported():
    G = graph(4, "1 2 3 4")
    broken = G.toggled(8, 4)  # A1 -- b1
    report = check_adjacency(broken)
    assert not report.ok
    assert "(ii) suspect pair A1 / b1" in report.violations


def test_extra_edge_is_reported():
    G = graph(4, "1 2 3 4")
    report = check_adjacency(G.toggled(8, 0))  # A1 -- a1
    assert not report.ok
    assert "(i) suspect pair A1 / a1" in report.violations
    report = check_adjacency(G.toggled(0, 1))  # a1 -- a2
    assert any("non-bipartite" in v for v in report.violations)
