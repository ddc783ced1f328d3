"""Levi (incidence) graph of a Möbius pair, DOT export and adjacency checks."""
from __future__ import annotations

from dataclasses import dataclass, field

from .config import ElementId, MobiusPair, element_at


@dataclass(frozen=True)
class LeviGraph:
    """Bipartite incidence graph on 4n vertices in the order a, b, A, B.

    ``adj[v]`` is the neighbourhood of vertex v as a bit-set over vertex positions.
    """

    n: int
    adj: tuple[int, ...]

    @property
    def vertices(self) -> list[ElementId]:
        return [element_at(v, self.n) for v in range(4 * self.n)]

    @property
    def point_vertices(self) -> range:
        return range(0, 2 * self.n)

    @property
    def block_vertices(self) -> range:
        return range(2 * self.n, 4 * self.n)

    def is_point(self, v: int) -> bool:
        return v < 2 * self.n

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def rank(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        """(block, point) pairs, sorted."""
        out = []
        for b in self.block_vertices:
            mask = self.adj[b]
            for p in range(4 * self.n):
                if mask >> p & 1:
                    out.append((b, p))
        return out

    def toggled(self, u: int, v: int) -> "LeviGraph":
        """Copy with the edge u--v added or removed."""
        adj = list(self.adj)
        adj[u] ^= 1 << v
        adj[v] ^= 1 << u
        return LeviGraph(self.n, tuple(adj))

    def name(self, v: int) -> str:
        return str(element_at(v, self.n))


def levi_graph(M: MobiusPair) -> LeviGraph:
    n = M.n
    adj = [0] * (4 * n)
    for b, mask in enumerate(M.blocks):
        bv = 2 * n + b
        adj[bv] = mask
        for p in range(2 * n):
            if mask >> p & 1:
                adj[p] |= 1 << bv
    return LeviGraph(n, tuple(adj))


def export_dot(G: LeviGraph, name: str = "levi") -> str:
    lines = [f"graph {name} {{"]
    for v in G.point_vertices:
        lines.append(f"  {G.name(v)} [shape=circle];")
    for v in G.block_vertices:
        lines.append(f"  {G.name(v)} [shape=box];")
    for b, p in G.edges():
        lines.append(f"  {G.name(b)} -- {G.name(p)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


@dataclass
class AdjacencyReport:
    ok: bool
    violations: list[str] = field(default_factory=list)


def check_adjacency(G: LeviGraph) -> AdjacencyReport:
    """Check the adjacency pattern of the two simplices in the Levi graph.

    (i) inside one simplex every point-vertex misses exactly one block-vertex and
    vice versa; (ii) every point-vertex of one simplex meets exactly one
    block-vertex of the other and vice versa.  Also flags non-bipartite edges.
    """
    n = G.n
    side = {
        "a": range(0, n),
        "b": range(n, 2 * n),
        "A": range(2 * n, 3 * n),
        "B": range(3 * n, 4 * n),
    }
    violations: list[str] = []
    for u in range(4 * n):
        for v in range(u + 1, 4 * n):
            if G.adjacent(u, v) and G.is_point(u) == G.is_point(v):
                violations.append(f"non-bipartite edge {G.name(u)} -- {G.name(v)}")
        for v in range(4 * n):
            if G.adjacent(u, v) != G.adjacent(v, u):
                violations.append(f"asymmetric adjacency {G.name(u)} / {G.name(v)}")

    def check(xs, ys, expected_miss: int | None, expected_hit: int | None, clause: str) -> list[int]:
        bad = []
        for x in xs:
            hits = [y for y in ys if G.adjacent(x, y)]
            misses = [y for y in ys if not G.adjacent(x, y)]
            if expected_miss is not None and len(misses) != expected_miss:
                names = ", ".join(G.name(y) for y in misses)
                violations.append(
                    f"({clause}) {G.name(x)} not adjacent to [{names}], expected exactly {expected_miss}"
                )
                bad.append(x)
            if expected_hit is not None and len(hits) != expected_hit:
                names = ", ".join(G.name(y) for y in hits)
                violations.append(
                    f"({clause}) {G.name(x)} adjacent to [{names}], expected exactly {expected_hit}"
                )
                bad.append(x)
        return bad

    def pair_up(pts, blks, clause: str):
        # a single added or removed edge shows up as one bad vertex on each side
        for p, b in zip(pts, blks):
            violations.append(f"({clause}) suspect pair {G.name(b)} / {G.name(p)}")

    for pts, blks in (("a", "A"), ("b", "B")):
        bp = check(side[pts], side[blks], 1, None, "i")
        bb = check(side[blks], side[pts], 1, None, "i")
        pair_up(bp, bb, "i")
    for pts, blks in (("a", "B"), ("b", "A")):
        bp = check(side[pts], side[blks], None, 1, "ii")
        bb = check(side[blks], side[pts], None, 1, "ii")
        pair_up(bp, bb, "ii")
    return AdjacencyReport(not violations, violations)
