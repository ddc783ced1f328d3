"""Brute-force ground truth for Möbius pairs.

Nothing in here reads phi or the (t, k, i, eps) labeling: isomorphisms,
decompositions and block cycles are all found from incidence data alone, so
the results can be used to check the formula-driven code in ``autgrp`` and
``analysis``.

The isomorphism engine is a small individualization-refinement search over
Levi graphs: colour refinement to an equitable partition, then branch on the
vertices of the first smallest non-trivial cell.  Refinement traces of both
graphs must agree along a branch, and every leaf is checked edge by edge.
"""
from __future__ import annotations

from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .config import ElementId, MobiusPair, element_at
from .levi import levi_graph


@dataclass(frozen=True, order=True)
class IsoMap:
    """Incidence-preserving bijection, as point and block index maps (0-based,
    a/A before b/B)."""

    point_map: tuple[int, ...]
    block_map: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.point_map) // 2

    def as_tuple(self) -> tuple[int, ...]:
        """Permutation of the 4n element positions a, b, A, B."""
        off = 2 * self.n
        return self.point_map + tuple(off + b for b in self.block_map)

    @classmethod
    def from_tuple(cls, perm: Sequence[int]) -> "IsoMap":
        off = len(perm) // 2
        return cls(tuple(perm[:off]), tuple(x - off for x in perm[off:]))

    def __call__(self, e: ElementId) -> ElementId:
        from .config import element_index

        return element_at(self.as_tuple()[element_index(e, self.n)], self.n)

    def as_dict(self) -> dict[ElementId, ElementId]:
        n = self.n
        return {element_at(v, n): element_at(w, n) for v, w in enumerate(self.as_tuple())}

    def compose(self, other: "IsoMap") -> "IsoMap":
        """self after other."""
        return IsoMap(
            tuple(self.point_map[x] for x in other.point_map),
            tuple(self.block_map[x] for x in other.block_map),
        )

    def inverse(self) -> "IsoMap":
        pm = [0] * len(self.point_map)
        bm = [0] * len(self.block_map)
        for i, x in enumerate(self.point_map):
            pm[x] = i
        for i, x in enumerate(self.block_map):
            bm[x] = i
        return IsoMap(tuple(pm), tuple(bm))


# -- colour refinement ---------------------------------------------------------------


def _mask(cell: Sequence[int]) -> int:
    m = 0
    for v in cell:
        m |= 1 << v
    return m


def _refine(adj: Sequence[int], cells: dict[int, list[int]], queue_starts) -> tuple[dict, tuple] | None:
    """Refine an ordered partition to equitability.

    Cells are keyed by their start position in the ordering, which stays an
    isomorphism-invariant name as cells split.  Returns the refined cells and a
    trace of every split; two graphs in corresponding states produce equal
    traces.
    """
    cells = {s: list(c) for s, c in cells.items()}
    queue = deque(sorted(queue_starts))
    queued = set(queue)
    trace = []
    while queue:
        s = queue.popleft()
        queued.discard(s)
        W = _mask(cells[s])
        for start in sorted(cells):
            cell = cells[start]
            if len(cell) == 1:
                continue
            counts = [(adj[v] & W).bit_count() for v in cell]
            first = counts[0]
            if all(c == first for c in counts):
                continue
            groups: dict[int, list[int]] = {}
            for v, c in zip(cell, counts):
                groups.setdefault(c, []).append(v)
            pos = start
            shape = []
            for c in sorted(groups):
                frag = groups[c]
                cells[pos] = frag
                shape.append((c, len(frag)))
                if pos not in queued:
                    queue.append(pos)
                    queued.add(pos)
                pos += len(frag)
            trace.append((s, start, tuple(shape)))
    return cells, tuple(trace)


def _individualize(cells: dict[int, list[int]], start: int, v: int) -> dict[int, list[int]]:
    out = dict(cells)
    cell = cells[start]
    out[start] = [v]
    out[start + 1] = [x for x in cell if x != v]
    return out


def _target_cell(cells: dict[int, list[int]]) -> int | None:
    best = None
    for start in sorted(cells):
        size = len(cells[start])
        if size > 1 and (best is None or size < len(cells[best])):
            best = start
    return best


def _is_iso(adj1, adj2, m: Sequence[int]) -> bool:
    for v, nb in enumerate(adj1):
        img = 0
        while nb:
            low = nb & -nb
            img |= 1 << m[low.bit_length() - 1]
            nb ^= low
        if img != adj2[m[v]]:
            return False
    return True


class _Search:
    def __init__(self, adj1, adj2, limit):
        self.adj1 = adj1
        self.adj2 = adj2
        self.limit = limit
        self.found: list[tuple[int, ...]] = []

    def full(self) -> bool:
        return self.limit is not None and len(self.found) >= self.limit

    def run(self, c1, c2, only=None):
        start = _target_cell(c1)
        if start is None:
            m = [0] * len(self.adj1)
            for s, cell in c1.items():
                m[cell[0]] = c2[s][0]
            if _is_iso(self.adj1, self.adj2, m):
                self.found.append(tuple(m))
            return
        v = c1[start][0]
        cells1, trace1 = _refine(self.adj1, _individualize(c1, start, v), (start, start + 1))
        for w in c2[start] if only is None else only:
            cells2, trace2 = _refine(self.adj2, _individualize(c2, start, w), (start, start + 1))
            if trace1 == trace2:
                self.run(cells1, cells2)
            if self.full():
                return


def _search(adj1, adj2, init_cells, limit=None, workers=1) -> list[tuple[int, ...]]:
    """All isomorphisms adj1 -> adj2 respecting the initial ordered partition,
    as vertex maps, sorted."""
    starts = tuple(init_cells)
    c1, t1 = _refine(adj1, init_cells, starts)
    c2, t2 = _refine(adj2, init_cells, starts)
    if t1 != t2:
        return []
    start = _target_cell(c1)
    if start is None or (workers <= 1 or limit is not None):
        s = _Search(adj1, adj2, limit)
        s.run(c1, c2)
        return sorted(s.found)

    def branch(w):
        s = _Search(adj1, adj2, None)
        s.run(c1, c2, only=[w])
        return s.found

    results: list[tuple[int, ...]] = []
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for found in pool.map(branch, c2[start]):
            results.extend(found)
    return sorted(results)


def _levi_init(n: int) -> dict[int, list[int]]:
    return {0: list(range(2 * n)), 2 * n: list(range(2 * n, 4 * n))}


def find_isomorphisms(M1: MobiusPair, M2: MobiusPair, limit: int | None = None, workers: int = 1) -> list[IsoMap]:
    """Isomorphisms M1 -> M2 (points to points, blocks to blocks), sorted by point map."""
    if M1.n != M2.n:
        return []
    adj1 = levi_graph(M1).adj
    adj2 = levi_graph(M2).adj
    maps = _search(adj1, adj2, _levi_init(M1.n), limit=limit, workers=workers)
    return sorted(IsoMap.from_tuple(m) for m in maps)


def automorphisms(M: MobiusPair, workers: int = 1) -> list[IsoMap]:
    return find_isomorphisms(M, M, workers=workers)


def is_automorphism(M: MobiusPair, f: IsoMap) -> bool:
    if sorted(f.point_map) != list(range(2 * M.n)) or sorted(f.block_map) != list(range(2 * M.n)):
        return False
    for b, mask in enumerate(M.blocks):
        img = 0
        for p in range(2 * M.n):
            if mask >> p & 1:
                img |= 1 << f.point_map[p]
        if img != M.blocks[f.block_map[b]]:
            return False
    return True


# -- decompositions into two mutually inscribed simplices ---------------------------------


@dataclass(frozen=True)
class RawDecomposition:
    """Index-level decomposition: point/block index tuples and omission maps
    (block index -> omitted point index)."""

    P: tuple[int, ...]
    LP: tuple[int, ...]
    Q: tuple[int, ...]
    LQ: tuple[int, ...]
    omit_P: tuple[tuple[int, int], ...]
    omit_Q: tuple[tuple[int, int], ...]


def _side(blocks: Sequence[int], side_mask: int, size: int):
    chosen = [b for b, mask in enumerate(blocks) if (mask & side_mask).bit_count() == size - 1]
    if len(chosen) != size:
        return None
    omit = []
    omitted = 0
    for b in chosen:
        miss = side_mask & ~blocks[b]
        if miss.bit_count() != 1 or omitted & miss:
            return None
        omitted |= miss
        omit.append((b, miss.bit_length() - 1))
    if omitted != side_mask:
        return None
    return tuple(chosen), tuple(omit)


def decompositions_raw(num_points: int, blocks: Sequence[int]) -> list[RawDecomposition]:
    """Every split of the points into two n-sets P, Q (P holding point 0) such
    that exactly n blocks meet P in n-1 points, exactly n blocks meet Q in n-1
    points, these block sets are complementary, and each side's blocks omit
    distinct points of that side."""
    if num_points % 2 or len(blocks) != num_points:
        return []
    n = num_points // 2
    full = (1 << num_points) - 1
    out = []
    for rest in combinations(range(1, num_points), n - 1):
        P = 1
        for p in rest:
            P |= 1 << p
        Q = full ^ P
        left = _side(blocks, P, n)
        if left is None:
            continue
        right = _side(blocks, Q, n)
        if right is None or set(left[0]) & set(right[0]):
            continue
        if any((blocks[b] & Q).bit_count() != 1 for b in left[0]):
            continue
        if any((blocks[b] & P).bit_count() != 1 for b in right[0]):
            continue
        out.append(
            RawDecomposition(
                P=tuple(p for p in range(num_points) if P >> p & 1),
                LP=left[0],
                Q=tuple(p for p in range(num_points) if Q >> p & 1),
                LQ=right[0],
                omit_P=left[1],
                omit_Q=right[1],
            )
        )
    return out


@dataclass(frozen=True)
class DecompositionPair:
    P: tuple[ElementId, ...]
    LP: tuple[ElementId, ...]
    Q: tuple[ElementId, ...]
    LQ: tuple[ElementId, ...]
    omit_P: tuple[tuple[ElementId, ElementId], ...]  # (block, omitted point)
    omit_Q: tuple[tuple[ElementId, ElementId], ...]

    def key(self) -> tuple[frozenset, frozenset]:
        return frozenset(self.P), frozenset(self.LP)

    def sides(self) -> frozenset:
        """Unordered pair of (points, blocks) sides."""
        return frozenset({(frozenset(self.P), frozenset(self.LP)), (frozenset(self.Q), frozenset(self.LQ))})

    def is_defining(self, n: int) -> bool:
        return set(self.P) == {ElementId("a", i) for i in range(1, n + 1)} and set(self.LP) == {
            ElementId("A", i) for i in range(1, n + 1)
        }

    def to_dict(self) -> dict:
        return {
            "P": [str(x) for x in self.P],
            "LP": [str(x) for x in self.LP],
            "Q": [str(x) for x in self.Q],
            "LQ": [str(x) for x in self.LQ],
        }


def _named_decomposition(M: MobiusPair, d: RawDecomposition) -> DecompositionPair:
    pt, bl = M.point_at, M.block_at
    return DecompositionPair(
        P=tuple(pt(p) for p in d.P),
        LP=tuple(bl(b) for b in d.LP),
        Q=tuple(pt(p) for p in d.Q),
        LQ=tuple(bl(b) for b in d.LQ),
        omit_P=tuple((bl(b), pt(p)) for b, p in d.omit_P),
        omit_Q=tuple((bl(b), pt(p)) for b, p in d.omit_Q),
    )


def enumerate_decompositions(M: MobiusPair) -> list[DecompositionPair]:
    """All decompositions of M into two mutually inscribed n-simplices, each
    listed once with a1 on the P side.  The defining pair comes first."""
    found = [_named_decomposition(M, d) for d in decompositions_raw(2 * M.n, M.blocks)]
    return sorted(found, key=lambda d: (not d.is_defining(M.n), [x.sort_key() for x in d.P]))


def apply_to_decomposition(M: MobiusPair, f: IsoMap, d: DecompositionPair) -> tuple[frozenset, frozenset]:
    """Image of d's P side under f, normalized so the returned side holds a1."""
    P = frozenset(f(x) for x in d.P)
    LP = frozenset(f(x) for x in d.LP)
    if ElementId("a", 1) not in P:
        P = frozenset(f(x) for x in d.Q)
        LP = frozenset(f(x) for x in d.LQ)
    return P, LP


# -- block cycles --------------------------------------------------------------------


def find_block_cycles(M: MobiusPair) -> tuple[int, ...]:
    """Multiset (sorted) of half-lengths of closed block sequences
    A_i1, B_i1, ..., A_ik, B_ik (k >= 2, distinct indices) whose cyclically
    consecutive members meet in exactly one point, plus a 1 for every i with
    A_i and B_i disjoint."""
    n = M.n
    A = M.blocks[:n]
    B = M.blocks[n:]

    def meets_once(x: int, y: int) -> bool:
        return (x & y).bit_count() == 1

    lengths = [1 for i in range(n) if A[i] & B[i] == 0]
    for first in range(n):
        if not meets_once(A[first], B[first]):
            continue

        # cycles are listed once, from their smallest index
        def extend(path: list[int]):
            last = path[-1]
            for j in range(first + 1, n):
                if j in path or not meets_once(B[last], A[j]) or not meets_once(A[j], B[j]):
                    continue
                path.append(j)
                if len(path) >= 2 and meets_once(B[j], A[first]):
                    lengths.append(len(path))
                extend(path)
                path.pop()

        extend([first])
    return tuple(sorted(lengths))


# -- recognition of raw structures ---------------------------------------------------


@dataclass(frozen=True)
class RawRecognition:
    n: int
    phi: tuple[int, ...]  # one-line images, 1-based
    point_labels: dict  # raw point index -> point index of M(n, phi)
    block_labels: dict  # raw block index -> block index of M(n, phi)


def recognize_raw(num_points: int, blocks: Sequence[int]) -> RawRecognition | None:
    """Identify a raw structure with some M(n, phi), or return None.

    Tries decompositions with raw point 0 on the P side in order; labels P as
    the a-points by increasing raw index, reads b_i as the unique Q point of
    the block omitting a_i, and phi from which a-point each B-block holds.
    The labeling is accepted only if it reproduces the construction exactly.
    """
    from .config import build
    from .perm import Permutation

    if num_points < 6 or num_points % 2 or len(blocks) != num_points:
        return None
    n = num_points // 2
    if len(set(blocks)) != len(blocks) or any(m.bit_count() != n for m in blocks):
        return None
    for d in decompositions_raw(num_points, blocks):
        a_label = {p: i for i, p in enumerate(d.P)}  # raw point -> a-index (0-based)
        A_of = {a_label[p]: b for b, p in d.omit_P}
        Qmask = _mask(d.Q)
        b_label = {}
        for i in range(n):
            q = blocks[A_of[i]] & Qmask
            b_label[q.bit_length() - 1] = i
        if len(b_label) != n:
            continue
        B_of = {b_label[p]: b for b, p in d.omit_Q}
        Pmask = _mask(d.P)
        images = []
        for i in range(n):
            a = blocks[B_of[i]] & Pmask
            images.append(a_label[a.bit_length() - 1] + 1)
        if sorted(images) != list(range(1, n + 1)):
            continue
        M = build(n, Permutation(tuple(images)))
        point_labels = {p: i for p, i in a_label.items()}
        point_labels.update({p: n + i for p, i in b_label.items()})
        block_labels = {b: i for i, b in A_of.items()}
        block_labels.update({b: n + i for i, b in B_of.items()})
        ok = True
        for raw_b, mask in enumerate(blocks):
            img = 0
            for p in range(num_points):
                if mask >> p & 1:
                    img |= 1 << point_labels[p]
            if img != M.blocks[block_labels[raw_b]]:
                ok = False
                break
        if ok:
            return RawRecognition(n, tuple(images), point_labels, block_labels)
    return None


# -- subpairs by deletion -------------------------------------------------------------


@dataclass(frozen=True)
class SubpairWitness:
    deleted_points: tuple[ElementId, ...]
    deleted_blocks: tuple[ElementId, ...]
    cycle_type: tuple[int, ...]


def find_subpairs(M: MobiusPair, k: int, first_only: bool = False) -> list[SubpairWitness]:
    """Every way of deleting 2(n-k) points and 2(n-k) blocks so that the rest,
    blocks restricted to the remaining points, is a Möbius k-pair."""
    from .perm import Permutation

    n = M.n
    drop = n - k
    if not 3 <= k < n:
        return []
    out = []
    for dead in combinations(range(2 * n), 2 * drop):
        dead_mask = _mask(dead)
        keep = [p for p in range(2 * n) if not dead_mask >> p & 1]
        # a surviving block loses exactly n - k points
        cands = [b for b, mask in enumerate(M.blocks) if (mask & dead_mask).bit_count() == drop]
        if len(cands) < 2 * k:
            continue
        pos = {p: j for j, p in enumerate(keep)}
        squeezed = {}
        for b in cands:
            m = 0
            for p in keep:
                if M.blocks[b] >> p & 1:
                    m |= 1 << pos[p]
            squeezed[b] = m
        for kept_blocks in combinations(cands, 2 * k):
            sub = [squeezed[b] for b in kept_blocks]
            if any(sum(m >> j & 1 for m in sub) != k for j in range(2 * k)):
                continue
            rec = recognize_raw(2 * k, sub)
            if rec is None:
                continue
            dead_blocks = [b for b in range(2 * n) if b not in kept_blocks]
            out.append(
                SubpairWitness(
                    tuple(M.point_at(p) for p in dead),
                    tuple(M.block_at(b) for b in dead_blocks),
                    Permutation(rec.phi).cycle_type(),
                )
            )
            if first_only:
                return out
    return out
