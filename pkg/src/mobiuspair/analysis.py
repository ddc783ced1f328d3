"""Parametric invariants of M(n, phi): block intersections, point-pair counts,
closed block paths along cycles of phi, isomorphism via conjugacy, special
decompositions, subpairs by deletion, and recognition of raw structures."""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations

from .config import ConfigError, ElementId, MobiusPair, build, element_at, element_index, is_isomorphism, relabel_map
from .oracle import DecompositionPair, IsoMap, RawRecognition, recognize_raw
from .perm import Permutation, are_conjugate, invariant_subsets


class AnalysisError(ValueError):
    pass


# -- block intersections -----------------------------------------------------------


@dataclass
class IntersectionProfile:
    n: int
    counts: dict[int, int]  # intersection size -> number of unordered block pairs
    cases: dict[str, int]  # "i", "ii", "iii" -> number of (A_i, B_j) pairs
    pair_case: dict[tuple[int, int], str] = field(repr=False)  # (i, j) -> case of (A_i, B_j)

    @property
    def total_pairs(self) -> int:
        return sum(self.counts.values())

    def to_dict(self) -> dict:
        return {
            "counts": {str(k): v for k, v in sorted(self.counts.items())},
            "cases": dict(sorted(self.cases.items())),
        }


def _ab_case(phi: Permutation, i: int, j: int) -> tuple[str, int]:
    """Case and predicted |A_i & B_j|."""
    if phi(j) == i == j:
        return "i", 0
    if (phi(j) == i) != (i == j):
        return "ii", 1
    return "iii", 2


def intersection_profile(M: MobiusPair) -> IntersectionProfile:
    n = M.n
    counts: Counter[int] = Counter()
    for x, y in combinations(M.blocks, 2):
        counts[(x & y).bit_count()] += 1
    for half in (M.blocks[:n], M.blocks[n:]):
        for x, y in combinations(half, 2):
            if (x & y).bit_count() != n - 2:
                raise AnalysisError(f"two blocks of one simplex of {M} meet in {(x & y).bit_count()} points")
    cases: Counter[str] = Counter()
    pair_case = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            case, size = _ab_case(M.phi, i, j)
            got = (M.blocks[i - 1] & M.blocks[n + j - 1]).bit_count()
            if got != size:
                raise AnalysisError(f"|A{i} & B{j}| = {got} in {M}, case ({case}) predicts {size}")
            cases[case] += 1
            pair_case[(i, j)] = case
    return IntersectionProfile(n, dict(counts), dict(cases), pair_case)


def block_intersection(M: MobiusPair, x: ElementId, y: ElementId) -> list[ElementId]:
    mask = M.blocks[M.block_index(x)] & M.blocks[M.block_index(y)]
    return [M.point_at(p) for p in range(2 * M.n) if mask >> p & 1]


def blocks_through_points(M: MobiusPair, x: ElementId, y: ElementId) -> int:
    if x == y:
        raise AnalysisError(f"need two distinct points, got {x} twice")
    px, py = M.point_index(x), M.point_index(y)
    return sum(1 for mask in M.blocks if mask >> px & 1 and mask >> py & 1)


# -- block paths along cycles of phi -------------------------------------------------


def cycle_path(M: MobiusPair, cycle: list[int]) -> list[ElementId]:
    """A_i1, B_i1, ..., A_ik, B_ik for a cycle (i1 ... ik) of phi, k >= 2.

    Each pair of cyclically consecutive blocks is checked to meet in exactly
    one point."""
    k = len(cycle)
    if k < 2:
        raise AnalysisError("a fixed point of phi gives no block path: A_i and B_i are disjoint")
    if len(set(cycle)) != k or any(not 1 <= i <= M.n for i in cycle):
        raise AnalysisError(f"{cycle} is not a cycle of {M.phi}")
    if any(M.phi(cycle[s]) != cycle[(s + 1) % k] for s in range(k)):
        raise AnalysisError(f"{cycle} is not a cycle of {M.phi}")
    path = []
    for i in cycle:
        path += [ElementId("A", i), ElementId("B", i)]
    for s in range(len(path)):
        x, y = path[s], path[(s + 1) % len(path)]
        meet = block_intersection(M, x, y)
        if len(meet) != 1:
            raise AssertionError(f"{x} and {y} meet in {len(meet)} points in {M}")
    return path


# -- isomorphisms via conjugacy ---------------------------------------------------------


def isomorphic(M1: MobiusPair, M2: MobiusPair) -> IsoMap | None:
    """x_i -> x_alpha(i) for a conjugating alpha, or None when the cycle types differ."""
    if M1.n != M2.n:
        return None
    alpha = are_conjugate(M1.phi, M2.phi)
    if alpha is None:
        return None
    F = relabel_map(alpha)
    if not is_isomorphism(M1, M2, F):
        raise AssertionError(f"relabeling by {alpha} is not an isomorphism {M1} -> {M2}")
    n = M1.n
    return IsoMap.from_tuple([element_index(F[e], n) for e in M1.elements()])


# -- special decompositions --------------------------------------------------------------


def _check_simplex_pair(M: MobiusPair, d: DecompositionPair) -> None:
    for pts, blks, other in ((d.P, d.LP, d.Q), (d.Q, d.LQ, d.P)):
        omitted = set()
        for b in blks:
            inside = set(M.block_points(b))
            miss = [p for p in pts if p not in inside]
            if len(miss) != 1:
                raise AssertionError(f"{b} misses {len(miss)} points of its simplex in {M}")
            omitted.add(miss[0])
            if len([q for q in other if q in inside]) != 1:
                raise AssertionError(f"{b} does not hold exactly one point of the other simplex in {M}")
        if omitted != set(pts):
            raise AssertionError(f"blocks of a simplex of {M} do not omit distinct points")


def _decomposition(M: MobiusPair, P, LP, Q, LQ) -> DecompositionPair:
    key = ElementId.sort_key
    P, LP, Q, LQ = (tuple(sorted(s, key=key)) for s in (P, LP, Q, LQ))
    if ElementId("a", 1) not in P:
        P, LP, Q, LQ = Q, LQ, P, LP

    def omit(pts, blks):
        return tuple((b, next(p for p in pts if not M.incident(p, b))) for b in blks)

    d = DecompositionPair(P, LP, Q, LQ, omit(P, LP), omit(Q, LQ))
    _check_simplex_pair(M, d)
    return d


def special_decompositions(M: MobiusPair) -> list[tuple[tuple[int, ...], DecompositionPair]]:
    """For n = 4: one decomposition per phi-invariant 2-set X holding 1 (X and
    its complement name the same one), with simplices B_X + A_Y on a_X + b_Y and
    A_X + B_Y on b_X + a_Y, where Y is the complement of X.  Empty otherwise."""
    n = M.n
    if n != 4:
        return []
    out = []
    for X in invariant_subsets(M.phi, 2):
        if 1 not in X:
            continue
        Y = tuple(i for i in range(1, n + 1) if i not in X)
        P = [ElementId("a", M.phi(i)) for i in X] + [ElementId("b", i) for i in Y]
        LP = [ElementId("B", i) for i in X] + [ElementId("A", i) for i in Y]
        Q = [ElementId("b", i) for i in X] + [ElementId("a", i) for i in Y]
        LQ = [ElementId("A", i) for i in X] + [ElementId("B", i) for i in Y]
        out.append((X, _decomposition(M, P, LP, Q, LQ)))
    return out


# -- subpairs -------------------------------------------------------------------------


def subpair_sets(M: MobiusPair, k: int) -> list[tuple[int, ...]]:
    if not 3 <= k < M.n:
        raise AnalysisError(f"k must satisfy 3 <= k < n = {M.n}, got k={k}")
    return invariant_subsets(M.phi, M.n - k)


@dataclass
class SubpairResult:
    X: tuple[int, ...]
    subpair: MobiusPair
    relabeling: dict[int, int]  # surviving index -> 1..k, order preserving
    induced_perm: Permutation

    def to_dict(self) -> dict:
        return {
            "X": list(self.X),
            "k": self.subpair.n,
            "induced_perm": str(self.induced_perm),
            "cycle_type": list(self.induced_perm.cycle_type()),
        }


def extract_subpair(M: MobiusPair, X) -> SubpairResult:
    """Delete a_i, b_i, A_i, B_i for i in X, restrict the remaining blocks to the
    remaining points and renumber the survivors in order."""
    n = M.n
    X = tuple(sorted(set(X)))
    if any(not 1 <= i <= n for i in X):
        raise AnalysisError(f"{X} is not a subset of 1..{n}")
    if {M.phi(i) for i in X} != set(X):
        raise AnalysisError(f"X={set(X)} is not invariant under phi={M.phi}: phi(X) must equal X")
    keep = [i for i in range(1, n + 1) if i not in X]
    k = len(keep)
    if k < 3:
        raise AnalysisError(f"deleting {len(X)} indices from n={n} leaves k={k} < 3")
    relabel = {i: j for j, i in enumerate(keep, start=1)}
    induced = Permutation(tuple(relabel[M.phi(i)] for i in keep))

    kept_points = [ElementId(kind, i) for kind in ("a", "b") for i in keep]
    blocks = []
    for kind in ("A", "B"):
        for i in keep:
            mask = 0
            for p in M.block_points(ElementId(kind, i)):
                if p.index in relabel:
                    q = ElementId(p.kind, relabel[p.index])
                    mask |= 1 << element_index(q, k)
            blocks.append(mask)
    assert len(kept_points) == 2 * k
    sub = build(k, induced)
    if tuple(blocks) != sub.blocks:
        raise AssertionError(f"deleting {X} from {M} does not give {sub}")
    return SubpairResult(X, sub, relabel, induced)


# -- recognition ----------------------------------------------------------------------


@dataclass
class RawStructure:
    points: list[str]
    blocks: list[list[str]]

    @classmethod
    def from_json(cls, text: str) -> "RawStructure":
        data = json.loads(text)
        try:
            points = [str(p) for p in data["points"]]
            blocks = [[str(p) for p in b] for b in data["blocks"]]
        except (KeyError, TypeError) as exc:
            raise ConfigError(f"raw structure needs 'points' and 'blocks': {exc}") from exc
        return cls(points, blocks)

    @classmethod
    def from_pair(cls, M: MobiusPair) -> "RawStructure":
        return cls([str(p) for p in M.points()], [[str(p) for p in M.block_points(b)] for b in M.block_ids()])

    def masks(self) -> list[int]:
        pos = {p: j for j, p in enumerate(self.points)}
        if len(pos) != len(self.points):
            raise ConfigError("duplicate point names")
        out = []
        for b in self.blocks:
            mask = 0
            for p in b:
                if p not in pos:
                    raise ConfigError(f"block mentions unknown point {p!r}")
                mask |= 1 << pos[p]
            out.append(mask)
        return out


@dataclass
class Recognition:
    n: int
    phi: Permutation
    cycle_type: tuple[int, ...]
    point_labels: dict[str, ElementId]  # raw name -> element of M(n, phi)
    block_labels: dict[int, ElementId]  # raw block position -> block of M(n, phi)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "phi": str(self.phi),
            "cycle_type": list(self.cycle_type),
            "point_labels": {k: str(v) for k, v in self.point_labels.items()},
            "block_labels": {str(k): str(v) for k, v in sorted(self.block_labels.items())},
        }


def recognize(S: RawStructure) -> Recognition | None:
    """Identify S with some M(n, phi) via a decomposition into two mutually
    inscribed simplices; None when S is not a Möbius pair."""
    masks = S.masks()
    rec: RawRecognition | None = recognize_raw(len(S.points), masks)
    if rec is None:
        return None
    n = rec.n
    phi = Permutation(rec.phi)
    points = {S.points[p]: element_at(i, n) for p, i in rec.point_labels.items()}
    blocks = {b: element_at(2 * n + i, n) for b, i in rec.block_labels.items()}
    return Recognition(n, phi, phi.cycle_type(), points, blocks)
