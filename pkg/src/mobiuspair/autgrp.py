"""Structured automorphisms f_(v,alpha), g_(v,alpha), the two tabulated n=4 maps,
and the automorphism report that reconciles them with the oracle.

On coordinates (t, k, i, eps):

    f: (t, k, i, eps) -> (t, alpha_t(k), i + v[t][k] mod nu_t, eps)
    g: (t, k, i, eps) -> (t, alpha_t(k), i + v[t][k] - 1 mod nu_t, -eps)   eps in {1, 2}
                         (t, alpha_t(k), i + v[t][k]     mod nu_t, -eps)   eps in {-1, -2}

``v[t][k]`` is indexed by the source cycle k.
"""
from __future__ import annotations

import math
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Iterable

import numpy as np

from .config import Coord, ElementId, MobiusPair, build, coord_of, element_index, element_of, relabel_map
from .oracle import IsoMap, automorphisms, enumerate_decompositions, apply_to_decomposition, is_automorphism
from .perm import Permutation, are_conjugate, canonical_rep, centralizer_order


@dataclass(frozen=True)
class StructuredAut:
    kind: str  # "F" or "G"
    lengths: tuple[int, ...]  # nu_t
    v: tuple[tuple[int, ...], ...]  # v[t][k] in 0..nu_t - 1
    alpha: tuple[tuple[int, ...], ...]  # alpha[t] as 1-based images on 1..m_t

    def __post_init__(self):
        if self.kind not in ("F", "G"):
            raise ValueError(f"kind must be F or G, got {self.kind!r}")
        if not len(self.lengths) == len(self.v) == len(self.alpha):
            raise ValueError("lengths, v and alpha disagree on the number of cycle lengths")
        for nu, vt, at in zip(self.lengths, self.v, self.alpha):
            if len(vt) != len(at):
                raise ValueError("v and alpha disagree on a multiplicity")
            if any(not 0 <= x < nu for x in vt):
                raise ValueError(f"shift {vt} out of range for cycle length {nu}")
            if sorted(at) != list(range(1, len(at) + 1)):
                raise ValueError(f"{at} is not a permutation")

    def to_dict(self) -> dict:
        return {"kind": self.kind, "v": [list(x) for x in self.v], "alpha": [list(a) for a in self.alpha]}


def _check_coord(s: StructuredAut, c: Coord):
    t, k, i, eps = c
    if not 1 <= t <= len(s.lengths):
        raise ValueError(f"invalid coordinate {c}: t out of range")
    if not 1 <= k <= len(s.v[t - 1]):
        raise ValueError(f"invalid coordinate {c}: k out of range")
    if not 0 <= i < s.lengths[t - 1]:
        raise ValueError(f"invalid coordinate {c}: i out of range")
    if eps not in (1, -1, 2, -2):
        raise ValueError(f"invalid coordinate {c}: eps must be one of 1, -1, 2, -2")


def apply_f(s: StructuredAut, c: Coord) -> Coord:
    if s.kind != "F":
        raise ValueError("apply_f needs a map of kind F")
    _check_coord(s, c)
    t, k, i, eps = c
    nu = s.lengths[t - 1]
    return Coord(t, s.alpha[t - 1][k - 1], (i + s.v[t - 1][k - 1]) % nu, eps)


def apply_g(s: StructuredAut, c: Coord) -> Coord:
    if s.kind != "G":
        raise ValueError("apply_g needs a map of kind G")
    _check_coord(s, c)
    t, k, i, eps = c
    nu = s.lengths[t - 1]
    shift = s.v[t - 1][k - 1] - (1 if eps > 0 else 0)
    return Coord(t, s.alpha[t - 1][k - 1], (i + shift) % nu, -eps)


def apply(s: StructuredAut, c: Coord) -> Coord:
    return apply_f(s, c) if s.kind == "F" else apply_g(s, c)


def identity_aut(M: MobiusPair, kind: str = "F") -> StructuredAut:
    """f_(0, id), or g_0 for kind G."""
    d = M.decomposition
    return StructuredAut(
        kind,
        d.lengths,
        tuple((0,) * m for m in d.multiplicities),
        tuple(tuple(range(1, m + 1)) for m in d.multiplicities),
    )


def as_isomap(M: MobiusPair, s: StructuredAut) -> IsoMap:
    n = M.n
    perm = [0] * (4 * n)
    for e in M.elements():
        perm[element_index(e, n)] = element_index(element_of(M, apply(s, coord_of(M, e))), n)
    return IsoMap.from_tuple(perm)


def structured_automorphisms(M: MobiusPair) -> list[StructuredAut]:
    """Every f_(v,alpha) and g_(v,alpha), F kind first."""
    d = M.decomposition
    per_t = []
    for nu, m in zip(d.lengths, d.multiplicities):
        shifts = list(product(range(nu), repeat=m))
        perms = list(permutations(range(1, m + 1)))
        per_t.append([(v, a) for v in shifts for a in perms])
    out = []
    for kind in ("F", "G"):
        for choice in product(*per_t):
            out.append(StructuredAut(kind, d.lengths, tuple(c[0] for c in choice), tuple(c[1] for c in choice)))
    return out


def structured_isomaps(M: MobiusPair) -> list[IsoMap]:
    """The structured set as element maps, each checked to preserve incidence."""
    maps = []
    for s in structured_automorphisms(M):
        f = as_isomap(M, s)
        if not is_automorphism(M, f):
            raise AssertionError(f"structured map {s.to_dict()} is not an automorphism of {M}")
        maps.append(f)
    return maps


def structured_generators(M: MobiusPair) -> list[StructuredAut]:
    """g_0, a unit shift of the first cycle of each length, and an S_m generating
    pair for each repeated length."""
    d = M.decomposition
    base = identity_aut(M)
    gens = [identity_aut(M, "G")]
    for t, (nu, m) in enumerate(zip(d.lengths, d.multiplicities)):
        if nu > 1:
            v = list(base.v)
            v[t] = (1,) + (0,) * (m - 1)
            gens.append(StructuredAut("F", d.lengths, tuple(v), base.alpha))
        if m > 1:
            swap = (2, 1) + tuple(range(3, m + 1))
            cyc = tuple(range(2, m + 1)) + (1,)
            for a in {swap, cyc}:
                alpha = list(base.alpha)
                alpha[t] = a
                gens.append(StructuredAut("F", d.lengths, base.v, tuple(alpha)))
    return gens


# -- the two tabulated maps for n = 4 -----------------------------------------------

_F_TILDE = dict(
    zip(
        "a1 a2 a3 a4 b1 b2 b3 b4 A1 A2 A3 A4 B1 B2 B3 B4".split(),
        "b1 b2 a4 a3 a1 a2 b3 b4 A2 A1 B4 B3 B2 B1 A4 A3".split(),
    )
)
_F_HAT = dict(
    zip(
        "a1 a2 a3 a4 b1 b2 b3 b4 A1 A2 A3 A4 B1 B2 B3 B4".split(),
        "a2 a1 b3 b4 b1 b2 a3 a4 B2 B1 A4 A3 A1 A2 B3 B4".split(),
    )
)
SPECIAL_TABLES = {
    (1, 1, 2): ("f_tilde", _F_TILDE),
    (2, 2): ("f_hat", _F_HAT),
}


@dataclass(frozen=True)
class NamedMap:
    name: str
    map: IsoMap
    # blocks whose tabulated image differs from the one forced by the point images
    table_mismatches: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        items = sorted(self.map.as_dict().items(), key=lambda kv: kv[0].sort_key())
        return {
            "name": self.name,
            "map": {str(k): str(v) for k, v in items},
            "table_mismatches": list(self.table_mismatches),
        }


def _table_isomap(table: dict[str, str], n: int) -> IsoMap:
    perm = [0] * (4 * n)
    for src, dst in table.items():
        perm[element_index(ElementId.parse(src), n)] = element_index(ElementId.parse(dst), n)
    return IsoMap.from_tuple(perm)


def extend_point_map(M: MobiusPair, point_map: dict[ElementId, ElementId]) -> IsoMap | None:
    """The automorphism with the given point images, or None if there is none.

    Blocks are distinct point sets, so the block images are forced."""
    n = M.n
    by_points = {frozenset(M.block_points(b)): b for b in M.block_ids()}
    perm = [0] * (4 * n)
    for p in M.points():
        perm[element_index(p, n)] = element_index(point_map[p], n)
    for b in M.block_ids():
        target = by_points.get(frozenset(point_map[p] for p in M.block_points(b)))
        if target is None:
            return None
        perm[element_index(b, n)] = element_index(target, n)
    if sorted(perm) != list(range(4 * n)):
        return None
    return IsoMap.from_tuple(perm)


def special_maps_n4(M: MobiusPair) -> list[NamedMap]:
    """The tabulated map for phi of type (1)(2)(34) or (12)(34), moved onto M's
    labeling by conjugation when phi is not the canonical representative.

    The map is built from the tabulated point images; block images follow from
    them and any disagreement with the tabulated block row is recorded."""
    if M.n != 4:
        return []
    entry = SPECIAL_TABLES.get(M.phi.cycle_type())
    if entry is None:
        return []
    name, table = entry
    canon = canonical_rep(M.phi.cycle_type())
    C = build(4, canon)
    points = {ElementId.parse(k): ElementId.parse(v) for k, v in table.items() if k[0] in "ab"}
    f = extend_point_map(C, points)
    if f is None:
        raise AssertionError(f"the point images of {name} do not extend to an automorphism")
    tabulated = _table_isomap(table, 4)
    mismatches = tuple(
        f"{b}: table {tabulated(b)}, forced {f(b)}" for b in C.block_ids() if tabulated(b) != f(b)
    )
    if M.phi != canon:
        alpha = are_conjugate(canon, M.phi)
        F = IsoMap.from_tuple([element_index(relabel_map(alpha)[e], 4) for e in C.elements()])
        f = F.compose(f).compose(F.inverse())
    if not is_automorphism(M, f):
        raise AssertionError(f"{name} is not an automorphism of {M}")
    if not yields_special_decomposition(M, f):
        raise AssertionError(f"{name} does not move the defining pair of {M}")
    return [NamedMap(name, f, mismatches)]


def table_is_automorphism(name: str) -> bool:
    """Whether the tabulated map, taken verbatim, preserves incidence."""
    for ct, (nm, table) in SPECIAL_TABLES.items():
        if nm == name:
            return is_automorphism(build(4, canonical_rep(ct)), _table_isomap(table, 4))
    raise KeyError(name)


def yields_special_decomposition(M: MobiusPair, f: IsoMap) -> bool:
    """True iff f sends {S_A, S_B} to a different decomposition pair."""
    defining = enumerate_decompositions(M)[0]
    assert defining.is_defining(M.n)
    return apply_to_decomposition(M, f, defining) != (frozenset(defining.P), frozenset(defining.LP))


# -- group bookkeeping -------------------------------------------------------------


def closure(generators: Iterable[IsoMap]) -> set[tuple[int, ...]]:
    """Elements (as 4n-tuples) of the group generated by the given maps."""
    gens = [g.as_tuple() for g in generators]
    if not gens:
        return set()
    ident = tuple(range(len(gens[0])))
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = tuple(g[i] for i in x)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def _keys(rows: np.ndarray) -> np.ndarray:
    # exact mixed-radix value of as many leading columns as fit in int64;
    # rows sharing a key are told apart by a full comparison
    base = rows.shape[1]
    cols = 1
    while cols < base and base ** (cols + 1) < 2**63:
        cols += 1
    out = np.zeros(len(rows), dtype=np.int64)
    for c in range(cols):
        out = out * base + rows[:, c].astype(np.int64)
    return out


def is_group(elements: Iterable[tuple[int, ...]], workers: int = 1) -> bool:
    """Exhaustive check that a finite set of permutations holds the identity and
    is closed under composition and inverses."""
    elems = set(elements)
    if not elems:
        return False
    size = len(next(iter(elems)))
    if tuple(range(size)) not in elems:
        return False
    arr = np.array(sorted(elems), dtype=np.uint8 if size <= 256 else np.int64)
    keys = _keys(arr)
    order = np.argsort(keys, kind="stable")
    keys, arr = keys[order], arr[order]

    def member(rows: np.ndarray) -> bool:
        k = _keys(rows)
        idx = np.searchsorted(keys, k)
        idx[idx >= len(keys)] = 0
        hit = keys[idx] == k
        # equal keys may be shared by several rows; scan that run when the first differs
        exact = hit & np.all(arr[idx] == rows, axis=1)
        for j in np.nonzero(hit & ~exact)[0]:
            lo = idx[j]
            while lo < len(keys) and keys[lo] == k[j]:
                if np.array_equal(arr[lo], rows[j]):
                    exact[j] = True
                    break
                lo += 1
        return bool(np.all(exact))

    inv = np.empty_like(arr)
    inv[np.arange(len(arr))[:, None], arr] = np.arange(size, dtype=arr.dtype)
    if not member(inv):
        return False

    # products s o x for every s and a batch of x at a time, about 4M entries per batch
    batch = max(1, 4_000_000 // (len(arr) * size))

    def batch_closed(j: int) -> bool:
        xs = arr[j : j + batch]
        prod = arr[:, xs].transpose(1, 0, 2).reshape(-1, size)
        return member(prod)

    starts = range(0, len(arr), batch)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return all(pool.map(batch_closed, starts))
    return all(batch_closed(j) for j in starts)


# -- report ---------------------------------------------------------------------------


def structured_set_complete(phi: Permutation) -> bool:
    """n >= 5, or n = 4 with phi != id and no 2-cycle."""
    n = phi.n
    if n >= 5:
        return True
    return n == 4 and not phi.is_identity() and 2 not in phi.cycle_type()


def claimed_order(phi: Permutation) -> int | None:
    n = phi.n
    ct = phi.cycle_type()
    if n == 3:
        return 12
    if n == 4 and phi.is_identity():
        return 192
    if n == 4 and ct.count(2) == 1:
        return 16
    if n == 4 and ct.count(2) == 2:
        return 64
    if structured_set_complete(phi):
        d = _decomp(phi)
        order = 1
        for nu, m in zip(d.lengths, d.multiplicities):
            order *= (2 * nu) ** m * math.factorial(m)
        return order
    return None


def _decomp(phi):
    from .perm import cycle_decomposition

    return cycle_decomposition(phi)


@dataclass
class AutReport:
    oracle_order: int
    structured_set_order: int
    structured_order: int
    claimed_order: int | None
    structured_equals_oracle: bool
    claim_matches_oracle: bool | None
    structured_subset_of_oracle: bool
    oracle_is_group: bool
    generators_generate_structured: bool
    completeness_expected: bool
    generators: list = field(default_factory=list)
    special_maps: list = field(default_factory=list)

    @property
    def failures(self) -> list[str]:
        """Internal mismatches; disagreement with the claimed order is not one."""
        out = []
        if not self.oracle_is_group:
            out.append("oracle automorphisms do not form a group")
        if not self.structured_subset_of_oracle:
            out.append("a structured map is missing from the oracle set")
        if not self.generators_generate_structured:
            out.append("generators do not generate the structured set")
        if self.oracle_order % self.structured_order:
            out.append("structured order does not divide oracle order")
        if self.completeness_expected and not self.structured_equals_oracle:
            out.append("structured set differs from the oracle set")
        return out

    def to_dict(self) -> dict:
        return {
            "oracle_order": self.oracle_order,
            "structured_set_order": self.structured_set_order,
            "structured_order": self.structured_order,
            "claimed_order": self.claimed_order,
            "structured_equals_oracle": self.structured_equals_oracle,
            "claim_matches_oracle": self.claim_matches_oracle,
            "structured_subset_of_oracle": self.structured_subset_of_oracle,
            "oracle_is_group": self.oracle_is_group,
            "generators_generate_structured": self.generators_generate_structured,
            "completeness_expected": self.completeness_expected,
            "generators": [g.to_dict() for g in self.generators] + [s.to_dict() for s in self.special_maps],
        }


def aut_report(M: MobiusPair, workers: int = 1) -> AutReport:
    oracle = {f.as_tuple() for f in automorphisms(M, workers=workers)}
    structured = {f.as_tuple() for f in structured_isomaps(M)}
    gens = structured_generators(M)
    gen_maps = [as_isomap(M, g) for g in gens]
    specials = special_maps_n4(M)
    generated = closure(gen_maps + [s.map for s in specials])
    claimed = claimed_order(M.phi)
    # n = 3 and the two special n = 4 classes are expected to be generated
    # by the structured maps plus the tabulated map
    completeness = structured_set_complete(M.phi) or bool(specials)
    return AutReport(
        oracle_order=len(oracle),
        structured_set_order=len(structured),
        structured_order=len(generated),
        claimed_order=claimed,
        structured_equals_oracle=generated == oracle,
        claim_matches_oracle=None if claimed is None else claimed == len(oracle),
        structured_subset_of_oracle=structured <= oracle and generated <= oracle,
        oracle_is_group=is_group(oracle, workers=workers),
        generators_generate_structured=closure(gen_maps) == structured,
        completeness_expected=completeness,
        generators=gens,
        special_maps=specials,
    )


def expected_structured_order(phi: Permutation) -> int:
    return 2 * centralizer_order(phi)
