"""The Möbius n-pair M(n, phi): points a_i, b_i and blocks A_i, B_i.

    A_i = {a_j : j != i} + {b_i}
    B_i = {b_j : j != i} + {a_phi(i)}

Internally points and blocks are indexed 0..2n-1 (a/A first, then b/B) and
blocks are stored as point bit-sets.  ``ElementId`` is the public name of an
element; ``Coord`` is the (t, k, i, eps) labeling attached to the cycle layout
of phi.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import NamedTuple

from .perm import Permutation, are_conjugate, conjugate, cycle_decomposition, CycleDecomposition

POINT_KINDS = ("a", "b")
BLOCK_KINDS = ("A", "B")
KINDS = POINT_KINDS + BLOCK_KINDS
_KIND_ORDER = {k: i for i, k in enumerate(KINDS)}


class ConfigError(ValueError):
    pass


class ElementId(NamedTuple):
    kind: str
    index: int

    def __str__(self) -> str:
        return f"{self.kind}{self.index}"

    @property
    def is_point(self) -> bool:
        return self.kind in POINT_KINDS

    @property
    def is_block(self) -> bool:
        return self.kind in BLOCK_KINDS

    def sort_key(self):
        return (_KIND_ORDER[self.kind], self.index)

    @classmethod
    def parse(cls, name: str) -> "ElementId":
        m = re.fullmatch(r"([abAB])(\d+)", name.strip())
        if m is None:
            raise ConfigError(f"bad element name {name!r}")
        return cls(m.group(1), int(m.group(2)))


class Coord(NamedTuple):
    t: int
    k: int
    i: int
    eps: int


EPS_KIND = {1: "a", -1: "b", 2: "A", -2: "B"}
KIND_EPS = {v: k for k, v in EPS_KIND.items()}


def element_index(e: ElementId, n: int) -> int:
    """Position of e in the global order a1..an, b1..bn, A1..An, B1..Bn."""
    if not 1 <= e.index <= n:
        raise ConfigError(f"{e} out of range for n={n}")
    return _KIND_ORDER[e.kind] * n + e.index - 1


def element_at(pos: int, n: int) -> ElementId:
    return ElementId(KINDS[pos // n], pos % n + 1)


@dataclass(frozen=True)
class MobiusPair:
    n: int
    phi: Permutation
    blocks: tuple[int, ...]  # 2n point bit-sets, A_1..A_n then B_1..B_n
    decomposition: CycleDecomposition = field(compare=False, repr=False)

    # -- element bookkeeping --------------------------------------------------

    def points(self) -> list[ElementId]:
        return [ElementId(k, i) for k in POINT_KINDS for i in range(1, self.n + 1)]

    def block_ids(self) -> list[ElementId]:
        return [ElementId(k, i) for k in BLOCK_KINDS for i in range(1, self.n + 1)]

    def elements(self) -> list[ElementId]:
        return self.points() + self.block_ids()

    def point_index(self, p: ElementId) -> int:
        if not p.is_point:
            raise ConfigError(f"{p} is not a point")
        return element_index(p, self.n)

    def block_index(self, b: ElementId) -> int:
        if not b.is_block:
            raise ConfigError(f"{b} is not a block")
        return element_index(b, self.n) - 2 * self.n

    def point_at(self, idx: int) -> ElementId:
        return element_at(idx, self.n)

    def block_at(self, idx: int) -> ElementId:
        return element_at(idx + 2 * self.n, self.n)

    def block_points(self, b: ElementId) -> list[ElementId]:
        mask = self.blocks[self.block_index(b)]
        return [self.point_at(j) for j in range(2 * self.n) if mask >> j & 1]

    def block_sets(self) -> dict[ElementId, frozenset[ElementId]]:
        return {b: frozenset(self.block_points(b)) for b in self.block_ids()}

    def point_rank(self, p: ElementId) -> int:
        j = self.point_index(p)
        return sum(mask >> j & 1 for mask in self.blocks)

    def incident(self, p: ElementId, b: ElementId) -> bool:
        return bool(self.blocks[self.block_index(b)] >> self.point_index(p) & 1)

    def __str__(self) -> str:
        return f"M({self.n}, {self.phi})"


def build(n: int, phi: Permutation) -> MobiusPair:
    if n < 3:
        raise ConfigError(f"a Möbius n-pair needs n >= 3, got n={n}")
    if phi.n != n:
        raise ConfigError(f"permutation acts on {phi.n} points, expected {n}")
    all_a = (1 << n) - 1
    all_b = all_a << n
    blocks = []
    for i in range(1, n + 1):
        blocks.append((all_a & ~(1 << (i - 1))) | 1 << (n + i - 1))
    for i in range(1, n + 1):
        blocks.append((all_b & ~(1 << (n + i - 1))) | 1 << (phi(i) - 1))
    return MobiusPair(n, phi, tuple(blocks), cycle_decomposition(phi))


def incident(M: MobiusPair, p: ElementId, b: ElementId) -> bool:
    if not p.is_point or not b.is_block:
        raise ConfigError(f"incident() needs a point and a block, got {p} and {b}")
    return M.incident(p, b)


# -- (t, k, i, eps) labeling ------------------------------------------------------


def coord_of(M: MobiusPair, e: ElementId) -> Coord:
    element_index(e, M.n)
    d = M.decomposition
    for t, cycles in enumerate(d.domains, start=1):
        for k, dom in enumerate(cycles, start=1):
            if e.index in dom:
                return Coord(t, k, dom.index(e.index), KIND_EPS[e.kind])
    raise AssertionError("cycle domains do not cover I")


def element_of(M: MobiusPair, c: Coord) -> ElementId:
    d = M.decomposition
    t, k, i, eps = c
    if not 1 <= t <= len(d.lengths):
        raise ConfigError(f"t={t} out of range 1..{len(d.lengths)}")
    if not 1 <= k <= d.multiplicities[t - 1]:
        raise ConfigError(f"k={k} out of range 1..{d.multiplicities[t - 1]}")
    if not 0 <= i < d.lengths[t - 1]:
        raise ConfigError(f"i={i} out of range 0..{d.lengths[t - 1] - 1}")
    if eps not in EPS_KIND:
        raise ConfigError(f"eps={eps} not in {{1, -1, 2, -2}}")
    return ElementId(EPS_KIND[eps], d.domains[t - 1][k - 1][i])


def valid_coords(M: MobiusPair) -> list[Coord]:
    d = M.decomposition
    out = []
    for t, (nu, m) in enumerate(zip(d.lengths, d.multiplicities), start=1):
        for k in range(1, m + 1):
            for i in range(nu):
                for eps in (1, -1, 2, -2):
                    out.append(Coord(t, k, i, eps))
    return out


# -- maps between configurations --------------------------------------------------


def is_isomorphism(M1: MobiusPair, M2: MobiusPair, mapping: dict[ElementId, ElementId]) -> bool:
    """True iff mapping sends points to points, blocks to blocks bijectively and
    preserves incidence in both directions."""
    if M1.n != M2.n:
        return False
    pts, blks = M1.points(), M1.block_ids()
    if sorted(mapping[p] for p in pts) != sorted(M2.points()):
        return False
    if sorted(mapping[b] for b in blks) != sorted(M2.block_ids()):
        return False
    return all(M1.incident(p, b) == M2.incident(mapping[p], mapping[b]) for p in pts for b in blks)


def is_correlation(M1: MobiusPair, M2: MobiusPair, mapping: dict[ElementId, ElementId]) -> bool:
    """True iff mapping sends points of M1 to blocks of M2 and blocks to points,
    bijectively, with p in b  <=>  mapping[b] in mapping[p]."""
    if M1.n != M2.n:
        return False
    pts, blks = M1.points(), M1.block_ids()
    if sorted(mapping[p] for p in pts) != sorted(M2.block_ids()):
        return False
    if sorted(mapping[b] for b in blks) != sorted(M2.points()):
        return False
    return all(M1.incident(p, b) == M2.incident(mapping[b], mapping[p]) for p in pts for b in blks)


def relabel_map(alpha: Permutation) -> dict[ElementId, ElementId]:
    """x_i -> x_alpha(i) for every kind x."""
    return {ElementId(k, i): ElementId(k, alpha(i)) for k in KINDS for i in range(1, alpha.n + 1)}


def reversal(n: int) -> Permutation:
    """1 -> 1 and m -> n - m + 2 otherwise."""
    return Permutation((1,) + tuple(n - m + 2 for m in range(2, n + 1)))


@dataclass(frozen=True)
class Duality:
    dual: MobiusPair  # M(n, phi^-1), isomorphic to the dual structure of M
    exchange: dict  # correlation M -> dual
    alpha: Permutation  # relabeling of dual onto M
    reversal_valid: bool  # whether the reversal relabeling 1->1, m->n-m+2 works for this phi
    self_duality: dict  # correlation M -> M, the relabeling applied after exchange


def dual(M: MobiusPair) -> Duality:
    """Realize the dual of M as M(n, phi^-1) and produce a correlation of M onto itself.

    The exchange map sends b_j -> A_j, a_j -> B_j, A_i -> b_i, B_i -> a_i.  It is
    followed by x_i -> x_alpha(i), where alpha is the reversal when it conjugates
    phi^-1 to phi and a conjugating witness otherwise.
    """
    n = M.n
    inv = M.phi.inverse()
    D = build(n, inv)
    swap = {"a": "B", "b": "A", "A": "b", "B": "a"}
    exchange = {e: ElementId(swap[e.kind], e.index) for e in M.elements()}
    rev = reversal(n)
    reversal_valid = conjugate(inv, rev) == M.phi
    alpha = rev if reversal_valid else are_conjugate(inv, M.phi)
    F = relabel_map(alpha)
    self_map = {e: F[exchange[e]] for e in M.elements()}
    if not is_correlation(M, D, exchange):
        raise AssertionError(f"exchange map is not a correlation onto {D}")
    if not is_correlation(M, M, self_map):
        raise AssertionError(f"self-duality witness failed for {M}")
    return Duality(D, exchange, alpha, reversal_valid, self_map)


# -- JSON ------------------------------------------------------------------------------


def to_json(M: MobiusPair) -> str:
    return json.dumps(to_dict(M), sort_keys=True)


def to_dict(M: MobiusPair) -> dict:
    return {
        "n": M.n,
        "phi": list(M.phi.images),
        "blocks": {str(b): [str(p) for p in M.block_points(b)] for b in M.block_ids()},
    }


def from_json(text: str) -> MobiusPair:
    data = json.loads(text)
    try:
        n = int(data["n"])
        phi = Permutation(tuple(data["phi"]))
        blocks = data["blocks"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed configuration JSON: {exc}") from exc
    M = build(n, phi)
    given = {ElementId.parse(k): sorted(ElementId.parse(p) for p in v) for k, v in blocks.items()}
    expected = {b: sorted(M.block_points(b)) for b in M.block_ids()}
    if given != expected:
        raise ConfigError("blocks do not match the construction for the given n and phi")
    return M
