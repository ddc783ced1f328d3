"""Permutations of I = {1..n}: cycle layout, conjugacy, centralizers, partitions.

Everything is 1-based.  Composition ``p * q`` means "apply q first, then p",
and conjugation is ``conjugate(p, a) = a * p * a.inverse()``, so that a
witness ``a`` of ``conjugate(p, a) == q`` satisfies ``a p = q a``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Iterator, Sequence


class ParseError(ValueError):
    """Malformed permutation text."""


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        object.__setattr__(self, "images", images)
        if not images:
            raise ValueError("a permutation needs n >= 1")
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"{list(images)} is not a bijection of 1..{len(images)}")

    @property
    def n(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> "Permutation":
        images = list(range(1, n + 1))
        for cyc in cycles:
            for j, x in enumerate(cyc):
                images[x - 1] = cyc[(j + 1) % len(cyc)]
        return cls(tuple(images))

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.n != other.n:
            raise ValueError(f"cannot compose permutations of {self.n} and {other.n} points")
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(j == i for i, j in enumerate(self.images, start=1))

    def cycles(self) -> list[tuple[int, ...]]:
        """Cycles including fixed points, each starting at its smallest element,
        sorted by length and then by smallest element."""
        seen = set()
        out = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self(start)
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self(x)
            out.append(tuple(cyc))
        out.sort(key=lambda c: (len(c), c[0]))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.cycles())

    def __str__(self) -> str:
        return "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles())

    def __repr__(self) -> str:
        return f"Permutation({str(self)!r}, n={self.n})"


_TOKEN = re.compile(r"\s*(\(|\)|[^\s()]+)")


def parse_permutation(text: str, n: int) -> Permutation:
    """Parse one-line image form ("2 1 3") or cycle form ("(1 2)(3)").

    In cycle form, omitted elements are fixed points.  Commas are accepted as
    separators in both forms.
    """
    if n < 1:
        raise ParseError(f"n must be >= 1, got {n}")
    text = text.replace(",", " ").strip()
    if "(" in text or ")" in text:
        return _parse_cycles(text, n)
    tokens = text.split()
    images = []
    seen = set()
    for tok in tokens:
        x = _parse_element(tok, n)
        if x in seen:
            raise ParseError(f"duplicate element {x}")
        seen.add(x)
        images.append(x)
    if len(images) != n:
        raise ParseError(f"one-line form needs {n} images, got {len(images)}")
    return Permutation(tuple(images))


def _parse_element(tok: str, n: int) -> int:
    if not tok.isdigit():
        raise ParseError(f"unexpected token {tok!r}")
    x = int(tok)
    if not 1 <= x <= n:
        raise ParseError(f"element {x} out of range 1..{n}")
    return x


def _parse_cycles(text: str, n: int) -> Permutation:
    cycles: list[list[int]] = []
    current: list[int] | None = None
    seen = set()
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        tok = m.group(1)
        pos = m.end()
        if tok == "(":
            if current is not None:
                raise ParseError("unexpected token '(' inside a cycle")
            current = []
        elif tok == ")":
            if current is None:
                raise ParseError("unexpected token ')'")
            cycles.append(current)
            current = None
        else:
            if current is None:
                raise ParseError(f"unexpected token {tok!r} outside a cycle")
            x = _parse_element(tok, n)
            if x in seen:
                raise ParseError(f"duplicate element {x}")
            seen.add(x)
            current.append(x)
    if current is not None:
        raise ParseError("unterminated cycle: missing ')'")
    return Permutation.from_cycles(cycles, n)


@dataclass(frozen=True)
class CycleDecomposition:
    """Cycle layout of a permutation.

    ``domains[t][k]`` lists the elements of the k-th cycle of length
    ``lengths[t]`` in cycle order, starting at its smallest element.  For a
    permutation in canonical layout this is ``offsets[t][k], offsets[t][k]+1, ...``.
    """

    lengths: tuple[int, ...]
    multiplicities: tuple[int, ...]
    offsets: tuple[tuple[int, ...], ...]
    domains: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def n(self) -> int:
        return sum(m * v for m, v in zip(self.multiplicities, self.lengths))

    @property
    def cycle_type(self) -> tuple[int, ...]:
        return tuple(v for v, m in zip(self.lengths, self.multiplicities) for _ in range(m))


def _offsets(lengths: Sequence[int], mults: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    out = []
    base = 0
    for nu, m in zip(lengths, mults):
        out.append(tuple(base + (k - 1) * nu + 1 for k in range(1, m + 1)))
        base += m * nu
    return tuple(out)


def cycle_decomposition(p: Permutation) -> CycleDecomposition:
    cycles = p.cycles()
    lengths: list[int] = []
    groups: list[list[tuple[int, ...]]] = []
    for c in cycles:
        if not lengths or lengths[-1] != len(c):
            lengths.append(len(c))
            groups.append([])
        groups[-1].append(c)
    mults = [len(g) for g in groups]
    return CycleDecomposition(
        lengths=tuple(lengths),
        multiplicities=tuple(mults),
        offsets=_offsets(lengths, mults),
        domains=tuple(tuple(g) for g in groups),
    )


def canonical_rep(cycle_type: Iterable[int]) -> Permutation:
    """The permutation whose cycles are runs of consecutive integers, shortest first."""
    lengths = sorted(int(x) for x in cycle_type)
    if not lengths:
        raise ValueError("empty cycle type")
    if lengths[0] < 1:
        raise ValueError(f"cycle lengths must be positive: {lengths}")
    n = sum(lengths)
    cycles = []
    start = 1
    for nu in lengths:
        cycles.append(tuple(range(start, start + nu)))
        start += nu
    return Permutation.from_cycles(cycles, n)


def conjugate(p: Permutation, a: Permutation) -> Permutation:
    """a * p * a^-1 (p applied first after relabeling by a^-1)."""
    if p.n != a.n:
        raise ValueError(f"mismatched n: {p.n} vs {a.n}")
    return a * p * a.inverse()


def are_conjugate(p: Permutation, q: Permutation) -> Permutation | None:
    """A witness a with a p a^-1 = q, or None when the cycle types differ."""
    if p.n != q.n:
        raise ValueError(f"mismatched n: {p.n} vs {q.n}")
    cp, cq = p.cycles(), q.cycles()
    if [len(c) for c in cp] != [len(c) for c in cq]:
        return None
    images = [0] * p.n
    for c1, c2 in zip(cp, cq):
        for x, y in zip(c1, c2):
            images[x - 1] = y
    a = Permutation(tuple(images))
    assert conjugate(p, a) == q
    return a


def centralizer_order(p: Permutation) -> int:
    d = cycle_decomposition(p)
    order = 1
    for nu, m in zip(d.lengths, d.multiplicities):
        order *= nu ** m * _factorial(m)
    return order


def _factorial(m: int) -> int:
    out = 1
    for i in range(2, m + 1):
        out *= i
    return out


def invariant_subsets(p: Permutation, size: int) -> list[tuple[int, ...]]:
    """All X with |X| = size and p(X) = X, as sorted tuples in lexicographic order."""
    if not 0 <= size <= p.n:
        return []
    cycles = p.cycles()
    found: list[tuple[int, ...]] = []

    def walk(i: int, remaining: int, chosen: list[int]):
        if remaining == 0:
            found.append(tuple(sorted(chosen)))
            return
        if i == len(cycles):
            return
        c = cycles[i]
        if len(c) <= remaining:
            walk(i + 1, remaining - len(c), chosen + list(c))
        walk(i + 1, remaining, chosen)

    walk(0, size, [])
    return sorted(found)


@lru_cache(maxsize=None)
def _partition_table(n: int) -> tuple[int, ...]:
    p = [1] + [0] * n
    for m in range(1, n + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[m - g1]
            g2 = g1 + k
            if g2 <= m:
                total += sign * p[m - g2]
            k += 1
        p[m] = total
    return tuple(p)


def partition_count(n: int) -> int:
    """p(n) by the pentagonal-number recurrence, exact."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    return _partition_table(n)[n]


def partitions(n: int) -> Iterator[tuple[int, ...]]:
    """Partitions of n as non-decreasing tuples, in lexicographic order."""

    def gen(remaining: int, smallest: int):
        if remaining == 0:
            yield ()
            return
        for part in range(smallest, remaining + 1):
            if remaining - part == 0 or remaining - part >= part:
                for rest in gen(remaining - part, part):
                    yield (part,) + rest

    yield from gen(n, 1)


def conjugacy_class_reps(n: int) -> list[Permutation]:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return [canonical_rep(lam) for lam in partitions(n)]


def all_permutations(n: int) -> Iterator[Permutation]:
    for imgs in permutations(range(1, n + 1)):
        yield Permutation(imgs)
