"""Exact permutation arithmetic on the points ``0..degree-1``.

Permutations act on the right: ``point ^ (p * s) == (point ^ p) ^ s``, so
``compose(p, s)`` first applies ``p`` and then ``s``.  Points are 0-based
internally; the cycle-notation text format is 1-based.
"""

from __future__ import annotations

import math
import re
from collections.abc import Iterable, Sequence

MAX_DEGREE = 10_000


class Permutation:
    """An immutable permutation stored as its image sequence."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int], *, check: bool = True):
        images = tuple(images)
        if check:
            n = len(images)
            if n < 1:
                raise ValueError("permutation degree must be at least 1")
            if n > MAX_DEGREE:
                raise ValueError(f"degree {n} exceeds the cap of {MAX_DEGREE}")
            if sorted(images) != list(range(n)):
                raise ValueError(f"not a bijection on 0..{n - 1}: {images}")
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "_hash", hash(images))

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> Permutation:
        """Build from 0-based cycles; points not mentioned are fixed."""
        images = list(range(degree))
        seen = set()
        for cycle in cycles:
            for k, point in enumerate(cycle):
                if not 0 <= point < degree:
                    raise ValueError(f"point {point} outside 0..{degree - 1}")
                if point in seen:
                    raise ValueError(f"point {point} appears in two cycles")
                seen.add(point)
                images[point] = cycle[(k + 1) % len(cycle)]
        return cls(images)

    @classmethod
    def parse(cls, text: str, degree: int) -> Permutation:
        """Parse 1-based cycle notation such as ``"(1,2)(3,4,5)"`` or ``"()"``."""
        text = text.strip()
        if not re.fullmatch(r"(\(\s*(\d+(\s*,\s*\d+)*)?\s*\))+", text):
            raise ValueError(f"malformed cycle notation: {text!r}")
        cycles = []
        for body in re.findall(r"\(([^)]*)\)", text):
            if body.strip():
                cycles.append([int(tok) - 1 for tok in body.split(",")])
        return cls.from_cycles(cycles, degree)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.images == other.images

    def __hash__(self):
        return self._hash

    def __lt__(self, other: Permutation) -> bool:
        return self.images < other.images

    def __len__(self):
        return len(self.images)

    def __getitem__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __pow__(self, k: int) -> Permutation:
        if k < 0:
            return inverse(self) ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = compose(result, base)
            base = compose(base, base)
            k >>= 1
        return result

    def __invert__(self) -> Permutation:
        return inverse(self)

    def __repr__(self):
        return f"Permutation({to_cycle_string(self)}, degree={self.degree})"

    def __str__(self):
        return to_cycle_string(self)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles (0-based), each starting at its least point; 1-cycles included."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cycle = []
            point = start
            while not seen[point]:
                seen[point] = True
                cycle.append(point)
                point = self.images[point]
            out.append(tuple(cycle))
        return out


def _check_same_degree(p: Permutation, s: Permutation) -> None:
    if p.degree != s.degree:
        raise ValueError(f"degree mismatch: {p.degree} != {s.degree}")


def compose(p: Permutation, s: Permutation) -> Permutation:
    """The product ``p*s``: apply ``p`` first, then ``s``."""
    _check_same_degree(p, s)
    si = s.images
    return Permutation([si[x] for x in p.images], check=False)


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.degree
    for i, x in enumerate(p.images):
        inv[x] = i
    return Permutation(inv, check=False)


def conjugate(p: Permutation, a: Permutation) -> Permutation:
    """``a^-1 * p * a``."""
    return compose(compose(inverse(a), p), a)


def act(p: Permutation, point: int) -> int:
    return p.images[point]


def support(p: Permutation) -> frozenset[int]:
    return frozenset(i for i, x in enumerate(p.images) if i != x)


def fixed_points(p: Permutation) -> frozenset[int]:
    return frozenset(i for i, x in enumerate(p.images) if i == x)


def support_size(images: Sequence[int]) -> int:
    """Number of moved points of a raw image sequence."""
    return sum(1 for i, x in enumerate(images) if i != x)


def cycle_type(p: Permutation) -> tuple[int, ...]:
    """Cycle lengths in non-increasing order, fixed points counted as 1-cycles."""
    return tuple(sorted((len(c) for c in p.cycles()), reverse=True))


def order(p: Permutation) -> int:
    return math.lcm(*cycle_type(p))


def to_cycle_string(p: Permutation) -> str:
    """1-based cycle notation, omitting fixed points."""
    parts = [
        "(" + ",".join(str(i + 1) for i in c) + ")" for c in p.cycles() if len(c) > 1
    ]
    return "".join(parts) if parts else "()"
