"""Permutation codes, repetition codes and twisted permutation codes.

Codewords use the 1-based alphabet ``1..q``.  A code stores its words as a
lexicographically sorted array of distinct rows.
"""

from __future__ import annotations

import random
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .groups import FiniteGroup
from .perm import Permutation
from .reps import Representation, RepresentationTuple, tuple_kernel

ALL_PAIRS_LIMIT = 2000


class NontrivialKernel(ValueError):
    pass


def _as_tuple(reps) -> RepresentationTuple:
    if isinstance(reps, RepresentationTuple):
        return reps
    if isinstance(reps, Representation):
        return RepresentationTuple([reps])
    return RepresentationTuple(list(reps))


@dataclass(frozen=True)
class Provenance:
    group: FiniteGroup
    reps: RepresentationTuple


class Code:
    """A set of codewords of length ``m`` over ``{1..q}``."""

    def __init__(self, words, q: int, provenance: Provenance | None = None, base=None):
        arr = np.asarray(words)
        if arr.ndim != 2 or arr.shape[0] == 0:
            raise ValueError("a code needs at least one word, given as rows")
        if arr.min() < 1 or arr.max() > q:
            raise ValueError(f"symbols must lie in 1..{q}")
        dtype = np.uint8 if q < 256 else np.uint16
        arr = np.unique(arr.astype(dtype), axis=0)
        arr.setflags(write=False)
        self.words = arr
        self.q = q
        self.provenance = provenance
        self.base_index = None
        if base is not None:
            self.base_index = self.index(base)

    @property
    def length(self) -> int:
        return self.words.shape[1]

    def __len__(self):
        return self.words.shape[0]

    def __iter__(self):
        for row in self.words:
            yield tuple(int(x) for x in row)

    def index(self, word: Sequence[int]) -> int:
        w = np.asarray(word, dtype=self.words.dtype)
        hits = np.flatnonzero((self.words == w).all(axis=1))
        if hits.size == 0:
            raise ValueError("word not in code")
        return int(hits[0])

    def __contains__(self, word) -> bool:
        try:
            self.index(word)
        except ValueError:
            return False
        return True

    def __eq__(self, other):
        if not isinstance(other, Code):
            return NotImplemented
        return self.q == other.q and np.array_equal(self.words, other.words)

    def __hash__(self):
        return hash((self.q, self.words.tobytes()))

    def __repr__(self):
        return f"Code(size={len(self)}, length={self.length}, q={self.q})"

    def as_set(self) -> set[tuple[int, ...]]:
        return set(self)

    def distances_from(self, i: int) -> np.ndarray:
        return (self.words != self.words[i]).sum(axis=1)

    def to_csv(self) -> str:
        return "".join(",".join(str(int(x)) for x in row) + "\n" for row in self.words)

    def is_frequency_array(self, r: int | None = None) -> bool:
        """Each symbol appears the same number of times (``r``) in every word."""
        m = self.length
        if m % self.q:
            return False
        r = m // self.q if r is None else r
        counts = np.stack([(self.words == s).sum(axis=1) for s in range(1, self.q + 1)], axis=1)
        return bool((counts == r).all())


@dataclass(frozen=True)
class DistanceDistribution:
    """Per-codeword counts ``a_0..a_m``; ``a_0 = 1`` and the counts sum to ``|C|``."""

    counts: tuple

    @classmethod
    def from_distances(cls, distances: np.ndarray, length: int) -> DistanceDistribution:
        c = np.bincount(np.asarray(distances, dtype=np.int64), minlength=length + 1)
        return cls(tuple(int(x) for x in c))

    @property
    def length(self) -> int:
        return len(self.counts) - 1

    def nonzero(self) -> dict[int, int]:
        return {i: a for i, a in enumerate(self.counts) if a}

    def min_distance(self) -> int:
        ds = [i for i, a in enumerate(self.counts) if a and i > 0]
        return ds[0] if ds else 0

    def is_integral(self) -> bool:
        return all(Fraction(a).denominator == 1 for a in self.counts)

    def to_csv(self) -> str:
        lines = ["distance,count"]
        lines += [f"{i},{a}" for i, a in self.nonzero().items()]
        return "\n".join(lines) + "\n"


def passive_form(t: Permutation, rho: Representation) -> tuple[int, ...]:
    """``(1^{t rho}, ..., q^{t rho})`` on the 1-based alphabet."""
    return tuple(int(x) + 1 for x in rho.images[rho.source.index(t)])


def tuple_word(t: Permutation, reps) -> tuple[int, ...]:
    reps = _as_tuple(reps)
    out: list[int] = []
    for rho in reps:
        out.extend(passive_form(t, rho))
    return tuple(out)


def _word_array(reps: RepresentationTuple) -> np.ndarray:
    return np.hstack([rho.images + 1 for rho in reps])


def twisted_code(G: FiniteGroup, reps) -> Code:
    """``{(alpha(t, rho_1), ..., alpha(t, rho_r)) : t in G}``."""
    reps = _as_tuple(reps)
    if reps.source is not G:
        raise ValueError("representations must be of the given group")
    words = _word_array(reps)
    base = words[0]
    code = Code(words, reps.degree, Provenance(G, reps), base=base)
    return code


def permutation_code(G: FiniteGroup, rho: Representation) -> Code:
    return twisted_code(G, [rho])


def repetition_code(G: FiniteGroup, rho: Representation, r: int) -> Code:
    if r < 1:
        raise ValueError("repetition count must be at least 1")
    return twisted_code(G, [rho] * r)


def hamming_distance(u: Sequence[int], v: Sequence[int]) -> int:
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} != {len(v)}")
    return sum(1 for a, b in zip(u, v) if a != b)


def min_distance_via_supports(G: FiniteGroup, reps) -> int:
    """Least support sum over nonidentity conjugacy classes.

    Support sizes are class functions, so one representative per class is enough.
    """
    reps = _as_tuple(reps)
    if G.order < 2:
        return 0
    if len(tuple_kernel(reps)) != 1:
        raise NontrivialKernel(
            "the tuple has a nontrivial common kernel; pass to the quotient group first"
        )
    profiles = [rho.support_profile() for rho in reps]
    sums = [sum(p[c.index] for p in profiles) for c in G.conjugacy_classes[1:]]
    return min(sums)


def _all_pairs_min(words: np.ndarray) -> int:
    best = None
    for i in range(len(words) - 1):
        d = int((words[i + 1 :] != words[i]).sum(axis=1).min())
        if best is None or d < best:
            best = d
    return best


def min_distance_bruteforce(C: Code) -> int:
    """Exact minimum distance, or 0 for a one-word code.

    All pairs are compared up to 2000 words; larger codes must carry a group
    provenance, which makes them distance invariant so the scan from the base
    word suffices.
    """
    if len(C) == 1:
        return 0
    if len(C) <= ALL_PAIRS_LIMIT:
        return _all_pairs_min(C.words)
    if C.provenance is None or C.base_index is None:
        raise ValueError(
            f"all-pairs search is capped at {ALL_PAIRS_LIMIT} words; "
            "larger codes need a group provenance"
        )
    d = C.distances_from(C.base_index)
    return int(d[d > 0].min())


def inner_distribution(C: Code, exhaustive: bool = False) -> DistanceDistribution:
    """Inner distance distribution.

    Group codes are distance invariant, so the profile from the base word is
    the distribution.  Otherwise every pair is counted and the average may be
    a non-integer, returned as a :class:`Fraction`.
    """
    m = C.length
    if C.provenance is not None and C.base_index is not None and not exhaustive:
        return DistanceDistribution.from_distances(C.distances_from(C.base_index), m)
    if len(C) > ALL_PAIRS_LIMIT:
        raise ValueError("all-pairs distribution is capped at 2000 words")
    total = np.zeros(m + 1, dtype=np.int64)
    for i in range(len(C)):
        total += np.bincount(C.distances_from(i), minlength=m + 1)
    n = len(C)
    counts = tuple(
        int(a) // n if a % n == 0 else Fraction(int(a), n) for a in total
    )
    return DistanceDistribution(counts)


def repetition_distances(G: FiniteGroup, reps) -> list[int]:
    """``delta(Rep_r(C(G, rho)))`` for every member ``rho`` (0 for a one-word code)."""
    reps = _as_tuple(reps)
    r = len(reps)
    return [0 if rho.is_trivial() else r * rho.least_nonzero_support() for rho in reps]


def delta_rep_lower_bound(G: FiniteGroup, reps) -> int:
    """``min_rho r * min_{t != 1} |supp(t rho)|``.

    Agrees with the least repetition distance for faithful members; a member
    with a nontrivial kernel contributes 0.
    """
    reps = _as_tuple(reps)
    r = len(reps)
    return min(0 if rho.is_trivial() else r * rho.minimal_degree() for rho in reps)


def distance_invariance_check(
    C: Code, sample: int | None = None, seed: int = 0
) -> bool:
    """Whether every codeword sees the same distance profile.

    Exhaustive up to 2000 words (or when ``sample`` is None and the code is
    small); otherwise compares a seed-fixed sample of codewords against the
    first word.
    """
    m = C.length
    n = len(C)
    if n == 1:
        return True
    if sample is None and n > ALL_PAIRS_LIMIT:
        sample = 8
    if sample is None:
        idx = range(n)
    else:
        rng = random.Random(seed)
        idx = [0] + rng.sample(range(1, n), min(sample, n - 1))
    base = np.bincount(C.distances_from(0), minlength=m + 1)
    for i in idx:
        if not np.array_equal(np.bincount(C.distances_from(i), minlength=m + 1), base):
            return False
    return True
