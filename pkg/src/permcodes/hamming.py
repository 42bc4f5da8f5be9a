"""Automorphisms of the Hamming graph H(m, q), neighbour sets and orbits.

An automorphism is a pair (column maps g_1..g_m, position map s).  It sends
the vertex ``v`` to ``w`` with ``w[s(i)] = g_i(v[i])``; symbols are 1-based,
the maps themselves are 0-based permutations.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

import numpy as np

from .codes import Code, min_distance_via_supports
from .groups import FiniteGroup, normalizer_in_symmetric
from .perm import Permutation, compose, conjugate
from .reps import Representation, RepresentationTuple

NEIGHBOUR_LIMIT = 1_000_000


class NotClosed(ValueError):
    """A vertex set is not closed under the given automorphisms."""


class HammingAutomorphism:
    __slots__ = ("column_maps", "position_map", "q", "m", "_cols")

    def __init__(self, column_maps: Sequence[Permutation], position_map: Permutation):
        column_maps = tuple(column_maps)
        if not column_maps:
            raise ValueError("need at least one column map")
        q = column_maps[0].degree
        if any(g.degree != q for g in column_maps):
            raise ValueError("column maps must share one degree")
        if position_map.degree != len(column_maps):
            raise ValueError("position map degree must equal the number of columns")
        self.column_maps = column_maps
        self.position_map = position_map
        self.q = q
        self.m = len(column_maps)
        self._cols = np.array([g.images for g in column_maps], dtype=np.int64)

    @classmethod
    def identity(cls, m: int, q: int) -> HammingAutomorphism:
        e = Permutation.identity(q)
        return cls([e] * m, Permutation.identity(m))

    @classmethod
    def position_swap(cls, q: int, blocks: int = 2, a: int = 0, b: int = 1):
        """Exchange block ``a`` with block ``b`` of a word made of ``blocks`` blocks of size q."""
        m = q * blocks
        images = list(range(m))
        for i in range(q):
            images[a * q + i], images[b * q + i] = b * q + i, a * q + i
        return cls([Permutation.identity(q)] * m, Permutation(images))

    def __eq__(self, other):
        if not isinstance(other, HammingAutomorphism):
            return NotImplemented
        return self.column_maps == other.column_maps and self.position_map == other.position_map

    def __hash__(self):
        return hash((self.column_maps, self.position_map))

    def __repr__(self):
        return f"HammingAutomorphism(m={self.m}, q={self.q}, positions={self.position_map})"

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.m:
            raise ValueError(f"vertex has length {len(v)}, expected {self.m}")
        out = [0] * self.m
        s = self.position_map.images
        for i, a in enumerate(v):
            if not 1 <= a <= self.q:
                raise ValueError(f"symbol {a} outside 1..{self.q}")
            out[s[i]] = self.column_maps[i].images[a - 1] + 1
        return tuple(out)

    def apply_array(self, words: np.ndarray) -> np.ndarray:
        """Vectorised :meth:`apply` on the rows of ``words``."""
        words = np.asarray(words)
        if words.ndim != 2 or words.shape[1] != self.m:
            raise ValueError(f"rows must have length {self.m}")
        mapped = np.take_along_axis(self._cols.T, words.astype(np.int64) - 1, axis=0)
        out = np.empty_like(mapped)
        out[:, list(self.position_map.images)] = mapped
        return (out + 1).astype(words.dtype)

    def then(self, other: HammingAutomorphism) -> HammingAutomorphism:
        """The automorphism that applies ``self`` first and ``other`` second."""
        if (self.m, self.q) != (other.m, other.q):
            raise ValueError("automorphisms of different Hamming graphs")
        s = self.position_map.images
        cols = [compose(self.column_maps[i], other.column_maps[s[i]]) for i in range(self.m)]
        return HammingAutomorphism(cols, compose(self.position_map, other.position_map))

    def __mul__(self, other):
        return self.then(other)


def block_automorphism(parts: Sequence[tuple[Permutation, Permutation]]) -> HammingAutomorphism:
    """Direct product of per-block automorphisms given as (column map, position map).

    Each block uses one column map for all of its positions.
    """
    cols: list[Permutation] = []
    pos: list[int] = []
    offset = 0
    for g, s in parts:
        cols.extend([g] * s.degree)
        pos.extend(offset + x for x in s.images)
        offset += s.degree
    return HammingAutomorphism(cols, Permutation(pos))


def diag_automorphism(t: Permutation, reps) -> HammingAutomorphism:
    """``x(t, I)``: the column map ``t rho_k`` on every position of block ``k``."""
    reps = _tuple(reps)
    q = reps.degree
    cols = []
    for rho in reps:
        cols.extend([rho.image_of(t)] * q)
    return HammingAutomorphism(cols, Permutation.identity(len(cols)))


def normaliser_automorphism(y: Permutation) -> HammingAutomorphism:
    """``a(y, rho)`` for one block: column maps and position map all equal to ``y``."""
    return HammingAutomorphism([y] * y.degree, y)


def _tuple(reps) -> RepresentationTuple:
    return reps if isinstance(reps, RepresentationTuple) else RepresentationTuple(list(reps))


# -- neighbours ---------------------------------------------------------------


def neighbour_array(C: Code, min_distance: int | None = None) -> np.ndarray:
    """All vertices at distance exactly 1 from ``C``, as sorted unique rows.

    Every word is perturbed in every position to every other symbol and the
    code itself is removed.  When the minimum distance is at least 3 the
    radius-1 balls are disjoint and the count ``|C| m (q-1)`` is asserted.
    """
    n, m = C.words.shape
    q = C.q
    total = n * m * (q - 1)
    if total > NEIGHBOUR_LIMIT:
        raise ValueError(f"neighbour set would have up to {total} vertices (cap {NEIGHBOUR_LIMIT})")
    words = C.words.astype(np.int64)
    blocks = []
    for i in range(m):
        for shift in range(1, q):
            w = words.copy()
            w[:, i] = (w[:, i] - 1 + shift) % q + 1
            blocks.append(w)
    cand = np.unique(np.vstack(blocks), axis=0)
    keep = ~_rows_in(cand, words)
    out = cand[keep].astype(C.words.dtype)
    if min_distance is not None and min_distance >= 3 and len(out) != total:
        raise AssertionError(f"expected {total} neighbours from disjoint balls, got {len(out)}")
    return out


def neighbour_set(C: Code, min_distance: int | None = None) -> set[tuple[int, ...]]:
    return {tuple(int(x) for x in row) for row in neighbour_array(C, min_distance)}


def _row_view(a: np.ndarray) -> np.ndarray:
    # big-endian bytes so that byte order agrees with the lexicographic row order
    a = np.ascontiguousarray(a, dtype=">i8")
    return a.view(np.dtype((np.void, a.dtype.itemsize * a.shape[1]))).ravel()


def _rows_in(rows: np.ndarray, pool: np.ndarray) -> np.ndarray:
    return np.isin(_row_view(rows), _row_view(pool))


# -- orbits ---------------------------------------------------------------------


class VertexIndex:
    """Sorted vertex rows with fast row -> index lookup."""

    def __init__(self, rows: np.ndarray):
        rows = np.unique(np.asarray(rows, dtype=np.int64), axis=0)
        self.rows = rows
        self._keys = _row_view(rows)

    def __len__(self):
        return len(self.rows)

    def lookup(self, rows: np.ndarray) -> np.ndarray:
        """Indices of ``rows``; raises :class:`NotClosed` naming the first row not present."""
        keys = _row_view(rows)
        pos = np.searchsorted(self._keys, keys)
        pos = np.minimum(pos, len(self._keys) - 1)
        bad = self._keys[pos] != keys
        if bad.any():
            k = int(np.flatnonzero(bad)[0])
            v = tuple(int(x) for x in np.asarray(rows)[k])
            raise NotClosed(f"vertex {v} escapes the set")
        return pos


def orbits(gens: Iterable[HammingAutomorphism], S) -> list[np.ndarray]:
    """Orbits of ``<gens>`` on ``S``, each as an array of rows, largest first.

    Orbits are the connected components of the graph with edges ``v -> v^g``;
    closure of ``S`` under every generator is checked on the way.
    """
    rows = np.array(sorted(S), dtype=np.int64) if not isinstance(S, np.ndarray) else S
    index = VertexIndex(rows)
    n = len(index)
    images = [index.lookup(g.apply_array(index.rows)) for g in gens]
    label = np.full(n, -1, dtype=np.int64)
    comps = []
    for start in range(n):
        if label[start] >= 0:
            continue
        c = len(comps)
        label[start] = c
        frontier = np.array([start])
        members = [frontier]
        while frontier.size:
            nxt = np.unique(np.concatenate([img[frontier] for img in images]))
            nxt = nxt[label[nxt] < 0]
            label[nxt] = c
            members.append(nxt)
            frontier = nxt
        comps.append(np.sort(np.concatenate(members)))
    comps.sort(key=lambda idx: (-len(idx), int(idx[0])))
    return [index.rows[idx] for idx in comps]


def orbit_sizes(gens, S) -> list[int]:
    return [len(o) for o in orbits(gens, S)]


def is_single_orbit(gens, S) -> bool:
    return len(orbits(list(gens), S)) == 1


# -- neighbour-transitive generators -------------------------------------------


def check_involutory_twist(G: FiniteGroup, rho: Representation) -> None:
    """``rho`` must map into ``G`` itself (as permutations) and satisfy ``rho^2 = 1``."""
    if rho.degree != G.degree:
        raise ValueError("the twist must have the group's own degree")
    image_idx = G.index_rows(rho.images)
    for k in range(len(G.generators)):
        t = int(G.gen_table[0, k])
        if int(image_idx[int(image_idx[t])]) != t:
            raise ValueError("the twist does not square to the identity")


def _natural_check(G: FiniteGroup, rho: Representation) -> None:
    if rho.degree != G.degree or not np.array_equal(rho.images, G.array):
        raise ValueError("the first member must be the natural (identity) representation")


def twisted_normaliser_element(G: FiniteGroup, N: FiniteGroup, rho: Representation, y: Permutation):
    """The unique ``y'`` in ``N`` with ``y'^-1 t y' = rho(y^-1 rho(t) y)`` for all ``t`` in ``G``."""
    targets = []
    for t in G.generators:
        inner = conjugate(rho.image_of(t), y)
        targets.append(rho.image_of(inner))
    hits = [z for z in N.elements if all(conjugate(t, z) == s for t, s in zip(G.generators, targets))]
    if len(hits) != 1:
        raise AssertionError(f"expected one twisted normaliser element, found {len(hits)}")
    return hits[0]


class NeighbourGenerators:
    """Generators of ``<Diag(T, I), A(T, I), sigma>`` for ``I = (identity, rho_2)``."""

    def __init__(self, G: FiniteGroup, reps):
        reps = _tuple(reps)
        if len(reps) != 2:
            raise ValueError("the construction needs exactly two representations")
        rho1, rho2 = reps
        _natural_check(G, rho1)
        check_involutory_twist(G, rho2)
        self.group = G
        self.reps = reps
        self.q = G.degree
        self.normaliser = normalizer_in_symmetric(G)
        self.diag = [diag_automorphism(t, reps) for t in G.generators]
        self.a = []
        self.twisted = []
        for y in self.normaliser.generators:
            y2 = twisted_normaliser_element(G, self.normaliser, rho2, y)
            self.twisted.append((y, y2))
            self.a.append(
                block_automorphism([(y, y), (y2, y2)])
            )
        self.sigma = HammingAutomorphism.position_swap(self.q)
        self._verify()

    def _verify(self) -> None:
        G, reps = self.group, self.reps
        words = np.hstack([rho.images + 1 for rho in reps])
        for (y, _), a in zip(self.twisted, self.a):
            yi = G.index_rows(np.array([conjugate(t, y).images for t in G.elements]))
            if not np.array_equal(a.apply_array(words), words[yi]):
                raise AssertionError(f"a(y) does not act as conjugation by y = {y}")
        swap_idx = G.index_rows(reps[1].images)
        if not np.array_equal(self.sigma.apply_array(words), words[swap_idx]):
            raise AssertionError("the block swap does not send alpha(t) to alpha(t rho_2)")

    @property
    def all(self) -> list[HammingAutomorphism]:
        return self.diag + self.a + [self.sigma]

    def without_swap(self) -> list[HammingAutomorphism]:
        return self.diag + self.a


def build_nt_generators(G: FiniteGroup, reps) -> NeighbourGenerators:
    return NeighbourGenerators(G, reps)


def neighbour_report(G: FiniteGroup, reps) -> dict:
    """Orbit data for the code and its neighbours under the three generator sets."""
    from .codes import twisted_code

    gens = NeighbourGenerators(G, reps)
    C = twisted_code(G, gens.reps)
    delta = min_distance_via_supports(G, gens.reps)
    nb = neighbour_array(C, delta)
    words = C.words.astype(np.int64)
    stable = all(_rows_in(g.apply_array(words), words).all() for g in gens.all)
    return {
        "code_size": len(C),
        "length": C.length,
        "min_distance": delta,
        "normaliser_order": gens.normaliser.order,
        "stabilises_code": bool(stable),
        "code_orbits_diag": orbit_sizes(gens.diag, words),
        "neighbours": len(nb),
        "predicted_neighbours": len(C) * C.length * (C.q - 1),
        "orbits_full": orbit_sizes(gens.all, nb),
        "orbits_without_swap": orbit_sizes(gens.without_swap(), nb),
        "orbits_diag": len(orbits(gens.diag, nb)),
    }
