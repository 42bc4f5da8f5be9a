"""Finite permutation groups held as fully enumerated element lists.

Every group used here has at most ~10^5 elements, so closure by breadth-first
multiplication is cheap and makes classes, subgroups and cosets exact.
Subgroups are passed around as ``frozenset``s of :class:`Permutation`.
"""

from __future__ import annotations

import itertools
import math
import random
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .perm import Permutation, cycle_type, inverse, to_cycle_string

DEFAULT_ORDER_CAP = 2_000_000
SUBGROUP_SEARCH_LIMIT = 10_000
NORMALIZER_MAX_DEGREE = 8
DEFAULT_SEED = 20140101

Raw = tuple  # image tuple of a permutation


class GroupTooLarge(ValueError):
    pass


class IncompleteSearch(RuntimeError):
    pass


def _mul(a: Raw, b: Raw) -> Raw:
    return tuple([b[x] for x in a])


def _inv(a: Raw) -> Raw:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def closure(gens: Sequence[Raw], cap: int | None = None, forbidden=None):
    """Element set of the group generated by raw image tuples.

    Returns ``None`` as soon as the closure exceeds ``cap`` elements or meets
    an element of ``forbidden``.
    """
    degree = len(gens[0])
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for e in frontier:
            for s in gens:
                p = tuple([s[x] for x in e])
                if p in seen:
                    continue
                if forbidden is not None and p in forbidden:
                    return None
                seen.add(p)
                new.append(p)
                if cap is not None and len(seen) > cap:
                    return None
        frontier = new
    return seen


@dataclass(frozen=True)
class ConjugacyClass:
    index: int
    representative: Permutation
    order: int
    members: tuple[int, ...]  # element indices, ascending

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def label(self) -> str:
        return f"C{self.index + 1}"


class FiniteGroup:
    """A permutation group with every element enumerated.

    ``elements`` is sorted lexicographically by image sequence, so indices are
    canonical.  Each element also records the breadth-first tree edge that
    first produced it, which yields a generator word and lets homomorphisms
    defined on generators be extended to all elements.
    """

    def __init__(self, degree, generators, raw_elements, parent, via, bfs_order, gen_table):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = [Permutation(e, check=False) for e in raw_elements]
        self._index = {e: i for i, e in enumerate(raw_elements)}
        self.parent = parent
        self.via = via
        self.bfs_order = bfs_order
        # gen_table[i, k] = index of elements[i] * generators[k]
        self.gen_table = gen_table

    @classmethod
    def generate(
        cls,
        degree: int,
        generators: Iterable[Permutation],
        order_cap: int = DEFAULT_ORDER_CAP,
    ) -> FiniteGroup:
        gens = [g for g in generators]
        for g in gens:
            if g.degree != degree:
                raise ValueError(f"generator {g} has degree {g.degree}, expected {degree}")
        if not gens:
            gens = [Permutation.identity(degree)]
        raw_gens = [g.images for g in gens]
        ident = tuple(range(degree))
        found = {ident: 0}
        elems = [ident]
        parent = [-1]
        via = [-1]
        products = []
        i = 0
        while i < len(elems):
            e = elems[i]
            row = []
            for k, s in enumerate(raw_gens):
                p = tuple([s[x] for x in e])
                j = found.get(p)
                if j is None:
                    j = len(elems)
                    if j >= order_cap:
                        raise GroupTooLarge(f"group order exceeds order_cap={order_cap}")
                    found[p] = j
                    elems.append(p)
                    parent.append(i)
                    via.append(k)
                row.append(j)
            products.append(row)
            i += 1
        n = len(elems)
        perm = sorted(range(n), key=elems.__getitem__)
        rank = np.empty(n, dtype=np.int64)
        rank[perm] = np.arange(n)
        sorted_elems = [elems[j] for j in perm]
        parent_arr = np.full(n, -1, dtype=np.int64)
        via_arr = np.full(n, -1, dtype=np.int64)
        old_parent = np.asarray(parent)
        mask = old_parent >= 0
        parent_arr[rank[mask]] = rank[old_parent[mask]]
        via_arr[rank[mask]] = np.asarray(via)[mask]
        table = np.asarray(products, dtype=np.int64)
        gen_table = np.empty_like(table)
        gen_table[rank] = rank[table]
        bfs_order = rank  # rank[j] is the sorted index of the j-th BFS element
        return cls(degree, gens, sorted_elems, parent_arr, via_arr, bfs_order, gen_table)

    # -- basic access -------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, p: Permutation) -> bool:
        return p.images in self._index

    def __repr__(self):
        return f"FiniteGroup(degree={self.degree}, order={self.order})"

    def index(self, p: Permutation) -> int:
        try:
            return self._index[p.images]
        except KeyError:
            raise ValueError(f"{p} is not an element of this group") from None

    def index_raw(self, images: Raw) -> int:
        return self._index[images]

    @property
    def identity(self) -> Permutation:
        return self.elements[0]

    @cached_property
    def array(self) -> np.ndarray:
        """Elements as an ``order x degree`` integer array."""
        return np.array([e.images for e in self.elements], dtype=np.int64).reshape(
            self.order, self.degree
        )

    @cached_property
    def _row_keys(self):
        rng = np.random.default_rng(0x5EED)
        weights = rng.integers(1, 2**62, size=self.degree, dtype=np.int64)
        keys = self.array @ weights  # wraps modulo 2^64; collisions are caught below
        order = np.argsort(keys, kind="stable")
        return weights, keys[order], order

    def index_rows(self, rows: np.ndarray) -> np.ndarray:
        """Element indices of the permutations given as rows of an integer array."""
        rows = np.asarray(rows, dtype=np.int64)
        weights, sorted_keys, order = self._row_keys
        keys = rows @ weights
        pos = np.searchsorted(sorted_keys, keys)
        pos = np.minimum(pos, len(sorted_keys) - 1)
        idx = order[pos]
        if not np.array_equal(self.array[idx], rows):
            raise ValueError("some rows are not elements of this group")
        return idx

    def word(self, g: Permutation) -> list[int]:
        """Generator indices ``w`` with ``g = gens[w[0]] * gens[w[1]] * ...``."""
        i = self.index(g)
        out = []
        while self.parent[i] >= 0:
            out.append(int(self.via[i]))
            i = int(self.parent[i])
        out.reverse()
        return out

    def evaluate_word(self, word: Sequence[int]) -> Permutation:
        result = Permutation.identity(self.degree)
        for k in word:
            result = result * self.generators[k]
        return result

    def mul(self, a: Permutation, b: Permutation) -> Permutation:
        return a * b

    def extend_homomorphism(self, gen_images: np.ndarray) -> np.ndarray:
        """Images of all elements under the map fixed on the generators.

        ``gen_images`` has shape ``(len(generators), q)``.  The result is only
        a homomorphism if the generator images satisfy the group's relations;
        callers verify that separately.
        """
        gen_images = np.asarray(gen_images, dtype=np.int64)
        q = gen_images.shape[1]
        out = np.empty((self.order, q), dtype=np.int64)
        out[0] = np.arange(q)
        order = self.bfs_order[1:]
        # process in BFS levels so every parent is filled before its children
        depth = np.zeros(self.order, dtype=np.int64)
        for i in order:
            depth[i] = depth[self.parent[i]] + 1
        ranked = order[np.argsort(depth[order], kind="stable")]
        levels = np.split(ranked, np.flatnonzero(np.diff(depth[ranked])) + 1)
        for level in levels:
            if len(level) == 0:
                continue
            par = out[self.parent[level]]
            g = self.via[level]
            out[level] = gen_images[g[:, None], par]
        return out

    # -- structure ----------------------------------------------------------

    def element_order(self, g: Permutation) -> int:
        return math.lcm(*cycle_type(g))

    @cached_property
    def conjugacy_classes(self) -> tuple[ConjugacyClass, ...]:
        """Classes ordered by (element order, class size, least member)."""
        n = self.order
        class_id = np.full(n, -1, dtype=np.int64)
        raw_gens = [g.images for g in self.generators]
        raw_invs = [_inv(g) for g in raw_gens]
        blocks = []
        elems = [e.images for e in self.elements]
        for start in range(n):
            if class_id[start] >= 0:
                continue
            cid = len(blocks)
            class_id[start] = cid
            members = [start]
            frontier = [elems[start]]
            while frontier:
                new = []
                for x in frontier:
                    for s, si in zip(raw_gens, raw_invs):
                        # s^-1 x s
                        c = tuple([s[x[si[i]]] for i in range(len(x))])
                        j = self._index[c]
                        if class_id[j] < 0:
                            class_id[j] = cid
                            members.append(j)
                            new.append(c)
                frontier = new
            blocks.append(sorted(members))
        keyed = []
        for members in blocks:
            rep = self.elements[members[0]]
            keyed.append((self.element_order(rep), len(members), members[0], members))
        keyed.sort(key=lambda t: t[:3])
        classes = tuple(
            ConjugacyClass(k, self.elements[m[0]], o, tuple(m))
            for k, (o, _, _, m) in enumerate(keyed)
        )
        return classes

    @cached_property
    def class_of(self) -> np.ndarray:
        out = np.empty(self.order, dtype=np.int64)
        for c in self.conjugacy_classes:
            out[list(c.members)] = c.index
        return out

    @cached_property
    def element_orders(self) -> np.ndarray:
        orders = np.array([c.order for c in self.conjugacy_classes], dtype=np.int64)
        return orders[self.class_of]

    def is_subgroup(self, elements: Iterable[Permutation]) -> bool:
        H = set(elements)
        if not H or not all(h in self for h in H):
            return False
        if self.identity not in H:
            return False
        gens = _small_generating_set(H)
        return all(a * b in H for a in H for b in gens)

    def subgroup(self, generators: Iterable[Permutation]) -> frozenset[Permutation]:
        gens = [g.images for g in generators] or [self.identity.images]
        raw = closure(gens)
        return frozenset(self.elements[self._index[e]] for e in raw)

    def conjugate_subgroup(self, H: Iterable[Permutation], g: Permutation) -> frozenset:
        gi = inverse(g)
        return frozenset(gi * h * g for h in H)

    def is_normal(self, N: Iterable[Permutation]) -> bool:
        N = frozenset(N)
        return all(self.conjugate_subgroup(N, s) == N for s in self.generators)

    def subgroup_conjugacy_orbit(self, H: frozenset) -> list[frozenset]:
        """All distinct conjugates of ``H``, found by conjugating with generators."""
        orbit = [H]
        seen = {H}
        i = 0
        while i < len(orbit):
            K = orbit[i]
            for s in self.generators:
                C = self.conjugate_subgroup(K, s)
                if C not in seen:
                    seen.add(C)
                    orbit.append(C)
            i += 1
        return orbit

    def subgroups_conjugate(self, H1: frozenset, H2: frozenset) -> bool:
        """Whether some element of the group conjugates ``H1`` onto ``H2``."""
        if len(H1) != len(H2):
            return False
        gens = _small_generating_set(H1)
        H2raw = {h.images for h in H2}
        transversal = CosetDecomposition(self, H1).representatives
        # H1^(h g) = H1^g for h in H1, so one element per right coset suffices
        for g in transversal:
            gi = inverse(g)
            if all((gi * x * g).images in H2raw for x in gens):
                return True
        return False

    def core(self, H: frozenset) -> frozenset:
        """Largest normal subgroup of the group contained in ``H``."""
        out = set(H)
        for K in self.subgroup_conjugacy_orbit(frozenset(H)):
            out &= K
        return frozenset(out)

    def to_text(self) -> str:
        lines = [f"degree {self.degree}"]
        lines += [to_cycle_string(g) for g in self.generators]
        return "\n".join(lines) + "\n"


def symmetric_group(n: int) -> FiniteGroup:
    if n == 1:
        return FiniteGroup.generate(1, [])
    gens = [Permutation.from_cycles([(0, 1)], n), Permutation.from_cycles([tuple(range(n))], n)]
    return FiniteGroup.generate(n, gens)


def alternating_group(n: int) -> FiniteGroup:
    if n < 3:
        return FiniteGroup.generate(n, [])
    if n % 2:
        gens = [Permutation.from_cycles([(0, 1, 2)], n), Permutation.from_cycles([tuple(range(n))], n)]
    else:
        gens = [
            Permutation.from_cycles([(0, 1, 2)], n),
            Permutation.from_cycles([tuple(range(1, n))], n),
        ]
    return FiniteGroup.generate(n, gens)


def _small_generating_set(H: Iterable[Permutation]) -> list[Permutation]:
    """A short generating set of a finite subgroup, chosen greedily."""
    H = sorted(H)
    target = len(H)
    gens: list[Permutation] = []
    span = {H[0].images}
    # try large-order elements first; they tend to generate quickly
    by_order = sorted(H, key=lambda p: (-math.lcm(*cycle_type(p)), p.images))
    for p in by_order:
        if len(span) == target:
            break
        if p.images in span:
            continue
        gens.append(p)
        span = closure([g.images for g in gens])
    return gens or [H[0]]


def generating_set(H: Iterable[Permutation]) -> list[Permutation]:
    return _small_generating_set(H)


class CosetDecomposition:
    """Right cosets ``H g`` of a subgroup; representative 0 is the identity."""

    def __init__(self, parent: FiniteGroup, subgroup: Iterable[Permutation]):
        self.parent = parent
        self.subgroup_elements = frozenset(subgroup)
        H = self.subgroup_elements
        if parent.identity not in H or not all(h in parent for h in H):
            raise ValueError("subgroup must contain the identity and lie in the parent group")
        if parent.order % len(H):
            raise ValueError("subgroup order does not divide the group order")
        self._H = {h.images for h in H}
        ident = parent.identity.images
        reps = [ident]
        inv_reps = [ident]
        action = []
        gens = [g.images for g in parent.generators]
        i = 0
        index_count = parent.order // len(H)
        while i < len(reps):
            row = []
            for s in gens:
                x = _mul(reps[i], s)
                j = self._find(x, inv_reps)
                if j is None:
                    j = len(reps)
                    reps.append(x)
                    inv_reps.append(_inv(x))
                row.append(j)
            action.append(row)
            i += 1
            if len(reps) > index_count:
                raise ValueError("given element set is not closed under multiplication")
        if len(reps) != index_count:
            raise ValueError("given element set is not a subgroup")
        self.representatives = [Permutation(r, check=False) for r in reps]
        self._inv_reps = inv_reps
        # generator_action[k][i] = coset index of rep_i * gen_k
        self.generator_action = [list(col) for col in zip(*action)]

    def _find(self, x: Raw, inv_reps) -> int | None:
        H = self._H
        for j, rj in enumerate(inv_reps):
            if _mul(x, rj) in H:
                return j
        return None

    def __len__(self):
        return len(self.representatives)

    def coset_index(self, g: Permutation) -> int:
        j = self._find(g.images, self._inv_reps)
        if j is None:
            raise ValueError(f"{g} is not in the parent group")
        return j

    @cached_property
    def coset_of(self) -> dict[Permutation, int]:
        out = {}
        for i, r in enumerate(self.representatives):
            for h in self.subgroup_elements:
                out[h * r] = i
        return out


def coset_action(G: FiniteGroup, H: Iterable[Permutation], name: str | None = None):
    """Representation of ``G`` on the right cosets of ``H``."""
    from .reps import Representation

    H = frozenset(H)
    if not H or not all(h in G for h in H):
        raise ValueError("subgroup elements must belong to the group")
    gens = _small_generating_set(H)
    if any(a * b not in H for a in H for b in gens):
        raise ValueError("element set is not closed under multiplication")
    cosets = CosetDecomposition(G, H)
    gen_images = np.array(cosets.generator_action, dtype=np.int64)
    rep = Representation.from_generator_images(G, gen_images, name=name)
    rep.cosets = cosets
    return rep


def _search_candidates(G: FiniteGroup, n: int, exclude: frozenset | None = None):
    orders = G.element_orders
    ok = [i for i in range(G.order) if n % int(orders[i]) == 0]
    if exclude is not None:
        ex = {G.index(x) for x in exclude} - {0}
        ok = [i for i in ok if i not in ex]
    return ok


def _two_generator_search(G: FiniteGroup, n: int, forbidden=None, exclude=None) -> list[frozenset]:
    """Distinct order-``n`` subgroups ``<a, b>`` with ``a`` a class representative.

    Together with conjugation this reaches every 2-generated subgroup of order ``n``.
    """
    cand = _search_candidates(G, n, exclude)
    elems = [e.images for e in G.elements]
    found: list[set] = []
    found_keys = set()
    for cls in G.conjugacy_classes:
        a = cls.representative.images
        if n % cls.order:
            continue
        if exclude is not None and cls.representative in exclude and cls.order > 1:
            continue
        for j in cand:
            b = elems[j]
            if any(a in S and b in S for S in found):
                continue
            S = closure([a, b], cap=n, forbidden=forbidden)
            if S is None or len(S) != n:
                continue
            key = frozenset(S)
            if key not in found_keys:
                found_keys.add(key)
                found.append(S)
    return [frozenset(G.elements[G.index_raw(e)] for e in S) for S in found]


def _fuse_classes(G: FiniteGroup, subgroups: list[frozenset]) -> list[list[frozenset]]:
    classes = []
    seen = set()
    for H in subgroups:
        if H in seen:
            continue
        orbit = G.subgroup_conjugacy_orbit(H)
        seen.update(orbit)
        orbit.sort(key=lambda K: sorted(G.index(x) for x in K))
        classes.append(orbit)
    classes.sort(key=lambda orb: sorted(G.index(x) for x in orb[0]))
    return classes


def subgroup_classes(G: FiniteGroup, n: int) -> list[list[frozenset]]:
    """Conjugacy classes of order-``n`` subgroups, each listed in full.

    Complete whenever every subgroup of order ``n`` is generated by two
    elements (true, for instance, for every group of order 12).
    """
    if n < 1 or G.order % n:
        raise ValueError(f"{n} does not divide the group order {G.order}")
    if G.order > SUBGROUP_SEARCH_LIMIT:
        raise GroupTooLarge(
            f"subgroup search is limited to groups of order <= {SUBGROUP_SEARCH_LIMIT}"
        )
    return _fuse_classes(G, _two_generator_search(G, n))


def subgroups_of_order(G: FiniteGroup, n: int, up_to_conjugacy: bool = True) -> list[frozenset]:
    classes = subgroup_classes(G, n)
    if up_to_conjugacy:
        return [orbit[0] for orbit in classes]
    return [H for orbit in classes for H in orbit]


def complement_classes(
    G: FiniteGroup,
    N: Iterable[Permutation],
    expected: int | None = None,
    limit: int = SUBGROUP_SEARCH_LIMIT,
) -> list[frozenset]:
    """One complement of the normal subgroup ``N`` per conjugacy class.

    Found by 2-generator search, which is exhaustive when complements are
    2-generated.  If ``expected`` is given and a different number of classes
    turns up, :class:`IncompleteSearch` is raised.
    """
    N = frozenset(N)
    if not all(x in G for x in N) or not G.is_normal(N):
        raise ValueError("N is not a normal subgroup of G")
    if G.order > limit:
        raise GroupTooLarge(f"complement search is limited to groups of order <= {limit}")
    n = G.order // len(N)
    if len(N) == 1:
        reps = [frozenset(G.elements)]
    else:
        forbidden = {x.images for x in N} - {G.identity.images}
        found = _two_generator_search(G, n, forbidden=forbidden, exclude=N)
        reps = [orbit[0] for orbit in _fuse_classes(G, found)]
    if expected is not None and len(reps) != expected:
        raise IncompleteSearch(
            f"found {len(reps)} complement classes, expected {expected}"
        )
    return reps


def find_subgroup(
    G: FiniteGroup,
    n: int,
    accept: Callable[[frozenset], bool] = lambda H: True,
    seed: int = DEFAULT_SEED,
    max_attempts: int = 20_000,
) -> frozenset:
    """Randomised 2-generator search for a subgroup of order ``n``.

    Pairs are drawn with a fixed-seed generator, so the result is reproducible.
    """
    rng = random.Random(seed)
    cand = _search_candidates(G, n)
    elems = [e.images for e in G.elements]
    for _ in range(max_attempts):
        a = elems[cand[rng.randrange(len(cand))]]
        b = elems[cand[rng.randrange(len(cand))]]
        S = closure([a, b], cap=n)
        if S is None or len(S) != n:
            continue
        H = frozenset(G.elements[G.index_raw(e)] for e in S)
        if accept(H):
            return H
    raise IncompleteSearch(f"no acceptable subgroup of order {n} in {max_attempts} attempts")


def normalizer_in_symmetric(G: FiniteGroup) -> FiniteGroup:
    """All ``y`` in Sym(degree) with ``y^-1 G y = G``, by brute force over Sym(degree)."""
    d = G.degree
    if d > NORMALIZER_MAX_DEGREE:
        raise GroupTooLarge(
            f"normalizer enumeration needs degree <= {NORMALIZER_MAX_DEGREE}, got {d}"
        )
    gens = [g.images for g in G.generators]
    index = G._index
    members = []
    for y in itertools.permutations(range(d)):
        yi = _inv(y)
        if all(tuple([y[g[yi[i]]] for i in range(d)]) in index for g in gens):
            members.append(Permutation(y, check=False))
    span = {e.images for e in G.elements}
    new_gens = list(G.generators)
    for y in members:
        if len(span) == len(members):
            break
        if y.images not in span:
            new_gens.append(y)
            span = closure([g.images for g in new_gens])
    return FiniteGroup.generate(d, new_gens)


def representations_equivalent(rho1, rho2) -> bool:
    """Whether two transitive actions of one group are related by a relabelling.

    Uses the fact that transitive actions are equivalent exactly when their
    point stabilisers are conjugate.
    """
    if rho1.source is not rho2.source:
        raise ValueError("representations must share a source group")
    if rho1.degree != rho2.degree:
        return False
    if not (rho1.is_transitive() and rho2.is_transitive()):
        raise ValueError("equivalence test needs transitive actions")
    G = rho1.source
    return G.subgroups_conjugate(rho1.point_stabilizer(0), rho2.point_stabilizer(0))


def parse_group_text(text: str) -> FiniteGroup:
    """Read ``degree q`` followed by one generator per line in cycle notation."""
    lines = text.splitlines()
    if not lines or not lines[0].strip().startswith("degree"):
        raise ValueError("group file must start with 'degree <q>'")
    try:
        degree = int(lines[0].split()[1])
    except (IndexError, ValueError):
        raise ValueError("malformed degree line") from None
    gens = []
    for line in lines[1:]:
        if not line.strip():
            break
        gens.append(Permutation.parse(line, degree))
    return FiniteGroup.generate(degree, gens)
