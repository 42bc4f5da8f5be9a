"""Permutation representations of an enumerated group.

A representation keeps the image of every group element (row ``i`` of
``images`` is the image of ``source.elements[i]``), so support and distance
scans never re-evaluate words.
"""

from __future__ import annotations

from collections.abc import Sequence
from functools import cached_property

import numpy as np

from .groups import ConjugacyClass, FiniteGroup
from .perm import Permutation, to_cycle_string

EXHAUSTIVE_CHECK_LIMIT = 1000


class NotAHomomorphism(ValueError):
    pass


class TrivialRepresentation(ValueError):
    """Raised where a nonidentity image is required but none exists."""


class Representation:
    def __init__(self, source: FiniteGroup, images: np.ndarray, name: str | None = None):
        images = np.array(images, dtype=np.int64)
        if images.ndim != 2 or images.shape[0] != source.order:
            raise ValueError("need one image row per group element")
        images.setflags(write=False)
        self.source = source
        self.images = images
        self.name = name or f"rho(deg {images.shape[1]})"
        self.cosets = None

    @classmethod
    def natural(cls, G: FiniteGroup, name: str = "natural") -> Representation:
        return cls(G, G.array, name=name)

    @classmethod
    def from_generator_images(
        cls,
        G: FiniteGroup,
        gen_images,
        name: str | None = None,
    ) -> Representation:
        """Extend images of the generators; raises if that is not a homomorphism."""
        gen_images = np.array(
            [g.images if isinstance(g, Permutation) else g for g in gen_images], dtype=np.int64
        )
        if gen_images.shape[0] != len(G.generators):
            raise ValueError("need one image per generator")
        q = gen_images.shape[1]
        for row in gen_images:
            if sorted(row.tolist()) != list(range(q)):
                raise ValueError("generator image is not a permutation")
        rep = cls(G, G.extend_homomorphism(gen_images), name=name)
        rep.check_homomorphism()
        return rep

    @classmethod
    def from_mapping(cls, G: FiniteGroup, fn, name: str | None = None) -> Representation:
        """Representation from a callable ``element -> Permutation`` evaluated everywhere."""
        rows = [fn(g).images for g in G.elements]
        rep = cls(G, np.array(rows, dtype=np.int64), name=name)
        rep.check_homomorphism()
        return rep

    def __repr__(self):
        return f"Representation({self.name!r}, degree={self.degree}, |source|={self.source.order})"

    @property
    def degree(self) -> int:
        return self.images.shape[1]

    def image_at(self, i: int) -> Permutation:
        return Permutation(self.images[i].tolist(), check=False)

    def image_of(self, t: Permutation) -> Permutation:
        return self.image_at(self.source.index(t))

    def __call__(self, t: Permutation) -> Permutation:
        return self.image_of(t)

    def check_homomorphism(self, exhaustive: bool | None = None) -> None:
        """Verify ``image(g*s) = image(g)*image(s)``.

        The generator test (every element ``g``, every generator ``s``) already
        proves the homomorphism property.  For small groups every pair is also
        checked directly.
        """
        G = self.source
        img = self.images
        q = self.degree
        if not np.array_equal(img[0], np.arange(q)):
            raise NotAHomomorphism("identity is not mapped to the identity")
        for k in range(len(G.generators)):
            gk = img[G.gen_table[0, k]]
            lhs = img[G.gen_table[:, k]]
            rhs = gk[img]
            if not np.array_equal(lhs, rhs):
                bad = int(np.flatnonzero((lhs != rhs).any(axis=1))[0])
                raise NotAHomomorphism(
                    f"image(g*s) != image(g)*image(s) for g={G.elements[bad]}, generator {k}"
                )
        if exhaustive is None:
            exhaustive = G.order <= EXHAUSTIVE_CHECK_LIMIT
        if exhaustive:
            A = G.array
            for i in range(G.order):
                # row h: g_i * h as a permutation, and image(g_i) * image(h)
                prods = G.index_rows(A[:, A[i]])
                if not np.array_equal(img[prods], img[:, img[i]]):
                    raise NotAHomomorphism(f"pairwise check failed at g={G.elements[i]}")

    # -- derived data --------------------------------------------------------

    @cached_property
    def support_sizes(self) -> np.ndarray:
        """``|supp(image(t))|`` for every element index ``t``."""
        return (self.images != np.arange(self.degree)).sum(axis=1)

    @cached_property
    def fixed_counts(self) -> np.ndarray:
        return self.degree - self.support_sizes

    def support(self, t: Permutation) -> int:
        return int(self.support_sizes[self.source.index(t)])

    def kernel(self) -> frozenset[Permutation]:
        idx = np.flatnonzero(self.support_sizes == 0)
        return frozenset(self.source.elements[i] for i in idx)

    def is_faithful(self) -> bool:
        return int((self.support_sizes == 0).sum()) == 1

    def is_trivial(self) -> bool:
        return bool((self.support_sizes == 0).all())

    def minimal_degree(self) -> int:
        """Least support over nonidentity elements; 0 when the kernel is nontrivial."""
        if self.is_trivial():
            raise TrivialRepresentation("no element has nonempty support")
        if self.source.order < 2:
            raise TrivialRepresentation("the group has no nonidentity element")
        return int(self.support_sizes[1:].min())

    def least_nonzero_support(self) -> int:
        """Least nonzero support, which is the minimum distance of the permutation code."""
        nonid = self.support_sizes[self.support_sizes > 0]
        if nonid.size == 0:
            raise TrivialRepresentation("no element has nonempty support")
        return int(nonid.min())

    def support_profile(self) -> list[int]:
        """Support size on each conjugacy class, in the group's class order.

        Conjugate elements have conjugate images, so the value is checked to be
        constant on each class.
        """
        G = self.source
        sizes = self.support_sizes
        out = []
        for c in G.conjugacy_classes:
            vals = sizes[list(c.members)]
            if not (vals == vals[0]).all():
                raise AssertionError(f"support size not constant on class {c.label}")
            out.append(int(vals[0]))
        return out

    def orbit(self, point: int) -> set[int]:
        gens = [self.images[self.source.gen_table[0, k]] for k in range(len(self.source.generators))]
        seen = {point}
        stack = [point]
        while stack:
            p = stack.pop()
            for g in gens:
                x = int(g[p])
                if x not in seen:
                    seen.add(x)
                    stack.append(x)
        return seen

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def point_stabilizer(self, point: int = 0) -> frozenset[Permutation]:
        idx = np.flatnonzero(self.images[:, point] == point)
        return frozenset(self.source.elements[i] for i in idx)

    def is_two_transitive(self) -> bool:
        if not self.is_transitive():
            return False
        if self.degree == 1:
            return True
        stab = np.flatnonzero(self.images[:, 0] == 0)
        reached = set(self.images[stab, 1].tolist())
        return reached == set(range(1, self.degree))

    def dump_csv(self) -> str:
        lines = ["element,image"]
        for i in range(self.source.order):
            lines.append(f'{i + 1},"{to_cycle_string(self.image_at(i))}"')
        return "\n".join(lines) + "\n"


class RepresentationTuple:
    """An ordered, nonempty list of representations of one group, all of one degree."""

    def __init__(self, members: Sequence[Representation]):
        members = list(members)
        if not members:
            raise ValueError("a representation tuple must be nonempty")
        src = members[0].source
        deg = members[0].degree
        for m in members:
            if m.source is not src:
                raise ValueError("all members must share the source group")
            if m.degree != deg:
                raise ValueError("all members must share the target degree")
        self.members = tuple(members)
        self.source = src
        self.degree = deg

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i):
        return self.members[i]

    def __repr__(self):
        return f"RepresentationTuple({[m.name for m in self.members]})"

    @property
    def length(self) -> int:
        return len(self.members) * self.degree

    def support_sums(self) -> np.ndarray:
        return sum(m.support_sizes for m in self.members)

    def kernel(self) -> frozenset[Permutation]:
        return tuple_kernel(self)


def kernel(rho: Representation) -> frozenset[Permutation]:
    return rho.kernel()


def minimal_degree(rho: Representation) -> int:
    return rho.minimal_degree()


def support_profile(rho: Representation) -> list[int]:
    return rho.support_profile()


def tuple_kernel(reps: RepresentationTuple | Sequence[Representation]) -> frozenset[Permutation]:
    if not isinstance(reps, RepresentationTuple):
        reps = RepresentationTuple(reps)
    moved = reps.support_sums()
    G = reps.source
    return frozenset(G.elements[i] for i in np.flatnonzero(moved == 0))


def profile_table(reps: Sequence[Representation]) -> list[dict]:
    """One row per class: label, order, size, support per member, and their sum."""
    G = reps[0].source
    profiles = [r.support_profile() for r in reps]
    rows = []
    for c in G.conjugacy_classes:
        sup = [p[c.index] for p in profiles]
        rows.append(
            {
                "class": c.label,
                "order": c.order,
                "size": c.size,
                "supports": sup,
                "sum": sum(sup),
            }
        )
    return rows


def profile_csv(reps: Sequence[Representation]) -> str:
    head = ["class", "order", "size"] + [f"supp_{k + 1}" for k in range(len(reps))] + ["sum"]
    lines = [",".join(head)]
    for row in profile_table(reps):
        cells = [row["class"], row["order"], row["size"], *row["supports"], row["sum"]]
        lines.append(",".join(str(c) for c in cells))
    return "\n".join(lines) + "\n"


def class_of(G: FiniteGroup, t: Permutation) -> ConjugacyClass:
    return G.conjugacy_classes[int(G.class_of[G.index(t)])]
