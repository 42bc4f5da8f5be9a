"""Built-in groups with their pools of permutation representations.

Every construction is computed from generators (no stored group data) and
cached per process.  Pool members are numbered from 1 on the command line.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .groups import (
    DEFAULT_SEED,
    FiniteGroup,
    alternating_group,
    coset_action,
    complement_classes,
    find_subgroup,
    representations_equivalent,
    subgroups_of_order,
    symmetric_group,
)
from .perm import Permutation, conjugate
from .reps import Representation

M12_GENERATORS = (
    "(1,2,3,4,5,6,7,8,9,10,11)",
    "(3,7,11,8)(4,10,5,6)",
    "(1,12)(2,11)(3,6)(4,8)(5,9)(7,10)",
)


@dataclass
class Builtin:
    name: str
    group: FiniteGroup
    pool: list[Representation]
    default_tuple: tuple[int, ...]
    notes: dict = field(default_factory=dict)

    def tuple_of(self, indices) -> list[Representation]:
        """Pool members for 1-based ``indices``."""
        out = []
        for k in indices:
            if not 1 <= k <= len(self.pool):
                raise ValueError(f"{self.name}: representation {k} not in 1..{len(self.pool)}")
            out.append(self.pool[k - 1])
        return out


def involutory_relabelling(G: FiniteGroup, rho: Representation) -> Representation:
    """Relabel a degree-``q`` action whose image is ``G`` so that it squares to 1.

    The relabelling ``lam`` runs over Sym(q) in canonical order and must keep
    the image equal to ``G``; the first one giving ``rho'(rho'(t)) = t`` on
    the generators is used.
    """
    q = G.degree
    if rho.degree != q:
        raise ValueError("relabelling needs an action of the group's own degree")
    G.index_rows(rho.images)
    gens = G.generators
    for lam_images in itertools.permutations(range(q)):
        lam = Permutation(lam_images, check=False)
        if not all(conjugate(g, lam) in G for g in gens):
            continue

        def twist(t, lam=lam):
            return conjugate(rho.image_of(t), lam)

        if all(twist(twist(g)) == g for g in gens):
            images = np.array([twist(t).images for t in G.elements], dtype=np.int64)
            out = Representation(G, images, name=f"{rho.name}'")
            out.check_homomorphism()
            return out
    raise ValueError("no relabelling makes the action an involutory automorphism")


def _transitive_subgroup(G: FiniteGroup, n: int) -> frozenset:
    for H in subgroups_of_order(G, n):
        moved = set()
        for h in H:
            moved.update(i for i, x in enumerate(h.images) if i != x)
        if len(moved) == G.degree and _orbit_all(H, G.degree):
            return H
    raise ValueError(f"no transitive subgroup of order {n}")


def _orbit_all(H, q: int) -> bool:
    seen = {0}
    stack = [0]
    while stack:
        p = stack.pop()
        for h in H:
            x = h.images[p]
            if x not in seen:
                seen.add(x)
                stack.append(x)
    return len(seen) == q


def _exotic_pair(G: FiniteGroup, n: int, name: str) -> Builtin:
    H = _transitive_subgroup(G, n)
    rho = coset_action(G, H, name="cosets")
    twist = involutory_relabelling(G, rho)
    twist.name = "twisted"
    nat = Representation.natural(G)
    return Builtin(name, G, [nat, twist], (1, 2), {"twist_subgroup_order": n})


@lru_cache(maxsize=None)
def s6() -> Builtin:
    return _exotic_pair(symmetric_group(6), 120, "s6")


@lru_cache(maxsize=None)
def a6() -> Builtin:
    return _exotic_pair(alternating_group(6), 60, "a6")


@lru_cache(maxsize=None)
def m12_group() -> FiniteGroup:
    return FiniteGroup.generate(12, [Permutation.parse(s, 12) for s in M12_GENERATORS])


def _fixes_no_point(H) -> bool:
    q = next(iter(H)).degree
    return all(any(h.images[i] != i for h in H) for i in range(q))


@lru_cache(maxsize=None)
def m12(seed: int = DEFAULT_SEED) -> Builtin:
    G = m12_group()
    H = find_subgroup(G, 7920, accept=_fixes_no_point, seed=seed)
    second = coset_action(G, H, name="cosets of a transitive M11")
    nat = Representation.natural(G)
    if representations_equivalent(nat, second):
        raise AssertionError("the second degree-12 action is equivalent to the natural one")
    return Builtin("m12", G, [nat, second], (1, 2), {"seed": seed})


def _vec(i: int) -> tuple[int, int, int]:
    return ((i >> 2) & 1, (i >> 1) & 1, i & 1)


def _idx(v) -> int:
    return (v[0] << 2) | (v[1] << 1) | v[2]


def _affine_perm(A, t) -> Permutation:
    """``v -> vA + t`` on F_2^3, points indexed by their bit pattern."""
    out = []
    for i in range(8):
        v = _vec(i)
        w = tuple((sum(v[k] * A[k][j] for k in range(3)) + t[j]) % 2 for j in range(3))
        out.append(_idx(w))
    return Permutation(out)


def _transvections():
    mats = []
    for a, b in itertools.permutations(range(3), 2):
        A = [[int(i == j) for j in range(3)] for i in range(3)]
        A[a][b] = 1
        mats.append(A)
    return mats


@lru_cache(maxsize=None)
def asl32() -> Builtin:
    zero = (0, 0, 0)
    ident = [[int(i == j) for j in range(3)] for i in range(3)]
    gens = [_affine_perm(A, zero) for A in _transvections()]
    gens.append(_affine_perm(ident, (0, 0, 1)))
    G = FiniteGroup.generate(8, gens)
    if G.order != 1344:
        raise AssertionError("unexpected order for ASL(3,2)")
    N = frozenset(_affine_perm(ident, _vec(i)) for i in range(8))
    comps = complement_classes(G, N, expected=2)
    pool = [coset_action(G, H, name=f"complement {k + 1}") for k, H in enumerate(comps)]
    return Builtin("asl32", G, pool, (1, 2), {"translations": N})


@lru_cache(maxsize=None)
def psl32() -> Builtin:
    """GL(3,2) on the 7 points and on the 7 lines of the Fano plane."""
    points = list(range(1, 8))  # nonzero vectors as bit patterns
    pidx = {p: k for k, p in enumerate(points)}

    def linear_perm(A):
        out = []
        for p in points:
            v = _vec(p)
            w = tuple(sum(v[k] * A[k][j] for k in range(3)) % 2 for j in range(3))
            out.append(pidx[_idx(w)])
        return Permutation(out)

    G = FiniteGroup.generate(7, [linear_perm(A) for A in _transvections()])
    if G.order != 168:
        raise AssertionError("unexpected order for PSL(3,2)")
    lines = sorted(
        {frozenset(pidx[p] for p in points if bin(p & phi).count("1") % 2 == 0) for phi in points},
        key=sorted,
    )
    lidx = {L: k for k, L in enumerate(lines)}

    def on_lines(g: Permutation) -> Permutation:
        return Permutation([lidx[frozenset(g.images[x] for x in L)] for L in lines])

    nat = Representation.natural(G, name="points")
    hyper = Representation.from_mapping(G, on_lines, name="hyperplanes")
    return Builtin("psl32", G, [nat, hyper], (1, 2))


@lru_cache(maxsize=None)
def s6_order12() -> Builtin:
    G = s6().group
    subs = subgroups_of_order(G, 12)
    if len(subs) != 4:
        raise AssertionError(f"expected 4 classes of order-12 subgroups, found {len(subs)}")
    pool = [coset_action(G, H, name=f"order-12 class {k + 1}") for k, H in enumerate(subs)]
    return Builtin("s6-12", G, pool, (1, 2, 3, 4))


def _asl2(f: int, name: str) -> Builtin:
    from .asl2r import build_G

    C = build_G(f)
    pool = list(C.reps)
    return Builtin(name, C.G, pool, tuple(range(1, len(pool) + 1)), {"f": f})


@lru_cache(maxsize=None)
def asl24() -> Builtin:
    return _asl2(2, "asl24")


@lru_cache(maxsize=None)
def asl28() -> Builtin:
    return _asl2(3, "asl28")


BUILTINS = {
    "s6": s6,
    "a6": a6,
    "m12": m12,
    "asl32": asl32,
    "psl32": psl32,
    "s6-12": s6_order12,
    "asl24": asl24,
    "asl28": asl28,
}

# groups small enough for all-pairs brute force
SMALL_BUILTINS = ("s6", "a6", "psl32", "asl32", "s6-12", "asl24")


def get(name: str, seed: int | None = None) -> Builtin:
    try:
        fn = BUILTINS[name]
    except KeyError:
        raise ValueError(f"unknown built-in group {name!r}; choose from {sorted(BUILTINS)}") from None
    if name == "m12" and seed is not None:
        return fn(seed)
    return fn()
