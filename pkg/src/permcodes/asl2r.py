"""Explicit ASL(2, 2^f) inside SL(3, 2^f) and its 2^f inequivalent 2-transitive actions.

Field elements of GF(2^f) are ints holding polynomial-basis bit vectors;
matrices are tuples of row tuples.  The matrix group is enumerated once and
then converted to a permutation group on the right cosets of ``S_0`` so the
rest of the package can work with it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from .codes import inner_distribution, repetition_code, twisted_code
from .groups import (
    SUBGROUP_SEARCH_LIMIT,
    FiniteGroup,
    GroupTooLarge,
    complement_classes,
    coset_action,
    representations_equivalent,
)
from .perm import Permutation
from .reps import Representation, RepresentationTuple

# primitive moduli, bit k = coefficient of x^k
MODULI = {2: 0b111, 3: 0b1011, 4: 0b10011}
MAX_F = 4


class GF2m:
    """GF(2^f) in the polynomial basis; ``a`` is the class of the indeterminate."""

    def __init__(self, f: int):
        if f not in MODULI:
            raise ValueError(f"f must be one of {sorted(MODULI)}")
        self.f = f
        self.r = 1 << f
        self.modulus = MODULI[f]
        r = self.r
        self._mul = [[self._slow_mul(u, v) for v in range(r)] for u in range(r)]
        self.a = 2
        self._inv = [0] * r
        for u in range(1, r):
            for v in range(1, r):
                if self._mul[u][v] == 1:
                    self._inv[u] = v
                    break

    def _slow_mul(self, u: int, v: int) -> int:
        out = 0
        while v:
            if v & 1:
                out ^= u
            v >>= 1
            u <<= 1
            if u & self.r:
                u ^= self.modulus
        return out

    @property
    def elements(self) -> range:
        return range(self.r)

    def add(self, u: int, v: int) -> int:
        return u ^ v

    def mul(self, u: int, v: int) -> int:
        return self._mul[u][v]

    def inv(self, u: int) -> int:
        if u == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._inv[u]

    def pow(self, u: int, k: int) -> int:
        if k < 0:
            u, k = self.inv(u), -k
        out = 1
        for _ in range(k):
            out = self._mul[out][u]
        return out

    def mult_order(self, u: int) -> int:
        k, p = 1, u
        while p != 1:
            p = self._mul[p][u]
            k += 1
        return k

    def min_poly(self, u: int) -> list[int]:
        """Coefficients ``c_0..c_d`` (over GF(2)) of the minimal polynomial of ``u``."""
        for d in range(1, self.f + 1):
            for low in itertools.product((0, 1), repeat=d):
                coeffs = list(low) + [1]
                acc, p = 0, 1
                for c in coeffs:
                    if c:
                        acc ^= p
                    p = self._mul[p][u]
                if acc == 0:
                    return coeffs
        raise AssertionError("unreachable: every element is algebraic of degree <= f")


Matrix = tuple


def mat_mul(F: GF2m, A: Matrix, B: Matrix) -> Matrix:
    n = len(A)
    m = F._mul
    cols = list(zip(*B))
    out = []
    for row in A:
        new = []
        for col in cols:
            acc = 0
            for x, y in zip(row, col):
                if x and y:
                    acc ^= m[x][y]
            new.append(acc)
        out.append(tuple(new))
    return tuple(out)


def mat_identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_pow(F: GF2m, A: Matrix, k: int) -> Matrix:
    if k < 0:
        return mat_pow(F, mat_inv(F, A), -k)
    out = mat_identity(len(A))
    for _ in range(k):
        out = mat_mul(F, out, A)
    return out


def mat_inv(F: GF2m, A: Matrix) -> Matrix:
    n = len(A)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ValueError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        s = F.inv(aug[col][col])
        aug[col] = [F.mul(s, x) for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                c = aug[r][col]
                aug[r] = [x ^ F.mul(c, y) for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def det(F: GF2m, A: Matrix) -> int:
    if len(A) == 2:
        return F.mul(A[0][0], A[1][1]) ^ F.mul(A[0][1], A[1][0])
    total = 0
    for j in range(3):
        minor = tuple(tuple(A[i][k] for k in range(3) if k != j) for i in (1, 2))
        total ^= F.mul(A[0][j], det(F, minor))
    return total


def commutator(F: GF2m, g: Matrix, h: Matrix) -> Matrix:
    """``g^-1 h^-1 g h``."""
    return mat_mul(F, mat_mul(F, mat_inv(F, g), mat_inv(F, h)), mat_mul(F, g, h))


def vec_mat(F: GF2m, v: tuple[int, ...], A: Matrix) -> tuple[int, ...]:
    return mat_mul(F, (tuple(v),), A)[0]


@dataclass(frozen=True)
class Matrices:
    field: GF2m
    w: int
    b: int
    u: int
    v: int
    x: Matrix
    y: Matrix
    z: Matrix
    X: Matrix
    Y: Matrix
    Z: Matrix


@lru_cache(maxsize=None)
def field_for(f: int) -> GF2m:
    if f < 2:
        raise ValueError("f must be at least 2")
    return GF2m(f)


def build_matrices(f: int, w: int) -> Matrices:
    F = field_for(f)
    if not 0 <= w < F.r:
        raise ValueError(f"w must be a field element 0..{F.r - 1}")
    a = F.a
    ai = F.inv(a)
    a2 = F.mul(a, a)
    b = F.inv(1 ^ a2)
    b2b1 = F.mul(b, b) ^ b ^ 1
    u = F.mul(w, a) ^ F.mul(w, b) ^ w
    v = w ^ F.mul(w, a)
    x = ((a, 0), (0, ai))
    y = ((1, 1), (0, 1))
    z = ((b, b2b1), (1, b ^ 1))
    X = ((1, 0, 0), (0, a, 0), (0, 0, ai))
    Y = ((1, 0, v), (0, 1, 1), (0, 0, 1))
    Z = ((1, w, u), (0, b, b2b1), (0, 1, b ^ 1))
    mats = Matrices(F, w, b, u, v, x, y, z, X, Y, Z)
    for name in ("x", "y", "z", "X", "Y", "Z"):
        if det(F, getattr(mats, name)) != 1:
            raise AssertionError(f"{name} does not have determinant 1")
    return mats


def translation(v: tuple[int, int]) -> Matrix:
    """``e(v)``: the 3x3 matrix with first row ``(1, v1, v2)``."""
    return ((1, v[0], v[1]), (0, 1, 0), (0, 0, 1))


def relation_failures(f: int) -> list[str]:
    """Names of the SL(2, r) defining relations that fail; empty when all hold."""
    F = field_for(f)
    r = F.r
    fails = []
    c = F.min_poly(F.mul(F.a, F.a))
    if len(c) != f + 1:
        fails.append("minimal polynomial of a^2 has degree != f")
    if F.mult_order(F.a) != r - 1:
        fails.append("a has order != r-1")
    for w in F.elements:
        m = build_matrices(f, w)
        triples = [("x", "y", "z", m.x, m.y, m.z, 2)] if w == 0 else []
        triples.append((f"X", f"Y_{w}", f"Z_{w}", m.X, m.Y, m.Z, 3))
        for nx, ny, nz, x, y, z, n in triples:
            one = mat_identity(n)
            checks = {
                f"{nx}^(r-1)": mat_pow(F, x, r - 1),
                f"{ny}^2": mat_pow(F, y, 2),
                f"{nz}^3": mat_pow(F, z, 3),
                f"({nx}{nz})^2": mat_pow(F, mat_mul(F, x, z), 2),
                f"({ny}{nz})^2": mat_pow(F, mat_mul(F, y, z), 2),
            }
            for i in range(r):
                checks[f"[{nx}^{i},{ny}]^2"] = mat_pow(F, commutator(F, mat_pow(F, x, i), y), 2)
            for name, val in checks.items():
                if val != one:
                    fails.append(name)
            word = mat_pow(F, y, c[0])
            for ci in c[1:]:
                word = mat_mul(F, mat_mul(F, word, x), mat_pow(F, y, ci))
            if word != mat_pow(F, x, f):
                fails.append(f"{nx}^f word relation")
    return fails


def presentation_check(f: int) -> bool:
    return not relation_failures(f)


def matrix_closure(F: GF2m, gens: list[Matrix], cap: int) -> dict[Matrix, int]:
    n = len(gens[0])
    found = {mat_identity(n): 0}
    queue = [mat_identity(n)]
    i = 0
    while i < len(queue):
        g = queue[i]
        for s in gens:
            p = mat_mul(F, g, s)
            if p not in found:
                if len(found) >= cap:
                    raise GroupTooLarge(f"matrix group exceeds {cap} elements")
                found[p] = len(queue)
                queue.append(p)
        i += 1
    return found


def natural_asl2(f: int) -> FiniteGroup:
    """ASL(2, r) as affine permutations ``v -> v A + t`` of the r^2 points of V.

    Point ``(v1, v2)`` is numbered ``v1 * r + v2``.
    """
    F = field_for(f)
    m = build_matrices(f, 0)
    r = F.r
    pts = [(p, q) for p in range(r) for q in range(r)]
    num = {p: k for k, p in enumerate(pts)}

    def linear(A):
        return Permutation([num[vec_mat(F, p, A)] for p in pts])

    def shift(t):
        return Permutation([num[(p[0] ^ t[0], p[1] ^ t[1])] for p in pts])

    gens = [shift((1, 0)), linear(m.x), linear(m.y), linear(m.z)]
    return FiniteGroup.generate(r * r, gens)


def asl_order(f: int) -> int:
    r = 1 << f
    return r * r * r * (r * r - 1)


class ASLConstruction:
    """``G = E S_0`` as a permutation group on the right cosets of ``S_0``."""

    def __init__(self, f: int, allow_large: bool = False):
        if f not in (2, 3) and not (allow_large and f == 4):
            raise GroupTooLarge("f must be 2 or 3 (f = 4 only with allow_large=True)")
        F = field_for(f)
        self.f = f
        self.field = F
        self.r = r = F.r
        self.mats = {w: build_matrices(f, w) for w in F.elements}
        m0 = self.mats[0]
        gens = [translation((1, 0)), m0.X, m0.Y, m0.Z]
        self.matrix_elements = matrix_closure(F, gens, cap=asl_order(f) + 1)
        if len(self.matrix_elements) != asl_order(f):
            raise AssertionError("matrix group has the wrong order")
        S0 = matrix_closure(F, [m0.X, m0.Y, m0.Z], cap=r * (r * r - 1) + 1)
        # coset S_0 g is labelled by the unique translation e(v) it contains
        coset_of: dict[Matrix, int] = {}
        for v1 in range(r):
            for v2 in range(r):
                label = v1 * r + v2
                ev = translation((v1, v2))
                for s in S0:
                    coset_of[mat_mul(F, s, ev)] = label
        if len(coset_of) != len(self.matrix_elements):
            raise AssertionError("translations do not form a transversal of S_0")
        self._coset_of = coset_of
        self._reps = [translation((v1, v2)) for v1 in range(r) for v2 in range(r)]
        self.G = FiniteGroup.generate(r * r, [self.perm(g) for g in gens])
        if self.G.order != len(self.matrix_elements):
            raise AssertionError("coset action of G is not faithful")

    def perm(self, M: Matrix) -> Permutation:
        """Action of a matrix of G on the cosets of ``S_0``."""
        F = self.field
        return Permutation([self._coset_of[mat_mul(F, rep, M)] for rep in self._reps])

    @cached_property
    def E(self) -> frozenset[Permutation]:
        r = self.r
        return frozenset(self.perm(translation((v1, v2))) for v1 in range(r) for v2 in range(r))

    def translation_perm(self, v) -> Permutation:
        return self.perm(translation(v))

    @cached_property
    def S(self) -> dict[int, frozenset[Permutation]]:
        out = {}
        for w, m in self.mats.items():
            out[w] = self.G.subgroup([self.perm(m.X), self.perm(m.Y), self.perm(m.Z)])
        return out

    def S_generators(self, w: int) -> list[Permutation]:
        m = self.mats[w]
        return [self.perm(m.X), self.perm(m.Y), self.perm(m.Z)]

    @cached_property
    def reps(self) -> RepresentationTuple:
        members = [coset_action(self.G, self.S[w], name=f"S_{w}") for w in self.field.elements]
        return RepresentationTuple(members)


@lru_cache(maxsize=None)
def build_G(f: int) -> ASLConstruction:
    return ASLConstruction(f)


def structure_failures(f: int) -> list[str]:
    """Checks on E, S_w and the translation relations; returns failing names."""
    C = build_G(f)
    F = C.field
    r = C.r
    fails = []
    sl_order = r * (r * r - 1)
    ident = C.G.identity
    for w, m in C.mats.items():
        if len(C.S[w]) != sl_order:
            fails.append(f"|S_{w}| != |SL(2,r)|")
        if C.S[w] & C.E != {ident}:
            fails.append(f"E meets S_{w}")
        m0 = C.mats[0]
        if m.Y != mat_mul(F, translation((0, m.v)), m0.Y):
            fails.append(f"Y_{w} != e(0,v) Y_0")
        # the translation factor of Z_w sits on the right of Z_0
        if m.Z != mat_mul(F, m0.Z, translation((w, m.u))):
            fails.append(f"Z_{w} != Z_0 e(w,u)")
        for v in itertools.product(range(r), repeat=2):
            ev = translation(v)
            for big, small, nm in ((m.X, m.x, "X"), (m.Y, m.y, "Y"), (m.Z, m.z, "Z")):
                lhs = mat_mul(
                    F,
                    mat_mul(F, mat_mul(F, mat_inv(F, big), ev), big),
                    translation(vec_mat(F, v, small)),
                )
                if lhs != mat_identity(3):
                    fails.append(f"{nm}_{w}^-1 e(v) {nm}_{w} e(v{nm.lower()}) != 1 for v={v}")
    if len(C.E) != r * r:
        fails.append("|E| != r^2")
    # translations are normalised by G
    if not C.G.is_normal(C.E):
        fails.append("E is not normal in G")
    return fails


def natural_translation_failures(f: int) -> list[str]:
    """``x^-1 phi_v x phi_{vx} = 1`` (and for y, z) as affine permutations of V."""
    F = field_for(f)
    m = build_matrices(f, 0)
    r = F.r
    pts = [(p, q) for p in range(r) for q in range(r)]
    num = {p: k for k, p in enumerate(pts)}

    def linear(A):
        return Permutation([num[vec_mat(F, p, A)] for p in pts])

    def shift(t):
        return Permutation([num[(p[0] ^ t[0], p[1] ^ t[1])] for p in pts])

    fails = []
    for v in pts:
        for A, nm in ((m.x, "x"), (m.y, "y"), (m.z, "z")):
            L = linear(A)
            lhs = (~L) * shift(v) * L * shift(vec_mat(F, v, A))
            if not lhs.is_identity():
                fails.append(f"{nm}^-1 phi_v {nm} phi_(v{nm}) != 1 for v={v}")
    return fails


def check_sw_nonconjugate(f: int) -> bool:
    """No two distinct ``S_w`` are conjugate in G.

    Since ``G = E S_w``, a conjugating element may be taken in E; each
    ``e`` in E is tested on the generators of ``S_w``.
    """
    C = build_G(f)
    ws = list(C.field.elements)
    for w, w2 in itertools.combinations(ws, 2):
        if sw_conjugate(C, w, w2):
            return False
    return True


def sw_conjugate(C: ASLConstruction, w: int, w2: int) -> bool:
    gens = C.S_generators(w)
    target = C.S[w2]
    for e in C.E:
        ei = ~e
        if all(ei * g * e in target for g in gens):
            return True
    return False


def iota_is_bijection(C: ASLConstruction, w: int) -> bool:
    """Every right coset of ``S_w`` contains exactly one translation."""
    rho = C.reps[C.field.elements.index(w)]
    cos = [rho.cosets.coset_index(e) for e in C.E]
    return sorted(cos) == list(range(C.r * C.r))


def twisted_reps(f: int) -> RepresentationTuple:
    return build_G(f).reps


@dataclass
class AuditReport:
    ok: bool
    violations: list[str] = field(default_factory=list)
    fix_counts: dict[int, int] = field(default_factory=dict)  # fixed-point count -> #elements

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "violations": self.violations,
            "fix_counts": {str(k): v for k, v in sorted(self.fix_counts.items())},
        }


def fixed_point_audit(f: int) -> AuditReport:
    C = build_G(f)
    G = C.G
    r = C.r
    fixes = np.stack([rho.fixed_counts for rho in C.reps], axis=1)  # element x member
    orders = G.element_orders
    violations = []
    allowed = {0, 1, r}
    for i in range(1, G.order):
        row = fixes[i]
        t = G.elements[i]
        for k, n in enumerate(row.tolist()):
            if n not in allowed:
                violations.append(f"t={t} fixes {n} points in member {k}")
        if orders[i] % 2:
            if not (row == 1).all():
                violations.append(f"odd-order t={t} does not fix exactly one point everywhere")
        elif not (row == row[0]).all():
            violations.append(f"even-order t={t} has unequal fixed counts")
        if (row >= 2).any() and not (orders[i] == 2 and (row == r).all()):
            violations.append(f"t={t} fixes >=2 points but is not an involution fixing r")
    if not (fixes[0] == r * r).all():
        violations.append("identity does not fix every point")
    values, counts = np.unique(fixes[1:, 0], return_counts=True)
    return AuditReport(
        ok=not violations,
        violations=violations[:50],
        fix_counts={int(v): int(c) for v, c in zip(values, counts)},
    )


@dataclass
class AffineReport:
    ok: bool
    twisted: dict[int, int]
    repetition: list[dict[int, int]]
    delta_tw: int
    natural_minimal_degree: int

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "twisted": {str(k): v for k, v in self.twisted.items()},
            "repetition": [{str(k): v for k, v in d.items()} for d in self.repetition],
            "delta_tw": self.delta_tw,
            "natural_minimal_degree": self.natural_minimal_degree,
        }


def affmain_check(f: int) -> AffineReport:
    """Twisted code over all r actions vs the r repetition codes."""
    C = build_G(f)
    reps = C.reps
    tw = inner_distribution(twisted_code(C.G, reps)).nonzero()
    rep = [inner_distribution(repetition_code(C.G, rho, C.r)).nonzero() for rho in reps]
    delta_tw = min(k for k in tw if k > 0)
    nat = Representation.natural(natural_asl2(f)).minimal_degree()
    ok = all(d == tw for d in rep) and delta_tw == C.r * nat
    return AffineReport(ok, tw, rep, delta_tw, nat)


def pairwise_inequivalent(f: int) -> bool:
    reps = build_G(f).reps
    return not any(
        representations_equivalent(a, b) for a, b in itertools.combinations(reps.members, 2)
    )


def complement_class_count(f: int) -> int:
    """Number of G-classes of complements of E, by exhaustive complement search."""
    C = build_G(f)
    return len(complement_classes(C.G, C.E))


def full_audit(f: int, complements: bool | None = None) -> dict:
    """Every check of the construction at one ``f``; ``ok`` is their conjunction."""
    C = build_G(f)
    if complements is None:
        complements = C.G.order <= SUBGROUP_SEARCH_LIMIT
    reps = C.reps
    checks = {
        "relations": relation_failures(f) == [],
        "structure": structure_failures(f) == [],
        "natural_translations": natural_translation_failures(f) == [],
        "sw_nonconjugate": check_sw_nonconjugate(f),
        "iota_bijection": all(iota_is_bijection(C, w) for w in C.field.elements),
        "two_transitive": all(rho.is_two_transitive() for rho in reps),
        "pairwise_inequivalent": pairwise_inequivalent(f),
    }
    if complements:
        checks["complement_classes_equal_r"] = complement_class_count(f) == C.r
    audit = fixed_point_audit(f)
    checks["fixed_points"] = audit.ok
    aff = affmain_check(f)
    checks["distributions_equal"] = aff.ok
    return {
        "f": f,
        "r": C.r,
        "order": C.G.order,
        "ok": all(checks.values()),
        "checks": checks,
        "fix_counts": audit.to_dict()["fix_counts"],
        "distributions": aff.to_dict(),
    }
