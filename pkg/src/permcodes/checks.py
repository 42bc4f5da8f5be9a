"""Verification suites shared by the ``verify`` command and the test-suite."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from . import builtins as B
from .codes import (
    distance_invariance_check,
    delta_rep_lower_bound,
    min_distance_bruteforce,
    min_distance_via_supports,
    twisted_code,
)
from .groups import DEFAULT_SEED
from .reps import tuple_kernel


@dataclass
class SuiteResult:
    name: str
    ok: bool
    details: dict = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"suite": self.name, "ok": self.ok, "details": self.details, "failures": self.failures}


def oracle_tuples() -> list[tuple[str, tuple[int, ...]]]:
    """Every size-1 and size-2 multiset of each small pool, the 35 size-4
    multisets of the order-12 pool and the full ASL(2,4) tuple."""
    out = []
    for name in B.SMALL_BUILTINS:
        k = len(B.get(name).pool)
        for size in (1, 2):
            out.extend((name, ms) for ms in itertools.combinations_with_replacement(range(1, k + 1), size))
    out.extend(("s6-12", ms) for ms in itertools.combinations_with_replacement(range(1, 5), 4))
    out.append(("asl24", (1, 2, 3, 4)))
    return list(dict.fromkeys(out))


def oracle_equivalence(tuples=None) -> SuiteResult:
    """All-pairs brute-force distance equals the class-sum formula."""
    tuples = oracle_tuples() if tuples is None else tuples
    failures = []
    for name, ms in tuples:
        b = B.get(name)
        reps = b.tuple_of(ms)
        C = twisted_code(b.group, reps)
        if len(C) > 2000:
            failures.append(f"{name} {ms}: {len(C)} words exceeds the all-pairs cap")
            continue
        formula = min_distance_via_supports(b.group, reps)
        brute = min_distance_bruteforce(C)
        if formula != brute:
            failures.append(f"{name} {ms}: formula {formula} != brute force {brute}")
    return SuiteResult("oracle-equivalence", not failures, {"tuples": len(tuples)}, failures)


RANDOM_POOLS = ("s6", "a6", "psl32", "asl32", "s6-12", "asl24", "m12")


def random_tuples(n: int = 50, seed: int = DEFAULT_SEED, pools=RANDOM_POOLS):
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        name = rng.choice(pools)
        k = len(B.get(name).pool)
        size = rng.randint(1, 4)
        out.append((name, tuple(rng.randint(1, k) for _ in range(size))))
    return out


def proposition_checks(name: str, indices) -> list[str]:
    """Frequency array, size law, distance invariance and the lower bound on one code."""
    b = B.get(name)
    G = b.group
    reps = b.tuple_of(indices)
    C = twisted_code(G, reps)
    r = len(reps)
    bad = []
    if not C.is_frequency_array(r):
        bad.append("not a frequency permutation array")
    K = tuple_kernel(reps)
    if len(C) * len(K) != G.order:
        bad.append(f"|C| = {len(C)} but |G|/|K| = {G.order // len(K)}")
    if not distance_invariance_check(C):
        bad.append("not distance invariant")
    delta = min_distance_via_supports(G, reps) if len(K) == 1 else min_distance_bruteforce(C)
    if len(C) <= 2000 and min_distance_bruteforce(C) != delta:
        bad.append("formula and brute force disagree")
    bound = delta_rep_lower_bound(G, reps)
    if delta < bound:
        bad.append(f"delta {delta} below the repetition bound {bound}")
    return [f"{name} {tuple(indices)}: {m}" for m in bad]


def proposition_suite(n_random: int = 50, seed: int = DEFAULT_SEED) -> SuiteResult:
    fixed = [(name, B.get(name).default_tuple) for name in B.BUILTINS if name != "asl28"]
    tuples = fixed + random_tuples(n_random, seed)
    failures = []
    for name, ms in tuples:
        failures.extend(proposition_checks(name, ms))
    return SuiteResult("proposition", not failures, {"codes": len(tuples)}, failures)


def neighbour_suite(names=("s6", "a6")) -> SuiteResult:
    from .hamming import neighbour_report

    failures = []
    details = {}
    for name in names:
        b = B.get(name)
        rep = neighbour_report(b.group, b.pool)
        details[name] = rep
        if not rep["stabilises_code"]:
            failures.append(f"{name}: generators do not stabilise the code")
        if rep["neighbours"] != rep["predicted_neighbours"]:
            failures.append(f"{name}: {rep['neighbours']} neighbours, predicted {rep['predicted_neighbours']}")
        if len(rep["orbits_full"]) != 1:
            failures.append(f"{name}: neighbours form {len(rep['orbits_full'])} orbits under the full set")
        if len(rep["orbits_without_swap"]) != 2:
            failures.append(f"{name}: {len(rep['orbits_without_swap'])} orbits without the swap, expected 2")
        if rep["code_orbits_diag"] != [rep["code_size"]]:
            failures.append(f"{name}: diagonal group is not transitive on the code")
    return SuiteResult("neighbours", not failures, details, failures)


def asl2r_suite(fs=(2, 3)) -> SuiteResult:
    from .asl2r import full_audit

    failures = []
    details = {}
    for f in fs:
        a = full_audit(f)
        details[str(f)] = a["checks"]
        failures.extend(f"f={f}: {k}" for k, v in a["checks"].items() if not v)
    return SuiteResult("asl2r", not failures, details, failures)


def psl_suite() -> SuiteResult:
    from .codes import inner_distribution, repetition_code

    b = B.get("psl32")
    G = b.group
    p, h = b.pool
    failures = []
    if not (p.support_sizes == h.support_sizes).all():
        failures.append("support sizes differ between points and hyperplanes")
    tw = inner_distribution(twisted_code(G, b.pool)).nonzero()
    reps = [inner_distribution(repetition_code(G, rho, 2)).nonzero() for rho in b.pool]
    if any(d != tw for d in reps):
        failures.append("twisted and repetition distributions differ")
    return SuiteResult("psl32", not failures, {"distribution": {str(k): v for k, v in tw.items()}}, failures)


def tables_suite(expected_dir=None) -> SuiteResult:
    from .tables import reproduce_tables

    results = reproduce_tables(expected_dir=expected_dir)
    failures = [m for r in results for m in r.mismatches]
    return SuiteResult("tables", not failures, {r.name: r.ok for r in results}, failures)


def determinism_suite(seed: int = DEFAULT_SEED) -> SuiteResult:
    """The seeded M12 search returns the same subgroup on a repeat run."""
    from .groups import find_subgroup

    G = B.m12_group()
    a = find_subgroup(G, 7920, accept=B._fixes_no_point, seed=seed)
    b = find_subgroup(G, 7920, accept=B._fixes_no_point, seed=seed)
    ok = a == b
    return SuiteResult("determinism", ok, {"seed": seed}, [] if ok else ["seeded search differs"])


SUITES = {
    "tables": tables_suite,
    "oracle-equivalence": oracle_equivalence,
    "proposition": proposition_suite,
    "neighbours": neighbour_suite,
    "asl2r": asl2r_suite,
    "psl32": psl_suite,
    "determinism": determinism_suite,
}
