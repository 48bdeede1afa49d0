"""The eleven acceptance criteria, one test each.

Every test records a single PASS/FAIL line (printed in the pytest terminal
summary, or directly when this file is run as a script) and then asserts
the criterion.  Runtime budgets are part of each criterion.
"""

from __future__ import annotations

import random
import time
from collections import Counter

import pytest

from ultrahom.construct import eppa_amalgam_with_automorphisms, hall_witness, neumann_amalgam, regular_representation
from ultrahom.corpus import abelian, cyclic, perm_groups, small_groups
from ultrahom.errors import InvalidPartialAutomorphism, RootUnavailable
from ultrahom.groupalg import (
    GroupHomomorphism,
    brute_force_extends,
    enumerate_partial_automorphisms,
    find_subgroup_isomorphism,
    hom_from_generators,
    subgroup_group,
    validate_partial_automorphism,
)
from ultrahom.permcore import centralizer, conjugacy_witness, conjugate
from ultrahom.theoremlab import (
    centralizer_gap_suite,
    commuting_pattern_suite,
    finite_groups_simple_suite,
    inner_uh_classification,
    odd_fixing_suite,
    omitted_type_fragment,
    peeling_table_check,
    sigma_families_suite,
    straight_maximality_pattern,
)
from ultrahom.tower import build_tower, conjugacy_witness_same_order, inner_uh_witness, nth_root

RESULTS: list[str] = []


def _record(number: int, title: str, ok: bool, detail: str, elapsed: float, budget: float) -> bool:
    within = elapsed <= budget
    passed = ok and within
    timing = f"{elapsed:.1f}s of {budget:.0f}s" + ("" if within else " OVER BUDGET")
    line = f"{'PASS' if passed else 'FAIL'} criterion {number:>2} {title}: {detail} [{timing}]"
    RESULTS.append(line)
    print(line)
    return passed


@pytest.fixture(scope="module")
def levels(tmp_path_factory):
    return build_tower(2, cache_dir=tmp_path_factory.mktemp("acceptance-tower"))


def test_criterion_01_inner_uh_classification():
    t0 = time.perf_counter()
    rep = inner_uh_classification(small_groups(24))
    holding = [c["inputs"]["group"] for c in rep.cases if c["actual"]]
    ok = rep.ok and holding == ["1", "Z2", "S3"] and len(rep.cases) == 74
    assert _record(1, "inner-UH classification", ok,
                   f"{len(rep.cases)} groups, holds exactly for {holding}", time.perf_counter() - t0, 60)


def test_criterion_02_hall_witness_all_partials():
    t0 = time.perf_counter()
    cases = failures = 0
    for G in small_groups(16):
        e = regular_representation(G)
        for p in enumerate_partial_automorphisms(G, 8):
            _, cert = hall_witness(G, p, embedding=e)
            exact = cert.verified and all(conjugate(e(x), cert.witness) == e(p(x)) for x in p.dom)
            cases += 1
            failures += not exact
    assert _record(2, "Hall witness, |dom| <= 8, |G| <= 16", failures == 0 and cases > 1000,
                   f"{cases} partial automorphisms, {failures} failures", time.perf_counter() - t0, 300)


def test_criterion_03_amalgam_intersection():
    t0 = time.perf_counter()
    groups = small_groups(12)
    subs = {G.name: [sorted(H) for H in G.subgroups()] for G in groups}
    cases = failures = 0
    for B in groups:
        for H in subs[B.name]:
            A, iAB = subgroup_group(B, H)
            for C in groups:
                for K in subs[C.name]:
                    if len(K) != len(H):
                        continue
                    f = find_subgroup_isomorphism(B, H, C, K)
                    if f is None:
                        continue
                    iAC = GroupHomomorphism(A, C, [f[h] for h in H])
                    r = neumann_amalgam(A, B, C, iAB, iAC)
                    cases += 1
                    failures += not (r.intersection_checked and r.intersection_ok)
    assert _record(3, "permutational product intersection, |B|,|C| <= 12", failures == 0 and cases > 0,
                   f"{cases} triples, {failures} failures", time.perf_counter() - t0, 120)


def test_criterion_04_eppa_pipeline():
    t0 = time.perf_counter()
    A, B, C = cyclic(2), cyclic(4), abelian(2, 2)
    iAB = hom_from_generators(A, B, {1: 2})
    iAC = hom_from_generators(A, C, {1: 3})
    p = validate_partial_automorphism(B, [(1, 3)])
    q = validate_partial_automorphism(C, [(1, 2), (2, 1)])
    r = eppa_amalgam_with_automorphisms(A, B, C, iAB, iAC, [p], [q])
    w = r.witnesses[0]
    # the witness carries the p-equations on the copy of B, then the q-equations on C
    p_eqs, q_eqs = w.equations[:len(p.dom)], w.equations[len(p.dom):]
    p_ok = all(conjugate(a, w.witness) == b for a, b in p_eqs) and len(p_eqs) == len(p.dom)
    q_ok = all(conjugate(a, w.witness) == b for a, b in q_eqs) and len(q_eqs) == len(q.dom)
    ok = r.intersection_ok and len(r.witnesses) == 1 and w.verify() and p_ok and q_ok
    assert _record(4, "EPPA amalgam Z2 <= Z4, Z2xZ2", ok,
                   f"degree {r.degree}, stages {r.stages[-1]!r} reached; p-equations {len(p_eqs)} exact, "
                   f"q-equations {len(q_eqs)} exact",
                   time.perf_counter() - t0, 60)


def test_criterion_05_ncycle_and_order_products():
    t0 = time.perf_counter()
    rep = finite_groups_simple_suite(range(2, 7), range(1, 9))
    methods = Counter(c.get("method") for c in rep.cases if "method" in c)
    assert _record(5, "n-cycle identity n=3..12, order products n<=6, m<=8", rep.ok and len(rep.cases) == 60,
                   f"{len(rep.cases)} cases, {len(rep.counterexamples)} counterexamples, methods {dict(methods)}",
                   time.perf_counter() - t0, 120)


def test_criterion_06_nth_roots(levels):
    t0 = time.perf_counter()
    rng = random.Random(20240601)
    exact = unavailable = wrong = 0
    by_level: Counter = Counter()
    misses = []
    for _ in range(200):
        n = rng.randrange(2)
        L = levels[n]
        i = rng.randrange(L.order)
        m = L.finite.element_order(i)
        k = rng.randint(2, 720 // m)
        try:
            res = nth_root(levels, n, i, k)
        except RootUnavailable:
            unavailable += 1
            misses.append((n, L.finite.perm(i).cycle_type(), k))
            continue
        if res.h ** k == res.target and res.verify():
            exact += 1
            by_level[res.level] += 1
        else:
            wrong += 1
    detail = (f"{exact}/200 exact (root found at levels {dict(sorted(by_level.items()))}), "
              f"{unavailable} with no root at any level <= 2, {wrong} wrong; first misses {misses[:3]}")
    assert _record(6, "n-th roots, k*ord(g) <= 720", exact == 200, detail, time.perf_counter() - t0, 120)


def test_criterion_07_abelian_arithmetic():
    t0 = time.perf_counter()
    fam = sigma_families_suite(6, 3, 8)
    peel = peeling_table_check(10**6)
    ok = fam.ok and peel.ok
    assert _record(7, "sigma families and prime peeling", ok,
                   f"{len(fam.cases)} family cases, {len(fam.counterexamples)} failures; "
                   f"peeling over all orders <= 10^6 ({peel.cases[0]['inputs']['odd_parts_checked']} odd parts), "
                   f"{len(peel.cases[0]['actual'])} failures",
                   time.perf_counter() - t0, 300)


def test_criterion_08_odd_abelian_fixing():
    t0 = time.perf_counter()
    rep = odd_fixing_suite(225)
    assert _record(8, "fixing automorphisms, odd abelian |A| <= 225", rep.ok,
                   rep.notes[-1], time.perf_counter() - t0, 120)


def test_criterion_09_fragments():
    t0 = time.perf_counter()
    omitted = [omitted_type_fragment(N) for N in range(2, 7)]
    gap = centralizer_gap_suite(50)
    patterns = commuting_pattern_suite(3, 3)
    smax = straight_maximality_pattern([3, 5, 7])
    sizes = [c["actual"] for c in smax.cases if "S_p" in c["inputs"]]
    combos = [c for c in smax.cases if c["inputs"].get("check") == "phi_equals_union"]
    n_matrices = sum(1 for c in patterns.cases if "matrix" in c["inputs"])
    ok = (all(r.ok for r in omitted) and gap.ok and len(gap.cases) == 50 and patterns.ok
          and n_matrices == 512 and smax.ok and sizes == [2, 4, 6] and len(combos) == 8)
    detail = (f"omitted N=2..6 {sum(len(r.cases) for r in omitted)} checks; gaps {len(gap.cases)}; "
              f"patterns {n_matrices}; straight maximality {len(combos)} combinations, S_p sizes {sizes}")
    assert _record(9, "finite fragments", ok, detail, time.perf_counter() - t0, 600)


def test_criterion_10_tower_service(levels):
    t0 = time.perf_counter()
    G0 = levels[0]
    partials = list(enumerate_partial_automorphisms(G0.finite))
    witnessed = 0
    for p in partials:
        cert = inner_uh_witness(levels, 0, p.pairs)
        witnessed += cert.verified and cert.ambient.degree == 6
    rng = random.Random(1000)
    by_order = []
    for L in levels[:2]:
        groups: dict[int, list[int]] = {}
        for x in range(L.order):
            groups.setdefault(L.finite.element_order(x), []).append(x)
        by_order.append(groups)
    conj_ok = non_conjugate_below = 0
    for _ in range(1000):
        n = rng.randrange(2)
        L = levels[n]
        a = rng.randrange(L.order)
        b = rng.choice(by_order[n][L.finite.element_order(a)])
        cert = conjugacy_witness_same_order(levels, n, a, b)
        conj_ok += cert.verified
        if conjugacy_witness(L.group, L.element(a), L.element(b)) is None:
            non_conjugate_below += 1
    ok = witnessed == len(partials) and conj_ok == 1000 and non_conjugate_below >= 1
    detail = (f"{witnessed}/{len(partials)} partial automorphisms of S3 witnessed in Sym(6); "
              f"{conj_ok}/1000 same-order pairs conjugated one level up, "
              f"{non_conjugate_below} of them non-conjugate at their own level")
    assert _record(10, "tower service", ok, detail, time.perf_counter() - t0, 300)


def test_criterion_11_cross_oracles():
    t0 = time.perf_counter()
    rng = random.Random(11)
    cent_cases = cent_bad = 0
    for G in perm_groups(5000):
        elems = G.element_list(5000)
        sets = [[g] for g in G.generators] + [[rng.choice(elems)] for _ in range(3)]
        sets += [[rng.choice(elems), rng.choice(elems)], []]
        for S in sets:
            a = centralizer(G, S)
            b = centralizer(G, S, method="enumerate")
            cent_cases += 1
            cent_bad += not (a.same_group(b) and a.order() == b.order())
    val_cases = val_bad = 0
    for G in small_groups(16):
        n = G.order
        cases = [[(a, b)] for a in range(n) for b in range(n)]
        cases += [[(rng.randrange(n), rng.randrange(n)) for _ in range(2)] for _ in range(150)]
        cases += [[(rng.randrange(n), rng.randrange(n)) for _ in range(3)] for _ in range(50)]
        for pairs in cases:
            try:
                validate_partial_automorphism(G, pairs)
                verdict = True
            except InvalidPartialAutomorphism:
                verdict = False
            val_cases += 1
            val_bad += verdict != brute_force_extends(G, pairs)
    ok = cent_bad == 0 and val_bad == 0
    detail = (f"centralizers {cent_cases} comparisons, {cent_bad} mismatches; "
              f"partial automorphism verdicts {val_cases} comparisons, {val_bad} mismatches")
    assert _record(11, "cross-oracle consistency", ok, detail, time.perf_counter() - t0, 600)


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))
