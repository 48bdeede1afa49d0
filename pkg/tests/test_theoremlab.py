from __future__ import annotations

import itertools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ultrahom.corpus import cyclic, small_groups
from ultrahom.errors import CapExceeded, InvalidInput
from ultrahom.permcore import Permutation, alternating_group, dihedral_group, symmetric_group
from ultrahom.theoremlab import (
    LIMIT_LABEL,
    SUITES,
    FormulaContext,
    centralizer_gap_witness,
    check_inner_ultrahomogeneous,
    commuting_pattern_realizer,
    conjugate_width_oracle,
    finite_exponent_dichotomy_scan,
    inner_uh_classification,
    inversion_identity_check,
    ncycle_identity_check,
    ncycle_identity_sides,
    odd_abelian_invariants,
    odd_cyclic_definability_check,
    omitted_type_fragment,
    order_product_check,
    peeling_table_check,
    permuted_generator_identity,
    prime_peeling_bound,
    q8_order4_automorphism,
    run_suite,
    run_suites,
    straight_maximality_pattern,
)

P = Permutation.from_cycles


# inner ultrahomogeneity


def test_inner_uh_examples():
    groups = {G.name: G for G in small_groups(6)}
    assert check_inner_ultrahomogeneous(groups["1"]).holds
    assert check_inner_ultrahomogeneous(groups["Z2"]).holds
    assert check_inner_ultrahomogeneous(groups["S3"]).holds
    res = check_inner_ultrahomogeneous(groups["Z3"])
    assert not res.holds and res.counterexample == [(1, 2)]


def test_inner_uh_cap():
    with pytest.raises(CapExceeded):
        check_inner_ultrahomogeneous(cyclic(60))


def test_inner_uh_classification_up_to_order_12():
    rep = inner_uh_classification(small_groups(12))
    assert rep.ok
    assert [c["inputs"]["group"] for c in rep.cases if c["actual"]] == ["1", "Z2", "S3"]


# n-cycle identity and widths


@pytest.mark.parametrize("n", range(3, 13))
def test_ncycle_identity_holds_right_to_left(n):
    assert ncycle_identity_check(n)
    assert not ncycle_identity_check(n, convention="left_to_right")


def test_ncycle_identity_bad_input():
    with pytest.raises(InvalidInput):
        ncycle_identity_sides(2)
    with pytest.raises(InvalidInput):
        ncycle_identity_sides(5, convention="sideways")


def test_width_examples():
    A5 = alternating_group(5)
    g = P(5, (0, 1, 2))
    assert conjugate_width_oracle(A5, g, g, 1) == [g]
    dec = conjugate_width_oracle(A5, g, P(5, (0, 1), (2, 3)), 4)
    assert dec is not None and len(dec) <= 2
    prod = Permutation.identity(5)
    for c in dec:
        prod = prod * c
    assert prod == P(5, (0, 1), (2, 3))
    assert conjugate_width_oracle(symmetric_group(5), g, P(5, (0, 1)), 6) is None


@pytest.mark.parametrize("n,m", list(itertools.product(range(2, 7), range(1, 9))))
def test_order_product_grid(n, m):
    res = order_product_check(n, m)
    assert res.verify() and res.product_order == m and len(res.factors) == 4


def test_order_product_trivial_case():
    assert order_product_check(5, 5).method == "direct"


# identities


def test_inversion_identity_examples():
    for G in (symmetric_group(3), symmetric_group(4), dihedral_group(8)):
        assert inversion_identity_check(G).ok


def test_inversion_identity_random_branch():
    rep = inversion_identity_check(symmetric_group(7), samples=20, enum_cap=100)
    assert rep.ok and len(rep.cases) >= 1


def test_permuted_generator_identity():
    rep = permuted_generator_identity(5, samples=5, extra=[([(1, 2, 3)], [(2, 3)]), ([(1, 2, 3, 4, 5)], [(1, 2)])])
    assert rep.ok and len(rep.cases) == 8


# arithmetic


def test_peeling_examples():
    t = prime_peeling_bound(2**5)
    assert t.ok and not t.steps
    t = prime_peeling_bound(15)
    assert t.ok and [s["p"] for s in t.steps] == [5, 3] and t.l_final == 3


@given(st.integers(1, 10**7))
def test_peeling_bound_property(n):
    assert prime_peeling_bound(n).ok


def test_peeling_table_small():
    assert peeling_table_check(5000).ok


def test_finite_exponent_examples():
    rep = finite_exponent_dichotomy_scan([[2] * 7, [2**13], [15]], K_max=6)
    assert rep.ok
    # 2^13 exceeds 2^(2K^2) only for K <= 2; there the long cyclic factor is the escape
    ks = [c["inputs"]["K"] for c in rep.cases if c["inputs"].get("factors") == [2**13] and "K" in c["inputs"]]
    assert ks == [1, 2]
    assert not any(c["inputs"].get("factors") == [15] and "K" in c["inputs"] for c in rep.cases)


# centralizer gaps, omitted types, patterns


@pytest.mark.parametrize("m,n", [(4, 2), (9, 3), (12, 6), (8, 8)])
def test_centralizer_gap_examples(m, n):
    assert centralizer_gap_witness(P(m, tuple(range(m))), n).ok


def test_centralizer_gap_rejects():
    with pytest.raises(InvalidInput):
        centralizer_gap_witness(4, 1)
    with pytest.raises(InvalidInput):
        centralizer_gap_witness(9, 2)


@pytest.mark.parametrize("N", range(2, 7))
def test_omitted_type_counts(N):
    rep = omitted_type_fragment(N)
    assert rep.ok and len(rep.cases) == (2 * N - 1) ** 2


def test_commuting_pattern_examples():
    r = commuting_pattern_realizer([[1, 1], [1, 1]])
    assert r.exact and r.shift_ok and r.pattern_ok
    r = commuting_pattern_realizer([[1, 0], [0, 1]])
    assert r.exact


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3).flatmap(lambda r: st.lists(
    st.lists(st.integers(0, 1), min_size=4, max_size=4), min_size=r, max_size=r)))
def test_commuting_pattern_property(M):
    assert commuting_pattern_realizer(M).exact


# definability


def test_odd_cyclic_examples():
    assert odd_cyclic_definability_check(symmetric_group(5), P(5, (0, 1, 2, 3, 4))).ok
    rep = odd_cyclic_definability_check(symmetric_group(4), Permutation.identity(4))
    assert rep.ok
    with pytest.raises(InvalidInput):
        odd_cyclic_definability_check(symmetric_group(4), P(4, (0, 1)))


def test_straight_maximality():
    rep = straight_maximality_pattern([3, 5, 7])
    assert rep.ok
    sizes = [c["actual"] for c in rep.cases if "S_p" in c["inputs"]]
    assert sizes == [2, 4, 6]
    assert any("agrees on all subsets" in n for n in rep.notes)


def test_formula_context_semantic_phi():
    ctx = FormulaContext(symmetric_group(3), evaluator="semantic")
    assert ctx.phi_set(P(3, (0, 1, 2))) == {P(3, (0, 1, 2)), P(3, (0, 2, 1))}


def test_straight_maximality_rejects_even():
    with pytest.raises(InvalidInput):
        straight_maximality_pattern([2, 3])


# automorphism scans


def test_q8_certificate():
    c = q8_order4_automorphism()
    assert c.aut_order == 24 and c.sigma_order == 4 and not c.sigma_squared_identity


def test_odd_abelian_invariants_counts():
    assert [3] in odd_abelian_invariants(9) and [3, 3] in odd_abelian_invariants(9)
    # orders 3..27: one group each except 9, 25 (two) and 27 (three)
    inv = odd_abelian_invariants(27)
    assert len(inv) == 17 and len({tuple(x) for x in inv}) == 17


# registry and reports


def test_reports_are_json_and_reproducible():
    a = run_suite("ncycle-identity").to_json()
    b = run_suite("ncycle-identity").to_json()
    json.dumps(a)
    a.pop("wall_time_ms")
    b.pop("wall_time_ms")
    assert a == b


def test_run_suites_in_parallel_keeps_order():
    names = ["q8-automorphism", "ncycle-identity"]
    reps = run_suites(names, workers=2)
    assert [r.suite for r in reps] == names and all(r.ok for r in reps)


def test_unknown_suite():
    with pytest.raises(InvalidInput):
        run_suite("nope")


def test_default_label():
    assert run_suite("centralizer-gap").label == LIMIT_LABEL


def test_registry_names():
    assert len(SUITES) == 15
