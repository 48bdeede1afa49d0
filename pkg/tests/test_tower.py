from __future__ import annotations

import json
import math
import random
import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ultrahom.errors import CapExceeded, InvalidInput, InvalidPartialAutomorphism, RootUnavailable
from ultrahom.permcore import Permutation, conjugacy_witness, conjugate
from ultrahom.tower import (
    build_tower,
    conjugacy_witness_same_order,
    escape_witness,
    inner_uh_witness,
    nth_root,
    root_in_symmetric,
)

P = Permutation.from_cycles


def test_level_shapes(tower):
    assert [L.degree for L in tower] == [3, 6, 720]
    assert tower[0].order == 6 and tower[1].order == 720
    assert tower[2].order == math.factorial(720)
    assert tower[1].element(0).is_identity()


def test_up_embedding_preserves_order_and_is_fixed_point_free(tower):
    for L in tower[:2]:
        for i in range(min(L.order, 60)):
            img = L.regular_image(i)
            assert img.order() == L.finite.element_order(i)
            assert i == 0 or len(img.support()) == L.up.degree


def test_max_level_cap(tmp_path):
    with pytest.raises(CapExceeded):
        build_tower(3, cache_dir=tmp_path)


def test_cache_round_trip(tmp_path):
    first = build_tower(1, cache_dir=tmp_path)
    assert sorted(p.name for p in tmp_path.iterdir()) == ["level0.json", "level1.json"]
    data = json.loads((tmp_path / "level1.json").read_text())
    assert data["format_version"] == 1 and data["order"] == "720"
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        second = build_tower(1, cache_dir=tmp_path)
    assert [L.group.generators for L in second] == [L.group.generators for L in first]


def test_corrupt_cache_rebuilds_with_warning(tmp_path):
    build_tower(1, cache_dir=tmp_path)
    (tmp_path / "level1.json").write_text('{"format_version": 1, "level": 1, "broken": tru')
    with pytest.warns(RuntimeWarning):
        levels = build_tower(1, cache_dir=tmp_path)
    assert levels[1].order == 720
    json.loads((tmp_path / "level1.json").read_text())


def test_tampered_cache_rebuilds(tmp_path):
    build_tower(1, cache_dir=tmp_path)
    path = tmp_path / "level0.json"
    data = json.loads(path.read_text())
    data["elements"][1], data["elements"][2] = data["elements"][2], data["elements"][1]
    path.write_text(json.dumps(data))
    with pytest.warns(RuntimeWarning):
        build_tower(1, cache_dir=tmp_path)


def test_unwritable_cache_dir(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    with pytest.raises(InvalidInput):
        build_tower(1, cache_dir=blocker / "sub")


# witnesses


def test_inner_uh_witness_s3_to_sym6(tower):
    a, b = P(3, (0, 1)), P(3, (1, 2))
    cert = inner_uh_witness(tower, 0, [(a, b)])
    assert cert.verified and cert.ambient.degree == 6
    assert conjugate(tower[0].regular_image(a), cert.witness) == tower[0].regular_image(b)


def test_inner_uh_witness_rejects_invalid_pairing(tower):
    with pytest.raises(InvalidPartialAutomorphism):
        inner_uh_witness(tower, 0, [(P(3, (0, 1)), P(3, (0, 1, 2)))])


def test_inner_uh_witness_level_two_rejected(tower):
    with pytest.raises(InvalidInput):
        inner_uh_witness(tower, 2, [(0, 0)])


def test_inner_uh_witness_level_one(tower):
    L = tower[1]
    a, b = L.index_of(P(6, (0, 1, 2))), L.index_of(P(6, (3, 4, 5)))
    cert = inner_uh_witness(tower, 1, [(a, b)])
    assert cert.verified and cert.ambient.degree == 720


def test_same_order_non_conjugate_pair_becomes_conjugate(tower):
    a, b = P(6, (0, 1)), P(6, (0, 1), (2, 3), (4, 5))
    assert conjugacy_witness(tower[1].group, a, b) is None
    cert = conjugacy_witness_same_order(tower, 1, a, b)
    assert cert.verified


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 1), st.data())
def test_same_order_elements_conjugate_one_level_up(tower, n, data):
    L = tower[n]
    a = data.draw(st.integers(0, L.order - 1))
    m = L.finite.element_order(a)
    same = [x for x in range(L.order) if L.finite.element_order(x) == m]
    b = data.draw(st.sampled_from(same))
    cert = conjugacy_witness_same_order(tower, n, a, b)
    assert cert.verified


# roots


def test_root_examples(tower):
    r = nth_root(tower, 0, P(3, (0, 1, 2)), 2)
    assert r.verify() and r.level == 0
    r = nth_root(tower, 0, P(3, (0, 1)), 2)
    assert r.verify() and r.level == 2 and r.h.order() == 4
    r = nth_root(tower, 0, P(3, (0, 1, 2)), 4)
    assert r.verify()


def test_root_cap_and_infeasible(tower):
    with pytest.raises(CapExceeded):
        nth_root(tower, 0, P(3, (0, 1, 2)), 241)
    # a 9th root merges 3-cycles nine at a time; the images have 1, 2 and
    # 240 three-cycles, none a multiple of nine
    with pytest.raises(RootUnavailable):
        nth_root(tower, 0, P(3, (0, 1, 2)), 9)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 9).flatmap(lambda n: st.tuples(st.permutations(range(n)).map(Permutation),
                                                        st.integers(1, 12))))
def test_root_in_symmetric_matches_brute_force(t):
    g, k = t
    h = root_in_symmetric(g, k)
    if h is not None:
        assert h ** k == g
    elif g.degree <= 6:
        import itertools

        assert not any(Permutation(q) ** k == g for q in itertools.permutations(range(g.degree)))


def test_root_sampling_is_deterministic(tower):
    rng = random.Random(7)
    draws = [(rng.randrange(2), rng.randrange(720), rng.randrange(2, 6)) for _ in range(20)]
    out = []
    for n, i, k in draws:
        i %= tower[n].order
        try:
            out.append(nth_root(tower, n, i, k).h)
        except RootUnavailable:
            out.append(None)
    again = []
    for n, i, k in draws:
        i %= tower[n].order
        try:
            again.append(nth_root(tower, n, i, k).h)
        except RootUnavailable:
            again.append(None)
    assert out == again


# escape


def test_escape_from_trivial_subgroup(tower):
    cert = escape_witness(tower, 0, [], P(3, (0, 1)))
    assert cert.witness.verified and cert.moves_b and cert.centralizes_base
    assert cert.amalgam_degree == 36


def test_escape_from_transposition(tower):
    cert = escape_witness(tower, 0, [P(3, (0, 1))], P(3, (0, 1, 2)))
    assert cert.witness.verified and cert.moves_b and cert.centralizes_base
    assert cert.amalgam_degree == 18 and cert.generated_order == 18


def test_escape_rejects_b_in_subgroup(tower):
    with pytest.raises(InvalidInput):
        escape_witness(tower, 0, [P(3, (0, 1, 2))], P(3, (0, 2, 1)))


def test_escape_at_level_one_reports_cap(tower):
    with pytest.raises(CapExceeded) as info:
        escape_witness(tower, 1, [P(6, (0, 1))], P(6, (0, 1, 2)))
    assert info.value.stages[0] == "precondition"
