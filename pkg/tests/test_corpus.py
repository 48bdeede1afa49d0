from __future__ import annotations

from collections import Counter

import pytest

from ultrahom.corpus import dicyclic, fingerprint, perm_groups, small_groups
from ultrahom.errors import InvalidInput

# number of groups of each order up to 24, up to isomorphism
KNOWN_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2, 10: 2, 11: 1, 12: 5,
                13: 1, 14: 2, 15: 1, 16: 14, 17: 1, 18: 5, 19: 1, 20: 5, 21: 2, 22: 2, 23: 1, 24: 15}


def test_counts_per_order():
    counts = Counter(G.order for G in small_groups(24))
    assert dict(counts) == KNOWN_COUNTS
    assert len(small_groups(24)) == 74


def test_entries_are_pairwise_non_isomorphic():
    prints = [fingerprint(G) for G in small_groups(24)]
    assert len(set(prints)) == len(prints)


def test_names_are_unique():
    names = [G.name for G in small_groups(24)]
    assert len(set(names)) == len(names)


def test_corpus_stops_at_24():
    with pytest.raises(InvalidInput):
        small_groups(25)


def test_quaternion_group():
    Q = dicyclic(2)
    assert Q.order == 8 and not Q.is_abelian()
    assert sum(1 for x in range(8) if Q.element_order(x) == 2) == 1


def test_perm_groups_bounded():
    gs = perm_groups(5000)
    assert all(G.order() <= 5000 for G in gs)
    assert len(gs) > 50
