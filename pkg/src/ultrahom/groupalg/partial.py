"""Partial automorphisms: finite pairings that extend to subgroup isomorphisms."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from ..errors import InvalidInput, InvalidPartialAutomorphism
from .finite import FiniteGroup


@dataclass
class PartialAutomorphism:
    """A validated pairing ``a_i -> b_i`` inside ``ambient``.

    ``extension`` maps every element of ``dom`` (the subgroup generated by
    the ``a_i``) to its image in ``ran``.
    """

    ambient: FiniteGroup
    pairs: list[tuple[int, int]]
    dom: list[int]
    ran: list[int]
    extension: dict[int, int]

    def __call__(self, x: int) -> int:
        return self.extension[x]

    def is_identity(self) -> bool:
        return all(x == y for x, y in self.extension.items())

    def is_total(self) -> bool:
        return len(self.dom) == self.ambient.order

    def inverse(self) -> "PartialAutomorphism":
        inv = {y: x for x, y in self.extension.items()}
        return PartialAutomorphism(self.ambient, [(b, a) for a, b in self.pairs],
                                   list(self.ran), list(self.dom), inv)


def _word_to_relation(w1: list[int], w2: list[int]) -> list[tuple[int, int]]:
    """The word ``w1 * w2^-1`` as (generator index, exponent) pairs."""
    return [(i, 1) for i in w1] + [(i, -1) for i in reversed(w2)]


def validate_partial_automorphism(G: FiniteGroup, pairs: Sequence[tuple[int, int]]) -> PartialAutomorphism:
    """Accept ``pairs`` iff ``a_i -> b_i`` extends to an isomorphism ``<a> -> <b>``.

    The diagonal subgroup ``<(a_i, b_i)>`` of ``G x G`` is closed breadth
    first.  It is the graph of an isomorphism exactly when both coordinate
    projections are injective on it, i.e. when its order equals both
    ``|<a>|`` and ``|<b>|``.  On a clash the two breadth-first words give a
    relation that holds on one side only, which is carried by the error.
    """
    pairs = [(int(a), int(b)) for a, b in pairs]
    for a, b in pairs:
        if not (0 <= a < G.order and 0 <= b < G.order):
            raise InvalidInput(f"pair ({a}, {b}) is outside the group")
    fwd = {0: 0}
    bwd = {0: 0}
    word = {(0, 0): []}
    queue = [(0, 0)]
    for x, y in queue:
        for i, (a, b) in enumerate(pairs):
            nx, ny = G.mul(x, a), G.mul(y, b)
            if (nx, ny) in word:
                continue
            w = word[(x, y)] + [i]
            if nx in fwd and fwd[nx] != ny:
                other = word[(nx, fwd[nx])]
                raise InvalidPartialAutomorphism(
                    "pairing does not extend: a relation of the domain fails in the range",
                    relation=_word_to_relation(w, other), side="domain")
            if ny in bwd and bwd[ny] != nx:
                other = word[(bwd[ny], ny)]
                raise InvalidPartialAutomorphism(
                    "pairing does not extend: a relation of the range fails in the domain",
                    relation=_word_to_relation(w, other), side="range")
            fwd[nx] = ny
            bwd[ny] = nx
            word[(nx, ny)] = w
            queue.append((nx, ny))
    dom = sorted(fwd)
    ran = sorted(bwd)
    return PartialAutomorphism(G, pairs, dom, ran, fwd)


def evaluate_word(G: FiniteGroup, elements: Sequence[int], relation: Sequence[tuple[int, int]]) -> int:
    r = 0
    for i, e in relation:
        r = G.mul(r, G.power(elements[i], e))
    return r


def brute_force_extends(G: FiniteGroup, pairs: Sequence[tuple[int, int]]) -> bool:
    """Independent oracle: search all bijections ``<a> -> <b>`` for an isomorphism.

    Backtracking over element images with homomorphism pruning, seeded with
    the required ``a_i -> b_i``.  Shares no code with the diagonal test.
    """
    A = G.closure([a for a, _ in pairs])
    B = set(G.closure([b for _, b in pairs]))
    if len(A) != len(B):
        return False
    phi: dict[int, int] = {0: 0}
    for a, b in pairs:
        if phi.get(a, b) != b:
            return False
        phi[a] = b
    if len(set(phi.values())) != len(phi):
        return False

    def consistent() -> bool:
        keys = list(phi)
        for x in keys:
            for y in keys:
                xy = G.mul(x, y)
                if xy in phi and phi[xy] != G.mul(phi[x], phi[y]):
                    return False
        return True

    if not consistent():
        return False
    todo = [x for x in A if x not in phi]
    order_of = {x: G.element_order(x) for x in A}
    border = {y: G.element_order(y) for y in B}

    def rec(i: int) -> bool:
        if i == len(todo):
            return True
        x = todo[i]
        if x in phi:
            return rec(i + 1)
        used = set(phi.values())
        for y in B:
            if y in used or border[y] != order_of[x]:
                continue
            phi[x] = y
            if consistent() and rec(i + 1):
                return True
            del phi[x]
        return False

    return rec(0)


def enumerate_partial_automorphisms(G: FiniteGroup, max_dom: int | None = None) -> Iterator[PartialAutomorphism]:
    """Every isomorphism between subgroups of G, each exactly once.

    A subgroup H with greedy generators h_1..h_r is paired with every
    tuple of same-order images that validates; distinct tuples give
    distinct isomorphisms because the h_i generate H.
    """
    by_order: dict[int, list[int]] = {}
    for x in range(G.order):
        by_order.setdefault(G.element_order(x), []).append(x)
    for H in G.subgroups():
        if max_dom is not None and len(H) > max_dom:
            continue
        gens = G.find_generators(sorted(H))
        for images in itertools.product(*(by_order[G.element_order(h)] for h in gens)):
            try:
                yield validate_partial_automorphism(G, list(zip(gens, images)))
            except InvalidPartialAutomorphism:
                continue
