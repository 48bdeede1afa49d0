"""Abstract finite groups on element indices, homomorphisms, and products."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from ..errors import CapExceeded, InvalidInput
from ..permcore import Permutation, PermGroup, _mul

FINITE_GROUP_CAP = 10**4
TABLE_CAP = 2048


class FiniteGroup:
    """A finite group whose elements are the indices ``0..order-1``.

    Index 0 is the identity.  Multiplication is supplied either as a table,
    as a callable on indices, or through a permutation realization (a list
    of permutations, one per index).  ``generators`` is a list of indices
    generating the group.
    """

    def __init__(self, order: int, mul: Callable[[int, int], int], inv: Callable[[int], int],
                 generators: Sequence[int], *, name: str = "", labels: Sequence | None = None,
                 perms: Sequence[Permutation] | None = None, cap: int = FINITE_GROUP_CAP):
        if order > cap:
            raise CapExceeded(f"finite group of order {order} exceeds cap {cap}")
        self.order = order
        self._mul = mul
        self._inv = inv
        self.generators = [g for g in generators if g != 0] if order > 1 else []
        self.name = name
        self.labels = list(labels) if labels is not None else None
        self.perms = list(perms) if perms is not None else None
        self._perm_index: dict | None = None
        self._table: list[list[int]] | None = None
        self._inv_cache: list[int] | None = None

    # construction

    @classmethod
    def from_table(cls, table: Sequence[Sequence[int]], *, name: str = "",
                   generators: Sequence[int] | None = None) -> "FiniteGroup":
        n = len(table)
        table = [list(row) for row in table]
        if any(len(r) != n for r in table):
            raise InvalidInput("multiplication table is not square")
        if table[0] != list(range(n)) or [r[0] for r in table] != list(range(n)):
            raise InvalidInput("index 0 must be the identity")
        invs = []
        for x in range(n):
            try:
                invs.append(table[x].index(0))
            except ValueError:
                raise InvalidInput(f"element {x} has no inverse") from None
        G = cls(n, lambda a, b: table[a][b], invs.__getitem__, [], name=name)
        G._table = table
        G.generators = list(generators) if generators is not None else G.find_generators()
        return G

    @classmethod
    def from_permutations(cls, generators: Sequence[Permutation], *, name: str = "",
                          cap: int = FINITE_GROUP_CAP) -> "FiniteGroup":
        """Enumerate ``<generators>`` breadth-first, identity first."""
        if not generators:
            raise InvalidInput("need at least one generator")
        n = generators[0].degree
        ident = tuple(range(n))
        raw = [g.images for g in generators]
        index = {ident: 0}
        elems = [ident]
        for x in elems:
            for s in raw:
                y = _mul(x, s)
                if y not in index:
                    index[y] = len(elems)
                    elems.append(y)
                    if len(elems) > cap:
                        raise CapExceeded(f"permutation group exceeds enumeration cap {cap}")
        perms = [Permutation._raw(e) for e in elems]
        gens = [index[s] for s in raw]
        inv_list = [0] * len(elems)
        for i, e in enumerate(elems):
            inv_list[i] = index[tuple(sorted(range(n), key=e.__getitem__))]

        def mul(a: int, b: int) -> int:
            return index[_mul(elems[a], elems[b])]

        G = cls(len(elems), mul, inv_list.__getitem__, gens, name=name, perms=perms, cap=cap)
        G._perm_index = index
        G._inv_cache = inv_list
        return G

    @classmethod
    def from_element_list(cls, elements: Sequence[Permutation], generators: Sequence[Permutation], *,
                          name: str = "", cap: int = FINITE_GROUP_CAP) -> "FiniteGroup":
        """Use a stored enumeration; checks closure under the generators."""
        elems = [e.images for e in elements]
        if not elems or any(x != i for i, x in enumerate(elems[0])):
            raise InvalidInput("element list must start with the identity")
        index = {e: i for i, e in enumerate(elems)}
        if len(index) != len(elems):
            raise InvalidInput("element list has repeats")
        raw = [g.images for g in generators]
        for x in elems:
            for s in raw:
                if _mul(x, s) not in index:
                    raise InvalidInput("element list is not closed under the generators")
        n = len(elems[0])
        inv_list = [index[tuple(sorted(range(n), key=e.__getitem__))] for e in elems]

        def mul(a: int, b: int) -> int:
            return index[_mul(elems[a], elems[b])]

        G = cls(len(elems), mul, inv_list.__getitem__, [index[s] for s in raw], name=name,
                perms=[Permutation._raw(e) for e in elems], cap=cap)
        G._perm_index = index
        G._inv_cache = inv_list
        return G

    @classmethod
    def from_perm_group(cls, G: PermGroup, *, name: str = "", cap: int = FINITE_GROUP_CAP) -> "FiniteGroup":
        if G.order() > cap:
            raise CapExceeded(f"group of order {G.order()} exceeds enumeration cap {cap}")
        return cls.from_permutations(list(G.generators), name=name or G.name, cap=cap)

    # basic operations

    def mul(self, a: int, b: int) -> int:
        if self._table is not None:
            return self._table[a][b]
        return self._mul(a, b)

    def inv(self, a: int) -> int:
        return self._inv(a)

    def conj(self, x: int, h: int) -> int:
        """``x^h = h^-1 x h``."""
        return self.mul(self.inv(h), self.mul(x, h))

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inv(x), -k
        r = 0
        while k:
            if k & 1:
                r = self.mul(r, x)
            x = self.mul(x, x)
            k >>= 1
        return r

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != 0:
            y = self.mul(y, x)
            k += 1
        return k

    def commutes(self, a: int, b: int) -> bool:
        return self.mul(a, b) == self.mul(b, a)

    def table(self) -> list[list[int]]:
        if self._table is None:
            if self.order > TABLE_CAP:
                raise CapExceeded(f"table of order {self.order} exceeds table cap {TABLE_CAP}")
            self._table = [[self._mul(a, b) for b in range(self.order)] for a in range(self.order)]
        return self._table

    def perm(self, x: int) -> Permutation:
        if self.perms is None:
            raise InvalidInput("group has no permutation realization")
        return self.perms[x]

    def index_of(self, p: Permutation) -> int:
        if self._perm_index is None:
            raise InvalidInput("group has no permutation realization")
        try:
            return self._perm_index[p.images]
        except KeyError:
            raise InvalidInput(f"{p!r} is not an element of the group") from None

    def perm_group(self) -> PermGroup:
        if self.perms is None:
            raise InvalidInput("group has no permutation realization")
        return PermGroup([self.perms[g] for g in self.generators] or [self.perms[0]])

    # subgroups

    def closure(self, gens: Iterable[int]) -> list[int]:
        """Elements of ``<gens>`` in breadth-first order, identity first."""
        gens = [g for g in gens if g != 0]
        seen = {0}
        out = [0]
        for x in out:
            for s in gens:
                y = self.mul(x, s)
                if y not in seen:
                    seen.add(y)
                    out.append(y)
        return out

    def find_generators(self, elements: Iterable[int] | None = None) -> list[int]:
        """Greedy generating set, scanning ``elements`` (default: all indices)."""
        gens: list[int] = []
        span = {0}
        for x in (range(self.order) if elements is None else elements):
            if x not in span:
                gens.append(x)
                span = set(self.closure(gens))
        return gens

    def is_abelian(self) -> bool:
        gs = self.generators
        return all(self.commutes(a, b) for i, a in enumerate(gs) for b in gs[i + 1:])

    def center(self) -> list[int]:
        return [x for x in range(self.order) if all(self.commutes(x, g) for g in self.generators)]

    def centralizer(self, S: Iterable[int]) -> list[int]:
        S = list(S)
        return [x for x in range(self.order) if all(self.commutes(x, s) for s in S)]

    def subgroups(self) -> list[frozenset]:
        """All subgroups, by joining cyclic subgroups until nothing new appears."""
        cyclic = {frozenset(self.closure([x])) for x in range(self.order)}
        found = set(cyclic)
        frontier = set(cyclic)
        while frontier:
            new = set()
            for H in frontier:
                for C in cyclic:
                    if C <= H:
                        continue
                    J = frozenset(self.closure(list(H) + list(C)))
                    if J not in found:
                        new.add(J)
            found |= new
            frontier = new
        return sorted(found, key=lambda H: (len(H), sorted(H)))

    def check_axioms(self, sample: int | None = None, seed: int = 0) -> bool:
        n = self.order
        for x in range(n):
            if self.mul(0, x) != x or self.mul(x, 0) != x or self.mul(x, self.inv(x)) != 0:
                return False
        if sample is None and n <= 256:
            triples = ((a, b, c) for a in range(n) for b in range(n) for c in range(n))
        else:
            rng = random.Random(seed)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(sample or 20000))
        return all(self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c)) for a, b, c in triples)

    def to_json(self) -> dict:
        return {"order": self.order, "table": self.table()}

    @classmethod
    def from_json(cls, data: dict) -> "FiniteGroup":
        if "table" in data:
            return cls.from_table(data["table"], name=data.get("name", ""))
        if "generators" in data:
            gens = [Permutation(g) for g in data["generators"]]
            return cls.from_permutations(gens, name=data.get("name", ""))
        raise InvalidInput("group JSON needs a 'table' or 'generators' field")

    def __repr__(self) -> str:
        return f"<FiniteGroup {self.name or '?'} order={self.order}>"


def trivial_group() -> FiniteGroup:
    return FiniteGroup(1, lambda a, b: 0, lambda a: 0, [], name="1")


@dataclass
class GroupHomomorphism:
    """A total map between finite groups, stored as an image list."""

    source: FiniteGroup
    target: FiniteGroup
    images: list[int]
    injective: bool = field(init=False)

    def __post_init__(self):
        self.injective = len(set(self.images)) == self.source.order

    def __call__(self, x: int) -> int:
        return self.images[x]

    def is_homomorphism(self) -> bool:
        """Exact check: f(x s) = f(x) f(s) for every x and generator s."""
        S, T, f = self.source, self.target, self.images
        if f[0] != 0:
            return False
        return all(f[S.mul(x, s)] == T.mul(f[x], f[s]) for x in range(S.order) for s in S.generators)

    def image(self) -> list[int]:
        return sorted(set(self.images))

    def compose(self, other: "GroupHomomorphism") -> "GroupHomomorphism":
        """``self`` after ``other``."""
        return GroupHomomorphism(other.source, self.target, [self.images[y] for y in other.images])


def hom_from_generators(source: FiniteGroup, target: FiniteGroup, gen_images: dict[int, int]) -> GroupHomomorphism:
    """Extend ``gen_images`` (source generator index -> target index) to a homomorphism.

    Raises InvalidInput if the assignment does not extend.
    """
    gens = list(gen_images)
    if set(source.closure(gens)) != set(range(source.order)):
        raise InvalidInput("assigned elements do not generate the source group")
    f = {0: 0}
    queue = [0]
    for x in queue:
        for s in gens:
            y = source.mul(x, s)
            v = target.mul(f[x], gen_images[s])
            if y in f:
                if f[y] != v:
                    raise InvalidInput("generator images do not define a homomorphism")
            else:
                f[y] = v
                queue.append(y)
    return GroupHomomorphism(source, target, [f[x] for x in range(source.order)])


def identity_hom(G: FiniteGroup) -> GroupHomomorphism:
    return GroupHomomorphism(G, G, list(range(G.order)))


def direct_product(G: FiniteGroup, H: FiniteGroup, *, cap: int = FINITE_GROUP_CAP):
    """``G x H`` with its two coordinate embeddings.

    The pair ``(g, h)`` has index ``g * |H| + h``.
    """
    n, m = G.order, H.order
    if n * m > cap:
        raise CapExceeded(f"product order {n * m} exceeds cap {cap}")

    def mul(a: int, b: int) -> int:
        return G.mul(a // m, b // m) * m + H.mul(a % m, b % m)

    def inv(a: int) -> int:
        return G.inv(a // m) * m + H.inv(a % m)

    gens = [g * m for g in G.generators] + list(H.generators)
    P = FiniteGroup(n * m, mul, inv, gens, name=f"{G.name or '?'}x{H.name or '?'}", cap=cap)
    eG = GroupHomomorphism(G, P, [g * m for g in range(n)])
    eH = GroupHomomorphism(H, P, list(range(m)))
    return P, eG, eH


class RegularImages:
    """Lazily computed left-multiplication permutations, indexed by element."""

    def __init__(self, G: FiniteGroup):
        self.group = G
        self._cache: dict[int, Permutation] = {}

    def __getitem__(self, g: int) -> Permutation:
        p = self._cache.get(g)
        if p is None:
            G = self.group
            p = Permutation._raw(tuple(G.mul(g, a) for a in range(G.order)))
            self._cache[g] = p
        return p

    def __len__(self) -> int:
        return self.group.order

    def __iter__(self):
        return (self[g] for g in range(self.group.order))


def regular_permutations(G: FiniteGroup) -> list[Permutation]:
    """Left-multiplication permutations ``a -> g a`` for every element g."""
    n = G.order
    T = G.table() if n <= TABLE_CAP else None
    out = []
    for g in range(n):
        row = T[g] if T is not None else [G.mul(g, a) for a in range(n)]
        out.append(Permutation._raw(tuple(row)))
    return out


def element_order_counts(orders: Iterable[int]) -> dict[int, int]:
    counts: dict[int, int] = {}
    for o in orders:
        counts[o] = counts.get(o, 0) + 1
    return dict(sorted(counts.items()))


def is_power_of(n: int, p: int) -> bool:
    while n % p == 0 and n > 1:
        n //= p
    return n == 1


def lcm_all(xs: Iterable[int]) -> int:
    return math.lcm(*xs)


def subgroup_group(G: FiniteGroup, elements: Iterable[int], *, name: str = "") -> tuple[FiniteGroup, GroupHomomorphism]:
    """A subgroup given by its elements, as a group of its own with the inclusion.

    Elements are renumbered in increasing order, so the identity stays 0.
    """
    elems = sorted(set(elements))
    if not elems or elems[0] != 0:
        raise InvalidInput("subgroup must contain the identity")
    idx = {h: i for i, h in enumerate(elems)}
    try:
        table = [[idx[G.mul(a, b)] for b in elems] for a in elems]
    except KeyError:
        raise InvalidInput("elements are not closed under multiplication") from None
    H = FiniteGroup.from_table(table, name=name)
    return H, GroupHomomorphism(H, G, elems)


def find_subgroup_isomorphism(G: FiniteGroup, H: Iterable[int], C: FiniteGroup,
                              K: Iterable[int]) -> dict[int, int] | None:
    """Some isomorphism from the subgroup H of G onto the subgroup K of C, or None.

    Greedy generators of H are sent to same-order elements of K; the
    diagonal closure decides whether the assignment extends.
    """
    H, K = set(H), set(K)
    if len(H) != len(K):
        return None
    gens = G.find_generators(sorted(H))
    pools = [[y for y in sorted(K) if C.element_order(y) == G.element_order(g)] for g in gens]
    for imgs in itertools.product(*pools):
        fwd = {0: 0}
        queue = [(0, 0)]
        ok = True
        for x, y in queue:
            for g, im in zip(gens, imgs):
                nx, ny = G.mul(x, g), C.mul(y, im)
                if nx in fwd:
                    if fwd[nx] != ny:
                        ok = False
                        break
                else:
                    fwd[nx] = ny
                    queue.append((nx, ny))
            if not ok:
                break
        if ok and len(set(fwd.values())) == len(fwd) == len(H):
            return fwd
    return None
