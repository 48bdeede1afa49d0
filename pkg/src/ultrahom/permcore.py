"""Permutations and permutation groups on the points ``0..degree-1``.

Composition is right-to-left: ``p * q`` (equivalently ``compose(p, q)``)
applies ``q`` first and then ``p``, so ``(p * q)(x) == p(q(x))``.  Conjugation
follows the exponent convention ``g^h = h^-1 g h``, which makes
``(g^h1)^h2 == g^(h1 h2)``.  This is the only composition order under which
the n-cycle identity ``(1..n)(n,n+1,n-1,..,2) = (1,2)(n,n+1)`` holds; see
``theoremlab.ncycle_identity_check``.

Groups carry a lazily built stabilizer chain (base and strong generating
set, computed by a deterministic Schreier-Sims).  Full symmetric groups are
flagged and handled symbolically, so ``Sym(720)`` never materializes a chain.
"""

from __future__ import annotations

import math
from functools import reduce
from typing import Iterable, Iterator, Sequence

from .errors import CapExceeded, DegreeMismatch, InvalidInput, NotInGroup

DEFAULT_ENUM_CAP = 10**5


# raw tuple helpers, used in the hot loops


def _mul(p: tuple, q: tuple) -> tuple:
    return tuple(map(p.__getitem__, q))


def _inv(p: tuple) -> tuple:
    r = [0] * len(p)
    for i, x in enumerate(p):
        r[x] = i
    return tuple(r)


def _is_id(p: tuple) -> bool:
    return all(i == x for i, x in enumerate(p))


def _first_moved(p: tuple) -> int:
    for i, x in enumerate(p):
        if i != x:
            return i
    return -1


class Permutation:
    """An immutable bijection of ``range(degree)``."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(int(x) for x in images)
        if not images:
            raise InvalidInput("degree must be positive")
        if sorted(images) != list(range(len(images))):
            raise InvalidInput(f"not a permutation: {images!r}")
        self.images = images
        self._hash = None

    @classmethod
    def _raw(cls, images: tuple) -> "Permutation":
        p = object.__new__(cls)
        p.images = images
        p._hash = None
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._raw(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int], one_based: bool = False) -> "Permutation":
        """Build from disjoint cycles, e.g. ``from_cycles(4, (0, 1), (2, 3))``."""
        img = list(range(degree))
        seen = set()
        for c in cycles:
            c = [x - 1 for x in c] if one_based else list(c)
            if seen.intersection(c) or len(set(c)) != len(c):
                raise InvalidInput(f"cycles are not disjoint: {cycles!r}")
            seen.update(c)
            for i, x in enumerate(c):
                if not 0 <= x < degree:
                    raise InvalidInput(f"point {x} outside degree {degree}")
                img[x] = c[(i + 1) % len(c)]
        return cls._raw(tuple(img))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __invert__(self) -> "Permutation":
        return Permutation._raw(_inv(self.images))

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return (~self) ** (-k)
        result = tuple(range(self.degree))
        base = self.images
        while k:
            if k & 1:
                result = _mul(result, base)
            base = _mul(base, base)
            k >>= 1
        return Permutation._raw(result)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.images)
        return self._hash

    def conj(self, h: "Permutation") -> "Permutation":
        """``self^h = h^-1 * self * h``."""
        return conjugate(self, h)

    def is_identity(self) -> bool:
        return _is_id(self.images)

    def support(self) -> list[int]:
        return [i for i, x in enumerate(self.images) if i != x]

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = [False] * self.degree
        out = []
        for i in range(self.degree):
            if seen[i]:
                continue
            c = [i]
            seen[i] = True
            j = self.images[i]
            while j != i:
                seen[j] = True
                c.append(j)
                j = self.images[j]
            if len(c) > 1 or include_fixed:
                out.append(tuple(c))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        """Sorted cycle lengths, fixed points included."""
        return tuple(sorted(len(c) for c in self.cycles(include_fixed=True)))

    def order(self) -> int:
        return element_order(self)

    def to_json(self) -> list[int]:
        return list(self.images)

    def __repr__(self) -> str:
        cs = self.cycles()
        body = "".join("(" + " ".join(map(str, c)) + ")" for c in cs) or "()"
        return f"Permutation{body}[{self.degree}]"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply ``q``, then ``p``."""
    if p.degree != q.degree:
        raise DegreeMismatch(f"degrees differ: {p.degree} vs {q.degree}")
    return Permutation._raw(_mul(p.images, q.images))


def inverse(p: Permutation) -> Permutation:
    return ~p


def conjugate(g: Permutation, h: Permutation) -> Permutation:
    """``g^h = h^-1 g h``."""
    if g.degree != h.degree:
        raise DegreeMismatch(f"degrees differ: {g.degree} vs {h.degree}")
    return Permutation._raw(_mul(_inv(h.images), _mul(g.images, h.images)))


def commutes(a: Permutation, b: Permutation) -> bool:
    return _mul(a.images, b.images) == _mul(b.images, a.images)


def element_order(p: Permutation) -> int:
    """Least k >= 1 with p^k = 1, i.e. the lcm of the cycle lengths."""
    return reduce(math.lcm, (len(c) for c in p.cycles()), 1)


def product(perms: Sequence[Permutation], degree: int | None = None) -> Permutation:
    """Left-to-right group product ``perms[0] * perms[1] * ...``."""
    if not perms:
        if degree is None:
            raise InvalidInput("empty product needs a degree")
        return Permutation.identity(degree)
    return reduce(compose, perms)


# ---------------------------------------------------------------------------
# stabilizer chains


class _Level:
    __slots__ = ("point", "gens", "trans", "dirty")

    def __init__(self, point: int):
        self.point = point
        self.gens: list[tuple] = []
        self.trans: dict[int, tuple[tuple, tuple]] = {}
        self.dirty = True

    def rebuild(self, n: int) -> None:
        ident = tuple(range(n))
        trans = {self.point: (ident, ident)}
        queue = [self.point]
        for gamma in queue:
            u = trans[gamma][0]
            for s in self.gens:
                d = s[gamma]
                if d not in trans:
                    v = _mul(s, u)
                    trans[d] = (v, _inv(v))
                    queue.append(d)
        self.trans = trans
        self.dirty = False


class StabilizerChain:
    """Base, strong generators and basic transversals of a permutation group."""

    def __init__(self, degree: int, levels: list[_Level]):
        self.degree = degree
        self.levels = levels

    @property
    def base(self) -> list[int]:
        return [lv.point for lv in self.levels]

    @property
    def strong_generators(self) -> list[tuple]:
        if not self.levels:
            return []
        return list(self.levels[0].gens)

    def order(self) -> int:
        return math.prod(len(lv.trans) for lv in self.levels)

    def sift(self, g: tuple, start: int = 0) -> tuple[tuple, int]:
        for j in range(start, len(self.levels)):
            lv = self.levels[j]
            t = lv.trans.get(g[lv.point])
            if t is None:
                return g, j
            g = _mul(t[1], g)
        return g, len(self.levels)

    def contains(self, g: tuple) -> bool:
        h, _ = self.sift(g)
        return _is_id(h)

    def elements(self) -> Iterator[tuple]:
        n = self.degree
        if not self.levels:
            yield tuple(range(n))
            return

        def rec(j: int, acc: tuple):
            if j == len(self.levels):
                yield acc
                return
            for u, _ in self.levels[j].trans.values():
                yield from rec(j + 1, _mul(acc, u))

        yield from rec(0, tuple(range(n)))

    @classmethod
    def build(cls, degree: int, generators: Sequence[tuple]) -> "StabilizerChain":
        """Deterministic Schreier-Sims; base points are smallest moved points."""
        gens = []
        for g in generators:
            if not _is_id(g) and g not in gens:
                gens.append(g)
        levels: list[_Level] = []
        for g in gens:
            if all(g[lv.point] == lv.point for lv in levels):
                levels.append(_Level(_first_moved(g)))
        for g in gens:
            for lv in levels:
                lv.gens.append(g)
                if g[lv.point] != lv.point:
                    break
        chain = cls(degree, levels)

        def ensure(j: int) -> None:
            if levels[j].dirty:
                levels[j].rebuild(degree)

        i = len(levels) - 1
        while i >= 0:
            ensure(i)
            for k in range(i + 1, len(levels)):
                ensure(k)
            lv = levels[i]
            restart = None
            for gamma, (u, _) in list(lv.trans.items()):
                for s in lv.gens:
                    v_inv = lv.trans[s[gamma]][1]
                    h = _mul(v_inv, _mul(s, u))
                    if _is_id(h):
                        continue
                    res, j = chain.sift(h, i + 1)
                    if _is_id(res):
                        continue
                    if j == len(levels):
                        levels.append(_Level(_first_moved(res)))
                    for k in range(i + 1, j + 1):
                        levels[k].gens.append(res)
                        levels[k].dirty = True
                    restart = j
                    break
                if restart is not None:
                    break
            if restart is None:
                i -= 1
            else:
                for k in range(i + 1, restart + 1):
                    ensure(k)
                i = restart
        for lv in levels:
            if lv.dirty:
                lv.rebuild(degree)
        return chain

    @classmethod
    def symmetric(cls, degree: int) -> "StabilizerChain":
        """Closed-form chain of Sym(degree): base 0..n-2, transposition cosets."""
        levels = []
        ident = tuple(range(degree))
        adj = []
        for j in range(degree - 1):
            t = list(ident)
            t[j], t[j + 1] = j + 1, j
            adj.append(tuple(t))
        for i in range(degree - 1):
            lv = _Level(i)
            lv.gens = adj[i:]
            trans = {i: (ident, ident)}
            for g in range(i + 1, degree):
                t = list(ident)
                t[i], t[g] = g, i
                t = tuple(t)
                trans[g] = (t, t)
            lv.trans = trans
            lv.dirty = False
            levels.append(lv)
        return cls(degree, levels)


class PermGroup:
    """A permutation group given by generators.

    The stabilizer chain is computed on first use and cached; the group is
    otherwise immutable.  ``symmetric=True`` marks the full symmetric group
    of the degree, which makes membership trivial and the order ``degree!``
    without building a chain.
    """

    def __init__(self, generators: Sequence[Permutation], degree: int | None = None,
                 *, symmetric: bool = False, name: str = ""):
        generators = list(generators)
        if degree is None:
            if not generators:
                raise InvalidInput("need a degree or at least one generator")
            degree = generators[0].degree
        for g in generators:
            if g.degree != degree:
                raise DegreeMismatch(f"generator of degree {g.degree} in a degree-{degree} group")
        if not generators:
            generators = [Permutation.identity(degree)]
        self.degree = degree
        self.generators = tuple(generators)
        self.is_symmetric = symmetric
        self.name = name
        self._chain: StabilizerChain | None = None

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            if self.is_symmetric:
                self._chain = StabilizerChain.symmetric(self.degree)
            else:
                self._chain = StabilizerChain.build(self.degree, [g.images for g in self.generators])
        return self._chain

    @property
    def base(self) -> list[int]:
        return self.chain.base

    @property
    def strong_generators(self) -> list[Permutation]:
        return [Permutation._raw(s) for s in self.chain.strong_generators]

    def order(self) -> int:
        if self.is_symmetric:
            return math.factorial(self.degree)
        return self.chain.order()

    def __contains__(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            return False
        if self.is_symmetric:
            return True
        return self.chain.contains(g.images)

    def elements(self) -> Iterator[Permutation]:
        for e in self.chain.elements():
            yield Permutation._raw(e)

    def element_list(self, cap: int = DEFAULT_ENUM_CAP) -> list[Permutation]:
        if self.order() > cap:
            raise CapExceeded(f"group of order {self.order()} exceeds enumeration cap {cap}")
        return list(self.elements())

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def is_abelian(self) -> bool:
        gs = self.generators
        return all(commutes(a, b) for i, a in enumerate(gs) for b in gs[i + 1:])

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(g in other for g in self.generators)

    def same_group(self, other: "PermGroup") -> bool:
        return (self.degree == other.degree and self.order() == other.order()
                and self.is_subgroup_of(other))

    def to_json(self) -> dict:
        return {"degree": self.degree, "generators": [g.to_json() for g in self.generators]}

    @classmethod
    def from_json(cls, data: dict) -> "PermGroup":
        gens = [Permutation(g) for g in data["generators"]]
        return cls(gens, degree=int(data["degree"]), symmetric=bool(data.get("symmetric", False)))

    def __repr__(self) -> str:
        label = self.name or ("Sym" if self.is_symmetric else "PermGroup")
        return f"<{label} degree={self.degree} ngens={len(self.generators)}>"


def build_stabilizer_chain(generators: Sequence[Permutation]) -> PermGroup:
    """Group generated by ``generators`` with its chain already computed."""
    if not generators:
        raise InvalidInput("need at least one generator")
    G = PermGroup(generators)
    G.chain
    return G


def symmetric_group(n: int) -> PermGroup:
    gens = [Permutation.from_cycles(n, tuple(range(n)))]
    if n > 2:
        gens.append(Permutation.from_cycles(n, (0, 1)))
    return PermGroup(gens, degree=n, symmetric=True, name=f"Sym({n})")


def alternating_group(n: int) -> PermGroup:
    if n < 3:
        return PermGroup([], degree=n, name=f"Alt({n})")
    gens = [Permutation.from_cycles(n, (i, i + 1, i + 2)) for i in range(n - 2)]
    return PermGroup(gens, name=f"Alt({n})")


def cyclic_group(n: int) -> PermGroup:
    return PermGroup([Permutation.from_cycles(n, tuple(range(n)))], degree=n, name=f"C{n}")


def dihedral_group(n: int) -> PermGroup:
    """Symmetries of the n-gon, order 2n, for n >= 3."""
    rot = Permutation.from_cycles(n, tuple(range(n)))
    refl = Permutation._raw(tuple((-i) % n for i in range(n)))
    return PermGroup([rot, refl], name=f"D{2 * n}")


def direct_product_perm(G: PermGroup, H: PermGroup) -> PermGroup:
    """G x H acting on the disjoint union of their point sets."""
    n, m = G.degree, H.degree
    gens = [Permutation._raw(g.images + tuple(range(n, n + m))) for g in G.generators]
    gens += [Permutation._raw(tuple(range(n)) + tuple(x + n for x in h.images)) for h in H.generators]
    return PermGroup(gens, degree=n + m)


# ---------------------------------------------------------------------------
# centralizers, normalizers, conjugacy


def _require_members(G: PermGroup, S: Sequence[Permutation]) -> None:
    for s in S:
        if s not in G:
            raise NotInGroup(f"{s!r} is not in the ambient group")


def _small_generating_set(elements: Sequence[Permutation], degree: int) -> list[Permutation]:
    gens: list[Permutation] = []
    current: PermGroup | None = None
    for g in elements:
        if g.is_identity():
            continue
        if current is None or g not in current:
            gens.append(g)
            current = PermGroup(gens, degree=degree)
    return gens


def _propagate(pmap: dict, imap: dict, x: int, y: int, S: Sequence[tuple]) -> bool:
    stack = [(x, y)]
    while stack:
        x, y = stack.pop()
        known = pmap.get(x)
        if known is not None:
            if known != y:
                return False
            continue
        if y in imap:
            return False
        pmap[x] = y
        imap[y] = x
        for s in S:
            stack.append((s[x], s[y]))
    return True


def _centralizer_backtrack(G: PermGroup, S: Sequence[tuple]) -> PermGroup:
    n = G.degree
    chain = G.chain
    levels = chain.levels
    k = len(levels)
    found: list[tuple] = []

    def commutes_all(h: tuple) -> bool:
        return all(_mul(h, s) == _mul(s, h) for s in S)

    def dfs(j: int, h: tuple, pmap: dict, imap: dict):
        if j == k:
            return h if commutes_all(h) else None
        lv = levels[j]
        beta = lv.point
        h_inv = _inv(h)
        forced = pmap.get(beta)
        if forced is not None:
            delta = h_inv[forced]
            if delta not in lv.trans:
                return None
            return dfs(j + 1, _mul(h, lv.trans[delta][0]), pmap, imap)
        for delta, (u, _) in lv.trans.items():
            y = h[delta]
            pm, im = dict(pmap), dict(imap)
            if not _propagate(pm, im, beta, y, S):
                continue
            r = dfs(j + 1, _mul(h, u), pm, im)
            if r is not None:
                return r
        return None

    for l in reversed(range(k)):
        lv = levels[l]
        beta = lv.point
        base_map: dict = {}
        base_inv: dict = {}
        ok = True
        for i in range(l):
            p = levels[i].point
            ok = ok and _propagate(base_map, base_inv, p, p, S)
        if not ok:
            continue
        orbit = _orbit(beta, found)
        for gamma, (u, _) in lv.trans.items():
            if gamma in orbit:
                continue
            pm, im = dict(base_map), dict(base_inv)
            if not _propagate(pm, im, beta, gamma, S):
                continue
            g = dfs(l + 1, u, pm, im)
            if g is not None:
                found.append(g)
                orbit = _orbit(beta, found)
    gens = [Permutation._raw(g) for g in found]
    return PermGroup(gens, degree=n)


def _orbit(x: int, gens: Sequence[tuple]) -> set[int]:
    orb = {x}
    queue = [x]
    for y in queue:
        for g in gens:
            z = g[y]
            if z not in orb:
                orb.add(z)
                queue.append(z)
    return orb


def centralizer(G: PermGroup, S: Sequence[Permutation], *, method: str = "backtrack",
                enum_cap: int = DEFAULT_ENUM_CAP) -> PermGroup:
    """``{g in G : gs = sg for all s in S}``.

    ``method='backtrack'`` searches the stabilizer chain, propagating the
    constraint ``g(s(x)) = s(g(x))`` along orbits of ``S``; ``'enumerate'``
    filters every element of ``G`` and is kept as the cross-check oracle.
    """
    S = list(S)
    for s in S:
        if s.degree != G.degree:
            raise DegreeMismatch("element degree differs from group degree")
    _require_members(G, S)
    raw = [s.images for s in S if not s.is_identity()]
    if not raw:
        return G
    if method == "enumerate":
        elems = [g for g in G.element_list(enum_cap) if all(commutes(g, s) for s in S)]
        return PermGroup(_small_generating_set(elems, G.degree), degree=G.degree)
    if method != "backtrack":
        raise InvalidInput(f"unknown centralizer method {method!r}")
    return _centralizer_backtrack(G, raw)


def double_centralizer(G: PermGroup, S: Sequence[Permutation], **kw) -> PermGroup:
    C = centralizer(G, S, **kw)
    return centralizer(G, list(C.generators), **kw)


def normalizer(G: PermGroup, H: PermGroup, *, enum_cap: int = DEFAULT_ENUM_CAP) -> PermGroup:
    """``{g in G : H^g = H}`` by enumeration of G."""
    if G.order() > enum_cap:
        raise CapExceeded(f"normalizer needs |G| <= {enum_cap}, got {G.order()}")
    hg = [h for h in H.generators if not h.is_identity()]
    elems = [g for g in G.elements() if all(conjugate(h, g) in H for h in hg)]
    return PermGroup(_small_generating_set(elems, G.degree), degree=G.degree)


def cycle_matching_witness(a: Permutation, b: Permutation) -> Permutation | None:
    """A permutation w with ``a^w == b`` in the full symmetric group, if any."""
    if a.degree != b.degree:
        raise DegreeMismatch("degrees differ")
    if a.cycle_type() != b.cycle_type():
        return None
    key = lambda c: (len(c), c[0])
    ca = sorted(a.cycles(include_fixed=True), key=key)
    cb = sorted(b.cycles(include_fixed=True), key=key)
    w = [0] * a.degree
    # a w = w b: w sends each b-cycle onto an a-cycle of the same length
    for x, y in zip(cb, ca):
        for xi, yi in zip(x, y):
            w[xi] = yi
    return Permutation._raw(tuple(w))


def conjugacy_witness(G: PermGroup, a: Permutation, b: Permutation, *,
                      enum_cap: int = DEFAULT_ENUM_CAP) -> Permutation | None:
    """Some g in G with ``a^g == b``, or None.

    Full symmetric groups use cycle matching; otherwise the lexicographically
    least witness (by image array) among all elements of G is returned.
    """
    _require_members(G, [a, b])
    if a.cycle_type() != b.cycle_type():
        return None
    if a == b:
        return G.identity()
    if G.is_symmetric:
        return cycle_matching_witness(a, b)
    if G.order() > enum_cap:
        raise CapExceeded(f"conjugacy search needs |G| <= {enum_cap}, got {G.order()}")
    best = None
    ai, bi = a.images, b.images
    for g in G.chain.elements():
        # a^g = b  <=>  a g = g b
        if _mul(ai, g) == _mul(g, bi) and (best is None or g < best):
            best = g
    return None if best is None else Permutation._raw(best)
