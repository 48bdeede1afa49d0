"""Finite abelian groups as products of cyclic groups, and their automorphisms."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors as _snf_invariants
from sympy.ntheory import factorint

from ..errors import CapExceeded, InvalidInput
from .finite import FiniteGroup

Vec = tuple


def invariant_factors_of(cyclic_orders: Iterable[int]) -> list[int]:
    """Invariant factors ``d_1 | d_2 | ...`` of a product of cyclic groups."""
    by_prime: dict[int, list[int]] = {}
    for n in cyclic_orders:
        for p, e in factorint(n).items():
            by_prime.setdefault(p, []).append(p**e)
    if not by_prime:
        return []
    width = max(len(v) for v in by_prime.values())
    out = [1] * width
    for p, powers in by_prime.items():
        powers.sort()
        for i, q in enumerate(reversed(powers)):
            out[width - 1 - i] *= q
    return out


def invariants_from_order_counts(order_counts: dict[int, int]) -> list[int]:
    """Invariant factors of an abelian group from its element-order statistics.

    For each prime p, the number of elements whose order divides p^j is
    ``p^(sum_i min(j, a_i))``; successive differences of the exponents
    recover the p-primary partition.
    """
    n = sum(order_counts.values())
    primes = sorted(factorint(n)) if n > 1 else []
    cyclic: list[int] = []
    for p in primes:
        exps = []
        j = 0
        while True:
            c = sum(cnt for o, cnt in order_counts.items() if p**j % o == 0)
            e = round(math.log(c, p))
            if p**e != c:
                raise InvalidInput("order statistics are not those of an abelian group")
            exps.append(e)
            if j > 0 and exps[-1] == exps[-2]:
                break
            j += 1
        # exps[j] - exps[j-1] = number of cyclic p-factors of exponent >= j
        ge = [exps[j] - exps[j - 1] for j in range(1, len(exps))]
        for j in range(len(ge)):
            nxt = ge[j + 1] if j + 1 < len(ge) else 0
            cyclic += [p ** (j + 1)] * (ge[j] - nxt)
    return invariant_factors_of(cyclic)


class AbelianGroup:
    """``Z/f_1 x ... x Z/f_k`` with elements as residue tuples.

    ``factors`` are the cyclic orders as given (each at least 2); the
    canonical invariant-factor form is available as ``invariant_factors``.
    """

    def __init__(self, factors: Sequence[int]):
        factors = [int(f) for f in factors]
        if any(f < 2 for f in factors):
            raise InvalidInput(f"cyclic factors must be at least 2: {factors}")
        self.factors = factors
        self.invariant_factors = invariant_factors_of(factors)

    @classmethod
    def from_invariants(cls, invariants: Sequence[int]) -> "AbelianGroup":
        for a, b in zip(invariants, invariants[1:]):
            if b % a:
                raise InvalidInput(f"not a divisor chain: {list(invariants)}")
        return cls(invariants)

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    @property
    def exponent(self) -> int:
        return math.lcm(*self.factors) if self.factors else 1

    def zero(self) -> Vec:
        return (0,) * self.rank

    def basis(self) -> list[Vec]:
        return [tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)]

    def add(self, x: Vec, y: Vec) -> Vec:
        return tuple((a + b) % f for a, b, f in zip(x, y, self.factors))

    def neg(self, x: Vec) -> Vec:
        return tuple((-a) % f for a, f in zip(x, self.factors))

    def scale(self, k: int, x: Vec) -> Vec:
        return tuple((k * a) % f for a, f in zip(x, self.factors))

    def normalize(self, x: Iterable[int]) -> Vec:
        x = tuple(x)
        if len(x) != self.rank:
            raise InvalidInput(f"element {x} has the wrong length for rank {self.rank}")
        return tuple(a % f for a, f in zip(x, self.factors))

    def element_order(self, x: Vec) -> int:
        return math.lcm(*(f // math.gcd(a, f) for a, f in zip(x, self.factors))) if x else 1

    def elements(self) -> Iterable[Vec]:
        return itertools.product(*(range(f) for f in self.factors))

    def index(self, x: Vec) -> int:
        i = 0
        for a, f in zip(x, self.factors):
            i = i * f + a
        return i

    def element(self, i: int) -> Vec:
        out = []
        for f in reversed(self.factors):
            out.append(i % f)
            i //= f
        return tuple(reversed(out))

    def span(self, gens: Iterable[Vec]) -> set[Vec]:
        gens = [self.normalize(g) for g in gens]
        seen = {self.zero()}
        queue = [self.zero()]
        for x in queue:
            for g in gens:
                y = self.add(x, g)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen

    def order_counts(self, elements: Iterable[Vec] | None = None) -> dict[int, int]:
        counts: dict[int, int] = {}
        for x in (self.elements() if elements is None else elements):
            o = self.element_order(x)
            counts[o] = counts.get(o, 0) + 1
        return dict(sorted(counts.items()))

    def invariant_basis(self) -> list[Vec]:
        """Elements ``e_1..e_r`` of orders ``d_1 | ... | d_r`` forming a basis.

        Split each cyclic factor into prime-power pieces (by CRT), then
        sum, across primes, the pieces of matching rank from the top.
        """
        pieces: dict[int, list[tuple[int, Vec]]] = {}
        for i, f in enumerate(self.factors):
            for p, e in factorint(f).items():
                q = p**e
                v = [0] * self.rank
                v[i] = f // q
                pieces.setdefault(p, []).append((q, tuple(v)))
        r = len(self.invariant_factors)
        basis = [self.zero()] * r
        for p, items in pieces.items():
            items.sort(key=lambda t: t[0])
            for i, (_, v) in enumerate(reversed(items)):
                basis[r - 1 - i] = self.add(basis[r - 1 - i], v)
        return basis

    def to_finite_group(self, *, name: str = "") -> FiniteGroup:
        n = self.order
        if n > 10**4:
            raise CapExceeded(f"abelian group of order {n} exceeds cap")
        elems = [self.element(i) for i in range(n)]

        def mul(a: int, b: int) -> int:
            return self.index(self.add(elems[a], elems[b]))

        def inv(a: int) -> int:
            return self.index(self.neg(elems[a]))

        gens = [self.index(b) for b in self.basis()]
        label = name or "x".join(f"Z{f}" for f in self.factors) or "1"
        return FiniteGroup(n, mul, inv, gens, name=label, labels=elems)

    def to_json(self) -> dict:
        return {"invariant_factors": self.invariant_factors}

    def __repr__(self) -> str:
        return f"AbelianGroup({self.factors})"


@dataclass
class AbelianAutomorphism:
    """An endomorphism given by the images of the standard basis vectors."""

    group: AbelianGroup
    images: list[Vec]

    def __call__(self, x: Vec) -> Vec:
        G = self.group
        out = G.zero()
        for a, img in zip(x, self.images):
            out = G.add(out, G.scale(a, img))
        return out

    def is_well_defined(self) -> bool:
        G = self.group
        return all(f % G.element_order(img) == 0 for img, f in zip(self.images, G.factors))

    def is_automorphism(self) -> bool:
        if not self.is_well_defined():
            return False
        return len({self(x) for x in self.group.elements()}) == self.group.order

    def is_identity(self) -> bool:
        return all(img == b for img, b in zip(self.images, self.group.basis()))

    def compose(self, other: "AbelianAutomorphism") -> "AbelianAutomorphism":
        """``self`` after ``other``."""
        return AbelianAutomorphism(self.group, [self(img) for img in other.images])

    def order(self) -> int:
        k, cur = 1, self
        while not cur.is_identity():
            cur = self.compose(cur)
            k += 1
        return k


def scalar_automorphism(G: AbelianGroup, k: int) -> AbelianAutomorphism:
    return AbelianAutomorphism(G, [G.scale(k, b) for b in G.basis()])


@dataclass
class AbelianSubgroup:
    ambient: AbelianGroup
    generators: list[Vec]
    invariant_factors: list[int]

    def elements(self) -> set[Vec]:
        return self.ambient.span(self.generators)

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)


def quotient_invariants(B: AbelianGroup, A_gens: Sequence[Vec]) -> list[int]:
    """Invariant factors of ``B / <A_gens>`` via Smith normal form."""
    k = B.rank
    if k == 0:
        return []
    rows = [list(B.normalize(a)) for a in A_gens]
    rows += [[f if i == j else 0 for j in range(k)] for i, f in enumerate(B.factors)]
    M = Matrix(rows)
    diag = [abs(int(d)) for d in _snf_invariants(M, domain=ZZ)]
    return [d for d in diag if d > 1]


def abelian_quotient_subgroup(B: AbelianGroup, A_gens: Sequence[Vec]) -> AbelianSubgroup:
    """A subgroup ``B0 <= B`` isomorphic to ``B / <A_gens>``.

    With B written on an invariant basis ``e_1..e_r`` (orders ``d_i``) and
    the quotient invariants ``c_1 | ... | c_s``, the aligned elements
    ``(d_{r-j}/c_{s-j}) e_{r-j}`` are independent of orders ``c_{s-j}``.
    The divisibilities ``c_{s-j} | d_{r-j}`` hold for every quotient of B;
    they and the resulting order statistics are re-checked.
    """
    quot = quotient_invariants(B, A_gens)
    basis = B.invariant_basis()
    d = B.invariant_factors
    r, s = len(d), len(quot)
    gens = []
    for j in range(s):
        di, ci = d[r - 1 - j], quot[s - 1 - j]
        if di % ci:
            raise AssertionError(f"quotient invariant {ci} does not divide {di}")
        gens.append(B.scale(di // ci, basis[r - 1 - j]))
    gens.reverse()
    sub = AbelianSubgroup(B, gens, quot)
    elems = sub.elements()
    if len(elems) != math.prod(quot) or invariants_from_order_counts(B.order_counts(elems)) != quot:
        raise AssertionError("constructed subgroup does not match the quotient")
    return sub


def quotient_order_counts(B: AbelianGroup, A_gens: Sequence[Vec]) -> dict[int, int]:
    """Element-order statistics of ``B / <A_gens>``, by coset enumeration."""
    A = B.span(A_gens)
    seen: set[Vec] = set()
    counts: dict[int, int] = {}
    for x in B.elements():
        if x in seen:
            continue
        coset = {B.add(x, a) for a in A}
        seen |= coset
        k, y = 1, x
        while y not in A:
            y = B.add(y, x)
            k += 1
        counts[k] = counts.get(k, 0) + 1
    return dict(sorted(counts.items()))
