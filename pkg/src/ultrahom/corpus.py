"""A corpus of small groups used by the verifier suites and tests.

``small_groups(max_order)`` returns every group of order at most 24 up to
isomorphism (74 groups), built from cyclic groups, dicyclic groups,
semidirect and direct products.  ``perm_groups(max_order)`` returns
permutation groups up to order 5000 for cross-checking stabilizer-chain
algorithms against enumeration.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Sequence

from sympy.ntheory import factorint
from sympy.utilities.iterables import partitions

from .errors import InvalidInput
from .groupalg.abelian import AbelianGroup
from .groupalg.finite import FiniteGroup, direct_product, hom_from_generators, regular_permutations, trivial_group
from .permcore import (
    Permutation,
    PermGroup,
    alternating_group,
    cyclic_group,
    dihedral_group,
    direct_product_perm,
    symmetric_group,
)


def cyclic(n: int) -> FiniteGroup:
    if n == 1:
        return trivial_group()
    return AbelianGroup([n]).to_finite_group(name=f"Z{n}")


def abelian(*factors: int) -> FiniteGroup:
    return AbelianGroup(list(factors)).to_finite_group()


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n (n >= 2; n = 2 gives the Klein group)."""
    if n == 2:
        return abelian(2, 2)
    return FiniteGroup.from_perm_group(dihedral_group(n), name=f"D{2 * n}")


def dicyclic(n: int) -> FiniteGroup:
    """``<a, x | a^2n = 1, x^2 = a^n, x^-1 a x = a^-1>`` of order 4n."""
    m = 2 * n

    def mul(p: int, q: int) -> int:
        k1, j1 = divmod(p, 2)
        k2, j2 = divmod(q, 2)
        if not j1:
            return ((k1 + k2) % m) * 2 + j2
        if j2:
            return ((k1 - k2 + n) % m) * 2
        return ((k1 - k2) % m) * 2 + 1

    def inv(p: int) -> int:
        k, j = divmod(p, 2)
        return ((-k) % m) * 2 if not j else ((k + n) % m) * 2 + 1

    name = {2: "Q8", 4: "Q16"}.get(n, f"Dic{n}")
    return FiniteGroup(4 * n, mul, inv, [2, 1], name=name)


def semidirect_product(N: FiniteGroup, H: FiniteGroup, action: dict[int, Sequence[int]],
                       *, name: str = "") -> FiniteGroup:
    """``N x| H`` where ``action[h]`` (h a generator of H) lists the images of N's indices.

    Product: ``(n1, h1)(n2, h2) = (n1 * phi_h1(n2), h1 h2)``; index ``n*|H| + h``.
    """
    # extend the generator actions to a homomorphism H -> Aut(N)
    phi = {0: list(range(N.order))}
    queue = [0]
    for h in queue:
        for s, act in action.items():
            t = H.mul(h, s)
            img = [phi[h][act[x]] for x in range(N.order)]
            if t in phi:
                if phi[t] != img:
                    raise InvalidInput("action does not define a homomorphism into Aut(N)")
            else:
                phi[t] = img
                queue.append(t)
    if len(phi) != H.order:
        raise InvalidInput("action generators do not generate H")
    for act in action.values():
        if sorted(act) != list(range(N.order)):
            raise InvalidInput("action is not a bijection of N")
        if any(act[N.mul(a, b)] != N.mul(act[a], act[b]) for a in range(N.order) for b in N.generators):
            raise InvalidInput("action is not an automorphism of N")
    hn = H.order

    def mul(p: int, q: int) -> int:
        n1, h1 = divmod(p, hn)
        n2, h2 = divmod(q, hn)
        return N.mul(n1, phi[h1][n2]) * hn + H.mul(h1, h2)

    inv_cache: dict[int, int] = {}

    def inv(p: int) -> int:
        if p not in inv_cache:
            n1, h1 = divmod(p, hn)
            hi = H.inv(h1)
            inv_cache[p] = phi[hi][N.inv(n1)] * hn + hi
        return inv_cache[p]

    gens = [g * hn for g in N.generators] + list(H.generators)
    return FiniteGroup(N.order * hn, mul, inv, gens, name=name)


def _scalar_action(N: FiniteGroup, r: int) -> list[int]:
    """Images of ``x -> x^r`` on a cyclic group given as Z/n residues."""
    return [N.power(x, r) for x in range(N.order)]


def cyclic_semidirect(n: int, m: int, r: int, *, name: str = "") -> FiniteGroup:
    """``Z/n x| Z/m`` with the generator of Z/m acting as ``x -> r x``."""
    if pow(r, m, n) != 1 % n:
        raise InvalidInput(f"{r} has order not dividing {m} mod {n}")
    N, H = cyclic(n), cyclic(m)
    return semidirect_product(N, H, {H.generators[0]: _scalar_action(N, r)}, name=name)


def product(G: FiniteGroup, H: FiniteGroup, name: str = "") -> FiniteGroup:
    P, _, _ = direct_product(G, H)
    if name:
        P.name = name
    return P


def _auto_from_gens(G: FiniteGroup, images: dict[int, int]) -> list[int]:
    return hom_from_generators(G, G, images).images


def _gen_16_3() -> FiniteGroup:
    # (Z4 x Z2) x| Z2 with c: a -> ab, b -> b
    N = abelian(4, 2)
    a, b = N.generators
    act = _auto_from_gens(N, {a: N.mul(a, b), b: b})
    H = cyclic(2)
    return semidirect_product(N, H, {H.generators[0]: act}, name="(Z4xZ2):Z2")


def _pauli() -> FiniteGroup:
    # (Z4 x Z2) x| Z2 with c: a -> a, b -> a^2 b; central Z4, exponent 4
    N = abelian(4, 2)
    a, b = N.generators
    act = _auto_from_gens(N, {a: a, b: N.mul(N.power(a, 2), b)})
    H = cyclic(2)
    return semidirect_product(N, H, {H.generators[0]: act}, name="Pauli")


def _sl23() -> FiniteGroup:
    Q = dicyclic(2)
    a, x = Q.generators
    act = _auto_from_gens(Q, {a: x, x: Q.mul(a, x)})
    H = cyclic(3)
    return semidirect_product(Q, H, {H.generators[0]: act}, name="SL(2,3)")


def _z3_by_group(H: FiniteGroup, inverting: Sequence[bool], name: str) -> FiniteGroup:
    """Z3 x| H where the i-th generator of H inverts Z3 iff ``inverting[i]``."""
    N = cyclic(3)
    inv = _scalar_action(N, 2)
    ident = list(range(3))
    act = {g: (inv if flag else ident) for g, flag in zip(H.generators, inverting)}
    return semidirect_product(N, H, act, name=name)


def _perm(perm_group: PermGroup, name: str) -> FiniteGroup:
    return FiniteGroup.from_perm_group(perm_group, name=name)


def _abelian_entries() -> list[tuple[str, Callable[[], FiniteGroup]]]:
    out = []
    for n in range(1, 25):
        invs = _abelian_types(n)
        for t in invs:
            label = "x".join(f"Z{d}" for d in t) or "1"
            out.append((label, (lambda t=t: abelian(*t) if t else trivial_group())))
    return out


def _abelian_types(n: int) -> list[list[int]]:
    """Invariant-factor lists of all abelian groups of order n."""
    per_prime = []
    for p, e in sorted(factorint(n).items()):
        opts = []
        for part in partitions(e):
            exps = sorted(k for k, c in part.items() for _ in range(c))
            opts.append([p**x for x in exps])
        per_prime.append(opts)
    results: list[list[int]] = [[]]
    for opts in per_prime:
        new = []
        for r in results:
            for o in opts:
                new.append(_merge_invariants(r, o))
        results = new
    return sorted(results)


def _merge_invariants(a: list[int], b: list[int]) -> list[int]:
    w = max(len(a), len(b))
    a = [1] * (w - len(a)) + a
    b = [1] * (w - len(b)) + b
    return [x * y for x, y in zip(a, b)]


def _nonabelian_entries() -> list[tuple[str, Callable[[], FiniteGroup]]]:
    S3 = lambda: _perm(symmetric_group(3), "S3")
    D4 = lambda: dihedral(4)
    Q8 = lambda: dicyclic(2)
    A4 = lambda: _perm(alternating_group(4), "A4")
    return [
        ("S3", S3),
        ("D8", D4),
        ("Q8", Q8),
        ("D10", lambda: dihedral(5)),
        ("D12", lambda: dihedral(6)),
        ("A4", A4),
        ("Dic3", lambda: dicyclic(3)),
        ("D14", lambda: dihedral(7)),
        ("D16", lambda: dihedral(8)),
        ("Q16", lambda: dicyclic(4)),
        ("SD16", lambda: cyclic_semidirect(8, 2, 3, name="SD16")),
        ("M16", lambda: cyclic_semidirect(8, 2, 5, name="M16")),
        ("D8xZ2", lambda: product(D4(), cyclic(2), "D8xZ2")),
        ("Q8xZ2", lambda: product(Q8(), cyclic(2), "Q8xZ2")),
        ("Pauli", _pauli),
        ("Z4:Z4", lambda: cyclic_semidirect(4, 4, 3, name="Z4:Z4")),
        ("(Z4xZ2):Z2", _gen_16_3),
        ("D18", lambda: dihedral(9)),
        ("S3xZ3", lambda: product(S3(), cyclic(3), "S3xZ3")),
        ("(Z3xZ3):Z2", lambda: semidirect_product(
            abelian(3, 3), cyclic(2), {1: [abelian(3, 3).inv(x) for x in range(9)]}, name="(Z3xZ3):Z2")),
        ("D20", lambda: dihedral(10)),
        ("Dic5", lambda: dicyclic(5)),
        ("F20", lambda: cyclic_semidirect(5, 4, 2, name="F20")),
        ("Z7:Z3", lambda: cyclic_semidirect(7, 3, 2, name="Z7:Z3")),
        ("D22", lambda: dihedral(11)),
        ("Z3:Z8", lambda: cyclic_semidirect(3, 8, 2, name="Z3:Z8")),
        ("SL(2,3)", _sl23),
        ("Dic6", lambda: dicyclic(6)),
        ("S3xZ4", lambda: product(S3(), cyclic(4), "S3xZ4")),
        ("D24", lambda: dihedral(12)),
        ("Dic3xZ2", lambda: product(dicyclic(3), cyclic(2), "Dic3xZ2")),
        ("Z3:D8", lambda: _z3_by_group(D4(), [True, False], "Z3:D8")),
        ("D8xZ3", lambda: product(D4(), cyclic(3), "D8xZ3")),
        ("Q8xZ3", lambda: product(Q8(), cyclic(3), "Q8xZ3")),
        ("S4", lambda: _perm(symmetric_group(4), "S4")),
        ("A4xZ2", lambda: product(A4(), cyclic(2), "A4xZ2")),
        ("S3xZ2xZ2", lambda: product(S3(), abelian(2, 2), "S3xZ2xZ2")),
    ]


@lru_cache(maxsize=None)
def _all_small() -> tuple[FiniteGroup, ...]:
    out = []
    for name, make in _abelian_entries() + _nonabelian_entries():
        G = make()
        G.name = name
        out.append(G)
    out.sort(key=lambda G: G.order)
    return tuple(out)


def small_groups(max_order: int = 24) -> list[FiniteGroup]:
    """Every group of order <= max_order (at most 24), one per isomorphism type."""
    if max_order > 24:
        raise InvalidInput("the small-group corpus stops at order 24")
    return [G for G in _all_small() if G.order <= max_order]


def fingerprint(G: FiniteGroup) -> tuple:
    """Isomorphism invariants used to check that corpus entries are distinct."""
    orders = sorted(G.element_order(x) for x in range(G.order))
    center = G.center()
    commutators = {G.mul(G.mul(G.inv(a), G.inv(b)), G.mul(a, b)) for a in range(G.order) for b in range(G.order)}
    derived = len(G.closure(commutators))
    squares = len({G.mul(x, x) for x in range(G.order)})
    sub_orders = sorted(len(H) for H in G.subgroups())
    center_orders = sorted(G.element_order(z) for z in center)
    return (G.order, tuple(orders), len(center), tuple(center_orders), derived, squares, tuple(sub_orders))


def perm_groups(max_order: int = 5000) -> list[PermGroup]:
    """Permutation groups for cross-checks, all of order <= max_order."""
    P = Permutation.from_cycles
    groups: list[PermGroup] = []
    for n in range(2, 8):
        groups.append(symmetric_group(n))
        groups.append(alternating_group(n))
        groups.append(cyclic_group(n))
    for n in range(3, 13):
        groups.append(dihedral_group(n))
    for A, B in [(symmetric_group(3), symmetric_group(3)), (symmetric_group(4), symmetric_group(3)),
                 (dihedral_group(4), cyclic_group(3)), (alternating_group(5), cyclic_group(2))]:
        AB = direct_product_perm(A, B)
        AB.name = f"{A.name}x{B.name}"
        groups.append(AB)
    # wreath products in imprimitive actions
    groups.append(PermGroup([P(4, (0, 1)), P(4, (0, 2), (1, 3))], name="Z2wrZ2"))
    groups.append(PermGroup([P(6, (0, 1)), P(6, (0, 2, 4), (1, 3, 5)), P(6, (0, 2), (1, 3))], name="Z2wrS3"))
    groups.append(PermGroup([P(6, (0, 1, 2)), P(6, (0, 1)), P(6, (0, 3), (1, 4), (2, 5))], name="S3wrZ2"))
    groups.append(PermGroup([P(9, (0, 1, 2)), P(9, (0, 3, 6), (1, 4, 7), (2, 5, 8))], name="Z3wrZ3"))
    groups.append(PermGroup([P(8, (0, 1, 2, 3)), P(8, (0, 1)), P(8, (0, 4), (1, 5), (2, 6), (3, 7))], name="S4wrZ2"))
    # affine and projective groups
    groups.append(PermGroup([P(7, tuple(range(7))), Permutation([(3 * x) % 7 for x in range(7)])], name="AGL(1,7)"))
    groups.append(PermGroup([P(7, (0, 1, 2, 3, 4, 5, 6)), P(7, (1, 3), (4, 5))], name="PSL(3,2)"))
    groups.append(PermGroup([P(8, (0, 1, 2, 3, 4, 5, 6)), P(8, (1, 2, 4), (3, 6, 5)),
                             P(8, (0, 7), (1, 6), (2, 3), (4, 5))], name="PSL(2,7) on 8 points"))
    # regular representations of the nonabelian small groups
    for G in small_groups(24):
        if not G.is_abelian():
            groups.append(PermGroup([regular_permutations(G)[g] for g in G.generators], name=f"reg({G.name})"))
    return [G for G in groups if G.order() <= max_order]
