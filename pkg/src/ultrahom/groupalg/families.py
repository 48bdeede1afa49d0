"""Explicit automorphism families of abelian groups, each with built-in checks."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field

from sympy.ntheory import factorint

from ..errors import CapExceeded, InvalidInput
from ..permcore import Permutation, PermGroup, commutes
from .abelian import AbelianAutomorphism, AbelianGroup, invariants_from_order_counts, scalar_automorphism


@dataclass
class FamilyCheck:
    """Outcome of a family construction: named boolean checks plus data."""

    name: str
    params: dict
    checks: dict[str, bool] = field(default_factory=dict)
    data: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def failed(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]


# (Z/2)^n: vectors are bitmasks; linear maps are lists of column images.


def _apply(cols: list[int], v: int) -> int:
    out = 0
    i = 0
    while v:
        if v & 1:
            out ^= cols[i]
        v >>= 1
        i += 1
    return out


def _compose(f: list[int], g: list[int]) -> list[int]:
    """Linear map f after g."""
    return [_apply(f, c) for c in g]


def _rank_gf2(rows: list[int]) -> int:
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
    return len(basis)


def sigma_f_columns(n: int, f: list[list[int]]) -> list[int]:
    """Columns of ``(v1, w, v2) -> (v1 + f v2, w, v2)`` on (Z/2)^n.

    Bits ``0..m-1`` hold v1, the middle ``n - 2m`` bits hold w, the top m
    bits hold v2; ``f[i][j]`` is the entry in row i, column j.
    """
    m = n // 2
    cols = [1 << i for i in range(n)]
    for j in range(m):
        extra = 0
        for i in range(m):
            if f[i][j] & 1:
                extra |= 1 << i
        cols[n - m + j] ^= extra
    return cols


def _matrix_from_bits(m: int, bits: int) -> list[list[int]]:
    return [[(bits >> (i * m + j)) & 1 for j in range(m)] for i in range(m)]


def sigma_family_2explosion(n: int, *, samples: int = 2000, seed: int = 0) -> FamilyCheck:
    """The family ``f -> sigma_f`` of automorphisms of (Z/2)^n, m = n // 2.

    Checks: each sigma_f is invertible; ``sigma_f sigma_g = sigma_{f+g}``
    (all pairs when m <= 3, sampled otherwise); the map is injective (its
    kernel is trivial, decided by a GF(2) rank computation); every member
    is an involution, so the family is elementary abelian of order 2^(m^2);
    the fixed points of sigma_id are exactly the vectors with v2 = 0.
    """
    if n < 2:
        raise InvalidInput("n must be at least 2")
    if n > 10:
        raise CapExceeded(f"n = {n} exceeds the enumeration cap 10")
    m = n // 2
    res = FamilyCheck("sigma_family_2explosion", {"n": n, "m": m})
    ident = [1 << i for i in range(n)]
    N = 1 << (m * m)

    def sig(bits: int) -> list[int]:
        return sigma_f_columns(n, _matrix_from_bits(m, bits))

    res.checks["zero_is_identity"] = sig(0) == ident
    if m <= 3:
        family = [sig(b) for b in range(N)]
        pairs = ((a, b) for a in range(N) for b in range(N))
        res.checks["invertible"] = all(_rank_gf2(c) == n for c in family)
        res.checks["homomorphism"] = all(_compose(family[a], family[b]) == family[a ^ b] for a, b in pairs)
        res.checks["distinct_members"] = len({tuple(c) for c in family}) == N
        res.data["pairs_checked"] = N * N
    else:
        rng = random.Random(seed)
        drawn = [(rng.randrange(N), rng.randrange(N)) for _ in range(samples)]
        res.checks["invertible"] = all(_rank_gf2(sig(a)) == n for a, _ in drawn)
        res.checks["homomorphism"] = all(_compose(sig(a), sig(b)) == sig(a ^ b) for a, b in drawn)
        res.data["pairs_checked"] = samples
    # sigma is additive, so it is injective iff sigma_{E_ij} - id are independent
    diffs = []
    for b in range(m * m):
        cols = sig(1 << b)
        vec = 0
        for k, (c, e) in enumerate(zip(cols, ident)):
            vec |= (c ^ e) << (k * n)
        diffs.append(vec)
    res.checks["injective"] = _rank_gf2(diffs) == m * m
    sample_bits = range(N) if m <= 3 else [random.Random(seed + 1).randrange(N) for _ in range(samples)]
    res.checks["involutions"] = all(_compose(sig(b), sig(b)) == ident for b in sample_bits)
    res.data["family_order"] = N
    res.data["exceeds_rank"] = m * m > n
    sid = sig(sum(1 << (i * m + i) for i in range(m)))
    fixed = [v for v in range(1 << n) if _apply(sid, v) == v]
    top_zero = [v for v in range(1 << n) if v >> (n - m) == 0]
    res.checks["fixed_points_of_identity_member"] = fixed == top_zero
    res.data["fixed_point_count"] = len(fixed)
    return res


def _perm_of(G: AbelianGroup, fn) -> Permutation:
    return Permutation([G.index(fn(x)) for x in (G.element(i) for i in range(G.order))])


def sigma_tau_cyclic2(k: int, m: int) -> FamilyCheck:
    """Automorphisms of ``Z/2^k x (Z/2)^m``.

    sigma1 multiplies the first coordinate by 3, sigma2 negates it, and
    tau_i adds the first coordinate (mod 2) into slot i.  For k >= 3 the
    structural facts are all checked.  At k = 2, 3 = -1 mod 4 so sigma1 and
    sigma2 coincide (order 2); there the checks are the coincidence and
    that (Z/2)^(m+1) = {0, 2} x (Z/2)^m sits inside the group and is fixed
    by every member.
    """
    if k < 2 or m < 0:
        raise InvalidInput("need k >= 2 and m >= 0")
    if k > 7 or m > 4:
        raise CapExceeded(f"(k, m) = ({k}, {m}) exceeds the caps k <= 7, m <= 4")
    G = AbelianGroup([2**k] + [2] * m)
    top = 2**k
    s1 = _perm_of(G, lambda x: (3 * x[0] % top,) + x[1:])
    s2 = _perm_of(G, lambda x: (-x[0] % top,) + x[1:])
    taus = []
    for i in range(m):
        def t(x, i=i):
            y = list(x)
            y[1 + i] = (y[1 + i] + x[0]) % 2
            return tuple(y)
        taus.append(_perm_of(G, t))
    gens = [s1, s2] + taus
    res = FamilyCheck("sigma_tau_cyclic2", {"k": k, "m": m})
    res.checks["pairwise_commute"] = all(commutes(a, b) for a, b in itertools.combinations(gens, 2))
    res.checks["tau_order_2"] = all(t.order() == 2 for t in taus)
    res.data["order_sigma1"] = s1.order()
    fix2 = {G.element(i) for i in range(G.order) if s2(i) == i}
    expected_fix = {x for x in G.elements() if x[0] % (2 ** (k - 1)) == 0}
    res.checks["sigma2_fixed_points"] = fix2 == expected_fix
    res.checks["fixed_points_fixed_by_all"] = all(g(G.index(x)) == G.index(x) for g in gens for x in fix2)
    if k >= 3:
        res.checks["order_sigma1"] = s1.order() == 2 ** (k - 2)
        H = PermGroup(gens)
        res.checks["sigma2_not_in_sigma1"] = s2 not in PermGroup([s1])
        counts: dict[int, int] = {}
        for h in H.elements():
            o = h.order()
            counts[o] = counts.get(o, 0) + 1
        inv = invariants_from_order_counts(counts)
        expected = sorted([2] * (m + 1) + [2 ** (k - 2)])
        res.data["generated_invariants"] = inv
        res.checks["generated_invariants"] = inv == expected
        res.checks["generated_abelian"] = H.is_abelian()
    else:
        res.checks["sigma1_equals_sigma2"] = s1 == s2
        res.checks["order_sigma1"] = s1.order() == 2
        sub = G.span([(2,) + (0,) * m] + [b for b in G.basis()[1:]])
        res.checks["elementary_subgroup"] = len(sub) == 2 ** (m + 1) and all(
            G.element_order(x) <= 2 for x in sub)
    return res


@dataclass
class FixingAutomorphism:
    group: AbelianGroup
    fixed: tuple
    automorphism: AbelianAutomorphism
    construction: str


def _retraction_coefficients(G: AbelianGroup, g: tuple) -> list[int] | None:
    """Coefficients c_i with ``e_i -> c_i g`` a homomorphism and ``g -> g``."""
    e = G.exponent
    choices = [[t * (e // f) for t in range(f)] for f in G.factors]
    for cs in itertools.product(*choices):
        if sum(a * c for a, c in zip(g, cs)) % e == 1 % e:
            return list(cs)
    return None


def _exhaustive_fixing_automorphism(G: AbelianGroup, g: tuple) -> AbelianAutomorphism | None:
    elems = list(G.elements())
    pools = [[x for x in elems if f % G.element_order(x) == 0] for f in G.factors]
    for imgs in itertools.product(*pools):
        s = AbelianAutomorphism(G, list(imgs))
        if not s.is_identity() and s(g) == g and s.is_automorphism():
            return s
    return None


def odd_abelian_fixing_automorphism(G: AbelianGroup, g) -> FixingAutomorphism:
    """A non-identity automorphism of an odd-order abelian G fixing g.

    When ord(g) is the exponent e, <g> is a direct summand: a retraction
    pi onto <g> gives ``x -> 2 pi(x) - x``, which inverts a complement.
    Otherwise some prime p has ord_p(g) = p^b below the p-exponent; then
    multiplication by ``1 + p^b u`` (u the CRT idempotent of the p-part)
    fixes g and moves an element of maximal p-power order.
    """
    g = G.normalize(g)
    if G.order % 2 == 0:
        raise InvalidInput("group order must be odd")
    if len(G.span([g])) == G.order:
        raise InvalidInput("g generates the group; only the identity fixes it")
    e = G.exponent
    d = G.element_order(g)
    sigma = None
    tag = ""
    if d == e:
        cs = _retraction_coefficients(G, g)
        if cs is not None:
            images = []
            for b, c in zip(G.basis(), cs):
                images.append(G.add(G.scale(2 * c, g), G.neg(b)))
            sigma = AbelianAutomorphism(G, images)
            tag = "complement_inversion"
    else:
        for p, a in sorted(factorint(e).items()):
            pa = p**a
            b = 0
            while d % p ** (b + 1) == 0:
                b += 1
            if b < a:
                rest = e // pa
                u = (rest * pow(rest, -1, pa)) % e
                sigma = scalar_automorphism(G, (1 + p**b * u) % e)
                tag = f"power_map_p{p}"
                break
    if sigma is None or sigma.is_identity() or sigma(g) != g or not sigma.is_automorphism():
        sigma = _exhaustive_fixing_automorphism(G, g)
        tag = "exhaustive"
        if sigma is None:
            raise AssertionError(f"no fixing automorphism found for {g} in {G}")
    return FixingAutomorphism(G, g, sigma, tag)
