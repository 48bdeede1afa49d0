"""Witness constructions: regular representation, conjugating witnesses for
partial automorphisms, permutational-product amalgams, and the pipelines
built from them.

Every construction returns certificates whose equations have been checked
exactly; nothing is trusted without verification.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from sympy.ntheory import primitive_root

from .errors import CapExceeded, InvalidInput
from .groupalg.abelian import AbelianGroup
from .groupalg.finite import FiniteGroup, GroupHomomorphism, RegularImages, direct_product, regular_permutations
from .groupalg.partial import PartialAutomorphism, validate_partial_automorphism
from .permcore import Permutation, PermGroup, _mul, commutes, conjugate, symmetric_group

SYM_DEGREE_CAP = 10**4
NEUMANN_CAP = 10**5
PAIRWISE_CAP = 10**7
# total permutation entries materialized by a permutational product
ENTRY_CAP = 2 * 10**7


@dataclass
class WitnessCertificate:
    """A conjugating element together with the equations ``a^witness = p(a)``."""

    ambient: PermGroup
    witness: Permutation
    equations: list[tuple[Permutation, Permutation]]
    tag: str
    verified: bool = False

    def verify(self) -> bool:
        ok = self.witness in self.ambient and all(
            conjugate(a, self.witness) == pa for a, pa in self.equations)
        self.verified = ok
        return ok

    def to_json(self) -> dict:
        return {
            "witness": self.witness.to_json(),
            "equations": [[a.to_json(), pa.to_json()] for a, pa in self.equations],
            "tag": self.tag,
            "degree": self.ambient.degree,
            "verified": self.verified,
        }


@dataclass
class PermEmbedding:
    """An injective homomorphism from a FiniteGroup into a permutation group."""

    source: FiniteGroup
    perms: Sequence[Permutation]
    ambient: PermGroup

    def __call__(self, x: int) -> Permutation:
        return self.perms[x]

    @property
    def degree(self) -> int:
        return self.ambient.degree

    def is_injective(self) -> bool:
        return len({p.images for p in self.perms}) == self.source.order

    def is_homomorphism(self) -> bool:
        S = self.source
        return all(self.perms[S.mul(x, s)] == self.perms[x] * self.perms[s]
                   for x in range(S.order) for s in S.generators)

    def image_group(self) -> PermGroup:
        gens = [self.perms[g] for g in self.source.generators]
        return PermGroup(gens, degree=self.degree)


def regular_representation(G: FiniteGroup, *, cap: int = SYM_DEGREE_CAP, lazy: bool = False) -> PermEmbedding:
    """Cayley embedding ``g -> (a -> g a)`` into Sym(|G|).

    Left multiplication is the homomorphism under right-to-left
    composition; every non-identity image is fixed-point-free.  With
    ``lazy=True`` images are computed on first use.
    """
    if G.order > cap:
        raise CapExceeded(f"regular representation of order {G.order} exceeds degree cap {cap}")
    perms = RegularImages(G) if lazy else regular_permutations(G)
    return PermEmbedding(G, perms, symmetric_group(G.order))


def _right_cosets(G: FiniteGroup, H: Sequence[int]) -> list[list[int]]:
    """Cosets ``H x`` with least-index representatives, in representative order.

    Each coset is listed as ``[h x for h in H]`` in the order of ``H``.
    """
    seen = [False] * G.order
    cosets = []
    for x in range(G.order):
        if seen[x]:
            continue
        coset = [G.mul(h, x) for h in H]
        for y in coset:
            seen[y] = True
        cosets.append(coset)
    return cosets


def hall_witness(G: FiniteGroup, p: PartialAutomorphism, *, embedding: PermEmbedding | None = None,
                 cap: int = SYM_DEGREE_CAP) -> tuple[PermEmbedding, WitnessCertificate]:
    """A permutation w of G's elements with ``e(d)^w = e(p(d))`` for all d in dom(p).

    With D = dom(p) and R = ran(p), write G as right cosets ``D x_i`` and
    ``R y_i`` (least representatives, in order) and let gamma send
    ``d x_i -> p(d) y_i``.  Then ``gamma e(d) = e(p(d)) gamma``, so the
    witness is gamma^-1; all |D| equations are verified.
    """
    if p.ambient is not G:
        raise InvalidInput("partial automorphism belongs to a different group")
    e = embedding if embedding is not None else regular_representation(G, cap=cap, lazy=True)
    dom, ran = p.dom, p.ran
    cd = _right_cosets(G, dom)
    cr = _right_cosets(G, [p(d) for d in dom])
    if len(cd) != len(cr):
        raise AssertionError("coset counts differ although |dom| = |ran|")
    gamma = [0] * G.order
    for X, Y in zip(cd, cr):
        for src, dst in zip(X, Y):
            gamma[src] = dst
    beta = Permutation._raw(tuple(gamma))
    eqs = [(e(d), e(p(d))) for d in dom]
    # gamma e(d) gamma^-1 = e(p(d)), so gamma^-1 is the witness; the other
    # orientation is tried only as a safeguard
    for w in (~beta, beta):
        cert = WitnessCertificate(e.ambient, w, eqs, "hall_witness")
        if cert.verify():
            return e, cert
    raise AssertionError("hall witness failed verification")


@dataclass
class AmalgamResult:
    D: PermGroup
    embed_B: PermEmbedding
    embed_C: PermEmbedding
    base_image: list[Permutation]
    intersection_checked: bool
    intersection_ok: bool | None
    witnesses: list[WitnessCertificate] = field(default_factory=list)
    stages: list[str] = field(default_factory=list)

    @property
    def degree(self) -> int:
        return self.D.degree

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "D": self.D.to_json(),
            "embed_B": [p.to_json() for p in self.embed_B.perms],
            "embed_C": [p.to_json() for p in self.embed_C.perms],
            "base_image": [p.to_json() for p in self.base_image],
            "intersection_checked": self.intersection_checked,
            "intersection_ok": self.intersection_ok,
            "witnesses": [w.to_json() for w in self.witnesses],
            "stages": self.stages,
        }


def _left_transversal(B: FiniteGroup, A_img: Sequence[int]) -> tuple[list[int], dict[int, tuple[int, int]]]:
    """Representatives s of the cosets ``s A`` and the normal form ``x = s a``.

    Returns the representatives (least index first) and a map from each
    element of B to ``(a_index_in_A, s_position)``.
    """
    nf: dict[int, tuple[int, int]] = {}
    reps: list[int] = []
    for x in range(B.order):
        if x in nf:
            continue
        si = len(reps)
        reps.append(x)
        for ai, a in enumerate(A_img):
            nf[B.mul(x, a)] = (ai, si)
    return reps, nf


def neumann_amalgam(A: FiniteGroup, B: FiniteGroup, C: FiniteGroup, iAB: GroupHomomorphism,
                    iAC: GroupHomomorphism, *, cap: int = NEUMANN_CAP,
                    pairwise_cap: int = PAIRWISE_CAP, entry_cap: int = ENTRY_CAP) -> AmalgamResult:
    """Permutational product of B and C over A.

    Points are triples ``(a, s, t)`` with s, t running over left
    transversals of A in B and C; the triple stands for ``s a`` in B and
    ``t a`` in C.  B acts by ``x -> x b^-1`` on the B-reading and leaves t
    alone; C acts likewise on the C-reading.  Both readings give the same
    action of A, which is why the two images meet exactly in A.
    """
    for f, T in ((iAB, B), (iAC, C)):
        if f.source is not A or f.target is not T:
            raise InvalidInput("embedding has the wrong source or target")
        if not f.injective or not f.is_homomorphism():
            raise InvalidInput("embedding is not an injective homomorphism")
    nA = A.order
    S, nfB = _left_transversal(B, iAB.images)
    T, nfC = _left_transversal(C, iAC.images)
    nS, nT = len(S), len(T)
    degree = nA * nS * nT
    if degree > cap:
        raise CapExceeded(f"permutational product degree {degree} exceeds cap {cap}",
                          stages=["transversals"])
    if degree * (B.order + C.order) > entry_cap:
        raise CapExceeded(f"permutational product needs {degree * (B.order + C.order)} permutation entries,"
                          f" over the cap {entry_cap}", stages=["transversals"])

    def point(a: int, s: int, t: int) -> int:
        return (a * nS + s) * nT + t

    def b_action(b: int) -> Permutation:
        binv = B.inv(b)
        img = [0] * degree
        for a in range(nA):
            for s in range(nS):
                x = B.mul(B.mul(S[s], iAB.images[a]), binv)
                a2, s2 = nfB[x]
                for t in range(nT):
                    img[point(a, s, t)] = point(a2, s2, t)
        return Permutation._raw(tuple(img))

    def c_action(c: int) -> Permutation:
        cinv = C.inv(c)
        img = [0] * degree
        for a in range(nA):
            for t in range(nT):
                x = C.mul(C.mul(T[t], iAC.images[a]), cinv)
                a2, t2 = nfC[x]
                for s in range(nS):
                    img[point(a, s, t)] = point(a2, s, t2)
        return Permutation._raw(tuple(img))

    bperms = [b_action(b) for b in range(B.order)]
    cperms = [c_action(c) for c in range(C.order)]
    gens = [bperms[g] for g in B.generators] + [cperms[g] for g in C.generators]
    D = PermGroup(gens, degree=degree)
    eB = PermEmbedding(B, bperms, D)
    eC = PermEmbedding(C, cperms, D)
    for emb in (eB, eC):
        if not emb.is_injective() or not emb.is_homomorphism():
            raise AssertionError("permutational product embedding is not an injective homomorphism")
    base = [bperms[iAB.images[a]] for a in range(nA)]
    if any(base[a] != cperms[iAC.images[a]] for a in range(nA)):
        raise AssertionError("the two copies of A act differently")
    checked = B.order * C.order <= pairwise_cap
    ok = None
    if checked:
        common = {p.images for p in bperms} & {p.images for p in cperms}
        ok = common == {p.images for p in base}
    return AmalgamResult(D, eB, eC, base, checked, ok, stages=["transversals", "actions", "intersection"])


def perm_subgroup_isomorphism(src: Sequence[Permutation], dst: Sequence[Permutation],
                              *, cap: int = 10**5) -> dict[tuple, tuple]:
    """The isomorphism ``<src> -> <dst>`` sending ``src[i] -> dst[i]``, if it exists.

    Diagonal closure on raw image tuples; raises InvalidInput otherwise.
    """
    n = src[0].degree
    ident = tuple(range(n))
    m = dst[0].degree
    ident2 = tuple(range(m))
    fwd = {ident: ident2}
    bwd = {ident2: ident}
    queue = [ident]
    pairs = [(a.images, b.images) for a, b in zip(src, dst)]
    for x in queue:
        y = fwd[x]
        for a, b in pairs:
            nx, ny = _mul(x, a), _mul(y, b)
            if nx in fwd:
                if fwd[nx] != ny:
                    raise InvalidInput("generator pairing does not extend to an isomorphism")
                continue
            if ny in bwd:
                raise InvalidInput("generator pairing does not extend to an isomorphism")
            fwd[nx] = ny
            bwd[ny] = nx
            queue.append(nx)
            if len(queue) > cap:
                raise CapExceeded(f"subgroup closure exceeds cap {cap}")
    return fwd


def _sum_perms(p: Permutation, q: Permutation) -> Permutation:
    """``(p, q)`` acting on the disjoint union of their point sets."""
    n = p.degree
    return Permutation._raw(p.images + tuple(x + n for x in q.images))


def eppa_amalgam_with_automorphisms(A: FiniteGroup, B: FiniteGroup, C: FiniteGroup,
                                    iAB: GroupHomomorphism, iAC: GroupHomomorphism,
                                    p_list: Sequence[PartialAutomorphism],
                                    q_list: Sequence[PartialAutomorphism], *,
                                    degree_cap: int = SYM_DEGREE_CAP,
                                    neumann_cap: int = NEUMANN_CAP) -> AmalgamResult:
    """Amalgam D of B and C over A with elements g_k conjugating by p_k and q_k.

    Stages: B x C; the product partial automorphisms r_k = p_k x q_k;
    witnesses w_k for r_k in Sym(B x C) on the regular representation;
    H = G x Q with G = <image of B x C, w>, Q = <w>; the subgroups
    Bbar = <B, (w_k, w_k)> and Cbar = <C, (w_k, w_k)> of H; the common
    subgroup K = <A, (w_k, w_k)> identified in both; and the permutational
    product of Bbar and Cbar over K.
    """
    if len(p_list) != len(q_list):
        raise InvalidInput("p_list and q_list must have the same length")
    stages: list[str] = []
    # restrictions to A must agree and be total on A
    for p, q in zip(p_list, q_list):
        if p.ambient is not B or q.ambient is not C:
            raise InvalidInput("partial automorphisms must live in B and C")
        for a in range(A.order):
            xb, xc = iAB(a), iAC(a)
            if xb not in p.extension or xc not in q.extension:
                raise InvalidInput("partial automorphism is not defined on all of A")
            pb, qc = p(xb), q(xc)
            if pb not in iAB.images or qc not in iAC.images:
                raise InvalidInput("partial automorphism does not preserve A")
            if iAB.images.index(pb) != iAC.images.index(qc):
                raise InvalidInput("p and q restrict to different automorphisms of A")
    stages.append("restrictions")
    try:
        BC, eB, eC = direct_product(B, C)
        stages.append("product")
        lam = regular_representation(BC, cap=degree_cap)
        ws = []
        for p, q in zip(p_list, q_list):
            pairs = [(eB(a), eB(b)) for a, b in p.pairs] + [(eC(a), eC(b)) for a, b in q.pairs]
            r = validate_partial_automorphism(BC, pairs)
            _, cert = hall_witness(BC, r, embedding=lam)
            ws.append(cert.witness)
        stages.append("witnesses")
        n = BC.order
        one = Permutation.identity(n)
        lifted_w = [_sum_perms(w, w) for w in ws]
        b_gens = [_sum_perms(lam(eB(b)), one) for b in B.generators]
        c_gens = [_sum_perms(lam(eC(c)), one) for c in C.generators]
        Bbar_gens = b_gens + lifted_w or [_sum_perms(one, one)]
        Cbar_gens = c_gens + lifted_w or [_sum_perms(one, one)]
        Bbar = FiniteGroup.from_permutations(Bbar_gens, name="Bbar")
        Cbar = FiniteGroup.from_permutations(Cbar_gens, name="Cbar")
        stages.append("H")
        kb = [_sum_perms(lam(eB(iAB(a))), one) for a in A.generators] + lifted_w
        kc = [_sum_perms(lam(eC(iAC(a))), one) for a in A.generators] + lifted_w
        if not kb:
            kb = kc = [_sum_perms(one, one)]
        phi = perm_subgroup_isomorphism(kb, kc)
        K = FiniteGroup.from_permutations(kb, name="K")
        iKB = GroupHomomorphism(K, Bbar, [Bbar.index_of(K.perm(x)) for x in range(K.order)])
        iKC = GroupHomomorphism(K, Cbar, [Cbar.index_of(Permutation._raw(phi[K.perm(x).images]))
                                          for x in range(K.order)])
        stages.append("common_subgroup")
        res = neumann_amalgam(K, Bbar, Cbar, iKB, iKC, cap=neumann_cap)
        stages.append("amalgam")
    except CapExceeded as exc:
        raise CapExceeded(str(exc), stages=stages, partial={"completed": list(stages)}) from exc

    bperm = [res.embed_B(Bbar.index_of(_sum_perms(lam(eB(b)), one))) for b in range(B.order)]
    cperm = [res.embed_C(Cbar.index_of(_sum_perms(lam(eC(c)), one))) for c in range(C.order)]
    D = res.D
    embB = PermEmbedding(B, bperm, D)
    embC = PermEmbedding(C, cperm, D)
    base = [bperm[iAB(a)] for a in range(A.order)]
    if any(base[a] != cperm[iAC(a)] for a in range(A.order)):
        raise AssertionError("A is embedded differently through B and C")
    witnesses = []
    for k, (p, q) in enumerate(zip(p_list, q_list)):
        gb = res.embed_B(Bbar.index_of(lifted_w[k]))
        gc = res.embed_C(Cbar.index_of(lifted_w[k]))
        if gb != gc:
            raise AssertionError("the two copies of a witness were not identified")
        eqs = [(bperm[x], bperm[p(x)]) for x in p.dom] + [(cperm[x], cperm[q(x)]) for x in q.dom]
        cert = WitnessCertificate(D, gb, eqs, "eppa_amalgam")
        if not cert.verify():
            raise AssertionError("amalgam witness failed verification")
        witnesses.append(cert)
    common = {x.images for x in bperm} & {x.images for x in cperm}
    ok = common == {x.images for x in base}
    stages.append("verified")
    return AmalgamResult(D, embB, embC, base, True, ok, witnesses, stages)


@dataclass
class NEppaResult:
    B: PermGroup
    embedding: PermEmbedding
    witnesses: list[WitnessCertificate]


def n_eppa_closure(A: FiniteGroup, p_list: Sequence[PartialAutomorphism], *,
                   cap: int = SYM_DEGREE_CAP) -> NEppaResult:
    """``B = <e(A), w_1..w_n>`` in Sym(|A|) where conjugation by w_i extends p_i."""
    e = regular_representation(A, cap=cap)
    certs = [hall_witness(A, p, embedding=e)[1] for p in p_list]
    gens = [e(g) for g in A.generators] + [c.witness for c in certs]
    B = PermGroup(gens or [Permutation.identity(A.order)], degree=A.order)
    for c in certs:
        c.ambient = B
        if not c.verify():
            raise AssertionError("witness lies outside the generated group")
    return NEppaResult(B, e, certs)


def _automorphism_images(A: FiniteGroup, sigma) -> list[int]:
    if isinstance(sigma, GroupHomomorphism):
        return list(sigma.images)
    if isinstance(sigma, PartialAutomorphism):
        if not sigma.is_total():
            raise InvalidInput("automorphism must be total")
        return [sigma(x) for x in range(A.order)]
    return list(sigma)


def commuting_witnesses(A: FiniteGroup, sigmas: Sequence, *, cap: int = SYM_DEGREE_CAP,
                        group_cap: int = 10**4) -> list[WitnessCertificate]:
    """Pairwise-commuting witnesses g_i with ``a^{g_i} = sigma_i(a)`` on a copy of A.

    ``sigmas`` are automorphisms of A (image lists or homomorphisms); the
    first one's fixed points must be fixed by all.  At step k the current
    group D_k = <A, g_0..g_k> is enumerated, sigma_{k+1} is extended by
    ``a^b -> sigma_{k+1}(a)^b`` on <A^{B_k}> and by the identity on
    B_k = <g_0..g_k>, and the next witness comes from the regular
    representation of D_k, into which the earlier witnesses are re-embedded.
    """
    maps = [_automorphism_images(A, s) for s in sigmas]
    if not maps:
        return []
    n = A.order
    for f in maps:
        if sorted(f) != list(range(n)) or any(
                f[A.mul(x, g)] != A.mul(f[x], f[g]) for x in range(n) for g in A.generators):
            raise InvalidInput("each sigma must be an automorphism of A")
    for i, f in enumerate(maps):
        for g in maps[i + 1:]:
            if any(f[g[x]] != g[f[x]] for x in range(n)):
                raise InvalidInput("the automorphisms do not pairwise commute")
    fixed0 = [x for x in range(n) if maps[0][x] == x]
    if any(f[x] != x for f in maps for x in fixed0):
        raise InvalidInput("a fixed point of the first automorphism is moved by another")

    pa = validate_partial_automorphism(A, [(x, maps[0][x]) for x in range(n)])
    e, cert = hall_witness(A, pa, cap=cap)
    a_img = list(e.perms)
    wit = [cert.witness]
    for f in maps[1:]:
        try:
            D = FiniteGroup.from_permutations([a_img[g] for g in A.generators] + wit, cap=group_cap)
        except CapExceeded as exc:
            raise CapExceeded(str(exc), stages=[f"witness_{i}" for i in range(len(wit))]) from exc
        a_idx = [D.index_of(p) for p in a_img]
        w_idx = [D.index_of(w) for w in wit]
        Bk = D.closure(w_idx)
        # sigma_bar(a^b) = sigma(a)^b, checked for consistency on all of A^{B_k}
        sbar: dict[int, int] = {}
        for b in Bk:
            for x in range(n):
                src = D.conj(a_idx[x], b)
                dst = D.conj(a_idx[f[x]], b)
                if sbar.setdefault(src, dst) != dst:
                    raise InvalidInput("extension to the conjugates of A is not well defined")
        Ak = D.closure(list(sbar))
        if len(Ak) != len(sbar):
            raise InvalidInput("conjugates of A do not form a subgroup; extension undefined")
        pairs = [(x, sbar[x]) for x in sorted(sbar)] + [(w, w) for w in w_idx]
        pk = validate_partial_automorphism(D, pairs)
        lam, ck = hall_witness(D, pk, cap=cap)
        a_img = [lam(i) for i in a_idx]
        wit = [lam(i) for i in w_idx] + [ck.witness]
    amb = symmetric_group(a_img[0].degree)
    certs = []
    for f, w in zip(maps, wit):
        c = WitnessCertificate(amb, w, [(a_img[x], a_img[f[x]]) for x in range(n)], "commuting_witness")
        if not c.verify():
            raise AssertionError("commuting witness failed verification")
        certs.append(c)
    for i, a in enumerate(wit):
        for b in wit[i + 1:]:
            if not commutes(a, b):
                raise AssertionError("witnesses do not commute")
    return certs


@dataclass
class OddPrimeBuild:
    A: AbelianGroup
    prime: int
    cyclic_part: tuple
    complement: list[tuple]
    sigma_order: int
    witness: WitnessCertificate
    B: PermGroup
    B_order: int
    abelian: bool
    divisible: bool


def odd_prime_abelian_builder(A: AbelianGroup, p: int, *, cap: int = SYM_DEGREE_CAP) -> OddPrimeBuild:
    """An abelian group B containing a copy of A' with ``(p-1)/p |A|`` dividing |B|.

    A is split as ``Z/p^k x A'`` with p^k the largest p-power cyclic factor.
    sigma multiplies the Z/p^k factor by a primitive root and fixes A'; its
    witness g commutes with the regular image of A', and
    ``B = <g, A'>``.
    """
    if p % 2 == 0 or A.order % p:
        raise InvalidInput("p must be an odd prime dividing |A|")
    basis = A.invariant_basis()
    d = A.invariant_factors
    top, dtop = basis[-1], d[-1]
    k = 0
    while dtop % p ** (k + 1) == 0:
        k += 1
    pk = p**k
    x = A.scale(dtop // pk, top)
    complement = [A.scale(pk, top)] + basis[:-1]
    complement = [c for c in complement if any(c)]
    if len(A.span([x] + complement)) != A.order or len(A.span([x])) * len(A.span(complement)) != A.order:
        raise AssertionError("cyclic p-part and complement do not split A")
    r = primitive_root(pk)
    G = A.to_finite_group()
    idx = A.index
    pairs = [(idx(x), idx(A.scale(r, x)))] + [(idx(c), idx(c)) for c in complement]
    sigma = validate_partial_automorphism(G, pairs)
    e, cert = hall_witness(G, sigma, cap=cap)
    comp_perms = [e(idx(c)) for c in complement]
    B = PermGroup([cert.witness] + comp_perms, degree=G.order)
    order = B.order()
    sigma_order = pk // p * (p - 1)
    return OddPrimeBuild(A, p, x, complement, sigma_order, cert, B, order, B.is_abelian(),
                         order % ((p - 1) * A.order // p) == 0)
