"""Verifier suites: each group-theoretic claim as an executable, discrete check.

Every suite returns a VerificationReport whose cases record inputs, the
expected value and the computed value; a case passes iff the two are
equal.  Claims about the infinite limit group are checked through their
finite shadows (explicit witnesses in finite extensions), and reports say
so in their ``label``.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from sympy.ntheory import factorint
from sympy.utilities.iterables import partitions

from .construct import SYM_DEGREE_CAP, WitnessCertificate, hall_witness, regular_representation
from .errors import CapExceeded, InvalidInput, InvalidPartialAutomorphism
from .groupalg.abelian import AbelianGroup
from .groupalg.finite import FiniteGroup, direct_product, hom_from_generators
from .groupalg.partial import validate_partial_automorphism
from .permcore import (
    Permutation,
    PermGroup,
    commutes,
    double_centralizer,
    product,
    symmetric_group,
)

LIMIT_LABEL = "limit-level, finite shadow verified"
INNER_UH_CAP = 48
WIDTH_ENUM_CAP = 5000


# reports


@dataclass
class VerificationReport:
    suite: str
    cases: list[dict] = field(default_factory=list)
    counterexamples: list = field(default_factory=list)
    wall_time_ms: float = 0.0
    label: str = LIMIT_LABEL
    notes: list[str] = field(default_factory=list)

    def add(self, inputs, expected, actual, **extra) -> bool:
        ok = expected == actual
        case = {"inputs": inputs, "expected": expected, "actual": actual, "pass": ok}
        case.update(extra)
        self.cases.append(case)
        if not ok:
            self.counterexamples.append({"inputs": inputs, "expected": expected, "actual": actual})
        return ok

    @property
    def ok(self) -> bool:
        return not self.counterexamples and all(c["pass"] for c in self.cases)

    @property
    def failed(self) -> list[dict]:
        return [c for c in self.cases if not c["pass"]]

    def merge(self, other: "VerificationReport") -> None:
        self.cases.extend(other.cases)
        self.counterexamples.extend(other.counterexamples)
        self.notes.extend(other.notes)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "label": self.label,
            "pass": self.ok,
            "cases": [_jsonable(c) for c in self.cases],
            "counterexamples": [_jsonable(c) for c in self.counterexamples],
            "notes": self.notes,
            "wall_time_ms": round(self.wall_time_ms, 3),
        }


def _jsonable(x):
    if isinstance(x, Permutation):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [_jsonable(v) for v in items]
    return x


class _timed:
    def __init__(self, report: VerificationReport):
        self.report = report

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self.report

    def __exit__(self, *exc):
        self.report.wall_time_ms = (time.perf_counter() - self.t0) * 1000
        return False


# inner ultrahomogeneity of small groups


@dataclass
class InnerUHResult:
    group: str
    holds: bool
    subgroups_checked: int
    counterexample: list[tuple[int, int]] | None = None


def check_inner_ultrahomogeneous(G: FiniteGroup, *, cap: int = INNER_UH_CAP) -> InnerUHResult:
    """Does every isomorphism between subgroups of G extend to an inner automorphism?

    For each subgroup H (smallest first) with greedy generators h_1..h_r,
    every assignment of same-order images is tested for extending to an
    embedding H -> G, and every embedding must coincide on the generators
    with conjugation by some element of G.  The first unwitnessed pairing
    is returned as the counterexample.
    """
    if G.order > cap:
        raise CapExceeded(f"inner ultrahomogeneity check needs |G| <= {cap}, got {G.order}")
    by_order: dict[int, list[int]] = {}
    for x in range(G.order):
        by_order.setdefault(G.element_order(x), []).append(x)
    subs = G.subgroups()
    for count, H in enumerate(subs, 1):
        gens = G.find_generators(sorted(H))
        if not gens:
            continue
        inner = {tuple(G.conj(h, c) for h in gens) for c in range(G.order)}
        for images in itertools.product(*(by_order[G.element_order(h)] for h in gens)):
            if images in inner:
                continue
            try:
                validate_partial_automorphism(G, list(zip(gens, images)))
            except InvalidPartialAutomorphism:
                continue
            return InnerUHResult(G.name, False, count, list(zip(gens, images)))
    return InnerUHResult(G.name, True, len(subs))


def inner_uh_classification(groups: Iterable[FiniteGroup]) -> VerificationReport:
    """Run the check on each group; expected True exactly for 1, Z2 and S3."""
    expected_true = {"1", "Z2", "S3"}
    rep = VerificationReport("inner-uh-small", label="finite groups, exhaustive")
    with _timed(rep):
        for G in groups:
            res = check_inner_ultrahomogeneous(G)
            rep.add({"group": G.name, "order": G.order}, G.name in expected_true, res.holds,
                    counterexample=res.counterexample)
    return rep


# n-cycle identity and conjugate width


def ncycle_identity_sides(n: int, *, convention: str = "right_to_left") -> tuple[Permutation, Permutation]:
    """Both sides of ``(1..n)(n, n+1, n-1, ..., 2) = (1 2)(n n+1)`` on n+1 points.

    ``convention`` is the module's right-to-left composition or its
    left-to-right opposite; only the former makes the identity hold.
    """
    if not 3 <= n <= 12:
        raise InvalidInput("n must be in 3..12")
    d = n + 1
    a = Permutation.from_cycles(d, tuple(range(1, n + 1)), one_based=True)
    b = Permutation.from_cycles(d, (n, n + 1) + tuple(range(n - 1, 1, -1)), one_based=True)
    lhs = a * b if convention == "right_to_left" else b * a
    if convention not in ("right_to_left", "left_to_right"):
        raise InvalidInput(f"unknown convention {convention!r}")
    rhs = Permutation.from_cycles(d, (1, 2), (n, n + 1), one_based=True)
    return lhs, rhs


def ncycle_identity_check(n: int, *, convention: str = "right_to_left") -> bool:
    lhs, rhs = ncycle_identity_sides(n, convention=convention)
    return lhs == rhs


def ncycle_identity_suite(ns: Iterable[int] = range(3, 13)) -> VerificationReport:
    rep = VerificationReport("ncycle-identity", label="finite identity, exact")
    with _timed(rep):
        for n in ns:
            rep.add({"n": n, "convention": "right_to_left"}, True, ncycle_identity_check(n))
            rep.add({"n": n, "convention": "left_to_right"}, False,
                    ncycle_identity_check(n, convention="left_to_right"))
    return rep


def conjugate_width_oracle(G: PermGroup, g: Permutation, h: Permutation, max_width: int, *,
                           cap: int = WIDTH_ENUM_CAP) -> list[Permutation] | None:
    """Shortest list of conjugates of g whose product is h, up to ``max_width`` factors.

    Breadth-first search over products ``c_1 c_2 ... c_w`` of elements of
    the conjugacy class of g in G; None when h is not reached.
    """
    if g.is_identity():
        raise InvalidInput("g must not be the identity")
    if G.order() > cap:
        raise CapExceeded(f"width oracle needs |G| <= {cap}, got {G.order()}")
    if g not in G or h not in G:
        raise InvalidInput("g and h must lie in G")
    klass = sorted({g.conj(x) for x in G.elements()})
    start = Permutation.identity(G.degree)
    parent: dict[Permutation, tuple[Permutation, Permutation] | None] = {start: None}
    frontier = [start]
    for _ in range(max_width + 1):
        if h in parent:
            out = []
            cur = h
            while parent[cur] is not None:
                prev, c = parent[cur]
                out.append(c)
                cur = prev
            return out[::-1]
        nxt = []
        for p in frontier:
            for c in klass:
                q = p * c
                if q not in parent:
                    parent[q] = (p, c)
                    nxt.append(q)
        frontier = nxt
    return None


# products of four elements of order n


@dataclass
class OrderProductResult:
    n: int
    m: int
    factors: list[Permutation]
    product_order: int
    method: str

    @property
    def degree(self) -> int:
        return self.factors[0].degree

    def verify(self) -> bool:
        p = product(self.factors)
        return (len(self.factors) == 4
                and all(f.is_identity() or f.order() == self.n for f in self.factors)
                and any(not f.is_identity() for f in self.factors)
                and p.order() == self.m == self.product_order)


def _reflections(m: int) -> tuple[int, list[tuple[int, int]], list[tuple[int, int]]]:
    """Points and transpositions of two involutions whose product has order m >= 2."""
    if m == 2:
        return 4, [(0, 1)], [(2, 3)]
    s1 = sorted({tuple(sorted((i, (-i) % m))) for i in range(m) if i != (-i) % m})
    s2 = sorted({tuple(sorted((i, (1 - i) % m))) for i in range(m) if i != (1 - i) % m})
    return m, s1, s2


def _pair_as_ncycles(n: int, pairs: Sequence[tuple[tuple[int, int], tuple[int, int]]],
                     fillers: Sequence[Sequence[int]], degree: int) -> tuple[Permutation, Permutation]:
    """X, Y of order n with ``X Y`` the product of all the transposition pairs.

    Each pair ``(a b), (c d)`` with fillers f_3..f_{n-1} is labelled
    1 = a, 2 = b, 3..n-1 = f, n = c, n+1 = d, and the n-cycle identity
    writes it as ``(1..n)(n, n+1, n-1, ..., 2)``.
    """
    xs, ys = [], []
    for ((a, b), (c, d)), f in zip(pairs, fillers):
        lab = [None, a, b, *f, c, d]
        xs.append(tuple(lab[i] for i in range(1, n + 1)))
        ys.append(tuple(lab[i] for i in [n, n + 1] + list(range(n - 1, 1, -1))))
    return Permutation.from_cycles(degree, *xs), Permutation.from_cycles(degree, *ys)


def _search_pair(n: int, m: int, max_degree: int) -> list[Permutation] | None:
    """Two order-n elements of some Sym(d), d <= max_degree, with product of order m."""
    for d in range(2, max_degree + 1):
        elems = [g for g in symmetric_group(d).elements() if g.order() == n]
        reps = {}
        for g in elems:
            reps.setdefault(g.cycle_type(), g)
        for a in reps.values():
            for b in elems:
                if (a * b).order() == m:
                    return [a, b]
    return None


def order_product_check(n: int, m: int, *, search_degree: int = 7) -> OrderProductResult:
    """Four permutations, each of order n or the identity, whose product has order m.

    m = n and m = 1 are immediate.  For n = 2 the target is the product of
    two reflections.  For n >= 3 the two reflections are doubled onto a
    second copy, so each has an even number of transpositions; pairing the
    transpositions and applying the n-cycle identity per pair writes each
    reflection as a product of two order-n elements.  A small exhaustive
    search is the fallback.
    """
    if n < 2 or m < 1:
        raise InvalidInput("need n >= 2 and m >= 1")
    res = None
    if m == n or m == 1:
        c = Permutation.from_cycles(n, tuple(range(n)))
        fs = [c] if m == n else [c, ~c]
        res = OrderProductResult(n, m, fs, m, "direct")
    elif n == 2:
        M, t1, t2 = _reflections(m)
        fs = [Permutation.from_cycles(M, *t1), Permutation.from_cycles(M, *t2)]
        res = OrderProductResult(n, m, fs, m, "reflections")
    else:
        M, t1, t2 = _reflections(m)
        k = max(len(t1), len(t2))
        degree = 2 * M + k * (n - 3)
        fillers = [list(range(2 * M + i * (n - 3), 2 * M + (i + 1) * (n - 3))) for i in range(k)]
        fs = []
        for ts in (t1, t2):
            pairs = [((a, b), (a + M, b + M)) for a, b in ts]
            fs.extend(_pair_as_ncycles(n, pairs, fillers, degree))
        res = OrderProductResult(n, m, fs, m, "ncycle_identity")
    degree = max(f.degree for f in res.factors)
    res.factors = [Permutation(list(f.images) + list(range(f.degree, degree))) for f in res.factors]
    res.factors += [Permutation.identity(degree)] * (4 - len(res.factors))
    res.product_order = product(res.factors).order()
    if not res.verify():
        found = _search_pair(n, m, search_degree)
        if found is None:
            raise AssertionError(f"no product of order {m} from order-{n} elements found")
        d = found[0].degree
        res = OrderProductResult(n, m, found + [Permutation.identity(d)] * 2, m, "search")
        res.product_order = product(res.factors).order()
        if not res.verify():
            raise AssertionError("search result failed verification")
    return res


def finite_groups_simple_suite(ns: Iterable[int] = range(2, 7), ms: Iterable[int] = range(1, 9)) -> VerificationReport:
    rep = ncycle_identity_suite()
    rep.suite = "order-product"
    with _timed(rep):
        for n in ns:
            for m in ms:
                try:
                    res = order_product_check(n, m)
                    rep.add({"n": n, "m": m}, m, res.product_order, method=res.method, degree=res.degree,
                            verified=res.verify())
                except AssertionError as exc:
                    rep.add({"n": n, "m": m}, m, None, error=str(exc))
    return rep


# identities


def inversion_identity_check(G: PermGroup, samples: int = 200, *, seed: int = 0,
                             enum_cap: int = 200) -> VerificationReport:
    """For pairs with ``g^h = g^-1``: check ``g^-2 = h^-1 h^(g^-1)``.

    The literal reading ``h^(g^-1) h^-1`` evaluates to ``g^2`` instead; it
    is recorded per case as ``literal_form_holds`` and is not a pass
    criterion.
    """
    rep = VerificationReport("inversion-identity", label="finite identity, exact")
    with _timed(rep):
        ident = G.identity()
        pairs = []
        if G.order() <= enum_cap:
            elems = G.element_list(enum_cap)
            pairs = [(g, h) for g in elems for h in elems if g.conj(h) == ~g]
            rng = random.Random(seed)
            if len(pairs) > samples:
                pairs = rng.sample(pairs, samples)
        else:
            rng = random.Random(seed)
            elems = G.element_list(10**5) if G.order() <= 10**5 else None
            tries = 0
            while len(pairs) < samples and tries < 200 * samples:
                tries += 1
                g = rng.choice(elems) if elems else _random_element(G, rng)
                h = rng.choice(elems) if elems else _random_element(G, rng)
                if g.conj(h) == ~g:
                    pairs.append((g, h))
            pairs.append((ident, ident))
        for g, h in pairs:
            gi = ~g
            lhs = gi * gi
            rhs = ~h * h.conj(gi)
            literal = h.conj(gi) * ~h
            rep.add({"g": g, "h": h}, lhs, rhs, literal_form_holds=(literal == lhs))
    rep.cases = [dict(c, expected=c["expected"].to_json(), actual=c["actual"].to_json()) for c in rep.cases]
    rep.counterexamples = [_jsonable(c) for c in rep.counterexamples]
    return rep


def _random_element(G: PermGroup, rng: random.Random) -> Permutation:
    g = G.identity()
    for _ in range(20):
        g = g * rng.choice(G.generators)
    return g


def _cycle_perm(N: int, cycles_one_based: Sequence[Sequence[int]]) -> list[int]:
    """A permutation of range(N) as a list, from 1-based cycles."""
    p = Permutation.from_cycles(N, *cycles_one_based, one_based=True)
    return list(p.images)


def permuted_generator_identity(N: int, *, samples: int = 20, seed: int = 0,
                                extra: Sequence[tuple[Sequence, Sequence]] = ()) -> VerificationReport:
    """``g_k^(g_sigma^g_tau) = g_(sigma^(tau^-1)(k))`` in a symmetric ambient.

    V = (Z/2)^N sits in Sym(2^N) by its regular representation; g_sigma
    is the witness conjugating each g_k to g_sigma(k).  Permutations of
    {1..N} compose right to left like everything else, and
    ``sigma^(tau^-1) = tau sigma tau^-1``.
    """
    if not 2 <= N <= 8:
        raise InvalidInput("N must be in 2..8")
    rep = VerificationReport("permuted-generator")
    with _timed(rep):
        V = AbelianGroup([2] * N)
        G = V.to_finite_group()
        e = regular_representation(G)
        gens = [V.index(b) for b in V.basis()]
        witness_cache: dict[tuple, Permutation] = {}

        def g_of(sigma: tuple) -> Permutation:
            if sigma not in witness_cache:
                p = validate_partial_automorphism(G, [(gens[k], gens[sigma[k]]) for k in range(N)])
                _, cert = hall_witness(G, p, embedding=e)
                witness_cache[sigma] = cert.witness
            return witness_cache[sigma]

        rng = random.Random(seed)
        cases = [(tuple(range(N)), tuple(range(N)))]
        for s, t in extra:
            cases.append((tuple(_cycle_perm(N, s)), tuple(_cycle_perm(N, t))))
        for _ in range(samples):
            s = list(range(N))
            t = list(range(N))
            rng.shuffle(s)
            rng.shuffle(t)
            cases.append((tuple(s), tuple(t)))
        for sigma, tau in cases:
            ws, wt = g_of(sigma), g_of(tau)
            conj = ws.conj(wt)
            tinv = [0] * N
            for i, j in enumerate(tau):
                tinv[j] = i
            target = [tau[sigma[tinv[k]]] for k in range(N)]
            actual = [e(gens[k]).conj(conj) for k in range(N)]
            expected = [e(gens[target[k]]) for k in range(N)]
            rep.add({"sigma": list(sigma), "tau": list(tau)}, [p.to_json() for p in expected],
                    [p.to_json() for p in actual])
        for c in rep.cases:
            ok = c["pass"]
            c["expected"] = "g_(sigma^(tau^-1)(k)) for all k"
            c["actual"] = c["expected"] if ok else "mismatch"
        rep.counterexamples = [{"inputs": c["inputs"]} for c in rep.cases if not c["pass"]]
    return rep


# prime peeling


@dataclass
class PeelingTrace:
    order: int
    l0: int
    n0: int
    steps: list[dict]
    l_final: int
    k_sum: int
    checks: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def _two_adic(x: int) -> tuple[int, int]:
    k = 0
    while x % 2 == 0:
        x //= 2
        k += 1
    return k, x


def prime_peeling_bound(order: int) -> PeelingTrace:
    """Run the peeling recursion on ``order = 2^l0 * n0`` (n0 odd).

    While n > 1, take the largest prime p | n, write ``p = 2^k m + 1`` with
    m odd, and replace n by ``n m / p`` and l by ``l + k``.  Checked: the
    recursion stops at n = 1 within log2(order) steps, each step satisfies
    ``n_j >= n_(j-1) 2^(-1-k_j)``, and ``n0 <= 2^(k_1 + ... + k_j0 + j0)``.
    """
    if order < 1:
        raise InvalidInput("order must be positive")
    if order > 10**7:
        raise CapExceeded(f"order {order} exceeds 10^7")
    l0, n0 = _two_adic(order)
    n, l = n0, l0
    steps = []
    step_ok = True
    while n > 1:
        p = max(factorint(n))
        k, m = _two_adic(p - 1)
        new_n = n // p * m
        # n_j >= n_{j-1} 2^(-1-k)  <=>  n_j 2^(1+k) >= n_{j-1}
        step_ok &= new_n * 2 ** (1 + k) >= n
        steps.append({"p": p, "k": k, "m": m, "n": new_n, "l": l + k})
        n, l = new_n, l + k
    k_sum = sum(s["k"] for s in steps)
    j0 = len(steps)
    checks = {
        "terminates_at_one": n == 1,
        "step_count": j0 <= max(0, math.log2(order)) + 1e-9,
        "step_inequalities": step_ok,
        "final_bound": n0 <= 2 ** (k_sum + j0),
    }
    return PeelingTrace(order, l0, n0, steps, l, k_sum, checks)


def _largest_prime_factor_sieve(limit: int) -> list[int]:
    lpf = list(range(limit + 1))
    for p in range(2, limit + 1):
        if lpf[p] == p:
            for q in range(2 * p, limit + 1, p):
                lpf[q] = p
    return lpf


def peeling_table_check(limit: int = 10**6) -> VerificationReport:
    """prime_peeling_bound's checks for every order up to ``limit``.

    The recursion only depends on the odd part, so each odd n is traced
    once (memoized on the next value) and all ``2^l n <= limit`` reuse it.
    """
    rep = VerificationReport("prime-peeling", label="finite arithmetic, exhaustive")
    with _timed(rep):
        lpf = _largest_prime_factor_sieve(limit)
        # per odd n: (steps j0, k_sum, all step inequalities hold)
        info: dict[int, tuple[int, int, bool]] = {1: (0, 0, True)}
        bad = []
        for n in range(3, limit + 1, 2):
            p = lpf[n]
            k, m = _two_adic(p - 1)
            nxt = n // p * m
            j, ks, ok = info[nxt]
            step = nxt * 2 ** (1 + k) >= n
            info[n] = (j + 1, ks + k, ok and step)
            j0, k_sum, all_ok = info[n]
            if not (all_ok and n <= 2 ** (k_sum + j0) and j0 <= math.log2(n)):
                bad.append(n)
        rep.add({"limit": limit, "odd_parts_checked": len(info)}, [], bad)
        rep.notes.append("every order 2^l n <= limit shares the trace of its odd part n; "
                         "its step bound log2(2^l n) >= log2(n) is implied")
    return rep


# centralizer gaps and the omitted type


@dataclass
class CentralizerGap:
    order: int
    n: int
    witness: WitnessCertificate
    g_image: Permutation
    commutes_with_power: bool
    commutes_with_g: bool

    @property
    def ok(self) -> bool:
        return self.commutes_with_power and not self.commutes_with_g and self.witness.verified


def centralizer_gap_witness(g, n: int, *, cap: int = SYM_DEGREE_CAP) -> CentralizerGap:
    """A witness h with ``[h, g^n] = 1`` and ``[h, g] != 1`` in an extension.

    ``<g> x Z/n`` is realized on its regular representation; the
    automorphism ``g -> g g0, g0 -> g0`` (valid as n divides ord g) gets a
    witness h.  Then h fixes ``(g g0)^n = g^n`` and moves g.  ``g`` may be
    a Permutation or its order.
    """
    m = g if isinstance(g, int) else g.order()
    if n < 2:
        raise InvalidInput("n must be at least 2")
    if m % n:
        raise InvalidInput(f"n = {n} does not divide ord(g) = {m}")
    if m * n > cap:
        raise CapExceeded(f"degree {m * n} exceeds cap {cap}")
    Cm = AbelianGroup([m]).to_finite_group()
    Cn = AbelianGroup([n]).to_finite_group()
    P, eG, eH = direct_product(Cm, Cn)
    gg, g0 = eG(1), eH(1)
    p = validate_partial_automorphism(P, [(gg, P.mul(gg, g0)), (g0, g0)])
    e, cert = hall_witness(P, p, cap=cap)
    h = cert.witness
    lg = e(gg)
    return CentralizerGap(m, n, cert, lg, commutes(h, lg ** n), commutes(h, lg))


def omitted_type_fragment(N: int) -> VerificationReport:
    """With g an N^2-cycle: ``g^k (g^N)^l != 1`` for ``-N < k, l < N``, (k, l) != 0.

    There are (2N-1)^2 - 1 such pairs.  A centralizer gap
    ``C(g) < C(g^N)`` is also witnessed.  Only consistency is checked;
    omission in the limit group is not finitely certifiable.
    """
    if not 2 <= N <= 6:
        raise InvalidInput("N must be in 2..6")
    rep = VerificationReport("omitted-type")
    with _timed(rep):
        d = N * N
        g = Permutation.from_cycles(d, tuple(range(d)))
        gN = g ** N
        count = 0
        for k in range(-N + 1, N):
            for l in range(-N + 1, N):
                if (k, l) == (0, 0):
                    continue
                count += 1
                rep.add({"N": N, "k": k, "l": l}, False, ((g ** k) * (gN ** l)).is_identity())
        gap = centralizer_gap_witness(g, N)
        rep.add({"N": N, "centralizer_gap": True}, True, gap.ok)
        rep.notes.append(f"{count} inequalities checked")
        rep.notes.append("omission of the type is not finitely certifiable; consistency only")
    return rep


def centralizer_gap_suite(samples: int = 50, *, seed: int = 0, max_degree: int = 400) -> VerificationReport:
    rep = VerificationReport("centralizer-gap")
    with _timed(rep):
        rng = random.Random(seed)
        done = 0
        while done < samples:
            m = rng.randrange(2, 41)
            divs = [d for d in range(2, m + 1) if m % d == 0]
            n = rng.choice(divs)
            if m * n > max_degree:
                continue
            g = Permutation.from_cycles(m, tuple(range(m)))
            res = centralizer_gap_witness(g, n)
            rep.add({"ord_g": m, "n": n}, True, res.ok)
            done += 1
    return rep


# commuting patterns


@dataclass
class PatternRealization:
    matrix: list[list[int]]
    generators: list[Permutation]
    column_witnesses: list[Permutation]
    observed: list[list[int]]
    shift_witness: Permutation | None
    shift_ok: bool
    pattern_witness: Permutation | None
    pattern_ok: bool

    @property
    def exact(self) -> bool:
        return self.observed == self.matrix


class CommutingPatternRealizer:
    """Realizes 0/1 patterns ``[a_(2i), gamma_j] = 1 iff M[i][j] = 1``.

    (Z/2)^(2r) sits in Sym(4^r) by its regular representation; the
    witness for a column depends only on the column, so witnesses are
    cached across matrices.
    """

    def __init__(self, rows: int):
        if not 1 <= rows <= 4:
            raise InvalidInput("rows must be in 1..4")
        self.rows = rows
        self.V = AbelianGroup([2] * (2 * rows))
        self.G = self.V.to_finite_group()
        self.e = regular_representation(self.G)
        self.a = [self.V.index(b) for b in self.V.basis()]
        self.gens = [self.e(x) for x in self.a]
        self._cols: dict[tuple, Permutation] = {}

    def _witness(self, pairs) -> Permutation:
        p = validate_partial_automorphism(self.G, pairs)
        _, cert = hall_witness(self.G, p, embedding=self.e)
        return cert.witness

    def column(self, col: tuple[int, ...]) -> Permutation:
        if col not in self._cols:
            pairs = [(self.a[2 * i], self.a[2 * i] if col[i] else self.a[2 * i + 1]) for i in range(self.rows)]
            self._cols[col] = self._witness(pairs)
        return self._cols[col]

    def shift(self) -> tuple[Permutation | None, bool]:
        """y with ``a_i^y = a_(i+2)``, on the generators where both exist."""
        n = 2 * self.rows
        if n <= 2:
            return None, True
        y = self._witness([(self.a[i], self.a[i + 2]) for i in range(n - 2)])
        ok = all(self.gens[i].conj(y) == self.gens[i + 2] for i in range(n - 2))
        return y, ok

    def pattern(self) -> tuple[Permutation, bool]:
        """z fixing every a_(2i) and sending a_(2i+1) to a_(2i) a_(2i+1)."""
        G = self.G
        pairs = []
        for i in range(self.rows):
            pairs.append((self.a[2 * i], self.a[2 * i]))
            pairs.append((self.a[2 * i + 1], G.mul(self.a[2 * i], self.a[2 * i + 1])))
        z = self._witness(pairs)
        ok = all(commutes(z, self.gens[j]) == (j % 2 == 0) for j in range(2 * self.rows))
        return z, ok

    def realize(self, M: Sequence[Sequence[int]], *, fragments: bool = True) -> PatternRealization:
        M = [[int(bool(x)) for x in row] for row in M]
        if len(M) != self.rows or not M or len({len(r) for r in M}) != 1 or len(M[0]) > 8:
            raise InvalidInput(f"matrix must have {self.rows} rows of equal length <= 8")
        cols = len(M[0])
        ws = [self.column(tuple(M[i][j] for i in range(self.rows))) for j in range(cols)]
        observed = [[int(commutes(self.gens[2 * i], ws[j])) for j in range(cols)] for i in range(self.rows)]
        y, yok, z, zok = None, True, None, True
        if fragments:
            y, yok = self.shift()
            z, zok = self.pattern()
        return PatternRealization(M, self.gens, ws, observed, y, yok, z, zok)


def commuting_pattern_realizer(M: Sequence[Sequence[int]]) -> PatternRealization:
    return CommutingPatternRealizer(len(M)).realize(M)


def commuting_pattern_suite(rows: int = 3, cols: int = 3) -> VerificationReport:
    """Every rows x cols 0/1 matrix, realized exactly."""
    rep = VerificationReport("commuting-pattern")
    with _timed(rep):
        R = CommutingPatternRealizer(rows)
        y, yok = R.shift()
        z, zok = R.pattern()
        rep.add({"fragment": "shift"}, True, yok)
        rep.add({"fragment": "pattern"}, True, zok)
        for bits in range(2 ** (rows * cols)):
            M = [[(bits >> (i * cols + j)) & 1 for j in range(cols)] for i in range(rows)]
            res = R.realize(M, fragments=False)
            rep.add({"matrix": M}, M, res.observed)
    return rep


# odd cyclic definability and straight maximality


def _squares(G: PermGroup) -> set[Permutation]:
    return {h * h for h in G.elements()}


def _cyclic(g: Permutation) -> set[Permutation]:
    out = {Permutation.identity(g.degree)}
    x = g
    while not x.is_identity():
        out.add(x)
        x = x * g
    return out


def odd_cyclic_definability_check(ambient: PermGroup, g: Permutation, *,
                                  enum_cap: int = 10**5) -> VerificationReport:
    """``S = {h^2 : h in C^2(g)}`` against ``<g>`` inside the ambient.

    ``<g> <= S`` always holds for odd ord g.  Equality is asserted only
    when ``C^2(g) = <g>`` in this ambient; otherwise the relation is
    reported as ``superset`` without failing.
    """
    if g.order() % 2 == 0:
        raise InvalidInput("g must have odd order")
    rep = VerificationReport("odd-cyclic")
    with _timed(rep):
        C2 = double_centralizer(ambient, [g])
        if C2.order() > enum_cap:
            raise CapExceeded(f"C^2(g) has order {C2.order()} > {enum_cap}")
        S = _squares(C2)
        cyc = _cyclic(g)
        rel = "equal" if S == cyc else ("superset" if cyc <= S else "divergent")
        inputs = {"degree": ambient.degree, "g": g.to_json()}
        rep.add(dict(inputs, check="cyclic_in_squares"), True, cyc <= S)
        c2_is_cyclic = C2.order() == len(cyc)
        if c2_is_cyclic:
            rep.add(dict(inputs, check="squares_equal_cyclic"), "equal", rel)
        rep.notes.append(f"relation={rel}; |C^2(g)|={C2.order()}; |<g>|={len(cyc)}")
    return rep


@dataclass
class FormulaContext:
    """Evaluates psi, chi and phi in a permutation-group ambient.

    ``psi(x, y)``: y is a square of an element of ``C^2(x)``.
    ``chi(y)``: ``y != 1`` and every nontrivial z with ``psi(y, z)`` has
    ``psi(z, y)``.  ``phi(x, y) = psi(x, y) and chi(y)``.  The semantic
    evaluator instead reads phi as ``y in <x>`` of prime order.
    """

    ambient: PermGroup
    enum_cap: int = 10**5
    evaluator: str = "c2"
    _psi: dict = field(default_factory=dict, repr=False)

    def psi_set(self, x: Permutation) -> frozenset:
        if x not in self._psi:
            C2 = double_centralizer(self.ambient, [x])
            if C2.order() > self.enum_cap:
                raise CapExceeded(f"C^2 of order {C2.order()} exceeds {self.enum_cap}")
            self._psi[x] = frozenset(_squares(C2))
        return self._psi[x]

    def chi(self, y: Permutation) -> bool:
        if y.is_identity():
            return False
        return all(z.is_identity() or y in self.psi_set(z) for z in self.psi_set(y))

    def phi_set(self, x: Permutation) -> frozenset:
        if self.evaluator == "semantic":
            return frozenset(h for h in _cyclic(x) if _is_prime(h.order()))
        return frozenset(y for y in self.psi_set(x) if self.chi(y))


def _is_prime(n: int) -> bool:
    return n > 1 and all(n % p for p in range(2, math.isqrt(n) + 1))


def straight_maximality_pattern(P: Sequence[int], *, c2_evaluator: bool = True) -> VerificationReport:
    """Boolean combinations of the prime-order parts of a cyclic group.

    g is a product of disjoint p-cycles (p in P).  For every A <= P,
    ``g_A = g^(prod(P - A))`` has order prod(A) and its semantic phi-set is
    the union of ``S_p = {h in <g> : ord h = p}`` over p in A.  The map
    ``A -> phi(g_A)`` is checked to be an injective union-preserving
    embedding of the power set of P.  The C^2-based evaluator is run in
    Sym(sum P) and agreement or divergence is reported, not failed.
    """
    P = sorted(set(P))
    if not 1 <= len(P) <= 4 or any(p % 2 == 0 or not _is_prime(p) for p in P):
        raise InvalidInput("P must be a set of 1..4 odd primes")
    if math.prod(P) > 720:
        raise CapExceeded("product of P exceeds 720")
    rep = VerificationReport("straight-maximality")
    with _timed(rep):
        d = sum(P)
        cycles, start = [], 0
        for p in P:
            cycles.append(tuple(range(start, start + p)))
            start += p
        g = Permutation.from_cycles(d, *cycles)
        cyc = _cyclic(g)
        S = {p: frozenset(h for h in cyc if h.order() == p) for p in P}
        for p in P:
            rep.add({"S_p": p}, p - 1, len(S[p]))
        rep.add({"check": "S_p_pairwise_disjoint"}, True,
                all(not (S[p] & S[q]) for p, q in itertools.combinations(P, 2)))
        sem = FormulaContext(symmetric_group(d), evaluator="semantic")
        c2 = FormulaContext(symmetric_group(d))
        phis = {}
        divergent = []
        for r in range(len(P) + 1):
            for A in itertools.combinations(P, r):
                gA = g ** math.prod(set(P) - set(A))
                rep.add({"A": list(A), "check": "order"}, math.prod(A), gA.order())
                phi = sem.phi_set(gA)
                union = frozenset().union(*(S[p] for p in A)) if A else frozenset()
                rep.add({"A": list(A), "check": "phi_equals_union"}, True, phi == union)
                phis[A] = phi
                if c2_evaluator:
                    if c2.phi_set(gA) != phi:
                        divergent.append(list(A))
        rep.add({"check": "injective"}, len(phis), len(set(phis.values())))
        keys = list(phis)
        rep.add({"check": "unions_respected"}, True, all(
            phis[tuple(sorted(set(a) | set(b)))] == phis[a] | phis[b] for a in keys for b in keys))
        if c2_evaluator:
            rep.notes.append("C^2 evaluator: " + ("agrees on all subsets" if not divergent
                                                 else f"diverges on {divergent}"))
            rep.cases.append({"inputs": {"check": "c2_evaluator_agreement"}, "expected": "reported",
                              "actual": "agree" if not divergent else "diverge", "pass": True,
                              "divergent_subsets": divergent})
    return rep


# finite exponent bookkeeping


def abelian_scan_corpus(max_order: int = 10**5) -> list[list[int]]:
    """Invariant factors of abelian test groups: all 2-groups up to max_order plus mixed ones."""
    out = []
    e = 1
    while 2**e <= max_order:
        for part in partitions(e):
            cyc = sorted(2**k for k, c in part.items() for _ in range(c))
            out.append(cyc)
        e += 1
    for odd in (3, 5, 15, 45, 105):
        for base in ([2] * 4, [4, 8], [2, 2, 16], [2**10]):
            if odd * math.prod(base) <= max_order:
                out.append(sorted(base[:-1] + [base[-1] * odd]))
    out.append([15])
    return out


def finite_exponent_dichotomy_scan(corpus: Sequence[Sequence[int]] | None = None, *, K_max: int = 8,
                                   peel: bool = True) -> VerificationReport:
    """Large 2-part forces a big elementary subgroup or a long cyclic 2-factor.

    For K <= K_max: if the 2-part of |A| exceeds 2^(2K^2), then A contains
    (Z/2)^(K+1) (2-rank > K) or a cyclic 2-factor of order > 2^(2K).
    The contrapositive is arithmetic: rank <= K and exponent <= 2^(2K)
    bound the 2-part by 2^(2K^2).
    """
    rep = VerificationReport("finite-exponent")
    with _timed(rep):
        groups = abelian_scan_corpus() if corpus is None else [list(c) for c in corpus]
        for cyc in groups:
            order = math.prod(cyc)
            if order > 10**5:
                raise CapExceeded(f"group of order {order} exceeds 10^5")
            twos = [2 ** _two_adic(c)[0] for c in cyc]
            two_part = math.prod(twos)
            rank2 = sum(1 for t in twos if t > 1)
            top2 = max(twos, default=1)
            for K in range(1, K_max + 1):
                if two_part > 2 ** (2 * K * K):
                    rep.add({"factors": cyc, "K": K}, True, rank2 >= K + 1 or top2 > 2 ** (2 * K))
            if peel:
                rep.add({"factors": cyc, "check": "prime_peeling"}, True, prime_peeling_bound(order).ok)
        rep.notes.append("the constants 2^100 and (2^100)! are recorded as statements only")
    return rep


# Q8


@dataclass
class Q8Certificate:
    aut_order: int
    sigma: list[int]
    sigma_order: int
    sigma_squared_identity: bool


def automorphisms(G: FiniteGroup) -> list[list[int]]:
    """All automorphisms of G as image lists, by generator-image search."""
    gens = G.find_generators()
    pools = [[y for y in range(G.order) if G.element_order(y) == G.element_order(x)] for x in gens]
    out = []
    for imgs in itertools.product(*pools):
        try:
            f = hom_from_generators(G, G, dict(zip(gens, imgs)))
        except InvalidInput:
            continue
        if f.injective:
            out.append(f.images)
    return out


def q8_order4_automorphism() -> Q8Certificate:
    from .corpus import dicyclic

    Q = dicyclic(2)
    auts = automorphisms(Q)

    def order(f: list[int]) -> int:
        k, cur = 1, f
        while cur != list(range(Q.order)):
            cur = [f[x] for x in cur]
            k += 1
        return k

    sigma = next(f for f in auts if order(f) == 4)
    sq = [sigma[x] for x in sigma]
    return Q8Certificate(len(auts), sigma, order(sigma), sq == list(range(Q.order)))


def q8_suite() -> VerificationReport:
    rep = VerificationReport("q8-automorphism", label="finite group, exhaustive")
    with _timed(rep):
        c = q8_order4_automorphism()
        rep.add({"check": "aut_order"}, 24, c.aut_order)
        rep.add({"check": "sigma_order"}, 4, c.sigma_order)
        rep.add({"check": "sigma_squared_nontrivial"}, False, c.sigma_squared_identity)
    return rep


# suites built on the abelian automorphism families


def sigma_families_suite(k_max: int = 6, m_max: int = 3, n_max: int = 8) -> VerificationReport:
    from .groupalg.families import sigma_family_2explosion, sigma_tau_cyclic2

    rep = VerificationReport("sigma-families", label="finite groups, exhaustive or sampled")
    with _timed(rep):
        for k in range(2, k_max + 1):
            for m in range(0, m_max + 1):
                res = sigma_tau_cyclic2(k, m)
                rep.add({"family": "sigma_tau", "k": k, "m": m}, [], res.failed(), data=res.data)
        for n in range(2, n_max + 1):
            res = sigma_family_2explosion(n)
            rep.add({"family": "2explosion", "n": n}, [], res.failed(), data=res.data)
    return rep


def odd_abelian_invariants(max_order: int) -> list[list[int]]:
    """Invariant-factor lists of every abelian group of odd order 3..max_order."""
    from .groupalg.abelian import invariant_factors_of

    out = []
    for n in range(3, max_order + 1, 2):
        per_prime = []
        for p, e in sorted(factorint(n).items()):
            per_prime.append([[p**k for k, c in part.items() for _ in range(c)] for part in
                              (dict(q) for q in partitions(e))])
        for combo in itertools.product(*per_prime):
            out.append(invariant_factors_of([c for block in combo for c in block]))
    return out


def odd_fixing_suite(max_order: int = 225) -> VerificationReport:
    """A nontrivial automorphism fixing g, for every non-generator g of every odd abelian group."""
    from .groupalg.families import odd_abelian_fixing_automorphism

    rep = VerificationReport("odd-fixing", label="finite groups, exhaustive")
    with _timed(rep):
        groups = odd_abelian_invariants(max_order)
        cases = 0
        tags: dict[str, int] = {}
        for inv in groups:
            A = AbelianGroup(inv)
            bad = []
            for g in A.elements():
                if len(A.span([g])) == A.order:
                    continue
                cases += 1
                fx = odd_abelian_fixing_automorphism(A, g)
                s = fx.automorphism
                tag = "power_map" if fx.construction.startswith("power_map") else fx.construction
                tags[tag] = tags.get(tag, 0) + 1
                if s.is_identity() or s(g) != g or not s.is_automorphism():
                    bad.append(g)
            rep.add({"invariants": inv}, [], bad)
        rep.notes.append(f"{len(groups)} groups, {cases} non-generators; constructions {dict(sorted(tags.items()))}")
    return rep


# registry


def _inversion_suite() -> VerificationReport:
    from .permcore import dihedral_group

    rep = VerificationReport("inversion-identity", label="finite identity, exact")
    for G in (symmetric_group(3), symmetric_group(4), dihedral_group(8)):
        r = inversion_identity_check(G)
        rep.merge(r)
        rep.wall_time_ms += r.wall_time_ms
    return rep


def _omitted_suite() -> VerificationReport:
    rep = VerificationReport("omitted-type")
    for N in range(2, 7):
        r = omitted_type_fragment(N)
        rep.merge(r)
        rep.wall_time_ms += r.wall_time_ms
    return rep


def _odd_cyclic_suite() -> VerificationReport:
    P = Permutation.from_cycles
    rep = VerificationReport("odd-cyclic")
    for G, g in ((symmetric_group(5), P(5, (0, 1, 2, 3, 4))), (symmetric_group(3), P(3, (0, 1, 2))),
                 (symmetric_group(4), Permutation.identity(4)), (symmetric_group(6), P(6, (0, 1, 2)))):
        r = odd_cyclic_definability_check(G, g)
        rep.merge(r)
        rep.wall_time_ms += r.wall_time_ms
    return rep


def _inner_uh_suite() -> VerificationReport:
    from .corpus import small_groups

    return inner_uh_classification(small_groups(24))


SUITES = {
    "inner-uh-small": _inner_uh_suite,
    "ncycle-identity": ncycle_identity_suite,
    "order-product": finite_groups_simple_suite,
    "inversion-identity": _inversion_suite,
    "permuted-generator": lambda: permuted_generator_identity(
        5, extra=[([(1, 2, 3)], [(2, 3)]), ([(1, 2, 3, 4, 5)], [(1, 2)])]),
    "prime-peeling": peeling_table_check,
    "centralizer-gap": centralizer_gap_suite,
    "omitted-type": _omitted_suite,
    "commuting-pattern": commuting_pattern_suite,
    "odd-cyclic": _odd_cyclic_suite,
    "straight-maximality": lambda: straight_maximality_pattern([3, 5, 7]),
    "finite-exponent": finite_exponent_dichotomy_scan,
    "q8-automorphism": q8_suite,
    "sigma-families": sigma_families_suite,
    "odd-fixing": odd_fixing_suite,
}


def run_suite(name: str) -> VerificationReport:
    if name not in SUITES:
        raise InvalidInput(f"unknown suite {name!r}; known: {', '.join(sorted(SUITES))}")
    return SUITES[name]()


def run_suites(names: Sequence[str], *, workers: int = 1) -> list[VerificationReport]:
    """Run suites, in parallel processes when ``workers > 1``; results keep the input order."""
    for n in names:
        if n not in SUITES:
            raise InvalidInput(f"unknown suite {n!r}; known: {', '.join(sorted(SUITES))}")
    if workers <= 1 or len(names) <= 1:
        return [run_suite(n) for n in names]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run_suite, names))
