"""The tower G_0 = S_3, G_{n+1} = Sym(G_n), and witness services across levels.

Level n+1 acts on the element indices of level n, and level n sits inside
it through the left regular representation.  Levels 0 and 1 are enumerated
(6 and 720 elements); level 2 is Sym(720), kept symbolic.  Enumerations
are cached on disk so the point sets stay stable across runs.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
import random
import warnings
from collections import Counter
from dataclasses import dataclass, field
from math import gcd
from pathlib import Path
from typing import Sequence

from .construct import (
    PermEmbedding,
    WitnessCertificate,
    hall_witness,
    neumann_amalgam,
    regular_representation,
)
from .errors import CapExceeded, InvalidInput, RootUnavailable
from .groupalg.finite import FINITE_GROUP_CAP, FiniteGroup, GroupHomomorphism, trivial_group
from .groupalg.partial import validate_partial_automorphism
from .permcore import Permutation, PermGroup, cycle_matching_witness, symmetric_group

CACHE_FORMAT_VERSION = 1
MAX_LEVEL = 2
CACHE_ENV = "ULTRAHOM_CACHE"


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "ultrahom"


@dataclass
class TowerLevel:
    index: int
    group: PermGroup
    finite: FiniteGroup | None = None
    up: PermEmbedding | None = field(default=None, repr=False)

    @property
    def degree(self) -> int:
        return self.group.degree

    @property
    def order(self) -> int:
        return self.group.order()

    def element(self, i: int) -> Permutation:
        if self.finite is None:
            raise InvalidInput(f"level {self.index} is not enumerated")
        return self.finite.perm(i)

    def index_of(self, g) -> int:
        if isinstance(g, int):
            if not 0 <= g < self.order:
                raise InvalidInput(f"no element {g} at level {self.index}")
            return g
        if self.finite is None:
            raise InvalidInput(f"level {self.index} is not enumerated")
        if g.degree != self.degree:
            raise InvalidInput(f"element of degree {g.degree} is not in level {self.index}")
        return self.finite.index_of(g)

    def regular_image(self, g) -> Permutation:
        """Image of g in level index+1."""
        if self.up is None:
            raise InvalidInput(f"level {self.index} has no level above it")
        return self.up(self.index_of(g))


def _level_generators(n: int, degree: int) -> list[Permutation]:
    if n == 0:
        return [Permutation.from_cycles(3, (0, 1, 2)), Permutation.from_cycles(3, (0, 1))]
    return [Permutation.from_cycles(degree, tuple(range(degree))), Permutation.from_cycles(degree, (0, 1))]


def _content_hash(payload: dict) -> str:
    body = json.dumps({k: payload[k] for k in ("level", "degree", "generators", "elements", "below_hash")},
                      sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(body.encode()).hexdigest()


def _payload(n: int, degree: int, gens: list[Permutation], elems: list[Permutation] | None,
             below_hash: str | None) -> dict:
    p = {
        "format_version": CACHE_FORMAT_VERSION,
        "level": n,
        "degree": degree,
        "generators": [g.to_json() for g in gens],
        "elements": None if elems is None else [e.to_json() for e in elems],
        "below_hash": below_hash,
        "symmetric": True,
        "order": str(math.factorial(degree)),
    }
    p["content_hash"] = _content_hash(p)
    return p


def _load_level(path: Path, n: int, below_hash: str | None) -> dict | None:
    if not path.exists():
        return None
    try:
        data = json.loads(path.read_text())
        if data.get("format_version") != CACHE_FORMAT_VERSION or data.get("level") != n:
            raise ValueError("format version or level mismatch")
        if data.get("below_hash") != below_hash:
            raise ValueError("hash of the level below does not match")
        if data.get("content_hash") != _content_hash(data):
            raise ValueError("content hash mismatch")
        return data
    except (ValueError, KeyError, TypeError, AttributeError) as exc:
        warnings.warn(f"tower cache {path} is unusable ({exc}); rebuilding", RuntimeWarning, stacklevel=3)
        return None


def _check_cache_dir(cache_dir: Path) -> None:
    try:
        cache_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise InvalidInput(f"cache directory {cache_dir} is not writable: {exc}") from None
    if not os.access(cache_dir, os.W_OK):
        raise InvalidInput(f"cache directory {cache_dir} is not writable")


def build_tower(max_level: int = 2, *, cache_dir: str | Path | None = None, use_cache: bool = True,
                spot_checks: int = 50, seed: int = 0) -> list[TowerLevel]:
    """Levels 0..max_level with verified up-embeddings."""
    if not 0 <= max_level <= MAX_LEVEL:
        raise CapExceeded(f"max_level must be in 0..{MAX_LEVEL}; level 3 would have order 720!!")
    cdir = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    if use_cache:
        _check_cache_dir(cdir)
    levels: list[TowerLevel] = []
    below_hash = None
    degree = 3
    for n in range(max_level + 1):
        gens = _level_generators(n, degree)
        path = cdir / f"level{n}.json"
        data = None
        if n == MAX_LEVEL:
            group = symmetric_group(degree)
            level = TowerLevel(n, group)
            payload = _payload(n, degree, gens, None, below_hash)
        else:
            data = _load_level(path, n, below_hash) if use_cache else None
            if data is not None:
                elems = [Permutation(e) for e in data["elements"]]
                fin = FiniteGroup.from_element_list(elems, gens, name=f"G{n}")
                payload = data
            else:
                fin = FiniteGroup.from_permutations(gens, name=f"G{n}")
                payload = _payload(n, degree, gens, fin.perms, below_hash)
            group = PermGroup(gens, degree=degree, symmetric=True, name=f"G{n}")
            if fin.order != group.order():
                raise AssertionError(f"level {n} enumeration has {fin.order} elements")
            level = TowerLevel(n, group, fin)
        if use_cache and data is None:
            if n < MAX_LEVEL or _load_level(path, n, below_hash) is None:
                path.write_text(json.dumps(payload))
        below_hash = payload["content_hash"]
        levels.append(level)
        if level.finite is not None:
            degree = level.finite.order
    for level in levels[:-1]:
        level.up = regular_representation(level.finite, lazy=True)
    for level in levels[:-1]:
        _spot_check_embedding(level, spot_checks, seed)
    if max_level < MAX_LEVEL and levels[-1].finite is not None:
        levels[-1].up = regular_representation(levels[-1].finite, lazy=True)
    return levels


def _spot_check_embedding(level: TowerLevel, samples: int, seed: int) -> None:
    G = level.finite
    rng = random.Random(seed)
    picks = set(G.generators)
    picks |= set(range(G.order)) if G.order <= samples else {rng.randrange(G.order) for _ in range(samples)}
    images = {}
    for g in sorted(picks):
        img = level.up(g)
        if img.order() != G.element_order(g):
            raise AssertionError(f"up-embedding changes the order of element {g}")
        if g != 0 and img.support() != list(range(G.order)):
            raise AssertionError("regular image has a fixed point")
        images[img.images] = g
    if len(images) != len(picks):
        raise AssertionError("up-embedding is not injective on the sample")


def _level(levels: Sequence[TowerLevel], n: int, *, need_above: bool = True) -> TowerLevel:
    if not 0 <= n < len(levels):
        raise InvalidInput(f"level {n} is not built")
    if need_above and (n >= MAX_LEVEL or levels[n].up is None):
        raise InvalidInput(f"level {n} has no level above it within reach")
    return levels[n]


def inner_uh_witness(levels: Sequence[TowerLevel], n: int, pairs: Sequence[tuple]) -> WitnessCertificate:
    """Witness in G_{n+1} for a partial automorphism of G_n (elements or indices)."""
    L = _level(levels, n)
    idx = [(L.index_of(a), L.index_of(b)) for a, b in pairs]
    p = validate_partial_automorphism(L.finite, idx)
    _, cert = hall_witness(L.finite, p, embedding=L.up)
    cert.tag = f"inner_uh_witness_level{n}"
    return cert


def conjugacy_witness_same_order(levels: Sequence[TowerLevel], n: int, a, b) -> WitnessCertificate:
    """Conjugate the regular images of same-order a, b inside G_{n+1}."""
    L = _level(levels, n)
    ia, ib = L.index_of(a), L.index_of(b)
    G = L.finite
    if G.element_order(ia) != G.element_order(ib):
        raise InvalidInput("elements have different orders")
    ra, rb = L.up(ia), L.up(ib)
    w = cycle_matching_witness(ra, rb)
    if w is None:
        raise AssertionError("regular images of equal-order elements have different cycle types")
    cert = WitnessCertificate(L.up.ambient, w, [(ra, rb)], f"conjugacy_level{n}")
    if not cert.verify():
        raise AssertionError("conjugacy witness failed verification")
    return cert


def _root_parts(cycle_type: Sequence[int], k: int) -> dict[int, list[int]] | None:
    """For each cycle length L, sizes d of groups of L-cycles merged into one root cycle.

    A cycle of length L*d has k-th power made of d cycles of length L
    exactly when gcd(L*d, k) = d.  Larger groups are preferred.
    """
    counts = Counter(c for c in cycle_type)
    out: dict[int, list[int]] = {}
    for L, c in counts.items():
        parts = sorted((d for d in range(1, c + 1) if k % d == 0 and gcd(L * d, k) == d), reverse=True)
        reach = [None] * (c + 1)
        reach[0] = 0
        for i in range(1, c + 1):
            for d in parts:
                if i >= d and reach[i - d] is not None:
                    reach[i] = d
                    break
        if reach[c] is None:
            return None
        seq = []
        i = c
        while i:
            seq.append(reach[i])
            i -= reach[i]
        out[L] = seq
    return out


def root_in_symmetric(g: Permutation, k: int) -> Permutation | None:
    """Some h in Sym(degree) with h^k = g, or None if the cycle type forbids it.

    Groups of d cycles of g of length L are interleaved into one cycle of
    length L*d: position ``r + j*k (mod L*d)`` holds the j-th point of the
    r-th cycle, so advancing k positions is one step of g.
    """
    if k == 1:
        return g
    cycles = g.cycles(include_fixed=True)
    parts = _root_parts([len(c) for c in cycles], k)
    if parts is None:
        return None
    by_len: dict[int, list[tuple[int, ...]]] = {}
    for c in cycles:
        by_len.setdefault(len(c), []).append(c)
    img = list(range(g.degree))
    for L, seq in parts.items():
        pool = by_len[L]
        pos = 0
        for d in seq:
            group = pool[pos:pos + d]
            pos += d
            n = L * d
            slots = [0] * n
            for r, cyc in enumerate(group):
                for j, x in enumerate(cyc):
                    slots[(r + j * k) % n] = x
            for i in range(n):
                img[slots[i]] = slots[(i + 1) % n]
    h = Permutation._raw(tuple(img))
    if h ** k != g:
        raise AssertionError("root construction failed")
    return h


@dataclass
class RootResult:
    h: Permutation
    level: int
    target: Permutation
    k: int

    def verify(self) -> bool:
        return self.h ** self.k == self.target


def nth_root(levels: Sequence[TowerLevel], n: int, g, k: int) -> RootResult:
    """An element h at some level <= 2 with h^k equal to the image of g there.

    Tries g's own level first (levels 0 and 1 are full symmetric groups),
    then its images one and two levels up.  Raises RootUnavailable when the
    cycle type of g's image rules out a root at every reachable level.
    """
    if k < 1:
        raise InvalidInput("k must be positive")
    L = _level(levels, n, need_above=False)
    if L.finite is None:
        raise InvalidInput("level 2 elements are not accepted as roots' targets")
    i = L.index_of(g)
    m = L.finite.element_order(i)
    if k * m > 720:
        raise CapExceeded(f"k * ord(g) = {k * m} exceeds 720")
    current = L.element(i)
    level_no, idx = n, i
    while True:
        h = root_in_symmetric(current, k)
        if h is not None:
            res = RootResult(h, level_no, current, k)
            if not res.verify():
                raise AssertionError("root failed verification")
            return res
        if level_no + 1 > MAX_LEVEL or level_no + 1 >= len(levels) or levels[level_no].up is None:
            raise RootUnavailable(
                f"no {k}-th root of an order-{m} element at levels {n}..{level_no}",
                stages=[f"level{j}" for j in range(n, level_no + 1)])
        current = levels[level_no].up(idx)
        level_no += 1
        if level_no < MAX_LEVEL:
            idx = levels[level_no].index_of(current)


@dataclass
class EscapeCertificate:
    witness: WitnessCertificate
    amalgam_degree: int
    generated_order: int
    b_image: Permutation
    twin_image: Permutation
    centralizes_base: bool
    moves_b: bool


def escape_witness(levels: Sequence[TowerLevel], n: int, A0: Sequence, b, *,
                   neumann_cap: int = 10**5, group_cap: int = FINITE_GROUP_CAP) -> EscapeCertificate:
    """A witness c centralizing <A0> with ``b^c != b``, for b outside <A0>.

    G_n is amalgamated with a second copy of itself over <A0>; in the
    permutational product the copies of b differ while A0 is shared.  The
    partial automorphism fixing A0 and sending b to its twin gets a
    witness on the regular representation of <A0, b, twin>.
    """
    L = _level(levels, n, need_above=False)
    if L.finite is None:
        raise InvalidInput("level 2 is not enumerated")
    G = L.finite
    a_idx = [L.index_of(a) for a in A0]
    bi = L.index_of(b)
    base = G.closure(a_idx)
    if bi in set(base):
        raise InvalidInput("b lies in the subgroup generated by A0")
    stages = ["precondition"]
    gens = [G.perm(x) for x in a_idx if x != 0]
    try:
        if gens:
            A = FiniteGroup.from_permutations(gens, name="A0")
        else:
            A = trivial_group()
        inc = [G.index_of(A.perm(x)) if gens else 0 for x in range(A.order)]
        iA = GroupHomomorphism(A, G, inc)
        res = neumann_amalgam(A, G, G, iA, iA, cap=neumann_cap)
        stages.append("amalgam")
        a_imgs = [res.embed_B(a) for a in a_idx]
        bB, bC = res.embed_B(bi), res.embed_C(bi)
        H = FiniteGroup.from_permutations(a_imgs + [bB, bC], cap=group_cap, name="H")
        stages.append("generated_subgroup")
    except CapExceeded as exc:
        raise CapExceeded(str(exc), stages=stages, partial={"completed": list(stages)}) from exc
    ia = [H.index_of(x) for x in a_imgs]
    hb, hc = H.index_of(bB), H.index_of(bC)
    p = validate_partial_automorphism(H, [(x, x) for x in ia] + [(hb, hc)])
    e, cert = hall_witness(H, p)
    cert.tag = f"escape_witness_level{n}"
    w = cert.witness
    fixes = all(e(x).conj(w) == e(x) for x in ia)
    moves = e(hb).conj(w) != e(hb)
    return EscapeCertificate(cert, res.degree, H.order, bB, bC, fixes, moves)
