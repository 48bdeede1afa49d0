"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 invalid input (including
usage errors), 3 resource cap.  Every command emits a JSON record; human
output is a short rendering of the same record.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .construct import NEUMANN_CAP, SYM_DEGREE_CAP, eppa_amalgam_with_automorphisms, neumann_amalgam
from .errors import CapExceeded, InvalidInput, InvalidPartialAutomorphism
from .groupalg.finite import FINITE_GROUP_CAP, FiniteGroup, GroupHomomorphism
from .groupalg.partial import validate_partial_automorphism
from .permcore import Permutation

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


@dataclass
class Config:
    cache_dir: Path
    degree_cap: int = SYM_DEGREE_CAP
    enumeration_cap: int = FINITE_GROUP_CAP
    neumann_cap: int = NEUMANN_CAP
    workers: int = 1
    json: bool = False

    def validate(self) -> None:
        for name in ("degree_cap", "enumeration_cap", "neumann_cap", "workers"):
            if getattr(self, name) < 1:
                raise InvalidInput(f"{name} must be positive")

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "Config":
        from .tower import default_cache_dir

        cfg = cls(
            cache_dir=Path(args.cache_dir) if args.cache_dir else default_cache_dir(),
            degree_cap=args.max_degree,
            enumeration_cap=args.max_enum,
            neumann_cap=args.max_neumann,
            workers=args.workers,
            json=args.json,
        )
        cfg.validate()
        return cfg


def _emit(cfg: Config, record: dict, human: str, out: str | None = None) -> None:
    if out:
        Path(out).write_text(json.dumps(record, indent=2, sort_keys=True) + "\n")
    if cfg.json:
        print(json.dumps(record, sort_keys=True))
    else:
        print(human)


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path} is not valid JSON: {exc}") from None


# commands


def cmd_tower(args, cfg: Config) -> int:
    from .tower import build_tower

    levels = build_tower(args.max_level, cache_dir=cfg.cache_dir)
    rows = [{"level": L.index, "degree": L.degree, "order": str(L.order)} for L in levels]
    lines = []
    for r in rows:
        order = r["order"] if len(r["order"]) < 20 else f"a {len(r['order'])}-digit number"
        lines.append(f"level {r['level']}: degree {r['degree']}, order {order}")
    human = "\n".join(lines)
    _emit(cfg, {"levels": rows, "cache_dir": str(cfg.cache_dir)}, human)
    return EXIT_OK


def _element(L, x):
    if isinstance(x, int):
        return x
    if isinstance(x, list):
        return Permutation(x)
    raise InvalidInput(f"element must be an index or an image list, got {x!r}")


def cmd_witness(args, cfg: Config) -> int:
    from .tower import build_tower, inner_uh_witness

    if args.level not in (0, 1):
        raise InvalidInput("witness level must be 0 or 1")
    data = _read_json(args.pairs)
    pairs = data["pairs"] if isinstance(data, dict) else data
    levels = build_tower(args.level + 1, cache_dir=cfg.cache_dir)
    L = levels[args.level]
    try:
        cert = inner_uh_witness(levels, args.level, [(_element(L, a), _element(L, b)) for a, b in pairs])
    except InvalidPartialAutomorphism as exc:
        rec = {"error": str(exc), "relation": exc.relation, "side": exc.side}
        _emit(cfg, rec, f"invalid partial automorphism: {exc} (relation {exc.relation}, {exc.side} side)")
        return EXIT_INPUT
    rec = cert.to_json()
    rec["level"] = args.level
    out = args.out or None
    human = (f"witness in Sym({cert.ambient.degree}) for {len(pairs)} pair(s): "
             f"{len(cert.equations)} equations verified={cert.verified}, "
             f"witness moves {len(cert.witness.support())} points")
    _emit(cfg, rec, human, out)
    return EXIT_OK if cert.verified else EXIT_FAIL


def _load_group(path: str, cfg: Config) -> FiniteGroup:
    data = _read_json(path)
    if "table" in data:
        return FiniteGroup.from_table(data["table"], name=data.get("name", Path(path).stem))
    if "generators" in data:
        gens = [Permutation(g) for g in data["generators"]]
        return FiniteGroup.from_permutations(gens, name=data.get("name", Path(path).stem), cap=cfg.enumeration_cap)
    raise InvalidInput(f"{path}: group JSON needs 'table' or 'generators'")


def _load_embedding(path: str, A: FiniteGroup, T: FiniteGroup) -> GroupHomomorphism:
    data = _read_json(path)
    images = data["images"] if isinstance(data, dict) else data
    if len(images) != A.order or any(not (isinstance(y, int) and 0 <= y < T.order) for y in images):
        raise InvalidInput(f"{path}: embedding needs {A.order} element indices of the target")
    f = GroupHomomorphism(A, T, list(images))
    if not f.injective or not f.is_homomorphism():
        raise InvalidInput(f"{path}: not an injective homomorphism")
    return f


def _load_partials(paths, G: FiniteGroup):
    out = []
    for p in paths or []:
        data = _read_json(p)
        pairs = data["pairs"] if isinstance(data, dict) else data
        out.append(validate_partial_automorphism(G, [tuple(x) for x in pairs]))
    return out


def cmd_amalgam(args, cfg: Config) -> int:
    A = _load_group(args.A, cfg)
    B = _load_group(args.B, cfg)
    C = _load_group(args.C, cfg)
    iAB = _load_embedding(args.iAB, A, B)
    iAC = _load_embedding(args.iAC, A, C)
    ps = _load_partials(args.p, B)
    qs = _load_partials(args.q, C)
    try:
        if ps or qs:
            res = eppa_amalgam_with_automorphisms(A, B, C, iAB, iAC, ps, qs, degree_cap=cfg.degree_cap,
                                                  neumann_cap=cfg.neumann_cap)
        else:
            res = neumann_amalgam(A, B, C, iAB, iAC, cap=cfg.neumann_cap)
    except CapExceeded as exc:
        rec = {"partial": True, "error": str(exc), "completed_stages": exc.stages}
        _emit(cfg, rec, f"cap exceeded after stages {exc.stages}: {exc}", args.out)
        return EXIT_CAP
    rec = res.to_json()
    human = (f"amalgam of degree {res.degree}; |A| = {A.order}; intersection "
             f"{'checked: ' + ('exact' if res.intersection_ok else 'FAILED') if res.intersection_checked else 'not checked'}"
             f"; {len(res.witnesses)} witness(es)")
    _emit(cfg, rec, human, args.out)
    ok = (res.intersection_ok is not False) and all(w.verified for w in res.witnesses)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args, cfg: Config) -> int:
    from .theoremlab import SUITES, run_suites

    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    reports = run_suites(names, workers=cfg.workers)
    records = [r.to_json() for r in reports]
    ok = all(r.ok for r in reports)
    rec = records[0] if len(records) == 1 else {
        "suite": "all", "pass": ok, "suites": records,
        "wall_time_ms": round(sum(r.wall_time_ms for r in reports), 3)}
    lines = [f"{'PASS' if r.ok else 'FAIL'} {r.suite}: {len(r.cases)} cases, "
             f"{len(r.counterexamples)} counterexamples ({r.label})" for r in reports]
    _emit(cfg, rec, "\n".join(lines), args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_check_group(args, cfg: Config) -> int:
    from .theoremlab import check_inner_ultrahomogeneous

    G = _load_group(args.group, cfg)
    res = check_inner_ultrahomogeneous(G)
    rec = {"group": G.name, "order": G.order, "inner_ultrahomogeneous": res.holds,
           "subgroups_checked": res.subgroups_checked, "counterexample": res.counterexample}
    human = f"{G.name} (order {G.order}): inner ultrahomogeneous = {res.holds}"
    if res.counterexample:
        human += f"; unwitnessed pairing {res.counterexample}"
    _emit(cfg, rec, human, args.out)
    return EXIT_OK


# parser


def _max_level(text: str) -> int:
    n = int(text)
    if not 0 <= n <= 2:
        raise argparse.ArgumentTypeError(f"max level {n} exceeds the cap 2 (level 3 has order (720!)!)")
    return n


def build_parser() -> argparse.ArgumentParser:
    from .theoremlab import SUITES

    p = argparse.ArgumentParser(prog="ultrahom", description="Witnesses for partial automorphisms of finite groups.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--cache-dir", default=os.environ.get("ULTRAHOM_CACHE"), help="tower cache directory")
    p.add_argument("--max-degree", type=int, default=SYM_DEGREE_CAP, help="symmetric-group degree cap")
    p.add_argument("--max-enum", type=int, default=FINITE_GROUP_CAP, help="group enumeration cap")
    p.add_argument("--max-neumann", type=int, default=NEUMANN_CAP, help="permutational product degree cap")
    p.add_argument("--workers", type=int, default=1, help="parallel worker processes")
    p.add_argument("--json", action="store_true", help="print JSON records instead of summaries")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("tower", help="build or load tower levels")
    t.add_argument("--max-level", type=_max_level, default=1)
    t.set_defaults(func=cmd_tower)

    w = sub.add_parser("witness", help="witness a partial automorphism of a tower level")
    w.add_argument("--level", type=int, default=0)
    w.add_argument("--pairs", required=True, help="JSON file with [[a, b], ...] (indices or image lists)")
    w.add_argument("--out", help="certificate output file")
    w.set_defaults(func=cmd_witness)

    a = sub.add_parser("amalgam", help="permutational product, optionally with automorphism witnesses")
    for name in ("A", "B", "C"):
        a.add_argument(f"--{name}", required=True, help=f"group {name} JSON (table or generators)")
    a.add_argument("--iAB", required=True, help="embedding A -> B JSON (image indices)")
    a.add_argument("--iAC", required=True, help="embedding A -> C JSON (image indices)")
    a.add_argument("--p", action="append", help="partial automorphism of B (repeatable)")
    a.add_argument("--q", action="append", help="partial automorphism of C (repeatable)")
    a.add_argument("--out", help="result output file")
    a.set_defaults(func=cmd_amalgam)

    v = sub.add_parser("verify", help="run verifier suites")
    v.add_argument("suite", choices=sorted(SUITES) + ["all"])
    v.add_argument("--out", help="report output file")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("check-group", help="decide inner ultrahomogeneity of a small group")
    c.add_argument("group", help="group JSON (table or generators)")
    c.add_argument("--out", help="result output file")
    c.set_defaults(func=cmd_check_group)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = Config.from_args(args)
        return args.func(args, cfg)
    except InvalidPartialAutomorphism as exc:
        print(f"error: {exc} (relation {exc.relation}, {exc.side} side)", file=sys.stderr)
        return EXIT_INPUT
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}; completed stages {exc.stages}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
