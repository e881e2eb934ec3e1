"""Command-line front end.

Every subcommand prints one canonical JSON document (sorted keys, compact
separators, rationals as ``[num, den]`` pairs) followed by a newline.

Exit codes: 0 all checks passed, 1 a check failed, 2 domain or input error,
3 unstable order or bound error, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence

from . import darboux, heisenberg, nildaha, schubert, toda, weyl
from .errors import BoundError, ConfigurationError, DomainError, KDarbouxError, UnstableError
from .rootdata import RootDatum, build_root_datum, parse_family

EXIT_OK, EXIT_FAIL, EXIT_DOMAIN, EXIT_UNSTABLE, EXIT_USAGE = 0, 1, 2, 3, 64
DATUM_ENV = "KDARBOUX_DATUM"
SCHEMA_BASE = "docs/schemas/"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


@dataclass
class RunConfig:
    """Everything that determines a run; echoed into randomized reports."""

    command: str
    family: list = field(default_factory=list)
    central: int = 0
    inputs: dict = field(default_factory=dict)
    output: str | None = None
    box: int = 6
    samples: int = 20
    degree: int = 3
    window: int = 40
    seed: int = 0

    def datum(self) -> RootDatum:
        return build_root_datum(self.family, self.central)


def _csv_ints(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError as err:
        raise ConfigurationError(f"expected comma-separated integers, got {text!r}") from err


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as err:
        raise DomainError(f"malformed JSON in {path} at line {err.lineno} column {err.colno}: {err.msg}") from err
    except OSError as err:
        raise DomainError(f"cannot read {path}: {err}") from err


def _load_heis(rd: RootDatum, path: str) -> heisenberg.HeisElt:
    obj = _load_json(path)
    try:
        return heisenberg.HeisElt.from_json(rd, obj)
    except (KeyError, TypeError, ValueError) as err:
        raise DomainError(f"{path} is not a Heisenberg element: {err!r}") from err


def _datum_selector(args) -> tuple[list, int]:
    config = _load_json(args.config) if getattr(args, "config", None) else {}
    family = None
    central = 0
    env = os.environ.get(DATUM_ENV)
    if env:
        fam, _, cen = env.partition(":")
        family = [list(f) for f in parse_family(fam)]
        central = int(cen or 0)
    if "family" in config:
        family = [list(f) for f in parse_family(config["family"])]
        central = int(config.get("central", 0))
    if getattr(args, "family", None):
        family = [list(f) for f in parse_family(args.family)]
    if getattr(args, "type", None):
        if args.rank is None:
            raise UsageError("--type needs --rank")
        family = [[args.type.upper(), args.rank]]
    if getattr(args, "central", None) is not None:
        central = args.central
    if family is None:
        family = [["A", 1]]
    return family, central


def _config(args, command: str) -> RunConfig:
    family, central = _datum_selector(args)
    cfg = RunConfig(command=command, family=family, central=central)
    file_cfg = _load_json(args.config) if getattr(args, "config", None) else {}
    for key in ("box", "samples", "degree", "window", "seed"):
        if key in file_cfg:
            setattr(cfg, key, int(file_cfg[key]))
        val = getattr(args, key, None)
        if val is not None:
            setattr(cfg, key, val)
    cfg.output = getattr(args, "json", None)
    return cfg


def _schema(name: str) -> str:
    return SCHEMA_BASE + name + ".schema.json"


# -- subcommands ---------------------------------------------------------------------
def cmd_relations(args, cfg: RunConfig):
    rd = cfg.datum()
    report = {"$schema": _schema("report"), "command": "relations", "datum": rd.to_json(), "checks": []}
    if args.algebra in ("nildaha", "all"):
        for entry in nildaha.relation_suite(rd):
            report["checks"].append(dict(entry, algebra="nildaha"))
    if args.algebra in ("darboux", "all"):
        for entry in darboux.check_relations(rd):
            report["checks"].append(dict(entry, algebra="darboux"))
    report["ok"] = all(c["ok"] for c in report["checks"])
    return report


def cmd_character(args, cfg):
    rd = cfg.datum()
    lam = _csv_ints(args.weight)
    ch = nildaha.weyl_character(rd, lam)
    return {"$schema": _schema("group_alg"), "command": "character", "datum": rd.to_json(),
            "weight": lam, "character": ch.to_json(), "ok": True}


def _affine_element(rd, word_text: str, gamma_text: str | None):
    word = _csv_ints(word_text)
    gamma = _csv_ints(gamma_text) if gamma_text else None
    return weyl.from_affine_word(rd, word, gamma)


def cmd_length(args, cfg):
    rd = cfg.datum()
    x = _affine_element(rd, args.word, args.gamma)
    word, central = weyl.reduced_word_affine(x)
    return {"$schema": _schema("report"), "command": "length", "datum": rd.to_json(),
            "element": x.to_json(), "length": x.length, "reduced_word": list(word),
            "central": list(central), "ok": True}


def cmd_order(args, cfg):
    rd = cfg.datum()
    lhs = _affine_element(rd, args.lhs, args.lhs_gamma)
    rhs = _affine_element(rd, args.rhs, args.rhs_gamma)
    if args.kind == "bruhat":
        ans = weyl.bruhat_leq(lhs, rhs)
    else:
        ans = weyl.semi_infinite_leq(lhs, rhs, window=cfg.window)
    return {"$schema": _schema("report"), "command": "order", "kind": args.kind, "datum": rd.to_json(),
            "lhs": lhs.to_json(), "rhs": rhs.to_json(), "leq": ans, "ok": True}


def cmd_mul(args, cfg):
    rd = cfg.datum()
    a = _load_heis(rd, args.lhs)
    b = _load_heis(rd, args.rhs)
    return {"$schema": _schema("heis_elt"), "command": "mul", "datum": rd.to_json(),
            "value": (a * b).to_json(), "ok": True}


def cmd_image(args, cfg):
    rd = cfg.datum()
    level = None if args.levi is None else _csv_ints(args.levi)
    value = darboux.image(rd, args.word, level)
    return {"$schema": _schema("heis_elt"), "command": "image", "datum": rd.to_json(),
            "word": args.word, "value": value.to_json(), "ok": True}


def cmd_decompose(args, cfg):
    rd = cfg.datum()
    target = _load_heis(rd, args.target)
    level = None if args.levi is None else _csv_ints(args.levi)
    dec = darboux.membership_decompose(target, level, cfg.box)
    return {"$schema": _schema("report"), "command": "decompose", "datum": rd.to_json(),
            "result": dec.to_json(), "ok": dec.feasible}


def cmd_chain(args, cfg):
    rd = cfg.datum()
    rep = darboux.levi_chain_check(rd, _csv_ints(args.from_), _csv_ints(args.to), cfg.samples,
                                   cfg.degree, cfg.box, cfg.seed)
    return {"$schema": _schema("report"), "command": "chain", "datum": rd.to_json(),
            "config": asdict(cfg), "result": rep, "ok": rep["ok"]}


def cmd_toda(args, cfg):
    h = toda.toda_ch_v(args.n)
    value = h.value
    levi = None
    if args.levi is not None:
        levi = _csv_ints(args.levi)
        value = toda.toda_restrict(args.n, levi)
    out = {"$schema": _schema("toda"), "command": "toda", "n": args.n,
           "levi": levi, "words": h.describe(), "ok": True}
    if args.q is not None:
        qv = Fraction(args.q)
        out["q"] = [qv.numerator, qv.denominator]
        out["value"] = value.q_specialize(qv).to_json()["terms"]
    else:
        out["q"] = None
        out["value"] = value.to_json()["terms"]
    return out


# -- suite ---------------------------------------------------------------------------
def _suite_checks(rd: RootDatum, cfg: RunConfig) -> list[tuple[str, Callable[[], dict]]]:
    checks = []

    def nil_relations():
        rep = nildaha.relation_suite(rd)
        return {"ok": all(r["ok"] for r in rep), "count": len(rep)}

    def dw_independence():
        if not rd.is_simple:
            return {"ok": True, "skipped": "needs a single simple factor"}
        rep = nildaha.check_dw_independence(rd, 4 if rd.rank <= 2 else 3)
        return {"ok": all(ok for _, ok in rep), "count": len(rep)}

    def characters():
        bad = []
        for lam in _small_dominant(rd):
            if nildaha.weyl_character(rd, lam) != nildaha.weyl_character_closed(rd, lam):
                bad.append(list(lam))
        return {"ok": not bad, "failures": bad}

    def lengths():
        bad = []
        for u in weyl.finite_weyl_group(rd):
            for beta in _antidominant_box(rd, 2, strict=True):
                t = weyl.translation(rd, beta)
                if weyl.ExtAffWeylElt(u, beta).length != t.length - u.length:
                    bad.append({"u": list(u.reduced_word), "beta": list(beta), "side": "left"})
                if (t * weyl.finite_elt(u)).length != t.length + u.length:
                    bad.append({"u": list(u.reduced_word), "beta": list(beta), "side": "right"})
        return {"ok": not bad, "failures": bad}

    def darboux_relations():
        rep = darboux.check_relations(rd)
        return {"ok": all(r["ok"] for r in rep), "count": len(rep)}

    def family_rank():
        rep = darboux.family_rank_report(rd, 2, 1)
        return {"ok": all(r["ok"] for r in rep), "blocks": len(rep)}

    def chains():
        out = []
        nodes = rd.index_set
        for k in range(len(nodes) + 1):
            for J in combinations(nodes, k):
                for kk in range(len(J) + 1):
                    for Jp in combinations(J, kk):
                        rep = darboux.levi_chain_check(rd, J, Jp, min(cfg.samples, 5), cfg.degree,
                                                       cfg.box, cfg.seed)
                        out.append(rep["ok"])
        return {"ok": all(out), "chains": len(out), "seed": cfg.seed}

    def specialization():
        import random
        rng = random.Random(cfg.seed)
        bad = 0
        for _ in range(20):
            a = darboux.random_admissible(rd, rng)
            b = darboux.random_admissible(rd, rng)
            J = [i for i in rd.index_set if rng.random() < 0.5]
            if darboux.levi_specialize(a * b, J) != darboux.levi_specialize(a, J) * darboux.levi_specialize(b, J):
                bad += 1
        return {"ok": bad == 0, "failures": bad, "seed": cfg.seed}

    def schubert_module():
        J = rd.index_set
        bad = 0
        for w in weyl.finite_weyl_group(rd):
            x = schubert.FlagKElt.schubert(rd, J, w)
            for i in J:
                once = schubert.demazure_act(i, x)
                if schubert.demazure_act(i, once) != once:
                    bad += 1
        return {"ok": bad == 0, "failures": bad}

    checks += [("nildaha-relations", nil_relations), ("dw-independence", dw_independence),
               ("weyl-characters", characters), ("affine-lengths", lengths),
               ("darboux-relations", darboux_relations), ("family-rank", family_rank),
               ("levi-chains", chains), ("levi-specialize", specialization),
               ("schubert-module", schubert_module)]
    if rd.is_simple and rd.family[0][0] == "A" and rd.central_rank == 0:
        n = rd.rank + 1
        checks.append(("toda-classical-limit", lambda: {"ok": toda.classical_limit_check(n)}))
    return checks


def _small_dominant(rd: RootDatum, top: int = 2):
    from itertools import product
    for m in product(range(top + 1), repeat=rd.rank):
        yield tuple(m) + (0,) * rd.central_rank


def _antidominant_box(rd: RootDatum, radius: int, strict: bool = False):
    from itertools import product
    for c in product(range(-radius, radius + 1), repeat=rd.rank):
        beta = tuple(c) + (0,) * rd.central_rank
        vals = [rd.pairing(beta, rd.alpha(i)) for i in rd.index_set]
        if all(v < 0 for v in vals) if strict else all(v <= 0 for v in vals):
            yield beta


def cmd_suite(args, cfg):
    rd = cfg.datum()
    checks = _suite_checks(rd, cfg)

    def run(item):
        name, fn = item
        try:
            return name, fn()
        except KDarbouxError as err:
            return name, {"ok": False, "error": f"{type(err).__name__}: {err}"}

    with ThreadPoolExecutor(max_workers=args.jobs) as pool:
        results = dict(pool.map(run, checks))
    return {"$schema": _schema("report"), "command": "suite", "datum": rd.to_json(),
            "config": asdict(cfg), "checks": results,
            "ok": all(r["ok"] for r in results.values())}


# -- parser -------------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kdarboux", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def datum_flags(p):
        p.add_argument("--type", help="Dynkin letter of a single simple factor")
        p.add_argument("--rank", type=int, help="rank of that factor")
        p.add_argument("--family", help='product of factors, e.g. "A2xA1"')
        p.add_argument("--central", type=int, help="rank of the central torus")
        p.add_argument("--config", help="JSON file with datum and bounds")
        p.add_argument("--json", help="also write the report to this file")

    p = sub.add_parser("relations", help="nil-DAHA and Darboux relation reports")
    datum_flags(p)
    p.add_argument("--algebra", choices=["nildaha", "darboux", "all"], default="all")

    p = sub.add_parser("character", help="Weyl character of a dominant weight")
    datum_flags(p)
    p.add_argument("--weight", required=True, help="comma-separated weight coordinates")

    p = sub.add_parser("length", help="length and reduced word of an affine element")
    datum_flags(p)
    p.add_argument("--word", required=True, help="comma-separated affine indices")
    p.add_argument("--gamma", help="trailing translation, comma-separated")

    p = sub.add_parser("order", help="Bruhat or semi-infinite comparison")
    datum_flags(p)
    p.add_argument("--kind", choices=["bruhat", "semiinf"], required=True)
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)
    p.add_argument("--lhs-gamma")
    p.add_argument("--rhs-gamma")
    p.add_argument("--window", type=int)

    p = sub.add_parser("mul", help="product of two Heisenberg elements")
    datum_flags(p)
    p.add_argument("--lhs", required=True, help="JSON file")
    p.add_argument("--rhs", required=True, help="JSON file")

    p = sub.add_parser("image", help="image of a generator word")
    datum_flags(p)
    p.add_argument("--word", required=True, help='tokens such as "xi1 phi2 t:1,0"')
    p.add_argument("--levi", help="level the word is read at")

    p = sub.add_parser("decompose", help="bounded membership solver")
    datum_flags(p)
    p.add_argument("--target", required=True, help="JSON file with a Heisenberg element")
    p.add_argument("--levi", help="level, comma-separated nodes (default all)")
    p.add_argument("--box", type=int)

    p = sub.add_parser("chain", help="Levi chain sampling check")
    datum_flags(p)
    p.add_argument("--from", dest="from_", required=True)
    p.add_argument("--to", required=True)
    p.add_argument("--samples", type=int)
    p.add_argument("--degree", type=int)
    p.add_argument("--box", type=int)
    p.add_argument("--seed", type=int)

    p = sub.add_parser("toda", help="relativistic Toda Hamiltonian")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--levi")
    p.add_argument("--q", help="specialise q to this rational")
    p.add_argument("--json", help="also write the report to this file")

    p = sub.add_parser("suite", help="run the check battery for one datum")
    datum_flags(p)
    p.add_argument("--seed", type=int)
    p.add_argument("--box", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--jobs", type=int, default=4)
    return parser


COMMANDS = {
    "relations": cmd_relations, "character": cmd_character, "length": cmd_length,
    "order": cmd_order, "mul": cmd_mul, "image": cmd_image, "decompose": cmd_decompose,
    "chain": cmd_chain, "toda": cmd_toda, "suite": cmd_suite,
}


def run(argv: Sequence[str] | None = None, out=None) -> int:
    """Run the CLI and return the exit code."""
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.command:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        cfg = _config(args, args.command)
        report = COMMANDS[args.command](args, cfg)
    except UsageError as err:
        sys.stderr.write(f"kdarboux: usage error: {err}\n")
        return EXIT_USAGE
    except (UnstableError, BoundError) as err:
        report = {"command": args.command, "ok": False, "error": f"{type(err).__name__}: {err}"}
        out.write(canonical_json(report) + "\n")
        return EXIT_UNSTABLE
    except (DomainError, ConfigurationError) as err:
        report = {"command": args.command, "ok": False, "error": f"{type(err).__name__}: {err}"}
        out.write(canonical_json(report) + "\n")
        return EXIT_DOMAIN
    text = canonical_json(report) + "\n"
    out.write(text)
    if getattr(args, "json", None):
        with open(args.json, "w") as fh:
            fh.write(text)
    return EXIT_OK if report.get("ok", True) else EXIT_FAIL


def main() -> None:
    sys.exit(run())
