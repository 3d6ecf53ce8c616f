"""Command-line entry point.  Every command prints (or writes) deterministic JSON."""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import curves
from . import delpezzo as dp
from . import linalg as la
from . import vthreefold as vt
from .errors import BadPrimeError, MorinError
from .poly import MultiPoly, NotASquare, det_poly, poly_sqrt

EXIT_OK, EXIT_PRECONDITION, EXIT_INCOMPLETE, EXIT_FAIL = 0, 2, 3, 4
VERDICT_EXIT = {"morin": EXIT_OK, "incident-but-incomplete": EXIT_INCOMPLETE, "fail": EXIT_FAIL}


@dataclass
class RunConfig:
    command: str
    inputs: dict = field(default_factory=dict)
    primes: tuple[int, ...] = vt.DEFAULT_PRIMES
    lift_height: int = 10000
    tile: int = 256
    budget: int = 8
    output: str | None = None
    seed: int = 0
    quiet: bool = False


def parse_primes(text: str) -> tuple[int, ...]:
    try:
        primes = tuple(int(p) for p in text.split(",") if p.strip())
    except ValueError as exc:
        raise BadPrimeError(f"malformed prime list {text!r}") from exc
    if not primes:
        raise BadPrimeError("empty prime list")
    for p in primes:
        if p < 31 or not la.is_prime(p):
            raise BadPrimeError(f"{p} is not a prime >= 31")
    return primes


def parse_points(text: str) -> list[tuple[Fraction, ...]]:
    pts = [tuple(Fraction(a) for a in chunk.split(",")) for chunk in text.split(";") if chunk.strip()]
    if len(pts) != 4 or any(len(p) != 3 for p in pts):
        raise MorinError("expected four points of P^2 as 'a,b,c;a,b,c;a,b,c;a,b,c'")
    return pts


def _load(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# commands


def cmd_delpezzo(cfg: RunConfig) -> tuple[dict, int]:
    pts = cfg.inputs.get("points") or dp.STANDARD_BASE_POINTS
    y = dp.build_del_pezzo(pts)
    disc = dp.discriminant_check(y)
    out = dp.to_json(y, disc)
    out["counts"] = {"lines": len(out["lines"]), "pencils": len(out["pencils"])}
    return out, EXIT_OK


def _curve_from_inputs(cfg: RunConfig):
    y = dp.build_del_pezzo(dp.STANDARD_BASE_POINTS)
    extra = {}
    if cfg.inputs.get("lines"):
        return curves.curve_of_lines(y), extra
    if cfg.inputs.get("smooth_path"):
        path = [v.strip() for v in cfg.inputs["smooth_path"].split(",") if v.strip()]
        curve, rep = curves.partial_smoothing(y, path, budget=cfg.budget)
        extra["smoothing"] = rep.to_json()
        return curve, extra
    data = _load(cfg.inputs["from_sextic"])
    if "base_points" in data:
        y = dp.build_del_pezzo([[Fraction(a) for a in p] for p in data["base_points"]])
    gamma = MultiPoly.from_json(data["gamma"])
    nodes = [tuple(Fraction(a) for a in p) for p in data.get("nodes", [])]
    return curves.nodal_curve_from_sextic(y, gamma, plane_nodes=nodes), extra


def cmd_config(cfg: RunConfig) -> tuple[dict, int]:
    curve, extra = _curve_from_inputs(cfg)
    conf = curves.build_configuration(curve)
    rep = curves.verify_morin(conf, cfg.primes, lift_height=cfg.lift_height, tile=cfg.tile)
    g, n, c, total = curve.genus_identity()
    out = {
        "configuration": conf.to_json(),
        "verification": rep.to_json(),
        "curve": curve.to_json(),
        "genus_identity": {"sum_genera": g, "nodes": n, "components": c, "value": total},
        **extra,
    }
    return out, VERDICT_EXIT[rep.verdict]


def _form_from_inputs(cfg: RunConfig):
    meta: dict = {}
    if cfg.inputs.get("vram"):
        return vt.vram(), [], meta
    if cfg.inputs.get("from_config"):
        data = _load(cfg.inputs["from_config"])
        data = data.get("configuration", data)
        conf = curves.MorinConfiguration.from_json(data)
        marked = cfg.inputs.get("marked")
        order = [marked] if marked is not None else [k for k, lab in enumerate(conf.labels) if lab == "h5"]
        order += [k for k in range(len(conf)) if k not in order]
        last = None
        for idx in order:
            try:
                form, tang = curves.marked_form(conf, idx)
            except MorinError as exc:
                last = exc
                continue
            meta.update({"configuration_length": len(conf), "marked_index": idx})
            return form, tang, meta
        raise MorinError(f"no plane gives a valid marking: {last}")
    data = _load(cfg.inputs["coeffs"])
    try:
        if "vector" in data:
            if len(data["vector"]) != len(vt.BASIS22):
                raise MorinError(f"expected {len(vt.BASIS22)} coefficients")
            return vt.BidegreeForm22.from_vector([Fraction(a) for a in data["vector"]]), [], meta
        return vt.BidegreeForm22.from_json(data), [], meta
    except (KeyError, TypeError, ValueError) as exc:
        raise MorinError(f"malformed coefficients: {exc}") from exc


def cmd_vthreefold(cfg: RunConfig) -> tuple[dict, int]:
    from . import igusa

    v, cands, meta = _form_from_inputs(cfg)
    loc = vt.singular_locus(v, cfg.primes, candidates=cands, lift_height=cfg.lift_height, tile=cfg.tile)
    inv = vt.planes_in(v, cfg.primes)
    out = {
        "form": v.to_json(),
        "singular": loc.to_json(),
        "singular_count": len(loc.rational),
        "tangential_count": sum(1 for r in loc.rational if r.tangential),
        "consistent": loc.consistent,
        "planes": inv.to_json(),
        "branch_sextic": {"x": vt.branch_sextic(v, "x").to_json(), "y": vt.branch_sextic(v, "y").to_json()},
        **meta,
    }
    if cfg.inputs.get("igusa"):
        rep = igusa.phi_and_igusa(v, samples=cfg.inputs.get("samples", 60), seed=cfg.seed)
        out["igusa"] = rep.to_json()
    return out, EXIT_OK


def cmd_graph(cfg: RunConfig) -> tuple[dict, int]:
    from .highergenus import higher_genus_family

    return higher_genus_family(cfg.inputs.get("k", 4), seed=cfg.seed).to_json(), EXIT_OK


def cmd_algebra(cfg: RunConfig) -> tuple[dict, int]:
    from .reconstruct import check_IC23, reconstruct_from_sextic, ten_nodal_sextic

    out: dict = {}
    if cfg.inputs.get("sqrt"):
        p = MultiPoly.from_json(_load(cfg.inputs["sqrt"]))
        try:
            q = poly_sqrt(p)
            out["sqrt"] = q.to_json()
        except NotASquare:
            out["sqrt"] = None
    if cfg.inputs.get("det"):
        rows = [[MultiPoly.from_json(e) for e in row] for row in _load(cfg.inputs["det"])]
        out["det"] = det_poly(rows).to_json()
    if cfg.inputs.get("ten_nodal"):
        ten = ten_nodal_sextic(seed=cfg.seed)
        out["ten_nodal"] = ten.to_json()
        if cfg.inputs.get("reconstruct"):
            rec = reconstruct_from_sextic(ten.gamma)
            out["reconstruction"] = {**rec.to_json(), **check_IC23(rec)}
    return out, EXIT_OK


COMMANDS = {
    "delpezzo": cmd_delpezzo,
    "config": cmd_config,
    "vthreefold": cmd_vthreefold,
    "graph": cmd_graph,
    "algebra": cmd_algebra,
}


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--primes", default=",".join(str(p) for p in vt.DEFAULT_PRIMES))
    common.add_argument("--json", dest="output", metavar="PATH", help="write JSON here instead of stdout")
    common.add_argument("--quiet", action="store_true")
    common.add_argument("--lift-height", type=int, default=10000)
    common.add_argument("--tile", type=int, default=256)
    common.add_argument("--budget", type=int, default=8, help="grid bound for partial smoothings")

    parser = argparse.ArgumentParser(prog="morin", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("delpezzo", parents=[common], help="lines, conic pencils, nets and the discriminant")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--standard", action="store_true")
    g.add_argument("--points", help="four plane points 'a,b,c;...'")

    p = sub.add_parser("config", parents=[common], help="build and verify a configuration")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--lines", action="store_true", help="the curve of the ten lines")
    g.add_argument("--smooth-path", help="comma-separated vertices, e.g. L12,E1")
    g.add_argument("--from-sextic", metavar="FILE")

    p = sub.add_parser("vthreefold", parents=[common], help="singular locus, planes and branch sextics")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--vram", action="store_true")
    g.add_argument("--from-config", metavar="FILE")
    g.add_argument("--coeffs", metavar="FILE")
    p.add_argument("--marked", type=int)
    p.add_argument("--igusa", action="store_true")
    p.add_argument("--samples", type=int, default=60)

    p = sub.add_parser("graph", parents=[common], help="higher-genus graph curves")
    p.add_argument("--k", type=int, default=4)

    p = sub.add_parser("algebra", parents=[common], help="square roots, determinants, ten-nodal sextics")
    p.add_argument("--sqrt", metavar="FILE")
    p.add_argument("--det", metavar="FILE")
    p.add_argument("--ten-nodal", action="store_true")
    p.add_argument("--reconstruct", action="store_true")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    skip = {"command", "seed", "primes", "output", "quiet", "lift_height", "tile", "budget"}
    inputs = {k: v for k, v in vars(args).items() if k not in skip}
    if args.command == "delpezzo" and inputs.get("points"):
        inputs["points"] = parse_points(inputs["points"])
    return RunConfig(
        command=args.command,
        inputs=inputs,
        primes=parse_primes(args.primes),
        lift_height=args.lift_height,
        tile=args.tile,
        budget=args.budget,
        output=args.output,
        seed=args.seed,
        quiet=args.quiet,
    )


def run(cfg: RunConfig) -> tuple[dict, int]:
    random.seed(cfg.seed)
    return COMMANDS[cfg.command](cfg)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        out, code = run(cfg)
    except (MorinError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    text = dumps(out)
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
        if not cfg.quiet:
            verdict = out.get("verification", {}).get("verdict")
            print(f"{cfg.command}: wrote {cfg.output}" + (f" (verdict {verdict})" if verdict else ""))
    elif not cfg.quiet:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
