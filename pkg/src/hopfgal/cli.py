"""Command-line driver: verification, fiber reports, scans, twists.

Reports are written to standard output (JSON by default, CSV for tabular
results on request); diagnostics go to standard error.  Exit codes:
0 success, 1 a mathematical verification failed, 2 malformed input.

File formats are the JSON schemas of the owning modules: restricted Lie
algebras and Hopf algebras use their to_json layout, cocycles embed their
Hopf algebra and target ring, and a splitting file has the keys
"alg", "hopf", "coaction", "gamma".
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import _arrays as ar
from . import fdalg, resliealg
from .errors import HopfgalError, NoOneDimRep
from .exactfield import Field
from .fdalg import SCAlgebra, form_is_symmetric, form_rank
from .galois import (
    ComoduleAlgebra,
    Cocycle,
    Splitting,
    cocycle_verify,
    find_one_dim_rep,
    frobenius_form,
    is_equivariant_splitting,
    twisted_product,
    winding_iso,
)
from .hopf import HopfAlgebra, hopf_verify, left_integral_dual
from .resliealg import (
    Fiber,
    FiberPoint,
    RestrictedLie,
    chi_convention,
    restricted_verify,
)
from . import speclab


@dataclass
class Config:
    eq3_convention: str = "paper"       # or "standard"
    seed: int = 0
    dim_cap: int = 512
    output: str = "json"                # or "csv"
    splitting_degree_cap: int = 12

    @classmethod
    def load(cls, path: str | None) -> "Config":
        cfg = cls()
        if path is not None:
            with open(path) as fh:
                data = json.load(fh)
            for key, value in data.items():
                name = key.replace("-", "_")
                if not hasattr(cfg, name):
                    raise ValueError(f"unknown config key {key!r}")
                setattr(cfg, name, value)
        if "HOPFGAL_SEED" in os.environ:
            cfg.seed = int(os.environ["HOPFGAL_SEED"])
        if cfg.eq3_convention not in ("paper", "standard"):
            raise ValueError(
                f"eq3_convention must be paper or standard, "
                f"got {cfg.eq3_convention!r}")
        if cfg.output not in ("json", "csv"):
            raise ValueError(f"output must be json or csv, got {cfg.output!r}")
        return cfg

    def apply_caps(self):
        fdalg.DIM_CAP = self.dim_cap
        resliealg.DIM_CAP = self.dim_cap
        fdalg.SPLITTING_DEGREE_CAP = self.splitting_degree_cap


def _emit(obj):
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=False) + "\n")


def _load_json(path: str, what: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SystemExit(_fail2(f"cannot read {what} from {path}: {exc}"))


def _fail2(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return 2


def _parse_field(text: str) -> Field:
    try:
        if "^" in text:
            p, k = text.split("^", 1)
            return Field(int(p), int(k))
        return Field(int(text))
    except (ValueError, HopfgalError) as exc:
        raise SystemExit(_fail2(f"bad field specification {text!r}: {exc}"))


def _parse_lambda(text: str, field: Field):
    """Comma-separated coordinates; each is an integer or a colon-joined
    coefficient vector over the prime field."""
    values = []
    for part in text.split(","):
        part = part.strip()
        try:
            if ":" in part:
                values.append(field.scalar(tuple(int(c)
                                                 for c in part.split(":"))))
            else:
                values.append(field.scalar(int(part)))
        except (ValueError, HopfgalError) as exc:
            raise SystemExit(
                _fail2(f"bad lambda coordinate {part!r}: {exc}"))
    return values


def _load_lie(path: str | None) -> RestrictedLie:
    data = _load_json(path if path is not None else "-", "Lie algebra")
    try:
        L = RestrictedLie.from_json(data)
    except (KeyError, ValueError, TypeError, HopfgalError) as exc:
        raise SystemExit(_fail2(f"bad Lie algebra description: {exc}"))
    return L


def _fiber_point(args, L: RestrictedLie):
    field = _parse_field(args.field) if args.field else Field(L.p)
    if field.p != L.p:
        raise SystemExit(_fail2(
            f"field characteristic {field.p} does not match p = {L.p}"))
    values = _parse_lambda(args.lam, field)
    if len(values) != L.dim:
        raise SystemExit(_fail2(
            f"lambda has {len(values)} coordinates, the Lie algebra "
            f"has dimension {L.dim}"))
    if getattr(args, "chi", False):
        return chi_convention(field, values), field
    return FiberPoint(field, tuple(values)), field


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_verify_hopf(args, cfg: Config) -> int:
    data = _load_json(args.file, "Hopf algebra")
    try:
        H = HopfAlgebra.from_json(data)
    except (KeyError, ValueError, TypeError, HopfgalError) as exc:
        return _fail2(f"bad Hopf algebra description in {args.file}: {exc}")
    issues = hopf_verify(H)
    _emit({"operation": "verify-hopf", "ok": not issues, "issues": issues})
    return 0 if not issues else 1


def cmd_verify_lie(args, cfg: Config) -> int:
    L = _load_lie(args.file)
    issues = restricted_verify(L)
    _emit({"operation": "verify-lie", "ok": not issues, "issues": issues})
    return 0 if not issues else 1


def cmd_fiber(args, cfg: Config) -> int:
    L = _load_lie(args.lie)
    point, field = _fiber_point(args, L)
    report = speclab.fiber_report(L, point)
    if cfg.output == "csv":
        _emit_csv([report])
    else:
        _emit(report.to_json())
    return 0


def _emit_csv(reports):
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(speclab.REPORT_FIELDS)
    for r in reports:
        writer.writerow(r.csv_row())
    sys.stdout.write(out.getvalue())


def cmd_scan(args, cfg: Config) -> int:
    L = _load_lie(args.lie)
    field = _parse_field(args.field)
    if field.p != L.p:
        return _fail2(f"field characteristic {field.p} does not match "
                      f"p = {L.p}")
    points = None
    if args.points:
        raw = _load_json(args.points, "point list")
        points = [tuple(field.scalar(tuple(c) if isinstance(c, list) else c)
                        for c in row) for row in raw]
    result = speclab.scan(L, field, points=points)
    if cfg.output == "csv":
        _emit_csv(result.reports)
    else:
        _emit(result.to_json())
    return 0


def cmd_twist(args, cfg: Config) -> int:
    sig = _load_cocycle(args.cocycle)
    if args.hopf:
        H = HopfAlgebra.from_json(_load_json(args.hopf, "Hopf algebra"))
        if H.dim != sig.hopf.dim or H.field != sig.hopf.field:
            return _fail2("the --hopf file does not match the cocycle's "
                          "Hopf algebra")
    ring = sig.target
    if args.ring:
        ring = SCAlgebra.from_json(_load_json(args.ring, "coefficient ring"))
        if ring.dim != sig.target.dim or ring.field != sig.target.field:
            return _fail2("the --ring file does not match the cocycle's "
                          "target ring")
    try:
        A = twisted_product(ring, sig, convention=cfg.eq3_convention)
    except HopfgalError as exc:
        print(f"twist failed: {exc}", file=sys.stderr)
        _emit({"operation": "twist", "ok": False, "reason": str(exc)})
        return 1
    _emit({"operation": "twist", "ok": True, "algebra": A.to_json()})
    return 0


def _load_cocycle(path: str) -> Cocycle:
    data = _load_json(path, "cocycle")
    try:
        return Cocycle.from_json(data)
    except (KeyError, ValueError, TypeError, HopfgalError) as exc:
        raise SystemExit(_fail2(f"bad cocycle description in {path}: {exc}"))


def cmd_cocycle_check(args, cfg: Config) -> int:
    sig = _load_cocycle(args.file)
    issues = cocycle_verify(sig, convention=cfg.eq3_convention)
    _emit({"operation": "cocycle-check", "ok": not issues,
           "convention": cfg.eq3_convention, "issues": issues})
    return 0 if not issues else 1


def cmd_equivariant_check(args, cfg: Config) -> int:
    data = _load_json(args.splitting, "splitting")
    try:
        alg = SCAlgebra.from_json(data["alg"])
        H = HopfAlgebra.from_json(data["hopf"])
        rho = ar.asarray(alg.field, data["coaction"])
        gamma = ar.asarray(alg.field, data["gamma"])
        from .hopf import LinMap
        CA = ComoduleAlgebra(alg, H, rho)
        sp = Splitting(CA, LinMap(alg.field, gamma))
    except (KeyError, ValueError, TypeError, HopfgalError) as exc:
        return _fail2(f"bad splitting description in {args.splitting}: {exc}")
    try:
        flag = is_equivariant_splitting(sp)
    except HopfgalError as exc:
        return _fail2(f"equivariant-check on {args.splitting}: {exc}")
    _emit({"operation": "equivariant-check", "equivariant": bool(flag)})
    return 0 if flag else 1


def cmd_frobenius(args, cfg: Config) -> int:
    L = _load_lie(args.lie)
    point, field = _fiber_point(args, L)
    F = Fiber(L, point)
    from .resliealg import u_restricted
    H, _ = u_restricted(L, field)
    lam = left_integral_dual(H)
    CA = ComoduleAlgebra(F.alg, H, F.binomial_tensor(), check=False)
    s = frobenius_form(CA, lam)
    rank, nondeg = form_rank(s)
    _emit({"operation": "frobenius", "dim": F.dim, "rank": rank,
           "nondegenerate": nondeg, "symmetric": form_is_symmetric(s)})
    return 0 if nondeg else 1


def cmd_winding(args, cfg: Config) -> int:
    L = _load_lie(args.lie)
    point, field = _fiber_point(args, L)
    F = Fiber(L, point)
    try:
        alpha = find_one_dim_rep(F)
        W = winding_iso(F, alpha)
    except NoOneDimRep as exc:
        print(f"winding: {exc}", file=sys.stderr)
        _emit({"operation": "winding", "one_dim_rep": False,
               "reason": str(exc)})
        return 1
    _emit({"operation": "winding", "one_dim_rep": True,
           "alpha": [list(a.coeffs) for a in alpha],
           "matrix": W.matrix.reshape(F.dim, -1).tolist()})
    return 0


def cmd_builtin(args, cfg: Config) -> int:
    try:
        if args.name == "sl2":
            L = speclab.sl2_algebra(args.p)
        else:
            L = speclab.borel_algebra(args.p)
    except HopfgalError as exc:
        return _fail2(f"builtin {args.name} with p={args.p}: {exc}")
    _emit(L.to_json())
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="hopfgal",
        description="Exact computations with Hopf algebra extensions and "
                    "restricted Lie algebra fibers.")
    top.add_argument("--config", help="JSON configuration file")
    top.add_argument("--eq3-convention", choices=("paper", "standard"),
                     help="which twisted-product convention to use")
    top.add_argument("--output", choices=("json", "csv"),
                     help="report format")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-hopf", help="check the Hopf algebra axioms")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify_hopf)

    p = sub.add_parser("verify-lie", help="check the restricted Lie axioms")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify_lie)

    p = sub.add_parser("fiber", help="report on one reduced algebra")
    p.add_argument("--lie", help="Lie algebra file (default: stdin)")
    p.add_argument("--lambda", dest="lam", required=True,
                   help="comma-separated point coordinates")
    p.add_argument("--field", help="coefficient field, as p or p^k")
    p.add_argument("--chi", action="store_true",
                   help="interpret the coordinates through the classical "
                        "chi-parametrization")
    p.set_defaults(func=cmd_fiber)

    p = sub.add_parser("scan", help="fiber reports over many points")
    p.add_argument("--lie", help="Lie algebra file (default: stdin)")
    p.add_argument("--field", required=True, help="p or p^k")
    p.add_argument("--points", help="JSON file with a list of points")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("twist", help="build a twisted product")
    p.add_argument("--hopf", help="Hopf algebra file (consistency check)")
    p.add_argument("--cocycle", required=True)
    p.add_argument("--ring", help="coefficient ring file (consistency check)")
    p.set_defaults(func=cmd_twist)

    p = sub.add_parser("cocycle-check", help="verify the cocycle identities")
    p.add_argument("file")
    p.set_defaults(func=cmd_cocycle_check)

    p = sub.add_parser("equivariant-check",
                       help="test a splitting for equivariance")
    p.add_argument("--splitting", required=True)
    p.set_defaults(func=cmd_equivariant_check)

    p = sub.add_parser("frobenius", help="bilinear form of a fiber")
    p.add_argument("--lie", help="Lie algebra file (default: stdin)")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--field", help="p or p^k")
    p.add_argument("--chi", action="store_true")
    p.set_defaults(func=cmd_frobenius)

    p = sub.add_parser("winding", help="one-dimensional representations "
                                       "and the winding isomorphism")
    p.add_argument("--lie", help="Lie algebra file (default: stdin)")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--field", help="p or p^k")
    p.add_argument("--chi", action="store_true")
    p.set_defaults(func=cmd_winding)

    p = sub.add_parser("builtin", help="emit a built-in Lie algebra")
    p.add_argument("name", choices=("sl2", "borel"))
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_builtin)

    return top


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = Config.load(args.config)
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        return _fail2(f"bad configuration: {exc}")
    if args.eq3_convention:
        cfg.eq3_convention = args.eq3_convention
    if args.output:
        cfg.output = args.output
    cfg.apply_caps()
    try:
        return args.func(args, cfg)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    except HopfgalError as exc:
        return _fail2(f"{args.command}: {exc}")


if __name__ == "__main__":
    sys.exit(main())
