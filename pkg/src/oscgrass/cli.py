"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 a mathematical claim failed on the
instance, 3 size guard exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__
from .bounds import bound_report, comparison_sweep, flagged_cells, thm_main_bound
from .combinat import GrassSpec
from .degeneration import (
    DegenerationMode,
    build_family,
    certificates_from_json,
    verify_certificate,
    verify_limit_containment,
)
from .exact import rank
from .exact.fields import get_field
from .grassmann import osc_dim_formula, osculating_frame, random_chart
from .oscproj import ProjectionSpec, hypothesis_check, image_dimension
from .terracini import SizeGuardError, defect_sweep, reports_to_csv, secant_dim

DEFAULT_SEED = 20240601

EXIT_OK, EXIT_USAGE, EXIT_CLAIM, EXIT_GUARD = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    seed: int
    field: str
    prime: int | None
    format: str
    output: str | None
    jobs: int


def _int_list(text: str) -> list:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _spec(args) -> GrassSpec:
    try:
        return GrassSpec(args.r, args.n)
    except ValueError as exc:
        raise UsageError(str(exc))


def _field(cfg: RunConfig):
    return get_field(cfg.field, cfg.prime)


def _envelope(cfg: RunConfig, fld, result) -> dict:
    return {"command": cfg.command, "seed": cfg.seed, "field": fld.describe(), "result": result}


def _emit(cfg: RunConfig, payload, text: str | None = None, csv_text: str | None = None):
    if cfg.format == "csv" and csv_text is not None:
        out = csv_text
    elif cfg.format == "text" and text is not None:
        out = text
    else:
        out = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _kv_text(d: dict) -> str:
    width = max(len(k) for k in d)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in d.items())


# ---------------------------------------------------------------------------
# subcommands

def cmd_secant(args, cfg):
    spec, fld = _spec(args), _field(cfg)
    rep = secant_dim(spec, args.h, args.trials, cfg.seed, fld)
    _emit(cfg, _envelope(cfg, fld, rep.to_dict()), _kv_text(rep.to_dict()), reports_to_csv([rep]))
    return EXIT_OK


def cmd_sweep(args, cfg):
    fld = _field(cfg)
    reps = defect_sweep(args.r, range(args.n_min, args.n_max + 1), args.h_max, cfg.seed,
                        args.trials, fld, cfg.jobs)
    if args.standard_only:
        reps = [rep for rep in reps if rep.n >= 2 * rep.r + 1]
    payload = _envelope(cfg, fld, [rep.to_dict() for rep in reps])
    text = "".join(f"G({rep.r},{rep.n}) h={rep.h}: dim {rep.computed_dim} / expected "
                   f"{rep.expected_dim}, defect {rep.defect}\n" for rep in reps)
    _emit(cfg, payload, text, reports_to_csv(reps))
    return EXIT_OK


def cmd_oscdim(args, cfg):
    spec, fld = _spec(args), _field(cfg)
    orders = range(spec.r + 2) if args.s is None else [args.s]
    rng = np.random.default_rng(np.random.SeedSequence([cfg.seed, spec.r, spec.n]))
    rows, ok = [], True
    for p in range(args.samples):
        frame = osculating_frame(random_chart(spec, rng, fld), max(orders))
        for s in orders:
            got = rank(frame.restrict(s)) - 1
            want = osc_dim_formula(spec, s) if s <= spec.r else spec.N
            ok &= got == want
            rows.append({"sample": p, "s": s, "computed": got, "formula": want})
    _emit(cfg, _envelope(cfg, fld, {"r": spec.r, "n": spec.n, "rows": rows, "agree": ok}),
          "".join(f"sample {x['sample']} s={x['s']}: {x['computed']} (formula {x['formula']})\n"
                  for x in rows))
    return EXIT_OK if ok else EXIT_CLAIM


def cmd_oscproj(args, cfg):
    spec, fld = _spec(args), _field(cfg)
    try:
        P = ProjectionSpec.from_orders(spec, args.orders)
    except ValueError as exc:
        raise UsageError(str(exc))
    verdict = image_dimension(P, args.samples, cfg.seed, fld)
    hyp = hypothesis_check(spec, args.orders)
    result = {"r": spec.r, "n": spec.n, "orders": list(args.orders), **asdict(verdict),
              "certified_by": None if hyp is None else asdict(hyp)}
    _emit(cfg, _envelope(cfg, fld, result), _kv_text(result))
    if hyp is not None and not verdict.generically_finite:
        return EXIT_CLAIM
    return EXIT_OK


def _mode(args) -> DegenerationMode:
    if args.k is not None:
        if args.k1 is not None or args.k2 is not None:
            raise UsageError("give either --k or --k1/--k2")
        return DegenerationMode.multi_point(args.k)
    if args.k1 is None or args.k2 is None:
        raise UsageError("two-point mode needs both --k1 and --k2")
    return DegenerationMode.two_point(args.k1, args.k2)


def cmd_degenerate(args, cfg):
    spec = _spec(args)
    mode = _mode(args)
    try:
        family = build_family(spec, mode)
    except ValueError as exc:
        raise UsageError(str(exc))
    report, certs = verify_limit_containment(spec, mode, family, keep_certificates=True)
    out_path = args.out or f"certificates_r{spec.r}_n{spec.n}.json"
    docs = []
    for c in certs:
        d = c.to_dict()
        d["seed"] = cfg.seed
        docs.append(d)
    with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(json.dumps(docs, sort_keys=True, indent=2) + "\n")
    result = {**report.to_dict(), "certificate_file": out_path}
    _emit(cfg, {"command": cfg.command, "seed": cfg.seed, "field": "QQ", "result": result},
          _kv_text({k: v for k, v in result.items() if k != "failures"}))
    return EXIT_OK if report.verdict else EXIT_CLAIM


def cmd_verify_cert(args, cfg):
    with open(args.file, encoding="utf-8") as fh:
        text = fh.read()
    try:
        certs = certificates_from_json(text)
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"malformed certificate file: {exc}")
    families, results = {}, []
    for c in certs:
        key = (c.spec, c.mode)
        if key not in families:
            families[key] = build_family(c.spec, c.mode)
        results.append({"target": list(c.target), "ok": verify_certificate(c, families[key])})
    ok = all(x["ok"] for x in results)
    result = {"file": args.file, "certificates": len(results), "verified": ok,
              "failed": [x["target"] for x in results if not x["ok"]]}
    _emit(cfg, {"command": cfg.command, "seed": cfg.seed, "field": "QQ", "result": result},
          _kv_text(result))
    return EXIT_OK if ok else EXIT_CLAIM


def _table_text(rows, cols) -> str:
    widths = [max(len(str(c)), *(len(str(r[c])) for r in rows)) for c in cols]
    line = "+" + "+".join("-" * (w + 2) for w in widths) + "+\n"
    out = line + "|" + "|".join(f" {c.ljust(w)} " for c, w in zip(cols, widths)) + "|\n" + line
    for r in rows:
        out += "|" + "|".join(f" {str(r[c]).ljust(w)} " for c, w in zip(cols, widths)) + "|\n"
    return out + line


def cmd_bounds(args, cfg):
    if args.compare:
        if args.rmax is None:
            raise UsageError("--compare needs --rmax")
        cells = comparison_sweep(range(4, args.rmax + 1))
        rows = [{**asdict(c), "seed": cfg.seed, "field": "ZZ"} for c in cells]
        buf = io.StringIO()
        cols = ["r", "n", "a", "a_prime", "a_doubleprime", "b", "a_gt_b", "small_gt_b",
                "seed", "field"]
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: ("" if r[k] is None else r[k]) for k in cols})
        flags = {k: [list(x) for x in v] for k, v in flagged_cells(cells).items()}
        cfg.format = cfg.format if cfg.format != "json" or args.format_given else "csv"
        _emit(cfg, {"command": cfg.command, "seed": cfg.seed, "field": "ZZ",
                    "result": {"cells": rows, "flags": flags}},
              _table_text(rows, cols[:8]), buf.getvalue())
        return EXIT_OK
    if args.r is None or args.n is None:
        raise UsageError("bounds needs --r and --n (or --compare --rmax)")
    spec = _spec(args)
    try:
        rep = bound_report(spec)
    except ValueError as exc:
        raise UsageError(str(exc))
    d = rep.to_dict()
    text = _table_text([{"r": spec.r, "r^2+3r+1": spec.r**2 + 3 * spec.r + 1, "n": spec.n,
                         "h_thm+1": rep.h_thm + 1, "h_cor": rep.h_cor, "h_aop": rep.h_aop}],
                       ["r", "r^2+3r+1", "n", "h_thm+1", "h_cor", "h_aop"])
    _emit(cfg, {"command": cfg.command, "seed": cfg.seed, "field": "ZZ", "result": d}, text,
          reports_csv_line(d))
    return EXIT_OK


def reports_csv_line(d: dict) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(d), lineterminator="\n")
    w.writeheader()
    w.writerow({k: ("" if v is None else v) for k, v in d.items()})
    return buf.getvalue()


def cmd_compare(args, cfg):
    """Secant defects at every h the bound certifies non-defective."""
    spec, fld = _spec(args), _field(cfg)
    try:
        top = thm_main_bound(spec) + 1
    except ValueError as exc:
        raise UsageError(str(exc))
    if args.h_max is not None:
        top = min(top, args.h_max)
    rows, ok = [], True
    try:
        for h in range(1, top + 1):
            rep = secant_dim(spec, h, args.trials, cfg.seed, fld)
            rows.append({"h": h, "certified": True, "defect": rep.defect})
            ok &= rep.defect == 0
    except SizeGuardError as exc:
        rows.append({"h": h, "certified": True, "defect": None, "error": str(exc)})
    result = {"r": spec.r, "n": spec.n, "h_thm": top - 1, "rows": rows, "consistent": ok}
    _emit(cfg, _envelope(cfg, fld, result),
          "".join(f"h={x['h']}: defect {x['defect']}\n" for x in rows))
    return EXIT_OK if ok else EXIT_CLAIM


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--field", choices=["fp", "qq"], default="fp")
    common.add_argument("--prime", type=int, default=None)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--format", choices=["json", "csv", "text"], default=None)
    common.add_argument("--output", default=None, help="write the report here instead of stdout")

    p = _Parser(prog="oscgrass", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def rn(sp, required=True):
        sp.add_argument("--r", type=int, required=required)
        sp.add_argument("--n", type=int, required=required)

    s = sub.add_parser("secant", parents=[common], help="secant dimension via Terracini")
    rn(s)
    s.add_argument("--h", type=int, required=True)
    s.add_argument("--trials", type=int, default=3)
    s.set_defaults(func=cmd_secant)

    s = sub.add_parser("sweep", parents=[common], help="defect table over a grid")
    s.add_argument("--r", type=_int_list, required=True, help="comma-separated r values")
    s.add_argument("--n-min", type=int, default=3)
    s.add_argument("--n-max", type=int, required=True)
    s.add_argument("--h-max", type=int, required=True)
    s.add_argument("--trials", type=int, default=3)
    s.add_argument("--standard-only", action="store_true", help="keep only n >= 2r+1")
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("oscdim", parents=[common], help="osculating dimensions vs formula")
    rn(s)
    s.add_argument("--s", type=int, default=None)
    s.add_argument("--samples", type=int, default=3)
    s.set_defaults(func=cmd_oscdim)

    s = sub.add_parser("oscproj", parents=[common], help="image dimension of an osculating projection")
    rn(s)
    s.add_argument("--orders", type=_int_list, required=True)
    s.add_argument("--samples", type=int, default=3)
    s.set_defaults(func=cmd_oscproj)

    s = sub.add_parser("degenerate", parents=[common], help="flat-limit certificates")
    rn(s)
    s.add_argument("--k1", type=int)
    s.add_argument("--k2", type=int)
    s.add_argument("--k", type=int, help="multi-point mode")
    s.add_argument("--out", default=None, help="certificate file")
    s.set_defaults(func=cmd_degenerate)

    s = sub.add_parser("verify-cert", parents=[common], help="re-verify a certificate file")
    s.add_argument("file")
    s.set_defaults(func=cmd_verify_cert)

    s = sub.add_parser("bounds", parents=[common], help="defectivity bounds")
    rn(s, required=False)
    s.add_argument("--compare", action="store_true")
    s.add_argument("--rmax", type=int)
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("compare", parents=[common], help="bounds vs measured defects")
    rn(s)
    s.add_argument("--h-max", type=int, default=None)
    s.add_argument("--trials", type=int, default=3)
    s.set_defaults(func=cmd_compare)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.format_given = args.format is not None
    cfg = RunConfig(args.command, args.seed, args.field, args.prime, args.format or "json",
                    args.output, args.jobs)
    try:
        return args.func(args, cfg)
    except UsageError as exc:
        print(f"oscgrass {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SizeGuardError as exc:
        print(f"oscgrass {args.command}: size guard: {exc}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
