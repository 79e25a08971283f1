"""Command line: levels, model, points, heegner, incidence, report, verify.

JSON output is canonical (sorted keys, fixed separators, trailing newline)
so a fixed configuration and fixture set give byte-identical files.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from . import arith, claims, heegner, incidence, ingest, model as model_mod, points

log = logging.getLogger("x0plus")

DEFAULT_BOUNDS = {3: 250, 4: 320}
SCHEMA_VERSION = 1


@dataclass(frozen=True)
class RunConfig:
    level: int | None = None
    data_dir: Path | None = None
    height: int = 100
    terms: int = heegner.DEFAULT_TERMS
    tol: float = heegner.DEFAULT_TOL
    output: Path | None = None
    format: str = "text"
    workers: int = 1
    sweep: bool = False


class PipelineError(RuntimeError):
    def __init__(self, module: str, operation: str, hint: str, cause: BaseException):
        super().__init__(f"{module}.{operation}: {cause}")
        self.module, self.operation, self.hint, self.cause = module, operation, hint, cause


HINTS = {
    ("ingest", "load_basis"): "check --data-dir / X0PLUS_DATA_DIR, or regenerate with tools/make_fixtures.py",
    ("model", "build_model"): "the fixture may be too short or not a basis of S2+; regenerate it",
    ("model", "verify_model"): "the relations do not hold to the Sturm bound; the fixture is inconsistent",
    ("points", "search"): "lower --height",
    ("heegner", "label_points"): "raise --terms (bounded by the fixture precision) or loosen --tol",
    ("incidence", "reports"): "a subspace met the model in a component; inspect the model",
    ("incidence", "configuration"): "internal error in exact kernel computations",
}


def stage(module: str, operation: str, fn: Callable, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except PipelineError:
        raise
    except Exception as exc:  # surfaced with context, never swallowed
        raise PipelineError(module, operation, HINTS.get((module, operation), ""), exc) from exc


# ------------------------------------------------------------------ serialization


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def _label_json(lab):
    return lab if isinstance(lab, (int, str)) or lab is None else str(lab)


def divisor_json(div, labels) -> list:
    out = []
    for e in div.entries:
        item = {"kind": e.kind, "multiplicity": e.multiplicity, "degree": e.degree}
        if e.kind == "rational":
            item["point"] = list(e.point)
            item["label"] = _label_json(labels.get(e.point))
        else:
            item["minpoly"] = list(e.minpoly)
            if e.discriminant is not None:
                item["discriminant"] = e.discriminant
        out.append(item)
    return out


def report_json(r, labels) -> dict:
    return {
        "span": [list(row) for row in r.subspace.span],
        "normal": list(r.normal),
        "origin": r.origin,
        "fully_rational": r.fully_rational,
        "divisor": divisor_json(r.divisor, labels),
        "rendered": incidence.render_report(r, labels),
    }


def configuration_json(conf) -> dict:
    return {
        "collinear": [{"span": [list(x) for x in L.span], "points": [list(p) for p in on],
                       "labels": [_label_json(x) for x in labs]}
                      for L, on, labs in conf.collinear_triples],
        "common_points": [{"members": list(c["members"]), "point": list(c["point"]),
                           "label": _label_json(c["label"])} for c in conf.common_points],
        "containments": [list(c) for c in conf.containments],
    }


def linear_text(normal, names) -> str:
    terms = []
    for c, v in zip(normal, names):
        if c:
            mag = "" if abs(c) == 1 else str(abs(c))
            terms.append(("- " if c < 0 else "+ ") + mag + v)
    text = " ".join(terms)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def _pt(p) -> str:
    return "[" + ":".join(map(str, p)) + "]"


VARIABLES = {3: ("X", "Y", "Z"), 4: ("W", "X", "Y", "Z")}


# ------------------------------------------------------------------ pipeline


@dataclass
class PipelineResult:
    cfg: RunConfig
    basis: object = None
    model: object = None
    verified: bool | None = None
    points: list | None = None
    labels: object = None
    reports: list | None = None
    lines: list | None = None
    configuration: object = None
    sweep: list | None = None


def _load(cfg: RunConfig):
    N = cfg.level
    if not arith.is_prime(N):
        raise PipelineError("arith", "genus_plus", "levels must be prime", ValueError(f"{N} is not prime"))
    return stage("ingest", "load_basis", ingest.load_level, N, cfg.data_dir)


def run_pipeline(cfg: RunConfig, upto: str = "report") -> PipelineResult:
    order = ["model", "points", "heegner", "incidence", "report"]
    stop = order.index(upto)
    res = PipelineResult(cfg)
    res.basis = _load(cfg)
    res.model = stage("model", "build_model", model_mod.build_model, res.basis)
    res.verified = stage("model", "verify_model", model_mod.verify_model, res.model, res.basis)
    if not res.verified:
        raise PipelineError("model", "verify_model", HINTS[("model", "verify_model")],
                            AssertionError("relations fail below the Sturm bound"))
    if stop < 1:
        return res
    res.points = stage("points", "search", points.search, res.model, cfg.height, cfg.workers)
    if stop < 2:
        return res
    res.labels = stage("heegner", "label_points", heegner.label_points, cfg.level, res.basis, res.model,
                       res.points, cfg.terms, cfg.tol)
    if stop < 3:
        return res
    labels = res.labels.labels
    res.reports = stage("incidence", "reports", incidence.incidence_reports, res.model, res.points, labels,
                        cfg.workers)
    res.lines = stage("incidence", "collinear_subsets", incidence.collinear_subsets, res.points) \
        if len(res.points) >= 3 else []
    res.configuration = stage("incidence", "configuration", incidence.configuration, res.reports, res.lines,
                              labels)
    if cfg.sweep:
        res.sweep = stage("incidence", "sweep", incidence.sweep, res.model, incidence.SWEEP_BOUND, cfg.workers)
    return res


# ------------------------------------------------------------------ output builders


def model_payload(res: PipelineResult) -> dict:
    m = res.model
    names = VARIABLES[m.gPlus]
    return {
        "N": m.N, "gPlus": m.gPlus, "variables": list(names),
        "equations": [p.to_string(names) for p in m.polys],
        "model": m.to_json(),
        # a degree-d relation among weight-2 forms is a weight-2d form
        "verified_to": arith.sturm_bound(m.N, 2 * max(p.degree for p in m.polys)),
        "verified": res.verified,
    }


def points_payload(res: PipelineResult) -> dict:
    return {"N": res.cfg.level, "height": res.cfg.height, "points": [list(p) for p in res.points]}


def labels_payload(res: PipelineResult) -> dict:
    lab = res.labels
    return {
        "N": res.cfg.level, "terms": res.cfg.terms, "tol": res.cfg.tol,
        "labels": [{"point": list(p), "label": _label_json(v)} for p, v in sorted(lab.labels.items())],
        "margins": {str(k): lab.margins[k] for k in sorted(lab.margins)},
        "terms_used": {str(k): lab.terms_used[k] for k in sorted(lab.terms_used)},
        "diagnostics": list(lab.diagnostics),
    }


def incidence_payload(res: PipelineResult) -> dict:
    labels = res.labels.labels
    reps = sorted(res.reports, key=lambda r: (not r.fully_rational, r.normal))
    out = {
        "N": res.cfg.level,
        "kind": "lines" if res.model.gPlus == 3 else "planes",
        "candidates": len(reps),
        "fully_rational": [report_json(r, labels) for r in reps if r.fully_rational],
        "other": [report_json(r, labels) for r in reps if not r.fully_rational],
        "configuration": configuration_json(res.configuration),
    }
    if res.sweep is not None:
        out["sweep"] = {"bound": incidence.SWEEP_BOUND,
                        "fully_rational_normals": [list(r.normal) for r in res.sweep]}
    return out


def report_payload(res: PipelineResult) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "N": res.cfg.level,
        "model": model_payload(res),
        "points": points_payload(res)["points"],
        "heegner": labels_payload(res),
        "incidence": incidence_payload(res),
    }


# ------------------------------------------------------------------ text renderers


def model_text(res) -> list[str]:
    m = res.model
    names = VARIABLES[m.gPlus]
    lines = [f"X0+({m.N}): genus {m.gPlus}, canonical model in P^{m.gPlus - 1} ({', '.join(names)})"]
    lines += [f"  {p.to_string(names)} = 0" for p in m.polys]
    lines.append(f"  relations verified to the Sturm bound: {'yes' if res.verified else 'NO'}")
    return lines


def points_text(res) -> list[str]:
    return [f"{len(res.points)} rational points of height <= {res.cfg.height}:"] + \
        [f"  {_pt(p)}" for p in res.points]


def labels_text(res) -> list[str]:
    lab = res.labels
    out = ["   D  point"]
    for p, v in sorted(lab.labels.items(), key=lambda kv: (not isinstance(kv[1], int),
                                                           -kv[1] if isinstance(kv[1], int) else 0, kv[0])):
        out.append(f"{str(v):>4}  {_pt(p)}" if isinstance(v, int) else f"  {v}  {_pt(p)}")
    if lab.margins:
        out.append(f"  min second-nearest margin: {min(lab.margins.values()):.3g}")
    out += [f"  note: {d}" for d in lab.diagnostics]
    return out


def incidence_text(res) -> list[str]:
    labels = res.labels.labels
    kind = "line" if res.model.gPlus == 3 else "plane"
    full = sorted((r for r in res.reports if r.fully_rational), key=lambda r: r.normal)
    out = [f"{len(full)} fully-rational {kind}s among {len(res.reports)} candidates:"]
    names = VARIABLES[res.model.gPlus]
    for r in full:
        out.append(f"  {linear_text(r.normal, names)} = 0   ({r.origin}):  {incidence.render_report(r, labels)}")
    # not fully rational, yet holding more rational points than a generic span
    rich = [r for r in res.reports if not r.fully_rational
            and len(r.divisor.rational_points()) > r.subspace.k
            and not any(r.subspace.contains_subspace(L) for L, _ in res.lines or [])]
    if rich:
        out.append(f"partially rational {kind}s with more than {res.model.gPlus - 1} rational points:")
    for r in sorted(rich, key=lambda r: r.normal):
        out.append(f"  {linear_text(r.normal, names)} = 0:  {incidence.render_report(r, labels)}")
    conf = res.configuration
    if conf.collinear_triples:
        out.append("collinear subsets:")
        for L, on, labs in conf.collinear_triples:
            out.append("  {" + ", ".join(str(x) if x is not None else _pt(p) for p, x in zip(on, labs)) + "}")
    if conf.common_points:
        out.append("common points:")
        for c in conf.common_points:
            lab = c["label"]
            out.append(f"  {' & '.join(c['members'])}: {_pt(c['point'])}" + (f" = ({lab})" if lab is not None else ""))
    if conf.containments:
        out.append("containments: " + ", ".join(f"{a} in {b}" for a, b in conf.containments))
    if res.sweep is not None:
        out.append(f"sweep |normal| <= {incidence.SWEEP_BOUND}: {len(res.sweep)} fully-rational "
                   f"{kind}s: " + ", ".join(str(r.normal) for r in res.sweep))
    return out


# ------------------------------------------------------------------ commands


def _emit(cfg: RunConfig, payload: dict, text_lines: list[str]):
    data = dumps(payload) if cfg.format == "json" else "\n".join(text_lines) + "\n"
    if cfg.output:
        Path(cfg.output).write_text(data)
    else:
        sys.stdout.write(data)


def cmd_levels(args, cfg) -> int:
    genera = [args.genus] if args.genus else [3, 4]
    payload = {}
    lines = []
    for g in genera:
        bound = args.bound or DEFAULT_BOUNDS[g]
        lv = arith.enumerate_levels(g, bound)
        payload[str(g)] = {"bound": bound, "levels": lv}
        lines.append(f"genus {g}, N <= {bound}: {' '.join(map(str, lv))}")
    _emit(cfg, payload, lines)
    return 0


def cmd_stage(args, cfg) -> int:
    res = run_pipeline(cfg, args.command)
    builders = {
        "model": (model_payload, [model_text]),
        "points": (points_payload, [points_text]),
        "heegner": (labels_payload, [labels_text]),
        "incidence": (incidence_payload, [incidence_text]),
        "report": (report_payload, [model_text, points_text, labels_text, incidence_text]),
    }
    payload_fn, text_fns = builders[args.command]
    lines = []
    for fn in text_fns:
        lines += fn(res) + [""]
    _emit(cfg, payload_fn(res), lines[:-1])
    return 0


def cmd_verify(args, cfg) -> int:
    if args.paper_137:
        checks = claims.reference_checks(cfg.data_dir, with_fixture=not args.no_fixture)
        payload = {"checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks],
                   "passed": all(c.passed for c in checks)}
        _emit(cfg, payload, [c.line() for c in checks] +
              [f"{sum(c.passed for c in checks)}/{len(checks)} checks passed"])
        return 0 if payload["passed"] else 1
    if cfg.level is None:
        raise SystemExit("verify needs a level or --paper-137")
    basis = _load(cfg)
    fricke = stage("ingest", "fricke_check", ingest.fricke_check, basis)
    m = stage("model", "build_model", model_mod.build_model, basis)
    ok = stage("model", "verify_model", model_mod.verify_model, m, basis)
    fr_ok = all(r.status == "pass" for r in fricke)
    payload = {"N": cfg.level, "fricke": [r.status for r in fricke], "model_verified": ok,
               "passed": ok and fr_ok}
    _emit(cfg, payload, [f"fricke check: {', '.join(r.status for r in fricke)}",
                         f"model relations hold to the Sturm bound: {'yes' if ok else 'NO'}"])
    return 0 if payload["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--data-dir", type=Path, default=None,
                        help="fixture directory (default: $X0PLUS_DATA_DIR or the bundled data)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--output", "-o", type=Path, default=None, help="write to a file instead of stdout")
    common.add_argument("--workers", type=int, default=1, help="parallel workers for search/incidence")
    common.add_argument("-v", "--verbose", action="count", default=0)

    level = argparse.ArgumentParser(add_help=False)
    level.add_argument("level", type=int, help="prime level N")

    search = argparse.ArgumentParser(add_help=False)
    search.add_argument("--height", type=int, default=100)

    cm = argparse.ArgumentParser(add_help=False)
    cm.add_argument("--terms", type=int, default=heegner.DEFAULT_TERMS)
    cm.add_argument("--tol", type=float, default=heegner.DEFAULT_TOL)

    ap = argparse.ArgumentParser(prog="x0plus", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("levels", parents=[common], help="prime levels with quotient genus 3 or 4")
    p.add_argument("--genus", type=int, choices=(3, 4))
    p.add_argument("--bound", type=int)
    sub.add_parser("model", parents=[common, level], help="canonical model from the fixture")
    sub.add_parser("points", parents=[common, level, search], help="rational point search")
    sub.add_parser("heegner", parents=[common, level, search, cm], help="CM labels of rational points")
    for name, helptext in (("incidence", "fully-rational lines/planes and configuration"),
                           ("report", "full pipeline report")):
        p = sub.add_parser(name, parents=[common, level, search, cm], help=helptext)
        p.add_argument("--sweep", action="store_true",
                       help=f"also sweep all hyperplanes with |normal coefficient| <= {incidence.SWEEP_BOUND}")
    p = sub.add_parser("verify", parents=[common], help="check a fixture, or the N=137 reference claims")
    p.add_argument("level", type=int, nargs="?")
    p.add_argument("--paper-137", action="store_true", help="check the reference N=137 geometry")
    p.add_argument("--no-fixture", action="store_true", help="with --paper-137: skip the q-expansion checks")
    return ap


def config_from(args) -> RunConfig:
    data_dir = args.data_dir or (Path(os.environ["X0PLUS_DATA_DIR"]) if os.environ.get("X0PLUS_DATA_DIR") else None)
    return RunConfig(level=getattr(args, "level", None), data_dir=data_dir,
                     height=getattr(args, "height", 100), terms=getattr(args, "terms", heegner.DEFAULT_TERMS),
                     tol=getattr(args, "tol", heegner.DEFAULT_TOL), output=args.output, format=args.format,
                     workers=args.workers, sweep=getattr(args, "sweep", False))


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")
    cfg = config_from(args)
    try:
        if args.command == "levels":
            return cmd_levels(args, cfg)
        if args.command == "verify":
            return cmd_verify(args, cfg)
        return cmd_stage(args, cfg)
    except PipelineError as exc:
        print(f"error in {exc.module}.{exc.operation}: {exc.cause}", file=sys.stderr)
        if exc.hint:
            print(f"hint: {exc.hint}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
