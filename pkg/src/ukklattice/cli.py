"""Batch command-line front-end.

Subcommands: ``space-check`` (norm axiom audit), ``estimate`` (constant
pipeline), ``renorm`` (decomposition values for listed or sampled
vectors), ``ukk`` (trial campaign).  All randomness is seeded from the
config (or ``--seed``); identical config + seed gives byte-identical
output.  ``--threads`` is accepted for interface compatibility but
execution is sequential, which keeps output order deterministic.

Exit codes: 0 = checks passed (a hypothesis-failure report is a valid
scientific outcome, still 0); 1 = an inequality violation was detected;
2 = usage or configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from .config import ConfigError, load_config, parse_norm_spec, require
from .estimates import run_estimate_pipeline, verify_lower_r_estimate
from .norms import audit_norm_axioms
from .renorm import (
    EXACT_THRESHOLD,
    LocalSearchConfig,
    SupportTooLarge,
    renorm,
    renorm_exact,
    renorm_heuristic,
)
from .sampling import random_vector
from .ukk import run_bump_campaign
from .vectors import DimensionMismatch, LatticeVector

__all__ = ["main"]

SCHEMA_VERSION = 1


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)


def _write(out_dir: str | None, name: str, text: str) -> None:
    if out_dir is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
        return
    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, name), "w", encoding="utf-8", newline="\n") as f:
        f.write(text)


def _resolve_seed(args, cfg: dict | None) -> int:
    if args.seed is not None:
        return args.seed
    if cfg is not None and "seed" in cfg:
        seed = cfg["seed"]
        if not isinstance(seed, int) or isinstance(seed, bool) or seed < 0:
            raise ConfigError("config.seed", f"seed must be a nonnegative integer, got {seed!r}")
        return seed
    raise ConfigError("config.seed", "a seed is mandatory (config field or --seed); wall-clock seeding is not supported")


def _add_common(sp: argparse.ArgumentParser, config_required: bool = True) -> None:
    sp.add_argument("--config", required=config_required, help="path to the JSON experiment config")
    sp.add_argument("--seed", type=int, default=None, help="override the config seed")
    sp.add_argument("--out", default=None, help="directory for report files (default: stdout)")
    sp.add_argument(
        "--threads",
        type=int,
        default=1,
        help="accepted for compatibility; execution is sequential and deterministic",
    )


def _cmd_space_check(args) -> int:
    cfg = load_config(args.config)
    N = parse_norm_spec(require(cfg, "space", dict, "config"))
    audit_cfg = cfg.get("audit", {})
    if not isinstance(audit_cfg, dict):
        raise ConfigError("config.audit", "expected an object")
    samples = audit_cfg.get("samples", 10_000)
    tol = audit_cfg.get("tol", 1e-9)
    seed = _resolve_seed(args, cfg)
    report = audit_norm_axioms(N, samples=samples, seed=seed, tol=tol)
    doc = {"schema_version": SCHEMA_VERSION, **report.to_dict()}
    _write(args.out, "space_check.json", _dump(doc) + "\n")
    return 0 if report.passed else 1


def _cmd_estimate(args) -> int:
    cfg = load_config(args.config)
    N = parse_norm_spec(require(cfg, "space", dict, "config"))
    est = cfg.get("estimate", {})
    if not isinstance(est, dict):
        raise ConfigError("config.estimate", "expected an object")
    budget = est.get("budget", 400)
    tail_tol = est.get("tail_tol", 1e-8)
    rs = est.get("rs")
    if rs is not None:
        if not isinstance(rs, list) or not all(isinstance(r, (int, float)) for r in rs):
            raise ConfigError("config.estimate.rs", "rs must be an array of numbers")
        rs = tuple(float(r) for r in rs)
    verify_trials = est.get("verify_trials", 1000)
    seed = _resolve_seed(args, cfg)

    report = run_estimate_pipeline(N, budget=budget, seed=seed, rs=rs, tail_tol=tail_tol)
    violations = 0
    verified = 0
    if report.hypothesis_satisfied and verify_trials > 0:
        for r, K in report.kr_table:
            violations += verify_lower_r_estimate(N, r, K, trials=verify_trials, seed=seed + 2)
            verified += verify_trials
    doc = {
        "schema_version": SCHEMA_VERSION,
        **report.to_dict(),
        "verify": {"trials": verified, "violations": violations},
    }
    _write(args.out, "estimate.json", _dump(doc) + "\n")
    return 1 if violations > 0 else 0


def _renorm_one(N, p: float, coords, mode: str, index: int, seed: int) -> dict:
    rec: dict = {"schema_version": SCHEMA_VERSION, "index": index}
    try:
        x = LatticeVector(coords)
        cfg = LocalSearchConfig(seed=seed)
        if mode == "exact":
            res = renorm_exact(N, p, x)
        elif mode == "heuristic":
            res = renorm_heuristic(N, p, x, config=cfg)
        else:
            res = renorm(N, p, x, config=cfg)
        rec.update(res.to_dict())
        rec["vector"] = x.to_list()
    except (SupportTooLarge, DimensionMismatch, ValueError) as e:
        rec["error"] = str(e)
        rec["vector"] = list(map(float, coords)) if hasattr(coords, "__iter__") else coords
    return rec


def _load_vector_file(path: str):
    try:
        with open(path, "r", encoding="utf-8") as f:
            doc = json.load(f)
    except FileNotFoundError:
        raise ConfigError(path, "vector file not found") from None
    except json.JSONDecodeError as e:
        raise ConfigError(path, f"invalid JSON at line {e.lineno}: {e.msg}") from None
    if isinstance(doc, list) and doc and all(isinstance(v, (int, float)) for v in doc):
        return [doc]
    if isinstance(doc, list) and all(isinstance(v, list) for v in doc):
        return doc
    raise ConfigError(path, "expected a coordinate array or an array of coordinate arrays")


def _cmd_renorm(args) -> int:
    if args.space is not None:
        # direct mode: --space --p --vector [--exact|--heuristic]
        if args.p is None or args.vector is None:
            raise ConfigError("renorm", "direct mode needs --space, --p and --vector together")
        with open(args.space, "r", encoding="utf-8") as f:
            try:
                space_doc = json.load(f)
            except json.JSONDecodeError as e:
                raise ConfigError(args.space, f"invalid JSON at line {e.lineno}: {e.msg}") from None
        N = parse_norm_spec(space_doc)
        p = args.p
        vectors = _load_vector_file(args.vector)
        mode = "exact" if args.exact else "heuristic" if args.heuristic else "auto"
        seed = args.seed if args.seed is not None else 0
    else:
        if args.config is None:
            raise ConfigError("renorm", "provide --config, or --space/--p/--vector for direct mode")
        cfg = load_config(args.config)
        N = parse_norm_spec(require(cfg, "space", dict, "config"))
        ren = require(cfg, "renorm", dict, "config")
        p = require(ren, "p", float, "config.renorm")
        mode = ren.get("mode", "auto")
        if mode not in ("auto", "exact", "heuristic"):
            raise ConfigError("config.renorm.mode", f"expected auto|exact|heuristic, got {mode!r}")
        seed = _resolve_seed(args, cfg)
        if "vectors" in ren:
            vectors = ren["vectors"]
            if not isinstance(vectors, list) or not all(isinstance(v, list) for v in vectors):
                raise ConfigError("config.renorm.vectors", "expected an array of coordinate arrays")
        elif "random" in ren:
            rnd = ren["random"]
            if not isinstance(rnd, dict):
                raise ConfigError("config.renorm.random", "expected an object")
            count = rnd.get("count", 10)
            support = rnd.get("support", min(N.dim, EXACT_THRESHOLD))
            rng = np.random.default_rng(seed)
            vectors = [
                random_vector(rng, N.dim, support_size=int(rng.integers(1, support + 1))).to_list()
                for _ in range(count)
            ]
        else:
            vectors = []

    lines = [_dump(_renorm_one(N, p, v, mode, i, seed + i)) for i, v in enumerate(vectors)]
    _write(args.out, "renorm.jsonl", "".join(line + "\n" for line in lines))
    return 0


def _ukk_csv(campaign) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index", "seed", "valid", "epsilon", "delta", "limit_renorm", "pass", "advisory"])
    for i, t in enumerate(campaign.trials):
        w.writerow([
            i,
            t.seed,
            int(t.valid),
            "" if t.epsilon is None else repr(t.epsilon),
            "" if t.delta is None else repr(t.delta),
            "" if t.limit_renorm is None else repr(t.limit_renorm),
            "" if t.passed is None else int(t.passed),
            int(t.advisory),
        ])
    return buf.getvalue()


def _cmd_ukk(args) -> int:
    cfg = load_config(args.config)
    N = parse_norm_spec(require(cfg, "space", dict, "config"))
    ukk_cfg = require(cfg, "ukk", dict, "config")
    p = require(ukk_cfg, "p", float, "config.ukk")
    trials = require(ukk_cfg, "trials", int, "config.ukk")
    horizon = ukk_cfg.get("horizon", 16)
    mode = ukk_cfg.get("mode", "bump")
    tol = ukk_cfg.get("tol", 1e-9)
    seed = _resolve_seed(args, cfg)

    try:
        campaign = run_bump_campaign(N, p, trials, seed=seed, mode=mode, horizon=horizon, tol=tol)
    except ValueError as e:
        raise ConfigError("config.ukk", str(e)) from None

    summary = {"schema_version": SCHEMA_VERSION, **campaign.to_dict(include_trials=False)}
    if campaign.valid == 0:
        summary["warning"] = "no valid trials (nothing was verified)"
    trial_lines = "".join(
        _dump({"schema_version": SCHEMA_VERSION, "index": i, **t.to_dict()}) + "\n"
        for i, t in enumerate(campaign.trials)
    )
    if args.out is None:
        _write(None, "", _dump(summary) + "\n")
    else:
        _write(args.out, "ukk_summary.json", _dump(summary) + "\n")
        _write(args.out, "ukk_trials.jsonl", trial_lines)
        _write(args.out, "ukk_summary.csv", _ukk_csv(campaign))
    return 1 if campaign.failed > 0 else 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="ukklattice",
        description="Lattice geometry experiments: norm audits, disjointness constants, "
        "partition renormings, separated-sequence trials.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("space-check", help="audit the norm axioms of the configured space")
    _add_common(sp)

    sp = sub.add_parser("estimate", help="run the constant-estimation pipeline")
    _add_common(sp)

    sp = sub.add_parser("renorm", help="evaluate the decomposition renorm on vectors")
    _add_common(sp, config_required=False)
    sp.add_argument("--space", default=None, help="norm spec JSON file (direct mode)")
    sp.add_argument("--p", type=float, default=None, help="decomposition exponent (direct mode)")
    sp.add_argument("--vector", default=None, help="JSON file with one or many coordinate arrays")
    mx = sp.add_mutually_exclusive_group()
    mx.add_argument("--exact", action="store_true", help="force exact enumeration")
    mx.add_argument("--heuristic", action="store_true", help="force the local-search heuristic")

    sp = sub.add_parser("ukk", help="run a separated-sequence trial campaign")
    _add_common(sp)

    args = parser.parse_args(argv)
    if args.threads is not None and args.threads < 1:
        parser.error("--threads must be >= 1")

    handlers = {
        "space-check": _cmd_space_check,
        "estimate": _cmd_estimate,
        "renorm": _cmd_renorm,
        "ukk": _cmd_ukk,
    }
    try:
        return handlers[args.command](args)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
