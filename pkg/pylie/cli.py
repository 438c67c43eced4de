"""
cli.py

The `pylie` command: build algebras, inspect catalog orbits, verify the index
theorems and Property (P), and run the classical suites.

Exit codes: 0 when every check passes, 1 when a check fails, 2 for usage or
data errors.
"""
import sys
import json
import time
import argparse
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .config import RANK_CONFIG, CATALOG_CONFIG, set_env
from .errors import InputError, DataIntegrityError, UnsupportedError, PropertyViolation
from .utils import status, log_run, records_to_df, derive_seed
from .chevalley import build_simple, SAMPLED_JACOBI_TRIPLES
from .liecore import check_jacobi
from .slice import read_catalog, find_orbit, build_orbit, orbit_report
from .index import verify_theorems
from .propp import check_property_p
from .classical import build_partition_nilpotent, classical_suite

SCHEMA_VERSION = 1


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--trials", type=int, default=None, help="Random forms per generic rank (default 5).")
    common.add_argument("--bound", type=int, default=None, help="Coordinate bound of the random forms (default 1000).")
    common.add_argument("--seed", type=int, default=None, help="Base seed (default 0).")
    common.add_argument("--format", choices=("text", "jsonl"), default="text", help="Report format.")
    common.add_argument("--catalog", default=None, help="Orbit catalog (default: the bundled exceptional.cat).")
    common.add_argument("--output", default=None, help="Append the report to this file instead of stdout.")
    common.add_argument("--no-log", action="store_true", help="Do not write the run log.")
    common.add_argument("--workers", type=int, default=1, help="Processes for verify --all.")
    common.add_argument("--timing", action="store_true", help="Include timing_ms in json-lines records.")

    parser = argparse.ArgumentParser(prog="pylie", description="Exact Lie algebra computations over the rationals.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parents=[common], help="Build a simple Lie algebra and check Jacobi.")
    p.add_argument("--type", required=True, dest="type_")
    p.add_argument("--rank", required=True, type=int)
    p.add_argument("--exhaustive", action="store_true", help="Check every basis triple even for large algebras.")

    p = sub.add_parser("orbit-info", parents=[common], help="Dimensions and weights of a catalog orbit.")
    p.add_argument("orbit", help="Label, alias or TYPE RANK:n key, e.g. E8:10.")

    p = sub.add_parser("verify", parents=[common], help="Index theorems and Property (P) for catalog orbits.")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--orbit", action="append", help="Orbit to verify. Repeatable.")
    group.add_argument("--all", action="store_true", help="Verify every orbit of the catalog.")

    p = sub.add_parser("classical", parents=[common], help="Classical suite for a partition nilpotent.")
    p.add_argument("--family", required=True, choices=("sl", "so", "sp"))
    p.add_argument("--partition", required=True, help="Comma-separated parts, e.g. 5,3.")

    p = sub.add_parser("init-config", help="Write the default configuration file.")
    p.add_argument("--overwrite", action="store_true")
    return parser


def resolve_settings(args):
    """Flags over config; trials and bound must be positive."""
    config = RANK_CONFIG()
    settings = {
        "trials": args.trials if args.trials is not None else config.get("trials", 5),
        "bound": args.bound if args.bound is not None else config.get("bound", 1000),
        "seed": args.seed if args.seed is not None else config.get("seed", 0),
    }
    if settings["trials"] < 1 or settings["bound"] < 1:
        raise InputError("--trials and --bound must be at least 1")
    if settings["seed"] < 0:
        raise InputError("--seed must be non-negative")
    if args.workers < 1:
        raise InputError("--workers must be at least 1")
    return settings


def parse_partition(text):
    try:
        parts = [int(p) for p in text.replace(" ", "").split(",") if p]
    except ValueError as e:
        raise InputError(f"bad partition {text!r}") from e
    if not parts:
        raise InputError("empty partition")
    return parts


def _catalog_path(args):
    return args.catalog or CATALOG_CONFIG().get("path")


def cmd_build(args, settings):
    start = time.time()
    algebra, R, _ = build_simple(args.type_, args.rank)
    mode, count = algebra.jacobi
    if args.exhaustive and mode != "exhaustive":
        mode, count = "exhaustive", check_jacobi(algebra)
    elif mode == "sampled" and settings["seed"]:
        rng = np.random.default_rng(derive_seed(settings["seed"], algebra.name))
        count = check_jacobi(algebra, samples=SAMPLED_JACOBI_TRIPLES, rng=rng)
    record = {
        "algebra": algebra.name,
        "dim": algebra.dim,
        "positive_roots": R.num_positive,
        "jacobi": mode,
        "jacobi_triples": count,
        "ok": True,
    }
    return [record], [time.time() - start]


def cmd_orbit_info(args, settings):
    specs = read_catalog(_catalog_path(args))
    spec = find_orbit(specs, args.orbit)
    start = time.time()
    t = build_orbit(spec)
    record = orbit_report(t, spec.label).to_record()
    record.update({"key": spec.key, "aliases": list(spec.aliases), "ok": True})
    return [record], [time.time() - start]


def verify_orbit(spec, trials, bound, seed):
    """One verify record; returns (record, seconds)."""
    start = time.time()
    rng = np.random.default_rng(derive_seed(seed, spec.key))
    t = build_orbit(spec)
    report = orbit_report(t, spec.label)
    record = report.to_record()
    record["key"] = spec.key
    try:
        theorems = verify_theorems(t, trials=trials, bound=bound, rng=rng)
        verdict = check_property_p(t, rng=rng)
    except PropertyViolation as e:
        record.update({"error": str(e), "ok": False})
        return record, time.time() - start
    record.update({
        "ind_gxi": theorems.ind_gxi,
        "ind_n": theorems.ind_n,
        "ind_n_gxi": theorems.ind_n_gxi,
        "target": theorems.target,
        "prop4_ok": theorems.prop4_ok,
        "theorems": theorems.to_record(),
        "propP": verdict.to_record(),
        "ok": theorems.ok and verdict.passed,
    })
    return record, time.time() - start


def _verify_job(job):
    return verify_orbit(*job)


def cmd_verify(args, settings):
    specs = read_catalog(_catalog_path(args))
    chosen = specs if args.all else [find_orbit(specs, key) for key in args.orbit]
    jobs = [(spec, settings["trials"], settings["bound"], settings["seed"]) for spec in chosen]
    if args.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            results = list(pool.map(_verify_job, jobs))
    else:
        results = [_verify_job(job) for job in jobs]
    return [r for r, _ in results], [s for _, s in results]


def cmd_classical(args, settings):
    parts = parse_partition(args.partition)
    start = time.time()
    p = build_partition_nilpotent(args.family, parts)
    rng = np.random.default_rng(derive_seed(settings["seed"], f"{args.family}:{','.join(map(str, parts))}"))
    record = classical_suite(p, trials=settings["trials"], bound=settings["bound"], rng=rng)
    return [record], [time.time() - start]


COMMANDS = {
    "build": cmd_build,
    "orbit-info": cmd_orbit_info,
    "verify": cmd_verify,
    "classical": cmd_classical,
}

TEXT_COLUMNS = {
    "build": ["algebra", "dim", "positive_roots", "jacobi", "jacobi_triples", "ok"],
    "orbit-info": ["key", "orbit", "algebra", "characteristic", "dims.gxi", "dims.z", "dims.n",
                   "weights", "regular", "distinguished"],
    "verify": ["key", "orbit", "dims.gxi", "dims.z", "dims.n", "ind_gxi", "ind_n", "ind_n_gxi",
               "target", "prop4_ok", "propP.status", "propP.tier", "ok"],
    "classical": ["algebra", "partition", "dims.gxi", "dims.z", "dims.zprime", "dims.n",
                  "zprime_is_center", "theorems.ind_n", "theorems.ind_n_z", "theorems.target", "ok"],
}


def format_records(command, records, seconds, settings, fmt, timing=False):
    """Render records as json-lines or as a text table with timings."""
    if fmt == "jsonl":
        lines = []
        for record, secs in zip(records, seconds):
            out = {"v": SCHEMA_VERSION, **record, **settings}
            if timing:
                out["timing_ms"] = int(round(secs * 1000))
            lines.append(json.dumps(out, sort_keys=True, default=str))
        return "\n".join(lines)
    df = records_to_df(records)
    cols = [c for c in TEXT_COLUMNS[command] if c in df.columns]
    if "error" in df.columns:
        cols.append("error")
    df = df[cols].assign(time_s=[round(s, 2) for s in seconds])
    return df.to_string(index=False)


def _emit(text, path):
    if path is None:
        print(text)
        return
    with open(path, "a", encoding="utf-8") as f:
        f.write(text + "\n")


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(argv)

    if args.command == "init-config":
        set_env(overwrite=args.overwrite, io=True)
        return 0

    try:
        settings = resolve_settings(args)
        records, seconds = COMMANDS[args.command](args, settings)
    except (InputError, DataIntegrityError, UnsupportedError) as e:
        status(f"{args.command}: {e}", ok=False)
        return 2
    except PropertyViolation as e:
        status(f"{args.command}: {e}", ok=False)
        return 1

    text = format_records(args.command, records, seconds, settings, args.format, args.timing)
    _emit(text, args.output)

    failed = [r for r in records if not r.get("ok", False)]
    if args.format == "text":
        for r in records:
            name = r.get("key") or r.get("orbit") or r.get("algebra")
            status(f"{name}: {'pass' if r.get('ok') else 'FAIL'}", ok=bool(r.get("ok")))
    if not args.no_log:
        table = text if args.format == "text" else format_records(args.command, records, seconds, settings, "text")
        log_run("pylie " + " ".join(argv), table)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
