"""Pipeline CLI: validate, render, trace, bench, replay, rsl helpers.

Exit codes are stable API: 0 success, 1 semantic failure (validation,
incompatible input), 2 environmental failure (unreadable files, I/O).
The pipeline order is fixed — trace, validate, interpret RSL, render —
and rendering is unreachable without a clean validation report.
"""

from __future__ import annotations

import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import click

from . import backends, rsl as rsl_mod, tracejson
from .diagnostics import format_repair_block
from .errors import (CapacityExceeded, IncompatibleInput, MalformedTask,
                     MissingPlayerAssets, TraceValidationError)
from .trackers import infer_tracker, list_trackers, parse_task_path, run_tracker

EXIT_OK = 0
EXIT_SEMANTIC = 1
EXIT_ENVIRONMENT = 2


def _env_fail(message: str) -> int:
    click.echo(f"error: {message}", err=True)
    return EXIT_ENVIRONMENT


def _read_bytes(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        sys.exit(_env_fail(f"cannot read {path}: {exc}"))


def _write_json(path: Path, doc) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(tracejson.canonical_json_bytes(doc))


@click.group()
@click.version_option(package_name="vta-toolkit", prog_name="vta")
def main() -> None:
    """Deterministic algorithm-visualization pipeline."""


@main.command()
@click.argument("trace_path", type=click.Path())
@click.option("--out", "out_dir", default=".", show_default=True,
              help="Directory for diagnostics.json.")
def validate(trace_path: str, out_dir: str) -> None:
    """Validate a trace file; always writes diagnostics.json."""
    data = _read_bytes(trace_path)
    _, report = tracejson.validate_document(data)
    _write_json(Path(out_dir) / "diagnostics.json", report.to_doc())
    if report.valid:
        click.echo(f"{trace_path}: valid ({len(report.warnings)} warning(s))")
        sys.exit(EXIT_OK)
    click.echo(format_repair_block(report.errors), err=True, nl=False)
    click.echo(f"{trace_path}: {len(report.errors)} error(s)")
    # Undecodable bytes are an environmental failure, not a semantic one.
    if all(d.code == "SYNTAX_ERROR" for d in report.errors):
        sys.exit(EXIT_ENVIRONMENT)
    sys.exit(EXIT_SEMANTIC)


@main.command()
@click.argument("trace_path", type=click.Path())
@click.option("--rsl", "rsl_path", type=click.Path(), default=None,
              help="RSL style document (falls back to defaults when absent/invalid).")
@click.option("--backend", type=click.Choice(backends.BACKENDS), default="svg",
              show_default=True)
@click.option("--out", "out_dir", required=True, help="Output bundle directory.")
@click.option("--lenient-rsl", is_flag=True,
              help="Clamp out-of-bound RSL numerics instead of rejecting the config.")
@click.option("--player-assets", type=click.Path(), default=None,
              help="Player asset directory (player backend only).")
def render(trace_path: str, rsl_path: str | None, backend: str, out_dir: str,
           lenient_rsl: bool, player_assets: str | None) -> None:
    """Render a validated trace through one backend."""
    data = _read_bytes(trace_path)
    rsl_doc = _read_bytes(rsl_path) if rsl_path else None
    if rsl_doc is not None:
        parsed = None
        try:
            parsed = json.loads(rsl_doc)
        except json.JSONDecodeError:
            pass
        if lenient_rsl and isinstance(parsed, dict):
            parsed = rsl_mod.clamp_bounds(parsed)
        if parsed is None or not rsl_mod.validate_rsl(parsed).valid:
            click.echo("warning: RSL config invalid; using defaults", err=True)
    try:
        bundle = backends.render_trace(data, rsl_doc, backend, out_dir,
                                       lenient=lenient_rsl, player_assets=player_assets)
    except TraceValidationError as exc:
        click.echo(format_repair_block(exc.diagnostics), err=True, nl=False)
        click.echo(f"{trace_path}: validation failed; nothing rendered", err=True)
        sys.exit(EXIT_SEMANTIC)
    except (MissingPlayerAssets, CapacityExceeded, OSError) as exc:
        sys.exit(_env_fail(str(exc)))
    click.echo(f"{backend}: wrote {len(bundle.files)} file(s) to {out_dir}")
    sys.exit(EXIT_OK)


@main.command()
@click.argument("tracker_id")
@click.argument("task_path", type=click.Path())
@click.option("--out", "out_path", default="trace.json", show_default=True)
def trace(tracker_id: str, task_path: str, out_path: str) -> None:
    """Run a built-in tracker on a task file and write canonical trace.json."""
    try:
        task = parse_task_path(task_path)
    except OSError as exc:
        sys.exit(_env_fail(f"cannot read {task_path}: {exc}"))
    except MalformedTask as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_SEMANTIC)
    try:
        result = run_tracker(tracker_id, task)
    except KeyError as exc:
        click.echo(f"error: {exc.args[0]}", err=True)
        sys.exit(EXIT_SEMANTIC)
    except IncompatibleInput as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_SEMANTIC)
    payload = tracejson.serialize_trace(result)
    _, report = tracejson.validate_document(payload)
    if not report.valid:
        click.echo("error: emitted trace failed self-validation", err=True)
        sys.exit(EXIT_SEMANTIC)
    out = Path(out_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_bytes(payload)
    click.echo(f"{tracker_id}: wrote {out_path} ({len(result.deltas)} deltas)")
    sys.exit(EXIT_OK)


@main.command()
@click.argument("trace_path", type=click.Path())
@click.option("--out", "out_dir", required=True, help="Directory for state_%03d.json files.")
def replay(trace_path: str, out_dir: str) -> None:
    """Dump every replay state for cross-checking external renderers."""
    data = _read_bytes(trace_path)
    parsed, report = tracejson.validate_document(data)
    if parsed is None or not report.valid:
        click.echo(format_repair_block(report.errors), err=True, nl=False)
        sys.exit(EXIT_SEMANTIC)
    states = tracejson.replay_trace(parsed)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for i, state in enumerate(states):
        _write_json(out / f"state_{i:03d}.json", tracejson.state_to_doc(state))
    click.echo(f"wrote {len(states)} state file(s) to {out_dir}")
    sys.exit(EXIT_OK)


@main.command("rsl-check")
@click.argument("rsl_path", type=click.Path())
def rsl_check(rsl_path: str) -> None:
    """Validate an RSL style document."""
    data = _read_bytes(rsl_path)
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        click.echo(f"error: invalid JSON: {exc}", err=True)
        sys.exit(EXIT_SEMANTIC)
    report = rsl_mod.validate_rsl(doc)
    for diag in report.diagnostics:
        click.echo(f"{diag.severity}: {diag.code} at {diag.path or '/'}: {diag.message}")
    if report.valid:
        click.echo(f"{rsl_path}: valid")
        sys.exit(EXIT_OK)
    sys.exit(EXIT_SEMANTIC)


@main.command("rsl-default")
@click.argument("trace_path", type=click.Path())
@click.option("--out", "out_path", default=None, help="Write rsl.json here (default stdout).")
def rsl_default(trace_path: str, out_path: str | None) -> None:
    """Emit the built-in default RSL config for a trace."""
    data = _read_bytes(trace_path)
    parsed, report = tracejson.validate_document(data)
    if parsed is None or not report.valid:
        click.echo(format_repair_block(report.errors), err=True, nl=False)
        sys.exit(EXIT_SEMANTIC)
    doc = rsl_mod.default_rsl(rsl_mod.extract_features(parsed))
    payload = tracejson.canonical_json_bytes(doc)
    if out_path:
        Path(out_path).parent.mkdir(parents=True, exist_ok=True)
        Path(out_path).write_bytes(payload)
        click.echo(f"wrote {out_path}")
    else:
        click.echo(payload.decode("utf-8"), nl=False)
    sys.exit(EXIT_OK)


@main.command("list-trackers")
def list_trackers_cmd() -> None:
    """Show the shipped tracker catalogue."""
    for info in list_trackers():
        click.echo(f"{info.id:22s} {info.family:10s} input={info.input_kind}")
    sys.exit(EXIT_OK)


def _bench_one(task_path: Path, backend_names: tuple[str, ...], out_root: Path,
               lenient: bool, player_assets: str | None) -> dict:
    row: dict = {"task": task_path.name, "tracker": None, "family": None,
                 "trace_ok": False, "validate_ok": False,
                 "render_ok": {name: False for name in backend_names},
                 "error": None, "seconds": 0.0}
    started = time.perf_counter()
    try:
        task = parse_task_path(task_path)
        row["family"] = task.family
        info = infer_tracker(task)
        if info is None:
            row["error"] = "no tracker matches this task"
            return row
        row["tracker"] = info.id
        result = run_tracker(info.id, task)
        row["trace_ok"] = True
        payload = tracejson.serialize_trace(result)
        parsed, report = tracejson.validate_document(payload)
        row["validate_ok"] = parsed is not None and report.valid
        if not row["validate_ok"]:
            row["error"] = "validation failed"
            return row
        for name in backend_names:
            out_dir = out_root / task_path.stem / name
            try:
                backends.render_trace(parsed, None, name, out_dir,
                                      lenient=lenient, player_assets=player_assets)
                row["render_ok"][name] = True
            except Exception as exc:  # per-task isolation: record, keep going
                row["error"] = f"{name}: {exc}"
    except Exception as exc:
        row["error"] = str(exc)
    finally:
        row["seconds"] = round(time.perf_counter() - started, 4)
    return row


@main.command()
@click.argument("task_dir", type=click.Path())
@click.option("--backends", "backend_csv", default="tikz,svg,player", show_default=True,
              help="Comma-separated backend list.")
@click.option("--out", "out_dir", required=True, help="Directory for bundles and bench.json.")
@click.option("--jobs", default=0, show_default="cpu count", help="Parallel tasks.")
@click.option("--lenient-rsl", is_flag=True)
@click.option("--player-assets", type=click.Path(), default=None)
def bench(task_dir: str, backend_csv: str, out_dir: str, jobs: int,
          lenient_rsl: bool, player_assets: str | None) -> None:
    """Run trace -> validate -> render for every task file in a directory."""
    root = Path(task_dir)
    if not root.is_dir():
        sys.exit(_env_fail(f"{task_dir} is not a directory"))
    backend_names = tuple(name.strip() for name in backend_csv.split(",") if name.strip())
    for name in backend_names:
        if name not in backends.BACKENDS:
            sys.exit(_env_fail(f"unknown backend {name!r}"))
    tasks = sorted(root.glob("*.txt"))
    if not tasks:
        sys.exit(_env_fail(f"no .txt task files in {task_dir}"))

    out_root = Path(out_dir)
    out_root.mkdir(parents=True, exist_ok=True)
    workers = jobs if jobs > 0 else None
    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(pool.map(
            lambda p: _bench_one(p, backend_names, out_root, lenient_rsl, player_assets),
            tasks))
    rows.sort(key=lambda r: r["task"])

    def rate(flags: list[bool]) -> float:
        return round(100.0 * sum(flags) / len(flags), 1) if flags else 0.0

    stages = {
        "trace": rate([r["trace_ok"] for r in rows]),
        "validate": rate([r["validate_ok"] for r in rows]),
    }
    for name in backend_names:
        stages[f"render_{name}"] = rate([r["render_ok"][name] for r in rows])

    families: dict[str, dict] = {}
    for row in rows:
        family = row["family"] or "unknown"
        bucket = families.setdefault(family, {"tasks": 0, "ok": 0})
        bucket["tasks"] += 1
        if row["trace_ok"] and row["validate_ok"] and all(row["render_ok"].values()):
            bucket["ok"] += 1
    per_family = {fam: round(100.0 * b["ok"] / b["tasks"], 1)
                  for fam, b in sorted(families.items())}

    report = {"rows": rows, "stages": stages, "per_family": per_family,
              "tasks": len(rows)}
    _write_json(out_root / "bench.json", report)

    header = f"{'task':32s} {'tracker':22s} {'family':10s} trace validate " + \
             " ".join(f"{n:>6s}" for n in backend_names)
    click.echo(header)
    for row in rows:
        marks = " ".join(f"{'ok' if row['render_ok'][n] else 'FAIL':>6s}" for n in backend_names)
        click.echo(f"{row['task']:32s} {str(row['tracker']):22s} {str(row['family']):10s} "
                   f"{'ok' if row['trace_ok'] else 'FAIL':5s} "
                   f"{'ok' if row['validate_ok'] else 'FAIL':8s} {marks}")
    click.echo("stage success: " + "  ".join(f"{k}={v}%" for k, v in stages.items()))
    click.echo("family success: " + "  ".join(f"{k}={v}%" for k, v in per_family.items()))
    all_ok = all(r["trace_ok"] and r["validate_ok"] and all(r["render_ok"].values())
                 for r in rows)
    sys.exit(EXIT_OK if all_ok else EXIT_SEMANTIC)


if __name__ == "__main__":
    main()
