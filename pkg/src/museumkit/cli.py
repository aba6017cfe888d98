"""Unified command line: mesh pipeline, scene tools, the HTTP service,
session log replay, and the statistics pipeline."""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click

from .analytics import (
    mann_whitney_u,
    read_comparison_csv,
    read_sus_csv,
    sus_summary,
)
from .geometry import (
    SimplifyOptions,
    mesh_stats,
    normalize_orientation,
    read_mesh_file,
    simplify,
    write_mesh_file,
)
from .scene.demo import build_demo_scene
from .scene.model import load_scene
from .scene.validate import validate_scene
from .sessionlog.log import read_jsonl
from .sessionlog.replay import IncompleteSessionError, clearance_time, replay


@click.group()
def main():
    """Virtual museum toolkit."""


# ---------------------------------------------------------------------------
# pipeline

@main.group()
def pipeline():
    """Mesh asset pipeline: simplify, orient, stats."""


@pipeline.command("simplify")
@click.option("--target", "target", type=int, required=True, help="Target face count.")
@click.option("--in", "src", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--out", "dst", type=click.Path(dir_okay=False), required=True)
@click.option("--max-error", type=float, default=None, help="Stop above this quadric error.")
@click.option("--keep-boundary/--no-keep-boundary", default=True)
def pipeline_simplify(target, src, dst, max_error, keep_boundary):
    mesh = read_mesh_file(src)
    opts = SimplifyOptions(preserve_boundary=keep_boundary, max_error=max_error)
    out = simplify(mesh, target, opts)
    write_mesh_file(out, dst)
    click.echo(f"{src}: {len(mesh.triangles)} -> {len(out.triangles)} faces -> {dst}")


@pipeline.command("orient")
@click.option("--in", "src", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--out", "dst", type=click.Path(dir_okay=False), required=True)
def pipeline_orient(src, dst):
    mesh = read_mesh_file(src)
    fixed, fix = normalize_orientation(mesh)
    write_mesh_file(fixed, dst)
    click.echo(json.dumps(fix.to_dict(), indent=2))


@pipeline.command("stats")
@click.argument("src", type=click.Path(exists=True, dir_okay=False))
@click.option("--json", "as_json", is_flag=True)
def pipeline_stats(src, as_json):
    stats = mesh_stats(read_mesh_file(src))
    payload = {
        "face_count": stats.face_count,
        "vertex_count": stats.vertex_count,
        "bbox_min": list(stats.bbox_min),
        "bbox_max": list(stats.bbox_max),
        "boundary_loop_count": stats.boundary_loop_count,
        "max_extent": stats.max_extent,
    }
    if as_json:
        click.echo(json.dumps(payload, indent=2))
    else:
        for k, v in payload.items():
            click.echo(f"{k}: {v}")


# ---------------------------------------------------------------------------
# scene

@main.group()
def scene():
    """Scene document tools."""


@scene.command("validate")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
def scene_validate(path):
    doc = load_scene(Path(path).read_text(encoding="utf-8"))
    findings = validate_scene(doc)
    for f in findings:
        click.echo(f"{f.code}: {f.subject}: {f.message}")
    if findings:
        click.echo(f"{len(findings)} findings")
        sys.exit(1)
    click.echo("ok: 0 findings")


@scene.command("demo")
@click.option("--out", "dst", type=click.Path(dir_okay=False), required=True)
def scene_demo(dst):
    """Write the built-in demo museum scene."""
    Path(dst).write_text(build_demo_scene().to_json(), encoding="utf-8")
    click.echo(f"wrote {dst}")


# ---------------------------------------------------------------------------
# serve

@main.command("serve")
@click.option("--config", "scene_path", type=click.Path(exists=True, dir_okay=False),
              required=True, help="Scene JSON path.")
@click.option("--assets", "asset_dir", type=click.Path(file_okay=False), default=None)
@click.option("--data", "data_dir", type=click.Path(file_okay=False), default=None,
              help="Directory for session logs (enables durability).")
@click.option("--listen", default=None,
              help="host:port; defaults to $MUSEUMKIT_LISTEN or 127.0.0.1:8000.")
def serve(scene_path, asset_dir, data_dir, listen):
    """Run the HTTP gateway."""
    import uvicorn

    from .gateway import SceneRejectedError, create_app

    doc = load_scene(Path(scene_path).read_text(encoding="utf-8"))
    try:
        app = create_app(doc, asset_dir=asset_dir, data_dir=data_dir)
    except SceneRejectedError as exc:
        for f in exc.findings:
            click.echo(f"{f.code}: {f.subject}: {f.message}", err=True)
        raise SystemExit(1)
    listen = listen or os.environ.get("MUSEUMKIT_LISTEN", "127.0.0.1:8000")
    host, _, port = listen.partition(":")
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port or 8000))


# ---------------------------------------------------------------------------
# session

@main.group()
def session():
    """Session log tools."""


@session.command("replay")
@click.option("--scene", "scene_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.argument("log_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--json", "as_json", is_flag=True)
def session_replay(scene_path, log_path, as_json):
    doc = load_scene(Path(scene_path).read_text(encoding="utf-8"))
    log = read_jsonl(log_path)
    state, findings = replay(log, doc)
    try:
        cleared = clearance_time(log, doc)
    except IncompleteSessionError:
        cleared = None
    if as_json:
        click.echo(json.dumps({
            "state": state.to_dict(),
            "findings": [{"index": f.index, "code": f.code, "message": f.message}
                         for f in findings],
            "clearance_time_ms": cleared,
        }, indent=2))
        return
    click.echo(f"phase: {state.phase}  level: {state.current_level}  "
               f"passed: {sorted(state.passed_levels)}")
    for f in findings:
        click.echo(f"finding[{f.index}] {f.code}: {f.message}")
    if cleared is not None:
        click.echo(f"clearance time: {cleared} ms")


# ---------------------------------------------------------------------------
# analytics

@main.group()
def analytics():
    """Usability and effectiveness statistics."""


@analytics.command("sus")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--json", "as_json", is_flag=True)
def analytics_sus(path, as_json):
    summary = sus_summary(read_sus_csv(path))
    if as_json:
        click.echo(json.dumps(summary.to_dict(), indent=2))
        return
    click.echo(f"n: {summary.n}")
    click.echo(f"mean SUS: {summary.mean_sus:.1f}  "
               f"learnability: {summary.learnability:.1f}  usability: {summary.usability:.1f}")
    click.echo(f"percentile: {summary.percentile:.0f}  grade: {summary.grade}  "
               f"adjective: {summary.adjective}")


@analytics.command("compare")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--exact", type=click.Choice(["auto", "never"]), default="auto")
@click.option("--seed", type=int, default=42)
@click.option("--json", "as_json", is_flag=True)
def analytics_compare(path, exact, seed, as_json):
    g1, g2 = read_comparison_csv(path)
    report = mann_whitney_u(g1, g2, exact=exact, seed=seed)
    if as_json:
        click.echo(json.dumps({**report.to_dict(), "rendered": report.rendered()}, indent=2))
        return
    r = report.rendered()
    click.echo(f"n1={report.n1} n2={report.n2}")
    click.echo(f"U={r['U']:.3f} W={r['W']:.3f} Z={r['Z']:.3f}")
    click.echo(f"mean ranks: {r['mean_rank_1']:.2f} / {r['mean_rank_2']:.2f}")
    click.echo(f"p (asymptotic) = {report.p_asymptotic:.6g}")
    if report.p_exact is not None:
        click.echo(f"p (exact, {report.exact_method}) = {report.p_exact:.6g}")


if __name__ == "__main__":
    main()
