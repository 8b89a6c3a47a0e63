"""Command-line interface for batch operations and serving the API."""

from __future__ import annotations

import sys
from pathlib import Path

import click

from . import audit, editing
from .errors import PosteditError
from .export import ExportFormat, export
from .snapshots import SyncDirection, sync
from .workspace import Config, Workspace, page_word_links


class _Ctx:
    def __init__(self, workspace: Workspace):
        self.workspace = workspace


def _fail(exc: PosteditError) -> None:
    click.echo(f"error: {exc}", err=True)
    sys.exit(exc.exit_code)


def _resolve_project(ws: Workspace, project_id: str | None):
    ids = ws.list_ids()
    if project_id is None:
        if len(ids) == 1:
            project_id = ids[0]
        elif not ids:
            raise click.ClickException("workspace has no projects; run ingest first")
        else:
            raise click.ClickException(
                f"workspace has {len(ids)} projects; pass --project (one of: {', '.join(ids)})"
            )
    return ws.get(project_id)


@click.group()
@click.option(
    "--workspace",
    "workspace_dir",
    type=click.Path(file_okay=False, path_type=Path),
    default=Path("./workspace"),
    show_default=True,
    help="Workspace directory holding projects.",
)
@click.option("--idle-cap-min", type=int, default=10, show_default=True,
              help="Idle cap for page-time accounting, in minutes.")
@click.option("--intersect-threshold", type=float, default=0.001, show_default=True,
              help="Post-softmax threshold for intersection decoding.")
@click.option("--greedy-floor", type=float, default=0.0, show_default=True,
              help="Score floor for greedy decoding.")
@click.option("--decoder", type=click.Choice(["greedy", "intersect"]), default="greedy",
              show_default=True, help="Word-alignment decoder.")
@click.pass_context
def main(ctx, workspace_dir: Path, idle_cap_min: int, intersect_threshold: float,
         greedy_floor: float, decoder: str):
    """Post-editing workbench for machine-translated document bundles."""
    config = Config(
        idle_cap_ms=idle_cap_min * 60_000,
        intersect_threshold=intersect_threshold,
        greedy_floor=greedy_floor,
        decoder=decoder,
    )
    ctx.obj = _Ctx(Workspace(workspace_dir, config))


@main.command()
@click.argument("bundle", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.pass_obj
def ingest(ctx: _Ctx, bundle: Path):
    """Ingest a bundle zip into the workspace."""
    try:
        project = ctx.workspace.add_project(bundle.read_bytes())
    except PosteditError as exc:
        _fail(exc)
    click.echo(f"ingested project {project.id} ({len(project.pages)} pages)")


@main.command("export")
@click.argument("fmt", type=click.Choice([f.value for f in ExportFormat]))
@click.argument("out", type=click.Path(dir_okay=False, path_type=Path))
@click.option("--project", "project_id", default=None, help="Project id.")
@click.pass_obj
def export_cmd(ctx: _Ctx, fmt: str, out: Path, project_id: str | None):
    """Export the target document (PlainText, HTML, or LaTeX)."""
    try:
        project = _resolve_project(ctx.workspace, project_id)
        out.write_bytes(export(project, ExportFormat(fmt)))
    except PosteditError as exc:
        _fail(exc)
    click.echo(f"wrote {out}")


@main.command("apply-tm")
@click.argument("tm_file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--project", "project_id", default=None, help="Project id.")
@click.option("--author", default="cli", show_default=True)
@click.pass_obj
def apply_tm_cmd(ctx: _Ctx, tm_file: Path, project_id: str | None, author: str):
    """Apply a translation-memory TSV across all pages of a project."""
    try:
        project = _resolve_project(ctx.workspace, project_id)
        tm = editing.import_tm(tm_file)
        with ctx.workspace.lock(project.id):
            _, count = editing.apply_tm(tm, project, author, log=project.ensure_log())
            ctx.workspace.persist(project)
    except PosteditError as exc:
        _fail(exc)
    click.echo(f"{count} replacements")


@main.command()
@click.option("--project", "project_id", default=None, help="Project id.")
@click.pass_obj
def stats(ctx: _Ctx, project_id: str | None):
    """Per-page edit counts and active time."""
    try:
        project = _resolve_project(ctx.workspace, project_id)
    except PosteditError as exc:
        _fail(exc)
    rows = audit.summary(project.ensure_log(), ctx.workspace.config.idle_cap_ms)
    click.echo("page\tedits\tactive_ms")
    for row in rows:
        click.echo(f"{row.page_index}\t{row.edit_count}\t{row.active_time_ms}")


@main.command()
@click.option("-m", "--message", required=True, help="Snapshot message.")
@click.option("--project", "project_id", default=None, help="Project id.")
@click.pass_obj
def snapshot(ctx: _Ctx, message: str, project_id: str | None):
    """Record a content-addressed snapshot of the current project state."""
    try:
        project = _resolve_project(ctx.workspace, project_id)
        store = ctx.workspace.snapshot_store(project.id)
        snap = store.snapshot(project, message)
    except PosteditError as exc:
        _fail(exc)
    click.echo(snap.snapshot_id)


@main.command("sync")
@click.argument("direction", type=click.Choice(["push", "pull"]))
@click.option("--project", "project_id", default=None, help="Project id.")
@click.option("--mirror", type=click.Path(file_okay=False, path_type=Path), default=None,
              help="Mirror directory (defaults to <workspace>/mirror/<project>).")
@click.pass_obj
def sync_cmd(ctx: _Ctx, direction: str, project_id: str | None, mirror: Path | None):
    """Fast-forward sync of the snapshot chain with a mirror directory."""
    try:
        project = _resolve_project(ctx.workspace, project_id)
        store = ctx.workspace.snapshot_store(project.id)
        backend = ctx.workspace.mirror_backend(project.id, mirror)
        status = sync(store, backend, SyncDirection.PUSH if direction == "push" else SyncDirection.PULL)
    except PosteditError as exc:
        _fail(exc)
    click.echo(f"{direction}: head={status.head or '(none)'} transferred={status.transferred}")


@main.command()
@click.argument("page", type=int)
@click.option("--project", "project_id", default=None, help="Project id.")
@click.pass_obj
def align(ctx: _Ctx, page: int, project_id: str | None):
    """Dump decoded word links for every segment pair on a page."""
    try:
        project = _resolve_project(ctx.workspace, project_id)
        page_obj = project.page(page)
    except PosteditError as exc:
        _fail(exc)
    for src_id, tgt_id, links in page_word_links(project, page_obj, ctx.workspace.config):
        pairs = " ".join(f"{i}-{j}" for i, j in links)
        click.echo(f"{src_id} {tgt_id}: {pairs}")


@main.command()
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.pass_obj
def serve(ctx: _Ctx, port: int, host: str):
    """Run the HTTP JSON API."""
    import uvicorn

    from .service import create_app

    if not ctx.workspace.tokens_path().exists():
        ctx.workspace.write_default_tokens()
        click.echo(f"wrote default token table to {ctx.workspace.tokens_path()}")
    uvicorn.run(create_app(ctx.workspace), host=host, port=port, log_level="warning")


@main.command()
@click.argument("text")
def slp1(text: str):
    """Transliterate an SLP1 string to Devanagari."""
    from .transliterate import slp1_to_devanagari

    try:
        click.echo(slp1_to_devanagari(text))
    except PosteditError as exc:
        _fail(exc)


if __name__ == "__main__":
    main()
