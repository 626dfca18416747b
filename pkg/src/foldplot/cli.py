"""Chained command-line interface.

Commands compose left to right in one invocation, e.g.::

    foldplot load pigs.csv --wide script explore.fps export-coords out.csv
    foldplot load lynx.csv serve --port 8750

``load`` must come first; the remaining commands operate on the loaded
session.
"""

from __future__ import annotations

import asyncio
import os
import sys
from pathlib import Path

import click

from .server import SessionServer
from .session import ScriptError, Session

DEFAULT_PORT = int(os.environ.get("FOLDPLOT_PORT", "8750"))


@click.group(chain=True)
def main():
    """Interactive temporal-data engine: wrap, facet, mirror, shift, link."""


@main.command("load")
@click.argument("csv_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--wide/--long", "wide", default=False, help="Input layout (default long).")
def load_cmd(csv_path, wide):
    """Load a CSV dataset into a fresh session."""
    return ("load", csv_path, wide)


@main.command("script")
@click.argument("script_path", type=click.Path(exists=True, dir_okay=False))
def script_cmd(script_path):
    """Run an interaction script against the session."""
    return ("script", script_path)


@main.command("export-coords")
@click.argument("out_path", type=click.Path(dir_okay=False))
def export_coords_cmd(out_path):
    """Write the current coordinates as CSV."""
    return ("export-coords", out_path)


@main.command("export-svg")
@click.argument("out_path", type=click.Path(dir_okay=False))
def export_svg_cmd(out_path):
    """Write a static SVG snapshot of the current display."""
    return ("export-svg", out_path)


@main.command("serve")
@click.option("--port", default=DEFAULT_PORT, show_default=True,
              help="WebSocket/HTTP port (FOLDPLOT_PORT overrides the default).")
@click.option("--wire-port", default=None, type=int,
              help="Raw TCP wire port [default: port + 1].")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--assets", default=None, type=click.Path(file_okay=False),
              help="Static UI bundle directory [default: auto-detect frontend/dist].")
def serve_cmd(port, wire_port, host, assets):
    """Serve the session over the wire protocol (and the browser UI)."""
    return ("serve", port, wire_port, host, assets)


def _find_assets() -> str | None:
    package_repo = Path(__file__).resolve().parent.parent.parent
    for base in (Path.cwd(), *Path.cwd().parents, package_repo):
        candidate = base / "frontend" / "dist"
        if (candidate / "index.html").is_file():
            return str(candidate)
    return None


@main.result_callback()
def run_pipeline(actions):
    session: Session | None = None
    for action in actions:
        name = action[0]
        if name == "load":
            _, csv_path, wide = action
            text = Path(csv_path).read_text()
            session = (
                Session.from_wide_csv(text, name=Path(csv_path).stem)
                if wide
                else Session.from_long_csv(text, name=Path(csv_path).stem)
            )
            click.echo(
                f"loaded {len(session.table)} points, "
                f"{len(session.table.variables)} variable(s), "
                f"{len(session.table.individuals)} individual(s)"
            )
            continue
        if session is None:
            raise click.UsageError(f"'{name}' needs a loaded session; start with 'load'")
        if name == "script":
            try:
                _, layers, log = session.run_script(Path(action[1]).read_text())
            except ScriptError as exc:
                raise click.ClickException(str(exc)) from exc
            for warning in log["warnings"]:
                click.echo(f"warning: {warning}", err=True)
            click.echo(f"script ok: {len(log['interactions'])} interactions recorded")
        elif name == "export-coords":
            Path(action[1]).write_text(session.export_coords())
            click.echo(f"coordinates written to {action[1]}")
        elif name == "export-svg":
            Path(action[1]).write_text(session.export_svg(title=session.name))
            click.echo(f"svg written to {action[1]}")
        elif name == "serve":
            _, port, wire_port, host, assets = action
            assets = assets or _find_assets()
            server = SessionServer(session, assets_dir=assets)
            try:
                asyncio.run(server.serve_forever(host=host, port=port, wire_port=wire_port))
            except KeyboardInterrupt:
                click.echo("stopped")


if __name__ == "__main__":
    main(sys.argv[1:])
