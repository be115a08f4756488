"""
wsetoid.cli
====================================
The cli module of wsetoid

|license-info|
"""

from __future__ import annotations

import logging

from collections.abc import Iterable
from dataclasses import replace
from functools import wraps
from typing import Any

import click

from rich import box
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from wsetoid import WSetoid, __name__ as ws_name, __version__ as ws_version, console
from wsetoid.codec import dump_value, dumps
from wsetoid.const import DEFAULT_DEPTH
from wsetoid.entities import Limits
from wsetoid.enums import ExitCode
from wsetoid.exceptions import NestingLimitError, WSetoidError


CONTEXT_SETTINGS: dict[str, Any] = dict(help_option_names=["-h", "--help"])

version_message = f"{ws_name} v{ws_version}"


def reports_errors(f: Any) -> Any:
    """Turn library errors into a message on stderr and their exit code."""

    @wraps(f)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            try:
                return f(*args, **kwargs)
            except RecursionError as error:
                raise NestingLimitError("input nests too deeply to process") from error
        except WSetoidError as error:
            click.echo(f"error: {error}", err=True)
            click.get_current_context().exit(int(error.exit_code))

    return wrapper


def emit(ctx: click.Context, rows: Iterable[dict[str, Any]]) -> None:
    """Print result rows as JSON lines, or as one table with ``--format table``."""

    rows = list(rows)

    if ctx.obj["format"] == "json":
        for row in rows:
            click.echo(dumps(row))
        return

    table = Table(box=box.MINIMAL)
    columns = list(dict.fromkeys(key for row in rows for key in row))
    for column in columns:
        table.add_column(column, overflow="fold")
    for row in rows:
        table.add_row(*(_cell(row.get(column)) for column in columns))

    console.print(table)


def _cell(value: Any) -> str:
    if value is None:
        return ""
    plain = dump_value(value)
    return plain if isinstance(plain, str) else dumps(plain)


@click.group(context_settings=CONTEXT_SETTINGS, invoke_without_command=True)
@click.pass_context
@click.option("--version", default=False, is_flag=True, help=f"show {ws_name} version")
@click.option("-v", "--verbose", default=False, is_flag=True, help="debug logging on stderr")
@click.option(
    "--depth", default=DEFAULT_DEPTH, show_default=True, type=int, help="enumeration depth"
)
@click.option("--limit", default=None, type=int, help="maximum number of enumerated candidates")
@click.option(
    "--format",
    "output_format",
    default="json",
    show_default=True,
    type=click.Choice(["json", "table"]),
    help="output format",
)
def cli(
    ctx: click.Context,
    version: bool,
    verbose: bool,
    depth: int,
    limit: int | None,
    output_format: str,
) -> None:
    """wsetoid cli

    Setoid families, their well-founded trees and folds.
    """

    ctx.ensure_object(dict)

    if verbose:
        logging.basicConfig(
            level=logging.DEBUG,
            format="%(message)s",
            handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        )

    limits = Limits.from_env()
    if limit is not None:
        limits = replace(limits, max_candidates=limit)

    ctx.obj["limits"] = limits

    ctx.obj["depth"] = depth
    ctx.obj["format"] = output_format

    if not ctx.invoked_subcommand:

        if version:
            click.echo(version_message)
            ctx.exit(0)

        click.echo(ctx.get_help())


def signature(ctx: click.Context, path: str) -> WSetoid:
    return WSetoid.from_file(path, ctx.obj["limits"])


@cli.command()
@click.pass_context
@click.argument("signature_path", type=click.Path(dir_okay=False))
@reports_errors
def validate(ctx: click.Context, signature_path: str) -> None:
    """check the setoid and transport laws of a signature"""

    ws = signature(ctx, signature_path)
    report = ws.validate()

    emit(ctx, [dump_value(violation) for violation in report])
    emit(ctx, [{"valid": not report, "violations": len(report)}])

    if report:
        ctx.exit(int(ExitCode.SEMANTIC))


@cli.command()
@click.pass_context
@click.argument("signature_path", type=click.Path(dir_okay=False))
@click.argument("tree_path", type=click.Path(dir_okay=False))
@click.argument("other_path", type=click.Path(dir_okay=False))
@reports_errors
def eq(ctx: click.Context, signature_path: str, tree_path: str, other_path: str) -> None:
    """decide whether two trees are related"""

    ws = signature(ctx, signature_path)
    emit(ctx, [{"per": ws.eq(ws.tree(tree_path), ws.tree(other_path))}])


@cli.command(name="check-ext")
@click.pass_context
@click.argument("signature_path", type=click.Path(dir_okay=False))
@click.argument("tree_path", type=click.Path(dir_okay=False))
@reports_errors
def check_ext(ctx: click.Context, signature_path: str, tree_path: str) -> None:
    """decide whether a tree is related to itself"""

    ws = signature(ctx, signature_path)
    emit(ctx, [{"extensional": ws.check_ext(ws.tree(tree_path))}])


@cli.command()
@click.pass_context
@click.argument("signature_path", type=click.Path(dir_okay=False))
@click.argument("algebra_path", type=click.Path(dir_okay=False))
@click.argument("tree_path", type=click.Path(dir_okay=False))
@reports_errors
def fold(ctx: click.Context, signature_path: str, algebra_path: str, tree_path: str) -> None:
    """fold an extensional tree into an algebra"""

    ws = signature(ctx, signature_path)
    emit(ctx, [{"value": ws.fold(ws.algebra(algebra_path), ws.tree(tree_path))}])


@cli.command(name="enumerate")
@click.pass_context
@click.argument("signature_path", type=click.Path(dir_okay=False))
@click.option("--depth", "local_depth", default=None, type=int, help="overrides the global depth")
@click.option("--trees", default=False, is_flag=True, help="list the enumerated trees")
@reports_errors
def enumerate_trees(
    ctx: click.Context, signature_path: str, local_depth: int | None, trees: bool
) -> None:
    """count the extensional trees up to a depth"""

    depth = local_depth if local_depth is not None else ctx.obj["depth"]
    universe = signature(ctx, signature_path).enumerate(depth)

    if trees:
        emit(ctx, [{"tree": w, "depth": w.depth} for w in universe.carrier])
    emit(ctx, [{"count": len(universe), "depth": depth}])


@cli.command()
@click.pass_context
@click.argument("signature_path", type=click.Path(dir_okay=False))
@click.argument("tree_path", type=click.Path(dir_okay=False))
@click.argument("other_path", type=click.Path(dir_okay=False))
@reports_errors
def witness(ctx: click.Context, signature_path: str, tree_path: str, other_path: str) -> None:
    """build the equality witness of two related trees"""

    ws = signature(ctx, signature_path)
    t = ws.witness(ws.tree(tree_path), ws.tree(other_path))
    emit(ctx, [dump_value(t) if t is not None else {"witness": None}])
