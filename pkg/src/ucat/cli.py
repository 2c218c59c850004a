"""Command line interface.

    ucat validate  --rus rules.rus --usecase upload.usecase
    ucat entities  --rus rules.rus --usecase upload.usecase
    ucat tuples    --rus rules.rus --usecase upload.usecase
    ucat ontology  --rus ... --usecase ... --types ... --base IRI --out out.omn
    ucat query     --rus ... --usecase ... --types ... --base IRI query.rq
    ucat match     --rus ... --usecase ... --types ... --base IRI --catalog DIR
    ucat serve     --port 8000 [--catalog DIR] [--ui DIR]
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from .catalog import CatalogError, load_catalog_dir, match_patterns
from .ontology import OntologyError, UntypedIndividuals, serialize_manchester
from .pipeline import (
    DEFAULT_BASE,
    PipelineError,
    run_extraction,
    run_pipeline,
    shorten_term,
)
from .query import SparqlSyntaxError, eval_ask, eval_select, parse_query
from .rus import RusError, parse_rus
from .typemap import TypesError
from .usecase import parse_usecase_file

_file = click.Path(exists=True, dir_okay=False, path_type=Path)
_dir = click.Path(exists=True, file_okay=False, path_type=Path)


def _input_options(f):
    f = click.option("--usecase", "usecase_path", required=True, type=_file,
                     help="Use-case statement file.")(f)
    f = click.option("--rus", "rus_path", required=True, type=_file,
                     help="Statement rule file.")(f)
    return f


def _ontology_options(f):
    f = click.option("--base", envvar="UCAT_BASE_IRI", default=DEFAULT_BASE,
                     show_default=True, help="Base IRI for generated entities.")(f)
    f = click.option("--types", "types_path", type=_file, default=None,
                     help="Class declarations and assignments.")(f)
    return f


@click.group()
def main() -> None:
    """Turn controlled use-case statements into an ontology and query it."""


def _extract(rus_path: Path, usecase_path: Path):
    rus = parse_rus(rus_path.read_text(encoding="utf-8"))
    lines = parse_usecase_file(usecase_path.read_text(encoding="utf-8"))
    return run_extraction(rus, lines)


@main.command()
@_input_options
def validate(rus_path: Path, usecase_path: Path) -> None:
    """Check every use-case line against the rules."""
    try:
        extraction = _extract(rus_path, usecase_path)
    except RusError as exc:
        click.echo(f"{rus_path.name}: {exc}")
        sys.exit(1)
    if extraction.ok:
        click.echo("OK")
        return
    for error in extraction.errors:
        click.echo(error.render())
    sys.exit(1)


def _extract_or_die(rus_path: Path, usecase_path: Path):
    try:
        extraction = _extract(rus_path, usecase_path)
    except RusError as exc:
        raise click.ClickException(f"{rus_path.name}: {exc}") from exc
    if not extraction.ok:
        for error in extraction.errors:
            click.echo(error.render(), err=True)
        sys.exit(1)
    return extraction


@main.command()
@_input_options
def entities(rus_path: Path, usecase_path: Path) -> None:
    """Print extracted entity names by category."""
    extraction = _extract_or_die(rus_path, usecase_path)
    ent = extraction.entities
    for prefix, names in (
        ("r", ent.relations),
        ("i", ent.individuals),
        ("d", ent.data_properties),
        ("t", ent.types),
    ):
        click.echo(f"{prefix}:" + "".join(f"{name}," for name in names))


@main.command()
@_input_options
def tuples(rus_path: Path, usecase_path: Path) -> None:
    """Print the 4-tuple for every (expanded) statement."""
    extraction = _extract_or_die(rus_path, usecase_path)
    for tup in extraction.tuples:
        click.echo(tup.render())


def _pipeline_or_die(rus_path, usecase_path, types_path, base, permissive=False):
    try:
        return run_pipeline(
            rus_path.read_text(encoding="utf-8"),
            usecase_path.read_text(encoding="utf-8"),
            types_path.read_text(encoding="utf-8") if types_path else None,
            base=base,
            permissive=permissive,
        )
    except (RusError, TypesError) as exc:
        raise click.ClickException(str(exc)) from exc
    except UntypedIndividuals as exc:
        click.echo("untyped individuals: " + ", ".join(exc.names), err=True)
        sys.exit(1)
    except OntologyError as exc:
        raise click.ClickException(str(exc)) from exc
    except PipelineError as exc:
        for error in exc.errors:
            click.echo(error.render(), err=True)
        sys.exit(1)


@main.command()
@_input_options
@_ontology_options
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False, path_type=Path),
              help="Where to write the Manchester-syntax document.")
@click.option("--permissive", is_flag=True, help="Allow individuals without a class.")
def ontology(rus_path, usecase_path, types_path, base, out_path, permissive) -> None:
    """Generate the Manchester-syntax ontology."""
    result = _pipeline_or_die(rus_path, usecase_path, types_path, base, permissive)
    if permissive and result.report.untyped:
        click.echo("warning: untyped individuals: " + ", ".join(result.report.untyped), err=True)
    out_path.write_text(serialize_manchester(result.ontology), encoding="utf-8")
    click.echo(f"PREFIX ont: <{result.ontology.base}#>")


@main.command()
@_input_options
@_ontology_options
@click.argument("query_path", type=_file)
def query(rus_path, usecase_path, types_path, base, query_path) -> None:
    """Run an ASK or SELECT query against the generated ontology."""
    result = _pipeline_or_die(rus_path, usecase_path, types_path, base)
    try:
        parsed = parse_query(query_path.read_text(encoding="utf-8"))
    except SparqlSyntaxError as exc:
        raise click.ClickException(f"{query_path.name}: {exc}") from exc
    if parsed.form == "ask":
        click.echo("true" if eval_ask(parsed, result.graph) else "false")
        return
    rows = eval_select(parsed, result.graph)
    click.echo("\t".join(f"?{name}" for name in rows.variables))
    for row in rows.rows:
        click.echo("\t".join(shorten_term(term, result.ontology.base) for term in row))


@main.command()
@_input_options
@_ontology_options
@click.option("--catalog", "catalog_path", required=True, type=_dir,
              help="Directory of *.rq pattern files.")
def match(rus_path, usecase_path, types_path, base, catalog_path) -> None:
    """Report which catalog patterns the use case exhibits."""
    result = _pipeline_or_die(rus_path, usecase_path, types_path, base)
    try:
        catalog = load_catalog_dir(catalog_path)
    except (CatalogError, SparqlSyntaxError) as exc:
        raise click.ClickException(str(exc)) from exc
    for name, matched in match_patterns(catalog, result.graph):
        click.echo(f"{name}: MATCH" if matched else f"{name}: no match")


@main.command()
@click.option("--port", default=8000, show_default=True, type=int)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--catalog", "catalog_path", type=_dir, default=None,
              help="Directory of *.rq pattern files for /api/sessions/*/match.")
@click.option("--ui", "ui_path", type=_dir, default=None,
              help="Static UI directory (defaults to frontend/dist if present).")
def serve(port: int, host: str, catalog_path, ui_path) -> None:
    """Serve the HTTP API (and the web UI when built)."""
    import uvicorn

    from .service import create_app

    if ui_path is None:
        candidate = Path("frontend") / "dist"
        ui_path = candidate if candidate.is_dir() else None
    app = create_app(catalog_dir=catalog_path, ui_dir=ui_path)
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
