"""CLI module for cluster-index-cli."""

import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Optional

import typer
from pydantic import ValidationError
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from cluster_index.config import configure_logging, settings
from cluster_index.errors import ClusterIndexError, IoError, ParseError
from cluster_index.formats import (
    check_params,
    dump_dimension,
    dump_index_vector,
    dump_triangle,
    dump_triangulation,
    infer_params,
    load_triangulation,
    parse_arc,
    parse_object,
)
from cluster_index.homext import ext_dim, hom_dim
from cluster_index.index import IndexVector, additivity_defect, approximation_triangle, index
from cluster_index.oracle import run_suite
from cluster_index.render import RenderSpec, save
from cluster_index.surface import Arc, ModelParams, Window
from cluster_index.triangles import Triangle, dual_extension_triangle, extension_triangle
from cluster_index.triangulation import FanTriangulation, flip

app = typer.Typer(help="Exact index computations in the completed discrete cluster category")
console = Console(no_color=settings.NO_COLOR, soft_wrap=True)

TriangulationOption = typer.Option(
    ..., "-t", "--triangulation", exists=True, dir_okay=False, help="Triangulation JSON file"
)


@contextmanager
def handle_errors() -> Iterator[None]:
    """Map parse errors to exit code 2 and domain errors to exit code 1."""
    try:
        yield
    except (ParseError, ValidationError) as e:
        console.print(f"[red]ParseError: {escape(str(e))}[/red]")
        sys.exit(2)
    except ClusterIndexError as e:
        console.print(f"[red]{type(e).__name__}: {escape(str(e))}[/red]")
        sys.exit(1)


def _params(n: Optional[int], arcs: list[Arc]) -> ModelParams:
    params = ModelParams(n) if n is not None else infer_params(arcs)
    check_params(params, arcs)
    return params


def _vector_table(v: IndexVector, title: str) -> Table:
    table = Table(title=escape(title))
    table.add_column("Arc", style="cyan")
    table.add_column("Coefficient", justify="right")
    for arc, value in v.coeffs:
        table.add_row(escape(str(arc)), str(value))
    return table


def _print_vector(v: IndexVector, as_json: bool, title: str) -> None:
    if as_json:
        typer.echo(dump_index_vector(v))
    elif v.is_zero:
        console.print("0")
    else:
        console.print(_vector_table(v, title))


def _print_dim(dim: int, params: ModelParams, as_json: bool) -> None:
    if as_json:
        typer.echo(dump_dimension(dim, params))
    else:
        console.print(str(dim))


def _print_triangle(t: Triangle) -> None:
    console.print(f"[bold]{t.kind}[/bold]")
    console.print(escape(f"{t.a} -> {t.b} -> {t.c}"))
    for source, target in t.connecting:
        console.print(escape(f"  connecting {source} -> {target}"))


@app.callback()
def main(
    log_level: Optional[str] = typer.Option(None, "--log-level", help="Override LOG_LEVEL"),
):
    """Exact Hom/Ext, triangles, indices and flips for fan triangulations."""
    configure_logging(log_level)


@app.command()
def version():
    """Show version information."""
    from cluster_index import __version__

    console.print(f"[bold]cluster-index-cli[/bold] version {__version__}")


@app.command()
def hom(
    b: str = typer.Argument(..., help="Source arc, e.g. '[a1, r0:0]'"),
    c: str = typer.Argument(..., help="Target arc"),
    n: Optional[int] = typer.Option(None, "--n", help="Number of accumulation points"),
    as_json: bool = typer.Option(False, "--json", help="Print a JSON document"),
):
    """Print dim Hom(B, C)."""
    with handle_errors():
        source, target = parse_arc(b), parse_arc(c)
        params = _params(n, [source, target])
        _print_dim(hom_dim(source, target), params, as_json)


@app.command()
def ext(
    c: str = typer.Argument(..., help="First arc C"),
    a: str = typer.Argument(..., help="Second arc A"),
    n: Optional[int] = typer.Option(None, "--n", help="Number of accumulation points"),
    as_json: bool = typer.Option(False, "--json", help="Print a JSON document"),
):
    """Print dim Ext^1(C, A)."""
    with handle_errors():
        first, second = parse_arc(c), parse_arc(a)
        params = _params(n, [first, second])
        _print_dim(ext_dim(first, second), params, as_json)


@app.command()
def triangle(
    c: str = typer.Argument(..., help="Arc C"),
    a: str = typer.Argument(..., help="Arc A"),
    dual: bool = typer.Option(False, "--dual", help="Build C -> D -> A instead"),
    n: Optional[int] = typer.Option(None, "--n", help="Number of accumulation points"),
    as_json: bool = typer.Option(False, "--json", help="Print a JSON document"),
):
    """Print the triangle A -> B -> C -> ΣA of the nonzero class in Ext^1(C, A)."""
    with handle_errors():
        third, first = parse_arc(c), parse_arc(a)
        params = _params(n, [first, third])
        t = dual_extension_triangle(first, third) if dual else extension_triangle(third, first)
        if as_json:
            typer.echo(dump_triangle(t, params))
        else:
            _print_triangle(t)


@app.command("index")
def index_command(
    obj: str = typer.Argument(..., help="Object, e.g. '[[a0,r1:0];[a0,r0:0]]'"),
    triangulation: Path = TriangulationOption,
    as_json: bool = typer.Option(False, "--json", help="Print the IndexVector document"),
):
    """Print the index of an object with respect to a fan triangulation."""
    with handle_errors():
        X = load_triangulation(triangulation)
        m = parse_object(obj)
        check_params(X.params, m)
        _print_vector(index(X, m), as_json, f"ind {m}")


@app.command("flip")
def flip_command(
    arc: str = typer.Argument(..., help="Member arc to flip"),
    triangulation: Path = TriangulationOption,
    output: Optional[Path] = typer.Option(None, "-o", "--output", help="Write the result here"),
):
    """Flip a triangulation at an arc and print the new triangulation JSON."""
    with handle_errors():
        X = load_triangulation(triangulation)
        x = parse_arc(arc)
        check_params(X.params, [x])
        Y, q = flip(X, x)
        document = dump_triangulation(Y)
        if output is not None:
            try:
                output.write_text(document + "\n")
            except OSError as e:
                raise IoError(f"cannot write {output}: {e}") from e
            console.print(escape(f"flipped {q.x} to {q.y}, wrote {output}"))
        else:
            typer.echo(document)


@app.command()
def defect(
    arcs: list[str] = typer.Argument(None, help="End terms C A of an extension triangle"),
    triangulation: Path = TriangulationOption,
    approx: Optional[str] = typer.Option(None, "--approx", help="Use the approximation triangle of C"),
    as_json: bool = typer.Option(False, "--json", help="Print the IndexVector document"),
):
    """Print the additivity defect ind(A) - ind(B) + ind(C) of a triangle."""
    with handle_errors():
        X = load_triangulation(triangulation)
        t = _triangle_for(X, arcs or [], approx)
        if not as_json:
            _print_triangle(t)
        _print_vector(additivity_defect(X, t), as_json, "defect")


def _triangle_for(X: FanTriangulation, arcs: list[str], approx: Optional[str]) -> Triangle:
    if approx is not None:
        c = parse_arc(approx)
        check_params(X.params, [c])
        return approximation_triangle(X, c)
    if len(arcs) != 2:
        raise ParseError("defect needs the two arcs C A or --approx C")
    c, a = parse_arc(arcs[0]), parse_arc(arcs[1])
    check_params(X.params, [c, a])
    return extension_triangle(c, a)


@app.command()
def verify(
    triangulation: Path = TriangulationOption,
    window: int = typer.Option(settings.SUITE_WINDOW, "--window", min=0, help="Window bound"),
    seed: int = typer.Option(settings.SEED, "--seed", help="Sampling seed"),
    samples: int = typer.Option(settings.SAMPLE_SIZE, "--samples", min=1, help="Sample size"),
):
    """Run the windowed oracle suites against a triangulation."""
    with handle_errors():
        X = load_triangulation(triangulation)
        reports = run_suite(X, Window(window), seed=seed, samples=samples)
        for report in reports:
            typer.echo(report.to_json_lines())

        table = Table(title=f"Oracle (window {window}, seed {seed})")
        table.add_column("Check", style="cyan")
        table.add_column("Checked", justify="right")
        table.add_column("Failures", justify="right")
        table.add_column("Alarms", justify="right")
        for report in reports:
            status = "[green]0[/green]" if report.passed else f"[red]{len(report.failures)}[/red]"
            table.add_row(report.name, str(report.checked), status, str(len(report.alarms)))
        console.print(table)

        if not all(report.passed for report in reports):
            sys.exit(1)


@app.command()
def render(
    triangulation: Optional[Path] = typer.Option(
        None, "-t", "--triangulation", exists=True, dir_okay=False, help="Triangulation JSON file"
    ),
    arcs_file: Optional[Path] = typer.Option(
        None, "--arcs", exists=True, dir_okay=False, help="File with one arc per line"
    ),
    output: Path = typer.Option(..., "-o", "--output", help="SVG file to write"),
    window: int = typer.Option(6, "--window", min=0, help="Window of labelled points"),
    n: Optional[int] = typer.Option(None, "--n", help="Number of accumulation points"),
):
    """Draw a triangulation and/or an arc list as SVG."""
    with handle_errors():
        arcs: list[Arc] = []
        if arcs_file is not None:
            try:
                lines = arcs_file.read_text().splitlines()
            except OSError as e:
                raise IoError(f"cannot read {arcs_file}: {e}") from e
            arcs = [parse_arc(line) for line in lines if line.strip() and not line.startswith("#")]
        if triangulation is not None:
            X = load_triangulation(triangulation)
            params = X.params
            check_params(params, arcs)
            arcs += X.members_in_window(Window(window))
        else:
            params = _params(n, arcs)
        spec = RenderSpec(output=output, window=Window(window))
        save(spec, params, arcs)
        console.print(f"[green]Wrote {escape(str(output))}[/green]")


if __name__ == "__main__":
    app()
