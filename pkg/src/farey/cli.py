"""CLI entry point for farey."""

from __future__ import annotations
import json
import logging
import sys
from contextlib import contextmanager
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional

import typer
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

# Newer typer releases bundle click as typer._click
try:
    from typer._click.exceptions import ClickException
except ImportError:
    from click import ClickException

from farey import __version__
from farey.carks import (
    cark_to_word,
    form_to_cark,
    fundamental_automorph,
    is_reciprocal,
    parse_cark,
    reciprocal_conjugator,
    word_to_cark,
    word_to_form,
)
from farey.config import load_config
from farey.congruence import (
    congruence_graph,
    get_family,
    index_formula,
    list_families,
    parse_congruence,
)
from farey.errors import FareyError, ParseError
from farey.forms import (
    class_representatives,
    class_table,
    compose,
    cycle,
    discriminant,
    evaluate,
    minimum,
    parse_form,
    pell_fundamental,
    reduce,
    representations,
    represents,
)
from farey.graphs import (
    SCHEMA_VERSION,
    RibbonGraph,
    farey_ball,
    fold_subgroup_graph,
    from_json,
    from_permutation_pair,
    parse_permutation,
    passport,
    subgroup_generators,
    summarize,
    to_dict,
)
from farey.render import RenderStyle, cark_pdf, cark_svg, to_dot
from farey.words import (
    classify,
    conjugacy_normal_form,
    matrix_to_word,
    parse_matrix,
    parse_word,
    word_to_matrix,
)

logger = logging.getLogger(__name__)

app = typer.Typer(
    name="farey",
    help="Modular group words, modular graphs, çarks and indefinite binary quadratic forms.",
    add_completion=False,
)
word_app = typer.Typer(help="Words and matrices in PSL(2,Z).", no_args_is_help=True)
graph_app = typer.Typer(help="Modular graphs: folding, congruence subgroups, passports.", no_args_is_help=True)
cark_app = typer.Typer(help="Çarks of hyperbolic elements.", no_args_is_help=True)
form_app = typer.Typer(help="Indefinite binary quadratic forms.", no_args_is_help=True)
app.add_typer(word_app, name="word")
app.add_typer(graph_app, name="graph")
app.add_typer(cark_app, name="cark")
app.add_typer(form_app, name="form")

console = Console()
err_console = Console(stderr=True)

# Lets "-1,1,1" and "-7" through as arguments
NUMERIC_ARGS = {"ignore_unknown_options": True}


@dataclass
class Options:
    """Settings shared by all subcommands, after config and flags are merged."""
    json_output: bool = False
    jobs: int = 1
    limit: int = 10_000_000
    svg_size: float = 320.0


def _options(ctx: typer.Context) -> Options:
    return ctx.obj if isinstance(ctx.obj, Options) else Options()


def _setup_logging(verbose: bool):
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(console=err_console, show_time=False, show_path=False)],
        force=True,
    )


def _emit(ctx: typer.Context, text: str, payload: Dict[str, Any]):
    if _options(ctx).json_output:
        typer.echo(json.dumps({"schemaVersion": SCHEMA_VERSION, **payload}, sort_keys=True))
    else:
        typer.echo(text)


@contextmanager
def _reporting(ctx: typer.Context) -> Iterator[None]:
    """Turn domain errors into exit status 2, and text syntax errors into 1."""
    try:
        yield
    except FareyError as e:
        if _options(ctx).json_output:
            error = {"code": e.code, "message": str(e)}
            typer.echo(json.dumps({"schemaVersion": SCHEMA_VERSION, "error": error}, sort_keys=True))
        else:
            err_console.print(f"Error: {e}", style="red", markup=False, highlight=False)
        raise typer.Exit(1 if isinstance(e, ParseError) else 2)


@app.callback(invoke_without_command=True)
def callback(
    ctx: typer.Context,
    json_output: bool = typer.Option(False, "--json", help="Machine-readable JSON output"),
    verbose: bool = typer.Option(False, "--verbose", help="Debug logging on stderr"),
    limit: Optional[int] = typer.Option(None, "--limit", help="Largest discriminant for class enumeration"),
    jobs: Optional[int] = typer.Option(None, "--jobs", "-j", help="Worker processes for class enumeration"),
    config: Optional[Path] = typer.Option(None, "--config", help="TOML config file"),
    version: bool = typer.Option(False, "--version", help="Show version"),
):
    """farey: the modular group, its subgroups and binary quadratic forms."""
    if version:
        typer.echo(f"farey {__version__}")
        raise typer.Exit()
    settings = load_config(config)
    _setup_logging(verbose or settings.verbose)
    ctx.obj = Options(
        json_output=json_output or settings.json_output,
        jobs=max(1, jobs if jobs is not None else settings.jobs),
        limit=limit if limit is not None else settings.class_number_limit,
        svg_size=settings.svg_size,
    )
    logger.debug("options: %s", ctx.obj)
    if ctx.invoked_subcommand is None:
        typer.echo(ctx.get_help())


# word


@word_app.command("classify")
def word_classify(ctx: typer.Context, word: str = typer.Argument(..., help="Word such as LSLLS or (LS)^6")):
    """Identity, elliptic, parabolic or hyperbolic, with the absolute trace."""
    with _reporting(ctx):
        w = parse_word(word)
        kind = classify(w)
        payload = {"word": str(w), "kind": kind.kind.value, "trace": kind.abs_trace}
        if kind.order is not None:
            payload["order"] = kind.order
        _emit(ctx, str(kind), payload)


@word_app.command("matrix")
def word_matrix(ctx: typer.Context, word: str = typer.Argument(..., help="Word to multiply out")):
    """Matrix p,q;r,s of a word, up to sign."""
    with _reporting(ctx):
        w = parse_word(word)
        m = word_to_matrix(w)
        _emit(ctx, str(m), {"word": str(w), "matrix": list(m.as_tuple())})


@word_app.command("of-matrix", context_settings=NUMERIC_ARGS)
def word_of_matrix(ctx: typer.Context, matrix: str = typer.Argument(..., help="Matrix p,q;r,s of determinant 1")):
    """Normal-form word of a matrix."""
    with _reporting(ctx):
        m = parse_matrix(matrix)
        w = matrix_to_word(m)
        _emit(ctx, str(w), {"matrix": list(m.as_tuple()), "word": str(w)})


@word_app.command("normal")
def word_normal(
    ctx: typer.Context,
    word: str = typer.Argument(..., help="Word to normalize"),
    cyclic: bool = typer.Option(False, "--cyclic", "-c", help="Canonical conjugate instead"),
):
    """Normal form of a word, or the canonical word of its conjugacy class."""
    with _reporting(ctx):
        w = parse_word(word)
        if not cyclic:
            _emit(ctx, str(w), {"word": str(w), "length": len(w)})
            return
        c, h = conjugacy_normal_form(w)
        _emit(ctx, str(c), {"word": str(w), "cyclic": str(c), "conjugator": str(h)})


# graph


def _load_graph(
    words: Optional[List[str]],
    congruence: Optional[str],
    sigma_s: Optional[str],
    sigma_l: Optional[str],
    path: Optional[Path],
    ball: Optional[int],
) -> RibbonGraph:
    given = [bool(words), congruence is not None, sigma_s is not None or sigma_l is not None,
             path is not None, ball is not None]
    if sum(given) != 1:
        raise typer.BadParameter("give exactly one of --word, --congruence, --sigma-s/--sigma-l, --file, --ball")
    if words:
        return fold_subgroup_graph([parse_word(w) for w in words])
    if congruence is not None:
        return congruence_graph(parse_congruence(congruence))
    if path is not None:
        if not path.exists():
            raise typer.BadParameter(f"file not found: {path}")
        return from_json(path.read_text())
    if ball is not None:
        if ball < 0:
            raise typer.BadParameter("--ball needs a non-negative radius")
        return farey_ball(ball)
    if sigma_s is None or sigma_l is None:
        raise typer.BadParameter("--sigma-s and --sigma-l go together")
    degree = max(len(parse_permutation(sigma_s)), len(parse_permutation(sigma_l)))
    return from_permutation_pair(parse_permutation(sigma_s, degree), parse_permutation(sigma_l, degree))


def _passport_text(g: RibbonGraph) -> str:
    p = passport(g)

    def joined(values) -> str:
        return ",".join(str(x) for x in values) or "-"

    return (
        f"d={p.edge_count} g={p.genus} n={p.punctures} "
        f"circ={joined(p.circ_degrees)} bullet={joined(p.bullet_degrees)} "
        f"faces={joined(p.face_degrees)} monodromy={p.monodromy_order} "
        f"orbifolds={p.circ_orbifolds},{p.bullet_orbifolds}"
    )


_WORD_OPTION = typer.Option(None, "--word", "-w", help="Subgroup generator (repeatable)")
_CONGRUENCE_OPTION = typer.Option(None, "--congruence", help="Congruence subgroup such as Gamma0(11)")
_SIGMA_S_OPTION = typer.Option(None, "--sigma-s", help="Action of S in 1-based cycle notation")
_SIGMA_L_OPTION = typer.Option(None, "--sigma-l", help="Action of L in 1-based cycle notation")
_FILE_OPTION = typer.Option(None, "--file", "-f", help="Graph JSON written by --json output")
_BALL_OPTION = typer.Option(None, "--ball", help="Farey tree ball of this radius")


@graph_app.command("fold")
def graph_fold(ctx: typer.Context, words: List[str] = typer.Argument(..., help="Generators of the subgroup")):
    """Fold generators into the core graph of their subgroup."""
    with _reporting(ctx):
        gens = [parse_word(w) for w in words]
        g = fold_subgroup_graph(gens)
        summary = summarize(g)
        read_back = [str(w) for w in subgroup_generators(g)]
        text = (
            f"edges={summary.edge_count} circles={summary.circ_vertices} "
            f"bullets={summary.bullet_vertices} stubs={summary.stub_count} "
            f"orbifolds={summary.circ_orbifolds},{summary.bullet_orbifolds} betti={summary.betti}\n"
            f"generators: {' '.join(read_back) or '1'}"
        )
        _emit(ctx, text, {"graph": to_dict(g), "summary": summary.as_dict(), "generators": read_back})


@graph_app.command("congruence")
def graph_congruence(ctx: typer.Context, subgroup: str = typer.Argument(..., help="Gamma0(N), Gamma1(N) or Gamma(N)")):
    """Coset graph of a congruence subgroup with its index and passport."""
    with _reporting(ctx):
        spec = parse_congruence(subgroup)
        g = congruence_graph(spec)
        text = f"{spec} index={g.edge_count}\n{_passport_text(g)}"
        _emit(ctx, text, {
            "subgroup": str(spec),
            "index": g.edge_count,
            "indexFormula": index_formula(spec),
            "passport": passport(g).as_dict(),
            "graph": to_dict(g),
        })


@graph_app.command("families")
def graph_families(ctx: typer.Context):
    """List the congruence subgroup families."""
    if _options(ctx).json_output:
        rows = [{"name": n, "symbol": get_family(n).symbol, "cosets": get_family(n).coset_model} for n in list_families()]
        _emit(ctx, "", {"families": rows})
        return
    table = Table(title="Congruence Families")
    table.add_column("Name", style="cyan")
    table.add_column("Symbol")
    table.add_column("Cosets")
    table.add_column("Description")
    for name in list_families():
        family = get_family(name)
        table.add_row(family.name, family.symbol, family.coset_model, family.description)
    console.print(table)


@graph_app.command("passport")
def graph_passport(
    ctx: typer.Context,
    words: Optional[List[str]] = _WORD_OPTION,
    congruence: Optional[str] = _CONGRUENCE_OPTION,
    sigma_s: Optional[str] = _SIGMA_S_OPTION,
    sigma_l: Optional[str] = _SIGMA_L_OPTION,
    path: Optional[Path] = _FILE_OPTION,
    ball: Optional[int] = _BALL_OPTION,
):
    """Passport of a finite modular graph."""
    with _reporting(ctx):
        g = _load_graph(words, congruence, sigma_s, sigma_l, path, ball)
        _emit(ctx, _passport_text(g), {"passport": passport(g).as_dict()})


@graph_app.command("dot")
def graph_dot(
    ctx: typer.Context,
    words: Optional[List[str]] = _WORD_OPTION,
    congruence: Optional[str] = _CONGRUENCE_OPTION,
    sigma_s: Optional[str] = _SIGMA_S_OPTION,
    sigma_l: Optional[str] = _SIGMA_L_OPTION,
    path: Optional[Path] = _FILE_OPTION,
    ball: Optional[int] = _BALL_OPTION,
):
    """DOT text of a modular graph."""
    with _reporting(ctx):
        g = _load_graph(words, congruence, sigma_s, sigma_l, path, ball)
        dot = to_dot(g)
        if _options(ctx).json_output:
            _emit(ctx, "", {"dot": dot})
        else:
            typer.echo(dot, nl=False)


# cark


@cark_app.command("of-word")
def cark_of_word(ctx: typer.Context, word: str = typer.Argument(..., help="Hyperbolic word")):
    """Çark of a hyperbolic element."""
    with _reporting(ctx):
        c = word_to_cark(parse_word(word))
        _emit(ctx, str(c), {
            "cark": str(c),
            "spine": "".join(c.spine),
            "multiplicity": c.multiplicity,
            "reciprocal": is_reciprocal(c),
            "word": str(cark_to_word(c)),
        })


@cark_app.command("of-form", context_settings=NUMERIC_ARGS)
def cark_of_form(ctx: typer.Context, form: str = typer.Argument(..., help="Form a,b,c")):
    """Çark attached to the class of a form."""
    with _reporting(ctx):
        f = parse_form(form)
        c = form_to_cark(f)
        _emit(ctx, str(c), {"form": list(f.as_tuple()), "cark": str(c), "spine": "".join(c.spine)})


@cark_app.command("svg")
def cark_svg_command(
    ctx: typer.Context,
    cark: str = typer.Argument(..., help="Spine over P and M, e.g. PPM or PM^2"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Write to file (.pdf writes a PDF)"),
    size: Optional[float] = typer.Option(None, "--size", help="Canvas size in points"),
):
    """Draw a çark as SVG (or PDF)."""
    with _reporting(ctx):
        c = parse_cark(cark)
        style = RenderStyle(size=size if size is not None else _options(ctx).svg_size)
        if output is not None and output.suffix.lower() == ".pdf":
            cark_pdf(c, output, style)
            err_console.print(f"[green]Wrote {output}[/green]")
            return
        svg = cark_svg(c, style)
        if output is not None:
            output.write_text(svg)
            err_console.print(f"[green]Wrote {output}[/green]")
        elif _options(ctx).json_output:
            _emit(ctx, "", {"cark": str(c), "svg": svg})
        else:
            typer.echo(svg, nl=False)


@cark_app.command("reciprocal")
def cark_reciprocal(ctx: typer.Context, word: str = typer.Argument(..., help="Hyperbolic word")):
    """Whether an element is conjugate to its inverse, with an involution doing it."""
    with _reporting(ctx):
        w = parse_word(word)
        z = reciprocal_conjugator(w)
        c = word_to_cark(w)
        text = f"reciprocal Z={z}" if z is not None else "not reciprocal"
        _emit(ctx, text, {
            "word": str(w),
            "cark": str(c),
            "reciprocal": z is not None,
            "conjugator": str(z) if z is not None else None,
        })


# form


def _triples(forms) -> List[List[int]]:
    return [list(f.as_tuple()) for f in forms]


_LIMIT_OPTION = typer.Option(None, "--limit", help="Largest discriminant for class enumeration")
_JOBS_OPTION = typer.Option(None, "--jobs", "-j", help="Worker processes for class enumeration")


def _class_options(ctx: typer.Context, limit: Optional[int], jobs: Optional[int]) -> Options:
    """Shared options, with --limit/--jobs given after the subcommand taking precedence."""
    opts = _options(ctx)
    return replace(
        opts,
        jobs=max(1, jobs) if jobs is not None else opts.jobs,
        limit=limit if limit is not None else opts.limit,
    )


@form_app.command("reduce", context_settings=NUMERIC_ARGS)
def form_reduce(ctx: typer.Context, form: str = typer.Argument(..., help="Form a,b,c")):
    """Reduced form equivalent to f, with the matrix m such that f∘m is reduced."""
    with _reporting(ctx):
        f = parse_form(form)
        g, m = reduce(f)
        _emit(ctx, f"{g} m={m}", {"form": list(f.as_tuple()), "reduced": list(g.as_tuple()), "matrix": list(m.as_tuple())})


@form_app.command("cycle", context_settings=NUMERIC_ARGS)
def form_cycle(ctx: typer.Context, form: str = typer.Argument(..., help="Form a,b,c")):
    """The cycle of reduced forms in the class of f."""
    with _reporting(ctx):
        cls = cycle(parse_form(form))
        _emit(ctx, " ".join(str(g) for g in cls), {"discriminant": cls.discriminant, "cycle": _triples(cls)})


@form_app.command("class-number", context_settings=NUMERIC_ARGS)
def form_class_number(
    ctx: typer.Context,
    discriminant: int = typer.Argument(..., help="Positive non-square discriminant, 0 or 1 mod 4"),
    show: bool = typer.Option(False, "--list", "-l", help="Also list one reduced form per class"),
    limit: Optional[int] = _LIMIT_OPTION,
    jobs: Optional[int] = _JOBS_OPTION,
):
    """Number of classes of primitive forms of a discriminant."""
    with _reporting(ctx):
        opts = _class_options(ctx, limit, jobs)
        classes = class_representatives(discriminant, jobs=opts.jobs, limit=opts.limit)
        text = str(len(classes))
        if show:
            text += "".join(f"\n{c.representative} cycle={len(c)}" for c in classes)
        _emit(ctx, text, {
            "discriminant": discriminant,
            "classNumber": len(classes),
            "classes": [_triples(c) for c in classes],
        })


@form_app.command("class-group", context_settings=NUMERIC_ARGS)
def form_class_group(
    ctx: typer.Context,
    discriminant: int = typer.Argument(..., help="Positive non-square discriminant, 0 or 1 mod 4"),
    limit: Optional[int] = _LIMIT_OPTION,
    jobs: Optional[int] = _JOBS_OPTION,
):
    """Composition table of the classes of a discriminant."""
    with _reporting(ctx):
        opts = _class_options(ctx, limit, jobs)
        table = class_table(discriminant, jobs=opts.jobs, limit=opts.limit)
        reps = list(dict.fromkeys(x for x, _ in table))
        if opts.json_output:
            _emit(ctx, "", {
                "discriminant": discriminant,
                "classes": _triples(reps),
                "table": [[list(x.as_tuple()), list(y.as_tuple()), list(z.as_tuple())] for (x, y), z in table.items()],
            })
            return
        grid = Table(title=f"Class group of discriminant {discriminant}")
        grid.add_column("∘", style="cyan")
        for y in reps:
            grid.add_column(str(y))
        for x in reps:
            grid.add_row(str(x), *(str(table[x, y]) for y in reps))
        console.print(grid)


@form_app.command("compose", context_settings=NUMERIC_ARGS)
def form_compose(
    ctx: typer.Context,
    first: str = typer.Argument(..., help="Form a,b,c"),
    second: str = typer.Argument(..., help="Form a,b,c of the same discriminant"),
):
    """Gauss product of two classes."""
    with _reporting(ctx):
        f1, f2 = parse_form(first), parse_form(second)
        g = compose(f1, f2)
        _emit(ctx, str(g), {"forms": _triples([f1, f2]), "product": list(g.as_tuple())})


@form_app.command("pell", context_settings=NUMERIC_ARGS)
def form_pell(ctx: typer.Context, discriminant: int = typer.Argument(..., help="Positive non-square discriminant")):
    """Least positive solution of t² - Δu² = 4."""
    with _reporting(ctx):
        sol = pell_fundamental(discriminant)
        _emit(ctx, str(sol), {"discriminant": discriminant, "t": sol.t, "u": sol.u})


@form_app.command("minimum", context_settings=NUMERIC_ARGS)
def form_minimum(ctx: typer.Context, form: str = typer.Argument(..., help="Form a,b,c")):
    """Least positive value of a form."""
    with _reporting(ctx):
        f = parse_form(form)
        value = minimum(f)
        _emit(ctx, str(value), {"form": list(f.as_tuple()), "minimum": value})


@form_app.command("evaluate", context_settings=NUMERIC_ARGS)
def form_evaluate(
    ctx: typer.Context,
    form: str = typer.Argument(..., help="Form a,b,c"),
    x: int = typer.Argument(..., help="First variable"),
    y: int = typer.Argument(..., help="Second variable"),
):
    """Value f(x, y)."""
    with _reporting(ctx):
        f = parse_form(form)
        value = evaluate(f, x, y)
        _emit(ctx, str(value), {"form": list(f.as_tuple()), "x": x, "y": y, "value": value})


@form_app.command("represents", context_settings=NUMERIC_ARGS)
def form_represents(
    ctx: typer.Context,
    form: str = typer.Argument(..., help="Form a,b,c"),
    target: int = typer.Argument(..., help="Nonzero integer N"),
    show_all: bool = typer.Option(False, "--all", "-a", help="One solution per automorph orbit"),
):
    """Decide whether f(x,y) = N has an integer solution."""
    with _reporting(ctx):
        f = parse_form(form)
        result = represents(f, target)
        payload: Dict[str, Any] = {
            "form": list(f.as_tuple()),
            "target": target,
            "found": result.found,
            "witness": list(result.witness) if result.found else None,
        }
        if result.found:
            text = f"yes x={result.witness[0]} y={result.witness[1]}"
        else:
            text = "no"
            payload["checked"] = _triples(result.checked)
        if show_all:
            orbits = representations(f, target)
            payload["orbits"] = [list(xy) for xy in orbits]
            text += "".join(f"\n({x},{y})" for x, y in orbits)
        _emit(ctx, text, payload)


@form_app.command("of-word")
def form_of_word(ctx: typer.Context, word: str = typer.Argument(..., help="Hyperbolic word")):
    """Primitive form whose roots are the fixed points of a hyperbolic element."""
    with _reporting(ctx):
        f = word_to_form(parse_word(word))
        d = discriminant(f)
        _emit(ctx, f"{f} disc={d}", {"form": list(f.as_tuple()), "discriminant": d})


@form_app.command("to-word", context_settings=NUMERIC_ARGS)
def form_to_word_command(ctx: typer.Context, form: str = typer.Argument(..., help="Form a,b,c")):
    """Word of the fundamental automorph of a form."""
    with _reporting(ctx):
        f = parse_form(form)
        m = fundamental_automorph(f)
        w = matrix_to_word(m)
        _emit(ctx, str(w), {"form": list(f.as_tuple()), "automorph": list(m.as_tuple()), "word": str(w)})


def run(argv: Optional[List[str]] = None) -> int:
    """
    Run the CLI and return its exit status.

    0 on success, 2 on a domain error, 1 on a usage error (bad option,
    missing argument or malformed text).
    """
    try:
        status = app(args=argv, prog_name="farey", standalone_mode=False)
    except ClickException as e:
        e.show()
        return 1
    except typer.Abort:
        err_console.print("Aborted!", style="red")
        return 1
    return status if isinstance(status, int) else 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
