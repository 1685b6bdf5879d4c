"""Command-line interface for gorpoincare."""

import logging
import sys
from contextlib import contextmanager
from typing import Any, Callable, Iterator

import click

from gorpoincare import __version__
from gorpoincare.algebra.apolarity import (
    algebra_to_dict,
    build_algebra,
    dump_dual_generator,
    load_dual_generator,
    power_ideal,
    socle_quotient,
)
from gorpoincare.algebra.compressed import is_compressed, profile
from gorpoincare.core.config import build_config
from gorpoincare.core.errors import ConfigError, GorPoincareError
from gorpoincare.core.harness import Harness, corpus_cases, run_property_corpus
from gorpoincare.core.models import MAP_CHECKS, SUITES, RunConfig
from gorpoincare.core.report import FORMATS, dumps_json, render_reports, render_table, write_output
from gorpoincare.homology.modules import from_algebra, ideal_module
from gorpoincare.homology.resolution import minimal_resolution
from gorpoincare.series.formulas import dr_even_closed_form, dr_from_poqr, poqr_even_closed_form

EXIT_FAILURE = 1
EXIT_USAGE = 3
# d_R routes: measured Po^Q_R, closed form in (e, s), d_R from the closed Po^Q_R
DR_ROUTES = ("t1", "t2", "lemma56")

LOG_FORMAT = "%(name)s:%(levelname)s:%(message)s"


class CliError(click.ClickException):
    """ClickException carrying one of the documented exit codes."""

    def __init__(self, message: str, exit_code: int = EXIT_FAILURE):
        super().__init__(message)
        self.exit_code = exit_code


@contextmanager
def handle_errors() -> Iterator[None]:
    """Turn library errors into CLI errors: configuration problems exit 3, the rest 1."""
    try:
        yield
    except ConfigError as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc
    except GorPoincareError as exc:
        raise CliError(f"{type(exc).__name__}: {exc}", EXIT_FAILURE) from exc


def configure_logging(verbose: int) -> None:
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbose, logging.DEBUG)
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)


def instance_options(func: Callable) -> Callable:
    """Options shared by every command that works on one sampled instance."""
    options = [
        click.option("--e", "e", type=int, default=None, help="Embedding dimension"),
        click.option("--s", "s", type=int, default=None, help="Socle degree"),
        click.option("--prime", type=int, default=None, help="Characteristic (default 32003)"),
        click.option("--seed", type=int, default=None, help="Base seed for sampling"),
        click.option("--trunc", "steps", type=int, default=None, help="Homological truncation N"),
        click.option("--degree-cap", type=int, default=None, help="Internal degree truncation D"),
        click.option(
            "--allow-s3", is_flag=True, default=False, help="Measure-only exploration for s = 3"
        ),
        click.option(
            "--config", "config_file", type=click.Path(exists=True), default=None,
            help="YAML run file",
        ),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def output_options(func: Callable) -> Callable:
    options = [
        click.option(
            "-f", "--format", "fmt", type=click.Choice(FORMATS), default=None,
            help="Output format (default json)",
        ),
        click.option("-o", "--out", type=click.Path(), default=None, help="Output file"),
        click.option("--timings", is_flag=True, default=False, help="Include timings in reports"),
        click.option("-v", "--verbose", count=True, help="-v for INFO, -vv for DEBUG logging"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def make_config(params: dict[str, Any], **extra: Any) -> RunConfig:
    overrides = {
        "e": params.get("e"),
        "s": params.get("s"),
        "prime": params.get("prime"),
        "seed": params.get("seed"),
        "steps": params.get("steps"),
        "degree_cap": params.get("degree_cap"),
        "exploration": params.get("allow_s3") or None,
        "output_format": params.get("fmt"),
        "timings": params.get("timings") or None,
        **extra,
    }
    return build_config(overrides, params.get("config_file"))


def emit(text: str, out: str | None) -> None:
    if out:
        path = write_output(text, out)
        click.echo(f"Written to: {path}", err=True)
    else:
        click.echo(text, nl=not text.endswith("\n"))


@click.group(invoke_without_command=True)
@click.version_option(version=__version__, prog_name="gorpoincare")
@click.pass_context
def main(ctx: click.Context) -> None:
    """gorpoincare - Poincare series of compressed Gorenstein algebras.

    Samples compressed Gorenstein Artinian algebras over F_p, resolves modules
    over them and over their polynomial and hypersurface covers, and checks the
    measured Betti numbers against closed-form rational expressions.

    \b
    Examples:
        gorpoincare gen --e 3 --s 4 --seed 7 -o f.dual
        gorpoincare betti --e 3 --s 4 --ring r --module k
        gorpoincare verify --e 3 --s 4 --suite all -f markdown
    """
    if ctx.invoked_subcommand is None:
        click.echo(ctx.get_help())


@main.command()
@instance_options
@output_options
def gen(**params: Any) -> None:
    """Sample a compressed algebra and print its dual generator.

    With --format json the algebra itself (Hilbert function, bases of I_d)
    is printed next to the generator.
    """
    configure_logging(params["verbose"])
    with handle_errors():
        cfg = make_config(params, suites=[])
        sampled = Harness(cfg).sampled
        text = dump_dual_generator(
            sampled.algebra.generator,
            header=f"e={cfg.e} s={cfg.s} p={cfg.prime} seed={sampled.seed}",
        )
        if cfg.output_format == "json":
            data = {"seed": sampled.seed, "retries": sampled.retries, "dual_generator": text}
            text = dumps_json(dict(data, algebra=algebra_to_dict(sampled.algebra)))
    emit(text, params["out"])


@main.command()
@instance_options
@output_options
@click.option(
    "--dual", type=click.Path(exists=True), default=None,
    help="Read the dual generator from a file instead of sampling",
)
def hilbert(dual: str | None, **params: Any) -> None:
    """Hilbert function of R against the compressed bound eps."""
    configure_logging(params["verbose"])
    with handle_errors():
        if dual is not None:
            prime = params["prime"] or 32003
            R = build_algebra(load_dual_generator(dual, prime, params["e"]))
            fmt = params["fmt"] or "json"
        else:
            cfg = make_config(params, suites=[])
            R = Harness(cfg).algebra
            fmt = cfg.output_format
        verdict = is_compressed(R)
        bound = profile(max(R.effective_e, 1), R.s).eps
    rows = [
        {"degree": d, "h": h, "eps": bound[d] if d < len(bound) else 0}
        for d, h in enumerate(R.hilbert_function())
    ]
    meta = {"e": R.e, "s": R.s, "p": R.modulus, "compressed": verdict.compressed}
    emit(render_table("hilbert", meta, rows, ["degree", "h", "eps"], fmt), params["out"])


def resolve_target(harness: Harness, ring: str, module: str):
    """(ring, module) pair for the betti command."""
    R = harness.algebra
    rings = {"q": lambda: harness.q, "p": lambda: harness.hypersurface, "r": lambda: R}
    if module == "k":
        target = harness.residue
    elif module == "r":
        target = harness.module_r
    elif module == "socle-quotient":
        target = from_algebra(socle_quotient(R), "R/Soc R")
    elif module.startswith("power:"):
        try:
            i = int(module.split(":", 1)[1])
        except ValueError as exc:
            raise ConfigError(f"bad module {module!r}; use power:i") from exc
        target = ideal_module(R, power_ideal(R, i), f"m^{i}")
    else:
        raise ConfigError(f"unknown module {module!r}")
    return rings[ring](), target


@main.command()
@instance_options
@output_options
@click.option("--ring", type=click.Choice(["q", "p", "r"]), default="r", help="Base ring")
@click.option("--module", default="k", help="k, r, power:i or socle-quotient")
@click.pass_context
def betti(ctx: click.Context, ring: str, module: str, **params: Any) -> None:
    """Graded Betti numbers of a module over Q, the hypersurface P or R."""
    configure_logging(params["verbose"])
    with handle_errors():
        cfg = make_config(params, suites=[])
        harness = Harness(cfg)
        base, target = resolve_target(harness, ring, module)
        table = minimal_resolution(base, target, cfg.steps, cfg.degree_cap).betti_table()
    rows = [{"i": i, "j": j, "beta": b} for (i, j), b in sorted(table.entries.items()) if b]
    meta = {
        "ring": ring,
        "module": module,
        "totals": table.totals(),
        "complete": table.complete,
        "degree_cap": table.degree_cap,
        "instance": harness.instance_metadata(),
    }
    emit(render_table("betti", meta, rows, ["i", "j", "beta"], cfg.output_format), params["out"])
    if not all(table.complete):
        ctx.exit(2)


@main.command()
@instance_options
@output_options
@click.option(
    "--via",
    type=click.Choice(DR_ROUTES),
    default="t1",
    help="t1: from the measured Po^Q_R; t2: the (e, s) closed form; "
    "lemma56: from the closed Po^Q_R",
)
def dr(via: str, **params: Any) -> None:
    """The denominator d_R(z) of the residue field Poincare series."""
    configure_logging(params["verbose"])
    with handle_errors():
        cfg = make_config(params, suites=[])
        if via == "t1":
            harness = Harness(cfg)
            value = harness.dr()
            instance = harness.instance_metadata()
        elif via == "t2":
            value, instance = dr_even_closed_form(cfg.e, cfg.s), {"e": cfg.e, "s": cfg.s}
        else:
            value = dr_from_poqr(poqr_even_closed_form(cfg.e, cfg.s), cfg.e, 1)
            instance = {"e": cfg.e, "s": cfg.s}
    rows = [{"power": k, "coefficient": c} for k, c in enumerate(value.coeffs)]
    meta = {"via": via, "dr": str(value), "instance": instance}
    text = render_table("dr", meta, rows, ["power", "coefficient"], cfg.output_format)
    emit(text, params["out"])


def run_reports(ctx: click.Context, cfg: RunConfig, suites: list[str], out: str | None) -> None:
    with handle_errors():
        harness = Harness(cfg)
        reports = [harness.run(suite) for suite in suites]
    emit(render_reports(reports, cfg.output_format, cfg.timings), out)
    worst = max(report.exit_code for report in reports)
    ctx.exit(worst)


@main.command()
@instance_options
@output_options
@click.option(
    "--suite",
    "suites",
    type=click.Choice([*SUITES, "all"]),
    multiple=True,
    help="Suites to run (repeatable; default main)",
)
@click.option(
    "--with-maps", is_flag=True, default=False, help="Run the Tor map checks inside main"
)
@click.pass_context
def verify(ctx: click.Context, suites: tuple[str, ...], with_maps: bool, **params: Any) -> None:
    """Run verification suites on one sampled instance."""
    configure_logging(params["verbose"])
    chosen = list(SUITES) if "all" in suites else list(suites)
    extra: dict[str, Any] = {"suites": chosen or None}
    if with_maps:
        extra["maps"] = list(MAP_CHECKS)
    with handle_errors():
        cfg = make_config(params, **extra)
    run_reports(ctx, cfg, cfg.suites, params["out"])


@main.command()
@instance_options
@output_options
@click.option(
    "--check", "checks", type=click.Choice(MAP_CHECKS), multiple=True,
    help="Map checks to run (repeatable; default all)",
)
@click.pass_context
def maps(ctx: click.Context, checks: tuple[str, ...], **params: Any) -> None:
    """Vanishing, injectivity and factorization checks for maps on Tor."""
    configure_logging(params["verbose"])
    with handle_errors():
        cfg = make_config(params, maps=list(checks) or list(MAP_CHECKS))
    run_reports(ctx, cfg, ["maps"], params["out"])


@main.command()
@click.option("--prime", type=int, default=32003, help="Characteristic")
@click.option("--base-seed", type=int, default=0, help="Seed the corpus seeds derive from")
@click.option("--trunc", "steps", type=int, default=4, help="Order of Po^R_k in the bound check")
@click.option("--workers", type=int, default=1, help="Worker processes")
@output_options
@click.pass_context
def corpus(
    ctx: click.Context,
    prime: int,
    base_seed: int,
    steps: int,
    workers: int,
    fmt: str | None,
    out: str | None,
    timings: bool,
    verbose: int,
) -> None:
    """Randomized property corpus over the packaged (e, s) cases."""
    configure_logging(verbose)
    if workers < 1:
        raise CliError("workers must be positive", EXIT_USAGE)
    with handle_errors():
        report = run_property_corpus(corpus_cases(base_seed), prime, steps, workers)
    emit(render_reports([report], fmt or "json", timings), out)
    ctx.exit(report.exit_code)


def run() -> None:
    """Console entry point: maps usage errors to exit code 3."""
    try:
        code = main(standalone_mode=False)
    except click.UsageError as exc:
        exc.show()
        code = EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        code = exc.exit_code
    except click.Abort:
        click.echo("Aborted!", err=True)
        code = EXIT_FAILURE
    sys.exit(code or 0)


if __name__ == "__main__":
    run()
