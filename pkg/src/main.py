import signal
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import List, Optional

import typer

from .circle import circle_e, circle_not_hausdorff, grid_injectivity
from .config import LOG_LEVELS, Config, ConfigManager
from .dsl import parse_grid, parse_ideal, parse_points, parse_sequence, parse_setexpr, parse_space
from .errors import ArgumentError, IdealConvError, UnknownScenarioError
from .onepoint import build_onepoint, describe
from .scenarios import SCENARIOS, CircleScenario, aliases_of, get_scenario_class
from .seq import (Region, i_cluster_points, i_converges, i_eventually_constant, i_eventually_in, i_limits,
                  is_nonthin)
from .setexpr import density as density_of
from .shrink import condb_witness, condc_verify, condc_witness
from .topolab import PROPERTIES, i_closure, is_i_compact, run_lab
from .ui import UI, console, setup_logging

app = typer.Typer(
    name="idealconv",
    help="Ideal convergence on ℕ: symbolic sets, sequences and finite spaces",
    add_completion=False,
)

ideal_app = typer.Typer(help="Membership and admissibility of catalog ideals")
shrink_app = typer.Typer(help="Shrinking condition witnesses")
topolab_app = typer.Typer(help="Exhaustive checks on finite topological spaces")
onepoint_app = typer.Typer(help="One-point I-compactifications")
scenario_app = typer.Typer(help="Reproducible scenarios with committed expected reports")
config_app = typer.Typer(help="Show or change the persisted configuration")
app.add_typer(ideal_app, name="ideal")
app.add_typer(shrink_app, name="shrink")
app.add_typer(topolab_app, name="topolab")
app.add_typer(onepoint_app, name="onepoint")
app.add_typer(scenario_app, name="scenario")
app.add_typer(config_app, name="config")

config = ConfigManager()
ui = UI()

USAGE_EXIT = 2
FAILURE_EXIT = 1

CIRCLE_SCENARIO_NAMES = ("paper-final", "circle-final", CircleScenario.name)


def setup_interrupt_handler():
    """Exit quietly on Ctrl+C."""
    def signal_handler(sig, frame):
        console.print("\n\nInterrupt received, exiting...")
        sys.exit(FAILURE_EXIT)

    signal.signal(signal.SIGINT, signal_handler)


@contextmanager
def handle_errors():
    """Usage problems exit with 2, failed computations with 1; no tracebacks."""
    try:
        yield
    except typer.Exit:
        raise
    except ArgumentError as e:
        ui.print_error(str(e))
        raise typer.Exit(USAGE_EXIT)
    except IdealConvError as e:
        ui.print_error(str(e))
        raise typer.Exit(FAILURE_EXIT)
    except Exception as e:
        ui.print_error(f"An error occurred: {str(e)}")
        raise typer.Exit(FAILURE_EXIT)


def _settings() -> Config:
    return config.load_config()


def _run_scenario(name: str, parallel: bool):
    """Run a scenario, print its result and exit with 1 when it differs from the expected report."""
    scenario_class = get_scenario_class(name)
    if scenario_class is None:
        raise UnknownScenarioError(f"unknown scenario {name!r}; try 'scenario list'")
    settings = _settings()
    result = scenario_class(settings, parallel).run()
    ui.print_report(result, settings.float_digits)
    if not result.passed:
        ui.print_error(f"{name}: {len(result.mismatches)} field(s) differ from the expected report")
        raise typer.Exit(FAILURE_EXIT)
    ui.print_success(f"{name} matches the expected report")


def _read_text(value: str) -> str:
    """Inline DSL text, or the contents of a file when the argument names one."""
    path = Path(value)
    try:
        if path.is_file():
            return path.read_text(encoding="utf-8").strip()
    except OSError:
        pass
    return value


@app.command("density")
def density_command(
    set_expr: str = typer.Argument(..., help="Set expression, e.g. 'union(arith(0,3),block(2))'"),
    window: Optional[int] = typer.Option(None, "--window", "-w", help="Prefix window for sampled bounds"),
):
    """Asymptotic density of a set expression."""
    with handle_errors():
        settings = _settings()
        result = density_of(parse_setexpr(set_expr), window or settings.density_window)
        ui.print_report(result, settings.float_digits)


@ideal_app.command("contains")
def ideal_contains(
    ideal: str = typer.Argument(..., help="Ideal name, e.g. i1 or 'restrict(id,evens)'"),
    set_expr: str = typer.Argument(..., help="Set expression"),
):
    """Decide whether a set belongs to an ideal."""
    with handle_errors():
        ui.print_report(parse_ideal(ideal).contains(parse_setexpr(set_expr)), _settings().float_digits)


@ideal_app.command("admissible")
def ideal_admissible(
    ideal: str = typer.Argument(..., help="Ideal name"),
    window: int = typer.Option(1024, "--window", "-w", help="Singletons checked"),
):
    """Check that an ideal holds every singleton and misses ℕ."""
    with handle_errors():
        report = parse_ideal(ideal).is_admissible(window)
        ui.print_report(report, _settings().float_digits)
        if not report.admissible:
            raise typer.Exit(FAILURE_EXIT)


@app.command("analyze")
def analyze(
    seq: str = typer.Option(..., "--seq", "-s", help="Sequence, e.g. 'closed(1/n)'"),
    ideal: str = typer.Option("fin", "--ideal", "-i", help="Ideal name"),
    limit: Optional[str] = typer.Option(None, "--limit", help="Candidate limit point"),
    eventually_constant: bool = typer.Option(False, "--eventually-constant", help="Report the eventual value"),
    cluster: Optional[str] = typer.Option(None, "--cluster", help="Candidate cluster points, comma separated"),
    limits: Optional[str] = typer.Option(None, "--limits", help="Candidate limit points, comma separated"),
    eventually_in: Optional[str] = typer.Option(None, "--eventually-in", help="Finite region, comma separated"),
    grid: Optional[str] = typer.Option(None, "--grid", help="Epsilon grid, e.g. 1/2,1/4,1/8"),
):
    """Convergence, eventual constancy and cluster points of a sequence."""
    with handle_errors():
        settings = _settings()
        sequence = parse_sequence(seq)
        chosen = parse_ideal(ideal)
        epsilons = parse_grid(grid) if grid else settings.epsilon_fractions()
        report = {"sequence": str(sequence), "ideal": str(chosen), "nonthin": is_nonthin(sequence, chosen)}
        if limit is not None:
            report["convergence"] = i_converges(sequence, parse_points(limit)[0], chosen, epsilons)
        if eventually_constant:
            report["eventually_constant"] = i_eventually_constant(sequence, chosen)
        if cluster is not None:
            report["cluster_points"] = i_cluster_points(sequence, chosen, parse_points(cluster), epsilons)
        if limits is not None:
            report["limits"] = i_limits(sequence, chosen, parse_points(limits), epsilons)
        if eventually_in is not None:
            region = Region(points=parse_points(eventually_in))
            report["eventually_in"] = i_eventually_in(sequence, region, chosen)
        ui.print_report(report, settings.float_digits)


@shrink_app.command("c-witness")
def shrink_c_witness(
    ideal: str = typer.Option(..., "--ideal", "-i", help="Ideal name"),
    set_expr: str = typer.Option("nat", "--set", "-a", help="A set outside the ideal"),
):
    """Build a condition (C) witness B ⊆ A."""
    with handle_errors():
        ui.print_report(condc_witness(parse_ideal(ideal), parse_setexpr(set_expr)).record(),
                        _settings().float_digits)


@shrink_app.command("verify")
def shrink_verify(
    ideal: str = typer.Option(..., "--ideal", "-i", help="Ideal name"),
    set_expr: str = typer.Option("nat", "--set", "-a", help="A set outside the ideal"),
    window: Optional[int] = typer.Option(None, "--window", "-w", help="Prefix window"),
):
    """Build a (C) witness and check it against the structured subset corpus."""
    with handle_errors():
        settings = _settings()
        witness = condc_witness(parse_ideal(ideal), parse_setexpr(set_expr))
        report = condc_verify(witness, window or settings.window)
        ui.print_report({"witness": witness.record(), "verify": report}, settings.float_digits)
        if not report.consistent:
            raise typer.Exit(FAILURE_EXIT)


@shrink_app.command("b-witness")
def shrink_b_witness(
    ideal: str = typer.Option(..., "--ideal", "-i", help="Ideal name"),
    family: List[str] = typer.Option(..., "--family", "-a", help="Sets A1, A2, ... outside the ideal"),
):
    """Picks Bi ⊆ Ai in the ideal whose union is outside it."""
    with handle_errors():
        witness = condb_witness(parse_ideal(ideal), [parse_setexpr(a) for a in family])
        ui.print_report(witness.record(), _settings().float_digits)


@topolab_app.command("check")
def topolab_check(
    prop: str = typer.Option(..., "--property", "-p", help=f"One of: {', '.join(PROPERTIES)}"),
    n_max: int = typer.Option(3, "--n", "-n", help="Largest number of points"),
    ideals: List[str] = typer.Option(["fin"], "--ideal", "-i", help="Ideal names"),
    parallel: bool = typer.Option(False, "--parallel", help="Shard the spaces over a process pool"),
):
    """Run an exhaustive check over labelled topologies."""
    with handle_errors():
        settings = _settings()
        reports = [run_lab(prop, n_max, parse_ideal(name), settings.corpus_modulus, parallel) for name in ideals]
        ui.print_report(reports, settings.float_digits)
        if any(r.failures for r in reports):
            raise typer.Exit(FAILURE_EXIT)


@topolab_app.command("closure")
def topolab_closure(
    space: str = typer.Option(..., "--space", help="Space in DSL form, or a file containing it"),
    subset: str = typer.Option("", "--subset", help="Points of the subset, comma separated"),
    ideal: str = typer.Option("fin", "--ideal", "-i", help="Ideal name"),
):
    """I-closure of a subset of a finite space."""
    with handle_errors():
        settings = _settings()
        fin_space = parse_space(_read_text(space))
        points = [p.strip() for p in subset.split(",") if p.strip()]
        closure = i_closure(fin_space, points, parse_ideal(ideal), settings.corpus_modulus)
        ui.print_report({"space": str(fin_space), "subset": points, "closure": sorted(closure)},
                        settings.float_digits)


@topolab_app.command("compact")
def topolab_compact(
    space: str = typer.Option(..., "--space", help="Space in DSL form, or a file containing it"),
    ideal: str = typer.Option("fin", "--ideal", "-i", help="Ideal name"),
):
    """I-compactness with subsequence witnesses."""
    with handle_errors():
        settings = _settings()
        report = is_i_compact(parse_space(_read_text(space)), parse_ideal(ideal), settings.corpus_modulus)
        ui.print_report(report, settings.float_digits)


@onepoint_app.command("build")
def onepoint_build(
    space: str = typer.Option(..., "--space", help="Space in DSL form, or a file containing it"),
    ideal: str = typer.Option("fin", "--ideal", "-i", help="Ideal name"),
):
    """Build X̂ and report its opens and separation properties."""
    with handle_errors():
        settings = _settings()
        chosen = parse_ideal(ideal)
        t = build_onepoint(parse_space(_read_text(space)), chosen, settings.corpus_modulus)
        ui.print_report(describe(t, chosen, settings.corpus_modulus), settings.float_digits)


@onepoint_app.command("circle")
def onepoint_circle(
    x: Optional[float] = typer.Option(None, "--x", help="Pair e(x) with α; default pairs α with e(0)"),
    scenario: Optional[str] = typer.Option(
        None, "--scenario", help="Run the circle scenario against its expected report instead (paper-final)"
    ),
):
    """Embedding checks and the non-Hausdorff certificate of the circle model."""
    with handle_errors():
        if scenario is not None:
            if scenario not in CIRCLE_SCENARIO_NAMES:
                raise ArgumentError(f"unknown circle scenario {scenario!r}; expected paper-final")
            _run_scenario(CircleScenario.name, parallel=False)
            return
        q = circle_e(x) if x is not None else None
        report = {
            "corrected": grid_injectivity(),
            "printed": grid_injectivity(printed=True),
            "certificate": circle_not_hausdorff(q=q),
        }
        ui.print_report(report, _settings().float_digits)


@scenario_app.command("list")
def scenario_list():
    """List the registered scenarios."""
    ui.print_scenarios([{"name": cls.name, "aliases": ", ".join(aliases_of(cls.name)), "topic": cls.topic,
                         "description": cls.description}
                        for cls in SCENARIOS.values()])


@scenario_app.command("run")
def scenario_run(
    name: Optional[str] = typer.Argument(None, help="Scenario name; prompts when omitted on a terminal"),
    parallel: bool = typer.Option(False, "--parallel", help="Shard exhaustive labs over a process pool"),
):
    """Run a scenario and compare its report with the committed one."""
    with handle_errors():
        setup_interrupt_handler()
        if name is None:
            if not sys.stdin.isatty():
                raise ArgumentError("scenario name is required")
            name = ui.select_scenario(list(SCENARIOS))
            if not name:
                raise ArgumentError("scenario name is required")
        _run_scenario(name, parallel)


@config_app.command("show")
def config_show():
    """Print the effective configuration."""
    with handle_errors():
        ui.print_report(_settings())


@config_app.command("set")
def config_set(
    key: str = typer.Argument(..., help="Config key"),
    value: str = typer.Argument(..., help="New value; comma separated for epsilon_grid"),
):
    """Validate and persist a configuration value."""
    with handle_errors():
        new_value = [item.strip() for item in value.split(",")] if key == "epsilon_grid" else value
        ui.print_report(config.update_config(**{key: new_value}))
        ui.print_success(f"{key} updated")


@app.callback()
def callback(
    log_level: Optional[str] = typer.Option(None, "--log-level", help="DEBUG, INFO, WARNING or ERROR"),
):
    """idealconv - ideal convergence toolkit"""
    with handle_errors():
        level = (log_level or _settings().log_level).upper()
        if level not in LOG_LEVELS:
            raise ArgumentError(f"unknown log level {log_level}")
        setup_logging(level)


def main():
    app()


if __name__ == "__main__":
    main()
