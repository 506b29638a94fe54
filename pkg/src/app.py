"""
Command-line entry point: algebra info, cohomology jobs, weight screens,
the verification suites and module-cache housekeeping.
"""
import json
import sys
from pathlib import Path
from typing import Optional

import click
import typer
from loguru import logger
from rich.console import Console
from rich.table import Table

from cohom_algebra import algebra_from_descriptor, odd_parts
from cohom_cache import ModuleCache, cached_module
from cohom_complex import METHODS, cohomology
from cohom_config import (
    BudgetExceeded,
    Budget,
    DescriptorError,
    SuperCohomError,
    get_settings,
    set_modular_prepass,
)
from cohom_screen import d_range_of_U, run_screen
from cohom_verify import EXIT_BUDGET, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, SUITES, verify_paper


app = typer.Typer(add_completion=False, help="Exact low-degree cohomology of sl(m|n) and gl(m|n).")
console = Console()
_state = {"quiet": False}


def _configure_logging(level: str) -> None:
    logger.remove()
    logger.add(sys.stderr, level=level.upper(), format="{time:HH:mm:ss} | {level: <7} | {message}")


def _write_json(out: Optional[Path], payload: dict) -> None:
    if out is None:
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(payload, indent=2))
    console.print(f"Report written to {out}")


def _usage_error(e: Exception) -> typer.Exit:
    console.print(f"[red]Error:[/red] {e}")
    return typer.Exit(EXIT_USAGE)


@app.callback()
def main_options(
    log_level: str = typer.Option(None, "--log-level", help="DEBUG, INFO, WARNING..."),
    quiet: bool = typer.Option(False, "--quiet", help="No progress bars."),
    no_modular_prepass: bool = typer.Option(False, "--no-modular-prepass", help="Exact elimination only."),
):
    settings = get_settings()
    _configure_logging(log_level or settings.log_level)
    _state["quiet"] = quiet
    if no_modular_prepass:
        set_modular_prepass(False)


@app.command()
def algebra(desc: str = typer.Argument(..., help="sl:m:n or gl:m:n"),
            action: str = typer.Argument("info", help="Only 'info' is supported.")):
    """Show the basis data of an algebra."""
    if action != "info":
        raise _usage_error(DescriptorError(f"unknown algebra action {action!r}"))
    try:
        L = algebra_from_descriptor(desc)
    except DescriptorError as e:
        raise _usage_error(e)
    minus, plus = odd_parts(L)
    table = Table(title=f"{L.descriptor}")
    table.add_column("property")
    table.add_column("value")
    table.add_row("dim", str(L.dim))
    table.add_row("even / odd", f"{L.parity.count(0)} / {L.parity.count(1)}")
    table.add_row("L_-1 / L_+1", f"{len(minus)} / {len(plus)}")
    table.add_row("D", ", ".join(str(x) for x in L.D))
    table.add_row("D-range on U(L)", str(list(d_range_of_U(L))))
    table.add_row("basis", " ".join(L.basis_labels))
    console.print(table)


@app.command("cohomology")
def cohomology_cmd(
    algebra_desc: str = typer.Option(..., "--algebra", help="sl:m:n or gl:m:n"),
    module_desc: str = typer.Option(..., "--module", help="trivial, adjoint, hw:..., real:m, dual(...)"),
    degree: int = typer.Option(2, "--degree", min=0, max=2),
    method: str = typer.Option("invariant", "--method", help="brute, invariant or both"),
    budget_minutes: Optional[float] = typer.Option(None, "--budget-minutes"),
    use_cache: bool = typer.Option(True, "--cache/--no-cache", help="Reuse modules from the cache."),
    out: Optional[Path] = typer.Option(None, "--out"),
):
    """Compute dim H^n(L, V)."""
    if method not in METHODS:
        raise _usage_error(DescriptorError(f"method must be one of {', '.join(METHODS)}"))
    try:
        L = algebra_from_descriptor(algebra_desc)
        V = cached_module(L, module_desc, ModuleCache() if use_cache else None)
    except DescriptorError as e:
        raise _usage_error(e)
    try:
        report = cohomology(L, V, degree, method, Budget(budget_minutes))
    except BudgetExceeded as e:
        console.print(f"[yellow]Skipped:[/yellow] {e}")
        raise typer.Exit(EXIT_BUDGET)

    table = Table(title=f"H^{degree}({L.descriptor}, {module_desc})")
    for col in ("method", "dim C", "rank δ^{n-1}", "dim ker δ^n", "dim H"):
        table.add_column(col)
    dims = ", ".join(f"{k}={v}" for k, v in report.cochain_dims.items())
    table.add_row(report.method_used, dims, str(report.rank_previous), str(report.dim_kernel), str(report.dim_H))
    console.print(table)
    _write_json(out, report.to_dict())
    if report.flagged:
        console.print("[red]brute-force and invariant methods disagree[/red]")
        raise typer.Exit(EXIT_MISMATCH)


@app.command()
def screen(
    algebra_desc: str = typer.Option("sl:3:2", "--algebra"),
    window: Optional[int] = typer.Option(None, "--window", min=1),
    budget_minutes: Optional[float] = typer.Option(None, "--budget-minutes"),
    out: Optional[Path] = typer.Option(None, "--out"),
):
    """Screen highest weights of possible simple subquotients of U(L)."""
    try:
        L = algebra_from_descriptor(algebra_desc)
        report = run_screen(
            L,
            window or get_settings().window,
            Budget(budget_minutes),
            quiet=_state["quiet"],
            module_source=ModuleCache().simple_module_source(),
        )
    except BudgetExceeded as e:
        console.print(f"[yellow]Skipped:[/yellow] {e}")
        raise typer.Exit(EXIT_BUDGET)
    except DescriptorError as e:
        raise _usage_error(e)
    except SuperCohomError as e:
        raise _usage_error(e)

    table = Table(title=f"Screen of {L.descriptor}, window {report.window}")
    table.add_column("stage")
    table.add_column("weights", justify="right")
    for name, weights in report.stages.items():
        table.add_row(name, str(len(weights)))
    console.print(table)
    final = list(report.stages)[-1]
    for w in report.stages[final]:
        console.print(f"  {w}")
    console.print(f"Cases up to τ: {report.tau_cases}")
    _write_json(out, report.to_dict())
    if report.status != "ok":
        raise typer.Exit(EXIT_BUDGET)


@app.command("verify-paper")
def verify_paper_cmd(
    suite: str = typer.Option("core", "--suite", help=", ".join(SUITES)),
    jobs: Optional[int] = typer.Option(None, "--jobs", min=1),
    budget_minutes: Optional[float] = typer.Option(None, "--budget-minutes"),
    no_modular_prepass: bool = typer.Option(False, "--no-modular-prepass"),
    out: Path = typer.Option(Path("verify.json"), "--out"),
):
    """Run a verification suite; exit 0 ok, 1 mismatch, 2 budget skip, 3 usage error."""
    if suite not in SUITES:
        raise _usage_error(DescriptorError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}"))
    settings = get_settings()
    prepass = settings.modular_prepass and not no_modular_prepass
    report = verify_paper(
        suite,
        jobs=jobs or settings.jobs,
        budget_minutes=budget_minutes if budget_minutes is not None else settings.budget_minutes,
        modular_prepass=prepass,
        quiet=_state["quiet"],
    )
    table = Table(title=f"verify-paper --suite {suite}")
    for col in ("check", "status", "elapsed (s)"):
        table.add_column(col)
    colors = {"ok": "green", "skipped": "yellow"}
    for r in report.results:
        color = colors.get(r.status, "red")
        table.add_row(r.name, f"[{color}]{r.status}[/{color}]", f"{r.elapsed:.1f}")
    console.print(table)
    tsv = report.write(out)
    console.print(f"Report written to {out} and {tsv}")
    if report.exit_code != EXIT_OK:
        raise typer.Exit(report.exit_code)


@app.command()
def cache(action: str = typer.Argument("list", help="list or clear")):
    """Inspect or clear the module cache."""
    store = ModuleCache()
    if action == "list":
        for key in store.keys():
            console.print(key)
    elif action == "clear":
        console.print(f"Removed {store.clear()} cached modules from {store.db_path}")
    else:
        raise _usage_error(DescriptorError(f"unknown cache action {action!r}"))


def main():
    """Console-script entry point; usage errors exit with code 3."""
    try:
        code = app(standalone_mode=False)
    except click.exceptions.UsageError as e:
        e.show()
        sys.exit(EXIT_USAGE)
    except click.exceptions.Abort:
        sys.exit(EXIT_USAGE)
    sys.exit(code if isinstance(code, int) else EXIT_OK)


if __name__ == "__main__":
    main()
