"""Print information about projcalc, its backends and its cli tools."""

import importlib
import sys
from importlib.metadata import PackageNotFoundError, distribution, requires, version

import click
from packaging.requirements import Requirement
from rich.console import Console
from rich.table import Table

__all__ = ["main"]

console = Console()


@click.command()
@click.option("--version", "show_version", is_flag=True, help="Print version number")
@click.option("--dependencies", is_flag=True, help="Print dependencies")
@click.option("--tools", is_flag=True, help="Print available cli tools")
@click.option("--tolerance", is_flag=True, help="Print the active float tolerance")
def main(show_version, dependencies, tools, tolerance):
    if not any((show_version, dependencies, tools, tolerance)):
        ctx = click.get_current_context()
        click.echo(ctx.get_help())
        sys.exit(1)

    if show_version:
        _info_version()

    if dependencies:
        _info_dependencies()

    if tools:
        _info_tools()

    if tolerance:
        _info_tolerance()


def _info_version():
    import projcalc

    console.print("\n*** projcalc version info ***\n")
    console.print(f"version: {projcalc.__version__}")


def _info_dependencies():
    """Core requirements with the installed version of each."""
    tab = Table(title="*** projcalc core dependencies ***")
    tab.add_column("Package", justify="right", style="cyan")
    tab.add_column("Required")
    tab.add_column("Installed")

    for dep in requires("projcalc") or []:
        req = Requirement(dep)
        if req.marker is not None and "extra" in str(req.marker):
            continue
        try:
            installed = version(req.name)
        except PackageNotFoundError:
            installed = "[red]missing[/red]"
        tab.add_row(req.name, str(req.specifier), installed)

    console.print(tab)


def _info_tools():
    """Console scripts of the distribution and the first docstring line."""
    tab = Table(title="*** projcalc cli tools ***")
    tab.add_column("Command", justify="right", style="cyan")
    tab.add_column("Description")

    for ep in sorted(distribution("projcalc").entry_points, key=lambda e: e.name):
        if ep.group != "console_scripts":
            continue
        module = importlib.import_module(ep.value.split(":")[0])
        doc = (module.__doc__ or "").strip()
        tab.add_row(ep.name, doc.splitlines()[0] if doc else "[no docstring]")

    console.print(tab)


def _info_tolerance():
    from projcalc.numeric import ENV_TOL, ToleranceConfig

    tab = Table(title=f"*** float tolerance (${ENV_TOL} applied) ***")
    tab.add_column("Setting", justify="right", style="cyan")
    tab.add_column("Value")
    for key, value in ToleranceConfig.from_env().to_dict().items():
        tab.add_row(key, f"{value:g}")

    console.print(tab)


if __name__ == "__main__":
    main()
