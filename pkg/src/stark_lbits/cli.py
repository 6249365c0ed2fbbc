"""Command-line interface for the Stark l-bit toolkit."""

import json
from pathlib import Path
from typing import Optional

import typer
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from stark_lbits.outputs import MANIFEST_NAME, OutputCollisionError
from stark_lbits.presets import aliases_of, list_presets, load_presets, preset_config, resolve_preset
from stark_lbits.runner import ExperimentRunner
from stark_lbits.schemas.experiment import ExperimentConfig, RunManifest

app = typer.Typer(
    name="stark-lbits",
    help="Stark MBL spin chains with local phonons: l-bits, spectra and gates",
    add_completion=False,
)
presets_app = typer.Typer(help="Named experiment configurations", add_completion=False)
app.add_typer(presets_app, name="presets")
console = Console()

# verify without --config runs on the smallest chain with an interior site
DEFAULT_VERIFY_MODEL = {
    "n_sites": 3,
    "boson_levels": 2,
    "W": 10.0,
    "omega0": 3.0,
    "lambda0": 1.0,
}


def load_config(config_path: Optional[Path], preset: Optional[str]) -> ExperimentConfig:
    """Config from a JSON file or a preset name (exactly one of them)."""
    if (config_path is None) == (preset is None):
        raise typer.BadParameter("Pass exactly one of --config or --preset")
    if preset is not None:
        return preset_config(preset)
    assert config_path is not None
    if not config_path.exists():
        raise FileNotFoundError(f"Config file not found: {config_path}")
    return ExperimentConfig.model_validate_json(config_path.read_text(encoding="utf-8"))


def _print_manifest(manifest: RunManifest, run_dir: Path) -> None:
    files_table = Table(show_header=True, header_style="bold cyan")
    files_table.add_column("File", style="cyan")
    files_table.add_column("Size", justify="right")
    files_table.add_column("SHA-256", style="dim")
    for entry in manifest.files:
        files_table.add_row(entry.path, f"{entry.size:,}", entry.sha256[:16])
    console.print(files_table)
    console.print(f"[dim]Manifest: {run_dir / MANIFEST_NAME}[/dim]")


def _run(
    config: ExperimentConfig,
    out: Optional[Path],
    seed: Optional[int],
    workers: Optional[int],
    force: bool,
) -> tuple[RunManifest, Path]:
    runner = ExperimentRunner(force=force, workers=workers)
    manifest = runner.run(config, out=out, seed=seed)
    return manifest, runner.resolve_run_dir(config, out)


@app.command()
def run(
    config_path: Optional[Path] = typer.Option(None, "--config", "-c", help="Experiment config (JSON)"),
    preset: Optional[str] = typer.Option(None, "--preset", "-p", help="Preset name (see 'presets list')"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Run directory"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Typicality seed override"),
    workers: Optional[int] = typer.Option(None, "--workers", "-w", help="Concurrent sweep points"),
    force: bool = typer.Option(False, "--force", help="Clear a non-empty run directory"),
):
    """Run one experiment (autocorr, spectrum, lbit, gates, verify or sweep)."""
    try:
        config = load_config(config_path, preset)
        manifest, run_dir = _run(config, out, seed, workers, force)
        _print_manifest(manifest, run_dir)
        if manifest.failures:
            raise typer.Exit(1)
    except typer.Exit:
        raise
    except ValidationError as e:
        console.print(f"[bold red]Invalid config:[/bold red]\n{e}")
        raise typer.Exit(1)
    except OutputCollisionError as e:
        console.print(f"[bold red]Error: {e}[/bold red]")
        console.print("[yellow]Use --force to overwrite or --out for another directory[/yellow]")
        raise typer.Exit(1)
    except Exception as e:
        console.print(f"[bold red]Error: {e}[/bold red]")
        raise typer.Exit(1)


@app.command()
def sweep(
    config_path: Optional[Path] = typer.Option(None, "--config", "-c", help="Sweep config (JSON)"),
    preset: Optional[str] = typer.Option(None, "--preset", "-p", help="Sweep preset name"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Run directory"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Typicality seed override"),
    workers: Optional[int] = typer.Option(None, "--workers", "-w", help="Concurrent sweep points"),
    force: bool = typer.Option(False, "--force", help="Clear a non-empty run directory"),
):
    """Run a parameter sweep and print its summary."""
    try:
        config = load_config(config_path, preset)
        if config.experiment != "sweep" or config.sweep is None:
            raise ValueError(f"Config experiment is '{config.experiment}', expected 'sweep'")
        manifest, run_dir = _run(config, out, seed, workers, force)

        summary = Table(show_header=True, header_style="bold cyan")
        summary.add_column("Point", style="cyan")
        summary.add_column(config.sweep.axis, justify="right")
        summary.add_column("Status")
        for i, value in enumerate(config.sweep.values):
            key = f"point_{i:02d}"
            status = "[red]failed[/red]" if key in manifest.failures else "[green]ok[/green]"
            summary.add_row(key, f"{value:g}", status)
        console.print(summary)
        console.print(f"[dim]Summary: {run_dir / 'summary.csv'}[/dim]")
        if manifest.failures:
            for key, error in manifest.failures.items():
                console.print(f"[red]{key}: {error}[/red]")
            raise typer.Exit(1)
    except typer.Exit:
        raise
    except ValidationError as e:
        console.print(f"[bold red]Invalid config:[/bold red]\n{e}")
        raise typer.Exit(1)
    except Exception as e:
        console.print(f"[bold red]Error: {e}[/bold red]")
        raise typer.Exit(1)


@app.command()
def verify(
    config_path: Optional[Path] = typer.Option(None, "--config", "-c", help="Model config (JSON)"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Run directory"),
    force: bool = typer.Option(False, "--force", help="Clear a non-empty run directory"),
):
    """Check the algebraic identities and print every residual."""
    try:
        if config_path is not None:
            config = load_config(config_path, None)
            if config.experiment != "verify":
                data = config.model_dump(exclude={"sweep"})
                data["experiment"] = "verify"
                config = ExperimentConfig.model_validate(data)
        else:
            config = ExperimentConfig.model_validate(
                {"experiment": "verify", "model": DEFAULT_VERIFY_MODEL}
            )
        _, run_dir = _run(config, out, None, None, force)

        with open(run_dir / "verify.json", "r") as f:
            report = json.load(f)

        checks_table = Table(show_header=True, header_style="bold cyan")
        checks_table.add_column("Identity", style="cyan", no_wrap=False)
        checks_table.add_column("Residual", justify="right")
        checks_table.add_column("Tolerance", justify="right", style="dim")
        checks_table.add_column("", justify="center")
        for check in report["checks"]:
            mark = "[green]✓[/green]" if check["passed"] else "[red]✗[/red]"
            checks_table.add_row(
                check["name"], f"{check['residual']:.2e}", f"{check['tolerance']:.0e}", mark
            )
        console.print(checks_table)
        console.print(f"\n[bold]{report['passed']}/{report['total']} identities passed[/bold]")
        if not report["all_passed"]:
            raise typer.Exit(1)
    except typer.Exit:
        raise
    except ValidationError as e:
        console.print(f"[bold red]Invalid config:[/bold red]\n{e}")
        raise typer.Exit(1)
    except Exception as e:
        console.print(f"[bold red]Error: {e}[/bold red]")
        raise typer.Exit(1)


@presets_app.command("list")
def presets_list():
    """List the shipped presets."""
    presets_table = Table(show_header=True, header_style="bold cyan")
    presets_table.add_column("Name", style="cyan", no_wrap=True)
    presets_table.add_column("Aliases", style="dim", no_wrap=True)
    presets_table.add_column("Description", no_wrap=False)
    for name, description in list_presets():
        presets_table.add_row(name, ", ".join(aliases_of(name)), description)
    console.print(presets_table)


@presets_app.command("show")
def presets_show(name: str = typer.Argument(..., help="Preset name")):
    """Print one preset's config as JSON (names and aliases both work)."""
    try:
        resolved = resolve_preset(name)
    except ValueError:
        console.print(f"[red]Error: Unknown preset '{name}'[/red]")
        raise typer.Exit(1)
    console.print_json(json.dumps(load_presets()[resolved]["config"]))


@app.command()
def version():
    """Show version information."""
    try:
        from stark_lbits import __version__
        console.print(f"Stark l-bits v{__version__}")
    except ImportError:
        console.print("Stark l-bits (version unknown)")


if __name__ == "__main__":
    app()
