"""Experiment orchestrator: run directories, dispatch and manifests."""

import logging
import time
from pathlib import Path
from typing import Optional

from rich.console import Console
from rich.logging import RichHandler
from rich.progress import Progress, SpinnerColumn, TextColumn

from stark_lbits.config import settings
from stark_lbits.experiments import EXPERIMENTS, ExperimentError, ExperimentOutcome, run_sweep_points
from stark_lbits.experiments.base import config_echo
from stark_lbits.outputs import build_manifest, prepare_run_dir, write_manifest
from stark_lbits.schemas.experiment import ExperimentConfig, RunManifest

# Setup logging
console = Console()
rich_handler = RichHandler(rich_tracebacks=True, console=console)
logging.basicConfig(
    level=settings.log_level,
    format="%(message)s",
    handlers=[rich_handler],
)

logger = logging.getLogger(__name__)


class ExperimentRunner:
    """Runs one experiment or sweep per call and writes its manifest last."""

    def __init__(
        self,
        output_root: Optional[Path] = None,
        force: bool = False,
        workers: Optional[int] = None,
    ) -> None:
        """Initialize the runner.

        Args:
            output_root: Parent of run directories for configs without output_dir
            force: Clear a non-empty run directory instead of refusing
            workers: Concurrent sweep points (default: settings.max_workers)
        """
        self.output_root = output_root or settings.output_root
        self.force = force
        self.workers = workers or settings.max_workers

        logger.debug(
            f"Initialized experiment runner (root: {self.output_root}, "
            f"force: {force}, workers: {self.workers})"
        )

    def resolve_run_dir(self, config: ExperimentConfig, out: Optional[Path] = None) -> Path:
        """--out wins, then config.output_dir, then output_root/<name or experiment>."""
        if out is not None:
            return out
        if config.output_dir is not None:
            return config.output_dir
        return self.output_root / (config.name or config.experiment)

    def run(
        self,
        config: ExperimentConfig,
        out: Optional[Path] = None,
        seed: Optional[int] = None,
    ) -> RunManifest:
        """Dispatch on config.experiment; sweeps go to run_sweep."""
        if config.experiment == "sweep":
            return self.run_sweep(config, out=out, seed=seed)
        return self.run_experiment(config, out=out, seed=seed)

    def run_experiment(
        self,
        config: ExperimentConfig,
        out: Optional[Path] = None,
        seed: Optional[int] = None,
    ) -> RunManifest:
        """Run a single experiment and write its manifest.

        Args:
            config: Validated experiment configuration
            out: Run directory override
            seed: Typicality seed override

        Returns:
            The manifest written to <run_dir>/manifest.json

        Raises:
            OutputCollisionError: Run directory not empty and force is off
            ExperimentError: Backend failure inside the experiment
        """
        if config.experiment == "sweep":
            raise ValueError("Use run_sweep for sweep configs")
        config = self._with_seed(config, seed)
        run_dir = prepare_run_dir(self.resolve_run_dir(config, out), force=self.force)

        console.print(f"[bold]Running {config.experiment}[/bold] → {run_dir}")
        started = time.perf_counter()
        outcome = self._execute(config, run_dir)
        wall_time = time.perf_counter() - started

        manifest = build_manifest(
            run_dir,
            config_echo(config),
            code_version=self._code_version(),
            wall_time=wall_time,
            seed=config.method.seed,
        )
        write_manifest(manifest, run_dir)
        console.print(
            f"[green]✓[/green] {config.experiment}: {len(outcome.files)} files in {wall_time:.1f}s"
        )
        return manifest

    def run_sweep(
        self,
        config: ExperimentConfig,
        out: Optional[Path] = None,
        seed: Optional[int] = None,
    ) -> RunManifest:
        """Run every sweep point, then write summary.csv and one manifest.

        Failed points are listed under the manifest's failures and do not
        abort the sweep.

        Raises:
            OutputCollisionError: Run directory not empty and force is off
            ValueError: Config is not a sweep
        """
        if config.experiment != "sweep" or config.sweep is None:
            raise ValueError(f"Not a sweep config: experiment={config.experiment}")
        config = self._with_seed(config, seed)
        run_dir = prepare_run_dir(self.resolve_run_dir(config, out), force=self.force)

        console.print(
            f"[bold]Sweeping {config.sweep.axis}[/bold] over {config.sweep.values} → {run_dir}"
        )
        started = time.perf_counter()
        with Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            console=console,
        ) as progress:
            progress.add_task(f"{len(config.sweep.values)} sweep points...", total=None)
            outcome = run_sweep_points(config, run_dir, workers=self.workers)
        wall_time = time.perf_counter() - started

        failures: dict[str, str] = outcome.metrics["failures"]
        manifest = build_manifest(
            run_dir,
            config_echo(config),
            code_version=self._code_version(),
            wall_time=wall_time,
            seed=config.method.seed,
            failures=failures,
        )
        write_manifest(manifest, run_dir)
        if failures:
            console.print(
                f"[yellow]⚠️[/yellow] {len(failures)}/{len(config.sweep.values)} sweep points failed"
            )
        else:
            console.print(f"[green]✓[/green] Sweep finished in {wall_time:.1f}s")
        return manifest

    def _execute(self, config: ExperimentConfig, run_dir: Path) -> ExperimentOutcome:
        runner = EXPERIMENTS[config.experiment]
        with Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            console=console,
        ) as progress:
            progress.add_task(f"{config.experiment}...", total=None)
            try:
                return runner(config, run_dir)
            except ExperimentError:
                raise
            except Exception as e:
                logger.error(f"{config.experiment} failed in {run_dir}: {e}")
                raise ExperimentError(f"{config.experiment} failed: {e}") from e

    @staticmethod
    def _with_seed(config: ExperimentConfig, seed: Optional[int]) -> ExperimentConfig:
        if seed is None:
            return config
        method = config.method.model_copy(update={"seed": seed})
        return config.model_copy(update={"method": method})

    @staticmethod
    def _code_version() -> str:
        from stark_lbits import __version__

        return __version__
