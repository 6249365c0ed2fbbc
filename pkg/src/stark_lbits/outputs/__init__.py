"""Run artifacts: data files, plot scripts and the manifest."""

from stark_lbits.outputs.manifest import (
    MANIFEST_NAME,
    OutputCollisionError,
    build_manifest,
    collect_outputs,
    hash_file,
    load_manifest,
    prepare_run_dir,
    write_manifest,
)
from stark_lbits.outputs.writers import (
    PlotCurve,
    read_tau,
    write_json,
    write_locality_csv,
    write_plot_script,
    write_series_csv,
    write_spectrum_csv,
    write_table_csv,
    write_tau,
)

__all__ = [
    "MANIFEST_NAME",
    "OutputCollisionError",
    "PlotCurve",
    "build_manifest",
    "collect_outputs",
    "hash_file",
    "load_manifest",
    "prepare_run_dir",
    "read_tau",
    "write_json",
    "write_locality_csv",
    "write_manifest",
    "write_plot_script",
    "write_series_csv",
    "write_spectrum_csv",
    "write_table_csv",
    "write_tau",
]
