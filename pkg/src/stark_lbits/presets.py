"""Named experiment configurations shipped with the package."""

import json
import logging
from typing import Any

from stark_lbits.config import settings
from stark_lbits.schemas.experiment import ExperimentConfig

logger = logging.getLogger(__name__)

PRESETS_FILE = "presets.json"

# figure labels accepted in place of the descriptive names
PRESET_ALIASES = {
    "fig2a": "bloch_n7_w6",
    "fig2b": "bloch_n9_w3",
    "fig3_7dot": "lbit_n7",
    "fig3_5dot": "lbit_n5",
}


def load_presets() -> dict[str, dict[str, Any]]:
    """Raw preset table: name -> {description, config}."""
    presets_path = settings.data_dir / PRESETS_FILE
    with open(presets_path, "r") as f:
        return json.load(f)


def list_presets() -> list[tuple[str, str]]:
    """(name, description) pairs in file order."""
    return [(name, entry["description"]) for name, entry in load_presets().items()]


def aliases_of(name: str) -> list[str]:
    return [alias for alias, target in PRESET_ALIASES.items() if target == name]


def resolve_preset(name: str) -> str:
    """Descriptive preset name for a name or alias.

    Raises:
        ValueError: Unknown preset name
    """
    resolved = PRESET_ALIASES.get(name, name)
    presets = load_presets()
    if resolved not in presets:
        raise ValueError(f"Unknown preset '{name}' (available: {', '.join(presets)})")
    return resolved


def preset_config(name: str) -> ExperimentConfig:
    """Validated config of a preset, looked up by name or alias.

    The config keeps the name it was requested under.

    Raises:
        ValueError: Unknown preset name
    """
    resolved = resolve_preset(name)
    data = dict(load_presets()[resolved]["config"])
    data.setdefault("name", name)
    if resolved != name:
        logger.debug(f"Loaded preset {resolved} via alias {name}")
    else:
        logger.debug(f"Loaded preset {name}")
    return ExperimentConfig.model_validate(data)
