"""Runtime configuration: one JSON file, overridable by CLI flags."""

from __future__ import annotations

import json
from dataclasses import dataclass, fields, replace
from pathlib import Path


@dataclass(frozen=True)
class AppConfig:
    http_host: str = "127.0.0.1"
    http_port: int = 8750
    bus_host: str = "127.0.0.1"
    bus_port: int = 7780  # 0 picks a free port; negative disables the TCP bus
    store_root: str = "./hrimux_store"
    log_path: str | None = None  # session log (all bus traffic), JSONL of wire lines
    buffer_limit: int = 10_000
    tick_hz: float = 50.0
    robot_rate_hz: float = 10.0
    preload_fixtures: bool = True
    move_duration_s: float = 62.0
    wave_duration_s: float = 20.0
    handover_duration_s: float = 25.0


def load_config(path: str | Path | None = None, **overrides) -> AppConfig:
    """Config file values first, explicit overrides (CLI flags) on top."""
    config = AppConfig()
    if path is not None:
        raw = json.loads(Path(path).read_text())
        known = {f.name for f in fields(AppConfig)}
        unknown = set(raw) - known
        if unknown:
            raise ValueError(f"unknown config key(s): {sorted(unknown)}")
        config = replace(config, **raw)
    cleaned = {k: v for k, v in overrides.items() if v is not None}
    if cleaned:
        config = replace(config, **cleaned)
    return config
