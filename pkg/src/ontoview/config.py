"""Configuration loading.

Settings come from a small TOML file; the search order is an explicit
path, then the ONTOVIEW_CONFIG environment variable, then built-in
defaults.  Unknown keys are rejected so typos do not silently fall back.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, fields, replace

try:
    import tomllib
except ModuleNotFoundError:  # pragma: no cover - Python < 3.11
    import tomli as tomllib

from .relevance import RelevanceSettings

ENV_VAR = "ONTOVIEW_CONFIG"


class ConfigError(ValueError):
    """The configuration file is malformed or names unknown settings."""


@dataclass(frozen=True)
class ServerSettings:
    host: str = "127.0.0.1"
    port: int = 8000
    static_dir: str = ""


@dataclass(frozen=True)
class ViewDefaults:
    step_percent: float = 25.0
    policy: str = "relevance"
    scorer: str = "rdfrank"


@dataclass(frozen=True)
class LayoutSettings:
    sweeps: int = 4


@dataclass(frozen=True)
class AppConfig:
    server: ServerSettings = field(default_factory=ServerSettings)
    view: ViewDefaults = field(default_factory=ViewDefaults)
    relevance: RelevanceSettings = field(default_factory=RelevanceSettings)
    layout: LayoutSettings = field(default_factory=LayoutSettings)


def _accepts(current, value) -> bool:
    if isinstance(current, bool) or isinstance(value, bool):
        return isinstance(current, bool) and isinstance(value, bool)
    if isinstance(current, float):
        return isinstance(value, (int, float))
    return isinstance(value, type(current))


def _merge(instance, table: dict, section: str):
    known = {f.name for f in fields(instance)}
    updates = {}
    for key, value in table.items():
        if key not in known:
            raise ConfigError(f"unknown setting [{section}] {key}")
        current = getattr(instance, key)
        if not _accepts(current, value):
            raise ConfigError(
                f"setting [{section}] {key} expects {type(current).__name__}, "
                f"got {type(value).__name__}")
        updates[key] = float(value) if isinstance(current, float) else value
    return replace(instance, **updates)


def load_config(path: str | None = None) -> AppConfig:
    """Read configuration, falling back to defaults when no file is set."""
    if path is None:
        path = os.environ.get(ENV_VAR) or None
    config = AppConfig()
    if path is None:
        return config
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"configuration file not found: {path}") from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"malformed configuration: {exc}") from None

    sections = {"server": config.server, "view": config.view,
                "relevance": config.relevance, "layout": config.layout}
    updates = {}
    for name, table in data.items():
        if name not in sections:
            raise ConfigError(f"unknown section [{name}]")
        if not isinstance(table, dict):
            raise ConfigError(f"[{name}] must be a table")
        updates[name] = _merge(sections[name], table, name)
    return replace(config, **updates)
