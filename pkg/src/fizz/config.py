"""Pipeline configuration: file, environment, and flag layering.

Config files are INI-style with [backends], [pipeline], and [output]
sections. Environment variables use the FIZZ_ prefix. Precedence is
flag > environment > file > default. Each model role (nli, llm, coref)
takes its backend from exactly one source: an HTTP endpoint or a fixture
file, never both.
"""

from __future__ import annotations

import configparser
import os
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Mapping

from .errors import ConfigError

_ENV_KEYS = {
    "FIZZ_NLI_URL": "nli_url",
    "FIZZ_NLI_FIXTURE": "nli_fixture",
    "FIZZ_LLM_URL": "llm_url",
    "FIZZ_LLM_FIXTURE": "llm_fixture",
    "FIZZ_COREF_URL": "coref_url",
    "FIZZ_COREF_FIXTURE": "coref_fixture",
    "FIZZ_LLM_MODEL": "llm_model",
    "FIZZ_LLM_AUTH_TOKEN": "llm_auth_token",
    "FIZZ_GRAN": "gran",
    "FIZZ_SEED": "seed",
    "FIZZ_CACHE": "cache_path",
    "FIZZ_OUT": "report_dir",
    "FIZZ_MAX_FACT_TOKENS": "max_fact_tokens",
    "FIZZ_COREF_DOCUMENT": "coref_document",
    "FIZZ_COREF_SUMMARY": "coref_summary",
    "FIZZ_LLM_WORKERS": "llm_workers",
    "FIZZ_NLI_WORKERS": "nli_workers",
    "FIZZ_PAIR_WORKERS": "pair_workers",
}

_INT_FIELDS = {"gran", "seed", "max_fact_tokens", "llm_workers", "nli_workers", "pair_workers"}
_BOOL_FIELDS = {"coref_document", "coref_summary"}


@dataclass(frozen=True)
class PipelineConfig:
    nli_url: str | None = None
    nli_fixture: str | None = None
    llm_url: str | None = None
    llm_fixture: str | None = None
    coref_url: str | None = None
    coref_fixture: str | None = None
    llm_model: str = "default"
    llm_auth_token: str | None = None
    gran: int = 3
    seed: int = 0
    cache_path: str | None = None
    report_dir: str | None = None
    max_fact_tokens: int = 60
    coref_document: bool = True
    coref_summary: bool = True
    llm_workers: int = 4
    nli_workers: int = 4
    pair_workers: int = 2

    def validate(self) -> "PipelineConfig":
        if self.gran < 1:
            raise ConfigError(f"gran must be >= 1, got {self.gran}")
        for name in ("llm_workers", "nli_workers", "pair_workers"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be >= 1")
        _require_one_source("nli", self.nli_url, self.nli_fixture, required=True)
        _require_one_source("llm", self.llm_url, self.llm_fixture, required=True)
        _require_one_source(
            "coref",
            self.coref_url,
            self.coref_fixture,
            required=self.coref_document or self.coref_summary,
        )
        return self

    def snapshot(self) -> dict:
        """Stable, path-free summary embedded in reports."""
        return {
            "gran": self.gran,
            "seed": self.seed,
            "coref_document": self.coref_document,
            "coref_summary": self.coref_summary,
            "max_fact_tokens": self.max_fact_tokens,
            "nli_backend": _source_label(self.nli_url, self.nli_fixture),
            "llm_backend": _source_label(self.llm_url, self.llm_fixture),
            "coref_backend": _source_label(self.coref_url, self.coref_fixture),
        }


def _source_label(url: str | None, fixture: str | None) -> str:
    if url:
        return f"http:{url}"
    if fixture:
        return f"scripted:{Path(fixture).name}"
    return "disabled"


def _require_one_source(role: str, url: str | None, fixture: str | None, required: bool) -> None:
    if url and fixture:
        raise ConfigError(f"{role}: endpoint and fixture are mutually exclusive")
    if required and not (url or fixture):
        raise ConfigError(f"{role}: an endpoint or fixture is required")


def _coerce(field_name: str, value: str):
    if field_name in _INT_FIELDS:
        try:
            return int(value)
        except ValueError as exc:
            raise ConfigError(f"{field_name} must be an integer, got {value!r}") from exc
    if field_name in _BOOL_FIELDS:
        lowered = value.strip().lower()
        if lowered in {"1", "true", "yes", "on"}:
            return True
        if lowered in {"0", "false", "no", "off"}:
            return False
        raise ConfigError(f"{field_name} must be a boolean, got {value!r}")
    return value


def _read_config_file(path: str) -> dict:
    parser = configparser.ConfigParser()
    read = parser.read(path, encoding="utf-8")
    if not read:
        raise ConfigError(f"config file not found: {path}")
    values: dict = {}
    for section in parser.sections():
        for key, value in parser.items(section):
            if key not in PipelineConfig.__dataclass_fields__:
                raise ConfigError(f"unknown config key [{section}] {key}")
            values[key] = _coerce(key, value)
    return values


def expand_fixtures_dir(directory: str) -> dict:
    """Map a fixtures directory onto the three per-role fixture paths."""
    base = Path(directory)
    if not base.is_dir():
        raise ConfigError(f"fixtures directory not found: {directory}")
    values = {}
    for role, filename in (
        ("nli_fixture", "nli.json"),
        ("llm_fixture", "llm.json"),
        ("coref_fixture", "coref.json"),
    ):
        candidate = base / filename
        if candidate.exists():
            values[role] = str(candidate)
    if not values:
        raise ConfigError(f"no fixture files (nli.json/llm.json/coref.json) in {directory}")
    return values


def load_config(
    config_file: str | None = None,
    env: Mapping[str, str] | None = None,
    overrides: dict | None = None,
) -> PipelineConfig:
    """Layer file, environment, and flag overrides onto the defaults."""
    env = os.environ if env is None else env
    config = PipelineConfig()
    if config_file:
        config = replace(config, **_read_config_file(config_file))
    env_values = {
        field: _coerce(field, env[key]) for key, field in _ENV_KEYS.items() if key in env
    }
    if env_values:
        config = replace(config, **env_values)
    if overrides:
        clean = {k: v for k, v in overrides.items() if v is not None}
        if clean:
            config = replace(config, **clean)
    return config
