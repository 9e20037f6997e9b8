"""Optional flat ``key = value`` configuration.

The file named by ``BESSELREPS_CONFIG`` (or ``--config``) may set::

    rel_tol = 1e-10
    abs_tol = 1e-12
    max_depth = 30
    max_evals = 10000000
    tol_mult = 10
    abs_floor = 1e-12

Command-line flags take precedence over the file.
"""

from __future__ import annotations

import configparser
import os
from dataclasses import dataclass

from .errors import DomainError
from .quadrature import QuadSpec

ENV_VAR = "BESSELREPS_CONFIG"

_KEYS = {
    "rel_tol": float,
    "abs_tol": float,
    "max_depth": int,
    "max_evals": int,
    "tol_mult": float,
    "abs_floor": float,
}


@dataclass
class Settings:
    spec: QuadSpec
    tol_mult: float | None = None
    abs_floor: float | None = None


def parse_config(text: str) -> dict:
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        parser.read_string("[besselreps]\n" + text)
    except configparser.Error as exc:
        raise DomainError(f"malformed config: {exc}") from None
    out = {}
    for key, raw in parser["besselreps"].items():
        if key not in _KEYS:
            raise DomainError(f"unknown config key {key!r}; known: {', '.join(_KEYS)}")
        try:
            out[key] = _KEYS[key](raw)
        except ValueError:
            raise DomainError(f"config key {key!r} has invalid value {raw!r}") from None
    return out


def load_config(path: str | None = None) -> dict:
    """Read the config file at ``path``, else at ``$BESSELREPS_CONFIG``, else nothing."""
    path = path or os.environ.get(ENV_VAR)
    if not path:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_config(fh.read())
    except OSError as exc:
        raise DomainError(f"cannot read config {path!r}: {exc.strerror}") from None


def resolve(file_values: dict, overrides: dict) -> Settings:
    """Merge config-file values with flag overrides (non-None flags win)."""
    merged = dict(file_values)
    merged.update({k: v for k, v in overrides.items() if v is not None})
    base = QuadSpec()
    spec = QuadSpec(
        rel_tol=merged.get("rel_tol", base.rel_tol),
        abs_tol=merged.get("abs_tol", base.abs_tol),
        max_depth=merged.get("max_depth", base.max_depth),
        max_evals=merged.get("max_evals", base.max_evals),
    )
    return Settings(spec, merged.get("tol_mult"), merged.get("abs_floor"))
