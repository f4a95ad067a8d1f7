"""``key = value`` run configuration files.

Blank lines are ignored and ``#`` starts a comment.  Every value is a decimal
literal.  Missing keys take the defaults below; unknown or repeated keys are
errors.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Union

from .errors import InvalidParameter
from .params import DetuningPoint, ModelParams

DEFAULTS = {
    "gamma_a": 1.0,
    "gamma_c": 1e-4,
    "g_root_n": 100.0,
    "omega_ab": 1e6,
    "rabi": 0.5,
    "delta_p": 0.0,
    "delta_c": 0.0,
    "probe_amp_re": 1e-3,
    "probe_amp_im": 0.0,
}
KEYS = tuple(DEFAULTS)

_DECIMAL = re.compile(r"[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?")


class ConfigError(InvalidParameter):
    pass


@dataclass(frozen=True)
class RunConfig:
    params: ModelParams
    point: DetuningPoint
    probe_amp: complex

    def values(self) -> dict[str, float]:
        p, pt = self.params, self.point
        return {
            "gamma_a": p.gamma_a,
            "gamma_c": p.gamma_c,
            "g_root_n": p.g_root_n,
            "omega_ab": p.omega_ab,
            "rabi": p.rabi,
            "delta_p": pt.delta_p,
            "delta_c": pt.delta_c,
            "probe_amp_re": self.probe_amp.real,
            "probe_amp_im": self.probe_amp.imag,
        }


def parse_number(text: str, where: str = "") -> float:
    text = text.strip()
    if not _DECIMAL.fullmatch(text):
        raise ConfigError(f"{where}malformed number {text!r}")
    return float(text)


def build_config(values: Mapping[str, float]) -> RunConfig:
    """Validate a full or partial key set on top of the defaults."""
    unknown = set(values) - set(KEYS)
    if unknown:
        raise ConfigError(f"unknown key(s): {', '.join(sorted(unknown))}")
    v = {**DEFAULTS, **values}
    try:
        params = ModelParams(v["gamma_a"], v["gamma_c"], v["g_root_n"], v["omega_ab"], v["rabi"])
        point = DetuningPoint(v["delta_p"], v["delta_c"])
        point.omega(params)
    except InvalidParameter as exc:
        raise ConfigError(str(exc)) from None
    return RunConfig(params, point, complex(v["probe_amp_re"], v["probe_amp_im"]))


def parse_config_text(text: str, source: str = "<config>") -> RunConfig:
    values: dict[str, float] = {}
    lines: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"{source}:{lineno}: "
        if "=" not in line:
            raise ConfigError(f"{where}expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in DEFAULTS:
            raise ConfigError(f"{where}unknown key {key!r}")
        if key in values:
            raise ConfigError(f"{where}duplicate key {key!r} (first set on line {lines[key]})")
        values[key] = parse_number(value, where)
        lines[key] = lineno
    try:
        return build_config(values)
    except ConfigError as exc:
        bad = [k for k in values if k in str(exc)]
        prefix = f"{source}:{lines[bad[0]]}: " if bad else f"{source}: "
        raise ConfigError(prefix + str(exc)) from None


def parse_config(path: Union[str, Path]) -> tuple[ModelParams, DetuningPoint, complex]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    cfg = parse_config_text(text, str(path))
    return cfg.params, cfg.point, cfg.probe_amp


def serialize_config(cfg: RunConfig) -> str:
    return "".join(f"{k} = {v!r}\n" for k, v in cfg.values().items())
