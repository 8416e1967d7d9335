"""Flat ``key = value`` configuration for the command-line front end.

Lines are ``dotted.key = value``; ``#`` starts a comment. Unknown keys and
unparsable values are reported with the line they came from. Every key has a
default, and each subcommand starts from its own preset.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

FIG2_L = abs(math.log(0.56))


class ConfigError(ValueError):
    def __init__(self, message, key=None, line=None, source=None):
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        if key is not None:
            where += f" {key}:"
        super().__init__(f"{where} {message}".strip())
        self.key = key
        self.line = line


def _floats(text):
    return tuple(float(x) for x in text.replace(",", " ").split())


def _bool(text):
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


# key -> (parser, default)
SCHEMA = {
    "reference.h": (float, 0.1),
    "reference.gamma": (float, 1.4),
    "penalty.l": (float, FIG2_L),
    "penalty.beta": (float, 0.0),
    "method": (str, "auto"),
    "tol": (float, 1e-10),
    "threads": (int, 1),
    "output.path": (str, "-"),
    "output.format": (str, "csv"),
    "grid.h_min": (float, 0.0),
    "grid.h_max": (float, 1.5),
    "grid.h_steps": (int, 200),
    "grid.gamma_min": (float, 0.01),
    "grid.gamma_max": (float, 2.0),
    "grid.gamma_steps": (int, 200),
    "grid.quantity": (str, "complexity"),
    "line.gamma_T": (float, 1.1),
    "line.h_min": (float, 0.5),
    "line.h_max": (float, 1.5),
    "line.steps": (int, 101),
    "line.betas": (_floats, (0.0, 0.5, 1.0)),
    "scaling.gamma_T": (float, 1.1),
    "scaling.eps_min": (float, 1e-4),
    "scaling.eps_max": (float, 1e-2),
    "scaling.eps_count": (int, 12),
    "scaling.betas": (_floats, (0.0, 0.5, 1.0)),
    "scaling.synthetic": (_bool, False),
    "scaling.alt_reference.h": (float, 0.3),
    "scaling.alt_reference.gamma": (float, 1.5),
    "kernel.h": (float, 1.3),
    "kernel.gamma": (float, 0.5),
    "kernel.n_max": (int, 50),
    "kernel.method": (str, "both"),
}

PRESETS = {
    "scan": {},
    "line": {"reference.gamma": 1.1, "penalty.l": 0.0},
    "scaling": {"reference.gamma": 1.1, "penalty.l": 0.0, "tol": 1e-12, "output.format": "json"},
    "kernel": {},
    "selfcheck": {"output.format": "json"},
}


@dataclass
class ScanConfig:
    values: dict = field(default_factory=dict)

    def __getitem__(self, key):
        return self.values[key]

    def get(self, key, default=None):
        return self.values.get(key, default)

    def dump(self) -> str:
        lines = []
        for key in SCHEMA:
            v = self.values[key]
            if isinstance(v, tuple):
                v = ", ".join(repr(x) for x in v)
            elif isinstance(v, bool):
                v = "true" if v else "false"
            elif isinstance(v, float):
                v = repr(v)
            lines.append(f"{key} = {v}")
        return "\n".join(lines) + "\n"


def parse_text(text: str, source: str | None = None) -> dict:
    """Parse config text into {key: (raw_value, line_number)}."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError("expected 'key = value'", line=lineno, source=source)
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in SCHEMA:
            raise ConfigError("unknown key", key=key, line=lineno, source=source)
        out[key] = (value, lineno)
    return out


def build_config(command: str, file_text: str | None = None, overrides=(), source=None) -> ScanConfig:
    """Defaults, then the command preset, then the file, then ``key=value`` overrides."""
    values = {k: default for k, (_, default) in SCHEMA.items()}
    values.update(PRESETS.get(command, {}))
    raw = parse_text(file_text, source) if file_text else {}
    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"override {item!r} is not key=value")
        key, value = (part.strip() for part in item.split("=", 1))
        if key not in SCHEMA:
            raise ConfigError("unknown key", key=key)
        raw[key] = (value, None)
    for key, (text, lineno) in raw.items():
        parser = SCHEMA[key][0]
        try:
            values[key] = parser(text)
        except ValueError as exc:
            raise ConfigError(f"bad value {text!r} ({exc})", key=key, line=lineno, source=source) from None
    cfg = ScanConfig(values)
    validate(cfg, command)
    return cfg


def _require(cond, key, message):
    if not cond:
        raise ConfigError(message, key=key)


def validate(cfg: ScanConfig, command: str) -> None:
    v = cfg.values
    for key in ("reference.h", "reference.gamma", "penalty.l", "penalty.beta", "tol"):
        _require(math.isfinite(v[key]), key, "must be finite")
    _require(v["reference.h"] >= 0, "reference.h", "must be >= 0")
    _require(v["reference.gamma"] > 0, "reference.gamma", "must be > 0")
    _require(v["penalty.l"] >= 0, "penalty.l", "must be >= 0")
    _require(v["tol"] > 0, "tol", "must be > 0")
    _require(v["threads"] >= 1, "threads", "must be >= 1")
    _require(v["method"] in ("series", "polylog", "auto"), "method", "must be series, polylog or auto")
    _require(v["output.format"] in ("csv", "json"), "output.format", "must be csv or json")

    if command == "scan":
        _require(v["grid.quantity"] in ("complexity", "lambda"), "grid.quantity", "must be complexity or lambda")
        for axis in ("h", "gamma"):
            lo, hi, steps = v[f"grid.{axis}_min"], v[f"grid.{axis}_max"], v[f"grid.{axis}_steps"]
            _require(steps >= 2, f"grid.{axis}_steps", "must be >= 2")
            _require(hi > lo, f"grid.{axis}_max", f"must exceed grid.{axis}_min")
        _require(v["grid.h_min"] >= 0, "grid.h_min", "must be >= 0")
        _require(v["grid.gamma_min"] > 0, "grid.gamma_min", "must be > 0")
    elif command == "line":
        _require(v["line.gamma_T"] > 0, "line.gamma_T", "must be > 0")
        _require(v["line.steps"] >= 2, "line.steps", "must be >= 2")
        _require(v["line.h_max"] > v["line.h_min"] >= 0, "line.h_max", "must exceed line.h_min >= 0")
        _require(len(v["line.betas"]) > 0, "line.betas", "must list at least one beta")
        crosses = v["line.h_min"] <= 1.0 <= v["line.h_max"]
        _require(not crosses or v["penalty.l"] == 0, "penalty.l", "must be 0 for sweeps crossing h_T = 1")
    elif command == "scaling":
        _require(0 < v["scaling.eps_min"] <= 0.2, "scaling.eps_min", "must lie in (0, 0.2]")
        _require(0 < v["scaling.eps_max"] <= 0.2, "scaling.eps_max", "must lie in (0, 0.2]")
        _require(v["scaling.eps_max"] > v["scaling.eps_min"], "scaling.eps_max", "must exceed scaling.eps_min")
        _require(v["scaling.eps_count"] >= 8, "scaling.eps_count", "must be >= 8")
        _require(v["scaling.gamma_T"] > 0, "scaling.gamma_T", "must be > 0")
        _require(v["reference.h"] < 1, "reference.h", "scaling reference must be in the ordered phase")
        _require(v["scaling.alt_reference.h"] < 1, "scaling.alt_reference.h", "must be in the ordered phase")
        _require(v["scaling.alt_reference.gamma"] > 0, "scaling.alt_reference.gamma", "must be > 0")
    elif command == "kernel":
        _require(v["kernel.n_max"] >= 1, "kernel.n_max", "must be >= 1")
        _require(v["kernel.gamma"] > 0 and v["kernel.h"] >= 0, "kernel.gamma", "parameters outside h >= 0, gamma > 0")
        _require(v["kernel.h"] != 1.0, "kernel.h", "closed form unavailable on the critical line")
        _require(v["kernel.method"] in ("closed", "quadrature", "both"), "kernel.method",
                 "must be closed, quadrature or both")
