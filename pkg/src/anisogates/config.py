"""
Run configuration: flat ``key = value`` text with dotted keys, overridable
from the command line with ``--key value``.

Example::

    # case-2 sweep
    beta = 0.05
    gamma = 0.1
    grids.phi = 0.1, 0.7, pi/2, pi
    output.formats = csv, json
"""
from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass, field, fields
from typing import Any

from .pauli import PauliParseError, pauli_operator

OUTDIR_ENV = 'ANISO_GATES_OUTDIR'


class ConfigError(ValueError):
    """Invalid configuration; the CLI maps it to exit status 2."""


_PI = re.compile(r'^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*\*?\s*(-?)pi\s*(?:/\s*(\d+(?:\.\d*)?))?$')


def parse_real(token: str, key: str) -> float:
    """Float, optionally written as a multiple of ``pi`` (``pi/2``, ``-pi``, ``0.5*pi``)."""
    token = token.strip()
    try:
        value = float(token)
    except ValueError:
        m = _PI.match(token)
        if not m:
            raise ConfigError(f'{key}: cannot parse {token!r} as a number') from None
        scale = float(m.group(1)) if m.group(1) else 1.0
        if m.group(2):
            scale = -scale
        value = scale * math.pi / (float(m.group(3)) if m.group(3) else 1.0)
    if not math.isfinite(value):
        raise ConfigError(f'{key}: value must be finite, got {token!r}')
    return value


def _default_outdir() -> str:
    return os.environ.get(OUTDIR_ENV, 'aniso-gates-out')


@dataclass
class RunConfig:
    geometry_case: int = 0
    beta: float = 0.05
    beta_x: float = 0.03
    beta_y: float = 0.04
    gamma: float = 0.1
    grid_phi: list[float] = field(default_factory=lambda: [0.1, 0.7, math.pi / 2, math.pi])
    grid_eta: list[float] = field(default_factory=lambda: [0.3, 1.0, math.pi / 2, 2.5, -1.0])
    grid_varphi: list[float] = field(default_factory=lambda: [0.2, 0.4, 1.0])
    grid_beta: list[float] = field(default_factory=lambda: [0.01, 0.03, 0.05, 0.1])
    grid_gamma: list[float] = field(default_factory=lambda: [0.0, 0.1, 1.0])
    grid_n_reps: list[int] = field(default_factory=lambda: [2, 4, 8, 16, 32, 64, 128])
    grid_lambda: list[float] = field(default_factory=lambda: [1e-3, 3e-3, 1e-2, 3e-2])
    tol_exact: float = 1e-9
    tol_approx: float = 1e-6
    tol_leakage: float = 1e-12
    tol_trotter_cphase: float = 1e-4
    tol_trotter_dm: float = 1e-4
    tol_trotter_x: float = 1e-3
    trotter_phi: float = 1.0
    trotter_dm_phi: float = 0.1
    trotter_x_phi: float = 0.1
    trotter_ramp: list[float] = field(default_factory=list)
    kick_phi: float = 1.0
    kick_n_reps: int = 1
    kick_probes: list[str] = field(default_factory=list)
    sweep_circuits: list[str] = field(default_factory=lambda: ['fig2a'])
    output_dir: str = field(default_factory=_default_outdir)
    output_formats: list[str] = field(default_factory=lambda: ['csv', 'json'])
    seed: int = 0

    def echo(self) -> dict[str, Any]:
        """Config as dotted keys, in declaration order."""
        return {f.metadata.get('key', _dotted(f.name)): getattr(self, f.name) for f in fields(self)}


_PREFIXES = ('geometry', 'grid', 'tol', 'trotter', 'kick', 'sweep', 'output')
_PLURAL = {'grid': 'grids'}


def _dotted(name: str) -> str:
    for prefix in _PREFIXES:
        if name.startswith(prefix + '_'):
            return f'{_PLURAL.get(prefix, prefix)}.{name[len(prefix) + 1:]}'
    if name in ('beta_x', 'beta_y'):
        return name.replace('_', '.')
    return name


KEYS = {_dotted(f.name): f for f in fields(RunConfig)}
SWEEP_CIRCUITS = ('fig2a', 'fig2b', 'v_block', 'eight_step', 'seventeen_step', 'fifty_five')


def _convert(key: str, raw: str):
    f = KEYS[key]
    kind = f.type if isinstance(f.type, str) else f.type.__name__
    items = [t for t in (s.strip() for s in raw.split(',')) if t]
    if kind == 'float':
        return parse_real(raw, key)
    if kind == 'int':
        try:
            return int(raw.strip())
        except ValueError:
            raise ConfigError(f'{key}: expected an integer, got {raw.strip()!r}') from None
    if kind == 'str':
        return raw.strip()
    if kind == 'list[float]':
        return [parse_real(t, key) for t in items]
    if kind == 'list[int]':
        try:
            return [int(t) for t in items]
        except ValueError:
            raise ConfigError(f'{key}: expected a list of integers, got {raw.strip()!r}') from None
    if kind == 'list[str]':
        sep = ';' if key == 'kick.probes' else ','
        return [t.strip() for t in raw.split(sep) if t.strip()]
    raise ConfigError(f'{key}: unsupported type {kind}')


def parse_config_text(text: str) -> dict[str, str]:
    """Raw ``key -> value`` strings from config text; ``#`` starts a comment."""
    entries = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise ConfigError(f'line {lineno}: expected "key = value", got {line!r}')
        key, value = (s.strip() for s in line.split('=', 1))
        entries[key] = value
    return entries


def build_config(entries: dict[str, str]) -> RunConfig:
    cfg = RunConfig()
    for key, raw in entries.items():
        if key not in KEYS:
            raise ConfigError(f'unknown configuration key {key!r}')
        setattr(cfg, KEYS[key].name, _convert(key, raw))
    validate(cfg)
    return cfg


def load_config(path: str | None, overrides: dict[str, str]) -> RunConfig:
    entries: dict[str, str] = {}
    if path is not None:
        try:
            with open(path) as fh:
                entries.update(parse_config_text(fh.read()))
        except OSError as exc:
            raise ConfigError(f'cannot read config file {path!r}: {exc.strerror}') from None
    entries.update(overrides)
    return build_config(entries)


def validate(cfg: RunConfig) -> None:
    for key, f in KEYS.items():
        value = getattr(cfg, f.name)
        if key.startswith('grids.') and not value:
            raise ConfigError(f'{key}: grid must not be empty')
        if key.startswith('tol.') and not 0 < value < 1:
            raise ConfigError(f'{key}: tolerance must lie in (0, 1), got {value!r}')
    if any(n < 1 for n in cfg.grid_n_reps):
        raise ConfigError(f'grids.n_reps: repetition counts must be positive, got {cfg.grid_n_reps}')
    if any(not 0 < lam <= 0.1 for lam in cfg.grid_lambda):
        raise ConfigError(f'grids.lambda: values must lie in (0, 0.1], got {cfg.grid_lambda}')
    if cfg.kick_n_reps < 1:
        raise ConfigError(f'kick.n_reps must be positive, got {cfg.kick_n_reps}')
    if cfg.trotter_ramp and len(cfg.trotter_ramp) != 2:
        raise ConfigError(f'trotter.ramp: expected "start, stop", got {cfg.trotter_ramp}')
    bad = [c for c in cfg.sweep_circuits if c not in SWEEP_CIRCUITS]
    if bad:
        raise ConfigError(f'sweep.circuits: unknown circuit {bad[0]!r}; choose from {", ".join(SWEEP_CIRCUITS)}')
    bad = [f for f in cfg.output_formats if f not in ('csv', 'json')]
    if bad or not cfg.output_formats:
        raise ConfigError(f'output.formats: must be a non-empty subset of csv, json, got {cfg.output_formats}')
    for text in cfg.kick_probes:
        try:
            pauli_operator(text, 2)
        except PauliParseError as exc:
            raise ConfigError(f'kick.probes: {exc}') from None
        except ValueError as exc:
            raise ConfigError(f'kick.probes: {exc}') from None
    if cfg.geometry_case not in (0, 1, 2, 3, 4):
        raise ConfigError(f'geometry.case must be 0 (all) or 1-4, got {cfg.geometry_case}')


def check_n_reps(cfg: RunConfig) -> None:
    n = cfg.grid_n_reps
    if len(n) < 4 or any(b <= a for a, b in zip(n, n[1:])):
        raise ConfigError(f'grids.n_reps: need at least 4 ascending values, got {n}')
