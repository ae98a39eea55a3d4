"""Run configuration and the named scenario presets.

Energies are in units of the tunnel amplitude T_c and times in units of
1/T_c (hbar = k_B = 1).
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from fractions import Fraction

from .rates import BathSpec
from .spin import SpinSize, SystemParams

INITIAL_STATES = ("z-up", "x-up")


@dataclass(frozen=True)
class Scenario:
    name: str
    source: str
    values: dict
    sweep: dict = field(default_factory=dict)


SCENARIOS = {
    s.name: s
    for s in (
        Scenario(
            "free-run",
            "decoupled spin, no bath (alpha = 0): coherent precession",
            dict(two_j=1, epsilon=0.0, alpha=0.0, omega_c=50.0, temperature=0.0, t_end=50.0, dt=0.002),
        ),
        Scenario(
            "figure1a",
            "Fig. 1a/b: J=1/2, eps=Tc, alpha=0.05, omega_c=50Tc, kT=2Tc",
            dict(two_j=1, epsilon=1.0, alpha=0.05, omega_c=50.0, temperature=2.0, t_end=30.0, dt=0.002),
        ),
        Scenario(
            "figure1c",
            "Fig. 1c/d: J=1/2, eps=0, alpha=0.05, omega_c=50Tc, kT=0",
            dict(two_j=1, epsilon=0.0, alpha=0.05, omega_c=50.0, temperature=0.0, t_end=30.0, dt=0.002),
        ),
        Scenario(
            "figure2",
            "Fig. 2: J in {1/2, 2, 5, 10}, eps=10Tc, alpha=0.005, omega_c=50Tc, kT=Tc",
            dict(two_j=1, epsilon=10.0, alpha=0.005, omega_c=50.0, temperature=1.0, t_end=300.0, dt=0.0005),
            sweep={"two_j": (1, 4, 10, 20)},
        ),
        Scenario(
            "figure3",
            "Fig. 3: J=1, eps=0, omega_c=50Tc, kT=0, alpha in {0.0025, 0.005, 0.01, 0.025}",
            dict(two_j=2, epsilon=0.0, alpha=0.0025, omega_c=50.0, temperature=0.0, t_end=80.0, dt=0.001),
            sweep={"alpha": (0.0025, 0.005, 0.01, 0.025)},
        ),
    )
}


@dataclass(frozen=True)
class RunConfig:
    scenario: str = "free-run"
    two_j: int = 1
    epsilon: float = 0.0
    tc: float = 1.0
    alpha: float = 0.0
    omega_c: float = 50.0
    temperature: float = 0.0
    t_end: float = 50.0
    dt: float = 0.002
    sample_every: int | None = None
    initial_state: str = "z-up"
    output: str = "largespin"
    sweep: tuple = ()

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise ConfigError("scenario", f"unknown scenario {self.scenario!r}; choose from {', '.join(SCENARIOS)}")
        if self.initial_state not in INITIAL_STATES:
            raise ConfigError("initial_state", f"must be one of {INITIAL_STATES}, got {self.initial_state!r}")
        for name in ("t_end", "dt"):
            if not getattr(self, name) > 0:
                raise ConfigError(name, f"must be positive, got {getattr(self, name)}")
        if self.sample_every is not None and self.sample_every < 1:
            raise ConfigError("sample_every", f"must be >= 1, got {self.sample_every}")
        for params in self.expand():
            try:
                params.system()
                params.bath()
            except ValueError as exc:
                field_name = next((f for f in _FIELDS if f in str(exc)), "config")
                raise ConfigError(field_name, str(exc)) from None

    def system(self) -> SystemParams:
        return SystemParams(SpinSize(self.two_j), self.epsilon, self.tc)

    def bath(self) -> BathSpec:
        return BathSpec(self.alpha, self.omega_c, self.temperature)

    def expand(self):
        """One single-trajectory config per sweep entry (itself when not sweeping)."""
        if not self.sweep:
            return [self]
        key, values = self.sweep
        return [dataclasses.replace(self, sweep=(), **{key: v}) for v in values]

    def tag(self) -> str:
        """Short label distinguishing this run within a sweep."""
        return f"J{str(SpinSize(self.two_j)).replace('/', '-')}_alpha{self.alpha:g}"


class ConfigError(ValueError):
    def __init__(self, field_name, message, line=None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{field_name}: {message}")
        self.field = field_name
        self.line = line


_FIELDS = [f.name for f in dataclasses.fields(RunConfig) if f.name != "sweep"]
_INT_FIELDS = {"two_j", "sample_every"}
_STR_FIELDS = {"scenario", "initial_state", "output"}


def convert_value(key, raw, line=None):
    raw = raw.strip()
    try:
        if key == "spin":
            return "two_j", int(SpinSize.from_j(raw).two_j)
        if key in _STR_FIELDS:
            return key, raw
        if key in _INT_FIELDS:
            if key == "sample_every" and raw.lower() in ("", "none", "auto"):
                return key, None
            return key, int(raw)
        return key, float(Fraction(raw)) if "/" in raw else float(raw)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(key, f"cannot parse {raw!r}: {exc}", line) from None


def parse_config_text(text: str) -> dict:
    """Parse ``key = value`` lines ('#' starts a comment) into converted overrides."""
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError("syntax", f"expected 'key = value', got {line!r}", lineno)
        key, raw = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _FIELDS and key != "spin":
            raise ConfigError(key, "unknown key", lineno)
        k, v = convert_value(key, raw, lineno)
        out[k] = v
    return out


def build_config(overrides: dict) -> RunConfig:
    """Fill a RunConfig from the scenario preset, then apply explicit overrides.

    An explicit value for a swept field replaces the sweep with that single value.
    """
    unknown = set(overrides) - set(_FIELDS)
    if unknown:
        raise ConfigError(sorted(unknown)[0], "unknown key")
    name = overrides.get("scenario", "free-run")
    if name not in SCENARIOS:
        raise ConfigError("scenario", f"unknown scenario {name!r}; choose from {', '.join(SCENARIOS)}")
    preset = SCENARIOS[name]
    values = dict(preset.values, scenario=name, output=name)
    values.update(overrides)
    sweep = ()
    for key, options in preset.sweep.items():
        if key not in overrides:
            sweep = (key, tuple(options))
    return RunConfig(**values, sweep=sweep)


def load_config(path) -> dict:
    with open(path) as fh:
        return parse_config_text(fh.read())
