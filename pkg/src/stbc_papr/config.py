"""Simulation configuration: defaults, validation and key=value loading."""

import dataclasses
import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

from .errors import ConfigurationError
from .metrics import make_threshold_grid
from .modem import CarrierMap
from .numerics import is_power_of_two
from .reduction import ClipConfig, PtsPlan, build_slm_codebook
from .reduction.sideinfo import METHODS

# exhaustive PTS beyond this many candidates per symbol needs allow_exhaustive
EXHAUSTIVE_LIMIT = 4096


def default_n_used(n: int) -> int:
    """301 used carriers for N=512 and 601 for N=1024, same fraction elsewhere."""
    return min(n, (75 * n) // 128 + 1)


@dataclass(frozen=True)
class SimConfig:
    n: int = 512
    n_used: int = None
    oversample: int = 6
    n_tx: int = 2
    n_rx: int = 2
    modulation: str = "qpsk"
    methods: tuple = METHODS
    cr_db: float = 4.0
    cr_interpretation: str = "dB"
    rcf_iterations: int = 1
    slm_routes: int = 8
    pts_subblocks: int = 8
    pts_scheme: str = "adjacent"
    pts_strategy: str = "greedy"
    allow_exhaustive: bool = False
    symbols: int = 1000
    seed: int = 1
    threshold_start: float = 4.0
    threshold_stop: float = 13.0
    threshold_step: float = 0.1
    receive: bool = False
    noise_power: float = 0.0
    threads: int = 1
    occupied: tuple = field(default=None, repr=False)

    def __post_init__(self):
        if self.n_used is None:
            object.__setattr__(self, "n_used", len(self.occupied) if self.occupied else default_n_used(self.n))
        object.__setattr__(self, "methods", tuple(self.methods))
        self._validate()

    def _validate(self):
        if not is_power_of_two(self.n):
            raise ConfigurationError(f"must be a power of two, got {self.n}", key="n")
        if not 1 <= self.n_used <= self.n:
            raise ConfigurationError(f"must satisfy 1 <= n_used <= n ({self.n}), got {self.n_used}", key="n_used")
        if self.occupied is not None and len(self.occupied) != self.n_used:
            raise ConfigurationError("length must equal n_used", key="occupied")
        if self.oversample < 1:
            raise ConfigurationError("must be >= 1", key="oversample")
        if self.n_tx not in (1, 2):
            raise ConfigurationError("only 1 or 2 transmit antennas are supported", key="n_tx")
        if self.n_rx < 1:
            raise ConfigurationError("must be >= 1", key="n_rx")
        if self.modulation != "qpsk":
            raise ConfigurationError("only qpsk is supported", key="modulation")
        if not self.methods:
            raise ConfigurationError("at least one method is required", key="methods")
        for m in self.methods:
            if m not in METHODS:
                raise ConfigurationError(f"unknown method {m!r}; choose from {', '.join(METHODS)}", key="methods")
        if len(set(self.methods)) != len(self.methods):
            raise ConfigurationError("methods must not repeat", key="methods")
        if self.cr_interpretation not in ("dB", "linear"):
            raise ConfigurationError("must be 'dB' or 'linear'", key="cr_interpretation")
        if self.slm_routes < 1:
            raise ConfigurationError("must be >= 1", key="slm_routes")
        if self.symbols < 1:
            raise ConfigurationError("must be >= 1", key="symbols")
        if self.seed < 0:
            raise ConfigurationError("must be non-negative", key="seed")
        if self.threads < 1:
            raise ConfigurationError("must be >= 1", key="threads")
        if self.noise_power < 0:
            raise ConfigurationError("must be >= 0", key="noise_power")
        try:
            make_threshold_grid(self.threshold_start, self.threshold_stop, self.threshold_step)
        except ValueError as exc:
            raise ConfigurationError(str(exc), key="threshold_step") from None
        if self.pts_subblocks > self.n_used:
            raise ConfigurationError(f"{self.pts_subblocks} sub-blocks exceed {self.n_used} used carriers", key="pts_subblocks")
        plan = self.pts_plan  # validates scheme/strategy
        if plan.strategy == "exhaustive" and plan.n_candidates > EXHAUSTIVE_LIMIT and not self.allow_exhaustive:
            raise ConfigurationError(
                f"exhaustive search over {plan.n_candidates} phase vectors per symbol needs allow_exhaustive",
                key="pts_strategy",
            )
        self.clip  # validates iterations

    @cached_property
    def carrier_map(self) -> CarrierMap:
        if self.occupied is not None:
            return CarrierMap(self.n, self.occupied)
        return CarrierMap.centered(self.n, self.n_used)

    @cached_property
    def clip(self) -> ClipConfig:
        return ClipConfig(self.cr_db, self.rcf_iterations)

    @cached_property
    def pts_plan(self) -> PtsPlan:
        return PtsPlan(self.pts_subblocks, self.pts_scheme, strategy=self.pts_strategy)

    @cached_property
    def codebook(self):
        return build_slm_codebook(self.n_used, self.slm_routes, seed=self.seed)

    @property
    def thresholds_db(self):
        return make_threshold_grid(self.threshold_start, self.threshold_stop, self.threshold_step)

    def replace(self, **changes) -> "SimConfig":
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict:
        """Flat echo with flag-style keys; ``load_config(overrides=...)`` accepts it."""
        out = {}
        for f in dataclasses.fields(self):
            value = getattr(self, f.name)
            if f.name == "occupied" and value is None:
                continue
            if f.name in ("cr_db", "cr_interpretation"):
                continue
            if isinstance(value, tuple):
                value = list(value)
            out[f.name.replace("_", "-")] = value
        if self.cr_interpretation == "linear":
            out["cr-linear"] = 10.0 ** (self.cr_db / 20.0)
        else:
            out["cr-db"] = self.cr_db
        return out


_FIELDS = {f.name: f for f in dataclasses.fields(SimConfig)}
_ALIASES = {"l": "oversample", "v": "pts_subblocks", "u": "slm_routes", "rcf": "rcf_iterations"}


def _normalize_key(key: str) -> str:
    key = key.strip().lower().lstrip("-").replace("-", "_")
    return _ALIASES.get(key, key)


def _parse_bool(key, value):
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ("1", "true", "yes", "on"):
        return True
    if text in ("0", "false", "no", "off"):
        return False
    raise ConfigurationError(f"expected a boolean, got {value!r}", key=key)


def _parse_list(value):
    if isinstance(value, str):
        return [item.strip() for item in value.replace(";", ",").split(",") if item.strip()]
    return list(value)


def _parse_value(key, value):
    if key == "cr_linear":
        return _parse_number(key, value, float)
    default = _FIELDS[key].default
    if key == "methods":
        return tuple(str(m).lower() for m in _parse_list(value))
    if key == "occupied":
        return tuple(_parse_number(key, v, int) for v in _parse_list(value))
    if isinstance(default, bool):
        return _parse_bool(key, value)
    if key == "n_used" or isinstance(default, int):
        return _parse_number(key, value, int)
    if isinstance(default, float):
        return _parse_number(key, value, float)
    return str(value).strip()


def _parse_number(key, value, kind):
    try:
        if kind is int:
            number = float(value)
            if not number.is_integer():
                raise ValueError
            return int(number)
        number = float(value)
        if not math.isfinite(number):
            raise ValueError
        return number
    except (TypeError, ValueError):
        raise ConfigurationError(f"expected {kind.__name__}, got {value!r}", key=key) from None


def read_config_file(path) -> dict:
    """Flat UTF-8 ``key=value`` lines; blank lines and ``#`` comments ignored."""
    entries = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"line {lineno}: expected key=value, got {raw!r}", key=str(path))
        key, value = line.split("=", 1)
        entries[key.strip()] = value.strip()
    return entries


def load_config(path=None, overrides=None) -> SimConfig:
    """Build a validated :class:`SimConfig`.

    Keys from ``path`` are applied first, then ``overrides``; anything absent
    keeps its default. Keys may use dashes or underscores.
    """
    raw = {}
    if path is not None:
        raw.update(read_config_file(path))
    if overrides:
        raw.update({k: v for k, v in overrides.items() if v is not None})

    values = {}
    for key, value in raw.items():
        name = _normalize_key(key)
        if name not in _FIELDS and name != "cr_linear":
            raise ConfigurationError("unknown configuration key", key=key)
        values[name] = _parse_value(name, value)

    if "cr_linear" in values:
        if "cr_db" in values:
            raise ConfigurationError("give either cr-db or cr-linear, not both", key="cr_linear")
        ratio = values.pop("cr_linear")
        if ratio <= 0:
            raise ConfigurationError("must be positive", key="cr_linear")
        values["cr_db"] = 20.0 * math.log10(ratio)
        values["cr_interpretation"] = "linear"
    return SimConfig(**values)
