import logging
import re
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from pathlib import Path

import environ
from django.conf import settings
from django.core.exceptions import ImproperlyConfigured

from dtis.core.utils.files import config_hash, format_float, read_lines
from dtis.forward.types import Grid, MeasurementSetup
from dtis.geometry.services import DEFAULT_TAU_MAX, default_bounds
from dtis.geometry.types import DofVector
from dtis.optimizer.exceptions import InvalidConfigError
from dtis.optimizer.types import InversionConfig, Mode

from .exceptions import ConfigurationError
from .scenarios import Scenario, get_scenario

logger = logging.getLogger(__name__)

CONFIG_LINE = re.compile(r"^(?P<key>\w+)\s*=\s*(?P<value>.*?)\s*$")

KEYS = (
    "scenario",
    "mode",
    "n_side",
    "n_side_fw",
    "side",
    "views",
    "probes",
    "rho_o",
    "snr_db",
    "particles",
    "iterations",
    "go_iterations",
    "initial_samples",
    "inertia",
    "cognitive",
    "social",
    "velocity_clamp",
    "fit_beta",
    "tau",
    "tau_max",
    "seed",
    "seeds",
    "report_eta",
    "allow_inverse_crime",
    "samples_per_segment",
)


def parse_config_lines(lines: Iterable[str]) -> dict[str, str]:
    """
    Reads `key = value` lines; blank lines and `#` comments are skipped.

    Raises:
        ConfigurationError: if a line is not an assignment.
    """
    values = {}
    for number, line in enumerate(lines, start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        match = CONFIG_LINE.match(text)
        if not match:
            raise ConfigurationError(
                f"Line {number} is not a 'key = value' pair: {line!r}"
            )
        values[match["key"]] = match["value"]
    return values


def parse_config_file(path: Path) -> dict[str, str]:
    try:
        return parse_config_lines(read_lines(path))
    except OSError as e:
        raise ConfigurationError(f"Cannot read {path}: {e}") from e
    except ConfigurationError as e:
        raise ConfigurationError(f"{path}: {e}") from e


def parse_overrides(pairs: Iterable[str]) -> dict[str, str]:
    """Turns `key=value` command-line overrides into a mapping."""
    return parse_config_lines(pairs)


@dataclass(frozen=True)
class RunConfig:
    """
    Fully resolved settings of a synth/invert/landscape/batch run.

    Scenario-dependent keys are already filled in; `snr_db` None means
    noiseless data and `tau` None keeps the scenario contrasts.
    """

    scenario: str = "tc1"
    mode: Mode = Mode.SBD
    n_side: int = 20
    n_side_fw: int = 40
    side: float = 2.0
    views: int = 18
    probes: int = 18
    rho_o: float = 3.0
    snr_db: float | None = None
    particles: int = 10
    iterations: int = 100
    go_iterations: int = 100
    initial_samples: int = 40
    inertia: float = 0.4
    cognitive: float = 2.0
    social: float = 2.0
    velocity_clamp: float = 0.5
    fit_beta: bool = False
    tau: float | None = None
    tau_max: float = DEFAULT_TAU_MAX
    seed: int = 1
    seeds: tuple[int, ...] = (1, 2, 3, 4, 5)
    report_eta: bool = False
    allow_inverse_crime: bool = False
    samples_per_segment: int = 32

    def __post_init__(self) -> None:
        try:
            object.__setattr__(self, "mode", Mode(self.mode))
        except ValueError:
            raise ConfigurationError(
                f"mode must be 'sbd' or 'go', not {self.mode!r}"
            ) from None
        object.__setattr__(self, "seeds", tuple(self.seeds))
        self._validate()

    def _validate(self) -> None:
        get_scenario(self.scenario)
        positive = {
            "n_side": self.n_side,
            "n_side_fw": self.n_side_fw,
            "views": self.views,
            "probes": self.probes,
            "go_iterations": self.go_iterations,
            "samples_per_segment": self.samples_per_segment,
        }
        for key, value in positive.items():
            if value < 1:
                raise ConfigurationError(f"{key} must be positive: {value}")
        if self.side <= 0 or self.rho_o <= 0 or self.tau_max <= 0:
            raise ConfigurationError(
                "side, rho_o and tau_max must be positive"
            )
        if self.n_side == self.n_side_fw and not self.allow_inverse_crime:
            raise ConfigurationError(
                f"n_side and n_side_fw are both {self.n_side}; set "
                f"allow_inverse_crime to invert on the synthesis grid"
            )
        if self.tau is not None and not 0 <= self.tau <= self.tau_max:
            raise ConfigurationError(
                f"tau={self.tau} must lie in [0, tau_max={self.tau_max}]"
            )
        if not self.seeds:
            raise ConfigurationError("seeds must list at least one seed")
        if len(set(self.seeds)) != len(self.seeds):
            raise ConfigurationError(f"seeds must be distinct: {self.seeds}")
        try:
            self.inversion()
        except InvalidConfigError as e:
            raise ConfigurationError(str(e)) from e

    @property
    def scenario_spec(self) -> Scenario:
        return get_scenario(self.scenario)

    @property
    def inversion_grid(self) -> Grid:
        return Grid(side=self.side, n_side=self.n_side)

    @property
    def synthesis_grid(self) -> Grid:
        return Grid(side=self.side, n_side=self.n_side_fw)

    @property
    def setup(self) -> MeasurementSetup:
        return MeasurementSetup(
            views=self.views, probes=self.probes, radius=self.rho_o
        )

    def scene(self) -> DofVector:
        return self.scenario_spec.scene(self.side, self.tau, self.tau_max)

    def inversion(self, seed: int | None = None) -> InversionConfig:
        """
        Swarm settings over the default bounds of the scenario layout.

        Args:
            seed (int | None): inversion seed; the config seed when None.
        """
        scenario = self.scenario_spec
        lower, upper = default_bounds(
            scenario.layout, scenario.q, self.side, self.tau_max
        )
        return InversionConfig(
            layout=scenario.layout,
            q=scenario.q,
            lower=lower,
            upper=upper,
            mode=self.mode,
            particles=self.particles,
            iterations=self.iterations,
            initial_samples=self.initial_samples,
            inertia=self.inertia,
            cognitive=self.cognitive,
            social=self.social,
            velocity_clamp=self.velocity_clamp,
            fit_beta=self.fit_beta,
            seed=self.seed if seed is None else seed,
        )

    def values(self) -> dict[str, str]:
        """Canonical text of every key, as hashed and reported."""
        rendered = {}
        for key in KEYS:
            value = getattr(self, key)
            if value is None:
                text = ""
            elif isinstance(value, bool):
                text = str(value).lower()
            elif isinstance(value, float):
                text = format_float(value)
            elif isinstance(value, tuple):
                text = ",".join(str(item) for item in value)
            else:
                text = str(value)
            rendered[key] = text
        return rendered

    @property
    def hash(self) -> str:
        return config_hash(self.values())


def _cast(env: environ.Env, kind: str, key: str, default):
    try:
        return getattr(env, kind)(key, default=default)
    except (ValueError, ImproperlyConfigured) as e:
        raise ConfigurationError(f"Bad value for {key}: {e}") from e


def _optional_float(
    env: environ.Env, raw: Mapping[str, str], key: str, default
) -> float | None:
    if key not in raw:
        return default
    if not raw[key]:
        return None
    return _cast(env, "float", key, None)


def resolve(raw: Mapping[str, str]) -> RunConfig:
    """
    Casts raw configuration text and fills in scenario defaults.

    Values are cast by a django-environ Env reading from `raw` instead of
    the process environment.

    Args:
        raw (Mapping[str, str]): key/value text from a file and overrides.

    Raises:
        ConfigurationError: on unknown keys, bad values or inconsistent
        settings.

    Returns:
        RunConfig: the validated configuration.
    """
    unknown = sorted(set(raw) - set(KEYS))
    if unknown:
        raise ConfigurationError(f"Unknown keys: {', '.join(unknown)}")

    env = environ.Env()
    env.ENVIRON = dict(raw)
    scenario = get_scenario(_cast(env, "str", "scenario", "tc1"))
    iterations = _cast(env, "int", "iterations", scenario.iterations)
    return RunConfig(
        scenario=scenario.name,
        mode=_cast(env, "str", "mode", Mode.SBD.value),
        n_side=_cast(env, "int", "n_side", 20),
        n_side_fw=_cast(env, "int", "n_side_fw", 40),
        side=_cast(env, "float", "side", scenario.side),
        views=_cast(env, "int", "views", scenario.views),
        probes=_cast(env, "int", "probes", scenario.probes),
        rho_o=_cast(env, "float", "rho_o", scenario.rho_o),
        snr_db=_optional_float(env, raw, "snr_db", scenario.snr_db),
        particles=_cast(env, "int", "particles", 10),
        iterations=iterations,
        go_iterations=_cast(env, "int", "go_iterations", iterations),
        initial_samples=_cast(
            env, "int", "initial_samples", scenario.initial_samples
        ),
        inertia=_cast(env, "float", "inertia", 0.4),
        cognitive=_cast(env, "float", "cognitive", 2.0),
        social=_cast(env, "float", "social", 2.0),
        velocity_clamp=_cast(env, "float", "velocity_clamp", 0.5),
        fit_beta=_cast(env, "bool", "fit_beta", False),
        tau=_optional_float(env, raw, "tau", None),
        tau_max=_cast(env, "float", "tau_max", DEFAULT_TAU_MAX),
        seed=_cast(env, "int", "seed", 1),
        seeds=tuple(_seeds(env)),
        report_eta=_cast(env, "bool", "report_eta", False),
        allow_inverse_crime=_cast(
            env, "bool", "allow_inverse_crime", False
        ),
        samples_per_segment=_cast(
            env,
            "int",
            "samples_per_segment",
            settings.DTIS_SAMPLES_PER_SEGMENT,
        ),
    )


def _seeds(env: environ.Env) -> list[int]:
    try:
        return env.list("seeds", cast=int, default=[1, 2, 3, 4, 5])
    except ValueError as e:
        raise ConfigurationError(f"Bad value for seeds: {e}") from e


def load_run_config(
    path: Path | None = None,
    overrides: Mapping[str, str] | None = None,
) -> RunConfig:
    """
    Builds the run configuration from an optional file and overrides.

    Overrides win over the file. Command-line flags are passed in as
    overrides of their keys.

    Raises:
        ConfigurationError: see `resolve`.
    """
    raw = parse_config_file(path) if path else {}
    raw.update(overrides or {})
    config = resolve(raw)
    logger.debug(f"Resolved configuration {config.hash}: {config.values()}")
    return config
