"""
Library of the reference imaging scenes.

Lengths are in wavelengths. The tc5 scene stands in for the measured
foam/dielectric target (0.2 m domain at 2 GHz); its real data must be
provided as a dataset file.
"""
from collections.abc import Callable
from dataclasses import dataclass

from dtis.geometry.services import (
    encode_doubly_connected,
    encode_multi_object,
    encode_single,
)
from dtis.geometry.types import DofVector, Layout

from .exceptions import ConfigurationError

SceneBuilder = Callable[[float | None, float, float], DofVector]

# Foam target: 0.2 m domain, 8 cm and 3.1 cm diameters, 1.67 m probe
# circle, all at a 0.15 m wavelength.
FOAM_WAVELENGTH = 0.15
FOAM_SIDE = 0.2 / FOAM_WAVELENGTH
FOAM_OUTER_RADIUS = 0.04 / FOAM_WAVELENGTH
FOAM_UPSILON = 0.0155 / 0.04
FOAM_PROBE_RADIUS = 1.67 / FOAM_WAVELENGTH


def _tau(default: float, override: float | None) -> complex:
    return complex(default if override is None else override)


def _tc1(tau: float | None, side: float, tau_max: float) -> DofVector:
    return encode_single(
        (0.0, 0.0), [0.5] * 4, _tau(4.0, tau), side, tau_max
    )


def _tc2(tau: float | None, side: float, tau_max: float) -> DofVector:
    radii = [0.55, 0.3, 0.5, 0.25, 0.6, 0.35, 0.45, 0.3]
    return encode_single((0.1, 0.1), radii, _tau(4.0, tau), side, tau_max)


def _tc3a(tau: float | None, side: float, tau_max: float) -> DofVector:
    return encode_doubly_connected(
        (0.2, 0.2),
        [0.6] * 4,
        0.6,
        _tau(3.0, tau),
        _tau(1.0, tau),
        side,
        tau_max,
    )


def _tc3b(tau: float | None, side: float, tau_max: float) -> DofVector:
    return encode_doubly_connected(
        (-0.2, 0.2),
        [0.6] * 4,
        0.4,
        _tau(2.0, tau),
        _tau(4.0, tau),
        side,
        tau_max,
    )


def _tc4(tau: float | None, side: float, tau_max: float) -> DofVector:
    return encode_multi_object(
        ((-0.4, -0.4), (0.5, 0.5)),
        ([0.4] * 4, [0.4] * 4),
        (_tau(4.0, tau), _tau(4.0, tau)),
        side,
        tau_max,
    )


def _tc5(tau: float | None, side: float, tau_max: float) -> DofVector:
    return encode_doubly_connected(
        (0.0, 0.0),
        [FOAM_OUTER_RADIUS] * 4,
        FOAM_UPSILON,
        _tau(0.45, tau),
        _tau(2.0, tau),
        side,
        tau_max,
    )


@dataclass(frozen=True)
class Scenario:
    """
    A reference scene with its measurement setup and swarm budget.

    measured scenarios are inverted from a dataset file; their synthetic
    scene only exercises the ingestion path.
    """

    name: str
    layout: Layout
    q: int
    builder: SceneBuilder
    initial_samples: int
    iterations: int
    snr_db: float | None = None
    side: float = 2.0
    views: int = 18
    probes: int = 18
    rho_o: float = 3.0
    measured: bool = False

    def scene(
        self, side: float, tau: float | None, tau_max: float
    ) -> DofVector:
        """
        Encodes the scene inside a domain of the given side.

        Args:
            side (float): L_D of the domain, which sets the DoF bounds.
            tau (float | None): real contrast replacing every region's
            contrast, or None to keep the reference values.
            tau_max (float): upper bound of the real contrast DoFs.
        """
        return self.builder(tau, side, tau_max)


SCENARIOS = {
    scenario.name: scenario
    for scenario in (
        Scenario("tc1", Layout.SINGLE, 4, _tc1, 40, 100),
        Scenario("tc2", Layout.SINGLE, 8, _tc2, 60, 80, snr_db=10.0),
        Scenario(
            "tc3a", Layout.DOUBLY_CONNECTED, 4, _tc3a, 55, 85, snr_db=10.0
        ),
        Scenario(
            "tc3b", Layout.DOUBLY_CONNECTED, 4, _tc3b, 55, 85, snr_db=10.0
        ),
        Scenario("tc4", Layout.MULTI_OBJECT, 4, _tc4, 80, 60, snr_db=10.0),
        Scenario(
            "tc5",
            Layout.DOUBLY_CONNECTED,
            4,
            _tc5,
            55,
            85,
            side=FOAM_SIDE,
            views=8,
            probes=241,
            rho_o=FOAM_PROBE_RADIUS,
            measured=True,
        ),
    )
}


def get_scenario(name: str) -> Scenario:
    """
    Raises:
        ConfigurationError: if no scenario has that name.
    """
    try:
        return SCENARIOS[name]
    except KeyError:
        known = ", ".join(SCENARIOS)
        raise ConfigurationError(
            f"Unknown scenario '{name}'; pick one of {known}"
        ) from None
