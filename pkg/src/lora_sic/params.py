"""LoRa per-SF radio constants, derived radio quantities and dB conversions."""

from __future__ import annotations

import math
from dataclasses import dataclass

# Message generation period behind the tabulated duty cycles: 15 minutes.
MESSAGE_PERIOD_MS = 15 * 60 * 1000.0

SPEED_OF_LIGHT_M_S = 2.998e8

THERMAL_NOISE_DBM_PER_HZ = -174.0


@dataclass(frozen=True)
class SfParams:
    """Uplink characteristics of one spreading factor.

    Values correspond to a 9-byte payload at 125 kHz with CRC and explicit
    header.  ``duty_cycle`` is the dimensionless ratio of time-on-air to the
    message generation period.
    """

    sf: int
    toa_ms: float
    bitrate_kbps: float
    sensitivity_dbm: float
    snr_threshold_db: float
    duty_cycle: float

    def __post_init__(self) -> None:
        if not 7 <= self.sf <= 12:
            raise ValueError(f"sf must be in 7..12, got {self.sf}")
        if self.toa_ms <= 0:
            raise ValueError(f"toa_ms must be positive, got {self.toa_ms}")
        if not 0.0 < self.duty_cycle < 1.0:
            raise ValueError(
                f"duty_cycle must lie in (0, 1), got {self.duty_cycle}"
            )


@dataclass(frozen=True)
class RadioConfig:
    """Radio-level scenario parameters.

    dB-valued fields are converted to linear scale once, at the point of use;
    all probability math downstream is carried out in linear units.
    """

    carrier_hz: float = 868e6
    bandwidth_hz: float = 125e3
    tx_power_dbm: float = 14.0
    noise_figure_db: float = 6.0
    path_loss_exp: float = 2.8
    capture_threshold_db: float = 1.0

    def __post_init__(self) -> None:
        if self.carrier_hz <= 0:
            raise ValueError(f"carrier_hz must be positive, got {self.carrier_hz}")
        if self.bandwidth_hz <= 0:
            raise ValueError(f"bandwidth_hz must be positive, got {self.bandwidth_hz}")
        if self.path_loss_exp <= 2:
            # Interference integrals over wide outer rings diverge for
            # exponents at or below 2.
            raise ValueError(
                f"path_loss_exp must exceed 2, got {self.path_loss_exp}"
            )

    @property
    def wavelength_m(self) -> float:
        return SPEED_OF_LIGHT_M_S / self.carrier_hz

    @property
    def capture_threshold(self) -> float:
        """Capture threshold as a linear power ratio."""
        return db_to_linear(self.capture_threshold_db)

    @property
    def tx_power_mw(self) -> float:
        return db_to_linear(self.tx_power_dbm)

    @property
    def noise_power_mw(self) -> float:
        return db_to_linear(
            noise_power_dbm(self.noise_figure_db, self.bandwidth_hz)
        )


_SF_TABLE = (
    SfParams(7, 41.22, 5.47, -123.0, -6.0, 45.8e-6),
    SfParams(8, 72.19, 3.12, -126.0, -9.0, 80.2e-6),
    SfParams(9, 144.38, 1.76, -129.0, -12.0, 160.4e-6),
    SfParams(10, 247.81, 0.98, -132.0, -15.0, 275.3e-6),
    SfParams(11, 495.62, 0.54, -134.5, -17.5, 550.7e-6),
    SfParams(12, 991.23, 0.29, -137.0, -20.0, 1101.4e-6),
)


def default_sf_table() -> tuple[SfParams, ...]:
    """Return the six SF7..SF12 rows of uplink characteristics.

    Duty cycles are the tabulated values (multiples of 1e-6) for a 15-minute
    message period; ``duty_cycle_from_toa`` reproduces them from the ToA
    column up to their printed rounding.
    """
    return _SF_TABLE


def duty_cycle_from_toa(toa_ms: float, period_ms: float = MESSAGE_PERIOD_MS) -> float:
    """Duty cycle of a node emitting one packet of ``toa_ms`` per ``period_ms``."""
    if toa_ms <= 0:
        raise ValueError(f"toa_ms must be positive, got {toa_ms}")
    if period_ms <= 0:
        raise ValueError(f"period_ms must be positive, got {period_ms}")
    if period_ms < toa_ms:
        raise ValueError("period_ms must be at least toa_ms")
    return toa_ms / period_ms


def noise_power_dbm(noise_figure_db: float, bandwidth_hz: float) -> float:
    """Receiver noise power in dBm: thermal floor plus noise figure over ``bandwidth_hz``.

    Computed exactly; the default scenario gives -117.03 dBm, not the
    conventionally rounded -117 dBm.
    """
    if bandwidth_hz <= 0:
        raise ValueError(f"bandwidth_hz must be positive, got {bandwidth_hz}")
    return THERMAL_NOISE_DBM_PER_HZ + noise_figure_db + 10.0 * math.log10(bandwidth_hz)


def db_to_linear(x_db: float) -> float:
    return 10.0 ** (x_db / 10.0)


def linear_to_db(x: float) -> float:
    if x <= 0:
        raise ValueError(f"linear power ratio must be positive, got {x}")
    return 10.0 * math.log10(x)
