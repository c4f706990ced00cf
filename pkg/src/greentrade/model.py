"""Physical-layer link model: channel gain, AWGN rate and energy per bit.

Bandwidth ``W`` and delay ``t`` are per-bit normalized quantities (Hz per
bit/s and seconds per bit). All functions accept scalars or numpy arrays and
broadcast in the usual way.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

SPEED_OF_LIGHT = 2.99792458e8  # m/s

# Largest exponent 1/(W*t) for which 2**(1/(W*t)) is still evaluated.
MAX_EXPONENT = 1024.0
# Above this exponent the transmit energy is evaluated in log space.
_DIRECT_EXPONENT = 1000.0


class EnergyRangeError(ArithmeticError):
    """Raised when ``W*t`` is so small that 2**(1/(W*t)) is not representable."""


@dataclass(frozen=True)
class SystemParams:
    """Link-level constants.

    Either ``wavelength`` (m) or ``carrier_frequency`` (Hz) may be given; if
    only the frequency is supplied the wavelength is derived as c / f_c. The default wavelength
    is the 2.4 GHz value rounded to 0.125 m.
    """

    noise_psd: float = 8e-21  # N0, W/Hz
    circuit_power_per_hz: float = 1e-6  # P_cir, W/Hz
    static_power: float = 2e-6  # P_sb, W
    tx_gain: float = 1.0
    rx_gain: float = 1.0
    wavelength: float | None = 0.125  # m
    carrier_frequency: float | None = 2.4e9  # Hz
    system_loss: float = 2.5
    path_loss_exponent: float = 3.0

    def __post_init__(self):
        if self.wavelength is None:
            if self.carrier_frequency is None:
                raise ValueError("either wavelength or carrier_frequency is required")
            if not self.carrier_frequency > 0:
                raise ValueError("carrier_frequency must be positive")
            object.__setattr__(self, "wavelength", SPEED_OF_LIGHT / self.carrier_frequency)
        checks = [
            (self.noise_psd > 0, "noise_psd must be positive"),
            (self.circuit_power_per_hz >= 0, "circuit_power_per_hz must be non-negative"),
            (self.static_power >= 0, "static_power must be non-negative"),
            (self.tx_gain > 0, "tx_gain must be positive"),
            (self.rx_gain > 0, "rx_gain must be positive"),
            (self.wavelength > 0, "wavelength must be positive"),
            (self.system_loss >= 1, "system_loss must be >= 1"),
            (self.path_loss_exponent >= 2, "path_loss_exponent must be >= 2"),
        ]
        for ok, message in checks:
            if not ok:
                raise ValueError(message)

    @classmethod
    def from_carrier_frequency(cls, carrier_frequency: float, **kwargs) -> "SystemParams":
        """Build params with the wavelength derived exactly from ``carrier_frequency``."""
        return cls(wavelength=None, carrier_frequency=carrier_frequency, **kwargs)

    def circuit_power(self, bandwidth):
        """Aggregate circuit power ``W*P_cir + P_sb`` (W)."""
        return bandwidth * self.circuit_power_per_hz + self.static_power


@dataclass(frozen=True)
class ResourcePoint:
    """A per-bit (bandwidth, delay) allocation."""

    bandwidth: float
    delay: float

    def __post_init__(self):
        if not (self.bandwidth > 0 and self.delay > 0):
            raise ValueError("bandwidth and delay must be positive")


@dataclass(frozen=True)
class EnergyBreakdown:
    """Transmit, circuit and total energy per bit (J/bit)."""

    e_transmit: float
    e_circuit: float
    e_total: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "e_total", self.e_transmit + self.e_circuit)


def channel_gain(d, params: SystemParams):
    """Free-space channel gain ``Gt*Gr*lambda**2 / ((4*pi)**2 * d**alpha * L)``.

    Parameters
    ----------
    d : float or array_like
        BS-user distance in metres, strictly positive.
    params : SystemParams

    Returns
    -------
    float or ndarray
        Dimensionless power gain.
    """
    d_arr = np.asarray(d, dtype=float)
    if np.any(~(d_arr > 0)):
        raise ValueError("distance must be positive")
    num = params.tx_gain * params.rx_gain * params.wavelength**2
    g = num / ((4.0 * math.pi) ** 2 * d_arr**params.path_loss_exponent * params.system_loss)
    return float(g) if g.ndim == 0 else g


def awgn_rate(bandwidth, power, gain, noise_psd):
    """Shannon rate ``W*log2(1 + P*g/(W*N0))`` in bits/s."""
    W = np.asarray(bandwidth, dtype=float)
    if np.any(~(W > 0)) or not noise_psd > 0:
        raise ValueError("bandwidth and noise_psd must be positive")
    if np.any(np.asarray(power) < 0) or np.any(~(np.asarray(gain) > 0)):
        raise ValueError("power must be non-negative and gain positive")
    rate = W * np.log1p(power * gain / (W * noise_psd)) / math.log(2.0)
    return float(rate) if np.ndim(rate) == 0 else rate


def _transmit_energy(bandwidth, delay, gain, noise_psd):
    W = np.asarray(bandwidth, dtype=float)
    t = np.asarray(delay, dtype=float)
    if np.any(~(W > 0)) or np.any(~(t > 0)):
        raise ValueError("bandwidth and delay must be positive")
    if np.any(~(np.asarray(gain) > 0)):
        raise ValueError("gain must be positive")
    x = 1.0 / (W * t)
    if np.any(x > MAX_EXPONENT):
        raise EnergyRangeError(
            f"exponent 1/(W*t) = {float(np.max(x)):.6g} exceeds {MAX_EXPONENT:g}"
        )
    scale = W * t * noise_psd / gain
    with np.errstate(over="ignore"):
        direct = np.expm1(x * math.log(2.0)) * scale
    if np.any(x > _DIRECT_EXPONENT):
        # log(2**x - 1) = x*ln2 + log1p(-2**-x)
        logged = np.exp(x * math.log(2.0) + np.log1p(-np.exp2(-x)) + np.log(scale))
        direct = np.where(x > _DIRECT_EXPONENT, logged, direct)
    return direct


def transmit_energy_per_bit(rp: ResourcePoint, gain, noise_psd: float):
    """Transmit energy per bit ``(2**(1/(W*t)) - 1) * W * N0 * t / g``.

    Raises
    ------
    EnergyRangeError
        If ``1/(W*t)`` exceeds :data:`MAX_EXPONENT`.
    """
    e = _transmit_energy(rp.bandwidth, rp.delay, gain, noise_psd)
    return float(e) if np.ndim(e) == 0 else e


def total_energy_per_bit(rp: ResourcePoint, gain: float, params: SystemParams) -> EnergyBreakdown:
    """Transmit plus circuit energy per bit for one operating point."""
    e_tran = float(_transmit_energy(rp.bandwidth, rp.delay, gain, params.noise_psd))
    e_cir = rp.bandwidth * params.circuit_power_per_hz * rp.delay + params.static_power * rp.delay
    return EnergyBreakdown(e_transmit=e_tran, e_circuit=e_cir)


def transmit_energy_grid(bandwidth, delay, gain, noise_psd: float):
    """Vectorised transmit energy per bit over broadcast inputs."""
    return _transmit_energy(bandwidth, delay, gain, noise_psd)


def energy_grid(bandwidth, delay, gain, params: SystemParams):
    """Vectorised total energy per bit over broadcast ``bandwidth``/``delay``/``gain``.

    Same arithmetic as :func:`total_energy_per_bit`, so values agree bit for bit.
    """
    W = np.asarray(bandwidth, dtype=float)
    t = np.asarray(delay, dtype=float)
    e_tran = _transmit_energy(W, t, gain, params.noise_psd)
    e_cir = W * params.circuit_power_per_hz * t + params.static_power * t
    return e_tran + e_cir


def energy_vs_bandwidth(bandwidth, gain, params: SystemParams):
    """Energy per bit as a function of bandwidth at unit delay."""
    return energy_grid(bandwidth, 1.0, gain, params)


def energy_vs_delay(delay, gain, params: SystemParams):
    """Energy per bit as a function of delay at unit bandwidth."""
    return energy_grid(1.0, delay, gain, params)
