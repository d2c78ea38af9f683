"""The two case studies: a low-thrust spacecraft and an opinion-dynamics model."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import ResilienceError, SystemSpec, ValidationError

E_MIN = 1e-6
SIN_I_MIN = 1e-6


class SingularElements(ResilienceError):
    pass


@dataclass(frozen=True)
class OrbitalElements:
    """Classical elements; ``a`` in km, angles in radians."""

    a: float
    e: float
    i: float
    raan: float
    argp: float
    mean_anomaly: float

    def __post_init__(self):
        if not self.a > 0:
            raise ValidationError("a", "semi-major axis must be positive")
        if not 0 <= self.e < 1:
            raise ValidationError("e", "eccentricity must lie in [0, 1)")

    @classmethod
    def from_degrees(cls, a, e, i, raan, argp, mean_anomaly) -> "OrbitalElements":
        return cls(a, e, *(math.radians(v) for v in (i, raan, argp, mean_anomaly)))

    def as_vector(self, degrees: bool = False) -> np.ndarray:
        f = math.degrees if degrees else float
        return np.array([self.a, self.e, f(self.i), f(self.raan), f(self.argp), f(self.mean_anomaly)])


@dataclass(frozen=True)
class GravParameter:
    mu: float

    def __post_init__(self):
        if not self.mu > 0:
            raise ValidationError("mu", "gravitational parameter must be positive")


EARTH_KM = GravParameter(3.986e5)  # km^3 / s^2


def spacecraft_bbar(el: OrbitalElements, mu: GravParameter = EARTH_KM) -> np.ndarray:
    """6x14 control matrix of the averaged element rates w.r.t. the 14 Fourier thrust coefficients.

    Inputs are ordered ``aR0 aR1 aR2 bR1 aS0 aS1 aS2 bS1 bS2 aW0 aW1 aW2 bW1 bW2``;
    states are ``a e i raan argp M``.
    """
    a, e, inc, w = el.a, el.e, el.i, el.argp
    if e <= E_MIN:
        raise SingularElements(f"eccentricity {e} too close to 0")
    if math.sin(inc) <= SIN_I_MIN:
        raise SingularElements(f"inclination {inc} too close to 0 or pi")
    k = math.sqrt(a / mu.mu)
    s = math.sqrt(1 - e * e)
    csc = 1 / math.sin(inc)
    cw, sw = math.cos(w), math.sin(w)

    b1 = [[a * k * e, 2 * a * k * s, 0, 0],
          [0.5 * k * (1 - e * e), -1.5 * e * k * s, k * s, -0.25 * e * k * s]]
    b2 = k * np.array([
        [-1.5 * e * cw / s, 0.5 * (1 + e * e) * cw / s, -0.25 * e * cw / s, -0.5 * sw, 0.25 * e * sw],
        [-1.5 * e * sw * csc / s, 0.5 * (1 + e * e) * sw * csc / s, -0.25 * e * sw * csc / s,
         0.5 * cw * csc, -0.25 * e * cw * csc],
    ])
    b3 = [[k * s, -k * s / (2 * e), 0],
          [-3 * k, k * (1.5 * e + 0.5 / e), -0.5 * e * e * k]]
    b4 = k * np.array([[0.5 * (2 - e * e) / e, -0.25],
                       [-(2 - e * e) * s / (2 * e), 0.25 * s]])
    b5 = math.cos(inc) * k * np.array([
        [1.5 * e * sw * csc / s, -0.5 * (1 + e * e) * sw * csc / s, 0.25 * e * sw * csc / s,
         -0.5 * csc, 0.25 * e * csc],
        [0, 0, 0, 0, 0],
    ])
    out = np.zeros((6, 14))
    out[0:2, 3:7] = b1
    out[2:4, 9:14] = b2
    out[4:6, 0:3] = b3
    out[4:6, 7:9] = b4
    out[4:6, 9:14] = b5
    return out


PRINTED_SPACECRAFT_BBAR = 1e-6 * np.array([
    [0, 0, 0, 18314, 40583, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1.1, -3.4, 2.3, -0.4, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, -5.2, 3.8, -0.9, -0.7, 0.2],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, -5.5, 4, -0.9, 5.6, -1.9],
    [3, -2.7, 0, 0, 0, 0, 0, 4.7, -1, 5.2, -3.8, 1.3, -5.6, 1.9],
    [-12.3, 7.2, -0.9, 0, 0, 0, 0, -3.5, 0.8, 0, 0, 0, 0, 0],
])

RAISING_INITIAL = OrbitalElements.from_degrees(6678, 0.67, 20, 20, 20, 20)
RAISING_TARGET = OrbitalElements.from_degrees(7345, 0.737, 22, 22, 22, 20)
# as printed for the raising maneuver: km, -, then degrees
RAISING_D = np.array([667, 0.067, 2, 2, 2, 2], dtype=float)


@dataclass(frozen=True, eq=False)
class SpacecraftExample:
    printed_bbar: SystemSpec
    initial: OrbitalElements
    target: OrbitalElements
    target_distance_d: np.ndarray


def spacecraft_example() -> SpacecraftExample:
    return SpacecraftExample(
        SystemSpec(PRINTED_SPACECRAFT_BBAR, 1.0), RAISING_INITIAL, RAISING_TARGET, RAISING_D.copy()
    )


def opinion_example() -> SystemSpec:
    """Two agents, five channels; entry (i, j) is the trust of agent i in channel j."""
    return SystemSpec(np.array([[0.8, -0.9, 0.5, -0.5, 0.0],
                                [0.9, -0.8, -0.4, 0.4, 0.1]]), 1.0)


SCENARIOS = {
    "spacecraft": lambda: spacecraft_example().printed_bbar,
    "opinion": opinion_example,
}


def fit_scale(reference: np.ndarray, candidate: np.ndarray) -> float:
    """Least-squares positive ``s`` minimising ``|reference - s * candidate|`` in relative terms.

    Each entry is weighted by ``1/|reference|`` so the tiny entries count as
    much as the two dominant ones.
    """
    mask = reference != 0
    ratio = candidate[mask] / reference[mask]
    return float(np.sum(ratio) / np.sum(ratio * ratio))
