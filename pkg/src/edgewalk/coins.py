"""Coin parameters of the walk and derived sign data.

The walk is controlled by a pair of rotation angles (alpha, beta); alpha
drives the horizontal moves, beta the vertical ones.  Almost every closed
form downstream depends only on the combinations

    r = sin(alpha - beta),   s = sin(alpha + beta),

together with the sign triple (sgn(sin 2a sin 2b), sgn s, sgn r) that
labels the dispersion classes.
"""

from dataclasses import dataclass

import numpy as np

SIGN_TOL = 1e-12


def rotation(gamma: float) -> np.ndarray:
    """2x2 real rotation matrix by ``gamma``."""
    c, s = np.cos(gamma), np.sin(gamma)
    return np.array([[c, -s], [s, c]])


def _sgn(x: float) -> int:
    if x > SIGN_TOL:
        return 1
    if x < -SIGN_TOL:
        return -1
    return 0


@dataclass(frozen=True)
class CoinAngles:
    """Pair (alpha, beta) in radians; angles are reduced mod 2*pi."""

    alpha: float
    beta: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", float(self.alpha) % (2 * np.pi))
        object.__setattr__(self, "beta", float(self.beta) % (2 * np.pi))

    @property
    def r(self) -> float:
        return np.sin(self.alpha - self.beta)

    @property
    def s(self) -> float:
        return np.sin(self.alpha + self.beta)

    @property
    def sin2a_sin2b(self) -> float:
        return np.sin(2 * self.alpha) * np.sin(2 * self.beta)

    @property
    def sign_triple(self) -> tuple:
        """(eps1, eps2, eps3) with entries in {-1, 0, +1}."""
        return (_sgn(self.sin2a_sin2b), _sgn(self.s), _sgn(self.r))

    @property
    def h_alpha(self) -> np.ndarray:
        return rotation(self.alpha)

    @property
    def h_beta(self) -> np.ndarray:
        return rotation(self.beta)

    def check_identity(self) -> float:
        """Residual of s^2 - r^2 = sin 2a sin 2b (trig identity)."""
        return abs((self.s**2 - self.r**2) - self.sin2a_sin2b)
