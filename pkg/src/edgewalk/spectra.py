"""Closed-form dispersion data: bulk bands, edge branch, classification.

All quantities derive from the wavenumber-dependent recursion coefficient
eta(k).  Writing r = sin(alpha - beta) and s = sin(alpha + beta):

    rho(k)^2   = cos^2(alpha - beta) - sin 2a sin 2b cos^2 k
    theta_c(k) = arccos rho(k)                    (bulk band edge)
    bulk bands = [theta_c, pi - theta_c] u [pi + theta_c, 2 pi - theta_c]
    m0(k)      = |cos k| |s| / sqrt(1 - r^2 sin^2 k)
    theta0(k)  = arcsin(-r sin k), shifted by pi when cos k * s > 0
    v(k)       = sgn(rs) |r| |cos k| / sqrt(1 - r^2 sin^2 k)

The edge branch exists where the measure has a mass point, i.e. where
cos k * s != 0; it sits strictly inside the bulk gap and is monotone with
jumps only at k = pi/2 and 3 pi/2.
"""

from dataclasses import dataclass

import numpy as np

from .coins import CoinAngles
from .cmv import verblunsky, point_mass, decay_factor


@dataclass(frozen=True)
class DispersionSample:
    """Per-wavenumber spectral record; edge fields are None when absent."""

    k: float
    rho: float
    theta_c: float
    m0: float
    theta0: float | None
    v: float | None
    effective_mass: float | None   # inf at the velocity extrema
    decay: float | None            # eigenvector decay factor lambda(k)


def rho_of_k(k, angles: CoinAngles):
    val = np.cos(angles.alpha - angles.beta) ** 2 - angles.sin2a_sin2b * np.cos(k) ** 2
    return np.sqrt(np.clip(val, 0.0, 1.0))


def theta_c_of_k(k, angles: CoinAngles):
    return np.arccos(rho_of_k(k, angles))


def edge_exists(k: float, angles: CoinAngles) -> bool:
    """Mass-point condition Re eta(k) != 0."""
    return np.real(verblunsky(k, angles)) != 0.0


def theta0_of_k(k, angles: CoinAngles):
    """Edge quasi-energy, reduced to [0, 2 pi)."""
    base = np.arcsin(-np.sin(k) * angles.r)
    shift = np.where(np.cos(k) * angles.s > 0, np.pi - 2 * base, 0.0)
    return (base + shift) % (2 * np.pi)


def m0_of_k(k, angles: CoinAngles):
    rho = rho_of_k(k, angles)
    val = np.abs(np.cos(k) * angles.s) / np.sqrt(1 - angles.r**2 * np.sin(k) ** 2)
    return np.where(rho == 0.0, 1.0, val)


def group_velocity(k, angles: CoinAngles):
    """d theta0 / dk on the edge branch."""
    r, s = angles.r, angles.s
    if s == 0 or r == 0:
        # flat or absent branch: derivative is zero wherever defined
        return np.zeros_like(np.asarray(k, dtype=float)) if np.ndim(k) else 0.0
    return np.sign(r * s) * abs(r) * np.abs(np.cos(k)) / np.sqrt(1 - r**2 * np.sin(k) ** 2)


def effective_mass(k, angles: CoinAngles):
    """|1 / theta0''(k)|; infinite where the branch curvature vanishes."""
    r = angles.r
    if r == 0 or angles.s == 0:
        return np.inf if np.ndim(k) == 0 else np.full(np.shape(k), np.inf)
    cur = abs(r) * (1 - r**2) * np.abs(np.sin(k)) / (1 - r**2 * np.sin(k) ** 2) ** 1.5
    with np.errstate(divide="ignore"):
        return np.where(cur == 0.0, np.inf, 1.0 / cur)


def dispersion_sample(k: float, angles: CoinAngles) -> DispersionSample:
    rho = float(rho_of_k(k, angles))
    theta_c = float(np.arccos(rho))
    eta = verblunsky(k, angles)
    m0, theta0 = point_mass(eta)
    if theta0 is None:
        return DispersionSample(k, rho, theta_c, 0.0, None, None, None, None)
    return DispersionSample(
        k, rho, theta_c, m0, float(theta0_of_k(k, angles)),
        float(group_velocity(k, angles)), float(effective_mass(k, angles)),
        decay_factor(eta) if rho > 0 else 0.0)


def bulk_bands(angles: CoinAngles, kgrid) -> list:
    """Per-k band intervals [(lo1, hi1), (lo2, hi2)]."""
    out = []
    for k in np.atleast_1d(kgrid):
        tc = float(theta_c_of_k(k, angles))
        out.append(((tc, np.pi - tc), (np.pi + tc, 2 * np.pi - tc)))
    return out


def edge_band(angles: CoinAngles, kgrid):
    """(k, theta0(k)) points where the edge branch exists."""
    ks, thetas = [], []
    for k in np.atleast_1d(kgrid):
        if edge_exists(float(k), angles):
            ks.append(float(k))
            thetas.append(float(theta0_of_k(k, angles)))
    return np.array(ks), np.array(thetas)


def gap_analysis(angles: CoinAngles) -> dict:
    """Where (if anywhere) the bulk bands touch the quasi-energies 0, pi.

    theta_c(k) = 0 iff eta(k) = 0, which happens iff r = 0 (then at
    k = pi/2, 3 pi/2) or s = 0 (then at k = 0, pi).
    """
    r_zero = angles.sign_triple[2] == 0
    s_zero = angles.sign_triple[1] == 0
    if r_zero and s_zero:
        return {"gapless": True, "closing_k": "all"}
    if r_zero:
        return {"gapless": True, "closing_k": [np.pi / 2, 3 * np.pi / 2]}
    if s_zero:
        return {"gapless": True, "closing_k": [0.0, np.pi]}
    return {"gapless": False, "closing_k": []}


_CASE_BY_SIGNS = {
    (1, 1): 2, (1, -1): 3, (-1, 1): 4, (-1, -1): 5,
}


def classify(angles: CoinAngles) -> dict:
    """Sign triple plus the dispersion-class case number (1-6)."""
    eps = angles.sign_triple
    if eps[1] == 0:
        case = 1          # no edge branch at any k
    elif eps[2] == 0:
        case = 6          # flat edge branch
    else:
        case = _CASE_BY_SIGNS[(eps[1], eps[2])]
    return {"signs": eps, "case": case}
