"""Five-diagonal unitary (CMV) form of the half-line walk and its measure.

For each wavenumber the half-line double-step walk is unitarily equivalent
to the CMV matrix with recursion coefficients (eta, 0, eta, 0, ...), where

    eta(k) = -cos k sin(alpha + beta) + i sin k sin(alpha - beta).

The equivalence is the phase-and-interleave map ``lambda_map``; it sends
site x to the flat pair (2x, 2x + 1).  The orthogonality measure on the
unit circle has an explicit absolutely continuous weight supported on
|cos theta| < rho = sqrt(1 - |eta|^2), plus a single mass point iff
Re(eta) != 0.  Return amplitudes are moments of that measure, and the mass
point carries a geometrically decaying eigenvector responsible for the
edge physics.
"""

from dataclasses import dataclass

import numpy as np

from .coins import CoinAngles
from .halfline import coin_matrix


def verblunsky(k: float, angles: CoinAngles) -> complex:
    """Recursion coefficient eta(k) = conj(<0|Hhat(k)|1>)."""
    return complex(-np.cos(k) * angles.s + 1j * np.sin(k) * angles.r)


def build_cmv(eta: complex, N: int) -> np.ndarray:
    """Truncated CMV matrix for the coefficient sequence (eta, 0, eta, 0, ...).

    Every column holds exactly two nonzero entries; interior columns are
    orthonormal, the trailing ones lose norm to the truncation.
    """
    eta = complex(eta)
    if abs(eta) > 1 + 1e-12:
        raise ValueError(f"|eta| = {abs(eta):.6f} exceeds 1")
    rho = np.sqrt(max(1 - abs(eta) ** 2, 0.0))
    C = np.zeros((N, N), dtype=complex)

    def put(i, j, v):
        if i < N and j < N:
            C[i, j] = v

    put(0, 0, np.conj(eta))
    put(0, 2, rho)
    put(1, 0, rho)
    put(1, 2, -eta)
    for j in range(1, N // 2 + 2):
        put(2 * j, 2 * j - 1, np.conj(eta))
        put(2 * j, 2 * j + 2, rho)
        put(2 * j + 1, 2 * j - 1, rho)
        put(2 * j + 1, 2 * j + 2, -eta)
    return C


def cmv_from_verblunsky(etas) -> np.ndarray:
    """General CMV matrix as the product of the two block factors.

    Independent of ``build_cmv``; used as an oracle and, with a final
    unimodular coefficient, to build unitary truncations whose eigenphases
    sample the measure (all of them land on the unit circle).
    """
    etas = np.asarray(etas, dtype=complex)
    N = len(etas)

    def theta(eta):
        rho = np.sqrt(max(1 - abs(eta) ** 2, 0.0))
        return np.array([[np.conj(eta), rho], [rho, -eta]])

    L = np.zeros((N, N), dtype=complex)
    i = 0
    while i < N:
        if i + 1 < N:
            L[i:i + 2, i:i + 2] = theta(etas[i])
        else:
            L[i, i] = np.conj(etas[i])
        i += 2
    Mfac = np.zeros((N, N), dtype=complex)
    Mfac[0, 0] = 1.0
    i = 1
    while i < N:
        if i + 1 < N:
            Mfac[i:i + 2, i:i + 2] = theta(etas[i])
        else:
            Mfac[i, i] = np.conj(etas[i])
        i += 2
    return L @ Mfac


def unitary_truncation(eta: complex, N: int) -> np.ndarray:
    """N x N unitary CMV truncation: final coefficient forced to modulus 1."""
    etas = [eta if j % 2 == 0 else 0.0 for j in range(N)]
    etas[-1] = 1.0
    return cmv_from_verblunsky(etas)


# -- interleave / phase map ----------------------------------------------------

def _site_phases(H: np.ndarray, nsites: int):
    """Phases omega(2j), omega(2j+1); arg(0) is taken as 0."""
    a = H[0, 0]
    d = H[1, 1]
    arg_a = float(np.angle(a)) if abs(a) > 0 else 0.0
    arg_d = float(np.angle(d)) if abs(d) > 0 else 0.0
    j = np.arange(nsites)
    return -j * arg_d, (j + 1) * arg_a


def lambda_map(amps: np.ndarray, k: float, angles: CoinAngles) -> np.ndarray:
    """Interleave a half-line spinor state into the flat CMV basis.

    Component 1 of site j lands at flat index 2j with phase e^{i w(2j)},
    component 0 at 2j + 1 with phase e^{i w(2j+1)}; an isometry.
    """
    H = coin_matrix(k, angles).matrix
    X = amps.shape[1]
    w_even, w_odd = _site_phases(H, X)
    f = np.zeros(2 * X, dtype=complex)
    f[0::2] = np.exp(1j * w_even) * amps[1]
    f[1::2] = np.exp(1j * w_odd) * amps[0]
    return f


def lambda_inverse(f: np.ndarray, k: float, angles: CoinAngles) -> np.ndarray:
    H = coin_matrix(k, angles).matrix
    X = len(f) // 2
    w_even, w_odd = _site_phases(H, X)
    amps = np.zeros((2, X), dtype=complex)
    amps[1] = np.exp(-1j * w_even) * f[0::2]
    amps[0] = np.exp(-1j * w_odd) * f[1::2]
    return amps


def cmv_evolve(amps: np.ndarray, k: float, angles: CoinAngles, n: int) -> np.ndarray:
    """n double steps routed through the transposed CMV matrix."""
    X = amps.shape[1]
    N = 2 * (X + n + 1)
    C = build_cmv(verblunsky(k, angles), N)
    f = np.zeros(N, dtype=complex)
    f[: 2 * X] = lambda_map(amps, k, angles)
    CT = C.T.copy()
    for _ in range(n):
        f = CT @ f
    return lambda_inverse(f[: 2 * X], k, angles)


# -- spectral measure ----------------------------------------------------------

@dataclass
class SpectralMeasure:
    """d mu = w(theta) d theta / 2 pi + m0 delta(theta - theta0)."""

    eta: complex
    rho: float
    theta_c: float              # band edge, bands are |cos theta| <= rho
    m0: float                   # 0 when Re(eta) = 0
    theta0: float | None        # present iff m0 > 0

    def weight(self, theta):
        """Absolutely continuous density w(theta) (0 outside the bands)."""
        theta = np.asarray(theta, dtype=float)
        c = np.cos(theta)
        inside = np.abs(c) < self.rho
        out = np.zeros_like(theta)
        num = np.sqrt(np.maximum(self.rho**2 - c**2, 0.0))
        den = np.abs(np.sin(theta) + np.imag(self.eta))
        np.divide(num, den, out=out, where=inside & (den > 0))
        out[inside & (den == 0)] = np.inf
        return out

    def band_quadrature(self, nodes: int = 400):
        """Nodes/weights integrating F against w(theta) d theta / 2 pi.

        Substituting cos theta = rho u turns each band integral into a
        Chebyshev (second kind) form that absorbs the square-root edge
        vanishing of w; nodes avoid the endpoints.
        """
        i = np.arange(1, nodes + 1)
        u = np.cos(i * np.pi / (nodes + 1))
        wu = np.pi / (nodes + 1) * np.sin(i * np.pi / (nodes + 1)) ** 2
        root = np.sqrt(1 - (self.rho * u) ** 2)
        thetas, weights = [], []
        for sgn in (+1, -1):   # upper band (sin > 0), lower band (sin < 0)
            theta = np.arccos(self.rho * u) if sgn > 0 else 2 * np.pi - np.arccos(self.rho * u)
            den = np.abs(sgn * root + np.imag(self.eta))
            weights.append(self.rho**2 / (2 * np.pi) * wu / (den * root))
            thetas.append(theta)
        return np.concatenate(thetas), np.concatenate(weights)

    def total_mass(self, nodes: int = 2000) -> float:
        th, wq = self.band_quadrature(nodes)
        return float(wq.sum() + self.m0)


def point_mass(eta: complex):
    """(m0, theta0) of the measure; no mass point when Re(eta) = 0."""
    re, im = np.real(eta), np.imag(eta)
    if re == 0.0:
        return 0.0, None
    m0 = abs(re) / np.sqrt(1 - im**2)
    theta0 = np.arcsin(-im) if re > 0 else np.pi - np.arcsin(-im)
    return float(m0), float(theta0 % (2 * np.pi))


def spectral_measure(eta: complex) -> SpectralMeasure:
    eta = complex(eta)
    if abs(eta) > 1 + 1e-12:
        raise ValueError("|eta| must be <= 1")
    if abs(eta) >= 1 - 1e-15:
        # degenerate truncation of the bands: a single unit mass
        if eta.real != 0.0:
            _, theta0 = point_mass(eta)
        else:
            theta0 = float(np.arcsin(-eta.imag) % (2 * np.pi))
        return SpectralMeasure(eta, 0.0, np.pi / 2, 1.0, theta0)
    rho = float(np.sqrt(1 - abs(eta) ** 2))
    m0, theta0 = point_mass(eta)
    return SpectralMeasure(eta, rho, float(np.arccos(rho)), m0, theta0)


def return_amplitude(angles: CoinAngles, k: float, n: int,
                     nodes: int | None = None) -> complex:
    """Moment integral: amplitude of return to the origin loop after n
    double steps, e^{i n theta0} m0 plus the band contribution."""
    mu = spectral_measure(verblunsky(k, angles))
    if mu.rho == 0.0:
        return np.exp(1j * n * mu.theta0) * mu.m0
    th, wq = mu.band_quadrature(nodes if nodes is not None else max(400, 8 * n))
    val = complex((np.exp(1j * n * th) * wq).sum())
    if mu.m0 > 0:
        val += mu.m0 * np.exp(1j * n * mu.theta0)
    return val


def decay_factor(eta: complex) -> float:
    """Geometric rate of the mass-point eigenvector (|value| < 1)."""
    re, im = np.real(eta), np.imag(eta)
    if re == 0.0:
        raise ValueError("no point spectrum when Re(eta) = 0")
    rho = np.sqrt(1 - abs(eta) ** 2)
    if rho == 0.0:
        return 0.0
    return float(np.sign(re) / rho * (np.sqrt(1 - im**2) - abs(re)))


def edge_eigenvector(eta: complex, N: int):
    """(lam, theta0, v) with (C^T) v = e^{i theta0} v up to the truncation tail.

    The components interlace two geometric strands: v[2j] = lam^j and
    v[2j + 1] = lam^(j + 1).  The residual of the truncated eigen-equation
    decays like |lam|^(N/2).
    """
    lam = decay_factor(eta)
    _, theta0 = point_mass(eta)
    j = np.arange((N + 1) // 2)
    v = np.zeros(N, dtype=complex)
    v[0::2] = lam ** j[: len(v[0::2])]
    v[1::2] = lam ** (j[: len(v[1::2])] + 1)
    return lam, theta0, v


def eigen_residual(eta: complex, N: int) -> float:
    """Truncated eigen-equation residual for the closed-form eigenvector."""
    lam, theta0, v = edge_eigenvector(eta, N)
    C = build_cmv(eta, N)
    r = C.T @ v - np.exp(1j * theta0) * v
    # the last two slots feel the truncation directly; exclude them
    return float(np.linalg.norm(r[: N - 2]) / np.linalg.norm(v))
