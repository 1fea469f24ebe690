"""Wavenumber decomposition of the double-step walk onto half-line chains.

Translation invariance along the boundary lets the double-step operator be
block-diagonalised by a Fourier transform in y.  Each wavenumber k evolves
independently under a two-component half-line walk whose local coin is

    Hhat(k) = H_alpha diag(e^{-ik}, e^{ik}) H_beta  in SU(2),

split into the jump blocks P = |0><0|H (move left), Q = |1><1|H (move
right) and the boundary block S = |1><0|H acting at x = 0.

Because n double steps produce amplitudes that are trigonometric
polynomials of degree <= n in e^{ik}, a uniform k-grid with M >= 2n + 2
points inverts the transform exactly; boundary and column distributions
reconstructed this way agree with the direct lattice evolution to roundoff.
"""

from dataclasses import dataclass

import numpy as np

from .coins import CoinAngles, rotation


@dataclass(frozen=True)
class CoinMatrixK:
    """The SU(2) coin at wavenumber k together with its three factors."""

    k: float
    matrix: np.ndarray
    h_alpha: np.ndarray
    d_k: np.ndarray
    h_beta: np.ndarray


@dataclass
class HalfLineState:
    """Two components per site x in [0, x_max], at a fixed wavenumber."""

    k: float
    amps: np.ndarray            # (2, x_max + 1) complex
    steps: int = 0

    @property
    def x_max(self) -> int:
        return self.amps.shape[1] - 1

    def norm(self) -> float:
        return float(np.sqrt((np.abs(self.amps) ** 2).sum()))


def coin_matrix(k: float, angles: CoinAngles) -> CoinMatrixK:
    d = np.diag([np.exp(-1j * k), np.exp(1j * k)])
    ha, hb = rotation(angles.alpha), rotation(angles.beta)
    return CoinMatrixK(k, ha @ d @ hb, ha, d, hb)


def initial_halfline_state(k: float, x_max: int) -> HalfLineState:
    amps = np.zeros((2, x_max + 1), dtype=complex)
    amps[1, 0] = 1.0
    return HalfLineState(k, amps)


def halfline_step(state: HalfLineState, angles: CoinAngles) -> HalfLineState:
    """One double step at fixed k: P phi(x+1) + Q phi(x-1) (+ S phi(0))."""
    H = coin_matrix(state.k, angles).matrix
    a = state.amps
    if np.abs(a[:, -1]).max() != 0.0:
        # stepping would push amplitude past the truncated end
        raise ValueError("support reached the half-line window rim")
    out = np.zeros_like(a)
    out[0, :-1] = H[0, 0] * a[0, 1:] + H[0, 1] * a[1, 1:]
    out[1, 1:] = H[1, 0] * a[0, :-1] + H[1, 1] * a[1, :-1]
    out[1, 0] += H[0, 0] * a[0, 0] + H[0, 1] * a[1, 0]
    return HalfLineState(state.k, out, state.steps + 1)


def default_grid(n: int) -> int:
    """Smallest power of two >= 2n + 2."""
    m = 2
    while m < 2 * n + 2:
        m *= 2
    return m


def evolve_grid(angles: CoinAngles, n: int, gridsize: int | None = None,
                x_max: int | None = None) -> np.ndarray:
    """Evolve delta(x) [0,1] for n double steps on every grid wavenumber.

    Returns phi with shape (2, x_max + 1, M); phi[:, x, m] is the state at
    site x for k = 2 pi m / M.  Updates are plain slice arithmetic so the
    result is deterministic across runs and thread counts.
    """
    M = gridsize if gridsize is not None else default_grid(n)
    X = (x_max if x_max is not None else n + 1) + 1
    ks = 2 * np.pi * np.arange(M) / M
    H = np.array([coin_matrix(k, angles).matrix for k in ks])  # (M, 2, 2)
    h00, h01 = H[:, 0, 0], H[:, 0, 1]
    h10, h11 = H[:, 1, 0], H[:, 1, 1]
    phi = np.zeros((2, X, M), dtype=complex)
    phi[1, 0, :] = 1.0
    for _ in range(n):
        new = np.zeros_like(phi)
        new[0, :-1, :] = h00 * phi[0, 1:, :] + h01 * phi[1, 1:, :]
        new[1, 1:, :] = h10 * phi[0, :-1, :] + h11 * phi[1, :-1, :]
        new[1, 0, :] += h00 * phi[0, 0, :] + h01 * phi[1, 0, :]
        phi = new
    return phi


def _invert_k(values_k: np.ndarray) -> np.ndarray:
    """Coefficients a_j of sum_j a_j e^{ikj} sampled on the uniform grid."""
    M = values_k.shape[-1]
    return np.fft.fft(values_k, axis=-1) / M


def reconstruct_boundary(angles: CoinAngles, n: int, gridsize: int | None = None):
    """Boundary distribution nu_n(j) via the k-space route.

    Returns (j, nu, amplitudes) with j in [-M/2, M/2).  Exact (to roundoff)
    whenever the grid satisfies M >= 2n + 2; smaller grids alias.
    """
    M = gridsize if gridsize is not None else default_grid(n)
    if M < 2 * n + 1:
        raise ValueError(f"grid {M} aliases boundary amplitudes of degree {n}")
    phi = evolve_grid(angles, n, M)
    amps = _invert_k(phi[1, 0, :])
    j = np.arange(M)
    j[j > M // 2] -= M
    order = np.argsort(j)
    return j[order], np.abs(amps[order]) ** 2, amps[order]


def reconstruct_columns(angles: CoinAngles, n: int, ncols: int,
                        gridsize: int | None = None):
    """Distributions nu_n(c, m) for flat columns c < 2 * ncols.

    Flat column 2j holds the second component at site j (the boundary
    distribution when j = 0), flat column 2j + 1 the first component.
    Exact inversion of per-m amplitudes needs M >= 2n + 2.
    """
    M = gridsize if gridsize is not None else default_grid(n)
    phi = evolve_grid(angles, n, M, x_max=max(n + 1, ncols))
    j = np.arange(M)
    j[j > M // 2] -= M
    order = np.argsort(j)
    out = np.empty((2 * ncols, M))
    for c in range(ncols):
        out[2 * c] = np.abs(_invert_k(phi[1, c, :])[order]) ** 2
        out[2 * c + 1] = np.abs(_invert_k(phi[0, c, :])[order]) ** 2
    return j[order], out
