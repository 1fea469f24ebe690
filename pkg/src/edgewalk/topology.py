"""Bloch operator of the boundary-free walk, symmetries, and invariants.

On the full plane the double-step operator diagonalises into 2x2 blocks

    G0(kx, ky) = D(kx) H_alpha D(ky) H_beta,      D(k) = diag(e^{-ik}, e^{ik}),

which always satisfies particle-hole symmetry with complex conjugation.
Chiral symmetry appears only on the two special parameter families

    class 6 : beta = alpha + n pi   (chiral op sigma_1 in a shifted frame)
    class 1 : beta = -alpha + n pi  (chiral op sigma_2 in a shifted frame)

on which an integer pair (nu_0, nu_pi) is defined per transverse
wavenumber by winding numbers of the Bloch vector.  Two windings enter:
nu' from the frame with kx split symmetrically (identically zero, one
Pauli component is constant) and nu'' from the swapped frame, equal to
+-1 by an ellipse-orientation argument.  The pair is

    (nu_0, nu_pi) = ((nu' + nu'' - 1) / 2, (nu' - nu'' - 1) / 2).

An overall factor (-1)^n shifts quasi-energy by pi and therefore swaps
the two gap labels; it is folded into nu''.

The scalar invariant of the gapped phases is the sign product
nu_2d = eps2 eps3, undefined exactly on the gapless lines eps2 eps3 = 0.
"""

import numpy as np

from .coins import CoinAngles, rotation
from .spectra import gap_analysis

SIGMA = [np.eye(2, dtype=complex),
         np.array([[0, 1], [1, 0]], dtype=complex),
         np.array([[0, -1j], [1j, 0]], dtype=complex),
         np.array([[1, 0], [0, -1]], dtype=complex)]


def dk(k: float) -> np.ndarray:
    return np.diag([np.exp(-1j * k), np.exp(1j * k)])


def bloch(kx: float, ky: float, angles: CoinAngles) -> np.ndarray:
    """G0(kx, ky) = D(kx) H_alpha D(ky) H_beta."""
    return dk(kx) @ rotation(angles.alpha) @ dk(ky) @ rotation(angles.beta)


def pauli_coefficients(U: np.ndarray) -> np.ndarray:
    """Real vector (d0, d1, d2, d3) of U = d0 + i sum_j d_j sigma_j."""
    d0 = (U[0, 0] + U[1, 1]) / 2
    d1 = (U[0, 1] + U[1, 0]) / (2j)
    d2 = (U[0, 1] - U[1, 0]) / 2
    d3 = (U[0, 0] - U[1, 1]) / (2j)
    vec = np.array([d0, d1, d2, d3])
    if np.abs(vec.imag).max() > 1e-9:
        raise ValueError("operator is not in the SU(2) cover (d0 + i d.sigma)")
    return vec.real


# -- symmetry checks -----------------------------------------------------------

def frame_class6(kx: float, k: float, alpha: float) -> np.ndarray:
    """Symmetric-frame operator for beta = alpha (+ n pi), ky fixed to k."""
    return dk(kx / 2) @ rotation(alpha) @ dk(k) @ rotation(alpha) @ dk(kx / 2)


def frame_class1(kx: float, k: float, alpha: float) -> np.ndarray:
    """Symmetric-frame operator for beta = -alpha (+ n pi)."""
    return dk(kx / 2) @ rotation(alpha) @ dk(k) @ rotation(-alpha) @ dk(kx / 2)


def check_symmetries(angles: CoinAngles, samples: int = 24,
                     tol: float = 1e-12, seed: int = 0) -> dict:
    """Report which of the three symmetries hold at random wavenumbers.

    Particle-hole (conjugation) always holds.  Time reversal is tested
    with the conjugation operator as well; chiral symmetry is tested in
    the appropriate shifted frame when the parameters sit on one of the
    two special families, otherwise on the bare Bloch operator with both
    candidate operators.
    """
    rng = np.random.default_rng(seed)
    kxs, kys = rng.uniform(0, 2 * np.pi, (2, samples))
    phs = trs = True
    for kx, ky in zip(kxs, kys):
        G = bloch(kx, ky, angles)
        Gm = bloch(-kx, -ky, angles)
        phs &= np.abs(np.conj(G) - Gm).max() < tol
        trs &= np.abs(np.conj(G) - np.linalg.inv(Gm)).max() < tol
    sum_mod = (angles.alpha + angles.beta) % np.pi
    diff_mod = (angles.alpha - angles.beta) % np.pi
    chiral = False
    if min(diff_mod, np.pi - diff_mod) < 1e-12:
        chiral = all(
            np.abs(SIGMA[1] @ frame_class6(kx, ky, angles.alpha) @ SIGMA[1]
                   - np.linalg.inv(frame_class6(kx, ky, angles.alpha))).max() < tol
            for kx, ky in zip(kxs, kys))
    elif min(sum_mod, np.pi - sum_mod) < 1e-12:
        chiral = all(
            np.abs(SIGMA[2] @ frame_class1(kx, ky, angles.alpha) @ SIGMA[2]
                   - np.linalg.inv(frame_class1(kx, ky, angles.alpha))).max() < tol
            for kx, ky in zip(kxs, kys))
    else:
        chiral = all(
            any(np.abs(Y @ bloch(kx, ky, angles) @ np.linalg.inv(Y)
                       - np.linalg.inv(bloch(kx, ky, angles))).max() < tol
                for Y in (SIGMA[1], SIGMA[2], SIGMA[3]))
            for kx, ky in zip(kxs, kys))
    return {"PHS": bool(phs), "TRS": bool(trs), "chiral": bool(chiral)}


# -- invariants ----------------------------------------------------------------

def nu2d(angles: CoinAngles):
    """Sign-product invariant eps2 eps3; None on the gapless lines."""
    if gap_analysis(angles)["gapless"]:
        return None
    e2, e3 = angles.sign_triple[1], angles.sign_triple[2]
    return int(e2 * e3)


def phase_winding(values: np.ndarray) -> float:
    """Total phase accumulated by a closed complex trajectory, in turns.

    Principal-branch increments are summed (never zero-crossing counts);
    the trajectory must stay away from the origin.
    """
    ph = np.angle(values)
    d = np.diff(np.concatenate([ph, ph[:1]]))
    d = (d + np.pi) % (2 * np.pi) - np.pi
    return float(d.sum() / (2 * np.pi))


def _winding_int(values: np.ndarray, residual_tol: float = 0.05) -> int:
    w = phase_winding(values)
    wi = int(np.rint(w))
    if abs(w - wi) > residual_tol:
        raise ValueError(f"winding {w} is not integral")
    return wi


GAP_TOL = 1e-8


def winding_numbers(alpha: float, n: int, k: float, family: str,
                    gridsize: int = 512) -> dict:
    """Numeric windings and the per-k invariant pair for one chiral family.

    ``family`` is "class6" (beta = alpha + n pi) or "class1"
    (beta = -alpha + n pi).  Returns nu' (frame with split kx), nu''
    (swapped frame, including the quasi-energy shift from n), and
    (nu_0, nu_pi); all None when the gating quantity vanishes or the
    effective 1d spectrum is gapless.
    """
    if family not in ("class6", "class1"):
        raise ValueError("family must be 'class6' or 'class1'")
    kxs = np.linspace(0, 2 * np.pi, gridsize, endpoint=False)
    frame = frame_class6 if family == "class6" else frame_class1
    d_prime = np.array([pauli_coefficients(frame(kx, k, alpha)) for kx in kxs])
    d_second = np.array([pauli_coefficients(frame(k, kx, alpha)) for kx in kxs])
    gate = (np.cos(k) if family == "class6" else np.sin(k)) * np.sin(2 * alpha)
    gapped = (1 - d_second[:, 0] ** 2).min() > GAP_TOL and \
             (1 - d_prime[:, 0] ** 2).min() > GAP_TOL
    if abs(gate) < 1e-12 or not gapped:
        return {"nu_prime": None, "nu_second": None, "pair": None}
    if family == "class6":
        nu_p = _winding_int(d_prime[:, 2] + 1j * d_prime[:, 3])
        nu_s = _winding_int(d_second[:, 2] + 1j * d_second[:, 3])
    else:
        nu_p = _winding_int(d_prime[:, 1] + 1j * d_prime[:, 3])
        nu_s = _winding_int(d_second[:, 1] + 1j * d_second[:, 3])
    nu_s *= (-1) ** (n % 2)   # pi shift of quasi-energy swaps the gap labels
    pair = ((nu_p + nu_s - 1) // 2, (nu_p - nu_s - 1) // 2)
    return {"nu_prime": nu_p, "nu_second": nu_s, "pair": pair}


def toponum_closed_form(alpha: float, n: int, k: float, family: str):
    """Tabulated (nu_0, nu_pi); None where undefined."""
    if family == "class6":
        gate = (-1) ** (n % 2) * np.cos(k) * np.sin(2 * alpha)
        if abs(gate) < 1e-12:
            return None
        return (0, -1) if gate > 0 else (-1, 0)
    gate = (-1) ** (n % 2) * np.sin(k) * np.sin(2 * alpha)
    if abs(gate) < 1e-12:
        return None
    return (-1, 0) if gate > 0 else (0, -1)


# -- boundary compatibility of the chiral operators ----------------------------

def _strip_shift(field: np.ndarray, boundary_phase: complex = 1.0) -> np.ndarray:
    """Moving shift on a strip, components (L, R, D, U), periodic in y.

    Left-movers at x = 0 turn into right-movers (times ``boundary_phase``).
    Amplitude leaving through the right rim is dropped, so verification
    must stay two columns away from it.
    """
    out = np.zeros_like(field)
    out[0, :-1, :] = field[0, 1:, :]
    out[1, 1:, :] = field[1, :-1, :]
    out[1, 0, :] += boundary_phase * field[0, 0, :]
    out[2] = np.roll(field[2], -1, axis=1)
    out[3] = np.roll(field[3], +1, axis=1)
    return out


def _strip_chiral(field: np.ndarray, which: str) -> np.ndarray:
    """Per-vertex chiral operator: sigma_1 or sigma_2 on (L,R) and (D,U)."""
    out = np.empty_like(field)
    if which == "sigma1":
        out[0], out[1] = field[1].copy(), field[0].copy()
        out[2], out[3] = field[3].copy(), field[2].copy()
    else:
        out[0], out[1] = -1j * field[1], 1j * field[0]
        out[2], out[3] = -1j * field[3], 1j * field[2]
    return out


def boundary_chiral_check(shift_variant: str = "standard",
                          nx: int = 7, ny: int = 6) -> dict:
    """Whether Y S Y S = identity for both chiral operators on the strip.

    ``shift_variant``: "standard" rewires L -> R at the boundary with unit
    weight; "phase-i" multiplies that move by i.  Returns per-operator
    booleans plus the boundary block of the composite for each operator
    (a 4 x 4 matrix in the (L, R, D, U) basis).
    """
    phase = 1.0 if shift_variant == "standard" else 1j
    if shift_variant not in ("standard", "phase-i"):
        raise ValueError("shift_variant must be 'standard' or 'phase-i'")

    def composite_block(x: int, which: str):
        """4x4 block at the probe vertex plus any amplitude that escaped it."""
        blk = np.zeros((4, 4), dtype=complex)
        leak = 0.0
        for c in range(4):
            f = np.zeros((4, nx, ny), dtype=complex)
            f[c, x, ny // 2] = 1.0
            g = _strip_chiral(_strip_shift(_strip_chiral(
                _strip_shift(f, phase), which), phase), which)
            blk[:, c] = g[:, x, ny // 2]
            g[:, x, ny // 2] = 0.0
            leak = max(leak, float(np.abs(g).max()))
        return blk, leak

    report = {}
    eye = np.eye(4)
    for name, which in (("Yhat", "sigma1"), ("Ycheck", "sigma2")):
        interior_ok = True
        for x in range(1, nx - 2):
            blk, leak = composite_block(x, which)
            interior_ok &= np.abs(blk - eye).max() < 1e-14 and leak < 1e-14
        bblock, bleak = composite_block(0, which)
        boundary_ok = np.abs(bblock - eye).max() < 1e-14 and bleak < 1e-14
        report[f"{name}_ok"] = bool(interior_ok and boundary_ok)
        report[f"{name}_boundary_block"] = bblock
        report[f"{name}_interior_ok"] = bool(interior_ok)
    return report
