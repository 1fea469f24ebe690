"""Exact arc-based evolution of the walk on the cut half-plane.

Vertices live on Z_+ x Z; the column x = 0 is the boundary, where the
horizontal edges toward x = -1 have been rewired into self-loops.  A state
assigns a complex amplitude to every incoming arc (x, y; d), with the
direction label d meaning

    d = 0 : arrived from the right      (origin at (x+1, y))
    d = 1 : arrived from the left, or the self-loop when x = 0
    d = 2 : arrived from above          (origin at (x, y+1))
    d = 3 : arrived from below          (origin at (x, y-1))

One step is U = S C: a per-vertex 4x4 coin that swaps horizontal and
vertical sectors through the rotations ``h_beta`` / ``h_alpha``, followed
by the arc-reversal shift.  Self-loops are their own reversals.

Amplitudes are stored densely as ``amps[d, x, y_max + y]``.  All update
kernels are elementwise slice arithmetic (no reductions), so results are
bitwise reproducible regardless of BLAS threading.  A light-cone radius is
tracked so that each step only touches the reachable sub-window; entries
outside the cone are exactly zero, which keeps the optimisation bit-exact.
"""

from dataclasses import dataclass, field

import numpy as np

from .coins import CoinAngles


class WindowError(ValueError):
    """Raised when an operation would need amplitude outside the window."""


@dataclass
class ArcField:
    """Amplitudes on arcs of the window x in [0, x_max], |y| <= y_max."""

    amps: np.ndarray            # (4, x_max + 1, 2 * y_max + 1) complex
    y_max: int
    steps: int = 0              # single-step count since the initial state
    reach: int = 0              # support lies within |x| + |y| <= reach

    @property
    def x_max(self) -> int:
        return self.amps.shape[1] - 1

    def norm(self) -> float:
        return float(np.sqrt((np.abs(self.amps) ** 2).sum()))

    def copy(self) -> "ArcField":
        return ArcField(self.amps.copy(), self.y_max, self.steps, self.reach)

    def _box(self, pad: int = 0):
        """Slices covering the current light cone, optionally padded."""
        r = min(self.reach + pad, max(self.x_max, self.y_max))
        xs = slice(0, min(r, self.x_max) + 1)
        ys = slice(max(self.y_max - r, 0), min(self.y_max + r, 2 * self.y_max) + 1)
        return xs, ys


@dataclass
class SpinorField:
    """Two-component vertex field, the image of a horizontal-arc state."""

    amps: np.ndarray            # (2, x_max + 1, 2 * y_max + 1) complex
    y_max: int
    double_steps: int = 0
    reach: int = 0

    @property
    def x_max(self) -> int:
        return self.amps.shape[1] - 1

    def norm(self) -> float:
        return float(np.sqrt((np.abs(self.amps) ** 2).sum()))


def initial_state(x_max: int, y_max: int) -> ArcField:
    """Unit amplitude on the self-loop at the origin."""
    if x_max < 0 or y_max < 0:
        raise WindowError("window must contain the origin")
    amps = np.zeros((4, x_max + 1, 2 * y_max + 1), dtype=complex)
    amps[1, 0, y_max] = 1.0
    return ArcField(amps, y_max)


def coin_apply(field: ArcField, angles: CoinAngles) -> ArcField:
    """Per-vertex coin: horizontal components feed vertical ones and back."""
    ca, sa = np.cos(angles.alpha), np.sin(angles.alpha)
    cb, sb = np.cos(angles.beta), np.sin(angles.beta)
    out = ArcField(np.zeros_like(field.amps), field.y_max, field.steps, field.reach)
    xs, ys = field._box()
    a = field.amps[:, xs, ys]
    o = out.amps[:, xs, ys]
    o[0] = sa * a[2] + ca * a[3]
    o[1] = ca * a[2] - sa * a[3]
    o[2] = sb * a[0] + cb * a[1]
    o[3] = cb * a[0] - sb * a[1]
    return out


def shift_apply(field: ArcField) -> ArcField:
    """Arc reversal: amplitude at a becomes the prior amplitude at a-bar."""
    if field.reach + 1 > field.x_max or field.reach + 1 > field.y_max:
        raise WindowError(
            f"shift would cross the window rim (reach {field.reach}, "
            f"window {field.x_max} x {field.y_max})")
    out = ArcField(np.zeros_like(field.amps), field.y_max, field.steps, field.reach + 1)
    xs, ys = field._box(pad=1)
    a = field.amps[:, xs, ys]
    o = out.amps[:, xs, ys]
    o[0, :-1, :] = a[1, 1:, :]       # (x;0) <- (x+1;1)
    o[1, 1:, :] = a[0, :-1, :]       # (x;1) <- (x-1;0) away from the boundary
    o[1, 0, :] = a[1, 0, :]          # self-loops are fixed
    o[2, :, :-1] = a[3, :, 1:]       # (x,y;2) <- (x,y+1;3)
    o[3, :, 1:] = a[2, :, :-1]       # (x,y;3) <- (x,y-1;2)
    return out


def step(field: ArcField, angles: CoinAngles) -> ArcField:
    """One application of U = S C."""
    out = shift_apply(coin_apply(field, angles))
    out.steps = field.steps + 1
    return out


def evolve(field: ArcField, angles: CoinAngles, n: int) -> ArcField:
    """U^n applied to ``field``; the window must hold the grown light cone."""
    if field.reach + n > field.x_max or field.reach + n > field.y_max:
        raise WindowError(f"window too small for {n} more steps")
    out = field
    for _ in range(n):
        out = step(out, angles)
    return out


def evolve_double(field: ArcField, angles: CoinAngles, n: int) -> ArcField:
    """U^(2n): the natural clock for boundary measurements."""
    return evolve(field, angles, 2 * n)


# -- vertex two-component picture (horizontal sector only) -------------------

def to_spinor(field: ArcField) -> SpinorField:
    """Restrict a horizontal-arc state to its two nonzero components."""
    if field.steps % 2 != 0:
        raise ValueError("vertical-sector support: field is at an odd step")
    vert = np.abs(field.amps[2:]).max()
    if vert != 0.0:
        raise ValueError(f"field has vertical amplitude {vert:.3e}")
    return SpinorField(field.amps[:2].copy(), field.y_max,
                       field.steps // 2, field.reach)


def from_spinor(spinor: SpinorField) -> ArcField:
    out = np.zeros((4,) + spinor.amps.shape[1:], dtype=complex)
    out[:2] = spinor.amps
    return ArcField(out, spinor.y_max, 2 * spinor.double_steps, spinor.reach)


def _pqs_blocks(gamma: float):
    """P = |0><0|H, Q = |1><1|H, S = |1><0|H for the rotation H(gamma)."""
    c, s = np.cos(gamma), np.sin(gamma)
    H = np.array([[c, -s], [s, c]])
    P = np.array([[c, -s], [0, 0]])
    Q = np.array([[0, 0], [s, c]])
    S = np.array([[0, 0], [c, -s]])
    return P, Q, S, H


def gamma_step(spinor: SpinorField, angles: CoinAngles) -> SpinorField:
    """One double-step of the walk in the two-component vertex picture.

    Interior sites combine the four diagonal neighbours with weights
    Q_a Q_b, Q_a P_b, P_a Q_b, P_a P_b; on the boundary column the two
    x-1 terms are replaced by self-loop terms S_a Q_b, S_a P_b acting on
    the column itself.
    """
    if spinor.reach + 2 > spinor.x_max or spinor.reach + 2 > spinor.y_max:
        raise WindowError("window too small for a double step")
    Pa, Qa, Sa, _ = _pqs_blocks(angles.alpha)
    Pb, Qb, _, _ = _pqs_blocks(angles.beta)
    w = {"QQ": Qa @ Qb, "QP": Qa @ Pb, "PQ": Pa @ Qb, "PP": Pa @ Pb,
         "SQ": Sa @ Qb, "SP": Sa @ Pb}
    a = spinor.amps
    out = np.zeros_like(a)

    def add(mat, dx, dy):
        # out(x, y) += mat @ a(x + dx, y + dy), windowed
        src_x = slice(dx, None) if dx >= 0 else slice(0, dx)
        dst_x = slice(0, -dx if dx > 0 else None) if dx >= 0 else slice(-dx, None)
        src_y = slice(dy, None) if dy >= 0 else slice(0, dy)
        dst_y = slice(0, -dy if dy > 0 else None) if dy >= 0 else slice(-dy, None)
        blk = a[:, src_x, src_y]
        out[0, dst_x, dst_y] += mat[0, 0] * blk[0] + mat[0, 1] * blk[1]
        out[1, dst_x, dst_y] += mat[1, 0] * blk[0] + mat[1, 1] * blk[1]

    add(w["QQ"], -1, -1)
    add(w["QP"], -1, +1)
    add(w["PQ"], +1, -1)
    add(w["PP"], +1, +1)
    # boundary column: the x-1 pulls above never reached x = 0; add the
    # self-loop terms S_a Q_b, S_a P_b acting on the column itself

    def shifted(arr2, dy):
        res = np.zeros_like(arr2)
        if dy > 0:
            res[:, :-dy] = arr2[:, dy:]
        else:
            res[:, -dy:] = arr2[:, :dy]
        return res

    row = a[:, 0, :]
    for mat, dy in ((w["SQ"], -1), (w["SP"], +1)):
        blk = shifted(row, dy)
        out[0, 0, :] += mat[0, 0] * blk[0] + mat[0, 1] * blk[1]
        out[1, 0, :] += mat[1, 0] * blk[0] + mat[1, 1] * blk[1]
    return SpinorField(out, spinor.y_max, spinor.double_steps + 1, spinor.reach + 2)


# -- measurements -------------------------------------------------------------

def boundary_distribution(field: ArcField):
    """nu(j) = |amplitude on the self-loop at (0, j)|^2.

    Returns (j, nu) with j running over the window.  Requires an even
    number of single steps; at odd steps the horizontal arcs are empty.
    """
    if field.steps % 2 != 0:
        raise ValueError("boundary distribution is defined at even steps only")
    j = np.arange(-field.y_max, field.y_max + 1)
    nu = np.abs(field.amps[1, 0, :]) ** 2
    return j, nu


def full_distribution(field: ArcField):
    """nu(c, m) over horizontal arcs: flat column index c, row m.

    Column 2j collects d = 1 arcs of lattice column j, column 2j + 1 the
    d = 0 arcs, so c counts half-columns outward from the boundary.
    """
    if field.steps % 2 != 0:
        raise ValueError("full distribution is defined at even steps only")
    nx = field.x_max + 1
    out = np.empty((2 * nx, 2 * field.y_max + 1))
    out[0::2] = np.abs(field.amps[1]) ** 2
    out[1::2] = np.abs(field.amps[0]) ** 2
    return np.arange(-field.y_max, field.y_max + 1), out


# -- moving-shift representation ---------------------------------------------
#
# The storage amps[d, x, y] doubles as the four-component vertex picture
# with the moving labels (L, R, D, U) identified with d = (0, 1, 2, 3).
# In that basis the walk factorises either as S' C' (arc reversal, the
# operators above) or as S'' C'' with the familiar direction-preserving
# shift; the two factorisations give the same one-step operator.

def coin_moving(field: ArcField, angles: CoinAngles) -> ArcField:
    """C'' = (sigma_1 + sigma_1) C': blocks [[0, H_a], [H_b, 0]]."""
    ca, sa = np.cos(angles.alpha), np.sin(angles.alpha)
    cb, sb = np.cos(angles.beta), np.sin(angles.beta)
    out = ArcField(np.zeros_like(field.amps), field.y_max, field.steps, field.reach)
    xs, ys = field._box()
    a = field.amps[:, xs, ys]
    o = out.amps[:, xs, ys]
    o[0] = ca * a[2] - sa * a[3]
    o[1] = sa * a[2] + ca * a[3]
    o[2] = cb * a[0] - sb * a[1]
    o[3] = sb * a[0] + cb * a[1]
    return out


def shift_moving(field: ArcField, boundary_phase: complex = 1.0) -> ArcField:
    """Direction-preserving shift; left-movers on the boundary turn right.

    ``boundary_phase`` multiplies the rewired L -> R move at x = 0 (the
    value 1j gives the variant with an extra quarter phase on the loop).
    """
    if field.reach + 1 > field.x_max or field.reach + 1 > field.y_max:
        raise WindowError("shift would cross the window rim")
    out = ArcField(np.zeros_like(field.amps), field.y_max, field.steps, field.reach + 1)
    xs, ys = field._box(pad=1)
    a = field.amps[:, xs, ys]
    o = out.amps[:, xs, ys]
    o[0, :-1, :] = a[0, 1:, :]                     # L moves toward smaller x
    o[1, 1:, :] = a[1, :-1, :]                     # R moves toward larger x
    o[1, 0, :] += boundary_phase * a[0, 0, :]      # rewired boundary move
    o[2, :, :-1] = a[2, :, 1:]                     # D moves toward smaller y
    o[3, :, 1:] = a[3, :, :-1]                     # U moves toward larger y
    return out


def step_moving(field: ArcField, angles: CoinAngles) -> ArcField:
    """One step via the moving-shift factorisation S'' C''."""
    out = shift_moving(coin_moving(field, angles))
    out.steps = field.steps + 1
    return out
