"""Zeros of the self-inversive R_n on the unit circle, located in the angle variable.

For a self-inversive R_n of degree n the function

    f_n(theta) = exp(-i n theta / 2) R_n(exp(i theta))

is real.  f_n(0) = R_n(1) > 0 and f_n(2 pi) = (-1)^n R_n(1), and the zeros of
consecutive levels interlace, so the zeros of level n - 1 together with the
walls 0 and 2 pi bracket the n zeros of level n.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgument, LemmaViolation, NotSelfInversive, ZeroIsolationError
from .polycore import ComplexPoly, derivative
from .recurrence import RecurrencePair

__all__ = [
    "ZeroSet",
    "phase_function",
    "phase_derivative",
    "phase_by_recurrence",
    "find_zeros",
    "zero_levels",
    "interlaces",
    "circle_values",
    "q_circle_values",
    "wronskian_check",
    "dg_transform",
]

TWO_PI = 2.0 * np.pi
BISECT_TOL = 1e-13
BISECT_MAX = 200
NEWTON_MAX = 5


@dataclass(frozen=True)
class ZeroSet:
    level: int
    angles: np.ndarray
    residuals: np.ndarray

    @property
    def nodes(self) -> np.ndarray:
        return np.exp(1j * self.angles)

    def __len__(self):
        return self.angles.size


def _scale(p: ComplexPoly) -> float:
    return float(np.sum(np.abs(p.coeffs)))


def phase_function(p: ComplexPoly, n: int, theta, imag_tol: float = 1e-10):
    """Real value exp(-i n theta/2) p(exp(i theta)); raises if p is not self-inversive."""
    th = np.asarray(theta, dtype=float)
    z = np.exp(1j * th)
    val = np.exp(-0.5j * n * th) * p(z)
    bad = np.abs(val.imag) > imag_tol * _scale(p)
    if np.any(bad):
        worst = float(np.max(np.abs(np.imag(val))))
        raise NotSelfInversive(f"imaginary part {worst:.3e} of the phase function exceeds tolerance")
    out = np.real(val)
    return float(out) if np.ndim(out) == 0 else out


def phase_derivative(p: ComplexPoly, n: int, theta, dp: ComplexPoly | None = None):
    """d/dtheta of the phase function, Re[exp(-i n theta/2)(i z p'(z) - (i n/2) p(z))]."""
    if dp is None:
        dp = derivative(p)
    th = np.asarray(theta, dtype=float)
    z = np.exp(1j * th)
    val = np.exp(-0.5j * n * th) * (1j * z * dp(z) - 0.5j * n * p(z))
    out = np.real(val)
    return float(out) if np.ndim(out) == 0 else out


def phase_by_recurrence(pair: RecurrencePair, n: int, theta, with_derivative: bool = True):
    """f_n and its theta-derivative from the real form of the recurrence.

    With z = exp(i theta) the recurrence becomes
        f_{n+1} = 2 (cos(theta/2) - c_{n+1} sin(theta/2)) f_n - 4 d_{n+1} f_{n-1},
    which avoids the cancellation of summing expanded coefficients on the circle.
    """
    th = np.asarray(theta, dtype=float)
    cs, sn = np.cos(0.5 * th), np.sin(0.5 * th)
    c = pair.c[:n].tolist()
    four_d = (4.0 * pair.d[:n]).tolist()
    f_prev, f = 0.0, np.ones_like(th)
    if not with_derivative:
        for k in range(n):
            f_prev, f = f, 2.0 * (cs - c[k] * sn) * f - (four_d[k] if k else 0.0) * f_prev
        return f, None
    g_prev, g = 0.0, np.zeros_like(th)
    for k in range(n):
        a = 2.0 * (cs - c[k] * sn)
        b = four_d[k] if k else 0.0
        f_next = a * f - b * f_prev
        g_next = (-sn - c[k] * cs) * f + a * g - b * g_prev
        f_prev, g_prev, f, g = f, g, f_next, g_next
    return f, g


def _bisect(phase, lo, hi, flo):
    """Vectorised bisection over all brackets at once."""
    lo = lo.copy()
    hi = hi.copy()
    for _ in range(BISECT_MAX):
        if np.all(hi - lo < BISECT_TOL):
            break
        mid = 0.5 * (lo + hi)
        fm = phase(mid, False)[0]
        left = np.sign(fm) == np.sign(flo)
        lo = np.where(left, mid, lo)
        flo = np.where(left, fm, flo)
        hi = np.where(left, hi, mid)
    return 0.5 * (lo + hi)


def _newton(phase, th, lo, hi):
    """A few Newton steps in theta, rejecting any step that leaves the bracket."""
    for _ in range(NEWTON_MAX):
        f, df = phase(th)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = np.where(df != 0, f / df, 0.0)
        new = th - step
        inside = (new > lo) & (new < hi)
        th = np.where(inside, new, th)
        if np.all(np.abs(step) < 1e-16 * np.maximum(1.0, np.abs(th))):
            break
    return th


def _scan(phase, a, b, points):
    """Uniform scan for a sign change inside (a, b); returns a sub-bracket or None."""
    grid = np.linspace(a, b, points + 1)
    vals = phase(grid, False)[0]
    idx = np.flatnonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) <= 0)
    if idx.size != 1:
        return None
    k = idx[0]
    return grid[k], grid[k + 1], vals[k]


def _zeros_at_level(pair: RecurrencePair, n: int, walls: np.ndarray) -> ZeroSet:
    def phase(th, with_derivative=True):
        return phase_by_recurrence(pair, n, th, with_derivative)

    vals = phase(walls, False)[0]
    # wall values are R_n(1) and (-1)^n R_n(1)
    vals[-1] = (-1) ** n * vals[0]
    lo, hi, flo = walls[:-1].copy(), walls[1:].copy(), vals[:-1].copy()
    ok = np.sign(vals[:-1]) * np.sign(vals[1:]) < 0
    for k in np.flatnonzero(~ok):
        found = _scan(phase, walls[k], walls[k + 1], 8 * n)
        if found is None:
            raise ZeroIsolationError(
                f"level {n}: no isolated sign change in bracket {k} "
                f"[{walls[k]:.17g}, {walls[k + 1]:.17g}], endpoint values {vals[k]:.3e}, {vals[k + 1]:.3e}"
            )
        lo[k], hi[k], flo[k] = found
    th = _bisect(phase, lo, hi, flo)
    th = _newton(phase, th, lo, hi)
    th = np.sort(th)
    residuals = np.abs(phase(th, False)[0])
    return ZeroSet(n, th, residuals)


def find_zeros(pair: RecurrencePair, n: int, prev: ZeroSet | None = None) -> ZeroSet:
    """All n zeros of R_n as angles in (0, 2 pi), bracketed by the level n - 1 zeros."""
    if not 1 <= n <= pair.N:
        raise InvalidArgument(f"find_zeros needs 1 <= n <= {pair.N}")
    if prev is None and n > 1:
        prev = find_zeros(pair, n - 1)
    inner = prev.angles if prev is not None else np.empty(0)
    if prev is not None and prev.level != n - 1:
        raise InvalidArgument(f"prev is level {prev.level}, expected {n - 1}")
    walls = np.concatenate([[0.0], inner, [TWO_PI]])
    return _zeros_at_level(pair, n, walls)


def zero_levels(pair: RecurrencePair, N: int | None = None) -> list[ZeroSet]:
    """ZeroSets for levels 1..N, each bracketed by the one before."""
    N = pair.N if N is None else N
    out = []
    prev = None
    for n in range(1, N + 1):
        prev = find_zeros(pair, n, prev)
        out.append(prev)
    return out


def interlaces(prev: ZeroSet, cur: ZeroSet) -> bool:
    """Strict interlacing theta_{n+1,1} < theta_{n,1} < theta_{n+1,2} < ... ."""
    if cur.level != prev.level + 1:
        return False
    merged = np.empty(cur.angles.size + prev.angles.size)
    merged[0::2] = cur.angles
    merged[1::2] = prev.angles
    return bool(np.all(np.diff(merged) > 0) and merged[0] > 0 and merged[-1] < TWO_PI)


def circle_values(pair: RecurrencePair, n: int, theta):
    """R_n(z) and R_n'(z) at z = exp(i theta), rebuilt from the real recurrence."""
    th = np.asarray(theta, dtype=float)
    f, g = phase_by_recurrence(pair, n, th)
    z = np.exp(1j * th)
    rot = np.exp(0.5j * n * th)
    return rot * f, rot * (g + 0.5j * n * f) / (1j * z)


def q_circle_values(pair: RecurrencePair, n: int, theta):
    """Q_n(z) at z = exp(i theta) through the same real recurrence.

    exp(-i n theta/2) Q_n starts from 0 and 2 d_1 exp(-i theta/2), so every
    iterate is that unimodular factor times a real number.
    """
    th = np.asarray(theta, dtype=float)
    if n == 0:
        return np.zeros_like(th, dtype=complex)
    cs, sn = np.cos(0.5 * th), np.sin(0.5 * th)
    c = pair.c[:n].tolist()
    four_d = (4.0 * pair.d[:n]).tolist()
    q_prev, q = 0.0, np.full_like(th, 2.0 * pair.d[0])
    for k in range(1, n):
        q_prev, q = q, 2.0 * (cs - c[k] * sn) * q - four_d[k] * q_prev
    return np.exp(0.5j * (n - 1) * th) * q


def wronskian_check(pair: RecurrencePair, zset: ZeroSet) -> np.ndarray:
    """z^{-(n-2)} (z - 1)^{-1} V_n(z) at each zero, with V_n = R_n' R_{n-1} - R_{n-1}' R_n.

    Every value must be real and strictly positive.
    """
    n = zset.level
    th = zset.angles
    Rn, dRn = circle_values(pair, n, th)
    Rm, dRm = circle_values(pair, n - 1, th)
    z = zset.nodes
    V = dRn * Rm - dRm * Rn
    w = z ** (-(n - 2)) * V / (z - 1)
    scale = float(np.max(np.abs(w)))
    if np.any(np.abs(w.imag) > 1e-9 * scale):
        raise LemmaViolation(f"level {n}: Wronskian quantity has imaginary part {np.max(np.abs(w.imag)):.3e}")
    w = w.real
    if np.any(w <= 0):
        j = int(np.flatnonzero(w <= 0)[0])
        raise LemmaViolation(f"level {n}: Wronskian quantity {w[j]:.3e} at zero {j + 1} is not positive")
    return w


def dg_transform(pair: RecurrencePair, n: int, x):
    """G_n(x) = (4z)^{-n/2} R_n(z) with z = exp(2i arccos x), a real function on [-1, 1]."""
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1):
        raise InvalidArgument("dg_transform needs x in [-1, 1]")
    theta = 2.0 * np.arccos(x)
    return 4.0 ** (-n / 2) * phase_function(pair.R[n], n, theta)
