"""Moment functionals, quadrature decompositions and the principal value integral I.

Moment conventions: nu_k = N[z^{-k}], mu_n = int z^{-n} dmu, so a quadrature
rule with nodes z_j and weights w_j reproduces mu_{-k} as sum_j w_j z_j^k.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np
from scipy import integrate, special

from . import chainseq
from .errors import InvalidArgument, LemmaViolation, PVDivergence
from .indexed import IndexedSeq
from .recurrence import RecurrencePair
from .zeros import ZeroSet, circle_values, phase_by_recurrence, q_circle_values

__all__ = [
    "MomentTable",
    "QuadratureRule",
    "MeasureIntegrals",
    "OrthogonalityReport",
    "nu_table",
    "l_orthogonality_check",
    "mu_hat_moments",
    "mu_tilde_moments",
    "moment_table",
    "quadrature_hat",
    "quadrature_tilde",
    "pv_integral",
    "t_from_I",
    "BUILTIN_MEASURES",
]


@dataclass(frozen=True)
class MomentTable:
    """nu_k for k = -K..K+1 plus optional mu_hat and mu_tilde tables.

    ``scale`` is (1 + c_1^2)/(4 d_1), the factor linking nu to mu_hat.
    """

    nu: IndexedSeq
    scale: float
    mu_hat: IndexedSeq | None = None
    mu_tilde: IndexedSeq | None = None

    @property
    def K(self) -> int:
        return self.nu.stop - 2


def _series_quotient(num: np.ndarray, den: np.ndarray, order: int) -> np.ndarray:
    """Taylor coefficients 0..order of num/den at the origin."""
    out = np.zeros(order + 1, dtype=complex)
    a = np.zeros(order + 1, dtype=complex)
    b = np.zeros(order + 1, dtype=complex)
    a[: min(num.size, order + 1)] = num[: order + 1]
    b[: min(den.size, order + 1)] = den[: order + 1]
    for k in range(order + 1):
        out[k] = (a[k] - np.dot(b[1:k + 1], out[k - 1::-1][:k])) / b[0]
    return out


def nu_table(pair: RecurrencePair, K: int, N: int | None = None) -> MomentTable:
    """nu_{-K}..nu_{K+1} from the Taylor expansion of Q_N/R_N at the origin.

    Q_N/R_N agrees with -sum nu_{k+1} z^k through z^{N-1}, so N = K + 2 fixes
    nu_1..nu_{K+1}; the rest follows from nu_{-n+1} = -conj(nu_n).
    """
    if K < 0:
        raise InvalidArgument("nu_table needs K >= 0")
    N = K + 2 if N is None else N
    if N < K + 1 or N > pair.N:
        raise InvalidArgument(f"nu_table(K={K}) needs the pair through level {K + 2}; have {pair.N}")
    taylor = _series_quotient(pair.Q[N].coeffs, pair.R[N].coeffs, K)
    pos = -taylor  # nu_1..nu_{K+1}
    neg = -np.conj(pos[::-1])  # nu_{-K}..nu_0
    nu = IndexedSeq(-K, np.concatenate([neg, pos]))
    c1, d1 = pair.c[0], pair.d[0]
    return MomentTable(nu, float((1 + c1 * c1) / (4 * d1)))


@dataclass(frozen=True)
class OrthogonalityReport:
    level: int
    values: IndexedSeq  # N[z^{-n+j} R_n] for j = -1..n
    gamma: complex
    middle_residual: float
    top_error: float
    bottom_error: float

    def ok(self, middle_tol=1e-9, end_tol=1e-11) -> bool:
        return self.middle_residual < middle_tol and self.top_error < end_tol and self.bottom_error < end_tol


def l_orthogonality_check(pair: RecurrencePair, table: MomentTable, n: int) -> OrthogonalityReport:
    """Evaluate N[z^{-n+j} R_n] = sum_k r_{n,k} nu_{n-j-k} for j = -1..n.

    The middle values (0 <= j <= n-1) should vanish; j = n gives gamma_n and
    j = -1 gives -conj(gamma_n).  Residuals are relative to |gamma_n|.
    """
    if -n not in table.nu or n + 1 not in table.nu:
        raise InvalidArgument(f"table must hold nu_{-n}..nu_{n + 1}")
    if n >= pair.gamma.size:
        raise InvalidArgument(f"gamma_{n} needs c and d through index {n + 1}")
    r = pair.R[n].coeffs
    vals = np.empty(n + 2, dtype=complex)
    for j in range(-1, n + 1):
        idx = [n - j - k for k in range(n + 1)]
        vals[j + 1] = np.dot(r, [table.nu[i] for i in idx])
    g = complex(pair.gamma[n])
    scale = abs(g)
    middle = float(np.max(np.abs(vals[1:n + 1]))) / scale if n > 0 else 0.0
    top = abs(vals[-1] - g) / scale
    bottom = abs(vals[0] + g.conjugate()) / scale
    return OrthogonalityReport(n, IndexedSeq(-1, vals), g, middle, top, bottom)


def mu_hat_moments(table: MomentTable) -> MomentTable:
    """mu_hat_n = scale (nu_n - nu_{n+1}) for n = 0..K, conjugates below."""
    K = table.K
    pos = np.array([table.scale * (table.nu[n] - table.nu[n + 1]) for n in range(K + 1)])
    pos[0] = 1.0
    vals = np.concatenate([np.conj(pos[:0:-1]), pos])
    return replace(table, mu_hat=IndexedSeq(-K, vals))


def mu_tilde_moments(table: MomentTable) -> MomentTable:
    """mu_tilde_n = 1 + sum_{j<=n} nu_j and mu_tilde_{-n} = 1 - sum_{j<=n} nu_{-j+1}."""
    M = table.K + 1
    pos = 1 + np.concatenate([[0], np.cumsum([table.nu[j] for j in range(1, M + 1)])])
    neg = 1 - np.concatenate([[0], np.cumsum([table.nu[-j + 1] for j in range(1, M + 1)])])
    vals = np.concatenate([neg[:0:-1], pos])
    return replace(table, mu_tilde=IndexedSeq(-M, vals))


def moment_table(pair: RecurrencePair, K: int) -> MomentTable:
    return mu_tilde_moments(mu_hat_moments(nu_table(pair, K)))


@dataclass(frozen=True)
class QuadratureRule:
    level: int
    angles: np.ndarray
    weights: np.ndarray
    kind: str
    mass_at_one: float | None = None

    @property
    def nodes(self) -> np.ndarray:
        return np.exp(1j * self.angles)

    def total(self) -> float:
        return float(math.fsum(self.weights) + (self.mass_at_one or 0.0))

    def moment(self, k: int) -> complex:
        """sum_j w_j z_j^k, including any mass at z = 1; equals mu_{-k}."""
        s = np.sum(self.weights * self.nodes ** k)
        return complex(s + (self.mass_at_one or 0.0))


def _real_positive(w: np.ndarray, what: str, n: int) -> np.ndarray:
    scale = float(np.max(np.abs(w)))
    if np.any(np.abs(w.imag) > 1e-10 * max(scale, 1.0)):
        raise LemmaViolation(f"level {n}: {what} weights are not real (max imag {np.max(np.abs(w.imag)):.3e})")
    w = w.real
    if np.any(w <= 0):
        raise LemmaViolation(f"level {n}: {what} weight {w.min():.3e} is not positive")
    return w


def quadrature_hat(pair: RecurrencePair, zset: ZeroSet) -> QuadratureRule:
    """Weights A_hat_n(z_j) / R_n'(z_j) at the zeros of R_n."""
    n = zset.level
    th = zset.angles
    z = zset.nodes
    Rn, dRn = circle_values(pair, n, th)
    Qn = q_circle_values(pair, n, th)
    c1, d1 = pair.c[0], pair.d[0]
    a_hat = (1 + 1j * c1) / (2 * z) * (Rn + (1 - 1j * c1) / (2 * d1) * (z - 1) * Qn)
    w = _real_positive(a_hat / dRn, "hat", n)
    return QuadratureRule(n, th.copy(), w, "hat")


def quadrature_tilde(pair: RecurrencePair, zset: ZeroSet) -> QuadratureRule:
    """Mass 1 - Q_n(1)/R_n(1) at z = 1 plus Q_n(z_j) / ((1 - z_j) R_n'(z_j)) at the zeros.

    Requires d_1, d_2, ..., d_n to be a positive chain sequence.
    """
    n = zset.level
    chainseq.minimal_params(pair.d[:n], n)
    th = zset.angles
    z = zset.nodes
    _, dRn = circle_values(pair, n, th)
    Qn = q_circle_values(pair, n, th)
    w = _real_positive(Qn / ((1 - z) * dRn), "tilde", n)
    r1 = float(phase_by_recurrence(pair, n, np.zeros(1), False)[0][0])
    q1 = float(q_circle_values(pair, n, np.zeros(1))[0].real)
    mass = 1.0 - q1 / r1
    if not 0.0 < mass < 1.0:
        raise LemmaViolation(f"level {n}: mass at one {mass!r} is outside (0, 1)")
    return QuadratureRule(n, th.copy(), w, "tilde", mass)


@dataclass(frozen=True)
class MeasureIntegrals:
    """I = PV int zeta/(zeta-1) dmu, J = int zeta/((1-zeta)(zeta-1)) dmu when it exists."""

    I: complex
    J: float | None
    t: float | None = None
    J_status: str = "exists"  # exists | absent | unknown


def t_from_I(I: complex, c1: float) -> float:
    """t = -Im[(1 + i c_1) I]."""
    return float(-((1 + 1j * c1) * I).imag)


def _builtin(name: str, params: dict) -> MeasureIntegrals:
    if name == "lebesgue":
        return MeasureIntegrals(0.5 + 0j, None, J_status="absent")
    if name == "point-mass-mix":
        delta = float(params.get("delta", 0.0))
        phi = float(params.get("phi", math.pi / 2))
        if not 0 <= delta <= 1:
            raise InvalidArgument("point-mass-mix needs 0 <= delta <= 1")
        if not 0 < phi < 2 * math.pi:
            raise InvalidArgument("the point mass must sit away from z = 1")
        zp = cmath.exp(1j * phi)
        I = (1 - delta) * 0.5 + delta * zp / (zp - 1)
        if delta == 1:
            return MeasureIntegrals(I, 1.0 / (4 * math.sin(phi / 2) ** 2))
        return MeasureIntegrals(I, None, J_status="absent")
    if name == "example2":
        return MeasureIntegrals(0.5 + 0j, 0.5)
    if name == "example3":
        lam = float(params["lam"])
        eta = float(params.get("eta", 0.0))
        if lam <= -1:
            raise InvalidArgument("example3 needs lambda > -1")
        b = complex(lam, eta)
        I = (b.conjugate() + 1) / (2 * lam + 2)
        if lam > -0.5:
            return MeasureIntegrals(I, abs(b + 1) ** 2 / ((2 * lam + 2) * (2 * lam + 1)))
        return MeasureIntegrals(I, None, J_status="absent")
    raise InvalidArgument(f"unknown measure {name!r}")


BUILTIN_MEASURES = ("lebesgue", "point-mass-mix", "example2", "example3")

EPSILONS = (1e-2, 5e-3, 2.5e-3)


def example3_density(lam: float, eta: float) -> Callable:
    """Density in theta of the Example 3 measure, normalised to total mass 1."""
    log_c = (2 * lam + 2) * math.log(2) + 2 * special.loggamma(complex(lam + 2, eta)).real \
        - math.log(2 * math.pi) - special.gammaln(2 * lam + 3)
    const = math.exp(log_c)

    def w(theta):
        return const * np.exp((np.pi - theta) * eta) * np.sin(0.5 * theta) ** (2 * lam + 2)

    return w


_QUAD = dict(limit=400, epsabs=1e-14, epsrel=1e-13)


def _folded(w: Callable, kernel: Callable, eps: float, odd: bool = False) -> float:
    """int_eps^{pi} over the folded pair theta, 2 pi - theta.

    Symmetric excision of [0, eps) and (2 pi - eps, 2 pi] is the same as
    cutting the folded integral at eps. The kernel is even or odd under
    theta -> 2 pi - theta, so it is evaluated once and the cancellation
    happens in the density difference.
    """
    sign = -1.0 if odd else 1.0

    def f(th):
        return kernel(th) * (w(th) + sign * w(2 * np.pi - th))

    # divergence is diagnosed by the caller, so quad's own warning is noise
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        return integrate.quad(f, eps, np.pi, **_QUAD)[0]


def _richardson(vals):
    """Remove the eps and eps^2 terms of an excision sequence at halving eps."""
    v0, v1, v2 = vals
    a0 = 2 * v1 - v0
    a1 = 2 * v2 - v1
    return (4 * a1 - a0) / 3


def _density_integrals(w: Callable, spread_tol: float) -> MeasureIntegrals:
    """I = int (1/2 - (i/2) cot(theta/2)) w(theta) dtheta in the principal value sense."""

    def half(th):
        return 0.5 * np.ones_like(th)

    def neg_half_cot(th):
        return -0.5 / np.tan(0.5 * th)

    re = _richardson([_folded(w, half, e) for e in EPSILONS])
    im = _richardson([_folded(w, neg_half_cot, e, odd=True) for e in EPSILONS])
    # the folded integrand is bounded when w is continuous at theta = 0; the
    # unexcised integral is then the answer and the extrapolation a cross-check
    with np.errstate(all="ignore"):
        re0 = _folded(w, half, 0.0)
        im0 = _folded(w, neg_half_cot, 0.0, odd=True)
    spread = max(abs(re - re0), abs(im - im0))
    if not spread <= spread_tol:
        raise PVDivergence(f"principal value extrapolation did not settle (spread {spread:.3e})")

    def quarter_csc2(th):
        return 0.25 / np.sin(0.5 * th) ** 2

    j_vals = [_folded(w, quarter_csc2, e) for e in EPSILONS]
    inc0, inc1 = j_vals[1] - j_vals[0], j_vals[2] - j_vals[1]
    if inc0 > 0 and inc1 / inc0 > 0.9:
        return MeasureIntegrals(complex(re0, im0), None, J_status="absent")
    with np.errstate(all="ignore"):
        J = _folded(w, quarter_csc2, 0.0)
    return MeasureIntegrals(complex(re0, im0), float(J))


def _moment_integrals(moments, spread_tol: float) -> MeasureIntegrals:
    """I = mu_0/2 + i sum_{k>=1} Im(mu_k) with mu_k = int zeta^{-k} dmu."""
    mu = np.asarray(moments, dtype=complex)
    if mu.size < 4:
        raise InvalidArgument("need at least mu_0..mu_3")
    partial = np.cumsum(mu[1:].imag)
    half = partial[(partial.size - 1) // 2]
    if abs(partial[-1] - half) > spread_tol:
        raise PVDivergence(f"moment series for I has not settled (change {abs(partial[-1] - half):.3e})")
    return MeasureIntegrals(complex(0.5 * mu[0].real, partial[-1]), None, J_status="unknown")


def pv_integral(measure, c1: float | None = None, spread_tol: float = 1e-6, **params) -> MeasureIntegrals:
    """Principal value integral I (and J where it exists) for a measure.

    ``measure`` is a built-in name, a callable density w(theta) on [0, 2 pi],
    or an array of moments mu_0, mu_1, ... .  With ``c1`` the constant
    t = -Im[(1 + i c_1) I] is attached.
    """
    if isinstance(measure, str):
        out = _builtin(measure, params)
    elif callable(measure):
        out = _density_integrals(measure, spread_tol)
    else:
        out = _moment_integrals(measure, spread_tol)
    if c1 is not None:
        out = replace(out, t=t_from_I(out.I, c1))
    return out
