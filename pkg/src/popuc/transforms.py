"""Maps between Verblunsky coefficients and the (c, d) data of the three-term recurrence.

Index conventions follow the literature: alpha_n from 0 with the convention
alpha_{-1} = -1, c_n and d_n from 1, parameter sequences m_n from 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence, Union

import numpy as np

from . import chainseq
from .errors import (
    ConsistencyError,
    Inconclusive,
    InvalidArgument,
    JNonexistence,
    SingularTransform,
    VerblunskyBound,
)
from .indexed import IndexedSeq
from .polycore import ComplexPoly, star
from .recurrence import RecurrencePair, generate_rq, values_at_one

__all__ = [
    "ALPHA_MINUS_1",
    "VerblunskySeq",
    "RhoTauSeq",
    "Dg1Data",
    "OpucFromDg1",
    "OpucTilde",
    "DivergenceResult",
    "szego_advance",
    "szego_polys",
    "rho_tau_sequence",
    "dg1_from_opuc",
    "opuc_from_dg1",
    "opuc_tilde_from_dg2",
    "t_family",
    "weight_transform_forward",
    "weight_transform_inverse",
    "dg_symmetric_coeffs",
    "divergence_series",
    "popuc_linkage_residual",
]

ALPHA_MINUS_1 = -1.0

AlphaInput = Union[Sequence[complex], np.ndarray, Callable[[int], complex], "VerblunskySeq"]


@dataclass(frozen=True)
class VerblunskySeq:
    """alpha_0, alpha_1, ... with |alpha_n| < 1."""

    alpha: np.ndarray

    def __post_init__(self):
        a = np.array(self.alpha, dtype=complex).ravel()
        bad = np.flatnonzero(np.abs(a) >= 1)
        if bad.size:
            k = int(bad[0])
            raise VerblunskyBound(f"|alpha_{k}| = {float(abs(a[k]))!r} is not below 1")
        a.flags.writeable = False
        object.__setattr__(self, "alpha", a)

    def __len__(self):
        return self.alpha.size

    def __getitem__(self, n):
        """alpha_n, with alpha_{-1} = -1."""
        if n == -1:
            return complex(ALPHA_MINUS_1)
        if not 0 <= n < self.alpha.size:
            raise IndexError(f"alpha_{n} not stored")
        return complex(self.alpha[n])

    def is_real(self, tol: float = 0.0) -> bool:
        return bool(np.all(np.abs(self.alpha.imag) <= tol))


def _alpha_getter(alpha: AlphaInput):
    """(getter, size) with getter(n) = alpha_n and alpha_{-1} = -1; size None if unbounded."""
    if isinstance(alpha, VerblunskySeq):
        return alpha.__getitem__, len(alpha)
    if callable(alpha):
        def get(n):
            if n == -1:
                return complex(ALPHA_MINUS_1)
            a = complex(alpha(n))
            if abs(a) >= 1:
                raise VerblunskyBound(f"|alpha_{n}| = {abs(a)!r} is not below 1")
            return a
        return get, None
    seq = VerblunskySeq(alpha)
    return seq.__getitem__, len(seq)


def _need(size, count, what):
    if size is not None and size < count:
        raise InvalidArgument(f"{what} needs alpha_0..alpha_{count - 1}; got {size} values")


def _unit(z: complex) -> complex:
    return z / abs(z)


# ---------------------------------------------------------------- Szego side


def szego_advance(S: ComplexPoly, alpha: complex, tol: float = 1e-12) -> ComplexPoly:
    """S_n = z S_{n-1} - conj(alpha) S_{n-1}^*, monic of degree n."""
    alpha = complex(alpha)
    if abs(alpha) >= 1:
        raise VerblunskyBound(f"|alpha| = {abs(alpha)!r} is not below 1")
    m = S.degree
    S_star = star(S, m)
    out = S.mul_z() - S_star * alpha.conjugate()
    # second form of the recurrence: S_n = (1 - |alpha|^2) z S_{n-1} - conj(alpha) S_n^*
    other = S.mul_z() * (1 - abs(alpha) ** 2) - star(out, m + 1) * alpha.conjugate()
    if not out.allclose(other, rtol=tol):
        raise ConsistencyError("the two forms of the Szego recurrence disagree")
    return out


def szego_polys(alpha: AlphaInput, N: int) -> list[ComplexPoly]:
    """Monic S_0..S_N from alpha_0..alpha_{N-1}."""
    get, size = _alpha_getter(alpha)
    _need(size, N, "szego_polys")
    out = [ComplexPoly([1.0])]
    for n in range(1, N + 1):
        out.append(szego_advance(out[-1], get(n - 1)))
    return out


# ---------------------------------------------------------------- rho / tau


@dataclass(frozen=True)
class RhoTauSeq:
    """rho_0..rho_N and tau_1..tau_{N+1} with tau_{n+1} = -rho_n."""

    rho: IndexedSeq
    tau: IndexedSeq
    identity_residual: float = 0.0
    tau_recurrence_residual: float = 0.0


def _check_seed(rho0: complex) -> complex:
    rho0 = complex(rho0)
    if abs(abs(rho0) - 1) > 1e-12:
        raise InvalidArgument(f"rho_0 must be unimodular, |rho_0| = {abs(rho0)!r}")
    if abs(rho0 - 1) <= 1e-12:
        raise InvalidArgument("rho_0 must differ from 1")
    return _unit(rho0)


def _rho_step(rho: complex, a: complex) -> complex:
    den = 1 - rho * a
    if abs(den) < 1e-14:
        raise ConsistencyError("rho recursion denominator vanished")
    return _unit((rho - a.conjugate()) / den)


def rho_tau_sequence(alpha: AlphaInput, rho0: complex, N: int) -> RhoTauSeq:
    """rho_n = (rho_{n-1} - conj(alpha_{n-1})) / (1 - rho_{n-1} alpha_{n-1}), renormalised each step."""
    get, size = _alpha_getter(alpha)
    _need(size, N, "rho_tau_sequence")
    rho = np.empty(N + 1, dtype=complex)
    rho[0] = _check_seed(rho0)
    ident = 0.0
    trec = 0.0
    for n in range(1, N + 1):
        a = get(n - 1)
        rho[n] = _rho_step(rho[n - 1], a)
        lhs = (1 + rho[n] * a) * (1 - rho[n - 1] * a)
        ident = max(ident, abs(lhs - (1 - abs(a) ** 2)))
        tau_n = -rho[n - 1]
        trec = max(trec, abs((tau_n + a.conjugate()) / (1 + tau_n * a) + rho[n]))
    return RhoTauSeq(IndexedSeq(0, rho), IndexedSeq(1, -rho), ident, trec)


# ---------------------------------------------------------------- DG1 data


@dataclass(frozen=True)
class Dg1Data:
    """c_1..c_{N+1}, d_2..d_{N+1} and their minimal parameters m_0..m_N.

    ``d1`` is the free first coefficient when known.
    """

    c: IndexedSeq
    d: IndexedSeq
    m: IndexedSeq
    provenance: str
    rho: RhoTauSeq | None = field(default=None, repr=False)
    d1: float | None = None

    @property
    def N(self) -> int:
        return self.m.stop - 1

    def pair(self, d1: float | None = None) -> RecurrencePair:
        """R_0..R_{N+1} for this data with the given (or stored, or 1/4) d_1."""
        d1 = d1 if d1 is not None else (self.d1 if self.d1 is not None else 0.25)
        d = np.concatenate([[d1], self.d.values])
        return generate_rq(self.c.values, d, self.c.values.size)


def dg1_from_opuc(alpha: AlphaInput, rho0: complex, N: int) -> Dg1Data:
    """c, d_{1,n} and m_n from Verblunsky coefficients and a unimodular seed rho_0 != 1.

    c_1 = i (rho_0 + 1)/(rho_0 - 1),
    c_{n+1} = -Im(rho_n alpha_{n-1}) / (1 + Re(rho_n alpha_{n-1})),
    m_n = (1 - |rho_n alpha_{n-1}|^2) / (2 (1 + Re(rho_n alpha_{n-1}))),
    d_{n+1} = (1 - m_{n-1}) m_n.
    """
    get, size = _alpha_getter(alpha)
    _need(size, N, "dg1_from_opuc")
    rt = rho_tau_sequence(alpha if size is None else VerblunskySeq([get(k) for k in range(N)]), rho0, N)
    rho = rt.rho.values
    c = np.empty(N + 1)
    m = np.zeros(N + 1)
    c1 = 1j * (rho[0] + 1) / (rho[0] - 1)
    c[0] = c1.real + 0.0  # no negative zero
    for n in range(0, N + 1):
        w = rho[n] * get(n - 1)
        den = 1 + w.real
        if den <= 0:
            raise SingularTransform(f"1 + Re(rho_{n} alpha_{n - 1}) vanished")
        if n >= 1:
            c[n] = -w.imag / den
        m[n] = 0.5 * (1 - abs(w) ** 2) / den
    m[0] = 0.0
    d = (1 - m[:-1]) * m[1:]
    return Dg1Data(IndexedSeq(1, c), IndexedSeq(2, d), IndexedSeq(0, m), "dg1_from_opuc", rt)


# ---------------------------------------------------------------- OPUC from DG1


class OpucFromDg1(NamedTuple):
    alpha: VerblunskySeq
    polys: list  # S_hat_0..S_hat_N
    kappa_inv2: np.ndarray  # kappa_hat_n^{-2}, n = 0..N
    tau: IndexedSeq  # tau_1..tau_{N+1}
    m: np.ndarray  # m_0..m_N from the values at z = 1
    division_residual: float
    star_residual: float


def _divide_z_minus_1(p: ComplexPoly) -> tuple[ComplexPoly, complex]:
    """Synthetic division of p by (z - 1): quotient and remainder p(1)."""
    c = p.coeffs
    n = c.size - 1
    q = np.empty(n, dtype=complex)
    acc = 0j
    for k in range(n, 0, -1):
        acc = acc + c[k]
        q[k - 1] = acc
    return ComplexPoly(q), acc + c[0]


def opuc_from_dg1(pair: RecurrencePair, N: int, tol: float = 1e-10) -> OpucFromDg1:
    """Verblunsky coefficients alpha_hat_0..alpha_hat_{N-1} and monic S_hat_0..S_hat_N.

    alpha_hat_{n-1} = -(1/tau_n) (1 - 2 m_n - i c_{n+1}) / (1 - i c_{n+1}) with
    tau_n = prod_{k<=n} (1 - i c_k)/(1 + i c_k) and m_n = 1 - R_{n+1}(1)/(2 R_n(1)).
    S_hat_n = [R_{n+1} - 2 (1 - m_n) R_n] / ((z - 1) prod_{k<=n+1} (1 + i c_k)).
    """
    if N < 1 or pair.N < N + 1:
        raise InvalidArgument(f"opuc_from_dg1(N={N}) needs R_0..R_{N + 1}; have R_0..R_{pair.N}")
    c = pair.c
    v = values_at_one(pair)
    m = 1.0 - v[1:N + 2] / (2.0 * v[:N + 1])
    m[0] = 0.0 if abs(m[0]) < 1e-15 else m[0]
    ratio = (1 - 1j * c[:N + 1]) / (1 + 1j * c[:N + 1])
    tau = np.cumprod(ratio)  # tau_1..tau_{N+1}
    alpha = np.empty(N, dtype=complex)
    for n in range(1, N + 1):
        cn1 = c[n]
        alpha[n - 1] = -(1 / tau[n - 1]) * (1 - 2 * m[n] - 1j * cn1) / (1 - 1j * cn1)

    polys = []
    div_res = 0.0
    star_res = 0.0
    lead = np.cumprod(1 + 1j * c[:N + 1])
    lead_conj = np.conj(lead)
    for n in range(0, N + 1):
        num = pair.R[n + 1] - pair.R[n] * (2 * (1 - m[n]))
        q, rem = _divide_z_minus_1(num)
        scale = float(np.max(np.abs(num.coeffs)))
        div_res = max(div_res, abs(rem) / scale)
        S = q / lead[n]
        polys.append(S)
        num_star = pair.R[n + 1] - pair.R[n].mul_z() * (2 * (1 - m[n]))
        q_star, _ = _divide_z_minus_1(-num_star)
        S_star = q_star / lead_conj[n]
        diff = S_star - star(S, n)
        star_res = max(star_res, float(np.max(np.abs(diff.coeffs))) / max(1.0, float(np.max(np.abs(S.coeffs)))))
    if div_res > tol:
        raise ConsistencyError(f"division by (z - 1) left remainder {div_res:.3e} of scale")

    kappa = np.empty(N + 1)
    prod = 1.0
    for n in range(0, N + 1):
        if n >= 1:
            prod *= 4 * pair.d[n] / (1 + c[n] ** 2)
        kappa[n] = (1 - m[n]) * prod
    return OpucFromDg1(VerblunskySeq(alpha), polys, kappa, IndexedSeq(1, tau), m, div_res, star_res)


def popuc_linkage_residual(pair: RecurrencePair, result: OpucFromDg1, n: int) -> float:
    """max coefficient gap in R_{n+1}/prod(1 + i c_k) = z S_hat_n + tau_{n+1} S_hat_n^*."""
    lead = np.prod(1 + 1j * pair.c[:n + 1])
    S = result.polys[n]
    rhs = S.mul_z() + star(S, n) * result.tau[n + 1]
    lhs = pair.R[n + 1] / lead
    return float(np.max(np.abs((lhs - rhs).coeffs)))


# ---------------------------------------------------------------- tilde side


class OpucTilde(NamedTuple):
    alpha: VerblunskySeq
    polys: list  # S_tilde_0..S_tilde_N
    M0: float
    M0_converged: bool
    m: np.ndarray  # m_0..m_N of the full chain


def opuc_tilde_from_dg2(pair: RecurrencePair, N: int, chain=None) -> OpucTilde:
    """Verblunsky coefficients of the measure carrying mass M_0 at z = 1.

    Needs d_1, d_2, ... to be a positive chain sequence.  S_tilde_n prod_{k<=n}(1 + i c_k)
    = R_n - 2 (1 - m_n) R_{n-1} and alpha_tilde_{n-1} = (1/tau_n)(1 - 2 m_n - i c_n)/(1 + i c_n).
    ``chain`` may supply a longer (or callable) d for estimating M_0.
    """
    if N < 1 or pair.N < N:
        raise InvalidArgument(f"opuc_tilde_from_dg2(N={N}) needs R_0..R_{N}")
    m = chainseq.minimal_params(pair.d[:N], N)
    c = pair.c
    tau = np.cumprod((1 - 1j * c[:N]) / (1 + 1j * c[:N]))
    alpha = np.array([(1 / tau[n - 1]) * (1 - 2 * m[n] - 1j * c[n - 1]) / (1 + 1j * c[n - 1]) for n in range(1, N + 1)])
    lead = np.cumprod(1 + 1j * c[:N])
    polys = [ComplexPoly([1.0])]
    for n in range(1, N + 1):
        polys.append((pair.R[n] - pair.R[n - 1] * (2 * (1 - m[n]))) / lead[n - 1])
    M = chainseq.maximal_params(chain if chain is not None else pair.d, 0)
    return OpucTilde(VerblunskySeq(alpha), polys, float(M.values[0]), M.converged, m)


# ---------------------------------------------------------------- t family


def t_family(alpha: AlphaInput, I: complex, t: float, N: int, tol: float = 1e-10) -> Dg1Data:
    """Data for rho_0(t) = -(I + i t)/(conj(I) - i t), with c_1(t) = -2 (t + Im I)."""
    I = complex(I)
    if abs(I.real - 0.5) > tol:
        raise InvalidArgument(f"Re(I) must be 1/2, got {I.real!r}")
    if not np.isfinite(t):
        raise InvalidArgument("t must be finite")
    w = I + 1j * t
    rho0 = -w / w.conjugate()
    out = dg1_from_opuc(alpha, rho0, N)
    direct = -2 * (t + I.imag)
    if abs(out.c[1] - direct) > 1e-12 * max(1.0, abs(direct)):
        raise ConsistencyError(f"c_1(t) from rho_0(t) is {out.c[1]!r}, expected {direct!r}")
    return Dg1Data(out.c, out.d, out.m, "t_family", out.rho)


# ---------------------------------------------------------------- weight transforms


def weight_transform_forward(alpha: AlphaInput, N: int) -> VerblunskySeq:
    """Verblunsky coefficients of ((zeta - 1)(1 - zeta)/zeta) dmu from those of mu.

    Uses alpha_0..alpha_N and returns alpha_hat_0..alpha_hat_{N-1}.
    """
    get, size = _alpha_getter(alpha)
    _need(size, N + 1, "weight_transform_forward")
    rho = np.empty(N + 2, dtype=complex)
    rho[0] = 1.0
    c = np.empty(N + 2)  # c[n] = c_n, n >= 1
    g = np.empty(N + 1)  # g[n] = g_{1,n}
    for n in range(1, N + 2):
        a = get(n - 1)
        w = rho[n - 1] * a
        den = 1 - w.real
        if abs(1 - w) < 1e-13:
            raise SingularTransform(f"rho^(2)_{n - 1} alpha_{n - 1} is numerically 1")
        c[n] = -w.imag / den
        g[n - 1] = 0.5 * abs(1 - w) ** 2 / den
        rho[n] = _rho_step(rho[n - 1], a)
    m = np.zeros(N + 1)
    for n in range(1, N + 1):
        m[n] = (1 - g[n - 1]) * g[n] / (1 - m[n - 1])
    out = np.array([-(1 / rho[n]) * (1 - 2 * m[n] - 1j * c[n + 1]) / (1 - 1j * c[n + 1]) for n in range(1, N + 1)])
    return VerblunskySeq(out)


class _LazyChain:
    """d_{n+1} and m_n of the chain built from alpha and rho_0, extended on demand.

    The forward rho recursion is a Moebius map whose derivative on the circle
    is (1 - |a|^2)/|1 - rho a|^2, so rounding in rho can grow along the chain.
    ``drift`` accumulates a first-order bound on the resulting error in the
    Wall log terms; ``reliable`` is the last index where it stays below
    DRIFT_LIMIT.  Real data seeded at rho_0 = -1 keeps rho exactly -1.
    """

    DRIFT_LIMIT = 1e-4

    def __init__(self, get, size, rho0):
        self.get = get
        self.size = size
        self.rho = [rho0]
        self.c = [float((1j * (rho0 + 1) / (rho0 - 1)).real)]
        self.m = [0.0]
        self.err = 0.0 if rho0.imag == 0 else np.finfo(float).eps
        self.drift = 0.0
        self.reliable = None

    def _extend(self, n):
        eps = np.finfo(float).eps
        while len(self.m) <= n:
            k = len(self.m)
            if self.size is not None and k > self.size:
                raise IndexError(k)
            a = self.get(k - 1)
            prev = self.rho[-1]
            rho = _rho_step(prev, a)
            self.rho.append(rho)
            self.err = self.err * (1 - abs(a) ** 2) / abs(1 - prev * a) ** 2 + (eps if rho.imag != 0 else 0.0)
            w = rho * a
            den = 1 + w.real
            self.c.append(-w.imag / den)
            mk = 0.5 * (1 - abs(w) ** 2) / den
            self.m.append(mk)
            self.drift += abs(a) * self.err / max(mk * (1 - mk), 1e-300)
            if self.reliable is None and self.drift > self.DRIFT_LIMIT:
                self.reliable = k - 1

    def d_tail(self, k):
        """d_{1,k} = d_{k+1} = (1 - m_{k-1}) m_k."""
        self._extend(k)
        return (1 - self.m[k - 1]) * self.m[k]

    def c_at(self, n):
        self._extend(n - 1)
        return self.c[n - 1]


def weight_transform_inverse(
    alpha: AlphaInput,
    M0: float,
    N: int,
    I: complex | None = None,
    M1: float | None = None,
    wall_terms: int = 100_000,
    tol: float = chainseq.DEFAULT_TOL,
) -> VerblunskySeq:
    """Verblunsky coefficients of M_0 delta_1 + (1 - M_0) J^{-1} zeta/((1-zeta)(zeta-1)) dmu.

    rho_0 = -I/conj(I) with I = PV int zeta/(zeta - 1) dmu (1/2 for real alpha).
    The chain d_{n+1} built from alpha must not be SPPCS; its maximal
    parameter M_1 then fixes m_1 = (1 - M_0) M_1 and m_{n+1} = d_{n+1}/(1 - m_n).
    """
    if not 0 <= M0 < 1:
        raise InvalidArgument("M_0 must lie in [0, 1)")
    get, size = _alpha_getter(alpha)
    _need(size, N, "weight_transform_inverse")
    if I is None:
        probe = VerblunskySeq([get(k) for k in range(size if size is not None else 256)])
        if not probe.is_real():
            raise InvalidArgument("I is required unless alpha is real")
        I = 0.5
    I = complex(I)
    rho0 = _check_seed(-I / I.conjugate())
    chain = _LazyChain(get, size, rho0)

    W = wall_terms if size is None else min(wall_terms, size)
    chain._extend(W)
    if chain.reliable is not None:
        W = min(W, chain.reliable)
    if W < 10:
        raise Inconclusive(f"only {W} chain terms can be computed reliably; the SPPCS test needs 10")
    wall = chainseq.wall_sppcs_test(np.array(chain.m[: W + 1]))
    if wall.verdict != chainseq.NOT_SPPCS:
        raise JNonexistence(
            f"chain built from alpha has Wall verdict {wall.verdict}; J does not exist or cannot be confirmed",
            wall.verdict,
        )
    if M1 is None:
        d_tail = np.array([chain.d_tail(k) for k in range(1, W + 1)])
        est = chainseq.maximal_params(d_tail, 0, tol=tol)
        if not est.converged:
            raise Inconclusive(f"maximal parameter M_1 did not converge (horizon {est.horizon})")
        M1 = float(est.values[0])
    if not M1 > 0:
        raise JNonexistence("maximal parameter M_1 is zero", chainseq.SPPCS)

    m = np.empty(N + 1)
    m[0] = M0
    m[1] = (1 - M0) * M1
    for n in range(1, N):
        m[n + 1] = chain.d_tail(n) / (1 - m[n])
    out = np.array([
        -(1 / chain.rho[n - 1]) * (1 - 2 * m[n] - 1j * chain.c_at(n)) / (1 + 1j * chain.c_at(n))
        for n in range(1, N + 1)
    ])
    return VerblunskySeq(out)


# ---------------------------------------------------------------- symmetric case


def _real_alpha(alpha, count, what):
    a = np.asarray(alpha)
    if np.iscomplexobj(a) and np.any(a.imag != 0):
        raise InvalidArgument(f"{what} needs real alpha")
    a = np.asarray(a.real if np.iscomplexobj(a) else a, dtype=float)
    if a.size < count:
        raise InvalidArgument(f"{what} needs alpha_0..alpha_{count - 1}")
    if np.any(np.abs(a) >= 1):
        raise VerblunskyBound(f"{what}: some |alpha_n| >= 1")
    return a


def dg_symmetric_coeffs(alpha, N: int) -> tuple[IndexedSeq, IndexedSeq]:
    """d^(1)_{n+1} = (1 - alpha_{n-2})(1 + alpha_{n-1})/4 and d^(2)_{n+1} = (1 + alpha_{n-1})(1 - alpha_n)/4.

    Both for n = 1..N, returned as sequences starting at index 2.
    """
    a = _real_alpha(alpha, N + 1, "dg_symmetric_coeffs")
    ext = np.concatenate([[ALPHA_MINUS_1], a])  # ext[k + 1] = alpha_k
    n = np.arange(1, N + 1)
    d1 = 0.25 * (1 - ext[n - 1]) * (1 + ext[n])
    d2 = 0.25 * (1 + ext[n]) * (1 - ext[n + 1])
    for name, d in (("d(1)", d1), ("d(2)", d2)):
        chk = chainseq.is_positive_chain(d, N)
        if not chk:
            raise ConsistencyError(f"{name} failed the chain test: {chk.reason}")
    return IndexedSeq(2, d1), IndexedSeq(2, d2)


class DivergenceResult(NamedTuple):
    partial_sums: np.ndarray
    verdict: str  # diverges | converges | inconclusive
    j_exists: bool | None


def divergence_series(alpha, N: int) -> DivergenceResult:
    """Partial sums of sum_n prod_{k<=n} (1 + alpha_{k-1})/(1 - alpha_{k-1}) for real alpha.

    The series converges exactly when J = int zeta/((1-zeta)(zeta-1)) dmu exists.
    """
    a = _real_alpha(alpha, N, "divergence_series")[:N]
    log_terms = np.cumsum(np.log1p(a) - np.log1p(-a))
    wall = chainseq.wall_from_terms(log_terms)
    verdict = {chainseq.SPPCS: "diverges", chainseq.NOT_SPPCS: "converges"}.get(wall.verdict, "inconclusive")
    exists = {"diverges": False, "converges": True}.get(verdict)
    return DivergenceResult(wall.partial_sums, verdict, exists)
