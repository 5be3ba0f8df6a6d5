"""Closed-form oracles for the three worked examples.

Everything here is a direct formula evaluation.  Nothing is imported from the
pipeline modules, so agreement between the two is evidence for both.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgument

__all__ = [
    "ExampleParams",
    "Example1",
    "Example2",
    "Example3",
    "example1_oracle",
    "example2_oracle",
    "example3_oracle",
    "WALL_GRID",
]

WALL_GRID = (-0.75, -0.5001, -0.25, 0.5, 1.0)


def _poch(a, n: int):
    """Rising factorial for n >= 0, kept local so the oracles stay independent."""
    out = 1.0 + 0j if isinstance(a, complex) else 1.0
    for k in range(n):
        out *= a + k
    return out


@dataclass(frozen=True)
class ExampleParams:
    id: int
    c: float = 0.0
    t: float = 0.0
    lam: float = 0.5
    eta: float = 1.0
    d1: float = 0.25

    def __post_init__(self):
        if self.id not in (1, 2, 3):
            raise InvalidArgument(f"example id must be 1, 2 or 3, got {self.id}")
        if self.d1 == 0:
            raise InvalidArgument("d1 must be nonzero")
        if self.id == 3 and not self.lam > -1:
            raise InvalidArgument(f"lambda must exceed -1, got {self.lam}")
        for name in ("c", "t", "lam", "eta", "d1"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidArgument(f"{name} must be finite")


# ---------------------------------------------------------------- Example 1


@dataclass(frozen=True)
class Example1:
    """c_1 = c, c_{n+1} = 0, d_2 = 1/2, d_{n+2} = 1/4."""

    c: float
    d1: float = 0.25

    def c_seq(self, N: int) -> np.ndarray:
        out = np.zeros(N)
        out[0] = self.c
        return out

    def d_seq(self, N: int) -> np.ndarray:
        out = np.full(N, 0.25)
        out[0] = self.d1
        if N > 1:
            out[1] = 0.5
        return out

    def R(self, n: int) -> np.ndarray:
        """Coefficients of (1 + ic) z^n + (1 - ic), lowest degree first."""
        out = np.zeros(n + 1, dtype=complex)
        out[0] += 1 - 1j * self.c
        out[n] += 1 + 1j * self.c
        return out

    def Q(self, n: int) -> np.ndarray:
        """2 d_1 (z^n - 1)/(z - 1)."""
        return np.full(n, 2 * self.d1, dtype=complex) if n else np.zeros(1, dtype=complex)

    def nu(self, n: int) -> complex:
        """nu_n for n >= 1 is -2 d_1/(1 - ic); nu_{-n+1} for n >= 1 is 2 d_1/(1 + ic)."""
        if n >= 1:
            return -2 * self.d1 / (1 - 1j * self.c)
        return 2 * self.d1 / (1 + 1j * self.c)

    def gamma(self, n: int) -> complex:
        if n == 0:
            return 2 * self.d1 / (1 + 1j * self.c)
        return 4 * self.d1 / (1 + 1j * self.c)

    def a_hat(self, n: int) -> np.ndarray:
        """(1 + ic) z^{n-1}."""
        out = np.zeros(n, dtype=complex)
        out[n - 1] = 1 + 1j * self.c
        return out

    def mu_hat(self, n: int) -> complex:
        return 1.0 + 0j if n == 0 else 0j

    def zero_angles(self, n: int) -> np.ndarray:
        """Angles in (0, 2 pi) of the roots of z^n = -(1 - ic)/(1 + ic)."""
        target = -(1 - 1j * self.c) / (1 + 1j * self.c)
        phi = cmath.phase(target) % (2 * math.pi)
        return np.sort((phi + 2 * math.pi * np.arange(n)) / n % (2 * math.pi))

    def weights(self, n: int) -> np.ndarray:
        return np.full(n, 1.0 / n)

    def t_family(self, t: float, N: int) -> tuple[np.ndarray, np.ndarray]:
        """c_1(t) = -2t, c_{n+1}(t) = 0; d_2(t) = 1/2, then 1/4."""
        c = np.zeros(N + 1)
        c[0] = -2 * t
        d = np.full(N, 0.25)
        d[0] = 0.5
        return c, d


def example1_oracle(params: ExampleParams) -> Example1:
    if params.id != 1:
        raise InvalidArgument("example1_oracle needs id = 1")
    return Example1(params.c, params.d1)


# ---------------------------------------------------------------- Example 2


@dataclass(frozen=True)
class Example2:
    """The measure (1 - cos theta) d theta / (2 pi) with alpha_{n-1} = -1/(n+1)."""

    I: complex = 0.5
    J: float = 0.5

    @staticmethod
    def alpha(N: int) -> np.ndarray:
        """alpha_0..alpha_{N-1}."""
        return -1.0 / (np.arange(N) + 2.0)

    @staticmethod
    def rho(n: int, t: float) -> complex:
        s = (n + 1) * (n + 2) * t
        return -(1 + 1j * s) / (1 - 1j * s)

    @staticmethod
    def c(n: int, t: float) -> float:
        """c_{n+1}(t) = -2 (n + 1) t / (1 + n (n + 1)^2 (n + 2) t^2), n >= 0."""
        return -2 * (n + 1) * t / (1 + n * (n + 1) ** 2 * (n + 2) * t * t)

    @staticmethod
    def m(n: int, t: float) -> float:
        return n / (2 * (n + 1)) * (1 + (n + 1) ** 2 * (n + 2) ** 2 * t * t) / (1 + n * (n + 1) ** 2 * (n + 2) * t * t)

    @staticmethod
    def one_minus_m(n: int, t: float) -> float:
        return (n + 2) / (2 * (n + 1)) * (1 + n * n * (n + 1) ** 2 * t * t) / (1 + n * (n + 1) ** 2 * (n + 2) * t * t)

    @staticmethod
    def wall_partial_sums(N: int, t: float) -> np.ndarray:
        """(2/(1 + 4t^2)) sum_{n<=N} [1/((n+1)(n+2)) + (n+1)(n+2) t^2] for N = 1.. ."""
        n = np.arange(1, N + 1, dtype=float)
        # telescoped first part plus the closed-form sum of (n+1)(n+2)
        first = 0.5 - 1.0 / (n + 2)
        second = t * t * (n * (n * n + 6 * n + 11) / 3.0)
        return 2.0 / (1 + 4 * t * t) * (first + second)

    @staticmethod
    def sppcs(t: float) -> bool:
        """The tail chain is SPPCS except at t = 0."""
        return t != 0


def example2_oracle(params: ExampleParams) -> Example2:
    if params.id != 2:
        raise InvalidArgument("example2_oracle needs id = 2")
    return Example2()


# ---------------------------------------------------------------- Example 3


@dataclass(frozen=True)
class Example3:
    """c_n = eta/(lambda + n) with the hypergeometric chain, b = lambda + i eta."""

    lam: float
    eta: float
    d1: float = 0.25

    @property
    def b(self) -> complex:
        return complex(self.lam, self.eta)

    def c_seq(self, N: int) -> np.ndarray:
        n = np.arange(1, N + 1)
        return self.eta / (self.lam + n)

    def d_seq(self, N: int) -> np.ndarray:
        """d_1..d_N; d_{n+1} = n (2 lambda + n + 1) / (4 (lambda + n)(lambda + n + 1))."""
        n = np.arange(1, N, dtype=float)
        tail = 0.25 * n * (2 * self.lam + n + 1) / ((self.lam + n) * (self.lam + n + 1))
        return np.concatenate([[self.d1], tail])

    def m(self, n: int) -> float:
        return n / (2 * (self.lam + n + 1))

    def M1(self, n: int) -> float:
        """Maximal parameters of the tail chain, valid for lambda > -1/2."""
        return (2 * self.lam + n + 1) / (2 * (self.lam + n + 1))

    def _coeffs(self, n: int, shift: int) -> np.ndarray:
        """Power-series coefficients in z of the closed form with B = b + 1 + shift.

        2F1(-n, B; C; 1 - z) = ((C - B)_n/(C)_n) 2F1(-n, B; B - C - n + 1; z), and
        here C - B = conj(b) + 1 in both cases, so the z-series has no cancellation.
        """
        b = self.b
        B = b + 1 + shift
        C = b + b.conjugate() + 2 + shift
        lower = -b.conjugate() - n
        out = np.empty(n + 1, dtype=complex)
        term = 1 + 0j
        for k in range(n + 1):
            out[k] = term
            term *= (k - n) * (B + k) / ((lower + k) * (k + 1))
        return out * (_poch(b.conjugate() + 1, n) / _poch(C, n))

    def R_coeffs(self, n: int) -> np.ndarray:
        """((2 lambda + 2)_n / (lambda + 1)_n) 2F1(-n, b + 1; b + conj(b) + 2; 1 - z), lowest degree first."""
        return self._coeffs(n, 0) * (_poch(2 * self.lam + 2, n) / _poch(self.lam + 1, n))

    def S_hat_coeffs(self, n: int) -> np.ndarray:
        """((b + conj(b) + 3)_n / (b + 2)_n) 2F1(-n, b + 2; b + conj(b) + 3; 1 - z)."""
        b = self.b
        return self._coeffs(n, 1) * (_poch(b + b.conjugate() + 3, n) / _poch(b + 2, n))

    @staticmethod
    def _horner(coeffs, z):
        z = np.asarray(z, dtype=complex)
        out = np.zeros_like(z)
        for a in coeffs[::-1]:
            out = out * z + a
        return out

    def R(self, n: int, z):
        return self._horner(self.R_coeffs(n), z)

    def S_hat(self, n: int, z):
        return self._horner(self.S_hat_coeffs(n), z)

    def nu(self, n: int) -> complex:
        """nu_n = d_1 ((b + conj(b) + 2)/(b + 1)) (-b - 1)_n / (conj(b) + 1)_n, n >= 1."""
        b = self.b
        return self.d1 * (b + b.conjugate() + 2) / (b + 1) * _poch(-b - 1, n) / _poch(b.conjugate() + 1, n)

    def mu_hat(self, n: int) -> complex:
        """(-b - 1)_n / (conj(b) + 2)_n for n >= 0; negative n by conjugate symmetry."""
        b = self.b
        if n < 0:
            return self.mu_hat(-n).conjugate()
        return _poch(-b - 1, n) / _poch(b.conjugate() + 2, n)

    def alpha_hat(self, N: int) -> np.ndarray:
        """alpha_hat_0..alpha_hat_{N-1}, alpha_hat_{n-1} = -(b + 1)_n/(conj(b) + 2)_n."""
        b = self.b
        return self._ratio_products(b + 1, b.conjugate() + 2, N)

    def alpha_inverse(self, N: int) -> np.ndarray:
        """Coefficients of the measure divided by |zeta - 1|^2: b replaced by b - 1."""
        b = self.b
        return self._ratio_products(b, b.conjugate() + 1, N)

    @staticmethod
    def _ratio_products(top: complex, bottom: complex, N: int) -> np.ndarray:
        """-(top)_n/(bottom)_n for n = 1..N as a running product."""
        k = np.arange(N)
        return -np.cumprod((top + k) / (bottom + k))

    @property
    def I(self) -> complex:
        b = self.b
        return (b.conjugate() + 1) / (b + b.conjugate() + 2)

    @property
    def J(self) -> float | None:
        """|b + 1|^2 / ((2 lambda + 2)(2 lambda + 1)) when lambda > -1/2."""
        if self.lam <= -0.5:
            return None
        return abs(self.b + 1) ** 2 / ((2 * self.lam + 2) * (2 * self.lam + 1))

    def rho0(self, n: int) -> complex:
        """rho_n at t = 0: -(conj(b) + 1)_{n+1}/(b + 1)_{n+1}."""
        b = self.b
        return -_poch(b.conjugate() + 1, n + 1) / _poch(b + 1, n + 1)

    def density(self, theta):
        """Density of the measure in theta, normalised to total mass one."""
        lam, eta = self.lam, self.eta
        logC = (2 * lam + 2) * math.log(2) + 2 * _log_abs_gamma(complex(lam + 2, eta)) - math.log(2 * math.pi) - math.lgamma(2 * lam + 3)
        th = np.asarray(theta, dtype=float)
        return np.exp(logC + (math.pi - th) * eta + (2 * lam + 2) * np.log(np.sin(th / 2)))

    def wall_terms(self, N: int) -> np.ndarray:
        """(1)_n / (2 lambda + 3)_n for n = 1..N."""
        n = np.arange(1, N + 1)
        return np.exp(np.cumsum(np.log(n) - np.log(2 * self.lam + 2 + n)))

    def wall_converges(self) -> bool:
        """Terms decay like n^{-(2 lambda + 2)}, summable exactly when lambda > -1/2."""
        return self.lam > -0.5


def _log_abs_gamma(z: complex) -> float:
    """log |Gamma(z)| for Re z > 0 by the reflection-free Stirling series after shifting."""
    shift = 0.0
    while z.real < 10:
        shift -= math.log(abs(z))
        z += 1
    w = 1 / z
    series = (z - 0.5) * cmath.log(z) - z + 0.5 * math.log(2 * math.pi) + w / 12 - w ** 3 / 360 + w ** 5 / 1260 - w ** 7 / 1680
    return series.real + shift


def example3_oracle(params: ExampleParams) -> Example3:
    if params.id != 3:
        raise InvalidArgument("example3_oracle needs id = 3")
    return Example3(params.lam, params.eta, params.d1)
