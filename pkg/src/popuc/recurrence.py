"""The coupled three-term recurrence for R_n, Q_n and the derived polynomials.

    R_{n+1} = [(1 + i c_{n+1}) z + (1 - i c_{n+1})] R_n - 4 d_{n+1} z R_{n-1}

with R_0 = 1, R_1 = (1 + i c_1) z + (1 - i c_1), Q_0 = 0, Q_1 = 2 d_1 and
the same recurrence for Q.  ``c`` and ``d`` are stored 0-based, so
``c[0] = c_1`` and ``d[0] = d_1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import chainseq
from .errors import ConsistencyError, InvalidArgument
from .polycore import ComplexPoly

__all__ = [
    "RecurrencePair",
    "generate_rq",
    "gamma_sequence",
    "determinant_un",
    "a_hat",
    "values_at_one",
    "minimal_from_values",
]


@dataclass(frozen=True)
class RecurrencePair:
    c: np.ndarray
    d: np.ndarray
    R: list = field(repr=False)
    Q: list = field(repr=False)
    gamma: np.ndarray = field(repr=False)
    leading: np.ndarray = field(repr=False)

    @property
    def N(self) -> int:
        return len(self.R) - 1

    def c_(self, n: int) -> float:
        return float(self.c[n - 1])

    def d_(self, n: int) -> float:
        return float(self.d[n - 1])

    def scale(self, n: int) -> float:
        """prod_{k<=n} sqrt(1 + c_k^2) = |r_{n,n}|."""
        return float(np.prod(np.sqrt(1.0 + self.c[:n] ** 2)))


def _linear(ck: float) -> ComplexPoly:
    return ComplexPoly([1 - 1j * ck, 1 + 1j * ck])


def generate_rq(c, d, N: int, check_chain: bool = True) -> RecurrencePair:
    """Build R_0..R_N and Q_0..Q_N.

    Needs c_1..c_N and d_1..d_N; with ``check_chain`` the tail d_2..d_N must
    pass the positive chain test.
    """
    c = np.asarray(c, dtype=float)
    d = np.asarray(d, dtype=float)
    if N < 1:
        raise InvalidArgument("generate_rq needs N >= 1")
    if c.size < N or d.size < N:
        raise InvalidArgument(f"need c_1..c_{N} and d_1..d_{N}; got {c.size} and {d.size}")
    if d[0] == 0:
        raise InvalidArgument("d_1 must be nonzero")
    if check_chain and N >= 2:
        chainseq.minimal_params(d[1:N], N - 1)

    R = [ComplexPoly([1.0]), _linear(c[0])]
    Q = [ComplexPoly([0.0]), ComplexPoly([2 * d[0]])]
    for n in range(1, N):
        lin = _linear(c[n])
        four_d = 4 * d[n]
        R.append(lin * R[n] - (R[n - 1] * four_d).mul_z())
        Q.append(lin * Q[n] - (Q[n - 1] * four_d).mul_z())

    avail = min(c.size, d.size) - 1
    gamma = gamma_sequence(c, d, avail)
    leading = np.cumprod(np.concatenate([[1.0 + 0j], 1 + 1j * c[:N]]))
    return RecurrencePair(c, d, R, Q, gamma, leading)


def gamma_sequence(c, d, N: int) -> np.ndarray:
    """gamma_0 = 2 d_1 / (1 + i c_1), gamma_n = 4 d_{n+1} gamma_{n-1} / (1 + i c_{n+1})."""
    c = np.asarray(c, dtype=float)
    d = np.asarray(d, dtype=float)
    if d[0] == 0:
        raise InvalidArgument("d_1 must be nonzero")
    if c.size < N + 1 or d.size < N + 1:
        raise InvalidArgument(f"gamma_{N} needs c and d through index {N + 1}")
    g = np.empty(N + 1, dtype=complex)
    g[0] = 2 * d[0] / (1 + 1j * c[0])
    for n in range(1, N + 1):
        g[n] = 4 * d[n] * g[n - 1] / (1 + 1j * c[n])
    return g


def gamma_closed_form(c, d, n: int) -> complex:
    """gamma_{n-1} = 2^{2n-1} d_1 ... d_n / r_{n,n}."""
    c = np.asarray(c, dtype=float)
    d = np.asarray(d, dtype=float)
    r_nn = np.prod(1 + 1j * c[:n])
    return complex(2.0 ** (2 * n - 1) * np.prod(d[:n]) / r_nn)


def determinant_un(pair: RecurrencePair, n: int) -> ComplexPoly:
    """U_n = Q_n R_{n-1} - Q_{n-1} R_n, which collapses to 2^{2n-1} d_1..d_n z^{n-1}."""
    if not 1 <= n <= pair.N:
        raise InvalidArgument(f"U_n needs 1 <= n <= {pair.N}")
    return pair.Q[n] * pair.R[n - 1] - pair.Q[n - 1] * pair.R[n]


def a_hat(pair: RecurrencePair, n: int, rtol: float = 1e-11) -> ComplexPoly:
    """(1 + i c_1)/(2z) [R_n + (1 - i c_1)/(2 d_1) (z - 1) Q_n], degree n - 1."""
    if not 1 <= n <= pair.N:
        raise InvalidArgument(f"a_hat needs 1 <= n <= {pair.N}")
    c1, d1 = pair.c[0], pair.d[0]
    zm1 = ComplexPoly([-1.0, 1.0])
    bracket = pair.R[n] + (zm1 * pair.Q[n]) * ((1 - 1j * c1) / (2 * d1))
    coeffs = bracket.coeffs
    scale = float(np.max(np.abs(coeffs)))
    if abs(coeffs[0]) > rtol * scale:
        raise ConsistencyError(f"a_hat({n}): constant term {coeffs[0]!r} does not vanish")
    return ComplexPoly(coeffs[1:] * ((1 + 1j * c1) / 2))


def values_at_one(pair: RecurrencePair) -> np.ndarray:
    """R_n(1) for n = 0..N, from v_{n+1} = 2 v_n - 4 d_{n+1} v_{n-1}.

    At z = 1 the recurrence is real, which avoids summing large coefficients.
    """
    v = np.empty(pair.N + 1)
    v[0] = 1.0
    v[1] = 2.0
    for n in range(1, pair.N):
        v[n + 1] = 2.0 * v[n] - 4.0 * pair.d[n] * v[n - 1]
    return v


def minimal_from_values(pair: RecurrencePair) -> np.ndarray:
    """m_n = 1 - R_{n+1}(1) / (2 R_n(1)), n = 0..N-1."""
    v = values_at_one(pair)
    return 1.0 - v[1:] / (2.0 * v[:-1])
