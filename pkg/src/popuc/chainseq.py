"""Positive chain sequences: minimal/maximal parameters and Wall's test.

Sequences ``d`` are indexed from 1 as in the literature; a Python sequence
``d`` is read as ``d[0] = d_1``.  Anything callable is treated as ``k -> d_k``
which lets maximal-parameter estimation run past a finite prefix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence, Union

import numpy as np

from .errors import InvalidArgument, NotAChainSequence

ChainInput = Union[Sequence[float], np.ndarray, Callable[[int], float]]

SPPCS = "sppcs"
NOT_SPPCS = "not_sppcs"
INCONCLUSIVE = "inconclusive"

DEFAULT_TOL = 1e-10
HORIZON_CAP = 2 ** 20


def _getter(d: ChainInput):
    if callable(d):
        return d, None
    arr = np.asarray(d, dtype=float)
    return (lambda k: float(arr[k - 1])), arr.size


def minimal_params(d: ChainInput, N: int) -> np.ndarray:
    """m_0 = 0, m_n = d_n / (1 - m_{n-1}) for n = 1..N.

    Raises NotAChainSequence at the first n where m_n leaves (0, 1).
    """
    if N < 1:
        raise InvalidArgument("minimal_params needs N >= 1")
    get, size = _getter(d)
    if size is not None and size < N:
        raise InvalidArgument(f"need d_1..d_{N}, got {size} terms")
    m = np.zeros(N + 1)
    for n in range(1, N + 1):
        dn = get(n)
        if not dn > 0:
            raise NotAChainSequence(n, dn, f"d_{n} = {dn!r} is not positive")
        mn = dn / (1.0 - m[n - 1])
        if not 0.0 < mn < 1.0:
            raise NotAChainSequence(n, mn)
        m[n] = mn
    return m


class ChainCheck(NamedTuple):
    ok: bool
    failed_at: int | None = None
    reason: str | None = None

    def __bool__(self):
        return self.ok


def is_positive_chain(d: ChainInput, N: int) -> ChainCheck:
    try:
        minimal_params(d, N)
    except NotAChainSequence as exc:
        return ChainCheck(False, exc.index, str(exc))
    return ChainCheck(True)


@dataclass(frozen=True)
class MaximalParams:
    values: np.ndarray
    converged: bool
    horizon: int
    raw: np.ndarray = field(repr=False)

    def __getitem__(self, n):
        return self.values[n]


def _backward(get, H: int, N: int):
    """Backward sweep M_{k-1} = 1 - d_k / M_k from M_H = 1; None if it leaves (0, 1]."""
    M = 1.0
    out = np.empty(N + 1)
    for k in range(H, 0, -1):
        M = 1.0 - get(k) / M
        if not 0.0 < M <= 1.0:
            return None
        if k - 1 <= N:
            out[k - 1] = M
    return out


def _aitken(e0, e1, e2):
    d1 = e1 - e0
    d2 = e2 - e1
    den = d2 - d1
    with np.errstate(divide="ignore", invalid="ignore"):
        acc = e2 - d2 * d2 / den
    return np.where(np.abs(den) > 1e-300, acc, e2)


def _iterated_aitken(seq, depth=3):
    """Deepest available entry of the repeated delta-squared table."""
    level = list(seq)
    for _ in range(depth):
        if len(level) < 3:
            break
        level = [_aitken(*level[i:i + 3]) for i in range(len(level) - 2)]
    return level[-1]


def maximal_params(d: ChainInput, N: int, tol: float = DEFAULT_TOL, cap: int = HORIZON_CAP) -> MaximalParams:
    """Estimate M_0..M_N by backward recursion from a doubling horizon.

    The horizon starts at 4N and doubles.  Truncation error decays only like
    the tail of Wall's series, so successive horizon estimates are also
    passed through repeated Aitken delta-squared steps; whichever of the raw
    or the accelerated sequence first moves by less than ``tol`` is returned.  A
    finite ``d`` caps the horizon at its length.
    """
    if N < 0:
        raise InvalidArgument("maximal_params needs N >= 0")
    get, size = _getter(d)
    if size is not None:
        cap = min(cap, size)
    H = max(4 * N, 8)
    if H > cap:
        H = cap
    if H <= N:
        raise InvalidArgument(f"horizon {H} must exceed N={N}")

    raws = []
    best_prev = None
    last = None
    while True:
        est = _backward(get, H, N)
        if est is not None:
            raws.append(est)
            if len(raws) >= 2 and np.max(np.abs(raws[-1] - raws[-2])) < tol:
                last = MaximalParams(raws[-1], True, H, raws[-1])
                break
            best = _iterated_aitken(raws)
            if best_prev is not None and np.max(np.abs(best - best_prev)) < tol:
                last = MaximalParams(best, True, H, raws[-1])
                break
            best_prev = best
        if H >= cap:
            break
        H = min(2 * H, cap)
    if last is None:
        if not raws:
            raise NotAChainSequence(0, float("nan"), "backward recursion never stayed in (0, 1]")
        last = MaximalParams(_iterated_aitken(raws), False, H, raws[-1])
    return last


@dataclass(frozen=True)
class WallResult:
    verdict: str
    partial_sums: np.ndarray
    log_partial_sums: np.ndarray
    tail_exponent: float

    @property
    def is_sppcs(self):
        return self.verdict == SPPCS


def _log_terms_from_params(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=float)[1:]
    if np.any(m <= 0) or np.any(m >= 1):
        raise InvalidArgument("Wall terms need 0 < m_n < 1")
    return np.cumsum(np.log(m) - np.log1p(-m))


def _log_cumsum(logt: np.ndarray) -> np.ndarray:
    return np.logaddexp.accumulate(logt)


def _tail_exponent(logt: np.ndarray) -> tuple[float, float]:
    """Decay exponent p of terms ~ n**-p over the last two octaves, extrapolated.

    Returns (p, spread) where spread measures how much the local exponent
    still moves; geometric decay shows up as a large and growing p.
    """
    N = logt.size

    def local(lo, hi):
        return -(logt[hi - 1] - logt[lo - 1]) / (math.log(hi) - math.log(lo))

    p_last = local(N // 2, N)
    p_prev = local(N // 4, N // 2)
    p_hat = p_last + (p_last - p_prev)
    return p_hat, abs(p_last - p_prev)


def wall_sppcs_test(m: np.ndarray, N: int | None = None, band: float = 1e-5) -> WallResult:
    """Partial sums of sum_n prod_{k<=n} m_k / (1 - m_k) with a divergence verdict.

    ``m`` is a minimal parameter sequence with m[0] = m_0 = 0.  Terms are
    accumulated in log space.  The verdict reads the decay exponent of the
    terms over the last octaves: terms that do not decay, or decay like
    n**-p with p <= 1, mean divergence (sppcs); p > 1 or geometric decay
    means convergence (not_sppcs).  Within ``band`` of p = 1 the answer is
    inconclusive.
    """
    m = np.asarray(m, dtype=float)
    if N is None:
        N = m.size - 1
    if N < 10:
        raise InvalidArgument("wall_sppcs_test needs N >= 10")
    logt = _log_terms_from_params(m[: N + 1])
    return _wall_verdict(logt, band)


def _wall_verdict(logt: np.ndarray, band: float) -> WallResult:
    logS = _log_cumsum(logt)
    with np.errstate(over="ignore"):
        S = np.exp(logS)
    p_hat, spread = _tail_exponent(logt)
    tail = logt[logt.size // 2:]
    if np.all(np.diff(tail) >= 0):
        verdict = SPPCS
    elif p_hat > 1 + max(band, spread):
        verdict = NOT_SPPCS
    elif p_hat < 1 - max(band, spread):
        verdict = SPPCS
    else:
        verdict = INCONCLUSIVE
    return WallResult(verdict, S, logS, p_hat)


def wall_from_terms(log_terms: np.ndarray, band: float = 1e-5) -> WallResult:
    """Same verdict machinery for a series given directly by its log terms."""
    log_terms = np.asarray(log_terms, dtype=float)
    if log_terms.size < 10:
        raise InvalidArgument("need at least 10 terms")
    return _wall_verdict(log_terms, band)


@dataclass(frozen=True)
class ChainAnalysis:
    d: np.ndarray
    minimal: np.ndarray
    maximal_estimate: MaximalParams | None
    sppcs: str
    wall_partial_sums: np.ndarray


def analyze(d: ChainInput, N: int, wall_terms: int | None = None, tol: float = DEFAULT_TOL) -> ChainAnalysis:
    """Minimal parameters through N, maximal estimate and Wall verdict in one pass."""
    get, size = _getter(d)
    W = wall_terms or (size if size is not None else max(N, 10_000))
    W = max(W, N)
    m_long = minimal_params(d, W)
    wall = wall_sppcs_test(m_long)
    try:
        M = maximal_params(d, N, tol=tol)
    except NotAChainSequence:
        M = None
    dv = np.array([get(k) for k in range(1, N + 1)])
    return ChainAnalysis(dv, m_long[: N + 1], M, wall.verdict, wall.partial_sums)
