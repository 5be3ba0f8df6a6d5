"""Compare pipeline output against the closed-form oracles of the worked examples."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import chainseq
from .measures import moment_table, quadrature_hat
from .recurrence import a_hat, generate_rq
from .errors import InvalidArgument
from .reference import Example1, Example2, Example3, ExampleParams
from .transforms import opuc_from_dg1, t_family
from .zeros import zero_levels

__all__ = ["Check", "verify_example", "WALL_HORIZON"]

WALL_HORIZON = 100_000


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    limit: float
    detail: str = ""

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.limit)


def _rel(a, b) -> float:
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    scale = max(float(np.max(np.abs(b))), 1e-300)
    return float(np.max(np.abs(a - b))) / scale


def _angle_gap(a, b) -> float:
    d = np.angle(np.exp(1j * (np.asarray(a) - np.asarray(b))))
    return float(np.max(np.abs(d)))


def _example1(p: ExampleParams, n: int, tol: float) -> list[Check]:
    ex = Example1(p.c, p.d1)
    pair = generate_rq(ex.c_seq(n + 1), ex.d_seq(n + 1), n)
    R = max(_rel(pair.R[k].coeffs, ex.R(k)) for k in range(1, n + 1))
    Q = max(_rel(pair.Q[k].coeffs, ex.Q(k)) for k in range(1, n + 1))
    A = max(_rel(a_hat(pair, k).coeffs, ex.a_hat(k)) for k in range(1, n + 1))
    G = max(abs(pair.gamma[k] - ex.gamma(k)) / abs(ex.gamma(k)) for k in range(0, n))
    table = moment_table(pair, n - 2) if n >= 2 else None
    nu = 0.0
    if table is not None:
        nu = max(abs(table.nu[k] - ex.nu(k)) / abs(ex.nu(k)) for k in table.nu.indices())
    levels = zero_levels(pair, n)
    ang = max(_angle_gap(z.angles, ex.zero_angles(z.level)) for z in levels)
    w = 0.0
    total = 0.0
    for z in levels:
        rule = quadrature_hat(pair, z)
        w = max(w, float(np.max(np.abs(rule.weights - ex.weights(z.level)))))
        total = max(total, abs(rule.total() - 1))
    return [
        Check("R_n coefficients", R, tol),
        Check("Q_n coefficients", Q, tol),
        Check("A_hat_n coefficients", A, tol),
        Check("gamma_n", G, tol),
        Check("nu_n", nu, tol),
        Check("zero angles", ang, tol),
        Check("weights 1/n", w, tol),
        Check("weight sum", total, tol),
    ]


def _example2(p: ExampleParams, n: int, tol: float) -> list[Check]:
    ex = Example2()
    t = p.t
    dg = t_family(ex.alpha(WALL_HORIZON + 1), ex.I, t, WALL_HORIZON)
    rho = max(abs(dg.rho.rho[k] - ex.rho(k, t)) for k in range(n + 1))
    c = max(abs(dg.c[k + 1] - ex.c(k, t)) / max(abs(ex.c(k, t)), 1.0) for k in range(n + 1))
    m = max(abs(dg.m[k] - ex.m(k, t)) / ex.m(k, t) for k in range(1, n + 1))
    wall = chainseq.wall_sppcs_test(dg.m.values)
    expect = chainseq.SPPCS if ex.sppcs(t) else chainseq.NOT_SPPCS
    oracle_sums = ex.wall_partial_sums(WALL_HORIZON, t)
    sums = _rel(wall.partial_sums[:WALL_HORIZON], oracle_sums)
    checks = [
        Check("rho_n(t)", rho, tol),
        Check("c_{n+1}(t)", c, tol),
        Check("m_n(t)", m, tol),
        Check("Wall partial sums", sums, 1e-8),
        Check("Wall verdict", 0.0 if wall.verdict == expect else 1.0, 0.5, f"verdict {wall.verdict}, expected {expect}"),
    ]
    if t == 0:
        checks.append(Check("Wall limit 1", abs(wall.partial_sums[WALL_HORIZON - 1] - 1), 1e-4))
    return checks


def _example3(p: ExampleParams, n: int, tol: float) -> list[Check]:
    ex = Example3(p.lam, p.eta, p.d1)
    pair = generate_rq(ex.c_seq(n + 1), ex.d_seq(n + 1), n + 1)
    rng = np.random.default_rng(20240601)
    z = np.exp(2j * np.pi * rng.random(20))
    R = max(_rel(pair.R[k](z), ex.R(k, z)) for k in range(1, n + 1))
    out = opuc_from_dg1(pair, n)
    alpha = _rel(out.alpha.alpha, ex.alpha_hat(n))
    m = float(np.max(np.abs(out.m - np.array([ex.m(k) for k in range(n + 1)]))))
    K = min(n - 1, 20)
    table = moment_table(pair, K)
    nu = _rel([table.nu[k] for k in range(1, K + 2)], [ex.nu(k) for k in range(1, K + 2)])
    mu = max(abs(table.mu_hat[k] - ex.mu_hat(k)) for k in range(-K, K + 1))
    d_tail = ex.d_seq(WALL_HORIZON + 2)[1:]
    wall = chainseq.wall_sppcs_test(chainseq.minimal_params(d_tail, WALL_HORIZON))
    expect = chainseq.NOT_SPPCS if ex.wall_converges() else chainseq.SPPCS
    return [
        Check("R_n at circle points", R, tol),
        Check("alpha_hat", alpha, tol),
        Check("m_n", m, tol),
        Check("nu_n", nu, tol),
        Check("mu_hat_n", mu, tol),
        Check("Wall verdict", 0.0 if wall.verdict == expect else 1.0, 0.5, f"verdict {wall.verdict}, expected {expect}"),
    ]


def verify_example(params: ExampleParams, n: int, tol: float = 1e-10) -> list[Check]:
    """Run every oracle-versus-pipeline comparison for one example."""
    if n < 1:
        raise InvalidArgument("n must be at least 1")
    runner = {1: _example1, 2: _example2, 3: _example3}[params.id]
    return runner(params, n, tol)
