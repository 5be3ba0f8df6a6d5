import numpy as np
import pytest

from popuc import chainseq
from popuc.chainseq import is_positive_chain, maximal_params, minimal_params, wall_from_terms, wall_sppcs_test
from popuc.errors import InvalidArgument, NotAChainSequence


def example3_tail(lam):
    return lambda n: 0.25 * n * (2 * lam + n + 1) / ((lam + n) * (lam + n + 1))


def test_minimal_params_constant_quarter():
    assert np.allclose(minimal_params([0.25] * 3, 3), [0, 0.25, 1 / 3, 3 / 8], rtol=0, atol=1e-16)


def test_minimal_params_example3_tail():
    m = minimal_params(example3_tail(1.0), 6)
    n = np.arange(7)
    assert np.allclose(m, n / (2 * (n + 2)), rtol=0, atol=1e-15)


def test_minimal_params_rejects_large_first_term():
    with pytest.raises(NotAChainSequence) as info:
        minimal_params([2.0], 1)
    assert info.value.index == 1


def test_is_positive_chain():
    assert is_positive_chain(lambda n: 0.25, 50)
    bad = is_positive_chain([0.5, 0.5, 0.5], 3)
    assert not bad and bad.failed_at == 2


def test_example1_tail_reconstructs():
    d = [0.5] + [0.25] * 19
    m = minimal_params(d, 20)
    assert np.allclose((1 - m[:-1]) * m[1:], d, rtol=0, atol=1e-15)


def test_maximal_params_constant_quarter():
    M = maximal_params(lambda n: 0.25, 3, tol=1e-9)
    assert M.converged
    assert np.allclose(M.values, 0.5, atol=1e-6)


def test_maximal_params_example3():
    M = maximal_params(example3_tail(1.0), 3)
    n = np.arange(4)
    assert M.converged
    assert np.allclose(M.values, (n + 3) / (2 * (n + 2)), atol=1e-8)


def test_maximal_params_collapse_for_example1_tail():
    # the tail 1/2, 1/4, 1/4, ... is SPPCS, so maximal and minimal coincide
    M = maximal_params(lambda n: 0.5 if n == 1 else 0.25, 0, tol=1e-10, cap=2 ** 16)
    assert M.values[0] < 1e-3


def test_maximal_params_finite_input_not_converged():
    M = maximal_params([0.25] * 40, 2, tol=1e-14)
    assert not M.converged and M.horizon == 40


def test_wall_telescoping_series_converges():
    n = np.arange(0, 100_001)
    m = n / (2 * (n + 1.0))
    res = wall_sppcs_test(m)
    assert res.verdict == chainseq.NOT_SPPCS
    assert abs(res.partial_sums[-1] - 1) < 1e-4


def test_wall_constant_half_diverges():
    m = np.full(1001, 0.5)
    m[0] = 0
    res = wall_sppcs_test(m)
    assert res.verdict == chainseq.SPPCS
    assert np.allclose(res.partial_sums, np.arange(1, 1001))


def test_wall_needs_ten_terms():
    with pytest.raises(InvalidArgument):
        wall_sppcs_test(np.array([0, 0.25, 0.3]))


def test_wall_from_terms_geometric():
    logt = np.log(0.5) * np.arange(1, 200)
    assert wall_from_terms(logt).verdict == chainseq.NOT_SPPCS


def test_analyze_bundles_results():
    out = chainseq.analyze(example3_tail(0.5), 4, wall_terms=20_000)
    assert out.sppcs == chainseq.NOT_SPPCS
    assert out.maximal_estimate.converged
    assert out.minimal.size == 5
