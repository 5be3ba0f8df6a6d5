import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from popuc.chainseq import is_positive_chain, minimal_params
from popuc.measures import moment_table, nu_table, quadrature_hat
from popuc.polycore import ComplexPoly, pochhammer, star
from popuc.recurrence import generate_rq
from popuc.transforms import dg1_from_opuc, opuc_from_dg1, weight_transform_forward
from popuc.zeros import find_zeros, interlaces, zero_levels

finite = dict(allow_nan=False, allow_infinity=False)
reals = st.floats(-3, 3, **finite)
params = st.floats(0.05, 0.95, **finite)


@st.composite
def chain_data(draw, max_n=10):
    """Real c and a positive chain d_1.. built from parameters g_0 = 0, g_n in (0, 1)."""
    n = draw(st.integers(2, max_n))
    c = np.array(draw(st.lists(reals, min_size=n + 1, max_size=n + 1)))
    g = np.concatenate([[0.0], draw(st.lists(params, min_size=n + 1, max_size=n + 1))])
    d = (1 - g[:-1]) * g[1:]
    return n, c, d, g


@st.composite
def small_alpha(draw, max_n=12, radius=0.5):
    n = draw(st.integers(1, max_n))
    r = draw(st.lists(st.floats(0, radius, **finite), min_size=n, max_size=n))
    phi = draw(st.lists(st.floats(0, 2 * np.pi, **finite), min_size=n, max_size=n))
    return np.array(r) * np.exp(1j * np.array(phi))


@given(st.lists(st.complex_numbers(max_magnitude=5, **finite), min_size=1, max_size=8))
def test_star_is_an_involution(coeffs):
    p = ComplexPoly(coeffs)
    n = len(coeffs) - 1
    assert np.allclose(star(star(p, n), n).coeffs, p.coeffs)


@given(st.floats(-5, 5, **finite), st.integers(0, 12))
def test_pochhammer_step(a, n):
    lhs = pochhammer(a, n + 1)
    rhs = pochhammer(a, n) * (a + n)
    assert np.isclose(lhs, rhs, rtol=1e-12, atol=1e-300)


@given(chain_data())
def test_minimal_parameters_lie_below_any_parameters(data):
    n, _, d, g = data
    m = minimal_params(d, n)
    assert m[0] == 0
    assert np.all(m <= g[: n + 1] + 1e-12)
    assert is_positive_chain(d, n)


@settings(max_examples=50, deadline=None)
@given(chain_data())
def test_recurrence_polynomials_are_self_inversive(data):
    n, c, d, _ = data
    pair = generate_rq(c, d, n)
    for k in range(1, n + 1):
        R = pair.R[k]
        assert np.allclose(star(R, k).coeffs, R.coeffs, atol=1e-10 * np.max(np.abs(R.coeffs)))


@settings(max_examples=40, deadline=None)
@given(chain_data(max_n=8))
def test_zeros_interlace_and_weights_sum_to_one(data):
    n, c, d, _ = data
    pair = generate_rq(c, d, n)
    levels = zero_levels(pair)
    for prev, cur in zip(levels, levels[1:]):
        assert interlaces(prev, cur)
    rule = quadrature_hat(pair, levels[-1])
    assert np.all(rule.weights > 0)
    assert abs(rule.total() - 1) < 1e-10


@settings(max_examples=40, deadline=None)
@given(chain_data(max_n=8))
def test_mu_hat_is_hermitian(data):
    n, c, d, _ = data
    table = moment_table(generate_rq(c, d, n), n - 2)
    for k in range(1, n - 1):
        assert abs(table.mu_hat[-k] - np.conj(table.mu_hat[k])) < 1e-10
    assert table.mu_hat[0] == 1


@settings(max_examples=40, deadline=None)
@given(chain_data(max_n=8))
def test_nu_zero_equals_first_gamma(data):
    n, c, d, _ = data
    pair = generate_rq(c, d, n)
    assert abs(nu_table(pair, n - 2).nu[0] - pair.gamma[0]) < 1e-12 * abs(pair.gamma[0])


@settings(max_examples=50, deadline=None)
@given(small_alpha(), st.floats(0.2, 2 * np.pi - 0.2, **finite), st.floats(0.1, 2.0, **finite))
def test_round_trip_small_alpha(alpha, phase, d1):
    n = alpha.size
    data = dg1_from_opuc(alpha, np.exp(1j * phase), n)
    assert np.all((data.m.values[1:] > 0) & (data.m.values[1:] < 1))
    back = opuc_from_dg1(data.pair(d1), n)
    assert np.max(np.abs(back.alpha.alpha - alpha)) < 1e-10


@settings(max_examples=50, deadline=None)
@given(small_alpha(radius=0.9))
def test_forward_weight_transform_stays_in_disk(alpha):
    n = alpha.size - 1
    if n < 1:
        return
    out = weight_transform_forward(alpha, n)
    assert np.all(np.abs(out.alpha) < 1)


@settings(max_examples=30, deadline=None)
@given(chain_data(max_n=6))
def test_top_level_zero_count(data):
    n, c, d, _ = data
    z = find_zeros(generate_rq(c, d, n), n)
    assert len(z) == n
    assert np.all(np.diff(z.angles) > 0)
