import numpy as np
import pytest

from popuc.errors import (
    InvalidArgument,
    JNonexistence,
    NotAChainSequence,
    VerblunskyBound,
)
from popuc.polycore import star
from popuc.recurrence import generate_rq
from popuc.reference import Example2, Example3
from popuc.transforms import (
    VerblunskySeq,
    dg1_from_opuc,
    dg_symmetric_coeffs,
    divergence_series,
    opuc_from_dg1,
    opuc_tilde_from_dg2,
    popuc_linkage_residual,
    rho_tau_sequence,
    szego_advance,
    szego_polys,
    t_family,
    weight_transform_forward,
    weight_transform_inverse,
)

ALPHA = [0.3 + 0.1j, -0.2, 0.5j, 0.1 - 0.4j]


def test_verblunsky_bound():
    with pytest.raises(VerblunskyBound):
        VerblunskySeq([0.1, 1.0])
    seq = VerblunskySeq([0.2, -0.1])
    assert seq[-1] == -1
    assert seq.is_real()
    with pytest.raises(VerblunskyBound):
        dg1_from_opuc(lambda n: 2.0, -1, 3)


def test_szego_polys_match_recurrence():
    polys = szego_polys(ALPHA, 4)
    for n in range(4):
        expected = polys[n].mul_z() - star(polys[n], n) * np.conj(ALPHA[n])
        assert np.allclose(polys[n + 1].coeffs, expected.coeffs, atol=1e-15)
        assert polys[n + 1](0) == pytest.approx(-np.conj(ALPHA[n]))
    with pytest.raises(VerblunskyBound):
        szego_advance(polys[0], 1.0)


def test_rho_tau_identities():
    rt = rho_tau_sequence(ALPHA, -1, 4)
    assert np.allclose(np.abs(rt.rho.values), 1, atol=1e-15)
    assert rt.identity_residual < 1e-15 and rt.tau_recurrence_residual < 1e-15
    for n in range(1, 5):
        assert rt.tau[n + 1] == -rt.rho[n]
    with pytest.raises(InvalidArgument):
        rho_tau_sequence(ALPHA, 1, 4)
    with pytest.raises(InvalidArgument):
        rho_tau_sequence(ALPHA, 0.5, 4)


def test_dg1_frozen():
    # independent 50-digit evaluation of the same formulas
    out = dg1_from_opuc(ALPHA, -1, 4)
    assert np.allclose(out.c.values, [0.0, 0.07692307692307693, 0.03812316715542523, 0.43709043250327656,
                                      -0.40561754250114396], atol=1e-15)
    assert np.allclose(out.d.values, [0.6538461538461539, 0.1390706068125423, 0.3968341513473209,
                                      0.1375482551845124], atol=1e-15)
    assert np.allclose(out.m.values, [0, 0.6538461538461539, 0.40175953079178883, 0.6633355176933159,
                                      0.4085618246453838], atol=1e-15)
    assert np.allclose(out.rho.rho.values, [-1, -0.9882352941176471 + 0.15294117647058825j,
                                            -0.9737226277372263 + 0.22773722627737228j,
                                            -0.4941960978019264 + 0.869350456902939j,
                                            -0.9601642020564025 + 0.27943640616317683j], atol=1e-15)


def test_real_alpha_at_minus_one_gives_zero_c():
    out = dg1_from_opuc(np.linspace(-0.8, 0.8, 30), -1, 29)
    assert np.all(out.c.values == 0)


@pytest.mark.parametrize("rho0", [-1, np.exp(2j), 1j])
def test_round_trip_well_conditioned(rho0):
    rng = np.random.default_rng(7)
    alpha = 0.3 * rng.random(12) * np.exp(2j * np.pi * rng.random(12))
    data = dg1_from_opuc(alpha, rho0, 12)
    pair = data.pair()
    back = opuc_from_dg1(pair, 12)
    assert np.max(np.abs(back.alpha.alpha - alpha)) < 1e-12
    assert np.max(np.abs(back.m - data.m.values)) < 1e-12
    for n in range(12):
        assert popuc_linkage_residual(pair, back, n) < 1e-12
    assert back.star_residual < 1e-12


def test_opuc_from_dg1_example3():
    ex = Example3(0.5, 1.0)
    pair = generate_rq(ex.c_seq(12), ex.d_seq(12), 12)
    out = opuc_from_dg1(pair, 4)
    expected = [-0.3793103448275862 - 0.5517241379310345j, 0.02797657774886142 - 0.494469746258946j,
                0.20557235255845996 - 0.3326878181331088j, 0.2626950897470244 - 0.1870595889624555j]
    assert np.allclose(out.alpha.alpha, expected, atol=1e-14)
    assert np.allclose(out.m, [ex.m(k) for k in range(5)], atol=1e-14)
    with pytest.raises(InvalidArgument):
        opuc_from_dg1(pair, 12)


def test_opuc_tilde_szego_recurrence_and_mass():
    ex = Example3(0.5, 1.0, d1=0.2)
    pair = generate_rq(ex.c_seq(10), ex.d_seq(10), 10)
    out = opuc_tilde_from_dg2(pair, 8, chain=ex.d_seq(4000))
    for n in range(8):
        S = out.polys[n]
        nxt = S.mul_z() - star(S, n) * np.conj(out.alpha[n])
        assert np.allclose(out.polys[n + 1].coeffs, nxt.coeffs, atol=1e-12)
    assert 0 < out.M0 < 1


def test_opuc_tilde_needs_chain():
    pair = generate_rq([0.0] * 4, [1.5, 0.25, 0.25, 0.25], 4)
    with pytest.raises(NotAChainSequence):
        opuc_tilde_from_dg2(pair, 3)


@pytest.mark.parametrize("t", [0.0, 0.5, 1.0, -2.0])
def test_t_family_example2_closed_forms(t):
    ex = Example2()
    out = t_family(ex.alpha(40), ex.I, t, 40)
    for n in range(40):
        assert out.c[n + 1] == pytest.approx(ex.c(n, t), abs=1e-13)
        assert out.rho.rho[n] == pytest.approx(ex.rho(n, t), abs=1e-12)
    for n in range(1, 40):
        assert out.m[n] == pytest.approx(ex.m(n, t), rel=1e-12)


def test_t_family_rejects_bad_I():
    with pytest.raises(InvalidArgument):
        t_family([0.1, 0.2], 0.6, 0.0, 2)


def test_forward_weight_transform_lebesgue():
    out = weight_transform_forward(np.zeros(31), 30)
    assert np.max(np.abs(out.alpha + 1 / (np.arange(30) + 2))) < 1e-15


@pytest.mark.parametrize("lam, eta", [(0.5, 1.0), (1.0, -2.0), (0.2, 0.3)])
def test_weight_transforms_example3(lam, eta):
    ex = Example3(lam, eta)
    fwd = weight_transform_forward(ex.alpha_inverse(31), 30)
    assert np.max(np.abs(fwd.alpha - ex.alpha_hat(30))) < 1e-13
    inv = weight_transform_inverse(ex.alpha_hat(100_001), 0.0, 20, I=ex.I)
    assert np.max(np.abs(inv.alpha - ex.alpha_inverse(20))) < 1e-9


def test_inverse_example2_recovers_lebesgue():
    alpha = lambda n: -1.0 / (n + 2)
    out = weight_transform_inverse(alpha, 0.0, 30)
    assert np.max(np.abs(out.alpha)) < 1e-12


def test_inverse_refuses_when_J_missing():
    with pytest.raises(JNonexistence) as info:
        weight_transform_inverse(np.zeros(2000), 0.0, 5)
    assert info.value.verdict == "sppcs"


def test_inverse_needs_I_for_complex_alpha():
    with pytest.raises(InvalidArgument):
        weight_transform_inverse([0.1j] * 50, 0.0, 5)
    with pytest.raises(InvalidArgument):
        weight_transform_inverse([0.1] * 50, 1.0, 5)


def test_dg_symmetric_coeffs():
    alpha = [0.2, -0.5, 0.1, 0.3]
    d1, d2 = dg_symmetric_coeffs(alpha, 3)
    ext = [-1] + alpha
    for n in range(1, 4):
        assert d1[n + 1] == pytest.approx((1 - ext[n - 1]) * (1 + ext[n]) / 4)
        assert d2[n + 1] == pytest.approx((1 + ext[n]) * (1 - ext[n + 1]) / 4)
    with pytest.raises(InvalidArgument):
        dg_symmetric_coeffs([0.1j, 0.2], 1)


def test_divergence_series():
    assert divergence_series(np.zeros(100_000), 100_000).verdict == "diverges"
    assert divergence_series(np.zeros(100_000), 100_000).j_exists is False
    ex2 = -1.0 / (np.arange(100_000) + 2)
    res = divergence_series(ex2, 100_000)
    assert res.verdict == "converges" and res.j_exists
    # the products telescope to 1/((n+1)(n+2)) times 2, so the sum tends to 1
    assert res.partial_sums[-1] == pytest.approx(1.0, abs=1e-4)
