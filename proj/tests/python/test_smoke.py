import numpy as np
import pytest

import ia3


def test_feasibility_verdicts():
    assert ia3.check_feasibility(ia3.NetworkConfig(16, 8, 2, 3)) == {
        "feasible": True, "method": "eigen", "d_max": 3, "eta": 18}
    assert ia3.check_feasibility(ia3.NetworkConfig(8, 4, 3, 1))["method"] == "nullspace"
    assert ia3.orthogonal_dof(8, 4, 3) == 8


def test_motivating_trial():
    r = ia3.run_trial(ia3.NetworkConfig(16, 8, 2, 3), seed=1)
    assert r["per_bs_interference_dim"] == [9, 9, 9]
    assert r["eta_achieved"] == 18
    assert r["decodable"]
    assert max(r["per_bs_ici_leakage"] + r["per_user_iui_leakage"]) <= 1e-8


def test_report_matches_cli_shape():
    rep = ia3.report(ia3.NetworkConfig(8, 4, 3, 1), seed=2)
    assert rep["eta_achieved"] == 9
    assert rep["method"] == "nullspace"


def test_channels_round_trip():
    cfg = ia3.NetworkConfig(16, 8, 2, 3)
    ch = ia3.generate_channels(cfg, 7)
    h = ch.h(1, 2, 1)
    assert h.shape == (16, 8) and h.dtype == np.complex128
    back = ia3.ChannelSet.from_json(ch.to_json())
    np.testing.assert_array_equal(back.h(3, 3, 2), ch.h(3, 3, 2))
    assert ia3.run_trial_on(back)["eta_achieved"] == 18


def test_precoders_unit_columns():
    ch = ia3.generate_channels(ia3.NetworkConfig(16, 8, 2, 3), 3)
    sol = ia3.design_precoders(ch)
    assert sol["method"] == "eigen"
    assert len(sol["W"]) == 6
    for w in sol["W"]:
        np.testing.assert_allclose(np.linalg.norm(w, axis=0), 1.0, atol=1e-12)


def test_numerics_against_numpy():
    rng = np.random.default_rng(0)
    a = (rng.standard_normal((12, 4)) + 1j * rng.standard_normal((12, 4))) @ (
        rng.standard_normal((4, 9)) + 1j * rng.standard_normal((4, 9)))
    assert ia3.numerical_rank(a) == np.linalg.matrix_rank(a) == 4
    n = ia3.right_null_basis(a)
    assert n.shape == (9, 5)
    assert np.linalg.norm(a @ n) <= 1e-10 * np.linalg.norm(a)
    u = ia3.left_null_basis(a)
    assert np.linalg.norm(u.conj().T @ a) <= 1e-10 * np.linalg.norm(a)


def test_sweep_and_rank_distribution():
    rows = ia3.dof_sweep(5, 32)
    assert [r["M"] for r in rows if r["ia_dof"] < r["orthogonal_dof"]] == [7, 13, 19]
    h = ia3.rank_distribution(ia3.NetworkConfig(16, 8, 2, 3), trials=50, base_seed=1)
    assert h["failed_trials"] == 0
    assert all(c == {3: 50} for c in h["counts"].values())


def test_sum_rate_slope():
    snr = [30.0, 40.0, 50.0]
    rates = ia3.sum_rate(ia3.NetworkConfig(16, 8, 2, 3), 1, snr)
    assert abs(ia3.fit_slope(snr, rates) - 18) < 0.05 * 18


def test_errors_raise():
    with pytest.raises(ia3.Error):
        ia3.run_trial(ia3.NetworkConfig(16, 8, 2, 4), seed=1)
    with pytest.raises(ValueError):
        ia3.generate_channels(ia3.NetworkConfig(16, 8, 2, 3), 1).h(4, 1, 1)
