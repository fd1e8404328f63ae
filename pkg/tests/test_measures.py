import numpy as np
import pytest
from hypothesis import given, settings

from threeboson import (
    ConsistencyError,
    EntanglementClass,
    ParamPoint,
    bipartite_concurrence,
    concurrence_closed,
    concurrence_wootters,
    hyperdeterminant,
    make_state,
    random_state,
    reduced_density_two,
    report,
    tau_ckw,
    tau_closed,
    tau_hyperdeterminant,
    to_qubit_expansion,
    wootters_spectrum,
)
from threeboson.measures import _clamp

from conftest import R2, R3, param_points

SQ6_SQ2 = np.sqrt(6) - np.sqrt(2)


def _brute_concurrence(rho):
    yy = np.kron([[0, -1j], [1j, 0]], [[0, -1j], [1j, 0]])
    ev = np.linalg.eigvals(rho @ yy @ rho.conj() @ yy)
    lam = np.sort(np.sqrt(np.clip(ev.real, 0, None)))[::-1]
    return max(0.0, lam[0] - lam[1:].sum())


def test_oracle_concurrence_examples(ghz, w_state, zero3):
    assert concurrence_wootters(ghz)[0] == pytest.approx(0, abs=1e-12)
    c, lam = concurrence_wootters(w_state)
    assert c == pytest.approx(2 / 3, abs=1e-12)
    assert lam == pytest.approx([2 / 3, 0, 0, 0], abs=1e-12)
    assert concurrence_wootters(zero3)[0] == pytest.approx(0, abs=1e-12)


def test_oracle_matches_nonhermitian_eigen_route():
    rng = np.random.default_rng(31)
    for _ in range(300):
        s = random_state(rng)
        assert concurrence_wootters(s)[0] == pytest.approx(_brute_concurrence(reduced_density_two(s)), abs=1e-6)


def test_wootters_spectrum_generic_rho():
    rng = np.random.default_rng(32)
    for _ in range(100):
        m = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        rho = m @ m.conj().T
        rho /= np.trace(rho).real
        lam = wootters_spectrum(rho)
        yy = np.kron([[0, -1j], [1j, 0]], [[0, -1j], [1j, 0]])
        ev = np.sort(np.linalg.eigvals(rho @ yy @ rho.conj() @ yy).real)[::-1]
        assert lam**2 == pytest.approx(ev, abs=1e-10)
        assert np.all(np.diff(lam) <= 0) and np.all(lam >= 0)


def test_closed_concurrence_formula_facts():
    assert concurrence_closed(ParamPoint(R2, 0, R2)) == 0
    assert concurrence_closed(ParamPoint(0, R3, 0)) == pytest.approx(SQ6_SQ2 / 3, abs=1e-12)
    s = np.sqrt(6) / 8
    assert concurrence_closed(ParamPoint(0, s, np.sqrt(1 - 3 * s * s))) == pytest.approx(np.sqrt(3) / 8, abs=1e-12)
    for s in np.linspace(0, R3, 50):
        r = np.sqrt(max(1 - 3 * s * s, 0))
        assert concurrence_closed(ParamPoint(r, s, 0)) == pytest.approx(SQ6_SQ2 * s * s, abs=1e-12)


def test_closed_concurrence_rejects_unnormalized():
    with pytest.raises(ValueError):
        concurrence_closed(ParamPoint(1, 1, 1))


def test_bipartite_concurrence(ghz, w_state, zero3):
    assert bipartite_concurrence(ghz) == pytest.approx(1)
    assert bipartite_concurrence(w_state) == pytest.approx(2 * np.sqrt(2) / 3)
    assert bipartite_concurrence(zero3) == pytest.approx(0, abs=1e-15)


def test_tau_examples(ghz, w_state):
    assert tau_closed(ParamPoint(R2, 0, R2)) == pytest.approx(1, abs=1e-12)
    assert tau_closed(ParamPoint(0, R3, 0)) == 0
    assert tau_closed(ParamPoint(0, 0.5, 0.5)) == pytest.approx(1, abs=1e-12)
    assert tau_hyperdeterminant(ghz) == pytest.approx(1, abs=1e-12)
    assert tau_hyperdeterminant(w_state) == pytest.approx(0, abs=1e-15)
    assert tau_ckw(ghz) == pytest.approx(1, abs=1e-12)
    assert tau_ckw(w_state) == pytest.approx(0, abs=1e-12)


def test_hyperdeterminant_of_canonical_form():
    p = ParamPoint(0.5, 0.4, np.sqrt(1 - 0.25 - 0.48), 0.7)
    hd = hyperdeterminant(to_qubit_expansion(p.to_state()))
    expected = p.r**2 * p.t**2 + 4 * p.t * (p.s * np.exp(1j * p.phi)) ** 3
    assert hd == pytest.approx(expected, abs=1e-14)


@settings(max_examples=300)
@given(param_points())
def test_tau_closed_matches_hyperdeterminant(p):
    assert tau_closed(p) == pytest.approx(tau_hyperdeterminant(p.to_state()), abs=1e-12)


def test_oracle_ckw_identity():
    rng = np.random.default_rng(33)
    for _ in range(2000):
        s = random_state(rng)
        assert abs(tau_ckw(s, clamp=False) - tau_hyperdeterminant(s)) <= 1e-9


def test_clamp_policy():
    assert _clamp(-1e-12, "x") == 0.0
    with pytest.raises(ConsistencyError):
        _clamp(-1e-6, "x")


def test_reports(ghz, w_state, zero3):
    r = report(ghz)
    assert r.entanglement_class is EntanglementClass.GHZ and r.flags == []
    assert r.tau_oracle == pytest.approx(1) and r.concurrence_oracle == pytest.approx(0, abs=1e-12)
    r = report(w_state)
    assert r.entanglement_class is EntanglementClass.W
    assert set(r.flags) == {"CLOSED_FORM_CONCURRENCE_MISMATCH", "CKW_CLOSED_VIOLATION"}
    assert r.concurrence_closed == pytest.approx(0.3450920601, abs=1e-9)
    assert r.ckw_residual_closed == pytest.approx(0.6507118289, abs=1e-9)
    assert r.ckw_residual_oracle <= 1e-12
    r = report(zero3)
    assert r.entanglement_class is EntanglementClass.UNENTANGLED and r.flags == []
    assert max(r.concurrence_oracle, r.tau_oracle, r.bipartite_concurrence) <= 1e-12


def test_closed_concurrence_disagrees_with_oracle_off_the_edges():
    # recorded fact: the two-radical expression and the oracle differ for generic points
    p = ParamPoint(0.358, np.sqrt((1 - 0.358**2 - 0.665**2) / 3), 0.665, 0.0)
    assert abs(concurrence_closed(p) - concurrence_wootters(p.to_state())[0]) > 1e-3
    # they agree on the s = 0 edge
    p = ParamPoint(0.6, 0, 0.8)
    assert concurrence_closed(p) == pytest.approx(concurrence_wootters(p.to_state())[0], abs=1e-12)
