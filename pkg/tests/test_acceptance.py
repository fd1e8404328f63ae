"""One check per acceptance criterion; each records a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the lines are repeated in an
"acceptance criteria" section at the end of the session.
"""

import numpy as np
import pytest
from scipy.optimize import minimize_scalar

from threeboson import (
    ParamPoint,
    SqueezingSlice,
    apply_mode_transform,
    canonicalize,
    concurrence_closed,
    concurrence_wootters,
    hyperdeterminant,
    mean_spin,
    random_mode_transform,
    random_state,
    reduced_density_two,
    reduced_density_two_modes,
    tau_ckw,
    tau_closed,
    tau_hyperdeterminant,
    to_qubit_expansion,
    transverse_variance_oracle,
    variance_at_theta,
    wootters_spectrum,
    xi_closed,
    xi_direct,
    xi_special,
)
from threeboson.sweep import run_audit, write_figure

from conftest import ACCEPTANCE, random_point

SQ6_SQ2 = np.sqrt(6) - np.sqrt(2)
S_MAX = 1 / np.sqrt(3)


def verdict(number, title, checks):
    """checks: list of (label, measured, ok)."""
    ok = all(c[2] for c in checks)
    detail = "; ".join(f"{label} {measured}" for label, measured, _ in checks)
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} [{detail}]"
    ACCEPTANCE.append(line)
    print(line)
    failed = [c[0] for c in checks if not c[2]]
    assert ok, f"criterion {number} failed: {', '.join(failed)}"


def _fmt(x):
    return f"{x:.3g}"


def _slice_r0(s):
    return ParamPoint(0.0, s, np.sqrt(max(1 - 3 * s * s, 0.0)), 0.0)


def _slice_t0(s):
    return ParamPoint(np.sqrt(max(1 - 3 * s * s, 0.0)), s, 0.0, 0.0)


def _refine_max(f, lo, hi):
    res = minimize_scalar(lambda s: -f(s), bounds=(lo, hi), method="bounded", options={"xatol": 1e-12})
    return res.x, -res.fun


def _refine_min(f, lo, hi):
    res = minimize_scalar(f, bounds=(lo, hi), method="bounded", options={"xatol": 1e-12})
    return res.x, res.fun


def test_criterion_1_canonicalization_existence():
    rng = np.random.default_rng(101)
    worst_res = worst_rec = 0.0
    for _ in range(10_000):
        s = random_state(rng)
        form = canonicalize(s)
        f, g = s.to_fock().vector, form.reconstruct().to_fock().vector
        ov = np.vdot(g, f)
        worst_res = max(worst_res, form.residual)
        worst_rec = max(worst_rec, np.linalg.norm(f - g * ov / abs(ov)))
    verdict(1, "canonicalization of 10^4 random states", [
        ("max residual", _fmt(worst_res), worst_res <= 1e-10),
        ("max reconstruction error", _fmt(worst_rec), worst_rec <= 1e-8),
    ])


def test_criterion_2_lu_invariance():
    rng = np.random.default_rng(102)
    dc = dt = dx = 0.0
    for _ in range(1000):
        s = random_state(rng)
        m = apply_mode_transform(s, random_mode_transform(rng))
        dc = max(dc, abs(concurrence_wootters(s)[0] - concurrence_wootters(m)[0]))
        dt = max(dt, abs(tau_hyperdeterminant(s) - tau_hyperdeterminant(m)))
        dx = max(dx, abs(xi_direct(s).xi - xi_direct(m).xi))
    verdict(2, "LU invariance over 10^3 (state, unitary) pairs", [
        ("concurrence", _fmt(dc), dc <= 1e-9),
        ("tau", _fmt(dt), dt <= 1e-9),
        ("xi", _fmt(dx), dx <= 1e-9),
    ])


def test_criterion_3_closed_concurrence_curves():
    grid = np.linspace(0, S_MAX, 401)
    t0 = max(abs(concurrence_closed(_slice_t0(s)) - SQ6_SQ2 * s * s) for s in grid)
    zeros = max(abs(concurrence_closed(_slice_r0(0.0))), abs(concurrence_closed(_slice_r0(0.5))))

    f = lambda s: concurrence_closed(_slice_r0(s))  # noqa: E731
    vals = np.array([f(s) for s in grid])
    k = int(np.argmax(vals))
    s_glob, c_glob = _refine_max(f, grid[max(k - 1, 0)], grid[min(k + 1, len(grid) - 1)])
    if vals[k] >= c_glob:  # the bounded search never evaluates the domain edge itself
        s_glob, c_glob = grid[k], vals[k]
    # interior local maxima other than the global one
    inner = [i for i in range(1, len(grid) - 1) if vals[i] >= vals[i - 1] and vals[i] >= vals[i + 1] and i != k]
    s_loc, c_loc = _refine_max(f, grid[inner[0] - 1], grid[inner[0] + 1]) if inner else (np.nan, np.nan)
    verdict(3, "closed-form concurrence curves", [
        ("t=0 slice vs (sqrt6-sqrt2)s^2", _fmt(t0), t0 <= 1e-12),
        ("r=0 zeros at s=0,1/2", _fmt(zeros), zeros <= 1e-12),
        ("global max location", f"{s_glob:.8f}", abs(s_glob - np.sqrt(3) / 3) <= 1e-4),
        ("global max value", f"{c_glob:.10f}", abs(c_glob - SQ6_SQ2 / 3) <= 1e-12),
        ("local max location", f"{s_loc:.8f}", abs(s_loc - np.sqrt(6) / 8) <= 1e-4),
        ("local max value", f"{c_loc:.10f}", abs(c_loc - np.sqrt(3) / 8) <= 1e-12),
    ])


def test_criterion_4_tau_identities():
    rng = np.random.default_rng(104)
    d_closed = d_ckw = 0.0
    for _ in range(10_000):
        p = random_point(rng)
        hd = hyperdeterminant(to_qubit_expansion(p.to_state()))
        d_closed = max(d_closed, abs(tau_closed(p) - 4 * abs(hd)))
        s = random_state(rng)
        d_ckw = max(d_ckw, abs(tau_ckw(s, clamp=False) - tau_hyperdeterminant(s)))
    ghz = tau_closed(ParamPoint(1 / np.sqrt(2), 0, 1 / np.sqrt(2)))
    odd = tau_closed(ParamPoint(0, 0.5, 0.5))
    verdict(4, "three-tangle identities", [
        ("closed vs 4|hyperdet|", _fmt(d_closed), d_closed <= 1e-12),
        ("oracle CKW vs hyperdet", _fmt(d_ckw), d_ckw <= 1e-9),
        ("GHZ tau-1", _fmt(ghz - 1), abs(ghz - 1) <= 1e-12),
        ("(0,1/2,1/2) tau-1", _fmt(odd - 1), abs(odd - 1) <= 1e-12),
    ])


def test_criterion_5_documented_discrepancy():
    rep = run_audit(trials=20, seed=7)
    w = [r for r in rep["referenceRecords"] if r["label"] == "W"]
    rec = w[0] if w else {}
    expected_closed = (8 * np.sqrt(3) - 8) / 9  # |0 - (8/9 - 2 ((sqrt6 - sqrt2)/3)^2)|
    verdict(5, "W-point closed-form vs oracle concurrence recorded", [
        ("record present", bool(rec), bool(rec)),
        ("closed form", rec.get("closed_form_6dp"), rec.get("closed_form_6dp") == f"{SQ6_SQ2 / 3:.6f}"),
        ("oracle", rec.get("oracle_6dp"), rec.get("oracle_6dp") == f"{2 / 3:.6f}"),
        ("CKW residual closed", f"{rec.get('ckw_residual_closed', np.nan):.6f}",
         abs(rec.get("ckw_residual_closed", np.nan) - expected_closed) <= 1e-12),
        ("CKW residual oracle", _fmt(rec.get("ckw_residual_oracle", np.nan)),
         rec.get("ckw_residual_oracle", np.inf) <= 1e-9),
    ])


def test_criterion_6_squeezing_special_values():
    angles = np.linspace(0, np.pi / 2, 1000)
    pts = [ParamPoint(np.cos(a), 0.0, np.sin(a)) for a in angles] + [ParamPoint(1 / np.sqrt(2), 0, 1 / np.sqrt(2))]
    s0 = max(abs(xi_closed(p).xi - 1) for p in pts)
    w = xi_closed(ParamPoint(0, S_MAX, 0)).xi
    s_r0, x_r0 = _refine_min(lambda s: xi_special(SqueezingSlice.R_EQUALS_ZERO, s), 0.05, 0.45)
    s_t0, x_t0 = _refine_min(lambda s: xi_special(SqueezingSlice.T_EQUALS_ZERO, s), 0.05, S_MAX)
    # the closed path agrees at the located minima
    agree = max(abs(xi_closed(_slice_r0(s_r0)).xi - x_r0), abs(xi_closed(_slice_t0(s_t0)).xi - x_t0))
    verdict(6, "squeezing special values", [
        ("s=0 grid max |xi-1|", _fmt(s0), s0 <= 1e-10),
        ("xi(W)-7/3", _fmt(w - 7 / 3), abs(w - 7 / 3) <= 1e-10),
        ("r=0 min location", f"{s_r0:.8f}", abs(s_r0 - np.sqrt(3) / 6) <= 1e-6),
        ("r=0 min value", f"{x_r0:.10f}", abs(x_r0 - 1 / 3) <= 1e-10),
        ("t=0 min location", f"{s_t0:.6f}", abs(s_t0 - 0.4694) <= 5e-4),
        ("t=0 min value", f"{x_t0:.6f}", abs(x_t0 - 0.4738) <= 5e-4),
        ("closed path at minima", _fmt(agree), agree <= 1e-10),
    ])


def _non_degenerate_samples(n, seed):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        p = random_point(rng)
        if mean_spin(p).length > 1e-6:
            out.append((p, rng.uniform(0, np.pi)))
    return out


def test_criterion_7_closed_variance_vs_oracle():
    # n_perp = xhat cos(theta) + yhat sin(theta), theta measured from xhat
    worst = 0.0
    for p, th in _non_degenerate_samples(10_000, 107):
        worst = max(worst, abs(variance_at_theta(p, th) - transverse_variance_oracle(p, th)))
    verdict("7a", "closed-form transverse variance vs direct oracle at the same theta", [
        ("max deviation", _fmt(worst), worst <= 1e-10),
    ])


def test_criterion_7_slice_identities():
    rng = np.random.default_rng(117)
    d26 = d27 = dphi = 0.0
    for _ in range(1000):
        s = rng.uniform(0, S_MAX)
        phi = rng.uniform(0, 2 * np.pi)
        other = np.sqrt(max(1 - 3 * s * s, 0.0))
        a = xi_closed(ParamPoint(other, s, 0.0, phi)).xi
        b = xi_closed(ParamPoint(0.0, s, other, phi)).xi
        d26 = max(d26, abs(a - xi_special(SqueezingSlice.T_EQUALS_ZERO, s)))
        d27 = max(d27, abs(b - xi_special(SqueezingSlice.R_EQUALS_ZERO, s)))
        dphi = max(dphi, abs(a - xi_closed(_slice_t0(s)).xi), abs(b - xi_closed(_slice_r0(s)).xi))
    verdict("7b", "slice identities of the closed squeezing path", [
        ("t=0 slice", _fmt(d26), d26 <= 1e-12),
        ("r=0 slice", _fmt(d27), d27 <= 1e-12),
        ("phi independence", _fmt(dphi), dphi <= 1e-12),
    ])


def test_criterion_8_oracle_self_consistency():
    rng = np.random.default_rng(108)
    worst = 0.0
    spectra_ok = True
    for _ in range(10_000):
        s = random_state(rng)
        rho = reduced_density_two(s)
        worst = max(worst, np.max(np.abs(rho - reduced_density_two_modes(s))))
        lam = wootters_spectrum(rho)
        spectra_ok &= bool(np.isrealobj(lam) and np.all(lam >= 0) and np.all(np.diff(lam) <= 0))
    verdict(8, "oracle self-consistency on 10^4 states", [
        ("density routes", _fmt(worst), worst <= 1e-12),
        ("spectra real, nonnegative, descending", spectra_ok, spectra_ok),
    ])


@pytest.fixture
def figure_runs(tmp_path):
    out = {}
    for fig in ("fig1", "fig4"):
        paths = [tmp_path / f"{fig}_{k}.csv" for k in range(3)]
        write_figure(fig, paths[0])
        write_figure(fig, paths[1])
        write_figure(fig, paths[2], workers=3)
        out[fig] = [p.read_bytes() for p in paths]
    return out


def test_criterion_9_csv_determinism_and_endpoints(figure_runs):
    same = all(len(set(v)) == 1 for v in figure_runs.values())

    def rows(blob):
        lines = blob.decode().splitlines()
        return [[float(x) for x in line.split(",")] for line in lines[1:]]

    f1 = rows(figure_runs["fig1"][0])
    f4 = rows(figure_runs["fig4"][0])
    end1 = max(abs(f1[-1][1] - SQ6_SQ2 / 3), abs(f1[-1][2] - SQ6_SQ2 / 3))
    start4 = max(abs(f4[0][1] - 1), abs(f4[0][2] - 1))
    end4 = abs(f4[-1][1] - 7 / 3)
    verdict(9, "CSV determinism and figure endpoints", [
        ("byte-identical across runs and workers", same, same),
        ("fig1 at s=sqrt3/3", _fmt(end1), end1 <= 1e-12 and abs(f1[-1][0] - np.sqrt(3) / 3) <= 1e-15),
        ("fig4 at s=0", _fmt(start4), start4 <= 1e-10),
        ("fig4 r=0 column at s=1/sqrt3", _fmt(end4), end4 <= 1e-10),
    ])
