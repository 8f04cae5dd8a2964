"""Acceptance criteria, each at its stated tolerance.

Every test prints one ``CRITERION n: PASS|FAIL`` line (also repeated in the
terminal summary). Nothing here is relaxed to make a criterion pass; the
ones that fail do so for reasons analysed in the project notes.
"""

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from fracinv.experiments import (parse_config, run_convergence_table, run_illposedness,
                                 run_reconstruction, run_regularization_comparison)
from fracinv.fem import assemble, make_mesh
from fracinv.inverse import (CgmConfig, ForwardContext, NoiseSpec, SpectralContext, add_noise,
                             gradient, run_cgm, tikhonov_value)
from fracinv.special_functions import decay_constant, ml_caputo_identity_residual, mittag_leffler
from fracinv.spectral import EigenBasis, compute_eigenbasis, forward_series, inverse_series
from fracinv.time_stepper import TimeGrid, solve_forward


def report(n, checks):
    """``checks``: list of (description, passed)."""
    ok = all(p for _, p in checks)
    detail = "; ".join(f"{d} [{'ok' if p else 'x'}]" for d, p in checks)
    line = f"CRITERION {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    print(line)
    ACCEPTANCE_LINES[n] = line
    assert ok, line


@pytest.fixture(scope="module")
def table(tmp_path_factory):
    cfg = parse_config(experiment="convergence_table",
                       output_dir=str(tmp_path_factory.mktemp("conv")))
    return {(r["sweep"], r["alpha"], r["s"]): r for r in run_convergence_table(cfg)}


def _errors(row):
    return [row[f"e_1/{k}"] for k in (50, 100, 200, 400)]


def test_criterion_1_temporal_rates(table):
    checks = []
    for a in (0.3, 0.8):
        row = table[("temporal", a, 0.5)]
        e = _errors(row)
        checks.append((f"alpha={a}: rate {row['rate']:.3f} vs {2 - a:.2f}+-0.15",
                       abs(row["rate"] - (2 - a)) <= 0.15))
        checks.append((f"alpha={a}: monotone", all(np.diff(e) < 0)))
    report(1, checks)


REFERENCE_SPATIAL = {0.2: (0.64, [9.35e-3, 6.03e-3, 3.84e-3, 2.43e-3]),
                 0.9: (0.92, [2.92e-4, 1.59e-4, 8.36e-5, 4.30e-5])}


def test_criterion_2_spatial_rates(table):
    checks = []
    for s, (rate, ref) in REFERENCE_SPATIAL.items():
        row = table[("spatial", 0.5, s)]
        e = np.array(_errors(row))
        ratio = e / ref
        checks.append((f"s={s}: rate {row['rate']:.3f} vs {rate}+-0.15",
                       abs(row["rate"] - rate) <= 0.15))
        checks.append((f"s={s}: error/reference in [{ratio.min():.2f}, {ratio.max():.2f}]",
                       bool(np.all((ratio <= 3) & (ratio >= 1 / 3)))))
        checks.append((f"s={s}: monotone", all(np.diff(e) < 0)))
    report(2, checks)


def test_criterion_3_example_5_1(tmp_path):
    cfg = parse_config(experiment="example_5_1", N=200, K=100, output_dir=str(tmp_path))
    rows = run_reconstruction(cfg)
    checks = [(f"(a,s)=({r['alpha']},{r['s']}): E={r['final_error']:.4g} <= 0.02",
               r["status"] == "ok" and r["final_error"] <= 0.02) for r in rows]
    report(3, checks)


def test_criterion_4_morozov(tmp_path):
    mus = [0.005, 0.01, 0.05, 0.1]
    idx, checks = {}, []
    for exp in ("example_5_3", "example_5_4"):
        cfg = parse_config(experiment=exp, mu_list=mus, output_dir=str(tmp_path))
        rows = run_reconstruction(cfg)
        idx[exp] = [r["stopping_index"] for r in rows]
        for r in rows:
            tr = r["trace"]
            k = tr.stopping_index
            res = tr.residuals
            bracket = (tr.stop_reason == "discrepancy" and res[k] <= tr.sigma * tr.theta
                       and (k == 0 or tr.sigma * tr.theta < res[k - 1]))
            checks.append((f"{exp} mu={r['mu']}: bracket ({tr.stop_reason})", bracket))
        checks.append((f"{exp}: I_s={idx[exp]} strictly decreasing",
                       all(np.diff(idx[exp]) < 0)))
    checks.append((f"I_s(nonsmooth) >= I_s(smooth): {idx['example_5_4']} vs {idx['example_5_3']}",
                   all(n >= s for n, s in zip(idx["example_5_4"], idx["example_5_3"]))))
    report(4, checks)


def test_criterion_5_regularization(tmp_path):
    cfg = parse_config(experiment="example_5_2", output_dir=str(tmp_path))
    checks = []
    for row in run_regularization_comparison(cfg):
        mu, ez, ep = row["mu"], row["error_gamma_zero"], row["error_gamma_apriori"]
        if mu >= 0.05:
            checks.append((f"heavy mu={mu}: {ep:.4g} <= {ez:.4g}", ep <= ez))
        else:
            checks.append((f"light mu={mu}: gap {row['relative_gap']:.1%} <= 20%",
                           row["relative_gap"] <= 0.2))
    report(5, checks)


def test_criterion_6_illposedness(tmp_path):
    cfg = parse_config(experiment="illposedness", N=128, alpha=0.5, s=0.5,
                       output_dir=str(tmp_path))
    t = run_illposedness(cfg)
    amp = t["amplification"][:128]
    checks = [("amplification strictly increasing", bool(np.all(np.diff(amp) > 0))),
              (f"max amplification {amp.max():.4g} > 1e3 at N=128", amp.max() > 1e3)]
    mats = assemble(make_mesh(64), 0.5)
    basis = compute_eigenbasis(mats)
    g = np.cos(np.pi * mats.mesh.interior) * np.sin(np.pi * mats.mesh.interior)
    h = forward_series(g, basis, 0.5, 1.0)
    noisy, _ = add_noise(h, NoiseSpec(0.01, seed=0), mats.norm)
    infl = [mats.norm(inverse_series(noisy, basis, 0.5, 1.0, m)) / mats.norm(g)
            for m in (30, 45, 63)]
    checks.append((f"naive inverse inflation at m=30,45,63: "
                   + ", ".join(f"{v:.3f}" for v in infl) + " >= 10", min(infl) >= 10))
    report(6, checks)


def test_criterion_7_oracle_equivalence():
    checks = []
    mats = assemble(make_mesh(64), 0.5)
    basis = compute_eigenbasis(mats)
    x = mats.mesh.interior
    g = np.cos(np.pi * x / 2) + 0.5 * np.sin(3 * np.pi * x)
    u = solve_forward(g, mats, TimeGrid(200, 1.0, 0.5)).final
    gap = mats.norm(u - forward_series(g, basis, 0.5, 1.0))
    checks.append((f"spectral vs FEM/L1 gap {gap:.2e} < 5e-3", gap < 5e-3))

    ctx = ForwardContext(mats, TimeGrid(100, 1.0, 0.5))
    rng = np.random.default_rng(0)
    worst_route, worst_fd = 0.0, 0.0
    for _ in range(3):
        gg, hh = rng.standard_normal((2, mats.mesh.n_dofs))
        a = gradient(gg, hh, 1e-3, ctx, "self_adjoint")
        b = gradient(gg, hh, 1e-3, ctx, "adjoint")
        worst_route = max(worst_route, ctx.norm(a - b) / ctx.norm(a))
        for p in rng.standard_normal((5, mats.mesh.n_dofs)):
            fd = (tikhonov_value(gg + 1e-5 * p, hh, 1e-3, ctx)
                  - tikhonov_value(gg - 1e-5 * p, hh, 1e-3, ctx)) / 2e-5
            for grad in (a, b):
                worst_fd = max(worst_fd, abs(ctx.inner(grad, p) - fd) / abs(fd))
    checks.append((f"route gap {worst_route:.1e} <= 2%", worst_route <= 0.02))
    checks.append((f"finite-difference gap {worst_fd:.1e} <= 1e-4", worst_fd <= 1e-4))

    back = inverse_series(forward_series(g, basis, 0.5, 1.0), basis, 0.5, 1.0)
    rt = mats.norm(back - g) / mats.norm(g)
    checks.append((f"round trip {rt:.1e} <= 1e-8", rt <= 1e-8))

    iters = []
    for k in (0, 5, 20):
        one_mode = EigenBasis(basis.lambdas[k:k + 1], basis.vectors[:, k:k + 1], basis.mass)
        sc = SpectralContext(one_mode, 0.5, 1.0)
        _, tr = run_cgm(sc.apply(g), 0.0, CgmConfig(), sc)
        iters.append(tr.stopping_index)
    checks.append((f"rank-one CGM iterations {iters} == 1", iters == [1, 1, 1]))
    report(7, checks)


def test_criterion_8_special_functions():
    checks = []
    z = np.linspace(-30, 5, 3501)
    err = np.max(np.abs(mittag_leffler(z, 1.0) - np.exp(z)) / np.exp(z))
    checks.append((f"E_1,1 vs exp rel {err:.1e} <= 1e-10", err <= 1e-10))
    c0 = max(decay_constant(a, x_max=1e6) for a in (0.1, 0.3, 0.5, 0.7, 0.9, 1.0))
    checks.append((f"measured C0 = {c0:.4f} <= 3", c0 <= 3))
    cm = True
    x = np.geomspace(1e-3, 1e6, 400)
    for a in (0.2, 0.5, 0.8):
        f = mittag_leffler(-x, a)
        d1 = np.diff(f) / np.diff(x)
        cm &= bool(np.all(f > 0) and np.all(d1 < 0) and np.all(np.diff(d1) > -1e-15))
    checks.append(("complete monotonicity spot checks", cm))
    for a in (0.5, 0.7):
        r = [ml_caputo_identity_residual(a, 1.0, 1.0, n) for n in (500, 1000, 2000, 4000)]
        order = np.log2(np.array(r[:-1]) / r[1:])
        checks.append((f"Caputo identity order alpha={a}: {np.round(order, 3).tolist()} ~ {2 - a}",
                       bool(np.all(np.abs(order - (2 - a)) <= 0.05))))
    report(8, checks)
