"""Acceptance gate: ten end-to-end criteria, one printed verdict line each.

Run with `pytest tests/test_acceptance.py -v` (the verdict lines bypass
capture, so they appear even without -s).  Heavy solver runs are shared
across criteria through module-scoped fixtures.
"""

import time

import numpy as np
import pytest

import oracles
from tubal import clustering, matrix, metrics, prox, solvers, synth, tensorfile, tprod
from tubal.admm import SolverConfig

TOL = SolverConfig().tol


def emit(capsys, num, ok, detail):
    with capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {num}: {detail}")
    assert ok, f"criterion {num}: {detail}"


# ---------------------------------------------------------------------------
# shared solver runs (each also feeds the convergence-invariant criterion)


@pytest.fixture(scope="module")
def trpca_case():
    x0 = synth.low_tubal_rank(30, 30, 10, 2, seed=0)
    spikes, support = synth.sparse_spikes(x0.shape, 0.05, 5.0, seed=5)
    t0 = time.perf_counter()
    low, sp, report = solvers.trpca(x0 + spikes)
    secs = time.perf_counter() - t0
    return dict(x0=x0, support=support, low=low, sp=sp, report=report, secs=secs)


@pytest.fixture(scope="module")
def lrtc_cases():
    x0 = synth.low_tubal_rank(30, 30, 10, 2, seed=0)
    runs = {}
    for frac, mask_seed in ((0.5, 1), (0.3, 2)):
        mask = synth.missing_mask(x0.shape, frac, seed=mask_seed)
        t0 = time.perf_counter()
        x, report = solvers.lrtc(np.where(mask, x0, 0.0), mask)
        runs[frac] = dict(
            rse=metrics.rse(x, x0), report=report, secs=time.perf_counter() - t0
        )
    return runs


@pytest.fixture(scope="module")
def hsi_case():
    cube = synth.hsi_cube(m=32, n=32, bands=8, sigma=0.1, impulse_frac=0.05, seed=1)
    t0 = time.perf_counter()
    low, sp, dense, report = solvers.hsi_mixed_denoise(cube["noisy"])
    secs = time.perf_counter() - t0
    gain = metrics.psnr(low, cube["clean"]) - metrics.psnr(cube["noisy"], cube["clean"])
    return dict(gain=gain, report=report, secs=secs)


@pytest.fixture(scope="module")
def derain_case():
    data = synth.rain_streaks(n1=32, n2=32, n3=10, density=0.05, seed=0)
    t0 = time.perf_counter()
    b, r, report = solvers.derain(data["observed"])
    secs = time.perf_counter() - t0
    gain = metrics.psnr(b, data["background"]) - metrics.psnr(
        data["observed"], data["background"]
    )
    return dict(gain=gain, report=report, secs=secs)


@pytest.fixture(scope="module")
def mod_case():
    data = synth.surveillance_video(n1=32, n2=32, n_frames=20, seed=0)
    t0 = time.perf_counter()
    b, f, d, e, report = solvers.mod_decompose(data["video"])
    secs = time.perf_counter() - t0
    found = np.abs(e) >= 0.1 * np.abs(e).max()
    f1 = metrics.f_measure(found, data["fg_mask"])
    return dict(f1=f1, report=report, secs=secs)


@pytest.fixture(scope="module")
def cluster_cases():
    accs, reports = [], []
    t0 = time.perf_counter()
    for seed in range(5):
        y, labels = synth.submodule_images(n1=16, n3=8, clusters=3, per_cluster=15, seed=seed)
        m = clustering.dissimilarity_matrix(y)
        z, report = clustering.solve_representation(
            y, m, lam1=1.0 / np.sqrt(y.shape[1]), lam2=10.0
        )
        found = clustering.spectral_cluster(clustering.affinity(z), 3, seed=0)
        accs.append(metrics.cluster_accuracy(found, labels))
        reports.append(report)
    return dict(accs=accs, reports=reports, secs=time.perf_counter() - t0)


@pytest.fixture(scope="module")
def matrix_solver_reports():
    rng = np.random.default_rng(7)
    m0 = rng.standard_normal((20, 2)) @ rng.standard_normal((2, 20))
    mask = rng.random((20, 20)) < 0.6
    _, rep_lrmc = matrix.lrmc(np.where(mask, m0, 0.0), mask)

    spikes = np.zeros((20, 20))
    idx = rng.random((20, 20)) < 0.05
    spikes[idx] = 5.0
    _, _, rep_rpca = matrix.rpca(m0 + spikes)

    target = np.add.outer(np.linspace(0, 1, 16), np.linspace(0, 1, 16))
    op = matrix.DegradationOp(np.full((3, 3), 1.0 / 9.0), factor=2)
    _, rep_sr = matrix.lrtv_super_resolve(op.apply(target), op, lam1=0.1, lam2=0.05)
    return {"lrmc": rep_lrmc, "rpca": rep_rpca, "super_resolve": rep_sr}


# ---------------------------------------------------------------------------
# criteria


def test_criterion_01_algebra_oracle_suite(capsys):
    rng = np.random.default_rng(0)
    t0 = time.perf_counter()
    prod_diff = tnn_diff = rec_err = 0.0
    for _ in range(100):
        n1, p, n2 = rng.integers(1, 7), rng.integers(1, 6), rng.integers(1, 6)
        n3 = rng.integers(1, 5)
        a = rng.standard_normal((n1, p, n3))
        b = rng.standard_normal((p, n2, n3))
        prod_diff = max(
            prod_diff, np.abs(tprod.t_product(a, b) - oracles.tprod_bcirc(a, b)).max()
        )
        nuc = oracles.bcirc_nuclear(a)
        tnn_diff = max(tnn_diff, abs(tprod.tnn(a) - nuc) / max(nuc, 1e-300))
        f = tprod.t_svd(a)
        recon = tprod.t_product(tprod.t_product(f.u, f.s), tprod.t_transpose(f.v))
        rec_err = max(rec_err, np.linalg.norm(recon - a) / np.linalg.norm(a))
    secs = time.perf_counter() - t0
    ok = prod_diff <= 1e-10 and tnn_diff <= 1e-8 and rec_err <= 1e-10 and secs < 10
    emit(
        capsys, 1, ok,
        f"100 tensors: t_product vs bcirc oracle {prod_diff:.2e} (<=1e-10), "
        f"tnn vs bcirc nuclear {tnn_diff:.2e} (<=1e-8), "
        f"t_svd reconstruction {rec_err:.2e} (<=1e-10), {secs:.1f}s (<10s)",
    )


def test_criterion_02_tsvt_spectral_shrinkage(capsys):
    rng = np.random.default_rng(1)
    worst = 0.0
    for shape in ((6, 5, 4), (8, 8, 5), (4, 7, 3)):
        y = rng.standard_normal(shape)
        sig = oracles.spectral_singulars_naive(y)
        smax = sig.max()
        for tau in (0.0, 0.1, smax / 2, 2 * smax):
            got = oracles.spectral_singulars_naive(prox.tsvt(y, tau))
            worst = max(worst, np.abs(got - np.maximum(sig - tau, 0.0)).max())
    ok = worst <= 1e-9
    emit(capsys, 2, ok, f"shrunk spectral singulars off by {worst:.2e} (<=1e-9)")


def test_criterion_03_matrix_degeneracy(capsys):
    rng = np.random.default_rng(2)
    svt_diff = lrtc_diff = trpca_diff = 0.0
    for i in range(20):
        m0 = rng.standard_normal((16, 2)) @ rng.standard_normal((2, 16))
        tau = float(rng.uniform(0.1, 2.0))
        svt_diff = max(
            svt_diff,
            np.abs(
                prox.tsvt(m0[:, :, None], tau)[:, :, 0] - matrix.matrix_svt(m0, tau)
            ).max(),
        )
        mask = rng.random((16, 16)) < 0.6
        obs = np.where(mask, m0, 0.0)
        xt, _ = solvers.lrtc(obs[:, :, None], mask[:, :, None])
        xm, _ = matrix.lrmc(obs, mask)
        lrtc_diff = max(lrtc_diff, np.abs(xt[:, :, 0] - xm).max())

        spikes = np.where(rng.random((16, 16)) < 0.05, 5.0, 0.0)
        m = m0 + spikes
        lam = solvers.default_sparse_weight(16, 16, 1)
        lt, st, _ = solvers.trpca(m[:, :, None], lam=lam)
        lm, sm, _ = matrix.rpca(m, lam=lam)
        trpca_diff = max(
            trpca_diff,
            max(np.abs(lt[:, :, 0] - lm).max(), np.abs(st[:, :, 0] - sm).max()),
        )
    ok = max(svt_diff, lrtc_diff, trpca_diff) <= 1e-6
    emit(
        capsys, 3, ok,
        f"n3=1 agreement over 20 instances: tsvt {svt_diff:.2e}, "
        f"lrtc {lrtc_diff:.2e}, trpca {trpca_diff:.2e} (all <=1e-6)",
    )


def test_criterion_04_trpca_exact_recovery(capsys, trpca_case):
    c = trpca_case
    rse = metrics.rse(c["low"], c["x0"])
    f1 = metrics.f_measure(np.abs(c["sp"]) > 0.1, c["support"])
    ok = rse <= 1e-3 and f1 >= 0.99 and c["secs"] < 60
    emit(
        capsys, 4, ok,
        f"30x30x10 rank-2 + 5% spikes: RSE {rse:.2e} (<=1e-3), "
        f"support F1 {f1:.3f} (>=0.99), {c['secs']:.1f}s (<60s)",
    )


def test_criterion_05_lrtc_recovery(capsys, lrtc_cases):
    r50, r30 = lrtc_cases[0.5], lrtc_cases[0.3]
    ok = (
        r50["rse"] <= 1e-3
        and r30["rse"] <= 1e-2
        and r50["secs"] < 60
        and r30["secs"] < 60
    )
    emit(
        capsys, 5, ok,
        f"completion RSE at 50% observed {r50['rse']:.2e} (<=1e-3) in "
        f"{r50['secs']:.1f}s, at 30% observed {r30['rse']:.2e} (<=1e-2) in "
        f"{r30['secs']:.1f}s (each <60s)",
    )


def test_criterion_06_convergence_invariants(
    capsys, trpca_case, lrtc_cases, hsi_case, derain_case, mod_case,
    cluster_cases, matrix_solver_reports,
):
    reports = {
        "trpca": trpca_case["report"],
        "lrtc-50": lrtc_cases[0.5]["report"],
        "lrtc-30": lrtc_cases[0.3]["report"],
        "hsi": hsi_case["report"],
        "derain": derain_case["report"],
        "mod": mod_case["report"],
        "representation": cluster_cases["reports"][0],
    }
    reports.update(matrix_solver_reports)
    worst_rise = 0.0
    bad = []
    for name, rep in reports.items():
        worst_rise = max(worst_rise, max(rep.al_descent))
        if max(rep.al_descent) > 1e-8:
            bad.append(f"{name}: objective rise {max(rep.al_descent):.2e}")
        if rep.converged and rep.residuals[-1] > TOL:
            bad.append(f"{name}: converged with residual {rep.residuals[-1]:.2e}")
    ok = not bad
    emit(
        capsys, 6, ok,
        f"{len(reports)} solver runs: max objective increase per step "
        f"{worst_rise:.2e} (<=1e-8), residual <= tol at every converged flag"
        + ("" if ok else "; " + "; ".join(bad)),
    )


def test_criterion_07_tv_coupled_solvers(capsys, hsi_case, derain_case, mod_case):
    ok = (
        hsi_case["gain"] >= 8.0
        and derain_case["gain"] >= 8.0
        and mod_case["f1"] >= 0.90
        and max(hsi_case["secs"], derain_case["secs"], mod_case["secs"]) < 120
    )
    emit(
        capsys, 7, ok,
        f"HSI gain {hsi_case['gain']:.1f} dB (>=8) in {hsi_case['secs']:.1f}s, "
        f"derain gain {derain_case['gain']:.1f} dB (>=8) in {derain_case['secs']:.1f}s, "
        f"MOD foreground F1 {mod_case['f1']:.3f} (>=0.90) in {mod_case['secs']:.1f}s "
        f"(each <120s)",
    )


def test_criterion_08_clustering_pipeline(capsys, cluster_cases):
    accs, secs = cluster_cases["accs"], cluster_cases["secs"]
    ok = min(accs) >= 0.95 and secs < 120
    emit(
        capsys, 8, ok,
        f"3 submodules x 15 images, 5 seeds: accuracies "
        f"{[round(a, 3) for a in accs]} (each >=0.95), {secs:.1f}s (<120s)",
    )


def test_criterion_09_adjoint_identities(capsys):
    rng = np.random.default_rng(3)
    worst = 0.0
    for axis in ("y", "x", "t"):
        x = rng.standard_normal((8, 7, 6))
        y = rng.standard_normal((8, 7, 6))
        lhs = np.sum(prox.diff(x, axis) * y)
        rhs = np.sum(x * prox.diff_adjoint(y, axis))
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(lhs)))
    kernel = rng.random((3, 3))
    op = matrix.DegradationOp(kernel / kernel.sum(), factor=2)
    for _ in range(5):
        x = rng.standard_normal((16, 12))
        y = rng.standard_normal((8, 6))
        lhs = np.sum(op.apply(x) * y)
        rhs = np.sum(x * op.adjoint(y))
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(lhs)))
    ok = worst <= 1e-12
    emit(capsys, 9, ok, f"adjoint inner products match to {worst:.2e} (<=1e-12)")


def test_criterion_10_bit_exact_io(capsys, tmp_path):
    rng = np.random.default_rng(4)
    shapes = [(1, 1, 1), (1, 5, 1), (4, 1, 6)]
    while len(shapes) < 50:
        shapes.append(tuple(int(d) for d in rng.integers(1, 7, size=3)))
    checked = 0
    for i, shape in enumerate(shapes):
        x = rng.standard_normal(shape)
        path = str(tmp_path / f"t{i}.tlt")
        tensorfile.write_tensor(x, path)
        back = tensorfile.read_tensor(path)
        if back.tobytes() == x.tobytes() and back.shape == x.shape:
            checked += 1
    ok = checked == 50
    emit(capsys, 10, ok, f"{checked}/50 roundtrips bit-identical (incl. edge dims)")
