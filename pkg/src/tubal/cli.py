"""Command-line front end.

One subcommand per operation; tensors travel as container files (see
`tensorfile`), with '-' standing for stdin/stdout so commands can be
piped.  Usage errors exit with status 2 (argparse's convention), runtime
failures with 1.  A solver that hits its iteration cap still writes its
outputs and exits 0; the convergence flag lands in the metrics CSV when
one is requested.
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from . import clustering, matrix, metrics, prox, solvers, synth, tensorfile, tprod
from .admm import SolverConfig


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mu0", type=float, default=1e-3)
    p.add_argument("--rho", type=float, default=1.1)
    p.add_argument("--tol", type=float, default=1e-7)
    p.add_argument("--max-iter", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)


def _add_metrics_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--metrics-csv", help="append a run log row to this CSV")
    p.add_argument("--experiment", help="experiment id for the run log")
    p.add_argument("--ref", help="reference tensor for PSNR/RSE in the run log")


def _config(args) -> SolverConfig:
    return SolverConfig(
        mu0=args.mu0,
        rho=args.rho,
        tol=args.tol,
        max_iter=args.max_iter,
        seed=args.seed,
    )


def _report_line(report) -> str:
    res = report.residuals[-1] if report.residuals else 0.0
    return (
        f"converged={'true' if report.converged else 'false'} "
        f"iterations={report.iterations} residual={res:.3e}"
    )


def _emit_metrics(args, solver_name, report, wall_time, primary):
    if not getattr(args, "metrics_csv", None):
        return
    psnr_db = rse_val = None
    if getattr(args, "ref", None):
        ref = tensorfile.read_tensor(args.ref)
        psnr_db = metrics.psnr(primary, ref)
        rse_val = metrics.rse(primary, ref)
    row = metrics.MetricsRow(
        experiment=args.experiment or solver_name,
        solver=solver_name,
        psnr_db=psnr_db,
        rse=rse_val,
        iterations=report.iterations if report else None,
        wall_time_s=wall_time,
        converged=report.converged if report else None,
    )
    metrics.append_metrics_row(args.metrics_csv, row)


# ---------------------------------------------------------------------------
# subcommand handlers

def _cmd_tprod(args):
    a = tensorfile.read_tensor(args.infile)
    b = tensorfile.read_tensor(args.in2)
    tensorfile.write_tensor(tprod.t_product(a, b), args.out)
    return 0


def _cmd_tsvd(args):
    x = tensorfile.read_tensor(args.infile)
    fac = tprod.t_svd(x)
    tensorfile.write_tensor(fac.u, args.out)
    tensorfile.write_tensor(fac.s, args.out2)
    tensorfile.write_tensor(fac.v, args.out3)
    return 0


def _cmd_tnn(args):
    x = tensorfile.read_tensor(args.infile)
    print(repr(tprod.tnn(x)))
    return 0


def _cmd_svt(args):
    y = tensorfile.read_tensor(args.infile)
    tensorfile.write_tensor(prox.tsvt(y, args.tau), args.out)
    return 0


def _cmd_complete(args):
    m = tensorfile.read_tensor(args.infile)
    mask = tensorfile.read_tensor(args.mask)
    t0 = time.perf_counter()
    x, report = solvers.lrtc(m, mask, _config(args))
    wall = time.perf_counter() - t0
    tensorfile.write_tensor(x, args.out)
    print(_report_line(report))
    _emit_metrics(args, "complete", report, wall, x)
    return 0


def _cmd_rpca(args):
    m = tensorfile.read_tensor(args.infile)
    t0 = time.perf_counter()
    low, sp, report = solvers.trpca(m, args.lam, _config(args))
    wall = time.perf_counter() - t0
    tensorfile.write_tensor(low, args.out)
    tensorfile.write_tensor(sp, args.out2)
    print(_report_line(report))
    _emit_metrics(args, "rpca", report, wall, low)
    return 0


def _cmd_denoise(args):
    y = tensorfile.read_tensor(args.infile)
    w = None
    if args.weight_const is not None:
        w = np.full(min(y.shape[0], y.shape[1]), args.weight_const)
    t0 = time.perf_counter()
    x, report = solvers.wtnn_denoise(y, args.lam, w=w, c=args.weight_c)
    wall = time.perf_counter() - t0
    tensorfile.write_tensor(x, args.out)
    print(_report_line(report))
    _emit_metrics(args, "denoise", report, wall, x)
    return 0


def _cmd_hsi_denoise(args):
    h = tensorfile.read_tensor(args.infile)
    t0 = time.perf_counter()
    low, sp, dense, report = solvers.hsi_mixed_denoise(
        h,
        lam=args.lam,
        tau=args.tau,
        gamma=args.gamma,
        cfg=_config(args),
        patch_size=args.patch_size,
        patch_stride=args.patch_stride,
    )
    wall = time.perf_counter() - t0
    tensorfile.write_tensor(low, args.out)
    tensorfile.write_tensor(sp, args.out2)
    tensorfile.write_tensor(dense, args.out3)
    print(_report_line(report))
    _emit_metrics(args, "hsi-denoise", report, wall, low)
    return 0


def _cmd_mod(args):
    t = tensorfile.read_tensor(args.infile)
    t0 = time.perf_counter()
    b, f, d, e, report = solvers.mod_decompose(
        t, args.lam1, args.lam2, args.lam3, _config(args)
    )
    wall = time.perf_counter() - t0
    tensorfile.write_tensor(b, args.out)
    tensorfile.write_tensor(f, args.out2)
    tensorfile.write_tensor(d, args.out3)
    tensorfile.write_tensor(e, args.out4)
    print(_report_line(report))
    _emit_metrics(args, "mod", report, wall, b)
    return 0


def _cmd_derain(args):
    o = tensorfile.read_tensor(args.infile)
    t0 = time.perf_counter()
    b, r, report = solvers.derain(
        o, args.lam1, args.lam2, args.lam3, args.lam4, _config(args)
    )
    wall = time.perf_counter() - t0
    tensorfile.write_tensor(b, args.out)
    tensorfile.write_tensor(r, args.out2)
    print(_report_line(report))
    _emit_metrics(args, "derain", report, wall, b)
    return 0


def _cmd_sr(args):
    y3 = tensorfile.read_tensor(args.infile)
    k3 = tensorfile.read_tensor(args.kernel)
    if y3.shape[2] != 1 or k3.shape[2] != 1:
        raise ValueError("sr expects single-slice (n3 = 1) inputs")
    op = matrix.DegradationOp(kernel=k3[:, :, 0], factor=args.factor)
    t0 = time.perf_counter()
    x, report = matrix.lrtv_super_resolve(
        y3[:, :, 0], op, args.lam1, args.lam2, _config(args)
    )
    wall = time.perf_counter() - t0
    tensorfile.write_tensor(x[:, :, None], args.out)
    print(_report_line(report))
    _emit_metrics(args, "sr", report, wall, x[:, :, None])
    return 0


def _cmd_cluster(args):
    y = tensorfile.read_tensor(args.infile)
    mdis = clustering.dissimilarity_matrix(y)
    n = y.shape[1]
    lam1 = args.lam1 if args.lam1 is not None else 1.0 / np.sqrt(n)
    lam2 = args.lam2 if args.lam2 is not None else 10.0
    t0 = time.perf_counter()
    z, report = clustering.solve_representation(y, mdis, lam1, lam2, _config(args))
    w = clustering.affinity(z)
    labels = clustering.spectral_cluster(w, args.clusters, seed=args.seed)
    wall = time.perf_counter() - t0
    np.savetxt(args.out, labels, fmt="%d")
    if args.out2:
        tensorfile.write_tensor(z, args.out2)
    acc = None
    if args.ref_labels:
        ref = np.loadtxt(args.ref_labels, dtype=int)
        acc = metrics.cluster_accuracy(labels, ref)
        print(f"accuracy={acc}")
    print(_report_line(report))
    if args.metrics_csv:
        row = metrics.MetricsRow(
            experiment=args.experiment or "cluster",
            solver="cluster",
            cluster_accuracy=acc,
            iterations=report.iterations,
            wall_time_s=wall,
            converged=report.converged,
        )
        metrics.append_metrics_row(args.metrics_csv, row)
    return 0


_SYNTH_OUTPUTS = {
    "low_tubal_rank": None,
    "sparse_spikes": None,
    "missing_mask": None,
    "surveillance_video": ["video", "background", "foreground", "ripple", "fg_mask"],
    "rain_streaks": ["observed", "background", "rain", "rain_mask"],
    "hsi_cube": ["noisy", "clean", "impulse_mask"],
}


def _parse_params(pairs):
    out = {}
    for pair in pairs:
        if "=" not in pair:
            raise ValueError(f"--param expects key=value, got {pair!r}")
        key, val = pair.split("=", 1)
        try:
            out[key] = int(val)
        except ValueError:
            try:
                out[key] = float(val)
            except ValueError:
                raise ValueError(f"--param value for {key!r} must be numeric")
    return out


def _cmd_synth(args):
    params = _parse_params(args.param or [])
    params["seed"] = args.seed
    outs = [args.out, args.out2, args.out3, args.out4, args.out5]
    try:
        return _run_synth(args.kind, params, outs)
    except KeyError as exc:
        raise ValueError(f"{args.kind} requires --param {exc.args[0]}=...") from exc
    except TypeError as exc:
        raise ValueError(f"bad parameters for {args.kind}: {exc}") from exc


def _run_synth(kind, params, outs):
    if kind == "low_tubal_rank":
        x = synth.low_tubal_rank(**params)
        tensorfile.write_tensor(x, outs[0])
        return 0
    if kind == "sparse_spikes":
        dims = (params.pop("n1"), params.pop("n2"), params.pop("n3"))
        spikes, support = synth.sparse_spikes(dims, **params)
        tensorfile.write_tensor(spikes, outs[0])
        if outs[1]:
            tensorfile.write_tensor(support, outs[1])
        return 0
    if kind == "missing_mask":
        dims = (params.pop("n1"), params.pop("n2"), params.pop("n3"))
        mask = synth.missing_mask(dims, **params)
        tensorfile.write_tensor(mask, outs[0])
        return 0
    if kind == "submodule_images":
        y, labels = synth.submodule_images(**params)
        tensorfile.write_tensor(y, outs[0])
        if outs[1]:
            np.savetxt(outs[1], labels, fmt="%d")
        return 0
    if kind in _SYNTH_OUTPUTS:
        result = getattr(synth, kind)(**params)
        for name, path in zip(_SYNTH_OUTPUTS[kind], outs):
            if path:
                tensorfile.write_tensor(result[name], path)
        return 0
    raise ValueError(f"unknown synth kind {kind!r}")


def _cmd_metrics(args):
    a = tensorfile.read_tensor(args.infile)
    b = tensorfile.read_tensor(args.ref)
    row = metrics.MetricsRow(
        experiment=args.experiment or "metrics", solver="metrics"
    )
    if a.dtype == bool and b.dtype == bool:
        f1 = metrics.f_measure(a, b)
        print(f"f_measure={f1}")
        row.f_measure = f1
    else:
        p = metrics.psnr(a, b, peak=args.peak)
        r = metrics.rse(a, b)
        print(f"psnr_db={p}")
        print(f"rse={r}")
        row.psnr_db = p
        row.rse = r
    if args.metrics_csv:
        metrics.append_metrics_row(args.metrics_csv, row)
    return 0


# ---------------------------------------------------------------------------
# parser assembly

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tubal",
        description="Third-order tensor algebra and low-rank recovery tools",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("tprod", _cmd_tprod, "t-product of two tensors")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--in2", required=True)
    p.add_argument("--out", required=True)

    p = add("tsvd", _cmd_tsvd, "t-SVD factors of a tensor")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True, help="left factor u")
    p.add_argument("--out2", required=True, help="f-diagonal s")
    p.add_argument("--out3", required=True, help="right factor v")

    p = add("tnn", _cmd_tnn, "print the tensor nuclear norm")
    p.add_argument("--in", dest="infile", required=True)

    p = add("svt", _cmd_svt, "spectral singular value thresholding")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--tau", type=float, required=True)
    p.add_argument("--out", required=True)

    p = add("complete", _cmd_complete, "low-tubal-rank completion")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--mask", required=True)
    p.add_argument("--out", required=True)
    _add_config_flags(p)
    _add_metrics_flags(p)

    p = add("rpca", _cmd_rpca, "tensor robust PCA")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--out", required=True, help="low-rank part")
    p.add_argument("--out2", required=True, help="sparse part")
    _add_config_flags(p)
    _add_metrics_flags(p)

    p = add("denoise", _cmd_denoise, "weighted spectral shrinkage denoiser")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--weight-c", type=float, default=1.0,
                   help="constant c of the reweighting rule")
    p.add_argument("--weight-const", type=float,
                   help="use a constant weight vector instead of the rule")
    p.add_argument("--out", required=True)
    _add_config_flags(p)
    _add_metrics_flags(p)

    p = add("hsi-denoise", _cmd_hsi_denoise, "mixed-noise cube restoration")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--tau", type=float, default=10.0)
    p.add_argument("--gamma", type=float, default=0.05)
    p.add_argument("--patch-size", type=int)
    p.add_argument("--patch-stride", type=int, default=8)
    p.add_argument("--out", required=True, help="restored low-rank cube")
    p.add_argument("--out2", required=True, help="sparse part")
    p.add_argument("--out3", required=True, help="dense noise part")
    _add_config_flags(p)
    _add_metrics_flags(p)

    p = add("mod", _cmd_mod, "background/foreground motion decomposition")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--lambda1", dest="lam1", type=float)
    p.add_argument("--lambda2", dest="lam2", type=float)
    p.add_argument("--lambda3", dest="lam3", type=float)
    p.add_argument("--out", required=True, help="background")
    p.add_argument("--out2", required=True, help="foreground")
    p.add_argument("--out3", required=True, help="dynamic part")
    p.add_argument("--out4", required=True, help="moving-object part")
    _add_config_flags(p)
    _add_metrics_flags(p)

    p = add("derain", _cmd_derain, "rain streak removal")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--lambda1", dest="lam1", type=float)
    p.add_argument("--lambda2", dest="lam2", type=float)
    p.add_argument("--lambda3", dest="lam3", type=float)
    p.add_argument("--lambda4", dest="lam4", type=float)
    p.add_argument("--out", required=True, help="background")
    p.add_argument("--out2", required=True, help="rain layer")
    _add_config_flags(p)
    _add_metrics_flags(p)

    p = add("sr", _cmd_sr, "low-rank plus TV super-resolution")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--kernel", required=True, help="blur kernel (n3 = 1 container)")
    p.add_argument("--factor", type=int, required=True)
    p.add_argument("--lambda1", dest="lam1", type=float, default=1.0)
    p.add_argument("--lambda2", dest="lam2", type=float, default=0.1)
    p.add_argument("--out", required=True)
    _add_config_flags(p)
    _add_metrics_flags(p)

    p = add("cluster", _cmd_cluster, "free-submodule clustering of images")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--clusters", type=int, required=True)
    p.add_argument("--lambda1", dest="lam1", type=float)
    p.add_argument("--lambda2", dest="lam2", type=float)
    p.add_argument("--out", required=True, help="labels text file")
    p.add_argument("--out2", help="optional representation tensor")
    p.add_argument("--ref-labels", help="ground-truth labels for accuracy")
    _add_config_flags(p)
    _add_metrics_flags(p)

    p = add("synth", _cmd_synth, "generate synthetic data")
    p.add_argument("kind", choices=[
        "low_tubal_rank", "sparse_spikes", "missing_mask",
        "surveillance_video", "rain_streaks", "hsi_cube", "submodule_images",
    ])
    p.add_argument("--param", action="append",
                   help="generator parameter key=value (repeatable)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--out2")
    p.add_argument("--out3")
    p.add_argument("--out4")
    p.add_argument("--out5")

    p = add("metrics", _cmd_metrics, "compare two tensors or masks")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--ref", required=True)
    p.add_argument("--peak", type=float, default=1.0)
    p.add_argument("--metrics-csv")
    p.add_argument("--experiment")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
