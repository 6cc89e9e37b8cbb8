"""Command-line interface.

Exit codes: 0 success, 2 unparseable input, 3 invalid point set (reference
or general position), 4 oracle deviation above tolerance.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import statistics
import sys
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from .core import GeneralPositionError, InvalidPointSetError, PointSet
from .gradient import DominatedPointWarning, hv_gradient
from .hessian3d import hessian_3d_sweep
from .hessian_nd import hessian_objective
from .hypervolume import hv
from .oracle import FdConfig, fd_gradient, fd_hessian
from .problems import make_quadratic_mop, newton_step, random_front
from .sparse import SparseSymMatrix

log = logging.getLogger("hvhess")

EXIT_PARSE = 2
EXIT_INVALID = 3
EXIT_DEVIATION = 4


class InputError(Exception):
    pass


def _parse_vector(text: str) -> list[float]:
    try:
        return [float(t) for t in text.replace(";", ",").split(",") if t.strip()]
    except ValueError as exc:
        raise InputError(f"cannot parse vector {text!r}") from exc


def load_pointset(path: str, ref: str | None = None) -> PointSet:
    """Read a JSON document ``{"points": [...], "reference": [...]}`` or a CSV of points."""
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(str(exc)) from exc
    reference = _parse_vector(ref) if ref else None
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
            points = doc["points"]
            reference = reference if reference is not None else doc["reference"]
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise InputError(f"bad input document: {exc}") from exc
    else:
        rows = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
        try:
            points = [[float(v) for v in ln.split(",")] for ln in rows]
        except ValueError as exc:
            raise InputError(f"bad CSV row: {exc}") from exc
        if reference is None:
            raise InputError("CSV input needs --ref")
    try:
        pts = np.array(points, dtype=float)
        r = np.array(reference, dtype=float)
    except (ValueError, TypeError) as exc:
        raise InputError(f"points must form a rectangular numeric array: {exc}") from exc
    if r.ndim != 1 or (pts.size and (pts.ndim != 2 or pts.shape[1] != r.size)):
        raise InputError(f"points of shape {pts.shape} do not match reference of length {r.size}")
    return PointSet(pts, r)


def format_sparse(mat: SparseSymMatrix, **extra) -> str:
    """JSON with 17-significant-digit values so that parsing is lossless."""
    head = {"shape": list(mat.shape), "nnz": mat.nnz, "stored": len(mat.values), "symmetric": True, **extra}
    body = ", ".join(f"[{r}, {c}, {v:.17g}]" for r, c, v in mat.entries())
    return json.dumps(head)[:-1] + f', "entries": [{body}]}}'


def parse_sparse(text: str) -> SparseSymMatrix:
    doc = json.loads(text)
    entries = {(int(r), int(c)): float(v) for r, c, v in doc["entries"]}
    return SparseSymMatrix.from_entries(doc["shape"][0], entries)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _hessian(ps: PointSet, algorithm: str) -> SparseSymMatrix:
    if algorithm == "sweep3d":
        if ps.m != 3:
            raise InvalidPointSetError(f"--algorithm sweep3d needs m = 3, got m = {ps.m}")
        return hessian_3d_sweep(ps)
    return hessian_objective(ps)


def _hv_fn(ps: PointSet):
    return lambda v: hv(PointSet.from_vector(v, ps.reference)).value


def _auto_step(ps: PointSet, base: float) -> float:
    """Default stencil width: ``base`` scaled to the data's extent, but at most a
    quarter of the smallest coordinate gap so the stencil stays in one cell."""
    if ps.n == 0:
        return base
    coords = np.vstack([ps.points, ps.reference])
    extent = float(np.max(ps.reference - ps.points.min(axis=0)))
    gap = float(np.min(np.diff(np.sort(coords, axis=0), axis=0)))
    return min(base * max(1.0, extent), gap / 4)


def _deviation(analytic, reference) -> float:
    a, b = np.asarray(analytic), np.asarray(reference)
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b) / np.maximum(1.0, np.abs(b))))


def cmd_hv(args) -> int:
    ps = load_pointset(args.input, args.ref)
    res = hv(ps)
    _emit(json.dumps({"hv": res.value, "n": ps.n, "m": ps.m, "dominated": res.dominated_count}), args.out)
    return 0


def cmd_grad(args) -> int:
    ps = load_pointset(args.input, args.ref)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DominatedPointWarning)
        g = hv_gradient(ps)
    doc = {"gradient": g.values.tolist(), "dominated": list(g.dominated)}
    status = 0
    if args.fd_check:
        cfg = FdConfig(h=args.h or _auto_step(ps, FdConfig.h))
        dev = _deviation(g.values, fd_gradient(_hv_fn(ps), ps.concat(), cfg))
        doc["fd_deviation"] = dev
        status = EXIT_DEVIATION if dev > args.tol else 0
    _emit(json.dumps(doc), args.out)
    return status


def cmd_hess(args) -> int:
    ps = load_pointset(args.input, args.ref)
    H = _hessian(ps, args.algorithm)
    extra = {"algorithm": args.algorithm}
    status = 0
    if args.fd_check:
        cfg = FdConfig(h=args.h or _auto_step(ps, FdConfig.for_hessian().h))
        dev = _deviation(H.to_dense(), fd_hessian(_hv_fn(ps), ps.concat(), cfg))
        extra["fd_deviation"] = dev
        status = EXIT_DEVIATION if dev > args.tol else 0
    if args.heatmap:
        np.savetxt(args.heatmap, H.to_dense(), delimiter=",", fmt="%.17g")
    _emit(format_sparse(H, **extra), args.out)
    return status


def cmd_verify(args) -> int:
    ps = load_pointset(args.input, args.ref)
    fn, x = _hv_fn(ps), ps.concat()
    gcfg = FdConfig(h=args.h or _auto_step(ps, FdConfig.h))
    hcfg = FdConfig(h=args.h or _auto_step(ps, FdConfig.for_hessian().h), relative_tol=1e-4, absolute_tol=1e-6)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DominatedPointWarning)
        g = hv_gradient(ps).values
    H = hessian_objective(ps)
    Hd = H.to_dense()
    g_fd = fd_gradient(fn, x, gcfg)
    H_fd = fd_hessian(fn, x, hcfg)
    report = {
        "hv": hv(ps).value,
        "gradient_max_abs_dev": float(np.max(np.abs(g - g_fd), initial=0.0)),
        "gradient_max_rel_dev": _deviation(g, g_fd),
        "hessian_max_abs_dev": float(np.max(np.abs(Hd - H_fd), initial=0.0)),
        "hessian_max_rel_dev": _deviation(Hd, H_fd),
        "hessian_nnz": H.nnz,
    }
    if args.tol is not None:
        ok = report["gradient_max_rel_dev"] <= args.tol and report["hessian_max_rel_dev"] <= args.tol
    else:
        ok = np.all(np.abs(g - g_fd) <= np.maximum(gcfg.absolute_tol, gcfg.relative_tol * np.abs(g_fd)))
        ok &= np.all(np.abs(Hd - H_fd) <= np.maximum(hcfg.absolute_tol, hcfg.relative_tol * np.abs(H_fd)))
    if ps.m == 3:
        S = hessian_3d_sweep(ps)
        report["sweep_support_equal"] = S.support() == H.support()
        report["sweep_max_abs_dev"] = float(np.max(np.abs(S.to_dense() - Hd), initial=0.0))
        ok &= report["sweep_support_equal"] and report["sweep_max_abs_dev"] <= 1e-12
    report["ok"] = bool(ok)
    _emit(json.dumps(report), args.out)
    return 0 if ok else EXIT_DEVIATION


def cmd_newton(args) -> int:
    if args.problem != "quad":
        raise InputError(f"unknown problem {args.problem!r}")
    model = make_quadratic_mop(2, 2, [[0.0, 0.0], [1.0, 0.0]])
    rng = np.random.default_rng(args.seed)
    X = rng.random((args.n_points, 2))
    ref = _parse_vector(args.ref) if args.ref else [2.5, 2.5]
    lines = ["step,hv_before,hv_after,step_length,fallback"]
    for t in range(args.steps):
        res = newton_step(X, model, ref)
        if res.fallback:
            log.info("step %d: %s", t, res.reason)
        lines.append(f"{t},{res.hv_before:.17g},{res.hv_after:.17g},{res.step:.17g},{int(res.fallback)}")
        X = res.X_next
    _emit("\n".join(lines), args.out)
    return 0


def _bench_one(n: int, seed, repeats: int) -> tuple[int, float, int]:
    ps = PointSet(random_front(n, 3, np.random.default_rng(seed)), np.full(3, 1.1))
    times, nnz = [], 0
    for _ in range(repeats):
        t0 = time.perf_counter()
        nnz = hessian_3d_sweep(ps).nnz
        times.append(time.perf_counter() - t0)
    return n, statistics.median(times), nnz


def run_bench(sizes: list[int], seed: int, repeats: int, workers: int = 1) -> list[tuple[int, float, int]]:
    seeds = np.random.SeedSequence(seed).spawn(len(sizes))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_bench_one, sizes, seeds, [repeats] * len(sizes)))
    return [_bench_one(n, s, repeats) for n, s in zip(sizes, seeds)]


def cmd_bench(args) -> int:
    sizes = [int(v) for v in _parse_vector(args.sizes)]
    workers = max(1, int(os.environ.get("HVH_THREADS", "1") or 1))
    rows = run_bench(sizes, args.seed, args.repeats, min(workers, len(sizes)))
    lines = ["n,seconds,nonzeros"] + [f"{n},{t:.6f},{nnz}" for n, t, nnz in rows]
    _emit("\n".join(lines), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hvhess", description="Hypervolume indicator, gradient and Hessian.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def point_input(p):
        p.add_argument("--input", required=True, help="JSON document or CSV of points ('-' for stdin)")
        p.add_argument("--ref", help='reference point "r1,r2,..." (required for CSV)')
        p.add_argument("--out", help="write the result here instead of stdout")

    p = sub.add_parser("hv", help="hypervolume value")
    point_input(p)
    p.set_defaults(func=cmd_hv)

    p = sub.add_parser("grad", help="objective-space gradient")
    point_input(p)
    p.add_argument("--fd-check", action="store_true")
    p.add_argument("--h", type=float)
    p.add_argument("--tol", type=float, default=1e-6)
    p.set_defaults(func=cmd_grad)

    p = sub.add_parser("hess", help="objective-space Hessian in coordinate form")
    point_input(p)
    p.add_argument("--algorithm", choices=("sweep3d", "general"), default="general")
    p.add_argument("--fd-check", action="store_true")
    p.add_argument("--h", type=float)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--heatmap", help="write the dense matrix as CSV rows")
    p.set_defaults(func=cmd_hess)

    p = sub.add_parser("verify", help="compare analytic derivatives with the oracles")
    point_input(p)
    p.add_argument("--h", type=float)
    p.add_argument("--tol", type=float)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("newton", help="hypervolume Newton demo on a test problem")
    p.add_argument("--problem", default="quad")
    p.add_argument("--n-points", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--steps", type=int, default=20)
    p.add_argument("--ref")
    p.add_argument("--out")
    p.set_defaults(func=cmd_newton)

    p = sub.add_parser("bench", help="time the 3-D sweep on random fronts")
    p.add_argument("--sizes", default="1000,10000,100000")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except GeneralPositionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        for i, j, k in exc.report.offending_pairs:
            print(f"tie: points {i} and {j} on axis {k}", file=sys.stderr)
        return EXIT_INVALID
    except InvalidPointSetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
