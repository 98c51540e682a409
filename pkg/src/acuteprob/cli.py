"""Command-line interface.

Outputs are deterministic: JSON with sorted keys, or CSV preceded by a
"# config" line. Thread count and timing are never emitted, so output bytes
do not depend on them.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import ball3d, disk, estimator, isoperimetric, variation
from .errors import ConvergenceError, InvalidRegionError
from .geometry.io import load_region
from .geometry.regions import RadialRegion

EXIT_OK, EXIT_INVALID, EXIT_NONCONVERGENCE, EXIT_UNKNOWN_COMMAND = 0, 2, 3, 64


class UnknownCommand(Exception):
    pass


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        if "invalid choice" in message or "required: command" in message:
            raise UnknownCommand(message)
        raise UsageError(message)


def _emit_json(obj, out) -> None:
    out.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _emit_csv(config: dict, header, rows, out) -> None:
    buf = io.StringIO()
    buf.write("# config: " + json.dumps(config, sort_keys=True) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(["" if v is None else (repr(float(v)) if isinstance(v, (float, np.floating)) else v)
                    for v in row])
    out.write(buf.getvalue())


def _config(args, *keys) -> dict:
    cfg = {"command": args.command}
    if getattr(args, "action", None):
        cfg["action"] = args.action
    for k in keys:
        cfg[k] = getattr(args, k)
    return cfg


def _phi_grid(text: str):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise ValueError(f"bad --phi-grid {text!r}") from exc


def _near_disk(path) -> RadialRegion:
    """Load a region and bring it to normalized radial form."""
    region = load_region(path)
    if region.dim != 2:
        raise InvalidRegionError("variation commands need a planar region")
    if isinstance(region, RadialRegion):
        if np.all(np.abs(variation.low_modes(region.deviation)) <= variation.LOW_MODE_TOL):
            return region
    return variation.normalize_embedding(region).region


# ---------------------------------------------------------------- commands

def cmd_estimate(args, out):
    region = load_region(args.region)
    if args.phi_grid:
        cdf = estimator.estimate_F(region, _phi_grid(args.phi_grid), args.samples, args.seed, args.threads)
        rows = [(float(ph), e.value, e.std_err) for ph, e in zip(cdf.phi, cdf.values)]
        _emit_csv(_config(args, "region", "samples", "seed", "phi_grid"), ("phi", "F", "std_err"), rows, out)
        return
    est = estimator.estimate_p(region, args.samples, args.seed, args.threads)
    _emit_json({**est.as_dict(), "config": _config(args, "region", "samples", "seed")}, out)


def cmd_exact(args, out):
    values = {
        "p-disk": disk.P_DISK,
        "L": disk.L_CONST,
        "a-n": disk.a2_fourier_coeff(args.n),
        "legendre": ball3d.legendre_coeff(args.n),
    }
    _emit_json({"value": values[args.what], "config": _config(args, "what", "n")}, out)


def cmd_quadrature(args, out):
    region = load_region(args.region)
    val = estimator.quadrature_p(region, args.resolution)
    _emit_json({"value": val, "config": _config(args, "region", "resolution")}, out)


def cmd_a2_table(args, out):
    rows = disk.a2_table(args.n_theta, args.n_max)
    _emit_csv(_config(args, "n_theta", "n_max"), ("theta", "A2", "n", "a_n"), rows, out)


def cmd_variation(args, out):
    if args.action == "spectrum":
        region = _near_disk(args.region)
        g = region.deviation
        power = variation.autocorrelation_spectrum(g)
        rows = []
        for n in range(args.modes + 1):
            c = g.cos[n] if n <= g.K else 0.0
            d = g.sin[n - 1] if 1 <= n <= g.K else 0.0
            a = disk.a2_fourier_coeff(n)
            rows.append((n, float(c), float(d), float(power[n]) if n <= g.K else 0.0, a, a - disk.L_CONST))
        _emit_csv(_config(args, "region", "modes"), ("n", "c_n", "d_n", "power", "a_n", "a_n_minus_L"), rows, out)
        return
    region = _near_disk(args.region)
    g_norm = region.deviation.l2_norm()
    t = np.linspace(0.0, g_norm if g_norm > 0 else 1e-3, args.grid)
    trace = variation.homotopy_trace(region, t, args.method, args.resolution, args.samples, args.seed, args.threads)
    pbar = variation.barrier(t)
    margin = pbar + args.tol - trace.values
    rows = [(float(ti), e.value, e.std_err, float(pb), float(m))
            for ti, e, pb, m in zip(t, trace.p, pbar, margin)]
    cfg = _config(args, "region", "grid", "method", "resolution", "samples", "seed", "tol")
    if args.action == "barrier":
        rep = variation.barrier_check(trace, tol=args.tol)
        cfg.update(passes=rep.passes, below_disk=rep.below_disk)
    _emit_csv(cfg, ("t", "p", "stderr", "pbar", "margin"), rows, out)


def cmd_isoperim(args, out):
    if args.action == "ladder":
        rows, slope = isoperimetric.decay_curve(isoperimetric.DEFAULT_LADDER, args.samples, args.seed, args.threads)
        cfg = _config(args, "samples", "seed")
        cfg["slope"] = slope
        _emit_csv(cfg, ("h", "R", "p_mc", "std_err", "p_upper"),
                  [(r.h, r.ratio, r.p_mc, r.std_err, r.p_upper) for r in rows], out)
        return
    if not args.region:
        raise UsageError("isoperim report needs --region")
    region = load_region(args.region)
    rep = isoperimetric.partition_bound(region)
    obj = rep.as_dict()
    obj["above_threshold"] = isoperimetric.threshold_check(region)
    obj["config"] = _config(args, "region")
    _emit_json(obj, out)


def cmd_ball3d(args, out):
    if args.action == "signs":
        rows = ball3d.sign_pattern_check(args.max_m)
        _emit_csv(_config(args, "max_m"), ("m", "closed_form", "numeric", "sign_ok"),
                  [(r.m, r.closed_form, r.numeric, str(r.sign_ok).lower()) for r in rows], out)
        return
    est = ball3d.estimate_p_ball(args.samples, args.seed, threads=args.threads)
    _emit_json({**est.as_dict(), "config": _config(args, "samples", "seed")}, out)


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=None,
                        help=f"worker threads (default ${estimator.THREADS_ENV} or 1)")
    mc = argparse.ArgumentParser(add_help=False)
    mc.add_argument("--samples", type=int, default=10**6)
    mc.add_argument("--seed", type=int, default=estimator.DEFAULT_SEED)

    p = _Parser(prog="acuteprob", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("estimate", parents=[common, mc], help="Monte Carlo p(S) or largest-angle CDF")
    s.add_argument("--region", required=True)
    s.add_argument("--phi-grid", default=None, help='comma-separated angles, e.g. "1.2,1.5708,2.0"')
    s.set_defaults(func=cmd_estimate)

    s = sub.add_parser("exact", parents=[common], help="closed-form constants")
    s.add_argument("--what", required=True, choices=["p-disk", "L", "a-n", "legendre"])
    s.add_argument("--n", type=int, default=0, help="index for a-n and legendre")
    s.set_defaults(func=cmd_exact)

    s = sub.add_parser("quadrature", parents=[common], help="deterministic p(S) for planar regions")
    s.add_argument("--region", required=True)
    s.add_argument("--resolution", type=int, default=estimator.DEFAULT_RESOLUTION)
    s.set_defaults(func=cmd_quadrature)

    s = sub.add_parser("a2-table", parents=[common], help="CSV of A2(theta) and its Fourier coefficients")
    s.add_argument("--n-theta", type=int, default=65)
    s.add_argument("--n-max", type=int, default=20)
    s.set_defaults(func=cmd_a2_table)

    s = sub.add_parser("variation", parents=[common, mc], help="spectrum, homotopy trace, barrier check")
    s.add_argument("action", choices=["spectrum", "homotopy", "barrier"])
    s.add_argument("--region", required=True)
    s.add_argument("--modes", type=int, default=8)
    s.add_argument("--grid", type=int, default=9)
    s.add_argument("--method", choices=["mc", "quad"], default="quad")
    s.add_argument("--resolution", type=int, default=estimator.DEFAULT_RESOLUTION)
    s.add_argument("--tol", type=float, default=2e-4)
    s.set_defaults(func=cmd_variation)

    s = sub.add_parser("isoperim", parents=[common, mc], help="partition bound report or decay ladder")
    s.add_argument("action", nargs="?", choices=["report", "ladder"], default="report")
    s.add_argument("--region", default=None)
    s.set_defaults(func=cmd_isoperim)

    s = sub.add_parser("ball3d", parents=[common, mc], help="3-ball sign table or Monte Carlo")
    s.add_argument("action", choices=["signs", "estimate"])
    s.add_argument("--max-m", type=int, default=20)
    s.set_defaults(func=cmd_ball3d)
    return p


def _fail(code: int, kind: str, message: str, err) -> int:
    err.write(json.dumps({"error": kind, "message": message}, sort_keys=True) + "\n")
    return code


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UnknownCommand as exc:
        return _fail(EXIT_UNKNOWN_COMMAND, "unknown_command", str(exc), err)
    except UsageError as exc:
        return _fail(EXIT_INVALID, "usage", str(exc), err)
    try:
        if args.threads is None:
            args.threads = estimator.default_threads()
        if args.threads < 1 or getattr(args, "samples", 1) < 1:
            raise ValueError("--threads and --samples must be >= 1")
        args.func(args, out)
    except ConvergenceError as exc:
        return _fail(EXIT_NONCONVERGENCE, "non_convergence", str(exc), err)
    except InvalidRegionError as exc:
        return _fail(EXIT_INVALID, "invalid_region", str(exc), err)
    except (ValueError, UsageError, OSError) as exc:
        return _fail(EXIT_INVALID, "validation", str(exc), err)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
