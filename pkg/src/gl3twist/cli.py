"""Subcommand front-end emitting plot-ready CSV tables.

Every artifact starts with a '#'-prefixed header block recording form
parameters, the analytic conductor, the epsilon instantiations, and the
library version, so a results file is self-describing.  Exit codes:
0 success, 2 validation error, 3 numerical-tolerance failure.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from . import __version__
from .arith import kloosterman
from .diophantine import choose_Q, dirichlet_approx
from .forms import (EisensteinForm, LanglandsParams, SymSquareForm,
                    ingest_gl2_table)
from .phase import (PhaseContext, PhaseSingularityError, C_poly, delta,
                    f_eval, f_prime, f_second)
from .sums import (SumExperiment, SumMode, alpha_preset_mixed, direct_sum,
                   dual_sum, theorem_envelopes)
from .transform import (EPS_CLASSIFY, GammaQuotientSpec, asymptotic_psi,
                        psi_k_contour)
from .window import ModulatedWindow, direct_I, saddle_I

EPS_ENVELOPE_FINAL = 0.05
EPS_ENVELOPE_TK = 0.1

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_TOLERANCE = 3


class ValidationError(ValueError):
    pass


def _parse_params(text: str) -> LanglandsParams:
    try:
        parts = [float(p) for p in text.split(",")]
        if len(parts) != 3:
            raise ValueError
        return LanglandsParams(*parts)
    except ValueError as exc:
        raise ValidationError(
            f"--params must be three comma-separated reals summing to 0, got {text!r}"
        ) from exc


def _build_form(kind: str, params: str | None, data: str | None):
    if kind == "eisenstein":
        if params is None:
            raise ValidationError("--kind eisenstein requires --params a1,a2,a3")
        return EisensteinForm(_parse_params(params))
    if kind == "symsquare":
        if data is None:
            raise ValidationError("--kind symsquare requires --data <eigenvalue file>")
        try:
            return SymSquareForm(ingest_gl2_table(data))
        except (OSError, ValueError) as exc:
            raise ValidationError(f"cannot ingest {data}: {exc}") from exc
    raise ValidationError(f"unknown form kind {kind!r} (expected eisenstein or symsquare)")


def _workers() -> int:
    raw = os.environ.get("GL3TWIST_WORKERS", "1")
    try:
        n = int(raw)
        if n < 1:
            raise ValueError
    except ValueError:
        raise ValidationError(f"GL3TWIST_WORKERS must be a positive integer, got {raw!r}")
    return n


def _header(out, form=None, extra: dict | None = None):
    print(f"# gl3twist {__version__}", file=out)
    print(f"# eps: classification={EPS_CLASSIFY} envelope={EPS_ENVELOPE_FINAL}"
          f" tk={EPS_ENVELOPE_TK}", file=out)
    if form is not None:
        a1, a2, a3 = form.params.as_tuple()
        print(f"# form: params=({a1:g},{a2:g},{a3:g}) conductor={form.conductor:.9g}"
              f" cuspidal={getattr(form, 'cuspidal', False)}", file=out)
    for key, val in (extra or {}).items():
        print(f"# {key}: {val}", file=out)


def _cmd_approx(args, out) -> int:
    if args.Q < 1:
        raise ValidationError("--Q must be at least 1")
    r = dirichlet_approx(args.alpha, args.Q)
    print(f"{r.a} {r.q} {r.theta:.12g} {r.theta_bound:.12g}", file=out)
    return EXIT_OK


def _cmd_kloosterman(args, out) -> int:
    if args.c < 1:
        raise ValidationError("--c must be a positive modulus")
    print(f"{kloosterman(args.a, args.b, args.c):.9f}", file=out)
    return EXIT_OK


def _cmd_saddle(args, out) -> int:
    win = ModulatedWindow(args.N, args.theta, args.sigma)
    res = saddle_I(win, args.tau)
    if args.compare:
        quad = direct_I(win, args.tau)
        err = abs(res.main - quad)
        print(f"saddle {res.main.real:.12g}{res.main.imag:+.12g}j "
              f"quadrature {quad.real:.12g}{quad.imag:+.12g}j "
              f"error {err:.6g} regime {res.regime.value}", file=out)
    else:
        print(f"saddle {res.main.real:.12g}{res.main.imag:+.12g}j "
              f"estimate {res.error_estimate:.6g} regime {res.regime.value}", file=out)
    return EXIT_OK


def _cmd_phase(args, out) -> int:
    params = _parse_params(args.params)
    try:
        tmin, tmax, step = (float(v) for v in args.table.split(","))
        if step <= 0 or tmax < tmin:
            raise ValueError
    except ValueError:
        raise ValidationError(f"--table expects tmin,tmax,step with step > 0, got {args.table!r}")
    ctx = PhaseContext(args.x, args.N, args.theta, params)
    form = EisensteinForm(params)
    _header(out, form, {"phase": f"x={args.x} N={args.N} theta={args.theta}"})
    print("t,f,fprime,fsecond,C,Delta", file=out)
    t = tmin
    while t <= tmax + 1e-12 * max(1.0, abs(tmax)):
        try:
            row = (f_eval(ctx, t), f_prime(ctx, t), f_second(ctx, t),
                   C_poly(params, t), delta(ctx, t))
            print(f"{t:.12g}," + ",".join(f"{v:.12g}" for v in row), file=out)
        except PhaseSingularityError:
            print(f"{t:.12g},nan,nan,nan,nan,nan", file=out)
        t += step
    return EXIT_OK


def _cmd_psi(args, out) -> int:
    params = _parse_params(args.params)
    if args.k not in (0, 1):
        raise ValidationError("--k must be 0 or 1")
    if not (-0.5 < args.sigma <= 0.5):
        raise ValidationError("--sigma must lie in (-1/2, 1/2]")
    if args.tol <= 0:
        raise ValidationError("--tol must be positive")
    spec = GammaQuotientSpec(args.k, params)
    win = ModulatedWindow(args.N, args.theta)
    res = psi_k_contour(args.x, spec, win, sigma=args.sigma, tol=args.tol)
    form = EisensteinForm(params)
    _header(out, form, {"psi": f"x={args.x} k={args.k} N={args.N} theta={args.theta}"})
    print(f"value {res.value.real:.12g}{res.value.imag:+.12g}j error {res.quadrature_error:.6g} "
          f"sigma {res.contour_sigma:g} truncation {res.truncation_tau:.6g} "
          f"regime {res.regime.value} converged {res.converged}", file=out)
    if args.asymptotic:
        surro = asymptotic_psi(args.x, spec, win)
        ratio = abs(surro) / abs(res.value) if res.value != 0 else math.inf
        print(f"asymptotic {surro.real:.12g}{surro.imag:+.12g}j ratio {ratio:.6g}", file=out)
    return EXIT_OK if res.converged else EXIT_TOLERANCE


def _parse_N_list(text: str) -> list[float]:
    if ".." in text:
        lo_s, hi_s = text.split("..", 1)
        lo, hi = float(lo_s), float(hi_s)
        if not 1 <= lo <= hi:
            raise ValidationError(f"bad N range {text!r}")
        out = []
        n = lo
        while n <= hi * (1 + 1e-12):
            out.append(n)
            n *= 2.0
        return out
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise ValidationError(f"--N expects lo..hi or a comma list, got {text!r}")


def _parse_alphas(text: str, seed: int) -> list[float]:
    if text == "preset:mixed":
        return alpha_preset_mixed(seed=seed)
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise ValidationError(f"--alphas expects preset:mixed or a comma list, got {text!r}")


def _scan_cell(form, N, alpha, Q_flag, mode):
    Q = choose_Q(N, form.conductor) if Q_flag == "auto" else float(Q_flag)
    exp = SumExperiment.create(form, N, alpha, Q=Q, mode=mode)
    S = direct_sum(exp)
    env_R, env_U = theorem_envelopes(N, form.conductor, eps=EPS_ENVELOPE_FINAL)
    theta_N = exp.approx.theta * N
    regime = ("small-theta-N"
              if abs(theta_N) <= max(1.0, form.conductor**EPS_CLASSIFY)
              else "saddle-regime")
    return (N, alpha, exp.approx.a, exp.approx.q, exp.approx.theta,
            abs(S), env_R, env_U, regime)


def _cmd_scan(args, out) -> int:
    form = _build_form(args.kind, args.params, args.data)
    N_list = _parse_N_list(args.N)
    alphas = _parse_alphas(args.alphas, args.seed)
    if args.Q != "auto":
        try:
            float(args.Q)
        except ValueError:
            raise ValidationError(f"--Q expects auto or a number, got {args.Q!r}")
    mode = SumMode.SHARP if args.mode == "sharp" else SumMode.SMOOTH
    workers = _workers()
    _header(out, form, {
        "scan": f"mode={mode.value} Q={args.Q} seed={args.seed} workers={workers}",
        "columns": "N,alpha,a,q,theta,absS,envelope_R,envelope_U,regime",
    })
    print("N,alpha,a,q,theta,absS,envelope_R,envelope_U,regime", file=out)
    cells = [(N, alpha) for N in N_list for alpha in alphas]
    rows: list[tuple | None] = [None] * len(cells)
    failures = 0
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futs = [pool.submit(_scan_cell, form, N, alpha, args.Q, mode)
                    for N, alpha in cells]
            for i, fut in enumerate(futs):
                try:
                    rows[i] = fut.result()
                except Exception as exc:  # per-cell failure, sweep continues
                    rows[i] = (cells[i][0], cells[i][1], exc)
                    failures += 1
    else:
        for i, (N, alpha) in enumerate(cells):
            try:
                rows[i] = _scan_cell(form, N, alpha, args.Q, mode)
            except Exception as exc:
                rows[i] = (N, alpha, exc)
                failures += 1
    for row in rows:
        if len(row) == 3:
            N, alpha, exc = row
            print(f"{N:.12g},{alpha:.12g},,,,,,,failed: {exc}", file=out)
        else:
            N, alpha, a, q, theta, absS, eR, eU, regime = row
            print(f"{N:.12g},{alpha:.12g},{a},{q},{theta:.12g},"
                  f"{absS:.12g},{eR:.12g},{eU:.12g},{regime}", file=out)
    return EXIT_OK


def _cmd_voronoi_check(args, out) -> int:
    form = _build_form(args.kind, args.params, args.data)
    if not getattr(form, "cuspidal", False):
        raise ValidationError(
            "voronoi-check requires a cuspidal provider; Eisenstein providers "
            "are excluded by design (polar terms)")
    if args.q < 1 or math.gcd(args.a, args.q) != 1:
        raise ValidationError("--a/--q must be a reduced fraction with q >= 1")
    if args.tol <= 0:
        raise ValidationError("--tol must be positive")
    alpha = args.a / args.q
    exp = SumExperiment.create(form, args.N, alpha, Q=float(args.q), mode=SumMode.SMOOTH)
    report = dual_sum(exp, tol=args.tol)
    _header(out, form, {"voronoi": f"N={args.N} a={args.a} q={args.q} tol={args.tol}"})
    dual = report.dual_plus + report.dual_minus
    print(f"direct {report.direct.real:.12g}{report.direct.imag:+.12g}j "
          f"dual {dual.real:.12g}{dual.imag:+.12g}j "
          f"residual {report.residual:.6g} terms {report.dual_terms_used}", file=out)
    ok = report.residual <= 1e-3 * (abs(report.direct) + 1.0)
    print(f"identity {'pass' if ok else 'FAIL'}", file=out)
    return EXIT_OK if ok else EXIT_TOLERANCE


def _cmd_forms(args, out) -> int:
    if args.action != "coeff":
        raise ValidationError(f"unknown forms action {args.action!r} (expected coeff)")
    form = _build_form(args.kind, args.params, args.data)
    if args.m < 1 or args.n < 1:
        raise ValidationError("--m and --n must be positive")
    val = form.coeff(args.m, args.n)
    print(f"{val.real:.12g}{val.imag:+.12g}j", file=out)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gl3twist")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("approx", help="Dirichlet rational approximation")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--Q", type=float, required=True)
    p.set_defaults(func=_cmd_approx)

    p = sub.add_parser("kloosterman", help="Kloosterman sum S(a,b;c)")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--c", type=int, required=True)
    p.set_defaults(func=_cmd_kloosterman)

    p = sub.add_parser("saddle", help="stationary-phase value of I(tau)")
    p.add_argument("--N", type=float, required=True)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--tau", type=float, required=True)
    p.add_argument("--sigma", type=float, default=0.0)
    p.add_argument("--compare", action="store_true")
    p.set_defaults(func=_cmd_saddle)

    p = sub.add_parser("phase", help="phase-function table")
    p.add_argument("--params", required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--N", type=float, required=True)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--table", required=True, metavar="tmin,tmax,step")
    p.set_defaults(func=_cmd_phase)

    p = sub.add_parser("psi", help="Voronoi transform Psi_k(x)")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--params", required=True)
    p.add_argument("--N", type=float, required=True)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--sigma", type=float, default=0.0)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--asymptotic", action="store_true")
    p.set_defaults(func=_cmd_psi)

    p = sub.add_parser("scan", help="alpha/N sweep of |S| against envelopes")
    p.add_argument("--kind", default="eisenstein")
    p.add_argument("--params")
    p.add_argument("--data")
    p.add_argument("--N", required=True, metavar="lo..hi|list")
    p.add_argument("--alphas", default="preset:mixed")
    p.add_argument("--Q", default="auto")
    p.add_argument("--mode", choices=("sharp", "smooth"), default="sharp")
    p.add_argument("--seed", type=int, default=1729)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("voronoi-check", help="direct-vs-dual Voronoi residual")
    p.add_argument("--kind", default="symsquare")
    p.add_argument("--params")
    p.add_argument("--data")
    p.add_argument("--N", type=float, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-6)
    p.set_defaults(func=_cmd_voronoi_check)

    p = sub.add_parser("forms", help="coefficient queries")
    p.add_argument("action", choices=("coeff",))
    p.add_argument("--kind", default="eisenstein")
    p.add_argument("--params")
    p.add_argument("--data")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_forms)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_VALIDATION if exc.code not in (0, None) else 0
    out_path = getattr(args, "out", None)
    try:
        if out_path:
            with open(out_path, "w") as out:
                return args.func(args, out)
        return args.func(args, sys.stdout)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
