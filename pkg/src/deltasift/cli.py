"""Command-line front end.

One subcommand per toolkit operation: eval, sift, sokhotski, fourier,
heaviside, dirac, mvt, seq, pendulum, oracle.  Global flags --json / --csv
select machine-readable output (JSON mode emits exactly one document on
stdout), --plot PATH writes a static SVG where the subcommand has a natural
figure, --precision and --trunc configure the engine.  Exit codes: 0 success,
1 computation error, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

import mpmath

from . import __version__
from .config import set_default_trunc, set_precision
from .errors import DeltaSiftError
from . import exprlang
from . import kernels
from . import oracle
from . import series as S
from . import seqring


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _eta_power(exp: Fraction) -> S.SeriesNumber:
    return S.eta(exp)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON document")
    common.add_argument("--csv", action="store_true", help="emit CSV rows")
    common.add_argument("--plot", metavar="PATH", help="write a static SVG figure")
    common.add_argument("--precision", type=int, metavar="DIGITS",
                        help="working precision in decimal digits (>= 30)")
    common.add_argument("--trunc", type=_fraction, metavar="ORDER",
                        help="default series truncation order")

    parser = argparse.ArgumentParser(
        prog="deltasift",
        description="Infinitesimal series arithmetic and delta-kernel integrals",
        parents=[common])
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("eval", parents=[common],
                        help="evaluate a series-language expression")
    p.add_argument("expr", help="expression, e.g. 'st((1+eta)^2)'")

    p = subs.add_parser("sift", parents=[common],
                        help="sifting integral of a polynomial against the kernel")
    p.add_argument("--f", default="poly: 1", help="test function, 'poly: ...'")
    p.add_argument("--a", type=float, default=0.0, help="window center")
    p.add_argument("--alpha-exp", type=_fraction, default=Fraction(1),
                   help="scale alpha = eta^Q")
    p.add_argument("--eps-exp", type=_fraction, default=None,
                   help="half-width eps = eta^Q")
    p.add_argument("--eps-real", type=float, default=None,
                   help="appreciable real half-width")

    p = subs.add_parser("sokhotski", parents=[common],
                        help="regularized reciprocal: PV and impulse parts")
    p.add_argument("--phi", required=True, help="rational, 'rat: (1)/(1+x^2)'")
    p.add_argument("--alpha-exp", type=_fraction, default=Fraction(1))

    p = subs.add_parser("fourier", parents=[common],
                        help="trigonometric kernel and its reduced integral")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--mu", type=float, default=None, help="kernel mode: second angle")
    p.add_argument("--eps-exp", type=_fraction, default=Fraction(1))
    p.add_argument("--reduced", action="store_true", help="reduced-integral mode")
    p.add_argument("--f-at-x", type=float, default=1.0,
                   help="reduced mode: value of f at x")

    p = subs.add_parser("heaviside", parents=[common],
                        help="standard part of arctan(x/alpha) step geometry")
    p.add_argument("--x", type=float, default=None)
    p.add_argument("--alpha-exp", type=_fraction, default=Fraction(1))
    p.add_argument("--samples", default=None,
                   help="comma-separated sample points for the zigzag check")
    p.add_argument("--unit", action="store_true",
                   help="also report the {0,1} renormalization")

    p = subs.add_parser("dirac", parents=[common],
                        help="unit-impulse conditions for the normalized kernel")
    p.add_argument("--alpha-exp", type=_fraction, default=Fraction(1))
    p.add_argument("--probes", default="-10,-1,-0.1,0.1,1,10")
    p.add_argument("--f", default=None, help="optional polynomial to sift")

    p = subs.add_parser("mvt", parents=[common],
                        help="mean-value theta for a polynomial over an "
                             "infinitesimal increment")
    p.add_argument("--poly", required=True, help="'poly: x^3'")
    p.add_argument("--x0", type=float, default=0.0)
    p.add_argument("--h-exp", type=_fraction, default=Fraction(1),
                   help="increment h = eta^Q")

    p = subs.add_parser("seq", parents=[common],
                        help="sequence-ring queries for a rational generator")
    p.add_argument("--gen", required=True, help="e.g. '(2*n^2+1)/(n^2)'")
    p.add_argument("--st", action="store_true", help="report the limit only")
    p.add_argument("--ideal", choices=["ez", "null"], default=None)
    p.add_argument("--equals", default=None, help="second generator to compare")

    p = subs.add_parser("pendulum", parents=[common],
                        help="measured pendulum period vs the closed-form laws")
    p.add_argument("--C", type=float, required=True, help="amplitude in radians")
    p.add_argument("--model", choices=["linear", "nonlinear"], default="nonlinear")
    p.add_argument("--g", type=float, default=9.80665)
    p.add_argument("--ell", type=float, default=1.0)
    p.add_argument("--dt", type=float, default=2e-4)

    p = subs.add_parser("oracle", parents=[common],
                        help="run the quadrature verification corpus")
    p.add_argument("--write-corpus", metavar="PATH", default=None,
                   help="also write the corpus manifest CSV")

    return parser


# -- handlers --------------------------------------------------------------------


def _series_payload(value: S.SeriesNumber) -> dict:
    out = S.to_json_dict(value)
    try:
        out["text"] = S.to_text(value)
    except ValueError:
        out["text"] = None
    return out


def _cmd_eval(ns) -> dict:
    result = exprlang.evaluate(ns.expr, trunc=ns.trunc)
    if isinstance(result, S.Classification):
        return {"command": "eval", "kind": "classification",
                "classification": result.value}
    return {"command": "eval", "kind": "series",
            "series": _series_payload(result),
            "classification": S.classify(result).value}


def _cmd_sift(ns) -> dict:
    f = exprlang.parse_testfunction(ns.f)
    alpha = _eta_power(ns.alpha_exp)
    if ns.eps_real is not None:
        eps = ns.eps_real
    elif ns.eps_exp is not None:
        eps = _eta_power(ns.eps_exp)
    else:
        eps = _eta_power(ns.alpha_exp / 2)
    report = kernels.sift(f, ns.a, alpha, eps)
    payload = {"command": "sift"}
    payload.update(report.to_json_dict())
    if ns.plot:
        from .plots import kernel_profile_svg

        kernel_profile_svg(ns.plot, center=ns.a)
        payload["plot"] = ns.plot
    return payload


def _cmd_sokhotski(ns) -> dict:
    phi = exprlang.parse_testfunction(ns.phi)
    result = kernels.sokhotski(phi, _eta_power(ns.alpha_exp))
    st = result.st
    return {"command": "sokhotski",
            "pv": float(result.pv_part),
            "delta_im": float(result.delta_part.imag),
            "phi_at_zero": float(result.phi_at_zero),
            "st_re": float(st.real),
            "st_im": float(st.imag)}


def _cmd_fourier(ns) -> dict:
    eps = _eta_power(ns.eps_exp)
    if ns.reduced:
        value = kernels.fourier_reduced_integral(ns.f_at_x, ns.x, eps)
        st = S.standard_part(value)
        payload = {"command": "fourier", "mode": "reduced",
                   "st": float(st),
                   "expected": float(2 * mpmath.pi * ns.f_at_x),
                   "series": _series_payload(value)}
    else:
        mu = ns.mu if ns.mu is not None else 0.0
        value = kernels.fourier_kernel(ns.x, mu, eps)
        lead = value.terms[0] if value.terms else None
        payload = {"command": "fourier", "mode": "kernel",
                   "classification": S.classify(value).value,
                   "leading_exponent": [lead[0].numerator, lead[0].denominator]
                   if lead else None,
                   "leading_coefficient": float(lead[1]) if lead else None,
                   "series": _series_payload(value)}
    if ns.plot:
        from .plots import fourier_profile_svg

        fourier_profile_svg(ns.plot)
        payload["plot"] = ns.plot
    return payload


def _cmd_heaviside(ns) -> dict:
    alpha = _eta_power(ns.alpha_exp)
    payload = {"command": "heaviside",
               "mass": float(kernels.arctan_family_mass(alpha))}
    if ns.x is not None:
        st = kernels.heaviside_st(ns.x, alpha)
        payload["x"] = ns.x
        payload["st"] = float(st)
        if ns.unit:
            payload["unit"] = float(kernels.heaviside_unit(ns.x, alpha))
    if ns.samples:
        samples = [float(s) for s in ns.samples.split(",") if s.strip()]
        payload["samples"] = samples
        payload["zigzag_ok"] = kernels.zigzag_check(samples, alpha)
    if ns.plot:
        from .plots import zigzag_svg

        zigzag_svg(ns.plot)
        payload["plot"] = ns.plot
    return payload


def _cmd_dirac(ns) -> dict:
    alpha = _eta_power(ns.alpha_exp)
    probes = [float(s) for s in ns.probes.split(",") if s.strip()]
    polys = None
    if ns.f is not None:
        polys = (exprlang.parse_testfunction(ns.f),)
    report = kernels.dirac_conditions(alpha, probes=probes, test_polys=polys)
    payload = {"command": "dirac"}
    payload.update(report.to_json_dict())
    if ns.plot:
        from .plots import kernel_profile_svg

        kernel_profile_svg(ns.plot)
        payload["plot"] = ns.plot
    return payload


def _cmd_mvt(ns) -> dict:
    f = exprlang.parse_testfunction(ns.poly)
    h = _eta_power(ns.h_exp)
    theta = S.mvt_theta(f, ns.x0, h)
    residual = S.mvt_residual(f, ns.x0, h, theta)
    lead = residual.terms[0][0] if residual.terms else residual.trunc
    return {"command": "mvt",
            "theta_st": float(S.standard_part(theta)),
            "theta": _series_payload(theta),
            "residual_leading_exponent": [lead.numerator, lead.denominator],
            "residual_trunc": [residual.trunc.numerator, residual.trunc.denominator]}


def _cmd_seq(ns) -> dict:
    gen = exprlang.parse_seq_generator(ns.gen)
    payload = {"command": "seq", "generator": ns.gen}
    want_st = ns.st or (ns.ideal is None and ns.equals is None)
    if want_st:
        try:
            limit = seqring.seq_limit(gen)
            value = limit.value
            payload["st"] = str(value)
            payload["st_float"] = float(value)
            payload["st_exact"] = limit.exact
        except DeltaSiftError as exc:
            payload["st"] = None
            payload["st_error"] = str(exc)
    tags = []
    if ns.ideal == "ez":
        tags = [seqring.IdealTag.F_EZ]
    elif ns.ideal == "null":
        tags = [seqring.IdealTag.F_NULL]
    elif not ns.st:
        tags = [seqring.IdealTag.F_EZ, seqring.IdealTag.F_NULL]
    if tags and ns.equals is None:
        payload["ideal"] = {tag.value: in_txt(seqring.in_ideal(gen, tag))
                            for tag in tags}
    if ns.equals is not None:
        other = exprlang.parse_seq_generator(ns.equals)
        use = tags or [seqring.IdealTag.F_NULL]
        payload["equals"] = {tag.value: in_txt(seqring.equals_mod(gen, other, tag))
                             for tag in use}
    return payload


def in_txt(verdict: seqring.Trilean) -> str:
    return verdict.value


def _cmd_pendulum(ns) -> dict:
    run = oracle.PendulumRun(C=ns.C, model=ns.model, g=ns.g, ell=ns.ell, dt=ns.dt)
    period = oracle.pendulum_period(run)
    linear = oracle.linear_period(run)
    payload = {"command": "pendulum", "model": ns.model, "C": ns.C, "dt": ns.dt,
               "period": period,
               "period_linear_formula": linear,
               "period_ratio": period / linear}
    if ns.model == "nonlinear":
        payload["elliptic_ratio"] = oracle.elliptic_period_ratio(ns.C)
    if ns.plot:
        from .plots import pendulum_svg

        pendulum_svg(ns.plot, C=ns.C, g=ns.g, ell=ns.ell)
        payload["plot"] = ns.plot
    return payload


def _cmd_oracle(ns) -> dict:
    rows = oracle.run_corpus()
    if ns.write_corpus:
        oracle.write_corpus_csv(ns.write_corpus)
    return {"command": "oracle",
            "entries": [{k: v for k, v in row.items()} for row in rows],
            "all_ok": all(row["ok"] for row in rows),
            "corpus_csv": ns.write_corpus}


_HANDLERS = {
    "eval": _cmd_eval,
    "sift": _cmd_sift,
    "sokhotski": _cmd_sokhotski,
    "fourier": _cmd_fourier,
    "heaviside": _cmd_heaviside,
    "dirac": _cmd_dirac,
    "mvt": _cmd_mvt,
    "seq": _cmd_seq,
    "pendulum": _cmd_pendulum,
    "oracle": _cmd_oracle,
}


# -- output ----------------------------------------------------------------------


def _print_human(payload: dict) -> None:
    command = payload.get("command", "")
    indent = ""
    for key, value in payload.items():
        if key == "command":
            print(f"[{command}]")
            continue
        if isinstance(value, dict):
            print(f"{indent}{key}:")
            for k2, v2 in value.items():
                print(f"{indent}  {k2}: {_short(v2)}")
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            print(f"{indent}{key}:")
            for row in value:
                print(f"{indent}  - " + ", ".join(f"{k}={_short(v)}"
                                                  for k, v in row.items()))
        else:
            print(f"{indent}{key}: {_short(value)}")


def _short(value) -> str:
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, dict):
        return json.dumps(value)
    if isinstance(value, list):
        return json.dumps(value)
    return str(value)


def _print_csv(payload: dict) -> None:
    writer = csv.writer(sys.stdout)
    command = payload.get("command")
    if command == "oracle":
        header = ["description", "value", "closed_form_value", "error",
                  "error_estimate", "tolerance", "evaluations", "ok"]
        writer.writerow(header)
        for row in payload["entries"]:
            writer.writerow([row[h] for h in header])
        return
    if command == "pendulum":
        writer.writerow(["model", "C", "dt", "period"])
        writer.writerow([payload["model"], payload["C"], payload["dt"],
                         payload["period"]])
        return
    writer.writerow(["key", "value"])
    for key, value in payload.items():
        if key == "command":
            continue
        writer.writerow([key, json.dumps(value) if isinstance(value, (dict, list))
                         else value])


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if ns.precision is not None:
        try:
            set_precision(ns.precision)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    if ns.trunc is not None:
        try:
            set_default_trunc(ns.trunc)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    try:
        payload = _HANDLERS[ns.command](ns)
    except (DeltaSiftError, ZeroDivisionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if ns.json:
        print(json.dumps(payload))
    elif ns.csv:
        _print_csv(payload)
    else:
        _print_human(payload)
    return 0


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
