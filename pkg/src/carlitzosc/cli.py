"""``carlitzosc`` command-line interface.

Exit codes: 0 success, 1 a verification failed, 2 usage or domain error,
3 precision exhausted.  Output is deterministic for a fixed configuration.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from fractions import Fraction
from typing import Any

from carlitzosc import carlitz
from carlitzosc import expseries as ex
from carlitzosc import space as sp
from carlitzosc.algebra.laurent import Laurent, rat_to_laurent
from carlitzosc.algebra.poly import Poly
from carlitzosc.algebra.ratfunc import RatFunc
from carlitzosc.errors import ConsistencyError, DomainError, PrecisionExhausted
from carlitzosc.serialize import ParseError, format_scalar, parse_scalar, to_json
from carlitzosc.suites import SUITES, RunConfig, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PRECISION = 0, 1, 2, 3
CONFIG_ENV = "CARLITZ_DEFAULTS"
_CONFIG_KEYS = {f.name for f in dataclasses.fields(RunConfig)}


class UsageError(Exception):
    pass


# -- configuration -----------------------------------------------------------------------------


def load_config(args: argparse.Namespace) -> RunConfig:
    """Defaults, then the JSON file named by $CARLITZ_DEFAULTS, then flags."""
    values: dict[str, Any] = {}
    path = os.environ.get(CONFIG_ENV)
    if path:
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise UsageError(f"cannot read {CONFIG_ENV}={path}: {e}") from e
        if not isinstance(data, dict):
            raise UsageError(f"{CONFIG_ENV} file must hold a JSON object")
        unknown = set(data) - _CONFIG_KEYS
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
        values.update(data)
    for key in _CONFIG_KEYS:
        v = getattr(args, key, None)
        if v is not None:
            values[key] = v
    if values.get("modulus") is not None:
        m = values["modulus"]
        values["modulus"] = tuple(int(c) for c in (m.split(",") if isinstance(m, str) else m))
    cfg = RunConfig(**values)
    validate(cfg)
    return cfg


def validate(cfg: RunConfig) -> None:
    for name in ("p", "gamma", "imax", "M", "prec", "seed"):
        if not isinstance(getattr(cfg, name), int):
            raise UsageError(f"{name} must be an integer")
    if cfg.imax < 0 or cfg.M < 1 or cfg.prec < 1:
        raise UsageError("need imax >= 0, M >= 1 and prec >= 1")
    if cfg.format not in ("text", "json"):
        raise UsageError("format must be 'text' or 'json'")
    try:
        F = cfg.field()
    except ValueError as e:
        raise UsageError(str(e)) from e
    if cfg.ram_cap is not None:
        r = cfg.ram_cap
        while r % F.q == 0 and r > 1:
            r //= F.q
        if cfg.ram_cap < F.q or r != 1:
            raise UsageError(f"ram-cap must be a power of q = {F.q}, at least q")


# -- output ------------------------------------------------------------------------------------------


def _json_value(v) -> Any:
    if isinstance(v, (Poly, RatFunc, Laurent)):
        return to_json(v)
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_json_value(u) for u in v]
    if isinstance(v, dict):
        return {k: _json_value(u) for k, u in v.items()}
    return v


def _text_value(v) -> str:
    if isinstance(v, (Poly, RatFunc, Laurent)):
        return format_scalar(v)
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_text_value(u) for u in v) + "]"
    return str(v)


def _linear_json(phi) -> list:
    return [_json_value(c) for c in phi.coeffs]


def emit(cfg: RunConfig, doc: dict, text_lines: list[str], out) -> None:
    if cfg.format == "json":
        out.write(json.dumps(_json_value(doc), sort_keys=True, indent=2) + "\n")
    else:
        out.write("\n".join(text_lines) + "\n")


def _config_doc(cfg: RunConfig) -> dict:
    d = dataclasses.asdict(cfg)
    d["q"] = cfg.q
    d["ram_cap"] = cfg.cap
    d.pop("cases", None)
    d.pop("format", None)
    if d["modulus"] is not None:
        d["modulus"] = list(d["modulus"])
    return d


def scalar_arg(cfg: RunConfig, text: str | None, name: str, default: str | None = None):
    if text is None:
        if default is None:
            raise UsageError(f"--{name} is required")
        text = default
    try:
        return parse_scalar(text, cfg.field())
    except ParseError as e:
        raise UsageError(f"cannot parse --{name} {text!r}: {e}") from e


def series_arg(cfg: RunConfig, v):
    """Non-monomial denominators become series truncated at the working precision."""
    if isinstance(v, RatFunc) and not v.is_zero():
        den = v.den
        if len(den.coeffs) - den.valuation() != 1:
            return rat_to_laurent(v, cfg.prec * v.ram)
    return v


def poly_arg(cfg: RunConfig, text: str | None, name: str, default: str | None = None) -> Poly:
    v = scalar_arg(cfg, text, name, default)
    if isinstance(v, RatFunc) and v.is_poly():
        return v.as_poly()
    raise UsageError(f"--{name} must be a polynomial in F_q[x], got {format_scalar(v)}")


# -- commands ----------------------------------------------------------------------------------------


def cmd_table(cfg: RunConfig, args, out) -> int:
    F = cfg.field()
    cache = carlitz.factorials(F, cfg.imax)
    rows, lines = [], [f"# F_{F.q}, imax = {cfg.imax}"]
    for i in range(cfg.imax + 1):
        e, f = carlitz.e_poly(cache, i), carlitz.f_poly(cache, i)
        rows.append({
            "i": i, "bracket": cache.brackets[i], "D": cache.D[i], "L": cache.L[i],
            "e": _linear_json(e), "f": _linear_json(f),
        })
        lines += [
            f"i = {i}",
            f"  [i] = {format_scalar(cache.brackets[i])}",
            f"  D_{i} = {format_scalar(cache.D[i])}",
            f"  L_{i} = {format_scalar(cache.L[i])}",
            f"  e_{i}(t) = {e}",
            f"  f_{i}(t) = {f}",
        ]
    hs, qs = [], []
    jmax = min(F.q**2, 16, F.q ** (cfg.imax + 1))
    for j in range(jmax):
        h, _, _ = carlitz.h_poly(cache, j)
        Q = carlitz.Q_poly(F, j)
        hs.append({"j": j, "h": [_json_value(c) for c in h.coeffs]})
        qs.append({"j": j, "Q": [_json_value(c) for c in Q.coeffs]})
        lines += [f"h_{j}(t) = {h}", f"Q_{j}(t) = {Q}"]
    emit(cfg, {"config": _config_doc(cfg), "rows": rows, "h": hs, "Q": qs}, lines, out)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, args, out) -> int:
    name = args.suite_flag or args.suite or "all"
    if name != "all" and name not in SUITES:
        raise UsageError(f"unknown suite {name!r}; choose from all, {', '.join(SUITES)}")
    names = list(SUITES) if name == "all" else [name]
    reports = [run_suite(n, cfg, timing=args.timing) for n in names]
    statuses = [r.status for r in reports]
    status = EXIT_FAIL if EXIT_FAIL in statuses else (EXIT_PRECISION if EXIT_PRECISION in statuses else EXIT_OK)
    verdict = {EXIT_OK: "pass", EXIT_FAIL: "fail", EXIT_PRECISION: "precision exhausted"}[status]
    doc = {"config": _config_doc(cfg), "reports": [r.to_dict() for r in reports], "result": verdict}
    lines = [r.to_text() for r in reports] + [f"overall: {verdict}"]
    emit(cfg, doc, lines, out)
    return status


def _coeff_args(cfg: RunConfig, texts: list[str]) -> sp.CarlitzCoeffs:
    F = cfg.field()
    vals = [scalar_arg(cfg, s, "coefficient") for s in texts]
    return sp.CarlitzCoeffs(F, vals)


def cmd_eval(cfg: RunConfig, args, out) -> int:
    F = cfg.field()
    t = poly_arg(cfg, args.t, "t", "x")
    if args.coeffs:
        c = _coeff_args(cfg, args.coeffs)
        cache = carlitz.factorials(F, max(cfg.imax, c.M))
        value = sp.eval_fn(cache, c, t)
        doc = {"t": t, "coeffs": list(c.coeffs), "value": value, "norm": str(sp.norm(c))}
        lines = [f"phi = {c}", f"phi({format_scalar(t)}) = {format_scalar(value)}", f"||phi|| = {sp.norm(c)}"]
    else:
        cache = carlitz.factorials(F, max(cfg.imax, cfg.M - 1))
        vals = [carlitz.f_value(cache, i, t) for i in range(cfg.M)]
        doc = {"t": t, "f": vals}
        lines = [f"f_{i}({format_scalar(t)}) = {format_scalar(v)}" for i, v in enumerate(vals)]
    emit(cfg, doc, lines, out)
    return EXIT_OK


def cmd_exp(cfg: RunConfig, args, out) -> int:
    F = cfg.field()
    z = series_arg(cfg, scalar_arg(cfg, args.z, "z"))
    v = ex.carlitz_exp(F, z, prec=cfg.prec)
    emit(cfg, {"z": z, "exp": v, "precision": cfg.prec},
         [f"e_C({format_scalar(z)}) = {format_scalar(v)}"], out)
    return EXIT_OK


def cmd_rho(cfg: RunConfig, args, out) -> int:
    F = cfg.field()
    zeta = series_arg(cfg, scalar_arg(cfg, args.zeta, "zeta"))
    v = ex.rho(F, zeta, prec=cfg.prec)
    emit(cfg, {"zeta": zeta, "rho": v, "precision": cfg.prec},
         [f"rho({format_scalar(zeta)}) = {format_scalar(v)}"], out)
    return EXIT_OK


def cmd_wz(cfg: RunConfig, args, out) -> int:
    F = cfg.field()
    z = series_arg(cfg, scalar_arg(cfg, args.z, "z"))
    coeffs = ex.wz_coeffs(F, z, cfg.M, cfg.prec)
    doc: dict[str, Any] = {"z": z, "M": cfg.M, "coeffs": list(coeffs.coeffs)}
    lines = [f"w_z = sum_n e_C(z)^(q^n) f_n, z = {format_scalar(z)}"]
    lines += [f"  c_{n} = {format_scalar(c)}" for n, c in enumerate(coeffs.coeffs)]
    status = EXIT_OK
    if args.t is not None:
        t = poly_arg(cfg, args.t, "t")
        ok, at, basis, direct = ex.wz_two_route(F, z, t, cfg.M, cfg.prec)
        doc.update({"t": t, "basis": basis, "direct": direct, "agree": ok, "certified_precision": at})
        lines += [
            f"basis route  w_z({format_scalar(t)}) = {format_scalar(basis)}",
            f"direct route e_C(tz) = {format_scalar(direct)}",
            f"agree: {'yes' if ok else 'NO'} to x^({at})",
        ]
        status = EXIT_OK if ok else EXIT_FAIL
    emit(cfg, doc, lines, out)
    return status


def cmd_coherent(cfg: RunConfig, args, out) -> int:
    F = cfg.field()
    lam = scalar_arg(cfg, args.lam, "lambda")
    c0 = scalar_arg(cfg, args.c0, "c0")
    u = sp.coherent_state(F, lam, c0, cfg.M)
    lam_s = sp.as_scalar(F, lam)
    am = sp.a_minus(u, cfg.cap)
    residual = [am[n] - lam_s * u[n] for n in range(am.M)]
    zero = all(r.is_zero() if hasattr(r, "is_zero") else r == 0 for r in residual)
    doc = {"lambda": lam, "c0": c0, "M": cfg.M, "coeffs": list(u.coeffs), "residual": residual,
           "residual_zero": zero}
    lines = [f"coherent state, lambda = {format_scalar(lam)}, c_0 = {format_scalar(c0)}"]
    lines += [f"  c_{n} = {format_scalar(c)}" for n, c in enumerate(u.coeffs)]
    lines.append("residual a-u - lambda u: " + ("0" if zero else _text_value(residual)))
    emit(cfg, doc, lines, out)
    return EXIT_OK if zero else EXIT_FAIL


def cmd_expand_h(cfg: RunConfig, args, out) -> int:
    F = cfg.field()
    n = args.n
    if n < 0:
        raise UsageError("n must be non-negative")
    depth = len(carlitz.DigitExpansion.of(n, F.q).digits) - 1
    cache = carlitz.factorials(F, max(cfg.imax, depth))
    cs = carlitz.expand_h_in_Q(cache, n)
    l, kappa = carlitz.l_and_kappa(F, n)
    doc = {"n": n, "coeffs": cs, "l": l, "kappa": kappa, "abs": [str(c.abs()) for c in cs]}
    lines = [f"h_{n} = sum_i c_{n},i Q_i"]
    lines += [f"  c_{n},{i} = {format_scalar(c)}   |c| = {c.abs()}" for i, c in enumerate(cs)]
    lines.append(f"l_{n} = {l}, kappa_{n} = {kappa}")
    emit(cfg, doc, lines, out)
    return EXIT_OK


# -- parser ------------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("configuration")
    g.add_argument("--p", type=int, help="characteristic (default 2)")
    g.add_argument("--gamma", type=int, help="q = p^gamma (default 1)")
    g.add_argument("--modulus", help="comma-separated monic modulus, constant term first")
    g.add_argument("--imax", type=int, help="Carlitz depth (default 8)")
    g.add_argument("--M", type=int, dest="M", help="basis truncation (default 8)")
    g.add_argument("--prec", type=int, help="precision in units of x (default 64)")
    g.add_argument("--ram-cap", type=int, dest="ram_cap", help="largest ramification index (default q^2)")
    g.add_argument("--seed", type=int, help="seed for randomized suites (default 0)")
    g.add_argument("--format", choices=["text", "json"])

    parser = argparse.ArgumentParser(prog="carlitzosc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("table", parents=[common], help="[i], D_i, L_i, e_i, f_i, h_j, Q_j")
    p = sub.add_parser("verify", parents=[common], help="run identity suites")
    p.add_argument("suite", nargs="?", help="all, " + ", ".join(SUITES))
    p.add_argument("--suite", dest="suite_flag")
    p.add_argument("--timing", action="store_true", help="report wall time (breaks byte-identity)")

    p = sub.add_parser("eval", parents=[common], help="f_i(t), or sum c_i f_i(t)")
    p.add_argument("--t")
    p.add_argument("coeffs", nargs="*", help="Carlitz coefficients c_0 c_1 ...")

    p = sub.add_parser("exp", parents=[common], help="Carlitz exponential")
    p.add_argument("--z")
    p = sub.add_parser("rho", parents=[common], help="inverse of the Carlitz exponential")
    p.add_argument("--zeta")
    p = sub.add_parser("wz", parents=[common], help="Carlitz coefficients of t -> e_C(tz)")
    p.add_argument("--z")
    p.add_argument("--t")
    p = sub.add_parser("coherent", parents=[common], help="eigenvectors of a-")
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--c0")
    p = sub.add_parser("expand-h", parents=[common], help="h_n in the interpolation basis Q_i")
    p.add_argument("n", type=int)
    return parser


COMMANDS = {
    "table": cmd_table, "verify": cmd_verify, "eval": cmd_eval, "exp": cmd_exp, "rho": cmd_rho,
    "wz": cmd_wz, "coherent": cmd_coherent, "expand-h": cmd_expand_h,
}


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        cfg = load_config(args)
        return COMMANDS[args.command](cfg, args, out)
    except PrecisionExhausted as e:
        print(f"error: precision exhausted: {e}", file=sys.stderr)
        return EXIT_PRECISION
    except (UsageError, DomainError, ParseError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ConsistencyError as e:
        print(f"error: internal identity failed: {e}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
