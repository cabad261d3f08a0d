"""Batch command-line front end.

One binary, eight subcommands, each wrapping one experiment: special-function
margins, eigenvalue scans, zero density, the indicator, the ball interior
mode, the overdetermined boundary residual, the per-ray comparison, and
far-field synthesis.  Parameters come from inline flags or a JSON config
file (flags win).  Output is a CSV or JSON table written atomically, with a
machine-readable PASS/FAIL summary line; exit status is 0 on PASS, 1 on a
numerical failure, 2 on a usage or config error.

Floats are printed with 15 significant digits and lines end with a bare
newline, so identical configs give byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from typing import Callable

import numpy as np
from scipy.special import spherical_jn

from .eigsearch import (
    density_estimate,
    dispersion_function,
    dispersion_log_abs,
    find_real_eigenvalues,
)
from .entire import indicator
from .scatter import (
    FarFieldPattern,
    StarlikeDomain,
    axis_directions,
    ball_eigenfunction,
    far_field_from_coeffs,
    load_domain,
    overdetermined_residual,
    per_ray_eigen_scan,
    residual_scan,
)
from .specfun import (
    L_MAX_SUPPORTED,
    SphericalDirection,
    riccati_table,
    sphere_quadrature,
    ylm_on_grid,
)
from .specfun.bessel import _scaled_trig

__all__ = ["main", "ConfigError"]


class ConfigError(Exception):
    """Bad flag, bad config value, or an unusable parameter combination."""


# parameter kinds: how config/flag values are validated and cast
_KINDS = ("int", "float", "str", "float_list", "pair_list", "coeff_list")


def _cast(name: str, kind: str, value):
    if kind == "int":
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{name} must be an integer, got {value!r}")
        if isinstance(value, float) and not value.is_integer():
            raise ConfigError(f"{name} must be an integer, got {value!r}")
        return int(value)
    if kind == "float":
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{name} must be a number, got {value!r}")
        return float(value)
    if kind == "str":
        if not isinstance(value, str):
            raise ConfigError(f"{name} must be a string, got {value!r}")
        return value
    if kind == "float_list":
        if isinstance(value, str):
            value = value.split(",")
        try:
            out = tuple(float(v) for v in value)
        except (TypeError, ValueError):
            raise ConfigError(f"{name} must be a list of numbers, got {value!r}")
        if not out:
            raise ConfigError(f"{name} must be nonempty")
        return out
    if kind == "pair_list":
        try:
            out = tuple((float(a), float(b)) for a, b in value)
        except (TypeError, ValueError):
            raise ConfigError(f"{name} must be a list of [theta, phi] pairs, got {value!r}")
        if not out:
            raise ConfigError(f"{name} must be nonempty")
        return out
    if kind == "coeff_list":
        try:
            out = {(int(n), int(m)): complex(re, im) for n, m, re, im in value}
        except (TypeError, ValueError):
            raise ConfigError(f"{name} must be a list of [n, m, re, im] rows, got {value!r}")
        if not out:
            raise ConfigError(f"{name} must be nonempty")
        return out
    raise AssertionError(kind)


class _Param:
    def __init__(self, name: str, kind: str, default=None, required: bool = False,
                 help: str = "", choices: tuple | None = None,
                 config_only: bool = False):
        assert kind in _KINDS
        self.name = name
        self.kind = kind
        self.default = default
        self.required = required
        self.help = help
        self.choices = choices
        self.config_only = config_only


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            config = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON config {path}: {exc}")
    if not isinstance(config, dict):
        raise ConfigError(f"config {path} must hold a JSON object")
    return config


def _merge(args: argparse.Namespace, params: list[_Param]) -> dict:
    config = _load_config(args.config)
    allowed = {p.name for p in params} | {"out", "format"}
    unknown = set(config) - allowed
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    merged = {}
    for p in params:
        value = None if p.config_only else getattr(args, p.name)
        if value is None and p.name in config:
            value = config[p.name]
        if value is None:
            if p.required:
                raise ConfigError(f"missing required parameter: {p.name}")
            merged[p.name] = p.default
            continue
        value = _cast(p.name, p.kind, value)
        if p.choices is not None and value not in p.choices:
            raise ConfigError(f"{p.name} must be one of {p.choices}, got {value!r}")
        merged[p.name] = value
    return merged


def _env_threads() -> int:
    raw = os.environ.get("SCHIFFER_LAB_THREADS")
    if raw is None:
        return 1
    try:
        threads = int(raw)
    except ValueError:
        raise ConfigError(f"SCHIFFER_LAB_THREADS must be an integer, got {raw!r}")
    if threads < 1:
        raise ConfigError(f"SCHIFFER_LAB_THREADS must be >= 1, got {threads}")
    return threads


# ---------------------------------------------------------------- rendering

def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.15g}"
    return str(value)


def _json_value(value):
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        # mirror the CSV's 15 significant digits
        return float(f"{float(value):.15g}")
    return str(value)


def _render(command: str, fmt: str, columns: list[str], rows: list[tuple],
            summary: str) -> str:
    if fmt == "csv":
        lines = [",".join(columns)]
        lines += [",".join(_fmt(c) for c in row) for row in rows]
        lines.append(f"# summary: {summary}")
        return "\n".join(lines) + "\n"
    obj = {
        "command": command,
        "columns": columns,
        "rows": [[_json_value(c) for c in row] for row in rows],
        "summary": summary,
    }
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".schifferlab-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ----------------------------------------------------------------- commands

def _run_specfun_check(p: dict) -> tuple[list[str], list[tuple], str]:
    if not 0 <= p["l_max"] <= L_MAX_SUPPORTED:
        raise ConfigError(
            f"l_max = {p['l_max']} outside the supported range [0, {L_MAX_SUPPORTED}]")
    if not (p["x_min"] > 0 and p["x_max"] > p["x_min"] and p["n_x"] >= 2):
        raise ConfigError("need 0 < x_min < x_max and n_x >= 2")
    if p["tol"] <= 0 or p["gram_tol"] <= 0:
        raise ConfigError("tolerances must be positive")
    if not 0 <= p["gram_l_max"] <= 20:
        raise ConfigError(f"gram_l_max = {p['gram_l_max']} outside [0, 20]")
    lmax = max(p["l_max"], 1)
    x_grid = np.linspace(p["x_min"], p["x_max"], p["n_x"])
    wron = 0.0
    for x in x_grid:
        S, C, Sp, Cp = riccati_table(lmax, x)
        wron = max(wron, float(np.max(np.abs(S * Cp - Sp * C + 1.0))))
    rec_S = rec_C = 0.0
    for x in x_grid[::10]:
        S, C, Sp, Cp = riccati_table(lmax, x)
        for l in range(1, lmax):
            coupling = (2 * l + 1) / x
            scale_S = max(abs(S[l + 1]), abs(S[l - 1]), 1e-300)
            scale_C = max(abs(C[l + 1]), abs(C[l - 1]), 1e-300)
            rec_S = max(rec_S, abs(S[l + 1] - (coupling * S[l] - S[l - 1])) / scale_S)
            rec_C = max(rec_C, abs(C[l + 1] - (coupling * C[l] - C[l - 1])) / scale_C)
    quad = sphere_quadrature()
    modes = [(l, m) for l in range(p["gram_l_max"] + 1) for m in range(-l, l + 1)]
    M = np.stack([ylm_on_grid(l, m, quad) for l, m in modes])
    gram = np.einsum("iab,ab,jab->ij", M, quad.weights, np.conj(M))
    gram_err = float(np.max(np.abs(gram - np.eye(len(modes)))))
    rows = []
    ok = True
    for name, margin, tol in [("wronskian", wron, p["tol"]),
                              ("recurrence_S", rec_S, p["tol"]),
                              ("recurrence_C", rec_C, p["tol"]),
                              ("orthonormality", gram_err, p["gram_tol"])]:
        good = margin <= tol
        ok = ok and good
        rows.append((name, margin, tol, "ok" if good else "exceeded"))
    return ["check", "margin", "tolerance", "status"], rows, "PASS" if ok else "FAIL"


def _run_eigen_scan(p: dict) -> tuple[list[str], list[tuple], str]:
    records = find_real_eigenvalues(p["l"], p["r_hat"], p["k_max"],
                                    scan_step=p["scan_step"], tol=p["tol"])
    rows = [(rec.l, rec.k, rec.residual, rec.bracket[0], rec.bracket[1])
            for rec in records]
    return ["l", "k", "residual", "bracket_lo", "bracket_hi"], rows, "PASS"


def _run_density(p: dict) -> tuple[list[str], list[tuple], str]:
    if p["gap_tol"] <= 0:
        raise ConfigError("gap_tol must be positive")
    est = density_estimate(p["l"], p["r_hat"], p["k_max"])
    ok = est.relative_gap <= p["gap_tol"]
    rows = [(p["l"], p["r_hat"], p["k_max"], est.count, est.density,
             est.target, est.relative_gap, "ok" if ok else "exceeded")]
    columns = ["l", "r_hat", "k_max", "count", "density", "target",
               "relative_gap", "status"]
    return columns, rows, "PASS" if ok else "FAIL"


def _run_indicator(p: dict) -> tuple[list[str], list[tuple], str]:
    l, xi, r_hat = p["l"], p["xi"], p["r_hat"]
    if l < 0:
        raise ConfigError(f"l must be nonnegative, got {l}")
    if not 0.0 <= xi < r_hat:
        raise ConfigError(f"xi must lie in [0, r_hat), got xi={xi}, r_hat={r_hat}")
    if l > 0 and xi != 0.0:
        raise ConfigError(
            "the partial-interval trace has a closed form only at l = 0; "
            "use xi = 0 for higher degrees")
    if l == 0:
        d = r_hat - xi

        def f(z: complex) -> complex:
            z = complex(z)
            return r_hat * np.cos(z * d) - np.sin(z * d) / z

        def log_abs(z: complex) -> float:
            z = complex(z)
            zs, zc = _scaled_trig(z * d)
            val = abs(r_hat * zc - zs / z)
            if val == 0.0:
                return -math.inf
            return math.log(val) + abs(z.imag) * d
    else:
        f = dispersion_function(l, r_hat)

        def log_abs(z: complex) -> float:
            return dispersion_log_abs(l, r_hat, z)

    sample = indicator(f, p["theta"], p["r_values"], log_abs=log_abs)
    expected = r_hat - xi
    rel = abs(sample.h_extrapolated - expected) / expected
    ok = rel <= p["type_tol"]
    rows = [(float(r), float(h), sample.h_extrapolated, expected, rel,
             "ok" if ok else "exceeded")
            for r, h in zip(sample.r_values, sample.h_estimates)]
    columns = ["r", "h_estimate", "h_extrapolated", "expected_type",
               "rel_err", "status"]
    return columns, rows, "PASS" if ok else "FAIL"


def _run_ball_check(p: dict) -> tuple[list[str], list[tuple], str]:
    if p["tol"] <= 0:
        raise ConfigError("tol must be positive")
    R, n = p["r"], p["n"]
    k, _ = ball_eigenfunction(R, n)
    ball = StarlikeDomain(0, ((0, 0, R * math.sqrt(4.0 * math.pi)),))
    residual = overdetermined_residual(ball, k, p["l_trial"])
    x_n = k * R
    du = -k * spherical_jn(1, x_n) / spherical_jn(0, x_n)
    ok = residual <= p["tol"] and abs(du) <= 1e-10
    rows = [(R, n, k, residual, du, "ok" if ok else "exceeded")]
    columns = ["R", "n", "k", "residual", "du_dr_boundary", "status"]
    return columns, rows, "PASS" if ok else "FAIL"


def _run_domain_residual(p: dict) -> tuple[list[str], list[tuple], str]:
    if p["threshold"] <= 0:
        raise ConfigError("threshold must be positive")
    domain = load_domain(p["domain"])
    grid_parts = (p["k_min"], p["k_max"], p["k_step"])
    if p["k"] is not None:
        if any(v is not None for v in grid_parts):
            raise ConfigError("give either k or the k_min/k_max/k_step grid, not both")
        ks = np.array([p["k"]])
    else:
        if any(v is None for v in grid_parts):
            raise ConfigError("need k, or all of k_min, k_max, k_step")
        k_min, k_max, k_step = grid_parts
        if not (0 < k_min <= k_max and k_step > 0):
            raise ConfigError("need 0 < k_min <= k_max and k_step > 0")
        ks = np.arange(k_min, k_max + k_step / 2, k_step)
        ks = ks[ks <= k_max + 1e-12 * k_max]
    res = residual_scan(domain, ks, p["l_trial"], p["n_collocation"],
                        p["neumann"], threads=_env_threads())
    ok = bool(res.min() <= p["threshold"])
    rows = [(float(k), float(r)) for k, r in zip(ks, res)]
    return ["k", "residual"], rows, "PASS" if ok else "FAIL"


def _run_ray_scan(p: dict) -> tuple[list[str], list[tuple], str]:
    if p["spread_tol"] <= 0:
        raise ConfigError("spread_tol must be positive")
    domain = load_domain(p["domain"])
    if p["directions"] is None:
        dirs = axis_directions()
    else:
        dirs = tuple(SphericalDirection(t, ph) for t, ph in p["directions"])
    result = per_ray_eigen_scan(domain, dirs, p["l_max"], p["k_max"],
                                threads=_env_threads())
    spread = result.density_spread
    common = result.intersection_size
    ok = spread <= p["spread_tol"] and common > 0
    rows = [(rep.direction.theta, rep.direction.phi, rep.R_hat,
             rep.density.count, rep.density.density, spread, common)
            for rep in result.reports]
    columns = ["theta", "phi", "r_hat", "count", "density",
               "density_spread", "intersection_size"]
    return columns, rows, "PASS" if ok else "FAIL"


def _run_farfield(p: dict) -> tuple[list[str], list[tuple], str]:
    pattern = FarFieldPattern(p["a_coeffs"], p["k"])
    if p["directions"] is None:
        dirs = axis_directions()
    else:
        dirs = tuple(SphericalDirection(t, ph) for t, ph in p["directions"])
    values = far_field_from_coeffs(pattern, dirs)
    ok = bool(np.all(np.isfinite(values)))
    rows = [(d.theta, d.phi, v.real, v.imag, abs(v))
            for d, v in zip(dirs, values)]
    columns = ["theta", "phi", "re_u", "im_u", "abs_u"]
    return columns, rows, "PASS" if ok else "FAIL"


_Runner = Callable[[dict], tuple[list[str], list[tuple], str]]

_COMMANDS: dict[str, tuple[str, list[_Param], _Runner]] = {
    "specfun-check": (
        "special-function identity margins (Wronskian, recurrences, Gram matrix)",
        [_Param("l_max", "int", 20, help="largest order checked"),
         _Param("x_min", "float", 0.1), _Param("x_max", "float", 100.0),
         _Param("n_x", "int", 1000, help="argument grid size"),
         _Param("tol", "float", 1e-8, help="identity margin tolerance"),
         _Param("gram_l_max", "int", 8, help="largest degree in the Gram check"),
         _Param("gram_tol", "float", 1e-10)],
        _run_specfun_check),
    "eigen-scan": (
        "real eigenvalues of the two-way radial problem on (0, k_max]",
        [_Param("l", "int", 0), _Param("r_hat", "float", 1.0),
         _Param("k_max", "float", required=True),
         _Param("scan_step", "float", None, help="bracketing step (default pi/(4 r_hat))"),
         _Param("tol", "float", 1e-9, help="residual bound per accepted root")],
        _run_eigen_scan),
    "density": (
        "eigenvalue count on (0, k_max] against the r_hat/pi density law",
        [_Param("l", "int", 0), _Param("r_hat", "float", 1.0),
         _Param("k_max", "float", required=True),
         _Param("gap_tol", "float", 0.03, help="PASS margin for the relative gap")],
        _run_density),
    "indicator": (
        "growth indicator of the boundary-trace function along one ray",
        [_Param("l", "int", 0), _Param("xi", "float", 0.0),
         _Param("r_hat", "float", 1.0),
         _Param("theta", "float", math.pi / 2, help="ray angle in the k plane"),
         _Param("r_values", "float_list", (12.5, 25.0, 50.0, 100.0, 200.0),
                help="comma-separated radii, increasing"),
         _Param("type_tol", "float", 0.05, help="PASS margin against r_hat - xi")],
        _run_indicator),
    "ball-check": (
        "interior mode of the ball: eigenvalue, boundary residual, normal derivative",
        [_Param("r", "float", 1.0, help="ball radius"),
         _Param("n", "int", 1, help="eigenvalue branch index"),
         _Param("l_trial", "int", 4), _Param("tol", "float", 1e-8)],
        _run_ball_check),
    "domain-residual": (
        "overdetermined boundary least-squares residual at k or over a k grid",
        [_Param("domain", "str", required=True, help="domain JSON path"),
         _Param("k", "float", None), _Param("k_min", "float", None),
         _Param("k_max", "float", None), _Param("k_step", "float", None),
         _Param("l_trial", "int", 8), _Param("n_collocation", "int", None),
         _Param("neumann", "str", "normal", choices=("normal", "gradient")),
         _Param("threshold", "float", 1e-8, help="PASS iff some residual is below")],
        _run_domain_residual),
    "ray-scan": (
        "per-ray eigenvalue lists, densities, and the cross-ray intersection",
        [_Param("domain", "str", required=True, help="domain JSON path"),
         _Param("l_max", "int", 0), _Param("k_max", "float", 12.0),
         _Param("spread_tol", "float", 0.02),
         _Param("directions", "pair_list", None, config_only=True,
                help="[[theta, phi], ...]; default: the six coordinate axes")],
        _run_ray_scan),
    "farfield": (
        "far-field synthesis from harmonic coefficients",
        [_Param("k", "float", required=True),
         _Param("a_coeffs", "coeff_list", None, required=True, config_only=True,
                help="[[n, m, re, im], ...] (config file only)"),
         _Param("directions", "pair_list", None, config_only=True)],
        _run_farfield),
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schifferlab",
        description="numerical experiments on radial eigenvalue problems, "
                    "entire-function zero densities, and the overdetermined "
                    "boundary test that separates balls from other starlike domains")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (help_text, params, _) in _COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("--config", help="JSON file with parameter defaults")
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), default=None)
        for param in params:
            if param.config_only:
                continue
            flag = "--" + param.name.replace("_", "-")
            if param.kind == "int":
                p.add_argument(flag, dest=param.name, type=int, default=None,
                               help=param.help or None)
            elif param.kind == "float":
                p.add_argument(flag, dest=param.name, type=float, default=None,
                               help=param.help or None)
            elif param.kind == "float_list":
                p.add_argument(flag, dest=param.name, type=str, default=None,
                               help=param.help or None)
            else:
                choices = param.choices if param.choices else None
                p.add_argument(flag, dest=param.name, type=str, default=None,
                               choices=choices, help=param.help or None)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    help_text, params, runner = _COMMANDS[args.command]
    try:
        merged = _merge(args, params)
        fmt = args.format
        if fmt is None:
            fmt = _load_config(args.config).get("format", "csv")
            if fmt not in ("csv", "json"):
                raise ConfigError(f"format must be csv or json, got {fmt!r}")
        out = args.out if args.out is not None else _load_config(args.config).get("out")
        columns, rows, summary = runner(merged)
    except ConfigError as exc:
        print(f"schifferlab: config error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"schifferlab: config error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"schifferlab: config error: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:
        print(f"schifferlab: numerical failure: {exc}", file=sys.stderr)
        return 1
    text = _render(args.command, fmt, columns, rows, summary)
    if out is None:
        sys.stdout.write(text)
    else:
        _write_atomic(out, text)
        print(summary)
    return 0 if summary == "PASS" else 1


if __name__ == "__main__":
    sys.exit(main())
