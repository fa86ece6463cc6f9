"""Command-line front end.

Subcommands
-----------
zeros        compute, certify and export the zeros of ``pi_m``
verify       run the verification suites and print a JSON verdict
figures      export the data behind the zero, lemniscate and ``|q_l|`` plots
asymptotics  compare the outer or local approximation with ``pi_m``
pcf-grid     export ``|q_l|`` on a square grid of the ``xi`` plane
poly         print the exact coefficients of ``P_m`` or ``pi_m``

Exit codes: 0 success, 2 certification or verification failure,
3 convergence failure, 4 region or domain error, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import dataclass, fields, replace
from typing import Sequence

import numpy as np

from . import __version__, kernels
from .asymptotics import lambda_inverse, lambda_map, loglog_slope, sample_local, sample_outer
from .errors import (
    CertificationFailed,
    DomainError,
    NoConvergence,
    PrecisionTooLow,
    RegionError,
    UnmatchedZeros,
)
from .geometry import (
    RegionParams,
    build_gamma_contour,
    distance_to_left_lemniscate,
    sample_lemniscate,
)
from .io import atomic_open, digits_for, fmt
from .jacobi import build_P, build_pi
from .numerics import PrecisionConfig
from .orthogonality import verify_orthogonality
from .zeros import (
    ZeroSet,
    aberth_solve,
    certify,
    local_zero_candidates,
    pair_zeros,
    predicted_zeros_outer,
    real_zero_census,
    rouche_box,
)

SCHEMA_VERSION = "1.0"
OUTPUT_ENV = "JACOBIZEROS_OUTPUT_DIR"

EXIT_OK = 0
EXIT_CERTIFICATION = 2
EXIT_CONVERGENCE = 3
EXIT_REGION = 4
EXIT_USAGE = 64

ZERO_COLUMNS = ["m", "k", "re", "im", "residual"]
PREDICTED_COLUMNS = ["m", "k", "theta", "re", "im"]
PAIRING_COLUMNS = ["m", "re_star", "im_star", "re_comp", "im_comp", "dist"]
ASYMPTOTIC_COLUMNS = ["m", "re_z", "im_z", "re_exact", "im_exact", "re_pred", "im_pred",
                      "rel_error"]
GRID_COLUMNS = ["re_xi", "im_xi", "abs_q_local"]
BOX_COLUMNS = ["m", "k", "rho_lo", "rho_hi", "theta_lo", "theta_hi"]
CURVE_COLUMNS = ["theta", "re", "im"]
OVERLAY_COLUMNS = ["kind", "re_xi", "im_xi"]

OUTER_POINTS = (-1.45 + 0.1j, -1.3 + 0.32j, -1.2 + 0.55j, -0.95 + 0.6j, -0.7 - 0.52j)
LOCAL_XI = 2 * complex(math.cos(3 * math.pi / 8), math.sin(3 * math.pi / 8))
FIGURE_DEFAULT_M = {"1": 50, "6": 50, "9": 20, "10": 100}


class UsageError(Exception):
    """Malformed command line or configuration file."""


# --------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class RunConfig:
    """Resolved settings of one invocation.

    ``precision_bits`` is ``None`` for the automatic rule.
    """

    m: int | None = None
    m_list: tuple | None = None
    precision_bits: int | None = None
    epsilon: float = 0.25
    band_outer: float = 1.35
    gamma_radius: float = 2.0
    quad_nodes: int = 1024
    xi_R: float = 6.0
    output_dir: str = "."
    format: str = "csv"

    @property
    def ms(self) -> list[int]:
        if self.m_list:
            return list(self.m_list)
        return [] if self.m is None else [self.m]

    @property
    def region(self) -> RegionParams:
        return RegionParams(self.epsilon, self.band_outer)

    def precision(self, ms: Sequence[int] | None = None) -> tuple[PrecisionConfig, str]:
        """Working precision and a description of how it was chosen.

        The automatic rule is ``3 max(m) + 64`` rounded up to 64 bits.
        """
        ms = self.ms if ms is None else list(ms)
        top = max(ms, default=0)
        if self.precision_bits is None:
            p = PrecisionConfig.for_roots(top)
            return p, f"auto: 3*{top}+64 rounded up to 64"
        p = PrecisionConfig(self.precision_bits)
        p.check_degree(top)
        return p, "user"


_CONFIG_KEYS = {f.name for f in fields(RunConfig)}


def _parse_m_list(text: str) -> tuple:
    try:
        values = tuple(int(t) for t in str(text).replace(" ", "").split(",") if t)
    except ValueError as exc:
        raise UsageError(f"invalid m list: {text!r}") from exc
    if not values or any(v < 0 for v in values):
        raise UsageError(f"invalid m list: {text!r}")
    return values


def _parse_precision(text) -> int | None:
    if text is None or str(text).strip().lower() == "auto":
        return None
    try:
        bits = int(text)
    except ValueError as exc:
        raise UsageError(f"invalid precision: {text!r}") from exc
    if bits < 64:
        raise UsageError("precision must be at least 64 bits")
    return bits


_CONVERTERS = {
    "m": int,
    "m_list": _parse_m_list,
    "precision_bits": _parse_precision,
    "epsilon": float,
    "band_outer": float,
    "gamma_radius": float,
    "quad_nodes": int,
    "xi_R": float,
    "output_dir": str,
    "format": str,
}

_ALIASES = {"precision": "precision_bits", "xi_r": "xi_R", "m-list": "m_list"}


def read_config_file(path) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        key = _ALIASES.get(key, key).replace("-", "_")
        key = _ALIASES.get(key, key)
        if key not in _CONFIG_KEYS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            values[key] = _CONVERTERS[key](value)
        except ValueError as exc:
            raise UsageError(f"{path}:{lineno}: bad value for {key}: {value!r}") from exc
    return values


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Defaults, then the config file, then the environment, then flags."""
    cfg = RunConfig()
    if getattr(args, "config", None):
        cfg = replace(cfg, **read_config_file(args.config))
    env_dir = os.environ.get(OUTPUT_ENV)
    if env_dir:
        cfg = replace(cfg, output_dir=env_dir)
    updates = {}
    for key in _CONFIG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            updates[key] = value
    # a degree given on the command line replaces a degree list from the file
    if "m" in updates and "m_list" not in updates:
        updates["m_list"] = None
    if "precision_bits" in updates:
        updates["precision_bits"] = _parse_precision(updates["precision_bits"])
    cfg = replace(cfg, **updates)
    if cfg.format not in ("csv", "json"):
        raise UsageError("format must be csv or json")
    if cfg.m is not None and cfg.m < 0:
        raise UsageError("m must be non-negative")
    try:
        cfg.region
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return cfg


# --------------------------------------------------------------------------
# output helpers


def _path(cfg: RunConfig, name: str) -> str:
    return os.path.join(cfg.output_dir, name)


def write_json(path: str, record: dict) -> None:
    with atomic_open(path) as fh:
        json.dump(record, fh, indent=2)
        fh.write("\n")


def write_table(cfg: RunConfig, stem: str, kind: str, columns, rows) -> str:
    """Write ``rows`` as ``stem.csv`` or, with ``format = json``, ``stem.json``."""
    rows = [list(r) for r in rows]
    if cfg.format == "json":
        path = _path(cfg, stem + ".json")
        write_json(path, {"schema_version": SCHEMA_VERSION, "kind": kind,
                          "columns": list(columns), "rows": rows})
    else:
        path = _path(cfg, stem + ".csv")
        with atomic_open(path) as fh:
            w = csv.writer(fh)
            w.writerow(columns)
            w.writerows(rows)
    return path


def _banner(precision: PrecisionConfig, how: str) -> None:
    print(f"# precision: {precision.mantissa_bits} bits ({how}); kernel backend: "
          f"{kernels.BACKEND}", file=sys.stderr)


def _zero_rows(zs: ZeroSet, digits: int):
    return [[zs.m, k, fmt(z.real, digits), fmt(z.imag, digits), fmt(r, 6)]
            for k, (z, r) in enumerate(zip(zs.roots, zs.residuals), 1)]


def _solve(m: int, precision: PrecisionConfig) -> ZeroSet:
    return aberth_solve(build_pi(m), precision)


def _max_dist(zs: ZeroSet, region: RegionParams) -> float:
    outside = [z for z in zs.roots if abs(z) >= region.epsilon]
    return max((distance_to_left_lemniscate(z) for z in outside), default=0.0)


def _max_mod(zs: ZeroSet) -> float:
    return max((float(abs(z + 1)) for z in zs.roots), default=0.0)


def certification_record(zs: ZeroSet, report, region: RegionParams) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "certification",
        "m": zs.m,
        "precision_bits": zs.precision.mantissa_bits,
        "backend": kernels.BACKEND,
        "sweeps": zs.sweeps,
        "certified": report.passed,
        "clauses": {
            "residual": report.residual_ok,
            "vieta": report.vieta_ok,
            "conjugation": report.conjugation_ok,
            "separation": report.separation_ok,
        },
        "tolerance": float(report.tolerance),
        "max_residual": float(report.max_residual),
        "vieta": {"sum": float(report.vieta[0]), "product": float(report.vieta[1])},
        "min_separation": None if zs.min_separation is None else float(zs.min_separation),
        "real_count": real_zero_census(zs)[0],
        "max_mod_plus1": _max_mod(zs),
        "max_dist": _max_dist(zs, region),
    }


# --------------------------------------------------------------------------
# commands


def cmd_zeros(cfg: RunConfig, args) -> int:
    ms = cfg.ms
    if not ms:
        raise UsageError("zeros needs --m or --m-list")
    precision, how = cfg.precision()
    _banner(precision, how)
    digits = digits_for(precision.mantissa_bits)
    status = EXIT_OK
    for m in ms:
        zs = _solve(m, precision)
        report = certify(zs, build_pi(m), raise_on_failure=False)
        write_table(cfg, f"zeros_m{m}", "zeros", ZERO_COLUMNS, _zero_rows(zs, digits))
        write_json(_path(cfg, f"certification_m{m}.json"),
                   certification_record(zs, report, cfg.region))
        if args.pairing and m >= 1:
            pred = predicted_zeros_outer(m, precision)
            write_table(cfg, f"predicted_m{m}", "predicted", PREDICTED_COLUMNS,
                        [[m, e.k, fmt(e.theta, digits), fmt(e.z_star.real, digits),
                          fmt(e.z_star.imag, digits)] for e in pred.entries])
            rep = pair_zeros(zs, pred, cfg.region, strict=False)
            write_table(cfg, f"pairing_m{m}", "pairing", PAIRING_COLUMNS,
                        [[m, fmt(a.real, digits), fmt(a.imag, digits), fmt(b.real, digits),
                          fmt(b.imag, digits), fmt(d, 6)] for a, b, d in rep.pairs])
        if args.boxes and m >= 1:
            boxes = [rouche_box(m, k) for k in range(1, m + 1)]
            write_table(cfg, f"boxes_m{m}", "boxes", BOX_COLUMNS,
                        [[m, b.k, repr(b.rho_lo), repr(b.rho_hi), repr(b.theta_lo),
                          repr(b.theta_hi)] for b in boxes])
        verdict = "certified" if report.passed else "NOT certified"
        print(f"m={m}: {len(zs.roots)} zeros, {zs.sweeps} sweeps, {verdict}")
        if not report.passed:
            status = EXIT_CERTIFICATION
    return status


def _check(checks: list, name: str, code: str, passed: bool, measured) -> None:
    checks.append({"name": name, "code": code, "passed": bool(passed), "measured": measured})


def _strictly(values, increasing: bool) -> bool:
    pairs = list(zip(values, values[1:]))
    return all((b > a) if increasing else (b < a) for a, b in pairs)


def _zeros_suite(cfg: RunConfig, precision: PrecisionConfig, checks: list) -> list:
    region = cfg.region
    summary = []
    max_dists, mods, pair_d = [], [], []
    for m in cfg.ms:
        zs = _solve(m, precision)
        report = certify(zs, build_pi(m), raise_on_failure=False)
        _check(checks, f"certification m={m}", "CRT01", report.passed,
               {"max_residual": float(report.max_residual),
                "tolerance": float(report.tolerance)})
        count, reals = real_zero_census(zs)
        _check(checks, f"real zero count m={m}", "PAR01", count == m % 2, count)
        if count:
            _check(checks, f"real zero below -1 m={m}", "PAR02", all(x < -1 for x in reals),
                   [float(x) for x in reals])
        mod = _max_mod(zs)
        _check(checks, f"max |z+1| < 1 m={m}", "MOD01", mod < 1, mod)
        dist = _max_dist(zs, region)
        entry = {"m": m, "max_dist": dist, "max_mod_plus1": mod, "real_count": count,
                 "pairing_max_distance": None}
        if m >= 1:
            try:
                rep = pair_zeros(zs, predicted_zeros_outer(m, precision), region)
            except UnmatchedZeros as exc:
                _check(checks, f"pairing m={m}", "PAI01", False, str(exc))
            else:
                comp = [id(b) for _, b, _ in rep.pairs]
                injective = len(set(comp)) == len(comp)
                complete = not rep.unmatched_predicted if m >= 20 else True
                _check(checks, f"pairing injective m={m}", "PAI01", injective and complete,
                       {"pairs": len(rep.pairs),
                        "unmatched_predicted": len(rep.unmatched_predicted),
                        "unmatched_computed": len(rep.unmatched_computed)})
                entry["pairing_max_distance"] = float(rep.max_distance)
                pair_d.append(float(rep.max_distance))
        max_dists.append(dist)
        mods.append(mod)
        summary.append(entry)
    if len(cfg.ms) > 1:
        _check(checks, "lemniscate distance decreasing", "LEM01", _strictly(max_dists, False),
               max_dists)
        _check(checks, "max |z+1| increasing", "MOD02", _strictly(mods, True), mods)
        if len(pair_d) > 1:
            _check(checks, "pairing distance decreasing", "PAI02", _strictly(pair_d, False),
                   pair_d)
    return summary


def _orthogonality_suite(cfg: RunConfig, args, checks: list) -> int:
    bits = cfg.precision_bits or 256
    precision = PrecisionConfig(bits)
    contour = build_gamma_contour(cfg.gamma_radius, cfg.quad_nodes, precision)
    reports = verify_orthogonality(args.n_max, args.k_max, contour, precision, args.tolerance)
    for r in reports:
        kind = "diagonal" if r.j == r.k else "off-diagonal"
        _check(checks, f"orthogonality n={r.n} k={r.k} j={r.j} ({kind})", "ORT01", r.passed,
               float(r.abs_error))
    return bits


def cmd_verify(cfg: RunConfig, args) -> int:
    suites = {"all": ("zeros", "orthogonality"), "zeros": ("zeros",),
              "orthogonality": ("orthogonality",)}[args.suite]
    checks: list = []
    record = {"schema_version": SCHEMA_VERSION, "kind": "verify"}
    bits = None
    if "zeros" in suites:
        if not cfg.ms:
            cfg = replace(cfg, m_list=(10, 20, 40))
        precision, how = cfg.precision()
        _banner(precision, how)
        bits = precision.mantissa_bits
        record["m_list"] = cfg.ms
        record["summary"] = _zeros_suite(cfg, precision, checks)
    if "orthogonality" in suites:
        obits = _orthogonality_suite(cfg, args, checks)
        if bits is None:
            print(f"# precision: {obits} bits (orthogonality)", file=sys.stderr)
            bits = obits
    record["precision_bits"] = bits
    record["passed"] = all(c["passed"] for c in checks)
    record["checks"] = checks
    write_json(_path(cfg, "verify.json"), record)
    failed = [c for c in checks if not c["passed"]]
    print(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    for c in failed:
        print(f"FAILED {c['code']} {c['name']}: {c['measured']}")
    return EXIT_OK if record["passed"] else EXIT_CERTIFICATION


def _grid(R: float, n: int):
    if n < 2:
        raise UsageError("grid size must be at least 2")
    axis = np.linspace(-R, R, n)
    values = kernels.q_local_abs_grid(axis, axis)
    rows = []
    for a, im in enumerate(axis):
        for b, re in enumerate(axis):
            rows.append([repr(float(re)), repr(float(im)), repr(float(values[a, b]))])
    return rows


def _figure_1(cfg, m, precision, digits):
    zs = _solve(m, precision)
    return [write_table(cfg, f"fig1_zeros_m{m}", "zeros", ZERO_COLUMNS, _zero_rows(zs, digits))]


def _curve_rows(curve, digits):
    return [[fmt(t, digits), fmt(z.real, digits), fmt(z.imag, digits)]
            for t, z in zip(curve.thetas, curve.samples)]


def _figure_6(cfg, m, precision, digits, samples):
    out = []
    for kind in ("left", "right"):
        curve = sample_lemniscate(kind, 1, samples, precision, include_endpoint=True)
        out.append(write_table(cfg, f"fig6_lemniscate_{kind}", "curve", CURVE_COLUMNS,
                               _curve_rows(curve, digits)))
    zs = _solve(m, precision)
    out.append(write_table(cfg, f"fig6_zeros_m{m}", "zeros", ZERO_COLUMNS,
                           _zero_rows(zs, digits)))
    return out


def _figure_9(cfg, m, precision, digits, samples):
    ctx = precision.ctx
    rho = ctx.power(2, ctx.mpf(1) / (2 * m + 1))
    curve = sample_lemniscate("scaled-left", rho, samples, precision, include_endpoint=True)
    out = [write_table(cfg, f"fig9_curve_m{m}", "curve", CURVE_COLUMNS,
                       _curve_rows(curve, digits))]
    pred = predicted_zeros_outer(m, precision)
    out.append(write_table(cfg, f"fig9_predicted_m{m}", "predicted", PREDICTED_COLUMNS,
                           [[m, e.k, fmt(e.theta, digits), fmt(e.z_star.real, digits),
                             fmt(e.z_star.imag, digits)] for e in pred.entries]))
    zs = _solve(m, precision)
    out.append(write_table(cfg, f"fig9_zeros_m{m}", "zeros", ZERO_COLUMNS,
                           _zero_rows(zs, digits)))
    return out


def _figure_10(cfg, m, precision, grid_n):
    if grid_n < 200:
        raise UsageError("figure 10 needs a grid of at least 200 x 200")
    R = cfg.xi_R
    out = [write_table(cfg, f"fig10_grid_m{m}", "pcf-grid", GRID_COLUMNS, _grid(R, grid_n))]
    rows = [["q_local_zero", repr(float(x.real)), repr(float(x.imag))]
            for x in local_zero_candidates(min(R, 8.0))]
    zs = _solve(m, precision)
    for z in zs.roots:
        if abs(z) < 0.7:
            xi = lambda_map(m, z, precision)
            if abs(xi.real) <= R and abs(xi.imag) <= R:
                rows.append(["mapped_zero", repr(float(xi.real)), repr(float(xi.imag))])
    out.append(write_table(cfg, f"fig10_overlay_m{m}", "overlay", OVERLAY_COLUMNS, rows))
    return out


def cmd_figures(cfg: RunConfig, args) -> int:
    which = ["1", "6", "9", "10"] if args.which == "all" else args.which.split(",")
    for w in which:
        if w not in FIGURE_DEFAULT_M:
            raise UsageError(f"unknown figure {w!r}; choose from 1, 6, 9, 10, all")
    for w in which:
        m = cfg.m if cfg.m is not None else FIGURE_DEFAULT_M[w]
        if m < 1:
            raise UsageError("figures need m >= 1")
        precision, how = replace(cfg, m=m, m_list=None).precision()
        _banner(precision, how)
        digits = digits_for(precision.mantissa_bits)
        if w == "1":
            paths = _figure_1(cfg, m, precision, digits)
        elif w == "6":
            paths = _figure_6(cfg, m, precision, digits, args.samples)
        elif w == "9":
            paths = _figure_9(cfg, m, precision, digits, args.samples)
        else:
            paths = _figure_10(cfg, m, precision, args.grid_n)
        for p in paths:
            print(p)
    return EXIT_OK


def _parse_points(text: str) -> list[complex]:
    try:
        return [complex(t.replace(" ", "")) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"invalid point list: {text!r}") from exc


def cmd_asymptotics(cfg: RunConfig, args) -> int:
    ms = cfg.ms or ([20, 40, 80, 160] if args.kind == "outer" else [50, 100, 200])
    rows = []
    digits = 20
    if args.kind == "outer":
        points = _parse_points(args.points) if args.points else list(OUTER_POINTS)
        series = {p: [] for p in points}
        for m in ms:
            for p in points:
                s = sample_outer(m, p, region=cfg.region)
                series[p].append((m, s.rel_error))
                rows.append(_asym_row(s, digits))
        labels = {p: f"z={p}" for p in points}
    else:
        xis = _parse_points(args.xi) if args.xi else [LOCAL_XI]
        series = {x: [] for x in xis}
        for m in ms:
            for xi in xis:
                z = lambda_inverse(m, xi, PrecisionConfig(256))
                s = sample_local(m, z, region=cfg.region)
                series[xi].append((m, s.rel_error))
                rows.append(_asym_row(s, digits))
        labels = {x: f"xi={x}" for x in xis}
    print("# precision: exact values at 2m+64 bits plus cancellation guard", file=sys.stderr)
    path = write_table(cfg, f"asymptotics_{args.kind}", "asymptotics", ASYMPTOTIC_COLUMNS, rows)
    for key, data in series.items():
        if len(data) > 1:
            slope = loglog_slope([d[0] for d in data], [d[1] for d in data])
            print(f"{labels[key]}: log-log slope {slope:.3f}")
    print(path)
    return EXIT_OK


def _asym_row(s, digits):
    return [s.m, fmt(s.z.real, digits), fmt(s.z.imag, digits), fmt(s.exact.real, digits),
            fmt(s.exact.imag, digits), fmt(s.predicted.real, digits),
            fmt(s.predicted.imag, digits), repr(s.rel_error)]


def cmd_pcf_grid(cfg: RunConfig, args) -> int:
    print(f"# precision: double (|q_l| grid); kernel backend: {kernels.BACKEND}",
          file=sys.stderr)
    path = write_table(cfg, "pcf_grid", "pcf-grid", GRID_COLUMNS, _grid(cfg.xi_R, args.grid_n))
    print(path)
    return EXIT_OK


def cmd_poly(cfg: RunConfig, args) -> int:
    if cfg.m is None:
        raise UsageError("poly needs --m")
    poly = build_pi(cfg.m) if args.monic else build_P(cfg.m)
    record = {
        "schema_version": SCHEMA_VERSION,
        "kind": "poly",
        "m": poly.degree,
        "monic": poly.monic,
        "kappa": str(poly.kappa),
        "coeffs": [str(c) for c in poly.coeffs],
    }
    write_json(_path(cfg, f"poly_m{cfg.m}{'_monic' if args.monic else ''}.json"), record)
    print(json.dumps(record))
    return EXIT_OK


# --------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _common(parser: argparse.ArgumentParser) -> None:
    g = parser.add_argument_group("run configuration")
    g.add_argument("--config", help="key = value configuration file (flags take precedence)")
    g.add_argument("--m", type=int, help="degree")
    g.add_argument("--m-list", dest="m_list", type=_m_list_arg, help="comma separated degrees")
    g.add_argument("--precision", dest="precision_bits",
                   help="mantissa bits, or 'auto' (3 max(m) + 64 rounded up to 64)")
    g.add_argument("--epsilon", type=float, help="radius of the disk u_eps (default 0.25)")
    g.add_argument("--band-outer", dest="band_outer", type=float,
                   help="outer level of |1 - z^2| for the outer band (default 1.35)")
    g.add_argument("--gamma-radius", dest="gamma_radius", type=float,
                   help="radius of the quadrature circle (default 2)")
    g.add_argument("--quad-nodes", dest="quad_nodes", type=int,
                   help="trapezoid nodes on the circle (default 1024)")
    g.add_argument("--xi-R", "--xi-r", dest="xi_R", type=float,
                   help="half width of the xi window (default 6)")
    g.add_argument("--output-dir", dest="output_dir",
                   help=f"output directory (default '.', env {OUTPUT_ENV})")
    g.add_argument("--format", choices=("csv", "json"), help="tabular output format")


def _m_list_arg(text):
    try:
        return _parse_m_list(text)
    except UsageError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="jacobizeros", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("zeros", help="compute, certify and export zeros")
    _common(p)
    p.add_argument("--pairing", action="store_true",
                   help="also write predicted zeros and the outer pairing")
    p.add_argument("--boxes", action="store_true", help="also write the Rouche box overlay")
    p.set_defaults(func=cmd_zeros)

    p = sub.add_parser("verify", help="run verification suites")
    _common(p)
    p.add_argument("--suite", choices=("all", "zeros", "orthogonality"), default="all")
    p.add_argument("--n-max", dest="n_max", type=int, default=1,
                   help="largest weight index in the orthogonality suite (default 1)")
    p.add_argument("--k-max", dest="k_max", type=int, default=4,
                   help="largest degree in the orthogonality suite (default 4)")
    p.add_argument("--tolerance", type=float, default=1e-15,
                   help="orthogonality tolerance (default 1e-15)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("figures", help="export figure data")
    _common(p)
    p.add_argument("--which", default="all", help="1, 6, 9, 10, a comma list, or all")
    p.add_argument("--samples", type=int, default=512, help="curve samples (default 512)")
    p.add_argument("--grid-n", dest="grid_n", type=int, default=241,
                   help="grid points per axis for figure 10 (default 241)")
    p.set_defaults(func=cmd_figures)

    p = sub.add_parser("asymptotics", help="compare asymptotic formulas with pi_m")
    _common(p)
    p.add_argument("--kind", choices=("outer", "local"), default="outer")
    p.add_argument("--points", help="outer: comma separated complex points, e.g. -1.3+0.32j")
    p.add_argument("--xi", help="local: comma separated xi values (z = lambda^-1(xi))")
    p.set_defaults(func=cmd_asymptotics)

    p = sub.add_parser("pcf-grid", help="export |q_l| on a grid")
    _common(p)
    p.add_argument("--grid-n", dest="grid_n", type=int, default=241)
    p.set_defaults(func=cmd_pcf_grid)

    p = sub.add_parser("poly", help="print exact coefficients")
    _common(p)
    p.add_argument("--monic", action="store_true", help="pi_m instead of P_m")
    p.set_defaults(func=cmd_poly)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        return args.func(cfg, args)
    except (UsageError, PrecisionTooLow) as exc:
        print(f"jacobizeros: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CertificationFailed as exc:
        print(f"jacobizeros: certification failed: {exc}", file=sys.stderr)
        return EXIT_CERTIFICATION
    except NoConvergence as exc:
        print(f"jacobizeros: no convergence: {exc} (stalled: {list(exc.stalled)})",
              file=sys.stderr)
        return EXIT_CONVERGENCE
    except (RegionError, DomainError) as exc:
        print(f"jacobizeros: {exc}", file=sys.stderr)
        return EXIT_REGION


if __name__ == "__main__":
    sys.exit(main())
