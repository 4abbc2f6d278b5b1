"""Command-line front end emitting machine-readable check reports.

Every subcommand builds the objects it needs from a RunConfig, runs
one family of checks, and writes a report whose rows carry the value,
the expectation, the tolerance it was judged against, and a pass flag.
Reports are deterministic: fixed key order, floats at 17 significant
digits, complex numbers as "re,im".  Exit status is 0 when every
judged row passes, 1 when any fails, 2 on configuration errors.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import sys

import numpy as np

from .applications import (
    bessel_defective_identity_check,
    bessel_generalized,
    bessel_ode_residual,
    bessel_orthogonality_check,
    jacobi_to_hermite_limit_check,
    jacobi_to_laguerre_limit_check,
    jacobi_weight_limit_check,
    romanovski_finite_real_check,
    romanovski_orthogonality_check,
    romanovski_sequence,
    szego_laguerre_check,
)
from .calculus import (
    classical_rodrigues,
    genfun_series,
    genfun_series_transformed,
    genfun_spec,
    transformed_rodrigues,
)
from .errors import OrthomapError, UnsupportedContour
from .families import BUILTIN_NAMES, builtin, generate
from .moebius import (
    IDENTITY,
    INVERSION,
    MoebiusMap,
    apply_finite,
    cayley_to_circle,
    cayley_to_line,
    inverse,
)
from .polynomial import leading_coefficient_prediction
from .quadrature import (
    DEFAULT_SCHEME,
    QuadratureScheme,
    gram_transformed_contour,
    gram_transformed_pullback,
)
from .transform import (
    build,
    cd_homogeneous_confluent_residual,
    cd_homogeneous_residual,
    cd_rational_confluent_residual,
    cd_rational_residual,
    pearson_fixed_residual,
    pearson_residual,
    transformed_ode_residual,
)
from .zeros import find_roots, interlacing_check, map_zero_check, unit_circle_check

SCHEMA_VERSION = 1

FAMILY_ALIASES = {"chebyshev": "chebyshev-t"}

NAMED_MAPS = {
    "identity": IDENTITY,
    "inversion": INVERSION,
}

COMMANDS = (
    "table",
    "transform",
    "gram",
    "ode-check",
    "cd-check",
    "pearson-check",
    "rodrigues-check",
    "genfun-check",
    "zeros",
    "interlace",
    "bessel",
    "romanovski",
    "limits",
    "cayley",
)


class ConfigError(Exception):
    pass


@dataclasses.dataclass
class RunConfig:
    """Resolved inputs of one CLI run; JSON round-trippable."""

    command: str
    family: str = "chebyshev-t"
    alpha: float = None
    beta: float = None
    gamma: float = None
    delta: float = None
    map: str = "identity"
    n: int = 8
    m_index: int = 0
    n_index: int = 1
    points: int = 20
    seed: int = 20260815
    route: str = "both"
    gf: str = "hermite-exp"
    target: str = "all"
    points_per_panel: int = None
    levels: int = None
    tol: float = None
    diag_tol: float = None
    offdiag_tol: float = None
    format: str = "json"
    out: str = None

    def to_dict(self):
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, data):
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)


COMMAND_DEFAULTS = {
    "table": {"n": 8},
    "transform": {"n": 3},
    "gram": {"n": 4, "diag_tol": 1e-7, "offdiag_tol": 1e-8},
    "ode-check": {"n": 6, "tol": 1e-9},
    "cd-check": {"n": 5, "tol": 1e-8},
    "pearson-check": {"m_index": 1, "n_index": 2, "tol": 1e-9},
    "rodrigues-check": {"n": 8},
    "genfun-check": {"n": 12, "tol": 1e-9},
    "zeros": {"n": 6},
    "interlace": {"n": 5},
    "bessel": {"gamma": 2.0, "beta": 2.0, "n": 3},
    "romanovski": {"gamma": 0.5, "delta": 1.0, "n": 2},
    "limits": {"n": 3, "beta": 0.5, "alpha": 0.5},
    "cayley": {"n": 6},
}


def parse_complex_token(tok):
    parts = tok.split(":")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise ConfigError(f"bad complex literal {tok!r}; use re or re:im")


def parse_map(text):
    """A named map, or comma-separated parameters.

    Four tokens are the real parameters a,b,c,d; eight tokens are
    re,im pairs.  A vanishing determinant is rejected here.
    """
    if text in NAMED_MAPS:
        return NAMED_MAPS[text]
    if text == "cayley-circle":
        return cayley_to_circle()
    if text == "cayley-line":
        return cayley_to_line()
    toks = [t.strip() for t in text.split(",")]
    if len(toks) == 4:
        vals = [parse_complex_token(t) for t in toks]
    elif len(toks) == 8:
        try:
            nums = [float(t) for t in toks]
        except ValueError:
            raise ConfigError(f"bad map literal {text!r}") from None
        vals = [complex(nums[2 * k], nums[2 * k + 1]) for k in range(4)]
    else:
        raise ConfigError(
            f"map {text!r} needs a name, 4 real tokens, or 8 re,im tokens"
        )
    a, b, c, d = vals
    if a * d - b * c == 0:
        raise ConfigError("map determinant vanishes")
    return MoebiusMap(a, b, c, d)


def resolve_family(cfg):
    name = FAMILY_ALIASES.get(cfg.family, cfg.family)
    if name not in BUILTIN_NAMES:
        raise ConfigError(
            f"unknown family {cfg.family!r}; known: {', '.join(BUILTIN_NAMES)}"
        )
    if name == "laguerre":
        return builtin(name, alpha=cfg.alpha if cfg.alpha is not None else 0.0)
    if name == "gen-laguerre":
        return builtin(
            name,
            alpha=cfg.alpha if cfg.alpha is not None else 0.0,
            beta=cfg.beta if cfg.beta is not None else 1.0,
        )
    if name == "jacobi":
        return builtin(
            name,
            alpha=cfg.alpha if cfg.alpha is not None else 0.0,
            beta=cfg.beta if cfg.beta is not None else 0.0,
        )
    return builtin(name)


def resolve_map(cfg):
    return parse_map(cfg.map)


def resolve_scheme(cfg):
    if cfg.points_per_panel is None and cfg.levels is None:
        return DEFAULT_SCHEME
    return QuadratureScheme(
        points_per_panel=cfg.points_per_panel
        if cfg.points_per_panel is not None
        else DEFAULT_SCHEME.points_per_panel,
        levels=cfg.levels if cfg.levels is not None else DEFAULT_SCHEME.levels,
    )


def _fmt(v):
    if isinstance(v, bool) or v is None or isinstance(v, (str, int)):
        return v
    if isinstance(v, (np.floating, float)):
        return "%.17g" % float(v)
    if isinstance(v, (np.complexfloating, complex)):
        z = complex(v)
        return "%.17g,%.17g" % (z.real, z.imag)
    if isinstance(v, (list, tuple)):
        return [_fmt(item) for item in v]
    return str(v)


def row(name, value, expected=None, tolerance=None, passed=None):
    return {
        "name": name,
        "value": value,
        "expected": expected,
        "tolerance": tolerance,
        "pass": passed,
    }


def check_row(name, value, tolerance, expected=0.0):
    return row(name, value, expected=expected, tolerance=tolerance,
               passed=bool(value <= tolerance))


def _emit(cfg, results, stream):
    overall = all(r["pass"] is not False for r in results)
    report = {
        "schema": SCHEMA_VERSION,
        "command": cfg.command,
        "config": cfg.to_dict(),
        "results": [
            {
                "name": r["name"],
                "value": _fmt(r["value"]),
                "expected": _fmt(r["expected"]),
                "tolerance": _fmt(r["tolerance"]),
                "pass": r["pass"],
            }
            for r in results
        ],
        "pass": overall,
    }
    if cfg.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["name", "value", "expected", "tolerance", "pass"])
        for r in report["results"]:

            def flat(v):
                if isinstance(v, list):
                    return ";".join(str(flat(item)) for item in v)
                return "" if v is None else v

            writer.writerow(
                [r["name"], flat(r["value"]), flat(r["expected"]),
                 flat(r["tolerance"]), flat(r["pass"])]
            )
        text = buf.getvalue()
    else:
        text = json.dumps(report, indent=2) + "\n"
    stream.write(text)
    return 0 if overall else 1


def _interior_params(fam, rng, count):
    l, r = fam.interval
    lo = l if math.isfinite(l) else -5.0
    hi = r if math.isfinite(r) else 5.0
    return lo + (hi - lo) * (0.02 + 0.96 * rng.random(count))


def _contour_points(fam, m, rng, count):
    """Points on the image contour, away from the map pole."""
    w = inverse(m)
    pts = []
    attempts = 0
    while len(pts) < count:
        attempts += 1
        if attempts > 200 * count:
            raise ConfigError("could not sample contour points")
        t = float(_interior_params(fam, rng, 1)[0])
        if m.c != 0:
            pole = m.a / m.c
            if abs(t - pole) < 0.05 * (1.0 + abs(pole)):
                continue
        pts.append(complex(apply_finite(w, complex(t))))
    return pts


def _offgrid_points(m, rng, count):
    """Generic complex probe points keeping v = c*x + d well sized."""
    pts = []
    attempts = 0
    while len(pts) < count:
        attempts += 1
        if attempts > 200 * count:
            raise ConfigError("could not sample probe points")
        z = complex(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0))
        if abs(m.c * z + m.d) < 0.1:
            continue
        pts.append(z)
    return pts


# ---------------------------------------------------------------------------
# Subcommand handlers.  Each returns a list of result rows.


def cmd_table(cfg):
    fam = resolve_family(cfg)
    m = resolve_map(cfg)
    seq = build(fam, m, int(cfg.n))
    return [
        row(f"Q{k}", list(seq.poly(k).coeffs)) for k in range(int(cfg.n) + 1)
    ]


def cmd_transform(cfg):
    fam = resolve_family(cfg)
    m = resolve_map(cfg)
    n = int(cfg.n)
    seq = build(fam, m, n)
    q = seq.poly(n)
    base = seq.base_poly(n)
    predicted = leading_coefficient_prediction(base, m)
    actual = q.coeff(n)
    scale = max(abs(predicted), 1.0)
    tol = cfg.tol if cfg.tol is not None else 1e-11
    spec = seq.contour
    rows = [
        row("coefficients", list(q.coeffs)),
        check_row("dual_construction_mismatch", seq.dual_mismatch, tol),
        row(
            "leading_coefficient",
            actual,
            expected=predicted,
            tolerance=tol,
            passed=bool(abs(actual - predicted) / scale <= tol),
        ),
        row("degree_drop", n - q.degree),
        row("contour_kind", spec.kind),
        row("contour_disconnected", spec.disconnected),
        row("contour_start", None if spec.start.is_infinite else spec.start.value),
        row("contour_end", None if spec.end.is_infinite else spec.end.value),
    ]
    if spec.center is not None:
        rows.append(row("contour_center", spec.center))
        rows.append(row("contour_radius", spec.radius))
        rows.append(row("contour_sweep", spec.sweep))
    return rows


def cmd_gram(cfg):
    fam = resolve_family(cfg)
    m = resolve_map(cfg)
    n = int(cfg.n)
    seq = build(fam, m, n)
    scheme = resolve_scheme(cfg)
    diag_tol = cfg.diag_tol if cfg.diag_tol is not None else 1e-7
    off_tol = cfg.offdiag_tol if cfg.offdiag_tol is not None else 1e-8
    rows = []
    reports = {}
    want = ("pullback", "direct") if cfg.route == "both" else (cfg.route,)
    for route in want:
        if route == "pullback":
            rep = gram_transformed_pullback(seq, n, scheme)
        else:
            try:
                rep = gram_transformed_contour(seq, n, scheme)
            except UnsupportedContour as exc:
                rows.append(row("direct_route", f"unsupported: {exc}"))
                continue
        reports[route] = rep
        rows.append(
            row(f"{route}_diagonal", [rep.matrix[k, k] for k in range(n + 1)],
                expected=list(rep.expected_diag))
        )
        rows.append(check_row(f"{route}_max_diag_err", rep.max_diag_err, diag_tol))
        rows.append(check_row(f"{route}_max_offdiag", rep.max_offdiag, off_tol))
    if len(reports) == 2:
        a = reports["pullback"].matrix
        b = reports["direct"].matrix
        diag = np.sqrt(np.abs(np.diagonal(a)))
        scale = np.outer(diag, diag)
        equiv = float(np.max(np.abs(a - b) / scale))
        rows.append(check_row("route_equivalence", equiv, 1e-7))
    return rows


def cmd_ode_check(cfg):
    fam = resolve_family(cfg)
    m = resolve_map(cfg)
    n = int(cfg.n)
    seq = build(fam, m, n)
    rng = np.random.default_rng(cfg.seed)
    pts = _offgrid_points(m, rng, int(cfg.points))
    tol = cfg.tol if cfg.tol is not None else 1e-9
    worst = max(
        abs(transformed_ode_residual(seq, k, z, relative=True))
        for k in range(n + 1)
        for z in pts
    )
    return [check_row("max_ode_residual", worst, tol)]


def cmd_cd_check(cfg):
    fam = resolve_family(cfg)
    m = resolve_map(cfg)
    n = int(cfg.n)
    seq = build(fam, m, n + 1)
    rng = np.random.default_rng(cfg.seed)
    tol = cfg.tol if cfg.tol is not None else 1e-8
    pts = _offgrid_points(m, rng, 2 * int(cfg.points))
    pairs = []
    for k in range(0, len(pts) - 1, 2):
        if abs(pts[k] - pts[k + 1]) > 0.1:
            pairs.append((pts[k], pts[k + 1]))
    worst = {
        "rational": 0.0,
        "rational_confluent": 0.0,
        "homogeneous": 0.0,
        "homogeneous_confluent": 0.0,
    }
    for x, y in pairs:
        worst["rational"] = max(
            worst["rational"], abs(cd_rational_residual(seq, n, x, y, relative=True))
        )
        worst["homogeneous"] = max(
            worst["homogeneous"],
            abs(cd_homogeneous_residual(seq, n, x, y, relative=True)),
        )
    for z in pts:
        worst["rational_confluent"] = max(
            worst["rational_confluent"],
            abs(cd_rational_confluent_residual(seq, n, z, relative=True)),
        )
        worst["homogeneous_confluent"] = max(
            worst["homogeneous_confluent"],
            abs(cd_homogeneous_confluent_residual(seq, n, z, relative=True)),
        )
    return [check_row(f"max_{name}_residual", val, tol)
            for name, val in worst.items()]


def cmd_pearson_check(cfg):
    fam = resolve_family(cfg)
    m = resolve_map(cfg)
    seq = build(fam, m, max(int(cfg.m_index), int(cfg.n_index), 1))
    rng = np.random.default_rng(cfg.seed)
    pts = _contour_points(fam, m, rng, int(cfg.points))
    tol = cfg.tol if cfg.tol is not None else 1e-9
    fixed = max(
        abs(pearson_fixed_residual(seq, z, relative=True)) for z in pts
    )
    pair = max(
        abs(
            pearson_residual(
                seq, int(cfg.m_index), int(cfg.n_index), z, relative=True
            )
        )
        for z in pts
    )
    return [
        check_row("max_fixed_weight_residual", fixed, tol),
        check_row(
            f"max_pair_{int(cfg.m_index)}_{int(cfg.n_index)}_residual", pair, tol
        ),
    ]


def cmd_rodrigues_check(cfg):
    fam = resolve_family(cfg)
    m = resolve_map(cfg)
    n = int(cfg.n)
    rng = np.random.default_rng(cfg.seed)
    classical_tol = cfg.tol if cfg.tol is not None else 1e-8
    transformed_tol = cfg.tol if cfg.tol is not None else 1e-7
    members = generate(fam, n)
    ts = _interior_params(fam, rng, int(cfg.points))
    worst_classical = 0.0
    for k in range(n + 1):
        for t in ts:
            val = classical_rodrigues(fam, k, complex(t))
            ref = members[k].eval(complex(t))
            worst_classical = max(
                worst_classical, abs(val - ref) / max(abs(ref), 1.0)
            )
    seq = build(fam, m, n)
    ys = _contour_points(fam, m, rng, int(cfg.points))
    worst_transformed = 0.0
    for k in range(n + 1):
        for y in ys:
            val = transformed_rodrigues(seq, k, y)
            ref = seq.poly(k).eval(y)
            worst_transformed = max(
                worst_transformed, abs(val - ref) / max(abs(ref), 1.0)
            )
    return [
        check_row("max_classical_residual", worst_classical, classical_tol),
        check_row("max_transformed_residual", worst_transformed, transformed_tol),
    ]


def cmd_genfun_check(cfg):
    spec = genfun_spec(cfg.gf)
    fam = builtin("hermite" if spec.kind == "hermite-exp" else "chebyshev-t")
    m = resolve_map(cfg)
    n = int(cfg.n)
    rng = np.random.default_rng(cfg.seed)
    tol = cfg.tol if cfg.tol is not None else 1e-9
    members = generate(fam, n)
    worst_classical = 0.0
    for t in _interior_params(fam, rng, 5):
        series = genfun_series(spec, complex(t), n)
        for k in range(n + 1):
            ref = members[k].eval(complex(t))
            if spec.exponential:
                ref = ref / math.factorial(k)
            worst_classical = max(
                worst_classical, abs(series.coeff(k) - ref) / max(abs(ref), 1.0)
            )
    seq = build(fam, m, n)
    worst_transformed = 0.0
    for y in _contour_points(fam, m, rng, 5):
        series = genfun_series_transformed(spec, m, y, n)
        for k in range(n + 1):
            ref = seq.poly(k).eval(y)
            if spec.exponential:
                ref = ref / math.factorial(k)
            worst_transformed = max(
                worst_transformed, abs(series.coeff(k) - ref) / max(abs(ref), 1.0)
            )
    return [
        check_row("max_classical_residual", worst_classical, tol),
        check_row("max_transformed_residual", worst_transformed, tol),
    ]


def cmd_zeros(cfg):
    fam = resolve_family(cfg)
    m = resolve_map(cfg)
    n = int(cfg.n)
    seq = build(fam, m, n)
    rs = find_roots(seq.poly(n))
    report = map_zero_check(seq.base_poly(n), m, n)
    rows = [
        row("roots", list(rs.roots)),
        check_row(
            "max_backward_error", float(max(rs.backward_errors, default=0.0)), 1e-10
        ),
        check_row(
            "map_zero_mismatch", report["max_relative_mismatch"], 1e-7
        ),
        row("degree_drop", report["degree_drop"]),
    ]
    return rows


def cmd_interlace(cfg):
    fam = resolve_family(cfg)
    m = resolve_map(cfg)
    n = int(cfg.n)
    seq = build(fam, m, n + 1)
    report = interlacing_check(
        seq.poly(n), seq.poly(n + 1), m, n, fam.interval
    )
    return [
        row("ok", report["ok"], passed=bool(report["ok"])),
        row("reason", report["reason"]),
        row("pullback_low", list(report["t_low"])),
        row("pullback_high", list(report["t_high"])),
        check_row("max_imag", report["max_imag"], 1e-8),
    ]


def cmd_bessel(cfg):
    gamma = float(cfg.gamma)
    beta = float(cfg.beta)
    n = int(cfg.n)
    rows = []
    for k in range(n + 1):
        rows.append(row(f"B{k}", list(bessel_generalized(k, gamma, beta).coeffs)))
    if n >= 1:
        rng = np.random.default_rng(cfg.seed)
        pts = rng.uniform(0.2, 3.0, 10)
        worst_ode = max(
            abs(bessel_ode_residual(gamma, beta, k, complex(t), relative=True))
            for k in range(1, n + 1)
            for t in pts
        )
        rows.append(check_row("max_ode_residual", worst_ode, 1e-9))
    for mm in range(n + 1):
        for nn in range(mm, n + 1):
            res = bessel_orthogonality_check(gamma, beta, mm, nn)
            name = f"orthogonality_{mm}_{nn}"
            if res["status"] != "ok":
                rows.append(row(name, res["status"]))
                continue
            tol = 1e-6 if mm == nn else 1e-8
            rows.append(
                row(
                    name,
                    res["value"],
                    expected=res["expected"],
                    tolerance=tol,
                    passed=bool(res["relative_error"] <= tol),
                )
            )
    k = round(-gamma)
    if k >= 1 and abs(gamma + k) <= 1e-12:
        res = bessel_defective_identity_check(gamma, beta)
        rows.append(check_row("defective_identity", res["max_mismatch"], 1e-11))
    return rows


def cmd_romanovski(cfg):
    gamma = float(cfg.gamma)
    delta = float(cfg.delta)
    n = int(cfg.n)
    scheme = resolve_scheme(cfg)
    seq = romanovski_sequence(gamma, delta, n)
    rows = [
        row(f"R{k}", [c.real for c in seq.poly(k).coeffs]) for k in range(n + 1)
    ]
    for k in range(n + 1):
        res = romanovski_orthogonality_check(k, k, gamma, delta, scheme)
        if res["status"] != "ok":
            rows.append(row(f"diagonal_{k}", res["status"]))
            continue
        rows.append(
            row(
                f"diagonal_{k}",
                res["pullback"],
                expected=res["expected"],
                tolerance=1e-6,
                passed=bool(res["relative_error"] <= 1e-6),
            )
        )
        rows.append(check_row(f"route_equivalence_{k}", res["route_equivalence"], 1e-7))
    if n >= 1:
        res = romanovski_orthogonality_check(0, 1, gamma, delta, scheme)
        if res["status"] == "ok":
            rows.append(
                row(
                    "offdiagonal_0_1",
                    res["pullback"],
                    expected=0.0,
                    tolerance=1e-8,
                    passed=bool(res["relative_error"] <= 1e-8),
                )
            )
    real = romanovski_finite_real_check(
        int(cfg.m_index), int(cfg.n_index), gamma, delta, scheme
    )
    name = f"real_line_{int(cfg.m_index)}_{int(cfg.n_index)}"
    if real["status"] != "ok":
        rows.append(row(name, real["status"]))
    elif real["m"] == real["n"]:
        rows.append(row(name, real["value"],
                        passed=bool(real["relative_error"] == 0.0)))
    else:
        rows.append(
            row(name, real["value"], expected=0.0, tolerance=1e-8,
                passed=bool(real["relative_error"] <= 1e-8))
        )
    return rows


def cmd_limits(cfg):
    n = int(cfg.n)
    rows = []
    band = "ratio in [0.05,0.2]"
    if cfg.target in ("all", "laguerre"):
        res = jacobi_to_laguerre_limit_check(n, float(cfg.beta))
        rows.append(row("laguerre_errors", res["errors"]))
        rows.append(
            row("laguerre_ratios", res["ratios"], tolerance=band,
                passed=bool(res["ok"]))
        )
    if cfg.target in ("all", "hermite"):
        res = jacobi_to_hermite_limit_check(n)
        rows.append(row("hermite_errors", res["errors"]))
        rows.append(
            row("hermite_ratios", res["ratios"], tolerance=band,
                passed=bool(res["ok"]))
        )
    if cfg.target in ("all", "szego"):
        res = szego_laguerre_check(n, float(cfg.alpha))
        rows.append(
            row("szego_errors", res["errors"], passed=bool(res["decreasing"]))
        )
    if cfg.target in ("all", "weight"):
        res = jacobi_weight_limit_check((1e2, 1e3, 1e4), float(cfg.beta))
        rows.append(row("weight_errors", res["errors"]))
        rows.append(
            row("weight_ratios", res["ratios"], tolerance=band,
                passed=bool(res["ok"]))
        )
    return rows


def cmd_cayley(cfg):
    n = int(cfg.n)
    m = cayley_to_circle()
    rows = []
    for name, fam in (
        ("hermite", builtin("hermite")),
        ("jacobi_0_0", builtin("jacobi", alpha=0.0, beta=0.0)),
    ):
        seq = build(fam, m, n + 1)
        worst_radius = 0.0
        worst_score = 0.0
        for k in range(1, n + 1):
            res = unit_circle_check(seq.poly(k))
            worst_radius = max(worst_radius, res["max_radius_deviation"])
            worst_score = max(worst_score, res["self_inversive_score"])
        rows.append(check_row(f"{name}_max_radius_deviation", worst_radius, 1e-9))
        rows.append(check_row(f"{name}_self_inversive_score", worst_score, 1e-9))
        inter_ok = True
        for k in range(1, n):
            rep = interlacing_check(
                seq.poly(k), seq.poly(k + 1), m, k, fam.interval
            )
            inter_ok = inter_ok and rep["ok"]
        rows.append(row(f"{name}_interlacing", inter_ok, passed=bool(inter_ok)))
    return rows


HANDLERS = {
    "table": cmd_table,
    "transform": cmd_transform,
    "gram": cmd_gram,
    "ode-check": cmd_ode_check,
    "cd-check": cmd_cd_check,
    "pearson-check": cmd_pearson_check,
    "rodrigues-check": cmd_rodrigues_check,
    "genfun-check": cmd_genfun_check,
    "zeros": cmd_zeros,
    "interlace": cmd_interlace,
    "bessel": cmd_bessel,
    "romanovski": cmd_romanovski,
    "limits": cmd_limits,
    "cayley": cmd_cayley,
}


def build_parser():
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--family", default=None)
    parent.add_argument("--alpha", type=float, default=None)
    parent.add_argument("--beta", type=float, default=None)
    parent.add_argument("--gamma", type=float, default=None)
    parent.add_argument("--delta", type=float, default=None)
    parent.add_argument("--map", default=None)
    parent.add_argument("--n", type=int, default=None)
    parent.add_argument("--m-index", type=int, default=None)
    parent.add_argument("--n-index", type=int, default=None)
    parent.add_argument("--points", type=int, default=None)
    parent.add_argument("--seed", type=int, default=None)
    parent.add_argument("--route", choices=("pullback", "direct", "both"),
                        default=None)
    parent.add_argument("--gf", choices=("hermite-exp", "chebyshev-rational"),
                        default=None)
    parent.add_argument(
        "--target", choices=("all", "laguerre", "hermite", "szego", "weight"),
        default=None,
    )
    parent.add_argument("--points-per-panel", type=int, default=None)
    parent.add_argument("--levels", type=int, default=None)
    parent.add_argument("--tol", type=float, default=None)
    parent.add_argument("--diag-tol", type=float, default=None)
    parent.add_argument("--offdiag-tol", type=float, default=None)
    parent.add_argument("--format", choices=("json", "csv"), default=None)
    parent.add_argument("--out", default=None)
    parent.add_argument("--config", default=None)
    parent.add_argument("--dump-config", action="store_true")

    parser = argparse.ArgumentParser(
        prog="orthomap",
        description="checks and tables for Moebius-transformed "
        "orthogonal polynomial sequences",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[parent])
    return parser


def merge_config(args):
    data = dict(COMMAND_DEFAULTS.get(args.command, {}))
    if args.config:
        try:
            with open(args.config) as fh:
                loaded = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}")
        loaded.pop("command", None)
        data.update(loaded)
    flag_fields = {
        f.name for f in dataclasses.fields(RunConfig) if f.name != "command"
    }
    for name in flag_fields:
        val = getattr(args, name, None)
        if val is not None and val is not False:
            data[name] = val
    cfg = RunConfig(command=args.command)
    known = {f.name for f in dataclasses.fields(RunConfig)}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    for key, val in data.items():
        setattr(cfg, key, val)
    parse_map(cfg.map)
    return cfg


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = merge_config(args)
        if args.dump_config:
            sys.stdout.write(json.dumps(cfg.to_dict(), indent=2) + "\n")
            return 0
        results = HANDLERS[cfg.command](cfg)
        if cfg.out:
            with open(cfg.out, "w") as fh:
                return _emit(cfg, results, fh)
        return _emit(cfg, results, sys.stdout)
    except (ConfigError, OrthomapError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
