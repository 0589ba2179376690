"""Command-line front end.

    fracradon transform --op radon --fn gaussian:a=1 --n 2 --theta 0 --out csv
    fracradon fracint --op T --alpha -0.5 --method hypersingular --fn bandlimited:r0=1,r1=3,seed=7
    fracradon verify --suite identities --n 2
    fracradon norms --fn mollifier --p 1
    fracradon report --table ladder

Every output starts with ``#`` lines echoing the effective configuration, so
each number can be regenerated from its header.  Exit codes: 0 success,
1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
from dataclasses import asdict, dataclass, field
import io
import json
import math
import sys
import warnings

import numpy as np

from . import __version__
from . import estimates as es
from . import fracradon as fr
from . import spectral as sp
from . import transforms as tr
from .frac1d import Signal, lambda_kernel_mass, marchaud, rl_integral
from .functions import BandLimited, Gaussian, Grid1D, GridND, Mollifier, parse_function, sample

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SUITES = ("identities", "constants", "sharpness")


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    """Fully defaulted parameters of one run; echoed into every output header."""

    subcommand: str
    fn: str | None = None
    n: int = 2
    grid: tuple = (-4.0, 4.0, 81)
    op: str | None = None
    alpha: tuple | None = None
    method: str | None = None
    theta: tuple | None = None
    xprime: tuple | None = None
    suite: str | None = None
    p: float | None = None
    nu: float = 0.0
    table: str | None = None
    tol: dict = field(default_factory=dict)
    out: str = "csv"
    output: str | None = None
    seed: int = 7
    threads: int = 1

    def header(self) -> dict:
        d = asdict(self)
        d["version"] = __version__
        return d


# --------------------------------------------------------------------------
# output


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.17g}"
    return str(v)


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (np.bool_,)):
        return bool(v)
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else repr(v)
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, np.ndarray):
        return _jsonable(v.tolist())
    return v


@dataclass
class Table:
    columns: list
    records: list
    meta: dict = field(default_factory=dict)


def render(cfg: RunConfig, table: Table) -> str:
    if cfg.out == "json":
        doc = {"config": cfg.header(), "meta": table.meta, "columns": table.columns,
               "records": [dict(zip(table.columns, r)) for r in table.records]}
        return json.dumps(_jsonable(doc), indent=1, sort_keys=True) + "\n"
    buf = io.StringIO()
    for k, v in cfg.header().items():
        buf.write(f"# {k}: {json.dumps(_jsonable(v), sort_keys=True)}\n")
    for k, v in table.meta.items():
        buf.write(f"# {k}: {json.dumps(_jsonable(v), sort_keys=True)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(table.columns)
    for r in table.records:
        w.writerow([_fmt(v) for v in r])
    return buf.getvalue()


def _value_columns(values) -> tuple:
    values = np.asarray(values)
    if np.iscomplexobj(values) and np.any(values.imag != 0):
        return ["value_re", "value_im"], [values.real, values.imag]
    return ["value"], [values.real]


REPORT_COLUMNS = ["check", "operator", "input", "kind", "measured", "theory", "tol", "relative_error", "passed"]


def report_table(rows: list) -> Table:
    recs = []
    for name, r in rows:
        rel = r.relative_error if r.kind == "==" else None
        recs.append([name, r.operator, r.input, r.kind, r.measured, r.theory, r.tol, rel, r.passed])
    failed = [name for name, r in rows if r.passed is False]
    return Table(REPORT_COLUMNS, recs, {"checks": len(rows), "failed": failed})


# --------------------------------------------------------------------------
# verification battery


def _sup_rel(a, b) -> float:
    a, b = np.asarray(a), np.asarray(b)
    return float(np.max(np.abs(a - b)) / np.max(np.abs(b)))


def _bound(op, inp, measured, bound, params=None, meta=None) -> es.NormReport:
    return es.NormReport(op, inp, params or {}, float(measured), float(bound), "<=", 0.0, meta or {})


def check_semigroup(n, seed):
    g = Grid1D(-8.0, 8.0, 2 ** 14)
    s = Signal.from_function(lambda t: np.exp(-t * t), g)
    lhs = rl_integral(rl_integral(s, 0.4), 0.3).values
    rhs = rl_integral(s, 0.7).values
    return _bound("I^0.3 I^0.4 = I^0.7", "exp(-t^2)", _sup_rel(lhs, rhs), 1e-4)


def check_marchaud(n, seed):
    g = Grid1D(-8.0, 8.0, 2 ** 12 + 1)
    s = Signal.from_function(lambda t: np.exp(-t * t), g)
    d = marchaud(rl_integral(s, 0.5), 0.5)
    return _bound("D^1/2 I^1/2 = id", "exp(-t^2)", np.max(np.abs(d.values - s.values)), 1e-3)


def _check_kernel(ell, a):
    def run(n, seed):
        m = lambda_kernel_mass(ell, a)
        return es.NormReport(f"int lambda_(ell={ell},a={a})", "-", {"ell": ell, "a": a}, m, 1.0, "==", 1e-8)
    return run


def _check_slice(variant, kind, tol):
    def run(n, seed):
        if kind == "gaussian":
            f = Gaussian(n, 1.0)
        elif n == 2:
            f = BandLimited(2, 1.0, 3.0, seed)
        else:
            # few modes keep the plane quadratures affordable in three dimensions
            f = BandLimited(3, 1.0, 3.4, seed, width=4.0, dk=1.5)
        err = sp.slice_check(f, variant)
        return _bound(f"Fourier slice {variant}", f.dsl, err, tol)
    return run


def _directions(n, floor=0.1):
    ang = np.linspace(0.2, 6.0, 9)
    if n == 2:
        th = np.stack([np.cos(ang), np.sin(ang)], axis=-1)
    else:
        th = np.stack([np.cos(ang) * np.sin(ang + 0.3), np.sin(ang) * np.sin(ang + 0.3), np.cos(ang + 0.3)], -1)
    return th[np.abs(th[:, -1]) >= floor]


def check_lambda0(n, seed):
    f = Gaussian(n, 1.0)
    th = _directions(n)
    t = np.linspace(-2.0, 2.0, 9)
    psi = tr.lambda_map(lambda x: tr.transversal(f, x), 0.0, floor=0.1)
    lhs = psi(th[:, None, :], t[None, :])
    rhs = np.stack([tr.radon(f, q, t) for q in th])
    return _bound("R = Lambda_0 T", f.dsl, _sup_rel(lhs, rhs), 1e-6)


def check_parabolic(n, seed):
    f = Gaussian(n, 1.0)
    axes = [np.linspace(-1.5, 1.5, 7)] * (n - 1) + [np.linspace(-2.0, 3.0, 9)]
    x = np.stack(np.meshgrid(*axes, indexing="ij"), -1)
    lhs = tr.parabolic(f, x)
    rhs = tr.b2(lambda y: tr.transversal(tr.b1(f), y))(x)
    return _bound("P = B2 T B1", f.dsl, _sup_rel(lhs, rhs), 1e-8)


def _check_conjugate(alpha):
    def run(n, seed):
        f = Gaussian(2, 1.0)
        th = _directions(2)[:, None, :]
        t = np.linspace(-2.0, 2.0, 9)[None, :]
        lhs = fr.r_plus(f, alpha, th, t)
        rhs = fr.lambda_conjugate(f, alpha, th, t)
        return _bound("R_+^a = Lambda_a T_+^a", f.dsl, _sup_rel(rhs, lhs), 1e-5, {"alpha": alpha})
    return run


def dual_identity_error(f, directions: int = 512) -> float:
    """|| R*R f - 2 I^1 f ||_2 / || I^1 f ||_2 with the normalized dual, n = 2."""
    D = tr.DirectionSet.equispaced(directions)
    off = Grid1D.with_step(-60.0, 60.0, 0.1)
    cf = tr.radon_field(f, D, off)
    g = GridND.cube(2, -64.0, 64.0, 640)
    i1 = sp.riesz_nd(sample(f, g), 1.0).values.real
    sub = np.max(np.abs(g.points()), axis=-1) <= 12.0
    lhs = tr.radon_dual(cf, g.points()[sub], normalized=True, interp="cubic")
    rhs = 2.0 * i1[sub]
    return float(np.linalg.norm(lhs - rhs) / np.linalg.norm(rhs))


def check_dual(n, seed):
    f = BandLimited(2, 1.0, 3.0, seed)
    return _bound("R*R = 2 I^1", f.dsl, dual_identity_error(f), 1e-2)


def _hyper_points():
    return np.stack(np.meshgrid([-0.7, 0.0, 0.9], np.linspace(-4.0, 4.0, 33), indexing="ij"), -1)


def check_hypersingular(n, seed):
    f = BandLimited(2, 1.0, 3.0, seed)
    x = _hyper_points()
    h = fr.t_plus_hypersingular(f, 0.5, x)
    s = fr.t_plus(f, -0.5, x, method="spectral")
    return _bound("T_+^-1/2 hypersingular vs spectral", f.dsl,
                  np.linalg.norm(h - s) / np.linalg.norm(s), 1e-3)


def check_hyper_ell(n, seed):
    f = BandLimited(2, 1.0, 3.0, seed)
    x = _hyper_points()
    h1 = fr.t_plus_hypersingular(f, 0.5, x, ell=1)
    h2 = fr.t_plus_hypersingular(f, 0.5, x, ell=2)
    return _bound("T_+^-1/2 ell=1 vs ell=2", f.dsl, np.linalg.norm(h1 - h2) / np.linalg.norm(h2), 1e-3)


# (alpha, p, nu) for the fractional identity, (p, nu) for the plain one; the
# unweighted identities have no parameter, so they are swept over the
# gaussian width instead
TRANSFER_POINTS = ((-1.0, 2.0, 0.0), (-0.5, 2.0, 0.0), (-1.0, 1.5, 0.5))
TRANSFER_WEIGHTS = ((1.0, 0.0), (2.0, 0.0), (1.5, 0.5))
TRANSFER_WIDTHS = (1.0, 0.5, 2.0)


def transfer_case(name: str, k: int) -> es.NormReport:
    if name == "tae":
        p, nu = TRANSFER_WEIGHTS[k]
        return es.transfer_identity(name, Gaussian(2, 1.0), p, nu)
    if name == "tae1":
        a, p, nu = TRANSFER_POINTS[k]
        return es.transfer_identity(name, Gaussian(2, 1.0), p, nu, a)
    return es.transfer_identity(name, Gaussian(2, TRANSFER_WIDTHS[k]))


def _check_transfer(name, k):
    return lambda n, seed: transfer_case(name, k)


def check_inversion(n, seed):
    f = BandLimited(2, 1.0, 3.0, seed)
    _, err = fr.invert(f)
    return _bound("(2pi)^-1 T^-1/2 T*^-1/2 = id", f.dsl, err, 1e-2)


def check_composition(n, seed):
    f = BandLimited(2, 1.0, 3.0, seed)
    F, H = fr.compose(f, -0.25, -0.75)
    return _bound("T_+^a T*_+^b composition", f.dsl, fr.relative_l2(H, fr.composition_rhs(F, -0.25, -0.75)), 1e-2)


def check_tt_star(n, seed):
    f = BandLimited(2, 1.0, 3.0, seed)
    F, H = fr.compose(f, 0.0, 0.0)
    return _bound("T T* = 2pi I_2^1", f.dsl, fr.relative_l2(H, fr.composition_rhs(F, 0.0, 0.0)), 1e-2)


def check_radon_p1(n, seed):
    return es.radon_norm_audit(Mollifier(2, 1.0), 1.0)


def check_radon_p12(n, seed):
    return es.radon_norm_audit(Gaussian(2, 1.0), 1.2)


def check_transversal_p12(n, seed):
    return es.transversal_norm_audit(Gaussian(2, 1.0), 1.2)


def _check_l2(i):
    def run(n, seed):
        return es.l2_identity_check(BandLimited(2, 1.0, 3.0, seed), (0.0, 0.5), "stated")[i]
    return run


def check_exponent_law(n, seed):
    """Scaling balance 1 - n - 1/q = -n/p at alpha0 = 0 and 1/p + 1/p' = 1 over the alpha0 range."""
    e = es.exponents(0.0, n)
    worst = abs((1 - n - 1 / e.q) - (-n / e.p))
    for a0 in np.linspace((1 - n) / 2, 1.0, 9):
        e = es.exponents(float(a0), n)
        worst = max(worst, abs(e.inv_p + e.inv_p_conj - 1))
    return _bound("1 - n - 1/q = -n/p, 1/p + 1/p' = 1", "-", worst, 1e-12)


def check_weak(n, seed):
    return es.weak_type_audit(0.5, 2)


def check_divergent(n, seed):
    return es.divergence_witness(2.0, 0.0, 2)


def check_convergent(n, seed):
    return es.divergence_witness(1.2, 0.0, 2)


def _check_scaling(lam, i):
    def run(n, seed):
        return es.scaling_identities(Gaussian(2, 1.0), lam)[i]
    return run


def _battery():
    """suite -> list of (name, dimensions, check)."""
    both, two = (2, 3), (2,)
    ident = [
        ("semigroup", both, check_semigroup),
        ("marchaud_inversion", both, check_marchaud),
        ("kernel_1_0.5", both, _check_kernel(1, 0.5)),
        ("kernel_2_0.5", both, _check_kernel(2, 0.5)),
        ("kernel_2_1", both, _check_kernel(2, 1.0)),
        ("slice_R_gaussian", both, _check_slice("R", "gaussian", 1e-6)),
        ("slice_R_bandlimited", both, _check_slice("R", "bandlimited", 1e-8)),
        ("slice_T_gaussian", two, _check_slice("T", "gaussian", 1e-6)),
        ("slice_T_bandlimited", two, _check_slice("T", "bandlimited", 1e-8)),
        ("lambda0_conjugation", both, check_lambda0),
        ("parabolic_conjugation", two, check_parabolic),
        ("lambda_alpha_+0.5", two, _check_conjugate(0.5)),
        ("lambda_alpha_-0.5", two, _check_conjugate(-0.5)),
        ("dual_identity", two, check_dual),
        ("hypersingular_vs_spectral", two, check_hypersingular),
        ("hypersingular_ell", two, check_hyper_ell),
    ]
    for name in es.TRANSFER_NAMES:
        for k in range(3):
            ident.append((f"transfer_{name}_{k}", two, _check_transfer(name, k)))
    const = [
        ("inversion_constant", two, check_inversion),
        ("composition", two, check_composition),
        ("tt_star", two, check_tt_star),
        ("radon_p1_equality", two, check_radon_p1),
        ("radon_p1.2_bound", two, check_radon_p12),
        ("transversal_p1.2_bound", two, check_transversal_p12),
        ("gamma_modulus", both, lambda n, s: es.gamma_modulus_check()),
        ("gamma_asymptotic", both, lambda n, s: es.gamma_asymptotic_check()),
        ("l2_identity_gamma_0", two, _check_l2(0)),
        ("l2_identity_gamma_0.5", two, _check_l2(1)),
        ("l2_isometry_constant", two, _check_l2(2)),
    ]
    sharp = [
        ("exponent_law", both, check_exponent_law),
        ("weak_type", two, check_weak),
        ("divergence_ladder", two, check_divergent),
        ("convergent_ladder", two, check_convergent),
    ]
    for lam in (0.5, 2.0):
        for i, what in enumerate(("lp_norm", "radon_norm", "r_plus", "t_plus")):
            sharp.append((f"scaling_{what}_{lam:g}", two, _check_scaling(lam, i)))
    return {"identities": ident, "constants": const, "sharpness": sharp}


def run_suite(suite: str, n: int = 2, seed: int = 7, tol: dict | None = None, names=None) -> list:
    """Run a suite ('all' for every suite); returns [(name, NormReport)]."""
    battery = _battery()
    picked = SUITES if suite == "all" else (suite,)
    rows = []
    for s in picked:
        for name, dims, check in battery[s]:
            if n not in dims or (names is not None and name not in names):
                continue
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                r = check(n, seed)
            if tol and name in tol:
                r.tol = float(tol[name])
            rows.append((name, r))
    return rows


# --------------------------------------------------------------------------
# subcommands


def _function(cfg: RunConfig):
    try:
        f = parse_function(cfg.fn, cfg.n)
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from exc
    if isinstance(f, BandLimited) and "seed=" not in cfg.fn:
        f = BandLimited(f.n, f.r0, f.r1, cfg.seed, f.width, f.dk)
    cfg.n = f.n
    cfg.fn = f.dsl
    return f


def _theta(cfg: RunConfig) -> np.ndarray:
    th = cfg.theta if cfg.theta is not None else (0.0,)
    if cfg.n == 2 and len(th) == 1:
        return np.array([math.cos(th[0]), math.sin(th[0])])
    v = np.asarray(th, dtype=float)
    if v.shape != (cfg.n,) or np.linalg.norm(v) == 0:
        raise UsageError(f"--theta needs one angle (n=2) or {cfg.n} components")
    return v / np.linalg.norm(v)


def _xprime(cfg: RunConfig) -> np.ndarray:
    xp = cfg.xprime if cfg.xprime is not None else (0.0,) * (cfg.n - 1)
    if len(xp) != cfg.n - 1:
        raise UsageError(f"--xprime needs {cfg.n - 1} components")
    return np.asarray(xp, dtype=float)


def _nodes(cfg: RunConfig) -> np.ndarray:
    lo, hi, count = cfg.grid
    return Grid1D(lo, hi, count).nodes


def cmd_transform(cfg: RunConfig) -> tuple:
    f = _function(cfg)
    s = _nodes(cfg)
    if cfg.op == "radon":
        vals, coord = tr.radon(f, _theta(cfg), s), "t"
    else:
        x = np.concatenate([np.broadcast_to(_xprime(cfg), (len(s), cfg.n - 1)), s[:, None]], axis=1)
        op = {"transversal": tr.transversal, "dual": tr.transversal_dual, "parabolic": tr.parabolic}[cfg.op]
        vals = op(f, x)
        coord = "x_n"
    names, cols = _value_columns(vals)
    return Table([coord] + names, [list(r) for r in zip(s, *cols)]), EXIT_OK


_OPS = {"R": "R", "T": "T", "Tstar": "T*", "P": "P"}


def _reference_method(f, method):
    """Independent second path for the comparison row, or None."""
    if method == "spectral":
        return None
    if isinstance(f, BandLimited):
        return "spectral"
    if method == "hypersingular" and f.has_derivatives():
        return "continued"
    return None


def cmd_fracint(cfg: RunConfig) -> tuple:
    f = _function(cfg)
    s = _nodes(cfg)
    alpha = complex(*cfg.alpha)
    kind = _OPS[cfg.op]

    def request(method):
        if kind == "R":
            return fr.FracTransformRequest(kind, alpha, f, theta=_theta(cfg), t=s, method=method)
        x = np.concatenate([np.broadcast_to(_xprime(cfg), (len(s), cfg.n - 1)), s[:, None]], axis=1)
        return fr.FracTransformRequest(kind, alpha, f, x=x, method=method)

    try:
        req = request(cfg.method)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    vals = np.asarray(req.evaluate())
    names, cols = _value_columns(vals)
    table = Table(["t" if kind == "R" else "x_n"] + names, [list(r) for r in zip(s, *cols)])
    ref = _reference_method(f, cfg.method)
    if ref is not None:
        other = np.asarray(request(ref).evaluate())
        err = float(np.linalg.norm(vals - other) / np.linalg.norm(other))
        table.meta["comparison"] = {"reference": ref, "relative_l2": err}
    return table, EXIT_OK


def cmd_verify(cfg: RunConfig) -> tuple:
    rows = run_suite(cfg.suite, cfg.n, cfg.seed, cfg.tol)
    table = report_table(rows)
    return table, (EXIT_FAIL if table.meta["failed"] else EXIT_OK)


def cmd_norms(cfg: RunConfig) -> tuple:
    f = _function(cfg)
    if cfg.op == "radon":
        r = es.radon_norm_audit(f, cfg.p)
    elif cfg.op == "transversal":
        if f.n != 2:
            raise UsageError("the transversal audit is implemented for n = 2")
        r = es.transversal_norm_audit(f, cfg.p)
    else:
        if f.n != 2:
            raise UsageError("transfer identities are implemented for n = 2")
        r = es.transfer_identity(cfg.op, f, cfg.p, cfg.nu, complex(*cfg.alpha) if cfg.alpha else -1.0)
    table = report_table([(f"norm_{cfg.op}", r)])
    return table, (EXIT_FAIL if table.meta["failed"] else EXIT_OK)


def cmd_report(cfg: RunConfig) -> tuple:
    """Plot-ready tables behind the sharpness and constant audits."""
    if cfg.table == "ladder":
        recs = []
        for p, a in ((2.0, 0.0), (1.2, 0.0)):
            r = es.divergence_witness(p, a, 2)
            for L, v in zip(r.meta["ladder"], r.meta["partials"]):
                recs.append([p, a, L, v])
        return Table(["p", "alpha", "truncation", "partial_norm"], recs), EXIT_OK
    if cfg.table == "weak":
        r = es.weak_type_audit(0.5, 2)
        recs = [[lam, q] for lam, q in zip(r.params["lambdas"], r.meta["ratios"])]
        return Table(["lambda", "lambda^q_measure"], recs, {"sup": r.meta["sup"]}), EXIT_OK
    if cfg.table == "gamma":
        from .gamma import gamma
        recs = []
        for g in np.linspace(0.25, 4.0, 16):
            recs.append([g, abs(gamma(1 + 1j * g)) ** 2, math.pi * g / math.sinh(math.pi * g)])
        return Table(["gamma", "lanczos", "pi_gamma_over_sinh"], recs), EXIT_OK
    if cfg.table == "exponents":
        recs = []
        for a0 in np.linspace(-0.5, 0.9, 15):
            e = es.exponents(float(a0), cfg.n)
            recs.append([e.alpha0, e.p, e.q, e.nu, e.mu, es.constant_A(e.p, cfg.n) if 1 <= e.p < cfg.n / (cfg.n - 1) else None])
        return Table(["alpha0", "p", "q", "nu", "mu", "A"], recs), EXIT_OK
    raise UsageError(f"unknown table {cfg.table!r}")


COMMANDS = {"transform": cmd_transform, "fracint": cmd_fracint, "verify": cmd_verify,
            "norms": cmd_norms, "report": cmd_report}


# --------------------------------------------------------------------------
# argument parsing


def _floats(text: str) -> tuple:
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _alpha(text: str) -> tuple:
    v = _floats(text)
    if len(v) not in (1, 2):
        raise argparse.ArgumentTypeError("--alpha takes re or re,im")
    return (v[0], v[1] if len(v) == 2 else 0.0)


def _grid(text: str) -> tuple:
    parts = text.split(":")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except (IndexError, ValueError):
        raise argparse.ArgumentTypeError("--grid takes lo:hi:count")
    if len(parts) != 3 or not lo < hi or count < 2:
        raise argparse.ArgumentTypeError("--grid needs lo < hi and count >= 2")
    return (lo, hi, count)


def _tol(text: str) -> tuple:
    if "=" not in text:
        raise argparse.ArgumentTypeError("--tol takes check=value")
    k, v = text.split("=", 1)
    try:
        return k, float(v)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad tolerance {v!r}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fracradon", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="subcommand", required=True)

    def common(p, fn=True):
        if fn:
            p.add_argument("--fn", required=True, help="function DSL, e.g. gaussian:a=1")
        p.add_argument("--n", type=int, default=2, choices=(2, 3))
        p.add_argument("--out", choices=("csv", "json"), default="csv")
        p.add_argument("--output", help="write here instead of stdout")
        p.add_argument("--seed", type=int, default=7, help="default seed for band-limited inputs")

    p = sub.add_parser("transform", help="evaluate R, T, T* or P along a line")
    common(p)
    p.add_argument("--op", choices=("radon", "transversal", "dual", "parabolic"), required=True)
    p.add_argument("--theta", type=_floats, help="angle (n=2) or direction components")
    p.add_argument("--xprime", type=_floats, help="x' for transversal and parabolic slices")
    p.add_argument("--grid", type=_grid, default=(-4.0, 4.0, 81), help="lo:hi:count of t or x_n")

    p = sub.add_parser("fracint", help="evaluate a fractional Radon-type integral")
    common(p)
    p.add_argument("--op", choices=tuple(_OPS), required=True)
    p.add_argument("--alpha", type=_alpha, required=True, help="re or re,im")
    p.add_argument("--method", choices=("auto",) + fr.METHODS, default="auto")
    p.add_argument("--theta", type=_floats)
    p.add_argument("--xprime", type=_floats)
    p.add_argument("--grid", type=_grid, default=(-4.0, 4.0, 81))

    p = sub.add_parser("verify", help="run a verification suite")
    common(p, fn=False)
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--tol", type=_tol, action="append", default=[], help="check=value override")

    p = sub.add_parser("norms", help="norm audit or transfer identity for one input")
    common(p)
    p.add_argument("--op", choices=("radon", "transversal") + tuple(es.TRANSFER_NAMES), default="radon")
    p.add_argument("--p", type=float, default=1.0)
    p.add_argument("--nu", type=float, default=0.0)
    p.add_argument("--alpha", type=_alpha)

    p = sub.add_parser("report", help="plot-ready tables")
    common(p, fn=False)
    p.add_argument("--table", choices=("ladder", "weak", "gamma", "exponents"), required=True)
    return ap


def parse_config(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    d = vars(ns)
    cfg = RunConfig(d.pop("subcommand"))
    for k, v in d.items():
        if k == "tol":
            v = dict(v)
        setattr(cfg, k, v)
    if cfg.subcommand == "transform" and cfg.op == "radon" and cfg.xprime is not None:
        raise UsageError("--xprime does not apply to the radon transform")
    if cfg.subcommand == "norms" and cfg.p < 1:
        raise UsageError("--p must be >= 1")
    cfg.threads = sp.workers()
    return cfg


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        cfg = parse_config(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    except UsageError as exc:
        print(f"fracradon: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        table, code = COMMANDS[cfg.subcommand](cfg)
    except (UsageError, ValueError, NotImplementedError) as exc:
        # invalid inputs surface from the library as ValueError
        print(f"fracradon: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(cfg, table)
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main():
    sys.exit(run())
