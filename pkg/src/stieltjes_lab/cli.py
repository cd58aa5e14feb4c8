"""Command-line experiment driver.

    stieltjes-lab <experiment> --config PATH [--seed S]... [--out DIR] [--workers N]
    stieltjes-lab summarize DIR

Configuration files hold ``key = value`` lines (``#`` starts a comment).
Each run writes one CSV per seed (``seed-<S>.csv``; ``data.csv`` for the
deterministic experiments), a ``summary.csv`` and a line-oriented
``manifest.txt`` that echoes the full configuration, per-seed statistics,
timings and the pass/fail status of every embedded check.  CSV headers name
each column as ``name[unit|provenance]``.

Exit status: 0 when every check passes, 1 on usage or input errors, 2 when
a numerical check fails.
"""

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields, replace
from typing import List, NamedTuple, Tuple

import numpy as np
from scipy import stats

from . import __version__
from . import cfrac, jacobi, theory
from .coeffs import Constant, GammaParams, make_stream
from .errors import ConfigError, StieltjesError

EXPERIMENTS = ("dos", "idos", "lyapunov", "pade-error", "measure", "invariant", "baseline")

EXIT_OK, EXIT_USAGE, EXIT_CHECK = 0, 1, 2


# --- configuration ------------------------------------------------------------

@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str = "dos"
    a: float = 8.0
    b: float = 0.125
    t: Tuple[complex, ...] = (1 + 0j,)
    lam_min: float = 0.05
    lam_max: float = 20.0
    lam_points: int = 200
    lam_scale: str = "linear"
    n: int = 256
    steps: int = 1_000_000
    n_min: int = 1000
    n_max: int = 10000
    samples: int = 100_000
    seeds: Tuple[int, ...] = (0,)
    tol: float = 1e-10
    out: str = "runs"

    @property
    def params(self):
        return GammaParams(self.a, self.b)

    def lam_grid(self):
        if self.lam_scale == "log":
            return np.geomspace(self.lam_min, self.lam_max, self.lam_points)
        return np.linspace(self.lam_min, self.lam_max, self.lam_points)


def _parse_complex_list(text):
    return tuple(complex(part.strip().replace(" ", "")) for part in text.split(",") if part.strip())


def _parse_seeds(text):
    seeds = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            seeds.extend(range(int(lo), int(hi) + 1))
        else:
            seeds.append(int(part))
    return tuple(seeds)


_PARSERS = {
    "experiment": str, "a": float, "b": float, "t": _parse_complex_list,
    "lam_min": float, "lam_max": float, "lam_points": int, "lam_scale": str,
    "n": int, "steps": int, "n_min": int, "n_max": int, "samples": int,
    "seeds": _parse_seeds, "tol": float, "out": str,
}


def _check_ranges(cfg, lines=None):
    lines = lines or {}

    def fail(name, msg):
        raise ConfigError(msg, field=name, line=lines.get(name))

    if cfg.experiment not in EXPERIMENTS:
        fail("experiment", f"unknown experiment {cfg.experiment!r}; expected one of {', '.join(EXPERIMENTS)}")
    for name in ("a", "b"):
        v = getattr(cfg, name)
        if not (np.isfinite(v) and v > 0):
            fail(name, f"must be a positive number, got {v}")
    if not cfg.t:
        fail("t", "need at least one value")
    if not (0 < cfg.lam_min < cfg.lam_max and np.isfinite(cfg.lam_max)):
        fail("lam_min", "need 0 < lam_min < lam_max")
    if cfg.lam_points < 2:
        fail("lam_points", "need at least 2 grid points")
    if cfg.lam_scale not in ("linear", "log"):
        fail("lam_scale", "must be 'linear' or 'log'")
    if not 1 <= cfg.n <= 100_000:
        fail("n", "must be in [1, 100000]")
    if cfg.steps < 100:
        fail("steps", "must be >= 100")
    if not 1 <= cfg.n_min < cfg.n_max:
        fail("n_min", "need 1 <= n_min < n_max")
    if cfg.samples < 100:
        fail("samples", "must be >= 100")
    if not cfg.seeds:
        fail("seeds", "seed list must not be empty")
    if any(s < 0 for s in cfg.seeds):
        fail("seeds", "seeds must be non-negative")
    if not 0 < cfg.tol <= 1e-6:
        fail("tol", "must lie in (0, 1e-6]")
    return cfg


def parse_config(text) -> ExperimentConfig:
    """Parse ``key = value`` text; unknown keys and bad values raise
    :class:`ConfigError` carrying the line number and field."""
    values, lines = {}, {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError("expected 'key = value'", line=number)
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _PARSERS:
            raise ConfigError("unknown key", field=key, line=number)
        if key in values:
            raise ConfigError("duplicate key", field=key, line=number)
        try:
            values[key] = _PARSERS[key](value)
        except ValueError as exc:
            raise ConfigError(f"cannot parse {value!r}: {exc}", field=key, line=number) from None
        lines[key] = number
    return _check_ranges(ExperimentConfig(**values), lines)


def _fmt_value(v):
    if isinstance(v, tuple):
        return ", ".join(_fmt_value(x) for x in v)
    if isinstance(v, complex):
        return repr(v).strip("()")
    return repr(v) if isinstance(v, float) else str(v)


def emit_config(cfg: ExperimentConfig) -> str:
    """Canonical text for ``cfg``: every key, defaults included."""
    return "".join(f"{f.name} = {_fmt_value(getattr(cfg, f.name))}\n" for f in fields(cfg))


# --- results and checks -------------------------------------------------------

class Check(NamedTuple):
    name: str
    passed: bool
    observed: float
    expected: float
    tolerance: float
    note: str = ""


@dataclass
class Table:
    header: List[str]
    rows: list = field(default_factory=list)


def _num(x):
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def write_csv(path, table: Table):
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(table.header) + "\n")
        for row in table.rows:
            fh.write(",".join(_num(x) for x in row) + "\n")


# --- experiments --------------------------------------------------------------
# each per-seed task returns (Table, stats dict); finalisers build the summary

def _task_dos(cfg, seed):
    s = make_stream(cfg.params, seed).take(2 * cfg.n)
    nodes = jacobi.eigenvalues(jacobi.build_jacobi(s), cfg.tol)
    grid = cfg.lam_grid()
    emp = jacobi.counting_measure(nodes, grid)
    closed = theory.integrated_dos(cfg.params, grid)
    diff = np.abs(emp - closed)
    table = Table(["lambda[1|input]", "N_n[1|empirical]", "N[1|closed-form]", "abs_diff[1|derived]"],
                  list(zip(grid, emp, closed, diff)))
    return table, {"sup_diff": float(diff.max()), "n_nodes": len(nodes)}


def _final_dos(cfg, results):
    grid = cfg.lam_grid()
    emp = np.median(np.array([[r[1] for r in t.rows] for t, _ in results]), axis=0)
    closed = np.array([r[2] for r in results[0][0].rows])
    summary = Table(["lambda[1|input]", "N_n_median[1|empirical]", "N_closed[1|closed-form]",
                     "abs_diff[1|derived]"], list(zip(grid, emp, closed, np.abs(emp - closed))))
    med = float(np.median([st["sup_diff"] for _, st in results]))
    return summary, [Check("median_sup_N_distance", med <= 0.06, med, 0.0, 0.06,
                           "median over seeds of sup |N_n - N|")]


def _idos(cfg):
    grid = cfg.lam_grid()
    p = cfg.params
    route_im, route_phase = theory.integrated_dos_routes(p, grid)
    rho = theory.dos_density(p, grid)
    table = Table(["lambda[1|input]", "N_im_lambda[1|closed-form]", "N_phase[1|closed-form]",
                   "route_gap[1|derived]", "rho[1/lambda|closed-form]"],
                  list(zip(grid, route_im, route_phase, np.abs(route_im - route_phase), rho)))
    from .quadrature import QuadratureSpec, integrate
    lo, hi = cfg.lam_min, cfg.lam_max
    area = integrate(lambda x: theory.dos_density(p, x), (lo, hi), QuadratureSpec(1e-9, 9)).value
    n_lo, n_hi = theory.integrated_dos(p, np.array([lo, hi]))
    gap = float(np.max(np.abs(route_im - route_phase)))
    ftc = abs(area - (n_hi - n_lo))
    checks = [
        Check("N_two_route_agreement", gap <= 1e-6, gap, 0.0, 1e-6),
        Check("integral_rho_equals_delta_N", ftc <= 1e-6, ftc, 0.0, 1e-6),
        Check("rho_positive", bool(np.all(rho > 0)), float(rho.min()), 0.0, 0.0, "min rho on grid"),
        Check("N_monotone", bool(np.all(np.diff(route_im) >= -1e-12)),
              float(np.min(np.diff(route_im))), 0.0, 0.0, "min increment"),
    ]
    return table, {"integral_rho": float(area), "delta_N": float(n_hi - n_lo)}, checks


def _task_lyapunov(cfg, seed):
    rows, st = [], {}
    for i, t in enumerate(cfg.t):
        est = cfrac.log_growth(make_stream(cfg.params, seed, stream_index=i), t, cfg.steps)
        lam = theory.lyapunov_gamma(cfg.params, t).value
        rows.append((t.real, t.imag, est.value.real, est.value.imag, est.stderr.real,
                     est.stderr.imag, lam.real, lam.imag))
        st[f"t{i}.re_z"] = abs(est.value.real - lam.real) / est.stderr.real
        st[f"t{i}.im_z"] = abs(est.value.imag - lam.imag) / est.stderr.imag if est.stderr.imag else 0.0
    header = ["t_re[1|input]", "t_im[1|input]", "Lambda_re[1/step|empirical]",
              "Lambda_im[rad/step|empirical]", "se_re[1/step|empirical]", "se_im[rad/step|empirical]",
              "Lambda_re[1/step|closed-form]", "Lambda_im[rad/step|closed-form]"]
    return Table(header, rows), st


def _pooled(cfg, results, cols_val, cols_se):
    """Mean over seeds for each t with its standard error."""
    out = []
    k = len(results)
    for i in range(len(cfg.t)):
        vals = np.array([[t.rows[i][c] for c in cols_val] for t, _ in results])
        ses = np.array([[t.rows[i][c] for c in cols_se] for t, _ in results])
        out.append((vals.mean(axis=0), np.sqrt((ses ** 2).sum(axis=0)) / k))
    return out


def _final_lyapunov(cfg, results):
    pooled = _pooled(cfg, results, (2, 3), (4, 5))
    rows, checks = [], []
    for i, (t, (mean, se)) in enumerate(zip(cfg.t, pooled)):
        lam = results[0][0].rows[i][6:8]
        rows.append((t.real, t.imag, mean[0], mean[1], se[0], se[1], lam[0], lam[1]))
        for part, j in (("re", 0), ("im", 1)):
            dev = abs(mean[j] - lam[j])
            tol = 3 * se[j] if se[j] > 0 else 1e-9
            checks.append(Check(f"lyapunov_t{i}_{part}_within_3se", dev <= tol, mean[j], lam[j], tol,
                                f"t = {_fmt_value(t)}, pooled over {len(results)} seed(s)"))
    header = ["t_re[1|input]", "t_im[1|input]", "Lambda_re_mean[1/step|empirical]",
              "Lambda_im_mean[rad/step|empirical]", "se_re[1/step|empirical]", "se_im[rad/step|empirical]",
              "Lambda_re[1/step|closed-form]", "Lambda_im[rad/step|closed-form]"]
    return Table(header, rows), checks


def _task_pade(cfg, seed):
    t = cfg.t[0]
    src = make_stream(cfg.params, seed)
    fit = cfrac.pade_error_rate(src, t, cfg.n_min, cfg.n_max)
    logs = cfrac.successive_difference_logs(src, t, cfg.n_max + 1)
    rate = theory.pade_rate(cfg.params, t)
    k = np.arange(fit.n_lo, cfg.n_max + 1)
    table = Table(["n[1|input]", "log_abs_diff[1|empirical]", "fit_line[1|empirical]",
                   "rate_line[1|closed-form]"],
                  list(zip(k, logs[k], fit.intercept + fit.slope * k, fit.intercept + rate * k)))
    return table, {"slope": fit.slope, "slope_se": fit.stderr, "rate": rate, "n_lo": fit.n_lo}


def _final_pade(cfg, results):
    rate = results[0][1]["rate"]
    slopes = np.array([st["slope"] for _, st in results])
    rows = [(seed, st["slope"], st["slope_se"], rate) for seed, (_, st) in zip(cfg.seeds, results)]
    mean = float(slopes.mean())
    rel = abs(mean - rate) / abs(rate)
    table = Table(["seed[1|input]", "slope[1/step|empirical]", "slope_se[1/step|empirical]",
                   "rate[1/step|closed-form]"], rows)
    return table, [Check("pade_slope_within_1pct", rel <= 0.01, mean, rate, 0.01,
                         f"relative error of the mean slope over {len(slopes)} seed(s)")]


def _task_measure(cfg, seed):
    s = make_stream(cfg.params, seed).take(2 * cfg.n)
    J = jacobi.build_jacobi(s)
    m = jacobi.quadrature_measure(J, cfg.tol)
    grid = cfg.lam_grid()
    cdf = m.cdf(grid)
    base = theory.sigma_inf_cdf(grid)
    st = {"mass_err": abs(m.mass - J.mass), "min_weight": float(m.weights.min())}
    if cfg.n <= 64:
        st["weight_route_gap"] = float(np.max(np.abs(m.weights - jacobi.eigenvector_weights(J, m.nodes))))
    table = Table(["lambda[1|input]", "sigma_n_cdf[1|empirical]", "sigma_inf_cdf[1|closed-form]"],
                  list(zip(grid, cdf, base)))
    return table, st


def _final_measure(cfg, results):
    grid = cfg.lam_grid()
    cdfs = np.array([[r[1] for r in t.rows] for t, _ in results])
    base = theory.sigma_inf_cdf(grid)
    table = Table(["lambda[1|input]", "sigma_n_cdf_median[1|empirical]", "sigma_inf_cdf[1|closed-form]"],
                  list(zip(grid, np.median(cdfs, axis=0), base)))
    mass = max(st["mass_err"] for _, st in results)
    wmin = min(st["min_weight"] for _, st in results)
    checks = [Check("total_mass_equals_1_over_s1", mass <= 1e-10, mass, 0.0, 1e-10),
              Check("weights_positive", wmin > 0, wmin, 0.0, 0.0, "smallest weight")]
    if cfg.n <= 64:
        gap = max(st["weight_route_gap"] for _, st in results)
        checks.append(Check("christoffel_vs_eigenvector_weights", gap <= 1e-9, gap, 0.0, 1e-9))
    return table, checks


def _task_invariant(cfg, seed):
    t = cfg.t[0]
    ip = theory.InvariantDensityParams.from_gamma(cfg.params, t)
    z = cfrac.forward_iterates(cfg.params, t, cfg.samples, seed=seed)
    cdf = theory.radial_cdf(ip)
    r = np.abs(z)
    ks = stats.kstest(r, cdf)
    q = np.linspace(0.01, 0.99, 99)
    pts = np.quantile(r, q)
    table = Table(["r[1|input]", "cdf_abs_Z[1|empirical]", "cdf_abs_Z[1|closed-form]"],
                  list(zip(pts, q, cdf(pts))))
    return table, {"ks": float(ks.statistic), "ks_pvalue": float(ks.pvalue),
                   "mean_neg_log": float(-np.mean(np.log(r))), "mean_neg_arg": float(-np.mean(np.angle(z)))}


def _final_invariant(cfg, results):
    t = cfg.t[0]
    ip = theory.InvariantDensityParams.from_gamma(cfg.params, t)
    mass, neg_log, neg_arg = theory.invariant_moments(ip)
    lam = theory.lyapunov_gamma(cfg.params, t).value
    crit = 1.63 / np.sqrt(cfg.samples)
    rows = [(seed, st["ks"], crit, st["mean_neg_log"], neg_log, st["mean_neg_arg"], neg_arg)
            for seed, (_, st) in zip(cfg.seeds, results)]
    table = Table(["seed[1|input]", "ks_distance[1|empirical]", "ks_critical_1pct[1|derived]",
                   "mean_neg_log_abs_Z[1|empirical]", "mean_neg_log_abs_Z[1|closed-form]",
                   "mean_neg_arg_Z[rad|empirical]", "mean_neg_arg_Z[rad|closed-form]"], rows)
    worst = max(st["ks"] for _, st in results)
    checks = [
        Check("density_normalisation", abs(mass - 1) <= 1e-6, mass, 1.0, 1e-6),
        Check("neg_log_moment_equals_re_lambda", abs(neg_log - lam.real) <= 1e-5, neg_log, lam.real, 1e-5),
        Check("neg_arg_moment_equals_im_lambda", abs(neg_arg - lam.imag) <= 1e-5, neg_arg, lam.imag, 1e-5),
        Check("ks_abs_Z_1pct", worst <= crit, worst, 0.0, crit, "largest KS distance over seeds"),
    ]
    return table, checks


def _baseline(cfg):
    J = jacobi.build_jacobi(np.ones(2 * cfg.n))
    nodes = jacobi.eigenvalues(J, cfg.tol)
    j = np.arange(cfg.n, 0, -1)
    closed = 4 * np.cos(j * np.pi / (2 * cfg.n + 1)) ** 2
    rel = np.abs(nodes - closed) / closed
    table = Table(["index[1|input]", "lambda[1|empirical]", "lambda[1|closed-form]", "rel_err[1|derived]"],
                  list(zip(np.arange(1, cfg.n + 1), nodes, closed, rel)))
    checks = [Check("baseline_eigenvalues", rel.max() <= 1e-10, float(rel.max()), 0.0, 1e-10)]
    for i, t in enumerate(cfg.t):
        est = cfrac.log_growth(make_stream(Constant(1.0)), t, min(cfg.steps, 100_000)).value
        ref = theory.lyapunov_inf(t)
        checks.append(Check(f"baseline_lyapunov_t{i}", abs(est - ref) <= 1e-3, est.real, ref.real, 1e-3,
                            f"t = {_fmt_value(t)}; finite-n bias O(1/n)"))
    return table, {"max_rel_err": float(rel.max())}, checks


_SEEDED = {
    "dos": (_task_dos, _final_dos),
    "lyapunov": (_task_lyapunov, _final_lyapunov),
    "pade-error": (_task_pade, _final_pade),
    "measure": (_task_measure, _final_measure),
    "invariant": (_task_invariant, _final_invariant),
}
_SINGLE = {"idos": _idos, "baseline": _baseline}


def _run_task(args):
    experiment, cfg, seed = args
    t0 = time.perf_counter()
    table, st = _SEEDED[experiment][0](cfg, seed)
    return table, st, time.perf_counter() - t0


# --- run / summarize ----------------------------------------------------------

def run(cfg: ExperimentConfig, workers=1):
    """Execute ``cfg`` and write its artefacts; returns the list of checks."""
    if cfg.experiment == "invariant" and all(t.imag == 0 for t in cfg.t[:1]):
        raise ConfigError("invariant experiment needs a non-real t", field="t")
    os.makedirs(cfg.out, exist_ok=True)
    t_start = time.perf_counter()
    manifest = [f"artifact_version = {__version__}"]
    manifest += [f"config.{line}" for line in emit_config(cfg).splitlines()]
    if cfg.experiment in _SINGLE:
        table, st, checks = _SINGLE[cfg.experiment](cfg)
        write_csv(os.path.join(cfg.out, "data.csv"), table)
        write_csv(os.path.join(cfg.out, "summary.csv"), table)
        manifest += [f"stat.{k} = {_num(v)}" for k, v in st.items()]
    else:
        jobs = [(cfg.experiment, cfg, s) for s in cfg.seeds]
        if workers > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                out = list(pool.map(_run_task, jobs))      # results come back in job order
        else:
            out = [_run_task(j) for j in jobs]
        results = [(table, st) for table, st, _ in out]
        for seed, (table, st, dt) in zip(cfg.seeds, out):
            write_csv(os.path.join(cfg.out, f"seed-{seed}.csv"), table)
            manifest += [f"seed.{seed}.{k} = {_num(v)}" for k, v in st.items()]
            manifest.append(f"timing.seed.{seed} = {dt:.3f}")
        summary, checks = _SEEDED[cfg.experiment][1](cfg, results)
        write_csv(os.path.join(cfg.out, "summary.csv"), summary)
    manifest.append(f"timing.total = {time.perf_counter() - t_start:.3f}")
    for c in checks:
        manifest.append(f"check.{c.name} = {'PASS' if c.passed else 'FAIL'} observed={_num(c.observed)} "
                        f"expected={_num(c.expected)} tol={_num(c.tolerance)}"
                        + (f" note={c.note}" if c.note else ""))
    with open(os.path.join(cfg.out, "manifest.txt"), "w") as fh:
        fh.write("\n".join(manifest) + "\n")
    return checks


def read_checks(directory):
    """Check entries from ``directory/manifest.txt``."""
    path = os.path.join(directory, "manifest.txt")
    if not os.path.isfile(path):
        raise ConfigError(f"no manifest.txt in {directory!r}")
    checks = []
    with open(path) as fh:
        for number, line in enumerate(fh, start=1):
            if not line.startswith("check."):
                continue
            try:
                key, rest = line.rstrip("\n").split(" = ", 1)
                status, *parts = rest.split(" ", 4)
                kv = dict(p.split("=", 1) for p in parts[:3])
                note = parts[3][len("note="):] if len(parts) > 3 else ""
                checks.append(Check(key[len("check."):], status == "PASS", float(kv["observed"]),
                                    float(kv["expected"]), float(kv["tol"]), note))
            except (ValueError, KeyError):
                raise ConfigError("corrupt check entry", line=number) from None
    if not checks:
        raise ConfigError(f"manifest in {directory!r} has no check entries")
    return checks


def summarize(directory, stream=None):
    """Print a PASS/FAIL table for a run directory and write ``checks.json``."""
    stream = stream or sys.stdout
    checks = read_checks(directory)
    width = max(len(c.name) for c in checks)
    for c in checks:
        stream.write(f"{'PASS' if c.passed else 'FAIL'}  {c.name:<{width}}  observed={c.observed:.6g}  "
                     f"expected={c.expected:.6g}  tol={c.tolerance:.3g}\n")
    with open(os.path.join(directory, "checks.json"), "w") as fh:
        json.dump([c._asdict() for c in checks], fh, indent=2)
    return checks


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser():
    p = _Parser(prog="stieltjes-lab", description="Random Stieltjes continued fraction experiments.")
    p.add_argument("experiment", choices=EXPERIMENTS + ("summarize",))
    p.add_argument("directory", nargs="?", help="run directory (summarize only)")
    p.add_argument("--config", help="key = value configuration file")
    p.add_argument("--seed", type=int, action="append", help="override the seed list (repeatable)")
    p.add_argument("--out", help="output directory")
    p.add_argument("--workers", type=int, default=1)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.experiment == "summarize":
            if not args.directory:
                parser.error("summarize needs a run directory")
            checks = summarize(args.directory)
        else:
            text = ""
            if args.config:
                try:
                    with open(args.config) as fh:
                        text = fh.read()
                except OSError as exc:
                    raise ConfigError(f"cannot read config: {exc}") from None
            cfg = parse_config(text)
            given = {ln.split("#")[0].split("=")[0].strip() for ln in text.splitlines()}
            if "experiment" in given and cfg.experiment != args.experiment:
                raise ConfigError(f"config is for {cfg.experiment!r}", field="experiment")
            overrides = {"experiment": args.experiment}
            if args.seed:
                overrides["seeds"] = tuple(args.seed)
            if args.out:
                overrides["out"] = args.out
            cfg = _check_ranges(replace(cfg, **overrides))
            if args.workers < 1:
                raise ConfigError("must be >= 1", field="workers")
            checks = run(cfg, args.workers)
            for c in checks:
                print(f"{'PASS' if c.passed else 'FAIL'}  {c.name}  observed={c.observed:.6g}  tol={c.tolerance:.3g}")
    except ConfigError as exc:
        print(f"stieltjes-lab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except StieltjesError as exc:
        print(f"stieltjes-lab: numerical failure: {exc}", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK if all(c.passed for c in checks) else EXIT_CHECK


if __name__ == "__main__":
    sys.exit(main())
