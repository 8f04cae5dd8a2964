"""Configuration-driven numerical experiments.

Each ``run_*`` function takes an :class:`ExperimentConfig`, writes CSV files
under ``<output_dir>/<experiment>/<param-hash>/`` and returns its results.
Every file starts with a ``#`` block holding the resolved configuration.

Mesh convention: the interval (-1, 1) has length 2, so a node spacing of
``dx`` means ``N = 2 / dx`` elements. A grid step of 1/100 is N = 200.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import yaml
from scipy import special

from .fem import assemble, l2_error, load_vector, make_mesh, stationary_profile
from .inverse import (CgmConfig, ForwardContext, NoiseSpec, add_noise, choose_gamma,
                      run_cgm, write_reconstruction_csv)
from .spectral import compute_eigenbasis, illposedness_demo, semidiscrete_solution, write_illposedness_csv
from .time_stepper import TimeGrid, solve_forward

__all__ = [
    "EXPERIMENTS",
    "ExperimentConfig",
    "TargetFunction",
    "parse_config",
    "fit_rate",
    "output_dir_for",
    "manufactured_problem",
    "run_convergence_table",
    "run_reconstruction",
    "run_regularization_comparison",
    "run_illposedness",
    "run_experiment",
]

log = logging.getLogger(__name__)

EXPERIMENTS = ("convergence_table", "example_5_1", "example_5_2", "example_5_3",
               "example_5_4", "illposedness")

LIGHT_NOISE = (0.001, 0.005, 0.01)
HEAVY_NOISE = (0.05, 0.1, 0.15)
MOROZOV_NOISE = (0.005, 0.01, 0.05, 0.1)
STEPS = (1 / 50, 1 / 100, 1 / 200, 1 / 400)


@dataclass
class ExperimentConfig:
    experiment: str = "example_5_1"
    alpha: float = 0.5
    s: float = 0.5
    N: int = 200
    K: int = 100
    T: float = 1.0
    mu_list: list = field(default_factory=list)
    seed: int = 0
    gamma_policy: str | float = "paper"
    output_dir: str = "results"
    sigma: float = 1.01
    eta: float = 1e-3
    g0: float = 1.0
    max_iter: int = 100
    theta: float | None = None
    gradient_route: str = "self_adjoint"

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.experiment!r}; "
                             f"choose from {', '.join(EXPERIMENTS)}")
        for name in ("alpha", "s"):
            v = getattr(self, name)
            if not 0.0 < float(v) < 1.0:
                raise ValueError(f"{name}={v} outside (0, 1)")
        for name in ("N", "K", "max_iter"):
            v = getattr(self, name)
            if int(v) != v or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v}")
        if self.N < 4:
            raise ValueError(f"N must be >= 4, got {self.N}")
        if not self.T > 0:
            raise ValueError(f"T must be positive, got {self.T}")
        if not self.sigma > 1:
            raise ValueError(f"sigma must exceed 1, got {self.sigma}")
        self.mu_list = [float(m) for m in self.mu_list]
        if any(m < 0 for m in self.mu_list):
            raise ValueError(f"noise levels must be >= 0, got {self.mu_list}")
        self.gamma_policy = _parse_gamma(self.gamma_policy)

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)

    def param_hash(self) -> str:
        d = self.as_dict()
        d.pop("output_dir")
        blob = json.dumps(d, sort_keys=True).encode()
        return hashlib.sha1(blob).hexdigest()[:12]

    def gamma_for(self, theta: float) -> float:
        return _gamma(self.gamma_policy, theta)


def _gamma(policy, theta: float) -> float:
    if policy == "zero":
        return 0.0
    if policy == "paper":
        return choose_gamma(theta)
    return float(policy)


def _parse_gamma(value):
    if isinstance(value, str):
        v = value.strip().lower()
        if v in ("zero", "paper"):
            return v
        if v in ("paper_formula", "formula", "apriori"):
            return "paper"
        try:
            value = float(v)
        except ValueError:
            raise ValueError(f"gamma policy must be zero, paper (a priori rule) or a number, got {value!r}") from None
    value = float(value)
    if value < 0:
        raise ValueError(f"gamma must be >= 0, got {value}")
    return value


_FIELDS = {f.name for f in dataclasses.fields(ExperimentConfig)}


def parse_config(path=None, **flags) -> ExperimentConfig:
    """Read a flat YAML file (keys as in :class:`ExperimentConfig`) and apply
    ``flags`` on top. ``None`` flag values are ignored."""
    values: dict = {}
    if path is not None:
        text = Path(path).read_text()
        loaded = yaml.safe_load(text) or {}
        if not isinstance(loaded, dict):
            raise ValueError(f"{path}: expected key-value pairs at top level")
        values.update(loaded)
    values.update({k: v for k, v in flags.items() if v is not None})
    unknown = sorted(set(values) - _FIELDS)
    if unknown:
        raise ValueError(f"unknown configuration keys: {', '.join(unknown)}")
    return ExperimentConfig(**values)


def dump_config(config: ExperimentConfig) -> str:
    return yaml.safe_dump(config.as_dict(), sort_keys=True)


class TargetFunction:
    """Initial values used as ground truth."""

    KINDS = ("trig", "smooth", "nonsmooth", "manufactured", "custom")

    def __init__(self, kind: str, s: float = 0.5, samples=None):
        if kind not in self.KINDS:
            raise ValueError(f"unknown target {kind!r}")
        if kind == "custom":
            if samples is None:
                raise ValueError("custom target needs (x, values) samples")
            xs, ys = (np.asarray(a, dtype=float) for a in samples)
            if xs.ndim != 1 or xs.shape != ys.shape or np.any(np.diff(xs) <= 0):
                raise ValueError("custom samples need increasing x and matching values")
            self._xs, self._ys = xs, ys
        self.kind = kind
        self.s = s

    @classmethod
    def from_csv(cls, path):
        lines = [ln for ln in Path(path).read_text().splitlines()
                 if ln.strip() and not ln.startswith("#")]
        data = np.loadtxt(lines[1:], delimiter=",", ndmin=2)
        return cls("custom", samples=(data[:, 0], data[:, 1]))

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if self.kind == "trig":
            return np.cos(np.pi * x) * np.sin(np.pi * x)
        if self.kind == "smooth":
            return np.sin(np.pi * x) * np.exp(-x**2) - np.cos(np.pi * x) * np.exp(x**2)
        if self.kind == "nonsmooth":
            ax = np.abs(x)
            return np.where(ax <= 0.25, 2.0, np.where(ax <= 0.75, 1.0, 0.5))
        if self.kind == "manufactured":
            return stationary_profile(x, self.s)
        return np.interp(x, self._xs, self._ys)


def fit_rate(steps, errors) -> float:
    """Least-squares slope of ``log(error)`` against ``log(step)``."""
    steps = np.asarray(steps, dtype=float)
    errors = np.asarray(errors, dtype=float)
    if steps.size < 2 or np.any(errors <= 0):
        raise ValueError("need at least two positive errors")
    return float(np.polyfit(np.log(steps), np.log(errors), 1)[0])


def pairwise_rates(steps, errors) -> np.ndarray:
    steps = np.asarray(steps, dtype=float)
    errors = np.asarray(errors, dtype=float)
    return np.log(errors[:-1] / errors[1:]) / np.log(steps[:-1] / steps[1:])


def output_dir_for(config: ExperimentConfig) -> Path:
    out = Path(config.output_dir) / config.experiment / config.param_hash()
    out.mkdir(parents=True, exist_ok=True)
    return out


def _header(config: ExperimentConfig, extra: dict | None = None) -> dict:
    h = {k: json.dumps(v) for k, v in sorted(config.as_dict().items())}
    h["mesh_convention"] = '"N elements on (-1,1), spacing 2/N"'
    for k, v in (extra or {}).items():
        h[k] = v
    return h


def _write_table(path, header: dict, columns: list, rows: list) -> None:
    with open(path, "w") as fh:
        for k, v in header.items():
            fh.write(f"# {k}: {v}\n")
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(row.get(c, "")) for c in columns) + "\n")


def _fmt(v):
    if isinstance(v, (float, np.floating)):
        return f"{v:.10e}"
    return str(v)


# convergence table


@dataclass
class ManufacturedProblem:
    """Source ``1 + t^a + Gamma(1+a) w`` with exact solution ``(1 + t^a) w``,
    where ``(-Delta)^s w = 1``."""

    alpha: float
    s: float
    N: int

    def __post_init__(self):
        self.mesh = make_mesh(self.N)
        self.matrices = assemble(self.mesh, self.s)
        w = lambda x: stationary_profile(x, self.s)
        self.w = w
        self.one_load = load_vector(self.mesh, np.ones_like)
        self.w_load = load_vector(self.mesh, w)
        self.g = w(self.mesh.interior)
        self._ga = special.gamma(1 + self.alpha)

    def source(self, t):
        return (1 + t**self.alpha) * self.one_load + self._ga * self.w_load

    def exact(self, x, t):
        return (1 + t**self.alpha) * self.w(x)

    def fully_discrete(self, K: int, T: float = 1.0) -> np.ndarray:
        return solve_forward(self.g, self.matrices, TimeGrid(K, T, self.alpha), self.source).final

    def semidiscrete(self, T: float = 1.0, basis=None) -> np.ndarray:
        """Exact time integration of the FEM system, by eigen-expansion."""
        basis = basis or compute_eigenbasis(self.matrices)
        return semidiscrete_solution(basis, self.alpha, T, self.g,
                                     const_load=self.one_load + self._ga * self.w_load,
                                     power_load=self.one_load)


def manufactured_problem(alpha: float, s: float, N: int) -> ManufacturedProblem:
    return ManufacturedProblem(alpha, s, N)


def _temporal_row(alpha, s, fixed_dx, T=1.0):
    N = int(round(2 / fixed_dx))
    prob = ManufacturedProblem(alpha, s, N)
    ref = prob.semidiscrete(T)
    errs = []
    for dt in STEPS:
        U = prob.fully_discrete(int(round(T / dt)), T)
        errs.append(prob.matrices.norm(U - ref))
    return {"errors": errs, "theory": 2 - alpha}


def _spatial_row(alpha, s, fixed_dt, T=1.0):
    K = int(round(T / fixed_dt))
    errs, cont, total = [], [], []
    for dx in STEPS:
        prob = ManufacturedProblem(alpha, s, int(round(2 / dx)))
        x = prob.mesh.interior
        exact = lambda y: prob.exact(y, T)
        Y = prob.semidiscrete(T)
        errs.append(prob.matrices.norm(Y - exact(x)))
        cont.append(l2_error(prob.mesh, Y, exact))
        U = prob.fully_discrete(K, T)
        total.append(prob.matrices.norm(U - exact(x)))
    return {"errors": errs, "continuous": cont, "total_fixed_dt": total,
            "theory": min(1.0, s + 0.5)}


def run_convergence_table(config: ExperimentConfig) -> list[dict]:
    """Temporal (s = 0.5) and spatial (alpha = 0.5) error sweeps.

    Temporal error: fully discrete minus the exactly time-integrated FEM
    solution on a fixed mesh of spacing 1/200. Spatial error: exactly
    time-integrated FEM solution minus the nodal interpolant of the exact
    solution, both at ``T``. Auxiliary columns give the continuous L2 error
    and the total error with the time step fixed at 1/200.
    """
    sweeps = [("temporal", 0.3, 0.5), ("temporal", 0.8, 0.5),
              ("spatial", 0.5, 0.2), ("spatial", 0.5, 0.9)]
    rows = []
    for kind, a, s in sweeps:
        row = {"sweep": kind, "alpha": a, "s": s}
        try:
            res = (_temporal_row(a, s, 1 / 200, config.T) if kind == "temporal"
                   else _spatial_row(a, s, 1 / 200, config.T))
        except Exception as exc:  # keep the other rows
            log.error("row %s alpha=%s s=%s failed: %s", kind, a, s, exc)
            row["status"] = f"failed: {exc}"
            rows.append(row)
            continue
        row["status"] = "ok"
        row["theory_rate"] = res["theory"]
        row["rate"] = fit_rate(STEPS, res["errors"])
        for step, e in zip((50, 100, 200, 400), res["errors"]):
            row[f"e_1/{step}"] = e
        for i, r in enumerate(pairwise_rates(STEPS, res["errors"])):
            row[f"log2_{i + 1}"] = r
        if kind == "spatial":
            row["rate_continuous"] = fit_rate(STEPS, res["continuous"])
            row["rate_total_fixed_dt"] = fit_rate(STEPS, res["total_fixed_dt"])
            for step, e in zip((50, 100, 200, 400), res["continuous"]):
                row[f"cont_1/{step}"] = e
            for step, e in zip((50, 100, 200, 400), res["total_fixed_dt"]):
                row[f"total_1/{step}"] = e
        rows.append(row)

    cols = (["sweep", "alpha", "s"] + [f"e_1/{k}" for k in (50, 100, 200, 400)]
            + ["rate", "theory_rate", "log2_1", "log2_2", "log2_3"]
            + [f"cont_1/{k}" for k in (50, 100, 200, 400)] + ["rate_continuous"]
            + [f"total_1/{k}" for k in (50, 100, 200, 400)] + ["rate_total_fixed_dt", "status"])
    out = output_dir_for(config)
    _write_table(out / "convergence_table.csv", _header(config), cols, rows)
    return rows


# reconstructions


def _pipeline_context(config: ExperimentConfig, alpha: float, s: float):
    mesh = make_mesh(config.N)
    matrices = assemble(mesh, s)
    grid = TimeGrid(config.K, config.T, alpha)
    return mesh, ForwardContext(matrices, grid, config.eta)


def _cgm_config(config: ExperimentConfig, gamma: float, discrepancy: bool) -> CgmConfig:
    return CgmConfig(gamma=gamma, sigma=config.sigma, max_iter=config.max_iter,
                     g0=config.g0, eta=config.eta, gradient_route=config.gradient_route,
                     use_discrepancy=discrepancy)


def _reconstruct(config, target, alpha, s, mu_list, gamma_policy=None, discrepancy=True,
                 tag=""):
    """Noise -> theta -> gamma -> CGM for each noise level; writes files."""
    mesh, ctx = _pipeline_context(config, alpha, s)
    x = mesh.interior
    truth = target(x)
    h = ctx.apply(truth)
    out = output_dir_for(config)
    results = []
    profiles = {"exact": truth}
    for mu in mu_list:
        rec = {"alpha": alpha, "s": s, "mu": mu}
        try:
            noisy, theta = add_noise(h, NoiseSpec(mu, config.seed, config.theta), ctx.norm)
            pol = config.gamma_policy if gamma_policy is None else gamma_policy
            gamma = _gamma(pol, theta)
            g, trace = run_cgm(noisy, theta, _cgm_config(config, gamma, discrepancy),
                               ctx, truth)
        except Exception as exc:
            log.error("mu=%s failed: %s", mu, exc)
            rec["status"] = f"failed: {exc}"
            results.append(rec)
            continue
        name = f"{tag}a{alpha}_s{s}_mu{mu}"
        extra = {"alpha_run": alpha, "s_run": s, "mu_run": mu, "theta": theta, "gamma": gamma}
        trace.to_csv(out / f"trace_{name}.csv", _header(config, extra))
        profiles[f"mu={mu}"] = g
        rec.update(status="ok", theta=theta, gamma=gamma, stopping_index=trace.stopping_index,
                   stop_reason=trace.stop_reason, final_error=trace.records[-1].error,
                   final_residual=trace.records[-1].residual, trace=trace, g=g)
        results.append(rec)
    write_reconstruction_csv(out / f"reconstruction_{tag}a{alpha}_s{s}.csv", x, profiles,
                             _header(config, {"target": target.kind}))
    return mesh, results


def _summary(config, rows, name="summary.csv"):
    cols = ["alpha", "s", "mu", "gamma_policy", "theta", "gamma", "stopping_index",
            "stop_reason", "final_error", "final_residual", "status"]
    _write_table(output_dir_for(config) / name, _header(config), cols, rows)


def run_reconstruction(config: ExperimentConfig, target: TargetFunction | None = None):
    """Examples 5.1 (noise free, four order pairs), 5.3 and 5.4 (Morozov)."""
    exp = config.experiment
    rows = []
    if exp == "example_5_1":
        target = target or TargetFunction("trig")
        mus = config.mu_list or [0.0]
        for a in (0.3, 0.8):
            for s in (0.2, 0.9):
                _, res = _reconstruct(config, target, a, s, mus, "zero", discrepancy=False)
                rows += res
    elif exp in ("example_5_3", "example_5_4"):
        target = target or TargetFunction("smooth" if exp == "example_5_3" else "nonsmooth")
        mus = config.mu_list or list(MOROZOV_NOISE)
        mesh, res = _reconstruct(config, target, config.alpha, config.s, mus)
        rows += res
        if target.kind == "nonsmooth":
            for r in res:
                if r["status"] == "ok":
                    r.update(_jump_errors(mesh, r["g"], target))
    else:
        target = target or TargetFunction("trig")
        _, rows = _reconstruct(config, target, config.alpha, config.s,
                               config.mu_list or [0.0])
    for r in rows:
        r.setdefault("gamma_policy", config.gamma_policy if exp != "example_5_1" else "zero")
    _summary(config, rows)
    return rows


def _jump_errors(mesh, g, target, width=0.1):
    """RMS error within ``width``-windows around the jumps vs the global RMS."""
    x = mesh.interior
    err = (g - target(x)) ** 2
    near = np.zeros(x.shape, dtype=bool)
    for c in (-0.75, -0.25, 0.25, 0.75):
        near |= np.abs(x - c) <= width / 2
    return {"rms_near_jumps": float(np.sqrt(err[near].mean())),
            "rms_global": float(np.sqrt(err.mean()))}


def run_regularization_comparison(config: ExperimentConfig) -> list[dict]:
    """Final errors with gamma = 0 and the a priori gamma, ``max_iter`` steps."""
    target = TargetFunction("trig")
    mus = config.mu_list or list(LIGHT_NOISE + HEAVY_NOISE)
    rows = []
    for pol in ("zero", "paper"):
        _, res = _reconstruct(config, target, config.alpha, config.s, mus, pol,
                              discrepancy=False, tag=f"{pol}_")
        for r in res:
            r["gamma_policy"] = pol
        rows += res
    _summary(config, rows)
    paired = []
    for mu in mus:
        z = next(r for r in rows if r["mu"] == mu and r["gamma_policy"] == "zero")
        p = next(r for r in rows if r["mu"] == mu and r["gamma_policy"] == "paper")
        if z["status"] != "ok" or p["status"] != "ok":
            continue
        ez, ep = z["final_error"], p["final_error"]
        paired.append({"mu": mu, "error_gamma_zero": ez, "error_gamma_apriori": ep,
                       "relative_gap": abs(ez - ep) / max(ez, ep) if max(ez, ep) > 0 else 0.0,
                       "regularized_better": ep <= ez})
    _write_table(output_dir_for(config) / "comparison.csv", _header(config),
                 ["mu", "error_gamma_zero", "error_gamma_apriori", "relative_gap",
                  "regularized_better"], paired)
    return paired


def run_illposedness(config: ExperimentConfig) -> dict:
    mesh = make_mesh(config.N)
    matrices = assemble(mesh, config.s)
    basis = compute_eigenbasis(matrices)
    table = illposedness_demo(basis, config.alpha, config.T)
    amp = table["amplification"]
    verdict = ("amplification exceeds 1e3" if amp.max() > 1e3 else
               f"amplification stays below 1e3 (max {amp.max():.4g} at p={int(np.argmax(amp)) + 1})")
    table["verdict"] = verdict
    header = "".join(f"# {k}: {v}\n" for k, v in _header(config, {"verdict": verdict}).items())
    write_illposedness_csv(table, output_dir_for(config) / "illposedness.csv", header)
    return table


def run_experiment(config: ExperimentConfig):
    exp = config.experiment
    if exp == "convergence_table":
        return run_convergence_table(config)
    if exp == "example_5_2":
        return run_regularization_comparison(config)
    if exp == "illposedness":
        return run_illposedness(config)
    return run_reconstruction(config)
