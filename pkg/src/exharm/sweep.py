"""Parameter sweeps over (m, omega) with CSV output and a run manifest."""

from __future__ import annotations

import json
import math
import os
import time
import traceback
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path

import numpy as np

from . import reference
from .adiabatic import adiabatic_report
from .correlation import (
    correlation_radius, correlation_report, delta_intracule, exact_components, exact_densities,
    exact_intracule, hf_radial_density, hydrogen_intracule, intracule_moment, oscillator_intracule, sdd,
)
from .mchf import (
    GaussianBasis, ScfResult, hf_intracule, hf_intracule_moments, optimize_exponents, read_basis_file, scf, table_basis,
)
from .model import SystemParams, derive_params
from .radial import ADIABATIC_VARIANTS, GridPolicy, relative_ground

TASKS = ("energies", "moments", "densities", "hills", "intracule", "correlation", "adiabatic", "tables")
BASIS_MODES = ("table-a1", "optimize")
VARIANT_CHOICES = ADIABATIC_VARIANTS + ("both",)
TABLES = ("1", "2", "3", "4", "A2")
FIGURES = tuple(range(1, 8))
FIGURE_POINTS = 2000

ENERGY_HEADER = ("E_exact", "T_e_exact", "T_pcp_exact", "V_ext_e_exact", "V_ext_pcp_exact", "V_ep_exact",
                 "E_mchf", "T_e_mchf", "T_pcp_mchf", "V_ext_e_mchf", "V_ext_pcp_mchf", "V_ep_mchf")
CORRELATION_HEADER = reference.CORRELATION_COLUMNS + ("J_ep", "V_ep_exact")
HILL_HEADER = reference.RADII_COLUMNS + ("sum_rule_e", "sum_rule_pcp")
ADIABATIC_HEADER = ("variant", "E_e") + reference.ADIABATIC_COLUMNS
DENSITY_HEADER = ("norm_e", "norm_pcp", "rho_e_0", "rho_pcp_0", "sdd_e_0", "sdd_pcp_0")
INTRACULE_HEADER = ("norm_exact", "norm_mchf", "int_delta_D", "delta_D_first", "delta_D_min")

TABLE_TASK = {"1": "moments", "2": "correlation", "3": "hills", "4": "adiabatic", "A2": "energies"}
TABLE_HEADER = {
    "1": reference.MOMENT_COLUMNS,
    "2": reference.CORRELATION_COLUMNS,
    "3": reference.RADII_COLUMNS,
    "4": reference.ADIABATIC_COLUMNS,
    "A2": ENERGY_HEADER,
}


class ConfigError(ValueError):
    """Invalid sweep configuration."""


@dataclass(frozen=True)
class SweepConfig:
    """Everything a sweep needs; loadable from a flat JSON object."""

    masses: tuple = reference.MASSES
    omegas: tuple = reference.OMEGAS
    tasks: tuple = ("energies",)
    basis_mode: str = "table-a1"
    basis_file: str | None = None
    adiabatic_variant: str = "table-consistent"
    output_dir: str | None = None
    r_max_factor: float = GridPolicy.r_max_factor
    n_initial: int = GridPolicy.n_initial
    grid_tol: float = GridPolicy.tol
    n_max: int = GridPolicy.n_max
    jobs: int | None = None

    def __post_init__(self):
        for name in ("masses", "omegas", "tasks"):
            val = getattr(self, name)
            if isinstance(val, (str, int, float)):
                val = (val,)
            object.__setattr__(self, name, tuple(val))
        object.__setattr__(self, "masses", tuple(float(m) for m in self.masses))
        object.__setattr__(self, "omegas", tuple(float(w) for w in self.omegas))

    @classmethod
    def from_json(cls, path) -> "SweepConfig":
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError(f"{path}: config must be a JSON object")
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"{path}: unknown keys {sorted(unknown)}")
        return cls(**data)

    def override(self, **kwargs) -> "SweepConfig":
        """Copy with every non-``None`` keyword replaced."""
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})

    @property
    def policy(self) -> GridPolicy:
        return GridPolicy(self.r_max_factor, self.n_initial, self.grid_tol, self.n_max)

    def resolved_output_dir(self) -> Path:
        out = self.output_dir or os.environ.get("EXHARM_OUTPUT_DIR")
        if not out:
            raise ConfigError("no output_dir given and EXHARM_OUTPUT_DIR is not set")
        return Path(out)

    def validate(self) -> None:
        if not self.masses:
            raise ConfigError("masses must be non-empty")
        if not self.omegas:
            raise ConfigError("omegas must be non-empty")
        for name, vals in (("masses", self.masses), ("omegas", self.omegas)):
            bad = [v for v in vals if not (math.isfinite(v) and v > 0)]
            if bad:
                raise ConfigError(f"{name} must be positive, got {bad}")
        if not self.tasks:
            raise ConfigError("tasks must be non-empty")
        bad = [t for t in self.tasks if t not in TASKS]
        if bad:
            raise ConfigError(f"unknown tasks {bad}; choose from {TASKS}")
        if self.basis_mode not in BASIS_MODES:
            raise ConfigError(f"basis_mode must be one of {BASIS_MODES}")
        if self.adiabatic_variant not in VARIANT_CHOICES:
            raise ConfigError(f"adiabatic_variant must be one of {VARIANT_CHOICES}")
        if self.basis_file is not None and not Path(self.basis_file).is_file():
            raise ConfigError(f"basis file {self.basis_file} not found")
        if self.jobs is not None and self.jobs < 1:
            raise ConfigError("jobs must be >= 1")
        try:
            self.policy
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        out = self.resolved_output_dir()
        if out.exists() and not out.is_dir():
            raise ConfigError(f"output_dir {out} is not a directory")
        probe = out if out.exists() else next((p for p in out.parents if p.exists()), Path("."))
        if not os.access(probe, os.W_OK):
            raise ConfigError(f"output_dir {out} is not writable")

    def expanded_tasks(self) -> tuple:
        if "tables" in self.tasks:
            return tuple(TASKS[:-1])
        return self.tasks

    def variants(self) -> tuple:
        return ADIABATIC_VARIANTS if self.adiabatic_variant == "both" else (self.adiabatic_variant,)


# ---------------------------------------------------------------- per-point computation

def seed_basis(params: SystemParams, n: int = 7, beta: float = 3.0) -> tuple[GaussianBasis, GaussianBasis]:
    """Even-tempered starting bases centred on rough electron and PCP length scales."""
    centre_e = max(0.5 * params.omega, 0.3 * params.mu**2)
    centre_p = max(0.5 * params.m_pcp * params.omega, 0.1 * math.sqrt(params.m_pcp))
    shift = beta ** ((n - 1) / 2)
    return (
        GaussianBasis.even_tempered(centre_e / shift, beta, n),
        GaussianBasis.even_tempered(centre_p / shift, beta, n),
    )


def point_scf(config: SweepConfig, params: SystemParams) -> tuple[ScfResult, str]:
    """Mean-field solution in the configured basis mode; returns the result and its provenance."""
    if config.basis_file is not None:
        be, bp = read_basis_file(config.basis_file)
        source = f"file:{config.basis_file}"
    elif config.basis_mode == "table-a1" and reference.lookup(reference.BASIS_7S7S, params.m_pcp, params.omega):
        be, bp = table_basis(params.m_pcp, params.omega)
        source = "table-a1"
    else:
        be, bp = seed_basis(params)
        source = "even-tempered"
    if config.basis_mode == "optimize" or source == "even-tempered":
        be, bp, res = optimize_exponents(params, be, bp)
        return res, source + "+optimized"
    return scf(params, be, bp), source


def format_value(x) -> str:
    if isinstance(x, str):
        return x
    return format(float(x), ".6g")


@dataclass
class PointResult:
    m: float
    omega: float
    rows: dict = field(default_factory=dict)
    curves: dict = field(default_factory=dict)
    flags: dict = field(default_factory=dict)
    info: dict = field(default_factory=dict)
    error: str | None = None
    wall: float = 0.0


def _curve(columns: dict) -> dict:
    return {k: np.asarray(v, dtype=float) for k, v in columns.items()}


def _point_tag(m, w) -> str:
    return f"m{m:g}_w{w:g}"


def compute_point(config: SweepConfig, m: float, omega: float) -> PointResult:
    """Run every requested task at one parameter point; never raises."""
    t0 = time.perf_counter()
    out = PointResult(m, omega)
    try:
        _compute(config, derive_params(m, omega), out)
    except Exception as exc:  # recorded in the manifest, the sweep carries on
        out.error = f"{type(exc).__name__}: {exc}"
        out.info["traceback"] = traceback.format_exc(limit=3)
    out.wall = time.perf_counter() - t0
    return out


def _compute(config: SweepConfig, params: SystemParams, out: PointResult) -> None:
    tasks = config.expanded_tasks()
    w = params.omega
    sol = relative_ground(params, config.policy)
    e_exact = sol.best_energy + 1.5 * w
    out.info["grid"] = f"r_max={sol.grid.r_max:.6g} n={sol.grid.n}"

    need_scf = {"energies", "moments", "densities", "intracule", "correlation", "adiabatic"} & set(tasks)
    res = None
    if need_scf:
        res, source = point_scf(config, params)
        out.info["basis"] = source
        out.info["scf_iterations"] = res.iterations
    dens = exact_densities(sol, params) if {"densities", "hills", "correlation"} & set(tasks) else None
    report = correlation_report(params, sol, res, dens) if "correlation" in tasks else None
    exact = exact_components(sol, params)

    tag = _point_tag(params.m_pcp, w)
    if "energies" in tasks:
        out.rows["energies"] = [(e_exact,) + exact.as_tuple() + (res.energy,) + res.components.as_tuple()]
        out.flags["energies"] = sol.converged and res.converged
    if "moments" in tasks:
        D = exact_intracule(sol)
        r1, r2 = intracule_moment(D, 1), intracule_moment(D, 2)
        h1, h2 = hf_intracule_moments(res)
        out.rows["moments"] = [(r1, h1, r2 - r1 * r1, h2 - h1 * h1)]
        out.flags["moments"] = sol.converged and res.converged
    if "correlation" in tasks:
        d = report.deltas
        out.rows["correlation"] = [
            (report.e_corr_ref_indep, report.e_corr_ref_dep) + d.as_tuple() + (report.j_ep, report.v_ep_exact)
        ]
        out.flags["correlation"] = sol.converged and res.converged
    if "hills" in tasks:
        he, hp = dens.hill_e, dens.hill_pcp
        out.rows["hills"] = [(correlation_radius(he), correlation_radius(hp), he.sum_rule(), hp.sum_rule())]
        out.flags["hills"] = sol.converged and max(abs(he.sum_rule()), abs(hp.sum_rule())) < 1e-5
        for h in (he, hp):
            rs = h.resample(FIGURE_POINTS)
            rho = rs.conditional - rs.values
            out.curves[f"hills/{tag}_{h.particle}.csv"] = _curve(
                {"r": rs.r, "conditional": rs.conditional, "rho": rho, "hill": rs.values,
                 "hill_rdf": 4 * math.pi * rs.r**2 * rs.values}
            )
    if "densities" in tasks:
        sdd0 = []
        for rho in (dens.rho_e, dens.rho_pcp):
            hf = hf_radial_density(res, rho.particle, rho.r)
            _, s = sdd(hf, rho)
            sdd0.append(s[0])
            rs = rho.resample(FIGURE_POINTS)
            hfs = hf_radial_density(res, rho.particle, rs.r)
            out.curves[f"densities/{tag}_{rho.particle}.csv"] = _curve(
                {"r": rs.r, "rho_exact": rs.rho, "rho_mchf": hfs.rho, "sdd": sdd(hfs, rs)[1]}
            )
        row = (dens.rho_e.norm(), dens.rho_pcp.norm(), dens.rho_e.rho[0], dens.rho_pcp.rho[0]) + tuple(sdd0)
        out.rows["densities"] = [row]
        out.flags["densities"] = sol.converged and max(abs(row[0] - 1), abs(row[1] - 1)) < 1e-6
    if "intracule" in tasks:
        D = exact_intracule(sol)
        dD = delta_intracule(sol, res)
        int_d = float(np.trapezoid(dD.D, dD.r))
        sig = np.flatnonzero(np.abs(dD.D) > 1e-6 * np.abs(dD.D).max())
        out.rows["intracule"] = [
            (D.norm(), float(np.trapezoid(hf_intracule(res, dD.r), dD.r)), int_d, dD.D[sig[0]], dD.D.min())
        ]
        out.flags["intracule"] = sol.converged and abs(int_d) < 1e-8
        r = np.linspace(0.0, min(dD.r[-1], sol.grid.r_max), FIGURE_POINTS)
        out.curves[f"intracule/{tag}.csv"] = _curve(
            {"r": r, "D_exact": sol.u_at(r) ** 2, "D_mchf": hf_intracule(res, r),
             "D_hyd": hydrogen_intracule(params.mu, r), "D_har": oscillator_intracule(params.mu, w, r),
             "delta_D": sol.u_at(r) ** 2 - hf_intracule(res, r)}
        )
    if "adiabatic" in tasks:
        rows = []
        ok = sol.converged
        for variant in config.variants():
            a = adiabatic_report(params, e_exact, exact.total - res.energy, variant, config.policy)
            rows.append((variant, a.e_e, a.e_ad, a.e_non_ad, a.delta_e))
            ok = ok and a.converged
        out.rows["adiabatic"] = rows
        out.flags["adiabatic"] = ok and res.converged


# ---------------------------------------------------------------- orchestration

TASK_HEADERS = {
    "energies": ENERGY_HEADER,
    "moments": reference.MOMENT_COLUMNS,
    "correlation": CORRELATION_HEADER,
    "hills": HILL_HEADER,
    "adiabatic": ADIABATIC_HEADER,
    "densities": DENSITY_HEADER,
    "intracule": INTRACULE_HEADER,
}


def write_csv(path: Path, header, rows) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [",".join(header)] + [",".join(format_value(v) for v in row) for row in rows]
    path.write_text("\n".join(lines) + "\n")


def _write_curve(path: Path, cols: dict) -> None:
    keys = list(cols)
    data = np.column_stack([cols[k] for k in keys])
    write_csv(path, keys, data.tolist())


def compute_points(config: SweepConfig, points) -> list[PointResult]:
    """Evaluate points on a process pool; results come back in input order."""
    points = list(points)
    jobs = config.jobs or os.cpu_count() or 1
    if jobs == 1 or len(points) == 1:
        return [compute_point(config, m, w) for m, w in points]
    with ProcessPoolExecutor(max_workers=min(jobs, len(points))) as pool:
        futures = [pool.submit(compute_point, config, m, w) for m, w in points]
        return [f.result() for f in futures]


def _table_rows(results, table: str):
    task = TABLE_TASK[table]
    rows = []
    for r in results:
        for row in r.rows.get(task, []):
            if table == "3":
                row = row[:2]
            elif table == "4":
                if row[0] != "table-consistent" and len(r.rows[task]) > 1:
                    continue
                row = row[2:]
            elif table == "2":
                row = row[:7]
            rows.append((r.m, r.omega) + tuple(row))
    return rows


def write_outputs(config: SweepConfig, results: list[PointResult], out: Path) -> list[Path]:
    written = []
    tasks = config.expanded_tasks()
    for task in tasks:
        rows = [(r.m, r.omega) + tuple(row) for r in results for row in r.rows.get(task, [])]
        path = out / f"{task}.csv"
        write_csv(path, ("m", "omega") + TASK_HEADERS[task], rows)
        written.append(path)
    for r in results:
        for rel, cols in sorted(r.curves.items()):
            _write_curve(out / rel, cols)
            written.append(out / rel)
    if "tables" in config.tasks:
        for table in TABLES:
            path = out / f"table{table}.csv"
            write_csv(path, ("m", "omega") + TABLE_HEADER[table], _table_rows(results, table))
            written.append(path)
    return written


def write_manifest(config: SweepConfig, results: list[PointResult], out: Path, total_wall: float) -> Path:
    lines = ["exharm run manifest", "", "[config]"]
    for k, v in asdict(config).items():
        lines.append(f"{k} = {v}")
    lines += ["", "[points]"]
    for r in results:
        status = "ERROR" if r.error else "ok"
        lines.append(f"m={r.m:g} omega={r.omega:g} status={status} wall={r.wall:.3f}s")
        for k, v in sorted(r.info.items()):
            if k != "traceback":
                lines.append(f"    {k}: {v}")
        for task in config.expanded_tasks():
            flag = r.flags.get(task)
            lines.append(f"    converged[{task}]: {'n/a' if flag is None else str(bool(flag)).lower()}")
        if r.error:
            lines.append(f"    error: {r.error}")
    lines += ["", f"total_wall = {total_wall:.3f}s"]
    path = out / "manifest.txt"
    path.write_text("\n".join(lines) + "\n")
    return path


def run(config: SweepConfig) -> int:
    """Execute a sweep; returns a process exit status.

    Nonzero only when the configuration is invalid or every point failed.
    """
    config.validate()
    out = config.resolved_output_dir()
    out.mkdir(parents=True, exist_ok=True)
    t0 = time.perf_counter()
    points = [(m, w) for m in config.masses for w in config.omegas]
    results = compute_points(config, points)
    write_outputs(config, results, out)
    write_manifest(config, results, out, time.perf_counter() - t0)
    return 1 if all(r.error for r in results) else 0


# ---------------------------------------------------------------- figures

FIGURE_TASKS = {1: "intracule", 2: "densities", 3: "densities", 4: "densities", 5: "hills", 6: "hills", 7: "intracule"}


def emit_figure_data(config: SweepConfig, figure: int, m: float, omega: float) -> list[Path]:
    """Write the curve data behind one figure panel at ``(m, omega)``."""
    if figure not in FIGURES:
        raise ConfigError(f"unknown figure {figure!r}; choose from {FIGURES}")
    params = derive_params(m, omega)
    cfg = config.override(tasks=("hills", "densities", "intracule"))
    cfg.validate()
    res = compute_point(cfg, params.m_pcp, params.omega)
    if res.error:
        raise RuntimeError(f"figure {figure} at m={m:g}, omega={omega:g} failed: {res.error}")
    out = cfg.resolved_output_dir() / f"figure{figure}"
    tag = _point_tag(params.m_pcp, params.omega)
    written = []

    def emit(name, cols):
        path = out / name
        _write_curve(path, cols)
        written.append(path)

    if figure == 1:
        c = res.curves[f"intracule/{tag}.csv"]
        emit(f"{tag}.csv", {k: c[k] for k in ("r", "D_exact", "D_hyd", "D_har")})
    elif figure in (2, 3):
        particle = "e" if figure == 2 else "pcp"
        d = res.curves[f"densities/{tag}_{particle}.csv"]
        h = res.curves[f"hills/{tag}_{particle}.csv"]
        r = d["r"]
        four_pi_r2 = 4 * math.pi * r * r
        # in a product state the conditional density equals the one-particle density
        emit(f"{tag}_{particle}.csv", {
            "r": r, "rho_exact": d["rho_exact"], "cond_exact": h["conditional"],
            "rho_mchf": d["rho_mchf"], "cond_mchf": d["rho_mchf"],
            "rdf_exact": four_pi_r2 * d["rho_exact"], "rdf_cond_exact": four_pi_r2 * h["conditional"],
            "rdf_mchf": four_pi_r2 * d["rho_mchf"],
        })
    elif figure == 4:
        for particle in ("e", "pcp"):
            d = res.curves[f"densities/{tag}_{particle}.csv"]
            emit(f"{tag}_{particle}.csv", {"r": d["r"], "sdd": d["sdd"]})
    elif figure in (5, 6):
        particle = "e" if figure == 5 else "pcp"
        h = res.curves[f"hills/{tag}_{particle}.csv"]
        emit(f"{tag}_{particle}.csv", {"r": h["r"], "hill": h["hill"], "hill_rdf": h["hill_rdf"]})
    else:
        c = res.curves[f"intracule/{tag}.csv"]
        emit(f"{tag}.csv", {"r": c["r"], "delta_D": c["delta_D"]})
    return written


def table_config(table: str, base: SweepConfig | None = None) -> SweepConfig:
    """Reference-grid configuration that produces one published table."""
    if table not in TABLES:
        raise ConfigError(f"unknown table {table!r}; choose from {TABLES}")
    base = base or SweepConfig()
    return base.override(masses=reference.MASSES, omegas=reference.OMEGAS, tasks=(TABLE_TASK[table],))


def compute_table(table: str, base: SweepConfig | None = None) -> tuple[tuple, list]:
    """Header and rows of one published table recomputed on the reference grid."""
    cfg = table_config(table, base)
    results = compute_points(cfg, reference.GRID)
    failed = [r for r in results if r.error]
    if failed:
        r = failed[0]
        raise RuntimeError(f"table {table}: point m={r.m:g}, omega={r.omega:g} failed: {r.error}")
    return ("m", "omega") + TABLE_HEADER[table], _table_rows(results, table)
