"""
JobRunner: runs one configured command and produces its report and files.

Every command returns a JobReport; the process exit status is
``report.exit_code``. Geometry errors inside a deformation sweep are recorded
per frame and the remaining frames are still produced.
"""

from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple
import logging
import math

import numpy as np

from bcv.metric import classify
from bcv.space import BcvSpace
from bour.chart import NaturalChart, build_chart
from bour.profile_interface import IMetricProfile
from bour.profiles import PolynomialProfile
from bour.seed import BourSeed
from cmc.constants import cmc_constants
from cmc.equation import cmc_residual
from cmc.families import cmc_U, minimal_U
from common.errors import BcvError, ConfigError
from jobs.config import JobConfig
from jobs.export import write_mesh_csv, write_obj, write_profile_csv, write_report
from jobs.report import JobReport
from oracle.forms import isometry_deviation, metric_law_deviation
from oracle.mesh import MeshGrid, sample_mesh
from oracle.surface_interface import ISurfaceChart
from oracle.surfaces import NaturalSurface, ProfileSurface


LOGGER = logging.getLogger("jobs")

# Fraction of the chart domain kept away from each endpoint when verifying.
VERIFY_MARGIN = 0.02


class JobRunner:
    def __init__(self, config: JobConfig, out_dir: Path):
        self.config = config
        self.out_dir = Path(out_dir)
        self.space = BcvSpace(kappa=config.space.kappa, tau=config.space.tau)
        self.tol = config.tolerances

    def run(self, command: str) -> int:
        handler: Optional[Callable[[JobReport], None]] = getattr(self, f"cmd_{command}", None)
        if handler is None:
            raise ConfigError(f"unknown command '{command}'")
        report = JobReport(command=command, space=self.config.space.model_dump())
        LOGGER.info(f"run: {command} in {self.space}")
        handler(report)
        if "json" in self.config.output.formats:
            path = write_report(report, self.out_dir / f"{self.config.output.stem}_{command}.json")
            report.files.append(path.name)
        LOGGER.info(f"run: {command} {'passed' if report.passed else 'failed'}")
        return report.exit_code

    # ---------- building blocks ----------

    def _profile(self, family: Optional[str] = None) -> Tuple[IMetricProfile, float, Dict]:
        """(U, H, details) for the configured seed; ``family`` overrides the configured one."""
        seed = self.config.seed
        family = family or seed.family
        details: Dict = {"family": family}
        if family == "cmc":
            profile, case = cmc_U(self.space, seed.m, seed.a, seed.H, seed.c, seed.window, self.tol)
            details["case"] = case.value
            details["constants"] = cmc_constants(self.space, seed.a, seed.H, seed.c).model_dump()
            return profile, seed.H, details
        if family == "minimal":
            profile, cls = minimal_U(self.space, seed.m, seed.a, seed.c, seed.window, self.tol)
            details["case"] = cls.value
            return profile, 0.0, details
        explicit = seed.profile
        if explicit is None:
            raise ConfigError("seed.family='explicit' requires seed.profile")
        domain = seed.u_range or seed.window
        profile = PolynomialProfile(explicit.coefficients, domain, explicit.form, explicit.perturbation)
        details["profile"] = explicit.model_dump()
        return profile, seed.H, details

    def _seed(self, U: IMetricProfile, a: Optional[float] = None, m: Optional[float] = None) -> BourSeed:
        cfg = self.config.seed
        u_domain = None
        if cfg.u_range is not None:
            lo, hi = max(cfg.u_range[0], U.domain[0]), min(cfg.u_range[1], U.domain[1])
            if not lo < hi:
                raise ConfigError(f"seed.u_range {cfg.u_range} misses the profile domain {U.domain}")
            u_domain = (lo, hi)
        return BourSeed(U, cfg.m if m is None else m, cfg.a if a is None else a, u_domain)

    def _surface(self, chart: NaturalChart, u_range: Optional[Tuple[float, float]] = None) -> ISurfaceChart:
        t_range = self.config.grid.t_range
        if self.config.output.raw_parametrization:
            return ProfileSurface(chart.action, chart.profile_curve(), u_range, t_range)
        return NaturalSurface(chart, u_range, t_range)

    def _interior(self, domain: Tuple[float, float]) -> Tuple[float, float]:
        lo, hi = domain
        pad = VERIFY_MARGIN * (hi - lo)
        return lo + pad, hi - pad

    def _residual(self, chart: NaturalChart, H: float) -> Callable[[float], float]:
        return lambda u: cmc_residual(self.space, chart.seed, H, u, self.tol)

    def _mesh(self, chart: NaturalChart, H: float, curvature: bool = True) -> MeshGrid:
        grid = self.config.grid
        return sample_mesh(
            self.space,
            self._surface(chart),
            grid.nu,
            grid.nt,
            curvature=curvature,
            residual=self._residual(chart, H),
            orientation="profile",
            tol=self.tol,
        )

    def _export(self, report: JobReport, stem: str, chart: NaturalChart, mesh: Optional[MeshGrid]):
        formats = self.config.output.formats
        if mesh is not None and "obj" in formats:
            report.files.append(write_obj(mesh, self.out_dir / f"{stem}.obj").name)
        if mesh is not None and "csv" in formats:
            report.files.append(write_mesh_csv(mesh, self.out_dir / f"{stem}.csv").name)
        if "profile" in formats:
            us = np.linspace(chart.domain[0], chart.domain[1], self.config.grid.nu)
            report.files.append(write_profile_csv(chart, us, self.out_dir / f"{stem}_profile.csv").name)

    def _build(self, report: JobReport, family: Optional[str] = None) -> Tuple[NaturalChart, float]:
        U, H, details = self._profile(family)
        chart = build_chart(self.space, self._seed(U), self.tol)
        report.details.update(details)
        report.details["H"] = H
        report.details["label"] = chart.label
        report.details["domain"] = list(chart.domain)
        return chart, H

    def _needs_mesh(self) -> bool:
        return bool({"obj", "csv"} & set(self.config.output.formats))

    # ---------- commands ----------

    def cmd_classify(self, report: JobReport):
        report.details["class"] = classify(self.space, self.tol).value

    def cmd_chart(self, report: JobReport):
        chart, H = self._build(report)
        report.details["u0"] = chart.u0
        mesh = self._mesh(chart, H, curvature=False) if self._needs_mesh() else None
        self._export(report, self.config.output.stem, chart, mesh)

    def _family_command(self, report: JobReport, family: str):
        chart, H = self._build(report, family)
        mesh = self._mesh(chart, H) if self._needs_mesh() else None
        self._export(report, self.config.output.stem, chart, mesh)

    def cmd_cmc(self, report: JobReport):
        self._family_command(report, "cmc")

    def cmd_minimal(self, report: JobReport):
        self._family_command(report, "minimal")

    def cmd_export(self, report: JobReport):
        chart, H = self._build(report)
        self._export(report, self.config.output.stem, chart, self._mesh(chart, H))

    def cmd_verify(self, report: JobReport):
        chart, H = self._build(report)
        thresholds, grid = self.config.thresholds, self.config.grid
        lo, hi = self._interior(chart.domain)

        residual = self._residual(chart, H)
        worst = 0.0
        for u in np.linspace(lo, hi, thresholds.residual_points + 2)[1:-1]:
            try:
                worst = max(worst, abs(residual(float(u))))
            except BcvError as e:
                LOGGER.warning(f"cmd_verify: no residual at u={u}: {e}")
                worst = math.nan
                break
        report.check("max_cmc_residual", worst, thresholds.cmc_residual)

        surface = NaturalSurface(chart, (lo, hi), grid.t_range)
        mesh = sample_mesh(self.space, surface, grid.nu, grid.nt, residual=residual, orientation="profile", tol=self.tol)
        h_error = np.abs(mesh.H_ext[mesh.valid] - H)
        h_worst = float(np.max(h_error)) if h_error.size and np.all(np.isfinite(h_error)) else math.nan
        report.check("max_mean_curvature_error", h_worst, thresholds.mean_curvature)

        us, ts = np.linspace(lo, hi, grid.nu), np.linspace(grid.t_range[0], grid.t_range[1], grid.nt)
        try:
            law = metric_law_deviation(self.space, surface, chart.seed.U, (us, ts), self.tol)
        except BcvError as e:
            LOGGER.warning(f"cmd_verify: first form not measurable: {e}")
            law = math.nan
        report.check("max_first_form_deviation", law, thresholds.first_form)
        report.metrics["max_abs_gauss_curvature"] = mesh.max_abs("K")
        if mesh.dropped_rows:
            report.details["dropped_rows"] = mesh.dropped_rows
        self._export(report, self.config.output.stem, chart, mesh)

    def cmd_deform(self, report: JobReport):
        sweep = self.config.sweep
        if sweep is None:
            raise ConfigError("deform needs a sweep block")
        U, H, details = self._profile()
        report.details.update(details)
        report.details["parameter"] = sweep.parameter
        report.details["values"] = list(sweep.values)

        charts: List[Tuple[float, NaturalChart]] = []
        domains: Dict[str, List[float]] = {}
        for value in sweep.values:
            key = f"{sweep.parameter}={value:g}"
            try:
                seed = self._seed(U, a=value) if sweep.parameter == "a" else self._seed(U, m=value)
                chart = build_chart(self.space, seed, self.tol)
                mesh = self._mesh(chart, H, curvature="csv" in self.config.output.formats) if self._needs_mesh() else None
                self._export(report, f"{self.config.output.stem}_{key}", chart, mesh)
            except BcvError as e:
                LOGGER.warning(f"cmd_deform: frame {key} failed: {e}")
                report.fail(key, str(e))
                continue
            charts.append((value, chart))
            domains[key] = list(chart.domain)
        report.details["domains"] = domains
        if not charts:
            return

        lo = max(chart.domain[0] for _, chart in charts)
        hi = min(chart.domain[1] for _, chart in charts)
        if not lo < hi:
            report.fail("isometry", f"frames share no u-interval: ({lo}, {hi})")
            return
        lo, hi = self._interior((lo, hi))
        grid = self.config.grid
        points = (np.linspace(lo, hi, grid.nu), np.linspace(grid.t_range[0], grid.t_range[1], grid.nt))
        surfaces = [NaturalSurface(chart, (lo, hi), grid.t_range) for _, chart in charts]
        n = len(surfaces)
        matrix = np.zeros((n, n))
        for i in range(n):
            for j in range(i + 1, n):
                try:
                    matrix[i, j] = isometry_deviation(self.space, surfaces[i], surfaces[j], points, self.tol)
                except BcvError as e:
                    LOGGER.warning(f"cmd_deform: no deviation between frames {i} and {j}: {e}")
                    matrix[i, j] = math.nan
                matrix[j, i] = matrix[i, j]
        report.details["frames"] = [value for value, _ in charts]
        report.details["isometry_matrix"] = matrix.tolist()
        worst = float(np.max(matrix)) if np.all(np.isfinite(matrix)) else math.nan
        report.check("max_isometry_deviation", worst, self.config.thresholds.first_form)
