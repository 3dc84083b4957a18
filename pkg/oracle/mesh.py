# oracle/mesh.py
from dataclasses import dataclass, field
from typing import Callable, List, Optional
import logging

import numpy as np

from bcv.space import BcvSpace
from common.errors import BcvError
from common.tolerances import DEFAULT_TOLERANCES, Tolerances
from oracle.forms import embed, gauss_numeric, mean_curvature_extrinsic
from oracle.surface_interface import ISurfaceChart


LOGGER = logging.getLogger("oracle")


@dataclass
class MeshGrid:
    """nu x nt samples of a surface; rows of arrays are u, columns are t."""

    nu: int
    nt: int
    u: np.ndarray
    t: np.ndarray
    vertices: np.ndarray  # (nu, nt, 3), NaN where dropped
    valid: np.ndarray  # (nu, nt) bool
    H_ext: np.ndarray
    K: np.ndarray
    residual: np.ndarray
    dropped_rows: List[float] = field(default_factory=list)

    @property
    def vertex_count(self) -> int:
        return int(self.valid.sum())

    def faces(self) -> List[tuple]:
        """Triangles (two per fully valid quad) as 0-based indices into the valid vertices."""
        index = -np.ones(self.valid.shape, dtype=int)
        index[self.valid] = np.arange(self.vertex_count)
        triangles = []
        for i in range(self.nu - 1):
            for j in range(self.nt - 1):
                quad = index[i, j], index[i + 1, j], index[i + 1, j + 1], index[i, j + 1]
                if min(quad) < 0:
                    continue
                triangles.append((quad[0], quad[1], quad[2]))
                triangles.append((quad[0], quad[2], quad[3]))
        return triangles

    def max_abs(self, name: str) -> float:
        values = getattr(self, name)[self.valid]
        values = values[np.isfinite(values)]
        return float(np.max(np.abs(values))) if values.size else 0.0


def sample_mesh(
    space: BcvSpace,
    chart: ISurfaceChart,
    nu: int,
    nt: int,
    curvature: bool = True,
    residual: Optional[Callable[[float], float]] = None,
    orientation: str = "outward",
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> MeshGrid:
    """
    Uniform grid over chart.u_range x chart.t_range.

    Rows whose u cannot be embedded are dropped; per-vertex curvature failures
    leave NaN diagnostics but keep the vertex. K is measured numerically
    from the embedding once per row.
    """
    if nu < 2 or nt < 2:
        raise ValueError(f"Bad argument: need nu, nt >= 2, got {nu}, {nt}")
    us = np.linspace(chart.u_range[0], chart.u_range[1], nu)
    ts = np.linspace(chart.t_range[0], chart.t_range[1], nt)
    vertices = np.full((nu, nt, 3), np.nan)
    valid = np.zeros((nu, nt), dtype=bool)
    h_ext = np.full((nu, nt), np.nan)
    gauss = np.full((nu, nt), np.nan)
    res = np.full((nu, nt), np.nan)
    dropped: List[float] = []

    for i, u in enumerate(us):
        try:
            row = [embed(space, chart, u, t, tol) for t in ts]
        except BcvError as e:
            LOGGER.debug(f"sample_mesh: dropping row u={u}: {e}")
            dropped.append(float(u))
            continue
        vertices[i] = np.asarray(row)
        valid[i] = True
        if residual is not None:
            try:
                res[i] = residual(u)
            except BcvError:
                pass
        if not curvature:
            continue
        # Helicoidal motions are isometries, so K is constant along each row.
        try:
            gauss[i] = gauss_numeric(space, chart, u, ts[nt // 2], tol)
        except BcvError as e:
            LOGGER.debug(f"sample_mesh: no Gauss curvature at u={u}: {e}")
        for j, t in enumerate(ts):
            try:
                h_ext[i, j] = mean_curvature_extrinsic(space, chart, u, t, orientation, tol)
            except BcvError as e:
                LOGGER.debug(f"sample_mesh: no mean curvature at ({u}, {t}): {e}")

    if dropped:
        LOGGER.warning(f"sample_mesh: dropped {len(dropped)} of {nu} rows outside the domain")
    mesh = MeshGrid(nu, nt, us, ts, vertices, valid, h_ext, gauss, res, dropped)
    LOGGER.info(
        f"sample_mesh: {mesh.vertex_count} vertices, max|H_ext|={mesh.max_abs('H_ext'):.3e}"
        if curvature
        else f"sample_mesh: {mesh.vertex_count} vertices"
    )
    return mesh
