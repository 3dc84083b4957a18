"""
Mesh and profile writers.

Every writer goes through ``_written``: the file is produced next to its
target and moved into place only when complete, so a failed export leaves no
partial file behind.
"""

from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Sequence
import logging
import os

import numpy as np
import pandas as pd

from bour.chart import NaturalChart
from jobs.report import JobReport
from oracle.mesh import MeshGrid


LOGGER = logging.getLogger("jobs")

MESH_COLUMNS = ["u", "t", "x", "y", "z", "H_ext", "K", "cmc_residual"]
PROFILE_COLUMNS = ["u", "xi1", "xi2", "theta0", "U"]
# Scientific notation with 17 significant digits.
FLOAT_FORMAT = "%.16e"


@contextmanager
def _written(path: Path) -> Iterator[Path]:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    partial = path.with_name(path.name + ".partial")
    try:
        yield partial
        os.replace(partial, path)
    except BaseException:
        LOGGER.exception(f"export: failed writing {path}")
        partial.unlink(missing_ok=True)
        raise
    LOGGER.info(f"export: wrote {path}")


def write_obj(mesh: MeshGrid, path: Path) -> Path:
    """Valid vertices and the triangulated quads between them; 1-based, ASCII, LF."""
    with _written(path) as tmp:
        with open(tmp, "w", encoding="ascii", newline="\n") as fh:
            fh.write(f"# {mesh.vertex_count} vertices\n")
            for x, y, z in mesh.vertices[mesh.valid]:
                fh.write(f"v {x:.17g} {y:.17g} {z:.17g}\n")
            for i, j, k in mesh.faces():
                fh.write(f"f {i + 1} {j + 1} {k + 1}\n")
    return Path(path)


def mesh_frame(mesh: MeshGrid) -> pd.DataFrame:
    uu, tt = np.meshgrid(mesh.u, mesh.t, indexing="ij")
    mask = mesh.valid
    points = mesh.vertices[mask]
    return pd.DataFrame(
        {
            "u": uu[mask],
            "t": tt[mask],
            "x": points[:, 0],
            "y": points[:, 1],
            "z": points[:, 2],
            "H_ext": mesh.H_ext[mask],
            "K": mesh.K[mask],
            "cmc_residual": mesh.residual[mask],
        },
        columns=MESH_COLUMNS,
    )


def _write_frame(df: pd.DataFrame, path: Path) -> Path:
    with _written(path) as tmp:
        df.to_csv(tmp, index=False, float_format=FLOAT_FORMAT, lineterminator="\n", encoding="ascii")
    return Path(path)


def write_mesh_csv(mesh: MeshGrid, path: Path) -> Path:
    return _write_frame(mesh_frame(mesh), path)


def profile_frame(chart: NaturalChart, us: Sequence[float]) -> pd.DataFrame:
    rows = [(u, chart.xi1(u), chart.xi2(u), chart.theta0(u), chart.U(u)) for u in map(float, us)]
    return pd.DataFrame(rows, columns=PROFILE_COLUMNS)


def write_profile_csv(chart: NaturalChart, us: Sequence[float], path: Path) -> Path:
    return _write_frame(profile_frame(chart, us), path)


def read_csv(path: Path) -> pd.DataFrame:
    """Read a file written by this module back into float columns."""
    return pd.read_csv(path, float_precision="round_trip").astype(float)


def write_report(report: JobReport, path: Path) -> Path:
    with _written(path) as tmp:
        with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(report.model_dump_json(indent=2))
            fh.write("\n")
    return Path(path)
