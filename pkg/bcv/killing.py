# bcv/killing.py
import numpy as np

from bcv.metric import christoffels, metric_cartesian, orthonormal_frame, scaling_factor
from bcv.space import AmbientPoint, BcvSpace
from common.tolerances import DEFAULT_TOLERANCES, Tolerances
from numerics.differences import diff_central


def killing_basis(space: BcvSpace, p: AmbientPoint, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """Rows X1..X4, defined on the orthonormal frame and returned in coordinate components."""
    x, y, _ = p
    k, t = space.kappa, space.tau
    b = scaling_factor(space, x * x + y * y, tol)
    frame = orthonormal_frame(space, p, tol)
    coefficients = np.array(
        [
            [1.0 - k * y * y / (2.0 * b), k * x * y / (2.0 * b), 2.0 * t * y / b],
            [k * x * y / (2.0 * b), 1.0 - k * x * x / (2.0 * b), -2.0 * t * x / b],
            [-y / b, x / b, -t * (x * x + y * y) / b],
            [0.0, 0.0, 1.0],
        ]
    )
    return coefficients @ frame


def killing_defect(space: BcvSpace, index: int, p: AmbientPoint, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """max |nabla_i X_j + nabla_j X_i| for the Killing field X_{index+1} at p."""
    base = np.asarray(p, dtype=float)

    def lowered(q: np.ndarray) -> np.ndarray:
        point = AmbientPoint(*q)
        return metric_cartesian(space, point, tol) @ killing_basis(space, point, tol)[index]

    d_low = np.empty((3, 3))
    for i in range(3):
        def along(s: float, i=i) -> np.ndarray:
            q = base.copy()
            q[i] += s
            return lowered(q)

        d_low[i] = diff_central(along, 0.0, order=1, h=tol.fd_first, h_min=tol.fd_min)
    gamma = christoffels(space, p, tol)
    cov = d_low - np.einsum("kij,k->ij", gamma, lowered(base))
    return float(np.max(np.abs(cov + cov.T)))
