from abc import ABC, abstractmethod
from typing import Tuple

import numpy as np

from bcv.space import AmbientPoint, BcvSpace, CylPoint


class ISurfaceChart(ABC):
    """A helicoidal surface (u, t) -> (xi1(u), theta(u, t), xi2(u) + a theta(u, t))."""

    def __init__(self, space: BcvSpace, a: float, u_range: Tuple[float, float], t_range: Tuple[float, float]):
        self.space = space
        self.a = a
        self.u_range = (float(u_range[0]), float(u_range[1]))
        self.t_range = (float(t_range[0]), float(t_range[1]))

    @abstractmethod
    def cylindrical(self, u: float, t: float) -> CylPoint:
        pass

    @abstractmethod
    def profile_slope(self, u: float) -> float:
        """
        :return: xi2'(u); its sign fixes which side the profile normal points to
        """
        pass

    def cartesian(self, u: float, t: float) -> AmbientPoint:
        return self.cylindrical(u, t).to_cartesian()

    def position(self, u: float, t: float) -> np.ndarray:
        return np.asarray(self.cartesian(u, t), dtype=float)
