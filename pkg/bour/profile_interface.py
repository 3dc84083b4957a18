from abc import ABC, abstractmethod
from typing import Tuple


class IMetricProfile(ABC):
    """The function U(u) > 0 of a natural metric du^2 + U(u)^2 dt^2."""

    @property
    @abstractmethod
    def domain(self) -> Tuple[float, float]:
        """
        :return: closed interval on which U is defined and positive
        """
        pass

    @abstractmethod
    def value(self, u: float) -> float:
        pass

    @abstractmethod
    def first(self, u: float) -> float:
        """
        :return: U'(u)
        """
        pass

    @abstractmethod
    def second(self, u: float) -> float:
        """
        :return: U''(u)
        """
        pass

    def __call__(self, u: float) -> float:
        return self.value(u)

    def gauss_curvature(self, u: float) -> float:
        """K = -U''/U, shared by every member of a Bour family."""
        return -self.second(u) / self.value(u)
