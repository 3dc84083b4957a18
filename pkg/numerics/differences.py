# numerics/differences.py
from typing import Callable
import logging

from common.errors import DomainError, StencilOutOfDomain
from common.tolerances import DEFAULT_TOLERANCES


LOGGER = logging.getLogger("numerics")


def _central(f: Callable[[float], float], u: float, order: int, h: float) -> float:
    if order == 1:
        return (f(u + h) - f(u - h)) / (2.0 * h)
    return (f(u + h) - 2.0 * f(u) + f(u - h)) / (h * h)


def diff_central(
    f: Callable[[float], float],
    u: float,
    order: int = 1,
    h: float = None,
    h_min: float = DEFAULT_TOLERANCES.fd_min,
) -> float:
    """
    Central difference of order 1 or 2 with one Richardson level, error O(h^4).

    When f raises a DomainError on the stencil the step is halved until it
    drops below h_min, then StencilOutOfDomain is raised.
    """
    if order not in (1, 2):
        raise ValueError(f"Bad argument: order must be 1 or 2, got {order}")
    if h is None:
        h = DEFAULT_TOLERANCES.fd_first if order == 1 else DEFAULT_TOLERANCES.fd_second
    step = h
    while True:
        try:
            coarse = _central(f, u, order, step)
            fine = _central(f, u, order, step / 2.0)
            return (4.0 * fine - coarse) / 3.0
        except DomainError as e:
            step /= 2.0
            if step < h_min:
                raise StencilOutOfDomain(f"stencil at u={u} needs h < {h_min}: {e}") from e
            LOGGER.debug(f"diff_central: shrinking step to {step:.2e} at u={u}")
