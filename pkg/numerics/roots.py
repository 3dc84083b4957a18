# numerics/roots.py
from typing import Callable, Union
import logging

import numpy as np
from scipy import optimize

from common.errors import NoBracket
from common.tolerances import DEFAULT_TOLERANCES


LOGGER = logging.getLogger("numerics")


def bracket_root(
    pred: Callable[[float], Union[bool, float]],
    lo: float,
    hi: float,
    tol: float = DEFAULT_TOLERANCES.bisection,
) -> float:
    """
    Locate a sign change of a real function or a flip of a boolean predicate on [lo, hi].

    Real functions go through Brent's method; predicates are bisected.
    """
    at_lo, at_hi = pred(lo), pred(hi)
    if isinstance(at_lo, (bool, np.bool_)):
        if bool(at_lo) == bool(at_hi):
            raise NoBracket(f"predicate has the same value {bool(at_lo)} at {lo} and {hi}")
        a, b = float(lo), float(hi)
        while abs(b - a) > tol:
            mid = 0.5 * (a + b)
            if bool(pred(mid)) == bool(at_lo):
                a = mid
            else:
                b = mid
        return 0.5 * (a + b)

    at_lo, at_hi = float(at_lo), float(at_hi)
    if at_lo == 0.0:
        return float(lo)
    if at_hi == 0.0:
        return float(hi)
    if np.sign(at_lo) == np.sign(at_hi):
        raise NoBracket(f"no sign change on [{lo}, {hi}]: f(lo)={at_lo:.3e} f(hi)={at_hi:.3e}")
    root = optimize.brentq(lambda x: float(pred(x)), min(lo, hi), max(lo, hi), xtol=tol)
    LOGGER.debug(f"bracket_root: root={root} on [{lo}, {hi}]")
    return float(root)
