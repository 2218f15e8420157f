"""The function s -> s * 2^s and its inverse, used to turn cost inequalities into lower bounds."""

import math

from scipy.optimize import brentq


def lambda_cap(s: float) -> float:
    if s <= 0:
        raise ValueError(f"lambda_cap needs s > 0, got {s}")
    return s * 2**s


def lambda_inv(t: float) -> float:
    """The s > 0 with s * 2^s = t; log t - log log t <= s <= log t."""
    if t < 2:
        raise ValueError(f"lambda_inv needs t >= 2, got {t}")
    high = math.log2(t)
    return brentq(lambda s: s * 2**s - t, 0.0, high, xtol=1e-14, rtol=1e-15)


def lambda_inv_shifted(t: float, a: float) -> float:
    """The s with (s + a) * 2^s = t."""
    if t < 2:
        raise ValueError(f"lambda_inv_shifted needs t >= 2, got {t}")
    return lambda_inv(t * 2**a) - a
