import numpy as np
import numpy.typing as npt

from ehmin.models.domain import RealArray


def sphere(x: npt.ArrayLike) -> float | RealArray:
    """Σ x_i², minimum 0 at the origin; rows of a 2-d input are separate points"""
    x = np.asarray(x, dtype=np.float64)
    out = np.sum(x**2, axis=-1)
    return float(out) if out.ndim == 0 else out


def rastrigin(x: npt.ArrayLike) -> float | RealArray:
    """10 d + Σ (x_i² - 10 cos 2π x_i): a local minimum near every integer point"""
    x = np.asarray(x, dtype=np.float64)
    d = x.shape[-1]
    out = 10 * d + np.sum(x**2 - 10 * np.cos(2 * np.pi * x), axis=-1)
    return float(out) if out.ndim == 0 else out
