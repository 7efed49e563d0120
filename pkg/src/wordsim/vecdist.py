"""Vector distances used on learned word representations."""

import numpy as np

from .errors import NumericError

__all__ = ["l1", "l2", "cosine", "VECTOR_METRICS", "vector_metric"]


def l1(a, b) -> float:
    return float(np.sum(np.abs(np.asarray(a) - np.asarray(b))))


def l2(a, b) -> float:
    return float(np.linalg.norm(np.asarray(a) - np.asarray(b)))


def cosine(a, b) -> float:
    """1 - cosine similarity; zero-norm inputs are a numeric abort."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        raise NumericError("cosine distance undefined for zero vectors")
    return float(1.0 - np.dot(a, b) / (na * nb))


VECTOR_METRICS = {"L1": l1, "L2": l2, "cosine": cosine}


def vector_metric(name: str):
    try:
        return VECTOR_METRICS[name]
    except KeyError:
        raise ValueError(
            f"unknown vector metric {name!r}; choose from {sorted(VECTOR_METRICS)}"
        ) from None
