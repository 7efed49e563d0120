"""Edit-distance family of string metrics.

All functions treat strings as sequences of Unicode scalar values and are
pure; empty strings are legal inputs unless stated otherwise.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Union

__all__ = [
    "CostTable",
    "UNIT_COSTS",
    "INFINITE",
    "levenshtein",
    "normalized_levenshtein",
    "damerau_levenshtein",
    "hamming",
    "lcs_length",
    "lcs_distance",
    "metric_lcs",
    "episode_distance",
]

SubstituteCost = Union[float, Callable[[str, str], float]]


@dataclass(frozen=True)
class CostTable:
    """Operation costs for the general edit distance.

    ``substitute`` may be a flat cost or a callable ``(a, b) -> cost``;
    substituting a character for itself always costs 0.
    """

    insert: float = 1.0
    delete: float = 1.0
    substitute: SubstituteCost = 1.0

    def __post_init__(self):
        if self.insert < 0 or self.delete < 0:
            raise ValueError("operation costs must be non-negative")
        if not callable(self.substitute) and self.substitute < 0:
            raise ValueError("operation costs must be non-negative")

    def sub_cost(self, a: str, b: str) -> float:
        if a == b:
            return 0.0
        if callable(self.substitute):
            return self.substitute(a, b)
        return self.substitute


UNIT_COSTS = CostTable()

#: Marker for an unreachable episode-distance target.
INFINITE = math.inf


def levenshtein(x: str, y: str, costs: CostTable = UNIT_COSTS) -> float:
    """Minimal total cost of an insert/delete/substitute script from x to y."""
    prev = [0.0] * (len(y) + 1)
    for j in range(1, len(y) + 1):
        prev[j] = prev[j - 1] + costs.insert
    for i in range(1, len(x) + 1):
        cur = [prev[0] + costs.delete] + [0.0] * len(y)
        for j in range(1, len(y) + 1):
            cur[j] = min(
                prev[j] + costs.delete,
                cur[j - 1] + costs.insert,
                prev[j - 1] + costs.sub_cost(x[i - 1], y[j - 1]),
            )
        prev = cur
    return prev[len(y)]


def normalized_levenshtein(x: str, y: str) -> float:
    """Unit-cost edit distance divided by max length; 0 when both empty."""
    if not x and not y:
        return 0.0
    return levenshtein(x, y) / max(len(x), len(y))


def damerau_levenshtein(x: str, y: str) -> int:
    """Restricted (optimal string alignment) Damerau-Levenshtein distance.

    Unit-cost insert/delete/substitute plus adjacent transposition; no
    substring is edited more than once.
    """
    m, n = len(x), len(y)
    d = [[0] * (n + 1) for _ in range(m + 1)]
    for i in range(m + 1):
        d[i][0] = i
    for j in range(n + 1):
        d[0][j] = j
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            cost = 0 if x[i - 1] == y[j - 1] else 1
            best = min(d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + cost)
            if (
                i > 1
                and j > 1
                and x[i - 1] == y[j - 2]
                and x[i - 2] == y[j - 1]
            ):
                best = min(best, d[i - 2][j - 2] + 1)
            d[i][j] = best
    return d[m][n]


def hamming(x: str, y: str) -> int:
    """Number of positions at which equal-length strings differ."""
    if len(x) != len(y):
        raise ValueError(
            f"hamming distance requires equal lengths, got {len(x)} and {len(y)}"
        )
    return sum(a != b for a, b in zip(x, y))


def lcs_length(x: str, y: str) -> int:
    """Length of the longest common subsequence."""
    prev = [0] * (len(y) + 1)
    for i in range(1, len(x) + 1):
        cur = [0] * (len(y) + 1)
        for j in range(1, len(y) + 1):
            if x[i - 1] == y[j - 1]:
                cur[j] = prev[j - 1] + 1
            else:
                cur[j] = max(prev[j], cur[j - 1])
        prev = cur
    return prev[len(y)]


def lcs_distance(x: str, y: str) -> int:
    """Insert/delete-only edit distance: |x| + |y| - 2*LCS."""
    return len(x) + len(y) - 2 * lcs_length(x, y)


def metric_lcs(x: str, y: str) -> float:
    """1 - LCS/max-length; a normalized metric in [0, 1]."""
    if not x and not y:
        return 0.0
    return 1.0 - lcs_length(x, y) / max(len(x), len(y))


def episode_distance(x: str, y: str) -> float:
    """Insertion-only distance: |y| - |x| if x is a subsequence of y, else INFINITE.

    Not symmetric by construction.
    """
    it = iter(y)
    if all(c in it for c in x):
        return float(len(y) - len(x))
    return INFINITE
