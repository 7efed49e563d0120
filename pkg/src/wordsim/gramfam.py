"""N-gram and statistical string metrics.

Profiles are multisets of contiguous length-n substrings. Dice, Jaccard
and the q-gram distance use raw (unpadded) grams; the Kondrak N-gram
distance head-pads with a reserved boundary character.
"""

import math
from collections import Counter

__all__ = [
    "ngram_profile",
    "qgram_distance",
    "kondrak_ngram_distance",
    "dice_coefficient",
    "jaccard_distance",
    "char_cosine_distance",
    "BOUNDARY",
]

#: Reserved boundary character for head-padding; must not occur in inputs.
BOUNDARY = "\x00"


def ngram_profile(s: str, n: int) -> Counter:
    """Multiset of all contiguous length-n substrings of s."""
    if n < 1:
        raise ValueError("gram length must be >= 1")
    return Counter(s[i : i + n] for i in range(len(s) - n + 1))


def qgram_distance(x: str, y: str, q: int = 2) -> int:
    """Ukkonen's q-gram distance: L1 distance between q-gram profiles.

    Not a metric: distinct strings with equal profiles get distance 0.
    """
    px = ngram_profile(x, q)
    py = ngram_profile(y, q)
    return sum(abs(px[g] - py[g]) for g in px.keys() | py.keys())


def kondrak_ngram_distance(x: str, y: str, n: int = 2) -> float:
    """N-gram edit distance with per-position gram dissimilarity costs.

    Aligns the strings with an edit DP where substituting position i of x
    for position j of y costs the fraction of differing characters between
    the head-padded n-grams ending at those positions. Result normalized
    to [0, 1] by max length. n=1 reduces to the normalized Levenshtein.
    """
    if n < 1:
        raise ValueError("gram length must be >= 1")
    if not x or not y:
        raise ValueError("kondrak n-gram distance is undefined for empty strings")
    pad = BOUNDARY * (n - 1)
    px, py = pad + x, pad + y
    m, k = len(x), len(y)
    d = [[0.0] * (k + 1) for _ in range(m + 1)]
    for i in range(1, m + 1):
        d[i][0] = float(i)
    for j in range(1, k + 1):
        d[0][j] = float(j)
    for i in range(1, m + 1):
        gx = px[i - 1 : i - 1 + n]
        for j in range(1, k + 1):
            gy = py[j - 1 : j - 1 + n]
            cost = sum(a != b for a, b in zip(gx, gy)) / n
            d[i][j] = min(d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + cost)
    return d[m][k] / max(m, k)


def dice_coefficient(x: str, y: str, n: int = 2) -> float:
    """Sorensen-Dice similarity 2*n_t / (n_x + n_y) over n-gram multisets.

    n_t counts shared grams with multiplicity (sum of per-gram minima).
    Returns a similarity in [0, 1]; callers wanting a distance use
    1 - dice_coefficient.
    """
    px = ngram_profile(x, n)
    py = ngram_profile(y, n)
    nx, ny = sum(px.values()), sum(py.values())
    if nx + ny == 0:
        raise ValueError("both strings are shorter than the gram length")
    nt = sum(min(px[g], py[g]) for g in px.keys() & py.keys())
    return 2.0 * nt / (nx + ny)


def jaccard_distance(x: str, y: str, n: int = 2) -> float:
    """1 - |grams(x) & grams(y)| / |grams(x) | grams(y)| over gram sets."""
    sx = set(ngram_profile(x, n))
    sy = set(ngram_profile(y, n))
    union = sx | sy
    if not union:
        raise ValueError("both strings are shorter than the gram length")
    return 1.0 - len(sx & sy) / len(union)


def char_cosine_distance(x: str, y: str) -> float:
    """1 - cosine similarity between character-count vectors.

    Counts every Unicode character observed in the pair, not just a-z.
    """
    cx, cy = Counter(x), Counter(y)
    if not cx or not cy:
        raise ValueError("cosine distance is undefined for empty strings")
    dot = sum(cx[c] * cy[c] for c in cx.keys() & cy.keys())
    nx = math.sqrt(sum(v * v for v in cx.values()))
    ny = math.sqrt(sum(v * v for v in cy.values()))
    return 1.0 - dot / (nx * ny)
