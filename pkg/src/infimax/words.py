"""Words over {1, 2, 3}, the substitutions Lambda_n and the sequences alpha, beta, beta-hat.

Words are plain ``str`` objects over the characters ``"1"``, ``"2"``, ``"3"``;
Python's string order is exactly the prefix-extension lexicographic order.
Pointed words carry a decimal point position.

    >>> apply_substitution(1, "2")
    '311'
    >>> compose_apply([1, 1, 1], "3")
    '312311'
    >>> alpha_prefix("1*", 10)
    '3123113122'
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import WordTooLongError
from .indices import as_index_list

SYMBOLS = "123"
ALLOWED_PAIRS = frozenset({"11", "12", "13", "22", "23", "31"})
_FORBIDDEN_PAIR = re.compile("21|32|33")
_WORD_RE = re.compile("[123]*")

DEFAULT_MAX_LEN = 50_000_000


def check_word(w: str) -> str:
    if not isinstance(w, str) or not _WORD_RE.fullmatch(w):
        raise ValueError(f"not a word over {{1,2,3}}: {w!r}")
    return w


@dataclass(frozen=True)
class PointedWord:
    """A word with a decimal point; ``point`` symbols lie left of the point."""

    symbols: str
    point: int = 0

    def __post_init__(self):
        check_word(self.symbols)
        if not 0 <= self.point <= len(self.symbols):
            raise ValueError(f"point {self.point} outside [0, {len(self.symbols)}]")

    @classmethod
    def parse(cls, text: str) -> PointedWord:
        """``"31.12"`` -> symbols ``"3112"`` with point 2. No dot means point 0."""
        if text.count(".") > 1:
            raise ValueError(f"more than one decimal point in {text!r}")
        left, dot, right = text.partition(".")
        if not dot:
            return cls(text, 0)
        return cls(left + right, len(left))

    @classmethod
    def join(cls, left: str, right: str) -> PointedWord:
        return cls(left + right, len(left))

    @property
    def left(self) -> str:
        return self.symbols[: self.point]

    @property
    def right(self) -> str:
        return self.symbols[self.point :]

    def __len__(self) -> int:
        return len(self.symbols)

    def __str__(self) -> str:
        return f"{self.left}.{self.right}"


def _check_n(n: int) -> int:
    if int(n) != n or n < 1:
        raise ValueError(f"substitution index must be a positive integer, got {n!r}")
    return int(n)


@lru_cache(maxsize=None)
def _table(n: int) -> dict[int, str]:
    return {ord("1"): "2", ord("2"): "3" + "1" * (n + 1), ord("3"): "3" + "1" * n}


@lru_cache(maxsize=None)
def substitution_image(n: int, a: int) -> str:
    """``Lambda_n(a)`` for a single symbol ``a`` in {1, 2, 3}."""
    _check_n(n)
    return str(a).translate(_table(n))


def image_length(n: int, w: str) -> int:
    return w.count("1") + (n + 2) * w.count("2") + (n + 1) * w.count("3")


def apply_substitution(n: int, w, max_len: int = DEFAULT_MAX_LEN):
    """Apply ``Lambda_n`` to a word or a pointed word."""
    n = _check_n(n)
    if isinstance(w, PointedWord):
        left = apply_substitution(n, w.left, max_len)
        right = apply_substitution(n, w.right, max_len)
        return PointedWord.join(left, right)
    check_word(w)
    if image_length(n, w) > max_len:
        raise WordTooLongError(f"image of length {image_length(n, w)} exceeds cap {max_len}")
    return w.translate(_table(n))


def compose_apply(nlist, w, max_len: int = DEFAULT_MAX_LEN):
    """``Lambda_{n_1}(Lambda_{n_2}(... Lambda_{n_k}(w)))``; the last index acts first."""
    for n in reversed(list(nlist)):
        w = apply_substitution(n, w, max_len)
    return w


def image_lengths(n, k: int) -> list[tuple[int, int, int]]:
    """Exact lengths ``|Lambda^(i)(b)|`` for ``i = 0..k`` and ``b = 1, 2, 3``."""
    n = as_index_list(n)
    out = [(1, 1, 1)]
    for i in range(1, k + 1):
        m = n.nth(i)
        l1, l2, l3 = out[-1]
        out.append((l2, l3 + (m + 1) * l1, l3 + m * l1))
    return out


def alpha_prefix(n, min_len: int, max_len: int = DEFAULT_MAX_LEN) -> str:
    """The first ``min_len`` symbols of alpha.

    Expands only to the smallest level ``k`` with ``|Lambda^(k)(3)| >= min_len``;
    every such image is a prefix of alpha, so deeper levels cannot change it.
    """
    n = as_index_list(n)
    if min_len < 1:
        raise ValueError("min_len must be >= 1")
    if min_len > max_len:
        raise WordTooLongError(f"requested {min_len} symbols, cap is {max_len}")
    k, lengths = 0, (1, 1, 1)
    while lengths[2] < min_len:
        k += 1
        m = n.nth(k)
        l1, l2, l3 = lengths
        lengths = (l2, l3 + (m + 1) * l1, l3 + m * l1)
    word = "3"
    for i in range(k, 0, -1):
        # a prefix of the image only depends on a prefix of the preimage
        m = n.nth(i)
        word = apply_substitution(m, word[:min_len], max_len=min_len * (m + 2))
    return word[:min_len]


def beta_suffix(n, min_len: int, hat: bool = False, max_len: int = DEFAULT_MAX_LEN) -> str:
    """The last ``min_len`` symbols of the left-infinite sequence beta (or beta-hat).

    beta ends in ``Lambda^(j)(1)`` for every even ``j``, beta-hat for every odd ``j``.
    """
    n = as_index_list(n)
    if min_len < 1:
        raise ValueError("min_len must be >= 1")
    if min_len > max_len:
        raise WordTooLongError(f"requested {min_len} symbols, cap is {max_len}")
    k, lengths = 0, (1, 1, 1)
    while k % 2 != int(hat) or lengths[0] < min_len:
        k += 1
        m = n.nth(k)
        l1, l2, l3 = lengths
        lengths = (l2, l3 + (m + 1) * l1, l3 + m * l1)
    word = "1"
    for i in range(k, 0, -1):
        m = n.nth(i)
        word = apply_substitution(m, word[-min_len:], max_len=min_len * (m + 2))
    return word[-min_len:]


def check_allowed_pairs(w) -> bool:
    """True iff every adjacent pair of ``w`` is one of 11, 12, 13, 22, 23, 31."""
    if isinstance(w, PointedWord):
        w = w.symbols
    return _FORBIDDEN_PAIR.search(w) is None


def abelianize(w: str) -> np.ndarray:
    """Letter counts ``(|w|_1, |w|_2, |w|_3)``."""
    return np.array([w.count("1"), w.count("2"), w.count("3")], dtype=np.int64)


def factors(w: str, j: int) -> set[str]:
    if j < 1:
        raise ValueError("j must be >= 1")
    if j > len(w):
        raise ValueError(f"factor length {j} exceeds word length {len(w)}")
    return {w[i : i + j] for i in range(len(w) - j + 1)}


def factor_complexity(w: str, j: int) -> int:
    """Number of distinct length-``j`` factors of ``w``."""
    return len(factors(w, j))


def left_extensions(w: str, m: int) -> dict[str, set[str]]:
    """Map each length-``m`` factor occurring at a position >= 1 to its preceding symbols."""
    ext: dict[str, set[str]] = defaultdict(set)
    for i in range(1, len(w) - m + 1):
        ext[w[i : i + m]].add(w[i - 1])
    return dict(ext)
