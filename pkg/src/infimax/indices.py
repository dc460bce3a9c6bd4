"""Index lists ``n = (n_1, n_2, ...)`` selecting which substitution acts at each level.

An index list is a finite prefix followed by a tail policy:

* ``TRUNCATED``: nothing beyond the prefix; asking for more is an error.
* ``PERIODIC``: the period repeats forever after the prefix.
* ``CONSTANT``: a period of length one, written ``c*`` in text form.

Text syntax::

    "1,2"          truncated after two indices
    "1*"           constant 1
    "2,5,1*"       prefix (2, 5) then constant 1
    "1,2;(3,4)"    prefix (1, 2) then 3, 4, 3, 4, ...
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .errors import IndexListError, InsufficientDepthError


class TailKind(Enum):
    TRUNCATED = "truncated"
    PERIODIC = "periodic"
    CONSTANT = "constant"


_PERIOD_RE = re.compile(r"^\((?P<body>[^()]*)\)$")


def _parse_int(token: str, text: str) -> int:
    token = token.strip()
    if not re.fullmatch(r"[+-]?\d+", token):
        raise IndexListError(f"bad index {token!r} in {text!r}")
    value = int(token)
    if value < 1:
        raise IndexListError(
            f"index {value} in {text!r} is out of range: indices must be >= 1"
        )
    return value


@dataclass(frozen=True)
class IndexList:
    prefix: tuple[int, ...] = ()
    tail: TailKind = TailKind.TRUNCATED
    period: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(int(x) for x in self.prefix))
        object.__setattr__(self, "period", tuple(int(x) for x in self.period))
        for value in self.prefix + self.period:
            if value < 1:
                raise IndexListError(f"index {value} is out of range: indices must be >= 1")
        if self.tail is TailKind.TRUNCATED and self.period:
            raise IndexListError("a truncated list cannot carry a period")
        if self.tail is TailKind.PERIODIC and not self.period:
            raise IndexListError("periodic tail needs a nonempty period")
        if self.tail is TailKind.CONSTANT and len(self.period) != 1:
            raise IndexListError("constant tail needs exactly one value")

    @classmethod
    def truncated(cls, values) -> IndexList:
        return cls(tuple(values), TailKind.TRUNCATED)

    @classmethod
    def constant(cls, value: int, prefix=()) -> IndexList:
        return cls(tuple(prefix), TailKind.CONSTANT, (value,))

    @classmethod
    def periodic(cls, period, prefix=()) -> IndexList:
        return cls(tuple(prefix), TailKind.PERIODIC, tuple(period))

    @classmethod
    def parse(cls, text: str) -> IndexList:
        """Parse the text syntax described in the module docstring."""
        raw = text.strip().replace(" ", "")
        if not raw:
            raise IndexListError("empty index list")
        if ";" in raw:
            head, _, rest = raw.partition(";")
            match = _PERIOD_RE.match(rest)
            if match is None or not match.group("body"):
                raise IndexListError(f"bad periodic tail {rest!r} in {text!r}")
            period = tuple(_parse_int(t, text) for t in match.group("body").split(","))
            prefix = tuple(_parse_int(t, text) for t in head.split(",")) if head else ()
            if any(t.endswith("*") for t in head.split(",")):
                raise IndexListError(f"constant and periodic tails combined in {text!r}")
            return cls.periodic(period, prefix)
        tokens = raw.split(",")
        if tokens[-1].endswith("*"):
            value = _parse_int(tokens[-1][:-1], text)
            prefix = tuple(_parse_int(t, text) for t in tokens[:-1])
            return cls.constant(value, prefix)
        return cls.truncated(_parse_int(t, text) for t in tokens)

    def __str__(self) -> str:
        head = ",".join(str(x) for x in self.prefix)
        if self.tail is TailKind.TRUNCATED:
            return head
        if self.tail is TailKind.CONSTANT:
            return f"{head},{self.period[0]}*" if head else f"{self.period[0]}*"
        return f"{head};({','.join(str(x) for x in self.period)})"

    @property
    def depth(self) -> int | None:
        """Number of available indices, or ``None`` when the list is infinite."""
        return len(self.prefix) if self.tail is TailKind.TRUNCATED else None

    @property
    def is_infinite(self) -> bool:
        return self.tail is not TailKind.TRUNCATED

    def nth(self, k: int) -> int:
        """The index ``n_k`` (1-based)."""
        if k < 1:
            raise IndexError("index lists are 1-based")
        if k <= len(self.prefix):
            return self.prefix[k - 1]
        if self.tail is TailKind.TRUNCATED:
            raise InsufficientDepthError(k, len(self.prefix))
        return self.period[(k - 1 - len(self.prefix)) % len(self.period)]

    def take(self, k: int) -> tuple[int, ...]:
        """``(n_1, ..., n_k)``."""
        if k < 0:
            raise ValueError("k must be nonnegative")
        if self.tail is TailKind.TRUNCATED and k > len(self.prefix):
            raise InsufficientDepthError(k, len(self.prefix))
        return tuple(self.nth(i) for i in range(1, k + 1))

    def require(self, k: int) -> None:
        if self.tail is TailKind.TRUNCATED and k > len(self.prefix):
            raise InsufficientDepthError(k, len(self.prefix))

    def shift(self, k: int = 1) -> IndexList:
        """The list ``(n_{k+1}, n_{k+2}, ...)``."""
        if k < 0:
            raise ValueError("k must be nonnegative")
        if k <= len(self.prefix):
            return IndexList(self.prefix[k:], self.tail, self.period)
        if self.tail is TailKind.TRUNCATED:
            raise InsufficientDepthError(k, len(self.prefix))
        r = (k - len(self.prefix)) % len(self.period)
        return IndexList((), self.tail, self.period[r:] + self.period[:r])

    def max_index(self, k: int | None = None) -> int:
        values = self.prefix + self.period if k is None else self.take(k)
        return max(values) if values else 0


def as_index_list(n) -> IndexList:
    """Coerce text, an ``IndexList`` or a finite sequence of ints."""
    if isinstance(n, IndexList):
        return n
    if isinstance(n, str):
        return IndexList.parse(n)
    return IndexList.truncated(n)
