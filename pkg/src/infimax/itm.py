"""The interval translation map obtained by rescaling the Rauzy fractal into [0, 1].

    T(x) = x + 1 - mu1   on [0, mu1)
           x - mu1       on [mu1, mu2)
           x - mu2       on [mu2, 1]

with ``mu1 = -l2 / (l3 - l2)`` and ``mu2 = -l1 / (l3 - l2)``.  The orbit of 0
is coded by ``3`` on ``[0, mu1]``, ``2`` on ``(mu1, mu2]`` and ``1`` on
``(mu2, 1]``, and the resulting itinerary is alpha.

Parameters may be floats or ``fractions.Fraction``; with fractions the
attractor iteration is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import CapExceededError, OrderingError
from .indices import as_index_list
from .projection import StableCovector, stable_covector
from .words import alpha_prefix


@dataclass(frozen=True)
class ITMParams:
    mu1: float
    mu2: float

    def __post_init__(self):
        if not 0 < self.mu1 < self.mu2 < 1:
            raise OrderingError(f"need 0 < mu1 < mu2 < 1, got {self.mu1}, {self.mu2}")

    @property
    def translations(self) -> tuple:
        return (1 - self.mu1, -self.mu1, -self.mu2)


def itm_params_from_ell(ell: StableCovector) -> ITMParams:
    span = ell.l3 - ell.l2
    return ITMParams(-ell.l2 / span, -ell.l1 / span)


def rescale(value: float, ell: StableCovector) -> float:
    """Map a Rauzy-fractal value into the unit interval."""
    return value / (ell.l3 - ell.l2)


def itm_map(p: ITMParams, x):
    if not 0 <= x <= 1:
        raise ValueError(f"x = {x} outside [0, 1]")
    if x < p.mu1:
        return x + (1 - p.mu1)
    if x < p.mu2:
        return x - p.mu1
    return x - p.mu2


def symbol_of(p: ITMParams, x) -> str:
    if x <= p.mu1:
        return "3"
    if x <= p.mu2:
        return "2"
    return "1"


@dataclass(frozen=True)
class IntervalUnion:
    """Sorted, pairwise disjoint closed intervals; touching intervals are merged."""

    components: tuple[tuple, ...] = ()

    def __post_init__(self):
        merged: list[list] = []
        for lo, hi in sorted((lo, hi) for lo, hi in self.components):
            if lo > hi:
                raise ValueError(f"empty interval [{lo}, {hi}]")
            if merged and lo <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], hi)
            else:
                merged.append([lo, hi])
        object.__setattr__(self, "components", tuple((lo, hi) for lo, hi in merged))

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    @property
    def total_length(self):
        return sum(hi - lo for lo, hi in self.components)

    @property
    def endpoints(self) -> list:
        return [x for c in self.components for x in c]

    def contains(self, x, slack=0) -> bool:
        return any(lo - slack <= x <= hi + slack for lo, hi in self.components)

    def issubset(self, other: IntervalUnion, slack=0) -> bool:
        j = 0
        outer = other.components
        for lo, hi in self.components:
            while j < len(outer) and outer[j][1] + slack < lo:
                j += 1
            if j == len(outer) or not (outer[j][0] - slack <= lo and hi <= outer[j][1] + slack):
                return False
        return True

    def to_record(self, k: int | None = None) -> dict:
        rec = {"components": [[float(lo), float(hi)] for lo, hi in self.components],
               "total_length": float(self.total_length)}
        return rec if k is None else {"k": k, **rec}


def image_union(p: ITMParams, union: IntervalUnion) -> IntervalUnion:
    """Closure of ``T(union)``, one translated piece per branch met by each component."""
    mu1, mu2 = p.mu1, p.mu2
    pieces = []
    for a, b in union:
        if a < mu1:
            pieces.append((a + (1 - mu1), min(b, mu1) + (1 - mu1)))
        if b >= mu1 and a < mu2:
            pieces.append((max(a, mu1) - mu1, min(b, mu2) - mu1))
        if b >= mu2:
            pieces.append((max(a, mu2) - mu2, b - mu2))
    return IntervalUnion(tuple(pieces))


def attractor_approx(p: ITMParams, iters: int, cap: int = 10**6) -> list[IntervalUnion]:
    """``[Omega_0, ..., Omega_iters]`` with ``Omega_0 = [0, 1]`` and ``Omega_k = T(Omega_{k-1})``."""
    if iters < 1:
        raise ValueError("iters must be >= 1")
    one = type(p.mu1)(1)
    steps = [IntervalUnion(((one - one, one),))]
    for _ in range(iters):
        nxt = image_union(p, steps[-1])
        if len(nxt) > cap:
            raise CapExceededError(f"{len(nxt)} components exceed cap {cap}")
        steps.append(nxt)
    return steps


@dataclass(frozen=True)
class Itinerary:
    symbols: str
    boundary_flags: tuple[int, ...]
    orbit: tuple[float, ...] = field(repr=False, default=())

    def to_record(self) -> dict:
        return {"symbols": self.symbols, "flags": list(self.boundary_flags)}


def itinerary(p: ITMParams, x0, length: int, band: float = 1e-9) -> Itinerary:
    """Symbols of ``x0, T(x0), ...``; indices within ``band`` of ``mu1`` or ``mu2`` are flagged."""
    if not 0 <= x0 <= 1:
        raise ValueError(f"x0 = {x0} outside [0, 1]")
    x, symbols, flags, orbit = x0, [], [], []
    for i in range(length):
        orbit.append(x)
        symbols.append(symbol_of(p, x))
        if min(abs(x - p.mu1), abs(x - p.mu2)) < band:
            flags.append(i)
        if i + 1 < length:
            x = min(max(itm_map(p, x), 0), 1)
    return Itinerary("".join(symbols), tuple(flags), tuple(orbit))


@dataclass(frozen=True)
class ConjugacyReport:
    index_list: str
    length: int
    mu1: float
    mu2: float
    symbols: str
    expected: str
    mismatches: tuple[int, ...]
    flags: tuple[int, ...]

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def to_record(self) -> dict:
        return {"index_list": self.index_list, "length": self.length, "mu1": self.mu1,
                "mu2": self.mu2, "passed": self.passed, "symbols": self.symbols,
                "expected": self.expected, "mismatches": list(self.mismatches),
                "flags": list(self.flags)}


def conjugacy_check(n, length: int, tol: float = 1e-12, band: float = 1e-9) -> ConjugacyReport:
    """Compare the itinerary of 0 with the first ``length`` symbols of alpha.

    Flagged indices (orbit within ``band`` of a partition point) accept either
    coding; every other index must agree.
    """
    n = as_index_list(n)
    p = itm_params_from_ell(stable_covector(n, tol))
    it = itinerary(p, 0.0, length, band)
    expected = alpha_prefix(n, length)
    flagged = set(it.boundary_flags)
    bad = tuple(i for i, (s, t) in enumerate(zip(it.symbols, expected)) if s != t and i not in flagged)
    return ConjugacyReport(str(n), length, p.mu1, p.mu2, it.symbols, expected, bad, it.boundary_flags)


def near_zero_collisions(p: ITMParams, points, tol: float = 1e-9, near: float = 1e-9):
    """Pairs of points more than ``tol`` apart whose images agree within ``tol`` and lie within ``near`` of 0."""
    imaged = sorted((itm_map(p, x), x) for x in set(points) if 0 <= x <= 1)
    low = [(y, x) for y, x in imaged if y < near]
    pairs = []
    for i, (y, x) in enumerate(low):
        for y2, x2 in low[i + 1 :]:
            if y2 - y >= tol:
                break
            if abs(x2 - x) > tol:
                pairs.append(tuple(sorted((x, x2))))
    return sorted(set(pairs))


def minimal_period(word: str, max_period: int | None = None) -> int | None:
    """Smallest ``q <= max_period`` with ``word[i] == word[i + q]`` throughout, if any."""
    top = len(word) // 2 if max_period is None else max_period
    for q in range(1, top + 1):
        if word[q:] == word[:-q]:
            return q
    return None
