"""Projection onto the stable direction: phi, the path functionals and the Rauzy fractal.

``phi(w) = ell . P(w)`` projects a word onto the stable covector.  For a path
with labels ``(u_j, a_j, v_j)``

    psi_L = sum_j phi(Lambda^(j)(u_j)),    psi_R = phi(a_0 v_0) + sum_{j>=1} phi(Lambda^(j)(v_j)),

and since ``phi(Lambda^(j)(w)) = ell^(j) . P(w)`` each term only needs the
propagated covector ``ell^(j)``.  The Rauzy fractal is the set of ``psi_L``
values; its pieces ``R_1, R_2, R_3`` (by initial state) sit in three abutting
intervals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CapExceededError, OrderingError, PathError
from .indices import as_index_list
from .ipsa import (
    Path,
    PathTail,
    edges_into,
    path_count,
    path_for_shift,
    recover_path,
)
from .projection import StableCovector, ell_sequence
from .words import PointedWord, image_lengths

DEFAULT_CAP = 2_000_000


@dataclass(frozen=True)
class FractalPoint:
    """``value`` of a path functional, the initial state ``a0`` and an error radius.

    For a truncated path ``value`` is the partial sum over ``depth`` levels and
    ``err = ell_3^(depth)``; any infinite continuation adds between 0 and
    ``4/3 * err`` to ``psi_L``, because nonempty prefixes never occur on two
    consecutive levels and each contributes less than ``ell_3^(j)``.
    """

    value: float
    a0: int
    err: float
    depth: int

    def to_record(self) -> dict:
        return {"value": self.value, "a0": self.a0, "err": self.err, "depth": self.depth}


@dataclass(frozen=True)
class EndpointData:
    """The intervals ``J_3 = [0, -l2]``, ``J_2 = [-l2, -l1]``, ``J_1 = [-l1, l3 - l2]``."""

    j3: tuple[float, float]
    j2: tuple[float, float]
    j1: tuple[float, float]

    def interval(self, a: int) -> tuple[float, float]:
        return {1: self.j1, 2: self.j2, 3: self.j3}[a]

    @property
    def boundaries(self) -> tuple[float, float, float, float]:
        return (self.j3[0], self.j3[1], self.j2[1], self.j1[1])

    def to_record(self) -> dict:
        return {"j3": list(self.j3), "j2": list(self.j2), "j1": list(self.j1),
                "boundaries": list(self.boundaries)}


def phi(ell: StableCovector, w: str) -> float:
    """``ell . P(w)``."""
    l1, l2, l3 = ell.ell
    return w.count("1") * l1 + w.count("2") * l2 + w.count("3") * l3


def _dot(row, w: str) -> float:
    if not w:
        return 0.0
    return w.count("1") * row[0] + w.count("2") * row[1] + w.count("3") * row[2]


def _ells_until(n, ell: StableCovector, start: int, tol: float, factor: float) -> tuple[np.ndarray, int]:
    """Propagated covectors and the first level ``K >= start`` with ``factor * l3^(K) < tol``."""
    k_max = max(start, 8)
    while True:
        ells = ell_sequence(n, ell, k_max)
        hits = np.nonzero(factor * ells[start:, 2] < tol)[0]
        if hits.size:
            return ells, start + int(hits[0])
        extra = math.ceil(math.log2(max(factor * ells[-1, 2] / tol, 2.0))) + 2
        k_max += extra


def _psi(n, path: Path, ell: StableCovector, tol: float | None, side: str) -> FractalPoint:
    n = as_index_list(n)
    explicit = len(path.edges)
    zero_tail = (side == "L" and path.tail is PathTail.ALPHA) or (
        side == "R" and path.tail in (PathTail.BETA, PathTail.BETA_HAT)
    )
    if path.tail is PathTail.TRUNCATE:
        if explicit == 0:
            raise PathError("empty truncated path")
        ells = ell_sequence(n, ell, explicit)
        if tol is None:
            depth = explicit
        else:
            hits = np.nonzero(ells[:, 2] < tol)[0]
            if not hits.size:
                raise PathError(
                    f"insufficient path depth for tol {tol:.3e}: "
                    f"l3^({explicit}) = {ells[-1, 2]:.3e}"
                )
            depth = int(hits[0])
        err = float(ells[depth, 2])
    elif zero_tail:
        depth = max(explicit, 1)
        ells = ell_sequence(n, ell, depth)
        err = 0.0
    else:
        tol = 1e-10 * ell.span if tol is None else tol
        ells, depth = _ells_until(n, ell, max(explicit, 1), tol, 2.0)
        err = 2.0 * float(ells[depth, 2])
    full = path.extended(n, depth)
    total = 0.0
    for j in range(depth):
        e = full.edges[j]
        if side == "L":
            total += _dot(ells[j], e.u)
        elif j == 0:
            total += _dot(ells[0], str(e.letter) + e.v)
        else:
            total += _dot(ells[j], e.v)
    return FractalPoint(float(total), full.a0, err, depth)


def psi_L(n, path: Path, ell: StableCovector, tol: float | None = None) -> FractalPoint:
    """``sum_j phi(Lambda^(j)(u_j))`` over the path's prefixes.

    Truncated paths use all explicit edges when ``tol`` is None, otherwise the
    first ``K`` levels with ``l3^(K) < tol``.  Named tails are summed along
    their pattern until the remainder bound drops below ``tol``
    (default ``1e-10 * (l3 - l2)``); an alpha tail has only empty prefixes
    and contributes nothing.
    """
    return _psi(n, path, ell, tol, "L")


def psi_R(n, path: Path, ell: StableCovector, tol: float | None = None) -> FractalPoint:
    """``phi(a_0 v_0) + sum_{j>=1} phi(Lambda^(j)(v_j))``, the mirror of ``psi_L``."""
    return _psi(n, path, ell, tol, "R")


def fractal_values(n, depth: int, ell: StableCovector, cap: int = DEFAULT_CAP):
    """Arrays ``(values, a0)`` of ``psi_L`` over every path of length ``depth``, and ``err``.

    Paths are grouped by final state 1, 2, 3 and, within a group, ordered as
    in ``enumerate_finite_paths``.
    """
    n = as_index_list(n)
    if depth < 1:
        raise ValueError("depth must be >= 1")
    total = sum(path_count(n, depth, a) for a in (1, 2, 3))
    if total > cap:
        raise CapExceededError(f"{total} paths at depth {depth} exceed cap {cap}")
    ells = ell_sequence(n, ell, depth)
    values = {b: np.zeros(1) for b in (1, 2, 3)}
    starts = {b: np.array([b]) for b in (1, 2, 3)}
    for level in range(1, depth + 1):
        row = ells[level - 1]
        new_values, new_starts = {}, {}
        for b in (1, 2, 3):
            parts = [
                (values[e.letter] + _dot(row, e.u), starts[e.letter])
                for e in edges_into(n.nth(level), level, b)
            ]
            new_values[b] = np.concatenate([v for v, _ in parts])
            new_starts[b] = np.concatenate([s for _, s in parts])
        values, starts = new_values, new_starts
    vals = np.concatenate([values[b] for b in (1, 2, 3)])
    a0 = np.concatenate([starts[b] for b in (1, 2, 3)])
    return vals, a0, float(ells[depth, 2])


def fractal_sample(n, depth: int, ell: StableCovector, cap: int = DEFAULT_CAP) -> list[FractalPoint]:
    """One point per path of length ``depth``, tagged with its initial state."""
    vals, a0, err = fractal_values(n, depth, ell, cap)
    return [FractalPoint(float(v), int(a), err, depth) for v, a in zip(vals, a0)]


def endpoints(ell: StableCovector) -> EndpointData:
    """The abutting intervals holding the pieces ``R_3``, ``R_2``, ``R_1``."""
    l1, l2, l3 = ell.ell
    b = (0.0, -l2, -l1, l3 - l2)
    if not (b[0] < b[1] < b[2] < b[3]):
        raise OrderingError(f"endpoint order violated: {b}")
    return EndpointData((b[0], b[1]), (b[1], b[2]), (b[2], b[3]))


def depth_for_tol(n, ell: StableCovector, tol: float) -> int:
    """Smallest ``K`` with ``l3^(K) < tol``."""
    _, k = _ells_until(as_index_list(n), ell, 0, tol, 1.0)
    return k


def upsilon_plus(
    n,
    window,
    ell: StableCovector,
    *,
    depth: int | None = None,
    tol: float | None = None,
    method: str = "desubstitute",
) -> FractalPoint:
    """``psi_L`` of the path recovered from a one-sided sequence.

    ``window`` holds the start of the sequence right of its decimal point and
    any known left context (a plain string means no left context).  The path
    is recovered to ``depth`` levels, by default the first level with
    ``l3^(K) < tol``; the window has to be long enough for that.
    """
    n = as_index_list(n)
    if isinstance(window, str):
        window = PointedWord.parse(window)
    if depth is None:
        depth = depth_for_tol(n, ell, 1e-10 * ell.span if tol is None else tol)
    depth = max(depth, 1)
    path = recover_path(n, window, depth, method=method)
    return psi_L(n, path, ell)


def upsilon_plus_shift(n, j: int, ell: StableCovector) -> FractalPoint:
    """``psi_L`` of the path of ``S^j(alpha)``, exact apart from rounding.

    The path is the Dumont-Thomas expansion of ``j`` inside ``Lambda^(k)(3)``
    followed by the alpha tail, whose prefixes are all empty.
    """
    n = as_index_list(n)
    if j < 0:
        raise ValueError("shift must be nonnegative")
    k = 1
    while image_lengths(n, k)[k][2] <= j:
        k += 1
    head = path_for_shift(n, k, 3, j)
    return psi_L(n, Path(head.edges, PathTail.ALPHA), ell)
