"""Abelianization matrices, the Hilbert projective metric and the stable covector.

The stable covector ``ell`` of an index list is the limit direction of
``(A^(k))^{-T} w``.  Since ``(A^(k))^{-T} = TAU B_{n_1} ... B_{n_k} TAU`` with
nonnegative ``B_n``, the direction is found by pushing the positive cone
through the product ``B_{n_1} B_{n_2} ...`` and watching its Hilbert diameter
shrink.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConvergenceError, SignViolationError
from .indices import IndexList, TailKind, as_index_list

TAU = np.diag([1, 1, -1])


def abelianization_matrix(n: int) -> np.ndarray:
    """``A_n``; column ``j`` counts the letters of ``Lambda_n(j)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return np.array([[0, n + 1, n], [1, 0, 0], [0, 1, 1]], dtype=np.int64)


def b_matrix(n: int) -> np.ndarray:
    """``B_n = TAU A_n^{-T} TAU``, a nonnegative integer matrix."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return np.array([[0, 1, 1], [1, 0, 0], [0, n, n + 1]], dtype=np.int64)


def _positive(v, name: str) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if not np.all(v > 0):
        raise ValueError(f"{name} must have strictly positive entries, got {v}")
    return v


def hilbert_distance(v, w) -> float:
    """Hilbert projective distance ``log max_{i,j} (v_i w_j) / (v_j w_i)``."""
    v = _positive(v, "v")
    w = _positive(w, "w")
    r = v / w
    return float(math.log(r.max() / r.min()))


def cross_ratio_bound(m) -> float:
    """``d(M) = max a_ik a_jl / (a_il a_jk)`` over all index quadruples."""
    m = _positive(m, "matrix")
    num = m[:, None, :, None] * m[None, :, None, :]  # a_ik a_jl at [i, j, k, l]
    den = m[:, None, None, :] * m[None, :, :, None]  # a_il a_jk at [i, j, k, l]
    return float((num / den).max())


def birkhoff_coefficient(m) -> float:
    """Birkhoff contraction ratio ``(sqrt d - 1) / (sqrt d + 1)`` of a positive matrix."""
    root = math.sqrt(cross_ratio_bound(m))
    return (root - 1.0) / (root + 1.0)


@dataclass(frozen=True)
class StableCovector:
    """Unit covector in the open cone ``l1 < 0, l2 < 0 < l3`` with an error radius.

    ``err`` bounds the Euclidean distance to the true limit direction.
    """

    ell: tuple[float, float, float]
    err: float
    depth_used: int

    def __post_init__(self):
        object.__setattr__(self, "ell", tuple(float(x) for x in self.ell))
        l1, l2, l3 = self.ell
        if not (l1 < 0 and l2 < 0 and l3 > 0):
            raise SignViolationError(0, self.ell)

    @property
    def vector(self) -> np.ndarray:
        return np.array(self.ell)

    @property
    def l1(self) -> float:
        return self.ell[0]

    @property
    def l2(self) -> float:
        return self.ell[1]

    @property
    def l3(self) -> float:
        return self.ell[2]

    @property
    def span(self) -> float:
        """``l3 - l2``, the length of the whole Rauzy interval."""
        return self.ell[2] - self.ell[1]

    def to_record(self) -> dict:
        return {"l1": self.l1, "l2": self.l2, "l3": self.l3, "err": self.err,
                "depth_used": self.depth_used}


def _cone_diameter(m: np.ndarray) -> float:
    """Hilbert diameter of the three column directions; infinite until all positive."""
    if not np.all(m > 0):
        return math.inf
    cols = [m[:, j] for j in range(3)]
    return max(hilbert_distance(cols[i], cols[j]) for i in range(3) for j in range(i + 1, 3))


def _cone_center(m: np.ndarray) -> np.ndarray:
    cols = m / np.linalg.norm(m, axis=0)
    c = cols.sum(axis=1)
    return c / np.linalg.norm(c)


def _perron_direction(q: np.ndarray, max_iter: int = 100_000) -> np.ndarray:
    z = np.ones(3)
    for _ in range(max_iter):
        y = q @ z
        y /= y.sum()
        if np.all(z > 0) and hilbert_distance(y, z) < 1e-15:
            z = y
            break
        z = y
    return z / np.linalg.norm(z)


def _product(indices) -> np.ndarray:
    m = np.eye(3)
    for k in indices:
        m = m @ b_matrix(k)
        m /= m.max()
    return m


def stable_covector(n, tol: float = 1e-12, max_depth: int = 10_000) -> StableCovector:
    """Compute the stable covector of an index list with a certified error.

    The running product ``B_{n_1} ... B_{n_k}`` (sup-normalized) is extended
    until the Hilbert diameter of its column directions falls below ``tol/10``;
    the limit direction lies inside that cone.  For periodic and constant
    tails the direction itself is then taken from the Perron vector of the
    period product, which is exact up to rounding.
    """
    n = as_index_list(n)
    if tol <= 0:
        raise ValueError("tol must be positive")
    target = tol / 10.0
    limit = n.depth if n.tail is TailKind.TRUNCATED else max_depth
    m = np.eye(3)
    diam, k = math.inf, 0
    best, stalled = math.inf, 0
    patience = 50 + 3 * (len(n.period) or 1)
    while diam >= target and k < limit:
        k += 1
        m = m @ b_matrix(n.nth(k))
        m /= m.max()
        diam = _cone_diameter(m)
        if diam < best * 0.999:
            best, stalled = diam, 0
        else:
            stalled += 1
            if stalled > patience:
                break
    if diam >= target:
        reason = ("truncated index list exhausted" if n.tail is TailKind.TRUNCATED
                  else "cone diameter stalled above tolerance")
        raise ConvergenceError(reason, achieved=math.expm1(diam))
    err = math.expm1(diam)
    if n.tail is TailKind.TRUNCATED:
        z = _cone_center(m)
    else:
        z = _product(n.prefix) @ _perron_direction(_product(n.period))
        z /= np.linalg.norm(z)
    return StableCovector(tuple(-(TAU @ z)), err, k)


@lru_cache(maxsize=256)
def _ell_sequence(n: IndexList, ell: StableCovector, k_max: int) -> tuple:
    n.require(k_max)
    if k_max == 0:
        return (ell.ell,)
    deep = stable_covector(n.shift(k_max), tol=1e-13)
    zs = [None] * (k_max + 1)
    zs[k_max] = -(TAU @ deep.vector)
    shrink = [1.0] * (k_max + 1)
    # backward recursion: directions are contracted, so rounding does not grow
    for k in range(k_max, 0, -1):
        y = b_matrix(n.nth(k)) @ zs[k]
        shrink[k] = float(np.linalg.norm(y))
        zs[k - 1] = y / shrink[k]
    start = np.asarray(ell.ell)
    gap = float(np.linalg.norm(-(TAU @ zs[0]) - start))
    if gap > 1e3 * max(ell.err, 1e-12) + 1e-9:
        raise ValueError(f"covector does not belong to index list {n} (gap {gap:.2e})")
    out = [ell.ell]
    scale = float(np.linalg.norm(start))
    for k in range(1, k_max + 1):
        scale /= shrink[k]
        vec = -scale * (TAU @ zs[k])
        if not (vec[0] < 0 and vec[1] < 0 and vec[2] > 0):
            raise SignViolationError(k, vec)
        out.append(tuple(float(x) for x in vec))
    return tuple(out)


def ell_sequence(n, ell: StableCovector, k_max: int) -> np.ndarray:
    """Rows ``ell^(0..k_max)`` with ``ell^(k) = A_{n_k}^T ell^(k-1)``.

    Iterating that recurrence forwards amplifies rounding error along the
    expanding directions of ``A^T`` until the signs break down after a few
    dozen levels.  Here each ``ell^(k)`` is instead built from the stable
    direction of the shifted list ``(n_{k+1}, ...)``: the same vectors,
    computed by a backward recursion that contracts errors.  The scale
    factors follow from ``A_n^T TAU B_n z = TAU z``; a positive cone direction
    ``z`` corresponds to the covector ``-TAU z``.
    """
    n = as_index_list(n)
    if k_max < 0:
        raise ValueError("k_max must be nonnegative")
    return np.array(_ell_sequence(n, ell, int(k_max)))


def ell_sequence_forward(n, ell: StableCovector, k_max: int) -> np.ndarray:
    """Literal forward iteration ``ell^(k) = A_{n_k}^T ell^(k-1)``; fine for small ``k``."""
    n = as_index_list(n)
    rows = [np.asarray(ell.ell)]
    for k in range(1, k_max + 1):
        vec = abelianization_matrix(n.nth(k)).T @ rows[-1]
        if not (vec[0] < 0 and vec[1] < 0 and vec[2] > 0):
            raise SignViolationError(k, vec)
        rows.append(vec)
    return np.array(rows)
