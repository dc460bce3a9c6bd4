"""The infinite prefix-suffix automaton (IPSA) and its paths.

Level ``k`` holds the three states 1, 2, 3.  For every decomposition
``Lambda_{n_k}(b) = u a v`` there is an edge from state ``a`` on level
``k - 1`` to state ``b`` on level ``k`` labelled ``(u, a, v)``.  An edge is
stored as ``(level, n, target, position)``; the label is derived from it.

A path ``Gamma_0, Gamma_1, ...`` maps to the pointed word

    Lambda^(k)(u_k) ... Lambda^(1)(u_1) u_0 . a_0 v_0 Lambda^(1)(v_1) ... Lambda^(k)(v_k)

which is a shift of ``Lambda^(k+1)(a_{k+1})``.  Finite paths ending at ``a``
are in bijection with the shifts of ``Lambda^(k)(a)``; ``path_for_shift`` and
``point_position`` are the two directions of that bijection.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache

from .errors import (
    AmbiguousRecoveryError,
    NoMatchError,
    PathError,
    WindowTooShortError,
)
from .indices import as_index_list
from .words import (
    PointedWord,
    check_allowed_pairs,
    _table,
    image_lengths,
    substitution_image,
)


class PathTail(Enum):
    """How a path continues beyond its explicit edges."""

    TRUNCATE = "truncate"
    ALPHA = "alpha"  # (e,3,1^n) forever
    BETA = "beta"  # (e,2,e) on odd indices, (31^n,1,e) on even ones
    BETA_HAT = "beta_hat"  # (e,2,e) on even indices, (31^n,1,e) on odd ones
    MAX = "max"  # alternating (3,1,1^n) and (e,2,e)


class TailClass(Enum):
    S1 = "S1"
    S1HAT = "S1hat"
    S2 = "S2"
    N = "N"


class SpecialPath(Enum):
    MIN = "min"
    MAX = "max"
    MIN1 = "min1"
    MIN2 = "min2"
    MAX2 = "max2"
    MAX3 = "max3"


def _fmt(w: str) -> str:
    return w if w else "ε"


@dataclass(frozen=True, order=True)
class Edge:
    level: int
    n: int
    target: int
    position: int

    def __post_init__(self):
        if self.level < 1 or self.n < 1:
            raise PathError(f"bad edge level/index: {self.level}, {self.n}")
        if self.target not in (1, 2, 3):
            raise PathError(f"bad target state {self.target}")
        if not 0 <= self.position < len(self.image):
            raise PathError(f"position {self.position} outside image {self.image}")

    @cached_property
    def image(self) -> str:
        return substitution_image(self.n, self.target)

    @cached_property
    def u(self) -> str:
        return self.image[: self.position]

    @cached_property
    def letter(self) -> int:
        """The source state ``a`` on the level below."""
        return int(self.image[self.position])

    @cached_property
    def v(self) -> str:
        return self.image[self.position + 1 :]

    @property
    def label(self) -> tuple[str, int, str]:
        return (self.u, self.letter, self.v)

    def __str__(self) -> str:
        return f"({_fmt(self.u)},{self.letter},{_fmt(self.v)})"


make_edge = lru_cache(maxsize=None)(Edge)


def edges_for_level(n_k: int, level: int = 1) -> list[Edge]:
    """All ``2 n_k + 4`` edges between level ``level - 1`` and ``level``."""
    return [
        make_edge(level, n_k, b, j)
        for b in (1, 2, 3)
        for j in range(len(substitution_image(n_k, b)))
    ]


def edges_into(n_k: int, level: int, b: int) -> list[Edge]:
    return [make_edge(level, n_k, b, j) for j in range(len(substitution_image(n_k, b)))]


def _tail_edge(tail: PathTail, level: int, m: int, prev_target: int | None) -> Edge:
    if tail is PathTail.ALPHA:
        return make_edge(level, m, 3, 0)
    if tail in (PathTail.BETA, PathTail.BETA_HAT):
        if prev_target == 2 or (prev_target is None and tail is PathTail.BETA_HAT):
            return make_edge(level, m, 1, 0)  # (e,2,e)
        return make_edge(level, m, 2, m + 1)  # (31^m,1,e)
    if tail is PathTail.MAX:
        if prev_target == 2:
            return make_edge(level, m, 1, 0)  # (e,2,e)
        return make_edge(level, m, 2, 1)  # (3,1,1^m)
    raise PathError("a truncated path has no continuation")


@dataclass(frozen=True)
class Path:
    """Explicit edges ``Gamma_0 .. Gamma_{d-1}`` plus a tail rule."""

    edges: tuple[Edge, ...] = ()
    tail: PathTail = PathTail.TRUNCATE

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))
        for i, e in enumerate(self.edges):
            if e.level != i + 1:
                raise PathError(f"edge {i} sits on level {e.level}, expected {i + 1}")
            if i and e.letter != self.edges[i - 1].target:
                raise PathError(
                    f"edge {i} starts at state {e.letter} but edge {i - 1} ends at "
                    f"{self.edges[i - 1].target}"
                )
        if not self.edges:
            return
        last, m = self.edges[-1].target, len(self.edges)
        if self.tail is PathTail.ALPHA and last != 3:
            raise PathError("an alpha tail must follow an edge ending at state 3")
        if self.tail in (PathTail.BETA, PathTail.BETA_HAT, PathTail.MAX) and last == 3:
            raise PathError(f"a {self.tail.value} tail cannot follow state 3")
        if self.tail in (PathTail.BETA, PathTail.BETA_HAT):
            # (e,2,e) must land on odd indices for BETA and even ones for BETA_HAT
            next_is_plain = last == 2
            odd = m % 2 == 1
            wanted = odd if self.tail is PathTail.BETA else not odd
            if next_is_plain != wanted:
                raise PathError(f"{self.tail.value} tail has the wrong parity after {m} edges")

    @property
    def depth(self) -> int:
        return len(self.edges)

    @property
    def a0(self) -> int:
        """Initial state, i.e. the symbol right of the decimal point."""
        if self.edges:
            return self.edges[0].letter
        return {PathTail.ALPHA: 3, PathTail.BETA: 1, PathTail.BETA_HAT: 2,
                PathTail.MAX: 1}.get(self.tail) or _missing_a0()

    def edge(self, i: int, n) -> Edge:
        """Edge ``Gamma_i``, generated from the tail rule when beyond the explicit ones."""
        if i < len(self.edges):
            return self.edges[i]
        if self.tail is PathTail.TRUNCATE:
            raise PathError(f"path has only {len(self.edges)} edges, asked for edge {i}")
        n = as_index_list(n)
        e = self.edges[-1] if self.edges else None
        for j in range(len(self.edges), i + 1):
            e = _tail_edge(self.tail, j + 1, n.nth(j + 1), e.target if e else None)
        return e

    def extended(self, n, depth: int) -> Path:
        """Same path with at least ``depth`` explicit edges."""
        if depth <= len(self.edges):
            return self
        if self.tail is PathTail.TRUNCATE:
            raise PathError(f"cannot extend a truncated path of depth {len(self.edges)}")
        n = as_index_list(n)
        edges = list(self.edges)
        while len(edges) < depth:
            prev = edges[-1].target if edges else None
            level = len(edges) + 1
            edges.append(_tail_edge(self.tail, level, n.nth(level), prev))
        return Path(tuple(edges), self.tail)

    def truncated(self, depth: int | None = None) -> Path:
        depth = len(self.edges) if depth is None else depth
        if depth > len(self.edges):
            raise PathError(f"path has only {len(self.edges)} explicit edges")
        return Path(self.edges[:depth], PathTail.TRUNCATE)

    def __str__(self) -> str:
        body = ",".join(str(e) for e in self.edges)
        return body if self.tail is PathTail.TRUNCATE else f"{body}+{self.tail.value}"


def _missing_a0():
    raise PathError("empty truncated path has no initial state")


def _trusted_path(edges: tuple[Edge, ...]) -> Path:
    p = object.__new__(Path)
    object.__setattr__(p, "edges", edges)
    object.__setattr__(p, "tail", PathTail.TRUNCATE)
    return p


def path_from_labels(n, labels, tail: PathTail = PathTail.TRUNCATE) -> Path:
    """Build a path from labels ``(u, a, v)`` (words as strings, ``a`` as int or str)."""
    n = as_index_list(n)
    edges = []
    for i, (u, a, v) in enumerate(labels):
        m = n.nth(i + 1)
        word = f"{u}{a}{v}"
        hits = [b for b in (1, 2, 3) if substitution_image(m, b) == word]
        if not hits:
            raise PathError(f"{word!r} is not an image of Lambda_{m}")
        edges.append(make_edge(i + 1, m, hits[0], len(u)))
    return Path(tuple(edges), tail)


def _check_against(n, path: Path) -> None:
    for i, e in enumerate(path.edges):
        if e.n != n.nth(i + 1):
            raise PathError(f"edge {i} uses Lambda_{e.n} but the index list has n_{i + 1} = {n.nth(i + 1)}")


def path_count(n, k: int, a: int) -> int:
    """``|Lambda^(k)(a)|``, the number of length-``k`` paths ending at ``a``."""
    return image_lengths(n, k)[k][a - 1]


def enumerate_finite_paths(n, k: int, a: int) -> list[Path]:
    """All length-``k`` paths whose last edge ends at state ``a``.

    Ordered lexicographically by edge positions read from the top level
    down, so the ``j``-th path has its decimal point at position ``j``.
    """
    n = as_index_list(n)
    if k < 1:
        raise ValueError("k must be >= 1")
    n.require(k)
    memo: dict[tuple[int, int], list[tuple[Edge, ...]]] = {}

    def walk(level: int, b: int) -> list[tuple[Edge, ...]]:
        if level == 0:
            return [()]
        key = (level, b)
        if key not in memo:
            memo[key] = [
                lower + (e,)
                for e in edges_into(n.nth(level), level, b)
                for lower in walk(level - 1, e.letter)
            ]
        return memo[key]

    return [_trusted_path(edges) for edges in walk(k, a)]


def point_position(n, path: Path) -> int:
    """Number of symbols left of the point in ``word_map(path)``, from lengths alone."""
    n = as_index_list(n)
    lengths = image_lengths(n, len(path.edges))
    total = 0
    for i, e in enumerate(path.edges):
        row = lengths[i]
        total += sum(row[int(c) - 1] for c in e.u)
    return total


def path_for_shift(n, k: int, a: int, j: int) -> Path:
    """The length-``k`` path ending at ``a`` whose word is ``S^j Lambda^(k)(.a)``.

    This is the Dumont-Thomas expansion of ``j``: at each level pick the
    block of ``Lambda_{n_level}(b)`` that contains the current offset.
    """
    n = as_index_list(n)
    lengths = image_lengths(n, k)
    if not 0 <= j < lengths[k][a - 1]:
        raise ValueError(f"shift {j} outside [0, {lengths[k][a - 1]})")
    edges: list[Edge] = [None] * k  # type: ignore[list-item]
    b = a
    for level in range(k, 0, -1):
        m = n.nth(level)
        image = substitution_image(m, b)
        for pos, c in enumerate(image):
            width = lengths[level - 1][int(c) - 1]
            if j < width:
                break
            j -= width
        edges[level - 1] = make_edge(level, m, b, pos)
        b = int(image[pos])
    return Path(tuple(edges))


def word_map(n, path: Path) -> PointedWord:
    """The pointed word of the explicit edges of ``path``."""
    n = as_index_list(n)
    if not path.edges:
        raise PathError("word map needs at least one edge")
    _check_against(n, path)
    edges = path.edges
    top = edges[-1]
    left, right = top.u, top.v
    # edges are validated, so translate directly instead of re-checking each word
    for i in range(len(edges) - 2, -1, -1):
        e = edges[i]
        table = _table(e.n)
        left = left.translate(table) + e.u
        right = e.v + right.translate(table)
    return PointedWord.join(left, str(edges[0].letter) + right)


_SEEDS = {
    SpecialPath.MIN: ((), PathTail.ALPHA),
    SpecialPath.MIN1: ((), PathTail.BETA),
    SpecialPath.MIN2: ((), PathTail.BETA_HAT),
    SpecialPath.MAX: ((), PathTail.MAX),
    SpecialPath.MAX2: (((1, 0),), PathTail.MAX),  # (e,2,e) first
    SpecialPath.MAX3: (((2, 0),), PathTail.MAX),  # (e,3,1^{n_1+1}) first
}


def special_path(kind: SpecialPath | str, n, depth: int) -> Path:
    """The extreme paths of the Rauzy fractal with ``depth`` explicit edges.

    MIN is the path of alpha, MIN1 of beta, MIN2 of beta-hat; MAX, MAX2 and
    MAX3 continue with the alternating ``(3,1,1^n), (e,2,e)`` pattern.
    """
    kind = SpecialPath(kind)
    n = as_index_list(n)
    if depth < 1:
        raise ValueError("depth must be >= 1")
    seed, tail = _SEEDS[kind]
    edges = tuple(make_edge(1, n.nth(1), b, j) for b, j in seed)
    return Path(edges, tail).extended(n, depth)


def classify_tail(path: Path) -> TailClass:
    if path.tail is PathTail.TRUNCATE:
        raise PathError("tail class of a truncated path is undefined")
    return {
        PathTail.ALPHA: TailClass.S2,
        PathTail.BETA: TailClass.S1,
        PathTail.BETA_HAT: TailClass.S1HAT,
        PathTail.MAX: TailClass.N,
    }[path.tail]


def sequence_window(n, path: Path, radius: int) -> PointedWord:
    """Symbols within ``radius`` of the decimal point of the path's sequence.

    A side that is finite (left for alpha tails, right for beta tails) is
    returned whole when shorter than ``radius``.
    """
    n = as_index_list(n)
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    left_finite = path.tail is PathTail.ALPHA
    right_finite = path.tail in (PathTail.BETA, PathTail.BETA_HAT)
    current = path if path.edges else path.extended(n, 1)
    while True:
        w = word_map(n, current)
        if (left_finite or len(w.left) >= radius) and (right_finite or len(w.right) >= radius):
            left = w.left[len(w.left) - radius :] if radius < len(w.left) else w.left
            return PointedWord.join(left, w.right[:radius])
        if current.tail is PathTail.TRUNCATE:
            raise PathError(
                f"path of depth {current.depth} does not cover radius {radius} around the point"
            )
        current = current.extended(n, current.depth + 2)


def _desubstitute(m: int, s: str, p: int) -> tuple[int, int, str, int]:
    """Undo one application of ``Lambda_m`` around position ``p`` of ``s``.

    Returns ``(target, position, s', p')``.  Blocks cut off at the left end
    are dropped; a trailing ``3 1^m`` is read as a complete ``Lambda_m(3)``
    (the final containment check catches the case where it was not).
    """
    size = len(s)
    if p >= size:
        raise WindowTooShortError("no symbol right of the decimal point")
    i = 0
    while i < size and s[i] == "1":
        i += 1
    if p < i:
        raise WindowTooShortError("the block containing the point starts left of the window")
    types: list[str] = []
    hit = None
    while i < size:
        start = i
        if s[i] == "2":
            kind, i = 1, i + 1
        else:
            j = i + 1
            while j < size and s[j] == "1" and j - i - 1 < m + 1:
                j += 1
            run = j - i - 1
            if j < size and s[j] == "1":
                raise NoMatchError(f"run of more than {m + 1} ones after a 3")
            if j < size or run == m + 1:
                if run not in (m, m + 1):
                    raise NoMatchError(f"block 3·1^{run} is not an image of Lambda_{m}")
                kind = 3 if run == m else 2
            elif run == m:
                kind = 3
            else:
                break
            i = j
        if start <= p < i:
            hit = (kind, p - start, len(types))
        types.append(str(kind))
    if hit is None:
        raise WindowTooShortError("the block containing the point runs past the window")
    kind, offset, index = hit
    return kind, offset, "".join(types), index


def recover_path(n, window, k: int, method: str = "desubstitute") -> Path:
    """The unique length-``k`` path whose word sits inside ``window`` at its point.

    ``method="desubstitute"`` peels off one substitution per level (linear
    time).  ``method="exhaustive"`` compares against every path of length
    ``k`` and is kept as an independent cross-check for small ``k``.
    """
    n = as_index_list(n)
    if isinstance(window, str):
        window = PointedWord.parse(window)
    if k < 1:
        raise ValueError("k must be >= 1")
    n.require(k)
    if not check_allowed_pairs(window.symbols):
        raise NoMatchError(f"window {window} contains a forbidden pair")
    if method == "exhaustive":
        return _recover_exhaustive(n, window, k)
    if method != "desubstitute":
        raise ValueError(f"unknown method {method!r}")
    s, p = window.symbols, window.point
    edges = []
    for level in range(1, k + 1):
        m = n.nth(level)
        target, position, s, p = _desubstitute(m, s, p)
        edges.append(make_edge(level, m, target, position))
    path = Path(tuple(edges))
    if not _fits(word_map(n, path), window):
        raise WindowTooShortError(f"window {window} does not contain a full level-{k} block")
    return path


def _fits(w: PointedWord, window: PointedWord) -> bool:
    return window.left.endswith(w.left) and window.right.startswith(w.right)


def _recover_exhaustive(n, window: PointedWord, k: int, lookahead: int = 4) -> Path:
    """Brute-force recovery with lookahead.

    A depth-``k`` word can fit a window in more than one way (``Lambda^(k)(3)``
    is a prefix of ``Lambda^(k)(2)``), so deeper paths are matched until all
    of them agree on their first ``k`` edges.
    """
    candidates: set[tuple[Edge, ...]] = set()
    for depth in range(k, k + lookahead + 1):
        if n.depth is not None and depth > n.depth:
            break
        matches = [
            path.edges[:k]
            for a in (1, 2, 3)
            for path in enumerate_finite_paths(n, depth, a)
            if _fits(word_map(n, path), window)
        ]
        if not matches:
            break
        candidates = set(matches)
        if len(candidates) == 1:
            return _trusted_path(candidates.pop())
    if not candidates:
        raise NoMatchError(f"no length-{k} path matches {window}")
    raise AmbiguousRecoveryError(f"{len(candidates)} length-{k} paths match {window}")
