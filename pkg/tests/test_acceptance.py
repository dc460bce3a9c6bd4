"""Acceptance criteria 1-12.  Run with ``pytest tests/test_acceptance.py``; one
PASS/FAIL line per criterion is printed in the terminal summary."""

from __future__ import annotations

import itertools
import time

import mpmath
import numpy as np
import pytest

from infimax.fractal import (
    endpoints,
    fractal_values,
    phi,
    psi_L,
    psi_R,
    upsilon_plus,
    upsilon_plus_shift,
)
from infimax.indices import IndexList
from infimax.ipsa import SpecialPath, enumerate_finite_paths, special_path, word_map
from infimax.itm import attractor_approx, conjugacy_check, itm_params_from_ell, near_zero_collisions
from infimax.projection import (
    abelianization_matrix,
    b_matrix,
    birkhoff_coefficient,
    cross_ratio_bound,
    ell_sequence,
    stable_covector,
)
from infimax.words import PointedWord, alpha_prefix, check_allowed_pairs, factor_complexity, left_extensions

criterion = pytest.mark.criterion


def lambda1_numpy(n: int) -> float:
    """Contracting eigenvalue of A_n from LAPACK."""
    eig = np.linalg.eigvals(abelianization_matrix(n).astype(float))
    real = eig[np.abs(eig.imag) < 1e-12].real
    return float(min(real[real > 0]))


def lambda1_mpmath(n: int) -> float:
    """Same eigenvalue as a root of x^3 - x^2 - (n+1) x + 1."""
    roots = mpmath.polyroots([1, -1, -(n + 1), 1], maxsteps=100, extraprec=60)
    return float(min(mpmath.re(r) for r in roots if abs(mpmath.im(r)) < 1e-20 and mpmath.re(r) > 0))


@criterion(1, "end-to-end conjugacy of the ITM itinerary with alpha")
@pytest.mark.parametrize("text", ["1*", "2*", "1,2;(3)"])
def test_c01_conjugacy(text):
    start = time.perf_counter()
    report = conjugacy_check(text, 200, band=1e-9)
    elapsed = time.perf_counter() - start
    assert report.mismatches == ()
    assert report.flags == ()
    assert report.symbols == alpha_prefix(text, 200)
    assert elapsed < 1.0


@criterion(2, "ITM parameters of constant lists are lambda1^2 and lambda1")
@pytest.mark.parametrize("n", [1, 2, 5])
def test_c02_parameters(n):
    lam = lambda1_numpy(n)
    assert abs(lam - lambda1_mpmath(n)) < 1e-13
    p = itm_params_from_ell(stable_covector(IndexList.constant(n)))
    assert abs(p.mu1 - lam**2) < 1e-10
    assert abs(p.mu2 - lam) < 1e-10


@criterion(3, "covector ratios of constant lists")
@pytest.mark.parametrize("n", [1, 2, 5])
def test_c03_covector_ratios(n):
    lam = lambda1_mpmath(n)
    ell = stable_covector(IndexList.constant(n))
    assert abs(ell.l1 / ell.l3 + lam / (1 - lam**2)) < 1e-10
    assert abs(ell.l2 / ell.l3 + lam**2 / (1 - lam**2)) < 1e-10


@criterion(4, "paths of length k biject with shifts of the level-k word")
def test_c04_bijection():
    start = time.perf_counter()
    checked = 0
    for k in range(1, 7):
        for values in itertools.product((1, 2, 3), repeat=k):
            n = IndexList.truncated(values)
            a_k = np.linalg.multi_dot([np.eye(3, dtype=np.int64)] + [abelianization_matrix(m) for m in values])
            for a in (1, 2, 3):
                paths = enumerate_finite_paths(n, k, a)
                size = int(a_k[:, a - 1].sum())
                assert len(paths) == size
                hits = np.zeros(size, dtype=np.int64)
                for path in paths:
                    hits[word_map(n, path).point] += 1
                assert np.all(hits == 1)
                checked += size
    elapsed = time.perf_counter() - start
    assert checked > 300_000
    assert elapsed < 5.0, f"{elapsed:.2f} s"


@criterion(5, "psi_L + psi_R is bounded by 2 l3^(10) on depth-10 paths")
@pytest.mark.parametrize("text", ["1*", "2*", "1,2;(3)"])
def test_c05_antisymmetry(text):
    ell = stable_covector(text)
    bound = 2 * ell_sequence(text, ell, 10)[10, 2]
    worst = 0.0
    for a in (1, 2, 3):
        for path in enumerate_finite_paths(text, 10, a):
            worst = max(worst, abs(psi_L(text, path, ell).value + psi_R(text, path, ell).value))
    assert worst <= bound


@criterion(6, "fractal confinement, extreme paths and series identities")
@pytest.mark.parametrize("text", ["1*", "2*", "1,2;(3,4)"])
def test_c06_confinement_and_extremes(text):
    ell = stable_covector(text)
    vals, a0, err = fractal_values(text, 12, ell)
    assert err == ell_sequence(text, ell, 12)[12, 2]
    ends = endpoints(ell)
    for a in (1, 2, 3):
        lo, hi = ends.interval(a)
        piece = vals[a0 == a]
        assert piece.size and np.all(piece >= lo - err) and np.all(piece <= hi + err)

    tol = 1e-12
    got = sorted(psi_L(text, special_path(kind, text, 1), ell, tol=tol).value for kind in SpecialPath)
    want = sorted([0.0, -ell.l2, -ell.l2, -ell.l1, -ell.l1, ell.l3 - ell.l2])
    assert np.allclose(got, want, atol=2 * tol)

    rows = ell_sequence(text, ell, 80)
    assert abs(-ell.l1 - rows[1::2, 2].sum()) < 1e-10
    assert abs(-ell.l2 - rows[2::2, 2].sum()) < 1e-10


@criterion(7, "sign pattern and halving of l3 along the covector sequence")
@pytest.mark.parametrize("text", ["1*", "2*", "10*", "1,2;(3,4)", "3,1,4,1,5;(9,2,6)", "10,1;(7,10)"])
def test_c07_sign_and_decay(text):
    rows = ell_sequence(text, stable_covector(text), 40)
    assert np.all(rows[:, 0] < 0) and np.all(rows[:, 1] < 0) and np.all(rows[:, 2] > 0)
    assert np.all(rows[1:, 2] / rows[:-1, 2] < 0.5)


@criterion(8, "Birkhoff bound for all triples in [1,10]^3")
def test_c08_birkhoff():
    start = time.perf_counter()
    worst_d, worst_tau = 0.0, 0.0
    for a, b, c in itertools.product(range(1, 11), repeat=3):
        m = (b_matrix(c) @ b_matrix(b) @ b_matrix(a)).astype(float)
        worst_d = max(worst_d, cross_ratio_bound(m))
        worst_tau = max(worst_tau, birkhoff_coefficient(m))
    assert worst_d <= 9.0
    assert worst_tau <= 0.5
    assert time.perf_counter() - start < 1.0


@criterion(9, "allowed pairs and factor complexity <= 3j")
@pytest.mark.parametrize("text", ["1*", "2*", "1,2;(3,4)", "3,1,4,1,5;(9,2,6)"])
def test_c09_language(text):
    s = alpha_prefix(text, 10_000)
    assert check_allowed_pairs(s)
    for j in range(1, 31):
        assert factor_complexity(s, j) <= 3 * j


@criterion(10, "Upsilon+ increments along shifts and order reversal")
@pytest.mark.parametrize("text", ["1*", "1,2;(3,4)"])
def test_c10_upsilon(text):
    ell = stable_covector(text)
    tol = 1e-6
    s = alpha_prefix(text, 25_000)
    window_vals = [upsilon_plus(text, PointedWord(s, j), ell, tol=tol).value for j in range(51)]
    exact_vals = [upsilon_plus_shift(text, j, ell).value for j in range(51)]
    for j in range(50):
        step = phi(ell, s[j])
        assert abs(window_vals[j + 1] - window_vals[j] - step) <= 2 * tol
        assert abs(exact_vals[j + 1] - exact_vals[j] - step) <= 1e-12
        assert abs(window_vals[j] - exact_vals[j]) <= 4 / 3 * tol

    # lexicographic order of the shifted sequences, decided on long windows
    window = 20_000
    long_s = alpha_prefix(text, 5_000 + window)
    picks = np.random.default_rng(0).choice(5_000, size=300, replace=False)
    order = sorted((int(j) for j in picks), key=lambda j: long_s[j : j + window])
    vals = [upsilon_plus_shift(text, j, ell).value for j in order]
    for (i, j), (u, v) in zip(zip(order, order[1:]), zip(vals, vals[1:])):
        assert long_s[i : i + window] != long_s[j : j + window]
        assert u > v


@criterion(11, "fractal embeds in the ITM attractor; only mu1, mu2 collide at 0")
@pytest.mark.parametrize("text", ["1*", "2*", "1,2;(3)"])
def test_c11_attractor(text):
    ell = stable_covector(text)
    p = itm_params_from_ell(ell)
    omegas = attractor_approx(p, 20)
    omega = omegas[-1]
    vals, _, err = fractal_values(text, 12, ell)
    slack = err / ell.span + 1e-12
    assert all(omega.contains(float(v), slack) for v in vals / ell.span)
    pairs = near_zero_collisions(p, omega.endpoints + [p.mu1, p.mu2], tol=1e-9)
    assert len(pairs) == 1
    assert np.allclose(pairs[0], (p.mu1, p.mu2), atol=1e-12)


@criterion(12, "length-20 factors: unique left extension except the alpha-initial one")
@pytest.mark.parametrize("text", ["1*", "2*", "1,2;(3)"])
def test_c12_left_extensions(text):
    s = alpha_prefix(text, 10_000)
    ext = left_extensions(s, 20)
    assert ext[s[:20]] == {"1", "2"}
    special = sorted(w for w, e in ext.items() if len(e) > 1)
    assert special == [s[:20]], f"{len(special)} left special factors of length 20"
