import math

import pytest

from genlambda.lam import lambda_series
from genlambda.modgroup import (
    SL2Mat,
    brace_mu,
    canonical_pair,
    cusp_count,
    cusp_reps,
    degree_dn,
    lift_to_sl2,
    nu,
    nu_pair,
    nu_statistics,
    transversal,
)


def test_brace_mu_examples():
    assert brace_mu(5, 7) == (2, -1)
    assert brace_mu(2, 4) == (2, 1)  # x = N/2 forces mu = +1
    assert brace_mu(0, 9) == (0, 1)


def test_brace_mu_reconstruction():
    for n in (3, 4, 5, 7, 8, 9, 11):
        for x in range(-2 * n, 2 * n):
            br, mu = brace_mu(x, n)
            assert 0 <= br <= n / 2
            assert (x - mu * br) % n == 0


def test_cusp_counts():
    assert len(cusp_reps(3)) == 4
    assert len(cusp_reps(4)) == 6
    assert len(cusp_reps(5)) == 12
    for n in range(3, 13):
        assert len(cusp_reps(n)) == cusp_count(n) == degree_dn(n) // n


def test_degree_dn():
    assert degree_dn(3) == 12
    assert degree_dn(4) == 24
    assert degree_dn(5) == 60
    assert degree_dn(7) == 168
    for n in range(3, 20):
        assert degree_dn(n) % 2 == 0


def test_lift_examples():
    assert lift_to_sl2(1, 0, 5).entries() == (1, 0, 0, 1)
    assert lift_to_sl2(0, 1, 7).entries() == (0, -1, 1, 0)
    m = lift_to_sl2(2, 3, 5)
    assert (m.a % 5, m.c % 5) == (2, 3)
    assert m.a * m.d - m.b * m.c == 1
    with pytest.raises(ValueError):
        lift_to_sl2(2, 2, 4)


def test_lift_covers_all_cusps():
    for n in (3, 4, 5, 6, 7, 9, 12):
        for a in range(n):
            for c in range(n):
                if math.gcd(math.gcd(a, c), n) == 1:
                    m = lift_to_sl2(a, c, n)
                    assert (m.a % n, m.c % n) == (a % n, c % n)


def test_transversal_sizes():
    assert len(transversal(3)) == 12
    assert len(transversal(4)) == 24
    assert len(transversal(7)) == 168


def test_transversal_covers_distinct_cosets():
    # representatives are pairwise inequivalent mod +-Gamma(N)
    for n in (3, 4, 5):
        seen = set()
        for cr in transversal(n):
            m = cr.matrix
            r = (m.a % n, m.b % n, m.c % n, m.d % n)
            rneg = tuple((-x) % n for x in r)
            key = min(r, rneg)
            assert key not in seen
            seen.add(key)


def test_nu_examples():
    for n in (3, 5, 9):
        assert nu(SL2Mat.identity(n)) == 1
        assert nu(SL2Mat.S(n)) == -1
    assert nu_pair(1, 1, 5) == 0


def test_nu_vs_series_small_levels():
    for n in (3, 4, 5):
        for cr in transversal(n):
            assert lambda_series(cr.matrix, n + 2).order() == nu(cr.matrix)


def test_sigma1_pair_relations():
    for n in (3, 4, 5, 7, 8):
        for rep in cusp_reps(n):
            if rep.cls == "S1" and rep.partner is not None:
                a_mat, p_mat = rep.matrix, rep.partner
                assert p_mat.a * p_mat.d - p_mat.b * p_mat.c == 1
                assert (p_mat.a % n, p_mat.c % n) == (a_mat.c % n, a_mat.a % n)
                for i in range(n):
                    t = SL2Mat.T(n, i)
                    assert nu(a_mat * t) == nu(a_mat) == -nu(p_mat * t)
            if rep.cls == "S2":
                for i in range(n):
                    assert nu(rep.matrix * SL2Mat.T(n, i)) == 0


def test_zero_pole_balance():
    for n in range(3, 10):
        vals = [nu_pair(r.a, r.c, n) for r in cusp_reps(n)]
        plus = sum(v for v in vals if v > 0)
        minus = -sum(v for v in vals if v < 0)
        ell, t = nu_statistics(n)
        assert plus == minus == ell
        assert t == sum(1 for v in vals if v < 0)
        assert t <= degree_dn(n) // n


def test_canonical_pair():
    assert canonical_pair(4, 3, 5) == (1, 2)
    assert canonical_pair(1, 2, 5) == (1, 2)


def test_convention_changes_matrices_not_classes():
    a = cusp_reps(5, "min")
    b = cusp_reps(5, "max")
    assert [r.pair for r in a] == [r.pair for r in b]
    assert any(
        ra.matrix.entries() != rb.matrix.entries() for ra, rb in zip(a, b)
    )
