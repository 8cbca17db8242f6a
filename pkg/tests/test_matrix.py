import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tensorspec.errors import NonSquare, NotTriangular, SizeOverflow
from tensorspec.exact import ONE, ZERO, gq
from tensorspec.matrix import (
    ExactMatrix,
    Triangularized,
    _echelon,
    ascent_descent,
    column_basis,
    drazin_identities_hold,
    drazin_inverse,
    elementary_rep,
    elementary_tri,
    inverse,
    kron,
    kron_tri,
    nullspace,
    random_triangularized,
    rank,
    spectrum_of,
    transpose_tri,
    triangular_spectrum,
    validate_matrix_pair,
    vec,
)

from conftest import gqs

M = ExactMatrix
N2 = M([[0, 1], [0, 0]])
J21 = M.jordan(1, 2)


def test_kron_examples():
    assert kron(N2, M([[2]])) == M([[0, 2], [0, 0]])
    b = M([[1, 2], [3, 4]])
    assert kron(M.identity(2), b) == M.block_diag(b, b)
    assert triangular_spectrum(kron(J21, J21)) == [ONE] * 4


def test_kron_cap():
    with pytest.raises(SizeOverflow):
        kron(M.identity(13), M.identity(1))
    assert kron(M.identity(13), M.identity(1), cap=13).rows == 13


def test_elementary_examples():
    assert elementary_rep(M([[2]]), M([[3]])) == M([[6]])
    assert elementary_rep(M.identity(2), M.identity(3)) == M.identity(6)
    assert elementary_rep(N2, M([[1]])) == N2
    with pytest.raises(NonSquare):
        elementary_rep(M([[1, 2]]), M([[1]]))


def unit(n, m, i, j):
    return M([[ONE if (k, l) == (i, j) else ZERO for l in range(m)] for k in range(n)])


@given(st.lists(gqs, min_size=4, max_size=4), st.lists(gqs, min_size=9, max_size=9))
def test_elementary_rep_acts_as_u_to_aub(a_entries, b_entries):
    a = M([a_entries[:2], a_entries[2:]])
    b = M([b_entries[:3], b_entries[3:6], b_entries[6:]])
    e = elementary_rep(a, b)
    # column k of e is vec(A E_ij B) where E_ij is the k-th column-stacked unit
    for j in range(3):
        for i in range(2):
            k = j * 2 + i
            assert [e[r, k] for r in range(6)] == vec(a @ unit(2, 3, i, j) @ b)


def test_rank_examples():
    assert rank(M.zeros(3)) == 0
    assert rank(M.identity(4)) == 4
    assert rank(N2) == 1


@given(st.lists(st.lists(st.sampled_from([0, 1, -1, 2, gq(0, 1), gq(Fraction(1, 3), -1)]), min_size=4, max_size=4), min_size=1, max_size=5))
def test_rank_matches_field_elimination(rows):
    m = M(rows)
    r = rank(m)
    assert r == len(_echelon(m.tolist())[1])
    assert r + len(nullspace(m)) == m.cols
    for v in nullspace(m):
        image = m @ M([[x] for x in v])
        assert all(row[0].is_zero() for row in image.tolist())
    assert len(column_basis(m)) == r == rank(m.transpose())


def test_ascent_descent_examples():
    m = M.block_diag(M.jordan(0, 2), M([[1]]))
    ad = ascent_descent(m, 0)
    assert (ad.ascent, ad.descent) == (2, 2)
    assert ad.rank_chain == (3, 2, 1)
    ad = ascent_descent(M.identity(3), 1)
    assert ad.ascent == ad.descent == 1
    assert ascent_descent(kron(J21, J21), 1).pole_order == 3
    assert ascent_descent(J21, 5).pole_order == 0
    with pytest.raises(NonSquare):
        ascent_descent(M([[1, 2]]), 0)


def test_ascent_descent_without_triangular_shortcut():
    p = M([[1, 1], [1, 2]])
    m = p @ M.jordan(3, 2) @ inverse(p)
    assert not m.is_upper_triangular()
    assert ascent_descent(m, 3).pole_order == 2
    assert ascent_descent(m, 0).pole_order == 0


def test_drazin_examples():
    d = drazin_inverse(N2)
    assert d.d == M.zeros(2) and d.index == 2
    m = M([[2, 1], [0, 1]])
    d = drazin_inverse(m)
    assert d.d == inverse(m) and d.index == 0
    d = drazin_inverse(M([[1, 0], [0, 0]]))
    assert d.d == M([[1, 0], [0, 0]]) and d.index == 1


def test_triangular_spectrum_examples():
    assert triangular_spectrum(M.diag([1, 2, 2])) == [gq(1), gq(2), gq(2)]
    assert triangular_spectrum(M.jordan(5, 3)) == [gq(5)] * 3
    p = M([[1, 1], [0, 1]])
    t = M.diag([2, 3])
    assert triangular_spectrum(p @ t @ inverse(p), p, t) == [gq(2), gq(3)]
    with pytest.raises(NotTriangular):
        triangular_spectrum(M([[1, 0], [1, 1]]))
    with pytest.raises(NotTriangular):
        triangular_spectrum(M([[1, 0], [1, 1]]), p, t)


def test_validate_examples():
    r = validate_matrix_pair(M.jordan(0, 2), M([[2]]))
    assert r.ok and r.spectra["tensor"] == ["0"]
    r = validate_matrix_pair(M.diag([1, 2]), M.diag([3, 5]))
    assert r.ok and r.spectra["tensor"] == r.spectra["elementary"] == ["3", "5", "6", "10"]
    r = validate_matrix_pair(J21, J21)
    assert r.ok and r.pole_orders == {"tensor": {"1": 3}, "elementary": {"1": 3}}


def test_text_format_round_trip():
    m = M([[gq(Fraction(1, 2), Fraction(1, 3)), 0], [gq(0, -1), 7]])
    assert m.to_text() == "2 2\n1/2+1/3i 0\n-i 7\n"
    assert M.from_text(m.to_text()) == m
    with pytest.raises(ValueError):
        M.from_text("2 2\n1 2 3\n")


seeds = st.integers(0, 2**32)


@given(seeds, st.integers(1, 4), st.integers(1, 4))
def test_triangular_witnesses(seed, n, m):
    rng = random.Random(seed)
    a, b = random_triangularized(rng, n), random_triangularized(rng, m)
    products = sorted({x * y for x in spectrum_of(a) for y in spectrum_of(b)}, key=lambda z: z.sort_key())
    for tri in (kron_tri(a, b), elementary_tri(a, b), transpose_tri(b)):
        spectrum_of(tri)  # checks the declared similarity
    assert kron_tri(a, b).matrix == kron(a.matrix, b.matrix)
    assert elementary_tri(a, b).matrix == elementary_rep(a.matrix, b.matrix)
    assert sorted(set(spectrum_of(kron_tri(a, b))), key=lambda z: z.sort_key()) == products


@given(seeds, st.integers(1, 5))
def test_drazin_identities_on_random_matrices(seed, n):
    tri = random_triangularized(random.Random(seed), n)
    d = drazin_inverse(tri.matrix)
    assert drazin_identities_hold(tri.matrix, d.d, d.index)
    ranks = [rank(tri.matrix.power(k)) for k in range(n + 2)]
    assert all(x >= y for x, y in zip(ranks, ranks[1:]))
    assert ranks[d.index] == ranks[d.index + 1]
    assert d.index == 0 or ranks[d.index - 1] > ranks[d.index]


@given(seeds, st.integers(1, 3), st.integers(1, 3))
def test_pole_order_bound(seed, n, m):
    rng = random.Random(seed)
    r = validate_matrix_pair(random_triangularized(rng, n), random_triangularized(rng, m))
    assert r.ok, r.failures
