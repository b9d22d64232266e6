import random

import pytest

from weylcoh.arith import FpConfig
from weylcoh.chase import (
    MatrixRep,
    commutes_with_frobenius,
    level_of,
    matrix_of,
    operator_of,
    standard_basis,
)
from weylcoh.polyring import Poly
from weylcoh.sampling import random_weyl
from weylcoh.weyl import WeylElement

W = WeylElement


def test_level_examples():
    c2 = FpConfig(2)
    assert level_of(W.x(1, 1, c2)) == 0
    assert level_of(W.zero(1, c2)) == 0
    assert level_of(W.d(1, 1, c2)) == 1
    assert level_of(W.d(1, 1, c2, 2)) == 2
    assert level_of(W.d(1, 1, c2, 3)) == 2
    assert level_of(W.d(1, 1, c2, 4)) == 3
    assert level_of(W.d(2, 2, FpConfig(3), 8)) == 2


def test_standard_basis_examples():
    c2 = FpConfig(2)
    assert standard_basis(1, 1, c2) == [(0,), (1,)]
    assert standard_basis(1, 2, c2) == [(0, 0), (1, 0), (0, 1), (1, 1)]
    for p in (2, 3, 5):
        assert standard_basis(0, 3, FpConfig(p)) == [(0, 0, 0)]


def test_matrix_examples():
    cfg = FpConfig(2)
    one, zero, y = Poly.one(1, cfg), Poly.zero(1, cfg), Poly.var(1, 1, cfg)
    assert matrix_of(W.x(1, 1, cfg), 1).entries == ((zero, y), (one, zero))
    assert matrix_of(W.d(1, 1, cfg), 1).entries == ((zero, one), (zero, zero))
    for r in range(3):
        assert matrix_of(W.one(2, cfg), r) == MatrixRep.identity(r, 2, cfg)


def test_matrix_rejects_high_level():
    with pytest.raises(ValueError):
        matrix_of(W.d(1, 1, FpConfig(2), 2), 1)


def test_operator_examples():
    cfg = FpConfig(2)
    one, zero = Poly.one(1, cfg), Poly.zero(1, cfg)
    M = MatrixRep.from_rows([[one, zero], [zero, zero]], 1, 1, cfg)
    d = operator_of(M)
    assert d == W.one(1, cfg) + W.x(1, 1, cfg) * W.d(1, 1, cfg)
    assert operator_of(MatrixRep.identity(2, 1, cfg)) == W.one(1, cfg)


def test_malformed_matrix_rejected():
    cfg = FpConfig(2)
    one = Poly.one(1, cfg)
    with pytest.raises(ValueError):
        MatrixRep.from_rows([[one]], 1, 1, cfg)


CASES = [(2, 1, 1), (2, 1, 2), (2, 2, 1), (2, 2, 2), (3, 1, 1), (3, 1, 2), (3, 2, 1)]


@pytest.mark.parametrize("p, n, r", CASES)
def test_matrix_is_algebra_homomorphism(p, n, r):
    rng = random.Random(p * 100 + n * 10 + r)
    cfg = FpConfig(p)
    for _ in range(12):
        u = random_weyl(rng, n, cfg, 4, max_level=r)
        v = random_weyl(rng, n, cfg, 4, max_level=r)
        Mu, Mv = matrix_of(u, r), matrix_of(v, r)
        assert matrix_of(u * v, r) == Mu @ Mv
        assert matrix_of(u + v, r) == Mu + Mv
        assert operator_of(Mu) == u
        assert len(Mu.basis) == Mu.size == p ** (r * n)


@pytest.mark.parametrize("p, n, r", CASES)
def test_matrix_to_operator_round_trip(p, n, r):
    # operator_of is also a left inverse: random matrices come back unchanged
    rng = random.Random(r + 17 * p + 5 * n)
    cfg = FpConfig(p)
    q = p ** (r * n)
    for _ in range(5):
        rows = [[Poly({(rng.randrange(3),) * n: rng.randrange(p)}, n, cfg) for _ in range(q)]
                for _ in range(q)]
        M = MatrixRep.from_rows(rows, r, n, cfg)
        assert matrix_of(operator_of(M), r) == M


@pytest.mark.parametrize("p, n", [(2, 1), (2, 2), (3, 1)])
def test_chain_compatibility(p, n):
    rng = random.Random(p + n)
    cfg = FpConfig(p)
    for _ in range(10):
        d = random_weyl(rng, n, cfg, 4, max_level=1)
        s = level_of(d)
        for r in range(s, 3):
            assert operator_of(matrix_of(d, r)) == d


@pytest.mark.parametrize("p, n", [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1)])
def test_level_matches_commutation_test(p, n):
    rng = random.Random(3 * p + n)
    cfg = FpConfig(p)
    for _ in range(40):
        d = random_weyl(rng, n, cfg, 6, rng.randint(1, 4))
        lv = level_of(d)
        for r in range(0, lv + 2):
            assert commutes_with_frobenius(d, r) == (lv <= r)


@pytest.mark.parametrize("p, n", [(2, 1), (2, 2), (3, 2)])
def test_filtration_closed_under_product(p, n):
    rng = random.Random(p * n)
    cfg = FpConfig(p)
    for _ in range(40):
        u, v = random_weyl(rng, n, cfg, 5), random_weyl(rng, n, cfg, 5)
        assert level_of(u * v) <= max(level_of(u), level_of(v))


def test_matrix_text():
    cfg = FpConfig(2)
    assert matrix_of(W.x(1, 1, cfg), 1).to_text() == "level=1 q=2\n0 y1\n1 0"
    M = matrix_of(W.x(1, 1, cfg, 3) + W.x(1, 1, cfg), 1)
    assert M.to_text().splitlines()[1] == "0 (y1^2 + y1)"
