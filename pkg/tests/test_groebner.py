import random

import numpy as np
import pytest

from weylcoh import fplinalg
from weylcoh.arith import FpConfig
from weylcoh.groebner import (
    TOP,
    ModuleOrder,
    ModuleVector,
    buchberger,
    combine,
    is_groebner_basis,
    iter_s_vectors,
    module_syzygies,
    reduce,
)
from weylcoh.polyring import LEX, Poly, monomials_up_to
from weylcoh.sampling import random_poly, random_vector

C2 = FpConfig(2)
Y = Poly.var(1, 2, C2)
Z = Poly.var(2, 2, C2)


def vec(*polys):
    return ModuleVector.from_polys(list(polys))


def test_reduce_examples():
    assert reduce(vec(Y * Y), [vec(Y)]).is_zero()
    assert reduce(vec(Y * Y + Z), [vec(Y * Y)]) == vec(Z)
    f = vec(Y + Z, Z)
    assert reduce(f, []) == f


def test_buchberger_examples():
    assert buchberger([vec(Y * Y), vec(Y * Z)]) == [vec(Y * Z), vec(Y * Y)]
    assert buchberger([vec(Y)]) == [vec(Y)]
    assert sorted(str(g) for g in buchberger([vec(Y), vec(Z), vec(Y + Z)])) == ["<y1>", "<y2>"]


def test_buchberger_makes_monic():
    c3 = FpConfig(3)
    y = Poly.var(1, 1, c3)
    (g,) = buchberger([ModuleVector.from_polys([y.scale(2) + 1])])
    assert g.components()[0] == y + 2


def test_syzygy_examples():
    (s,) = module_syzygies([vec(Y), vec(Z)])
    assert s in (vec(Z, Y), vec(Z, -Y))    # char 2: sign is moot
    one = Poly.one(2, C2)
    assert module_syzygies([vec(one)]) == []
    c3 = FpConfig(3)
    y = Poly.var(1, 1, c3)
    (s,) = module_syzygies([ModuleVector.from_polys([y]), ModuleVector.from_polys([y])])
    assert s.components() == (Poly.one(1, c3), Poly.constant(2, 1, c3))


def test_koszul_mod_3():
    c3 = FpConfig(3)
    y, z = Poly.var(1, 2, c3), Poly.var(2, 2, c3)
    (s,) = module_syzygies([ModuleVector.from_polys([y]), ModuleVector.from_polys([z])])
    a, b = s.components()
    assert (a * y + b * z).is_zero()
    assert {a, b} in ({z, -y}, {-z, y})


INSTANCES = [(p, n, seed) for p in (2, 3) for n in (1, 2) for seed in range(15)]


def _instance(p, n, seed):
    rng = random.Random(seed * 31 + p * 7 + n)
    cfg = FpConfig(p)
    length = rng.randint(1, 3)
    k = rng.randint(2, 4)
    rows = [random_vector(rng, length, n, cfg, 2, rng.randint(1, 3)) for _ in range(k)]
    return rng, cfg, [r for r in rows if r] or [random_vector(rng, length, n, cfg, 1, 1, 1.0)]


@pytest.mark.parametrize("p, n, seed", INSTANCES[::3])
@pytest.mark.parametrize("order", [TOP, ModuleOrder(LEX)])
def test_groebner_certificate_and_membership(p, n, seed, order):
    rng, cfg, rows = _instance(p, n, seed)
    G = buchberger(rows, order)
    assert is_groebner_basis(G, order)
    for s in iter_s_vectors(G, order):
        assert reduce(s, G, order).is_zero()
    # every input and every explicit combination is a member
    for r in rows:
        assert reduce(r, G, order).is_zero()
    for _ in range(15):
        coeffs = [random_poly(rng, n, cfg, 2, 2) for _ in rows]
        assert reduce(combine(coeffs, rows), G, order).is_zero()


def test_membership_soundness_200():
    rng = random.Random(2024)
    cfg = FpConfig(3)
    rows = [random_vector(rng, 2, 2, cfg, 2, 3, 1.0) for _ in range(3)]
    G = buchberger(rows)
    for _ in range(200):
        coeffs = [random_poly(rng, 2, cfg, 3, 3) for _ in rows]
        assert reduce(combine(coeffs, rows), G).is_zero()


def test_reduced_basis_is_interreduced():
    rng = random.Random(5)
    cfg = FpConfig(2)
    rows = [random_vector(rng, 2, 2, cfg, 2, 3) for _ in range(4)]
    rows = [r for r in rows if r]
    G = buchberger(rows)
    for i, g in enumerate(G):
        others = G[:i] + G[i + 1:]
        assert reduce(g, others) == g


def truncated_kernel(rows, n, bound, p):
    """Dense kernel of (v_j) -> sum v_j rows_j over coefficients of degree <= bound."""
    monos = list(monomials_up_to(n, bound))
    k = len(rows)
    unknowns = [(j, m) for j in range(k) for m in monos]
    images = []
    targets = {}
    for j, m in unknowns:
        img = rows[j].mul_poly(Poly.monomial(m, n, rows[j].cfg)).terms
        images.append(img)
        for t in img:
            targets.setdefault(t, len(targets))
    A = np.zeros((len(targets), len(unknowns)), dtype=np.int64)
    for col, img in enumerate(images):
        for t, c in img.items():
            A[targets[t], col] = c
    return fplinalg.nullspace(A, p), {u: i for i, u in enumerate(unknowns)}


def multiples_span(syz, n, bound, index, width):
    """Monomial multiples m * s of degree <= bound, as coordinate rows."""
    out = []
    for s in syz:
        for m in monomials_up_to(n, bound):
            t = s.mul_poly(Poly.monomial(m, n, s.cfg))
            if max(sum(mono) for _, mono in t.terms) > bound:
                continue
            v = np.zeros(width, dtype=np.int64)
            for (pos, mono), c in t.terms.items():
                v[index[(pos, mono)]] = c
            out.append(v)
    return np.array(out, dtype=np.int64).reshape(-1, width)


@pytest.mark.parametrize("p, n, seed", INSTANCES)
def test_syzygies_sound_and_complete(p, n, seed):
    _, cfg, rows = _instance(p, n, seed)
    syz = module_syzygies(rows)
    for s in syz:
        assert combine(s.components(), rows).is_zero()
    kernel, index = truncated_kernel(rows, n, 4, p)
    span = multiples_span(syz, n, 4, index, kernel.shape[1])
    assert fplinalg.same_span(span, kernel, p)
