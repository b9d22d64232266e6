"""Random polynomials, operators and module vectors for property checks."""

from __future__ import annotations

import random
from typing import Optional

from .arith import FpConfig
from .groebner import ModuleVector
from .polyring import Poly, monomials_up_to
from .weyl import WeylElement


def random_poly(rng: random.Random, n: int, cfg: FpConfig, degree: int = 3,
                terms: int = 4) -> Poly:
    monos = list(monomials_up_to(n, degree))
    return Poly({rng.choice(monos): rng.randrange(1, cfg.p) for _ in range(terms)}, n, cfg)


def random_weyl(rng: random.Random, n: int, cfg: FpConfig, degree: int = 4, terms: int = 4,
                max_level: Optional[int] = None) -> WeylElement:
    """Random operator with words of degree <= degree.

    With ``max_level`` every divided-power index stays below p^max_level.
    """
    cap = None if max_level is None else cfg.p ** max_level
    out = {}
    for _ in range(terms):
        e = [0] * (2 * n)
        budget = rng.randint(0, degree)
        for _ in range(budget):
            e[rng.randrange(2 * n)] += 1
        a, b = tuple(e[:n]), tuple(e[n:])
        if cap is not None:
            b = tuple(min(x, cap - 1) for x in b)
        out[(a, b)] = rng.randrange(1, cfg.p)
    return WeylElement(out, n, cfg)


def random_vector(rng: random.Random, length: int, n: int, cfg: FpConfig, degree: int = 2,
                  terms: int = 2, density: float = 0.7) -> ModuleVector:
    comps = []
    for _ in range(length):
        if rng.random() < density:
            comps.append(random_poly(rng, n, cfg, degree, terms))
        else:
            comps.append(Poly.zero(n, cfg))
    return ModuleVector.from_polys(comps)
