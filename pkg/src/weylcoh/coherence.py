"""Finite presentations of one-sided ideals of A_n(F_p).

Generators d_1..d_k all lie in some D_r ≅ M_q(A_r).  A left syzygy
sum_j U_j M_j = 0 of matrices splits row by row, so the left syzygies over
D_r come from the R-module kernel of v -> v S, S the k matrices stacked
vertically, R = A_r.  Each kernel generator is placed in the first row of a
matrix, converted back to an operator, and checked exactly.  Right ideals
are handled through the transpose anti-involution.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import fplinalg
from .chase import Level, MatrixRep, level_of, matrix_of, operator_of
from .groebner import ModuleOrder, ModuleVector, buchberger, module_syzygies
from .polyring import DEGREVLEX, MonomialOrder, Poly
from .weyl import WeylElement, Word, weyl_transpose

Syzygy = Tuple[WeylElement, ...]


class PresentationError(RuntimeError):
    """An emitted syzygy failed exact verification (an internal bug)."""


@dataclass(frozen=True)
class Presentation:
    generators: Tuple[WeylElement, ...]
    syzygies: Tuple[Syzygy, ...]
    level: Level
    side: str = "left"

    def __post_init__(self):
        if self.side not in ("left", "right"):
            raise ValueError(f"side must be 'left' or 'right', not {self.side!r}")
        for s in self.syzygies:
            if len(s) != len(self.generators):
                raise ValueError("syzygy length does not match the number of generators")

    @property
    def k(self) -> int:
        return len(self.generators)

    def to_text(self) -> str:
        lines = [f"side={self.side} level={self.level} k={self.k}"]
        lines += [g.to_text() for g in self.generators]
        lines += ["(" + ", ".join(u.to_text() for u in s) + ")" for s in self.syzygies]
        return "\n".join(lines)

    def __str__(self):
        return self.to_text()


@dataclass(frozen=True)
class TruncatedKernel:
    bound: int
    basis: Tuple[Syzygy, ...]


@dataclass
class VerificationReport:
    level: Level
    side: str
    results: List[bool] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.results)


def lift_level(gens: Sequence[WeylElement]) -> Level:
    if not gens:
        raise ValueError("need at least one generator")
    return max(level_of(g) for g in gens)


def _check_gens(gens: Sequence[WeylElement]) -> None:
    if not gens:
        raise ValueError("need at least one generator")
    n, cfg = gens[0].n, gens[0].cfg
    for g in gens:
        if g.n != n or g.cfg != cfg:
            raise ValueError("generators live in different Weyl algebras")


def combination(coeffs: Sequence[WeylElement], gens: Sequence[WeylElement], side: str
                ) -> WeylElement:
    """sum_j u_j d_j (left) or sum_j d_j u_j (right)."""
    acc = WeylElement.zero(gens[0].n, gens[0].cfg)
    for u, d in zip(coeffs, gens):
        acc = acc + (u * d if side == "left" else d * u)
    return acc


def present_left_ideal(gens: Sequence[WeylElement], level: Optional[Level] = None,
                       order: MonomialOrder = DEGREVLEX) -> Presentation:
    """Generators of the left syzygies of ``gens``, computed inside D_r."""
    _check_gens(gens)
    gens = tuple(gens)
    lowest = lift_level(gens)
    r = lowest if level is None else level
    if r < lowest:
        raise ValueError(f"level {r} is below the generators' level {lowest}")
    n, cfg = gens[0].n, gens[0].cfg
    mats = [matrix_of(d, r) for d in gens]
    q = mats[0].size
    rows = [ModuleVector.from_polys(M.entries[alpha]) for M in mats for alpha in range(q)]
    zero = Poly.zero(n, cfg)
    syzygies = []
    for s in module_syzygies(rows, order):
        comps = s.components()
        tup = []
        for j in range(len(gens)):
            first = comps[j * q:(j + 1) * q]
            U = MatrixRep.from_rows([first] + [[zero] * q for _ in range(q - 1)], r, n, cfg)
            tup.append(operator_of(U))
        tup = tuple(tup)
        if combination(tup, gens, "left"):
            raise PresentationError(f"syzygy {tup} does not annihilate the generators")
        syzygies.append(tup)
    return Presentation(gens, tuple(syzygies), r, "left")


def present_right_ideal(gens: Sequence[WeylElement], level: Optional[Level] = None,
                        order: MonomialOrder = DEGREVLEX) -> Presentation:
    _check_gens(gens)
    gens = tuple(gens)
    left = present_left_ideal([weyl_transpose(g) for g in gens], level, order)
    syzygies = tuple(tuple(weyl_transpose(u) for u in s) for s in left.syzygies)
    for s in syzygies:
        if combination(s, gens, "right"):
            raise PresentationError(f"syzygy {s} does not annihilate the generators")
    return Presentation(gens, syzygies, left.level, "right")


def present_ideal(gens, side: str = "left", level: Optional[Level] = None) -> Presentation:
    if side == "left":
        return present_left_ideal(gens, level)
    if side == "right":
        return present_right_ideal(gens, level)
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def verify_presentation(pres: Presentation) -> VerificationReport:
    report = VerificationReport(pres.level, pres.side)
    for s in pres.syzygies:
        report.results.append(combination(s, pres.generators, pres.side).is_zero())
    return report


# truncated oracle

def words_up_to(n: int, bound: int) -> List[Word]:
    """All words x^a d^[b] with |a| + |b| <= bound, in a fixed order."""
    out = []
    for e in itertools.product(range(bound + 1), repeat=2 * n):
        if sum(e) <= bound:
            out.append((tuple(e[:n]), tuple(e[n:])))
    return out


def _product(w: WeylElement, d: WeylElement, side: str) -> WeylElement:
    return w * d if side == "left" else d * w


def truncated_syzygy_oracle(gens: Sequence[WeylElement], bound: int, side: str = "left"
                            ) -> TruncatedKernel:
    """All syzygies whose entries have degree <= bound, by dense elimination.

    >>> from weylcoh.arith import FpConfig
    >>> cfg = FpConfig(2)
    >>> ker = truncated_syzygy_oracle([WeylElement.d(1, 1, cfg)], 2)
    >>> sorted(str(s[0]) for s in ker.basis)
    ['d1', 'x1*d1']
    """
    _check_gens(gens)
    if bound < 0:
        raise ValueError("degree bound must be non-negative")
    n, cfg = gens[0].n, gens[0].cfg
    p = cfg.p
    words = words_up_to(n, bound)
    k = len(gens)
    images = []
    targets = {}
    for d in gens:
        for a, b in words:
            img = _product(WeylElement.word(a, b, n, cfg), d, side)
            images.append(img)
            for w in img.terms:
                targets.setdefault(w, len(targets))
    A = np.zeros((len(targets), len(images)), dtype=np.int64)
    for col, img in enumerate(images):
        for w, c in img.terms.items():
            A[targets[w], col] = c
    kernel = fplinalg.nullspace(A, p)
    basis = []
    nw = len(words)
    for vec in kernel:
        tup = []
        for j in range(k):
            terms = {words[i]: int(vec[j * nw + i]) for i in range(nw) if vec[j * nw + i]}
            tup.append(WeylElement(terms, n, cfg, _clean=True))
        basis.append(tuple(tup))
    return TruncatedKernel(bound, tuple(basis))


def _coordinates(tup: Syzygy, index: dict, width: int) -> np.ndarray:
    v = np.zeros(width, dtype=np.int64)
    for j, u in enumerate(tup):
        for w, c in u.terms.items():
            v[index[(j, w)]] = c
    return v


def syzygy_matrix(tuples: Sequence[Syzygy], n: int, bound: int) -> np.ndarray:
    """Coordinates of degree-<=bound syzygy tuples, one row each."""
    words = words_up_to(n, bound)
    k = len(tuples[0]) if tuples else 0
    index = {(j, w): j * len(words) + i for j in range(k) for i, w in enumerate(words)}
    width = len(index)
    if not tuples:
        return np.zeros((0, width), dtype=np.int64)
    return np.array([_coordinates(t, index, width) for t in tuples], dtype=np.int64)


def truncated_span(pres: Presentation, bound: int, slack: int = 0) -> List[Syzygy]:
    """Basis of the degree-<=bound part of span{w.s}.

    s runs over the emitted syzygies and w over basis words of degree at
    most bound + slack (w.s is s.w for right ideals).  Products may exceed
    the bound; only combinations landing inside it are returned.
    """
    if not pres.syzygies:
        return []
    n, cfg = pres.generators[0].n, pres.generators[0].cfg
    k = pres.k
    inside = {(j, w) for j in range(k) for w in words_up_to(n, bound)}
    rows = []
    for a, b in words_up_to(n, bound + slack):
        w = WeylElement.word(a, b, n, cfg)
        for s in pres.syzygies:
            row = {}
            for j, u in enumerate(s):
                for word, c in _product(w, u, pres.side).terms.items():
                    row[(j, word)] = c
            if row:
                rows.append(row)
    out = []
    for row in fplinalg.restrict_span(rows, inside, cfg.p):
        parts = [{} for _ in range(k)]
        for (j, word), c in row.items():
            parts[j][word] = c
        out.append(tuple(WeylElement(t, n, cfg, _clean=True) for t in parts))
    return out


@dataclass(frozen=True)
class OracleComparison:
    matched: bool
    slack: int
    span_dim: int
    oracle_dim: int


def compare_with_oracle(pres: Presentation, bound: int, max_slack: int = 12,
                        step: int = 2) -> OracleComparison:
    """Grow the multiplier degree until the truncated span equals the oracle.

    The span is always contained in the oracle kernel, so equality at any
    slack settles the comparison; ``matched`` is False if max_slack is hit.
    """
    n, p = pres.generators[0].n, pres.generators[0].cfg.p
    oracle = truncated_syzygy_oracle(pres.generators, bound, pres.side)
    width = pres.k * len(words_up_to(n, bound))
    B = (syzygy_matrix(oracle.basis, n, bound) if oracle.basis
         else np.zeros((0, width), dtype=np.int64))
    oracle_dim = fplinalg.rank(B, p)
    slack = 0
    while True:
        span = truncated_span(pres, bound, slack)
        A = syzygy_matrix(span, n, bound) if span else np.zeros((0, width), dtype=np.int64)
        dim = fplinalg.rank(A, p)
        if dim == oracle_dim and fplinalg.same_span(A, B, p):
            return OracleComparison(True, slack, dim, oracle_dim)
        if slack >= max_slack or not pres.syzygies:
            return OracleComparison(False, slack, dim, oracle_dim)
        slack += step


def _left_form(pres: Presentation) -> List[Syzygy]:
    if pres.side == "left":
        return list(pres.syzygies)
    return [tuple(weyl_transpose(u) for u in s) for s in pres.syzygies]


def syzygy_module_basis(pres: Presentation, level: Level,
                        order: MonomialOrder = DEGREVLEX) -> List[ModuleVector]:
    """Reduced Gröbner basis of the D_level-module spanned by the syzygies.

    Through D_L ≅ M_q(A_L) a tuple s corresponds to the block matrix
    [M(s_1) | ... | M(s_k)], and D_L s to the A_L-span of its rows.  Right
    presentations are transposed to left ones first.
    """
    if level < pres.level:
        raise ValueError("cannot compare below the presentation level")
    rows = []
    for s in _left_form(pres):
        mats = [matrix_of(u, level) for u in s]
        for alpha in range(mats[0].size):
            polys = [e for M in mats for e in M.entries[alpha]]
            if any(polys):
                rows.append(ModuleVector.from_polys(polys))
    if not rows:
        return []
    return buchberger(rows, ModuleOrder(order))


def same_syzygy_module(a: Presentation, b: Presentation) -> bool:
    """True iff both syzygy sets span the same module over D_L, L the larger level.

    Reduced Gröbner bases are unique, so the comparison is exact.
    """
    if a.side != b.side or a.generators != b.generators:
        raise ValueError("presentations of different ideals")
    level = max(a.level, b.level)
    ga = syzygy_module_basis(a, level)
    gb = syzygy_module_basis(b, level)
    return ga == gb
