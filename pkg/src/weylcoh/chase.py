"""The filtration D_0 = A ⊆ D_1 ⊆ ... of the Weyl algebra and D_r ≅ M_q(A_r).

D_r consists of the operators that are linear over A_r = F_p[x^{p^r}]; in
the divided-power basis these are exactly the combinations of words
x^a d^[b] with every b_i < p^r.  Fixing the basis {x^a : a_i < p^r} of A
over A_r turns an element of D_r into a q x q matrix over A_r, q = p^{rn}.

Conventions: the basis is listed in colex order (a_1 varies fastest), and
matrices act on columns, d(e_beta) = sum_alpha M[alpha][beta] e_alpha, so
that matrix_of(u v) = matrix_of(u) @ matrix_of(v).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .arith import ConfigMismatchError, FpConfig, MultiIndex, binom_mod
from .polyring import Poly, frobenius_decompose, frobenius_recompose, FrobeniusCoords
from .weyl import WeylElement, weyl_apply, weyl_commutator

Level = int


def level_of(d: WeylElement) -> Level:
    """Smallest r with d in D_r, i.e. every divided-power index below p^r."""
    top = max((max(b) for _, b in d.terms if b), default=0)
    p = d.cfg.p
    r, bound = 0, 1
    while top >= bound:
        r += 1
        bound *= p
    return r


def commutes_with_frobenius(d: WeylElement, r: Level) -> bool:
    """True iff d commutes with multiplication by every x_i^{p^r}."""
    q = d.cfg.p ** r
    return all(
        weyl_commutator(d, WeylElement.x(i, d.n, d.cfg, q)).is_zero()
        for i in range(1, d.n + 1)
    )


def standard_basis(r: Level, n: int, cfg: FpConfig) -> List[MultiIndex]:
    """Exponents a with 0 <= a_i < p^r, colex order (first index fastest)."""
    if r < 0:
        raise ValueError("level must be non-negative")
    q = cfg.p ** r
    return [tuple(reversed(t)) for t in itertools.product(range(q), repeat=n)]


@dataclass(frozen=True)
class MatrixRep:
    """A q x q matrix over A_r standing for an element of D_r.

    Entries are polynomials in the Frobenius variables y_i = x_i^{p^r}.
    """

    level: Level
    n: int
    cfg: FpConfig
    entries: Tuple[Tuple[Poly, ...], ...]

    def __post_init__(self):
        q = self.size
        if len(self.entries) != q or any(len(row) != q for row in self.entries):
            raise ValueError(f"matrix at level {self.level} must be {q} x {q}")
        cfg, n = self.cfg, self.n
        for row in self.entries:
            for e in row:
                if e.n != n or (e.cfg is not cfg and e.cfg != cfg):
                    raise ConfigMismatchError("matrix entry over a different ring")

    @property
    def size(self) -> int:
        return self.cfg.p ** (self.level * self.n)

    @property
    def basis(self) -> List[MultiIndex]:
        return standard_basis(self.level, self.n, self.cfg)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Poly]], level: Level, n: int,
                  cfg: FpConfig) -> MatrixRep:
        return cls(level, n, cfg, tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, level: Level, n: int, cfg: FpConfig) -> MatrixRep:
        q = cfg.p ** (level * n)
        one, zero = Poly.one(n, cfg), Poly.zero(n, cfg)
        return cls.from_rows([[one if i == j else zero for j in range(q)] for i in range(q)],
                             level, n, cfg)

    def _check(self, other: MatrixRep) -> None:
        if (self.level, self.n, self.cfg) != (other.level, other.n, other.cfg):
            raise ConfigMismatchError("matrices from different levels or rings")

    def __add__(self, other: MatrixRep) -> MatrixRep:
        self._check(other)
        return MatrixRep(self.level, self.n, self.cfg, tuple(
            tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)))

    def __matmul__(self, other: MatrixRep) -> MatrixRep:
        self._check(other)
        q = self.size
        zero = Poly.zero(self.n, self.cfg)
        rows = []
        for i in range(q):
            row = []
            for j in range(q):
                acc = zero
                for k in range(q):
                    a, b = self.entries[i][k], other.entries[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            rows.append(tuple(row))
        return MatrixRep(self.level, self.n, self.cfg, tuple(rows))

    def to_text(self) -> str:
        lines = [f"level={self.level} q={self.size}"]
        for row in self.entries:
            cells = []
            for e in row:
                s = e.to_text("y")
                cells.append(f"({s})" if len(e) > 1 else s)
            lines.append(" ".join(cells))
        return "\n".join(lines)

    def __str__(self):
        return self.to_text()


def matrix_of(d: WeylElement, r: Level) -> MatrixRep:
    """Matrix of d in D_r acting on the basis {x^a : a_i < p^r} of A over A_r."""
    if level_of(d) > r:
        raise ValueError(f"operator has level {level_of(d)}, above the requested level {r}")
    basis = standard_basis(r, d.n, d.cfg)
    index = {a: i for i, a in enumerate(basis)}
    q = len(basis)
    zero = Poly.zero(d.n, d.cfg)
    cols = []
    for a in basis:
        image = weyl_apply(d, Poly.monomial(a, d.n, d.cfg))
        col = [zero] * q
        for key, g in frobenius_decompose(image, r).components.items():
            col[index[key]] = g
        cols.append(col)
    return MatrixRep(r, d.n, d.cfg, tuple(tuple(cols[j][i] for j in range(q)) for i in range(q)))


def operator_of(M: MatrixRep) -> WeylElement:
    """The unique d in D_r with matrix_of(d, r) == M.

    Writing d = sum_b f_b d^[b] with f_b in A and b_i < p^r, the image of a
    basis monomial is d(x^c) = sum_{b <= c} C(c, b) f_b x^(c-b).  The b = c
    coefficient is 1, so the f_c can be peeled off in order of |c|.
    """
    n, cfg, r = M.n, M.cfg, M.level
    p = cfg.p
    basis = M.basis
    q = len(basis)
    columns = [{} for _ in range(q)]
    for alpha, row in enumerate(M.entries):
        for beta, e in enumerate(row):
            if e:
                columns[beta][basis[alpha]] = e
    f: dict = {}
    for beta in sorted(range(q), key=lambda j: sum(basis[j])):
        c = basis[beta]
        rest = frobenius_recompose(FrobeniusCoords(r, n, cfg, columns[beta]))
        for b, fb in f.items():
            if b == c or any(bi > ci for bi, ci in zip(b, c)):
                continue
            k = 1
            for bi, ci in zip(b, c):
                k = k * binom_mod(ci, bi, p) % p
            if k:
                shift = tuple(ci - bi for ci, bi in zip(c, b))
                rest = rest - fb.mul_term(k, shift)
        if rest:
            f[c] = rest
    terms = {}
    for b, fb in f.items():
        for a, coeff in fb.terms.items():
            terms[(a, b)] = coeff
    d = WeylElement(terms, n, cfg, _clean=True)
    if level_of(d) > r:
        raise AssertionError("reconstructed operator left D_r; malformed matrix")
    return d
