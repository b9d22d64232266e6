"""Gröbner bases and syzygies for submodules of R^l, R = F_p[y_1..y_n].

Module elements are stored sparsely as {(position, monomial): coeff}.
Pair selection follows the normal strategy (smallest lcm first, ties broken
by pair index) and reduction always uses the first eligible reducer, so the
output is a deterministic function of the input list.
"""

from __future__ import annotations

import heapq
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .arith import ConfigMismatchError, FpConfig
from .polyring import DEGREVLEX, MonomialOrder, Poly

Term = Tuple[int, tuple]


class ModuleVector:
    """An element of the free module R^length."""

    __slots__ = ("length", "n", "cfg", "_terms")

    def __init__(self, terms: Dict[Term, int], length: int, n: int, cfg: FpConfig):
        self.length = length
        self.n = n
        self.cfg = cfg
        self._terms = terms

    @classmethod
    def from_polys(cls, comps: Sequence[Poly]) -> ModuleVector:
        if not comps:
            raise ValueError("module vectors need at least one component")
        n, cfg = comps[0].n, comps[0].cfg
        terms = {}
        for pos, f in enumerate(comps):
            if f.n != n or f.cfg != cfg:
                raise ConfigMismatchError("components over different rings")
            for m, c in f.terms.items():
                terms[(pos, m)] = c
        return cls(terms, len(comps), n, cfg)

    @classmethod
    def zero(cls, length: int, n: int, cfg: FpConfig) -> ModuleVector:
        return cls({}, length, n, cfg)

    @classmethod
    def unit(cls, pos: int, length: int, n: int, cfg: FpConfig) -> ModuleVector:
        return cls({(pos, (0,) * n): 1}, length, n, cfg)

    @property
    def terms(self):
        return dict(self._terms)

    def components(self) -> Tuple[Poly, ...]:
        buckets: List[dict] = [{} for _ in range(self.length)]
        for (pos, m), c in self._terms.items():
            buckets[pos][m] = c
        return tuple(Poly(b, self.n, self.cfg, _clean=True) for b in buckets)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def _check(self, other: ModuleVector) -> None:
        if (self.length, self.n, self.cfg) != (other.length, other.n, other.cfg):
            raise ConfigMismatchError("module vectors of different shape")

    def __add__(self, other: ModuleVector) -> ModuleVector:
        self._check(other)
        return ModuleVector(_axpy(self._terms, other._terms, 1, None, self.cfg.p),
                            self.length, self.n, self.cfg)

    def __sub__(self, other: ModuleVector) -> ModuleVector:
        self._check(other)
        return ModuleVector(_axpy(self._terms, other._terms, -1, None, self.cfg.p),
                            self.length, self.n, self.cfg)

    def __neg__(self):
        p = self.cfg.p
        return ModuleVector({t: p - c for t, c in self._terms.items()},
                            self.length, self.n, self.cfg)

    def mul_poly(self, f: Poly) -> ModuleVector:
        out: Dict[Term, int] = {}
        for m, c in f.terms.items():
            out = _axpy(out, self._terms, c, m, self.cfg.p)
        return ModuleVector(out, self.length, self.n, self.cfg)

    def __eq__(self, other):
        if not isinstance(other, ModuleVector):
            return NotImplemented
        return ((self.length, self.n, self.cfg) == (other.length, other.n, other.cfg)
                and self._terms == other._terms)

    def __hash__(self):
        return hash((self.length, frozenset(self._terms.items())))

    def to_text(self, var: str = "y") -> str:
        return "<" + ", ".join(f.to_text(var) for f in self.components()) + ">"

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"ModuleVector({self.to_text()!r})"


def _axpy(acc: Dict[Term, int], vec: Dict[Term, int], c: int, shift, p: int) -> Dict[Term, int]:
    """Return acc + c * y^shift * vec as a new dict."""
    out = dict(acc)
    c %= p
    if not c:
        return out
    for (pos, m), v in vec.items():
        if shift is not None:
            m = tuple(a + b for a, b in zip(m, shift))
        t = (pos, m)
        s = (out.get(t, 0) + c * v) % p
        if s:
            out[t] = s
        else:
            out.pop(t, None)
    return out


class ModuleOrder:
    """Term-over-position order on module terms, lower position index winning ties.

    With ``eliminate=l`` every term in positions < l beats every term in
    positions >= l; this is the block order used for tagged syzygy runs.
    """

    def __init__(self, base: MonomialOrder = DEGREVLEX, eliminate: Optional[int] = None):
        self.base = base
        self.eliminate = eliminate
        self._cache: Dict[Term, tuple] = {}

    def key(self, term: Term) -> tuple:
        k = self._cache.get(term)
        if k is None:
            pos, m = term
            block = 0 if self.eliminate is None else int(pos < self.eliminate)
            k = (block, self.base.key(m), -pos)
            self._cache[term] = k
        return k

    def lead(self, terms: Dict[Term, int]) -> Term:
        return max(terms, key=self.key)

    def __repr__(self):
        return f"ModuleOrder({self.base.kind!r}, TOP, eliminate={self.eliminate})"


TOP = ModuleOrder()


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


class _Basis:
    """Working list of monic vectors with cached leading terms."""

    def __init__(self, order: ModuleOrder, p: int):
        self.order = order
        self.p = p
        self.vecs: List[Dict[Term, int]] = []
        self.leads: List[Term] = []

    def add(self, v: Dict[Term, int]) -> int:
        self.vecs.append(v)
        self.leads.append(self.order.lead(v))
        return len(self.vecs) - 1

    def find_reducer(self, term: Term, active) -> int:
        pos, m = term
        for i in active:
            lp, lm = self.leads[i]
            if lp == pos and _divides(lm, m):
                return i
        return -1


def _normal_form(v: Dict[Term, int], basis: _Basis, active: Sequence[int], full: bool = True):
    """Reduce v by the vectors basis.vecs[i], i in active, in list order."""
    order, p = basis.order, basis.p
    v = dict(v)
    done: Dict[Term, int] = {}
    while v:
        lt = order.lead(v)
        c = v[lt]
        i = basis.find_reducer(lt, active)
        if i < 0:
            if not full:
                done.update(v)
                return done
            done[lt] = c
            del v[lt]
            continue
        g = basis.vecs[i]
        shift = tuple(a - b for a, b in zip(lt[1], basis.leads[i][1]))
        v = _axpy(v, g, -c, shift, p)
    return done


def _monic(v: Dict[Term, int], order: ModuleOrder, p: int) -> Dict[Term, int]:
    c = v[order.lead(v)]
    if c == 1:
        return v
    inv = pow(c, -1, p)
    return {t: x * inv % p for t, x in v.items()}


def _s_vector(f: Dict[Term, int], lf: Term, g: Dict[Term, int], lg: Term, p: int):
    lcm = tuple(max(a, b) for a, b in zip(lf[1], lg[1]))
    sf = tuple(a - b for a, b in zip(lcm, lf[1]))
    sg = tuple(a - b for a, b in zip(lcm, lg[1]))
    # f and g are monic
    return _axpy(_axpy({}, f, 1, sf, p), g, -1, sg, p)


def _check_inputs(vs: Sequence[ModuleVector]) -> Tuple[int, int, FpConfig]:
    if not vs:
        raise ValueError("need at least one module vector")
    shape = (vs[0].length, vs[0].n, vs[0].cfg)
    for v in vs:
        if (v.length, v.n, v.cfg) != shape:
            raise ConfigMismatchError("module vectors of different shape")
    return shape


def reduce(f: ModuleVector, G: Sequence[ModuleVector], order: ModuleOrder = TOP) -> ModuleVector:
    """Fully reduced normal form of f modulo G (first eligible reducer wins)."""
    if not G:
        return f
    _check_inputs([f, *G])
    p = f.cfg.p
    basis = _Basis(order, p)
    for g in G:
        if g:
            basis.add(_monic(dict(g._terms), order, p))
    nf = _normal_form(f._terms, basis, range(len(basis.vecs)))
    return ModuleVector(nf, f.length, f.n, f.cfg)


def leading_term(v: ModuleVector, order: ModuleOrder = TOP) -> Tuple[int, tuple, int]:
    """(position, monomial, coefficient) of the leading term."""
    lt = order.lead(v._terms)
    return lt[0], lt[1], v._terms[lt]


def s_vector(f: ModuleVector, g: ModuleVector, order: ModuleOrder = TOP) -> Optional[ModuleVector]:
    """S-vector of f and g, or None when the leading positions differ."""
    p = f.cfg.p
    fm, gm = _monic(dict(f._terms), order, p), _monic(dict(g._terms), order, p)
    lf, lg = order.lead(fm), order.lead(gm)
    if lf[0] != lg[0]:
        return None
    return ModuleVector(_s_vector(fm, lf, gm, lg, p), f.length, f.n, f.cfg)


def buchberger(gens: Sequence[ModuleVector], order: ModuleOrder = TOP) -> List[ModuleVector]:
    """Reduced Gröbner basis of the submodule generated by ``gens``.

    >>> from weylcoh.arith import FpConfig
    >>> cfg = FpConfig(2)
    >>> y, z = Poly.var(1, 2, cfg), Poly.var(2, 2, cfg)
    >>> [str(g) for g in buchberger([ModuleVector.from_polys([f]) for f in (y, z, y + z)])]
    ['<y2>', '<y1>']
    """
    length, n, cfg = _check_inputs(gens)
    p = cfg.p
    key = order.key
    basis = _Basis(order, p)
    active: List[int] = []
    pairs: list = []

    def lcm_of(i, j):
        return (basis.leads[i][0],
                tuple(max(a, b) for a, b in zip(basis.leads[i][1], basis.leads[j][1])))

    def insert(v):
        v = _monic(v, order, p)
        new = basis.add(v)
        for i in active:
            if basis.leads[i][0] == basis.leads[new][0]:
                lcm = lcm_of(i, new)
                heapq.heappush(pairs, (key(lcm), i, new))
        active.append(new)

    for g in gens:
        v = _normal_form(g._terms, basis, active)
        if v:
            insert(v)

    while pairs:
        _, i, j = heapq.heappop(pairs)
        li, lj = basis.leads[i][1], basis.leads[j][1]
        if _coprime_skip(li, lj, length):
            continue
        s = _s_vector(basis.vecs[i], basis.leads[i], basis.vecs[j], basis.leads[j], p)
        v = _normal_form(s, basis, active)
        if v:
            insert(v)

    return _reduce_basis(basis, active, length, n, cfg)


def _coprime_skip(li, lj, length) -> bool:
    # Buchberger's first criterion holds only for ideals (length 1)
    return length == 1 and all(a == 0 or b == 0 for a, b in zip(li, lj))


def _reduce_basis(basis: _Basis, active, length, n, cfg) -> List[ModuleVector]:
    order, p = basis.order, basis.p
    keep = []
    for i in active:
        pos, m = basis.leads[i]
        redundant = False
        for j in active:
            if j == i:
                continue
            pj, mj = basis.leads[j]
            if pj == pos and _divides(mj, m) and (mj != m or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(i)
    out = []
    for i in keep:
        others = [j for j in keep if j != i]
        lt = basis.leads[i]
        head = {lt: basis.vecs[i][lt]}
        tail = {t: c for t, c in basis.vecs[i].items() if t != lt}
        tail = _normal_form(tail, basis, others)
        head.update(tail)
        out.append(_monic(head, order, p))
    out.sort(key=lambda v: order.key(order.lead(v)))
    return [ModuleVector(v, length, n, cfg) for v in out]


def is_groebner_basis(G: Sequence[ModuleVector], order: ModuleOrder = TOP) -> bool:
    """Every S-vector of G reduces to zero modulo G."""
    G = [g for g in G if g]
    for a in range(len(G)):
        for b in range(a + 1, len(G)):
            s = s_vector(G[a], G[b], order)
            if s is not None and reduce(s, G, order):
                return False
    return True


def combine(coeffs: Sequence[Poly], vecs: Sequence[ModuleVector]) -> ModuleVector:
    """sum_j coeffs[j] * vecs[j]."""
    length, n, cfg = _check_inputs(vecs)
    acc: Dict[Term, int] = {}
    for f, v in zip(coeffs, vecs):
        for m, c in f.terms.items():
            acc = _axpy(acc, v._terms, c, m, cfg.p)
    return ModuleVector(acc, length, n, cfg)


def module_syzygies(rows: Sequence[ModuleVector], base: MonomialOrder = DEGREVLEX
                    ) -> List[ModuleVector]:
    """Generators of {v in R^k : sum_j v_j rows_j = 0}.

    Runs Buchberger on (rows_j | e_j) with the first block eliminated and
    keeps the tag parts of basis elements whose first block vanished.
    """
    length, n, cfg = _check_inputs(rows)
    k = len(rows)
    order = ModuleOrder(base, eliminate=length)
    tagged = []
    for j, r in enumerate(rows):
        t = dict(r._terms)
        t[(length + j, (0,) * n)] = 1
        tagged.append(ModuleVector(t, length + k, n, cfg))
    gb = buchberger(tagged, order)
    syz = []
    for g in gb:
        if all(pos >= length for pos, _ in g._terms):
            syz.append(ModuleVector({(pos - length, m): c for (pos, m), c in g._terms.items()},
                                    k, n, cfg))
    for v in syz:
        if combine(v.components(), rows):
            raise AssertionError(f"syzygy {v} does not annihilate the input rows")
    return syz


def iter_s_vectors(G: Sequence[ModuleVector], order: ModuleOrder = TOP) -> Iterable[ModuleVector]:
    G = [g for g in G if g]
    for a in range(len(G)):
        for b in range(a + 1, len(G)):
            s = s_vector(G[a], G[b], order)
            if s is not None:
                yield s
