"""Sparse multivariate polynomials over F_p.

A :class:`Poly` maps exponent tuples to nonzero residues.  The same class
serves for A = F_p[x_1..x_n] and for the Frobenius subring
A_r = F_p[x_1^{p^r}..x_n^{p^r}], whose generators are relabeled y_i; the
level is carried by :class:`FrobeniusCoords`, not by the ring.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from types import MappingProxyType
from typing import Dict, Iterable, Mapping

from .arith import (
    ConfigMismatchError,
    FpConfig,
    FpScalar,
    MultiIndex,
    check_multiindex,
)


@lru_cache(maxsize=1 << 16)
def degrevlex_key(m: MultiIndex) -> tuple:
    return (sum(m), tuple(-e for e in reversed(m)))


def lex_key(m: MultiIndex) -> tuple:
    return m


class MonomialOrder:
    """A multiplicative well-order on exponent tuples, x_1 > x_2 > ... > x_n.

    ``key(m)`` returns a sort key; larger keys are larger monomials.
    """

    _keys = {"degrevlex": degrevlex_key, "lex": lex_key}

    def __init__(self, kind: str = "degrevlex"):
        if kind not in self._keys:
            raise ValueError(f"unknown monomial order {kind!r}")
        self.kind = kind
        self.key = self._keys[kind]

    def compare(self, a: MultiIndex, b: MultiIndex) -> int:
        """Return 1, 0 or -1 as ``a`` is greater than, equal to or less than ``b``."""
        if len(a) != len(b):
            raise ValueError("monomials of different length")
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and other.kind == self.kind

    def __hash__(self):
        return hash(self.kind)

    def __repr__(self):
        return f"MonomialOrder({self.kind!r})"


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


def monomial_compare(a: MultiIndex, b: MultiIndex, order: MonomialOrder = DEGREVLEX) -> int:
    return order.compare(a, b)


def _format_monomial(m: MultiIndex, var: str) -> str:
    parts = []
    for i, e in enumerate(m, start=1):
        if e == 1:
            parts.append(f"{var}{i}")
        elif e > 1:
            parts.append(f"{var}{i}^{e}")
    return "*".join(parts)


def format_term(c: int, mono: str) -> str:
    if not mono:
        return str(c)
    if c == 1:
        return mono
    return f"{c}*{mono}"


class Poly:
    """Element of F_p[v_1..v_n] in canonical sparse form."""

    __slots__ = ("n", "cfg", "_terms", "_hash")

    def __init__(self, terms: Mapping[MultiIndex, int] | None, n: int, cfg: FpConfig,
                 *, _clean: bool = False):
        self.n = n
        self.cfg = cfg
        if _clean:
            self._terms = terms
        else:
            p = cfg.p
            clean: Dict[MultiIndex, int] = {}
            for m, c in (terms or {}).items():
                if isinstance(c, FpScalar):
                    if c.config != cfg:
                        raise ConfigMismatchError("coefficient from a different field")
                    c = c.value
                m = check_multiindex(m, n)
                c = (clean.get(m, 0) + c) % p
                if c:
                    clean[m] = c
                else:
                    clean.pop(m, None)
            self._terms = clean
        self._hash = None

    # constructors

    @classmethod
    def zero(cls, n: int, cfg: FpConfig) -> Poly:
        return cls({}, n, cfg, _clean=True)

    @classmethod
    def constant(cls, c: int, n: int, cfg: FpConfig) -> Poly:
        c %= cfg.p
        return cls({(0,) * n: c} if c else {}, n, cfg, _clean=True)

    @classmethod
    def one(cls, n: int, cfg: FpConfig) -> Poly:
        return cls.constant(1, n, cfg)

    @classmethod
    def monomial(cls, m: MultiIndex, n: int, cfg: FpConfig, c: int = 1) -> Poly:
        return cls({tuple(m): c}, n, cfg)

    @classmethod
    def var(cls, i: int, n: int, cfg: FpConfig) -> Poly:
        """The i-th variable, 1-based."""
        m = [0] * n
        m[i - 1] = 1
        return cls({tuple(m): 1}, n, cfg, _clean=True)

    # accessors

    @property
    def terms(self) -> Mapping[MultiIndex, int]:
        return MappingProxyType(self._terms)

    def coefficient(self, m: MultiIndex) -> FpScalar:
        return FpScalar(self._terms.get(tuple(m), 0), self.cfg)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def degree(self) -> int:
        return max((sum(m) for m in self._terms), default=-1)

    def leading_monomial(self, order: MonomialOrder = DEGREVLEX) -> MultiIndex:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self._terms, key=order.key)

    def sorted_terms(self, order: MonomialOrder = DEGREVLEX):
        return sorted(self._terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    # arithmetic

    def _check(self, other: Poly) -> None:
        if self.cfg != other.cfg or self.n != other.n:
            raise ConfigMismatchError(
                f"cannot combine polynomials over F_{self.cfg.p}[{self.n} vars] "
                f"and F_{other.cfg.p}[{other.n} vars]")

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, FpScalar):
            if other.config != self.cfg:
                raise ConfigMismatchError("scalar from a different field")
            return Poly.constant(other.value, self.n, self.cfg)
        if isinstance(other, int) and not isinstance(other, bool):
            return Poly.constant(other, self.n, self.cfg)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.cfg.p
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = (out.get(m, 0) + c) % p
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly(out, self.n, self.cfg, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        p = self.cfg.p
        return Poly({m: p - c for m, c in self._terms.items()}, self.n, self.cfg, _clean=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def scale(self, c: int) -> Poly:
        p = self.cfg.p
        c %= p
        if not c:
            return Poly.zero(self.n, self.cfg)
        return Poly({m: v * c % p for m, v in self._terms.items()}, self.n, self.cfg, _clean=True)

    def mul_term(self, c: int, m: MultiIndex) -> Poly:
        p = self.cfg.p
        c %= p
        if not c:
            return Poly.zero(self.n, self.cfg)
        out = {}
        for k, v in self._terms.items():
            out[tuple(a + b for a, b in zip(k, m))] = v * c % p
        return Poly(out, self.n, self.cfg, _clean=True)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.cfg.p
        out: Dict[MultiIndex, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = (out.get(m, 0) + c1 * c2) % p
        return Poly({m: c for m, c in out.items() if c}, self.n, self.cfg, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = Poly.one(self.n, self.cfg)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.cfg == other.cfg and self.n == other.n and self._terms == other._terms
        if isinstance(other, (int, FpScalar)) and not isinstance(other, bool):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.cfg.p, self.n, frozenset(self._terms.items())))
        return self._hash

    def to_text(self, var: str = "x") -> str:
        """Canonical text: terms in decreasing degrevlex order, ``0`` for zero."""
        if not self._terms:
            return "0"
        return " + ".join(format_term(c, _format_monomial(m, var))
                          for m, c in self.sorted_terms(DEGREVLEX))

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Poly({self.to_text()!r}, p={self.cfg.p}, n={self.n})"


def poly_mul(f: Poly, g: Poly) -> Poly:
    return f * g


@dataclass(frozen=True)
class FrobeniusCoords:
    """Coordinates of a polynomial in the basis {x^a : a_i < p^r} over A_r.

    ``components[a]`` is a polynomial in the Frobenius variables y_i = x_i^{p^r}.
    """

    level: int
    n: int
    cfg: FpConfig
    components: Mapping[MultiIndex, Poly] = field(default_factory=dict)

    def __post_init__(self):
        bound = self.cfg.p ** self.level
        for a, g in self.components.items():
            if len(a) != self.n or any(not 0 <= e < bound for e in a):
                raise ValueError(f"component key {a} out of range for level {self.level}")
            if g.is_zero():
                raise ValueError("zero components must not be stored")


def frobenius_decompose(f: Poly, r: int) -> FrobeniusCoords:
    """Write f = sum_a g_a(x^{p^r}) x^a with every a_i < p^r.

    >>> cfg = FpConfig(2)
    >>> f = Poly({(3,): 1, (2,): 1, (0,): 1}, 1, cfg)
    >>> {a: str(g) for a, g in frobenius_decompose(f, 1).components.items()}
    {(1,): 'x1', (0,): 'x1 + 1'}
    """
    if r < 0:
        raise ValueError("level must be non-negative")
    q = f.cfg.p ** r
    buckets: Dict[MultiIndex, Dict[MultiIndex, int]] = {}
    for m, c in f.terms.items():
        a = tuple(e % q for e in m)
        mu = tuple(e // q for e in m)
        buckets.setdefault(a, {})[mu] = c
    comps = {a: Poly(t, f.n, f.cfg, _clean=True) for a, t in buckets.items()}
    return FrobeniusCoords(r, f.n, f.cfg, comps)


def frobenius_recompose(coords: FrobeniusCoords) -> Poly:
    q = coords.cfg.p ** coords.level
    out: Dict[MultiIndex, int] = {}
    for a, g in coords.components.items():
        for mu, c in g.terms.items():
            out[tuple(ai + q * e for ai, e in zip(a, mu))] = c
    return Poly(out, coords.n, coords.cfg, _clean=True)


def frobenius_substitute(h: Poly, r: int) -> Poly:
    """h(x^{p^r}): read a polynomial in the y_i as an element of A."""
    q = h.cfg.p ** r
    return Poly({tuple(q * e for e in m): c for m, c in h.terms.items()},
                h.n, h.cfg, _clean=True)


def monomials_up_to(n: int, degree: int) -> Iterable[MultiIndex]:
    """All exponent tuples of total degree <= ``degree``, in a fixed order."""
    for m in itertools.product(range(degree + 1), repeat=n):
        if sum(m) <= degree:
            yield m
