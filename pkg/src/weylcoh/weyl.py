"""The Weyl algebra A_n(F_p) in the divided-power basis.

Elements are F_p-linear combinations of words x^a d^[b], with all x's on
the left and the divided powers d_i^[b_i] on the right.  Products are put
back into this form with the closed commutation rule

    d^[r] x^s = sum_j C(s, j) x^(s-j) d^[r-j]

followed by d^[r] d^[s] = C(r+s, r) d^[r+s].  Both rules act one variable
at a time since different indices commute.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from types import MappingProxyType
from typing import Dict, Mapping, Tuple

from .arith import ConfigMismatchError, FpConfig, FpScalar, MultiIndex, binom_mod, check_multiindex
from .polyring import Poly, _format_monomial, degrevlex_key, format_term

Word = Tuple[MultiIndex, MultiIndex]


@lru_cache(maxsize=1 << 18)
def _univariate_product(a: int, b: int, c: int, d: int, p: int) -> tuple:
    """(x^a d^[b]) (x^c d^[d]) in one variable, as ((x-exp, d-exp, coeff), ...)."""
    out = []
    for j in range(min(b, c) + 1):
        coeff = binom_mod(c, j, p)
        if not coeff:
            continue
        coeff = coeff * binom_mod(b - j + d, d, p) % p
        if coeff:
            out.append((a + c - j, b - j + d, coeff))
    return tuple(out)


@lru_cache(maxsize=1 << 16)
def word_product(a: MultiIndex, b: MultiIndex, c: MultiIndex, d: MultiIndex, p: int) -> tuple:
    """Normal form of (x^a d^[b]) (x^c d^[d]) as a tuple of ((a', b'), coeff)."""
    factors = [_univariate_product(a[i], b[i], c[i], d[i], p) for i in range(len(a))]
    out = []
    for combo in itertools.product(*factors):
        coeff = 1
        for t in combo:
            coeff = coeff * t[2] % p
        if coeff:
            out.append(((tuple(t[0] for t in combo), tuple(t[1] for t in combo)), coeff))
    return tuple(out)


def word_key(word: Word) -> tuple:
    # total degree first, then degrevlex on the concatenated exponents
    return degrevlex_key(word[0] + word[1])


def _format_word(a: MultiIndex, b: MultiIndex) -> str:
    parts = []
    xs = _format_monomial(a, "x")
    if xs:
        parts.append(xs)
    for i, e in enumerate(b, start=1):
        if e == 1:
            parts.append(f"d{i}")
        elif e > 1:
            parts.append(f"d{i}[{e}]")
    return "*".join(parts)


class WeylElement:
    """An element of A_n(F_p) in normal form.

    ``terms`` maps words ``(a, b)`` (standing for x^a d_1^[b_1]...d_n^[b_n])
    to nonzero residues mod p.  Two elements are equal iff their term maps are.
    """

    __slots__ = ("n", "cfg", "_terms", "_hash")

    def __init__(self, terms: Mapping[Word, int] | None, n: int, cfg: FpConfig,
                 *, _clean: bool = False):
        self.n = n
        self.cfg = cfg
        if _clean:
            self._terms = terms
        else:
            p = cfg.p
            clean: Dict[Word, int] = {}
            for (a, b), c in (terms or {}).items():
                if isinstance(c, FpScalar):
                    if c.config != cfg:
                        raise ConfigMismatchError("coefficient from a different field")
                    c = c.value
                w = (check_multiindex(a, n), check_multiindex(b, n))
                c = (clean.get(w, 0) + c) % p
                if c:
                    clean[w] = c
                else:
                    clean.pop(w, None)
            self._terms = clean
        self._hash = None

    @classmethod
    def zero(cls, n: int, cfg: FpConfig) -> WeylElement:
        return cls({}, n, cfg, _clean=True)

    @classmethod
    def constant(cls, c: int, n: int, cfg: FpConfig) -> WeylElement:
        c %= cfg.p
        z = (0,) * n
        return cls({(z, z): c} if c else {}, n, cfg, _clean=True)

    @classmethod
    def one(cls, n: int, cfg: FpConfig) -> WeylElement:
        return cls.constant(1, n, cfg)

    @classmethod
    def word(cls, a: MultiIndex, b: MultiIndex, n: int, cfg: FpConfig, c: int = 1) -> WeylElement:
        return cls({(tuple(a), tuple(b)): c}, n, cfg)

    @classmethod
    def x(cls, i: int, n: int, cfg: FpConfig, e: int = 1) -> WeylElement:
        """x_i^e, 1-based."""
        if not 1 <= i <= n:
            raise ValueError(f"variable index {i} out of range 1..{n}")
        a = [0] * n
        a[i - 1] = e
        return cls({(tuple(a), (0,) * n): 1}, n, cfg, _clean=True)

    @classmethod
    def d(cls, i: int, n: int, cfg: FpConfig, r: int = 1) -> WeylElement:
        """The divided power d_i^[r], 1-based."""
        if not 1 <= i <= n:
            raise ValueError(f"variable index {i} out of range 1..{n}")
        if r < 0:
            raise ValueError("divided-power index must be non-negative")
        b = [0] * n
        b[i - 1] = r
        return cls({((0,) * n, tuple(b)): 1}, n, cfg, _clean=True)

    @classmethod
    def from_poly(cls, f: Poly) -> WeylElement:
        z = (0,) * f.n
        return cls({(m, z): c for m, c in f.terms.items()}, f.n, f.cfg, _clean=True)

    @property
    def terms(self) -> Mapping[Word, int]:
        return MappingProxyType(self._terms)

    def coefficient(self, a: MultiIndex, b: MultiIndex) -> FpScalar:
        return FpScalar(self._terms.get((tuple(a), tuple(b)), 0), self.cfg)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def degree(self) -> int:
        """Largest |a| + |b| over the words present; -1 for zero."""
        return max((sum(a) + sum(b) for a, b in self._terms), default=-1)

    def is_polynomial(self) -> bool:
        return all(not any(b) for _, b in self._terms)

    def to_poly(self) -> Poly:
        if not self.is_polynomial():
            raise ValueError("element involves divided powers")
        return Poly({a: c for (a, _), c in self._terms.items()}, self.n, self.cfg, _clean=True)

    # arithmetic

    def _coerce(self, other):
        if isinstance(other, WeylElement):
            if other.cfg != self.cfg or other.n != self.n:
                raise ConfigMismatchError(
                    f"cannot combine A_{self.n}(F_{self.cfg.p}) and A_{other.n}(F_{other.cfg.p})")
            return other
        if isinstance(other, Poly):
            if other.cfg != self.cfg or other.n != self.n:
                raise ConfigMismatchError("polynomial from a different ring")
            return WeylElement.from_poly(other)
        if isinstance(other, FpScalar):
            if other.config != self.cfg:
                raise ConfigMismatchError("scalar from a different field")
            return WeylElement.constant(other.value, self.n, self.cfg)
        if isinstance(other, int) and not isinstance(other, bool):
            return WeylElement.constant(other, self.n, self.cfg)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.cfg.p
        out = dict(self._terms)
        for w, c in other._terms.items():
            s = (out.get(w, 0) + c) % p
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return WeylElement(out, self.n, self.cfg, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        p = self.cfg.p
        return WeylElement({w: p - c for w, c in self._terms.items()}, self.n, self.cfg,
                           _clean=True)

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

    def scale(self, c: int) -> WeylElement:
        p = self.cfg.p
        c %= p
        if not c:
            return WeylElement.zero(self.n, self.cfg)
        return WeylElement({w: v * c % p for w, v in self._terms.items()}, self.n, self.cfg,
                           _clean=True)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.cfg.p
        out: Dict[Word, int] = {}
        for (a, b), c1 in self._terms.items():
            for (c, d), c2 in other._terms.items():
                k = c1 * c2
                for w, c3 in word_product(a, b, c, d, p):
                    out[w] = (out.get(w, 0) + k * c3) % p
        return WeylElement({w: c for w, c in out.items() if c}, self.n, self.cfg, _clean=True)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = WeylElement.one(self.n, self.cfg)
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, WeylElement):
            return self.cfg == other.cfg and self.n == other.n and self._terms == other._terms
        if isinstance(other, (int, FpScalar, Poly)) and not isinstance(other, bool):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.cfg.p, self.n, frozenset(self._terms.items())))
        return self._hash

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda t: word_key(t[0]), reverse=True)

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(format_term(c, _format_word(a, b)) for (a, b), c in self.sorted_terms())

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"WeylElement({self.to_text()!r}, p={self.cfg.p}, n={self.n})"


def weyl_add(u: WeylElement, v: WeylElement) -> WeylElement:
    return u + v


def weyl_mul(u: WeylElement, v: WeylElement) -> WeylElement:
    return u * v


def weyl_commutator(u: WeylElement, v: WeylElement) -> WeylElement:
    return u * v - v * u


def weyl_apply(u: WeylElement, f: Poly) -> Poly:
    """Apply the operator ``u`` to the polynomial ``f``.

    x^a d^[b] sends x^m to prod_i C(m_i, b_i) x^(a + m - b).
    """
    if u.cfg != f.cfg or u.n != f.n:
        raise ConfigMismatchError("operator and polynomial live over different rings")
    p = u.cfg.p
    out: Dict[MultiIndex, int] = {}
    for (a, b), c in u.terms.items():
        for m, cm in f.terms.items():
            k = c * cm % p
            for mi, bi in zip(m, b):
                if not k:
                    break
                k = k * binom_mod(mi, bi, p) % p
            if k:
                e = tuple(ai + mi - bi for ai, mi, bi in zip(a, m, b))
                out[e] = (out.get(e, 0) + k) % p
    return Poly({m: c for m, c in out.items() if c}, f.n, f.cfg, _clean=True)


def weyl_transpose(u: WeylElement) -> WeylElement:
    """The anti-involution fixing x_i and sending d_i^[r] to (-1)^r d_i^[r].

    A word x^a d^[b] goes to (-1)^|b| d^[b] x^a, renormalized.
    """
    p = u.cfg.p
    z = (0,) * u.n
    out: Dict[Word, int] = {}
    for (a, b), c in u.terms.items():
        if sum(b) % 2:
            c = p - c
        for w, c2 in word_product(z, b, a, z, p):
            out[w] = (out.get(w, 0) + c * c2) % p
    return WeylElement({w: c for w, c in out.items() if c}, u.n, u.cfg, _clean=True)
