"""Prime-field scalars, multi-index helpers and binomial coefficients mod p.

Multi-indices are plain tuples of non-negative ints.  Coefficients inside
the polynomial and operator containers are stored as ints already reduced
mod p; :class:`FpScalar` is the boxed form handed out at API boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

MultiIndex = Tuple[int, ...]


class ConfigMismatchError(ValueError):
    """Raised when values over different fields or variable counts meet."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FpConfig:
    """The prime field F_p."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or isinstance(self.p, bool):
            raise TypeError(f"modulus must be an int, got {self.p!r}")
        if not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")

    def __call__(self, value: int) -> "FpScalar":
        return FpScalar(value % self.p, self)

    def inv(self, value: int) -> int:
        value %= self.p
        if value == 0:
            raise ZeroDivisionError("inverse of 0 in F_%d" % self.p)
        return pow(value, -1, self.p)


@dataclass(frozen=True)
class FpScalar:
    value: int
    config: FpConfig

    def __post_init__(self):
        if not 0 <= self.value < self.config.p:
            raise ValueError(f"{self.value} is not reduced mod {self.config.p}")

    def _other(self, other) -> int:
        if isinstance(other, FpScalar):
            if other.config != self.config:
                raise ConfigMismatchError(
                    f"F_{self.config.p} and F_{other.config.p} scalars do not mix")
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return other
        return NotImplemented

    def _wrap(self, v: int) -> FpScalar:
        return FpScalar(v % self.config.p, self.config)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value - o)

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(o - self.value)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(-self.value)

    def inverse(self) -> FpScalar:
        return self._wrap(self.config.inv(self.value))

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return self._wrap(self.value * self.config.inv(o))

    def __eq__(self, other):
        if isinstance(other, FpScalar):
            return self.config == other.config and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return (other - self.value) % self.config.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.config.p))

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value} (mod {self.config.p})"


@lru_cache(maxsize=None)
def _small_binom(m: int, r: int, p: int) -> int:
    # m, r < p here, so the factorials are invertible
    if r > m:
        return 0
    num = den = 1
    for i in range(r):
        num = num * (m - i) % p
        den = den * (i + 1) % p
    return num * pow(den, -1, p) % p


def binom_mod(m: int, r: int, p: int) -> int:
    """C(m, r) mod p as a plain int, by Lucas' rule on base-p digits."""
    if r < 0 or m < 0 or r > m:
        return 0
    result = 1
    while r:
        md, rd = m % p, r % p
        if rd > md:
            return 0
        result = result * _small_binom(md, rd, p) % p
        m //= p
        r //= p
    return result


def binom_mod_p(m: int, r: int, cfg: FpConfig) -> FpScalar:
    """Binomial coefficient C(m, r) as an element of F_p.

    >>> binom_mod_p(5, 2, FpConfig(3))
    1 (mod 3)
    >>> binom_mod_p(2, 1, FpConfig(2))
    0 (mod 2)
    """
    if m < 0 or r < 0:
        raise ValueError("binomial arguments must be non-negative")
    return FpScalar(binom_mod(m, r, cfg.p), cfg)


def _same_length(a: MultiIndex, b: MultiIndex) -> None:
    if len(a) != len(b):
        raise ValueError(f"multi-index length mismatch: {len(a)} vs {len(b)}")


def check_multiindex(a, n: int) -> MultiIndex:
    a = tuple(a)
    if len(a) != n:
        raise ValueError(f"expected a multi-index of length {n}, got {a}")
    if any((not isinstance(e, int)) or e < 0 for e in a):
        raise ValueError(f"multi-index entries must be non-negative ints: {a}")
    return a


def mi_add(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    _same_length(a, b)
    return tuple(x + y for x, y in zip(a, b))


def mi_sub(a: MultiIndex, b: MultiIndex) -> MultiIndex | None:
    """Componentwise ``a - b``, or None when some entry would go negative."""
    _same_length(a, b)
    out = tuple(x - y for x, y in zip(a, b))
    if any(e < 0 for e in out):
        return None
    return out


def mi_min(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    _same_length(a, b)
    return tuple(min(x, y) for x, y in zip(a, b))


def mi_max(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    _same_length(a, b)
    return tuple(max(x, y) for x, y in zip(a, b))


def mi_divides(a: MultiIndex, b: MultiIndex) -> bool:
    return all(x <= y for x, y in zip(a, b))


def total_degree(a: MultiIndex) -> int:
    return sum(a)
