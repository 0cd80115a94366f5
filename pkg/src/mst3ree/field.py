"""Arithmetic in GF(3^n) = GF(3)[x]/(g(x)).

Elements are stored bitsliced: two Python ints ``ones`` and ``twos`` whose
bit i is set when the coefficient of x^i is 1 or 2 respectively.  The
external contract is the trit vector (coefficient of x^i at position i), so
callers never see the packing.

For small fields (n <= 10) exp/log tables over the primitive element x are
built on first use and drive multiplication; larger fields fall back to a
shift-and-add multiplier.
"""

from __future__ import annotations

import functools
import math
import threading
from typing import Iterable, Iterator, Sequence

from .errors import (
    EvenDegree,
    FieldTooLargeForDlog,
    NonMonic,
    NotIrreducible,
    NotPrimitive,
    ParamsMismatch,
    ZeroDlog,
    ZeroInverse,
)

#: largest degree for which primitivity is checked and dlog is offered
DLOG_LIMIT = 16
#: largest degree for which full exp/log tables are materialised
TABLE_LIMIT = 10
#: irreducibility by trial division up to this degree, Rabin's test above
TRIAL_DIVISION_LIMIT = 16


def _add(a1: int, a2: int, b1: int, b2: int) -> tuple[int, int]:
    t = (a1 | b2) ^ (a2 | b1)
    return (a2 | b2) ^ t, (a1 | b1) ^ t


def _pack(trits: Sequence[int]) -> tuple[int, int]:
    ones = twos = 0
    for i, v in enumerate(trits):
        if v == 1:
            ones |= 1 << i
        elif v == 2:
            twos |= 1 << i
    return ones, twos


# -- dense polynomial helpers over GF(3), ascending coefficient lists --------

def _trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: Sequence[int], b: Sequence[int]) -> tuple[list[int], list[int]]:
    r = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = b[-1]  # 1^-1 = 1, 2^-1 = 2 in GF(3)
    quot = [0] * max(len(r) - len(b) + 1, 0)
    while len(r) >= len(b):
        shift = len(r) - len(b)
        coef = (r[-1] * inv_lead) % 3
        quot[shift] = coef
        for i, bi in enumerate(b):
            r[shift + i] = (r[shift + i] - coef * bi) % 3
        _trim(r)
    return quot, r


def _poly_gcd(a: Sequence[int], b: Sequence[int]) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_divmod(a, b)[1]
    return a


def _monic_polys(degree: int) -> Iterator[list[int]]:
    for k in range(3 ** degree):
        low = []
        for _ in range(degree):
            k, d = divmod(k, 3)
            low.append(d)
        yield low + [1]


def _prime_factors(n: int) -> list[int]:
    factors = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            factors.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        factors.append(n)
    return factors


def _parse_trits(value: str | Sequence[int], length: int | None = None) -> tuple[int, ...]:
    if isinstance(value, str):
        if not all(ch in "012" for ch in value):
            raise ValueError(f"not a trit string: {value!r}")
        trits = tuple(int(ch) for ch in value)
    else:
        trits = tuple(int(v) for v in value)
        if any(v not in (0, 1, 2) for v in trits):
            raise ValueError(f"trits must be 0, 1 or 2: {value!r}")
    if length is not None and len(trits) != length:
        raise ValueError(f"expected {length} trits, got {len(trits)}")
    return trits


class Field:
    """The field GF(3^n) defined by a monic irreducible ``g`` of odd degree n.

    Use :func:`make_field` rather than the constructor so identical
    parameters share one instance (and one set of lookup tables).
    """

    def __init__(self, n: int, g: Sequence[int] | str):
        g = _parse_trits(g)
        if n < 1:
            raise ValueError("extension degree must be positive")
        if n % 2 == 0:
            raise EvenDegree(f"n = {n} is even; q must be 3^(2m+1)")
        if len(g) != n + 1:
            raise ValueError(f"g must have {n + 1} trits, got {len(g)}")
        if g[-1] != 1:
            raise NonMonic("leading coefficient of g must be 1")

        self.n = n
        self.g = g
        self.m = (n - 1) // 2
        self.t_exponent = 3 ** (self.m + 1)
        self.q = 3 ** n
        self.order = self.q - 1
        self._mask = (1 << n) - 1
        self._top = 1 << n
        self._g1, self._g2 = _pack(g[:n])
        if not self._is_irreducible():
            raise NotIrreducible(f"g = {self.g_string} is reducible over GF(3)")

        self.zero = FieldElement(self, 0, 0)
        self.one = FieldElement(self, 1, 0)
        self.x = self.from_trits([0, 1] + [0] * (n - 2)) if n > 1 else self.from_int((-g[0]) % 3)

        self._lock = threading.Lock()
        self._frob_cache: dict[int, list[tuple[int, int]]] = {}
        self._primitive: bool | None = None
        self._exp: list[FieldElement] | None = None
        self._log: dict[int, int] | None = None
        self._bsgs: tuple[int, dict[int, int], FieldElement] | None = None

    # -- construction helpers ------------------------------------------------

    @property
    def g_string(self) -> str:
        return "".join(map(str, self.g))

    def __repr__(self) -> str:
        return f"Field(n={self.n}, g={self.g_string!r})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Field):
            return NotImplemented
        return self.n == other.n and self.g == other.g

    def __hash__(self) -> int:
        return hash((self.n, self.g))

    def __reduce__(self):
        return make_field, (self.n, self.g)

    def _is_irreducible(self) -> bool:
        n, g = self.n, list(self.g)
        if n == 1:
            return True
        if n <= TRIAL_DIVISION_LIMIT:
            for d in range(1, n // 2 + 1):
                for p in _monic_polys(d):
                    if not _poly_divmod(g, p)[1]:
                        return False
            return True
        return self._rabin_irreducible()

    def _rabin_irreducible(self) -> bool:
        # g irreducible <=> x^(3^n) = x mod g and gcd(x^(3^(n/p)) - x, g) = 1
        # for every prime p | n.  Multiplication mod g is well defined even
        # if g turns out reducible, so the field's own multiplier is reused.
        n, g = self.n, list(self.g)
        x = (2, 0)  # bitsliced x

        def cube_times(k: int) -> tuple[int, int]:
            v = x
            for _ in range(k):
                v = self._raw_mul(*self._raw_mul(*v, *v), *v)
            return v

        if cube_times(n) != x:
            return False
        for p in _prime_factors(n):
            o, t = _add(*cube_times(n // p), 0, 2)  # minus x
            h = [1 if (o >> i) & 1 else 2 if (t >> i) & 1 else 0 for i in range(n)]
            if len(_poly_gcd(g, h)) > 1:
                return False
        return True

    # -- element construction --------------------------------------------------

    def from_trits(self, trits: str | Sequence[int]) -> FieldElement:
        """Build an element from ``n`` trits, constant term first."""
        return FieldElement(self, *_pack(_parse_trits(trits, self.n)))

    def from_int(self, k: int) -> FieldElement:
        """Element whose trit vector is the little-endian base-3 expansion of k."""
        if not 0 <= k < self.q:
            raise ValueError(f"{k} out of range for GF(3^{self.n})")
        ones = twos = 0
        i = 0
        while k:
            k, d = divmod(k, 3)
            if d == 1:
                ones |= 1 << i
            elif d == 2:
                twos |= 1 << i
            i += 1
        return FieldElement(self, ones, twos)

    def elements(self) -> Iterator[FieldElement]:
        for k in range(self.q):
            yield self.from_int(k)

    def random_element(self, rng, nonzero: bool = False) -> FieldElement:
        """Uniform draw from the field (or its nonzero part) using ``rng.randrange``."""
        return self.from_int(rng.randrange(1 if nonzero else 0, self.q))

    # -- raw bitsliced kernels -------------------------------------------------

    def _raw_mul(self, a1: int, a2: int, b1: int, b2: int) -> tuple[int, int]:
        n, mask, top = self.n, self._mask, self._top
        g1, g2 = self._g1, self._g2
        r1 = r2 = 0
        for i in range(n - 1, -1, -1):
            r1 <<= 1
            r2 <<= 1
            if r1 & top:
                # x^n = -(g without its leading term)
                r1, r2 = _add(r1 & mask, r2, g2, g1)
            elif r2 & top:
                r1, r2 = _add(r1, r2 & mask, g1, g2)
            if (b1 >> i) & 1:
                r1, r2 = _add(r1, r2, a1, a2)
            elif (b2 >> i) & 1:
                r1, r2 = _add(r1, r2, a2, a1)
        return r1, r2

    def _frobenius_images(self, e: int) -> list[tuple[int, int]]:
        images = self._frob_cache.get(e)
        if images is None:
            images = []
            for i in range(self.n):
                v = (1 << i, 0)
                for _ in range(e):
                    v = self._raw_mul(*self._raw_mul(*v, *v), *v)
                images.append(v)
            self._frob_cache[e] = images
        return images

    # -- primitive element, exp/log -------------------------------------------

    @property
    def generator_verified(self) -> bool:
        """True when x was proven primitive, False when too large to check."""
        if self.n > DLOG_LIMIT:
            return False
        return self.is_primitive

    @property
    def is_primitive(self) -> bool:
        """Whether x has multiplicative order 3^n - 1 (only decidable for n <= 16)."""
        if self._primitive is None:
            if self.n > DLOG_LIMIT:
                raise FieldTooLargeForDlog(f"cannot factor 3^{self.n} - 1 here")
            x = (self.x._o, self.x._t)
            self._primitive = all(
                self._raw_pow(x, self.order // p) != (1, 0) for p in _prime_factors(self.order)
            )
        return self._primitive

    def _raw_pow(self, base: tuple[int, int], k: int) -> tuple[int, int]:
        result = (1, 0)
        while k:
            if k & 1:
                result = self._raw_mul(*result, *base)
            base = self._raw_mul(*base, *base)
            k >>= 1
        return result

    def _require_primitive(self) -> None:
        if self.n > DLOG_LIMIT:
            raise FieldTooLargeForDlog(f"dlog limited to n <= {DLOG_LIMIT}, got n = {self.n}")
        if not self.is_primitive:
            raise NotPrimitive(f"x is not a generator of GF(3^{self.n})* for g = {self.g_string}")

    def _tables(self) -> tuple[list[FieldElement], dict[int, int]] | None:
        if self.n > TABLE_LIMIT or not self.is_primitive:
            return None
        if self._exp is None:
            with self._lock:
                if self._exp is None:
                    exp = []
                    log = {}
                    o, t = 1, 0
                    x1, x2 = self.x._o, self.x._t
                    for k in range(self.order):
                        exp.append(FieldElement(self, o, t))
                        log[o | (t << self.n)] = k
                        o, t = self._raw_mul(o, t, x1, x2)
                    self._log = log
                    self._exp = exp
        return self._exp, self._log

    def primitive_power(self, k: int) -> FieldElement:
        """alpha^k for the primitive element alpha = x mod g."""
        self._require_primitive()
        tables = self._tables()
        if tables is not None:
            return tables[0][k % self.order]
        return self.x ** (k % self.order)

    def dlog(self, x: FieldElement) -> int:
        """Inverse of :meth:`primitive_power`."""
        self._check(x)
        if not x:
            raise ZeroDlog("zero has no discrete logarithm")
        self._require_primitive()
        tables = self._tables()
        if tables is not None:
            return tables[1][x.key]
        return self._bsgs_dlog(x)

    def _bsgs_dlog(self, x: FieldElement) -> int:
        if self._bsgs is None:
            with self._lock:
                if self._bsgs is None:
                    step = math.isqrt(self.order) + 1
                    baby = {}
                    v = self.one
                    for j in range(step):
                        baby.setdefault(v.key, j)
                        v = v * self.x
                    self._bsgs = (step, baby, (self.x ** step).inverse())
        step, baby, giant = self._bsgs
        gamma = x
        for i in range(step + 1):
            j = baby.get(gamma.key)
            if j is not None:
                return (i * step + j) % self.order
            gamma = gamma * giant
        raise AssertionError("dlog not found; generator check is broken")

    def format_power(self, x: FieldElement) -> str:
        """Render as ``0`` or ``a<k>`` (alpha^k), the notation of the worked example."""
        return "0" if not x else f"a{self.dlog(x)}"

    def parse_power(self, text: str) -> FieldElement:
        text = text.strip()
        if text == "0":
            return self.zero
        if not text.startswith("a"):
            raise ValueError(f"expected '0' or 'a<k>', got {text!r}")
        return self.primitive_power(int(text[1:]))

    def _check(self, x: FieldElement) -> None:
        if x._f is not self and x._f != self:
            raise ParamsMismatch(f"{x!r} is not an element of {self!r}")


@functools.lru_cache(maxsize=None)
def _cached_field(n: int, g: tuple[int, ...]) -> Field:
    return Field(n, g)


def make_field(n: int, g: str | Sequence[int]) -> Field:
    """Validated, shared :class:`Field` for degree ``n`` and modulus ``g``.

    ``g`` is given as n+1 trits, constant term first, so x^5 + 2x + 1 is
    ``"120001"``.
    """
    return _cached_field(int(n), _parse_trits(g))


class FieldElement:
    """Immutable element of GF(3^n)."""

    __slots__ = ("_f", "_o", "_t")

    def __init__(self, field: Field, ones: int, twos: int):
        self._f = field
        self._o = ones
        self._t = twos

    @property
    def field(self) -> Field:
        return self._f

    @property
    def trits(self) -> tuple[int, ...]:
        o, t = self._o, self._t
        return tuple(1 if (o >> i) & 1 else 2 if (t >> i) & 1 else 0 for i in range(self._f.n))

    @property
    def key(self) -> int:
        """Packed integer identifying the element inside its field."""
        return self._o | (self._t << self._f.n)

    def to_int(self) -> int:
        k = 0
        for d in reversed(self.trits):
            k = 3 * k + d
        return k

    def __str__(self) -> str:
        return "".join(map(str, self.trits))

    def __repr__(self) -> str:
        return f"FieldElement({str(self)!r})"

    def __bool__(self) -> bool:
        return bool(self._o | self._t)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self._o == other._o and self._t == other._t and (
            self._f is other._f or self._f == other._f
        )

    def __hash__(self) -> int:
        return hash((self._o, self._t, self._f.n))

    def _other(self, other: object) -> FieldElement:
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if other._f is not self._f and other._f != self._f:
            raise ParamsMismatch("operands live in different fields")
        return other

    def __add__(self, other: FieldElement) -> FieldElement:
        other = self._other(other)
        return FieldElement(self._f, *_add(self._o, self._t, other._o, other._t))

    def __sub__(self, other: FieldElement) -> FieldElement:
        other = self._other(other)
        return FieldElement(self._f, *_add(self._o, self._t, other._t, other._o))

    def __neg__(self) -> FieldElement:
        return FieldElement(self._f, self._t, self._o)

    def __mul__(self, other: FieldElement) -> FieldElement:
        other = self._other(other)
        f = self._f
        if f._exp is not None or (f.n <= TABLE_LIMIT and f._tables() is not None):
            if not (self._o | self._t) or not (other._o | other._t):
                return f.zero
            log = f._log
            return f._exp[(log[self._o | (self._t << f.n)] + log[other._o | (other._t << f.n)]) % f.order]
        return FieldElement(f, *f._raw_mul(self._o, self._t, other._o, other._t))

    def square(self) -> FieldElement:
        return self * self

    def inverse(self) -> FieldElement:
        """Multiplicative inverse via the extended Euclidean algorithm over GF(3)[x]."""
        if not self:
            raise ZeroInverse("zero is not invertible")
        f = self._f
        if f._exp is not None:
            return f._exp[(-f._log[self.key]) % f.order]
        # invariant: s * self = r (mod g)
        r0, r1 = list(f.g), _trim(list(self.trits))
        s0, s1 = [], [1]
        while len(r1) > 1:
            quot, rem = _poly_divmod(r0, r1)
            prod = [0] * (len(quot) + len(s1))
            for i, qi in enumerate(quot):
                for j, sj in enumerate(s1):
                    prod[i + j] = (prod[i + j] + qi * sj) % 3
            s_next = [((s0[i] if i < len(s0) else 0) - (prod[i] if i < len(prod) else 0)) % 3
                      for i in range(max(len(s0), len(prod)))]
            r0, r1 = r1, rem
            s0, s1 = s1, _trim(s_next)
        c = r1[0]  # nonzero constant since g is irreducible; c^-1 = c in GF(3)
        coeffs = [(v * c) % 3 for v in s1] + [0] * (f.n - len(s1))
        return f.from_trits(coeffs[: f.n])

    def __truediv__(self, other: FieldElement) -> FieldElement:
        return self * self._other(other).inverse()

    def __pow__(self, k: int) -> FieldElement:
        f = self._f
        if k < 0:
            return self.inverse() ** (-k)
        if not self:
            return f.one if k == 0 else f.zero
        if f._exp is not None:
            return f._exp[(f._log[self.key] * k) % f.order]
        result = f.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def frobenius(self, e: int) -> FieldElement:
        """self^(3^e).  Linear over GF(3), so applied through cached basis images."""
        if e < 0:
            raise ValueError("Frobenius exponent must be non-negative")
        f = self._f
        e %= f.n
        if e == 0:
            return self
        images = f._frobenius_images(e)
        r1 = r2 = 0
        o, t = self._o, self._t
        i = 0
        while o | t:
            if o & 1:
                r1, r2 = _add(r1, r2, *images[i])
            elif t & 1:
                i1, i2 = images[i]
                r1, r2 = _add(r1, r2, i2, i1)
            o >>= 1
            t >>= 1
            i += 1
        return FieldElement(f, r1, r2)


def frobenius_pow(x: FieldElement, e: int) -> FieldElement:
    """x^(3^e)."""
    return x.frobenius(e)


def sum_elements(field: Field, items: Iterable[FieldElement]) -> FieldElement:
    total = field.zero
    for item in items:
        total = total + item
    return total
