"""The Sylow 3-subgroup U(q) = {S(a, b, c)} of the small Ree group.

Multiplication:

    S(a1,b1,c1) S(a2,b2,c2) = S(a1 + a2,
                                b1 + b2 - a1 a2^(3t),
                                c1 + c2 - a2 b1 + a1 a2^(3t+1) - a1^2 a2^(3t))

with t = 3^m, so a^(3t) is the Frobenius power a^(3^(m+1)).
"""

from __future__ import annotations

import functools
from typing import Iterator, Sequence

from .errors import ParamsMismatch
from .field import Field, FieldElement, make_field


class UnipotentGroup:
    """U(q) over a given field; holds the Frobenius exponent of the group law."""

    def __init__(self, field: Field):
        self.field = field
        self.frob_e = field.m + 1
        zero = field.zero
        self.identity = GroupElement(self, zero, zero, zero)

    def __repr__(self) -> str:
        return f"UnipotentGroup({self.field!r})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UnipotentGroup):
            return NotImplemented
        return self.field == other.field

    def __hash__(self) -> int:
        return hash(("U", self.field))

    def __reduce__(self):
        return group_for, (self.field,)

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def order(self) -> int:
        return self.field.q ** 3

    def element(self, a: FieldElement, b: FieldElement, c: FieldElement) -> GroupElement:
        for v in (a, b, c):
            self.field._check(v)
        return GroupElement(self, a, b, c)

    def from_trits(self, a, b, c) -> GroupElement:
        f = self.field
        return GroupElement(self, f.from_trits(a), f.from_trits(b), f.from_trits(c))

    def from_powers(self, a: int | None, b: int | None, c: int | None) -> GroupElement:
        """S(alpha^a, alpha^b, alpha^c); ``None`` stands for the zero coordinate."""
        f = self.field

        def coord(k):
            return f.zero if k is None else f.primitive_power(k)

        return GroupElement(self, coord(a), coord(b), coord(c))

    def parse(self, text: str) -> GroupElement:
        """Parse the textual form ``aaaaa:bbbbb:ccccc``."""
        parts = text.strip().split(":")
        if len(parts) != 3:
            raise ValueError(f"group element needs three ':'-separated trit strings: {text!r}")
        return self.from_trits(*parts)

    def random_element(self, rng, *, zero_a: bool = False, nonzero: bool = False) -> GroupElement:
        f = self.field
        a = f.zero if zero_a else f.random_element(rng, nonzero)
        return GroupElement(self, a, f.random_element(rng, nonzero), f.random_element(rng, nonzero))

    def elements(self) -> Iterator[GroupElement]:
        values = list(self.field.elements())
        for a in values:
            for b in values:
                for c in values:
                    yield GroupElement(self, a, b, c)

    def product(self, items: Sequence[GroupElement]) -> GroupElement:
        result = self.identity
        for item in items:
            result = result * item
        return result


@functools.lru_cache(maxsize=None)
def group_for(field: Field) -> UnipotentGroup:
    return UnipotentGroup(field)


def make_group(n: int, g) -> UnipotentGroup:
    return group_for(make_field(n, g))


class GroupElement:
    """Immutable triple S(a, b, c) in U(q)."""

    __slots__ = ("group", "a", "b", "c")

    def __init__(self, group: UnipotentGroup, a: FieldElement, b: FieldElement, c: FieldElement):
        self.group = group
        self.a = a
        self.b = b
        self.c = c

    def __iter__(self):
        return iter((self.a, self.b, self.c))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.c == other.c

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.c))

    def __str__(self) -> str:
        return f"{self.a}:{self.b}:{self.c}"

    def __repr__(self) -> str:
        return f"S({self})"

    def pretty(self) -> str:
        """Render with alpha-power coordinates, e.g. ``a86:a186:a113``."""
        fmt = self.group.field.format_power
        return f"{fmt(self.a)}:{fmt(self.b)}:{fmt(self.c)}"

    def __mul__(self, other: GroupElement) -> GroupElement:
        if not isinstance(other, GroupElement):
            return NotImplemented
        grp = self.group
        if other.group is not grp and other.group != grp:
            raise ParamsMismatch("operands belong to different groups")
        a1, b1, c1 = self.a, self.b, self.c
        a2, b2, c2 = other.a, other.b, other.c
        if not a1:
            # a1 = 0: every a1-term of the law vanishes
            return GroupElement(grp, a2, b1 + b2, c1 + c2 - a2 * b1)
        u = a1 * a2.frobenius(grp.frob_e)
        # a1 a2^(3t+1) - a1^2 a2^(3t) = u (a2 - a1)
        return GroupElement(grp, a1 + a2, b1 + b2 - u, c1 + c2 - a2 * b1 + u * (a2 - a1))

    def inverse(self) -> GroupElement:
        """S(-a, -b - a^(3t+1), -c - ab + a^(3t+2))."""
        a, b, c = self.a, self.b, self.c
        if not a:
            return GroupElement(self.group, a, -b, -c)
        fa = a.frobenius(self.group.frob_e) * a
        return GroupElement(self.group, -a, -b - fa, fa * a - c - a * b)

    def __invert__(self) -> GroupElement:
        return self.inverse()

    def __pow__(self, k: int) -> GroupElement:
        if k < 0:
            return self.inverse() ** (-k)
        result = self.group.identity
        for _ in range(k % 9):  # every element has order dividing 9
            result = result * self
        return result

    def is_identity(self) -> bool:
        return not (self.a or self.b or self.c)

    def in_center(self) -> bool:
        return not self.a and not self.b

    def in_u1(self) -> bool:
        return not self.a

    def order(self) -> int:
        """Smallest k with self^k = identity, by direct powering."""
        power = self
        k = 1
        while not power.is_identity():
            power = power * self
            k += 1
            if k > 9:
                raise AssertionError(f"{self!r} has order > 9; group law is broken")
        return k


def identity(group: UnipotentGroup) -> GroupElement:
    return group.identity


def f_map(x: GroupElement) -> GroupElement:
    """The scheme's coordinate shift S(a, b, c) -> S(0, a, b)."""
    return GroupElement(x.group, x.group.field.zero, x.a, x.b)


def element_order(x: GroupElement) -> int:
    return x.order()
