"""Tame logarithmic signatures over GF(3^n) and random covers over U(q).

A signature of type (r_1, ..., r_s), r_i = 3^(h_i), assigns block i the h_i
trit positions starting at offset h_1 + ... + h_(i-1).  Row j of block i
carries the little-endian base-3 digits of j at its own positions, random
noise trits below them and zeros above.  Any field element v is then the
sum of exactly one row per block, recovered by peeling blocks from the last
to the first: the trits of v at block i's positions name the row directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

from .errors import (
    BadPermutation,
    InvalidSignature,
    NoMatchingRow,
    OutOfRange,
    ParamsMismatch,
    ResidueNonzero,
)
from .field import Field, FieldElement
from .group import GroupElement, UnipotentGroup


def _log3(r: int) -> int | None:
    h = 0
    while r > 1 and r % 3 == 0:
        r //= 3
        h += 1
    return h if r == 1 else None


@dataclass(frozen=True)
class SignatureType:
    """Block sizes (r_1, ..., r_s), each a power of three, at least 3."""

    radices: tuple[int, ...]

    def __post_init__(self):
        radices = tuple(int(r) for r in self.radices)
        object.__setattr__(self, "radices", radices)
        if not radices:
            raise ValueError("a signature type needs at least one block")
        for r in radices:
            h = _log3(r)
            if h is None or h < 1:
                raise ValueError(f"block size {r} is not a power of 3 (>= 3)")

    @classmethod
    def of(cls, *radices: int) -> SignatureType:
        return cls(tuple(radices))

    @property
    def s(self) -> int:
        return len(self.radices)

    @property
    def widths(self) -> tuple[int, ...]:
        return tuple(_log3(r) for r in self.radices)

    @property
    def offsets(self) -> tuple[int, ...]:
        out, acc = [], 0
        for h in self.widths:
            out.append(acc)
            acc += h
        return tuple(out)

    @property
    def n(self) -> int:
        """Total trit width; must equal the field degree."""
        return sum(self.widths)

    @property
    def order(self) -> int:
        return math.prod(self.radices)

    @property
    def total_rows(self) -> int:
        return sum(self.radices)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.radices)) + ")"


@dataclass(frozen=True)
class FactorIndex:
    """An index R in [0, q) together with its mixed-radix digits."""

    value: int
    digits: tuple[int, ...]


def mixed_radix_decode(R: int, sig_type: SignatureType) -> FactorIndex:
    """Split R into digits R_i = (R / prod_{l<i} r_l) mod r_i."""
    if not 0 <= R < sig_type.order:
        raise OutOfRange(f"R = {R} outside [0, {sig_type.order})")
    digits = []
    rest = R
    for r in sig_type.radices:
        rest, d = divmod(rest, r)
        digits.append(d)
    return FactorIndex(R, tuple(digits))


def mixed_radix_encode(digits: Sequence[int], sig_type: SignatureType) -> FactorIndex:
    digits = tuple(int(d) for d in digits)
    if len(digits) != sig_type.s:
        raise OutOfRange(f"expected {sig_type.s} digits, got {len(digits)}")
    value, scale = 0, 1
    for d, r in zip(digits, sig_type.radices):
        if not 0 <= d < r:
            raise OutOfRange(f"digit {d} outside [0, {r})")
        value += d * scale
        scale *= r
    return FactorIndex(value, digits)


IndexLike = Union[int, FactorIndex, Sequence[int]]


def as_index(R: IndexLike, sig_type: SignatureType) -> FactorIndex:
    if isinstance(R, FactorIndex):
        return mixed_radix_encode(R.digits, sig_type)
    if isinstance(R, int):
        return mixed_radix_decode(R, sig_type)
    return mixed_radix_encode(R, sig_type)


def _check_type(field: Field, sig_type: SignatureType) -> None:
    if sig_type.n != field.n:
        raise ValueError(f"type {sig_type} covers {sig_type.n} trits, field has {field.n}")


class LogSignature:
    """Blocks of field elements forming a tame logarithmic signature.

    ``blocks`` is kept in storage order.  Rows are addressed by their
    canonical index (the digit written at the block's own trit positions),
    so permuting storage order changes neither evaluation nor factorization.
    """

    def __init__(self, field: Field, sig_type: SignatureType, blocks: Sequence[Sequence[FieldElement]]):
        _check_type(field, sig_type)
        self.field = field
        self.sig_type = sig_type
        self.blocks = tuple(tuple(block) for block in blocks)
        if len(self.blocks) != sig_type.s:
            raise InvalidSignature(f"expected {sig_type.s} blocks, got {len(self.blocks)}")
        self._by_index: list[dict[int, FieldElement]] = []
        for i, (block, r) in enumerate(zip(self.blocks, sig_type.radices)):
            if len(block) != r:
                raise InvalidSignature(f"block {i + 1} has {len(block)} rows, type says {r}")
            lookup = {}
            for row in block:
                field._check(row)
                trits = row.trits
                hi = sig_type.offsets[i] + sig_type.widths[i]
                if any(trits[hi:]):
                    raise InvalidSignature(f"block {i + 1} row {row} has nonzero trits above its positions")
                j = self.block_digit(i, row)
                if j in lookup:
                    raise InvalidSignature(f"block {i + 1} repeats digit {j}")
                lookup[j] = row
            self._by_index.append(lookup)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LogSignature):
            return NotImplemented
        return self.field == other.field and self.sig_type == other.sig_type and self.blocks == other.blocks

    def block_digit(self, i: int, v: FieldElement) -> int:
        """Base-3 value of v's trits at block i's positions (little-endian)."""
        off, h = self.sig_type.offsets[i], self.sig_type.widths[i]
        trits = v.trits
        digit = 0
        for k in range(h - 1, -1, -1):
            digit = 3 * digit + trits[off + k]
        return digit

    def row(self, i: int, j: int) -> FieldElement:
        """Row of block i with canonical index j."""
        return self._by_index[i][j]

    def evaluate(self, R: IndexLike) -> FieldElement:
        """Sum of the selected row of every block."""
        idx = as_index(R, self.sig_type)
        total = self.field.zero
        for i, d in enumerate(idx.digits):
            total = total + self._by_index[i][d]
        return total

    def peel(self, v: FieldElement) -> tuple[FactorIndex, list[FieldElement]]:
        """Factorize v, also returning the running value after each block is removed."""
        self.field._check(v)
        digits = [0] * self.sig_type.s
        residues = []
        for i in range(self.sig_type.s - 1, -1, -1):
            j = self.block_digit(i, v)
            row = self._by_index[i].get(j)
            if row is None:
                raise NoMatchingRow(f"no row of block {i + 1} matches digit {j}")
            digits[i] = j
            v = v - row
            residues.append(v)
        if v:
            raise ResidueNonzero(f"residue {v} left after peeling all blocks")
        return mixed_radix_encode(digits, self.sig_type), residues

    def factorize(self, v: FieldElement) -> FactorIndex:
        return self.peel(v)[0]

    def permute_block_rows(self, i: int, perm: Sequence[int]) -> LogSignature:
        """New signature with the storage order of block i rearranged: new[k] = old[perm[k]]."""
        if not 0 <= i < self.sig_type.s:
            raise BadPermutation(f"no block {i}")
        perm = list(perm)
        if sorted(perm) != list(range(self.sig_type.radices[i])):
            raise BadPermutation(f"{perm} is not a permutation of block {i + 1}")
        blocks = list(self.blocks)
        blocks[i] = tuple(blocks[i][k] for k in perm)
        return LogSignature(self.field, self.sig_type, blocks)


def _digit_trits(j: int, h: int) -> list[int]:
    out = []
    for _ in range(h):
        j, d = divmod(j, 3)
        out.append(d)
    return out


def canonical_signature(field: Field, sig_type: SignatureType) -> LogSignature:
    """The noise-free tame signature: row j of block i is j placed at block i's positions."""
    _check_type(field, sig_type)
    blocks = []
    for off, h, r in zip(sig_type.offsets, sig_type.widths, sig_type.radices):
        blocks.append([
            field.from_trits([0] * off + _digit_trits(j, h) + [0] * (field.n - off - h))
            for j in range(r)
        ])
    return LogSignature(field, sig_type, blocks)


def generate_tame(field: Field, sig_type: SignatureType, rng) -> LogSignature:
    """Random tame signature: canonical rows plus uniform noise below each block."""
    _check_type(field, sig_type)
    blocks = []
    for off, h, r in zip(sig_type.offsets, sig_type.widths, sig_type.radices):
        rows = []
        for j in range(r):
            noise = [rng.randrange(3) for _ in range(off)]
            rows.append(field.from_trits(noise + _digit_trits(j, h) + [0] * (field.n - off - h)))
        blocks.append(rows)
    return LogSignature(field, sig_type, blocks)


def random_permutation(sig: LogSignature, rng) -> LogSignature:
    """Shuffle the storage order of every block."""
    for i, r in enumerate(sig.sig_type.radices):
        perm = list(range(r))
        rng.shuffle(perm)
        sig = sig.permute_block_rows(i, perm)
    return sig


class Cover:
    """Blocks of group elements of a given type; evaluation is an ordered product.

    ``zero_a`` marks covers whose rows all lie in U1 (a = 0).  The arrays
    gamma_k of the public key use the same shape without any nonzero rule.
    """

    def __init__(self, group: UnipotentGroup, sig_type: SignatureType,
                 blocks: Sequence[Sequence[GroupElement]], zero_a: bool = False):
        _check_type(group.field, sig_type)
        self.group = group
        self.sig_type = sig_type
        self.blocks = tuple(tuple(block) for block in blocks)
        self.zero_a = zero_a
        if len(self.blocks) != sig_type.s:
            raise InvalidSignature(f"expected {sig_type.s} blocks, got {len(self.blocks)}")
        for i, (block, r) in enumerate(zip(self.blocks, sig_type.radices)):
            if len(block) != r:
                raise InvalidSignature(f"block {i + 1} has {len(block)} rows, type says {r}")
            for row in block:
                if row.group is not group and row.group != group:
                    raise ParamsMismatch("cover row from a different group")
                if zero_a and row.a:
                    raise InvalidSignature(f"block {i + 1} row {row} has a != 0 in a zero_a cover")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cover):
            return NotImplemented
        return (self.group == other.group and self.sig_type == other.sig_type
                and self.zero_a == other.zero_a and self.blocks == other.blocks)

    def row(self, i: int, j: int) -> GroupElement:
        return self.blocks[i][j]

    def evaluate(self, R: IndexLike) -> GroupElement:
        """a_{1,R_1} a_{2,R_2} ... a_{s,R_s}, multiplied left to right."""
        idx = as_index(R, self.sig_type)
        result = self.group.identity
        for block, d in zip(self.blocks, idx.digits):
            result = result * block[d]
        return result

    def has_zero_coordinates(self) -> bool:
        """True if some row breaks the nonzero-entry rule for random covers."""
        for block in self.blocks:
            for row in block:
                coords = (row.b, row.c) if self.zero_a else (row.a, row.b, row.c)
                if not all(coords):
                    return True
        return False


def generate_cover(group: UnipotentGroup, sig_type: SignatureType, rng, zero_a: bool = False) -> Cover:
    """Random cover with nonzero coordinates (a = 0 throughout when ``zero_a``)."""
    blocks = [
        [group.random_element(rng, zero_a=zero_a, nonzero=True) for _ in range(r)]
        for r in sig_type.radices
    ]
    return Cover(group, sig_type, blocks, zero_a=zero_a)


def logsig_evaluate(ls: LogSignature, R: IndexLike) -> FieldElement:
    return ls.evaluate(R)


def logsig_factorize(ls: LogSignature, v: FieldElement) -> FactorIndex:
    return ls.factorize(v)


def cover_evaluate(cv: Cover, R: IndexLike) -> GroupElement:
    return cv.evaluate(R)
