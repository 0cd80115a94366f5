"""MST3 encryption over U(q): key generation, encryption and decryption.

Public key:  covers alpha1 (rows S(a,b,c)), alpha2 (rows S(0,b,c)) and the
             arrays gamma_k with rows  t_{i-1}^-1 f(alpha_k[i][j]) e_k(beta_k[i][j]) t_i,
             where e_1(v) = S(0,v,0), e_2(v) = S(0,0,v), f(S(a,b,c)) = S(0,a,b).
Private key: tame signatures beta1, beta2 and translations t_0..t_s for each
             k, chained by t_s(1) = t_0(2).
Ciphertext:  y1 = alpha1'(R1) alpha2'(R2) m,  y2 = gamma1'(R1) gamma2'(R2),
             y3 = f(alpha2'(R2)).
"""

from __future__ import annotations

import secrets
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .errors import FactorizationFailed, NotInU1, NotInU1Result, OutOfRange, SignatureError
from .field import Field, FieldElement
from .group import GroupElement, UnipotentGroup, f_map
from .logsig import (
    Cover,
    FactorIndex,
    LogSignature,
    SignatureType,
    generate_cover,
    generate_tame,
)


@dataclass(frozen=True)
class SchemeParams:
    group: UnipotentGroup
    type1: SignatureType  # signature for the b coordinate
    type2: SignatureType  # signature for the c coordinate

    def __post_init__(self):
        n = self.group.field.n
        for t in (self.type1, self.type2):
            if t.n != n:
                raise ValueError(f"type {t} does not multiply to q = 3^{n}")

    @property
    def field(self) -> Field:
        return self.group.field

    @property
    def q(self) -> int:
        return self.group.field.q


@dataclass(frozen=True, eq=False)
class PublicKey:
    params: SchemeParams
    alpha1: Cover
    alpha2: Cover
    gamma1: Cover
    gamma2: Cover

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PublicKey):
            return NotImplemented
        return (self.params == other.params and self.alpha1 == other.alpha1 and self.alpha2 == other.alpha2
                and self.gamma1 == other.gamma1 and self.gamma2 == other.gamma2)


@dataclass(frozen=True, eq=False)
class PrivateKey:
    beta1: LogSignature
    beta2: LogSignature
    t1: tuple[GroupElement, ...]
    t2: tuple[GroupElement, ...]
    public: PublicKey  # decryption needs gamma1, alpha1, alpha2

    def __post_init__(self):
        params = self.public.params
        if len(self.t1) != params.type1.s + 1 or len(self.t2) != params.type2.s + 1:
            raise ValueError("translation vectors must have s + 1 entries")
        if self.t1[-1] != self.t2[0]:
            raise ValueError("translations must satisfy t_s(1) = t_0(2)")
        if any(t.in_center() for t in self.t1 + self.t2):
            raise ValueError("translations must lie outside the center")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PrivateKey):
            return NotImplemented
        return (self.beta1 == other.beta1 and self.beta2 == other.beta2 and self.t1 == other.t1
                and self.t2 == other.t2 and self.public == other.public)


@dataclass(frozen=True)
class Plaintext:
    """The message S(0, m2, m3) in U1(q)."""

    m2: FieldElement
    m3: FieldElement

    def element(self, group: UnipotentGroup) -> GroupElement:
        return group.element(group.field.zero, self.m2, self.m3)

    @classmethod
    def from_element(cls, x: GroupElement) -> Plaintext:
        if not x.in_u1():
            raise NotInU1(f"{x!r} is not in U1(q)")
        return cls(x.b, x.c)


@dataclass(frozen=True)
class Ciphertext:
    y1: GroupElement
    y2: GroupElement
    y3: GroupElement


@dataclass(frozen=True)
class Randomness:
    r1: int
    r2: int


@dataclass
class DecryptionTrace:
    """Every intermediate of one decryption, in the order they are computed."""

    d1: GroupElement | None = None
    dstar1: GroupElement | None = None
    r1: FactorIndex | None = None
    residues1: list[FieldElement] = dc_field(default_factory=list)
    y2_prime: GroupElement | None = None
    d2: GroupElement | None = None
    dstar2: GroupElement | None = None
    r2: FactorIndex | None = None
    residues2: list[FieldElement] = dc_field(default_factory=list)
    m: GroupElement | None = None


def embed_b(group: UnipotentGroup, v: FieldElement) -> GroupElement:
    return GroupElement(group, group.field.zero, v, group.field.zero)


def embed_c(group: UnipotentGroup, v: FieldElement) -> GroupElement:
    return GroupElement(group, group.field.zero, group.field.zero, v)


def gamma_array(beta: LogSignature, alpha: Cover, t: Sequence[GroupElement], embed) -> Cover:
    group = alpha.group
    blocks = []
    for i, block in enumerate(alpha.blocks):
        left = t[i].inverse()
        right = t[i + 1]
        blocks.append([
            left * f_map(a) * embed(group, beta.row(i, j)) * right
            for j, a in enumerate(block)
        ])
    return Cover(group, alpha.sig_type, blocks)


def assemble_keys(params: SchemeParams, beta1: LogSignature, beta2: LogSignature,
                  alpha1: Cover, alpha2: Cover,
                  t1: Sequence[GroupElement], t2: Sequence[GroupElement]) -> tuple[PublicKey, PrivateKey]:
    """Build the key pair from explicit secret and cover material (computes gamma_k)."""
    gamma1 = gamma_array(beta1, alpha1, t1, embed_b)
    gamma2 = gamma_array(beta2, alpha2, t2, embed_c)
    pk = PublicKey(params, alpha1, alpha2, gamma1, gamma2)
    return pk, PrivateKey(beta1, beta2, tuple(t1), tuple(t2), pk)


def _noncentral(group: UnipotentGroup, rng) -> GroupElement:
    while True:
        t = group.random_element(rng)
        if not t.in_center():
            return t


def sample_translations(params: SchemeParams, rng) -> tuple[list[GroupElement], list[GroupElement]]:
    group = params.group
    t1 = [_noncentral(group, rng) for _ in range(params.type1.s + 1)]
    t2 = [t1[-1]] + [_noncentral(group, rng) for _ in range(params.type2.s)]
    return t1, t2


def keygen(params: SchemeParams, rng=None) -> tuple[PublicKey, PrivateKey]:
    """Fresh key pair.  ``rng`` defaults to the operating system CSPRNG."""
    rng = rng or secrets.SystemRandom()
    field, group = params.field, params.group
    beta1 = generate_tame(field, params.type1, rng)
    beta2 = generate_tame(field, params.type2, rng)
    alpha1 = generate_cover(group, params.type1, rng, zero_a=False)
    alpha2 = generate_cover(group, params.type2, rng, zero_a=True)
    t1, t2 = sample_translations(params, rng)
    return assemble_keys(params, beta1, beta2, alpha1, alpha2, t1, t2)


def sample_randomness(rng, q: int) -> Randomness:
    return Randomness(rng.randrange(q), rng.randrange(q))


def _message_element(group: UnipotentGroup, m) -> GroupElement:
    if isinstance(m, Plaintext):
        return m.element(group)
    if not m.in_u1():
        raise NotInU1(f"message {m!r} has a != 0")
    return m


def encrypt(pk: PublicKey, m: Plaintext | GroupElement, R: Randomness | tuple[int, int]) -> Ciphertext:
    r1, r2 = (R.r1, R.r2) if isinstance(R, Randomness) else R
    q = pk.params.q
    if not (0 <= r1 < q and 0 <= r2 < q):
        raise OutOfRange(f"randomness ({r1}, {r2}) outside [0, {q})")
    group = pk.params.group
    msg = _message_element(group, m)
    a2 = pk.alpha2.evaluate(r2)
    y1 = pk.alpha1.evaluate(r1) * a2 * msg
    y2 = pk.gamma1.evaluate(r1) * pk.gamma2.evaluate(r2)
    return Ciphertext(y1, y2, f_map(a2))


def decrypt(sk: PrivateKey, ct: Ciphertext, trace: DecryptionTrace | None = None) -> Plaintext:
    """Recover (R1, R2) from y2 with the private signatures, then strip alpha'(R) from y1."""
    pk = sk.public
    tr = trace if trace is not None else DecryptionTrace()
    t_last_inv = sk.t2[-1].inverse()

    tr.d1 = sk.t1[0] * ct.y2 * t_last_inv
    tr.dstar1 = f_map(ct.y1).inverse() * tr.d1
    try:
        tr.r1, tr.residues1 = sk.beta1.peel(tr.dstar1.b)
    except SignatureError as exc:
        raise FactorizationFailed(f"cannot factor beta1 value: {exc}") from exc

    tr.y2_prime = pk.gamma1.evaluate(tr.r1).inverse() * ct.y2
    tr.d2 = sk.t2[0] * tr.y2_prime * t_last_inv
    tr.dstar2 = tr.d2 * ct.y3.inverse()
    try:
        tr.r2, tr.residues2 = sk.beta2.peel(tr.dstar2.c)
    except SignatureError as exc:
        raise FactorizationFailed(f"cannot factor beta2 value: {exc}") from exc

    tr.m = pk.alpha2.evaluate(tr.r2).inverse() * pk.alpha1.evaluate(tr.r1).inverse() * ct.y1
    if not tr.m.in_u1():
        raise NotInU1Result(f"recovered {tr.m!r} is outside U1 (wrong key or corrupt ciphertext)")
    return Plaintext(tr.m.b, tr.m.c)
