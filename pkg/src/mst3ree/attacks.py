"""Exhaustive-search attacks at toy parameters, with trial counting.

Each attack returns an :class:`AttackReport`; ``tried`` counts candidate
tests, not the precomputation of cover values.  Hard guards keep the
searches at desk scale.
"""

from __future__ import annotations

import csv
import itertools
import time
from dataclasses import dataclass
from typing import IO, Iterable, Sequence

from .errors import MST3Error, SearchSpaceTooLarge
from .group import GroupElement, f_map
from .logsig import LogSignature
from .scheme import (
    Ciphertext,
    Plaintext,
    PrivateKey,
    PublicKey,
    Randomness,
    decrypt,
    embed_b,
    embed_c,
)

SEARCH_LIMIT = 2 ** 20
CSV_COLUMNS = ("attack", "q", "tried", "succeeded", "wall_time_ms")


@dataclass
class AttackReport:
    attack_name: str
    q: int
    tried: int
    succeeded: bool
    recovered: Randomness | PrivateKey | None = None
    plaintext: Plaintext | None = None
    wall_time: float = 0.0  # seconds

    def line(self) -> str:
        status = "success" if self.succeeded else "failure"
        extra = ""
        if isinstance(self.recovered, Randomness):
            extra = f" R=({self.recovered.r1},{self.recovered.r2})"
        return (f"{self.attack_name}: q={self.q} tried={self.tried} {status}{extra} "
                f"time={self.wall_time * 1000:.1f}ms")

    def csv_row(self) -> dict:
        return {
            "attack": self.attack_name,
            "q": self.q,
            "tried": self.tried,
            "succeeded": int(self.succeeded),
            "wall_time_ms": f"{self.wall_time * 1000:.3f}",
        }


def write_csv(reports: Iterable[AttackReport], fh: IO[str]) -> None:
    writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for report in reports:
        writer.writerow(report.csv_row())


def _guard(space: int, what: str) -> None:
    if space > SEARCH_LIMIT:
        raise SearchSpaceTooLarge(f"{what} search space {space} exceeds {SEARCH_LIMIT}")


def _strip(pk: PublicKey, ct: Ciphertext, a1: GroupElement, a2: GroupElement) -> Plaintext | None:
    """Candidate plaintext for given cover values, or None if it leaves U1."""
    m = a2.inverse() * a1.inverse() * ct.y1
    return Plaintext(m.b, m.c) if m.in_u1() else None


def brute_force_r_pair(pk: PublicKey, ct: Ciphertext) -> AttackReport:
    """Try every (R1, R2) in lexicographic order until gamma'(R) = y2."""
    q = pk.params.q
    _guard(q * q, "R-pair")
    start = time.perf_counter()
    g1 = [pk.gamma1.evaluate(r) for r in range(q)]
    g2 = [pk.gamma2.evaluate(r) for r in range(q)]
    tried = 0
    for r1 in range(q):
        for r2 in range(q):
            tried += 1
            if g1[r1] * g2[r2] != ct.y2:
                continue
            a2 = pk.alpha2.evaluate(r2)
            if f_map(a2) != ct.y3:
                continue
            m = _strip(pk, ct, pk.alpha1.evaluate(r1), a2)
            if m is not None:
                return AttackReport("pair", q, tried, True, Randomness(r1, r2), m,
                                    time.perf_counter() - start)
    return AttackReport("pair", q, tried, False, wall_time=time.perf_counter() - start)


def brute_force_split(pk: PublicKey, ct: Ciphertext) -> AttackReport:
    """Recover R1 and R2 separately from the coordinates they leak.

    alpha2 and the message have a = 0, so y1.a equals the a coordinate of
    alpha1'(R1); y3 = f(alpha2'(R2)) depends on R2 alone.  Every candidate of
    each stage is kept, and the pairs are then checked against y2; those
    checks count as trials only when more than one pair survives.
    """
    q = pk.params.q
    _guard(2 * q, "split")
    start = time.perf_counter()
    tried = 0
    cand1 = []
    for r1 in range(q):
        tried += 1
        a1 = pk.alpha1.evaluate(r1)
        if a1.a == ct.y1.a:
            cand1.append((r1, a1))
    cand2 = []
    for r2 in range(q):
        tried += 1
        a2 = pk.alpha2.evaluate(r2)
        if f_map(a2) == ct.y3:
            cand2.append((r2, a2))
    # a single surviving pair is forced, so checking it is verification, not search
    search_pairs = len(cand1) * len(cand2) > 1
    for (r1, a1), (r2, a2) in itertools.product(cand1, cand2):
        tried += search_pairs
        if pk.gamma1.evaluate(r1) * pk.gamma2.evaluate(r2) != ct.y2:
            continue
        m = _strip(pk, ct, a1, a2)
        if m is not None:
            return AttackReport("split", q, tried, True, Randomness(r1, r2), m,
                                time.perf_counter() - start)
    return AttackReport("split", q, tried, False, wall_time=time.perf_counter() - start)


def _chain(first: GroupElement, xs: Sequence[Sequence[GroupElement]],
           hs: Sequence[Sequence[GroupElement]]) -> list[GroupElement] | None:
    """Extend t_0 to t_0..t_s so every gamma row is reproduced, or None."""
    ts = [first]
    for x_block, h_block in zip(xs, hs):
        prev = ts[-1]
        nxt = x_block[0].inverse() * prev * h_block[0]
        prev_inv = prev.inverse()
        for x, h in zip(x_block[1:], h_block[1:]):
            if prev_inv * x * nxt != h:
                return None
        ts.append(nxt)
    return ts


def brute_force_t(pk: PublicKey, ct: Ciphertext, beta1: LogSignature, beta2: LogSignature) -> AttackReport:
    """With the signatures known, search t_0(1) over U(q).

    Each candidate fixes every later translation through the first row of
    each gamma block; the remaining rows confirm or reject it.  A consistent
    chain is an equivalent private key and is accepted once it decrypts the
    challenge into U1.
    """
    group = pk.params.group
    q = pk.params.q
    _guard(group.order, "translation")
    start = time.perf_counter()

    def products(beta, alpha, embed):
        return [[f_map(a) * embed(group, beta.row(i, j)) for j, a in enumerate(block)]
                for i, block in enumerate(alpha.blocks)]

    xs1 = products(beta1, pk.alpha1, embed_b)
    xs2 = products(beta2, pk.alpha2, embed_c)
    tried = 0
    for t0 in group.elements():
        tried += 1
        if t0.in_center():
            continue
        t1 = _chain(t0, xs1, pk.gamma1.blocks)
        if t1 is None:
            continue
        t2 = _chain(t1[-1], xs2, pk.gamma2.blocks)
        if t2 is None:
            continue
        try:
            sk = PrivateKey(beta1, beta2, tuple(t1), tuple(t2), pk)
            m = decrypt(sk, ct)
        except (MST3Error, ValueError):
            continue
        return AttackReport("tkey", q, tried, True, sk, m, time.perf_counter() - start)
    return AttackReport("tkey", q, tried, False, wall_time=time.perf_counter() - start)
