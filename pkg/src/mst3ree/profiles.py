"""Named parameter sets and key-size arithmetic."""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field

from .field import make_field
from .group import group_for
from .logsig import SignatureType
from .scheme import SchemeParams

log = logging.getLogger(__name__)


class SizingWarning(UserWarning):
    """A reference sizing figure that does not add up."""


@dataclass(frozen=True)
class Profile:
    name: str
    n: int
    g: str
    type1: SignatureType
    type2: SignatureType
    description: str = ""

    def params(self) -> SchemeParams:
        return SchemeParams(group_for(make_field(self.n, self.g)), self.type1, self.type2)


_BIG = 3 ** 5

PROFILES = {
    "toy": Profile("toy", 3, "1201", SignatureType.of(3, 9), SignatureType.of(9, 3),
                   "GF(3^3), g = x^3 + 2x + 1; small enough for exhaustive tests and attacks"),
    "paper": Profile("paper", 5, "120001", SignatureType.of(9, 9, 3), SignatureType.of(3, 9, 9),
                     "GF(3^5), g = x^5 + 2x + 1; the worked-example parameters"),
    "large": Profile("large", 81, "2" + "0" * 39 + "1" + "0" * 40 + "1",
                     SignatureType((_BIG,) * 16 + (3,)), SignatureType((3,) + (_BIG,) * 16),
                     "GF(3^81), g = x^81 + x^40 + 2; blocks of 3^5 rows.  An extrapolation, "
                     "not a claimed security level"),
}


def get_profile(name: str) -> Profile:
    try:
        return PROFILES[name]
    except KeyError:
        raise ValueError(f"unknown profile {name!r}; choose from {sorted(PROFILES)}") from None


@dataclass
class SizingClaim:
    """Rows needed by s blocks of r rows, against the field size they are said to serve."""

    r: int
    s: int
    claimed_exponent: int
    rows_per_signature: int = 0
    implied_exponent: int = 0
    warnings: list[str] = field(default_factory=list)

    def __post_init__(self):
        h = SignatureType.of(self.r).widths[0]
        self.rows_per_signature = self.s * self.r
        self.implied_exponent = self.s * h
        if self.implied_exponent != self.claimed_exponent:
            self.warnings.append(
                f"s = {self.s} blocks of r = 3^{h} span q = 3^{self.implied_exponent}, "
                f"not the stated 3^{self.claimed_exponent}")
        if self.claimed_exponent % 2 == 0:
            self.warnings.append(
                f"3^{self.claimed_exponent} has an even exponent; U(q) needs q = 3^(2m+1)")

    @property
    def consistent(self) -> bool:
        return not self.warnings


# the reference 128-bit sizing: q = 3^80, r_i = 3^5, s = 8, "1944 entries"
REFERENCE_CLAIM = dict(r=_BIG, s=8, claimed_exponent=80)


@dataclass
class SizingReport:
    profile: str
    n: int
    rows_type1: int
    rows_type2: int
    s1: int
    s2: int
    ciphertext_trits: int
    claim: SizingClaim

    @property
    def warnings(self) -> list[str]:
        return self.claim.warnings

    def lines(self) -> list[str]:
        c = self.claim
        out = [
            f"profile {self.profile}: q = 3^{self.n}",
            f"  type1 blocks s = {self.s1}, rows per signature = {self.rows_type1}",
            f"  type2 blocks s = {self.s2}, rows per signature = {self.rows_type2}",
            f"  ciphertext block = 9 field elements = {self.ciphertext_trits} trits",
            f"reference sizing: r_i = {c.r}, s = {c.s}: rows per signature = s*r_i = {c.rows_per_signature}",
        ]
        out += [f"WARNING: {w}" for w in c.warnings]
        return out


def sizing_report(profile: Profile | str, claim: SizingClaim | None = None) -> SizingReport:
    """Key-size arithmetic for a profile plus the reference-claim cross-check.

    Inconsistencies in the claim are reported through :class:`SizingWarning`
    and kept in ``report.warnings``; nothing is silently corrected.
    """
    if isinstance(profile, str):
        profile = get_profile(profile)
    claim = claim or SizingClaim(**REFERENCE_CLAIM)
    for w in claim.warnings:
        log.warning("sizing: %s", w)
        warnings.warn(w, SizingWarning, stacklevel=2)
    return SizingReport(
        profile=profile.name,
        n=profile.n,
        rows_type1=profile.type1.total_rows,
        rows_type2=profile.type2.total_rows,
        s1=profile.type1.s,
        s2=profile.type2.s,
        ciphertext_trits=9 * profile.n,
        claim=claim,
    )
