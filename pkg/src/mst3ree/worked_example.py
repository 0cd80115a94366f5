"""Fixture data for the GF(3^5) worked example, g(x) = x^5 + 2x + 1.

Signature rows are trit strings (constant term first, grouped by block the
way they are printed).  Group elements are alpha-power triples where
``None`` is the zero coordinate, so ``(48, None, 26)`` is S(a^48, 0, a^26).

Transcription notes (every value below reproduces the walkthrough; these
are the places where the printed tables are incomplete or garbled):

* beta2 block 2 row 6 ("1 02 00") has no alpha label in print; it is a^195.
* alpha1 block 1 row 0 is printed with a zero b coordinate, although random
  cover entries are meant to be nonzero.  Kept verbatim; gamma1 agrees.
* The t(1) column labels its fourth inverse "t-10(1)"; the values are those
  of t3(1)^-1 = t0(2)^-1, consistent with the chaining t3(1) = t0(2).
* The D* step prints f(y1) = S(0, a^86, a^186) as the left factor; the
  product only yields S(0, a^2, a^176) with f(y1)^-1 there, which is what
  the decryption formula states.
* The example's group law is typeset with exponent 3^t; the printed
  products are reproduced by x^(3t) = x^27 = x^(3^(m+1)).
* The gamma2 header prints S(h(2), h(2), h(2)); entries are ordinary triples.
"""

from __future__ import annotations

from .field import make_field
from .group import group_for
from .logsig import Cover, LogSignature, SignatureType
from .scheme import SchemeParams, assemble_keys

N = 5
G = "120001"  # x^5 + 2x + 1

TYPE1 = SignatureType.of(9, 9, 3)
TYPE2 = SignatureType.of(3, 9, 9)

BETA1 = [
    ["00 00 0", "10 00 0", "20 00 0", "01 00 0", "11 00 0", "21 00 0", "02 00 0", "12 00 0", "22 00 0"],
    ["21 00 0", "12 10 0", "02 20 0", "12 01 0", "01 11 0", "20 21 0", "20 02 0", "11 12 0", "11 22 0"],
    ["01 12 0", "02 20 1", "22 20 2"],
]
# alpha exponents printed next to each beta1 row
BETA1_POWERS = [
    [None, 0, 121, 1, 69, 5, 122, 126, 190],
    [5, 138, 191, 198, 11, 36, 86, 39, 22],
    [102, 150, 21],
]

BETA2 = [
    ["0 00 00", "1 00 00", "2 00 00"],
    ["0 00 00", "2 10 00", "2 20 00", "1 01 00", "0 11 00", "2 21 00", "1 02 00", "2 12 00", "2 22 00"],
    ["2 12 00", "1 21 10", "1 02 20", "2 22 01", "0 10 11", "1 02 21", "1 01 02", "2 00 12", "1 02 22"],
]
BETA2_POWERS = [
    [None, 0, 121],
    [None, 5, 190, 46, 70, 222, 195, 17, 131],  # 195 not printed, see notes
    [17, 30, 109, 105, 228, 154, 206, 220, 239],
]

ALPHA1 = [
    [(48, None, 26), (61, 11, 159), (233, 206, 67), (165, 204, 190), (6, 1, 78),
     (132, 85, 65), (24, 12, 79), (190, 211, 216), (19, 104, 98)],
    [(165, 28, 21), (204, 176, 228), (135, 126, 115), (215, 208, 99), (127, 69, 103),
     (150, 80, 206), (150, 43, 186), (54, 61, 34), (7, 51, 108)],
    [(78, 205, 15), (1, 26, 114), (166, 38, 31)],
]

ALPHA2 = [
    [(None, 139, 205), (None, 106, 210), (None, 86, 171)],
    [(None, 131, 132), (None, 133, 177), (None, 198, 96), (None, 101, 165), (None, 32, 88),
     (None, 239, 11), (None, 233, 85), (None, 0, 230), (None, 110, 93)],
    [(None, 241, 96), (None, 197, 165), (None, 117, 126), (None, 155, 152), (None, 156, 95),
     (None, 216, 34), (None, 24, 226), (None, 240, 55), (None, 35, 168)],
]

T1 = [(123, 31, 51), (133, 94, 26), (205, 149, 164), (241, 69, 45)]
T1_INV = [(2, 218, 170), (12, 94, 147), (84, 94, 214), (120, 28, 35)]
T2 = [(241, 69, 45), (206, 130, 106), (49, 10, 180), (97, 43, 118)]
T2_INV = [(120, 28, 35), (85, 174, 19), (170, 228, 211), (218, 37, 113)]

GAMMA1 = [
    [(193, 238, 29), (193, 4, 96), (193, 42, 166), (193, 213, 134), (193, 203, 19),
     (193, 231, 180), (193, 167, 214), (193, 179, 133), (193, 1, 70)],
    [(10, 15, 83), (10, 212, 82), (10, 215, 43), (10, 210, 185), (10, 141, 81),
     (10, 115, 162), (10, 22, 144), (10, 61, 232), (10, 197, 209)],
    [(75, 5, 168), (75, 141, 135), (75, 231, 57)],
]
GAMMA2 = [
    [(2, 160, 106), (2, 160, 131), (2, 160, 122)],
    [(56, 56, 209), (56, 56, 146), (56, 56, 7), (56, 56, 167), (56, 56, 32),
     (56, 56, 96), (56, 56, 132), (56, 56, 2), (56, 56, 177)],
    [(63, 68, 185), (63, 68, 169), (63, 68, 26), (63, 68, 223), (63, 68, 123),
     (63, 68, 26), (63, 68, 92), (63, 68, 212), (63, 68, 15)],
]

# the walkthrough
R1, R2 = 29, 31
R1_DIGITS, R2_DIGITS = (2, 3, 0), (1, 1, 1)
MESSAGE = (None, 0, 1)
GAMMA1_R1 = (206, 106, 219)
GAMMA2_R2 = (18, 154, 151)
Y1 = (86, 186, 113)
Y2 = (238, 210, 0)
Y3 = (None, None, 66)
ALPHA1_R1 = (86, 34, 217)
ALPHA2_R2 = (None, 66, 139)
GAMMA1_R1_INV = (85, 171, 11)
D1 = (None, 233, 143)
DSTAR1 = (None, 2, 176)
BETA1_VALUE = "00100"  # a^2
BETA1_RESIDUES = ["02010", "20000", "00000"]
Y2_PRIME = (18, 154, 151)
D2 = (None, None, 8)
Y3_INV = (None, None, 187)
DSTAR2 = (None, None, 227)
BETA2_VALUE = "10110"  # a^227
BETA2_RESIDUES = ["01000", "10000", "00000"]


def field():
    return make_field(N, G)


def group():
    return group_for(field())


def params() -> SchemeParams:
    return SchemeParams(group(), TYPE1, TYPE2)


def element(powers):
    return group().from_powers(*powers)


def signature(rows, sig_type) -> LogSignature:
    f = field()
    return LogSignature(f, sig_type, [[f.from_trits(r.replace(" ", "")) for r in block] for block in rows])


def cover(rows, sig_type, zero_a=False) -> Cover:
    return Cover(group(), sig_type, [[element(p) for p in block] for block in rows], zero_a=zero_a)


def keys():
    """Key pair rebuilt from the printed beta, alpha and t tables (gamma is recomputed)."""
    return assemble_keys(
        params(),
        signature(BETA1, TYPE1),
        signature(BETA2, TYPE2),
        cover(ALPHA1, TYPE1),
        cover(ALPHA2, TYPE2, zero_a=True),
        [element(p) for p in T1],
        [element(p) for p in T2],
    )
