import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from mst3ree import worked_example as example
from mst3ree.errors import (
    BadPermutation,
    InvalidSignature,
    NoMatchingRow,
    OutOfRange,
    ResidueNonzero,
)
from mst3ree.logsig import (
    Cover,
    FactorIndex,
    LogSignature,
    SignatureType,
    as_index,
    canonical_signature,
    cover_evaluate,
    generate_cover,
    generate_tame,
    logsig_evaluate,
    logsig_factorize,
    mixed_radix_decode,
    mixed_radix_encode,
    random_permutation,
)

T933 = SignatureType.of(9, 9, 3)
T399 = SignatureType.of(3, 9, 9)


# -- signature types and mixed radix -----------------------------------------

def test_type_properties():
    assert T933.s == 3
    assert T933.widths == (2, 2, 1)
    assert T933.offsets == (0, 2, 4)
    assert T933.n == 5
    assert T933.order == 243
    assert T933.total_rows == 21
    assert str(T399) == "(3,9,9)"


@pytest.mark.parametrize("radices", [(), (2, 3), (1, 243), (6,)])
def test_bad_types(radices):
    with pytest.raises(ValueError):
        SignatureType(radices)


def test_worked_example_digits():
    assert oracles.mixed_radix_digits(29, (9, 9, 3)) == (2, 3, 0)
    assert oracles.mixed_radix_digits(31, (3, 9, 9)) == (1, 1, 1)
    assert mixed_radix_decode(29, T933).digits == (2, 3, 0)
    assert mixed_radix_decode(31, T399).digits == (1, 1, 1)
    assert mixed_radix_decode(example.R1, example.TYPE1).digits == example.R1_DIGITS


def test_mixed_radix_matches_oracle_exhaustively():
    t = SignatureType.of(3, 9, 3)
    for R in range(t.order):
        idx = mixed_radix_decode(R, t)
        assert idx.digits == oracles.mixed_radix_digits(R, t.radices)
        assert mixed_radix_encode(idx.digits, t) == idx


@given(st.integers(0, 242))
def test_mixed_radix_round_trip(R):
    idx = mixed_radix_decode(R, T933)
    assert mixed_radix_encode(idx.digits, T933).value == R
    assert as_index(idx, T933) == as_index(R, T933) == as_index(list(idx.digits), T933)


def test_mixed_radix_range():
    with pytest.raises(OutOfRange):
        mixed_radix_decode(243, T933)
    with pytest.raises(OutOfRange):
        mixed_radix_decode(-1, T933)
    with pytest.raises(OutOfRange):
        mixed_radix_encode((9, 0, 0), T933)
    with pytest.raises(OutOfRange):
        mixed_radix_encode((0, 0), T933)


# -- tame signatures ----------------------------------------------------------

def test_generate_tame_shape(f5, rng):
    sig = generate_tame(f5, T933, rng)
    assert [len(b) for b in sig.blocks] == [9, 9, 3]
    for i, block in enumerate(sig.blocks):
        hi = T933.offsets[i] + T933.widths[i]
        assert sorted(sig.block_digit(i, row) for row in block) == list(range(T933.radices[i]))
        for row in block:
            assert not any(row.trits[hi:])


def test_generate_tame_is_seeded(f5):
    a = generate_tame(f5, T399, random.Random(3))
    b = generate_tame(f5, T399, random.Random(3))
    assert a == b


def test_example_signature_labels(f5):
    for rows, labels, t in ((example.BETA1, example.BETA1_POWERS, example.TYPE1),
                            (example.BETA2, example.BETA2_POWERS, example.TYPE2)):
        sig = example.signature(rows, t)
        for block, label_block in zip(sig.blocks, labels):
            for row, k in zip(block, label_block):
                if k is None:
                    assert not row
                else:
                    assert f5.dlog(row) == k


def test_example_factorization_with_residues(f5):
    beta1 = example.signature(example.BETA1, example.TYPE1)
    idx, residues = beta1.peel(f5.from_trits(example.BETA1_VALUE))
    assert idx == FactorIndex(29, (2, 3, 0))
    assert [str(r) for r in residues] == example.BETA1_RESIDUES
    assert f5.dlog(f5.from_trits(example.BETA1_VALUE)) == 2

    beta2 = example.signature(example.BETA2, example.TYPE2)
    idx, residues = beta2.peel(f5.from_trits(example.BETA2_VALUE))
    assert idx == FactorIndex(31, (1, 1, 1))
    assert [str(r) for r in residues] == example.BETA2_RESIDUES
    assert f5.dlog(f5.from_trits(example.BETA2_VALUE)) == 227


@pytest.mark.parametrize("rows,t", [(example.BETA1, example.TYPE1), (example.BETA2, example.TYPE2)])
def test_example_signatures_are_bijective(f5, rows, t):
    sig = example.signature(rows, t)
    values = [sig.evaluate(R) for R in range(243)]
    assert len(set(values)) == 243
    for R, v in enumerate(values):
        assert sig.factorize(v).value == R


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 32), st.sampled_from([(9, 9, 3), (3, 9, 9), (243,), (3, 3, 3, 3, 3), (27, 9)]))
def test_tame_factorization_property(seed, radices):
    from mst3ree.field import make_field

    f = make_field(5, "120001")
    t = SignatureType(radices)
    rng = random.Random(seed)
    sig = random_permutation(generate_tame(f, t, rng), rng)
    for _ in range(20):
        R = rng.randrange(243)
        assert logsig_factorize(sig, logsig_evaluate(sig, R)).value == R


def test_canonical_signature_is_identity_map(f5):
    sig = canonical_signature(f5, T933)
    for R in range(243):
        assert sig.evaluate(R).to_int() == R


def test_permutation_preserves_the_map(f5, rng):
    sig = generate_tame(f5, T933, rng)
    perm = list(reversed(range(9)))
    shuffled = sig.permute_block_rows(0, perm)
    assert shuffled.blocks[0][0] == sig.blocks[0][8]
    assert shuffled != sig
    for R in range(243):
        assert shuffled.evaluate(R) == sig.evaluate(R)
    with pytest.raises(BadPermutation):
        sig.permute_block_rows(0, [0] * 9)
    with pytest.raises(BadPermutation):
        sig.permute_block_rows(3, list(range(3)))


def test_invalid_signatures(f5):
    good = [list(b) for b in canonical_signature(f5, T933).blocks]
    dup = [b[:] for b in good]
    dup[1][1] = dup[1][2]
    with pytest.raises(InvalidSignature):
        LogSignature(f5, T933, dup)
    high = [b[:] for b in good]
    high[0][1] = f5.from_trits("10001")  # trit above block 1
    with pytest.raises(InvalidSignature):
        LogSignature(f5, T933, high)
    with pytest.raises(InvalidSignature):
        LogSignature(f5, T933, good[:2])
    with pytest.raises(ValueError):
        LogSignature(f5, SignatureType.of(9, 3), good[:2])


def test_factorize_failures(f5):
    # a partial structure in which block 3 misses digit 2 cannot be built, so
    # exercise the peel errors on a hand-made object
    sig = canonical_signature(f5, T933)
    sig._by_index[2].pop(2)
    with pytest.raises(NoMatchingRow):
        sig.factorize(f5.from_trits("00002"))
    sig = canonical_signature(f5, T933)
    sig._by_index[0][1] = f5.from_trits("11000")
    with pytest.raises(ResidueNonzero):
        sig.factorize(f5.from_trits("10000"))


# -- covers -------------------------------------------------------------------

def test_example_cover_values(u5):
    alpha1 = example.cover(example.ALPHA1, example.TYPE1)
    alpha2 = example.cover(example.ALPHA2, example.TYPE2, zero_a=True)
    assert alpha1.evaluate(example.R1) == example.element(example.ALPHA1_R1)
    assert cover_evaluate(alpha2, example.R2) == example.element(example.ALPHA2_R2)
    # the printed alpha1 has one zero coordinate
    assert alpha1.has_zero_coordinates()
    assert not alpha2.has_zero_coordinates()


def test_cover_multiplies_left_to_right(u5):
    alpha1 = example.cover(example.ALPHA1, example.TYPE1)
    d = mixed_radix_decode(example.R1, example.TYPE1).digits
    rows = [alpha1.row(i, j) for i, j in enumerate(d)]
    assert alpha1.evaluate(example.R1) == rows[0] * rows[1] * rows[2]
    # the group is nonabelian here, so the order matters
    assert alpha1.evaluate(example.R1) != rows[2] * rows[1] * rows[0]


def test_generate_cover(u5, rng):
    c = generate_cover(u5, T933, rng)
    assert not c.has_zero_coordinates()
    c0 = generate_cover(u5, T399, rng, zero_a=True)
    assert not c0.has_zero_coordinates()
    assert all(row.in_u1() for block in c0.blocks for row in block)
    assert all(c0.evaluate(R).in_u1() for R in range(243))


def test_zero_a_cover_rejects_a(u5, rng):
    c = generate_cover(u5, T933, rng)
    with pytest.raises(InvalidSignature):
        Cover(u5, T933, c.blocks, zero_a=True)
