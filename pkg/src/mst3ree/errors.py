"""Exception hierarchy shared by every layer of the package."""


class MST3Error(Exception):
    """Base class for all errors raised by mst3ree."""


# field layer

class FieldError(MST3Error, ValueError):
    pass


class EvenDegree(FieldError):
    pass


class NonMonic(FieldError):
    pass


class NotIrreducible(FieldError):
    pass


class NotPrimitive(FieldError):
    pass


class ParamsMismatch(MST3Error, TypeError):
    """Operands belong to different fields or groups."""


class ZeroInverse(FieldError, ZeroDivisionError):
    pass


class ZeroDlog(FieldError):
    pass


class FieldTooLargeForDlog(FieldError):
    pass


# signatures and covers

class SignatureError(MST3Error, ValueError):
    pass


class OutOfRange(SignatureError):
    pass


class InvalidSignature(SignatureError):
    """Block structure violates the tame (noise-below, zeros-above) layout."""


class NoMatchingRow(SignatureError):
    pass


class ResidueNonzero(SignatureError):
    pass


class BadPermutation(SignatureError):
    pass


# cryptosystem

class SchemeError(MST3Error, ValueError):
    pass


class NotInU1(SchemeError):
    pass


class FactorizationFailed(SchemeError):
    pass


class NotInU1Result(SchemeError):
    """Decryption produced an element with a != 0 (corrupt ciphertext or wrong key)."""


# attacks

class SearchSpaceTooLarge(MST3Error, ValueError):
    pass


# byte codec and file formats

class CodecError(MST3Error, ValueError):
    pass


class BlockOverflow(CodecError):
    pass


class BadPadding(CodecError):
    pass


class FormatError(MST3Error, ValueError):
    """Malformed or unsupported key/ciphertext file."""
