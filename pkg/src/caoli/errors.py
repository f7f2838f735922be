"""Exception hierarchy shared by the scheme, the attack and the CLI."""


class CaoLiError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(CaoLiError, ValueError):
    """Operands have incompatible shapes."""


class InexactDivisionError(CaoLiError, ArithmeticError):
    """An integer division that must be exact left a remainder (or hit zero)."""


class StructureError(CaoLiError, ValueError):
    """A matrix lacks a required structural property (triangularity, symmetry, ...)."""


class ParameterError(CaoLiError, ValueError):
    """Scheme parameters cannot produce a valid key."""


class NonResidueError(CaoLiError, ValueError):
    """A value has no square root modulo the given prime."""


class InvalidMessageError(CaoLiError, ValueError):
    """A plaintext vector is outside the message space."""


class InvalidCiphertextError(CaoLiError, ValueError):
    """A ciphertext does not decrypt to a message that re-encrypts to it."""


class MalformedPublicKeyError(CaoLiError, ValueError):
    """The public matrix does not factor the way a Cao-Li public key must."""
