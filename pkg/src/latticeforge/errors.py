"""Exception taxonomy shared across modules."""


class LatticeForgeError(ValueError):
    pass


# finite fields
class NotPrime(LatticeForgeError):
    pass


class TableTooLarge(LatticeForgeError):
    pass


# function-field lattices
class ZeroPlace(LatticeForgeError):
    pass


class SameNormClass(LatticeForgeError):
    pass


class UnknownLetter(LatticeForgeError):
    pass


class VerificationFailure(LatticeForgeError):
    """An emitted relation failed the exact algebra check; emission aborts."""


# Hurwitz lattices
class NotOddPrime(LatticeForgeError):
    pass


class CardinalityMismatch(LatticeForgeError):
    pass


class NoSolution(LatticeForgeError):
    pass


class MultipleSolutions(LatticeForgeError):
    pass


# presentations
class MalformedWord(LatticeForgeError):
    pass


# cube machinery
class DimensionMismatch(LatticeForgeError):
    pass


class IndexOutOfRange(LatticeForgeError):
    pass


class OddSize(LatticeForgeError):
    pass


class LinkFailure(LatticeForgeError):
    pass


# congruence quotients
class RamifiedPlace(LatticeForgeError):
    pass


class PlaceInS(LatticeForgeError):
    pass


class Reducible(LatticeForgeError):
    pass


class BadPlace(LatticeForgeError):
    pass


class NonInvertibleImage(LatticeForgeError):
    pass


# spectra
class UnknownDirection(LatticeForgeError):
    pass


class NonSymmetric(LatticeForgeError):
    pass
