"""Exceptions raised by ramfilt."""


class RamfiltError(ValueError):
    """Base class for all input and domain errors."""


class DimensionMismatch(RamfiltError):
    pass


class NotPrime(RamfiltError):
    pass


class NotIrreducible(RamfiltError):
    pass


class NotEisenstein(RamfiltError):
    pass


class PrecisionTooSmall(RamfiltError):
    pass


class NonUnit(RamfiltError):
    pass


class AtPrecisionZero(RamfiltError):
    """The element vanishes to the working precision."""


class NotPrincipalUnit(RamfiltError):
    pass


class NotApplicable(RamfiltError):
    """The operation needs a hypothesis on K that fails (usually zeta_p in K)."""


class PrecisionExhausted(RamfiltError):
    """The strip loop ran out of pi-adic precision; build the field with a larger M."""


class ZeroInput(RamfiltError):
    pass


class NotHyperplane(RamfiltError):
    pass


class NotDivisible(RamfiltError):
    pass


class ZeroClass(RamfiltError):
    pass


class NotSorted(RamfiltError):
    pass


class ZetaInK(RamfiltError):
    """Maus' criterion only covers fields without p-th roots of unity."""


class NotAdmissible(RamfiltError):
    pass


class SelfVerificationFailed(RuntimeError):
    """A constructed witness does not reproduce its claimed filtration (internal bug)."""
