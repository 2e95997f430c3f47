"""Exception hierarchy for the engine.

Everything raised on purpose derives from EngineError so the CLI can map
failures onto exit codes without fishing through stdlib exceptions.
"""


class EngineError(RuntimeError):
    pass


class UsageError(EngineError):
    """Bad input from the caller: malformed descriptor, wrong ring, bad flag."""


class ManifestError(UsageError):
    """Manifest rejected before computation; carries a pointer to the field."""

    def __init__(self, pointer, message):
        self.pointer = pointer
        super().__init__("%s: %s" % (pointer, message))


class ParseError(UsageError):
    """Polynomial or scalar literal failed to parse."""


class UnsupportedRingError(UsageError):
    """Operation not defined for this ring variant."""


class InconsistentPrimeError(EngineError):
    """A/p turned out not to be a domain (zero divisor found mid-elimination)."""


class NotDualisableError(EngineError):
    """Dual or tensor requested for an object without a finite resolution."""


class NotUnitError(EngineError):
    """Series operation needs an invertible constant term."""
