"""Exception hierarchy shared by every module of the package."""


class TripodCertError(Exception):
    """Base class for all package errors."""


class InvalidGraphError(TripodCertError, ValueError):
    """A digraph, path or linkage violates its structural invariants."""


class PreconditionError(TripodCertError, ValueError):
    """An operation was called on inputs outside its contract."""


class HypothesisError(PreconditionError):
    """A path family fails one of the hypotheses required for harvesting.

    ``bullet`` names the failed hypothesis so callers can report it.
    """

    def __init__(self, bullet: str, message: str):
        super().__init__(f"[{bullet}] {message}")
        self.bullet = bullet


class MatroidAxiomError(TripodCertError):
    """An independence oracle contradicted the matroid axioms."""


class SearchFailure(TripodCertError):
    """A bounded search ran out of options.

    ``bound_diagnostic`` is set when the failure happened although the
    input met the configured size threshold, i.e. the threshold is an
    underestimate rather than the input being too small.
    """

    def __init__(self, message: str, *, bound_diagnostic: bool = False):
        super().__init__(message)
        self.bound_diagnostic = bound_diagnostic


class HarvestFailure(SearchFailure):
    """No onion-star (or rooted onion family) was found."""


class BoundParameterError(SearchFailure):
    """A constructive step failed because a configured bound is too small."""


class InternalSoundnessError(TripodCertError, AssertionError):
    """A certificate produced internally failed independent verification."""
