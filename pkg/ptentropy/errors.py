"""Error types raised by ptentropy.

Every error derives from ``ValueError`` so callers that only guard against
bad input (``except ValueError``) keep working.
"""


class PTEntropyError(ValueError):
    """Base class for all ptentropy errors."""


class InvalidParameters(PTEntropyError):
    """Model parameters violate a structural invariant."""


class RealityConditionViolated(PTEntropyError):
    """c1^2 <= kappa^2 - g^2 in the broken regime: the metric is not real."""


class NotBrokenRegime(PTEntropyError):
    """An operation that only exists in the broken regime was requested."""


class NonNormalizedState(PTEntropyError):
    """A pure state is not normalised under the relevant inner product."""


class InvalidWeights(PTEntropyError):
    """Ensemble weights are not a probability distribution."""


class SingularEta(PTEntropyError):
    """The Dyson map is numerically singular."""


class LabelMismatch(PTEntropyError):
    """A bipartition label does not fit the density matrix it is applied to."""


class NotADensityMatrix(PTEntropyError):
    """A matrix fails the trace, Hermiticity or positivity requirements."""


class UnsupportedTruncation(PTEntropyError):
    """The requested Fock-space excitation cap is not supported."""


class StepSizeTooLarge(PTEntropyError):
    """The RK4 integration drifted away from its first integral."""


class InvalidRunConfig(PTEntropyError):
    """A command-line or config-file setting is invalid."""
