"""Exception types raised by the verification library."""


class VerificationError(Exception):
    """Base class for every library error."""


class NotSelfAdjoint(VerificationError):
    pass


class DescriptorMismatch(VerificationError):
    pass


class EmptySample(VerificationError):
    pass


class DomainEscape(VerificationError):
    """An iterate of the self-map left the declared domain."""


class TailNotConverged(VerificationError):
    pass


class NormBoundViolated(VerificationError):
    pass


class ConfigMismatch(VerificationError):
    pass


class ConfigError(VerificationError):
    """Invalid run configuration; the CLI maps this to exit code 2."""
