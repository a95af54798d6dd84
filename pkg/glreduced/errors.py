"""
Error types for the reduced Ginzburg-Landau toolkit
Every failure raised by a public operation derives from GLReducedError
"""


class GLReducedError(Exception):
    """Base class for all domain errors"""


class InvalidCounts(GLReducedError):
    pass


class NonQuantizedFlux(GLReducedError):
    """Magnetic-periodic cross-section with R^2 / 2pi not a positive integer"""


class DimensionMismatch(GLReducedError):
    pass


class GridMismatch(GLReducedError):
    pass


class BoxOutOfDomain(GLReducedError):
    pass


class NotConverged(GLReducedError):
    """Raised only on request; solvers normally return the best iterate"""


class EigsNotConverged(GLReducedError):
    pass


class ClusterNotSeparated(GLReducedError):
    pass


class WrongDegeneracy(GLReducedError):
    """Lowest cluster size differs from the flux quanta (under-resolved grid)"""


class HypothesisViolated(GLReducedError):
    pass


class NotApplicable(GLReducedError):
    pass


class PartitionInvalid(GLReducedError):
    pass


class CorruptCacheEntry(GLReducedError):
    pass


class ReportWriteError(GLReducedError):
    pass
