"""Exception hierarchy shared by all modules."""


class SubfitError(Exception):
    """Base class for every error raised by this package."""


class DocumentSyntaxError(SubfitError, ValueError):
    """A lattice or space document is not well-formed JSON of the expected shape."""


class DocumentSemanticError(SubfitError, ValueError):
    """A document parses but violates a uniqueness, reference or acyclicity rule."""


class NotALatticeError(SubfitError, ValueError):
    pass


class NoBoundsError(NotALatticeError):
    pass


class NotDistributiveError(SubfitError, ValueError):
    pass


class CapExceededError(SubfitError, ValueError):
    """An exhaustive computation would exceed its configured size cap."""


class PreconditionError(SubfitError, ValueError):
    pass


class TopologyError(SubfitError, ValueError):
    pass


class InternalConsistencyError(SubfitError, RuntimeError):
    """Two redundant computations of the same quantity disagree."""
