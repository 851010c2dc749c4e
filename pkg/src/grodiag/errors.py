"""Exception hierarchy shared by every grodiag module."""


class GrodiagError(Exception):
    """Base class for all library errors."""


class BackendMismatchError(GrodiagError, TypeError):
    """Operands belong to different Grothendieck groups / categories."""


class CompositionError(GrodiagError, ValueError):
    """Morphisms whose endpoints do not line up."""


class UnsupportedBackendError(GrodiagError, NotImplementedError):
    """Operation is only defined for some backends."""


class DomainError(GrodiagError, ValueError):
    """Argument outside the domain of an operation (diagonal interval, empty box, ...)."""


class OrderError(GrodiagError, ValueError):
    """A pair of parameters p, q with p > q where p <= q is required."""


class PreconditionError(GrodiagError, ValueError):
    """Input violates a documented precondition (e.g. non-positive diagram)."""


class ValidationError(GrodiagError, ValueError):
    """Malformed object: shapes, orders, well-definedness.

    ``problems`` carries the individual positional messages.
    """

    def __init__(self, problems):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class IngestionError(GrodiagError, ValueError):
    """Malformed input file or complex; message names the offending field or simplex."""
