"""Exception hierarchy shared by the toolkit."""


class KnotidError(Exception):
    """Base class for all toolkit errors."""


class EgcError(KnotidError, ValueError):
    """Malformed or inconsistent extended Gauss code."""


class PolynomialError(KnotidError, ValueError):
    """Malformed polynomial string."""


class KnotNameError(KnotidError, ValueError):
    """Malformed or non-canonical knot type name."""


class TableError(KnotidError, ValueError):
    """Malformed knot table file."""


class CoordinateError(KnotidError, ValueError):
    """Malformed coordinate file or degenerate polygon."""


class ProjectionError(KnotidError, RuntimeError):
    """Projection stayed degenerate after the maximum number of retries."""


class SkeinLimitError(KnotidError, RuntimeError):
    """Resource cap exceeded while resolving a skein tree."""
