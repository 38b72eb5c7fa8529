"""Exception hierarchy shared by all modules.

Each class maps onto one CLI exit code (see ``ratsurf.cli``).
"""


class RatsurfError(Exception):
    """Base class for every error raised by the package."""


class DimensionError(RatsurfError, ValueError):
    """Divisor classes or points living on surfaces with different r."""


class ConfigurationError(RatsurfError, ValueError):
    """A surface model or curve violates its construction invariants."""


class UnsupportedModelError(RatsurfError, TypeError):
    """Operation needs a concrete blow-up but got an abstract configuration."""


class NotNefError(RatsurfError, ValueError):
    """A divisor asserted to be nef fails a necessary nefness check."""


class CapabilityError(RatsurfError):
    """Input is valid but beyond what the exact desk-scale algorithms handle."""


class DegeneratePencilError(RatsurfError, ValueError):
    """Every member of the pencil has a non-isolated singular locus."""


class NonIsolatedSingularitiesError(RatsurfError, ValueError):
    """The curve has a singular locus of positive dimension (a repeated component)."""
