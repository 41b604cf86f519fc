"""Exception types shared across the package."""


class InvalidParameterError(ValueError):
    """A sampler or model operation received an out-of-domain argument."""


class ConfigurationError(ValueError):
    """A run configuration is malformed or internally inconsistent."""


class DegenerateSampleError(ValueError):
    """A statistical test received a sample it is undefined for."""
