"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A function argument or model parameter is outside its valid range."""


class DivergenceError(ParameterError):
    """The requested quantity is mathematically divergent for these parameters."""


class ConfigurationError(ValueError):
    """An experiment configuration is inconsistent or not runnable."""
