"""Exception types shared across the package.

The split mirrors the CLI exit-code contract: problems with input files or
their contents raise DataError (exit 2), inconsistent or unsatisfiable
settings raise ConfigError (exit 3).
"""


class DataError(Exception):
    """Raised when an input file is missing, malformed, or fails validation."""


class ConfigError(Exception):
    """Raised when a configuration is invalid or incompatible with the data."""
