# Exceptions raised by library code. Entry scripts map them to exit codes.

class ScenOptError(Exception):
    """
    ----------
    - Base class for every error raised on purpose by this code base
    ----------
    """
    pass

class InvalidArgumentError(ScenOptError, ValueError):
    pass

class ConfigError(ScenOptError, ValueError):
    pass

class MissingArtifactError(ScenOptError, FileNotFoundError):
    pass

class GenerationFailedError(ScenOptError, RuntimeError):
    pass

class TrainingDivergedError(ScenOptError, RuntimeError):
    pass

class ExpansionError(ScenOptError, RuntimeError):
    pass

# is_validation_error
def is_validation_error(err):
    """
    ----------
    - True when err should exit with the validation code rather than the runtime code
    ----------
    """

    return isinstance(err, (InvalidArgumentError, ConfigError, MissingArtifactError))
