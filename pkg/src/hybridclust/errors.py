"""Exception hierarchy shared by every module of the package."""


class HybridClustError(Exception):
    """Base class for all errors raised by hybridclust."""


class InvalidInput(HybridClustError, ValueError):
    """Argument has the wrong shape, contains non-finite values or is out of range."""


class InvalidConfig(InvalidInput):
    """Structural parameters are inconsistent (e.g. N_t not divisible by N_RF)."""


class DegenerateChannel(HybridClustError):
    """A channel (or equivalent channel) is identically zero."""


class DegenerateColumn(HybridClustError):
    """A column of the full-digital precoder is identically zero."""


class DegenerateCluster(HybridClustError):
    """The member sum of an RF cluster is identically zero."""


class DegenerateBlock(HybridClustError):
    """A sub-array block of the left-singular matrix is identically zero."""


class DegeneratePrecoder(HybridClustError):
    """A baseband refinement produced an all-zero hybrid precoder."""


class BoundUndefined(HybridClustError):
    """A spectral-efficiency bound requires a full-rank matrix that is rank deficient."""


class ConfigError(HybridClustError):
    """Scenario configuration failed validation.

    ``field`` holds the dotted path of the offending entry.
    """

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)


class IoError(HybridClustError, OSError):
    """Writing or reading a result file failed."""
