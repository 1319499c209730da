"""Exception hierarchy. Each top-level class maps to one CLI exit code."""


class ModTransError(Exception):
    exit_code = 1


class DecodeError(ModTransError, ValueError):
    """Malformed or unsupported wire data in a model file."""

    exit_code = 2


class ExtractError(ModTransError, ValueError):
    exit_code = 3


class UnsupportedDTypeError(ExtractError):
    pass


class WorkloadError(ModTransError, ValueError):
    """Bad workload input or a strategy whose requirements are unmet."""

    exit_code = 4


class WorkloadParseError(WorkloadError):
    pass


class ZooError(ModTransError):
    exit_code = 5


class UnknownModelError(ZooError, KeyError):
    exit_code = 2

    def __str__(self) -> str:
        return Exception.__str__(self)


class ManifestError(ZooError, ValueError):
    pass


class FetchError(ZooError):
    pass


class DigestMismatchError(ZooError):
    pass
