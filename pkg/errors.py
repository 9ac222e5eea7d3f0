## adder-ud
## errors.py

from typing import List, Optional


class AdderCodeError(Exception):
    """Base class for every error raised by the adder-ud modules."""


class CodeFormatError(AdderCodeError, ValueError):
    """A code file or code record could not be turned into a CodeSystem."""

    def __init__(self, message: str, location: Optional[str] = None):
        self.location = location
        if location:
            message = f"{location}: {message}"
        super().__init__(message)


class CodewordRangeError(CodeFormatError):
    pass


class DuplicateCodewordError(CodeFormatError):
    pass


class InvalidPermutationError(AdderCodeError, ValueError):
    pass


class GuardExceededError(AdderCodeError):
    """Exhaustive enumeration would visit more tuples than allowed."""

    def __init__(self, count: int, limit: int, what: str = "tuples"):
        self.count = count
        self.limit = limit
        super().__init__(f"{count} {what} exceed the enumeration limit of {limit}")


class EmptyConstituentError(AdderCodeError):
    """A banded constituent came out empty; the parameters are too tight."""

    def __init__(self, index: int, message: Optional[str] = None):
        self.index = index
        super().__init__(message or f"constituent {index} is empty for these parameters")


class BalancedSeedError(AdderCodeError):
    """The normalized first code already has average weight d/2."""


class CertificationError(AdderCodeError):
    """Weight separation between the two glued halves does not hold."""


class InvalidSizesError(AdderCodeError, ValueError):
    pass


class UnknownCatalogEntryError(AdderCodeError, KeyError):
    def __init__(self, name: str, valid: List[str]):
        self.name = name
        self.valid = list(valid)
        super().__init__(f"unknown catalog entry {name!r}; valid names: {', '.join(self.valid)}")

    def __str__(self) -> str:
        return self.args[0]
