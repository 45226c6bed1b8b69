class ProglabError(Exception):
    """Base class for library errors."""


class ValidationError(ProglabError, ValueError):
    """Bad argument: out-of-range code, width, index, or malformed input file."""


class CorruptStreamError(ProglabError, ValueError):
    """A codeword stream references a phrase that does not exist."""
