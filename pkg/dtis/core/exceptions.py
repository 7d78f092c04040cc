class FileFormatError(ValueError):
    """A result or input file does not follow its documented layout."""
