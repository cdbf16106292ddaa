class PorosityError(Exception):
    """Base class for errors raised by porolbp."""


class GeometryError(PorosityError, ValueError):
    """Bad sizes, windows, segment lengths or mismatched dimensions."""


class FormatError(PorosityError, ValueError):
    """A file could not be parsed (image, model or grade table)."""
