"""Exception types shared across the package.

The CLI maps these onto its exit-code contract: usage errors exit 1,
I/O errors (OSError) exit 2, shape/data errors exit 3.
"""


class ShapeMismatchError(ValueError):
    """Array dimensions disagree where they are required to match."""


class DataError(ValueError):
    """Input file or value is structurally invalid (bad meta, bad range)."""
