"""Exception types shared across the toolkit.

Everything user-facing derives from MolaffError so the CLI can map any
expected failure to exit code 2 while genuine bugs stay exit code 1.
"""


class MolaffError(Exception):
    """Base class for all expected toolkit failures."""


# --- ingest ---------------------------------------------------------------

class DuplicateIdError(MolaffError):
    """A molecule ID occurs more than once in an input table."""


class NonNumericCellError(MolaffError):
    """A feature cell could not be parsed as a finite number."""

    def __init__(self, row: int, col: str, value: str):
        self.row = row
        self.col = col
        self.value = value
        super().__init__(f"non-numeric cell at row {row}, column {col!r}: {value!r}")


class EmptyCellError(MolaffError):
    """A feature cell is empty and incomplete rows were not allowed."""

    def __init__(self, row: int, col: str):
        self.row = row
        self.col = col
        super().__init__(f"empty cell at row {row}, column {col!r}")


class FormatError(MolaffError):
    """Structurally malformed input file (header, column layout, ...)."""


class MissingColumnError(MolaffError):
    """A table column has no entry in the supplied scaler parameters."""


class InsufficientLabelsError(MolaffError):
    """Too few labeled records to perform the requested split."""


# --- smiles ---------------------------------------------------------------

class SmilesError(MolaffError):
    """Base class for SMILES parse failures."""


class UnbalancedParenthesisError(SmilesError):
    pass


class UnmatchedRingClosureError(SmilesError):
    pass


class UnknownSymbolError(SmilesError):
    pass


class SubgraphTooLargeError(MolaffError):
    """Fluorinated-carbon subgraph exceeds the exact longest-path cap."""


class ValenceWarning(UserWarning):
    """An atom's bond order total exceeds its standard maximum valence."""


# --- simgraph -------------------------------------------------------------

class ZeroVectorError(MolaffError):
    """Cosine similarity is undefined for an all-zero vector."""


class NoLabeledNodesError(MolaffError):
    """Pruning removed every node: no component contained a labeled node."""


# --- gnn ------------------------------------------------------------------

class ShapeMismatchError(MolaffError):
    """Matrix dimensions do not chain through the model."""


class EmptyMaskError(MolaffError):
    """Masked loss requested over an empty node subset."""


class UnknownVersionError(MolaffError):
    """Serialized model carries an unsupported format version."""


# --- baselines ------------------------------------------------------------

class SingularSystemError(MolaffError):
    """Normal equations are singular (collinear features at alpha=0)."""


# --- cli ------------------------------------------------------------------

class ConfigError(MolaffError):
    """Invalid or incomplete pipeline configuration."""
