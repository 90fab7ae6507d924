"""Exception types shared across the package."""


class SimulationError(Exception):
    """Base class for every error this package raises deliberately."""


class ValidationError(SimulationError):
    """A value violates a structural precondition (bad key, bad field)."""


class ConfigError(SimulationError):
    """A configuration value, or a combination of values, is invalid."""


class DuplicateKeyError(SimulationError):
    """An operation would create a second entry for the same barcode."""


class IngestError(SimulationError):
    """A record file line could not be parsed."""

    def __init__(self, line_no: int, reason: str):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no
        self.reason = reason


class TraceFormatError(SimulationError):
    """A trace file line is malformed or breaks trace ordering."""

    def __init__(self, line_no: int, reason: str):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no
        self.reason = reason


class MissingRecordError(SimulationError):
    """A scanned barcode has no record in the knowledge base."""

    def __init__(self, barcode: str):
        super().__init__(f"barcode {barcode} has no knowledge-base record")
        self.barcode = barcode
