"""Exception types shared across the package."""


class ModelError(Exception):
    """Base class for model construction and analysis errors."""


class DuplicateNameError(ModelError):
    """Two entities of the same kind share a name."""

    def __init__(self, kind: str, name: str):
        super().__init__(f"duplicate {kind} name: {name!r}")
        self.kind = kind
        self.name = name


class DanglingReferenceError(ModelError):
    """A named reference does not resolve to any entity."""

    def __init__(self, owner: str, reference: str, expected: str):
        super().__init__(
            f"{owner} references unknown {expected} {reference!r}"
        )
        self.owner = owner
        self.reference = reference
        self.expected = expected


class RefinementCycleError(ModelError):
    """A goal or obstacle refinement chain loops back on itself."""

    def __init__(self, kind: str, cycle: list[str]):
        super().__init__(f"{kind} refinement cycle: {' -> '.join(cycle)}")
        self.kind = kind
        self.cycle = cycle


class UnknownEntityError(ModelError):
    """Lookup of a named entity failed."""

    def __init__(self, kind: str, name: str):
        super().__init__(f"unknown {kind}: {name!r}")
        self.kind = kind
        self.name = name


class UnknownReferenceError(ModelError):
    """A workbook row keys on something not present in the model."""

    def __init__(self, row: int, message: str):
        super().__init__(f"row {row}: {message}")
        self.row = row


class InvalidEnumError(ModelError):
    """A label is not one of the declared enum values."""

    def __init__(self, field: str, value: str, allowed: list[str]):
        super().__init__(
            f"invalid {field} {value!r}; expected one of {', '.join(allowed)}"
        )
        self.field = field
        self.value = value
        self.allowed = allowed


class OutOfRangeError(ModelError):
    """A numeric value lies outside its declared range."""


class ParseError(ModelError):
    """A document or workbook could not be parsed.

    Carries the position (line, column when known) of the failure.
    """

    def __init__(self, message: str, line: int | None = None,
                 column: int | None = None):
        where = ""
        if line is not None:
            where = f" at line {line}"
            if column is not None:
                where += f", column {column}"
        super().__init__(message + where)
        self.line = line
        self.column = column
