from enum import Enum


class ErrorCode(Enum):
    """Distinct codes for everything a validation step can reject."""
    OPEN_FORMULA = 'open-formula'
    ARITY_VIOLATION = 'arity-violation'
    DUPLICATE_SYMBOL = 'duplicate-symbol'
    EMPTY_QUERY = 'empty-query'
    FOREIGN_SYMBOL = 'foreign-symbol'
    NOT_SIMPLE = 'not-simple'
    NOT_NORMALIZED = 'not-normalized'
    UNBOUND_SET_VARIABLE = 'unbound-set-variable'
    SECOND_ORDER_QUANTIFIER = 'second-order-quantifier'
    INVALID_MODEL = 'invalid-model'
    UNDEFINED_IMAGE = 'undefined-image'
    UNBOUND_TRACK = 'unbound-track'
    ARITY_MISMATCH = 'arity-mismatch'
    INVALID_BOUNDS = 'invalid-bounds'


class LogicError(Exception):
    """Base class of all errors raised by the pipeline."""


class ParseError(LogicError):
    """Malformed input text.

    Attributes:
    - line (int): 1-based line of the offending token (0 if unknown)
    - column (int): 1-based column of the offending token (0 if unknown)
    """
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        location = f" at line {line}, column {column}" if line else ''
        super().__init__(f"{message}{location}")


class ValidationError(LogicError):
    """Well-formed input that violates a semantic requirement.

    Attributes:
    - code (ErrorCode): Which requirement was violated
    """
    def __init__(self, code: ErrorCode, message: str):
        self.code = code
        super().__init__(f"[{code.value}] {message}")
