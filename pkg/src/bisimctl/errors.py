"""Exception hierarchy shared by the library and the command line."""


class BisimError(Exception):
    """Base class for every error raised by bisimctl."""


class InputError(BisimError, ValueError):
    """Malformed user input: unknown names, partial maps, bad words."""


class ParseError(InputError):
    """Syntax or semantic error in one of the text formats."""

    def __init__(self, message, line=None, column=None, token=None):
        self.line = line
        self.column = column
        self.token = token
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class PreconditionError(BisimError):
    """An operation was called outside the conditions it is defined for."""

    code = "PRECONDITION"


class CategoryError(PreconditionError):
    """Label sets differ, or a label map is not the identity where one is required."""

    code = "CATEGORY"


class ConstructionError(PreconditionError):
    """A requested object cannot be built from the given data."""

    code = "CONSTRUCTION"


class FaithfulnessUnverified(PreconditionError):
    """The plant is not deterministic, so the synthesis pipeline refuses to run."""

    code = "FAITHFULNESS_UNVERIFIED"
