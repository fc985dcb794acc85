"""Exception taxonomy shared by every module.

Four failure categories, kept deliberately flat:

* ``ParseError``      -- bad input text (graph files, element JSON); carries a line number when one makes sense
* ``DomainError``     -- a precondition violated by otherwise well-formed arguments (host mismatch, wrong kind, ...)
* ``ResourceLimitError`` -- a configured cap would be exceeded; the message says which cap and how to raise it
* ``StructureError``  -- input data fails a structural requirement discovered mid-computation (e.g. a composition
                         table that cannot come from a subgraph semigroup)
"""


class ParseError(ValueError):
    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno


class DomainError(ValueError):
    pass


class ResourceLimitError(RuntimeError):
    pass


class StructureError(RuntimeError):
    pass
