"""
Exceptions raised by the malcev.pi library.

All of them are ``ValueError`` subclasses: every failure here is a bad input
(an expression outside the grammar, a generator outside the permitted range,
a request above the configured degree limit, ...).
"""


class MalcevError(ValueError):
    """Base class for library errors."""


class OutOfRange(MalcevError):
    """A generator index is < 1, or larger than the permitted generator count."""

    def __init__(self, index, limit=None):
        self.index = index
        self.limit = limit
        if limit is None:
            message = f"Generator index {index} is out of range (indices start at 1)."
        else:
            message = f"Generator x{index} is out of range 1..{limit}."
        super().__init__(message)


class MissingAssignment(MalcevError):
    """``substitute`` met a generator with no image."""

    def __init__(self, generator):
        self.generator = generator
        super().__init__(f"No image assigned to generator x{generator}.")


class DegreeTooSmall(MalcevError):
    """An operation needs a larger total degree than it was given."""

    def __init__(self, degree, minimum):
        self.degree = degree
        self.minimum = minimum
        super().__init__(f"Degree {degree} is below the required minimum {minimum}.")


class MixedMultidegree(MalcevError):
    """Polynomials expected to share one multidegree do not."""


class InvalidMultidegree(MalcevError):
    """A multidegree is unreadable, empty or has a negative multiplicity."""


class DegenerateMultiset(MalcevError):
    """A multiset has fewer than three distinct generators."""


class NotMultilinear(MalcevError):
    """A polynomial was required to be multilinear and is not."""


class LimitExceeded(MalcevError):
    """A request exceeds the configured degree limit."""

    def __init__(self, degree, limit):
        self.degree = degree
        self.limit = limit
        super().__init__(
            f"Degree {degree} exceeds the configured limit {limit}. "
            f"A multilinear slice of degree n has n! columns: degree 7 takes minutes, "
            f"degree 8 considerably longer. Raise the limit with --max-degree if intended."
        )


class UnknownVariety(MalcevError):
    """A variety name is not registered."""


class ExpressionSyntaxError(MalcevError):
    """Malformed expression text.

    :param position: 0-based character offset where parsing failed.
    :param expected: description of the token(s) the parser expected.
    """

    def __init__(self, position, expected, text=None):
        self.position = position
        self.expected = expected
        self.text = text
        message = f"Syntax error at position {position}: expected {expected}."
        if text is not None:
            message += f"\n  {text}\n  {' ' * position}^"
        super().__init__(message)


class CacheCorrupt(MalcevError):
    """A cache file line could not be read back."""

    def __init__(self, path, line_no, reason):
        self.path = path
        self.line_no = line_no
        self.reason = reason
        super().__init__(f"{path}:{line_no}: corrupt cache record ({reason}).")
