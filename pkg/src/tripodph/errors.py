"""Exception hierarchy.

Every error raised by the library derives from :class:`TripodError`, which is
itself a ``ValueError`` so that callers validating user input can catch it the
usual way.
"""


class TripodError(ValueError):
    pass


# filtered spaces
class NonMonotoneError(TripodError):
    def __init__(self, face, coface, face_value, coface_value):
        self.face = face
        self.coface = coface
        super().__init__(
            f"non-monotone filtration: face {list(face)} has value {face_value} "
            f"> {coface_value} on coface {list(coface)}"
        )


class MissingSimplexError(TripodError):
    pass


class DuplicateSimplexError(TripodError):
    pass


class DuplicateVertexError(TripodError):
    pass


class UnknownSimplexError(TripodError, KeyError):
    def __str__(self):
        return ValueError.__str__(self)


class NotSurjectiveError(TripodError):
    pass


class CapExceedsSpaceError(TripodError):
    pass


# persistence
class InsufficientCapError(TripodError):
    pass


class NotPrimeError(TripodError):
    pass


# matchings and distances
class InvalidMatchingError(TripodError):
    pass


class TooLargeError(TripodError):
    pass


class EnumerationBoundExceededError(TooLargeError):
    pass


class NotACorrespondenceError(TripodError):
    pass


class CapTooLowForExactError(TripodError):
    pass


class EmptyCompositeError(TripodError):
    pass


# metric spaces
class NotAMetricError(TripodError):
    pass


# geodesics
class NotMinimizingError(TripodError):
    pass


class OutOfRangeError(TripodError):
    pass


# io / cli
class ParseError(TripodError):
    pass


class SchemaError(TripodError):
    pass


class UnknownSuiteError(TripodError):
    pass


class InvalidSpecError(TripodError):
    pass
