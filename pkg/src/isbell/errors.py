"""Exception taxonomy shared by all modules (the CLI maps these to exit codes)."""


class IsbellError(Exception):
    """Base class."""


class MalformedError(IsbellError):
    """A table is missing entries or has entries it should not have."""


class LawViolation(IsbellError):
    """A structure fails one of its laws; ``witness`` names the culprits."""

    def __init__(self, message, witness=()):
        super().__init__(message)
        self.witness = tuple(witness)


class NaturalityError(LawViolation):
    pass


class ShapeError(IsbellError):
    """Inputs have incompatible shapes (boundaries, index categories, vertices)."""


class UnknownIdError(IsbellError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class NotFinalError(IsbellError):
    def __init__(self, message, witness=()):
        super().__init__(message)
        self.witness = tuple(witness)


class LimitMissing(IsbellError):
    pass


class InternalError(IsbellError):
    """A construction that the theory guarantees to succeed did not: a bug certificate."""

    def __init__(self, message, witness=()):
        super().__init__(message)
        self.witness = tuple(witness)
