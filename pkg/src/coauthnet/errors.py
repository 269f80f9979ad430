"""Exception types raised across the pipeline."""


class CoauthnetError(Exception):
    """Base class for every error raised by this package."""


class MalformedRecord(CoauthnetError):
    pass


class MissingName(MalformedRecord):
    pass


class MalformedTable(CoauthnetError):
    pass


class UnknownModality(MalformedTable):
    pass


class InvalidSpec(CoauthnetError):
    pass


class EmptyGraph(CoauthnetError):
    pass


class NoEdges(CoauthnetError):
    pass


class ConvergenceFailure(CoauthnetError):
    pass


class MultipleSlotsMatch(CoauthnetError):
    pass


class NoPublishingResearchers(CoauthnetError):
    pass


class EmptyInput(CoauthnetError):
    pass


class InvalidGrade(CoauthnetError):
    pass


class DegenerateInput(CoauthnetError):
    pass


class EmptySubset(CoauthnetError):
    pass


class SingleClassInput(CoauthnetError):
    pass


class TooFewSamples(CoauthnetError):
    pass


class ConfigError(CoauthnetError):
    pass
