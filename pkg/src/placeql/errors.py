"""Exception hierarchy for the question-to-GeoSPARQL compiler.

Every error carries the pipeline stage it belongs to so the CLI can print
``stage: message`` and pick the right exit code (1 = compilation failure,
2 = configuration / IO failure).
"""


class PlaceQLError(Exception):
    """Base class for all compiler errors."""

    stage = "pipeline"
    exit_code = 1


# --- annotation stage ---------------------------------------------------

class EmptyQuestion(PlaceQLError):
    stage = "annotation"


class UnknownVerb(PlaceQLError):
    stage = "annotation"


# --- parse-tree stage ---------------------------------------------------

class SpanMismatch(PlaceQLError):
    stage = "parsetree"


# --- intent stage --------------------------------------------------------

class NoIntent(PlaceQLError):
    stage = "intent"


class UnsupportedIntent(PlaceQLError):
    stage = "intent"


# --- logical stage -------------------------------------------------------

class UnboundIntent(PlaceQLError):
    stage = "logical"


class LogicalSyntaxError(PlaceQLError):
    """Raised by the reference parser for canonical logical text."""

    stage = "logical"


# --- knowledge base ------------------------------------------------------

class KbParseError(PlaceQLError):
    stage = "kb"
    exit_code = 2

    def __init__(self, message, line=None):
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)
        self.line = line


class GeometryError(PlaceQLError):
    stage = "kb"
    exit_code = 2


class NotFound(PlaceQLError):
    stage = "kb"


class Unmapped(PlaceQLError):
    stage = "kb"


# --- query generation ----------------------------------------------------

class MissingMapping(PlaceQLError):
    stage = "querygen"


class UnsupportedRelation(PlaceQLError):
    stage = "querygen"


class UnknownUnit(PlaceQLError):
    stage = "querygen"


# --- query evaluation ----------------------------------------------------

class QuerySyntaxError(PlaceQLError):
    stage = "geoeval"

    def __init__(self, message, position=None):
        if position is not None:
            message = "at offset %d: %s" % (position, message)
        super().__init__(message)
        self.position = position


class UnsupportedConstruct(PlaceQLError):
    stage = "geoeval"


class UnboundVariable(PlaceQLError):
    stage = "geoeval"


class UnsupportedGeometryPair(PlaceQLError):
    stage = "geoeval"


# --- harness -------------------------------------------------------------

class CorpusError(PlaceQLError):
    stage = "harness"
    exit_code = 2


class MissingKb(PlaceQLError):
    stage = "harness"
    exit_code = 2


class ConfigError(PlaceQLError):
    stage = "harness"
    exit_code = 2
