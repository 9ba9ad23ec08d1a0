class EpispecError(Exception):
    pass


class ParseError(EpispecError):
    def __init__(self, message, line, column, token=None, source=None):
        self.message = message
        self.line = line
        self.column = column
        self.token = token
        self.source = source
        where = "%d:%d" % (line, column)
        if source is not None:
            where = "%s:%s" % (source, where)
        if token is not None:
            super().__init__("%s: %s (at %r)" % (where, message, token))
        else:
            super().__init__("%s: %s" % (where, message))


class GroundingError(EpispecError):
    pass


class TransformError(EpispecError):
    pass


class ResourceLimitExceeded(EpispecError):
    """Search budget or an enumeration cap was exhausted."""


class ExternalSolverError(EpispecError):
    pass
