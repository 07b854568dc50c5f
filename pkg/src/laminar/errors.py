"""Exception hierarchy.

``InputError`` subclasses describe malformed input (streams, specs, query
text) and map to exit code 2 on the command line; everything else under
``EvaluationError`` maps to exit code 1.
"""


class LaminarError(Exception):
    """Base class for all errors raised by this package."""


class InputError(LaminarError):
    pass


class EvaluationError(LaminarError):
    pass


class ParseError(InputError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class MissingTimeline(InputError):
    pass


class MixedVariableNamespace(InputError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"{name!r} is used both as a term variable and as a time variable")


class InvalidSpec(InputError):
    pass


class UnknownKind(InputError):
    def __init__(self, kind):
        self.kind = kind
        super().__init__(f"unknown window kind {kind!r}")


class EntryOutsideTimeline(InputError):
    def __init__(self, t, timeline):
        self.t = t
        self.timeline = timeline
        super().__init__(f"time point {t} lies outside timeline {timeline}")


class IntervalNotContained(EvaluationError):
    def __init__(self, inner, outer):
        self.inner = inner
        self.outer = outer
        super().__init__(f"interval {inner} is not contained in {outer}")


class TimeOutsideTimeline(EvaluationError):
    def __init__(self, t, timeline, context=""):
        self.t = t
        self.timeline = timeline
        msg = f"time point {t} lies outside timeline {timeline}"
        if context:
            msg = f"{context}: {msg}"
        super().__init__(msg)


class UnregisteredWindow(EvaluationError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"window operator win {index} has no registered window function")


class NonGroundFormula(EvaluationError):
    pass


class UnsafeQuery(EvaluationError):
    def __init__(self, variables):
        self.variables = tuple(sorted(variables))
        names = ", ".join(self.variables)
        super().__init__(
            f"variable(s) {names} occur only in negative positions; "
            "the answer over the active domain would be incomplete"
        )
