"""Exception hierarchy shared by every stage of the toolkit."""


class HtolError(Exception):
    """Base class; ``stage`` tags the pipeline stage for CLI diagnostics."""

    stage = "htolcov"


class SourceError(HtolError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.message = message
        self.line = line
        self.col = col
        where = f"{line}:{col}: " if line else ""
        super().__init__(f"{where}{message}")


class SyntaxErr(SourceError):
    stage = "parse"


class TypeErr(SourceError):
    stage = "typecheck"


class HTLError(SourceError):
    stage = "htl"


class WellFormednessError(HtolError):
    stage = "well-formedness"

    def __init__(self, hid: str, violations):
        self.hid = hid
        self.violations = list(violations)
        super().__init__(f"{hid}: " + "; ".join(self.violations))


class SuiteError(SourceError):
    stage = "suite"


class DNFTooLarge(HtolError):
    stage = "normalize"


class AnnotationError(HtolError):
    stage = "annotate"
