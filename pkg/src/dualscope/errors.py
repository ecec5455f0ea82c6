"""Exception hierarchy.

Every error raised on purpose by the package derives from
:class:`DualscopeError`; the ``kind`` attribute is the stable tag echoed by
the command line front end in its error report.
"""


class DualscopeError(Exception):
    kind = "domain-error"

    def to_dict(self):
        out = {"kind": self.kind, "message": str(self)}
        out.update(getattr(self, "details", {}) or {})
        return out


class PolySyntaxError(DualscopeError, ValueError):
    kind = "syntax"

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.details = {"position": position}


class UnknownVariableError(DualscopeError, ValueError):
    kind = "unknown-variable"


class NotHomogeneousError(DualscopeError, ValueError):
    kind = "non-homogeneous"


class ZeroPolynomialError(DualscopeError, ValueError):
    kind = "zero-polynomial"


class DegreeError(DualscopeError, ValueError):
    kind = "degree"


class NotExactError(DualscopeError, ArithmeticError):
    kind = "inexact-division"


class DegenerateCurveError(DualscopeError, ValueError):
    kind = "degenerate-curve"


class ContainedInLineError(DualscopeError, ValueError):
    kind = "curve-in-line"


class NotSmoothError(DualscopeError, ValueError):
    kind = "non-smooth"


class ChartMismatchError(DualscopeError, RuntimeError):
    kind = "chart-mismatch"


class PreconditionError(DualscopeError, ValueError):
    kind = "precondition"


class RootFindingError(DualscopeError, RuntimeError):
    kind = "non-convergence"

    def __init__(self, message, radii=None):
        super().__init__(message)
        self.radii = list(radii) if radii is not None else []
        self.details = {"best_radii": self.radii}


class DegenerateConfigError(DualscopeError, ValueError):
    kind = "degenerate-input"


class CertificationError(DualscopeError, RuntimeError):
    kind = "certification-failed"

    def __init__(self, message, attempts=None):
        super().__init__(message)
        self.attempts = attempts or []
        self.details = {"attempts": self.attempts}


class StepUnderflowError(DualscopeError, RuntimeError):
    kind = "step-underflow"


class AmbiguousAssignmentError(DualscopeError, RuntimeError):
    kind = "ambiguous-assignment"


class LatticeError(DualscopeError, ValueError):
    kind = "degenerate-lattice"
