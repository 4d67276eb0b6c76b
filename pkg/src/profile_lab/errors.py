"""Exception hierarchy.

Every domain error carries a stable ``code`` used by the command line tool
when it reports ``{"error": code, "detail": ...}``.
"""


class ProfileLabError(Exception):
    code = "ProfileLabError"

    def __init__(self, detail="", **info):
        super().__init__(detail)
        self.detail = detail
        self.info = info


class InvalidSize(ProfileLabError, ValueError):
    code = "InvalidSize"


class InvalidGraph(ProfileLabError, ValueError):
    code = "InvalidGraph"


class FormatError(ProfileLabError, ValueError):
    code = "FormatError"


class FeasibilityExceeded(ProfileLabError):
    code = "FeasibilityExceeded"


class ConstructionUnavailable(ProfileLabError):
    code = "ConstructionUnavailable"


class BudgetExceeded(ProfileLabError):
    code = "BudgetExceeded"


class UniformityMismatch(ProfileLabError, ValueError):
    code = "UniformityMismatch"


class EmptyTarget(ProfileLabError, ValueError):
    code = "EmptyTarget"


class ConvergenceFailure(ProfileLabError):
    code = "ConvergenceFailure"


class HomCountZero(ProfileLabError):
    code = "HomCountZero"


class NotNormalized(ProfileLabError, ValueError):
    code = "NotNormalized"


class NegativeEntry(ProfileLabError, ValueError):
    code = "NegativeEntry"


class InvalidPattern(ProfileLabError, ValueError):
    code = "InvalidPattern"


class NotNormalizable(ProfileLabError, ValueError):
    code = "NotNormalizable"


class OutOfRange(ProfileLabError, ValueError):
    code = "OutOfRange"


class ScaleTooSmall(ProfileLabError):
    code = "ScaleTooSmall"
