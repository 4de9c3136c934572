class EhminError(Exception):
    """Base class for every error raised by the ehmin package"""


# -------- STATE ERRORS --------
class LengthMismatch(EhminError, ValueError):
    pass


class ZeroVector(EhminError, ValueError):
    pass


class NotNormalized(EhminError, ValueError):
    pass


class BadSubsystemIndex(EhminError, ValueError):
    pass


class BadCut(EhminError, ValueError):
    pass


class DimMismatch(EhminError, ValueError):
    pass


# -------- LINEAR ALGEBRA ERRORS --------
class NotHermitian(EhminError, ValueError):
    pass


class EigenFailure(EhminError, ArithmeticError):
    pass


class ConvergenceFailure(EhminError, ArithmeticError):
    pass


# -------- OPTIMIZATION ERRORS --------
class ArityMismatch(EhminError, ValueError):
    pass


class BadLength(EhminError, ValueError):
    pass


class InvalidConfig(EhminError, ValueError):
    pass


# -------- FERMION ERRORS --------
class BadOrder(EhminError, ValueError):
    pass


class NotTwoFermion(EhminError, ValueError):
    pass


# -------- ORACLE / IO ERRORS --------
class NotBipartite(EhminError, ValueError):
    pass


class NoOracleApplicable(EhminError):
    pass


class StateFileError(EhminError):
    pass
