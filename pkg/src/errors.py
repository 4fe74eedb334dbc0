"""
Exception hierarchy for LapMotif
Every error carries the exit code the command-line front end reports for it
"""


class LapMotifError(Exception):
    """Base class for all LapMotif errors"""

    exit_code = 1


class GraphError(LapMotifError, ValueError):
    """Invalid graph data: bad vertex ids, self-loops, isolated vertices"""


class ParseError(LapMotifError, ValueError):
    """Malformed edge-list, function, block or rational text"""

    exit_code = 2


class PreconditionError(LapMotifError, ValueError):
    """A mathematical precondition of an operation does not hold"""


class ParityObstruction(PreconditionError):
    """
    Raised when a block with an odd product n*m is requested.

    For any integer function f with a single nonzero-excess vertex p0,
    n*m = sum_p f(p) e(p) = 2 * sum over edges (q, r) of f(q) f(r),
    so n*m is always even.
    """

    def __init__(self, n: int, m: int):
        self.n = n
        self.m = m
        super().__init__(
            f"cannot realize pair ({n}, {m}): n*m = {n * m} is odd, but "
            f"n*m = 2 * sum over edges of f(q)f(r) for every single-excess block"
        )


class VerificationError(LapMotifError, RuntimeError):
    """A constructed eigenfunction failed its exact check"""


class ConvergenceError(LapMotifError, RuntimeError):
    """The Jacobi eigensolver did not converge within its sweep limit"""


class ConfigurationError(LapMotifError, ValueError):
    """An invalid configuration value"""

    exit_code = 2
