"""Exception hierarchy.

Every error carries a stable ``code`` string (the class name) used by the CLI.
``InputError`` subclasses map to exit code 2, ``NumericalFailure`` to 3.
"""


class GPTError(Exception):
    @property
    def code(self) -> str:
        return type(self).__name__


class InputError(GPTError, ValueError):
    pass


class NumericalFailure(GPTError, ArithmeticError):
    pass


class DimensionMismatch(InputError):
    pass


class OutOfRange(InputError):
    pass


class InvalidState(InputError):
    pass


class InvalidChannel(InputError):
    pass


class NotNormalized(InputError):
    pass


class NotPure(InputError):
    pass


class DaggerNotUnique(GPTError):
    """The pure state has more than one pure effect attaining probability 1."""


class NotDistinguishable(InputError):
    pass


class NotExtendable(NumericalFailure):
    pass


class NotSymmetric(InputError):
    pass


class NotSquare(InputError):
    pass


class LengthMismatch(InputError):
    pass


class NotSorted(InputError):
    pass


class NotMajorized(InputError):
    pass


class NotMaximal(InputError):
    pass


class NotContained(InputError):
    pass


class UnsupportedTheory(InputError):
    pass


class StrongSymmetryViolated(InputError):
    pass


class NoConvergence(NumericalFailure):
    pass


class ResidualOutsideCone(NumericalFailure):
    pass


class NotDiagonalizable(NumericalFailure):
    pass


class NoPerfectMatching(NumericalFailure):
    pass


class NotDoublyStochastic(NumericalFailure):
    pass


class SynthesisVerificationFailed(NumericalFailure):
    pass
