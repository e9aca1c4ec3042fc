"""Exception hierarchy shared by the library and the CLI.

Every error carries the process exit code the CLI reports for it:
2 for bad input, 1 for internal invariant violations.
"""

__all__ = [
    "OrigamiError",
    "InputError",
    "OrigamiSyntaxError",
    "NotABijectionError",
    "NotTransitiveError",
    "DirectionError",
    "MatrixInputError",
    "CatalogError",
    "OddZeroOrderError",
    "InvariantViolation",
    "SpinUndeterminedError",
]


class OrigamiError(Exception):
    exit_code = 1


class InputError(OrigamiError):
    """The caller supplied something we cannot work with."""

    exit_code = 2


class OrigamiSyntaxError(InputError):
    pass


class NotABijectionError(InputError):
    pass


class NotTransitiveError(InputError):
    def __init__(self, unreachable: list[int]) -> None:
        self.unreachable = unreachable
        super().__init__(
            f"permutation pair is not transitive: squares {unreachable} "
            "are not reachable from square 1"
        )


class DirectionError(InputError):
    pass


class MatrixInputError(InputError):
    pass


class CatalogError(InputError):
    pass


class OddZeroOrderError(InputError):
    """Spin parity is undefined when some zero has odd order."""


class InvariantViolation(OrigamiError):
    """An internal consistency check failed. Always a bug, never bad input."""

    exit_code = 1


class SpinUndeterminedError(OrigamiError):
    exit_code = 1
