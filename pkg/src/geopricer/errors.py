"""Error taxonomy shared by the library and the CLI exit-code mapping."""


class GeopricerError(Exception):
    """Base class for all package errors."""


class InputError(GeopricerError):
    """Bad user input: malformed JSON, schema violations, broken preconditions."""


class CapExceededError(GeopricerError):
    """A guarded combinatorial state space exceeded its configured cap."""


class InternalCheckError(GeopricerError):
    """An internal consistency assertion failed; indicates a bug, not bad input."""


# CLI exit codes: 0 success, then by error class.
EXIT_CODE = {
    InputError: 1,
    CapExceededError: 2,
    InternalCheckError: 3,
}
