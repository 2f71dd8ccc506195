"""Exception types shared across the package.

The split matters for the CLI exit codes: bad input is the caller's fault,
a failed mathematical invariant is ours.
"""


class InputError(ValueError):
    """A precondition on supplied values was violated."""


class HypothesisError(InputError):
    """A lemma-style hypothesis does not hold for the supplied values.

    Kept distinct from plain InputError so callers can tell "you handed me
    garbage" apart from "these numbers do not satisfy the lemma's premises".
    """


class InvariantViolation(RuntimeError):
    """A mathematically guaranteed inequality failed.

    This never indicates bad input; it indicates an implementation bug and
    is surfaced loudly rather than swallowed.
    """
