"""Exception types shared across modules, mapped to CLI exit codes."""


class ConfigError(Exception):
    """Invalid configuration: bad file, unknown keys, violated invariants."""


class NumericalError(Exception):
    """Solver failure: non-convergence, singular system, bad preconditions."""


class UnboundedResponseError(NumericalError):
    """Undamped harmonic solve requested exactly at a natural frequency."""


class UnstableLoopError(NumericalError):
    """Closed-loop force diverged beyond the sanity bound; run aborted."""
