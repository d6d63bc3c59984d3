"""Exception types raised across the package."""


class InvalidInputError(ValueError):
    """A physical argument is outside the domain of the formula."""


class NoFarFieldDesignError(InvalidInputError):
    """No antenna pair satisfies the far-field constraint for the given sizes."""


class OracleConvergenceError(RuntimeError):
    """The brute-force search did not bracket or converge within its budget."""


class ConfigError(ValueError):
    """A scenario or sweep document could not be parsed or validated."""
