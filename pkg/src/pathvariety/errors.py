class ValidationError(ValueError):
    """Raised when an input violates an operation's precondition.

    ``field`` names the offending input where that is meaningful; the CLI
    reports it back to the caller.
    """

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field
