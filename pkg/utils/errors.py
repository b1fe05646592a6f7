"""utils/errors.py - Error hierarchy; each class knows its CLI exit code."""
from config.settings import EXIT_BUDGET, EXIT_CONFIG, EXIT_INVARIANT


class ChainScoutError(Exception):
    exit_code = EXIT_INVARIANT


class ConfigError(ChainScoutError):
    """Bad scenario, bad flag or bad expression. `field` names the culprit."""
    exit_code = EXIT_CONFIG

    def __init__(self, msg: str, field: str = ""):
        self.field = field
        super().__init__(f"{field}: {msg}" if field else msg)


class MapSyntaxError(ConfigError):
    def __init__(self, msg: str, offset: int, source: str = ""):
        self.offset = offset
        self.source = source
        super().__init__(f"{msg} at offset {offset}")


class BudgetExceeded(ChainScoutError):
    exit_code = EXIT_BUDGET

    def __init__(self, what: str, used: int, limit: int):
        self.what, self.used, self.limit = what, used, limit
        super().__init__(f"budget exceeded for {what}: {used} > {limit}")


class InvariantViolation(ChainScoutError):
    exit_code = EXIT_INVARIANT


class PreconditionError(ChainScoutError, ValueError):
    exit_code = EXIT_INVARIANT
