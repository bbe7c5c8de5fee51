class StanceError(Exception):
    """Base class for every error raised by this package."""


class SchemaError(StanceError):
    pass


class RowError(StanceError):
    def __init__(self, row: int, message: str):
        super().__init__(f"row {row}: {message}")
        self.row = row


class LexiconLoadError(StanceError):
    def __init__(self, path, line: int, message: str):
        super().__init__(f"{path}:{line}: {message}")
        self.path = path
        self.line = line


class ConfigurationError(StanceError):
    pass
