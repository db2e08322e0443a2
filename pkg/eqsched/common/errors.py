class InstanceError(Exception):
    pass


class ScheduleError(Exception):
    pass


class OracleLimitError(Exception):
    pass


class TableError(Exception):
    pass


class FormatError(Exception):
    def __init__(self, text: str, line: int | None = None) -> None:
        self.text: str = text
        self.line: int | None = line

    def __str__(self) -> str:
        if self.line is None:
            return f"Parsing error occurred: {self.text}"
        return f"Parsing error occurred at line {self.line}: {self.text}"
