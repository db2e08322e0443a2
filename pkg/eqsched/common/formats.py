import re

from pydantic import BaseModel

from common.constants import TIME_MAX_VALUE, TIME_MIN_VALUE
from common.errors import FormatError
from common.models import Instance, Job, Schedule, ScheduleEntry


class Record(BaseModel):
    """
    One meaningful line of an instance or schedule file:
    the leading keyword, the remaining whitespace-separated fields
    and the 1-based line number (for diagnostics)
    """

    keyword: str
    fields: list[str]
    line: int


class Parser:
    """
    Splits a text document into a list of :py:class:`Record`.
    Blank lines and ``#``-comment lines are skipped.
    """

    INTEGER_REGEX: re.Pattern[str] = re.compile("-?[0-9]+")

    def __init__(self, data: str) -> None:
        self.data: str = data
        self.result: list[Record] = []
        self.parse_all()

    def parse_all(self) -> None:
        for number, text in enumerate(self.data.split("\n"), start=1):
            tokens = text.split()
            if len(tokens) == 0 or tokens[0].startswith("#"):
                continue
            self.result.append(Record(keyword=tokens[0], fields=tokens[1:], line=number))

    @classmethod
    def integer(cls, record: Record, token: str) -> int:
        if re.fullmatch(cls.INTEGER_REGEX, token) is None:
            raise FormatError(f"Field '{token}' is not an integer", record.line)
        value = int(token)
        if not TIME_MIN_VALUE <= value <= TIME_MAX_VALUE:
            raise FormatError(f"Field '{token}' is out of the 64-bit range", record.line)
        return value

    @staticmethod
    def expect_fields(record: Record, names: tuple[str, ...]) -> None:
        if len(record.fields) != len(names):
            usage = " ".join((record.keyword, *(f"<{name}>" for name in names)))
            raise FormatError(f"Expected '{usage}'", record.line)


def parse_instance(data: str) -> Instance:
    p: int | None = None
    jobs: list[Job] = []
    seen: set[str] = set()

    for record in Parser(data).result:
        match record.keyword:
            case "p":
                if p is not None:
                    raise FormatError("Duplicate 'p' line", record.line)
                Parser.expect_fields(record, ("int",))
                p = Parser.integer(record, record.fields[0])
                if p <= 0:
                    raise FormatError("Processing time must be positive", record.line)
            case "job":
                if p is None:
                    raise FormatError("The 'p' line must precede jobs", record.line)
                Parser.expect_fields(record, ("id", "release", "deadline"))
                job_id, release, deadline = record.fields
                if job_id in seen:
                    raise FormatError(f"Duplicate job id '{job_id}'", record.line)
                seen.add(job_id)
                jobs.append(
                    Job(
                        id=job_id,
                        release=Parser.integer(record, release),
                        deadline=Parser.integer(record, deadline),
                    )
                )
            case _:
                raise FormatError(f"Unknown record '{record.keyword}'", record.line)

    if p is None:
        raise FormatError("Missing 'p' line")
    return Instance(p=p, jobs=tuple(jobs))


def emit_instance(instance: Instance) -> str:
    lines = [f"p {instance.p}"]
    lines.extend(f"job {job.id} {job.release} {job.deadline}" for job in instance.jobs)
    return "\n".join(lines) + "\n"


def parse_schedule(data: str) -> Schedule:
    entries: list[ScheduleEntry] = []
    for record in Parser(data).result:
        if record.keyword != "sched":
            raise FormatError(f"Unknown record '{record.keyword}'", record.line)
        Parser.expect_fields(record, ("id", "start"))
        job_id, start = record.fields
        entries.append(ScheduleEntry(job=job_id, start=Parser.integer(record, start)))
    return Schedule(entries=tuple(entries))


def emit_schedule(schedule: Schedule) -> str:
    return "".join(
        f"sched {entry.job} {entry.start}\n" for entry in schedule.by_start().entries
    )


def emit_solution(count: int, schedule: Schedule) -> str:
    return f"count {count}\n" + emit_schedule(schedule)
