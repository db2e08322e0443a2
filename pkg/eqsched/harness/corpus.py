from collections.abc import Callable
from pathlib import Path

from pydantic import BaseModel

from common.errors import FormatError, InstanceError, ScheduleError, TableError
from common.formats import emit_solution, parse_instance
from common.models import Instance, Schedule
from common.schedules import normalize, shift_schedule, validate_schedule
from solvers.dp import solve
from solvers.legacy import render_trace, run_algorithm1

INSTANCE_FILE: str = "instance.txt"
SCHEDULE_FILE: str = "expected_schedule.txt"
TRACE_FILE: str = "expected_trace.txt"


def require_valid(instance: Instance, schedule: Schedule) -> None:
    result = validate_schedule(instance, schedule)
    if not result.ok:
        raise ScheduleError(f"Refusing to print an invalid schedule: {result}")


def solution_text(instance: Instance, schedule: Schedule, offset: int = 0) -> str:
    """Schedule output in input coordinates; refuses to print an invalid schedule"""
    require_valid(instance, schedule)
    return emit_solution(schedule.count, shift_schedule(schedule, offset))


def solve_text(data: str) -> str:
    instance, offset = normalize(parse_instance(data))
    return solution_text(instance, solve(instance).schedule, offset)


def trace_text(data: str) -> str:
    instance, _ = normalize(parse_instance(data))
    return render_trace(run_algorithm1(instance).trace)


class CorpusCheck(BaseModel):
    path: Path
    passed: bool


class CorpusReport(BaseModel):
    checks: list[CorpusCheck] = []

    @property
    def mismatches(self) -> list[Path]:
        return [check.path for check in self.checks if not check.passed]

    @property
    def ok(self) -> bool:
        return len(self.mismatches) == 0

    def render(self) -> str:
        lines = [
            f"{'pass' if check.passed else 'FAIL'} {check.path.as_posix()}"
            for check in self.checks
        ]
        failed = len(self.mismatches)
        lines.append(f"{len(self.checks) - failed} passed, {failed} failed")
        return "\n".join(lines) + "\n"


def check_output(
    expected: Path, source: Path, produce: Callable[[str], str]
) -> CorpusCheck:
    try:
        with source.open(encoding="utf-8") as f:
            actual = produce(f.read())
        with expected.open(encoding="utf-8") as f:
            return CorpusCheck(path=expected, passed=f.read() == actual)
    except (FormatError, InstanceError, ScheduleError, TableError, OSError, UnicodeError):
        return CorpusCheck(path=expected, passed=False)


def verify_corpus(root: Path) -> CorpusReport:
    """
    Re-runs every ``<root>/<name>/instance.txt`` and byte-compares the
    schedule output, and the legacy trace when an expected one is stored.
    An entry that fails to parse or solve counts as a mismatch, and so does
    an entry without an instance file.
    """
    report = CorpusReport()
    for entry in sorted(path for path in root.iterdir() if path.is_dir()):
        source = entry / INSTANCE_FILE
        if not source.is_file():
            report.checks.append(CorpusCheck(path=source, passed=False))
            continue
        report.checks.append(check_output(entry / SCHEDULE_FILE, source, solve_text))
        if (entry / TRACE_FILE).exists():
            report.checks.append(check_output(entry / TRACE_FILE, source, trace_text))
    return report
