import logging
import time
from collections.abc import Callable, Sequence
from enum import Enum

from pydantic import BaseModel

from common.constants import LEGACY_MAX_CELLS, ORACLE_MAX_JOBS
from common.models import Instance, Schedule
from common.schedules import makespan, shift_schedule, validate_schedule
from solvers.dp import solve
from solvers.legacy import legacy_cells, run_algorithm1
from solvers.oracle import oracle_max_throughput

logger = logging.getLogger(__name__)


class SolverName(str, Enum):
    DP = "dp"
    LEGACY = "legacy"
    ORACLE = "oracle"


class FlagStatus(str, Enum):
    TRUE = "true"
    FALSE = "false"
    SKIPPED = "skipped"


SOLVERS: dict[SolverName, Callable[[Instance], Schedule]] = {
    SolverName.DP: lambda instance: solve(instance).schedule,
    SolverName.LEGACY: lambda instance: run_algorithm1(instance).schedule,
    SolverName.ORACLE: lambda instance: oracle_max_throughput(instance).schedule,
}


class SolverRun(BaseModel):
    name: SolverName
    count: int
    makespan: int
    valid: bool
    milliseconds: float


class Flag(BaseModel):
    name: str
    status: FlagStatus


class ComparisonReport(BaseModel):
    runs: list[SolverRun]
    flags: list[Flag]

    @property
    def ok(self) -> bool:
        return all(flag.status is not FlagStatus.FALSE for flag in self.flags)

    def run(self, name: SolverName) -> SolverRun | None:
        for run in self.runs:
            if run.name is name:
                return run
        return None

    def render(self, timings: bool = False) -> str:
        lines = [
            f"solver {run.name.value} count {run.count} makespan {run.makespan} "
            + f"valid {str(run.valid).lower()}"
            for run in self.runs
        ]
        lines.extend(f"flag {flag.name} {flag.status.value}" for flag in self.flags)
        if timings:
            lines.extend(f"time {run.name.value} {run.milliseconds:.3f}" for run in self.runs)
        return "\n".join(lines) + "\n"


def run_solver(name: SolverName, instance: Instance, offset: int = 0) -> SolverRun:
    started = time.perf_counter()
    schedule = SOLVERS[name](instance)
    elapsed = time.perf_counter() - started
    return SolverRun(
        name=name,
        count=schedule.count,
        makespan=makespan(shift_schedule(schedule, offset), instance.p),
        valid=validate_schedule(instance, schedule).ok,
        milliseconds=elapsed * 1000,
    )


def _flag(name: str, condition: bool | None) -> Flag:
    if condition is None:
        return Flag(name=name, status=FlagStatus.SKIPPED)
    return Flag(name=name, status=FlagStatus.TRUE if condition else FlagStatus.FALSE)


def compare(
    instance: Instance, names: Sequence[SolverName], offset: int = 0
) -> ComparisonReport:
    """
    Runs the requested solvers on a normalized instance and checks that they
    agree. Legacy finding fewer jobs than the table is expected; it may never
    find more, and the table must match the oracle.
    """
    runs: list[SolverRun] = []
    for name in dict.fromkeys(names):
        if name is SolverName.ORACLE and instance.n > ORACLE_MAX_JOBS:
            logger.warning("oracle skipped: %d jobs exceed the cap", instance.n)
            continue
        if name is SolverName.LEGACY and legacy_cells(instance) > LEGACY_MAX_CELLS:
            logger.warning(
                "legacy skipped: %d table cells exceed the cap", legacy_cells(instance)
            )
            continue
        runs.append(run_solver(name, instance, offset))

    report = ComparisonReport(runs=runs, flags=[])
    dp, legacy, oracle = (report.run(name) for name in SolverName)
    exact = None if dp is None or oracle is None else dp.count == oracle.count
    dominated = None if dp is None or legacy is None else legacy.count <= dp.count
    report.flags = [
        _flag("dp-equals-oracle", exact),
        _flag("legacy-at-most-dp", dominated),
        _flag("schedules-valid", all(run.valid for run in runs) if runs else None),
    ]
    return report
