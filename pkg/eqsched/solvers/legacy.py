import logging

from pydantic import BaseModel

from common.constants import LEGACY_MAX_CELLS
from common.errors import InstanceError, ScheduleError
from common.models import Instance, Schedule
from common.schedules import extend, makespan, require_normalized

logger = logging.getLogger(__name__)


class TraceCell(BaseModel):
    k: int
    x: int
    jobs: tuple[str, ...] | None = None


class GuardRecord(BaseModel):
    """An extension dropped because the new job would miss its deadline"""

    k: int
    x: int
    job: str
    completion: int


class LegacyTrace(BaseModel):
    n: int
    d_max: int
    cells: list[TraceCell]
    guards: list[GuardRecord] = []

    def cell(self, k: int, x: int) -> tuple[str, ...] | None:
        return self.cells[(k - 1) * (self.d_max + 1) + x].jobs


class LegacyResult(BaseModel):
    schedule: Schedule
    trace: LegacyTrace


class LegacyRun:
    """
    Table ``S[k][x]`` of the left-to-right maximization scan: for every
    number of jobs ``k`` and every integer time ``x`` it keeps at most one
    left-shifted schedule of ``k`` jobs completing by ``x``.
    Row ``0`` is the empty schedule at every time; ``None`` means undefined.
    """

    def __init__(self, instance: Instance) -> None:
        self.instance: Instance = instance
        self.horizon: int = max(instance.d_max, 0)
        self.rows: list[list[Schedule | None]] = [[Schedule()] * (self.horizon + 1)]
        self.guards: list[GuardRecord] = []

    def compute_cell(self, k: int, x: int) -> Schedule | None:
        p = self.instance.p
        row = self.rows[k]
        carried = row[x - 1] if x >= 1 else None
        if x < p:
            return None

        base = self.rows[k - 1][x - p]
        if base is None:
            return carried
        scheduled = set(base.job_ids)
        candidates = [
            job
            for job in self.instance.jobs
            if job.release + p <= x and job.id not in scheduled and job.deadline >= x
        ]
        if len(candidates) == 0:
            return carried

        chosen = candidates[0]
        try:
            return extend(self.instance, base, chosen.id)
        except ScheduleError:
            completion = max(makespan(base, p), chosen.release) + p
            self.guards.append(GuardRecord(k=k, x=x, job=chosen.id, completion=completion))
            logger.debug("legacy: guard fired at k=%d x=%d for %s", k, x, chosen.id)
            return carried

    def run(self) -> None:
        for k in range(1, self.instance.n + 1):
            self.rows.append([])
            for x in range(self.horizon + 1):
                self.rows[k].append(self.compute_cell(k, x))

    def best(self) -> Schedule:
        for row in reversed(self.rows[1:]):
            final = row[self.horizon]
            if final is not None:
                return final
        return Schedule()

    def trace(self) -> LegacyTrace:
        return LegacyTrace(
            n=self.instance.n,
            d_max=self.horizon,
            cells=[
                TraceCell(k=k, x=x, jobs=None if cell is None else cell.job_ids)
                for k, row in enumerate(self.rows[1:], start=1)
                for x, cell in enumerate(row)
            ],
            guards=self.guards,
        )


def legacy_cells(instance: Instance) -> int:
    return instance.n * (max(instance.d_max, 0) + 1)


def run_algorithm1(instance: Instance) -> LegacyResult:
    """
    Runs the historical maximization algorithm literally, over every integer
    time ``x = p..d_max``. The result can be sub-optimal: only one schedule
    per ``(k, x)`` survives.
    """
    require_normalized(instance)
    if legacy_cells(instance) > LEGACY_MAX_CELLS:
        raise InstanceError(
            f"The legacy scan handles at most {LEGACY_MAX_CELLS} table cells, "
            + f"got {legacy_cells(instance)}"
        )
    legacy = LegacyRun(instance)
    legacy.run()
    return LegacyResult(schedule=legacy.best(), trace=legacy.trace())


def render_trace(trace: LegacyTrace) -> str:
    """Aligned text table: one column per time ``x``, one row per ``k``"""
    labels = ["x"] + [f"k={k}" for k in range(1, trace.n + 1)]
    columns: list[list[str]] = []
    for x in range(trace.d_max + 1):
        column = [str(x)]
        for k in range(1, trace.n + 1):
            jobs = trace.cell(k, x)
            column.append("-" if jobs is None else "".join(jobs))
        columns.append(column)

    label_width = max(len(label) for label in labels)
    widths = [max(len(text) for text in column) for column in columns]
    lines = []
    for i, label in enumerate(labels):
        parts = [label.ljust(label_width)]
        parts.extend(column[i].ljust(width) for column, width in zip(columns, widths))
        lines.append("  ".join(parts).rstrip())
    return "\n".join(lines) + "\n"
