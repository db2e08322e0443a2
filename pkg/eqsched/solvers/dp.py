import logging
import math
from collections.abc import Iterator

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel

from common.errors import TableError
from common.models import Instance, MaxThroughputResult, Schedule, ScheduleEntry, TimeGrid
from common.schedules import (
    build_time_grid,
    canonicalize,
    is_canonical,
    require_normalized,
    validate_schedule,
)

logger = logging.getLogger(__name__)

EXCLUDED: int = -1


class TableEntry(BaseModel):
    k: int
    alpha: int
    u: int
    beta: int


def _index_dtype(size: int) -> npt.DTypeLike:
    if size < np.iinfo(np.int16).max:
        return np.int16
    return np.int32


class DPTable:
    """
    Minimal makespans ``B[k][alpha][u]``: the earliest completion of exactly
    ``u`` jobs taken among the first ``k`` (deadline order) with release at
    least ``alpha``, none of them starting before ``alpha + p``.

    Values are stored as row indices into :py:attr:`rows`, a time grid of
    depth ``2n + 1`` that contains every value reachable from the rows of the
    standard grid :py:attr:`grid` (depth ``n``); :py:attr:`infinity` marks
    entries without any schedule. :py:attr:`choices` keeps, per entry, the
    number of jobs placed before job ``k`` or ``EXCLUDED``.

    The exact values drive the recurrence; entries read through
    :py:meth:`b_value` and :py:meth:`finite_entries` are rounded up to the
    next point of :py:attr:`grid`.
    """

    def __init__(self, instance: Instance) -> None:
        require_normalized(instance)
        self.instance: Instance = instance
        self.n: int = instance.n
        self.p: int = instance.p
        self.grid: TimeGrid = build_time_grid(instance)
        self.rows: TimeGrid = build_time_grid(instance, depth=2 * instance.n + 1)
        self.points: npt.NDArray[np.int64] = np.array(self.rows.points, dtype=np.int64)
        self.infinity: int = len(self.rows)

        shape = (self.n + 1, len(self.rows), self.n + 1)
        self.values = np.full(shape, self.infinity, dtype=_index_dtype(self.infinity))
        self.choices = np.full(shape, EXCLUDED, dtype=_index_dtype(self.n + 1))
        self.values[:, :, 0] = self.empty_column()

    def empty_column(self) -> npt.NDArray[np.int64]:
        """``B[k][alpha][0] = alpha + p``, as a row index when it lies on the grid"""
        shifted = self.points + self.p
        index = np.searchsorted(self.points, shifted)
        safe = np.minimum(index, self.infinity - 1)
        on_grid = (index < self.infinity) & (self.points[safe] == shifted)
        return np.where(on_grid, index, self.infinity)

    def row_of(self, time: int) -> int:
        row = self.rows.index(time)
        if row is None:
            raise TableError(f"Time {time} is not on the table grid")
        return row

    def fill_layer(self, k: int) -> None:
        """
        Computes ``B[k]`` from ``B[k-1]``. For every row ``alpha`` and every
        ``u``, job ``k`` is either left out, or placed after ``x`` jobs at
        ``gamma = max(r_k, B[k-1][alpha][x])`` and followed by ``u-1-x`` jobs
        from row ``gamma``. Ties keep the exclusion, then the smallest ``x``.
        """
        job = self.instance.jobs[k - 1]
        previous = self.values[k - 1]
        current = self.values[k]
        current[:, 1:] = previous[:, 1:]

        # an extra all-infinite row absorbs lookups at gamma = infinity
        padded = np.vstack([previous, np.full((1, self.n + 1), self.infinity, previous.dtype)])
        fits = np.append(self.points + self.p <= job.deadline, False)
        eligible = self.points <= job.release
        release_row = self.row_of(job.release)
        everywhere = np.arange(len(self.rows))

        for u in range(1, k + 1):
            gamma = np.maximum(previous[:, :u], release_row)
            after = np.arange(u - 1, -1, -1)
            beta = np.where(fits[gamma], padded[gamma, after], self.infinity)
            best_x = np.argmin(beta, axis=1)
            best = beta[everywhere, best_x]
            improve = eligible & (best < previous[:, u])
            current[:, u] = np.where(improve, best, previous[:, u])
            self.choices[k][:, u] = np.where(improve, best_x, EXCLUDED)

    def fill(self) -> None:
        for k in range(1, self.n + 1):
            self.fill_layer(k)
        logger.debug(
            "dp: %d jobs, %d grid rows, %d table rows", self.n, len(self.grid), len(self.rows)
        )

    def time_of(self, value: int) -> float:
        if value >= self.infinity:
            return math.inf
        return int(self.points[value])

    def exact_value(self, k: int, alpha: int, u: int) -> float:
        if not 0 <= k <= self.n or not 0 <= u <= self.n:
            raise IndexError(f"Entry ({k}, {alpha}, {u}) is out of range")
        if alpha not in self.grid:
            raise IndexError(f"Time {alpha} is not on the grid")
        if u == 0:
            return alpha + self.p
        return self.time_of(int(self.values[k, self.row_of(alpha), u]))

    def b_value(self, k: int, alpha: int, u: int) -> float:
        """
        The table entry on the standard grid: the exact makespan rounded up
        to the next grid point. ``B[k][alpha][0]`` stays ``alpha + p``.
        """
        value = self.exact_value(k, alpha, u)
        return value if u == 0 else self.grid.ceiling(value)

    def max_count(self) -> int:
        if self.n == 0:
            return 0
        top = self.values[self.n, self.row_of(-self.p)]
        return max(u for u in range(self.n + 1) if top[u] < self.infinity)

    def finite_entries(self) -> Iterator[tuple[int, int, int, int]]:
        """All ``(k, alpha, u, beta)`` with finite beta, ``alpha`` on the standard grid"""
        grid = np.array(self.grid.points, dtype=np.int64)
        for k in range(self.n + 1):
            for alpha in self.grid.points:
                row = self.values[k, self.row_of(alpha)]
                yield k, alpha, 0, alpha + self.p
                finite = np.flatnonzero(row[1:] < self.infinity) + 1
                ceilings = np.searchsorted(grid, self.points[row[finite]])
                for u, position in zip(finite, ceilings):
                    if position < len(grid):
                        yield k, alpha, int(u), int(grid[position])


def reconstruct(table: DPTable, count: int) -> Schedule:
    """
    Walks the stored choices from ``(n, -p, count)``: an excluded job
    continues in ``(k-1, alpha, u)``; an included one is emitted at ``gamma``
    and splits into ``(k-1, alpha, x)`` and ``(k-1, gamma, u-1-x)``.
    """
    if count == 0:
        return Schedule()

    entries: list[ScheduleEntry] = []
    pending = [(table.n, table.row_of(-table.p), count)]
    while pending:
        k, alpha, u = pending.pop()
        if u == 0:
            continue
        if k == 0 or table.values[k, alpha, u] >= table.infinity:
            raise TableError(f"Entry ({k}, {table.time_of(alpha)}, {u}) is not reachable")

        x = int(table.choices[k, alpha, u])
        if x == EXCLUDED:
            pending.append((k - 1, alpha, u))
            continue

        job = table.instance.jobs[k - 1]
        gamma = max(table.row_of(job.release), int(table.values[k - 1, alpha, x]))
        if gamma >= table.infinity:
            raise TableError(f"Job {job.id} has no start time in entry ({k}, {u})")
        entries.append(ScheduleEntry(job=job.id, start=int(table.points[gamma])))
        pending.append((k - 1, alpha, x))
        pending.append((k - 1, gamma, u - 1 - x))

    return Schedule(entries=tuple(entries)).by_start()


def build_table(instance: Instance) -> DPTable:
    table = DPTable(instance)
    table.fill()
    return table


def solve(instance: Instance) -> MaxThroughputResult:
    """
    Maximum number of jobs meeting their deadlines, with a canonical optimal
    schedule. The reconstructed schedule is always checked before returning.
    """
    return solve_table(build_table(instance))


def solve_table(table: DPTable) -> MaxThroughputResult:
    instance = table.instance
    count = table.max_count()
    raw = reconstruct(table, count)

    validation = validate_schedule(instance, raw)
    if not validation.ok or raw.count != count:
        raise TableError(f"Reconstructed schedule is inconsistent: {validation}")
    schedule = canonicalize(instance, raw)
    if not is_canonical(instance, schedule):
        raise TableError("Canonical form was not reached")
    return MaxThroughputResult(count=count, schedule=schedule)


def dump_table(table: DPTable) -> str:
    lines = ["k,alpha,u,beta"]
    lines.extend(f"{k},{alpha},{u},{beta}" for k, alpha, u, beta in table.finite_entries())
    return "\n".join(lines) + "\n"


def table_log(table: DPTable) -> list[TableEntry]:
    return [
        TableEntry(k=k, alpha=alpha, u=u, beta=beta)
        for k, alpha, u, beta in table.finite_entries()
    ]
