"""Synthetic workload generation and plain-text trace ingestion.

The trace format is one `task_id,length_mi` pair per line, UTF-8, LF or CRLF,
blank lines ignored, with an optional `task_id,length_mi` header as the first
non-blank line. Arrival order is line order.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from typing import IO, Iterable

from .model import Task
from .rng import SplitMix64

TRACE_HEADER = "task_id,length_mi"


class TraceParseError(ValueError):
    """Malformed trace content; carries the offending 1-based line number."""

    def __init__(self, line_no: int, message: str) -> None:
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


class DuplicateTaskIdError(TraceParseError):
    """The same task_id appears on more than one trace line."""


@dataclass(frozen=True)
class WorkloadSpec:
    """Parameters for a synthetic task batch with i.i.d. uniform lengths."""

    n_tasks: int
    length_min_mi: float = 200.0
    length_max_mi: float = 500.0
    seed: int = 0


def generate_synthetic(spec: WorkloadSpec) -> list[Task]:
    """Draw spec.n_tasks task lengths uniformly from [min, max], one PRNG draw per task.

    Deterministic per seed: equal specs produce identical task lists.
    """
    problems = []
    if spec.n_tasks < 1:
        problems.append(f"n_tasks must be >= 1, got {spec.n_tasks}")
    if not spec.length_min_mi > 0:
        problems.append(f"length_min_mi must be positive, got {spec.length_min_mi}")
    if spec.length_max_mi < spec.length_min_mi:
        problems.append(
            f"length range is inverted: [{spec.length_min_mi}, {spec.length_max_mi}]"
        )
    if problems:
        raise ValueError("; ".join(problems))
    rng = SplitMix64(spec.seed)
    span = spec.length_max_mi - spec.length_min_mi
    return [
        Task(id=i, length_mi=spec.length_min_mi + rng.uniform() * span, arrival_index=i)
        for i in range(spec.n_tasks)
    ]


def load_trace(source: str | IO[str] | Iterable[str]) -> list[Task]:
    """Parse a task trace; arrival_index follows line order.

    Raises TraceParseError (with the line number) for malformed lines and
    DuplicateTaskIdError when a task id repeats.
    """
    if isinstance(source, str):
        source = io.StringIO(source)
    tasks: list[Task] = []
    seen: dict[int, int] = {}  # task_id -> defining line
    saw_content = False
    for line_no, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line:
            continue
        if not saw_content and line == TRACE_HEADER:
            saw_content = True
            continue
        saw_content = True
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 2:
            raise TraceParseError(line_no, f"expected 2 fields, got {len(parts)}")
        try:
            task_id = int(parts[0])
        except ValueError:
            raise TraceParseError(line_no, f"task_id {parts[0]!r} is not an integer") from None
        if task_id < 0:
            raise TraceParseError(line_no, f"negative task_id {task_id}")
        try:
            length = float(parts[1])
        except ValueError:
            raise TraceParseError(line_no, f"length {parts[1]!r} is not a number") from None
        if not length > 0:
            raise TraceParseError(line_no, f"nonpositive length {parts[1]}")
        if task_id in seen:
            raise DuplicateTaskIdError(
                line_no, f"task_id {task_id} already defined on line {seen[task_id]}"
            )
        seen[task_id] = line_no
        tasks.append(Task(id=task_id, length_mi=length, arrival_index=len(tasks)))
    return tasks


def dump_trace(tasks: Iterable[Task], sink: IO[str]) -> int:
    """Serialize tasks (in arrival order) to the trace format; returns bytes written.

    Lengths are written with full repr precision so load_trace(dump_trace(tasks))
    reproduces the task list exactly.
    """
    lines = [TRACE_HEADER]
    for t in sorted(tasks, key=lambda t: t.arrival_index):
        lines.append(f"{t.id},{t.length_mi!r}")
    text = "\n".join(lines) + "\n"
    sink.write(text)
    return len(text.encode("utf-8"))
