"""Benchmark grid: schedulers x task counts x repetitions.

Every cell of the grid derives its workload seed from the master seed, and
all schedulers inside a cell score the identical task list (paired
comparison). The league scheduler additionally gets its own search seed per
cell. Records serialize to a canonical CSV (fixed ordering and formatting,
LF endings) so equal configurations produce byte-identical files; wall-clock
timing is therefore opt-in.
"""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass, field, replace
from typing import IO, Callable, Iterable

from .baselines import SchedulerKind, bef, fcfs, ljf
from .lca import LcaParams, run
from .model import ProblemInstance, VirtualMachine, makespan
from .rng import MASK64, mix64
from .workload import WorkloadSpec, generate_synthetic

CSV_HEADER = "scheduler,n_tasks,rep,seed,makespan_s,evals,wall_ms"

_CHART_COLORS = {
    SchedulerKind.FCFS: "#c44e52",
    SchedulerKind.LJF: "#55a868",
    SchedulerKind.BEF: "#dd8452",
    SchedulerKind.LCA: "#4c72b0",
}


@dataclass(frozen=True)
class ExperimentConfig:
    task_counts: tuple[int, ...] = tuple(range(20, 181, 20))
    n_vms: int = 20
    vm_speed_mips: float | tuple[float, ...] = 1000.0
    length_range_mi: tuple[float, float] = (200.0, 500.0)
    repetitions: int = 9
    schedulers: tuple[SchedulerKind, ...] = (
        SchedulerKind.FCFS,
        SchedulerKind.LJF,
        SchedulerKind.BEF,
        SchedulerKind.LCA,
    )
    lca_params: LcaParams = field(default_factory=LcaParams)
    master_seed: int = 42

    def __post_init__(self) -> None:
        object.__setattr__(self, "task_counts", tuple(int(n) for n in self.task_counts))
        object.__setattr__(self, "schedulers", tuple(self.schedulers))
        object.__setattr__(self, "length_range_mi", tuple(self.length_range_mi))
        if not isinstance(self.vm_speed_mips, (int, float)):
            object.__setattr__(
                self, "vm_speed_mips", tuple(float(s) for s in self.vm_speed_mips)
            )


@dataclass(frozen=True)
class ExperimentRecord:
    scheduler: SchedulerKind
    n_tasks: int
    rep: int
    seed: int  # cell workload seed, shared by every scheduler in the cell
    makespan_s: float
    evaluations: int  # objective evaluations spent (0 for the greedy baselines)
    wall_time_ms: int


@dataclass(frozen=True)
class Aggregate:
    """Per-cell means/stddevs and per-scheduler grand means over the grid."""

    schedulers: tuple[SchedulerKind, ...]  # sorted by code
    task_counts: tuple[int, ...]  # sorted ascending
    mean_s: dict[tuple[SchedulerKind, int], float]
    std_s: dict[tuple[SchedulerKind, int], float]  # population stddev over repetitions
    grand_mean_s: dict[SchedulerKind, float]


def derive_cell_seed(master_seed: int, n_tasks: int, rep: int) -> int:
    """Workload seed for one (task count, repetition) cell."""
    return mix64((master_seed ^ (n_tasks << 20) ^ rep) & MASK64)


def derive_search_seed(cell_seed: int, scheduler_code: int) -> int:
    """Search seed for a stochastic scheduler inside a cell."""
    return mix64((cell_seed ^ scheduler_code) & MASK64)


def _validate_config(config: ExperimentConfig) -> None:
    problems = []
    if not config.task_counts:
        problems.append("task_counts is empty")
    if any(n < 1 for n in config.task_counts):
        problems.append(f"task_counts must be positive, got {list(config.task_counts)}")
    if config.n_vms < 1:
        problems.append(f"n_vms must be >= 1, got {config.n_vms}")
    if config.repetitions < 1:
        problems.append(f"repetitions must be >= 1, got {config.repetitions}")
    if not config.schedulers:
        problems.append("schedulers is empty")
    lo, hi = config.length_range_mi
    if not 0 < lo <= hi:
        problems.append(f"invalid length range [{lo}, {hi}]")
    speeds = config.vm_speed_mips
    if isinstance(speeds, tuple):
        if len(speeds) != config.n_vms:
            problems.append(
                f"vm_speed_mips lists {len(speeds)} speeds for {config.n_vms} VMs"
            )
        if any(not s > 0 for s in speeds):
            problems.append("vm_speed_mips entries must be positive")
    elif not speeds > 0:
        problems.append(f"vm_speed_mips must be positive, got {speeds}")
    if config.master_seed < 0:
        problems.append("master_seed must be a 64-bit unsigned integer")
    if problems:
        raise ValueError("; ".join(problems))


def _build_vms(config: ExperimentConfig) -> tuple[VirtualMachine, ...]:
    speeds = config.vm_speed_mips
    if isinstance(speeds, tuple):
        return tuple(VirtualMachine(id=v, speed_mips=s) for v, s in enumerate(speeds))
    return tuple(
        VirtualMachine(id=v, speed_mips=float(speeds)) for v in range(config.n_vms)
    )


def run_experiment(
    config: ExperimentConfig,
    measure_wall_time: bool = False,
    history_callback: Callable[[ExperimentRecord, list[float]], None] | None = None,
) -> list[ExperimentRecord]:
    """Run the full grid; one record per (scheduler, task count, repetition).

    measure_wall_time fills wall_time_ms from the clock, which makes the
    output non-reproducible; it stays 0 by default so the canonical CSV is a
    pure function of the configuration. history_callback, when given, is
    invoked with each LCA record and its week-by-week best-fitness history.
    """
    _validate_config(config)
    vms = _build_vms(config)
    lo, hi = config.length_range_mi
    records = []
    for n_tasks in config.task_counts:
        for rep in range(config.repetitions):
            cell_seed = derive_cell_seed(config.master_seed, n_tasks, rep)
            tasks = generate_synthetic(WorkloadSpec(n_tasks, lo, hi, seed=cell_seed))
            instance = ProblemInstance(tuple(tasks), vms)
            for kind in config.schedulers:
                started = time.perf_counter_ns() if measure_wall_time else 0
                history = None
                if kind is SchedulerKind.LCA:
                    params = replace(
                        config.lca_params, seed=derive_search_seed(cell_seed, kind.value)
                    )
                    result = run(params, instance)
                    ms, evals = result.best_makespan_s, result.evaluations
                    history = result.history
                else:
                    assignment = {
                        SchedulerKind.FCFS: fcfs,
                        SchedulerKind.LJF: ljf,
                        SchedulerKind.BEF: bef,
                    }[kind](instance)
                    ms, evals = makespan(instance, assignment).makespan_s, 0
                wall = (
                    (time.perf_counter_ns() - started) // 1_000_000
                    if measure_wall_time
                    else 0
                )
                record = ExperimentRecord(kind, n_tasks, rep, cell_seed, ms, evals, wall)
                records.append(record)
                if history is not None and history_callback is not None:
                    history_callback(record, history)
    return records


def aggregate(records: Iterable[ExperimentRecord]) -> Aggregate:
    """Means and population stddevs per cell, plus per-scheduler grand means."""
    records = list(records)
    if not records:
        raise ValueError("cannot aggregate an empty record list")
    by_cell: dict[tuple[SchedulerKind, int], list[float]] = {}
    by_kind: dict[SchedulerKind, list[float]] = {}
    for r in records:
        by_cell.setdefault((r.scheduler, r.n_tasks), []).append(r.makespan_s)
        by_kind.setdefault(r.scheduler, []).append(r.makespan_s)
    return Aggregate(
        schedulers=tuple(sorted(by_kind, key=lambda k: k.value)),
        task_counts=tuple(sorted({n for _, n in by_cell})),
        mean_s={cell: statistics.fmean(v) for cell, v in by_cell.items()},
        std_s={cell: statistics.pstdev(v) for cell, v in by_cell.items()},
        grand_mean_s={kind: statistics.fmean(v) for kind, v in by_kind.items()},
    )


def emit_csv(records: Iterable[ExperimentRecord], sink: IO[str]) -> int:
    """Write records in canonical order/formatting; returns bytes written.

    Rows sort by (scheduler code, task count, repetition); makespan carries
    six decimals; LF line endings.
    """
    ordered = sorted(records, key=lambda r: (r.scheduler.value, r.n_tasks, r.rep))
    lines = [CSV_HEADER]
    for r in ordered:
        lines.append(
            f"{r.scheduler.name},{r.n_tasks},{r.rep},{r.seed},"
            f"{r.makespan_s:.6f},{r.evaluations},{r.wall_time_ms}"
        )
    text = "\n".join(lines) + "\n"
    sink.write(text)
    return len(text.encode("utf-8"))


def parse_csv(source: str | IO[str] | Iterable[str]) -> list[ExperimentRecord]:
    """Inverse of emit_csv (modulo the six-decimal makespan formatting)."""
    if isinstance(source, str):
        source = source.splitlines()
    lines = [line.rstrip("\r\n") for line in source]
    lines = [line for line in lines if line.strip()]
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"expected CSV header {CSV_HEADER!r}")
    records = []
    for line_no, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != 7:
            raise ValueError(f"line {line_no}: expected 7 fields, got {len(parts)}")
        try:
            records.append(
                ExperimentRecord(
                    scheduler=SchedulerKind[parts[0]],
                    n_tasks=int(parts[1]),
                    rep=int(parts[2]),
                    seed=int(parts[3]),
                    makespan_s=float(parts[4]),
                    evaluations=int(parts[5]),
                    wall_time_ms=int(parts[6]),
                )
            )
        except KeyError:
            raise ValueError(f"line {line_no}: unknown scheduler {parts[0]!r}") from None
    return records


def emit_svg_chart(agg: Aggregate, sink: IO[str]) -> int:
    """Render mean makespan vs task count as an SVG line chart; returns bytes written.

    One polyline per scheduler, axes with ticks, and a legend. The layout is
    fixed so equal aggregates yield identical bytes.
    """
    if not agg.schedulers:
        raise ValueError("aggregate covers no schedulers")
    width, height = 720.0, 480.0
    left, right, top, bottom = 70.0, 570.0, 30.0, 425.0

    xs = agg.task_counts
    x_lo, x_hi = float(min(xs)), float(max(xs))
    x_span = x_hi - x_lo

    def x_pos(n: int) -> float:
        if x_span == 0.0:
            return (left + right) / 2.0
        return left + (n - x_lo) / x_span * (right - left)

    y_max = max(agg.mean_s.values()) * 1.08

    def y_pos(v: float) -> float:
        return bottom - v / y_max * (bottom - top)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" '
        f'height="{height:.0f}" viewBox="0 0 {width:.0f} {height:.0f}">',
        f'<rect width="{width:.0f}" height="{height:.0f}" fill="white"/>',
        f'<line x1="{left:.1f}" y1="{bottom:.1f}" x2="{right:.1f}" y2="{bottom:.1f}" stroke="black"/>',
        f'<line x1="{left:.1f}" y1="{top:.1f}" x2="{left:.1f}" y2="{bottom:.1f}" stroke="black"/>',
    ]
    for n in xs:
        x = x_pos(n)
        parts.append(
            f'<line x1="{x:.1f}" y1="{bottom:.1f}" x2="{x:.1f}" y2="{bottom + 5:.1f}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{x:.1f}" y="{bottom + 20:.1f}" font-size="12" text-anchor="middle">{n}</text>'
        )
    for tick in range(5):
        v = y_max * tick / 4.0
        y = y_pos(v)
        parts.append(
            f'<line x1="{left - 5:.1f}" y1="{y:.1f}" x2="{left:.1f}" y2="{y:.1f}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{left - 9:.1f}" y="{y + 4:.1f}" font-size="12" text-anchor="end">{v:.2f}</text>'
        )
    parts.append(
        f'<text x="{(left + right) / 2:.1f}" y="{height - 14:.1f}" font-size="13" '
        f'text-anchor="middle">number of tasks</text>'
    )
    parts.append(
        f'<text x="16" y="{(top + bottom) / 2:.1f}" font-size="13" text-anchor="middle" '
        f'transform="rotate(-90 16 {(top + bottom) / 2:.1f})">mean makespan (s)</text>'
    )
    legend_y = top + 10.0
    for kind in agg.schedulers:
        color = _CHART_COLORS.get(kind, "#333333")
        points = " ".join(
            f"{x_pos(n):.1f},{y_pos(agg.mean_s[(kind, n)]):.1f}"
            for n in xs
            if (kind, n) in agg.mean_s
        )
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="2" points="{points}"/>'
        )
        parts.append(
            f'<line x1="{right + 16:.1f}" y1="{legend_y:.1f}" x2="{right + 44:.1f}" '
            f'y2="{legend_y:.1f}" stroke="{color}" stroke-width="2"/>'
        )
        parts.append(
            f'<text x="{right + 50:.1f}" y="{legend_y + 4:.1f}" font-size="12">{kind.name}</text>'
        )
        legend_y += 20.0
    parts.append("</svg>")
    text = "\n".join(parts) + "\n"
    sink.write(text)
    return len(text.encode("utf-8"))


def config_from_dict(data: dict) -> ExperimentConfig:
    """Build a configuration from a JSON-style mapping; unknown keys are errors.

    All keys are optional and mirror the ExperimentConfig field names;
    schedulers are given by (case-insensitive) name.
    """
    if not isinstance(data, dict):
        raise ValueError(f"config must be a JSON object, got {type(data).__name__}")
    known = {
        "task_counts",
        "n_vms",
        "vm_speed_mips",
        "length_range_mi",
        "repetitions",
        "schedulers",
        "lca_params",
        "master_seed",
    }
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    kwargs: dict = {k: v for k, v in data.items() if k in known}
    if "schedulers" in kwargs:
        try:
            kwargs["schedulers"] = tuple(
                SchedulerKind[str(name).upper()] for name in kwargs["schedulers"]
            )
        except KeyError as exc:
            raise ValueError(f"unknown scheduler name: {exc.args[0]!r}") from None
    if "lca_params" in kwargs:
        sub = kwargs["lca_params"]
        if not isinstance(sub, dict):
            raise ValueError("lca_params must be a JSON object")
        lca_known = {f for f in LcaParams.__dataclass_fields__}
        lca_unknown = set(sub) - lca_known
        if lca_unknown:
            raise ValueError(f"unknown lca_params keys: {sorted(lca_unknown)}")
        kwargs["lca_params"] = LcaParams(**sub)
    return ExperimentConfig(**kwargs)
