"""Problem-instance data model and the makespan objective.

Time is seconds throughout: task length in million instructions (MI) divided
by VM speed in million instructions per second (MIPS). Tasks are
non-preemptive, all ready at time zero, and run back-to-back on their VM in
arrival order. There are no transfer delays and no queuing beyond the VM
itself, so the completion time of a task is simply the accumulated busy time
of its VM up to and including that task.
"""

from __future__ import annotations

from dataclasses import dataclass


class InvalidAssignmentError(ValueError):
    """Assignment does not fit the instance (wrong length or VM index)."""


class InvalidInstanceError(ValueError):
    """Instance violates a structural invariant (e.g. no VMs at all)."""


@dataclass(frozen=True)
class Task:
    id: int
    length_mi: float  # workload, million instructions
    arrival_index: int  # position in submission order, 0-based


@dataclass(frozen=True)
class VirtualMachine:
    id: int
    speed_mips: float  # million instructions per second


@dataclass(frozen=True)
class ProblemInstance:
    tasks: tuple[Task, ...]
    vms: tuple[VirtualMachine, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "tasks", tuple(self.tasks))
        object.__setattr__(self, "vms", tuple(self.vms))


@dataclass(frozen=True)
class Assignment:
    """Decoded schedule: vm_of[k] is the VM index executing task k."""

    vm_of: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vm_of", tuple(int(v) for v in self.vm_of))

    def __len__(self) -> int:
        return len(self.vm_of)


@dataclass(frozen=True)
class ScheduleResult:
    assignment: Assignment
    vm_load_s: tuple[float, ...]  # per-VM busy time, seconds
    makespan_s: float
    completion_s: tuple[float, ...]  # per-task completion time, seconds


def _simulate(instance: ProblemInstance, assignment: Assignment) -> tuple[list[float], list[float]]:
    """Run the back-to-back execution model; returns (vm loads, completions)."""
    tasks, vms = instance.tasks, instance.vms
    n, m = len(tasks), len(vms)
    vm_of = assignment.vm_of
    if len(vm_of) != n:
        raise InvalidAssignmentError(
            f"assignment length {len(vm_of)} does not match task count {n}"
        )
    loads = [0.0] * m
    completion = [0.0] * n
    # Accumulate in arrival order so per-task completions are well defined.
    for k in sorted(range(n), key=lambda k: tasks[k].arrival_index):
        v = vm_of[k]
        if not 0 <= v < m:
            raise InvalidAssignmentError(
                f"task {tasks[k].id}: VM index {v} outside [0, {m})"
            )
        loads[v] += tasks[k].length_mi / vms[v].speed_mips
        completion[k] = loads[v]
    return loads, completion


def makespan(instance: ProblemInstance, assignment: Assignment) -> ScheduleResult:
    """Evaluate an assignment; the makespan is the largest completion time."""
    loads, completion = _simulate(instance, assignment)
    return ScheduleResult(
        assignment=assignment,
        vm_load_s=tuple(loads),
        makespan_s=max(completion),
        completion_s=tuple(completion),
    )


def vm_loads(instance: ProblemInstance, assignment: Assignment) -> list[float]:
    """Per-VM busy time in seconds; zero for VMs with no tasks."""
    loads, _ = _simulate(instance, assignment)
    return loads


def validate_instance(instance: ProblemInstance) -> list[str]:
    """Collect every violated invariant; an empty list means the instance is well formed."""
    problems: list[str] = []
    tasks, vms = instance.tasks, instance.vms
    if not tasks:
        problems.append("empty task list")
    if not vms:
        problems.append("empty VM list")
    seen_ids: set[int] = set()
    for t in tasks:
        if t.id < 0:
            problems.append(f"task {t.id}: negative id")
        if t.id in seen_ids:
            problems.append(f"task {t.id}: duplicate id")
        seen_ids.add(t.id)
        if not t.length_mi > 0:
            problems.append(f"task {t.id}: nonpositive length {t.length_mi}")
    arrivals = sorted(t.arrival_index for t in tasks)
    if tasks and arrivals != list(range(len(tasks))):
        problems.append("arrival_index values do not form 0..n-1")
    for pos, vm in enumerate(vms):
        if vm.id != pos:
            problems.append(f"VM at position {pos} has id {vm.id}")
        if not vm.speed_mips > 0:
            problems.append(f"VM {vm.id}: nonpositive speed {vm.speed_mips}")
    return problems
