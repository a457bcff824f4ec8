"""Independent ground truth for small instances.

Exhaustive enumeration of every assignment plus an analytic lower bound.
Both exist to check the schedulers, not to be fast; enumeration is guarded
to desk scale.
"""

from __future__ import annotations

import itertools

from .model import Assignment, ProblemInstance, makespan

ENUMERATION_LIMIT = 10**7


def brute_force_optimum(instance: ProblemInstance) -> tuple[Assignment, float]:
    """Enumerate all m^n assignments and return a makespan-minimal one.

    Enumeration runs in lexicographic vm_of order and only strictly better
    makespans replace the incumbent, so ties resolve to the lexicographically
    smallest assignment.
    """
    n, m = len(instance.tasks), len(instance.vms)
    if m**n > ENUMERATION_LIMIT:
        raise ValueError(
            f"instance too large to enumerate: {m}^{n} > {ENUMERATION_LIMIT}"
        )
    # durations[k][v]: seconds for task at position k on VM v
    durations = [
        [t.length_mi / vm.speed_mips for vm in instance.vms] for t in instance.tasks
    ]
    best_vm_of: tuple[int, ...] | None = None
    best_ms = float("inf")
    for vm_of in itertools.product(range(m), repeat=n):
        loads = [0.0] * m
        for k, v in enumerate(vm_of):
            loads[v] += durations[k][v]
        ms = max(loads)
        if ms < best_ms:
            best_ms = ms
            best_vm_of = vm_of
    assert best_vm_of is not None  # n >= 1, m >= 1 after the guard
    best = Assignment(best_vm_of)
    # Report the canonical model evaluation of the winning assignment.
    return best, makespan(instance, best).makespan_s


def lower_bound(instance: ProblemInstance) -> float:
    """max(total work / total capacity, longest task / fastest VM), in seconds."""
    total_mi = sum(t.length_mi for t in instance.tasks)
    total_mips = sum(vm.speed_mips for vm in instance.vms)
    longest = max(t.length_mi for t in instance.tasks)
    fastest = max(vm.speed_mips for vm in instance.vms)
    return max(total_mi / total_mips, longest / fastest)
