import pytest

from leaguesched import ProblemInstance, Task, VirtualMachine


@pytest.fixture
def make_instance():
    """Builder for small hand-written instances.

    Lengths are MI in arrival order; speed_mips may be a scalar (homogeneous
    fleet of n_vms) or a list (one speed per VM).
    """

    def _make(lengths_mi, n_vms=2, speed_mips=100.0):
        tasks = tuple(
            Task(id=i, length_mi=float(l), arrival_index=i)
            for i, l in enumerate(lengths_mi)
        )
        if isinstance(speed_mips, (int, float)):
            speeds = [float(speed_mips)] * n_vms
        else:
            speeds = [float(s) for s in speed_mips]
        vms = tuple(VirtualMachine(id=v, speed_mips=s) for v, s in enumerate(speeds))
        return ProblemInstance(tasks, vms)

    return _make
