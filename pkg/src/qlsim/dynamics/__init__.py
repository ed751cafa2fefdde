"""Classical motional dynamics of trapped ion crystals.

The RK4 inner loops live in a compiled extension when available; set
QLSIM_PURE_PYTHON=1 to force the pure-Python reference kernels.
"""

import os

if os.environ.get("QLSIM_PURE_PYTHON"):
    from qlsim.dynamics import _rk4py as backend
else:
    try:
        from qlsim.dynamics import _rk4core as backend  # type: ignore
    except ImportError:
        from qlsim.dynamics import _rk4py as backend

BACKEND = backend.BACKEND

from qlsim.dynamics.crystal import CrystalConfig
from qlsim.dynamics.motion import (
    DriveSpec,
    StepControl,
    Trajectory,
    convergence_defect,
    energy_to_nbar,
    simulate_single,
    simulate_two,
)

__all__ = [
    "BACKEND",
    "backend",
    "CrystalConfig",
    "DriveSpec",
    "StepControl",
    "Trajectory",
    "convergence_defect",
    "energy_to_nbar",
    "simulate_single",
    "simulate_two",
]
