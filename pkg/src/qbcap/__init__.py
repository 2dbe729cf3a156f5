"""Quantum battery capacity: subsystem trade-offs, incoherent-operation
protocols and minimal gate times for two- and three-qubit batteries."""

from ._accel import NUMBA_ENABLED
from .capacity import (
    CapacityBreakdown,
    battery_capacity,
    capacity_from_spectra,
    residual_capacity,
    sub_capacity,
    sub_ic,
    subsystem_capacities,
)
from .errors import QBCapError
from .gates import PermutationGate, apply_gate
from .hamiltonians import LONGITUDINAL, TRANSVERSE, FieldAxis, Hamiltonian, Model, ModelSpec, hamiltonian
from .linalg import DensityMatrix, Spectrum, partial_trace
from .protocol2 import ProtocolReport, Verdict, run_protocol
from .protocol3 import run_protocol_3q

__all__ = [
    "NUMBA_ENABLED",
    "CapacityBreakdown",
    "DensityMatrix",
    "FieldAxis",
    "Hamiltonian",
    "LONGITUDINAL",
    "Model",
    "ModelSpec",
    "PermutationGate",
    "ProtocolReport",
    "QBCapError",
    "Spectrum",
    "TRANSVERSE",
    "Verdict",
    "apply_gate",
    "battery_capacity",
    "capacity_from_spectra",
    "hamiltonian",
    "partial_trace",
    "residual_capacity",
    "run_protocol",
    "run_protocol_3q",
    "sub_capacity",
    "sub_ic",
    "subsystem_capacities",
]
