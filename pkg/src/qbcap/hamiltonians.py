"""Battery Hamiltonians: free field terms, two-qubit spin-chain couplings, subsystem terms.

Pauli matrices use the standard convention, sigma_y = [[0, -i], [i, 0]].

Sign of the zz coupling: for a longitudinal field the coupling is written
``-beta*J sigma_z sigma_z`` so that the spectra come out as the familiar
``{2E - J, J, J, -2E - J}`` of the longitudinal Ising chain. The other axes use
``+beta*J``. For a longitudinal field flipping this sign negates the spectrum,
which leaves every capacity unchanged.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field, replace
from functools import reduce

import numpy as np

from .errors import BadSpec, DimensionMismatch
from .linalg import SUBSYSTEMS, DensityMatrix, Spectrum, hermitian_eigenvalues

SX = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SY = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SZ = np.array([[1, 0], [0, -1]], dtype=np.complex128)
I2 = np.eye(2, dtype=np.complex128)
PAULI = {"x": SX, "y": SY, "z": SZ}


def kron(*ops) -> np.ndarray:
    return reduce(np.kron, ops)


def embed(op: np.ndarray, site: int, qubits: int) -> np.ndarray:
    """Single-qubit operator acting on ``site`` of a ``qubits``-qubit register."""
    return kron(*[op if k == site else I2 for k in range(qubits)])


class Model(str, enum.Enum):
    NON_INTERACTING = "NonInteracting"
    ISING = "Ising"
    XX = "XX"
    XXZ = "XXZ"
    XXX = "XXX"
    CUSTOM = "Custom"

    @classmethod
    def parse(cls, name) -> "Model":
        if isinstance(name, cls):
            return name
        for m in cls:
            if str(name).lower() in (m.value.lower(), m.name.lower()):
                return m
        raise BadSpec(f"unknown model {name!r}")


INTERACTING = (Model.ISING, Model.XX, Model.XXZ, Model.XXX)

# (alpha, beta) fixed by the model; None = free parameter
_MODEL_ANISOTROPY = {
    Model.ISING: (0.0, 1.0),
    Model.XX: (None, 0.0),
    Model.XXZ: (None, 1.0),
    Model.XXX: (1.0, 1.0),
}


@dataclass(frozen=True)
class FieldAxis:
    kind: str  # "transverse" | "longitudinal" | "general"
    components: tuple[float, float, float] | None = None

    def __post_init__(self):
        if self.kind not in ("transverse", "longitudinal", "general"):
            raise BadSpec(f"unknown field axis {self.kind!r}")
        if self.kind == "general":
            if self.components is None or len(self.components) != 3:
                raise BadSpec("a general field needs three components (E1, E2, E3)")
            comps = tuple(float(c) for c in self.components)
            if not any(comps):
                raise BadSpec("general field components are all zero")
            object.__setattr__(self, "components", comps)
        elif self.components is not None:
            raise BadSpec(f"{self.kind} field takes no components")

    @classmethod
    def general(cls, e1: float, e2: float, e3: float) -> "FieldAxis":
        return cls("general", (e1, e2, e3))

    def site_operator(self) -> np.ndarray:
        """Field operator on one qubit, per unit field strength."""
        if self.kind == "transverse":
            return SX + SY
        if self.kind == "longitudinal":
            return SZ.copy()
        e1, e2, e3 = self.components
        return e1 * SX + e2 * SY + e3 * SZ

    def to_json(self):
        if self.kind == "general":
            return {"general": list(self.components)}
        return self.kind

    @classmethod
    def from_json(cls, obj) -> "FieldAxis":
        if isinstance(obj, str):
            return cls(obj.lower())
        if isinstance(obj, dict) and set(obj) == {"general"}:
            return cls.general(*obj["general"])
        raise BadSpec(f"cannot parse field axis {obj!r}")


TRANSVERSE = FieldAxis("transverse")
LONGITUDINAL = FieldAxis("longitudinal")


@dataclass(frozen=True)
class ModelSpec:
    qubits: int = 2
    axis: FieldAxis = LONGITUDINAL
    E: float = 1.0
    J: float = 0.0
    alpha: float = 0.0
    beta: float = 0.0
    model: Model = Model.NON_INTERACTING

    def __post_init__(self):
        object.__setattr__(self, "model", Model.parse(self.model))
        if isinstance(self.axis, str):
            object.__setattr__(self, "axis", FieldAxis.from_json(self.axis))
        for name in ("E", "J", "alpha", "beta"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if self.qubits not in (2, 3):
            raise BadSpec(f"qubits must be 2 or 3, got {self.qubits!r}")
        if self.J < 0:
            raise BadSpec(f"coupling J must be >= 0, got {self.J}")
        if abs(self.alpha) > 1 or abs(self.beta) > 1:
            raise BadSpec("anisotropies must satisfy |alpha| <= 1 and |beta| <= 1")
        if self.model in _MODEL_ANISOTROPY:
            a_fixed, b_fixed = _MODEL_ANISOTROPY[self.model]
            if a_fixed is not None and self.alpha != a_fixed:
                raise BadSpec(f"{self.model.value} requires alpha = {a_fixed}")
            if b_fixed is not None and self.beta != b_fixed:
                raise BadSpec(f"{self.model.value} requires beta = {b_fixed}")
            if a_fixed is None and self.alpha == 0:
                raise BadSpec(f"{self.model.value} requires alpha != 0")

    # convenience constructors

    @classmethod
    def h0(cls, axis=LONGITUDINAL, E=1.0, qubits=2) -> "ModelSpec":
        return cls(qubits=qubits, axis=axis, E=E)

    @classmethod
    def ising(cls, axis=LONGITUDINAL, E=1.0, J=1.0) -> "ModelSpec":
        return cls(axis=axis, E=E, J=J, alpha=0.0, beta=1.0, model=Model.ISING)

    @classmethod
    def xx(cls, axis=LONGITUDINAL, E=1.0, J=1.0, alpha=1.0) -> "ModelSpec":
        return cls(axis=axis, E=E, J=J, alpha=alpha, beta=0.0, model=Model.XX)

    @classmethod
    def xxz(cls, axis=LONGITUDINAL, E=1.0, J=1.0, alpha=1.0) -> "ModelSpec":
        return cls(axis=axis, E=E, J=J, alpha=alpha, beta=1.0, model=Model.XXZ)

    @classmethod
    def xxx(cls, axis=LONGITUDINAL, E=1.0, J=1.0) -> "ModelSpec":
        return cls(axis=axis, E=E, J=J, alpha=1.0, beta=1.0, model=Model.XXX)

    def free(self) -> "ModelSpec":
        """The same field with the coupling switched off."""
        return replace(self, J=0.0, alpha=0.0, beta=0.0, model=Model.NON_INTERACTING)

    @property
    def dim(self) -> int:
        return 2**self.qubits

    def to_json(self) -> dict:
        return {
            "qubits": self.qubits,
            "axis": self.axis.to_json(),
            "E": self.E,
            "J": self.J,
            "alpha": self.alpha,
            "beta": self.beta,
            "model": self.model.value,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, obj) -> "ModelSpec":
        if isinstance(obj, str):
            try:
                obj = json.loads(obj)
            except json.JSONDecodeError as exc:
                raise BadSpec(f"model is not valid JSON: {exc}") from None
        if not isinstance(obj, dict):
            raise BadSpec("model JSON must be an object")
        unknown = set(obj) - {"qubits", "axis", "E", "J", "alpha", "beta", "model"}
        if unknown:
            raise BadSpec(f"unknown model keys: {sorted(unknown)}")
        model = Model.parse(obj.get("model", Model.NON_INTERACTING))
        a_fixed, b_fixed = _MODEL_ANISOTROPY.get(model, (0.0, 0.0))
        try:
            return cls(
                qubits=int(obj.get("qubits", 2)),
                axis=FieldAxis.from_json(obj.get("axis", "longitudinal")),
                E=float(obj.get("E", 1.0)),
                J=float(obj.get("J", 0.0)),
                alpha=float(obj.get("alpha", 0.0 if a_fixed is None else a_fixed)),
                beta=float(obj.get("beta", b_fixed)),
                model=model,
            )
        except (TypeError, ValueError) as exc:
            if isinstance(exc, BadSpec):
                raise
            raise BadSpec(str(exc)) from None


@dataclass(frozen=True)
class Hamiltonian:
    matrix: np.ndarray
    spectrum: Spectrum
    spec: ModelSpec | None = field(default=None, compare=False)

    @classmethod
    def from_matrix(cls, matrix, spec: ModelSpec | None = None) -> "Hamiltonian":
        m = np.array(matrix, dtype=np.complex128)
        m.setflags(write=False)
        return cls(m, hermitian_eigenvalues(m), spec)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def build_h0(spec: ModelSpec) -> Hamiltonian:
    """Free Hamiltonian E * sum_k f_k with f the per-site field operator."""
    if spec.model is not Model.NON_INTERACTING:
        raise BadSpec(f"build_h0 needs a NonInteracting spec, got {spec.model.value}")
    f = spec.axis.site_operator()
    h = spec.E * sum(embed(f, k, spec.qubits) for k in range(spec.qubits))
    return Hamiltonian.from_matrix(h, spec)


def coupling_operator(spec: ModelSpec) -> np.ndarray:
    """alpha*J (XX + YY) +/- beta*J ZZ for two qubits; see module docstring for the sign."""
    zz_sign = -1.0 if spec.axis.kind == "longitudinal" else 1.0
    return spec.J * (
        spec.alpha * (kron(SX, SX) + kron(SY, SY)) + zz_sign * spec.beta * kron(SZ, SZ)
    )


def build_model(spec: ModelSpec) -> Hamiltonian:
    if spec.model not in INTERACTING:
        raise BadSpec(f"build_model needs an interacting model, got {spec.model.value}")
    if spec.qubits != 2:
        raise BadSpec("interacting models are two-qubit only; use custom_hamiltonian")
    h0 = build_h0(spec.free()).matrix
    return Hamiltonian.from_matrix(h0 + coupling_operator(spec), spec)


def custom_hamiltonian(matrix, spec: ModelSpec) -> Hamiltonian:
    """Arbitrary Hermitian matrix; ``spec`` supplies the field used for the subsystems."""
    m = np.asarray(matrix, dtype=np.complex128)
    if m.shape != (spec.dim, spec.dim):
        raise DimensionMismatch(f"matrix shape {m.shape} does not match {spec.qubits} qubits")
    return Hamiltonian.from_matrix(m, replace(spec, model=Model.CUSTOM))


def hamiltonian(spec: ModelSpec) -> Hamiltonian:
    if spec.model is Model.NON_INTERACTING:
        return build_h0(spec)
    if spec.model is Model.CUSTOM:
        raise BadSpec("a Custom model needs an explicit matrix (custom_hamiltonian)")
    return build_model(spec)


def subsystem_hamiltonian(spec: ModelSpec, which="A") -> Hamiltonian:
    """Local field term E * f acting on one qubit."""
    name = which if isinstance(which, str) else SUBSYSTEMS[int(which)]
    if name.upper() not in SUBSYSTEMS[: spec.qubits]:
        raise BadSpec(f"no subsystem {which!r} in a {spec.qubits}-qubit model")
    return Hamiltonian.from_matrix(spec.E * spec.axis.site_operator(), spec)


def h0_dominance_check(rho: DensityMatrix, h: Hamiltonian, h0: Hamiltonian, tol: float = 1e-10) -> bool:
    """C(rho; H) >= C(rho; H0), the hypothesis of the trade-off theorems."""
    from .capacity import battery_capacity

    if not (rho.dim == h.dim == h0.dim):
        raise DimensionMismatch(f"dimensions {rho.dim}, {h.dim}, {h0.dim} differ")
    return battery_capacity(rho, h) >= battery_capacity(rho, h0) - tol
