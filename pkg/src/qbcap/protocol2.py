"""Two-qubit enhancement protocol built from basis transpositions.

Step 1 stops if nothing is residual. Step 2 moves the diagonal into an
optimal ordering for IC_A or IC_B. Step 3 swaps the smallest of C_A, C_B and
C* into the subsystem that benefits (U12 or U13). Step 4 keeps the best of
the recorded subsystem capacities c1, c2, c3.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, field

import numpy as np

from .capacity import (
    coherence_split_2q,
    sub_capacity,
    sub_ic,
    subsystem_capacities,
    total_hamiltonian,
)
from .errors import BadSubsystem, DimensionMismatch, UnsupportedGate
from .gates import TIE_TOL, PermutationGate, apply_gate, matches_pattern, placement, reorder
from .hamiltonians import ModelSpec, build_h0, h0_dominance_check
from .linalg import DensityMatrix, check_unitary, dephase, hermitian_eigenvalues, partial_trace

RESIDUAL_TOL = 1e-10
GAIN_TOL = 1e-10


class Ordering(str, enum.Enum):
    OPTIMAL_A = "OptimalA"
    OPTIMAL_B = "OptimalB"
    NOT_OPTIMAL = "NotOptimal"


# indices listed from the largest to the smallest diagonal entry
ORDERINGS = {
    Ordering.OPTIMAL_A: ((1, 2, 3, 4), (2, 1, 4, 3), (3, 4, 1, 2), (4, 3, 2, 1)),
    Ordering.OPTIMAL_B: ((1, 3, 2, 4), (2, 4, 1, 3), (3, 1, 4, 2), (4, 2, 3, 1)),
}


class Verdict(str, enum.Enum):
    ALREADY_TIGHT = "AlreadyTight"
    GAIN = "Gain"
    NO_GAIN = "NoGain"


@dataclass
class ProtocolReport:
    c1: float
    c2: float | None
    c3: float | None
    gates_applied: list[PermutationGate]
    initial_residual: float
    final_residual: float
    verdict: Verdict
    total: float
    step2_gates: list[PermutationGate] = field(default_factory=list)
    step3_gate: PermutationGate | None = None
    best_path: list[PermutationGate] = field(default_factory=list)
    family: str | None = None
    # states reached along the c2 and c3 paths (None when the step was skipped)
    c2_state: DensityMatrix | None = field(default=None, repr=False)
    c3_state: DensityMatrix | None = field(default=None, repr=False)
    final_state: DensityMatrix | None = field(default=None, repr=False)

    @property
    def best(self) -> float:
        return max(c for c in (self.c1, self.c2, self.c3) if c is not None)

    def to_json(self) -> dict:
        out = {
            "c1": self.c1,
            "c2": self.c2,
            "c3": self.c3,
            "gates": [g.to_json() for g in self.gates_applied],
            "initial_residual": self.initial_residual,
            "final_residual": self.final_residual,
            "verdict": self.verdict.value,
            "total": self.total,
            "step2_gates": [g.to_json() for g in self.step2_gates],
            "step3_gate": None if self.step3_gate is None else self.step3_gate.to_json(),
            "best_path": [g.to_json() for g in self.best_path],
        }
        if self.family is not None:
            out["family"] = self.family
        return out


def _require_2q(rho: DensityMatrix):
    if rho.qubits != 2:
        raise BadSubsystem("expected a two-qubit state")


def detect_optimal_ordering(rho: DensityMatrix) -> Ordering:
    """OptimalA takes precedence when a degenerate diagonal fits both families."""
    _require_2q(rho)
    d = rho.diagonal()
    for fam in (Ordering.OPTIMAL_A, Ordering.OPTIMAL_B):
        if any(matches_pattern(d, p) for p in ORDERINGS[fam]):
            return fam
    return Ordering.NOT_OPTIMAL


def reorder_diagonal(rho: DensityMatrix, target: Ordering) -> tuple[DensityMatrix, list[PermutationGate]]:
    """Move the diagonal into the first pattern of ``target``."""
    _require_2q(rho)
    if target not in ORDERINGS:
        raise ValueError(f"target must be OptimalA or OptimalB, got {target!r}")
    return reorder(rho, ORDERINGS[target][0])


def best_family(rho: DensityMatrix, spec: ModelSpec) -> Ordering:
    """Family whose first pattern gives the larger Sub_ic (ties to OptimalA)."""
    d = rho.diagonal()
    scores = {}
    for fam in (Ordering.OPTIMAL_A, Ordering.OPTIMAL_B):
        tau = DensityMatrix(np.diag(placement(d, ORDERINGS[fam][0])), 2)
        scores[fam] = sub_ic(tau, spec)
    if scores[Ordering.OPTIMAL_B] > scores[Ordering.OPTIMAL_A] + TIE_TOL:
        return Ordering.OPTIMAL_B
    return Ordering.OPTIMAL_A


SWAP_GATES = (PermutationGate(1, 4), PermutationGate(2, 3))
A_GATES = (PermutationGate(1, 2), PermutationGate(3, 4))
B_GATES = (PermutationGate(1, 3), PermutationGate(2, 4))


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    error: float
    # False for the conjugated variants that hold for complex states
    as_printed: bool = True

    def holds(self, tol: float = 1e-10) -> bool:
        return self.error <= tol


def gate_action_identities(rho: DensityMatrix, g: PermutationGate, spec: ModelSpec | None = None) -> list[IdentityCheck]:
    """Check what ``g`` does to the subsystem capacities and C/IC terms.

    U14, U23 exchange the subsystem capacities. U12, U34 keep IC_A and move
    C* into C_A; U13, U24 keep IC_B and move C* into C_B. That last exchange
    only holds when rho_12 and rho_23 are real, so the U13/U24 report also
    carries the conjugated forms (``as_printed=False``) that hold in general.
    """
    _require_2q(rho)
    if g not in SWAP_GATES + A_GATES + B_GATES:
        raise UnsupportedGate(f"{g} is not one of the protocol's two-qubit gates")
    spec = spec or ModelSpec.h0()
    new = apply_gate(rho, g)
    if g in SWAP_GATES:
        before = subsystem_capacities(rho, spec)
        after = subsystem_capacities(new, spec)
        return [
            IdentityCheck("sub_A(new) = sub_B(old)", abs(after.sub_A - before.sub_B)),
            IdentityCheck("sub_B(new) = sub_A(old)", abs(after.sub_B - before.sub_A)),
        ]
    s0, s1 = coherence_split_2q(rho), coherence_split_2q(new)
    if g in A_GATES:
        return [
            IdentityCheck("IC_A(new) = IC_A(old)", abs(s1.ic_A - s0.ic_A)),
            IdentityCheck("C_A(new) = C*(old)", float(abs(s1.c_A - s0.c_star))),
            IdentityCheck("C*(new) = C_A(old)", float(abs(s1.c_star - s0.c_A))),
        ]
    if g in B_GATES:
        # U13 maps rho_23 to rho_32, so the exchange is exact only up to conjugating one entry
        r = rho.matrix
        c_star_bar = 2 * float(abs(r[0, 3] + np.conj(r[1, 2])))
        c_b_bar = 2 * float(abs(np.conj(r[0, 1]) + r[2, 3]))
        return [
            IdentityCheck("IC_B(new) = IC_B(old)", abs(s1.ic_B - s0.ic_B)),
            IdentityCheck("C_B(new) = C*(old)", float(abs(s1.c_B - s0.c_star))),
            IdentityCheck("C*(new) = C_B(old)", float(abs(s1.c_star - s0.c_B))),
            IdentityCheck("C_B(new) = 2|rho14 + conj(rho23)|", abs(s1.c_B - c_star_bar), False),
            IdentityCheck("C*(new) = 2|conj(rho12) + rho34|", abs(s1.c_star - c_b_bar), False),
        ]
    raise UnsupportedGate(f"{g} is not one of the protocol's two-qubit gates")


def _step3_gate(rho: DensityMatrix) -> PermutationGate | None:
    s = coherence_split_2q(rho)
    low = min(s.c_A, s.c_B, s.c_star)
    if s.c_star <= low + TIE_TOL:
        return None
    if s.c_A <= low + TIE_TOL:
        return PermutationGate(1, 2)
    return PermutationGate(1, 3)


def _finish(c1, c2, c3, total, initial_residual, rho, step2, step3, c2_state, c3_state, family=None):
    """Step 4. ``gates_applied`` is the full composed list; ``best_path`` the traced-back one."""
    best, path, state = c1, [], rho
    if c2 is not None and c2 > best + TIE_TOL:
        best, path, state = c2, list(step2), c2_state
    if c3 is not None and c3 > best + TIE_TOL:
        best, path, state = c3, list(step2) + [step3], c3_state
    verdict = Verdict.GAIN if best > c1 + GAIN_TOL else Verdict.NO_GAIN
    return ProtocolReport(
        c1=c1,
        c2=c2,
        c3=c3,
        gates_applied=list(step2) + ([step3] if step3 is not None else []),
        initial_residual=initial_residual,
        final_residual=total - best,
        verdict=verdict,
        total=total,
        step2_gates=list(step2),
        step3_gate=step3,
        best_path=path,
        family=family,
        c2_state=c2_state,
        c3_state=c3_state,
        final_state=state,
    )


def _warn_dominance(rho, spec):
    if spec.model.value == "NonInteracting" or spec.qubits != rho.qubits:
        return
    if not h0_dominance_check(rho, total_hamiltonian(spec), build_h0(spec.free())):
        warnings.warn("C(rho; H) < C(rho; H0): the trade-off guarantee does not apply", RuntimeWarning)


def run_protocol(rho: DensityMatrix, spec: ModelSpec) -> ProtocolReport:
    _require_2q(rho)
    if spec.qubits != 2:
        raise DimensionMismatch("two-qubit protocol needs a two-qubit model")
    _warn_dominance(rho, spec)

    bd = subsystem_capacities(rho, spec)
    c1 = bd.sub_sum
    if bd.residual <= RESIDUAL_TOL:
        return ProtocolReport(
            c1=c1, c2=None, c3=None, gates_applied=[], initial_residual=bd.residual,
            final_residual=bd.residual, verdict=Verdict.ALREADY_TIGHT, total=bd.total,
            final_state=rho,
        )

    c2, c2_state = None, None
    step2: list[PermutationGate] = []
    state = rho
    if detect_optimal_ordering(rho) is Ordering.NOT_OPTIMAL:
        state, step2 = reorder_diagonal(rho, best_family(rho, spec))
        c2, c2_state = sub_capacity(state, spec), state

    c3, c3_state = None, None
    g3 = _step3_gate(state)
    if g3 is not None:
        c3_state = apply_gate(state, g3)
        c3 = sub_capacity(c3_state, spec)
    return _finish(c1, c2, c3, bd.total, bd.residual, rho, step2, g3, c2_state, c3_state)


def local_spreads(rho: DensityMatrix) -> np.ndarray:
    """lambda_max - lambda_min of every single-qubit marginal."""
    out = []
    for name in "ABC"[: rho.qubits]:
        lam = hermitian_eigenvalues(partial_trace(rho, name).matrix).values
        out.append(lam[1] - lam[0])
    return np.array(out)


def max_local_eigenvalues(rho: DensityMatrix) -> np.ndarray:
    return np.array(
        [hermitian_eigenvalues(partial_trace(rho, n).matrix).values[1] for n in "ABC"[: rho.qubits]]
    )


def gain_condition(rho: DensityMatrix, u, margin: float = 1e-10) -> tuple[bool, bool]:
    """(sufficient condition holds, subsystem capacity actually grew).

    The condition compares the largest eigenvalues of the dephased marginals
    of U rho U^dagger with those of the original marginals. Growth is measured
    by the summed local spreads, i.e. Sub for any equal-gap local Hamiltonian.
    """
    u = check_unitary(u)
    if u.shape != rho.matrix.shape:
        raise DimensionMismatch(f"unitary {u.shape} on a {rho.dim}-dimensional state")
    new = DensityMatrix(u @ rho.matrix @ u.conj().T, rho.qubits)
    xi = max_local_eigenvalues(dephase(new))
    lam = max_local_eigenvalues(rho)
    condition = xi.sum() > lam.sum() + margin
    gain = local_spreads(new).sum() > local_spreads(rho).sum() + 1e-12
    return bool(condition), bool(gain)


def theorem2_condition(rho: DensityMatrix, u) -> tuple[bool, bool]:
    _require_2q(rho)
    return gain_condition(rho, u)
