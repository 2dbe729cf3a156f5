"""``qbcap`` command-line interface.

stdout carries only the JSON/CSV payload; diagnostics go to stderr.
Exit codes: 0 ok, 2 invalid state, 3 invalid model, 4 write failure,
5 verification violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from .capacity import CapacityBreakdown, format_number, subsystem_capacities
from .errors import BadSpec, DimensionMismatch, InvalidState, UnsupportedGate
from .gates import PermutationGate
from .hamiltonians import LONGITUDINAL, TRANSVERSE, ModelSpec
from .linalg import DensityMatrix
from .mintime import PROTOCOL_COORDINATES, local_invariants, protocol_gate_time
from .protocol2 import run_protocol
from .protocol3 import run_protocol_3q
from .qmp import check_state
from .sampling import DEFAULT_SEED, random_density_matrix, stream
from .suites import SUITES, run_suite

EXIT_OK = 0
EXIT_STATE = 2
EXIT_MODEL = 3
EXIT_WRITE = 4
EXIT_VIOLATION = 5

EXAMPLE1_B = [round(0.05 * k, 10) for k in range(21)]
FIG3_A = np.linspace(0.0, math.sqrt(2.0), 65)
FIG3_J = (0.4, 0.8, 1.2)


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


# ---- input parsing


def parse_state_json(obj) -> DensityMatrix:
    if not isinstance(obj, dict) or "dim" not in obj or "entries" not in obj:
        raise InvalidState("state file must be an object with 'dim' and 'entries'", "format")
    dim = obj["dim"]
    if dim not in (4, 8):
        raise InvalidState(f"dim must be 4 or 8, got {dim!r}", "dimension")
    entries = obj["entries"]
    if len(entries) != dim * dim:
        raise InvalidState(f"expected {dim * dim} entries, got {len(entries)}", "format")
    try:
        vals = np.array([complex(float(re), float(im)) for re, im in entries])
    except (TypeError, ValueError):
        raise InvalidState("entries must be [re, im] pairs of numbers", "format") from None
    return DensityMatrix.from_array(vals.reshape(dim, dim))


def state_to_json(rho: DensityMatrix) -> dict:
    flat = rho.matrix.reshape(-1)
    return {"dim": rho.dim, "entries": [[float(z.real), float(z.imag)] for z in flat]}


def load_state(path: str, seed: int, qubits: int | None) -> DensityMatrix:
    if path == "random":
        return random_density_matrix(qubits or 2, stream("state", seed))
    try:
        obj = json.loads(Path(path).read_text())
    except OSError as exc:
        raise CliError(f"cannot read state file: {exc}", EXIT_STATE) from None
    except json.JSONDecodeError as exc:
        raise CliError(f"state file is not valid JSON: {exc}", EXIT_STATE) from None
    try:
        rho = parse_state_json(obj)
    except InvalidState as exc:
        raise CliError(f"invalid state ({exc.invariant}): {exc}", EXIT_STATE) from None
    if qubits is not None and rho.qubits != qubits:
        raise CliError(f"--qubits {qubits} but the state has {rho.qubits} qubits", EXIT_STATE)
    return rho


def load_model(text: str | None, qubits: int) -> ModelSpec:
    if text is None:
        return ModelSpec.h0(qubits=qubits)
    src = text
    if not text.lstrip().startswith("{"):
        try:
            src = Path(text).read_text()
        except OSError as exc:
            raise CliError(f"cannot read model file: {exc}", EXIT_MODEL) from None
    try:
        obj = json.loads(src)
    except json.JSONDecodeError as exc:
        raise CliError(f"model is not valid JSON: {exc}", EXIT_MODEL) from None
    if isinstance(obj, dict) and "qubits" not in obj:
        obj = {**obj, "qubits": qubits}
    try:
        spec = ModelSpec.from_json(obj)
    except BadSpec as exc:
        raise CliError(f"invalid model: {exc}", EXIT_MODEL) from None
    if spec.qubits != qubits:
        raise CliError(f"model has {spec.qubits} qubits, state has {qubits}", EXIT_MODEL)
    return spec


# ---- output


def emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text)
    except OSError as exc:
        raise CliError(f"cannot write {out}: {exc}", EXIT_WRITE) from None


def emit_json(obj, out: str | None = None):
    emit(json.dumps(obj, indent=2) + "\n", out)


def csv_text(header_comments: list[str], columns: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    for line in header_comments:
        buf.write(f"# {line}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([format_number(x) if isinstance(x, (float, np.floating)) else x for x in row])
    return buf.getvalue()


# ---- commands


def cmd_capacity(args) -> int:
    rho = load_state(args.state, args.seed, args.qubits)
    spec = load_model(args.model, rho.qubits)
    bd = subsystem_capacities(rho, spec)
    if args.format == "csv":
        emit(csv_text([f"model: {spec.dumps()}"], CapacityBreakdown.columns(rho.qubits), [bd.to_csv_row()]), args.out)
    else:
        emit_json(bd.to_json(), args.out)
    return EXIT_OK


def cmd_protocol(args) -> int:
    rho = load_state(args.state, args.seed, args.qubits)
    spec = load_model(args.model, rho.qubits)
    report = run_protocol(rho, spec) if rho.qubits == 2 else run_protocol_3q(rho, spec)
    emit_json(report.to_json(), args.out)
    return EXIT_OK


def rho_b(b: float) -> DensityMatrix:
    m = np.zeros((4, 4))
    m[0, 0] = m[3, 3] = 0.5
    m[0, 3] = m[3, 0] = b / 2
    return DensityMatrix(m, 2)


def rho_a(a: float) -> DensityMatrix:
    m = np.array([[2, a, 0, 0], [a, 1, 0, 0], [0, 0, 1, a], [0, 0, a, 2]], dtype=float) / 6
    return DensityMatrix(m, 2)


def example1_rows():
    spec = ModelSpec.xx(axis=LONGITUDINAL, E=1.0, J=1.0, alpha=1.0)
    rows = []
    for b in EXAMPLE1_B:
        rep = run_protocol(rho_b(b), spec)
        gates = " ".join(str(g) for g in rep.best_path)
        rows.append([b, rep.total, rep.initial_residual, rep.c1, rep.best, rep.final_residual, gates])
    cols = ["b", "total", "residual_before", "sub_before", "sub_after", "residual_after", "gates"]
    return spec, cols, rows


def fig3_rows():
    rows = []
    for axis in (TRANSVERSE, LONGITUDINAL):
        for J in FIG3_J:
            spec = ModelSpec.ising(axis=axis, E=1.0, J=J)
            for a in FIG3_A:
                rep = run_protocol(rho_a(float(a)), spec)
                rows.append([axis.kind, J, float(a), rep.total, rep.initial_residual,
                             rep.final_residual, rep.c1, rep.best])
    cols = ["field", "J", "a", "total", "residual_before", "residual_after", "sub_before", "sub_after"]
    return cols, rows


def closed_form_example2(field: str, J: float, a: float) -> tuple[float, float]:
    """(residual before, residual after) from the closed forms, E = 1."""
    s = math.sqrt(4 * a * a + 1)
    if field == "transverse":
        total = s / 3 * (math.sqrt(8 + J * J) + J)
        return total - 4 * math.sqrt(2) * a / 3, total - 2 * math.sqrt(2) / 3 * s
    total = 2 * s / 3 if J <= 1 else 2 * J * s / 3
    return total - 4 * a / 3, total - 2 * s / 3


def cmd_reproduce(args) -> int:
    if args.target == "example1":
        spec, cols, rows = example1_rows()
        text = csv_text([f"model: {spec.dumps()}", "state: rho_b, b in 0..1 step 0.05"], cols, rows)
    elif args.target in ("example2", "fig3"):
        cols, rows = fig3_rows()
        comments = [
            "model: " + ModelSpec.ising(axis=TRANSVERSE, J=0.4).dumps() + " with J in {0.4, 0.8, 1.2}",
            "model: " + ModelSpec.ising(axis=LONGITUDINAL, J=0.4).dumps() + " with J in {0.4, 0.8, 1.2}",
            "state: rho_a, 65 points of a in [0, sqrt(2)]",
        ]
        if args.target == "fig3":
            comments.append("panel a: transverse residual_before (solid) / residual_after (dashed)")
            comments.append("panel b: sub_before / sub_after for both fields")
            comments.append("panels c, d: longitudinal residual_before (solid) / residual_after (dashed)")
        else:
            cols = cols + ["closed_residual_before", "closed_residual_after"]
            rows = [r + list(closed_form_example2(r[0], r[1], r[2])) for r in rows]
        text = csv_text(comments, cols, rows)
    else:
        rows = []
        for g in PROTOCOL_COORDINATES:
            gt = protocol_gate_time(g, 1.0)
            inv = local_invariants(g.matrix(4))
            c = gt.coordinates
            rows.append([str(g), gt.J, c.a1, c.a2, c.a3, inv.chi1.real, inv.chi1.imag, inv.chi2, gt.t_star])
        cols = ["gate", "J", "a1", "a2", "a3", "chi1_re", "chi1_im", "chi2", "t_star"]
        text = csv_text(["minimal gate times under the XXZ/Ising drift, J = 1"], cols, rows)
    emit(text, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.n < 1:
        raise CliError("--n must be >= 1", EXIT_VIOLATION)
    res = run_suite(args.suite, args.n, args.seed, args.workers)
    emit_json(res.to_json(), args.out)
    if res.violations:
        print(f"{res.violations} violation(s); first at sample index {res.first_violation_index}", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_mintime(args) -> int:
    gates = [PermutationGate.parse(args.gate)] if args.gate else list(PROTOCOL_COORDINATES)
    out = []
    for g in gates:
        try:
            out.append(protocol_gate_time(g, args.J).to_json())
        except UnsupportedGate as exc:
            raise CliError(str(exc), EXIT_MODEL) from None
    emit_json(out if len(out) > 1 else out[0], args.out)
    return EXIT_OK


def cmd_qmp_check(args) -> int:
    rho = load_state(args.state, args.seed, args.qubits)
    passed, report = check_state(rho)
    emit_json({"passed": passed, "slacks": [r.to_json() for r in report]}, args.out)
    return EXIT_OK if passed else EXIT_VIOLATION


def _seed(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qbcap", description="Quantum battery capacity tools.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, state=True, model=True):
        if state:
            sp.add_argument("--state", required=True, help="state JSON file, or 'random' (uses --seed)")
            sp.add_argument("--qubits", type=int, choices=(2, 3))
        if model:
            sp.add_argument("--model", help="model spec as JSON text or a path to a JSON file")
        sp.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
        sp.add_argument("--out", help="write the payload here instead of stdout")

    sp = sub.add_parser("capacity", help="capacity breakdown of a state")
    common(sp)
    fmt = sp.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json")
    fmt.add_argument("--csv", dest="format", action="store_const", const="csv")
    sp.set_defaults(func=cmd_capacity, format="json")

    sp = sub.add_parser("protocol", help="run the enhancement protocol")
    common(sp)
    sp.set_defaults(func=cmd_protocol)

    sp = sub.add_parser("reproduce", help="regenerate example and figure data as CSV")
    sp.add_argument("target", choices=("example1", "example2", "fig3", "gatetimes"))
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_reproduce)

    sp = sub.add_parser("verify", help="run a Monte-Carlo or identity suite")
    sp.add_argument("--suite", required=True, choices=SUITES)
    sp.add_argument("--n", type=int, default=1000)
    sp.add_argument("--workers", type=int, default=1)
    common(sp, state=False, model=False)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("mintime", help="minimal gate times of the protocol gates")
    sp.add_argument("--gate", help="e.g. 14 or U14; all six gates when omitted")
    sp.add_argument("--J", type=float, default=1.0)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_mintime)

    sp = sub.add_parser("qmp-check", help="marginal-problem inequalities for a state")
    common(sp, model=False)
    sp.set_defaults(func=cmd_qmp_check)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"qbcap: {exc}", file=sys.stderr)
        return exc.code
    except (BadSpec, DimensionMismatch) as exc:
        print(f"qbcap: invalid model: {exc}", file=sys.stderr)
        return EXIT_MODEL
    except ValueError as exc:
        print(f"qbcap: {exc}", file=sys.stderr)
        return EXIT_MODEL if args.command == "mintime" else EXIT_STATE


if __name__ == "__main__":
    sys.exit(main())
