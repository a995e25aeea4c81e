"""Dual-rail photonic qubits.

A qubit is one photon shared by two modes, rail ``a`` and rail ``b``:
``|0_L> = |0>_a |1>_b`` and ``|1_L> = |1>_a |0>_b``. Logical 2x2 matrices
act on ``(c0, c1)``. For circuits, qubit ``q`` owns modes ``2q`` (rail a)
and ``2q + 1`` (rail b); two-qubit logical states are ordered
``|00>, |01>, |10>, |11>`` with qubit 0 as the major index.

Gate models:

* phase shifter ``exp(i theta n)`` on one mode,
* beam splitter: the lossless mirror matrix on the (a, b) mode amplitudes,
* Kerr cross-phase ``exp(i phi n_i n_j)`` between two modes.

Circuits also run on the full Fock space of ``mode_count`` modes (each
truncated at one photon), which is how photon-number conservation is
checked.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ContractViolationError, DomainError
from .fabry_perot import mirror_transform
from .fock_core import number_state, tensor

RAILS = ("a", "b")


@dataclass(frozen=True)
class DualRailQubit:
    c0: complex
    c1: complex

    def __post_init__(self):
        if abs(abs(self.c0) ** 2 + abs(self.c1) ** 2 - 1.0) > 1e-12:
            raise ContractViolationError("dual-rail amplitudes must satisfy |c0|^2 + |c1|^2 = 1")

    @property
    def logical(self) -> np.ndarray:
        return np.array([self.c0, self.c1], dtype=complex)


def encode(c0: complex, c1: complex) -> tuple[DualRailQubit, np.ndarray]:
    """Return the qubit and its embedding in the two-mode space ``|n_a> ⊗ |n_b>``, ``n <= 1``."""
    q = DualRailQubit(complex(c0), complex(c1))
    fock = q.c0 * tensor(number_state(0, 2), number_state(1, 2)) + q.c1 * tensor(number_state(1, 2), number_state(0, 2))
    return q, fock


def decode(fock: np.ndarray) -> tuple[complex, complex]:
    fock = np.asarray(fock)
    if abs(fock[0]) > 0 or abs(fock[3]) > 0:
        raise ContractViolationError("state has weight outside the single-photon sector")
    return complex(fock[1]), complex(fock[2])


# --- logical gate matrices -------------------------------------------------

def phase_shifter(theta: float, rail: str = "a") -> np.ndarray:
    if rail == "a":
        return np.diag([1.0, cmath.exp(1j * theta)])
    if rail == "b":
        return np.diag([cmath.exp(1j * theta), 1.0])
    raise DomainError(f"rail must be 'a' or 'b', got {rail!r}")


_SWAP = np.array([[0, 1], [1, 0]])


def beam_splitter(R: float) -> np.ndarray:
    """Mirror matrix on the ``(a, b)`` mode amplitudes, i.e. on ``(c1, c0)``, returned in ``(c0, c1)`` order."""
    return (_SWAP @ mirror_transform(R) @ _SWAP).astype(complex)


def kerr_cross_phase(phi_K: float) -> np.ndarray:
    """Cross-phase between rail a of qubit 0 and rail a of qubit 1: ``diag(1, 1, 1, e^{i phi_K})``."""
    return np.diag([1.0, 1.0, 1.0, cmath.exp(1j * phi_K)])


# --- circuits ---------------------------------------------------------------

@dataclass(frozen=True)
class PhaseShift:
    mode: int
    theta: float


@dataclass(frozen=True)
class BeamSplit:
    modes: tuple[int, int]
    R: float


@dataclass(frozen=True)
class Kerr:
    modes: tuple[int, int]
    phi: float


@dataclass(frozen=True)
class ModeCircuit:
    """Gates applied left to right on ``mode_count`` modes (2 or 4)."""

    mode_count: int = 2
    gates: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.mode_count not in (2, 4):
            raise DomainError("mode_count must be 2 or 4")
        for g in self.gates:
            modes = (g.mode,) if isinstance(g, PhaseShift) else g.modes
            if any(not 0 <= m < self.mode_count for m in modes):
                raise DomainError(f"gate {g} references a mode outside 0..{self.mode_count - 1}")
            if isinstance(g, BeamSplit):
                _check_splitter(g)
            if isinstance(g, Kerr) and g.modes[0] // 2 == g.modes[1] // 2:
                raise DomainError(f"Kerr gate {g} must couple rails of different qubits")

    @property
    def qubits(self) -> int:
        return self.mode_count // 2

    def then(self, *gates) -> "ModeCircuit":
        return ModeCircuit(self.mode_count, self.gates + tuple(gates))


def _check_splitter(g: BeamSplit) -> None:
    i, j = g.modes
    if not (i // 2 == j // 2 and i != j):
        raise DomainError(f"beam splitter {g} must mix the two rails of one qubit")
    if not 0.0 <= g.R <= 1.0:
        raise DomainError(f"beam splitter reflectivity {g.R} outside [0, 1]")


def rail_mode(qubit: int, rail: str) -> int:
    if rail not in RAILS:
        raise DomainError(f"rail must be 'a' or 'b', got {rail!r}")
    return 2 * qubit + RAILS.index(rail)


def _fock_index(occupations) -> int:
    idx = 0
    for n in occupations:
        idx = 2 * idx + n
    return idx


def logical_to_fock(logical: np.ndarray, mode_count: int) -> np.ndarray:
    """Embed logical amplitudes into the ``2**mode_count`` Fock space."""
    logical = np.asarray(logical, dtype=complex)
    qubits = mode_count // 2
    out = np.zeros(2**mode_count, dtype=complex)
    for k, bits in enumerate(itertools.product((0, 1), repeat=qubits)):
        occ = [n for b in bits for n in ((1, 0) if b else (0, 1))]
        out[_fock_index(occ)] = logical[k]
    return out


def fock_to_logical(fock: np.ndarray, mode_count: int) -> np.ndarray:
    """Project back to logical amplitudes; raises if weight leaked out of the sector."""
    fock = np.asarray(fock, dtype=complex)
    qubits = mode_count // 2
    out = np.zeros(2**qubits, dtype=complex)
    outside = np.ones(fock.size, dtype=bool)
    for k, bits in enumerate(itertools.product((0, 1), repeat=qubits)):
        occ = [n for b in bits for n in ((1, 0) if b else (0, 1))]
        idx = _fock_index(occ)
        out[k] = fock[idx]
        outside[idx] = False
    leaked = float(np.sum(np.abs(fock[outside]) ** 2))
    if leaked > 0:
        raise ContractViolationError(f"circuit left the dual-rail sector (leaked weight {leaked:.3g})")
    return out


def _occupations(mode_count: int) -> np.ndarray:
    return np.array(list(itertools.product((0, 1), repeat=mode_count)))


def apply_gate_fock(gate, fock: np.ndarray, mode_count: int) -> np.ndarray:
    """Apply one gate to a Fock-space ket of ``mode_count`` modes (one photon max per mode)."""
    occ = _occupations(mode_count)
    fock = np.asarray(fock, dtype=complex)
    if isinstance(gate, PhaseShift):
        return np.exp(1j * gate.theta * occ[:, gate.mode]) * fock
    if isinstance(gate, Kerr):
        i, j = gate.modes
        return np.exp(1j * gate.phi * occ[:, i] * occ[:, j]) * fock
    if isinstance(gate, BeamSplit):
        i, j = gate.modes
        U = mirror_transform(gate.R)
        out = fock.copy()
        for idx, o in enumerate(occ):
            if o[i] == 1 and o[j] == 0:
                partner = o.copy()
                partner[i], partner[j] = 0, 1
                pidx = _fock_index(partner)
                amp_a, amp_b = fock[idx], fock[pidx]
                # single photon: its mode amplitudes transform like classical fields
                out[idx] = U[0, 0] * amp_a + U[0, 1] * amp_b
                out[pidx] = U[1, 0] * amp_a + U[1, 1] * amp_b
            elif o[i] == 1 and o[j] == 1 and abs(fock[idx]) > 0:
                raise ContractViolationError("two photons on one beam splitter leave the truncated space")
        return out
    raise TypeError(f"unknown gate {gate!r}")


def run_fock(circuit: ModeCircuit, fock: np.ndarray) -> np.ndarray:
    for g in circuit.gates:
        fock = apply_gate_fock(g, fock, circuit.mode_count)
    return fock


def realize(circuit: ModeCircuit) -> np.ndarray:
    """Logical unitary of a circuit, obtained by running each logical basis state through the Fock space."""
    dim = 2**circuit.qubits
    cols = []
    for k in range(dim):
        e = np.zeros(dim, dtype=complex)
        e[k] = 1.0
        out = run_fock(circuit, logical_to_fock(e, circuit.mode_count))
        cols.append(fock_to_logical(out, circuit.mode_count))
    return np.column_stack(cols)


def _embed(single: np.ndarray, qubit: int, qubits: int) -> np.ndarray:
    mats = [np.eye(2)] * qubits
    mats[qubit] = single
    out = mats[0]
    for m in mats[1:]:
        out = np.kron(out, m)
    return out


def logical_matrix(circuit: ModeCircuit) -> np.ndarray:
    """Logical unitary composed from the gate matrices, independently of ``realize``."""
    n = circuit.qubits
    U = np.eye(2**n, dtype=complex)
    for g in circuit.gates:
        if isinstance(g, PhaseShift):
            G = _embed(phase_shifter(g.theta, RAILS[g.mode % 2]), g.mode // 2, n)
        elif isinstance(g, BeamSplit):
            # modes listed (a, b) act on (c1, c0); listed (b, a) they act on (c0, c1)
            M = beam_splitter(g.R) if g.modes[0] % 2 == 0 else mirror_transform(g.R).astype(complex)
            G = _embed(M, g.modes[0] // 2, n)
        else:
            G = _kerr_matrix(g, n)
        U = G @ U
    return U


def _kerr_matrix(g: Kerr, qubits: int) -> np.ndarray:
    diag = []
    for bits in itertools.product((0, 1), repeat=qubits):
        occ = [n for b in bits for n in ((1, 0) if b else (0, 1))]
        diag.append(cmath.exp(1j * g.phi * occ[g.modes[0]] * occ[g.modes[1]]))
    return np.diag(diag)


def _wrap(angle: float) -> float:
    return math.remainder(angle, 2 * math.pi)


def compile_single_qubit(U: np.ndarray, atol: float = 1e-10) -> ModeCircuit:
    """Decompose a 2x2 unitary into ``phase(alpha) -> splitter(R) -> phase(gamma + pi)`` on rail a.

    Up to global phase ``U = D(gamma) Rot(beta) D(alpha)`` with
    ``D(x) = diag(1, e^{ix})`` and ``Rot`` a real rotation. The splitter gives
    ``Rot(beta) = -D(pi) B(cos^2 beta)``; the extra ``pi`` is folded into the
    last shifter.
    """
    U = np.asarray(U, dtype=complex)
    if U.shape != (2, 2) or np.max(np.abs(U.conj().T @ U - np.eye(2))) > atol:
        raise ContractViolationError("target must be a 2x2 unitary")
    # remove the global phase so that U[0, 0] is real and non-negative
    if abs(U[0, 0]) > 1e-14:
        V = U * cmath.exp(-1j * cmath.phase(U[0, 0]))
    else:
        V = U * cmath.exp(-1j * cmath.phase(U[1, 0]))
    cos_b = min(1.0, abs(V[0, 0]))
    sin_b = min(1.0, abs(V[1, 0]))
    gamma = cmath.phase(V[1, 0]) if sin_b > 1e-14 else 0.0
    if sin_b >= cos_b:
        alpha = cmath.phase(-V[0, 1])
    else:
        alpha = cmath.phase(V[1, 1]) - gamma
    R = cos_b**2 / (cos_b**2 + sin_b**2)
    a_mode = 0
    gates = [
        PhaseShift(a_mode, _wrap(alpha)),
        BeamSplit((0, 1), R),
        PhaseShift(a_mode, _wrap(gamma + math.pi)),
    ]
    return ModeCircuit(2, tuple(gates))


def global_phase_fidelity(U: np.ndarray, V: np.ndarray) -> float:
    """``|Tr(U^dagger V)| / d``: 1 exactly when ``V`` equals ``U`` up to a global phase."""
    return float(abs(np.trace(np.asarray(U).conj().T @ np.asarray(V))) / np.asarray(U).shape[0])


# --- text format ------------------------------------------------------------

def parse_circuit(text: str) -> ModeCircuit:
    """Parse one gate per line (``;`` also separates gates).

    ``ps <rail> <theta>``, ``bs <R>`` and ``kerr <phi>``. Rails may carry a
    qubit index (``a1``) and ``bs`` an optional trailing qubit index;
    ``kerr`` couples rail a of qubits 0 and 1. Any two-qubit reference makes
    the circuit four-mode.
    """
    gates = []
    max_qubit = 0
    lines = [p.strip() for line in text.splitlines() for p in line.split(";")]
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        op, args = parts[0].lower(), parts[1:]
        try:
            if op == "ps" and len(args) == 2:
                rail, qubit = args[0][0], int(args[0][1:] or 0)
                gates.append(PhaseShift(rail_mode(qubit, rail), float(args[1])))
                max_qubit = max(max_qubit, qubit)
            elif op == "bs" and len(args) in (1, 2):
                qubit = int(args[1]) if len(args) == 2 else 0
                gates.append(BeamSplit((rail_mode(qubit, "a"), rail_mode(qubit, "b")), float(args[0])))
                max_qubit = max(max_qubit, qubit)
            elif op == "kerr" and len(args) == 1:
                gates.append(Kerr((rail_mode(0, "a"), rail_mode(1, "a")), float(args[0])))
                max_qubit = max(max_qubit, 1)
            else:
                raise DomainError(f"unrecognised gate {line!r}")
        except (ValueError, IndexError) as exc:
            raise DomainError(f"gate {lineno}: cannot parse {line!r} ({exc})") from None
    if max_qubit > 1:
        raise DomainError("at most two qubits are supported")
    return ModeCircuit(2 * (max_qubit + 1), tuple(gates))


def format_circuit(circuit: ModeCircuit) -> str:
    lines = []
    for g in circuit.gates:
        if isinstance(g, PhaseShift):
            q, rail = divmod(g.mode, 2)
            suffix = str(q) if circuit.qubits > 1 else ""
            lines.append(f"ps {RAILS[rail]}{suffix} {g.theta!r}")
        elif isinstance(g, BeamSplit):
            suffix = f" {g.modes[0] // 2}" if circuit.qubits > 1 else ""
            lines.append(f"bs {g.R!r}{suffix}")
        else:
            lines.append(f"kerr {g.phi!r}")
    return "\n".join(lines) + ("\n" if lines else "")
