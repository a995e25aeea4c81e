"""Acceptance gate: twelve criteria, each reported as one PASS/FAIL line.

Run ``pytest tests/test_acceptance.py`` (the lines appear in the terminal
summary) or ``python tests/test_acceptance.py`` to print them directly.
"""

import contextlib
import io
import math
import sys
import tempfile
import time
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest
from scipy.stats import unitary_group

from cqedsim import cli
from cqedsim.dispersive_cavity import (
    DispersiveParams,
    balanced_atom,
    cat_entangle,
    dispersive_evolve,
    effective_hamiltonian,
    field_mean,
    reduced_atom_purity,
)
from cqedsim.dual_rail_optics import (
    compile_single_qubit,
    global_phase_fidelity,
    logical_to_fock,
    parse_circuit,
    realize,
    run_fock,
)
from cqedsim.fabry_perot import CavitySpec, cavity_gain, mirror_transform, power_ratio, round_trip_series, series_error_bound
from cqedsim.field_modes import NATURAL_UNITS, ModeSpec, field_amplitudes, field_statistics
from cqedsim.fock_core import coherent_state, commutator, evolve_series, ladder_operators, number_state, tensor
from cqedsim.jaynes_cummings import (
    GROUND,
    JCParams,
    atom_field_state,
    atomic_inversion,
    dressed_modes,
    emission_absorption_elements,
    evolve_dressed,
    jc_block,
    jc_hamiltonian,
    rabi_frequency,
    squared_emission_absorption,
)
from cqedsim.semiclassical_perturbation import (
    DriveSpec,
    amplitude_ode_oracle,
    first_order_amplitude,
    rwa_transition_probability,
    two_level_system,
)
from cqedsim.thermal_equilibrium import ThermalSpec, mean_photon_number, occupation_probabilities, thermal_density

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"
E_KET = np.array([1, 0], dtype=complex)


class Check:
    """Accumulates sub-checks of one criterion along with their worst figures."""

    def __init__(self):
        self.failures = []
        self.notes = []
        self.start = time.perf_counter()

    def require(self, ok, what):
        if not ok:
            self.failures.append(what)

    def note(self, text):
        self.notes.append(text)

    def runtime(self, limit):
        elapsed = time.perf_counter() - self.start
        self.note(f"{elapsed:.2f}s/<{limit:g}s")
        self.require(elapsed < limit, f"runtime {elapsed:.2f}s exceeds {limit}s")


def c01_ladder(chk):
    dim = 32
    a, a_dag, _ = ladder_operators(dim)
    worst = 0.0
    for n in range(dim - 1):
        lowered = a @ number_state(n, dim)
        raised = a_dag @ number_state(n, dim)
        want_low = math.sqrt(n) * number_state(n - 1, dim) if n else np.zeros(dim)
        worst = max(worst, np.max(np.abs(lowered - want_low)), np.max(np.abs(raised - math.sqrt(n + 1) * number_state(n + 1, dim))))
    chk.require(worst <= 1e-15, f"ladder error {worst:.2e}")
    c = commutator(a, a_dag)
    block_dev = float(np.max(np.abs(c[:31, :31] - np.eye(31))))
    corner_dev = float(abs(c[31, 31] + 31))
    chk.require(block_dev == 0, f"[a,a+] leading block deviates from I by {block_dev:.2e}")
    chk.require(corner_dev == 0, f"[a,a+] corner deviates from -31 by {corner_dev:.2e}")
    chk.note(f"ladder err {worst:.1e}")
    chk.runtime(1.0)


def c02_jc_eigenstructure(chk):
    worst = 0.0
    for lam in (0.1, 1.0):
        for Delta in (0.0, 0.5, 2.0):
            p = JCParams(omega=1.0, omega0=1.0 + Delta, lam=lam)
            for n in range(31):
                pair = dressed_modes(n, p)
                brute = np.linalg.eigvalsh(jc_block(n, p))
                omega_n = math.sqrt(Delta**2 + 4 * lam**2 * (n + 1))
                closed = ((n + 0.5) - omega_n / 2, (n + 0.5) + omega_n / 2)
                worst = max(worst, abs(brute[0] - pair.E_minus), abs(brute[1] - pair.E_plus),
                            abs(closed[0] - pair.E_minus), abs(closed[1] - pair.E_plus))
                if Delta == 0.0:
                    chk.require(rabi_frequency(n, p) == 2 * lam * math.sqrt(n + 1), f"Omega_{n}(0) not exact")
    chk.require(worst <= 1e-12, f"eigenvalue error {worst:.2e}")
    chk.note(f"max err {worst:.1e}")
    chk.runtime(1.0)


def c03_rabi(chk):
    lam = 0.5
    ts = np.linspace(0, 10 / lam, 500)
    worst = 0.0
    for n in (0, 1, 5):
        out = evolve_dressed(JCParams(1.0, 1.0, lam), number_state(n, n + 1), ts)
        got = np.abs(out[:, GROUND * (n + 2) + n + 1]) ** 2
        worst = max(worst, np.max(np.abs(got - np.sin(lam * math.sqrt(n + 1) * ts) ** 2)))
    chk.require(worst <= 1e-9, f"Rabi error {worst:.2e}")
    chk.note(f"max err {worst:.1e}")
    chk.runtime(2.0)


def c04_collapse_revival(chk):
    lam, dim = 1.0, 128
    p = JCParams(1.0, 1.0, lam)
    C = coherent_state(math.sqrt(20), dim)
    C = C / np.linalg.norm(C)
    ts = np.linspace(0, 30 / lam, 200)
    dressed = atomic_inversion(evolve_dressed(p, C, ts))
    psi0 = atom_field_state(E_KET, np.append(C, 0))
    dense = atomic_inversion(evolve_series(jc_hamiltonian(p, dim + 1), psi0, ts))
    worst = float(np.max(np.abs(dressed - dense)))
    chk.require(worst <= 1e-8, f"inversion mismatch {worst:.2e}")
    chk.note(f"max diff {worst:.1e}")
    chk.runtime(10.0)


def c05_thermal(chk):
    nbar = mean_photon_number(math.log(2))
    chk.require(abs(nbar - 1) <= 1e-12, f"nbar(ln 2) = {nbar!r}")
    worst = 0.0
    for x in (0.01, 0.5, math.log(2), 2.0, 10.0):
        # keep every P_n a normal float so the ratios are meaningful
        P = occupation_probabilities(ThermalSpec(x, min(200, int(700 / x))))
        chk.require(bool(np.all(P > 0)), f"probabilities underflow at x={x}")
        worst = max(worst, float(np.max(np.abs(P[1:] / P[:-1] - math.exp(-x)))))
    chk.require(worst <= 1e-14, f"ratio error {worst:.2e}")
    trace = np.trace(thermal_density(ThermalSpec(0.5, 200))).real
    chk.require(trace >= 1 - 1e-6, f"trace {trace!r}")
    high_t = abs(mean_photon_number(0.01) * 0.01 - 1)
    chk.require(high_t <= 0.005, f"high-T deviation {high_t:.3%}")
    chk.note(f"ratio err {worst:.1e}, high-T {high_t:.2%}")
    chk.runtime(1.0)


def c06_vacuum(chk):
    # SI mode plus a natural-units mode, where E0 is of order one and the absolute tolerances bite
    grid = [(0.01, 1e-6, None, z) for z in np.linspace(0, 0.01, 101)]
    grid += [(1.0, 1.0, NATURAL_UNITS, z) for z in np.linspace(0, 1.0, 101)]
    worst_mean = worst_dev = worst_slope = 0.0
    for L, V, constants, z in grid:
        m = ModeSpec.cavity_mode(L, 3, float(z), V=V, constants=constants)
        E0, _ = field_amplitudes(m)
        s = math.sin(m.k * m.z)
        mean, var = field_statistics(number_state(0, 8), m)
        worst_mean = max(worst_mean, abs(mean))
        worst_dev = max(worst_dev, abs(math.sqrt(var) - E0 * abs(s)))
        for n in range(5):
            _, v0 = field_statistics(number_state(n, 8), m)
            _, v1 = field_statistics(number_state(n + 1, 8), m)
            worst_slope = max(worst_slope, abs((v1 - v0) - 2 * E0**2 * s**2))
    chk.require(worst_mean == 0, f"vacuum mean {worst_mean:.2e}")
    chk.require(worst_dev <= 1e-12, f"vacuum deviation error {worst_dev:.2e}")
    chk.require(worst_slope <= 1e-10, f"variance slope error {worst_slope:.2e}")
    chk.note(f"dE err {worst_dev:.1e}, slope err {worst_slope:.1e}")


def c07_perturbation(chk):
    d = DriveSpec(M=0.01, omega=1.0, omega_fi=0.99)
    t = math.pi / d.detuning
    full = abs(first_order_amplitude(d, t)) ** 2
    rel = abs(rwa_transition_probability(d, t) - full) / full
    chk.require(rel <= 0.05, f"RWA relative difference {rel:.2%}")
    sys_ = two_level_system(DriveSpec(M=0.2, omega=1.0, omega_fi=1.0))
    out = amplitude_ode_oracle(sys_, 1.0, np.linspace(0, 100, 101))
    norm_err = float(np.max(np.abs(np.sum(np.abs(out) ** 2, axis=1) - 1)))
    chk.require(norm_err <= 1e-7, f"norm drift {norm_err:.2e}")
    worst_ratio = 0.0
    for M, T in ((1e-3, 10.0), (1e-3, 50.0), (5e-3, 10.0), (2e-3, 25.0)):
        drive = DriveSpec(M=M, omega=1.0, omega_fi=1.0)
        ts = np.linspace(T / 10, T, 10)
        oracle = amplitude_ode_oracle(two_level_system(drive), 1.0, ts)
        for k, s in enumerate(ts):
            gap = abs(oracle[k, 1] - first_order_amplitude(drive, s))
            worst_ratio = max(worst_ratio, gap / (M * s) ** 2)
    chk.require(worst_ratio <= 5, f"oracle vs first order ratio {worst_ratio:.2f} (bound 5 |M|^2 t^2)")
    chk.note(f"RWA diff {rel:.2%}, norm drift {norm_err:.1e}, gap/(Mt)^2 {worst_ratio:.1e}")
    chk.runtime(5.0)


def c08_emission_absorption(chk):
    for n in range(1, 101):
        absorption, emission = squared_emission_absorption(n, Fraction(1))
        chk.require(isinstance(emission, Fraction) and emission / absorption == Fraction(n + 1, n), f"ratio at n={n}")
    absorption, emission = emission_absorption_elements(0, 1.0)
    chk.require(absorption == 0 and emission != 0, "n=0 spontaneous emission structure")
    chk.note("n=1..100 exact")


def c09_dispersive_cat(chk):
    chi, dim, alpha = 1.0, 64, 3.0
    t = math.pi / (2 * chi)
    p = DispersiveParams(chi=chi, field_dim=dim)
    psi = cat_entangle(alpha, 0.0, p, t)
    purity = reduced_atom_purity(psi)
    chk.require(0.5 <= purity <= 0.5 + 1e-6, f"purity {purity!r}")
    psi0 = tensor(balanced_atom(0.0), coherent_state(alpha, dim))
    dense = evolve_series(effective_hamiltonian(p), psi0, [t])[0]
    closed = dispersive_evolve(psi0, p, t)
    fid = abs(np.vdot(dense, closed)) ** 2 / (np.vdot(dense, dense).real * np.vdot(closed, closed).real)
    chk.require(fid >= 1 - 1e-10, f"fidelity {fid!r}")
    before = field_mean(psi0, GROUND)
    after = field_mean(closed, GROUND)
    advance = (np.angle(after) - np.angle(before)) % (2 * math.pi)
    err = abs(advance - (chi * t) % (2 * math.pi))
    chk.require(err <= 1e-8, f"phase advance error {err:.2e}")
    chk.note(f"purity-0.5 {purity - 0.5:.1e}, 1-F {1 - fid:.1e}")
    chk.runtime(3.0)


def c10_fabry_perot(chk):
    peak = power_ratio(CavitySpec(0.99, 0.99, math.pi))
    rel = abs(peak / 100 - 1)
    chk.require(rel <= 1e-9, f"peak {peak!r}")
    worst = max(float(np.max(np.abs(mirror_transform(R) @ mirror_transform(R).T - np.eye(2)))) for R in np.linspace(0, 1, 101))
    chk.require(worst <= 1e-15, f"orthogonality {worst:.2e}")
    for spec in (CavitySpec(0.99, 0.99, math.pi), CavitySpec(0.9, 0.9, 0.4), CavitySpec(0.99, 0.95, 2.0)):
        err = abs(round_trip_series(spec, 200) - cavity_gain(spec))
        chk.require(err <= series_error_bound(spec, 200), f"series error {err:.2e} for {spec}")
    chk.note(f"peak rel err {rel:.1e}")


def _conserves_photons(circuit):
    occ = np.array([[(k >> (circuit.mode_count - 1 - m)) & 1 for m in range(circuit.mode_count)]
                    for k in range(2**circuit.mode_count)])
    per_qubit = occ[:, 0::2] + occ[:, 1::2]
    in_sector = np.all(per_qubit == 1, axis=1)
    for k in range(2**circuit.qubits):
        e = np.zeros(2**circuit.qubits)
        e[k] = 1
        out = run_fock(circuit, logical_to_fock(e, circuit.mode_count))
        if np.any(out[~in_sector] != 0):
            return False
    return True


def c11_dual_rail(chk):
    worst = 0.0
    conserving = True
    for U in unitary_group.rvs(2, size=100, random_state=2024):
        c = compile_single_qubit(U)
        worst = max(worst, 1 - global_phase_fidelity(U, realize(c)))
        conserving &= _conserves_photons(c)
    chk.require(worst <= 1e-10, f"compile infidelity {worst:.2e}")
    cnot = parse_circuit("bs 0.5 1; kerr 3.141592653589793; bs 0.5 1; ps a0 3.141592653589793")
    target = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
    err = float(np.max(np.abs(realize(cnot) - target)))
    chk.require(err <= 1e-12, f"CNOT error {err:.2e}")
    conserving &= _conserves_photons(cnot)
    chk.require(conserving, "photon number not conserved")
    chk.note(f"worst 1-F {worst:.1e}, CNOT err {err:.1e}")


MALFORMED = {
    "empty": "",
    "no_scenario": "x = 1\ndim = 4\n",
    "unknown_scenario": "scenario = teleport\n",
    "missing_key": "scenario = thermal\nx = 0.5\n",
    "negative_x": "scenario = thermal\nx = -1\ndim = 4\n",
    "not_a_number": "scenario = rabi\nlam = fast\nn = 0\nt_max = 1\npoints = 10\n",
    "unknown_key": "scenario = thermal\nx = 0.5\ndim = 4\ncolour = red\n",
    "no_equals": "scenario = thermal\nx 0.5\ndim = 4\n",
    "duplicate": "scenario = thermal\nx = 0.5\nx = 0.6\ndim = 4\n",
    "reflectivity": "scenario = cavity_sweep\nR1 = 1.5\nR2 = 0.5\npoints = 10\n",
    "bad_bool": "scenario = cavity_sweep\nR1 = 0.5\nR2 = 0.5\npoints = 10\nendpoint = maybe\n",
    "bad_circuit": "scenario = dual_rail\ncircuit = ps z 1\n",
    "zero_chi": "scenario = cat\nalpha = 1\nchi = 0\ndim = 10\nt_max = 1\npoints = 3\n",
    "bad_complex": "scenario = cat\nalpha = 1+j+\nchi = 1\ndim = 10\nt_max = 1\npoints = 3\n",
    "few_points": "scenario = rabi\nlam = 1\nn = 0\nt_max = 1\npoints = 1\n",
    "dim_too_small": "scenario = vacuum_fluctuations\nL = 1\nmode = 1\nn = 5\npoints = 3\ndim = 4\n",
}


def c12_cli(chk):
    configs = sorted(CONFIG_DIR.glob("*.cfg"))
    chk.require(len(configs) >= 8, f"only {len(configs)} bundled configs")
    quiet = io.StringIO()
    with tempfile.TemporaryDirectory() as tmp, contextlib.redirect_stdout(quiet), contextlib.redirect_stderr(quiet):
        tmp = Path(tmp)
        for cfg in configs:
            outputs = []
            for run in (1, 2):
                out = tmp / f"{cfg.stem}.{run}.csv"
                code = cli.main(["run", str(cfg), "-o", str(out)])
                chk.require(code == 0, f"{cfg.name} run {run} exit {code}")
                outputs.append(out.read_bytes() if out.exists() else b"")
            chk.require(outputs[0] == outputs[1] and outputs[0], f"{cfg.name} output differs between runs")
        for name, text in MALFORMED.items():
            path = tmp / f"{name}.cfg"
            path.write_text(text, encoding="utf-8")
            code = cli.main(["validate", str(path)])
            chk.require(code == 2, f"malformed '{name}' gave exit {code}")
    chk.note(f"{len(configs)} configs deterministic, {len(MALFORMED)} malformed rejected")


CRITERIA = [
    (1, "ladder algebra", c01_ladder),
    (2, "JC eigenstructure", c02_jc_eigenstructure),
    (3, "resonant Rabi oscillation", c03_rabi),
    (4, "collapse-revival oracle equivalence", c04_collapse_revival),
    (5, "thermal statistics", c05_thermal),
    (6, "vacuum fluctuations", c06_vacuum),
    (7, "perturbation theory", c07_perturbation),
    (8, "emission/absorption ratio", c08_emission_absorption),
    (9, "dispersive cat", c09_dispersive_cat),
    (10, "Fabry-Perot", c10_fabry_perot),
    (11, "dual rail", c11_dual_rail),
    (12, "CLI determinism and validation", c12_cli),
]


def evaluate(number, title, fn):
    chk = Check()
    try:
        fn(chk)
    except Exception as exc:  # a crash counts as a failure of that criterion
        chk.failures.append(f"{type(exc).__name__}: {exc}")
    status = "PASS" if not chk.failures else "FAIL"
    detail = "; ".join(chk.failures) if chk.failures else ", ".join(chk.notes)
    return not chk.failures, f"criterion {number:>2}: {status}  {title} ({detail})"


@pytest.mark.parametrize("number,title,fn", CRITERIA, ids=[f"c{n:02d}" for n, _, _ in CRITERIA])
def test_criterion(number, title, fn, acceptance_log):
    ok, line = evaluate(number, title, fn)
    acceptance_log.append(line)
    print(line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
