"""Named simulation scenarios driven by ``key = value`` config files.

A config is UTF-8 text, one ``key = value`` per line, ``#`` starts a
comment. ``scenario`` selects the scenario; the remaining keys are its
parameters (see :data:`SCENARIOS`). Complex values use Python's literal
form, e.g. ``alpha = 3+0.5j``. Every scenario writes one CSV table.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

import numpy as np

from . import dispersive_cavity as dc
from . import dual_rail_optics as dr
from . import fabry_perot as fp
from . import field_modes as fm
from . import jaynes_cummings as jc
from . import semiclassical_perturbation as sp
from . import thermal_equilibrium as th
from .errors import ConfigError
from .fock_core import coherent_state, number_state


class ScenarioError(RuntimeError):
    """A scenario failed while computing; the message names the scenario."""


@dataclass(frozen=True)
class Param:
    kind: str  # int | float | complex | bool | circuit
    help: str
    default: Any = None
    check: Callable[[Any], bool] | None = None
    requirement: str = ""

    @property
    def required(self) -> bool:
        return self.default is None


def _positive(v):
    return v > 0


def _nonneg(v):
    return v >= 0


def _at_least(k):
    return lambda v: v >= k


def _unit_interval(v):
    return 0.0 <= v <= 1.0


def _finite(v):
    return math.isfinite(abs(v))


def _nonzero(v):
    return v != 0 and math.isfinite(abs(v))


P = Param

SCENARIOS: dict[str, dict[str, Param]] = {
    "rabi": {
        "lam": P("float", "atom-field coupling", check=_positive, requirement="lam > 0"),
        "n": P("int", "initial photon number (atom starts in |e>)", check=_nonneg, requirement="n >= 0"),
        "t_max": P("float", "final time", check=_positive, requirement="t_max > 0"),
        "points": P("int", "number of time samples", check=_at_least(2), requirement="points >= 2"),
        "omega": P("float", "field frequency", 1.0, _positive, "omega > 0"),
        "omega0": P("float", "atomic transition frequency", 1.0, _positive, "omega0 > 0"),
    },
    "collapse_revival": {
        "alpha": P("complex", "coherent-state amplitude of the initial field", check=_finite, requirement="finite alpha"),
        "lam": P("float", "atom-field coupling", check=_positive, requirement="lam > 0"),
        "dim": P("int", "Fock truncation of the initial field", check=_at_least(2), requirement="dim >= 2"),
        "t_max": P("float", "final time", check=_positive, requirement="t_max > 0"),
        "points": P("int", "number of time samples", check=_at_least(2), requirement="points >= 2"),
        "delta": P("float", "detuning omega0 - omega", 0.0, math.isfinite, "finite delta"),
        "omega": P("float", "field frequency", 1.0, _positive, "omega > 0"),
    },
    "thermal": {
        "x": P("float", "hbar*omega/(k_B*T)", check=lambda v: v > 0 and math.isfinite(v), requirement="x > 0"),
        "dim": P("int", "number of Fock levels listed", check=_at_least(1), requirement="dim >= 1"),
    },
    "vacuum_fluctuations": {
        "L": P("float", "cavity length in metres", check=_positive, requirement="L > 0"),
        "mode": P("int", "cavity mode index (k = mode*pi/L)", check=_at_least(1), requirement="mode >= 1"),
        "n": P("int", "photon number of the field state", check=_nonneg, requirement="n >= 0"),
        "points": P("int", "number of z samples across the cavity", check=_at_least(2), requirement="points >= 2"),
        "dim": P("int", "Fock truncation (0 = n + 2)", 0, _nonneg, "dim >= 0"),
        "V": P("float", "mode volume in m^3 (0 = L^3)", 0.0, _nonneg, "V >= 0"),
    },
    "perturbation": {
        "M": P("complex", "coupling (d.E0)_fi / hbar", check=_finite, requirement="finite M"),
        "omega": P("float", "drive frequency", check=_positive, requirement="omega > 0"),
        "omega_fi": P("float", "transition frequency E_f - E_i", check=math.isfinite, requirement="finite omega_fi"),
        "t_max": P("float", "final time", check=_positive, requirement="t_max > 0"),
        "points": P("int", "number of time samples", check=_at_least(2), requirement="points >= 2"),
        "tol": P("float", "ODE oracle tolerance", 1e-10, lambda v: 0 < v <= 1e-8, "0 < tol <= 1e-8"),
    },
    "cavity_sweep": {
        "R1": P("float", "input mirror reflectivity", check=_unit_interval, requirement="0 <= R1 <= 1"),
        "R2": P("float", "output mirror reflectivity", check=_unit_interval, requirement="0 <= R2 <= 1"),
        "points": P("int", "number of phase samples", check=_at_least(2), requirement="points >= 2"),
        "phi_min": P("float", "first round-trip phase (rad)", 0.0, math.isfinite, "finite phi_min"),
        "phi_max": P("float", "last round-trip phase (rad)", 2 * math.pi, math.isfinite, "finite phi_max"),
        "endpoint": P("bool", "include phi_max in the grid", True),
    },
    "cat": {
        "alpha": P("complex", "coherent-state amplitude", check=_finite, requirement="finite alpha"),
        "chi": P("float", "dispersive shift lam^2/Delta", check=_nonzero, requirement="chi != 0"),
        "dim": P("int", "Fock truncation", check=_at_least(2), requirement="dim >= 2"),
        "t_max": P("float", "final time", check=_positive, requirement="t_max > 0"),
        "points": P("int", "number of time samples", check=_at_least(2), requirement="points >= 2"),
        "phi": P("float", "phase of the balanced atomic superposition", 0.0, math.isfinite, "finite phi"),
    },
    "dual_rail": {
        "circuit": P("circuit", "gates separated by ';' (ps <rail> <theta> | bs <R> | kerr <phi>)"),
    },
}

RESERVED_KEYS = {"scenario", "output_path"}


@dataclass(frozen=True)
class ScenarioConfig:
    scenario: str
    parameters: dict = field(default_factory=dict)
    output_path: str | None = None


def _convert(kind: str, raw: str):
    if kind == "int":
        return int(raw)
    if kind == "float":
        value = float(raw)
        if math.isnan(value):
            raise ValueError("nan")
        return value
    if kind == "complex":
        return complex(raw.replace(" ", ""))
    if kind == "bool":
        low = raw.lower()
        if low in ("true", "yes", "1"):
            return True
        if low in ("false", "no", "0"):
            return False
        raise ValueError(raw)
    if kind == "circuit":
        return dr.parse_circuit(raw)
    return raw


def _cross_checks(name: str, params: dict) -> list[str]:
    errors = []
    if name == "collapse_revival" and "omega" in params and "delta" in params:
        if not params["omega"] + params["delta"] > 0:
            errors.append("omega + delta (the atomic frequency) must be > 0")
    if name == "vacuum_fluctuations" and params.get("dim", 0) and "n" in params:
        if params["dim"] < params["n"] + 2:
            errors.append("dim must be >= n + 2 so the state avoids the truncation edge")
    if name == "cavity_sweep" and {"phi_min", "phi_max"} <= params.keys():
        if not params["phi_max"] > params["phi_min"]:
            errors.append("phi_max must be > phi_min")
    return errors


def parse_config(text: str) -> ScenarioConfig:
    """Parse and validate a scenario config; raises ``ConfigError`` listing every problem."""
    errors: list[str] = []
    raw: dict[str, tuple[int, str]] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            errors.append(f"line {lineno}: expected 'key = value', got {body!r}")
            continue
        key, value = (s.strip() for s in body.split("=", 1))
        if not key:
            errors.append(f"line {lineno}: empty key")
            continue
        if key in raw:
            errors.append(f"line {lineno}: duplicate key '{key}'")
            continue
        raw[key] = (lineno, value)

    name = raw.pop("scenario", (0, None))[1]
    output = raw.pop("output_path", (0, None))[1]
    if name is None:
        errors.append("missing key 'scenario'")
        raise ConfigError(errors)
    if name not in SCENARIOS:
        errors.append(f"unknown scenario '{name}' (choose from {', '.join(SCENARIOS)})")
        raise ConfigError(errors)

    schema = SCENARIOS[name]
    params: dict[str, Any] = {}
    for key, (lineno, value) in raw.items():
        if key not in schema:
            errors.append(f"line {lineno}: unexpected key '{key}' for scenario '{name}'")
            continue
        spec = schema[key]
        try:
            converted = _convert(spec.kind, value)
        except ValueError as exc:
            errors.append(f"line {lineno}: cannot parse '{key}' = {value!r} as {spec.kind} ({exc})")
            continue
        if spec.check is not None and not spec.check(converted):
            errors.append(f"line {lineno}: '{key}' = {value} out of range, need {spec.requirement}")
            continue
        params[key] = converted
    for key, spec in schema.items():
        if key in raw:
            continue
        if spec.required:
            errors.append(f"missing key '{key}' ({spec.help})")
        else:
            params[key] = spec.default
    if not errors:
        errors.extend(_cross_checks(name, params))
    if errors:
        raise ConfigError(errors)
    return ScenarioConfig(name, params, output)


# --- scenario bodies --------------------------------------------------------

def _times(p) -> np.ndarray:
    return np.linspace(0.0, p["t_max"], p["points"])


def _rabi(p):
    params = jc.JCParams(p["omega"], p["omega0"], p["lam"])
    n = p["n"]
    C = number_state(n, n + 1)
    t = _times(p)
    states = jc.evolve_dressed(params, C, t)
    field_dim = n + 2
    p_e = np.abs(states[:, n]) ** 2
    p_flip = np.abs(states[:, field_dim + n + 1]) ** 2
    omega_n = jc.rabi_frequency(n, params)
    analytic = 4 * params.lam**2 * (n + 1) / omega_n**2 * np.sin(0.5 * omega_n * t) ** 2
    header = ["t[time]", "p_excited[1]", "p_ground_flipped[1]", "p_ground_flipped_analytic[1]", "inversion[1]"]
    return header, zip(t, p_e, p_flip, analytic, jc.atomic_inversion(states))


def _collapse_revival(p):
    params = jc.JCParams(p["omega"], p["omega"] + p["delta"], p["lam"])
    C = coherent_state(p["alpha"], p["dim"])
    C = C / np.linalg.norm(C)
    t = _times(p)
    inversion = jc.atomic_inversion(jc.evolve_dressed(params, C, t))
    return ["t[time]", "inversion[1]"], zip(t, inversion)


def _thermal(p):
    spec = th.ThermalSpec(p["x"], p["dim"])
    probs = th.occupation_probabilities(spec)
    nbar = th.mean_photon_number(spec.x)
    z = th.partition_function(spec.x)
    rows = ((n, probs[n], nbar, z) for n in range(spec.dim))
    return ["n[photons]", "probability[1]", "mean_photon_number[photons]", "partition_function[1]"], rows


def _vacuum_fluctuations(p):
    L = p["L"]
    dim = p["dim"] or p["n"] + 2
    V = p["V"] or None
    psi = number_state(p["n"], dim)
    rows = []
    for z in np.linspace(0.0, L, p["points"]):
        mode = fm.ModeSpec.cavity_mode(L, p["mode"], min(float(z), L), V=V)
        mean, var = fm.field_statistics(psi, mode)
        E0, _ = fm.field_amplitudes(mode)
        analytic = math.sqrt(2) * E0 * abs(math.sin(mode.k * mode.z)) * math.sqrt(p["n"] + 0.5)
        rows.append((z, mean, math.sqrt(var), analytic))
    return ["z[m]", "E_mean[V/m]", "E_std[V/m]", "E_std_analytic[V/m]"], rows


def _perturbation(p):
    drive = sp.DriveSpec(p["M"], p["omega"], p["omega_fi"])
    t = _times(p)
    exact = sp.amplitude_ode_oracle(sp.two_level_system(drive), drive.omega, t, tol=p["tol"])
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", category=sp.PerturbationBreakdownWarning)
        rwa = [sp.rwa_transition_probability(drive, s) for s in t]
        first = [abs(sp.first_order_amplitude(drive, s)) ** 2 for s in t]
    header = ["t[time]", "p_rwa[1]", "p_first_order[1]", "p_exact[1]"]
    return header, zip(t, rwa, first, np.abs(exact[:, 1]) ** 2)


def _cavity_sweep(p):
    spec = fp.CavitySpec(p["R1"], p["R2"])
    table = fp.frequency_sweep(spec, p["phi_min"], p["phi_max"], p["points"], endpoint=p["endpoint"])
    return ["phi[rad]", "power_ratio[1]"], (tuple(row) for row in table)


def _cat(p):
    params = dc.DispersiveParams(p["chi"], p["dim"])
    rows = []
    for t in _times(p):
        psi = dc.cat_entangle(p["alpha"], p["phi"], params, t)
        a_g = dc.field_mean(psi, jc.GROUND)
        rows.append((t, params.chi * t, dc.reduced_atom_purity(psi), abs(dc.branch_overlap(psi)),
                     a_g.real, a_g.imag))
    header = ["t[time]", "chi_t[rad]", "atom_purity[1]", "branch_overlap_abs[1]", "mean_a_g_re[1]", "mean_a_g_im[1]"]
    return header, rows


def _dual_rail(p):
    U = dr.realize(p["circuit"])
    rows = [(i, j, U[i, j].real, U[i, j].imag, abs(U[i, j]) ** 2)
            for i in range(U.shape[0]) for j in range(U.shape[1])]
    return ["row[index]", "col[index]", "re[1]", "im[1]", "abs2[1]"], rows


_RUNNERS = {
    "rabi": _rabi,
    "collapse_revival": _collapse_revival,
    "thermal": _thermal,
    "vacuum_fluctuations": _vacuum_fluctuations,
    "perturbation": _perturbation,
    "cavity_sweep": _cavity_sweep,
    "cat": _cat,
    "dual_rail": _dual_rail,
}


def _cell(v) -> str:
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    return format(float(v), ".17g")


def compute_table(cfg: ScenarioConfig) -> tuple[list[str], list[tuple]]:
    try:
        header, rows = _RUNNERS[cfg.scenario](cfg.parameters)
        return header, [tuple(r) for r in rows]
    except Exception as exc:
        raise ScenarioError(f"scenario '{cfg.scenario}' failed: {exc}") from exc


def render_csv(header: list[str], rows: list[tuple]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(_cell(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def run_scenario(cfg: ScenarioConfig, output_path: str | Path | None = None) -> Path:
    """Compute the scenario table and write it as CSV; returns the path written."""
    target = output_path or cfg.output_path
    if target is None:
        raise ScenarioError("no output path given")
    header, rows = compute_table(cfg)
    path = Path(target)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(render_csv(header, rows))
    return path
