"""JSON file formats for groupoids, states, observables, kernels, and models.

Every file carries ``"fmt": "cencov-ncp/1"``; unknown versions are rejected.
Paths inside a file are resolved relative to the directory containing it.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Optional

import numpy as np
from scipy.interpolate import CubicSpline

from .algebra import AlgebraElement
from .channels import ClassicalKernel, QuantumKernel
from .errors import SchemaError
from .estimation import StatisticalModel
from .groupoid import FiniteGroupoid, GroupoidSpec, validate
from .states import State, make_state

FMT = "cencov-ncp/1"


def _read_json(path: Path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise SchemaError(f"{path}: top level must be a JSON object")
    if data.get("fmt") != FMT:
        raise SchemaError(f"{path}: unknown or missing fmt (expected {FMT!r})")
    return data


def _write_json(path: Path, data: dict) -> None:
    data = {"fmt": FMT, **data}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _resolve(base: Path, ref: str) -> Path:
    p = Path(ref)
    return p if p.is_absolute() else (base.parent / p)


def detect_kind(path: str | Path) -> str:
    """Classify a file by its distinguishing fields."""
    data = _read_json(Path(path))
    for field, kind in (
        ("compose", "groupoid"),
        ("phi_re", "state"),
        ("coeff_re", "algebra"),
        ("pi_re", "kernel"),
        ("kraus", "kraus"),
        ("K", "classical_kernel"),
        ("states", "model"),
    ):
        if field in data:
            return kind
    raise SchemaError(f"{path}: unrecognized file contents")


# ---------------------------------------------------------------------------
# groupoids
# ---------------------------------------------------------------------------

def load_groupoid(path: str | Path) -> FiniteGroupoid:
    path = Path(path)
    data = _read_json(path)
    try:
        compose = {(b, a): g for b, a, g in data["compose"]}
        spec = GroupoidSpec(
            outcomes=list(data["outcomes"]),
            elements=list(data["elements"]),
            source=dict(data["source"]),
            target=dict(data["target"]),
            inverse=dict(data["inverse"]),
            compose=compose,
            units=dict(data["units"]),
            P={k: float(v) for k, v in data["P"].items()},
            fiber_weight={k: float(v) for k, v in data["fiber_weight"].items()}
            if "fiber_weight" in data else None,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"{path}: malformed groupoid file: {exc}") from exc
    return validate(spec)


def save_groupoid(G: FiniteGroupoid, path: str | Path) -> None:
    _write_json(Path(path), {
        "outcomes": list(G.outcomes),
        "elements": list(G.elements),
        "source": dict(G.source),
        "target": dict(G.target),
        "inverse": dict(G.inverse_map),
        "compose": [[b, a, g] for (b, a), g in sorted(G.compose_table.items())],
        "units": dict(G.unit_of),
        "P": dict(G.P),
        "fiber_weight": dict(G.fiber_weight),
    })


# ---------------------------------------------------------------------------
# coefficient functions (states and observables)
# ---------------------------------------------------------------------------

def _coeff_vector(G: FiniteGroupoid, re: dict, im: dict, path: Path) -> np.ndarray:
    v = np.zeros(len(G.elements), dtype=complex)
    for table, factor in ((re, 1.0), (im, 1j)):
        for elem, val in table.items():
            if elem not in G.index:
                raise SchemaError(f"{path}: unknown element {elem!r}")
            v[G.index[elem]] += factor * float(val)
    return v


def _coeff_tables(G: FiniteGroupoid, v: np.ndarray):
    re = {e: float(v[G.index[e]].real) for e in G.elements if v[G.index[e]].real != 0.0}
    im = {e: float(v[G.index[e]].imag) for e in G.elements if v[G.index[e]].imag != 0.0}
    return re, im


def load_state_file(path: str | Path):
    """Returns ``(groupoid, phi, groupoid_ref)`` without validating the state."""
    path = Path(path)
    data = _read_json(path)
    ref = data.get("groupoid")
    if not isinstance(ref, str):
        raise SchemaError(f"{path}: missing groupoid reference")
    G = load_groupoid(_resolve(path, ref))
    phi = _coeff_vector(G, data.get("phi_re", {}), data.get("phi_im", {}), path)
    return G, phi, ref


def load_state(path: str | Path) -> State:
    G, phi, _ = load_state_file(path)
    return make_state(G, phi)


def save_state(rho: State, path: str | Path, groupoid_ref: str) -> None:
    re, im = _coeff_tables(rho.groupoid, rho.phi)
    _write_json(Path(path), {"groupoid": groupoid_ref, "phi_re": re, "phi_im": im})


def load_algebra_element(path: str | Path) -> AlgebraElement:
    path = Path(path)
    data = _read_json(path)
    ref = data.get("groupoid")
    if not isinstance(ref, str):
        raise SchemaError(f"{path}: missing groupoid reference")
    G = load_groupoid(_resolve(path, ref))
    c = _coeff_vector(G, data.get("coeff_re", {}), data.get("coeff_im", {}), path)
    return AlgebraElement(G, c)


def save_algebra_element(a: AlgebraElement, path: str | Path, groupoid_ref: str) -> None:
    re, im = _coeff_tables(a.groupoid, a.coeff)
    _write_json(Path(path), {"groupoid": groupoid_ref, "coeff_re": re, "coeff_im": im})


# ---------------------------------------------------------------------------
# kernels
# ---------------------------------------------------------------------------

def load_kernel(path: str | Path) -> QuantumKernel:
    path = Path(path)
    data = _read_json(path)
    for key in ("source_groupoid", "target_groupoid"):
        if not isinstance(data.get(key), str):
            raise SchemaError(f"{path}: missing {key} reference")
    g1 = load_groupoid(_resolve(path, data["source_groupoid"]))
    g2 = load_groupoid(_resolve(path, data["target_groupoid"]))
    pi = np.zeros((len(g1.elements), len(g2.elements)), dtype=complex)
    for table, factor in ((data.get("pi_re", {}), 1.0), (data.get("pi_im", {}), 1j)):
        for key, val in table.items():
            parts = key.split("|")
            if len(parts) != 2 or parts[0] not in g1.index or parts[1] not in g2.index:
                raise SchemaError(f"{path}: bad kernel key {key!r}")
            pi[g1.index[parts[0]], g2.index[parts[1]]] += factor * float(val)
    return QuantumKernel(g1, g2, pi)


def save_kernel(Pi: QuantumKernel, path: str | Path,
                source_ref: str, target_ref: str) -> None:
    re: dict[str, float] = {}
    im: dict[str, float] = {}
    for a1 in Pi.g1.elements:
        for a2 in Pi.g2.elements:
            z = Pi.value(a1, a2)
            if z.real != 0.0:
                re[f"{a1}|{a2}"] = z.real
            if z.imag != 0.0:
                im[f"{a1}|{a2}"] = z.imag
    _write_json(Path(path), {
        "source_groupoid": source_ref,
        "target_groupoid": target_ref,
        "pi_re": re,
        "pi_im": im,
    })


def load_classical_kernel(path: str | Path) -> ClassicalKernel:
    data = _read_json(Path(path))
    try:
        return ClassicalKernel(np.array(data["K"], dtype=float))
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"{path}: malformed classical kernel: {exc}") from exc


def save_classical_kernel(K: ClassicalKernel, path: str | Path) -> None:
    _write_json(Path(path), {"K": K.K.tolist()})


def load_kraus(path: str | Path) -> list[np.ndarray]:
    data = _read_json(Path(path))
    ops = []
    try:
        for entry in data["kraus"]:
            re = np.array(entry["re"], dtype=float)
            im = np.array(entry.get("im", np.zeros_like(re).tolist()), dtype=float)
            ops.append(re + 1j * im)
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"{path}: malformed Kraus file: {exc}") from exc
    if not ops:
        raise SchemaError(f"{path}: empty Kraus list")
    return ops


def save_kraus(ops, path: str | Path) -> None:
    _write_json(Path(path), {
        "kraus": [{"re": np.real(a).tolist(), "im": np.imag(a).tolist()} for a in ops]
    })


# ---------------------------------------------------------------------------
# statistical models
# ---------------------------------------------------------------------------

def load_model(path: str | Path):
    """Returns ``(model, audit_grid)`` with piecewise-cubic phi interpolation.

    Interpolated states are re-validated on every curve evaluation.
    """
    path = Path(path)
    data = _read_json(path)
    try:
        s0 = float(data["s0"])
        lo, hi = (float(x) for x in data["interval"])
        grid = [float(x) for x in data.get("grid", [])]
        entries = sorted((float(k), v) for k, v in data["states"].items())
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"{path}: malformed model file: {exc}") from exc
    if len(entries) < 2:
        raise SchemaError(f"{path}: need at least two grid states")

    G: Optional[FiniteGroupoid] = None
    svals, phis = [], []
    for s, ref in entries:
        Gs, phi, _ = load_state_file(_resolve(path, ref))
        if G is None:
            G = Gs
        elif Gs != G:
            raise SchemaError(f"{path}: grid states live on different groupoids")
        svals.append(s)
        phis.append(phi)
    svals = np.array(svals)
    phis = np.array(phis)
    bc = "natural" if len(svals) < 4 else "not-a-knot"
    spline_re = CubicSpline(svals, phis.real, axis=0, bc_type=bc)
    spline_im = CubicSpline(svals, phis.imag, axis=0, bc_type=bc)

    def curve(s: float) -> State:
        return make_state(G, spline_re(s) + 1j * spline_im(s))

    model = StatisticalModel(groupoid=G, curve=curve, s0=s0, interval=(lo, hi))
    return model, grid
