"""States as normalized positive-definite characteristic functions.

A characteristic function phi on a finite groupoid is positive definite when
every target-fiber Gram matrix ``M[k,l] = phi(inv(a_k) o a_l)`` is Hermitian
PSD, and normalized when ``sum_x phi(1_x) P(x) = 1``.  On a uniform pair
groupoid these are exactly the density matrices under the dictionary
``phi(element y<-x) = n * D[x, y]`` (so that expectations become ``Tr(D A)``
in the fundamental representation).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import numkit
from .algebra import AlgebraElement
from .errors import (
    GroupoidMismatch,
    InvalidDensity,
    InvalidState,
    NonUniformP,
    NotPairGroupoid,
)
from .groupoid import FiniteGroupoid, has_uniform_P, pair_structure

NORM_TOL = 1e-9


@dataclass(frozen=True)
class StateReport:
    """Outcome of the three state checks; the state is valid iff all pass."""

    fiber_min_eigenvalue: dict[str, float]
    normalization_deficit: float
    symmetry_deficit: float
    psd_ok: bool
    normalization_ok: bool
    symmetry_ok: bool

    @property
    def passed(self) -> bool:
        return self.psd_ok and self.normalization_ok and self.symmetry_ok


@dataclass(frozen=True)
class State:
    """A validated state; use :func:`make_state` to construct one."""

    groupoid: FiniteGroupoid
    phi: np.ndarray  # complex, canonical element order

    def __getitem__(self, elem: str) -> complex:
        return complex(self.phi[self.groupoid.index[elem]])


def fiber_gram(G: FiniteGroupoid, phi: np.ndarray, x: str) -> np.ndarray:
    """Gram matrix ``phi(inv(a_k) o a_l)`` over the target fiber of x."""
    fiber = G.target_fiber(x)
    M = np.zeros((len(fiber), len(fiber)), dtype=complex)
    for k, ak in enumerate(fiber):
        for l, al in enumerate(fiber):
            g = G.compose(G.inv(ak), al)
            M[k, l] = phi[G.index[g]]
    return M


def check_state(phi, G: FiniteGroupoid, tol: float = NORM_TOL) -> StateReport:
    """Report positive definiteness, normalization, and hermitian symmetry."""
    v = np.asarray(phi, dtype=complex).reshape(-1)
    if v.shape[0] != len(G.elements):
        raise GroupoidMismatch("phi length does not match groupoid")

    fiber_min: dict[str, float] = {}
    psd_ok = True
    for x in G.outcomes:
        M = fiber_gram(G, v, x)
        herm_dev = float(np.abs(M - M.conj().T).max()) if M.size else 0.0
        scale = 1.0 + (float(np.abs(M).max()) if M.size else 0.0)
        if herm_dev > tol * scale:
            psd_ok = False
            fiber_min[x] = float("-inf")
            continue
        ok, lo = numkit.psd_verdict(M, psd_tol=max(tol, numkit.PSD_TOL))
        fiber_min[x] = lo
        psd_ok = psd_ok and ok

    norm_deficit = abs(complex(sum(v[G.index[G.unit_of[x]]] * G.P[x]
                                   for x in G.outcomes)) - 1.0)
    sym_deficit = max(
        abs(v[G.index[G.inv(a)]] - np.conj(v[G.index[a]])) for a in G.elements
    )
    return StateReport(
        fiber_min_eigenvalue=fiber_min,
        normalization_deficit=float(norm_deficit),
        symmetry_deficit=float(sym_deficit),
        psd_ok=psd_ok,
        normalization_ok=norm_deficit <= tol,
        symmetry_ok=sym_deficit <= max(tol, 1e-9),
    )


def make_state(G: FiniteGroupoid, phi, tol: float = NORM_TOL) -> State:
    """Construct a State, raising InvalidState when any invariant fails."""
    report = check_state(phi, G, tol=tol)
    if not report.passed:
        raise InvalidState(
            f"invalid state: psd={report.psd_ok} "
            f"norm_deficit={report.normalization_deficit:.3e} "
            f"sym_deficit={report.symmetry_deficit:.3e}"
        )
    return State(G, np.asarray(phi, dtype=complex).reshape(-1).copy())


def expectation(rho: State, a: AlgebraElement) -> complex:
    """``rho(lambda(a)) = sum_alpha a(alpha) phi(alpha) nu(alpha)``."""
    G = rho.groupoid
    if a.groupoid != G:
        raise GroupoidMismatch("state and observable live on different groupoids")
    nu = np.array([G.nu(alpha) for alpha in G.elements])
    return complex(np.sum(a.coeff * rho.phi * nu))


def outcome_distribution(rho: State) -> dict[str, float]:
    """``p(x) = phi(1_x) P(x)``, nonnegative and summing to 1."""
    G = rho.groupoid
    return {x: float(rho.phi[G.index[G.unit_of[x]]].real * G.P[x])
            for x in G.outcomes}


# ---------------------------------------------------------------------------
# density-matrix dictionary on uniform pair groupoids
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian PSD unit-trace matrix; use :func:`make_density` to build."""

    matrix: np.ndarray


def make_density(D, tol: float = NORM_TOL) -> DensityMatrix:
    M = np.asarray(D, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise InvalidDensity("density matrix must be square")
    if np.abs(M - M.conj().T).max() > tol * (1.0 + np.abs(M).max()):
        raise InvalidDensity("density matrix is not Hermitian")
    ok, lo = numkit.psd_verdict(M, psd_tol=max(tol, numkit.PSD_TOL))
    if not ok:
        raise InvalidDensity(f"density matrix has negative eigenvalue {lo:.3e}")
    if abs(np.trace(M).real - 1.0) > tol:
        raise InvalidDensity(f"density matrix trace is {np.trace(M).real}")
    return DensityMatrix(M.copy())


def _pair_dictionary(G: FiniteGroupoid):
    table = pair_structure(G)
    if table is None:
        raise NotPairGroupoid("density dictionary needs a pair groupoid")
    if not has_uniform_P(G):
        raise NonUniformP("density dictionary needs uniform P")
    oidx = {x: i for i, x in enumerate(G.outcomes)}
    return table, oidx


def density_from_state(rho: State) -> DensityMatrix:
    """``D[s, t] = phi(element (t,s)) / n`` on a uniform pair groupoid.

    Indexing: the pair element ``(t, s)`` is the transition s -> t and carries
    the matrix entry ``D[s, t]`` (this is the unique orientation for which the
    algebra expectation becomes ``Tr(D A)``).
    """
    G = rho.groupoid
    table, oidx = _pair_dictionary(G)
    n = len(G.outcomes)
    D = np.zeros((n, n), dtype=complex)
    for (t, s), elem in table.items():
        D[oidx[s], oidx[t]] = rho.phi[G.index[elem]] / n
    return make_density(D)


def state_from_density(D: DensityMatrix | np.ndarray, G: FiniteGroupoid) -> State:
    """Inverse dictionary: ``phi(element t<-s) = n * D[s, t]``."""
    M = D.matrix if isinstance(D, DensityMatrix) else np.asarray(D, dtype=complex)
    M = make_density(M).matrix
    table, oidx = _pair_dictionary(G)
    n = len(G.outcomes)
    if M.shape[0] != n:
        raise GroupoidMismatch("density matrix size does not match outcome count")
    phi = np.zeros(len(G.elements), dtype=complex)
    for (t, s), elem in table.items():
        phi[G.index[elem]] = n * M[oidx[s], oidx[t]]
    return make_state(G, phi)


def phi_from_density_unchecked(M: np.ndarray, G: FiniteGroupoid) -> np.ndarray:
    """Linear (unvalidated) half of the dictionary, for linear extensions."""
    table, oidx = _pair_dictionary(G)
    n = len(G.outcomes)
    phi = np.zeros(len(G.elements), dtype=complex)
    for (t, s), elem in table.items():
        phi[G.index[elem]] = n * M[oidx[s], oidx[t]]
    return phi


def density_from_phi_unchecked(phi: np.ndarray, G: FiniteGroupoid) -> np.ndarray:
    table, oidx = _pair_dictionary(G)
    n = len(G.outcomes)
    D = np.zeros((n, n), dtype=complex)
    for (t, s), elem in table.items():
        D[oidx[s], oidx[t]] = phi[G.index[elem]] / n
    return D


def classical_state(G: FiniteGroupoid, p) -> State:
    """State on a trivial groupoid from a probability vector: phi(1_x) = p(x)/P(x)."""
    if len(G.elements) != len(G.outcomes):
        raise GroupoidMismatch("classical_state needs a trivial groupoid")
    p = np.asarray(p, dtype=float).reshape(-1)
    phi = np.zeros(len(G.elements), dtype=complex)
    for i, x in enumerate(G.outcomes):
        phi[G.index[G.unit_of[x]]] = p[i] / G.P[x]
    return make_state(G, phi)
