"""Classical and quantum Markov kernels.

A quantum kernel is a complex function on Gamma_1 x Gamma_2 subject to three
axioms: (i) measure-weighted normalization ``sum_x Pi(a1, 1_x) P2(x) = 1``
for unit a1 and 0 otherwise, (ii) positive definiteness of ``Pi(1_x, .)`` on
Gamma_2 for every unit of Gamma_1, and (iii) the delta-twisted hermiticity
``conj(Pi(a1, a2)) = delta2(a2) Pi(inv(a1), inv(a2))``.  Kernels transport
states forward and observables backward, compose associatively, contain
row-stochastic matrices as the trivial-groupoid special case, and on uniform
pair groupoids correspond to linear maps on density matrices, where complete
positivity is decided through the Choi matrix.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import numkit
from .algebra import AlgebraElement
from .errors import (
    GroupoidMismatch,
    NonTracePreserving,
    NormalizationLost,
    PositivityLost,
    RowSumViolation,
)
from .groupoid import FiniteGroupoid
from .states import (
    State,
    check_state,
    density_from_phi_unchecked,
    fiber_gram,
    phi_from_density_unchecked,
)

KERNEL_TOL = 1e-9


# ---------------------------------------------------------------------------
# classical kernels
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClassicalKernel:
    """Row-stochastic transition matrix between finite outcome sets."""

    K: np.ndarray

    def __post_init__(self):
        M = np.asarray(self.K, dtype=float)
        if M.ndim != 2:
            raise RowSumViolation("classical kernel must be a matrix")
        if np.any(M < -1e-12):
            raise RowSumViolation("classical kernel has negative entries")
        rows = M.sum(axis=1)
        if np.abs(rows - 1.0).max() > 1e-12:
            raise RowSumViolation(f"row sums deviate by {np.abs(rows - 1.0).max():.3e}")
        object.__setattr__(self, "K", M)


# ---------------------------------------------------------------------------
# quantum kernels
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuantumKernel:
    """Kernel function stored as a |Gamma_1| x |Gamma_2| complex array."""

    g1: FiniteGroupoid
    g2: FiniteGroupoid
    pi: np.ndarray

    def __post_init__(self):
        M = np.asarray(self.pi, dtype=complex)
        if M.shape != (len(self.g1.elements), len(self.g2.elements)):
            raise GroupoidMismatch("kernel array shape does not match groupoids")
        object.__setattr__(self, "pi", M)

    def value(self, a1: str, a2: str) -> complex:
        return complex(self.pi[self.g1.index[a1], self.g2.index[a2]])


@dataclass(frozen=True)
class KernelReport:
    normalization_deficit: float
    positivity_min_eigenvalue: dict[str, float]
    hermiticity_deficit: float
    normalization_ok: bool
    positivity_ok: bool
    hermiticity_ok: bool

    @property
    def passed(self) -> bool:
        return self.normalization_ok and self.positivity_ok and self.hermiticity_ok


def validate_kernel(Pi: QuantumKernel, tol: float = KERNEL_TOL) -> KernelReport:
    """Check the three kernel axioms and report the deficits."""
    G1, G2 = Pi.g1, Pi.g2

    # (i) sum_x Pi(a1, 1_x) P2(x) = [a1 is a unit]
    norm_dev = 0.0
    for a1 in G1.elements:
        total = sum(Pi.value(a1, G2.unit_of[x]) * G2.P[x] for x in G2.outcomes)
        want = 1.0 if G1.is_unit(a1) else 0.0
        norm_dev = max(norm_dev, abs(total - want))

    # (ii) Pi(1_x, .) positive definite on Gamma_2, for every unit of Gamma_1
    pos_min: dict[str, float] = {}
    pos_ok = True
    for x1 in G1.outcomes:
        u = G1.unit_of[x1]
        phi = Pi.pi[G1.index[u], :]
        worst = np.inf
        for x2 in G2.outcomes:
            M = fiber_gram(G2, phi, x2)
            if M.size and np.abs(M - M.conj().T).max() > tol * (1 + np.abs(M).max()):
                worst = -np.inf
                continue
            _, lo = numkit.psd_verdict(M, psd_tol=max(tol, numkit.PSD_TOL))
            worst = min(worst, lo)
        pos_min[x1] = float(worst)
        scale = 1.0 + float(np.abs(Pi.pi[G1.index[u], :]).max(initial=0.0))
        pos_ok = pos_ok and worst >= -max(tol, numkit.PSD_TOL) * scale

    # (iii) conj(Pi(a1,a2)) = delta2(a2) Pi(inv(a1), inv(a2))
    herm_dev = 0.0
    for a1 in G1.elements:
        for a2 in G2.elements:
            lhs = np.conj(Pi.value(a1, a2))
            rhs = G2.delta(a2) * Pi.value(G1.inv(a1), G2.inv(a2))
            herm_dev = max(herm_dev, abs(lhs - rhs))

    scale = 1.0 + float(np.abs(Pi.pi).max(initial=0.0))
    return KernelReport(
        normalization_deficit=float(norm_dev),
        positivity_min_eigenvalue=pos_min,
        hermiticity_deficit=float(herm_dev),
        normalization_ok=norm_dev <= tol * scale,
        positivity_ok=pos_ok,
        hermiticity_ok=herm_dev <= tol * scale,
    )


def identity_kernel(G: FiniteGroupoid) -> QuantumKernel:
    """The unit morphism: ``Pi(a1, a2) = [a1 = a2] / nu(a1)``."""
    n = len(G.elements)
    pi = np.zeros((n, n), dtype=complex)
    for a in G.elements:
        i = G.index[a]
        pi[i, i] = 1.0 / G.nu(a)
    return QuantumKernel(G, G, pi)


def push_phi(phi1: np.ndarray, Pi: QuantumKernel) -> np.ndarray:
    """Unvalidated pushforward ``(phi1 Pi)(a2) = sum phi1 Pi nu1``."""
    G1 = Pi.g1
    nu1 = np.array([G1.nu(a) for a in G1.elements])
    return (phi1 * nu1) @ Pi.pi


def push_state(phi1: State, Pi: QuantumKernel) -> State:
    """Transport a state forward; fails loudly when the result is not a state."""
    if phi1.groupoid != Pi.g1:
        raise GroupoidMismatch("state groupoid does not match kernel source")
    phi2 = push_phi(phi1.phi, Pi)
    report = check_state(phi2, Pi.g2, tol=max(KERNEL_TOL, 1e-9))
    if not report.psd_ok or not report.symmetry_ok:
        bad = min(report.fiber_min_eigenvalue, key=report.fiber_min_eigenvalue.get)
        raise PositivityLost(
            f"pushed state fails positive definiteness on fiber {bad!r} "
            f"(min eigenvalue {report.fiber_min_eigenvalue[bad]:.3e})"
        )
    if not report.normalization_ok:
        raise NormalizationLost(
            f"pushed state normalization deficit {report.normalization_deficit:.3e}"
        )
    return State(Pi.g2, phi2)


def pull_observable(Pi: QuantumKernel, f2: AlgebraElement) -> AlgebraElement:
    """``(Pi f2)(a1) = sum_{a2} Pi(a1, a2) f2(a2) nu2(a2)``."""
    if f2.groupoid != Pi.g2:
        raise GroupoidMismatch("observable groupoid does not match kernel target")
    G2 = Pi.g2
    nu2 = np.array([G2.nu(a) for a in G2.elements])
    return AlgebraElement(Pi.g1, Pi.pi @ (f2.coeff * nu2))


def compose(Pi12: QuantumKernel, Pi23: QuantumKernel) -> QuantumKernel:
    """``(Pi12 o Pi23)(a1, a3) = sum_{a2} Pi12(a1,a2) Pi23(a2,a3) nu2(a2)``."""
    if Pi12.g2 != Pi23.g1:
        raise GroupoidMismatch("middle groupoids do not match")
    G2 = Pi12.g2
    nu2 = np.array([G2.nu(a) for a in G2.elements])
    return QuantumKernel(Pi12.g1, Pi23.g2, (Pi12.pi * nu2) @ Pi23.pi)


def embed_classical(K: ClassicalKernel, G1: FiniteGroupoid,
                    G2: FiniteGroupoid) -> QuantumKernel:
    """Embed a row-stochastic matrix between trivial groupoids:
    ``Pi(1_x, 1_y) = K[x, y] / P2(y)``."""
    for G in (G1, G2):
        if len(G.elements) != len(G.outcomes):
            raise GroupoidMismatch("classical embedding needs trivial groupoids")
    if K.K.shape != (len(G1.outcomes), len(G2.outcomes)):
        raise GroupoidMismatch("stochastic matrix shape does not match outcome sets")
    pi = np.zeros((len(G1.elements), len(G2.elements)), dtype=complex)
    for i, x in enumerate(G1.outcomes):
        for j, y in enumerate(G2.outcomes):
            pi[G1.index[G1.unit_of[x]], G2.index[G2.unit_of[y]]] = K.K[i, j] / G2.P[y]
    return QuantumKernel(G1, G2, pi)


def check_ncp_morphism(Pi: QuantumKernel, rho1: State, rho2: State,
                       tol: float = KERNEL_TOL) -> bool:
    """True iff Pi maps rho1 to rho2, i.e. is a morphism of state couples."""
    if rho1.groupoid != Pi.g1 or rho2.groupoid != Pi.g2:
        raise GroupoidMismatch("state groupoids do not match kernel")
    pushed = push_state(rho1, Pi)
    return bool(np.abs(pushed.phi - rho2.phi).max() <= tol * (1 + np.abs(rho2.phi).max()))


# ---------------------------------------------------------------------------
# completely positive maps on uniform pair groupoids
# ---------------------------------------------------------------------------

def kernel_to_cp_map(Pi: QuantumKernel) -> Callable[[np.ndarray], np.ndarray]:
    """State-side (predual) linear map on matrices induced by the kernel.

    Defined as the density dictionary conjugation of :func:`push_phi`, extended
    by linearity to all of M_n.
    """
    G1, G2 = Pi.g1, Pi.g2

    def phi_star(D: np.ndarray) -> np.ndarray:
        phi1 = phi_from_density_unchecked(np.asarray(D, dtype=complex), G1)
        phi2 = push_phi(phi1, Pi)
        return density_from_phi_unchecked(phi2, G2)

    return phi_star


def choi_to_kernel(kraus: Sequence[np.ndarray], G1: FiniteGroupoid,
                   G2: FiniteGroupoid, tol: float = 1e-9) -> QuantumKernel:
    """Kernel of the channel ``D -> sum_k A_k D A_k†`` between uniform pair
    groupoids, via ``Pi((t1,s1),(t2,s2)) = m * sum_k A_k[s2,s1] conj(A_k[t2,t1])``.
    """
    from .groupoid import has_uniform_P, pair_structure
    from .errors import NonUniformP, NotPairGroupoid

    t1map = pair_structure(G1)
    t2map = pair_structure(G2)
    if t1map is None or t2map is None:
        raise NotPairGroupoid("Kraus kernels need pair groupoids")
    if not (has_uniform_P(G1) and has_uniform_P(G2)):
        raise NonUniformP("Kraus kernels need uniform P")
    n, m = len(G1.outcomes), len(G2.outcomes)
    A = [np.asarray(a, dtype=complex) for a in kraus]
    for a in A:
        if a.shape != (m, n):
            raise GroupoidMismatch(f"Kraus operator shape {a.shape}, expected {(m, n)}")
    completeness = sum(a.conj().T @ a for a in A)
    dev = float(np.abs(completeness - np.eye(n)).max())
    if dev > tol:
        raise NonTracePreserving(f"sum A†A deviates from identity by {dev:.3e}")

    o1 = {x: i for i, x in enumerate(G1.outcomes)}
    o2 = {x: i for i, x in enumerate(G2.outcomes)}
    pi = np.zeros((n * n, m * m), dtype=complex)
    for (t1, s1), e1 in t1map.items():
        for (t2, s2), e2 in t2map.items():
            val = sum(a[o2[s2], o1[s1]] * np.conj(a[o2[t2], o1[t1]]) for a in A)
            pi[G1.index[e1], G2.index[e2]] = m * val
    return QuantumKernel(G1, G2, pi)


def kernel_from_matrix_map(phi_star: Callable[[np.ndarray], np.ndarray],
                           G1: FiniteGroupoid, G2: FiniteGroupoid) -> QuantumKernel:
    """Kernel of an arbitrary linear matrix map (no CP requirement).

    ``Pi((t1,s1),(t2,s2)) = m * phi_star(E_{s1 t1})[s2, t2]``; useful for
    building counterexample kernels such as the transpose map.
    """
    from .groupoid import has_uniform_P, pair_structure
    from .errors import NonUniformP, NotPairGroupoid

    t1map = pair_structure(G1)
    t2map = pair_structure(G2)
    if t1map is None or t2map is None:
        raise NotPairGroupoid("matrix-map kernels need pair groupoids")
    if not (has_uniform_P(G1) and has_uniform_P(G2)):
        raise NonUniformP("matrix-map kernels need uniform P")
    n, m = len(G1.outcomes), len(G2.outcomes)
    o1 = {x: i for i, x in enumerate(G1.outcomes)}
    o2 = {x: i for i, x in enumerate(G2.outcomes)}
    pi = np.zeros((n * n, m * m), dtype=complex)
    for (t1, s1), e1 in t1map.items():
        E = np.zeros((n, n), dtype=complex)
        E[o1[s1], o1[t1]] = 1.0
        out = np.asarray(phi_star(E), dtype=complex)
        for (t2, s2), e2 in t2map.items():
            pi[G1.index[e1], G2.index[e2]] = m * out[o2[s2], o2[t2]]
    return QuantumKernel(G1, G2, pi)


def choi_matrix(Pi: QuantumKernel) -> np.ndarray:
    """``C = sum_ij E_ij (x) Phi_*(E_ij)`` for the state-side map of Pi."""
    from .groupoid import pair_structure
    from .errors import NotPairGroupoid

    if pair_structure(Pi.g1) is None or pair_structure(Pi.g2) is None:
        raise NotPairGroupoid("Choi matrix needs pair groupoids")
    n = len(Pi.g1.outcomes)
    m = len(Pi.g2.outcomes)
    phi_star = kernel_to_cp_map(Pi)
    C = np.zeros((n * m, n * m), dtype=complex)
    for i in range(n):
        for j in range(n):
            E = np.zeros((n, n), dtype=complex)
            E[i, j] = 1.0
            block = phi_star(E)
            C[i * m:(i + 1) * m, j * m:(j + 1) * m] = block
    return C


def cp_verdict(Pi: QuantumKernel, psd_tol: float = numkit.PSD_TOL):
    """``(is_cp, min_choi_eigenvalue)`` via the Choi criterion."""
    C = choi_matrix(Pi)
    # the Choi matrix of a hermiticity-respecting kernel is Hermitian up to
    # numerical noise; symmetrize before the spectral test
    C = (C + C.conj().T) / 2.0
    return numkit.psd_verdict(C, psd_tol=psd_tol)
