"""Thermofield double construction and its structural diagnostics.

The state is assembled from the single-side eigenbasis with identical left
and right eigenstates (no conjugation): reshaped to a matrix with the left
index as rows, it reads M = U diag(w) U^T with Boltzmann amplitudes w. The
defining property Tr_R |TFD><TFD| = exp(-beta H)/Z then holds exactly for
any unitary U because U^T conj(U) = 1, so it survives complex eigenbases.

Boltzmann weights are computed relative to the ground state to avoid
under/overflow at large beta; the partition function is kept in log form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .spectral import Spectrum

RHO_EIG_FLOOR = 1e-14  # reduced-state eigenvalues below this are 0 log 0


@dataclass
class TfdState:
    """Doubled-space state vector with the left index running slower."""

    vector: np.ndarray
    beta: float
    log_z: float
    provenance: tuple | None = None  # (n_majorana, sparsity, seed)

    @property
    def partition_z(self) -> float:
        # may overflow to inf for beta * bandwidth beyond float range
        return float(np.exp(self.log_z))

    @property
    def dim_single(self) -> int:
        return int(round(np.sqrt(self.vector.shape[0])))

    def as_matrix(self) -> np.ndarray:
        d = self.dim_single
        return self.vector.reshape(d, d)


def build_tfd(spectrum: Spectrum, beta: float, provenance=None) -> TfdState:
    """Thermofield double at inverse temperature beta from a single-side basis."""
    if beta < 0:
        raise ValueError("beta must be nonnegative")
    if spectrum.eigenvectors is None:
        raise ValueError("building the TFD needs eigenvectors")
    e = spectrum.eigenvalues
    u = spectrum.eigenvectors
    shifted = -beta * (e - e[0]) / 2.0
    w = np.exp(shifted)
    w /= np.linalg.norm(w)
    m = (u * w) @ u.T
    return TfdState(m.reshape(-1), beta, float(logsumexp(-beta * e)), provenance)


def reduced_density(state: TfdState, side: str = "left") -> np.ndarray:
    """Partial trace over the other side, via the reshaped state matrix."""
    m = state.as_matrix()
    if side == "left":
        return m @ m.conj().T
    if side == "right":
        return (m.conj().T @ m).T
    raise ValueError("side must be 'left' or 'right'")


def entanglement_entropy(state: TfdState) -> float:
    """Von Neumann entropy of the reduced left state, in nats."""
    lam = np.linalg.eigvalsh(reduced_density(state, "left"))
    lam = lam[lam > RHO_EIG_FLOOR]
    return float(-np.sum(lam * np.log(lam)))


def thermal_state(h_single: np.ndarray, beta: float) -> np.ndarray:
    """exp(-beta H)/Z computed through the eigenbasis with shifted weights."""
    e, u = np.linalg.eigh(h_single)
    w = np.exp(-beta * (e - e[0]))
    w /= w.sum()
    return (u * w) @ u.conj().T


def thermal_fidelity_error(state: TfdState, h_single: np.ndarray, beta: float) -> float:
    """Frobenius distance between the reduced state and the Gibbs state."""
    if h_single.shape[0] != state.dim_single:
        raise ValueError("hamiltonian dimension does not match the state")
    return float(np.linalg.norm(reduced_density(state, "left") - thermal_state(h_single, beta)))


def tfd_overlap(a: TfdState, b: TfdState) -> float:
    """|<a|b>| between two doubled-space states."""
    if a.vector.shape != b.vector.shape:
        raise ValueError("state dimensions differ")
    return float(abs(np.vdot(a.vector, b.vector)))
