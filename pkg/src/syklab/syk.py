"""Coupling tensors, sparsification, and single-side / doubled Hamiltonians.

The single-side model lives on n_majorana/2 qubits. The doubled system puts
2*n_majorana Majoranas on one Jordan-Wigner chain of n_majorana qubits: left
Majoranas occupy qubits 1..N/2, right Majoranas qubits N/2+1..N, and the
right operators therefore carry the full left Z-string. In any even product
of right Majoranas those strings cancel, so the right Hamiltonian acts on the
right factor with the same matrix as the left one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .pauli import OperatorSum, jw_majorana, to_dense

DENSE_DOUBLED_MAX = 14  # largest n_majorana with a 2^N dense doubled matrix


@dataclass(frozen=True)
class CouplingTensor:
    """Four-body couplings keyed by strictly increasing index 4-tuples."""

    n_majorana: int
    entries: dict
    sparsity_p: float
    seed: int
    variance_target: float

    @property
    def n_possible(self) -> int:
        return comb(self.n_majorana, 4)


def sample_couplings(n_majorana: int, sparsity: float, seed: int) -> CouplingTensor:
    """Draw a coupling tensor with independent retention and rescaled variance.

    Each of the C(N,4) candidates is kept with probability `sparsity`; kept
    values are zero-mean Gaussian with variance 6/(sparsity * N^3) so the
    ensemble second moment of the Hamiltonian is sparsity-independent.

    The stream order is fixed: all Gaussian values in lexicographic 4-tuple
    order, then all retention uniforms in the same order. A given seed
    therefore fixes the full dense draw, and sparsity only masks it.
    """
    if n_majorana < 4 or n_majorana % 2:
        raise ValueError("n_majorana must be even and at least 4")
    if not 0.0 < sparsity <= 1.0:
        raise ValueError("sparsity must lie in (0, 1]")
    rng = np.random.default_rng(seed)
    tuples = list(itertools.combinations(range(n_majorana), 4))
    values = rng.standard_normal(len(tuples))
    keep = rng.random(len(tuples)) < sparsity
    variance = 6.0 / (sparsity * n_majorana**3)
    sigma = np.sqrt(variance)
    entries = {t: sigma * v for t, v, k in zip(tuples, values, keep) if k}
    return CouplingTensor(n_majorana, entries, sparsity, seed, variance)


def single_side_operator(coupling: CouplingTensor) -> OperatorSum:
    """H = -(1/4!) sum_{i<j<k<l} J_ijkl psi_i psi_j psi_k psi_l as a Pauli sum."""
    n = coupling.n_majorana // 2
    terms = []
    for (i, j, k, l), val in sorted(coupling.entries.items()):
        s = jw_majorana(i, n) * jw_majorana(j, n) * jw_majorana(k, n) * jw_majorana(l, n)
        terms.append((-val / 24.0, s))
    return OperatorSum.from_terms(n, terms)


def build_single_side(coupling: CouplingTensor) -> np.ndarray:
    """Dense single-side Hamiltonian of dimension 2^(N/2)."""
    d = 1 << (coupling.n_majorana // 2)
    op = single_side_operator(coupling)
    if not op.terms:
        return np.zeros((d, d), dtype=np.complex128)
    return to_dense(op)


def interaction_sum(n_majorana: int, mu: float) -> OperatorSum:
    """H_int = i*mu sum_j psiL_j psiR_j on the doubled chain of N qubits.

    The i makes each term hermitian because left and right Majoranas
    anticommute; sparsification never touches this operator.
    """
    terms = []
    for j in range(n_majorana):
        s = jw_majorana(j, n_majorana) * jw_majorana(n_majorana + j, n_majorana)
        terms.append((1j * mu, s))
    return OperatorSum.from_terms(n_majorana, terms)


@dataclass
class DoubledSystem:
    """Two coupled copies sharing one disorder realization.

    h_single is the common single-side matrix (left and right are numerically
    identical); h_full and h_int are dense doubled-space matrices, present
    only in dense mode.
    """

    n_majorana: int
    h_single: np.ndarray
    h_int_mu: float
    majorana_left: list = field(repr=False)
    majorana_right: list = field(repr=False)
    h_full: np.ndarray | None = field(default=None, repr=False)
    h_int: np.ndarray | None = field(default=None, repr=False)
    coupling: CouplingTensor | None = None

    @property
    def h_left(self) -> np.ndarray:
        return self.h_single

    @property
    def h_right(self) -> np.ndarray:
        return self.h_single

    @property
    def dim_single(self) -> int:
        return self.h_single.shape[0]

    @property
    def dim(self) -> int:
        return self.dim_single**2


def build_doubled(coupling: CouplingTensor, mu: float, dense=None) -> DoubledSystem:
    """Assemble H = H_L + H_R + H_int, symmetrized, for one realization.

    dense=None picks dense mode automatically for n_majorana <= 14; pass
    dense=False for a matrix-free system (h_full omitted, see krylov module).
    """
    n = coupling.n_majorana
    if dense is None:
        dense = n <= DENSE_DOUBLED_MAX
    if dense and n > DENSE_DOUBLED_MAX:
        raise ValueError(
            f"dense doubled mode needs n_majorana <= {DENSE_DOUBLED_MAX}; "
            "request matrix-free mode instead"
        )
    h_single = build_single_side(coupling)
    maj_left = [jw_majorana(j, n) for j in range(n)]
    maj_right = [jw_majorana(n + j, n) for j in range(n)]
    h_full = h_int = None
    if dense:
        ident = np.eye(h_single.shape[0])
        h_int = to_dense(interaction_sum(n, mu))
        h_full = np.kron(h_single, ident) + np.kron(ident, h_single) + h_int
        h_full = 0.5 * (h_full + h_full.conj().T)  # scrub float symmetry breaking
    return DoubledSystem(n, h_single, mu, maj_left, maj_right, h_full, h_int, coupling)


def dump_couplings(coupling: CouplingTensor, path) -> None:
    """Write a tensor as a deterministic text table: header, then sorted rows."""
    lines = [
        f"# n_majorana={coupling.n_majorana} sparsity={coupling.sparsity_p!r} "
        f"seed={coupling.seed} variance_target={coupling.variance_target!r}",
        "# i j k l value",
    ]
    for (i, j, k, l), val in sorted(coupling.entries.items()):
        lines.append(f"{i} {j} {k} {l} {val!r}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
