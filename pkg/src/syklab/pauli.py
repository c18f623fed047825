"""Exact symbolic Pauli-string algebra and Jordan-Wigner Majorana operators.

A string is stored canonically as i^phase_exp * (X-part) * (Z-part), with the
X and Z occupancies held in integer bitmasks. Qubit 1 is the slowest-varying
tensor factor (leftmost in Kronecker products), so the mask bit for qubit q
sits at position n_qubits - q and mask bits line up directly with the bits of
computational-basis indices. Products are exact: the phase exponent is an
integer mod 4, and reordering signs are absorbed into it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_DENSE_QUBITS = 14  # 2^14 x 2^14 complex is the largest dense matrix we allow


@dataclass(frozen=True)
class PauliString:
    """One signed Pauli word: i^phase_exp * X^x_mask * Z^z_mask."""

    n_qubits: int
    x_mask: int
    z_mask: int
    phase_exp: int  # power of i, stored mod 4

    def __post_init__(self):
        full = (1 << self.n_qubits) - 1
        if self.x_mask & ~full or self.z_mask & ~full:
            raise ValueError("mask addresses qubits beyond n_qubits")
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    @property
    def phase(self) -> complex:
        return 1j ** self.phase_exp

    @property
    def is_identity(self) -> bool:
        return self.x_mask == 0 and self.z_mask == 0

    @property
    def is_hermitian(self) -> bool:
        # P^dag = i^{-e} Z X = i^{-e} (-1)^{|x&z|} X Z, so hermitian iff
        # the phase exponent and the Y-count have equal parity.
        return (self.phase_exp & 1) == (bin(self.x_mask & self.z_mask).count("1") & 1)

    def __mul__(self, other: "PauliString") -> "PauliString":
        return multiply(self, other)

    def __str__(self):
        sign = ["+", "+i", "-", "-i"][self.phase_exp]
        ops = []
        for q in range(1, self.n_qubits + 1):
            bit = 1 << (self.n_qubits - q)
            x, z = bool(self.x_mask & bit), bool(self.z_mask & bit)
            ops.append("I" if not (x or z) else "X" if x and not z else "Z" if z and not x else "Y")
        return sign + "".join(ops)


def identity(n_qubits: int) -> PauliString:
    return PauliString(n_qubits, 0, 0, 0)


def multiply(a: PauliString, b: PauliString) -> PauliString:
    """Exact product a*b. Moving a's Z-part past b's X-part costs (-1)^|z_a & x_b|."""
    if a.n_qubits != b.n_qubits:
        raise ValueError(f"qubit count mismatch: {a.n_qubits} vs {b.n_qubits}")
    anti = bin(a.z_mask & b.x_mask).count("1")
    return PauliString(
        a.n_qubits,
        a.x_mask ^ b.x_mask,
        a.z_mask ^ b.z_mask,
        a.phase_exp + b.phase_exp + 2 * anti,
    )


@lru_cache(maxsize=None)
def jw_majorana(j: int, n_qubits: int) -> PauliString:
    """Majorana operator j (0-based) on a Jordan-Wigner chain of n_qubits.

    Even j maps to Z_1..Z_{k-1} X_k and odd j to Z_1..Z_{k-1} Y_k with
    k = j//2 + 1; the Z-string enforces anticommutation across sites.
    Hermitian and squares to the identity.
    """
    if not 0 <= j < 2 * n_qubits:
        raise ValueError(f"majorana index {j} out of range for {n_qubits} qubits")
    k = j // 2 + 1
    z_string = 0
    for q in range(1, k):
        z_string |= 1 << (n_qubits - q)
    x = 1 << (n_qubits - k)
    if j % 2 == 0:
        return PauliString(n_qubits, x, z_string, 0)
    # Y_k = i X_k Z_k
    return PauliString(n_qubits, x, z_string | x, 1)


@dataclass
class OperatorSum:
    """Weighted sum of Pauli strings with merged terms.

    Terms are keyed by (x_mask, z_mask); string phases are folded into the
    coefficients so equal words always merge. Zero coefficients are dropped.
    """

    n_qubits: int
    terms: list  # list[(complex, PauliString)] with phase_exp == 0

    @classmethod
    def from_terms(cls, n_qubits, terms) -> "OperatorSum":
        acc = {}
        for coeff, string in terms:
            if string.n_qubits != n_qubits:
                raise ValueError("all terms must share n_qubits")
            key = (string.x_mask, string.z_mask)
            acc[key] = acc.get(key, 0.0) + complex(coeff) * string.phase
        merged = [
            (c, PauliString(n_qubits, x, z, 0))
            for (x, z), c in sorted(acc.items())
            if c != 0
        ]
        return cls(n_qubits, merged)

    def to_dense(self) -> np.ndarray:
        return to_dense(self)


def _z_signs(z_mask: int, n_qubits: int) -> np.ndarray:
    """(-1)^{|z & b|} over all basis indices b, as float64."""
    b = np.arange(1 << n_qubits, dtype=np.uint64)
    # bitwise_count yields uint8; promote before forming the sign
    return 1.0 - 2.0 * (np.bitwise_count(b & np.uint64(z_mask)) & 1)


def to_dense(op) -> np.ndarray:
    """Dense complex matrix of a PauliString or OperatorSum.

    A string is a signed permutation: column b maps to row b ^ x_mask with
    amplitude i^e (-1)^{|z & b|}.
    """
    if isinstance(op, PauliString):
        op = OperatorSum.from_terms(op.n_qubits, [(1.0, op)])
    if op.n_qubits > MAX_DENSE_QUBITS:
        raise ValueError(f"dense matrix for {op.n_qubits} qubits exceeds the supported size")
    d = 1 << op.n_qubits
    mat = np.zeros((d, d), dtype=np.complex128)
    cols = np.arange(d)
    for coeff, s in op.terms:
        mat[cols ^ s.x_mask, cols] += coeff * _z_signs(s.z_mask, s.n_qubits)
    return mat


def apply_string(s: PauliString, v: np.ndarray) -> np.ndarray:
    """P @ v for a state vector v, in O(dim)."""
    d = 1 << s.n_qubits
    if v.shape[0] != d:
        raise ValueError("vector dimension does not match n_qubits")
    scaled = (s.phase * _z_signs(s.z_mask, s.n_qubits)) * v
    if s.x_mask == 0:
        return scaled
    out = np.empty_like(scaled)
    idx = np.arange(d) ^ s.x_mask
    out[idx] = scaled
    return out


def apply_string_matrix(s: PauliString, m: np.ndarray) -> np.ndarray:
    """P @ M for a dense matrix M: a signed row permutation, in O(dim^2)."""
    d = 1 << s.n_qubits
    if m.shape[0] != d:
        raise ValueError("matrix dimension does not match n_qubits")
    scaled = (s.phase * _z_signs(s.z_mask, s.n_qubits))[:, None] * m
    if s.x_mask == 0:
        return scaled
    out = np.empty_like(scaled)
    out[np.arange(d) ^ s.x_mask] = scaled
    return out


def expectation(s: PauliString, rho: np.ndarray) -> complex:
    """Tr[P rho] in O(dim): the diagonal of P rho involves one column per row."""
    d = 1 << s.n_qubits
    i = np.arange(d)
    src = i ^ s.x_mask
    signs = _z_signs(s.z_mask, s.n_qubits)
    return s.phase * np.sum(signs[src] * rho[src, i])
