"""Exact N-atom matrices of the collective operators and their commutators.

Single-atom levels are ordered b=0, a=1, c=2, so basis index 0 is the state
with every atom in |b>.  ``sigma(mu, nu) = |mu><nu|``.  With that convention::

    S  = sum_j sigma_aa           A  = N^{-1/2} sum_j sigma_ba
    T+ = sum_j sigma_ac           C  = N^{-1/2} sum_j sigma_bc

Up to six atoms the matrices are dense numpy arrays; seven and eight atoms
use scipy CSR matrices (dense 6561^2 complex would need ~0.7 GB).
"""
from __future__ import annotations

import math
from fractions import Fraction
from dataclasses import dataclass
from typing import Literal, NamedTuple, Union

import numpy as np
import scipy.sparse as sp

from .errors import DimensionMismatch, DimensionOverflow

LEVELS = {"b": 0, "a": 1, "c": 2}
MAX_ATOMS = 8
MAX_DENSE_ATOMS = 6

Representation = Literal["auto", "dense", "sparse"]
Matrix = Union[np.ndarray, sp.csr_matrix]


@dataclass(frozen=True)
class AtomBasis:
    n_atoms: int

    def __post_init__(self):
        if not isinstance(self.n_atoms, (int, np.integer)) or self.n_atoms < 1:
            raise DimensionOverflow(f"n_atoms must be a positive integer, got {self.n_atoms!r}")
        if self.n_atoms > MAX_ATOMS:
            raise DimensionOverflow(f"n_atoms={self.n_atoms} exceeds the limit of {MAX_ATOMS}")

    @property
    def dimension(self) -> int:
        return 3**self.n_atoms


@dataclass(frozen=True)
class OperatorMatrix:
    label: str
    matrix: Matrix

    @property
    def is_sparse(self) -> bool:
        return sp.issparse(self.matrix)

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    def dagger(self, label: str | None = None) -> "OperatorMatrix":
        m = self.matrix.conj().T
        if self.is_sparse:
            m = m.tocsr()
        return OperatorMatrix(label or f"{self.label}^+", m)

    def dense(self) -> np.ndarray:
        return self.matrix.toarray() if self.is_sparse else np.asarray(self.matrix)

    def __matmul__(self, other):
        if isinstance(other, OperatorMatrix):
            return OperatorMatrix(f"{self.label}{other.label}", self.matrix @ other.matrix)
        return self.matrix @ other


def _resolve(basis: AtomBasis, representation: Representation) -> bool:
    """True for sparse."""
    if representation == "auto":
        return basis.n_atoms > MAX_DENSE_ATOMS
    if representation == "dense":
        if basis.n_atoms > MAX_DENSE_ATOMS:
            raise DimensionOverflow(
                f"dense matrices are limited to {MAX_DENSE_ATOMS} atoms; use the sparse representation"
            )
        return False
    if representation == "sparse":
        return True
    raise ValueError(f"unknown representation {representation!r}")


def flip(mu: str, nu: str) -> np.ndarray:
    m = np.zeros((3, 3), dtype=complex)
    m[LEVELS[mu], LEVELS[nu]] = 1.0
    return m


def collective(basis: AtomBasis, mu: str, nu: str, sparse: bool = False) -> Matrix:
    """sum_j sigma_{mu nu}^{(j)} as a 3^N x 3^N matrix."""
    n = basis.n_atoms
    single = flip(mu, nu)
    if sparse:
        total = sp.csr_matrix((basis.dimension, basis.dimension), dtype=complex)
        for j in range(n):
            term = sp.kron(
                sp.kron(sp.identity(3**j, dtype=complex, format="csr"), sp.csr_matrix(single)),
                sp.identity(3 ** (n - j - 1), dtype=complex, format="csr"),
                format="csr",
            )
            total = total + term
        return total.tocsr()
    total = np.zeros((basis.dimension, basis.dimension), dtype=complex)
    for j in range(n):
        total += np.kron(np.kron(np.eye(3**j), single), np.eye(3 ** (n - j - 1)))
    return total


def build_operators(basis: AtomBasis, representation: Representation = "auto") -> dict[str, OperatorMatrix]:
    """S, A, A+, C, C+, T+, T- keyed by those names."""
    sparse = _resolve(basis, representation)
    norm = 1.0 / math.sqrt(basis.n_atoms)
    s = OperatorMatrix("S", collective(basis, "a", "a", sparse))
    a = OperatorMatrix("A", norm * collective(basis, "b", "a", sparse))
    c = OperatorMatrix("C", norm * collective(basis, "b", "c", sparse))
    t_plus = OperatorMatrix("T+", collective(basis, "a", "c", sparse))
    return {
        "S": s,
        "A": a,
        "A+": a.dagger("A+"),
        "C": c,
        "C+": c.dagger("C+"),
        "T+": t_plus,
        "T-": t_plus.dagger("T-"),
    }


def commutator(x: OperatorMatrix, y: OperatorMatrix) -> OperatorMatrix:
    if x.shape != y.shape:
        raise DimensionMismatch(f"cannot commute {x.label} {x.shape} with {y.label} {y.shape}")
    m = x.matrix @ y.matrix - y.matrix @ x.matrix
    if sp.issparse(m):
        m = m.tocsr()
    return OperatorMatrix(f"[{x.label},{y.label}]", m)


def max_abs(m: Matrix) -> float:
    if sp.issparse(m):
        m = m.tocoo()
        return float(np.abs(m.data).max()) if m.nnz else 0.0
    return float(np.abs(m).max()) if m.size else 0.0


def ground_state(basis: AtomBasis) -> np.ndarray:
    v = np.zeros(basis.dimension, dtype=complex)
    v[0] = 1.0
    return v


def excited_state(ops: dict[str, OperatorMatrix], basis: AtomBasis, k: int, raising: str = "C+") -> np.ndarray:
    """Normalised (raising)^k |GS>, the symmetric state with k atoms excited."""
    v = ground_state(basis)
    for _ in range(k):
        v = ops[raising].matrix @ v
    norm = np.linalg.norm(v)
    if norm == 0:
        raise ValueError(f"{raising}^{k} annihilates the ground state for N={basis.n_atoms}")
    return v / norm


def expectation(op: OperatorMatrix, v: np.ndarray) -> complex:
    return complex(np.vdot(v, op.matrix @ v))


class AlgebraCheck(NamedTuple):
    identity: str
    max_abs_deviation: float


EXACT_IDENTITIES = ("[S,C+] = 0", "[A,S] = A", "[T-,C+] = 0", "[T+,C+] = A+", "[A,C] = 0")


def verify_algebra(basis: AtomBasis, representation: Representation = "auto") -> list[AlgebraCheck]:
    """Deviation of each commutation identity, exact and finite-N.

    The first five rows are the identities that hold for every N.  Then come
    the exact finite-N forms of the two relations that only hold as N grows,
    and the expectation values that quantify the bosonic limit.
    """
    sparse = _resolve(basis, representation)
    ops = build_operators(basis, "sparse" if sparse else "dense")
    n = basis.n_atoms
    S, A, Ad, C, Cd, Tp, Tm = (ops[k] for k in ("S", "A", "A+", "C", "C+", "T+", "T-"))

    def dev(lhs: OperatorMatrix, rhs=None) -> float:
        return max_abs(lhs.matrix if rhs is None else lhs.matrix - rhs)

    a_ad = commutator(A, Ad)
    population_diff = (collective(basis, "b", "b", sparse) - collective(basis, "a", "a", sparse)) / n
    report = [
        AlgebraCheck("[S,C+] = 0", dev(commutator(S, Cd))),
        AlgebraCheck("[A,S] = A", dev(commutator(A, S), A.matrix)),
        AlgebraCheck("[T-,C+] = 0", dev(commutator(Tm, Cd))),
        AlgebraCheck("[T+,C+] = A+", dev(commutator(Tp, Cd), Ad.matrix)),
        AlgebraCheck("[A,C] = 0", dev(commutator(A, C))),
        AlgebraCheck("[A,C+] = -T-/N", dev(commutator(A, Cd), -Tm.matrix / n)),
        AlgebraCheck("[A,A+] = (N_b - N_a)/N", dev(a_ad, population_diff)),
        AlgebraCheck("<GS|[A,A+]|GS> = 1", float(abs(commutator_expectation(basis, 0) - 1))),
        AlgebraCheck(
            "<C+GS|[A,A+]|C+GS> = 1 - 1/N",
            float(abs(commutator_expectation(basis, 1) - (1 - Fraction(1, n)))),
        ),
    ]
    return report


def commutator_expectation(basis: AtomBasis, k: int) -> Fraction:
    """<psi_k|[A,A+]|psi_k> as an exact rational, psi_k = (C+)^k |GS> normalised.

    The unnormalised sums have integer matrix elements, so
    <v|[a, a+]|v> / (N <v|v>) with a = sum_j sigma_ba and v = (sum_j sigma_cb)^k |GS>
    is evaluated in integers; the 1/sqrt(N) factors never enter floating point.
    """
    sparse = basis.n_atoms > MAX_DENSE_ATOMS
    a = collective(basis, "b", "a", sparse).real.astype(np.int64)
    c_up = collective(basis, "c", "b", sparse).real.astype(np.int64)
    v = np.zeros(basis.dimension, dtype=np.int64)
    v[0] = 1
    for _ in range(k):
        v = c_up @ v
    norm_sq = int(v @ v)
    if norm_sq == 0:
        raise ValueError(f"C+^{k} annihilates the ground state for N={basis.n_atoms}")
    # <v|a a+ - a+ a|v> = |a+ v|^2 - |a v|^2
    up, down = a.T @ v, a @ v
    num = int(up @ up) - int(down @ down)
    return Fraction(num, basis.n_atoms * norm_sq)


def bosonic_deviation(basis: AtomBasis, k: int) -> Fraction:
    """1 - <psi_k|[A,A+]|psi_k> for k atoms moved to |c> symmetrically (exact)."""
    return 1 - commutator_expectation(basis, k)
