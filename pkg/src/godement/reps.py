"""Unitary representations of finite groups and their matrix-coefficient functions.

A matrix coefficient function built from a representation and a tuple of
vectors is always positive definite, and pairings of two such functions
realize the nonnegativity of averaged diagonal coefficients of tensor
product representations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .groups import GroupTable
from .matfun import MatFun, conjugate, inner, l2_norm
from .theorems import TheoremReport

__all__ = [
    "UnitaryRep",
    "regular_rep",
    "trivial_rep",
    "tensor_product",
    "matrix_coeff_fun",
    "check_tensor_nonneg",
    "unitarity_residual",
    "homomorphism_residual",
    "rep_to_json",
]


@dataclass(frozen=True, eq=False)
class UnitaryRep:
    """One unitary d x d matrix per group element, multiplicative on the table."""

    group: GroupTable
    dim: int
    matrices: np.ndarray  # (|G|, d, d) complex128

    def __post_init__(self) -> None:
        mats = np.ascontiguousarray(np.asarray(self.matrices, dtype=np.complex128))
        if mats.shape != (self.group.order, self.dim, self.dim):
            raise ValueError(
                f"matrices shape {mats.shape}, expected ({self.group.order}, {self.dim}, {self.dim})"
            )
        mats.flags.writeable = False
        object.__setattr__(self, "matrices", mats)

    def at(self, g: int) -> np.ndarray:
        return self.matrices[g]

    def character(self) -> np.ndarray:
        return np.trace(self.matrices, axis1=1, axis2=2)


def regular_rep(group: GroupTable) -> UnitaryRep:
    """Left regular representation by permutation matrices: M(g) e_h = e_{g h}."""
    order = group.order
    mats = np.zeros((order, order, order), dtype=np.complex128)
    for g in range(order):
        mats[g, group.mult[g], np.arange(order)] = 1.0
    return UnitaryRep(group, order, mats)


def trivial_rep(group: GroupTable) -> UnitaryRep:
    return UnitaryRep(group, 1, np.ones((group.order, 1, 1), dtype=np.complex128))


def tensor_product(p1: UnitaryRep, p2: UnitaryRep) -> UnitaryRep:
    """Elementwise Kronecker product; basis pairs (i, j) in row-major order i*d2 + j."""
    if not p1.group.same_table(p2.group):
        raise ValueError("group mismatch")
    dim = p1.dim * p2.dim
    mats = np.einsum("gik,gjl->gijkl", p1.matrices, p2.matrices).reshape(
        p1.group.order, dim, dim
    )
    return UnitaryRep(p1.group, dim, mats)


def unitarity_residual(rep: UnitaryRep) -> float:
    eye = np.eye(rep.dim)
    prods = np.einsum("gij,gkj->gik", rep.matrices, np.conj(rep.matrices))
    return float(np.max(np.linalg.norm(prods - eye, axis=(1, 2))))


def homomorphism_residual(rep: UnitaryRep) -> float:
    worst = 0.0
    for a in range(rep.group.order):
        prods = rep.matrices[a] @ rep.matrices  # (|G|, d, d), index b
        target = rep.matrices[rep.group.mult[a]]
        worst = max(worst, float(np.max(np.linalg.norm(prods - target, axis=(1, 2)))))
    return worst


def matrix_coeff_fun(rep: UnitaryRep, vectors: list[np.ndarray] | np.ndarray) -> MatFun:
    """Stack matrix coefficients of rep over a tuple of vectors into a MatFun.

    With U the matrix whose columns are the given vectors, the value at
    g is U^H M(g) U; entry (i, j) pairs M(g) applied to the j-th vector
    against the i-th under the inner product <x, y> = sum x conj(y),
    linear in its first argument.  This orientation makes the output
    positive definite.
    """
    u = np.asarray(vectors, dtype=np.complex128)
    if u.ndim != 2:
        raise ValueError("vectors must be a list of equal-length 1-d arrays")
    if u.shape[1] != rep.dim:
        raise ValueError(f"vector length {u.shape[1]} does not match dim {rep.dim}")
    basis = u.T  # columns are the vectors
    vals = np.einsum("ri,grc,cj->gij", np.conj(basis), rep.matrices, basis, optimize=True)
    return MatFun(rep.group, u.shape[0], vals)


def check_tensor_nonneg(
    p1: UnitaryRep,
    u1s: list[np.ndarray] | np.ndarray,
    p2: UnitaryRep,
    u2s: list[np.ndarray] | np.ndarray,
    tol: float = 1e-10,
) -> TheoremReport:
    """Averaged diagonal coefficient of a tensor product is nonnegative.

    Computes sum_g <(p1 x p2)(g) u, u> with u = sum_i u1_i x u2_i two
    ways: directly, and as the inner product of the two matrix
    coefficient functions (with the second conjugated entrywise), which
    reduces the claim to the nonnegative-pairing theorem.  Both routes
    must agree and be nonnegative.
    """
    if not p1.group.same_table(p2.group):
        raise ValueError("group mismatch")
    a1 = np.asarray(u1s, dtype=np.complex128)
    a2 = np.asarray(u2s, dtype=np.complex128)
    if a1.shape[0] != a2.shape[0]:
        raise ValueError(f"vector tuple counts differ: {a1.shape[0]} vs {a2.shape[0]}")

    big = tensor_product(p1, p2)
    u = np.zeros(big.dim, dtype=np.complex128)
    for v1, v2 in zip(a1, a2):
        u += np.kron(v1, v2)
    direct = complex(np.einsum("i,gij,j->", np.conj(u), big.matrices, u, optimize=True))

    phi1 = matrix_coeff_fun(p1, a1)
    phi2 = matrix_coeff_fun(p2, a2)
    via_pairing = inner(phi1, conjugate(phi2))

    scale = max(l2_norm(phi1) * l2_norm(phi2), 1.0)
    agreement = abs(direct - via_pairing) / scale
    negativity = max(0.0, -direct.real) / scale
    imaginary = abs(direct.imag) / scale
    residual = max(agreement, negativity, imaginary)
    report = TheoremReport(
        "B", 1, p1.group.name, int(a1.shape[0]), residual / tol, residual <= tol
    )
    report.details = {
        "route": "tensor_product",
        "direct_sum": [direct.real, direct.imag],
        "via_pairing": [via_pairing.real, via_pairing.imag],
    }
    if not report.passed:
        report.counterexample = {
            "u1s": [[z.real, z.imag] for v in a1 for z in v],
            "u2s": [[z.real, z.imag] for v in a2 for z in v],
        }
    return report


def rep_to_json(rep: UnitaryRep) -> dict:
    mats = np.stack([rep.matrices.real, rep.matrices.imag], axis=-1)
    return {"group_id": rep.group.name, "dim": rep.dim, "matrices": mats.tolist()}
