"""The convolution *-algebra of matrix-valued functions on a finite group.

A MatFun assigns one complex n x n matrix to every group element.  With
counting measure, convolution is (a*b)(x) = sum_g a(g) b(g^-1 x) with a
matrix product inside the sum, star is a*(g) = conj(a(g^-1))^T, and the
inner product is <a, b> = sum_g Tr(a(g) conj(b(g))^T).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .groups import GroupTable, parse_group_spec

__all__ = [
    "MatFun",
    "VecFun",
    "convolve",
    "convolve_vec",
    "star",
    "inner",
    "add",
    "subtract",
    "scale",
    "conjugate",
    "l2_norm",
    "l1_norm",
    "delta_identity",
    "zero_matfun",
    "random_matfun",
    "random_vecfun",
    "make_pd",
    "matfun_to_json",
    "matfun_from_json",
]


@dataclass(frozen=True, eq=False)
class MatFun:
    """One complex n x n matrix per group element; values[g] is the value at g."""

    group: GroupTable
    n: int
    values: np.ndarray  # (|G|, n, n) complex128

    def __post_init__(self) -> None:
        vals = np.ascontiguousarray(np.asarray(self.values, dtype=np.complex128))
        if vals.shape != (self.group.order, self.n, self.n):
            raise ValueError(
                f"values shape {vals.shape} does not match (|G|, n, n) = "
                f"({self.group.order}, {self.n}, {self.n})"
            )
        if not np.all(np.isfinite(vals.view(np.float64))):
            raise ValueError("MatFun entries must be finite")
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    def at(self, g: int) -> np.ndarray:
        return self.values[g]


@dataclass(frozen=True, eq=False)
class VecFun:
    """One complex n-vector per group element, an element of L2(G, C^n)."""

    group: GroupTable
    n: int
    values: np.ndarray  # (|G|, n) complex128

    def __post_init__(self) -> None:
        vals = np.ascontiguousarray(np.asarray(self.values, dtype=np.complex128))
        if vals.shape != (self.group.order, self.n):
            raise ValueError(
                f"values shape {vals.shape} does not match (|G|, n) = "
                f"({self.group.order}, {self.n})"
            )
        if not np.all(np.isfinite(vals.view(np.float64))):
            raise ValueError("VecFun entries must be finite")
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    def flat(self) -> np.ndarray:
        """Flatten to C^(|G| n) with index g*n + component."""
        return self.values.reshape(-1)

    @classmethod
    def from_flat(cls, group: GroupTable, n: int, flat: np.ndarray) -> "VecFun":
        return cls(group, n, np.asarray(flat).reshape(group.order, n))


def _check_compatible(a: MatFun | VecFun, b: MatFun | VecFun) -> None:
    if not a.group.same_table(b.group):
        raise ValueError("group mismatch")
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")


def convolve(a: MatFun, b: MatFun) -> MatFun:
    """(a*b)(x) = sum_g a(g) b(g^-1 x), direct double summation."""
    _check_compatible(a, b)
    g = a.group
    shifted = b.values[g.mult[g.inv]]  # shifted[g, x] = b(g^-1 x)
    out = np.einsum("gik,gxkj->xij", a.values, shifted, optimize=True)
    return MatFun(g, a.n, out)


def convolve_vec(a: MatFun, u: VecFun) -> VecFun:
    """Left convolution action on vector functions: sum_g a(g) u(g^-1 x)."""
    _check_compatible(a, u)
    g = a.group
    shifted = u.values[g.mult[g.inv]]  # shifted[g, x] = u(g^-1 x)
    out = np.einsum("gik,gxk->xi", a.values, shifted, optimize=True)
    return VecFun(g, a.n, out)


def star(a: MatFun) -> MatFun:
    """Adjoint in the *-algebra: a*(g) = conj(a(g^-1))^T."""
    vals = np.conj(a.values[a.group.inv]).transpose(0, 2, 1)
    return MatFun(a.group, a.n, vals)


def inner(a: MatFun, b: MatFun) -> complex:
    """<a, b> = sum_g Tr(a(g) conj(b(g))^T); conjugate-linear in b."""
    _check_compatible(a, b)
    return complex(np.vdot(b.values, a.values))


def add(a: MatFun, b: MatFun) -> MatFun:
    _check_compatible(a, b)
    return MatFun(a.group, a.n, a.values + b.values)


def subtract(a: MatFun, b: MatFun) -> MatFun:
    _check_compatible(a, b)
    return MatFun(a.group, a.n, a.values - b.values)


def scale(c: complex, a: MatFun) -> MatFun:
    return MatFun(a.group, a.n, c * a.values)


def conjugate(a: MatFun) -> MatFun:
    """Entrywise complex conjugate (not the star adjoint)."""
    return MatFun(a.group, a.n, np.conj(a.values))


def l2_norm(a: MatFun) -> float:
    return float(np.linalg.norm(a.values))


def l1_norm(a: MatFun) -> float:
    return float(np.sum(np.abs(a.values)))


def delta_identity(group: GroupTable, n: int) -> MatFun:
    """The convolution unit: identity matrix at e, zero elsewhere."""
    vals = np.zeros((group.order, n, n), dtype=np.complex128)
    vals[group.identity] = np.eye(n)
    return MatFun(group, n, vals)


def zero_matfun(group: GroupTable, n: int) -> MatFun:
    return MatFun(group, n, np.zeros((group.order, n, n), dtype=np.complex128))


def _generator(seed: int) -> np.random.Generator:
    # Philox is counter-based: the stream is a pure function of the key.
    return np.random.Generator(np.random.Philox(key=np.uint64(seed & 0xFFFFFFFFFFFFFFFF)))


def random_matfun(group: GroupTable, n: int, seed: int) -> MatFun:
    """Independent standard complex Gaussian entries, deterministic per seed."""
    rg = _generator(seed)
    shape = (group.order, n, n)
    vals = (rg.standard_normal(shape) + 1j * rg.standard_normal(shape)) / np.sqrt(2.0)
    return MatFun(group, n, vals)


def random_vecfun(group: GroupTable, n: int, seed: int) -> VecFun:
    rg = _generator(seed)
    shape = (group.order, n)
    vals = (rg.standard_normal(shape) + 1j * rg.standard_normal(shape)) / np.sqrt(2.0)
    return VecFun(group, n, vals)


def make_pd(f: MatFun) -> MatFun:
    """star(f) * f, positive definite since its convolution operator is T^H T."""
    return convolve(star(f), f)


def matfun_to_json(a: MatFun) -> dict:
    values = np.stack([a.values.real, a.values.imag], axis=-1)
    return {"group_id": a.group.name, "n": a.n, "values": values.tolist()}


def matfun_from_json(obj: dict, group: GroupTable | None = None) -> MatFun:
    """Rebuild a MatFun; the group is resolved from group_id unless given."""
    try:
        group_id = str(obj["group_id"])
        n = int(obj["n"])
        raw = np.asarray(obj["values"], dtype=np.float64)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed MatFun JSON: {exc}") from exc
    if group is None:
        group = parse_group_spec(group_id)
    if raw.shape != (group.order, n, n, 2):
        raise ValueError(f"MatFun JSON values have shape {raw.shape}, expected "
                         f"({group.order}, {n}, {n}, 2)")
    return MatFun(group, n, raw[..., 0] + 1j * raw[..., 1])
