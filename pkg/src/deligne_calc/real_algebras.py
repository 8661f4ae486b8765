"""Finite semisimple algebras over R or an algebraically closed field, as Wedderburn data.

An algebra is a multiset of simple factors ``M_n(D)``.  Over R the division
algebra D is one of R, C, H (tags ``"R"``, ``"C"``, ``"H"``); over an
algebraically closed field only the base field itself occurs.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from sympy import Matrix

from .groups import CapExceeded, check_char

BASE, CPLX, QUAT = "R", "C", "H"
DIV_DIM = {BASE: 1, CPLX: 2, QUAT: 4}
CENTER_DIM = {BASE: 1, CPLX: 2, QUAT: 1}

# D (x)_R E for division algebras, as a list of (matrix size, division algebra)
_REAL_RULES = {
    (BASE, BASE): [(1, BASE)],
    (BASE, CPLX): [(1, CPLX)],
    (BASE, QUAT): [(1, QUAT)],
    (CPLX, CPLX): [(1, CPLX), (1, CPLX)],
    (CPLX, QUAT): [(2, CPLX)],
    (QUAT, QUAT): [(4, BASE)],
}


@dataclass(frozen=True)
class FieldDescriptor:
    kind: str = "AC"  # "AC" (algebraically closed) or "Real"
    char: int = 0

    def __post_init__(self):
        if self.kind not in ("AC", "Real"):
            raise ValueError(f"unknown field kind {self.kind!r}")
        check_char(self.char)
        if self.kind == "Real" and self.char != 0:
            raise ValueError("the real field has characteristic 0")

    @property
    def is_real(self) -> bool:
        return self.kind == "Real"

    def to_json(self) -> str:
        if self.is_real:
            return "R"
        return "AC0" if self.char == 0 else f"ACp:{self.char}"

    @classmethod
    def from_json(cls, s: str) -> FieldDescriptor:
        if s == "R":
            return cls("Real")
        if s == "AC0":
            return cls("AC", 0)
        if s.startswith("ACp:"):
            return cls("AC", int(s[4:]))
        raise ValueError(f"unknown field descriptor {s!r}")

    def __str__(self):
        return self.to_json()


REALS = FieldDescriptor("Real")
ALG_CLOSED = FieldDescriptor("AC", 0)


@dataclass(frozen=True)
class SemisimpleAlgebra:
    field: FieldDescriptor
    factors: tuple[tuple[int, str], ...]

    def __post_init__(self):
        facs = []
        for n, tag in self.factors:
            if n < 1:
                raise ValueError(f"matrix size must be >= 1, got {n}")
            if tag not in DIV_DIM:
                raise ValueError(f"unknown division algebra {tag!r}")
            if tag != BASE and not self.field.is_real:
                raise ValueError(f"{tag} factors need the real field")
            facs.append((int(n), tag))
        object.__setattr__(self, "factors", tuple(sorted(facs)))

    @property
    def dimension(self) -> int:
        return sum(n * n * DIV_DIM[d] for n, d in self.factors)

    @property
    def simple_module_count(self) -> int:
        return len(self.factors)

    @property
    def center_factor_count(self) -> int:
        return len(self.factors)

    @property
    def center_dimension(self) -> int:
        return sum(CENTER_DIM[d] for _, d in self.factors)

    def __str__(self):
        names = {BASE: "R" if self.field.is_real else "k", CPLX: "C", QUAT: "H"}
        parts = [names[d] if n == 1 else f"M{n}({names[d]})" for n, d in self.factors]
        return " ⊕ ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "factors": [[n, d] for n, d in self.factors]}

    @classmethod
    def from_json(cls, data: dict) -> SemisimpleAlgebra:
        return cls(FieldDescriptor.from_json(data["field"]),
                   tuple((int(n), str(d)) for n, d in data["factors"]))


def algebra(field: FieldDescriptor, *factors) -> SemisimpleAlgebra:
    """``algebra(REALS, (1, "C"), (2, "R"))`` -> C + M2(R)."""
    return SemisimpleAlgebra(field, tuple(factors))


def simple_module_count(A: SemisimpleAlgebra) -> int:
    return A.simple_module_count


def center_factor_count(A: SemisimpleAlgebra) -> int:
    return A.center_factor_count


def dimension(A: SemisimpleAlgebra) -> int:
    return A.dimension


def tensor(A: SemisimpleAlgebra, B: SemisimpleAlgebra) -> SemisimpleAlgebra:
    if A.field != B.field:
        raise ValueError(f"field mismatch: {A.field} vs {B.field}")
    out = []
    for (n, d), (m, e) in itertools.product(A.factors, B.factors):
        if A.field.is_real:
            key = tuple(sorted((d, e), key="RCH".index))
            for size, tag in _REAL_RULES[key]:
                out.append((n * m * size, tag))
        else:
            out.append((n * m, BASE))
    return SemisimpleAlgebra(A.field, tuple(out))


# ---------------------------------------------------------------------------
# structure-constant oracle


def _division_constants(tag: str) -> np.ndarray:
    """c[a, b, c]: e_a e_b = sum_c c[a,b,c] e_c in the standard basis."""
    if tag == BASE:
        return np.ones((1, 1, 1), dtype=np.int64)
    if tag == CPLX:
        c = np.zeros((2, 2, 2), dtype=np.int64)
        c[0, 0, 0] = c[0, 1, 1] = c[1, 0, 1] = 1
        c[1, 1, 0] = -1
        return c
    # quaternions 1, i, j, k
    table = {
        (1, 1): (-1, 0), (2, 2): (-1, 0), (3, 3): (-1, 0),
        (1, 2): (1, 3), (2, 3): (1, 1), (3, 1): (1, 2),
        (2, 1): (-1, 3), (3, 2): (-1, 1), (1, 3): (-1, 2),
    }
    c = np.zeros((4, 4, 4), dtype=np.int64)
    for a in range(4):
        c[0, a, a] = c[a, 0, a] = 1
    for (a, b), (s, k) in table.items():
        c[a, b, k] = s
    return c


def _matrix_constants(n: int) -> np.ndarray:
    """Matrix units E_ij (index i*n+j): E_ij E_kl = delta_jk E_il."""
    c = np.zeros((n * n,) * 3, dtype=np.int64)
    for i, j, l in itertools.product(range(n), repeat=3):
        c[i * n + j, j * n + l, i * n + l] = 1
    return c


def _kron_constants(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    da, db = a.shape[0], b.shape[0]
    return np.einsum("abc,xyz->axbycz", a, b).reshape(da * db, da * db, da * db)


def _direct_sum_constants(parts: list[np.ndarray]) -> np.ndarray:
    dim = sum(p.shape[0] for p in parts)
    c = np.zeros((dim,) * 3, dtype=np.int64)
    off = 0
    for p in parts:
        d = p.shape[0]
        c[off:off + d, off:off + d, off:off + d] = p
        off += d
    return c


def structure_constants(A: SemisimpleAlgebra) -> np.ndarray:
    return _direct_sum_constants(
        [_kron_constants(_matrix_constants(n), _division_constants(d)) for n, d in A.factors])


def _rank_over_q(rows: np.ndarray) -> int:
    if rows.size == 0:
        return 0
    rows = np.unique(rows[rows.any(axis=1)], axis=0)
    if rows.size == 0:
        return 0
    return Matrix(rows.tolist()).rank(iszerofunc=lambda x: x == 0)


def center_dimension_from_constants(c: np.ndarray) -> int:
    """dim {x : x y = y x for all basis y}, by an exact rank computation over Q."""
    d = c.shape[0]
    # (x e_b - e_b x)_k = sum_a x_a (c[a,b,k] - c[b,a,k])
    comm = c - c.transpose(1, 0, 2)
    rows = comm.transpose(1, 2, 0).reshape(d * d, d)
    return d - _rank_over_q(rows)


def tensor_brute_force(A: SemisimpleAlgebra, B: SemisimpleAlgebra,
                       limit: int = 64) -> tuple[int, int]:
    """(dimension, center dimension) of A (x)_R B from explicit structure constants."""
    if not (A.field.is_real and B.field.is_real):
        raise ValueError("the structure-constant oracle works over the reals")
    if A.dimension * B.dimension > limit:
        raise CapExceeded(f"dim A * dim B = {A.dimension * B.dimension} exceeds {limit}")
    c = _kron_constants(structure_constants(A), structure_constants(B))
    return c.shape[0], center_dimension_from_constants(c)


def is_associative(c: np.ndarray) -> bool:
    return bool((np.einsum("abm,mcd->abcd", c, c) == np.einsum("bcm,amd->abcd", c, c)).all())


__all__ = [
    "ALG_CLOSED", "BASE", "CPLX", "QUAT", "REALS", "FieldDescriptor", "SemisimpleAlgebra",
    "algebra", "center_dimension_from_constants", "center_factor_count", "dimension",
    "is_associative",
    "simple_module_count", "structure_constants", "tensor", "tensor_brute_force",
]
