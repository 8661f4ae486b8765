"""Based rings with nonnegative integer structure constants.

``N[i, j, k]`` is the multiplicity of ``b_k`` in ``b_i * b_j``.  A ring may have a
decomposable unit (multifusion), stored as the set of unit indices.
"""
from __future__ import annotations

import csv
import io
import itertools
import re
from dataclasses import dataclass, field

import numpy as np
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix

from .groups import CapExceeded, FiniteAbelianGroup, default_cap

FP_TOL = 1e-12
FP_MAX_ITER = 10_000
INTEGRAL_TOL = 1e-6
# an empty table cell; the alternative is used when some basis label is "0"
EMPTY_CELL, ALT_EMPTY_CELL = "0", "∅"


@dataclass(frozen=True, eq=False)
class FusionRing:
    labels: tuple[str, ...]
    unit: tuple[int, ...]
    dual: tuple[int, ...]
    N: np.ndarray

    def __post_init__(self):
        N = np.array(self.N, dtype=np.int64)
        N.setflags(write=False)
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "labels", tuple(self.labels))
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"basis labels must be distinct: {self.labels}")
        object.__setattr__(self, "unit", tuple(sorted(int(u) for u in self.unit)))
        object.__setattr__(self, "dual", tuple(int(d) for d in self.dual))

    @property
    def rank(self) -> int:
        return len(self.labels)

    def __eq__(self, other):
        if not isinstance(other, FusionRing):
            return NotImplemented
        return (self.labels == other.labels and self.unit == other.unit
                and self.dual == other.dual and self.N.shape == other.N.shape
                and bool((self.N == other.N).all()))

    def __hash__(self):
        return hash((self.labels, self.unit, self.dual, self.N.tobytes()))

    def multiply(self, i: int, j: int) -> dict[int, int]:
        return {k: int(c) for k, c in enumerate(self.N[i, j]) if c}

    def relabel(self, labels) -> FusionRing:
        if isinstance(labels, dict):
            labels = [labels.get(x, x) for x in self.labels]
        return FusionRing(tuple(labels), self.unit, self.dual, self.N)

    def permute(self, perm) -> FusionRing:
        """Reorder the basis: new index ``a`` is old index ``perm[a]``."""
        perm = list(perm)
        inv = {old: new for new, old in enumerate(perm)}
        N = self.N[np.ix_(perm, perm, perm)]
        return FusionRing(tuple(self.labels[p] for p in perm),
                          tuple(inv[u] for u in self.unit),
                          tuple(inv[self.dual[p]] for p in perm), N)

    def is_pointed(self) -> bool:
        """Every left-multiplication matrix is a permutation matrix."""
        sums = self.N.sum(axis=2)
        return bool((sums == 1).all() and (self.N.sum(axis=1) == 1).all())


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)
    total: int = 0

    @property
    def ok(self) -> bool:
        return self.total == 0

    def add(self, msg: str, limit: int = 10):
        self.total += 1
        if len(self.violations) < limit:
            self.violations.append(msg)

    def __str__(self):
        if self.ok:
            return "ok"
        lines = [f"{self.total} violation(s)"] + self.violations
        if self.total > len(self.violations):
            lines.append("...")
        return "\n".join(lines)


def _associators(N: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(b_i b_j) b_k and b_i (b_j b_k) coefficient tensors, indexed [i, j, k, l]."""
    n = N.shape[0]
    # float matmul is exact while every partial sum stays below 2**53
    dtype = np.float64 if int(N.max(initial=0)) ** 2 * n < 2**53 else object
    A = N.astype(dtype)
    left = (A.reshape(n * n, n) @ A.reshape(n, n * n)).reshape(n, n, n, n)
    right = (A.reshape(n * n, n) @ A.transpose(1, 0, 2).reshape(n, n * n))
    return left, right.reshape(n, n, n, n).transpose(2, 0, 1, 3)


def validate(R: FusionRing, rigid: bool = True) -> ValidationReport:
    """Check associativity, the unit law and duality.

    With ``rigid=False`` the unit-coefficient duality condition is replaced by
    the anti-involution condition ``N[i,j,k] == N[j*,i*,k*]``; tables of simple
    module categories under a relative tensor product satisfy only the latter.
    """
    rep = ValidationReport()
    n = R.rank
    N = R.N
    if N.shape != (n, n, n):
        rep.add(f"structure constants have shape {N.shape}, expected {(n, n, n)}")
        return rep
    if (N < 0).any():
        for idx in np.argwhere(N < 0):
            rep.add(f"negative: N{tuple(map(int, idx))} = {N[tuple(idx)]}")
        return rep
    if len(R.dual) != n or sorted(R.dual) != list(range(n)):
        rep.add(f"dual {R.dual} is not a permutation of 0..{n - 1}")
        return rep
    if not R.unit or any(not 0 <= u < n for u in R.unit) or len(set(R.unit)) != len(R.unit):
        rep.add(f"unit {R.unit} is not a set of basis indices")
        return rep
    for i in range(n):
        if R.dual[R.dual[i]] != i:
            rep.add(f"dual is not an involution at {i}")

    left, right = _associators(N)
    for idx in ([] if np.array_equal(left, right) else np.argwhere(left != right)):
        i, j, k, l = map(int, idx)
        rep.add(f"associativity fails at (i,j,k,l)=({i},{j},{k},{l}): "
                f"{int(left[i, j, k, l])} != {int(right[i, j, k, l])}")

    eye = np.eye(n, dtype=np.int64)
    u = list(R.unit)
    for idx in np.argwhere(N[u].sum(axis=0) != eye):
        rep.add(f"left unit law fails at (j,k)=({idx[0]},{idx[1]})")
    for idx in np.argwhere(N[:, u].sum(axis=1) != eye):
        rep.add(f"right unit law fails at (j,k)=({idx[0]},{idx[1]})")

    d = list(R.dual)
    if rigid:
        expected = np.zeros((n, n), dtype=np.int64)
        expected[np.arange(n), d] = 1
        for idx in np.argwhere(N[:, :, u].sum(axis=2) != expected):
            rep.add(f"duality fails at (i,j)=({idx[0]},{idx[1]})")
    else:
        flipped = N[np.ix_(d, d, d)].transpose(1, 0, 2)
        for idx in np.argwhere(N != flipped):
            rep.add(f"anti-involution fails at (i,j,k)={tuple(map(int, idx))}")
    return rep


# ---------------------------------------------------------------------------
# constructors


def _check_rank(rank: int, cap: int | None):
    cap = default_cap() if cap is None else cap
    if rank > cap:
        raise CapExceeded(f"rank {rank} exceeds cap {cap}")


def group_ring(G: FiniteAbelianGroup, cap: int | None = None, names=None) -> FusionRing:
    _check_rank(G.order, cap)
    elems = G.elements()
    n = len(elems)
    N = np.zeros((n, n, n), dtype=np.int64)
    for i, x in enumerate(elems):
        for j, y in enumerate(elems):
            N[i, j, G.index(G.add(x, y))] = 1
    dual = [G.index(G.neg(x)) for x in elems]
    return FusionRing(tuple(G.element_name(x, names) for x in elems), (0,), tuple(dual), N)


def tambara_yamagami(G: FiniteAbelianGroup, cap: int | None = None, names=None) -> FusionRing:
    _check_rank(G.order + 1, cap)
    base = group_ring(G, cap, names)
    n = G.order
    N = np.zeros((n + 1, n + 1, n + 1), dtype=np.int64)
    N[:n, :n, :n] = base.N
    N[:n, n, n] = 1
    N[n, :n, n] = 1
    N[n, n, :n] = 1
    return FusionRing(base.labels + ("m",), (0,), base.dual + (n,), N)


def trivial_ring(label: str = "1") -> FusionRing:
    return FusionRing((label,), (0,), (0,), np.ones((1, 1, 1), dtype=np.int64))


def deligne_product(R: FusionRing, S: FusionRing, cap: int | None = None,
                    sep: str = "⊠") -> FusionRing:
    """Structure constants multiply; basis pairs ordered row-major."""
    rs = S.rank
    _check_rank(R.rank * rs, cap)
    N = np.einsum("abc,xyz->axbycz", R.N, S.N).reshape(R.rank * rs, R.rank * rs, R.rank * rs)
    labels = tuple(f"{x}{sep}{y}" for x in R.labels for y in S.labels)
    unit = tuple(u * rs + v for u in R.unit for v in S.unit)
    dual = tuple(R.dual[i] * rs + S.dual[j] for i in range(R.rank) for j in range(rs))
    return FusionRing(labels, unit, dual, N)


def direct_sum(R: FusionRing, S: FusionRing, cap: int | None = None) -> FusionRing:
    a, b = R.rank, S.rank
    _check_rank(a + b, cap)
    N = np.zeros((a + b,) * 3, dtype=np.int64)
    N[:a, :a, :a] = R.N
    N[a:, a:, a:] = S.N
    labels = R.labels + S.labels
    if set(R.labels) & set(S.labels):
        labels = tuple(f"{x}₁" for x in R.labels) + tuple(f"{x}₂" for x in S.labels)
    return FusionRing(labels, R.unit + tuple(a + u for u in S.unit),
                      R.dual + tuple(a + d for d in S.dual), N)


# ---------------------------------------------------------------------------
# Frobenius-Perron data


@dataclass(frozen=True)
class FPData:
    per_basis: tuple[float, ...]
    total: float
    integral: bool


class FPConvergenceError(RuntimeError):
    pass


def _blocks(R: FusionRing) -> list[list[int]]:
    parent = list(range(R.rank))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    # N[i,j,k] > 0 joins i with j and j with k
    links = R.N.any(axis=2) | R.N.any(axis=0)
    for a, b in np.argwhere(links):
        ra, rb = find(int(a)), find(int(b))
        if ra != rb:
            parent[ra] = rb
    groups: dict[int, list[int]] = {}
    for x in range(R.rank):
        groups.setdefault(find(x), []).append(x)
    return sorted(groups.values())


def _perron_vector(M: np.ndarray) -> np.ndarray:
    # shift by the identity so a reducible or periodic matrix still converges
    A = M + np.eye(len(M))
    v = np.ones(len(M))
    for _ in range(FP_MAX_ITER):
        w = A @ v
        w /= np.linalg.norm(w)
        if np.abs(w - v).max() < FP_TOL:
            return w
        v = w
    raise FPConvergenceError("power iteration did not converge; malformed ring?")


def _certify_integral_total(R: FusionRing, block: list[int], t: int) -> bool:
    """Exact check that ``t`` is an eigenvalue of sum_i L_i L_{i*} on the block."""
    idx = np.array(block)
    sub = R.N[np.ix_(idx, idx, idx)]
    duals = [block.index(R.dual[i]) for i in block]
    # entries are bounded by rank * max(N)**2, far from int64 overflow for capped ranks
    K = np.einsum("ijm,imk->jk", sub, sub[duals]) - t * np.eye(len(block), dtype=np.int64)
    dm = DomainMatrix([[ZZ(int(x)) for x in row] for row in K], K.shape, ZZ)
    return dm.det() == 0


def fp_data(R: FusionRing) -> FPData:
    """Frobenius-Perron dimension of each basis element, and their squared sum.

    Pointed rings are handled exactly.  Otherwise each connected block is
    solved by power iteration on the sum of its left-multiplication matrices;
    the common Perron eigenvector gives every d_i as an eigenvalue ratio.
    """
    if R.is_pointed():
        return FPData((1.0,) * R.rank, float(R.rank), True)
    dims = np.zeros(R.rank)
    integral = True
    total = 0.0
    for block in _blocks(R):
        idx = np.array(block)
        mats = {i: R.N[i][np.ix_(idx, idx)].astype(float) for i in block}
        v = _perron_vector(sum(mats.values()))
        for i in block:
            dims[i] = float(v @ mats[i] @ v) / float(v @ v)
        block_total = float((dims[idx] ** 2).sum())
        total += block_total
        t = round(block_total)
        if abs(block_total - t) >= INTEGRAL_TOL or not _certify_integral_total(R, block, t):
            integral = False
    return FPData(tuple(float(d) for d in dims), total, integral)


# ---------------------------------------------------------------------------
# rendering and JSON


def format_cell(R: FusionRing, coeffs) -> str:
    terms = []
    for k, c in enumerate(coeffs):
        if not c:
            continue
        label = R.labels[k]
        if c == 1:
            terms.append(label)
        elif label[:1].isdigit():
            terms.append(f"{c}·{label}")
        else:
            terms.append(f"{c}{label}")
    if terms:
        return " + ".join(terms)
    return ALT_EMPTY_CELL if EMPTY_CELL in R.labels else EMPTY_CELL


def parse_cell(labels, text: str) -> list[int]:
    coeffs = [0] * len(labels)
    pos = {x: i for i, x in enumerate(labels)}
    text = text.strip()
    if text == ALT_EMPTY_CELL or (text == EMPTY_CELL and text not in pos):
        return coeffs
    for term in text.split(" + "):
        term = term.strip()
        if term in pos:
            coeffs[pos[term]] += 1
            continue
        m = re.fullmatch(r"(\d+)·?(.+)", term)
        if not m or m.group(2) not in pos:
            raise ValueError(f"cannot parse table term {term!r}")
        coeffs[pos[m.group(2)]] += int(m.group(1))
    return coeffs


def table_rows(R: FusionRing, corner: str = "⊠") -> list[list[str]]:
    rows = [[corner, *R.labels]]
    for i in range(R.rank):
        rows.append([R.labels[i]] + [format_cell(R, R.N[i, j]) for j in range(R.rank)])
    return rows


def render_grid(rows: list[list[str]]) -> str:
    widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
    lines = [" | ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in rows]
    return "\n".join(lines) + "\n"


def render_markdown(R: FusionRing, corner: str = "⊠") -> str:
    rows = table_rows(R, corner)
    out = ["| " + " | ".join(rows[0]) + " |", "|" + "---|" * len(rows[0])]
    out += ["| " + " | ".join(r) + " |" for r in rows[1:]]
    return "\n".join(out) + "\n"


def render_csv(R: FusionRing, corner: str = "⊠") -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(table_rows(R, corner))
    return buf.getvalue()


def parse_grid(text: str) -> tuple[list[str], np.ndarray]:
    """Inverse of :func:`render_grid` applied to :func:`table_rows`."""
    rows = [[c.strip() for c in line.split(" | ")] for line in text.splitlines() if line.strip()]
    labels = rows[0][1:]
    n = len(labels)
    if [r[0] for r in rows[1:]] != labels:
        raise ValueError("row labels differ from column labels")
    N = np.zeros((n, n, n), dtype=np.int64)
    for i, r in enumerate(rows[1:]):
        for j, cell in enumerate(r[1:]):
            N[i, j] = parse_cell(labels, cell)
    return labels, N


class SchemaError(ValueError):
    pass


def ring_to_json(R: FusionRing) -> dict:
    return {"labels": list(R.labels), "unit": list(R.unit), "dual": list(R.dual),
            "N": R.N.tolist()}


def ring_from_json(data) -> FusionRing:
    if not isinstance(data, dict):
        raise SchemaError("ring must be a JSON object")
    for key in ("labels", "unit", "dual", "N"):
        if key not in data:
            raise SchemaError(f"missing key {key!r}")
    labels, unit, dual, N = data["labels"], data["unit"], data["dual"], data["N"]
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise SchemaError("'labels' must be a list of strings")
    n = len(labels)
    if n < 1:
        raise SchemaError("'labels' must be non-empty")
    if len(set(labels)) != n:
        raise SchemaError("'labels' must be distinct")
    for key, val in (("unit", unit), ("dual", dual)):
        if not isinstance(val, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in val):
            raise SchemaError(f"{key!r} must be a list of integers")
        if any(not 0 <= x < n for x in val):
            raise SchemaError(f"{key!r} has an index outside 0..{n - 1}")
    if len(dual) != n:
        raise SchemaError(f"'dual' has length {len(dual)}, expected {n}")
    try:
        arr = np.array(N, dtype=np.int64)
    except (ValueError, TypeError, OverflowError):
        raise SchemaError("'N' must be a rank x rank x rank array of integers") from None
    if arr.shape != (n, n, n) or not all(
            isinstance(x, int) and not isinstance(x, bool)
            for x in itertools.chain.from_iterable(itertools.chain.from_iterable(N))):
        raise SchemaError(f"'N' must have shape {(n, n, n)} with integer entries")
    return FusionRing(tuple(labels), tuple(unit), tuple(dual), arr)
