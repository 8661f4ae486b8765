"""Finite abelian groups, their subgroups, and H^2(H, k*) for trivial coefficients.

Groups are direct sums of cyclic groups ``Z/n_1 + ... + Z/n_r`` with elements
stored as residue tuples.  Subgroups are kept in a canonical form (a greedy
generating set taken in element-index order) so that two subgroups compare
equal exactly when they have the same elements.

H^2(H, k*) for an abelian H and an algebraically closed field k is the group
of alternating bicharacters on H with values in k*.  Writing H as a sum of
cyclic groups of orders n_i, it is the sum over pairs i < j of cyclic groups
of order gcd(n_i, n_j), with the p-part removed in characteristic p.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from functools import cached_property, lru_cache, reduce
from math import gcd, prod

import numpy as np
from numba import njit
from sympy import factorint, isprime

DEFAULT_CAP = 10_000
BRUTE_FORCE_LIMIT = 16

Element = tuple[int, ...]


class CapExceeded(ValueError):
    """A size limit on a group, ring or enumeration was exceeded."""


def default_cap() -> int:
    """Group-order cap, overridable through the ``FUSION_CAP`` environment variable."""
    raw = os.environ.get("FUSION_CAP")
    if raw is None:
        return DEFAULT_CAP
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"FUSION_CAP must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"FUSION_CAP must be positive, got {value}")
    return value


def check_char(char: int) -> int:
    if char != 0 and not (isinstance(char, int) and char > 1 and isprime(char)):
        raise ValueError(f"characteristic must be 0 or a prime, got {char!r}")
    return char


def strip_char(n: int, char: int) -> int:
    """Remove every factor ``char`` from ``n`` (no-op in characteristic 0)."""
    if char == 0:
        return n
    while n % char == 0:
        n //= char
    return n


@dataclass(frozen=True)
class FiniteAbelianGroup:
    orders: tuple[int, ...] = ()

    @property
    def order(self) -> int:
        return prod(self.orders)

    @property
    def exponent(self) -> int:
        return reduce(lambda a, b: a * b // gcd(a, b), self.orders, 1)

    @property
    def zero(self) -> Element:
        return (0,) * len(self.orders)

    def add(self, x: Element, y: Element) -> Element:
        return tuple((a + b) % n for a, b, n in zip(x, y, self.orders))

    def neg(self, x: Element) -> Element:
        return tuple(-a % n for a, n in zip(x, self.orders))

    def scale(self, k: int, x: Element) -> Element:
        return tuple(k * a % n for a, n in zip(x, self.orders))

    def index(self, x: Element) -> int:
        # mixed radix, first factor least significant
        i, step = 0, 1
        for a, n in zip(x, self.orders):
            i += a * step
            step *= n
        return i

    def element(self, i: int) -> Element:
        out = []
        for n in self.orders:
            i, a = divmod(i, n)
            out.append(a)
        return tuple(out)

    def elements(self) -> list[Element]:
        return [self.element(i) for i in range(self.order)]

    def element_order(self, x: Element) -> int:
        return reduce(lambda a, b: a * b // gcd(a, b),
                      (n // gcd(a, n) for a, n in zip(x, self.orders)), 1)

    def element_name(self, x: Element, names: dict[Element, str] | None = None) -> str:
        """Display name: residues for cyclic groups, ``a``, ``b``, ``2a+b``... otherwise."""
        x = tuple(x)
        if names and x in names:
            return names[x]
        if x == self.zero:
            return "0"
        if len(self.orders) == 1:
            return str(x[0])
        terms = []
        for k, a in enumerate(x):
            if a:
                letter = chr(ord("a") + k) if k < 26 else f"g{k}"
                terms.append(letter if a == 1 else f"{a}{letter}")
        return "+".join(terms)


def group_new(orders, cap: int | None = None) -> FiniteAbelianGroup:
    orders = tuple(int(n) for n in orders)
    for n in orders:
        if n < 2:
            raise ValueError(f"cyclic factor orders must be >= 2, got {n}")
    cap = default_cap() if cap is None else cap
    if prod(orders) > cap:
        raise CapExceeded(f"group order {prod(orders)} exceeds cap {cap}")
    return FiniteAbelianGroup(orders)


def _cyclic_span(G: FiniteAbelianGroup, g: Element) -> frozenset[Element]:
    out = {G.zero}
    x = g
    while x not in out:
        out.add(x)
        x = G.add(x, g)
    return frozenset(out)


def _sumset(G: FiniteAbelianGroup, S, T) -> frozenset[Element]:
    return frozenset(G.add(s, t) for s in S for t in T)


def _canonical_basis(G: FiniteAbelianGroup, elements: frozenset[Element]) -> tuple[Element, ...]:
    basis = []
    span = frozenset([G.zero])
    for x in sorted(elements, key=G.index):
        if x not in span:
            basis.append(x)
            span = _sumset(G, span, _cyclic_span(G, x))
            if len(span) == len(elements):
                break
    return tuple(basis)


@dataclass(frozen=True)
class Subgroup:
    ambient: FiniteAbelianGroup
    basis: tuple[Element, ...] = field(default=())

    @cached_property
    def elements(self) -> frozenset[Element]:
        G = self.ambient
        span = frozenset([G.zero])
        for g in self.basis:
            span = _sumset(G, span, _cyclic_span(G, g))
        return span

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def sort_key(self) -> tuple:
        return (self.order, tuple(self.ambient.index(b) for b in self.basis))

    def __contains__(self, x) -> bool:
        return tuple(x) in self.elements

    def canonical(self) -> Subgroup:
        return Subgroup(self.ambient, _canonical_basis(self.ambient, self.elements))

    @cached_property
    def invariant_factors(self) -> tuple[int, ...]:
        """Orders n_1 | n_2 | ... | n_r with H isomorphic to the sum of Z/n_i."""
        G = self.ambient
        per_prime = []
        for p in factorint(self.order):
            counts = [1]
            k = 1
            while True:
                c = sum(1 for h in self.elements if G.scale(p**k, h) == G.zero)
                counts.append(c)
                if c == counts[-2]:
                    break
                k += 1
            # at_least[k] = number of cyclic p-factors with exponent >= k+1
            at_least = []
            for prev, cur in zip(counts, counts[1:]):
                ratio = cur // prev
                s = 0
                while ratio > 1:
                    ratio //= p
                    s += 1
                at_least.append(s)
            exps = sorted((sum(1 for a in at_least if a > i) for i in range(at_least[0])), reverse=True)
            per_prime.append((p, exps))
        r = max((len(e) for _, e in per_prime), default=0)
        factors = [1] * r
        for p, exps in per_prime:
            for i, e in enumerate(exps):
                factors[r - 1 - i] *= p**e
        return tuple(factors)

    def label(self, names: dict[Element, str] | None = None) -> str:
        if not self.basis:
            return "⟨0⟩"
        return "⟨" + ",".join(self.ambient.element_name(b, names) for b in self.basis) + "⟩"


def subgroup_generated_by(G: FiniteAbelianGroup, gens) -> Subgroup:
    gens = [tuple(int(a) % n for a, n in zip(g, G.orders)) for g in gens]
    for g in gens:
        if len(g) != len(G.orders):
            raise ValueError(f"element {g} does not match group {G.orders}")
    return Subgroup(G, tuple(gens)).canonical()


def enumerate_subgroups(G: FiniteAbelianGroup, cap: int | None = None) -> list[Subgroup]:
    """All subgroups of G, each once, sorted by (order, canonical basis)."""
    cap = default_cap() if cap is None else cap
    if G.order > cap:
        raise CapExceeded(f"group order {G.order} exceeds cap {cap}")
    cyclic = {_cyclic_span(G, g) for g in G.elements()}
    trivial = frozenset([G.zero])
    seen = {trivial}
    frontier = [trivial]
    while frontier:
        nxt = []
        for S in frontier:
            for C in cyclic:
                if C <= S:
                    continue
                T = _sumset(G, S, C)
                if T not in seen:
                    seen.add(T)
                    nxt.append(T)
        frontier = nxt
    subs = [Subgroup(G, _canonical_basis(G, S)) for S in seen]
    return sorted(subs, key=lambda H: H.sort_key)


# ---------------------------------------------------------------------------
# H^2(H, k*)


def h2_invariants(H: Subgroup, char: int = 0) -> list[int]:
    check_char(char)
    n = H.invariant_factors
    out = []
    for i, j in itertools.combinations(range(len(n)), 2):
        m = strip_char(gcd(n[i], n[j]), char)
        if m > 1:
            out.append(m)
    return out


@dataclass(frozen=True)
class H2Class:
    subgroup: Subgroup
    residues: tuple[int, ...]
    moduli: tuple[int, ...]

    def __post_init__(self):
        if len(self.residues) != len(self.moduli):
            raise ValueError("residues and moduli differ in length")
        for r, m in zip(self.residues, self.moduli):
            if not 0 <= r < m:
                raise ValueError(f"residue {r} outside [0, {m})")

    @property
    def is_trivial(self) -> bool:
        return not any(self.residues)

    def __add__(self, other: H2Class) -> H2Class:
        if other.subgroup != self.subgroup or other.moduli != self.moduli:
            raise ValueError("classes live on different subgroups")
        res = tuple((a + b) % m for a, b, m in zip(self.residues, other.residues, self.moduli))
        return H2Class(self.subgroup, res, self.moduli)

    @property
    def label(self) -> str:
        if self.is_trivial:
            return "triv"
        if prod(self.moduli) == 2:
            return "ν"
        return "ψ[" + ",".join(map(str, self.residues)) + "]"


def h2_classes(H: Subgroup, char: int = 0, cap: int | None = None) -> list[H2Class]:
    moduli = tuple(h2_invariants(H, char))
    cap = default_cap() if cap is None else cap
    if prod(moduli) > cap:
        raise CapExceeded(f"{prod(moduli)} cohomology classes exceed cap {cap}")
    return [H2Class(H, res, moduli) for res in itertools.product(*(range(m) for m in moduli))]


@njit(cache=True)
def _smith_valuations(A, p, e):  # pragma: no cover - compiled
    """Eliminate A over Z/p^e in place; return pivot valuations (-1 padded)."""
    q = p**e
    nrows, ncols = A.shape
    vals = np.full(ncols, -1, np.int64)
    row_alive = np.ones(nrows, np.bool_)
    col_alive = np.ones(ncols, np.bool_)
    for step in range(ncols):
        # entry of minimal valuation among live rows/columns
        best_v = e
        br = -1
        bc = -1
        for i in range(nrows):
            if not row_alive[i]:
                continue
            for j in range(ncols):
                x = A[i, j]
                if x == 0 or not col_alive[j]:
                    continue
                v = 0
                while x % p == 0:
                    x //= p
                    v += 1
                if v < best_v:
                    best_v, br, bc = v, i, j
                    if v == 0:
                        break
            if best_v == 0:
                break
        if br < 0:
            break
        pv = p**best_v
        unit = A[br, bc] // pv
        inv = 1
        # inverse of a unit mod q by brute force search over residues
        for t in range(1, q):
            if (unit * t) % q == 1:
                inv = t
                break
        for i in range(nrows):
            if i == br or not row_alive[i] or A[i, bc] == 0:
                continue
            f = (A[i, bc] // pv) * inv % q
            for j in range(ncols):
                if col_alive[j]:
                    A[i, j] = (A[i, j] - f * A[br, j]) % q
        row_alive[br] = False
        col_alive[bc] = False
        vals[step] = best_v
    return vals


def _kernel_size_prime_power(M: np.ndarray, p: int, e: int) -> int:
    """Number of x in (Z/p^e)^n with M x = 0, via Smith-style elimination."""
    A = np.ascontiguousarray(np.asarray(M, dtype=np.int64) % p**e)
    if A.size == 0:
        return p ** (e * A.shape[1])
    vals = _smith_valuations(A, p, e)
    used = vals[vals >= 0]
    return p ** (int(used.sum()) + e * (A.shape[1] - used.size))


def kernel_size_mod(M, m: int) -> int:
    """|{x in (Z/m)^n : M x = 0 mod m}| for an integer matrix M."""
    M = np.asarray(M, dtype=np.int64)
    if m == 1:
        return 1
    return prod(_kernel_size_prime_power(M, p, e) for p, e in factorint(m).items())


def h2_brute_force_count(H: Subgroup, char: int = 0, limit: int = BRUTE_FORCE_LIMIT) -> int:
    """Count H^2(H, k*) straight from the cocycle identity.

    Normalized 2-cochains valued in mu_m (m = p'-part of exponent(H)*|H|) form
    (Z/m)^((|H|-1)^2).  Every cocycle is checked against all triples, and the
    class in H^2(H, k*) is read off its commutator f(g,h) - f(h,g); the number
    of distinct commutator forms is |Z^2| / |symmetric Z^2|.
    """
    check_char(char)
    if H.order > limit:
        raise CapExceeded(f"brute force needs |H| <= {limit}, got {H.order}")
    m = strip_char(_exponent(H) * H.order, char)
    if m == 1 or H.order == 1:
        return 1
    return _commutator_form_count(H, m)


@lru_cache(maxsize=256)
def _commutator_form_count(H: Subgroup, m: int) -> int:
    G = H.ambient
    nonzero = sorted((h for h in H.elements if h != G.zero), key=G.index)
    pos = {h: i for i, h in enumerate(nonzero)}
    k = len(nonzero)

    def var(g, h):
        if g == G.zero or h == G.zero:
            return None
        return pos[g] * k + pos[h]

    rows = []
    for g, h, l in itertools.product(nonzero, repeat=3):
        row = np.zeros(k * k, dtype=np.int64)
        for sign, idx in ((1, var(h, l)), (-1, var(G.add(g, h), l)),
                          (1, var(g, G.add(h, l))), (-1, var(g, h))):
            if idx is not None:
                row[idx] += sign
        if row.any():
            rows.append(row)
    # many triples give the same equation; duplicates do not change the kernel
    cocycle = np.unique(np.array(rows).reshape(-1, k * k), axis=0)
    sym = []
    for g, h in itertools.combinations(nonzero, 2):
        row = np.zeros(k * k, dtype=np.int64)
        row[var(g, h)] += 1
        row[var(h, g)] -= 1
        sym.append(row)
    both = np.vstack([cocycle, np.array(sym).reshape(-1, k * k)])
    z2 = kernel_size_mod(cocycle, m)
    z2_sym = kernel_size_mod(both, m)
    count, rem = divmod(z2, z2_sym)
    assert rem == 0
    return count


def _exponent(H: Subgroup) -> int:
    return reduce(lambda a, b: a * b // gcd(a, b),
                  (H.ambient.element_order(h) for h in H.elements), 1)


def full_subgroup(G: FiniteAbelianGroup) -> Subgroup:
    gens = [tuple(int(i == k) for i in range(len(G.orders))) for k in range(len(G.orders))]
    return subgroup_generated_by(G, gens)


# ---------------------------------------------------------------------------
# JSON


def group_to_json(G: FiniteAbelianGroup) -> dict:
    return {"orders": list(G.orders)}


def group_from_json(data: dict, cap: int | None = None) -> FiniteAbelianGroup:
    return group_new(data["orders"], cap=cap)


def subgroup_to_json(H: Subgroup) -> dict:
    return {"orders": list(H.ambient.orders), "basis": [list(b) for b in H.basis]}


def subgroup_from_json(data: dict, cap: int | None = None) -> Subgroup:
    return subgroup_generated_by(group_new(data["orders"], cap=cap), data["basis"])


def h2_class_to_json(c: H2Class) -> dict:
    return {"residues": list(c.residues), "moduli": list(c.moduli)}


def h2_class_from_json(data: dict, H: Subgroup) -> H2Class:
    return H2Class(H, tuple(data["residues"]), tuple(data["moduli"]))
