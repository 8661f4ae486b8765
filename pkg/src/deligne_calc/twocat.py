"""Compact semisimple 2-categories modelled by their connected components.

Each component is represented by the endomorphism fusion ring of one simple
object.  Products follow the 2-Deligne tensor product: over an algebraically
closed field components pair up, over R a pair of components splits according
to the Wedderburn decomposition of the tensor product of their endomorphism
division algebras.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .fusion import (FPData, FusionRing, deligne_product, fp_data, group_ring, ring_from_json,
                     ring_to_json, trivial_ring)
from .groups import Element, FiniteAbelianGroup
from .pointed import classify_module_simples, factorization_certificate
from .real_algebras import ALG_CLOSED, FieldDescriptor, SemisimpleAlgebra, algebra, tensor


@dataclass(frozen=True, eq=False)
class Component2Cat:
    id: str
    endo_ring: FusionRing
    real_model: SemisimpleAlgebra | None = None
    name: str = ""

    def __post_init__(self):
        if not self.name:
            object.__setattr__(self, "name", self.id)

    @property
    def fp(self) -> FPData:
        return fp_data(self.endo_ring)


@dataclass(frozen=True, eq=False)
class Compact2CatModel:
    field: FieldDescriptor
    components: tuple[Component2Cat, ...]
    simples: tuple[tuple[str, str], ...] = ()
    hom_counts: np.ndarray | None = None

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "simples", tuple((str(a), str(b)) for a, b in self.simples))
        ids = [c.id for c in self.components]
        if len(set(ids)) != len(ids):
            raise ValueError("component ids must be unique")
        for c in self.components:
            if self.field.is_real and c.real_model is None:
                raise ValueError(f"component {c.id} needs a real_model over R")
            if c.real_model is not None and c.real_model.field != self.field:
                raise ValueError(f"component {c.id} has a model over the wrong field")
        for label, cid in self.simples:
            if cid not in ids:
                raise ValueError(f"simple {label} refers to unknown component {cid}")
        if self.hom_counts is not None:
            H = np.array(self.hom_counts, dtype=np.int64)
            n = len(self.simples)
            if H.shape != (n, n):
                raise ValueError(f"hom_counts must be {n}x{n}")
            comp = [cid for _, cid in self.simples]
            for i, j in itertools.product(range(n), repeat=2):
                if H[i, j] < 0 or (H[i, j] > 0) != (comp[i] == comp[j]) or (i == j and H[i, i] < 1):
                    raise ValueError(f"hom_counts[{i}][{j}] = {H[i, j]} is inconsistent "
                                     "with the component assignment")
            H.setflags(write=False)
            object.__setattr__(self, "hom_counts", H)

    def component(self, cid: str) -> Component2Cat:
        for c in self.components:
            if c.id == cid:
                return c
        raise KeyError(cid)


def pi0(C: Compact2CatModel) -> int:
    return len(C.components)


def _check_same_field(C: Compact2CatModel, D: Compact2CatModel):
    if C.field != D.field:
        raise ValueError(f"field mismatch: {C.field} vs {D.field}")


def _split_pair(field: FieldDescriptor, c: Component2Cat, d: Component2Cat) -> list[Component2Cat]:
    pid = f"{c.id}⊡{d.id}"
    if not field.is_real:
        return [Component2Cat(pid, deligne_product(c.endo_ring, d.endo_ring),
                              name=f"{c.name}⊡{d.name}")]
    factors = tensor(c.real_model, d.real_model).factors
    if len(factors) > 1 and (c.endo_ring.rank > 1 or d.endo_ring.rank > 1):
        raise NotImplementedError(
            "splitting a component pair over R is only modelled for rank-1 endomorphism rings")
    out = []
    for i, (_, tag) in enumerate(factors):
        endo = deligne_product(c.endo_ring, d.endo_ring) if len(factors) == 1 else trivial_ring()
        # Morita-reduce M_n(D) to D
        model = algebra(field, (1, tag))
        name = f"Mod(Vect_{tag})" if endo.rank == 1 else f"{c.name}⊡{d.name}#{i}"
        out.append(Component2Cat(f"{pid}#{i}", endo, model, name))
    return out


def product_components(C: Compact2CatModel, D: Compact2CatModel) -> Compact2CatModel:
    _check_same_field(C, D)
    comps = []
    split: dict[tuple[str, str], list[str]] = {}
    for c, d in itertools.product(C.components, D.components):
        parts = _split_pair(C.field, c, d)
        comps.extend(parts)
        split[c.id, d.id] = [p.id for p in parts]
    simples = []
    for (x, cx), (y, cy) in itertools.product(C.simples, D.simples):
        ids = split[cx, cy]
        if len(ids) == 1 and not C.field.is_real:
            simples.append((f"{x}⊡{y}", ids[0]))
        else:
            simples.extend((f"{x}⊡{y}#{i}", pid) for i, pid in enumerate(ids))
    hom = None
    if not C.field.is_real and C.hom_counts is not None and D.hom_counts is not None:
        hom = hom_count_product(C, D)
    return Compact2CatModel(C.field, tuple(comps), tuple(simples), hom)


def pair_summands(C: Compact2CatModel, D: Compact2CatModel, x: str, y: str) -> list[tuple[str, str]]:
    """Simple summands (label, component id) of the product of simples x and y."""
    P = product_components(C, D)
    prefix = f"{x}⊡{y}"
    return [(label, cid) for label, cid in P.simples
            if label == prefix or label.startswith(prefix + "#")]


@dataclass(frozen=True)
class SimplesOfProduct:
    status: str  # "Complete" or "Partial"
    pairs: tuple[tuple[str, str, str], ...] = field(default=())  # (x, y, component id)

    @property
    def complete(self) -> bool:
        return self.status == "Complete"


def simples_of_product(C: Compact2CatModel, D: Compact2CatModel) -> SimplesOfProduct:
    """Pairs of simples, which exhaust the product's simples when FP dimensions are coprime."""
    _check_same_field(C, D)
    if C.field.is_real:
        raise ValueError("simple objects of a product over R are not classified by pairs")
    complete = all(factorization_certificate(c.fp, d.fp).certified
                   for c, d in itertools.product(C.components, D.components))
    pairs = []
    for c, d in itertools.product(C.components, D.components):
        for x, cx in C.simples:
            if cx != c.id:
                continue
            for y, cy in D.simples:
                if cy == d.id:
                    pairs.append((x, y, f"{c.id}⊡{d.id}"))
    return SimplesOfProduct("Complete" if complete else "Partial", tuple(pairs))


def hom_count_product(C: Compact2CatModel, D: Compact2CatModel) -> np.ndarray:
    """Simple counts of Hom-categories between pairs of simples, in row-major pair order."""
    _check_same_field(C, D)
    if C.field.is_real:
        raise ValueError("hom-count products need an algebraically closed field")
    if C.hom_counts is None or D.hom_counts is None:
        raise ValueError("both models need hom_counts")
    return np.kron(C.hom_counts, D.hom_counts)


# ---------------------------------------------------------------------------
# ready-made models


def pointed_model(G: FiniteAbelianGroup, char: int = 0, *, cid: str | None = None,
                  names: dict[Element, str] | None = None) -> Compact2CatModel:
    """Mod(Vect_G): one component whose generator Vect_G has endomorphisms Vect_G."""
    cid = cid or "Mod(Vect_" + ("+".join(f"Z/{n}" for n in G.orders) or "1") + ")"
    comp = Component2Cat(cid, group_ring(G, names=names))
    simples = tuple((s.label, cid) for s in classify_module_simples(G, char, names=names))
    field = ALG_CLOSED if char == 0 else FieldDescriptor("AC", char)
    return Compact2CatModel(field, (comp,), simples)


def vect_model(field: FieldDescriptor, division: str = "R") -> Compact2CatModel:
    """Mod(Vect_D) for a division algebra D over the ground field (one simple object)."""
    cid = f"Mod(Vect_{division})" if field.is_real else "Mod(Vect)"
    model = algebra(field, (1, division)) if field.is_real else None
    comp = Component2Cat(cid, trivial_ring(), model)
    return Compact2CatModel(field, (comp,), ((f"Vect_{division}" if field.is_real else "Vect", cid),),
                            np.ones((1, 1), dtype=np.int64))


def model_to_json(C: Compact2CatModel) -> dict:
    comps = []
    for c in C.components:
        entry = {"id": c.id, "name": c.name, "endo_ring": ring_to_json(c.endo_ring)}
        if c.real_model is not None:
            entry["real_model"] = c.real_model.to_json()
        comps.append(entry)
    data = {"field": C.field.to_json(), "components": comps,
            "simples": [list(s) for s in C.simples]}
    if C.hom_counts is not None:
        data["hom_counts"] = C.hom_counts.tolist()
    return data


def model_from_json(data: dict) -> Compact2CatModel:
    field = FieldDescriptor.from_json(data["field"])
    comps = []
    for entry in data["components"]:
        real = entry.get("real_model")
        comps.append(Component2Cat(entry["id"], ring_from_json(entry["endo_ring"]),
                                   SemisimpleAlgebra.from_json(real) if real else None,
                                   entry.get("name", "")))
    return Compact2CatModel(field, tuple(comps), tuple(tuple(s) for s in data.get("simples", [])),
                            data.get("hom_counts"))
