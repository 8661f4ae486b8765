"""Simple module categories over Vect_G and fusion tables of their 2-Deligne products.

For trivial associator, indecomposable module categories over Vect_G are
classified by pairs (H, psi) with H <= G and psi in H^2(H, k*).  In positive
characteristic p only subgroups of order prime to p give separable module
categories, so the rest are filtered out.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd

from .fusion import (FPData, FusionRing, deligne_product, fp_data, render_grid,
                     ring_from_json, ring_to_json, table_rows, validate, parse_grid)
from .groups import (Element, FiniteAbelianGroup, H2Class, Subgroup, check_char,
                     default_cap, enumerate_subgroups, h2_classes, CapExceeded)


class UnsupportedAssociator(NotImplementedError):
    pass


@dataclass(frozen=True)
class ModuleSimple:
    subgroup: Subgroup
    cls: H2Class
    names: tuple[tuple[Element, str], ...] = ()

    @property
    def label(self) -> str:
        return f"({self.subgroup.label(dict(self.names))},{self.cls.label})"

    @property
    def short_label(self) -> str:
        """Table label: trivial classes dropped, (H, ν) written as ν."""
        if self.cls.is_trivial:
            return self.subgroup.label(dict(self.names))
        if self.cls.label == "ν":
            return "ν"
        return self.label


def classify_module_simples(G: FiniteAbelianGroup, char: int = 0, *,
                            trivial_associator: bool = True,
                            names: dict[Element, str] | None = None,
                            cap: int | None = None) -> list[ModuleSimple]:
    if not trivial_associator:
        raise UnsupportedAssociator("only the trivial associator on Vect_G is supported")
    check_char(char)
    cap = default_cap() if cap is None else cap
    if G.order > cap:
        raise CapExceeded(f"group order {G.order} exceeds cap {cap}")
    frozen_names = tuple(sorted((names or {}).items()))
    out = []
    for H in enumerate_subgroups(G, cap=cap):
        if char and H.order % char == 0:
            continue
        for c in h2_classes(H, char, cap=cap):
            out.append(ModuleSimple(H, c, frozen_names))
    return out


# ---------------------------------------------------------------------------
# fusion tables


class Completeness(str, enum.Enum):
    COMPLETE = "Complete"
    IMAGE_ONLY = "ImageOnly"


@dataclass(frozen=True)
class ModuleFusionTable:
    """Multiplication table of simple objects, plus the fusion category it is built over.

    ``category`` is the Grothendieck ring of the (braided) fusion category whose
    module 2-category the table describes; its FP dimension is the FP
    dimension of that connected 2-category.
    """
    base: FusionRing
    category: FusionRing
    provenance: str = ""
    completeness: Completeness = Completeness.COMPLETE

    def __post_init__(self):
        report = validate(self.base, rigid=False)
        if not report.ok:
            raise ValueError(f"invalid module fusion table:\n{report}")
        object.__setattr__(self, "completeness", Completeness(self.completeness))

    @property
    def fp(self) -> FPData:
        return fp_data(self.category)

    def relabel(self, labels) -> ModuleFusionTable:
        return ModuleFusionTable(self.base.relabel(labels), self.category,
                                 self.provenance, self.completeness)


class CertificateStatus(str, enum.Enum):
    CERTIFIED = "Certified"
    NOT_CERTIFIED = "NotCertified"


@dataclass(frozen=True)
class FactorizationCertificate:
    status: CertificateStatus
    reason: str

    @property
    def certified(self) -> bool:
        return self.status is CertificateStatus.CERTIFIED


def factorization_certificate(f: FPData, g: FPData) -> FactorizationCertificate:
    """Certified when both FP dimensions are certified integers and coprime."""
    if not (f.integral and g.integral):
        return FactorizationCertificate(CertificateStatus.NOT_CERTIFIED,
                                        "non-integer FP dimension")
    d = gcd(round(f.total), round(g.total))
    status = CertificateStatus.CERTIFIED if d == 1 else CertificateStatus.NOT_CERTIFIED
    return FactorizationCertificate(status, f"gcd {d}")


def module_table_product(T: ModuleFusionTable, U: ModuleFusionTable) -> ModuleFusionTable:
    base = deligne_product(T.base, U.base)
    category = deligne_product(T.category, U.category)
    cert = factorization_certificate(T.fp, U.fp)
    complete = (cert.certified and T.completeness is Completeness.COMPLETE
                and U.completeness is Completeness.COMPLETE)
    return ModuleFusionTable(
        base, category, f"{T.provenance} ⊠ {U.provenance}".strip(" ⊠"),
        Completeness.COMPLETE if complete else Completeness.IMAGE_ONLY)


def render_paper_table(T: ModuleFusionTable | FusionRing, corner: str = "⊠") -> str:
    base = T.base if isinstance(T, ModuleFusionTable) else T
    return render_grid(table_rows(base, corner))


def parse_paper_table(text: str):
    """(labels, N) from a grid produced by :func:`render_paper_table`."""
    return parse_grid(text)


def table_to_json(T: ModuleFusionTable) -> dict:
    data = ring_to_json(T.base)
    data["category"] = ring_to_json(T.category)
    data["provenance"] = T.provenance
    data["completeness"] = T.completeness.value
    return data


def table_from_json(data: dict) -> ModuleFusionTable:
    base = ring_from_json(data)
    category = ring_from_json(data["category"])
    return ModuleFusionTable(base, category, data.get("provenance", ""),
                             Completeness(data.get("completeness", "Complete")))
