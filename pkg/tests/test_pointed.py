import json

import numpy as np
import pytest

from deligne_calc.fixtures import KLEIN_NAMES, load_table, reference_table, product_table
from deligne_calc.fusion import FPData, fp_data, group_ring, tambara_yamagami
from deligne_calc.groups import CapExceeded, group_new
from deligne_calc.pointed import (CertificateStatus, Completeness, ModuleFusionTable,
                                  UnsupportedAssociator, classify_module_simples,
                                  factorization_certificate, module_table_product,
                                  parse_paper_table, render_paper_table, table_from_json,
                                  table_to_json)


def test_cyclic_simples():
    labels = [s.label for s in classify_module_simples(group_new([6]))]
    assert labels == ["(⟨0⟩,triv)", "(⟨3⟩,triv)", "(⟨2⟩,triv)", "(⟨1⟩,triv)"]


def test_klein_simples():
    simples = classify_module_simples(group_new([2, 2]), names=KLEIN_NAMES)
    assert [s.label for s in simples] == [
        "(⟨0⟩,triv)", "(⟨a⟩,triv)", "(⟨b⟩,triv)", "(⟨c⟩,triv)", "(⟨a,b⟩,triv)", "(⟨a,b⟩,ν)"]
    assert [s.short_label for s in simples][-2:] == ["⟨a,b⟩", "ν"]


@pytest.mark.parametrize("orders,char,count", [
    ((2, 2), 2, 1),   # only the trivial subgroup survives
    ((2, 2), 3, 6),
    ((6,), 2, 2),     # <0> and <2>
    ((6,), 3, 2),     # <0> and <3>
    ((3, 3), 0, 8),   # six subgroups, three classes on the whole group
])
def test_simple_counts(orders, char, count):
    assert len(classify_module_simples(group_new(orders), char)) == count


def test_unsupported_and_caps():
    with pytest.raises(UnsupportedAssociator):
        classify_module_simples(group_new([2]), trivial_associator=False)
    with pytest.raises(ValueError):
        classify_module_simples(group_new([2]), 4)
    with pytest.raises(CapExceeded):
        classify_module_simples(group_new([4, 4]), cap=8)


def test_simple_counts_multiply_for_coprime_orders():
    for a, b in ((2, 3), (4, 3), (2, 9), (4, 5)):
        n = len(classify_module_simples(group_new([a, b])))
        assert n == len(classify_module_simples(group_new([a]))) * len(
            classify_module_simples(group_new([b])))
    # Z/2 + Z/2 has more simples than the pairs of Z/2 simples
    assert len(classify_module_simples(group_new([2, 2]))) == 6 > 2 * 2


# --- certificates -------------------------------------------------------------


def test_certificates():
    z = lambda n: fp_data(group_ring(group_new([n])))
    assert factorization_certificate(z(2), z(3)).status is CertificateStatus.CERTIFIED
    assert factorization_certificate(z(2), z(3)).reason == "gcd 1"
    cert = factorization_certificate(z(2), z(4))
    assert not cert.certified and cert.reason == "gcd 2"
    ty = fp_data(tambara_yamagami(group_new([2])))
    # total 4 is an integer, so coprimality with 3 is certified
    assert factorization_certificate(ty, z(3)).certified
    irrational = FPData((1.0, 1.618), 3.618, False)
    cert = factorization_certificate(irrational, z(2))
    assert not cert.certified and cert.reason == "non-integer FP dimension"


# --- tables ---------------------------------------------------------------------


def test_factor_tables():
    T = load_table("mod_vect_z2_beta.json")
    U = load_table("mod_vect_z3_triv.json")
    assert T.fp.total == pytest.approx(2) and U.fp.total == pytest.approx(3)
    assert U.base.multiply(1, 1) == {1: 3}
    assert T.completeness is Completeness.COMPLETE


@pytest.mark.parametrize("name,complete", [("table_2b3t.json", True), ("table_2b2b.json", False)])
def test_product_tables_match_reference(name, complete):
    labels, N, _ = reference_table(name)
    P = product_table(name)
    assert list(P.base.labels) == labels
    assert np.array_equal(P.base.N, N)
    assert (P.completeness is Completeness.COMPLETE) == complete


def test_product_of_image_only_is_image_only():
    T = load_table("mod_vect_z2_beta.json")
    U = load_table("mod_vect_z3_triv.json")
    partial = ModuleFusionTable(T.base, T.category, T.provenance, Completeness.IMAGE_ONLY)
    assert module_table_product(T, U).completeness is Completeness.COMPLETE
    assert module_table_product(partial, U).completeness is Completeness.IMAGE_ONLY


def test_product_provenance_and_category():
    T = load_table("mod_vect_z2_beta.json")
    U = load_table("mod_vect_z3_triv.json")
    P = module_table_product(T, U)
    assert "⊠" in P.provenance
    assert P.fp.total == pytest.approx(6)


def test_invalid_table_rejected():
    T = load_table("mod_vect_z3_triv.json")
    N = T.base.N.copy()
    N[1, 1, 1] = 2  # n * n = 2n is still a valid table
    type(T)(type(T.base)(T.base.labels, T.base.unit, T.base.dual, N), T.category)
    N[0, 1, 1] = 2  # breaks the unit law
    bad = type(T.base)(T.base.labels, T.base.unit, T.base.dual, N)
    with pytest.raises(ValueError):
        ModuleFusionTable(bad, T.category)


@pytest.mark.parametrize("name", ["table_2b3t.json", "table_2b2b.json"])
def test_render_parse_roundtrip(name):
    P = product_table(name)
    labels, N = parse_paper_table(render_paper_table(P, "⊠_C"))
    assert labels == list(P.base.labels)
    assert np.array_equal(N, P.base.N)


def test_render_matches_reference_text():
    text = render_paper_table(product_table("table_2b3t.json"), "⊠_C")
    rows = text.splitlines()
    assert rows[0].split(" | ")[0].strip() == "⊠_C"
    assert rows[3].split(" | ")[3].strip() == "3⟨b⟩"
    assert rows[4].split(" | ")[4].strip() == "3⟨b⟩"


def test_table_json_roundtrip():
    P = product_table("table_2b2b.json")
    Q = table_from_json(json.loads(json.dumps(table_to_json(P), ensure_ascii=False)))
    assert Q.base == P.base and Q.category == P.category
    assert Q.completeness is Completeness.IMAGE_ONLY
