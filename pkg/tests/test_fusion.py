import json

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from conftest import find_isomorphism, ring_pool
from deligne_calc.fusion import (CapExceeded, FusionRing, SchemaError, deligne_product, direct_sum,
                                 fp_data, format_cell, group_ring, parse_cell, parse_grid,
                                 render_csv, render_grid, render_markdown, ring_from_json,
                                 ring_to_json, table_rows, tambara_yamagami, trivial_ring,
                                 validate)
from deligne_calc.groups import group_new

POOL = ring_pool()
pool_rings = st.sampled_from(POOL)


def fibonacci():
    N = np.zeros((2, 2, 2), dtype=np.int64)
    N[0, 0, 0] = N[0, 1, 1] = N[1, 0, 1] = N[1, 1, 0] = N[1, 1, 1] = 1
    return FusionRing(("1", "τ"), (0,), (0, 1), N)


def test_group_ring_shape():
    R = group_ring(group_new([3]))
    assert R.labels == ("0", "1", "2")
    assert R.dual == (0, 2, 1)
    assert R.multiply(1, 2) == {0: 1}
    assert R.is_pointed()
    assert validate(R).ok


def test_tambara_yamagami_rules():
    R = tambara_yamagami(group_new([2, 2]))
    m = R.rank - 1
    assert R.labels[-1] == "m"
    assert R.multiply(m, m) == {0: 1, 1: 1, 2: 1, 3: 1}
    assert R.multiply(1, m) == {m: 1}
    assert not R.is_pointed()
    assert validate(R).ok


def test_mutation_breaks_associativity():
    R = group_ring(group_new([6]))
    N = R.N.copy()
    N[1, 1, 1] = 1
    report = validate(FusionRing(R.labels, R.unit, R.dual, N))
    assert not report.ok
    assert any("associativity" in v for v in report.violations)
    assert len(report.violations) <= 10 < report.total


def test_validate_catches_unit_and_duality():
    R = group_ring(group_new([3]))
    assert not validate(FusionRing(R.labels, (1,), R.dual, R.N)).ok
    bad_dual = validate(FusionRing(R.labels, R.unit, (0, 1, 2), R.N))
    assert any("duality" in v for v in bad_dual.violations)
    N = R.N.copy()
    N[0, 0, 0] = -1
    assert not validate(FusionRing(R.labels, R.unit, R.dual, N)).ok
    assert not validate(FusionRing(R.labels, R.unit, (0, 0, 1), R.N)).ok


def test_fibonacci_is_valid():
    assert validate(fibonacci()).ok


def test_module_table_needs_non_rigid_check():
    # n * n = 3n, with no unit term
    N = np.zeros((2, 2, 2), dtype=np.int64)
    N[0, 0, 0] = N[0, 1, 1] = N[1, 0, 1] = 1
    N[1, 1, 1] = 3
    R = FusionRing(("⟨0⟩", "⟨1⟩"), (0,), (0, 1), N)
    assert not validate(R).ok
    assert validate(R, rigid=False).ok


def test_product_of_coprime_cyclic_group_rings_is_cyclic():
    P = deligne_product(group_ring(group_new([2])), group_ring(group_new([3])))
    assert P.labels[:3] == ("0⊠0", "0⊠1", "0⊠2")
    assert find_isomorphism(group_ring(group_new([6])), P) is not None
    # Z/2 x Z/2 is not Z/4
    K = deligne_product(group_ring(group_new([2])), group_ring(group_new([2])))
    assert find_isomorphism(group_ring(group_new([4])), K) is None


def test_product_with_trivial_ring_is_identity():
    R = tambara_yamagami(group_new([3]))
    P = deligne_product(R, trivial_ring())
    assert np.array_equal(P.N, R.N) and P.dual == R.dual and P.unit == R.unit


def test_ty_times_z2():
    P = deligne_product(tambara_yamagami(group_new([2])), group_ring(group_new([2])))
    assert P.rank == 6
    assert validate(P).ok
    assert fp_data(P).total == pytest.approx(8)


def test_direct_sum_is_multifusion():
    S = direct_sum(group_ring(group_new([2])), tambara_yamagami(group_new([2])))
    assert S.unit == (0, 2)
    assert validate(S).ok
    fp = fp_data(S)
    assert fp.total == pytest.approx(6)
    assert fp.integral


def test_cap_on_products():
    R = group_ring(group_new([8]))
    with pytest.raises(CapExceeded):
        deligne_product(R, R, cap=32)
    with pytest.raises(CapExceeded):
        direct_sum(R, R, cap=10)


def test_fp_ty_z2():
    fp = fp_data(tambara_yamagami(group_new([2])))
    assert fp.per_basis == pytest.approx((1, 1, np.sqrt(2)), abs=1e-9)
    assert fp.total == pytest.approx(4)
    assert fp.integral


def test_fp_fibonacci_is_not_integral():
    fp = fp_data(fibonacci())
    phi = (1 + 5 ** 0.5) / 2
    assert fp.per_basis[1] == pytest.approx(phi, abs=1e-9)
    assert fp.total == pytest.approx(1 + phi**2)
    assert not fp.integral


@pytest.mark.parametrize("R", [R for R in POOL if R.rank <= 3] + [fibonacci()],
                         ids=lambda R: ",".join(R.labels))
def test_fp_matches_characteristic_polynomial_roots(R):
    fp = fp_data(R)
    for i in range(R.rank):
        L = sympy.Matrix(R.N[i].tolist())
        perron = max(sympy.real_roots(L.charpoly().as_expr()))
        assert fp.per_basis[i] == pytest.approx(float(perron), abs=1e-9)


@given(pool_rings, pool_rings)
@settings(max_examples=40, deadline=None)
def test_fp_multiplicative_and_additive(R, S):
    fr, fs = fp_data(R).total, fp_data(S).total
    assert abs(fp_data(deligne_product(R, S)).total - fr * fs) < 1e-6
    if R.rank + S.rank <= 16:
        assert abs(fp_data(direct_sum(R, S)).total - (fr + fs)) < 1e-6


@given(pool_rings, pool_rings)
@settings(max_examples=25, deadline=None)
def test_product_is_valid_and_dual_compatible(R, S):
    P = deligne_product(R, S)
    assert validate(P).ok
    s = S.rank
    for i in range(R.rank):
        for j in range(s):
            assert P.dual[i * s + j] == R.dual[i] * s + S.dual[j]


@given(st.permutations(range(5)))
def test_permute_preserves_validity(perm):
    R = tambara_yamagami(group_new([2, 2]))
    Q = R.permute(perm)
    assert validate(Q).ok
    assert Q.labels == tuple(R.labels[p] for p in perm)
    assert fp_data(Q).total == pytest.approx(fp_data(R).total)


def test_relabel():
    R = tambara_yamagami(group_new([2]))
    Q = R.relabel(["⟨0⟩", "a", "m"])
    assert Q.labels == ("⟨0⟩", "a", "m")
    assert format_cell(Q, Q.N[2, 2]) == "⟨0⟩ + a"
    assert R.relabel({"1": "a"}).labels == ("0", "a", "m")


def test_format_cell():
    R = trivial_ring()
    assert format_cell(R, R.N[0, 0]) == "1"
    N = np.zeros((2, 2, 2), dtype=np.int64)
    N[0, 0, 0] = N[0, 1, 1] = N[1, 0, 1] = 1
    N[1, 1, 1] = 3
    T = FusionRing(("⟨0⟩", "⟨b⟩"), (0,), (0, 1), N)
    assert format_cell(T, T.N[1, 1]) == "3⟨b⟩"
    assert format_cell(T, [0, 0]) == "0"
    D = FusionRing(("0", "1"), (0,), (0, 1), N)
    assert format_cell(D, D.N[1, 1]) == "3·1"
    assert parse_cell(D.labels, "3·1") == [0, 3]
    with pytest.raises(ValueError):
        parse_cell(D.labels, "2x")


@given(pool_rings)
@settings(max_examples=30, deadline=None)
def test_grid_roundtrip(R):
    labels, N = parse_grid(render_grid(table_rows(R)))
    assert labels == list(R.labels)
    assert np.array_equal(N, R.N)


def test_markdown_and_csv():
    R = group_ring(group_new([2]))
    md = render_markdown(R)
    assert md.splitlines()[0] == "| ⊠ | 0 | 1 |"
    assert md.splitlines()[1] == "|---|---|---|"
    assert render_csv(R) == "⊠,0,1\n0,0,1\n1,1,0\n"


@given(pool_rings)
@settings(max_examples=30, deadline=None)
def test_json_roundtrip(R):
    assert ring_from_json(json.loads(json.dumps(ring_to_json(R)))) == R


@pytest.mark.parametrize("mutate", [
    lambda d: d.pop("N"),
    lambda d: d.update(labels="ab"),
    lambda d: d.update(labels=[]),
    lambda d: d.update(labels=["0", "0"]),
    lambda d: d.update(unit=[5]),
    lambda d: d.update(dual=[0]),
    lambda d: d.update(dual=[0, True]),
    lambda d: d.update(N=[[[1]]]),
    lambda d: d.update(N=[[[1, 0], [0, 1]], [[0, 1], [1, "x"]]]),
    lambda d: d.update(N=[[[1, 0], [0, 1]], [[0, 1], [1, 0.5]]]),
])
def test_schema_errors(mutate):
    data = ring_to_json(group_ring(group_new([2])))
    mutate(data)
    with pytest.raises(SchemaError):
        ring_from_json(data)
    with pytest.raises(SchemaError):
        ring_from_json([1, 2])


def test_empty_cell_with_zero_label():
    N = np.zeros((2, 2, 2), dtype=np.int64)
    N[0, 0, 0] = N[0, 1, 1] = N[1, 0, 1] = 1
    R = FusionRing(("0", "1"), (0,), (0, 1), N)
    assert format_cell(R, R.N[1, 1]) == "∅"
    assert format_cell(R, R.N[0, 0]) == "0"
    assert parse_cell(R.labels, "0") == [1, 0]
    assert parse_cell(R.labels, "∅") == [0, 0]
    assert parse_cell(["x"], "0") == [0]


def test_direct_sum_labels_stay_distinct():
    R = group_ring(group_new([2]))
    assert direct_sum(R, R).labels == ("0₁", "1₁", "0₂", "1₂")
    assert direct_sum(R, trivial_ring("e")).labels == ("0", "1", "e")
    with pytest.raises(ValueError):
        FusionRing(("x", "x"), (0,), (0, 1), np.zeros((2, 2, 2)))
