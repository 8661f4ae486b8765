"""Named worked examples: the pipelines behind ``deligne-calc example <id>``."""
from __future__ import annotations

import csv
import io
import json
from importlib import resources

import numpy as np

from .fusion import parse_cell, render_csv, table_rows, render_grid
from .groups import group_new, h2_class_to_json, subgroup_to_json
from .pointed import (ModuleFusionTable, classify_module_simples, factorization_certificate,
                      module_table_product, table_from_json, table_to_json)
from .real_algebras import ALG_CLOSED, CPLX, REALS
from .twocat import pi0, pointed_model, product_components, simples_of_product, vect_model

FIXTURE_IDS = ("mod6", "mod22", "vect-r", "table-2b3t", "table-2b2b", "coprime-demo")
FORMATS = ("text", "json", "csv")

# names of the nonzero elements of Z/2 + Z/2 used in the worked example
KLEIN_NAMES = {(1, 0): "a", (0, 1): "b", (1, 1): "c"}


def load_json(name: str) -> dict:
    return json.loads(resources.files("deligne_calc.data").joinpath(name).read_text("utf-8"))


def load_table(name: str) -> ModuleFusionTable:
    return table_from_json(load_json(name))


def golden_path(fixture_id: str, fmt: str):
    ext = {"text": "txt", "json": "json", "csv": "csv"}[fmt]
    return resources.files("deligne_calc.data").joinpath("golden", f"{fixture_id}.{ext}")


def reference_table(name: str) -> tuple[list[str], np.ndarray, dict]:
    """The reference table stored in a fixture: (labels, N, metadata)."""
    meta = load_json(name)
    labels = meta["labels"]
    n = len(labels)
    N = np.zeros((n, n, n), dtype=np.int64)
    for i, row in enumerate(meta["rows"]):
        for j, cell in enumerate(row):
            N[i, j] = parse_cell(labels, cell)
    return labels, N, meta


def product_table(name: str) -> ModuleFusionTable:
    """Product of the fixture's factor tables, relabelled and ordered like the reference table."""
    meta = load_json(name)
    T, U = (load_table(f) for f in meta["factors"])
    P = module_table_product(T, U).relabel(meta["pair_labels"])
    order = [P.base.labels.index(x) for x in meta["labels"]]
    return ModuleFusionTable(P.base.permute(order), P.category, P.provenance, P.completeness)


# ---------------------------------------------------------------------------


def _simple_list(orders, names=None, fmt="text") -> str:
    simples = classify_module_simples(group_new(orders), 0, names=names)
    if fmt == "json":
        data = {"group": {"orders": list(orders)}, "char": 0, "simples": [
            {"label": s.label, "subgroup": subgroup_to_json(s.subgroup),
             "class": h2_class_to_json(s.cls)} for s in simples]}
        return json.dumps(data, ensure_ascii=False, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["subgroup", "class"])
        for s in simples:
            w.writerow([s.subgroup.label(names), s.cls.label])
        return buf.getvalue()
    return "".join(s.label + "\n" for s in simples)


def _vect_r(fmt: str) -> str:
    real = product_components(vect_model(REALS, CPLX), vect_model(REALS, CPLX))
    closed = product_components(vect_model(ALG_CLOSED), vect_model(ALG_CLOSED))
    names = [c.name for c in real.components]
    if fmt == "json":
        data = {"field": "R", "pi0": pi0(real), "components": [
            {"id": c.id, "name": c.name, "real_model": c.real_model.to_json()} for c in real.components],
            "pi0_algebraically_closed": pi0(closed)}
        return json.dumps(data, ensure_ascii=False, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["component", "real_model"])
        for c in real.components:
            w.writerow([c.name, str(c.real_model)])
        return buf.getvalue()
    return f"pi0 = {pi0(real)}; components: {', '.join(names)}\n"


def _table(name: str, fmt: str) -> str:
    T = product_table(name)
    corner = load_json(name)["corner"]
    if fmt == "json":
        return json.dumps(table_to_json(T), ensure_ascii=False, indent=2) + "\n"
    if fmt == "csv":
        return render_csv(T.base, corner)
    return render_grid(table_rows(T.base, corner)) + f"completeness: {T.completeness.value}\n"


def _coprime_demo(fmt: str) -> str:
    rows = []
    for a, b in ((2, 3), (2, 2)):
        C, D = pointed_model(group_new([a])), pointed_model(group_new([b]))
        cert = factorization_certificate(C.components[0].fp, D.components[0].fp)
        pairs = simples_of_product(C, D)
        true_count = len(classify_module_simples(group_new([a, b])))
        fps = [round(C.components[0].fp.total), round(D.components[0].fp.total)]
        rows.append({"factors": [f"Z/{a}", f"Z/{b}"], "fp": fps,
                     "certificate": cert.status.value, "reason": cert.reason,
                     "status": pairs.status, "pairs": len(pairs.pairs), "simples": true_count})
    if fmt == "json":
        return json.dumps(rows, ensure_ascii=False, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["factors", "fp", "certificate", "reason", "status", "pairs", "simples"])
        for r in rows:
            w.writerow([" ⊡ ".join(r["factors"]), "x".join(map(str, r["fp"])), r["certificate"],
                        r["reason"], r["status"], r["pairs"], r["simples"]])
        return buf.getvalue()
    out = []
    for r in rows:
        rel = "=" if r["pairs"] == r["simples"] else "<"
        out.append(f"Mod(Vect_{r['factors'][0]}) ⊡ Mod(Vect_{r['factors'][1]}): "
                   f"FPdim {r['fp'][0]}, {r['fp'][1]} -> {r['certificate']} ({r['reason']}); "
                   f"{r['status']}: pairs {r['pairs']} {rel} simples {r['simples']}")
    return "\n".join(out) + "\n"


def run_example(fixture_id: str, fmt: str = "text") -> str:
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}")
    if fixture_id == "mod6":
        return _simple_list([6], fmt=fmt)
    if fixture_id == "mod22":
        return _simple_list([2, 2], KLEIN_NAMES, fmt=fmt)
    if fixture_id == "vect-r":
        return _vect_r(fmt)
    if fixture_id == "table-2b3t":
        return _table("table_2b3t.json", fmt)
    if fixture_id == "table-2b2b":
        return _table("table_2b2b.json", fmt)
    if fixture_id == "coprime-demo":
        return _coprime_demo(fmt)
    raise KeyError(f"unknown example {fixture_id!r}")
