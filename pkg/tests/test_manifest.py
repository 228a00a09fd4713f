import json
from pathlib import Path

import pytest

from siltkit.algebra import self_injectivity_report
from siltkit.complexes import hom_table
from siltkit.io import load_algebra, parse_complex
from siltkit.krull_schmidt import decompose

DATA = Path(__file__).resolve().parents[1] / "data"
MANIFEST = json.loads((DATA / "manifest.json").read_text())
ALGEBRAS = {}


def algebra(name):
    if name not in ALGEBRAS:
        ALGEBRAS[name] = load_algebra((DATA / name).read_text())
    return ALGEBRAS[name]


def test_every_data_file_listed():
    listed = set(MANIFEST["files"])
    present = {p.name for p in DATA.iterdir() if p.suffix in (".alg", ".cpx")}
    assert listed == present


@pytest.mark.parametrize("name", [k for k, v in MANIFEST["files"].items() if v["kind"] == "algebra"])
def test_algebra_entries(name):
    entry = MANIFEST["files"][name]
    alg = algebra(name)
    assert alg.p == MANIFEST["field"]
    assert (alg.dim, alg.n) == (entry["dimension"], entry["vertices"])
    rep = self_injectivity_report(alg, check_symmetric=False)
    if "weakly_symmetric" in entry:
        assert rep.weakly_symmetric == entry["weakly_symmetric"]
    if "nakayama_permutation" in entry:
        assert [i + 1 for i in rep.nakayama_permutation] == entry["nakayama_permutation"]


@pytest.mark.parametrize("name", [k for k, v in MANIFEST["files"].items() if v["kind"] == "complex"])
def test_complex_entries(name):
    entry = MANIFEST["files"][name]
    X = parse_complex((DATA / name).read_text(), algebra(entry["algebra"]))
    assert [X.lo, X.hi] == entry["degrees"]
    assert decompose(X).count == entry["summands"]
    if "nonzero_hom_table" in entry:
        table = {str(m): v for m, v in hom_table(X, X).items() if v}
        assert table == entry["nonzero_hom_table"]


def test_recorded_facts(fam4):
    assert -fam4.E_res.lo == MANIFEST["E_projective_dimension"]
