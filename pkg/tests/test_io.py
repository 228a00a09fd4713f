import random
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from siltkit.complexes import hom_table, random_complex
from siltkit.io import (
    InhomogeneousRelationError,
    ParseError,
    SemanticError,
    emit_dot,
    emit_report,
    load_algebra,
    parse_complex,
    print_algebra,
    print_complex,
)

DATA = Path(__file__).resolve().parents[1] / "data"


def read(name):
    return (DATA / name).read_text()


@pytest.mark.parametrize("name", ["A4.alg", "Lambda4.alg", "preprojective_A2.alg", "preprojective_D4.alg"])
def test_algebra_round_trip(name):
    alg = load_algebra(read(name))
    text = print_algebra(alg)
    again = load_algebra(text)
    assert print_algebra(again) == text
    assert again.dim == alg.dim and again.labels == alg.labels


def test_data_dimensions():
    assert load_algebra(read("A4.alg")).dim == 16
    assert load_algebra(read("Lambda4.alg")).dim == 32
    assert load_algebra(read("preprojective_A2.alg")).dim == 4
    assert load_algebra(read("preprojective_D4.alg")).dim == 28


def test_complex_round_trip_on_data():
    lam = load_algebra(read("Lambda4.alg"))
    for name in ("TL4.cpx", "Lambda4_stalk.cpx"):
        X = parse_complex(read(name), lam)
        text = print_complex(X)
        assert print_complex(parse_complex(text, lam)) == text
        assert parse_complex(text, lam) == X


def test_induced_complex_file_table():
    lam = load_algebra(read("Lambda4.alg"))
    X = parse_complex(read("TL4.cpx"), lam)
    assert {m: v for m, v in hom_table(X, X).items() if v} == {-2: 16, -1: 6, 0: 22}


def test_twist_file_matches_fixture(fam4):
    from siltkit.complexes import iso_in_homotopy

    A = load_algebra(read("A4.alg"))
    X = parse_complex(read("A4_T.cpx"), A)
    assert A.dim == fam4.A.dim
    assert {m: v for m, v in hom_table(X, X).items() if v} == {
        m: v for m, v in hom_table(fam4.T, fam4.T).items() if v
    }
    assert iso_in_homotopy(X, X)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_random_complex_round_trip(seed):
    A = load_algebra(read("A4.alg"))
    X = random_complex(A, random.Random(seed), steps=2)
    text = print_complex(X)
    Y = parse_complex(text, A)
    assert Y == X
    assert print_complex(Y) == text


def test_endpoint_error_position():
    text = "vertices 2\narrow a: 1 -> 3\n"
    with pytest.raises(SemanticError) as exc:
        load_algebra(text)
    assert exc.value.line == 2 and "outside 1..2" in exc.value.message


def test_unknown_arrow_column():
    text = "vertices 2\narrow a: 1 -> 2\nrelations\na*b = 0\n"
    with pytest.raises(SemanticError) as exc:
        load_algebra(text)
    assert (exc.value.line, exc.value.col) == (4, 3)


def test_inhomogeneous_relation():
    text = "vertices 1\narrow x: 1 -> 1\nrelations\nx*x = x\n"
    with pytest.raises(InhomogeneousRelationError) as exc:
        load_algebra(text)
    assert exc.value.line == 4


def test_syntax_errors():
    with pytest.raises(ParseError) as exc:
        load_algebra("vertices 2\nedge a: 1 -> 2\n")
    assert exc.value.line == 2 and exc.value.col == 1
    with pytest.raises(ParseError):
        load_algebra("arrow a: 1 -> 2\n")
    with pytest.raises(SemanticError):
        load_algebra("field 100\nvertices 1\n")
    with pytest.raises(SemanticError):
        load_algebra("vertices 2\narrow e1: 1 -> 2\n")


def test_complex_errors():
    A = load_algebra(read("A4.alg"))
    with pytest.raises(SemanticError, match="no vertex"):
        parse_complex("degree 0: [5]\n", A)
    with pytest.raises(SemanticError, match="outside"):
        parse_complex("degree -1: [2]\ndegree 0: [1]\nd[-1]: (2,1) = x_1\n", A)
    with pytest.raises(SemanticError, match="no path x_1 from vertex 2"):
        parse_complex("degree -1: [1]\ndegree 0: [2]\nd[-1]: (1,1) = x_1\n", A)
    with pytest.raises(ParseError):
        parse_complex("degree 0 [1]\n", A)


def test_report_is_deterministic():
    import numpy as np

    rep = {"b": np.int64(2), "a": [np.array([1, 2])], "c": {3: np.bool_(True)}}
    assert emit_report(rep) == emit_report(dict(reversed(list(rep.items()))))
    assert '"3": true' in emit_report(rep)


def test_dot_output(pi_a2):
    from siltkit.mutation import interval_enumerate

    g = interval_enumerate(algebra=pi_a2, tilting=True)
    dot = emit_dot(g)
    assert dot.startswith("digraph exchange {")
    assert dot.count("peripheries=2") == 2
    assert dot.count("->") == len(g.edges)


A4_HEADER = "field 101\nvertices 4\n" + "".join(f"arrow x: {i} -> {i + 1}\narrow y: {i} -> {i + 1}\n" for i in (1, 2, 3))


def test_endpoint_beyond_vertex_count():
    with pytest.raises(SemanticError, match="endpoint 9"):
        load_algebra("vertices 4\narrow x: 1 -> 9\n")


def test_mixed_length_family_relation():
    with pytest.raises(InhomogeneousRelationError):
        load_algebra(A4_HEADER + "relations\nx + x*y = 0\n")


def test_family_file_builds_doubled_line():
    assert load_algebra(A4_HEADER + "relations\nx*x = 0\ny*y = 0\n").dim == 16


def test_semisimple_interval_dot():
    from siltkit.algebra import semisimple_field
    from siltkit.mutation import interval_enumerate

    dot = emit_dot(interval_enumerate(algebra=semisimple_field(101)))
    assert dot.count("[label=\"(") == 2
