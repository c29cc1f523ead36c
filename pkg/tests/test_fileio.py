
import pytest

from hombricks import GF, ParseError, fixture_path, load_rep, parse_algebra, parse_rep
from hombricks.fileio import format_algebra, format_maps, format_rep, parse_maps, parse_matrix
from hombricks.representation import ModuleMap
from conftest import alg, rep


def test_parse_errors_name_the_line():
    with pytest.raises(ParseError) as exc:
        parse_algebra("field 2\nvertices 2\narrow a 1 -> 2\n", source="bad.bq")
    assert exc.value.line == 3 and "bad.bq:3" in str(exc.value)
    with pytest.raises(ParseError) as exc:
        parse_algebra("field 4\n", source="f.bq")
    assert exc.value.line == 1
    with pytest.raises(ParseError):
        parse_algebra("vertices 1\n")


def test_algebra_round_trip():
    for name in ("loc", "a2", "kron", "square"):
        A = alg(name)
        B = parse_algebra(format_algebra(A))
        assert [p.label() for p in B.basis] == [p.label() for p in A.basis]
        assert B.field == A.field


def test_rep_parse_and_violation():
    A = alg("loc")
    X = parse_rep("algebra loc.bq\ndim 1\nmatrix a: [[0]]\n", algebra=A)
    assert X.dims == (1,)
    with pytest.raises(ParseError, match="a.a"):
        parse_rep("dim 1\nmatrix a: [[1]]\n", algebra=A)


def test_rep_shape_errors():
    A = alg("kron")
    with pytest.raises(ParseError) as exc:
        parse_rep("dim 1 1\nmatrix a: [[1, 0]]\n", algebra=A, source="x.rep")
    assert exc.value.line == 2
    with pytest.raises(ParseError):
        parse_rep("dim 1 1 1\n", algebra=A)
    with pytest.raises(ParseError):
        parse_rep("dim 1 1\nmatrix z: [[1]]\n", algebra=A)


def test_rational_entries():
    A = alg("square")
    X = parse_rep("dim 1 1 1 1\nmatrix a: [[1/2]]\nmatrix b: [[1]]\nmatrix c: [[2]]\nmatrix d: [[1]]\n", algebra=A)
    assert X.violations() == []
    text = format_rep(X, "square.bq")
    assert "1/2" in text
    Y = parse_rep(text, algebra=A)
    assert all((Y.mats[k] == X.mats[k]).all() for k in X.mats)


def test_field_override_on_load():
    X = load_rep(fixture_path("kron_r1.rep"), field=GF(5))
    assert X.field == GF(5)


def test_matrix_parsing():
    f = GF(3)
    assert parse_matrix("[[1, 5], [-1, 0]]", f, (2, 2)).tolist() == [[1, 2], [2, 0]]
    assert parse_matrix("[]", f, (0, 3)).shape == (0, 3)
    with pytest.raises(ParseError):
        parse_matrix("[[1, 2]", f, (1, 2))


def test_maps_round_trip():
    N, M = rep("a2_s1_s2"), rep("a2_p1")
    text = "alpha 1: [[1]]\nalpha 2: [[1]]\n"
    maps = parse_maps(text, {"alpha": (M, N)})
    assert isinstance(maps["alpha"], ModuleMap)
    again = parse_maps(format_maps(maps), {"alpha": (M, N)})
    assert all((a == b).all() for a, b in zip(again["alpha"].comps, maps["alpha"].comps))
    with pytest.raises(ParseError):
        parse_maps("gamma 1: [[1]]\n", {"alpha": (M, N)})


def test_shipped_fixtures_load():
    for name in ("a2_s1", "a2_s2", "a2_p1", "a2_s1_s2", "kron_r0", "kron_r1", "kron_rinf",
                 "r_lambda", "loc_s", "loc_regular"):
        X = rep(name)
        assert X.violations() == []
    for name in ("zwara_a2.maps", "zwara_a2_bad.maps"):
        assert fixture_path(name).exists()
