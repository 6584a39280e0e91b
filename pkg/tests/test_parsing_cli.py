import json

import pytest

from apolar import GF, QQ, DPPoly
from apolar.cli import cli_dispatch
from apolar.errors import PolySyntaxError
from apolar.parsing import (
    operator_str,
    parse_classical_poly,
    parse_operator,
    parse_poly,
    poly_str,
)

from conftest import random_poly


def test_parse_basic():
    f = parse_poly("3*x1^[2]*x2 + x3", 3, QQ)
    assert f.terms == {(2, 1, 0): QQ.from_int(3), (0, 0, 1): QQ.from_int(1)}


def test_parse_caret_synonym_and_fractions():
    f = parse_poly("x1^2*x2 - 1/2*x2^[3]", 2, QQ)
    assert f.coeff((2, 1)) == QQ.from_fraction("1")
    assert f.coeff((0, 3)) == QQ.from_fraction("-1/2")


def test_parse_operator():
    s = parse_operator("a1^[2]*a2 - 3*a2", 2, QQ, 4)
    assert s.coeff((2, 1)) == QQ.from_int(1)
    assert s.coeff((0, 1)) == QQ.from_int(-3)


def test_parse_errors_have_positions():
    with pytest.raises(PolySyntaxError) as exc:
        parse_poly("x1 + + x2", 2, QQ)
    assert exc.value.position is not None
    with pytest.raises(PolySyntaxError):
        parse_poly("x5", 2, QQ)
    with pytest.raises(PolySyntaxError):
        parse_poly("", 2, QQ)
    with pytest.raises(PolySyntaxError):
        parse_poly("x1^[2", 2, QQ)


def test_round_trip_printing(rng):
    for field in (QQ, GF(101)):
        for _ in range(20):
            f = random_poly(rng, 3, field, 4, force_top=False)
            if f.is_zero():
                continue
            assert parse_poly(poly_str(f), 3, field) == f


def test_parse_classical():
    g = parse_classical_poly("x1^4", 1, QQ)
    assert g.terms == {(4,): QQ.from_int(1)}


def test_cli_hilbert(capsys):
    assert cli_dispatch(["hilbert", "--vars", "2", "x1^[3]*x2"]) == 0
    assert "[1, 2, 2, 2, 1]" in capsys.readouterr().out


def test_cli_json_schema(capsys):
    assert cli_dispatch(["hilbert", "--vars", "2", "--json", "x1^[3]*x2"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert set(doc) == {"command", "field", "vars", "inputs", "results", "warnings"}
    assert doc["results"]["hilbert"] == [1, 2, 2, 2, 1]


def test_cli_classical_mode(capsys):
    assert cli_dispatch(
        ["hilbert", "--vars", "1", "--mode", "classical", "x1^4"]
    ) == 0
    assert "[1, 1, 1, 1, 1]" in capsys.readouterr().out


def test_cli_exit_codes(capsys):
    # 1: syntax error
    assert cli_dispatch(["hilbert", "--vars", "2", "x1 +"]) == 1
    # 2: guard failure (classical mode in small characteristic)
    assert cli_dispatch(
        ["hilbert", "--vars", "1", "--mode", "classical", "--field", "fp:3", "x1^4"]
    ) == 2
    capsys.readouterr()


def test_cli_perp_f3(capsys):
    code = cli_dispatch(
        ["perp", "--unip", "--max-deg", "3", "--vars", "3",
         "x1^[3]*x2 + x1^[2]*x3^[2]"]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "a1*a2^[2] - 2*a2*a3^[2]" in out


def test_cli_golden_all(capsys):
    for which in ("13331", "1222111", "char2"):
        assert cli_dispatch(["golden", which]) == 0
        capsys.readouterr()


def test_cli_orbit_dim_downgrade(capsys):
    code = cli_dispatch(
        ["orbit-dim", "--vars", "2", "--field", "fp:2", "x1*x2^[2] + x2^[3]"]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "tangent_dim" in out and "warning" in out


def test_cli_reduce_membership(capsys):
    code = cli_dispatch(
        ["reduce", "--method", "membership", "--target", "x1^[3]*x2",
         "--vars", "2", "x1^[3]*x2 + x2^[3]"]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "member: False" in out
    assert "witness_degree: 3" in out


def test_cli_deterministic_reports(capsys):
    args = ["perp", "--unip", "--max-deg", "3", "--vars", "3", "--json",
            "x1^[3]*x2 + x1^[2]*x3^[2]"]
    assert cli_dispatch(args) == 0
    first = capsys.readouterr().out
    assert cli_dispatch(args) == 0
    assert capsys.readouterr().out == first
