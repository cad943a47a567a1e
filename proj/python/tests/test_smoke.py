from fractions import Fraction

import pytest

import m0n

W4 = ["9/10", "3/5", "3/10", "1/5"]


def test_partitions():
    assert len(m0n.boundary_partitions(5)) == 10
    assert len(m0n.boundary_partitions(6)) == 25
    assert m0n.boundary_partitions(5)[0] == "1,2"


def test_product_numbers():
    assert m0n.product_number(5, ["1,2", "1,2"]) == -1
    assert m0n.product_number(6, ["1,2,3"] * 3) == 2
    assert m0n.product_number(6, ["1,2"] * 3) == 1
    assert m0n.product_number(5, ["3,4,5", "1,2"]) == -1


def test_volumes_agree():
    report = m0n.cross_check(W4)
    assert report["agree"]
    assert set(report["results"].values()) == {Fraction(1, 10)}
    for formula in ["ke", "weighted", "psi", "kawamata", "mcmullen"]:
        assert m0n.volume([Fraction(9, 10), Fraction(3, 5), Fraction(3, 10), Fraction(1, 5)], formula) == Fraction(1, 10)
    assert m0n.volume(["5/12"] * 3 + ["1/4"] * 3, "symmetric") == Fraction(23, 288)
    assert m0n.symmetric_closed_form(Fraction(1, 8)) == Fraction(3, 256)
    assert m0n.five_point_closed_form(["9/10", "3/10", "3/10", "3/10", "1/5"]) == Fraction(1, 100)


def test_mixed_input_types():
    assert m0n.volume([Fraction(1, 2), "1/2", Fraction(1, 2), "1/2"], "mcmullen") == Fraction(1, 2)
    assert m0n.walls(["1/2"] * 4) == ["1,2", "1,3", "2,3"]
    with pytest.raises(TypeError):
        m0n.volume([0.9, 0.6, 0.3, 0.2])


def test_divisors():
    assert m0n.divisor("kawamata", W4) == {"1,3": Fraction(1, 10)}
    assert m0n.divisor("canonical", n=5)["1,2"] == Fraction(-1, 2)
    assert m0n.psi_class(1, 5) == {"2,3": 1, "1,4": 1, "2,3,4": 1}
    table = m0n.kawamata_lambda_table(W4)
    assert table[(1, 2)] == Fraction(1, 2)
    assert table[(2, 4)] == Fraction(1, 10)


def test_errors():
    with pytest.raises(m0n.M0nError, match="WeightSumNotTwo"):
        m0n.volume(["1/2", "1/2", "1/2", "1/4"])
    with pytest.raises(m0n.M0nError, match="WrongArity"):
        m0n.product_number(6, ["1,2"])
    with pytest.raises(ValueError):
        m0n.product_number(5, ["2,1", "1,2"])


def test_selfcheck():
    rows = m0n.selfcheck()
    assert rows and all(row["pass"] for row in rows)
    assert [r["actual"] for r in m0n.selfcheck(use_memo=False)] == [r["actual"] for r in rows]
