import pytest
from hypothesis import given, strategies as st

from theoria import theory as th
from theoria.axioms import axiom, check_axiom
from theoria.intertheoretic import check_is_specialization, verify_series_world
from theoria.theory import reduct
from theoria.worlds import (
    ColumnNumeral,
    Lexicon,
    WorldError,
    make_counting_world,
    make_decade_world,
    make_money_world,
    make_pps_world,
    omega,
    paper_sum_add,
)


def test_counting_addition_by_position():
    s = make_counting_world(10)
    assert s.apply("plus", "w3", "w2") == "w5"
    assert s.apply("plus", "w9", "w5") is None
    assert ("w3", "w2", "w5") in omega(s)


def test_counting_world_custom_words():
    s = make_counting_world(["eins", "zwei", "drei"])
    assert s.apply("plus", "eins", "zwei") == "drei"
    with pytest.raises(WorldError):
        Lexicon(("eins", "eins"))
    with pytest.raises(WorldError):
        Lexicon(())


@pytest.mark.parametrize("n", range(1, 13))
def test_counting_world_is_a_model(n):
    assert th.check_model(th.COUNTING, make_counting_world(n)).passed


def test_pps_zero_law_and_reduct():
    base = make_counting_world(10)
    s = make_pps_world(base)
    assert s.apply("plus", "0", "w7") == "w7" and s.apply("plus", "w7", "0") == "w7"
    assert reduct(s, th.PPS.signature, ["leq", "plus"]) == base
    least = [z for z in s.carrier if all((z, k) in s.relations["leq"] for k in s.carrier)]
    assert least == ["0"]


def test_pps_zero_collision():
    with pytest.raises(WorldError):
        make_pps_world(make_counting_world(3), "w2")


def test_paper_sums():
    n = ColumnNumeral.parse
    assert str(paper_sum_add(n("17"), n("25"))) == "42"
    assert str(paper_sum_add(n("0"), n("308"))) == "308"
    assert paper_sum_add(n("999"), n("1")).digits == (0, 0, 0, 1)
    with pytest.raises(WorldError):
        ColumnNumeral((1, 0))


def test_paper_sums_exhaustive_to_three_digits():
    nums = [ColumnNumeral.parse(str(i)) for i in range(1000)]
    for i in range(0, 1000, 7):
        for j in range(1000):
            assert int(str(paper_sum_add(nums[i], nums[j]))) == i + j


@given(st.integers(0, 999_999), st.integers(0, 999_999))
def test_paper_sums_agree_with_integers(a, b):
    out = paper_sum_add(ColumnNumeral.parse(str(a)), ColumnNumeral.parse(str(b)))
    assert int(str(out)) == a + b


def test_money_world():
    s = make_money_world([1, 5, 10], 20)
    assert s.holds("lt", "5", "10") and not s.holds("lt", "10", "5")
    assert s.apply("plus", "5", "5") == "10"
    narrow = make_money_world([1, 5, 10], 15)
    assert narrow.apply("plus", "10", "10") is None
    with pytest.raises(WorldError):
        make_money_world([5, 5], 20)
    with pytest.raises(WorldError):
        make_money_world([30], 20)


def test_money_world_reflexive_variant():
    s = make_money_world([1, 5], 10, strict=False)
    assert s.holds("leq", "5", "5")


def test_decade_world_is_a_specialization():
    whole = make_counting_world(100)
    dec = make_decade_world(90)
    w = check_is_specialization(dec, whole)
    assert w is not None and verify_series_world([dec], whole, w)


def test_decade_world_errors():
    with pytest.raises(WorldError):
        make_decade_world(95)


def test_money_world_vs_pps_partial_stage():
    # passes exactly when the coin values are consecutive from 1, so that
    # value addition is counting on
    ok = make_money_world([1, 2, 3, 4], 4, strict=False)
    assert th.check_partial_model(th.PPS, ok).passed
    gap = make_money_world([1, 5, 10], 20, strict=False)
    verdict = th.check_partial_model(th.PPS, gap)
    assert not verdict.passed
    failed = [r for r in verdict.reports if not r.passed]
    assert [str(r.axiom) for r in failed] == ["counting_on:leq,plus"]
    assert not check_axiom(gap, axiom("counting_on", "leq", "plus")).passed
