import pytest

import abelsplit


def test_classify_examples():
    v = abelsplit.classify(5, [(2, 2)])
    assert v["outcome"] == "DoesNotSplit"
    assert abelsplit.classify(5, [(3, 1), (7, 1), (9, 1)])["outcome"] == "Splits"
    assert abelsplit.classify(2, [(2, 1), (3, 4)])["outcome"] == "Unknown"
    assert abelsplit.classify_block(3, 2, 2) == "Splits"


def test_rank_bound_and_teichmuller():
    assert [abelsplit.rank_bound(p) for p in (2, 3, 5, 7)] == [3, 2, 1, 1]
    assert abelsplit.teichmuller(5, 2, 2) == 7
    assert abelsplit.teichmuller(5, 3, 2) == 57
    assert pow(57, 4, 125) == 1


def test_orders_agree_with_brute_force():
    for p, blocks in [(2, [(1, 1), (2, 1)]), (3, [(1, 2)]), (2, [(1, 2), (2, 1)]), (5, [(2, 1)])]:
        aut = abelsplit.aut_order(p, blocks)
        assert aut == abelsplit.brute_force_aut_count(p, blocks)
        assert aut == abelsplit.delta_order(p, blocks) * abelsplit.quotient_order(p, blocks)
    assert abelsplit.aut_order(2, [(1, 1), (2, 1)]) == 8


def test_section_and_search():
    cert = abelsplit.section(3, [(2, 2)])
    assert cert["origin"] == "search"
    found = abelsplit.search(3, [(1, 1), (2, 1)])
    assert found["verdict"] == "Found"


def test_errors_carry_codes():
    with pytest.raises(abelsplit.AbelsplitError) as info:
        abelsplit.classify(4, [(1, 1)])
    assert info.value.code == "NonPrime"
    with pytest.raises(abelsplit.AbelsplitError) as info:
        abelsplit.section(5, [(2, 2)])
    assert info.value.code == "NotSplitBlock"
    with pytest.raises(ValueError):
        abelsplit.classify(3, [(2, 1), (1, 1)])
