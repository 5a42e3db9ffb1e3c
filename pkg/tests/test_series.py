from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fschar.errors import QueryBeyondCutoff
from fschar.series import (
    TriGradedSeries,
    add,
    coeff,
    equal_up_to,
    inv_pochhammer,
    make_constant,
    mul,
    mul_monomial,
)

CUT = 6


def S(terms, cutoff=CUT):
    return TriGradedSeries(cutoff, terms)


def one_plus_q(cutoff=CUT):
    return S({(0, 0, 0): 1, (0, 0, 1): 1}, cutoff)


def partitions_brute(n: int, max_part: int) -> int:
    """Count partitions of n into parts <= max_part by explicit listing."""
    found = set()

    def rec(rest, cap, parts):
        if rest == 0:
            found.add(tuple(parts))
            return
        for p in range(min(cap, rest), 0, -1):
            rec(rest - p, p, parts + [p])

    rec(n, max_part, [])
    return len(found)


def pochhammer(M: int, cutoff: int) -> TriGradedSeries:
    acc = make_constant(1, cutoff)
    for i in range(1, M + 1):
        acc = mul(acc, S({(0, 0, 0): 1, (0, 0, i): -1}, cutoff))
    return acc


class TestConstructors:
    def test_constants(self):
        assert make_constant(1, 10).terms == {(0, 0, 0): 1}
        assert len(make_constant(0, 10)) == 0
        s = make_constant(5, 0)
        assert s.cutoff == 0 and s.terms == {(0, 0, 0): 5}

    def test_normalization_on_construction(self):
        s = S({(0, 0, 0): 0, (1, 0, 7): 3, (0, 1, 2): 4})
        assert dict(s.terms) == {(0, 1, 2): 4}

    def test_negative_key_rejected(self):
        with pytest.raises(ValueError):
            S({(-1, 0, 0): 1})

    def test_immutable(self):
        s = make_constant(1, 3)
        with pytest.raises(AttributeError):
            s.cutoff = 4
        with pytest.raises(TypeError):
            s.terms[(0, 0, 1)] = 1


class TestArithmetic:
    def test_add_cancels(self):
        assert len(add(make_constant(1, 5), make_constant(-1, 5))) == 0

    def test_add_same_key(self):
        assert add(S({(1, 0, 1): 2}), S({(1, 0, 1): 3})).terms == {(1, 0, 1): 5}

    def test_add_truncates_to_smaller_cutoff(self):
        s = add(S({(0, 0, 4): 1, (0, 0, 1): 1}, 5), S({}, 3))
        assert s.cutoff == 3
        assert dict(s.terms) == {(0, 0, 1): 1}

    def test_binomial_square(self):
        assert mul(one_plus_q(), one_plus_q()).terms == {(0, 0, 0): 1, (0, 0, 1): 2, (0, 0, 2): 1}

    def test_identity(self):
        s = S({(1, 0, 1): 3, (0, 2, 4): -2})
        assert mul(s, make_constant(1, CUT)) == s

    def test_key_addition(self):
        assert mul(S({(1, 0, 1): 1}), S({(0, 1, 1): 1})).terms == {(1, 1, 2): 1}

    def test_mul_drops_high_degrees(self):
        s = mul(S({(0, 0, 4): 1}), S({(0, 0, 3): 1}))
        assert len(s) == 0

    def test_mul_monomial(self):
        one = make_constant(1, 5)
        assert mul_monomial(one, (0, 0, 1), 1).terms == {(0, 0, 1): 1}
        assert mul_monomial(one, (1, 1, 2), 1).terms == {(1, 1, 2): 1}
        assert len(mul_monomial(S({(0, 0, 0): 1, (2, 0, 3): 1}, 5), (0, 0, 6), 1)) == 0
        assert len(mul_monomial(one, (0, 0, 0), 0)) == 0


class TestPochhammer:
    def test_small_cases(self):
        assert inv_pochhammer(0, 7) == make_constant(1, 7)
        assert dict(inv_pochhammer(1, 4).terms) == {(0, 0, d): 1 for d in range(5)}

    def test_parts_at_most_two(self):
        # frozen from partitions_brute(d, 2) for d = 0..5
        expected = [1, 1, 2, 2, 3, 3]
        assert [partitions_brute(d, 2) for d in range(6)] == expected
        s = inv_pochhammer(2, 5)
        assert [s.coeff((0, 0, d)) for d in range(6)] == expected

    @pytest.mark.parametrize("M", range(0, 8))
    def test_matches_brute_partition_count(self, M):
        s = inv_pochhammer(M, 14)
        assert [s.coeff((0, 0, d)) for d in range(15)] == [partitions_brute(d, M) for d in range(15)]

    @pytest.mark.parametrize("M", range(0, 13))
    def test_inverse_of_finite_product(self, M):
        assert mul(inv_pochhammer(M, 30), pochhammer(M, 30)) == make_constant(1, 30)

    def test_monotone_in_M(self):
        table = [inv_pochhammer(M, 20) for M in range(12)]
        for d in range(21):
            column = [s.coeff((0, 0, d)) for s in table]
            assert column == sorted(column)


class TestQueries:
    def test_coeff(self):
        assert coeff(make_constant(1, 5), (0, 0, 0)) == 1
        assert coeff(make_constant(1, 5), (1, 0, 1)) == 0
        with pytest.raises(QueryBeyondCutoff):
            coeff(make_constant(1, 5), (0, 0, 6))

    def test_equal_up_to(self):
        one = make_constant(1, 4)
        assert equal_up_to(one, one, 4)
        assert equal_up_to(one, one_plus_q(4), 0)
        assert not equal_up_to(one, one_plus_q(4), 1)
        with pytest.raises(QueryBeyondCutoff):
            equal_up_to(one, make_constant(1, 2), 3)

    def test_truncate(self):
        s = one_plus_q(4)
        assert s.truncate(0) == make_constant(1, 0)
        with pytest.raises(QueryBeyondCutoff):
            s.truncate(5)


class TestSerialization:
    def test_json_shape_and_order(self):
        s = S({(0, 1, 2): 1, (2, 0, 2): 7, (1, 0, 1): 10**40})
        doc = json.loads(s.to_json())
        assert doc["cutoff"] == CUT
        assert [(t["d"], t["n1"], t["n2"]) for t in doc["terms"]] == [(1, 1, 0), (2, 0, 1), (2, 2, 0)]
        assert doc["terms"][0]["c"] == str(10**40)
        assert TriGradedSeries.from_json(s.to_json()) == s

    def test_csv(self):
        s = S({(0, 1, 2): -1, (1, 0, 1): 2})
        assert s.to_csv() == "n1,n2,d,coeff\n1,0,1,2\n0,1,2,-1\n"

    def test_byte_identical(self):
        a = S({(0, 1, 2): 1, (1, 0, 1): 2, (0, 0, 0): 1})
        b = S({(0, 0, 0): 1, (1, 0, 1): 2, (0, 1, 2): 1})
        assert a.to_json() == b.to_json()

    def test_pickle_round_trip(self):
        import pickle

        s = S({(0, 1, 2): 1, (1, 0, 1): 2})
        assert pickle.loads(pickle.dumps(s)) == s


keys = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, CUT))
series_st = st.dictionaries(keys, st.integers(-9, 9), max_size=6).map(lambda t: S(t))


def _normalized(s: TriGradedSeries) -> bool:
    return all(c != 0 and k.d <= s.cutoff for k, c in s.terms.items())


@settings(max_examples=1000, deadline=None)
@given(series_st, series_st, series_st)
def test_ring_laws(a, b, c):
    assert add(a, b) == add(b, a)
    assert mul(a, b) == mul(b, a)
    assert add(add(a, b), c) == add(a, add(b, c))
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
    for s in (add(a, b), mul(a, b), mul_monomial(a, (1, 0, 2), -3)):
        assert _normalized(s)
