import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fibnim.zeckendorf import (
    INFINITY,
    MAX_FIB_INDEX,
    fib,
    is_fibonacci,
    z_part,
    zeckendorf,
)


class TestFib:
    def test_base_cases(self):
        assert fib(0) == 0
        assert fib(1) == 1

    def test_tenth(self):
        # frozen from iterating the recurrence by hand: 0 1 1 2 3 5 8 13 21 34 55
        assert fib(10) == 55

    def test_large_index_exact(self):
        assert fib(90) == fib(89) + fib(88)
        assert fib(90) == 2880067194370816120

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            fib(-1)
        with pytest.raises(ValueError):
            fib(MAX_FIB_INDEX + 1)


class TestInfinity:
    def test_ordering_against_ints(self):
        assert 10**18 < INFINITY
        assert not INFINITY < 10**18
        assert INFINITY > 0
        assert INFINITY >= INFINITY
        assert INFINITY == INFINITY
        assert INFINITY != 5

    def test_no_ordering_against_other_types(self):
        with pytest.raises(TypeError):
            INFINITY < "x"  # noqa: B015


class TestZeckendorf:
    def test_zero_is_empty(self):
        assert zeckendorf(0).parts == ()

    def test_fibonacci_number_is_itself(self):
        assert zeckendorf(8).values == (8,)

    def test_seventeen(self):
        # greedy: 17 = 13 + 3 + 1, ascending parts 1 + 3 + 13
        rep = zeckendorf(17)
        assert rep.values == (1, 3, 13)
        assert rep.parts == (2, 4, 7)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            zeckendorf(-1)

    def test_one_uses_canonical_index(self):
        assert zeckendorf(1).parts == (2,)

    @settings(max_examples=200)
    @given(st.integers(min_value=0, max_value=10**15))
    def test_rep_is_valid(self, n):
        rep = zeckendorf(n)
        assert sum(rep.values) == n
        assert all(t >= 2 for t in rep.parts)
        assert all(b - a >= 2 for a, b in zip(rep.parts, rep.parts[1:]))

    def test_range_sweep_to_a_million(self):
        # every n in [0, 10^6]: parts sum to n, indices ascend with gaps >= 2
        fibs = [1, 2]
        while fibs[-1] <= 10**6:
            fibs.append(fibs[-1] + fibs[-2])
        for n in range(10**6 + 1):
            rep = zeckendorf.__wrapped__(n)  # skip the cache: pure sweep
            assert sum(fib(t) for t in rep.parts) == n
            assert all(b - a >= 2 for a, b in zip(rep.parts, rep.parts[1:]))
            assert (len(rep.parts) == 0) == (n == 0)

    def test_uniqueness_by_exhaustive_enumeration(self):
        # enumerate every non-consecutive index subset reaching <= 10^4 and
        # check each n is hit exactly once, by the greedy rep
        limit = 10**4
        indices = []
        t = 2
        while fib(t) <= limit:
            indices.append(t)
            t += 1
        reps: dict[int, tuple[int, ...]] = {}
        stack = [(0, 0, ())]  # (position in indices, sum, chosen)
        while stack:
            i, total, chosen = stack.pop()
            if total > 0:
                assert total not in reps or reps[total] == chosen
                if total in reps:
                    pytest.fail(f"two representations for {total}")
                reps[total] = chosen
            for j in range(i, len(indices)):
                if chosen and indices[j] - chosen[-1] < 2:
                    continue
                s = total + fib(indices[j])
                if s <= limit:
                    stack.append((j + 1, s, chosen + (indices[j],)))
        for n in range(1, limit + 1):
            assert n in reps
            assert reps[n] == zeckendorf(n).parts


class TestZPart:
    def test_parts_of_twelve(self):
        assert z_part(1, 12) == 1
        assert z_part(2, 12) == 3
        assert z_part(3, 12) == 8
        assert z_part(4, 12) == INFINITY

    def test_zero_has_no_parts(self):
        assert z_part(1, 0) == INFINITY

    def test_bad_index(self):
        with pytest.raises(ValueError):
            z_part(0, 5)

    def test_sentinel_threshold_reads(self):
        # the whole point of the sentinel: comparisons just work
        assert 100 < z_part(2, 8)
        assert not z_part(2, 8) <= 100


class TestIsFibonacci:
    @pytest.mark.parametrize("n,expected", [(13, True), (12, False), (0, True), (1, True), (2, True), (4, False)])
    def test_examples(self, n, expected):
        assert is_fibonacci(n) is expected

    def test_agrees_with_single_part_rep(self):
        for n in range(1, 3000):
            assert is_fibonacci(n) == (len(zeckendorf(n)) == 1)
