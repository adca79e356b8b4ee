import itertools

import numpy as np
import pytest

from stabkit import capacity
from stabkit.analysis import distance
from stabkit.capacity import (SyndromeDecoder, capacity_curves, depolarizing_monte_carlo,
                              erasure_correctable, erasure_correctable_bruteforce,
                              erasure_monte_carlo, exact_depolarizing_failure,
                              random_stabilizer, results_csv)
from stabkit.constructions import catalog
from stabkit.stabilizer import validate


class TestErasure:
    @pytest.mark.parametrize("name", ["five", "steane", "422", "amp4"])
    def test_rank_method_matches_bruteforce(self, name):
        code = catalog(name)
        for e in range(code.n + 1):
            for pattern in itertools.combinations(range(code.n), e):
                assert erasure_correctable(code, pattern) == \
                    erasure_correctable_bruteforce(code, pattern)

    def test_distance_minus_one(self):
        for name in ("five", "steane", "eight"):
            code = catalog(name)
            d = distance(code).distance
            assert all(erasure_correctable(code, pat)
                       for pat in itertools.combinations(range(code.n), d - 1))

    def test_bad_pattern(self):
        with pytest.raises(ValueError):
            erasure_correctable(catalog("five"), [7])


class TestRandomCodes:
    def test_random_stabilizer_valid(self):
        rng = np.random.default_rng(0)
        for n, k in [(4, 1), (6, 2), (8, 0), (5, 5)]:
            code = random_stabilizer(n, k, rng)
            assert (code.n, code.k) == (n, k)
            assert validate(code).ok

    def test_jobs_do_not_change_results(self):
        a = erasure_monte_carlo(8, 2, 0.25, 600, seed=4, jobs=1)
        b = erasure_monte_carlo(8, 2, 0.25, 600, seed=4, jobs=2)
        assert a == b

    def test_extreme_rates(self):
        assert erasure_monte_carlo(6, 1, 0.0, 100).failures == 0
        assert erasure_monte_carlo(6, 1, 1.0, 100).failures == 100


class TestDepolarizing:
    def test_decoder_corrects_single_errors(self):
        dec = SyndromeDecoder(catalog("five"))
        ex = np.eye(5, dtype=np.int64)
        assert not dec.decode_failures(ex, 0 * ex).any()
        assert not dec.decode_failures(ex, ex).any()
        assert not dec.decode_failures(0 * ex, ex).any()

    def test_exact_small_p(self):
        # leading order: 2-qubit errors, at most C(5,2) 9 (p/3)^2
        p = 1e-3
        assert exact_depolarizing_failure(catalog("five"), p) < 10 * 9 * (p / 3) ** 2

    def test_monte_carlo_near_exact(self):
        five = catalog("five")
        r = depolarizing_monte_carlo(five, 0.1, 4000, seed=1)
        exact = exact_depolarizing_failure(five, 0.1)
        assert abs(r.failure_rate - exact) < 4 * np.sqrt(exact * (1 - exact) / 4000)

    def test_csv(self):
        r = depolarizing_monte_carlo(catalog("five"), 0.0, 10)
        lines = results_csv([r]).splitlines()
        assert lines[0] == ",".join(capacity.CSV_COLUMNS)
        assert lines[1].split(",")[4] == "0"


class TestCurves:
    def test_grid(self):
        table = capacity_curves([0.0, 0.25, 0.5])
        assert len(table.splitlines()) == 4

    def test_domain(self):
        with pytest.raises(ValueError):
            capacity_curves([0.6])
