import math

import pytest

from stabkit import threshold
from stabkit.threshold import (ErrorModelParams, ThresholdConfigError, equal_rates_coefficient,
                               gate_only_coefficient, levels, optimized_coefficient,
                               recursion_coefficients, solve_threshold,
                               toffoli_ledger_stages, toffoli_storage_free_coefficients)


class TestRecursion:
    def test_gate_only_squares(self):
        p = 1e-5
        lv = levels(ErrorModelParams(p_g=p, storage_free=True), 3)
        assert lv[1].pg == pytest.approx(25221 * p * p)
        assert lv[2].pg == pytest.approx(25221 * lv[1].pg ** 2)

    def test_doubly_exponential_decay_below_threshold(self):
        lv = levels(ErrorModelParams(p_g=1e-5, storage_free=True), 5)
        # c p^(j+1) = (c p^(j))^2, so log(c p) doubles every level
        c = 25221
        ratios = [math.log(c * lv[j + 1].pg) / math.log(c * lv[j].pg) for j in range(4)]
        assert ratios == pytest.approx([2.0] * 4)

    def test_prep_time_grows(self):
        lv = levels(ErrorModelParams(p_g=1e-6, p_stor=1e-6), 3)
        assert [s.t_prep for s in lv] == [0, 43, 86, 129]

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            ErrorModelParams(p_g=2.0)


class TestSymbolic:
    def test_gate_coefficient(self):
        assert gate_only_coefficient() == 25221

    def test_toffoli_coefficients(self):
        assert toffoli_storage_free_coefficients() == {"pg^2": 66717, "pg*ptof": 12852,
                                                       "ptof^2": 756}

    def test_equal_rates(self):
        assert equal_rates_coefficient() == [124761, 393708, 310632]

    def test_gate_coefficients_in_level(self):
        m = __import__("sympy").symbols("m")
        c = recursion_coefficients("gate")
        assert c["pg^2"] == 25221
        assert c["ps^2"] == 37800 + 216720 * m + 310632 * m ** 2

    def test_optimized(self):
        n, c = optimized_coefficient()
        assert n == pytest.approx(math.sqrt(8) * 12)
        assert c == pytest.approx(2433.5, abs=0.1)

    def test_ledger_final_stage(self):
        _, a1, a2, a3 = toffoli_ledger_stages()[-1]
        assert a3.const == a2.const


class TestThresholds:
    def test_gate_only(self):
        assert solve_threshold("gates_only") == pytest.approx(1 / 25221, rel=1e-3)

    def test_toffoli(self):
        assert solve_threshold("toffoli") == pytest.approx(1 / 756, rel=0.02)

    def test_joint_close_to_gate_only(self):
        joint = solve_threshold("toffoli_joint")
        assert 0.95 * solve_threshold("gates_only") <= joint <= solve_threshold("gates_only")

    def test_unknown_mode(self):
        with pytest.raises(ThresholdConfigError):
            solve_threshold("nope")

    def test_bracket_must_diverge(self):
        with pytest.raises(ThresholdConfigError):
            solve_threshold("gates_only", hi=1e-6)

    def test_summary_csv(self):
        rows = threshold.threshold_summary(["gates_only"])
        assert threshold.threshold_summary_csv(rows).splitlines()[0] == "mode,threshold,note"
