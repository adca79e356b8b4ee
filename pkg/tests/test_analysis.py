import itertools

import pytest

from stabkit import analysis
from stabkit.analysis import (CostError, asymptotic_rates, distance, gv_bound,
                              gv_guaranteed_k, hamming_bound, kl_bound, macwilliams_transform,
                              normalizer_enumerator, rates_csv, shadow_enumerator,
                              shadow_transform, stabilizer_enumerator)
from stabkit.constructions import catalog
from stabkit.pauli import PauliOperator, commutes, weight
from stabkit.stabilizer import StabilizerGroup


def brute_enumerators(code):
    """A, B and shadow by scanning all 4^n Paulis (small n only)."""
    n = code.n
    grp = StabilizerGroup(code.generators, n)
    elems = [grp.element(m) for m in range(2 ** len(code.generators))]
    A = [0] * (n + 1)
    B = [0] * (n + 1)
    S = [0] * (n + 1)
    for m in elems:
        A[weight(m)] += 1
    for x, z in itertools.product(range(2 ** n), repeat=2):
        p = PauliOperator(n, x, z)
        if all(not commutes(p, g) for g in code.generators):
            B[weight(p)] += 1
        if all(commutes(p, m) == weight(m) % 2 for m in elems):
            S[weight(p)] += 1
    return A, B, S


class TestEnumerators:
    def test_five_golden(self):
        five = catalog("five")
        assert stabilizer_enumerator(five) == [1, 0, 0, 0, 15, 0]
        assert normalizer_enumerator(five) == [1, 0, 0, 30, 15, 18]

    @pytest.mark.parametrize("name", ["five", "422", "amp4"])
    def test_against_full_scan(self, name):
        code = catalog(name)
        A, B, S = brute_enumerators(code)
        assert stabilizer_enumerator(code) == A
        assert normalizer_enumerator(code) == B
        assert shadow_enumerator(code) == S

    def test_transforms(self):
        code = catalog("steane")
        A = stabilizer_enumerator(code)
        assert macwilliams_transform(A, code.n, code.k) == normalizer_enumerator(code)
        assert shadow_transform(A, code.n, code.k) == shadow_enumerator(code)

    def test_guard(self):
        with pytest.raises(CostError):
            normalizer_enumerator(catalog("16_10_3"), max_dim=10)


class TestDistance:
    def test_five(self):
        rep = distance(catalog("five"))
        assert rep.exact and rep.distance == 3 and rep.degenerate is False
        assert rep.witness.weight() == 3

    def test_shor_degenerate(self):
        rep = distance(catalog("shor9"))
        assert rep.distance == 3 and rep.degenerate
        assert str(rep.degeneracy_witness) in ("ZZIIIIIII", "+ZZIIIIIII")

    def test_stabilizer_state(self):
        rep = distance(catalog("8_0_4"))
        assert rep.distance == 4

    def test_cap(self):
        rep = distance(catalog("11_1_5"), cap=3)
        assert not rep.exact and rep.distance == 4

    def test_cost_guard(self):
        with pytest.raises(CostError):
            distance(catalog("25_1_9"), cap=9, max_cost=1e5)


class TestBounds:
    def test_five_meets_hamming_and_kl(self):
        assert hamming_bound(5, 1, 1).equality
        assert kl_bound(5, 1, 3).equality
        assert gv_bound(5, 1, 3).satisfied

    def test_violations(self):
        assert not hamming_bound(4, 1, 1).satisfied
        assert not kl_bound(4, 1, 3).satisfied

    def test_gv_guaranteed(self):
        assert gv_guaranteed_k(5, 3) is None      # ball larger than the space
        assert gv_guaranteed_k(40, 3) >= 20

    def test_rates(self):
        r = asymptotic_rates(0.0)
        assert all(v == 1 for v in r.values())
        r = asymptotic_rates(0.1)
        assert r["kl"] == pytest.approx(0.6)
        assert r["erasure_2epp"] == pytest.approx(0.9)
        assert r["deg_stab"] >= r["hamming"]

    def test_rates_csv(self):
        lines = rates_csv([0.0, 0.1]).splitlines()
        assert lines[0] == "p," + ",".join(analysis.RATE_NAMES)
        assert len(lines) == 3

    def test_rate_domain(self):
        with pytest.raises(ValueError):
            asymptotic_rates(1.5)
