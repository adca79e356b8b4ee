import itertools
import random

from stabkit import gf2


class TestElimination:
    def test_rank_against_span_size(self):
        rng = random.Random(3)
        for _ in range(50):
            rows = [rng.getrandbits(6) for _ in range(rng.randint(1, 6))]
            assert 2 ** gf2.rank(rows) == len(set(gf2.span_elements(rows)))

    def test_solve(self):
        rows = [0b1100, 0b0110, 0b0011]
        c = gf2.solve(rows, 0b1010)
        acc = 0
        for i, r in enumerate(rows):
            if (c >> i) & 1:
                acc ^= r
        assert acc == 0b1010
        assert gf2.solve(rows, 0b0001) is None

    def test_nullspace_orthogonal(self):
        rng = random.Random(4)
        for _ in range(30):
            rows = [rng.getrandbits(7) for _ in range(3)]
            ns = gf2.nullspace(rows, 7)
            assert len(ns) == 7 - gf2.rank(rows)
            for v, r in itertools.product(ns, rows):
                assert gf2.dot(v, r) == 0

    def test_min_weight_codeword(self):
        hamming = [0b1111000, 0b1100110, 0b1010101]
        assert gf2.min_weight_codeword(hamming) == 4

    def test_eliminator_records_combinations(self):
        e = gf2.Eliminator()
        for v in (0b101, 0b011):
            e.add(v)
        assert e.express(0b110) == 0b11
        assert e.contains(0b110) and not e.contains(0b001)
