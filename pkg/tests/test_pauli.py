import random

import numpy as np
import pytest

from stabkit.dense import pauli_matrix
from stabkit.pauli import (PauliOperator, PauliParseError, commutes, format_pauli,
                           from_gf4, multiply, parse_pauli, random_pauli, to_gf4, weight)


class TestParsing:
    def test_round_trip(self):
        for s in ["XZZXI", "-YY", "iZ", "-iXYZ", "IIII"]:
            assert format_pauli(parse_pauli(s)) == s.replace("+", "")

    def test_bits(self):
        p = parse_pauli("XYZI")
        assert p.x_bits == [1, 1, 0, 0]
        assert p.z_bits == [0, 1, 1, 0]

    def test_bad_symbol_position(self):
        with pytest.raises(PauliParseError) as exc:
            parse_pauli("-XQZ")
        assert exc.value.position == 2

    def test_empty(self):
        with pytest.raises(PauliParseError):
            parse_pauli("-")


class TestAlgebra:
    def test_products_match_matrices(self):
        rng = random.Random(1)
        for _ in range(40):
            a = random_pauli(3, rng)
            b = random_pauli(3, rng)
            np.testing.assert_allclose(pauli_matrix(multiply(a, b)),
                                       pauli_matrix(a) @ pauli_matrix(b), atol=1e-12)

    def test_commutation_matches_matrices(self):
        rng = random.Random(2)
        for _ in range(40):
            a, b = random_pauli(3, rng), random_pauli(3, rng)
            ma, mb = pauli_matrix(a), pauli_matrix(b)
            assert commutes(a, b) == int(not np.allclose(ma @ mb, mb @ ma))

    def test_xz_is_minus_iy(self):
        assert multiply(parse_pauli("X"), parse_pauli("Z")) == parse_pauli("-iY")

    def test_weight(self):
        assert weight(parse_pauli("XIZYI")) == 3

    def test_hermitian(self):
        assert parse_pauli("-XY").is_hermitian
        assert not parse_pauli("iXY").is_hermitian

    def test_gf4_round_trip(self):
        p = parse_pauli("XYZI")
        assert from_gf4(to_gf4(p)) == p

    def test_tensor_and_restrict(self):
        p = parse_pauli("XY").tensor(parse_pauli("Z"))
        assert p == parse_pauli("XYZ")
        assert p.restrict([2]) == parse_pauli("Z")

    def test_single(self):
        assert PauliOperator.single(3, 1, "Y") == parse_pauli("IYI")
