import pytest

from stabkit.constructions import catalog, fixed_catalog_codes
from stabkit.pauli import parse_pauli
from stabkit.stabilizer import (CodeFileError, StabilizerCode, StabilizerGroup, check_matrix,
                                classical_code_from_quantum, dumps_code, find_logicals,
                                in_stabilizer, loads_code, same_group, standard_form,
                                standard_logicals, steane_ancilla_stabilizer, syndrome,
                                validate, with_standard_logicals)


class TestValidation:
    @pytest.mark.parametrize("code", fixed_catalog_codes(), ids=lambda c: c.name)
    def test_catalog_codes_validate(self, code):
        rep = validate(code)
        assert rep.ok, rep.problems

    def test_anticommuting_generators_rejected(self):
        code = StabilizerCode.from_strings(["XI", "ZI"])
        assert not validate(code).ok

    def test_dependent_generators_rejected(self):
        code = StabilizerCode.from_strings(["ZZI", "IZZ", "ZIZ"])
        assert not validate(code).ok

    def test_minus_identity_rejected(self):
        code = StabilizerCode.from_strings(["ZZ", "-ZZ"])
        assert not validate(code).ok


class TestGroup:
    def test_membership_with_sign(self):
        five = catalog("five")
        prod = parse_pauli("XZZXI") * parse_pauli("IXZZX")
        assert in_stabilizer(five, prod)
        assert not in_stabilizer(five, -prod)
        assert in_stabilizer(five, -prod, signed=False)

    def test_same_group(self):
        a = [parse_pauli("ZZI"), parse_pauli("IZZ")]
        b = [parse_pauli("ZIZ"), parse_pauli("ZZI")]
        assert same_group(a, b)
        assert not same_group(a, [parse_pauli("-ZIZ"), parse_pauli("ZZI")])

    def test_relative_phase(self):
        g = StabilizerGroup([parse_pauli("XX")])
        assert g.relative_phase(parse_pauli("-XX")) == 2
        assert g.relative_phase(parse_pauli("ZZ")) is None


class TestSyndrome:
    def test_five_qubit_single_errors_distinct(self):
        five = catalog("five")
        seen = set()
        for q in range(5):
            for s in "XYZ":
                e = ["I"] * 5
                e[q] = s
                seen.add(tuple(syndrome(five, parse_pauli("".join(e)))))
        assert len(seen) == 15 and (0, 0, 0, 0) not in seen


class TestStandardForm:
    def test_five_qubit_rows(self):
        sf = standard_form(catalog("five"))
        assert sf.format_rows() == ["10001|11011", "01001|00110", "00101|11000",
                                    "00011|10111"]
        assert sf.qubit_permutation == [0, 1, 2, 3, 4]

    def test_rows_generate_same_group(self):
        for code in fixed_catalog_codes():
            if code.n > 16:
                continue
            sf = standard_form(code)
            assert same_group(sf.rows_as_paulis(), code.generators), code.name

    @pytest.mark.parametrize("name", ["five", "steane", "eight", "422", "shor9", "16_10_3",
                                      "11_1_5", "xz7", "amp4"])
    def test_standard_logicals_valid(self, name):
        code = with_standard_logicals(catalog(name))
        assert validate(code).ok

    def test_check_matrix_shape(self):
        assert check_matrix(catalog("steane")).shape == (6, 14)

    def test_find_logicals(self):
        code = catalog("16_10_3")
        xs, zs = find_logicals(code.n, code.generators)
        assert len(xs) == len(zs) == 10
        assert validate(code.copy(logical_x=xs, logical_z=zs)).ok


class TestDerivedObjects:
    def test_classical_code_of_five(self):
        cc = classical_code_from_quantum(catalog("five"))
        assert cc.generator.shape[0] == 1
        assert cc.min_distance() >= 3

    def test_steane_ancilla_is_state(self):
        anc = steane_ancilla_stabilizer(catalog("steane"))
        assert anc.n == 14 and anc.k == 0
        assert validate(anc).ok


class TestCodeFile:
    def test_round_trip(self):
        for code in fixed_catalog_codes():
            back = loads_code(dumps_code(code))
            assert back.generators == code.generators
            assert back.logical_x == code.logical_x

    def test_json_error_has_position(self):
        with pytest.raises(CodeFileError) as exc:
            loads_code('{"n": 5,\n "k": }')
        assert exc.value.line == 2

    def test_missing_fields(self):
        with pytest.raises(CodeFileError):
            loads_code('{"n": 5}')

    def test_logicals_filled_in(self):
        code = loads_code('{"n": 5, "k": 1, "generators": ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]}')
        assert len(code.logical_x) == 1 and validate(code).ok
