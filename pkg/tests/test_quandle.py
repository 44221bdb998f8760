"""Quandle validation, standard families, extensions and isomorphisms."""

import pytest

from twistq.coeff import AlexanderRing
from twistq.chain import Cochain
from twistq.quandle import (QuandleError, QuandleMap, alexander_quandle,
                            dihedral_quandle, find_isomorphism,
                            is_homomorphism, parse_quandle_table,
                            quandle_extension, quandle_from_table,
                            quandle_product, quandle_standard,
                            render_quandle_table, trivial_quandle)


class TestValidation:
    def test_singleton(self):
        assert quandle_from_table([[0]]).size == 1

    def test_dihedral_table_valid(self):
        t = [[(2 * b - a) % 3 for b in range(3)] for a in range(3)]
        assert quandle_from_table(t) == dihedral_quandle(3)

    def test_idempotency_violation(self):
        with pytest.raises(QuandleError, match="idempotency"):
            quandle_from_table([[1, 0], [0, 1]])

    def test_right_invertibility_violation(self):
        with pytest.raises(QuandleError, match="bijection"):
            quandle_from_table([[0, 0, 0], [1, 1, 1], [0, 2, 2]])

    def test_distributivity_violation(self):
        # right translations are bijections and the diagonal is fixed,
        # but ((a*b)*c) == (a*c)*(b*c) fails
        with pytest.raises(QuandleError, match="self-distributivity"):
            quandle_from_table([[0, 0, 3, 0], [2, 1, 0, 1],
                                [3, 3, 2, 2], [1, 2, 1, 3]])

    def test_op_inverse(self):
        x = dihedral_quandle(5)
        for a in x.elements():
            for b in x.elements():
                assert x.op_inv(x.op(a, b), b) == a


class TestStandardFamilies:
    def test_trivial(self):
        t2 = trivial_quandle(2)
        assert all(t2.op(a, b) == a for a in range(2) for b in range(2))

    def test_r2_is_t2(self):
        assert dihedral_quandle(2).table == trivial_quandle(2).table

    def test_alexander_four_element(self):
        x = alexander_quandle(AlexanderRing(2, [1, 1, 1]))
        assert x.size == 4

    def test_standard_names(self):
        assert quandle_standard("T(3)") == trivial_quandle(3)
        assert quandle_standard("R(5)") == dihedral_quandle(5)
        a = quandle_standard("A(2;T^2+T+1)")
        assert a.size == 4
        with pytest.raises(QuandleError):
            quandle_standard("Q(3)")
        with pytest.raises(QuandleError):
            quandle_standard("A(4)")

    def test_dihedral_is_alexander_mod_t_plus_1(self):
        assert alexander_quandle(AlexanderRing(5, [1, 1])).table == \
            dihedral_quandle(5).table


class TestProductAndExtension:
    def test_product_of_trivials(self):
        assert quandle_product(trivial_quandle(2), trivial_quandle(2)).table \
            == trivial_quandle(4).table

    def test_product_with_singleton(self):
        x = dihedral_quandle(3)
        assert quandle_product(trivial_quandle(1), x).table == x.table

    def test_zero_cocycle_extension_is_product(self):
        ring = AlexanderRing(3, [1, 1])
        x = dihedral_quandle(3)
        zero = Cochain(ring, 2)
        ext = quandle_extension(x, ring, zero)
        assert ext.table == quandle_product(alexander_quandle(ring), x).table

    def test_extension_rejects_non_cocycle(self):
        ring = AlexanderRing(3, [1, 1])
        x = dihedral_quandle(3)
        bad = Cochain(ring, 2, {(0, 1): (1,), (1, 0): (1,)})
        with pytest.raises(QuandleError):
            quandle_extension(x, ring, bad)

    def test_infinite_ring_rejected(self):
        with pytest.raises(QuandleError):
            quandle_extension(dihedral_quandle(3), AlexanderRing(0, [1, 1]),
                              Cochain(AlexanderRing(0, [1, 1]), 2))


class TestHomomorphisms:
    def test_identity(self):
        x = dihedral_quandle(3)
        ok, witness = is_homomorphism(QuandleMap(x, x, [0, 1, 2]))
        assert ok and witness is None

    def test_constant_map(self):
        x = dihedral_quandle(5)
        ok, _ = is_homomorphism(QuandleMap(x, x, [2] * 5))
        assert ok

    def test_every_permutation_of_r3(self):
        import itertools
        x = dihedral_quandle(3)
        for perm in itertools.permutations(range(3)):
            ok, _ = is_homomorphism(QuandleMap(x, x, perm))
            assert ok

    def test_non_homomorphism_witnessed(self):
        x = dihedral_quandle(4)
        ok, witness = is_homomorphism(QuandleMap(x, x, [1, 0, 2, 3]))
        assert not ok and witness is not None

    def test_find_isomorphism_r6(self):
        prod = quandle_product(dihedral_quandle(2), dihedral_quandle(3))
        f = find_isomorphism(dihedral_quandle(6), prod)
        assert f is not None
        assert is_homomorphism(f)[0]
        assert sorted(f.values) == list(range(6))

    def test_find_isomorphism_t2_r2(self):
        assert find_isomorphism(trivial_quandle(2), dihedral_quandle(2)) \
            is not None

    def test_no_isomorphism(self):
        assert find_isomorphism(trivial_quandle(3), dihedral_quandle(3)) is None
        assert find_isomorphism(trivial_quandle(2), dihedral_quandle(3)) is None


class TestText:
    def test_roundtrip(self):
        x = dihedral_quandle(4)
        assert parse_quandle_table(render_quandle_table(x)) == x

    def test_parse_errors(self):
        with pytest.raises(QuandleError):
            parse_quandle_table("")
        with pytest.raises(QuandleError):
            parse_quandle_table("2\n0 0\n")
        with pytest.raises(QuandleError):
            parse_quandle_table("x\n0\n")
