"""Generator words: expansion, named elements, the quotient idempotents."""

import pytest

from blobalg import diagrams as dg
from blobalg import words as wd
from blobalg.scalars import A0, AK, ONE, Scalar, U, U0, UK, bb

G = wd.GenExpr.word


class TestExpansion:
    def test_t1_image(self):
        el = wd.expand_to_tl(G(2, [wd.T(1)]))
        expected = dg.TLElement(2, {dg.e_diagram(2, 1): ONE,
                                    dg.identity_diagram(2): U})
        assert el == expected

    def test_quadratic_via_engine(self):
        x = G(2, [wd.T(1)])
        lhs = x * x - x.scale(U - U.inv()) - wd.GenExpr.one(2)
        assert wd.expand_to_tl(lhs).is_zero()

    def test_t0_inverse_reduces(self):
        el = wd.expand_to_tl(G(2, [wd.T0, wd.T0inv]))
        assert el == dg.TLElement.one(2)

    def test_index_out_of_range(self):
        with pytest.raises(wd.WordError):
            G(2, [wd.T(2)])


class TestMurphy:
    def test_k1_empty_conjugation(self):
        assert wd.murphy_word(1, 1) == (wd.Tk, wd.T0)

    def test_k2_w1(self):
        assert wd.murphy_word(2, 1) == (wd.T(1, -1), wd.Tk, wd.T(1), wd.T0)

    def test_k2_w2_recursion(self):
        w1 = wd.murphy_word(2, 1)
        assert wd.murphy_word(2, 2) == (wd.T(1),) + w1 + (wd.T(1),)

    def test_inverse_word(self):
        w = wd.murphy_expr(2, 1) * wd.murphy_expr(2, 1, inverse=True)
        assert wd.expand_to_tl(w) == dg.TLElement.one(2)


class TestStandardElements:
    def test_i1_k2(self):
        assert wd.standard_element("I1", 2) == wd.ae(2, 1)

    def test_i1_k3_has_right_hooks(self):
        i1 = wd.standard_element("I1", 3)
        assert i1 == wd.ae(3, 1) * G(3, [wd.Ek])

    def test_i2_k2(self):
        assert wd.standard_element("I2", 2) == G(2, [wd.E0]) * G(2, [wd.Ek])

    def test_parity_mismatch(self):
        with pytest.raises(wd.WordError):
            wd.standard_element("Deven", 3)
        with pytest.raises(wd.WordError):
            wd.standard_element("Dodd", 2)

    def test_i_squares(self):
        for k in (2, 3, 4):
            i1 = wd.standard_element("I1", k)
            c = (-bb("t")) ** (k // 2)
            if k % 2:
                c = (-bb("t")) ** ((k - 1) // 2) * (-bb("tk") / AK)
            assert wd.expand_to_tl(i1 * i1) == wd.expand_to_tl(i1).scale(c)


class TestIdempotents:
    def test_inner_word_count(self):
        num, n = wd.idempotent_expr("p_i_111", 3, i=1)
        assert num.word_count() == 6

    def test_boundary_word_count(self):
        num, _ = wd.idempotent_expr("p0_e12", 2)
        assert num.word_count() == 8

    def test_normalizers(self):
        t, t0, tk = U * U, U0 * U0, UK * UK
        assert wd.normalizer("N") == U.inv() * (1 + t) * (1 + t + t * t)
        assert wd.normalizer("N0") == (t0 * t).inv() * (1 + t0) * (1 + t) * (1 + t0 * t)
        assert wd.normalizer("Nk") == (tk * t).inv() * (1 + tk) * (1 + t) * (1 + tk * t)

    def test_index_range(self):
        with pytest.raises(wd.WordError):
            wd.idempotent_expr("p_i_111", 2, i=1)

    def test_relators_vanish_in_quotient(self):
        # the diagram algebra is exactly the quotient by these elements
        for k in (2, 3):
            assert wd.expand_to_tl(wd.f_element("F0", k)).is_zero()
            assert wd.expand_to_tl(wd.f_element("Fk", k)).is_zero()
            assert wd.expand_to_tl(wd.f_element("F0v", k)).is_zero()
        assert wd.expand_to_tl(wd.f_element(1, 3)).is_zero()

    def test_idempotent_numerators_vanish_in_quotient(self):
        for k in (2,):
            for name in ("p0_e12", "p0_12e", "p0v_e12", "p0v_12e"):
                num, _ = wd.idempotent_expr(name, k)
                assert wd.expand_to_tl(num).is_zero(), name
        num, _ = wd.idempotent_expr("p_i_111", 3, i=1)
        assert wd.expand_to_tl(num).is_zero()


class TestVerifyIdentity:
    def test_theorem_even_k2(self):
        lhs = wd.standard_element("Deven", 2)
        i1 = wd.standard_element("I1", 2)
        i2 = wd.standard_element("I2", 2)
        rhs = (i1 * i2 * i1).scale(A0 * AK) + i1.scale(bb("t0*tk/t"))
        ok, diff = wd.verify_identity(lhs, rhs)
        assert ok and diff.is_zero()

    def test_theorem_odd_k3(self):
        lhs = wd.standard_element("Dodd", 3)
        i1 = wd.standard_element("I1", 3)
        i2 = wd.standard_element("I2", 3)
        rhs = ((i2 * i1 * i2).scale(A0 * AK) - i2.scale(bb("t0/tk"))) \
            .scale(U.inv() * (-bb("t0") / A0))
        ok, _ = wd.verify_identity(lhs, rhs)
        assert ok

    def test_l_even_scalar(self):
        lhs = wd.standard_element("Leven", 2)
        rhs = wd.standard_element("I1", 2).scale(bb("tk/t") / AK)
        ok, _ = wd.verify_identity(lhs, rhs)
        assert ok

    def test_failure_returns_witness(self):
        lhs = wd.standard_element("I1", 2)
        rhs = wd.standard_element("I1", 2).scale(Scalar.from_int(2))
        ok, diff = wd.verify_identity(lhs, rhs)
        assert not ok and not diff.is_zero()


class TestParser:
    def test_word_round(self):
        g = wd.parse_genexpr("T1^-1 * Tk * T1 * T0", 2)
        assert g == wd.murphy_expr(2, 1)

    def test_named_identity(self):
        lhs = wd.parse_genexpr("Deven", 2)
        rhs = wd.parse_genexpr("a0*ak*I1*I2*I1 + bb(t0*tk/t)*I1", 2)
        ok, _ = wd.verify_identity(lhs, rhs)
        assert ok

    def test_scalar_factors(self):
        g = wd.parse_genexpr("2*E0 - E0", 2)
        assert g == G(2, [wd.E0])
