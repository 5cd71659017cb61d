"""Field arithmetic: examples with independent oracles, then properties."""

import json
import random
from fractions import Fraction

import pytest

from blobalg import scalars as sc
from blobalg.scalars import ONE, Scalar, U, U0, bb, eval_mod, qint


def poly_divide(num, den):
    """Independent long-division oracle for univariate Laurent polys in u.

    Polynomials are dicts exponent -> Fraction; returns the exact quotient
    or raises if division is not exact."""
    num = dict(num)
    out = {}
    dmax = max(den)
    while num:
        e = max(num)
        q = Fraction(num[e]) / den[dmax]
        out[e - dmax] = q
        for d, c in den.items():
            r = num.get(e - dmax + d, Fraction(0)) - q * c
            if r:
                num[e - dmax + d] = r
            else:
                num.pop(e - dmax + d, None)
    return out


def u_poly(x: Scalar):
    assert x.den.is_one()
    return {e[0]: Fraction(c[0]) for e, c in x.num.terms.items()}


class TestFieldOps:
    def test_inverse_pair(self):
        assert U * U.inv() == ONE

    def test_cancellation(self):
        x = U + U.inv()
        assert (x - x).is_zero()

    def test_quotient_against_long_division(self):
        num = Scalar.monomial(u=2) - Scalar.monomial(u=-2)
        den = U - U.inv()
        expected = poly_divide(u_poly(num), u_poly(den))
        got = num / den
        assert u_poly(got) == {e: c for e, c in expected.items() if c}
        assert got == U + U.inv()

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            ONE / Scalar.zero()
        with pytest.raises(ZeroDivisionError):
            Scalar.zero().inv()

    def test_field_axioms_random(self):
        rng = random.Random(20240)
        for _ in range(150):
            a, b, c = (rand_scalar(rng) for _ in range(3))
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a + b == b + a
            if not a.is_zero():
                assert a * a.inv() == ONE
                assert (b / a) * a == b

    def test_structural_equality_of_normal_forms(self):
        x = (U ** 2 - U ** -2) / (U - U.inv())
        y = U + U.inv()
        assert x == y
        assert x.num == y.num and x.den == y.den


class TestBracketsAndQint:
    def test_bb_t(self):
        assert bb("t", 1) == U + U.inv()

    def test_bb_unit(self):
        assert bb("t", 0) == Scalar.from_int(2)

    def test_bb_composite(self):
        assert bb("t0/t", 1) == U0 * U.inv() + U0.inv() * U

    def test_bb_unrepresentable(self):
        with pytest.raises(sc.ScalarError):
            bb("t", Fraction(3, 2))

    def test_bb_difference_identity(self):
        # bb(t,s) * (t^(s/2) - t^(-s/2)) = t^s - t^(-s)
        for s in (1, 2, 3, 5):
            lhs = bb("t", s) * (Scalar.monomial(u=s) - Scalar.monomial(u=-s))
            assert lhs == Scalar.monomial(u=2 * s) - Scalar.monomial(u=-2 * s)

    def test_qint_small(self):
        assert qint(1) == ONE
        assert qint(2) == U + U.inv()

    def test_qint3_against_fraction_oracle(self):
        # [3] = (u^3 - u^-3)/(u - u^-1) by long division
        expected = poly_divide(
            u_poly(Scalar.monomial(u=3) - Scalar.monomial(u=-3)),
            u_poly(U - U.inv()))
        assert u_poly(qint(3)) == expected
        assert qint(3) == Scalar.monomial(u=2) + ONE + Scalar.monomial(u=-2)

    def test_qint_negative_rejected(self):
        with pytest.raises(sc.ScalarError):
            qint(-1)

    def test_qint_ratio_is_bracket(self):
        for s in range(1, 6):
            assert qint(2 * s) / qint(s) == bb("t", s)


class TestEvalMod:
    def test_zero_and_one(self):
        rng = random.Random(5)
        p = sc.random_prime(62, rng)
        pt = sc.random_point(p, rng)
        assert eval_mod(Scalar.zero(), p, pt) == 0
        assert eval_mod(U * U.inv(), p, pt) == 1

    def test_qint3_at_two_mod_13(self):
        pt = {"u": 2, "u0": 1, "uk": 1, "a0": 1, "ak": 1, "i": 5}
        assert eval_mod(qint(3), 13, pt) == (4 + 1 + 10) % 13

    def test_homomorphism(self):
        rng = random.Random(77)
        p = sc.random_prime(62, rng)
        pt = sc.random_point(p, rng)
        for _ in range(40):
            a, b = rand_scalar(rng), rand_scalar(rng)
            try:
                va, vb = eval_mod(a, p, pt), eval_mod(b, p, pt)
                assert eval_mod(a + b, p, pt) == (va + vb) % p
                assert eval_mod(a * b, p, pt) == va * vb % p
            except sc.EvalRetry:
                continue

    def test_equal_forms_always_agree(self):
        # one-sided identity testing: equal symbolic values evaluate equal
        rng = random.Random(11)
        p = sc.random_prime(62, rng)
        x = (U ** 2 - U ** -2) / (U - U.inv())
        y = U + U.inv()
        for _ in range(10):
            pt = sc.random_point(p, rng)
            assert eval_mod(x, p, pt) == eval_mod(y, p, pt)

    def test_distinct_forms_distinguished(self):
        rng = random.Random(12)
        p = sc.random_prime(62, rng)
        x = U + U.inv()
        y = U + U.inv() + ONE
        pt = sc.random_point(p, rng)
        assert eval_mod(x, p, pt) != eval_mod(y, p, pt)

    def test_retry_signal(self):
        rng = random.Random(13)
        p = sc.random_prime(62, rng)
        x = ONE / (U - Scalar.from_int(3))
        pt = sc.random_point(p, rng)
        pt["u"] = 3
        with pytest.raises(sc.EvalRetry):
            eval_mod(x, p, pt)


class TestSerialization:
    def test_render_parse_round_trip(self):
        rng = random.Random(99)
        for _ in range(100):
            x = rand_scalar(rng)
            assert sc.parse(sc.render(x)) == x

    def test_json_round_trip(self):
        rng = random.Random(98)
        for _ in range(100):
            x = rand_scalar(rng)
            blob = json.dumps(sc.to_json(x))
            assert sc.from_json(json.loads(blob)) == x

    def test_render_example(self):
        assert sc.render(qint(3)) == "(u^2+1+u^-2)"

    def test_parse_gaussian(self):
        assert sc.parse("i*i") == -ONE
        assert sc.parse("(1+i)*(1-i)") == Scalar.from_int(2)


def rand_scalar(rng, depth=0):
    choice = rng.randrange(8)
    if choice < 3 or depth > 2:
        return Scalar.monomial(
            u=rng.randrange(-3, 4), u0=rng.randrange(-2, 3),
            uk=rng.randrange(-2, 3), a0=rng.randrange(-1, 2),
            ak=rng.randrange(-1, 2),
            coeff=(rng.randrange(-4, 5), rng.randrange(-2, 3)))
    a = rand_scalar(rng, depth + 1)
    b = rand_scalar(rng, depth + 1)
    if choice < 5:
        return a + b
    if choice < 7:
        return a * b
    return a - b
