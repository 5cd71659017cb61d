"""Calibrated module matrices: construction, relations, nullity, characters."""

import random
from fractions import Fraction as F

import pytest

from blobalg import calib as cb
from blobalg import regions as rg
from blobalg import schurweyl as sw
from blobalg import words as wd
from blobalg.scalars import ONE, Scalar, U, bb, qint

PARAMS = rg.RegionParams(F(3, 2), F(11, 2))
SW63 = sw.SWParams(6, 3)


def two_row_module(k, l):
    return sw.module_for(SW63, k, l)


class TestConstruction:
    def test_dimension_is_filling_count(self):
        for (l1, l) in sw.level_nodes(SW63, 3):
            if sw.zero_multiplicity(SW63, 3, l):
                continue
            m = two_row_module(3, l)
            assert m.n == sw.dim_B(SW63, 3, l, "fillings")

    def test_w_entries_are_plus_minus_contents(self):
        # weight matrices have entries -t^(+-c) with c from |(7/2,9/2,11/2)|
        m = two_row_module(3, 2)
        diagonals = {F(7, 2), F(9, 2), F(11, 2)}
        for i in range(m.k):
            for j in range(m.n):
                entry = m.W[i][j][j]
                matched = False
                for c in diagonals:
                    for s in (1, -1):
                        if entry == -Scalar.monomial(u=int(2 * s * c)):
                            matched = True
                assert matched

    def test_k1_t0_formula_direct_substitution(self):
        # independent oracle: substitute gamma into the displayed entry
        region = rg.LocalRegion((F(9, 2),), frozenset(), PARAMS)
        m = cb.build_module(cb.ModuleSpec(region))
        assert m.n == 2
        u0s, uks = m.u0s, m.uks
        for col, w in enumerate(m.basis):
            g = m.gamma(col, 1)
            expected = ((u0s - u0s.inv()) + (uks - uks.inv()) * g.inv()) \
                / (ONE - g.inv() * g.inv())
            assert m.T[0][col][col] == expected

    def test_quadratic_off_diagonal_product(self):
        # the two off-diagonal entries multiply to the square of the
        # textbook square-root entry
        m = two_row_module(2, 2)
        for i in (1,):
            mat = m.T[i]
            for colw, w in enumerate(m.basis):
                partner = cb._swap_labels(w, i)
                if partner in m.index:
                    pm = m.index[partner]
                    d = mat[colw][colw]
                    rad = -(d - U) * (d + U.inv())
                    assert mat[pm][colw] * mat[colw][pm] == rad

    def test_non_skew_rejected(self):
        region = rg.LocalRegion((0,), frozenset(), PARAMS)
        with pytest.raises(cb.CalibError):
            cb.build_module(cb.ModuleSpec(region))

    def test_gamma0_satisfies_pw_relation(self):
        z = Scalar.monomial(u=5)
        region = rg.LocalRegion((F(7, 2), F(9, 2)), frozenset(), PARAMS)
        m = cb.build_module(cb.ModuleSpec(region, z=z))
        for col in range(m.n):
            prod = m.gamma0[col]
            for i in range(1, m.k + 1):
                prod = prod * m.gamma(col, i)
            assert prod == z


class TestPresentation:
    def test_exact_small(self):
        for k in (1, 2):
            for (_l1, l) in sw.level_nodes(SW63, k):
                if sw.zero_multiplicity(SW63, k, l):
                    continue
                rep = cb.check_presentation(two_row_module(k, l), exact=True)
                assert rep["passed"], (k, l, rep["witness"])

    def test_modular_k3(self):
        m = two_row_module(3, 2)
        rep = cb.check_presentation(m, trials=4, seed=3)
        assert rep["passed"] and rep["mode"] == "modular"

    def test_perturbed_module_fails_quadratic(self):
        m = two_row_module(2, 2)
        row, col = next((r, c) for r in range(m.n) for c in range(m.n)
                        if r != c and not m.T[1][r][c].is_zero())
        m.T[1][row][col] = m.T[1][row][col] + ONE
        m._word_cache.clear()
        rep = cb.check_presentation(m, exact=True)
        assert not rep["passed"]
        assert rep["witness"] is not None
        failing = [name for name, ok in rep["relations"].items() if not ok]
        assert any(name.startswith("H:") for name in failing)


class TestEvaluateWord:
    def test_murphy_word_is_diagonal_gamma(self):
        m = two_row_module(2, 2)
        got = m.evaluate_word(wd.murphy_expr(2, 1))
        assert cb.mat_eq(got, m.W[0])
        got2 = m.evaluate_word(wd.murphy_expr(2, 2))
        assert cb.mat_eq(got2, m.W[1])

    def test_quadratic_on_matrices(self):
        m = two_row_module(2, 1)
        t1 = wd.GenExpr.word(2, [wd.T(1)])
        lhs = m.evaluate_word(t1 * t1)
        rhs = cb.mat_add(cb.mat_scale(m.evaluate_word(t1), U - U.inv()),
                         cb.mat_identity(m.n))
        assert cb.mat_eq(lhs, rhs)

    def test_central_word_is_scalar(self):
        m = two_row_module(2, 2)
        zmat = m.evaluate_word(wd._z_expr(2))
        z0 = zmat[0][0]
        assert cb.mat_eq(zmat, cb.mat_scale(cb.mat_identity(m.n), z0))


class TestIdempotents:
    # the region below keeps every boundary idempotent nonzero
    FULL_REGION = (F(5, 2), F(9, 2))

    def test_eigenconditions_and_idempotency(self):
        region = rg.LocalRegion(self.FULL_REGION, frozenset(), PARAMS)
        m = cb.build_module(cb.ModuleSpec(region))
        u, u0s = U, m.u0s
        for name, t0_eig in (("p0_e12", -u0s.inv()), ("p0_12e", u0s)):
            num, norm = wd.idempotent_expr(name, 2)
            p = cb.mat_scale(m.evaluate_word(num), m.spec.specialize(norm).inv())
            assert not cb.mat_is_zero(p)
            assert cb.mat_eq(cb.mat_mul(p, p), p), name
            t0p = cb.mat_mul(m.T[0], p)
            assert cb.mat_eq(t0p, cb.mat_scale(p, t0_eig)), name
            t1p = cb.mat_mul(m.T[1], p)
            assert cb.mat_eq(t1p, cb.mat_scale(p, -u.inv())), name

    def test_wall_reflected_eigenconditions(self):
        region = rg.LocalRegion(self.FULL_REGION, frozenset(), PARAMS)
        m = cb.build_module(cb.ModuleSpec(region))
        uks = m.uks
        t0v = cb.mat_mul(m.W[0], m.t_inv(0))
        for name, eig in (("p0v_e12", -uks.inv()), ("p0v_12e", uks)):
            num, norm = wd.idempotent_expr(name, 2)
            p = cb.mat_scale(m.evaluate_word(num), m.spec.specialize(norm).inv())
            assert not cb.mat_is_zero(p)
            assert cb.mat_eq(cb.mat_mul(p, p), p), name
            assert cb.mat_eq(cb.mat_mul(t0v, p), cb.mat_scale(p, eig)), name
            assert cb.mat_eq(cb.mat_mul(m.T[1], p), cb.mat_scale(p, -U.inv())), name

    def test_pair_differences_match_relators(self):
        rng = random.Random(1)
        regions = [r for r in rg.enumerate_regions(2, PARAMS, 4)
                   if rg.is_skew(r)]
        for region in rng.sample(regions, 5):
            m = cb.build_module(cb.ModuleSpec(region))
            ne, _ = wd.idempotent_expr("p0_e12", 2)
            nt, _ = wd.idempotent_expr("p0_12e", 2)
            delta = m.evaluate_word(nt - ne)
            f0 = m.evaluate_word(wd.f_element("F0", 2))
            assert cb.mat_eq(delta, cb.mat_scale(f0, m.spec.specialize(bb("t0"))))
            nev, _ = wd.idempotent_expr("p0v_e12", 2)
            ntv, _ = wd.idempotent_expr("p0v_12e", 2)
            deltav = m.evaluate_word(ntv - nev)
            f0v = cb._f0v_matrix(m)
            assert cb.mat_eq(deltav, cb.mat_scale(f0v, m.spec.specialize(bb("tk"))))

    def test_nullity_modes_agree(self):
        region = rg.LocalRegion((F(3, 2), F(5, 2)), frozenset({("e", 1)}), PARAMS)
        m = cb.build_module(cb.ModuleSpec(region))
        fast = cb.idempotent_nullity(m)
        slow = cb.idempotent_nullity(m, use_f_forms=False)
        assert fast["vanish"] == slow["vanish"]

    def test_two_row_modules_pass(self):
        for l in (1, 2, 3):
            m = two_row_module(2, l)
            rep = cb.idempotent_nullity(m)
            assert rep["is_tl_module"]
            fs = cb.f_matrices(m)
            assert all(cb.mat_is_zero(mat) for mat in fs.values())

    def test_marked_corner_region_fails(self):
        # weights on both marked diagonals (a non-blue chart node)
        region = rg.LocalRegion((F(3, 2), F(11, 2)), frozenset(), PARAMS)
        m = cb.build_module(cb.ModuleSpec(region))
        rep = cb.idempotent_nullity(m)
        assert not rep["is_tl_module"]

    def test_three_boxes_per_sign_acts_nonzero(self):
        # the small worked configuration is not two-row; its matrices do
        # not annihilate the quotient idempotents (built without the skew
        # guard since its fillings repeat a diagonal two labels apart)
        params = rg.RegionParams(1, 3)
        region = rg.LocalRegion((2, 2, 3), frozenset({("d", 2, 3)}), params)
        m = cb.build_module(cb.ModuleSpec(region, require_skew=False))
        rep = cb.idempotent_nullity(m)
        assert not rep["vanish"]["p_1_111"]
        assert not rep["is_tl_module"]


class TestCharactersAndB:
    def test_central_character_formula(self):
        m = two_row_module(3, 2)
        rep = cb.central_character(m)
        theta = F(9, 2)
        assert rep["theta"] == theta
        expected = -(Scalar.monomial(u=9) + Scalar.monomial(u=-9)) * qint(3)
        assert rep["z"] == expected
        assert rep["matches_convention"]

    def test_scaled_down(self):
        m = two_row_module(3, 2)
        rep = cb.central_character(m)
        theta2 = 9
        assert rep["z"] / qint(3) == -(Scalar.monomial(u=theta2)
                                       + Scalar.monomial(u=-theta2))

    def test_b_matrix_identity(self):
        m = two_row_module(2, 2)
        bc = cb.b_constant(m)
        assert bc["defined"] and bc["verified"]

    def test_b_undefined_reported(self):
        m = two_row_module(2, 0)
        bc = cb.b_constant(m)
        assert not bc["defined"] and bc["b"] is None


class TestNumericSymmetric:
    def test_relations_numerically(self):
        m = two_row_module(2, 2)
        mats = cb.symmetric_matrices(m, {"u": 0.83 + 0.21j})
        n = m.n
        u = 0.83 + 0.21j

        def mm(a, b):
            return [[sum(a[i][l] * b[l][j] for l in range(n))
                     for j in range(n)] for i in range(n)]

        def residual(a, b):
            return max(abs(a[i][j] - b[i][j]) for i in range(n) for j in range(n))

        t1 = mats["T1"]
        quad = mm(t1, t1)
        lin = [[(u - 1 / u) * t1[i][j] + (1 if i == j else 0)
                for j in range(n)] for i in range(n)]
        assert residual(quad, lin) < 1e-10
        assert max(abs(t1[i][j] - t1[j][i]) for i in range(n)
                   for j in range(n)) < 1e-10
        lhs = mm(mm(mats["T0"], t1), mm(mats["T0"], t1))
        rhs = mm(mm(t1, mats["T0"]), mm(t1, mats["T0"]))
        assert residual(lhs, rhs) < 1e-8

    def test_mode_accepted_in_spec(self):
        region = rg.LocalRegion((F(7, 2), F(9, 2)), frozenset(), PARAMS)
        spec = cb.ModuleSpec(region, normalization=cb.NUMERIC_SYMMETRIC)
        m = cb.build_module(spec)
        assert m.n > 0
