import numpy as np
import numpy.testing as npt
import pytest
import scipy.special as sc
from scipy import stats

import dppdisc as dd
from dppdisc import special
from dppdisc.errors import DomainError, ValidationError


TABLE_IDS = ['s1', 's2', 's3', 's4', 'rp2', 'rp3', 'cp1', 'cp2', 'cp3',
             'hp1', 'hp2', 'op2']


def jacobi_sum(L, a, b, x):
    """Explicit finite-sum form of P_L^(a, b)."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    for s in range(L + 1):
        out += (sc.binom(L + a, L - s) * sc.binom(L + b, s)
                * ((x - 1) / 2) ** s * ((x + 1) / 2) ** (L - s))
    return out


class TestPochhammer(object):

    def test_values(self):
        assert special.pochhammer(0.3, 0) == 1.
        assert special.pochhammer(1, 4) == 24.
        assert special.pochhammer(3, 2) == 12.
        npt.assert_allclose(special.pochhammer(0.5, 3), 0.5 * 1.5 * 2.5)

    def test_negative_length(self):
        with pytest.raises(ValidationError):
            special.pochhammer(1., -1)


class TestJacobi(object):

    def test_examples(self):
        J = special.JacobiParams
        assert special.jacobi_eval(J(0.3, -0.2, 0), 0.7) == 1.
        npt.assert_allclose(special.jacobi_eval(J(1, 0, 1), 1.), 2.)
        npt.assert_allclose(special.jacobi_eval(J(0, 0, 2), 0.), -0.5)

    @pytest.mark.parametrize('space_id', TABLE_IDS)
    def test_closed_forms(self, space_id):
        space = dd.get_space(space_id)
        a, b = space.alpha + 1., space.beta
        x = np.linspace(-1, 1, 41)
        for L in range(4):
            npt.assert_allclose(
                special.jacobi_eval(special.JacobiParams(a, b, L), x),
                jacobi_sum(L, a, b, x), rtol=1e-12, atol=1e-12)

    def test_against_scipy(self):
        x = np.linspace(-1, 1, 101)
        for a, b in [(1., 0.), (0.5, -0.5), (8., 3.), (2., 1.)]:
            for L in (5, 20, 60):
                ref = sc.eval_jacobi(L, a, b, x)
                npt.assert_allclose(
                    special.jacobi_eval(special.JacobiParams(a, b, L), x),
                    ref, rtol=1e-9, atol=1e-9 * np.max(np.abs(ref)))

    def test_value_at_one(self):
        for a, b in [(1., 0.), (0.5, -0.5), (3., 1.)]:
            for L in range(12):
                npt.assert_allclose(
                    special.jacobi_eval(special.JacobiParams(a, b, L), 1.),
                    special.pochhammer(a + 1, L) / sc.factorial(L), rtol=1e-12)

    @pytest.mark.parametrize('space_id', TABLE_IDS)
    def test_maximum_at_one(self, space_id):
        space = dd.get_space(space_id)
        a, b = space.alpha + 1., space.beta
        x = np.linspace(-1, 1, 100)
        for L in range(15):
            params = special.JacobiParams(a, b, L)
            top = special.jacobi_eval(params, 1.)
            assert np.all(np.abs(special.jacobi_eval(params, x))
                          <= top * (1 + 1e-12))

    def test_domain(self):
        params = special.JacobiParams(1, 0, 3)
        with pytest.raises(DomainError):
            special.jacobi_eval(params, 1.1)
        with pytest.raises(ValidationError):
            special.JacobiParams(-1, 0, 2)
        with pytest.raises(TypeError):
            special.jacobi_eval((1, 0, 3), 0.5)


class TestPiL(object):

    def test_examples(self):
        for space_id in TABLE_IDS:
            assert special.pi_L(dd.get_space(space_id), 0) == 1
        assert special.pi_L(dd.get_space('s2'), 3) == 16
        assert special.pi_L(dd.get_space('cp2'), 1) == 9

    def test_sphere_exact(self):
        s2 = dd.get_space('s2')
        for L in range(65):
            assert special.pi_L(s2, L) == (L + 1) ** 2

    def test_circle_and_cp(self):
        s1 = dd.get_space('s1')
        assert [special.pi_L(s1, L) for L in range(5)] == [1, 3, 5, 7, 9]
        for d in (1, 2, 3):
            cp = dd.get_space('cp{0}'.format(d))
            for L in range(10):
                assert special.pi_L(cp, L) == dd.projective_count(d, L) ** 2

    @pytest.mark.parametrize('space_id', ['s1', 's2'])
    def test_growth_rate(self, space_id):
        space = dd.get_space(space_id)
        levels = [8, 16, 32, 64]
        fit = stats.linregress(np.log(levels),
                               np.log([special.pi_L(space, L) for L in levels]))
        assert abs(fit.slope - (2 * space.alpha + 2)) <= 0.1

    @pytest.mark.parametrize('space_id', ['s2', 'cp2', 'rp3'])
    def test_asymptotic(self, space_id):
        space = dd.get_space(space_id)
        ratio = (special.pi_L(space, 4000)
                 / special.pi_L_asymptotic(space, 4000))
        npt.assert_allclose(ratio, 1., rtol=5e-3)

    def test_prefactor(self):
        s2 = dd.get_space('s2')
        npt.assert_allclose(special.harmonic_prefactor(s2, 3),
                            special.pochhammer(2, 3) / special.pochhammer(1, 3))
