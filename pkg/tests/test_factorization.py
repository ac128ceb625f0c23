import numpy as np
import pytest

from checks.sampling import complex_normal, random_sl2c, random_su2
from errors import InvalidInputError, OutsideDecomposableSetError
from manin.factorization import (
    TOL_RECOMPOSE,
    Triple,
    dressing,
    factor_borel_e2,
    factor_borel_su2,
    factor_e2_borel,
    factor_su2_borel,
)
from manin.groups import BorelElement, E2Element, Mat2C, SU2Element

SPLITS = [factor_su2_borel, factor_borel_su2, factor_e2_borel, factor_borel_e2]


@pytest.mark.parametrize("split", SPLITS)
def test_random_matrices_recompose(rng, split):
    for _ in range(1000):
        m = random_sl2c(rng)
        assert (split(m).recompose() - m).max_abs() <= TOL_RECOMPOSE


def test_factor_types(rng):
    m = random_sl2c(rng)
    k, b = factor_su2_borel(m)
    assert isinstance(k, SU2Element) and isinstance(b, BorelElement)
    b, k = factor_borel_su2(m)
    assert isinstance(k, SU2Element) and isinstance(b, BorelElement)
    l, u = factor_e2_borel(m)
    assert isinstance(l, E2Element) and isinstance(u, BorelElement)
    u, l = factor_borel_e2(m)
    assert isinstance(l, E2Element) and isinstance(u, BorelElement)


def test_identity_splits_trivially():
    for split in SPLITS:
        first, second = split(Mat2C.identity())
        assert (first.matrix - Mat2C.identity()).max_abs() < 1e-15
        assert (second.matrix - Mat2C.identity()).max_abs() < 1e-15


def test_e2_split_domain():
    with pytest.raises(OutsideDecomposableSetError):
        factor_e2_borel(Mat2C(0.0, 1.0, -1.0, 0.0))
    with pytest.raises(OutsideDecomposableSetError):
        factor_borel_e2(Mat2C(0.0, 1.0, -1.0, 0.0))

    near = factor_e2_borel(Mat2C(1e-8, 1.0, -1.0, 0.0))
    assert near.near_singular
    far = factor_e2_borel(Mat2C(2.0, 0.0, 0.0, 0.5))
    assert not far.near_singular


def test_rejects_non_unimodular():
    with pytest.raises(InvalidInputError):
        factor_su2_borel(Mat2C(2.0, 0.0, 0.0, 2.0))


def test_dressing_refactors_product(rng):
    g = random_su2(rng)
    gstar = BorelElement(1.7, 0.4 - 0.2j)
    dressed, g_prime = dressing(g, gstar, Triple.SU2)
    assert ((dressed.matrix @ g_prime.matrix) - (g.matrix @ gstar.matrix)).max_abs() < 1e-13

    l = E2Element(np.exp(0.9j), 0.5 + 0.3j)
    dressed, l_prime = dressing(l, gstar, "e2")
    assert isinstance(l_prime, E2Element)
    assert ((dressed.matrix @ l_prime.matrix) - (l.matrix @ gstar.matrix)).max_abs() < 1e-13


def test_dressing_composes_along_products(rng):
    for _ in range(50):
        g1, g2 = random_su2(rng), random_su2(rng)
        gstar = BorelElement(np.exp(rng.uniform(-1.0, 1.0)), complex_normal(rng))
        dressed, g_prime = dressing(g1 @ g2, gstar, Triple.SU2)
        inner_dual, g2_prime = dressing(g2, gstar, Triple.SU2)
        outer_dual, g1_prime = dressing(g1, inner_dual, Triple.SU2)
        assert (dressed.matrix - outer_dual.matrix).max_abs() <= 1e-11
        assert (g_prime.matrix - g1_prime.matrix @ g2_prime.matrix).max_abs() <= 1e-11

    l1, l2 = E2Element(np.exp(0.4j), 0.3 - 0.2j), E2Element(np.exp(-1.1j), 0.1 + 0.5j)
    gstar = BorelElement(1.3, 0.2 + 0.1j)
    dressed, l_prime = dressing(l1 @ l2, gstar, Triple.E2)
    inner_dual, l2_prime = dressing(l2, gstar, Triple.E2)
    outer_dual, l1_prime = dressing(l1, inner_dual, Triple.E2)
    assert (dressed.matrix - outer_dual.matrix).max_abs() <= 1e-11
    assert (l_prime.matrix - l1_prime.matrix @ l2_prime.matrix).max_abs() <= 1e-11


def test_unknown_triple():
    with pytest.raises(ValueError):
        Triple("so3")
