"""
Manin-group factorizations of SL(2,C) and the dressing action.

SU(2) x Borel splits are global (column/row normalization, the 2x2 case of
Gram-Schmidt). E(2) x Borel splits exist only where one diagonal entry is
non-zero; entries below TOL_SINGULAR raise, entries below NEAR_SINGULAR are
returned with a near-singular flag.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any

import numpy as np

from errors import InvalidInputError, OutsideDecomposableSetError
from manin.groups import TOL_GROUP, BorelElement, E2Element, SU2Element

logger = logging.getLogger(__name__)

TOL_RECOMPOSE = 1e-12
TOL_SINGULAR = 1e-10
NEAR_SINGULAR = 1e-6


class Triple(str, Enum):
    """The two Manin triples (SL(2,C); G, G*) used by the models."""

    SU2 = "su2"
    E2 = "e2"


@dataclass(frozen=True)
class Factorization:
    """
    Result of a two-factor split M = first @ second.

    Unpacks as the pair (first, second); near_singular flags an E(2) split
    whose pivot lies in the band [TOL_SINGULAR, NEAR_SINGULAR).
    """

    first: Any
    second: Any
    near_singular: bool = False

    def __iter__(self):
        return iter((self.first, self.second))

    def recompose(self):
        return self.first.matrix @ self.second.matrix


def _check_unimodular(M):
    det_error = abs(M.det() - 1.0)
    if det_error > TOL_GROUP:
        raise InvalidInputError(f"Matrix determinant differs from 1 by {det_error:.3e}")


def _check_pivot(value, label):
    size = abs(value)
    if size < TOL_SINGULAR:
        raise OutsideDecomposableSetError(
            f"Entry {label} = {value} is below {TOL_SINGULAR:g}; matrix is outside the decomposable set"
        )
    if size < NEAR_SINGULAR:
        logger.warning(f"Near-singular factorization: |{label}| = {size:.3e}")
        return True
    return False


def factor_su2_borel(M):
    """
    Split M in SL(2,C) as k @ b with k in SU(2) and b upper-triangular, positive diagonal.

    Args:
        M (Mat2C): determinant-one matrix

    Returns:
        Factorization: (SU2Element, BorelElement)
    """
    _check_unimodular(M)
    rho = float(np.hypot(abs(M.a), abs(M.c)))
    u = M.a / rho
    v = M.c / rho
    k = SU2Element.from_column(u, v)
    n = u.conjugate() * M.b + v.conjugate() * M.d
    return Factorization(k, BorelElement(rho, n))


def factor_borel_su2(M):
    """
    Split M in SL(2,C) as b @ k with b in the Borel group and k in SU(2).

    Args:
        M (Mat2C): determinant-one matrix

    Returns:
        Factorization: (BorelElement, SU2Element)
    """
    _check_unimodular(M)
    rho = 1.0 / float(np.hypot(abs(M.c), abs(M.d)))
    v = rho * M.c
    u = (rho * M.d).conjugate()
    k = SU2Element.from_column(u, v)
    n = M.a * v.conjugate() + M.b * u
    return Factorization(BorelElement(rho, n), k)


def factor_e2_borel(M):
    """
    Split M as l @ u with l in E(2) (lower-triangular) and u in the Borel group.

    Args:
        M (Mat2C): determinant-one matrix with non-zero entry (1,1)

    Returns:
        Factorization: (E2Element, BorelElement)
    """
    _check_unimodular(M)
    near = _check_pivot(M.a, "M[0,0]")
    rho = abs(M.a)
    alpha = M.a / rho
    l = E2Element(alpha, M.c / rho)
    u = BorelElement(rho, M.b * alpha.conjugate())
    return Factorization(l, u, near)


def factor_borel_e2(M):
    """
    Split M as u @ l with u in the Borel group and l in E(2).

    conj(alpha)/rho = M[1,1] fixes both factors.

    Args:
        M (Mat2C): determinant-one matrix with non-zero entry (2,2)

    Returns:
        Factorization: (BorelElement, E2Element)
    """
    _check_unimodular(M)
    near = _check_pivot(M.d, "M[1,1]")
    rho = 1.0 / abs(M.d)
    alpha = (rho * M.d).conjugate()
    l = E2Element(alpha, rho * M.c)
    u = BorelElement(rho, M.b * alpha)
    return Factorization(u, l, near)


def dressing(g, gstar, triple):
    """
    Dressing action: refactor g @ gstar as gstar' @ g'.

    Args:
        g (SU2Element | E2Element): group element
        gstar (BorelElement): dual group element
        triple (Triple | str): which Manin triple g belongs to

    Returns:
        Factorization: (dressed dual element gstar', group element g')
    """
    triple = Triple(triple)
    product = g.matrix @ gstar.matrix
    if triple is Triple.SU2:
        return factor_borel_su2(product)
    return factor_borel_e2(product)
