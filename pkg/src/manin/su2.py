"""
su(2) structure: exponential, invariant metric, adjoint action, and the
Manin pairing (1/eps) Im tr(XY) on sl(2,C).

Norm convention: |X| = sqrt(su2_metric(X, X)). Since every X in su(2) squares
to -|X|^2 times the identity, exp(tX) acts on su(2) by a rotation of angle
2|X|t about X.
"""

import numpy as np

from errors import InvalidParameterError
from manin.groups import E1_VECTOR, E2_VECTOR, E3_VECTOR, Mat2C, SU2Element, Su2Vector


def su2_exp(X):
    """
    Exponential of an su(2) element by the closed-form Rodrigues formula.

    exp(X) = cos|X| * 1 + (sin|X| / |X|) * X, exact for every norm.

    Args:
        X (Su2Vector): Lie algebra element

    Returns:
        SU2Element: exp(X)
    """
    theta = X.norm()
    cos_theta = np.cos(theta)
    sinc_theta = np.sinc(theta / np.pi)
    m = X.matrix.scale(sinc_theta) + Mat2C.diag(cos_theta, cos_theta)
    return SU2Element(m)


def su2_metric(X, Y):
    """Invariant metric -1/2 Re tr(XY); the basis J1, J2, J3 is orthonormal."""
    return X.k1 * Y.k1 + X.k2 * Y.k2 + X.k3 * Y.k3


def manin_pairing(X, Y, epsilon):
    """
    Invariant pairing of the Manin triples on sl(2,C).

    Args:
        X (Mat2C): first matrix
        Y (Mat2C): second matrix
        epsilon (float): deformation parameter

    Returns:
        float: (1/epsilon) Im tr(XY)
    """
    if epsilon == 0:
        raise InvalidParameterError("The Manin pairing needs a non-zero epsilon")
    return (X @ Y).trace().imag / epsilon


def adjoint(g, X):
    """
    Adjoint action Ad_g(X) = g X g^{-1} on su(2).

    Args:
        g (SU2Element): group element
        X (Su2Vector): algebra element

    Returns:
        Su2Vector: the conjugated element
    """
    return Su2Vector.from_matrix(g.m @ X.matrix @ g.m.dagger())


def rotation_matrix(g):
    """3x3 orthogonal matrix of Ad_g in the orthonormal J basis (columns are images of J1, J2, J3)."""
    columns = [
        adjoint(g, E1_VECTOR).to_array(),
        adjoint(g, E2_VECTOR).to_array(),
        adjoint(g, E3_VECTOR).to_array(),
    ]
    return np.column_stack(columns)
