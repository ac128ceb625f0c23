"""
Value types for the 2x2 complex matrix groups of the two Manin triples.

SL(2,C) is the Manin group of both triples. SU(2) and the lower-triangular
E(2) double cover play the role of G; the upper-triangular Borel group with
positive diagonal is the common dual G*.
"""

from dataclasses import dataclass

import numpy as np

from errors import InvalidInputError

TOL_GROUP = 1e-12


@dataclass(frozen=True)
class Mat2C:
    """Row-major 2x2 complex matrix [[a, b], [c, d]]."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, complex(getattr(self, name)))

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    @classmethod
    def diag(cls, a, d):
        return cls(a, 0, 0, d)

    @classmethod
    def from_array(cls, array):
        m = np.asarray(array, dtype=complex)
        if m.shape != (2, 2):
            raise InvalidInputError(f"Expected a 2x2 array, got shape {m.shape}")
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    def to_array(self):
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    def __matmul__(self, other):
        return Mat2C(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __add__(self, other):
        return Mat2C(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def __sub__(self, other):
        return Mat2C(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def __neg__(self):
        return Mat2C(-self.a, -self.b, -self.c, -self.d)

    def scale(self, factor):
        return Mat2C(factor * self.a, factor * self.b, factor * self.c, factor * self.d)

    def dagger(self):
        return Mat2C(self.a.conjugate(), self.c.conjugate(), self.b.conjugate(), self.d.conjugate())

    def det(self):
        return self.a * self.d - self.b * self.c

    def trace(self):
        return self.a + self.d

    def inverse_sl2(self):
        """Inverse of a determinant-one matrix (adjugate)."""
        return Mat2C(self.d, -self.b, -self.c, self.a)

    def max_abs(self):
        """Largest entry modulus, the distance measure used for recomposition checks."""
        return max(abs(self.a), abs(self.b), abs(self.c), abs(self.d))

    def unitarity_defect(self):
        return (self.dagger() @ self - Mat2C.identity()).max_abs()


J1 = Mat2C(0, 1j, 1j, 0)
J2 = Mat2C(0, -1, 1, 0)
J3 = Mat2C(1j, 0, 0, -1j)


@dataclass(frozen=True)
class Su2Vector:
    """Element k1*J1 + k2*J2 + k3*J3 of su(2), stored by its real coefficients."""

    k1: float
    k2: float
    k3: float

    def __post_init__(self):
        for name in ("k1", "k2", "k3"):
            object.__setattr__(self, name, float(getattr(self, name)))

    @classmethod
    def zero(cls):
        return cls(0.0, 0.0, 0.0)

    @classmethod
    def from_array(cls, values):
        k = np.asarray(values, dtype=float)
        return cls(k[0], k[1], k[2])

    @classmethod
    def from_matrix(cls, m):
        """
        Coefficients of a traceless anti-hermitian matrix in the J basis.

        Args:
            m (Mat2C): matrix in su(2)

        Returns:
            Su2Vector: its coordinates (the anti-hermitian part is used)
        """
        k3 = ((m.a - m.d) / 2j).real
        k1 = ((m.b + m.c) / 2j).real
        k2 = ((m.c - m.b) / 2).real
        return cls(k1, k2, k3)

    @property
    def matrix(self):
        return Mat2C(
            1j * self.k3,
            1j * self.k1 - self.k2,
            1j * self.k1 + self.k2,
            -1j * self.k3,
        )

    def to_array(self):
        return np.array([self.k1, self.k2, self.k3])

    def norm(self):
        return float(np.sqrt(self.k1 * self.k1 + self.k2 * self.k2 + self.k3 * self.k3))

    def scale(self, factor):
        return Su2Vector(factor * self.k1, factor * self.k2, factor * self.k3)

    def __add__(self, other):
        return Su2Vector(self.k1 + other.k1, self.k2 + other.k2, self.k3 + other.k3)

    def __neg__(self):
        return self.scale(-1.0)


E1_VECTOR = Su2Vector(1.0, 0.0, 0.0)
E2_VECTOR = Su2Vector(0.0, 1.0, 0.0)
E3_VECTOR = Su2Vector(0.0, 0.0, 1.0)


@dataclass(frozen=True)
class SU2Element:
    """Element of SU(2); validated to unitarity and unit determinant."""

    m: Mat2C

    def __post_init__(self):
        defect = self.m.unitarity_defect()
        if defect > TOL_GROUP:
            raise InvalidInputError(f"Matrix is not unitary (defect {defect:.3e})")
        det_error = abs(self.m.det() - 1.0)
        if det_error > TOL_GROUP:
            raise InvalidInputError(f"Matrix determinant differs from 1 by {det_error:.3e}")

    @classmethod
    def identity(cls):
        return cls(Mat2C.identity())

    @classmethod
    def from_column(cls, u, v):
        """The SU(2) matrix [[u, -conj(v)], [v, conj(u)]] with |u|^2 + |v|^2 = 1."""
        u = complex(u)
        v = complex(v)
        return cls(Mat2C(u, -v.conjugate(), v, u.conjugate()))

    @property
    def matrix(self):
        return self.m

    def __matmul__(self, other):
        return SU2Element(self.m @ other.m)

    def inverse(self):
        return SU2Element(self.m.dagger())


@dataclass(frozen=True)
class E2Element:
    """Lower-triangular [[alpha, 0], [gamma, conj(alpha)]] with |alpha| = 1."""

    alpha: complex
    gamma: complex

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "gamma", complex(self.gamma))
        if abs(abs(self.alpha) - 1.0) > TOL_GROUP:
            raise InvalidInputError(f"|alpha| must be 1, got {abs(self.alpha):.15g}")

    @classmethod
    def identity(cls):
        return cls(1.0, 0.0)

    @property
    def matrix(self):
        return Mat2C(self.alpha, 0, self.gamma, self.alpha.conjugate())

    @property
    def plane_coordinate(self):
        """Coordinate x = conj(alpha)*gamma of the coset in E(2)/H (the plane)."""
        return self.alpha.conjugate() * self.gamma

    def __matmul__(self, other):
        product = self.matrix @ other.matrix
        return E2Element(product.a, product.c)


@dataclass(frozen=True)
class BorelElement:
    """Upper-triangular [[rho, n], [0, 1/rho]] with rho > 0."""

    rho: float
    n: complex

    def __post_init__(self):
        object.__setattr__(self, "rho", float(self.rho))
        object.__setattr__(self, "n", complex(self.n))
        if not self.rho > 0.0:
            raise InvalidInputError(f"rho must be positive, got {self.rho}")

    @classmethod
    def identity(cls):
        return cls(1.0, 0.0)

    @property
    def matrix(self):
        return Mat2C(self.rho, self.n, 0, 1.0 / self.rho)

    def __matmul__(self, other):
        product = self.matrix @ other.matrix
        return BorelElement(product.a.real, product.b)
