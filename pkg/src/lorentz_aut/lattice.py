"""Lorentzian lattices, their vectors, and integral isometries.

Vectors are 1-d object arrays of ints (lattice vectors) or Fractions
(rational vectors) in the lattice basis. Matrices act on column vectors, so
``(u @ v).apply(x) == u.apply(v.apply(x))``.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd

import numpy as np

from . import linalg
from .errors import ConeError, DimensionError, NotIsometryError, SignatureError, ZeroVectorError


def signature(gram) -> tuple[int, int, int]:
    """Inertia ``(p, q, z)`` of a symmetric integer or rational matrix.

    Exact symmetric elimination: take a nonzero diagonal pivot when one exists,
    otherwise split off a hyperbolic pair ``[[0, b], [b, 0]]`` (one positive and
    one negative direction) using a nonzero off-diagonal entry.
    """
    a = linalg.frac_array(gram)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError("gram matrix must be square")
    if not linalg.mat_equal(a, a.T):
        raise SignatureError("gram matrix is not symmetric")
    p = q = z = 0
    while a.shape[0]:
        n = a.shape[0]
        diag = next((i for i in range(n) if a[i, i] != 0), None)
        if diag is not None:
            d = a[diag, diag]
            if d > 0:
                p += 1
            else:
                q += 1
            rest = [i for i in range(n) if i != diag]
            col = a[rest, diag]
            a = a[np.ix_(rest, rest)] - np.outer(col, col) / d
            continue
        off = next(((i, j) for i in range(n) for j in range(i + 1, n) if a[i, j] != 0), None)
        if off is None:
            z += n
            break
        i, j = off
        p += 1
        q += 1
        b = a[i, j]
        # block [[0, b], [b, 0]] has inverse [[0, 1/b], [1/b, 0]]
        rest = [k for k in range(n) if k not in (i, j)]
        ci = a[rest, i]
        cj = a[rest, j]
        a = a[np.ix_(rest, rest)] - (np.outer(ci, cj) + np.outer(cj, ci)) / b
    return p, q, z


class Lattice:
    """Integer symmetric form of signature (1, n-1) with a chosen positive cone.

    ``cone_ref`` is an interior vector of the chosen component; it defaults to
    the first basis vector when that vector has positive square.
    """

    def __init__(self, gram, cone_ref=None):
        g = linalg.int_matrix(gram)
        if g.ndim != 2 or g.shape[0] != g.shape[1] or g.shape[0] == 0:
            raise DimensionError("gram matrix must be a nonempty square matrix")
        if not linalg.mat_equal(g, g.T):
            raise SignatureError("gram matrix is not symmetric")
        n = g.shape[0]
        sig = signature(g)
        if sig != (1, n - 1, 0):
            raise SignatureError(f"signature {sig} is not (1, {n - 1}, 0)")
        self.gram = g
        self.gram.flags.writeable = False
        if cone_ref is None:
            if g[0, 0] <= 0:
                raise ConeError("first basis vector has non-positive square; pass cone_ref")
            cone_ref = [1] + [0] * (n - 1)
        ref = linalg.int_vector(list(cone_ref))
        if len(ref) != n:
            raise DimensionError("cone_ref has wrong length")
        if self.pairing(ref, ref) <= 0:
            raise ConeError("cone_ref must have positive square")
        self.cone_ref = ref
        self.cone_ref.flags.writeable = False

    @property
    def rank(self) -> int:
        return self.gram.shape[0]

    def __repr__(self):
        return f"Lattice(rank={self.rank}, cone_ref={list(self.cone_ref)})"

    def __eq__(self, other):
        return (isinstance(other, Lattice) and linalg.mat_equal(self.gram, other.gram)
                and linalg.mat_equal(self.cone_ref, other.cone_ref))

    def __hash__(self):
        return hash((linalg.mat_key(self.gram), tuple(self.cone_ref)))

    def vector(self, coords) -> np.ndarray:
        v = linalg.int_vector(list(coords))
        if len(v) != self.rank:
            raise DimensionError(f"vector of length {len(v)} in a rank {self.rank} lattice")
        return v

    def pairing(self, x, y):
        x = np.asarray(x, dtype=object)
        y = np.asarray(y, dtype=object)
        if x.shape != (self.rank,) or y.shape != (self.rank,):
            raise DimensionError("vector length does not match lattice rank")
        return x @ self.gram @ y

    def square(self, x):
        return self.pairing(x, x)

    def in_positive_cone(self, x) -> bool:
        """True iff x^2 >= 0 and x lies on the chosen side (x . cone_ref > 0)."""
        x = np.asarray(x, dtype=object)
        if linalg.is_zero(x):
            raise ZeroVectorError("the zero vector is not in either cone component")
        return self.square(x) >= 0 and self.pairing(x, self.cone_ref) > 0

    def primitivize(self, x) -> np.ndarray:
        """Primitive integer multiple of ``x``, oriented toward the positive cone.

        Sign rule: positive pairing with ``cone_ref`` when that pairing is
        nonzero, otherwise first nonzero coordinate positive.
        """
        x = np.asarray(x, dtype=object)
        if linalg.is_zero(x):
            raise ZeroVectorError("cannot primitivize the zero vector")
        v = linalg.primitive_part(x)
        s = self.pairing(v, self.cone_ref)
        if s < 0 or (s == 0 and next(c for c in v if c != 0) < 0):
            v = -v
        return v

    def orthogonal_complement(self, vectors) -> list[np.ndarray]:
        """Integer basis of the sublattice orthogonal to all ``vectors``."""
        rows = linalg.int_matrix([list(np.asarray(v) @ self.gram) for v in vectors])
        return linalg.integer_kernel(rows)

    def reflection(self, r) -> "Isometry":
        """Reflection x -> x - 2 (x.r)/(r.r) r; must be integral on the lattice."""
        r = self.vector(r)
        rr = self.square(r)
        if rr == 0:
            raise ZeroVectorError("cannot reflect in an isotropic vector")
        m = linalg.identity(self.rank) - np.outer(r, r @ self.gram) * Fraction(2, 1) / rr
        if not linalg.is_integral(m):
            raise NotIsometryError("reflection is not integral on this lattice")
        return Isometry(linalg.as_integral(m), self)


def is_isometry(u, lattice: Lattice) -> tuple[bool, tuple[int, int] | None]:
    """Check U^T G U = G. Returns (ok, first violated entry or None)."""
    u = np.asarray(u, dtype=object)
    n = lattice.rank
    if u.shape != (n, n):
        return False, (0, 0)
    lhs = u.T @ lattice.gram @ u
    for i in range(n):
        for j in range(n):
            if lhs[i, j] != lattice.gram[i, j]:
                return False, (i, j)
    return True, None


def in_positive_cone(x, lattice: Lattice) -> bool:
    return lattice.in_positive_cone(x)


def primitivize(x, lattice: Lattice) -> np.ndarray:
    return lattice.primitivize(x)


def pairing(x, y, lattice: Lattice):
    return lattice.pairing(x, y)


class Isometry:
    """Integral isometry of a lattice lying in O_+ (preserves the chosen cone)."""

    __slots__ = ("matrix", "lattice", "_key")

    def __init__(self, matrix, lattice: Lattice):
        m = linalg.int_matrix(matrix)
        ok, bad = is_isometry(m, lattice)
        if not ok:
            raise NotIsometryError(f"matrix does not preserve the form (entry {bad})", entry=bad)
        # (U c) . c > 0 for the interior reference vector c
        if lattice.pairing(m @ lattice.cone_ref, lattice.cone_ref) <= 0:
            raise ConeError("matrix swaps the two cone components (not in O_+)")
        m.flags.writeable = False
        self.matrix = m
        self.lattice = lattice
        self._key = linalg.mat_key(m)

    @classmethod
    def identity(cls, lattice: Lattice) -> "Isometry":
        return cls(linalg.identity(lattice.rank), lattice)

    @property
    def n(self) -> int:
        return self.lattice.rank

    def apply(self, x) -> np.ndarray:
        return self.matrix @ np.asarray(x, dtype=object)

    def __matmul__(self, other: "Isometry") -> "Isometry":
        if other.lattice is not self.lattice and other.lattice != self.lattice:
            raise DimensionError("isometries of different lattices")
        return Isometry._trusted(self.matrix @ other.matrix, self.lattice)

    def inverse(self) -> "Isometry":
        g = self.lattice.gram
        inv = linalg.as_integral(linalg.inverse(g) @ self.matrix.T @ g)
        return Isometry._trusted(inv, self.lattice)

    def __pow__(self, k: int) -> "Isometry":
        base = self if k >= 0 else self.inverse()
        return Isometry._trusted(linalg.mat_pow(base.matrix, abs(k)), self.lattice)

    def conjugate_by(self, w: "Isometry") -> "Isometry":
        """w u w^-1."""
        return w @ self @ w.inverse()

    def is_identity(self) -> bool:
        return linalg.mat_equal(self.matrix, linalg.identity(self.n))

    def __eq__(self, other):
        return isinstance(other, Isometry) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Isometry({self.matrix.tolist()})"

    @classmethod
    def _trusted(cls, matrix, lattice):
        # products and inverses of checked isometries need no re-validation
        obj = cls.__new__(cls)
        m = linalg.normalize(matrix)
        m.flags.writeable = False
        obj.matrix = m
        obj.lattice = lattice
        obj._key = linalg.mat_key(m)
        return obj


def diagonal_lattice(n: int) -> Lattice:
    """The odd unimodular lattice Z^{1,n-1} with gram diag(1, -1, ..., -1)."""
    return Lattice(np.diag([1] + [-1] * (n - 1)).tolist())


def content(v) -> int:
    g = 0
    for c in v:
        g = gcd(g, int(c))
    return g
