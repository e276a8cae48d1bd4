"""Parabolic translations along an isotropic direction.

For isotropic theta, eta in the positive cone with t = theta.eta > 0 and a
vector zeta orthogonal to both, the translation u_zeta is the isometry

    u(theta) = theta,
    u(eta)   = a theta + eta + zeta,            a = -zeta^2 / (2 t),
    u(y)     = y - (y.zeta / t) theta           for y orthogonal to theta, eta.

``zeta -> u_zeta`` is an isomorphism from the complement onto the group of
isometries fixing theta and acting trivially on theta^perp / R theta.
Matrices are kept over Q; integrality is a property, not a requirement.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .classify import HYPERBOLIC, Classification, classify, sign_right_of, spectral_radius
from .errors import FrameError, InconsistencyError, NotTranslationError
from .lattice import Isometry, Lattice, signature


class TranslationFrame:
    def __init__(self, lattice: Lattice, theta, eta):
        theta = lattice.vector(theta)
        eta = lattice.vector(eta)
        if lattice.square(theta) != 0 or lattice.square(eta) != 0:
            raise FrameError("theta and eta must be isotropic")
        if linalg.is_zero(theta) or linalg.is_zero(eta):
            raise FrameError("theta and eta must be nonzero")
        if not (lattice.in_positive_cone(theta) and lattice.in_positive_cone(eta)):
            raise FrameError("theta and eta must lie in the positive cone")
        te = lattice.pairing(theta, eta)
        if te <= 0:
            # two isotropic cone vectors pair to zero only when collinear
            raise FrameError("theta and eta are collinear")
        self.lattice = lattice
        self.theta = theta
        self.eta = eta
        self.pairing_te = Fraction(te)
        rows = linalg.int_matrix([list(theta @ lattice.gram), list(eta @ lattice.gram)])
        self.complement_basis = linalg.nullspace(rows)
        n = lattice.rank
        if n > 2:
            cb = linalg.int_matrix([list(v) for v in self.complement_basis]).T
            if signature(cb.T @ lattice.gram @ cb) != (0, n - 2, 0):
                raise FrameError("form is not negative definite on the complement")

    def __repr__(self):
        return f"TranslationFrame(theta={list(self.theta)}, eta={list(self.eta)})"

    def swapped(self) -> "TranslationFrame":
        return TranslationFrame(self.lattice, self.eta, self.theta)

    def project(self, x) -> np.ndarray:
        """Orthogonal projection onto theta^perp cap eta^perp along span(theta, eta)."""
        lat = self.lattice
        x = linalg.frac_array(x)
        t = self.pairing_te
        return x - (lat.pairing(x, self.eta) / t) * self.theta - (lat.pairing(x, self.theta) / t) * self.eta

    def in_complement(self, z) -> bool:
        lat = self.lattice
        return lat.pairing(z, self.theta) == 0 and lat.pairing(z, self.eta) == 0


@dataclass(frozen=True, eq=False)
class Translation:
    frame: TranslationFrame
    zeta: np.ndarray
    matrix: np.ndarray
    a: Fraction

    @property
    def integral(self) -> bool:
        return linalg.is_integral(self.matrix)

    @property
    def is_identity(self) -> bool:
        return linalg.is_zero(self.zeta)

    def as_isometry(self) -> Isometry:
        if not self.integral:
            raise NotTranslationError("translation matrix is not integral; take integral_power() first")
        return Isometry(linalg.as_integral(self.matrix), self.frame.lattice)

    def power(self, k: int) -> "Translation":
        return make_translation(self.frame, k * self.zeta)

    def inverse(self) -> "Translation":
        return self.power(-1)

    def integral_power(self) -> int:
        """Least k >= 1 with u^k integral (exists since (u - id)^3 = 0)."""
        x = self.matrix - linalg.identity(self.frame.lattice.rank)
        x2 = x @ x
        pairs = [(Fraction(a), Fraction(b)) for a, b in zip(x.flat, x2.flat) if a != 0 or b != 0]
        den = 1
        for a, b in pairs:
            den = int(np.lcm(den, np.lcm(a.denominator, b.denominator)))
        # u^k = id + k X + C(k, 2) X^2
        for k in range(1, 2 * den ** 2 + 1):
            c2 = k * (k - 1) // 2
            if all((k * a + c2 * b).denominator == 1 for a, b in pairs):
                return k
        raise InconsistencyError("no integral power found")


def make_translation(frame: TranslationFrame, zeta) -> Translation:
    lat = frame.lattice
    zeta = linalg.frac_array(zeta)
    if zeta.shape != (lat.rank,):
        raise FrameError("zeta has the wrong length")
    if not frame.in_complement(zeta):
        raise FrameError("zeta is not orthogonal to theta and eta")
    t = frame.pairing_te
    g = lat.gram
    a = -lat.square(zeta) / (2 * t)
    g_theta = frame.theta @ g
    g_zeta = zeta @ g
    n = lat.rank
    # u(x) = x + (x.theta / t) zeta + [a (x.theta) / t - (x.zeta) / t] theta
    m = (linalg.frac_array(linalg.identity(n))
         + np.outer(zeta, g_theta) / t
         + np.outer(frame.theta, a * g_theta / t - g_zeta / t))
    return Translation(frame, linalg.normalize(zeta), linalg.normalize(m), Fraction(a))


def _matrix_of(u):
    if isinstance(u, Translation):
        return u.matrix
    if isinstance(u, Isometry):
        return u.matrix
    return np.asarray(u, dtype=object)


def is_translation(u, frame: TranslationFrame) -> bool:
    """Does u fix theta and act as the identity on theta^perp / Q theta?"""
    m = linalg.frac_array(_matrix_of(u))
    lat = frame.lattice
    theta = frame.theta
    if not linalg.mat_equal(m @ theta, theta):
        return False
    for y in lat.orthogonal_complement([theta]):
        diff = m @ y - y
        if linalg.is_zero(diff):
            continue
        # diff must be a multiple of theta
        if linalg.rank(linalg.frac_array(np.vstack([diff, theta]))) != 1:
            return False
    return True


def decompose_translation(u, frame: TranslationFrame) -> np.ndarray:
    """zeta = pi(u(eta)); the inverse of :func:`make_translation`."""
    if not is_translation(u, frame):
        raise NotTranslationError("isometry is not a translation along the frame's theta")
    m = linalg.frac_array(_matrix_of(u))
    zeta = linalg.normalize(frame.project(m @ frame.eta))
    rebuilt = make_translation(frame, zeta).matrix
    if not linalg.mat_equal(rebuilt, m):
        raise InconsistencyError("translation is not determined by its projection")
    return zeta


def translation_from_isometry(u, frame: TranslationFrame) -> Translation:
    return make_translation(frame, decompose_translation(u, frame))


@dataclass(frozen=True, eq=False)
class HyperbolicWitness:
    word: str  # "uv" or "u^-1v"
    matrix: np.ndarray
    char_poly: tuple
    spectral_radius_approx: float
    classification: Classification | None  # present when the product is integral
    other_hyperbolic: bool

    @property
    def tag(self) -> str:
        return HYPERBOLIC


def is_hyperbolic_matrix(m) -> bool:
    """For a real O_+ isometry: hyperbolic iff the char poly changes sign just right of 1.

    A hyperbolic element has exactly one (simple) eigenvalue in (1, inf);
    elliptic and parabolic ones have none, so the sign of p(1+) decides.
    """
    cp = linalg.charpoly(m)
    den = 1
    for c in cp:
        den = int(np.lcm(den, Fraction(c).denominator))
    ints = [int(Fraction(c) * den) for c in cp]
    return sign_right_of(ints, 1) < 0


def hyperbolic_from_pair(u: Translation, v: Translation) -> HyperbolicWitness:
    """Return whichever of ``u v`` and ``u^-1 v`` is hyperbolic (``u v`` on ties)."""
    lat = u.frame.lattice
    if u.is_identity or v.is_identity:
        raise FrameError("translations must be nonzero")
    th, et = u.frame.theta, v.frame.theta
    if linalg.rank(np.vstack([th, et])) < 2:
        raise FrameError("translation directions are collinear")
    uv = u.matrix @ v.matrix
    uinv_v = u.inverse().matrix @ v.matrix
    hyp_uv = is_hyperbolic_matrix(uv)
    hyp_inv = is_hyperbolic_matrix(uinv_v)
    if not (hyp_uv or hyp_inv):
        raise InconsistencyError("neither uv nor u^-1 v is hyperbolic")
    word, m, other = ("uv", uv, hyp_inv) if hyp_uv else ("u^-1v", uinv_v, hyp_uv)
    m = linalg.normalize(m)
    cp = tuple(linalg.charpoly(m))
    cls = None
    if linalg.is_integral(m):
        cls = classify(Isometry(linalg.as_integral(m), lat))
        if cls.tag != HYPERBOLIC:
            raise InconsistencyError("sign test and classification disagree")
        rho = cls.spectral_radius_approx
    else:
        rho = spectral_radius(np.array(m, dtype=float), lat.cone_ref)
    return HyperbolicWitness(word, m, cp, rho, cls, other)


def check_ray_proportionality(u: Translation, v: Translation, x) -> Fraction | None:
    """Positive t with psi(v) = t phi(u), given u(x) = v(x) for some x in the cone.

    phi and psi are the decompositions along (theta, eta) and (eta, theta).
    Returns None if the two vectors are not positively proportional.
    """
    lat = u.frame.lattice
    x = lat.vector(x)
    if not lat.in_positive_cone(x):
        raise FrameError("x is not in the positive cone")
    if not linalg.mat_equal(u.matrix @ x, v.matrix @ x):
        raise FrameError("u(x) != v(x)")
    theta, eta = u.frame.theta, v.frame.theta
    phi_frame = TranslationFrame(lat, theta, eta)
    phi = decompose_translation(u, phi_frame)
    psi = decompose_translation(v, phi_frame.swapped())
    if linalg.is_zero(phi) or linalg.is_zero(psi):
        return None
    idx = next(i for i, c in enumerate(phi) if c != 0)
    t = Fraction(psi[idx]) / Fraction(phi[idx])
    if t <= 0 or not linalg.mat_equal(linalg.frac_array(psi), t * linalg.frac_array(phi)):
        return None
    return t


def find_partner(lattice: Lattice, theta, isometries=()) -> np.ndarray:
    """An isotropic eta in the positive cone not collinear with theta.

    Tries images of theta under the supplied isometries first. Otherwise
    takes the first basis vector x with x.theta = b != 0 and uses
    eta = 2 b x - x^2 theta, the second isotropic line of span(theta, x).
    """
    theta = lattice.vector(theta)
    for w in isometries:
        img = w.apply(theta)
        if linalg.rank(np.vstack([img, theta])) == 2:
            return lattice.primitivize(img)
    for i in range(lattice.rank):
        x = linalg.identity(lattice.rank)[:, i]
        b = lattice.pairing(x, theta)
        if b != 0:
            eta = 2 * b * x - lattice.square(x) * theta
            return lattice.primitivize(eta)
    raise FrameError("theta is orthogonal to every basis vector")
