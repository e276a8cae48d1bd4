"""Elliptic / parabolic / hyperbolic classification of integral isometries.

Decision procedure for ``u`` in O_+(Lambda) of rank n:

* the characteristic polynomial is stripped of every cyclotomic factor
  Phi_m with phi(m) <= n; a nonconstant remainder has a root off the unit
  circle (Kronecker), so ``u`` is hyperbolic. The real root > 1 is then
  certified by a sign change of the polynomial just right of 1.
* otherwise ``u`` is quasi-unipotent and ``u^K`` is unipotent, with K the
  lcm of the orders m whose Phi_m divides the polynomial (a divisor of
  lcm{m : phi(m) <= n}): ``u^K = id`` means elliptic, a nonzero nilpotent
  ``u^K - id`` means parabolic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
import sympy

from . import linalg
from .errors import InconsistencyError, NotParabolicError
from .lattice import Isometry, Lattice

ELLIPTIC = "Elliptic"
PARABOLIC = "Parabolic"
HYPERBOLIC = "Hyperbolic"

_X = sympy.Symbol("x")


@lru_cache(maxsize=None)
def cyclotomic_orders(n: int) -> tuple[int, ...]:
    """All m >= 1 with phi(m) <= n (phi(m) >= sqrt(m/2) bounds the search)."""
    return tuple(m for m in range(1, 2 * n * n + 3) if sympy.totient(m) <= n)


@lru_cache(maxsize=None)
def exponent_bound(n: int) -> int:
    """K(n) = lcm{m : phi(m) <= n}; every finite-order element of GL(n, Z) has order dividing K."""
    return math.lcm(*cyclotomic_orders(n))


def _poly(coeffs) -> sympy.Poly:
    return sympy.Poly([int(c) for c in coeffs], _X, domain="ZZ")


@lru_cache(maxsize=None)
def _cyclotomic(m: int):
    return sympy.Poly(sympy.cyclotomic_poly(m, _X), _X, domain="ZZ")


def cyclotomic_split(coeffs) -> tuple[list[int], tuple[int, ...]]:
    """Strip every cyclotomic factor Phi_m with phi(m) <= deg.

    Returns the remaining polynomial and the orders m that divided it.
    """
    p = _poly(coeffs)
    n = p.degree()
    found = []
    for m in cyclotomic_orders(n):
        phi = _cyclotomic(m)
        while p.degree() >= phi.degree():
            q, r = p.div(phi)
            if not r.is_zero:
                break
            p = q
            if m not in found:
                found.append(m)
    return [int(c) for c in p.all_coeffs()], tuple(found)


def non_cyclotomic_part(coeffs) -> list[int]:
    """Divide out every cyclotomic factor Phi_m with phi(m) <= deg."""
    return cyclotomic_split(coeffs)[0]


def sign_right_of(coeffs, point: int = 1) -> int:
    """Sign of p(point + eps) for small eps > 0 (exact, via Taylor shift)."""
    p = _poly(coeffs)
    shifted = p.shift(point)  # p(y + point)
    for c in reversed(shifted.all_coeffs()):
        if c != 0:
            return 1 if c > 0 else -1
    return 0


def has_root_above_one(coeffs, upper: int = 10 ** 6) -> bool:
    """Sign change of p between 1+ and ``upper``: an odd number of roots in (1, upper)."""
    p = _poly(coeffs)
    return sign_right_of(coeffs, 1) * int(np.sign(int(p.eval(upper)))) < 0


def is_reciprocal_up_to_sign(coeffs) -> bool:
    c = [int(x) for x in coeffs]
    return c == c[::-1] or c == [-x for x in c[::-1]]


@dataclass(frozen=True)
class Classification:
    tag: str
    char_poly: tuple[int, ...]
    order: int | None = None
    theta: tuple[int, ...] | None = None
    translation_exponent: int | None = None
    spectral_radius_approx: float | None = None
    nilpotency_index: int | None = None

    def to_dict(self) -> dict:
        out: dict = {"tag": self.tag}
        if self.tag == ELLIPTIC:
            out["order"] = self.order
        elif self.tag == PARABOLIC:
            out["theta"] = [str(c) for c in self.theta]
            out["translation_exponent"] = self.translation_exponent
        else:
            out["spectral_radius_approx"] = self.spectral_radius_approx
        out["char_poly"] = [str(c) for c in self.char_poly]
        return out


def spectral_radius(u: np.ndarray, start, rtol: float = 1e-9, max_iter: int = 100_000) -> float:
    """Power iteration from ``start`` until successive ratios agree to ``rtol``."""
    m = np.array(u, dtype=float)
    v = np.array(start, dtype=float)
    v /= np.linalg.norm(v)
    prev = None
    for _ in range(max_iter):
        w = m @ v
        lam = float(np.linalg.norm(w))
        v = w / lam
        if prev is not None and abs(lam - prev) <= rtol * lam:
            return lam
        prev = lam
    return lam


def _finite_order(matrix: np.ndarray, bound: int) -> int:
    """Exact order of ``matrix`` given that ``matrix**bound == id``."""
    n = matrix.shape[0]
    eye = linalg.identity(n)
    order = bound
    for p in sympy.factorint(bound):
        while order % p == 0 and linalg.mat_equal(linalg.mat_pow(matrix, order // p), eye):
            order //= p
    return order


def _nilpotency_index(a: np.ndarray) -> int | None:
    """Smallest k <= n with a^k == 0, else None."""
    n = a.shape[0]
    power = a
    for k in range(1, n + 1):
        if linalg.is_zero(power):
            return k
        power = power @ a
    return None


def classify(u: Isometry) -> Classification:
    if not isinstance(u, Isometry):
        raise TypeError("classify expects an Isometry (validated integral O_+ element)")
    n = u.n
    cp = tuple(int(c) for c in linalg.charpoly(u.matrix))
    residual, orders = cyclotomic_split(cp)
    if len(residual) > 1:
        if sign_right_of(cp, 1) >= 0:
            raise InconsistencyError("non-cyclotomic isometry without a real eigenvalue > 1")
        rho = spectral_radius(u.matrix, u.lattice.cone_ref)
        return Classification(HYPERBOLIC, cp, spectral_radius_approx=rho)

    # every eigenvalue is a root of unity of an order in ``orders``, so u^big_k is
    # unipotent, and equals id exactly when u has finite order; big_k divides exponent_bound(n)
    big_k = math.lcm(*orders)
    power = linalg.mat_pow(u.matrix, big_k)
    eye = linalg.identity(n)
    if linalg.mat_equal(power, eye):
        return Classification(ELLIPTIC, cp, order=_finite_order(u.matrix, big_k))
    index = _nilpotency_index(power - eye)
    if index is None:
        raise InconsistencyError("u^K - id is not nilpotent although all eigenvalues are roots of unity")
    theta = _fixed_isotropic_ray(u, power)
    k = translation_exponent(u, theta)
    return Classification(PARABOLIC, cp, theta=tuple(int(c) for c in theta),
                          translation_exponent=k, nilpotency_index=index)


def _fixed_isotropic_ray(u: Isometry, unipotent_power: np.ndarray) -> np.ndarray:
    lat = u.lattice
    n = u.n
    kernel = linalg.nullspace(unipotent_power - linalg.identity(n))
    w = linalg.int_matrix([list(v) for v in kernel]).T  # columns span the fixed space
    restricted = w.T @ lat.gram @ w
    radical = linalg.nullspace(restricted)
    if len(radical) != 1:
        raise InconsistencyError(f"fixed space of a parabolic power has a {len(radical)}-dimensional radical")
    theta = lat.primitivize(w @ radical[0])
    if lat.square(theta) != 0 or not linalg.mat_equal(u.apply(theta), theta):
        raise InconsistencyError("extracted ray is not an isotropic fixed vector of u")
    if not lat.in_positive_cone(theta):
        raise InconsistencyError("extracted ray is not in the positive cone")
    return theta


def invariant_isotropic_ray(u: Isometry) -> np.ndarray:
    """The primitive isotropic theta in the positive cone with u(theta) = theta."""
    c = classify(u)
    if c.tag != PARABOLIC:
        raise NotParabolicError(f"isometry is {c.tag}, not parabolic")
    return linalg.int_vector(list(c.theta))


class SigmaQuotient:
    """The negative-definite lattice (theta^perp cap Lambda) / Z theta.

    A fixed basis is chosen once so induced actions of different isometries
    are directly comparable.
    """

    def __init__(self, lattice: Lattice, theta):
        theta = lattice.vector(theta)
        if lattice.square(theta) != 0:
            raise NotParabolicError("theta is not isotropic")
        self.lattice = lattice
        self.theta = theta
        basis = lattice.orthogonal_complement([theta])
        b = linalg.int_matrix([list(v) for v in basis]).T  # n x (n-1)
        coords = linalg.solve_integer(b, theta)
        if coords is None:
            raise InconsistencyError("theta is not in its own orthogonal sublattice")
        # change of basis so the first basis vector of theta^perp is theta
        ext = linalg.extend_to_basis(linalg.primitive_part(coords))
        if not linalg.mat_equal(ext[:, 0], coords):
            raise NotParabolicError("theta is not primitive")
        self.basis = b @ ext  # columns: theta, then lifts of a basis of Sigma
        self._left = linalg.inverse(self.basis.T @ self.basis) @ self.basis.T  # exact left inverse
        self.rank = self.basis.shape[1] - 1

    def gram(self) -> np.ndarray:
        lifts = self.basis[:, 1:]
        return lifts.T @ self.lattice.gram @ lifts

    def induced(self, u: Isometry) -> np.ndarray:
        """Integer matrix of the action of ``u`` on Sigma (u must fix theta)."""
        if not linalg.mat_equal(u.apply(self.theta), self.theta):
            raise NotParabolicError("isometry does not fix theta")
        image = linalg.as_integral(self._left @ (u.matrix @ self.basis))
        return image[1:, 1:]

    def acts_trivially(self, u: Isometry) -> bool:
        return linalg.mat_equal(self.induced(u), linalg.identity(self.rank))


@lru_cache(maxsize=256)
def _sigma_quotient(lattice: Lattice, theta: tuple) -> SigmaQuotient:
    return SigmaQuotient(lattice, theta)


def translation_exponent(u: Isometry, theta) -> int:
    """Least k >= 1 with u^k acting as the identity on Sigma = (theta^perp cap Lambda)/Z theta."""
    sigma = _sigma_quotient(u.lattice, tuple(int(c) for c in u.lattice.vector(theta)))
    if not linalg.mat_equal(u.apply(sigma.theta), sigma.theta):
        raise NotParabolicError("theta is not fixed by u")
    action = sigma.induced(u)
    if sigma.rank == 0:
        return 1
    d = sigma.rank
    bound = exponent_bound(d)
    if not linalg.mat_equal(linalg.mat_pow(action, bound), linalg.identity(d)):
        raise InconsistencyError("induced action on a negative-definite quotient has infinite order")
    return _finite_order(action, bound)


# ---------------------------------------------------------------------------
# growth

BOUNDED = "bounded"
QUADRATIC = "quadratic"
EXPONENTIAL = "exponential"


@dataclass(frozen=True)
class GrowthReport:
    ns: tuple[int, ...]
    norms: tuple[int, ...]  # exact max-abs entry of u^n
    fitted_exponent: float
    fitted_class: str
    local_slopes: tuple[float, ...] = field(default=())

    @property
    def samples(self) -> list[tuple[int, float]]:
        return [(n, float(v)) if v < 10 ** 300 else (n, math.inf) for n, v in zip(self.ns, self.norms)]


def _max_abs(m) -> int:
    return max(abs(int(v)) for v in np.asarray(m).flat)


def growth_probe(u: Isometry, n_max: int = 64) -> GrowthReport:
    """Sample ||u^n|| (max-abs entry) at n = 1, 2, 4, ... <= n_max and fit the growth.

    The fitted exponent is the log-log least-squares slope over samples with
    n >= 4. A local slope log2(||u^{2n}|| / ||u^n||) above 3 (impossible for
    polynomial growth of an O_+ element, which is at most quadratic) marks the
    growth as exponential.
    """
    if n_max < 8:
        raise ValueError("n_max must be at least 8")
    ns = []
    n = 1
    while n <= n_max:
        ns.append(n)
        n *= 2
    norms = []
    power = u.matrix
    current = 1
    for target in ns:
        while current < target:
            power = power @ power
            current *= 2
        norms.append(_max_abs(power))
    logs = [math.log(v) for v in norms]
    local = tuple((logs[i + 1] - logs[i]) / math.log(2) for i in range(len(ns) - 1))
    window = [i for i, n in enumerate(ns) if n >= 4]
    xs = np.log(np.array([ns[i] for i in window], dtype=float))
    ys = np.array([logs[i] for i in window])
    slope = float(np.polyfit(xs, ys, 1)[0])
    if local and local[-1] > 3.0:
        cls = EXPONENTIAL
    elif slope < 1.0:
        cls = BOUNDED
    else:
        cls = QUADRATIC
    return GrowthReport(tuple(ns), tuple(norms), slope, cls, local)


def rational_eigenvectors(u: Isometry) -> list[np.ndarray]:
    """Basis vectors of all rational eigenspaces (rational eigenvalues only)."""
    cp = sympy.Poly([int(c) for c in linalg.charpoly(u.matrix)], _X)
    out = []
    for root in sympy.roots(cp, filter="Q"):
        lam = Fraction(int(root.p), int(root.q))
        shifted = linalg.frac_array(u.matrix) - lam * linalg.frac_array(linalg.identity(u.n))
        out.extend(linalg.nullspace(shifted))
    return out
