"""Exact integer and rational linear algebra on numpy object arrays.

Matrices are ``numpy`` arrays with ``dtype=object`` holding Python ``int`` or
``fractions.Fraction`` entries, so arithmetic never overflows or rounds.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd

import numpy as np


def int_matrix(rows) -> np.ndarray:
    """Coerce nested sequences (ints, integral strings) to an object int matrix."""
    arr = np.array(rows, dtype=object)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1) if arr.size else arr.reshape(0, 0)
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = to_int(v)
    return out


def int_vector(values) -> np.ndarray:
    out = np.empty(len(values), dtype=object)
    for i, v in enumerate(values):
        out[i] = to_int(v)
    return out


def to_int(v) -> int:
    if isinstance(v, bool):
        raise TypeError("boolean is not an integer entry")
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, Fraction):
        if v.denominator != 1:
            raise ValueError(f"non-integral entry {v}")
        return int(v.numerator)
    if isinstance(v, str):
        return int(v.strip())
    raise TypeError(f"cannot read {v!r} as an integer")


def to_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, np.integer)):
        return Fraction(int(v))
    if isinstance(v, str):
        return Fraction(v.strip())
    raise TypeError(f"cannot read {v!r} as an exact rational")


def frac_array(a) -> np.ndarray:
    a = np.asarray(a, dtype=object)
    out = np.empty(a.shape, dtype=object)
    for idx, v in np.ndenumerate(a):
        out[idx] = to_fraction(v)
    return out


def identity(n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    for idx, v in np.ndenumerate(out):
        out[idx] = int(v)
    return out


def zeros(shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(0)
    return out


def is_integral(a) -> bool:
    return all(not isinstance(v, Fraction) or v.denominator == 1 for v in np.asarray(a).flat)


def as_integral(a) -> np.ndarray:
    """Return ``a`` with Fraction entries converted to int; raises if impossible."""
    a = np.asarray(a, dtype=object)
    out = np.empty(a.shape, dtype=object)
    for idx, v in np.ndenumerate(a):
        out[idx] = to_int(v)
    return out


def normalize(a) -> np.ndarray:
    """Demote integral Fractions to ints, leave the rest untouched."""
    a = np.asarray(a, dtype=object)
    out = np.empty(a.shape, dtype=object)
    for idx, v in np.ndenumerate(a):
        if isinstance(v, Fraction) and v.denominator == 1:
            v = int(v.numerator)
        out[idx] = v
    return out


def mat_key(a) -> tuple:
    a = normalize(a)
    return (a.shape, tuple(a.flat))


def mat_equal(a, b) -> bool:
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    return a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat))


def is_zero(a) -> bool:
    return all(v == 0 for v in np.asarray(a).flat)


def mat_pow(a: np.ndarray, k: int) -> np.ndarray:
    """Binary powering; ``k`` must be non-negative."""
    if k < 0:
        raise ValueError("negative exponent; invert first")
    result = identity(a.shape[0])
    base = a
    while k:
        if k & 1:
            result = result @ base
        k >>= 1
        if k:
            base = base @ base
    return result


def primitive_part(v) -> np.ndarray:
    """Scale a rational vector to a primitive integer vector (sign unchanged)."""
    v = frac_array(v)
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive part")
    return int_vector([x // g for x in ints])


# ---------------------------------------------------------------------------
# rational elimination

def rref(a) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over Q. Returns (R, pivot columns)."""
    m = frac_array(a).copy()
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if m[i, c] != 0), None)
        if p is None:
            continue
        if p != r:
            m[[r, p]] = m[[p, r]]
        m[r] = m[r] / m[r, c]
        for i in range(rows):
            if i != r and m[i, c] != 0:
                m[i] = m[i] - m[i, c] * m[r]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a) -> int:
    a = np.asarray(a, dtype=object)
    if a.size == 0:
        return 0
    return len(rref(a)[1])


def nullspace(a) -> list[np.ndarray]:
    """Basis of the rational kernel of ``a``, each vector scaled to primitive integers."""
    a = np.asarray(a, dtype=object)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return [identity(cols)[:, j].copy() for j in range(cols)]
    r, pivots = rref(a)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = np.array([Fraction(0)] * cols, dtype=object)
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -r[i, f]
        basis.append(primitive_part(v))
    return basis


def solve(a, b) -> np.ndarray | None:
    """One rational solution of ``a x = b`` or None when inconsistent."""
    a = frac_array(a)
    b = frac_array(b).reshape(-1, 1)
    aug = np.hstack([a, b])
    r, pivots = rref(aug)
    n = a.shape[1]
    if n in pivots:
        return None
    x = np.array([Fraction(0)] * n, dtype=object)
    for i, p in enumerate(pivots):
        x[p] = r[i, n]
    return x


def inverse(a) -> np.ndarray:
    a = frac_array(a)
    n = a.shape[0]
    r, pivots = rref(np.hstack([a, frac_array(identity(n))]))
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return normalize(r[:, n:])


def det(a) -> Fraction | int:
    """Determinant by fraction-carrying elimination."""
    m = frac_array(a).copy()
    n = m.shape[0]
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i, c] != 0), None)
        if p is None:
            return 0
        if p != c:
            m[[c, p]] = m[[p, c]]
            d = -d
        d *= m[c, c]
        for i in range(c + 1, n):
            if m[i, c] != 0:
                m[i] = m[i] - (m[i, c] / m[c, c]) * m[c]
    return int(d) if d.denominator == 1 else d


def charpoly(a) -> list:
    """Characteristic polynomial det(xI - a), coefficients from the leading one down.

    Faddeev-LeVerrier over Q; integer input yields integer coefficients.
    """
    a = normalize(a)
    n = a.shape[0]
    if all(isinstance(v, int) for v in a.flat):
        # integer input: every intermediate matrix is integral and the division is exact
        eye = identity(n)
        m = zeros((n, n))
        coeffs = [1]
        for k in range(1, n + 1):
            m = a @ m + coeffs[-1] * eye
            am = a @ m
            tr = sum(am[i, i] for i in range(n))
            if tr % k:
                raise ArithmeticError("inexact division in integer charpoly")
            coeffs.append(-tr // k)
        return coeffs
    a = frac_array(a)
    eye = frac_array(identity(n))
    m = zeros((n, n))
    coeffs = [Fraction(1)]
    for k in range(1, n + 1):
        m = a @ m + coeffs[-1] * eye
        am = a @ m
        coeffs.append(-sum(am[i, i] for i in range(n)) / k)
    return [int(c) if c.denominator == 1 else c for c in coeffs]


# ---------------------------------------------------------------------------
# integer normal forms

def smith_normal_form(a) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Smith normal form with transforms.

    Returns ``(U, D, V)`` with ``U @ a @ V == D``, ``U`` and ``V`` unimodular,
    ``D`` diagonal with non-negative entries ``d_1 | d_2 | ...``.
    """
    d = int_matrix(a).copy() if np.asarray(a).size else np.asarray(a, dtype=object)
    rows, cols = d.shape
    u = identity(rows)
    v = identity(cols)
    t = 0
    while t < min(rows, cols):
        nz = [(abs(d[i, j]), i, j) for i in range(t, rows) for j in range(t, cols) if d[i, j] != 0]
        if not nz:
            break
        _, pi, pj = min(nz)
        d[[t, pi]] = d[[pi, t]]
        u[[t, pi]] = u[[pi, t]]
        d[:, [t, pj]] = d[:, [pj, t]]
        v[:, [t, pj]] = v[:, [pj, t]]
        while True:
            changed = False
            for i in range(t + 1, rows):
                if d[i, t] != 0:
                    q = d[i, t] // d[t, t]
                    d[i] = d[i] - q * d[t]
                    u[i] = u[i] - q * u[t]
                    if d[i, t] != 0:
                        changed = True
            for j in range(t + 1, cols):
                if d[t, j] != 0:
                    q = d[t, j] // d[t, t]
                    d[:, j] = d[:, j] - q * d[:, t]
                    v[:, j] = v[:, j] - q * v[:, t]
                    if d[t, j] != 0:
                        changed = True
            if not changed:
                # the block below must be divisible by the pivot
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if d[i, j] % d[t, t] != 0), None)
                if bad is None:
                    break
                i, _ = bad
                d[t] = d[t] + d[i]
                u[t] = u[t] + u[i]
                continue
            # move the smallest nonzero entry of row/column t to the pivot
            cand = [(abs(d[i, t]), i, t) for i in range(t, rows) if d[i, t] != 0]
            cand += [(abs(d[t, j]), t, j) for j in range(t, cols) if d[t, j] != 0]
            _, pi, pj = min(cand)
            if pi != t:
                d[[t, pi]] = d[[pi, t]]
                u[[t, pi]] = u[[pi, t]]
            if pj != t:
                d[:, [t, pj]] = d[:, [pj, t]]
                v[:, [t, pj]] = v[:, [pj, t]]
        if d[t, t] < 0:
            d[t] = -d[t]
            u[t] = -u[t]
        t += 1
    return u, d, v


def integer_kernel(a) -> list[np.ndarray]:
    """Basis of the lattice {x in Z^n : a x = 0}."""
    a = int_matrix(a)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return [identity(cols)[:, j].copy() for j in range(cols)]
    _, d, v = smith_normal_form(a)
    r = sum(1 for i in range(min(d.shape)) if d[i, i] != 0)
    return [v[:, j].copy() for j in range(r, cols)]


def solve_integer(a, b) -> np.ndarray | None:
    """One integer solution of ``a x = b`` or None."""
    a = int_matrix(a)
    b = int_vector(list(b))
    u, d, v = smith_normal_form(a)
    y = u @ b
    rows, cols = a.shape
    z = [0] * cols
    for i in range(rows):
        di = d[i, i] if i < cols else 0
        if di == 0:
            if y[i] != 0:
                return None
        else:
            if y[i] % di:
                return None
            z[i] = y[i] // di
    return v @ int_vector(z)


def extend_to_basis(c) -> np.ndarray:
    """Unimodular matrix whose first column is the primitive integer vector ``c``."""
    c = int_vector(list(c))
    u, d, _ = smith_normal_form(c.reshape(-1, 1))
    if d[0, 0] != 1:
        raise ValueError("vector is not primitive")
    m = int_inverse(u)
    # d[0,0] = 1 with V = [[+-1]] possibly; fix the sign of the first column
    if not mat_equal(m[:, 0], c):
        m[:, 0] = -m[:, 0]
    if not mat_equal(m[:, 0], c):
        raise AssertionError("extend_to_basis failed")
    return m


def int_inverse(a) -> np.ndarray:
    return as_integral(inverse(a))
