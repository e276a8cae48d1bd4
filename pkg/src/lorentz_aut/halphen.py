"""Lattice model of a rational elliptic (Halphen) surface of index m.

NS = Z e0 + ... + Z e9 with gram diag(1, -1, ..., -1) and
K = -3 e0 + e1 + ... + e9, so K^2 = 0 and K is characteristic. A fiber is
the class C = -m K. Reducible fibers are given as explicit component vectors
with multiplicities; nothing here checks that a configuration is realized by
an actual surface, only the lattice-level necessary conditions.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property
from math import gcd

import numpy as np

from . import linalg
from .errors import ConfigError, InconsistencyError, LorentzError
from .lattice import Isometry, diagonal_lattice, signature

MAX_EXCESS = 8


class HalphenModel:
    def __init__(self, m: int = 1):
        if int(m) < 1:
            raise ConfigError("index m must be a positive integer")
        self.m = int(m)
        self.lattice = diagonal_lattice(10)
        self.KX = linalg.int_vector([-3] + [1] * 9)
        self.C = -self.m * self.KX

    def __repr__(self):
        return f"HalphenModel(m={self.m})"

    def pairing(self, x, y):
        return self.lattice.pairing(x, y)

    @cached_property
    def k_perp_basis(self) -> np.ndarray:
        """Columns form an integer basis of K^perp (rank 9, contains K)."""
        vecs = self.lattice.orthogonal_complement([self.KX])
        return linalg.int_matrix([list(v) for v in vecs]).T

    def in_k_perp(self, x) -> bool:
        return self.pairing(x, self.KX) == 0


@dataclass(frozen=True)
class Fiber:
    components: tuple  # tuple of int vectors
    multiplicities: tuple
    multiple: bool = False

    @property
    def mu(self) -> int:
        return len(self.components)

    def class_sum(self):
        return sum((a * e for e, a in zip(self.components, self.multiplicities)),
                   linalg.int_vector([0] * len(self.components[0])))


def make_fiber(components, multiplicities=None, multiple=False) -> Fiber:
    comps = tuple(linalg.int_vector(list(c)) for c in components)
    if not comps:
        raise ConfigError("a fiber needs at least one component")
    if multiplicities is None:
        multiplicities = [1] * len(comps)
    mult = tuple(linalg.to_int(a) for a in multiplicities)
    if len(mult) != len(comps):
        raise ConfigError("one multiplicity per component is required")
    return Fiber(comps, mult, bool(multiple))


class FiberConfig:
    """A validated set of special fibers (reducible and/or the multiple fiber)."""

    def __init__(self, model: HalphenModel, fibers, name: str = ""):
        self.model = model
        self.fibers = tuple(fibers)
        self.name = name
        self.validate()

    @property
    def mus(self) -> list[int]:
        return [f.mu for f in self.fibers]

    @property
    def sigma(self) -> int:
        """Sum of (mu_i - 1) over the fibers."""
        return sum(mu - 1 for mu in self.mus)

    @property
    def components(self) -> list[np.ndarray]:
        return [e for f in self.fibers for e in f.components]

    def component_gram(self) -> np.ndarray:
        comps = self.components
        if not comps:
            return linalg.zeros((0, 0))
        b = linalg.int_matrix([list(e) for e in comps]).T
        return b.T @ self.model.lattice.gram @ b

    def validate(self) -> None:
        model = self.model
        lat = model.lattice
        if self.sigma > MAX_EXCESS:
            raise ConfigError(f"sum of (mu_i - 1) is {self.sigma} > {MAX_EXCESS}", bound=MAX_EXCESS)
        for k, f in enumerate(self.fibers):
            for e, a in zip(f.components, f.multiplicities):
                if len(e) != lat.rank:
                    raise ConfigError(f"fiber {k}: component of wrong length")
                if a < 1:
                    raise ConfigError(f"fiber {k}: multiplicities must be positive")
                if model.pairing(e, model.KX) != 0:
                    raise ConfigError(f"fiber {k}: component {list(e)} is not orthogonal to K")
                if f.mu >= 2 and model.pairing(e, e) != -2:
                    raise ConfigError(f"fiber {k}: component {list(e)} of a reducible fiber must have square -2")
            if not linalg.mat_equal(f.class_sum(), model.C):
                raise ConfigError(f"fiber {k}: weighted sum of components is not the fiber class")
            if linalg.rank(linalg.int_matrix([list(e) for e in f.components])) != f.mu:
                raise ConfigError(f"fiber {k}: components are linearly dependent")
            g = 0
            for a in f.multiplicities:
                g = gcd(g, a)
            if f.multiple:
                if model.m == 1 or g != model.m:
                    raise ConfigError(f"fiber {k}: a multiple fiber needs gcd of multiplicities = m > 1")
            elif g != 1:
                raise ConfigError(f"fiber {k}: non-primitive fiber not flagged as multiple")
        if sum(1 for f in self.fibers if f.multiple) > 1:
            raise ConfigError("at most one multiple fiber is supported")
        for i, f in enumerate(self.fibers):
            for j in range(i + 1, len(self.fibers)):
                for e in f.components:
                    for e2 in self.fibers[j].components:
                        if model.pairing(e, e2) != 0:
                            raise ConfigError(f"components of fibers {i} and {j} meet")
        if not self.components:
            return
        gram = self.component_gram()
        p, _, _ = signature(gram)
        if p != 0:
            raise ConfigError("intersection form is not negative semidefinite on the components")
        # radical of the form on coefficient space = span of whole fibers
        kernel = linalg.nullspace(gram)
        fiber_vecs = []
        offset = 0
        total = len(self.components)
        for f in self.fibers:
            v = [0] * total
            for t, a in enumerate(f.multiplicities):
                v[offset + t] = a
            offset += f.mu
            fiber_vecs.append(v)
        if len(kernel) != len(self.fibers):
            raise ConfigError("square-zero component combinations other than whole fibers exist")
        span = linalg.rank(linalg.int_matrix(fiber_vecs))
        if linalg.rank(linalg.int_matrix(fiber_vecs + [list(v) for v in kernel])) != span:
            raise ConfigError("radical of the component form is not spanned by fibers")

    def to_dict(self) -> dict:
        out: dict = {"schema": "lorentz-aut/1", "kind": "fiber_config", "m": self.model.m}
        if self.name:
            out["name"] = self.name
        out["fibers"] = []
        for f in self.fibers:
            item = {"components": [[int(c) for c in e] for e in f.components],
                    "multiplicities": list(f.multiplicities)}
            if f.multiple:
                item["multiple"] = True
            out["fibers"].append(item)
        return out


@dataclass(frozen=True, eq=False)
class AutGenerator:
    alpha: np.ndarray
    matrix: Isometry


def translation_image(model: HalphenModel, alpha, d):
    """Image of D: D - m(D.K) alpha + {m (D.alpha) - (m^2/2)(D.K) alpha^2} K."""
    m = model.m
    dk = model.pairing(d, model.KX)
    a2 = model.pairing(alpha, alpha)
    coef2 = m * model.pairing(d, alpha) - (m * m * a2 * dk) // 2
    return d - m * dk * alpha + coef2 * model.KX


def classieux_matrix(model: HalphenModel, alpha) -> AutGenerator:
    alpha = model.lattice.vector(alpha)
    if not model.in_k_perp(alpha):
        raise LorentzError("alpha is not orthogonal to K")
    a2 = model.pairing(alpha, alpha)
    if (model.m * model.m * a2) % 2:
        # K is characteristic, so alpha^2 is even on K^perp; odd means a broken setup
        raise InconsistencyError("m^2 alpha^2 / 2 is not an integer")
    eye = linalg.identity(10)
    cols = [translation_image(model, alpha, eye[:, j]) for j in range(10)]
    mat = np.array(cols, dtype=object).T
    return AutGenerator(alpha, Isometry(mat, model.lattice))


@dataclass(frozen=True)
class QuotientData:
    rank_n: int
    rank_g: int
    torsion: tuple[int, ...]  # invariant factors > 1 of K^perp / N
    snf_u: np.ndarray
    snf_d: np.ndarray


def _n_generators(model: HalphenModel, config: FiberConfig) -> list[np.ndarray]:
    return [model.KX] + config.components


def quotient_data(model: HalphenModel, config: FiberConfig) -> QuotientData:
    """Smith form of the inclusion N -> K^perp in K^perp coordinates."""
    b = model.k_perp_basis
    coords = []
    for g in _n_generators(model, config):
        c = linalg.solve_integer(b, g)
        if c is None:
            raise InconsistencyError("a generator of N is not in K^perp")
        coords.append(list(c))
    a = linalg.int_matrix(coords).T  # 9 x g
    u, d, _ = linalg.smith_normal_form(a)
    diag = [d[i, i] for i in range(min(d.shape))]
    rank_n = sum(1 for x in diag if x != 0)
    torsion = tuple(int(x) for x in diag if x not in (0, 1))
    return QuotientData(rank_n, b.shape[1] - rank_n, torsion, u, d)


def translation_group_rank(model: HalphenModel, config: FiberConfig) -> tuple[int, int]:
    if config.sigma > MAX_EXCESS:
        raise ConfigError(f"sum of (mu_i - 1) is {config.sigma} > {MAX_EXCESS}")
    gens = _n_generators(model, config)
    rank_n = linalg.rank(linalg.int_matrix([list(v) for v in gens]))
    expected = 1 + config.sigma
    if rank_n != expected:
        raise InconsistencyError(f"rank of N is {rank_n}, closed form gives {expected}")
    q = quotient_data(model, config)
    if q.rank_n != rank_n or q.rank_g != MAX_EXCESS - config.sigma:
        raise InconsistencyError("normal-form ranks disagree with row reduction")
    return rank_n, q.rank_g


@dataclass(frozen=True)
class ComponentCorrection:
    N: int
    coefficients: tuple[int, ...]  # S = sum of coefficients[j] * E_j
    S: np.ndarray


def crucial_solver(model: HalphenModel, config: FiberConfig, d) -> ComponentCorrection:
    """Least N >= 1 and integral S on the components with (N D - S).E_j = 0 for all j.

    With A the component gram and w_j = D.E_j the condition is A s = N w. If
    U A V = diag(d_i) then y = U w and N = lcm d_i / gcd(d_i, y_i).
    """
    d = model.lattice.vector(d)
    if model.pairing(d, model.C) != 0:
        raise LorentzError("D is not orthogonal to the fiber class")
    comps = config.components
    zero = linalg.int_vector([0] * 10)
    if not comps:
        return ComponentCorrection(1, (), zero)
    a = config.component_gram()
    w = linalg.int_vector([model.pairing(d, e) for e in comps])
    u, dd, v = linalg.smith_normal_form(a)
    y = u @ w
    big_n = 1
    size = a.shape[0]
    for i in range(size):
        di = dd[i, i]
        if di == 0:
            if y[i] != 0:
                raise InconsistencyError("pairing vector is outside the image of the component form")
        else:
            f = di // gcd(di, y[i])
            big_n = big_n * f // gcd(big_n, f)
    z = [0] * size
    for i in range(size):
        if dd[i, i] != 0:
            z[i] = big_n * y[i] // dd[i, i]
    s = v @ linalg.int_vector(z)
    vec = sum((c * e for c, e in zip(s, comps)), zero)
    for e in comps:
        if model.pairing(big_n * d - vec, e) != 0:
            raise InconsistencyError("correction does not annihilate the components")
    return ComponentCorrection(int(big_n), tuple(int(c) for c in s), linalg.normalize(vec))


def generator_basis(model: HalphenModel, config: FiberConfig) -> list[AutGenerator]:
    """Translation matrices for a lift of a basis of the free part of K^perp / N."""
    q = quotient_data(model, config)
    if q.rank_g == 0:
        warnings.warn("translation group has rank 0; no generators", stacklevel=2)
        return []
    b = model.k_perp_basis
    uinv = linalg.int_inverse(q.snf_u)
    diag = [q.snf_d[i, i] if i < q.snf_d.shape[1] else 0 for i in range(q.snf_d.shape[0])]
    out = []
    for j, dj in enumerate(diag):
        if dj == 0:
            alpha = b @ uinv[:, j]
            out.append(classieux_matrix(model, alpha))
    if len(out) != q.rank_g:
        raise InconsistencyError("free part size does not match the quotient rank")
    return out


# ---------------------------------------------------------------------------
# ready-made configurations

def e(i: int) -> np.ndarray:
    v = [0] * 10
    v[i] = 1
    return linalg.int_vector(v)


def cycle_fiber(model: HalphenModel, indices) -> Fiber:
    """Fiber of type I_{k+1}: chain e_a - e_(a+1) on ``indices`` closed by C minus the chain."""
    idx = list(indices)
    roots = [e(idx[t]) - e(idx[t + 1]) for t in range(len(idx) - 1)]
    s0 = model.C - sum(roots, linalg.int_vector([0] * 10))
    return make_fiber([s0] + roots)


def line_conic_fiber() -> Fiber:
    line = e(0) - e(1) - e(2) - e(3)
    conic = 2 * e(0) - e(4) - e(5) - e(6) - e(7) - e(8) - e(9)
    return make_fiber([line, conic])


def three_lines_fiber() -> Fiber:
    return make_fiber([e(0) - e(1) - e(2) - e(3), e(0) - e(4) - e(5) - e(6), e(0) - e(7) - e(8) - e(9)])


def e8_fiber() -> Fiber:
    """Type II*: extended E8 diagram with multiplicities 1..6."""
    comps = [e(0) - e(1) - e(2) - e(3)] + [e(i) - e(i + 1) for i in range(1, 9)]
    mults = [3, 2, 4, 6, 5, 4, 3, 2, 1]
    return make_fiber(comps, mults)


def multiple_fiber(model: HalphenModel) -> Fiber:
    return make_fiber([-model.KX], [model.m], multiple=True)


def builtin_configs() -> dict[str, FiberConfig]:
    m1 = HalphenModel(1)
    m2 = HalphenModel(2)
    reg = {
        "unnodal": (m1, []),
        "line_conic": (m1, [line_conic_fiber()]),
        "three_lines": (m1, [three_lines_fiber()]),
        "a1_a2": (m1, [cycle_fiber(m1, [1, 2]), cycle_fiber(m1, [3, 4, 5])]),
        "a2_a2": (m1, [cycle_fiber(m1, [1, 2, 3]), cycle_fiber(m1, [4, 5, 6])]),
        "four_a1": (m1, [cycle_fiber(m1, [1, 2]), cycle_fiber(m1, [3, 4]),
                         cycle_fiber(m1, [5, 6]), cycle_fiber(m1, [7, 8])]),
        "a2_a3": (m1, [cycle_fiber(m1, [1, 2, 3]), cycle_fiber(m1, [4, 5, 6, 7])]),
        "a3_a3": (m1, [cycle_fiber(m1, [1, 2, 3, 4]), cycle_fiber(m1, [5, 6, 7, 8])]),
        "three_a2": (m1, [cycle_fiber(m1, [1, 2, 3]), cycle_fiber(m1, [4, 5, 6]),
                          cycle_fiber(m1, [7, 8, 9])]),
        "a3_a4": (m1, [cycle_fiber(m1, [1, 2, 3, 4]), cycle_fiber(m1, [5, 6, 7, 8, 9])]),
        "i9": (m1, [cycle_fiber(m1, list(range(1, 10)))]),
        "e8": (m1, [e8_fiber()]),
        "index2_multiple_i2": (m2, [multiple_fiber(m2), cycle_fiber(m2, [1, 2])]),
    }
    return {name: FiberConfig(model, fibers, name=name) for name, (model, fibers) in reg.items()}
