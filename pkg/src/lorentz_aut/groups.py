"""Bounded exploration of finitely generated subgroups of O_+(Lambda).

Words are tuples of letters ``(i, e)`` meaning generator ``g_i`` to the power
``e`` in {1, -1}. A word evaluates left to right as a matrix product, so the
word ``(a, b)`` is the isometry ``a @ b`` (apply ``b`` first).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .classify import ELLIPTIC, HYPERBOLIC, PARABOLIC, Classification, SigmaQuotient, classify
from .errors import DimensionError, LorentzError
from .lattice import Isometry, Lattice
from .translations import TranslationFrame, decompose_translation, find_partner

HYPERBOLIC_FOUND = "hyperbolic_found"
MODERATE = "moderate_up_to_L"
FINITE = "finite_up_to_L"


def word_str(word) -> str:
    if not word:
        return "id"
    return " ".join(f"g{i}" if e == 1 else f"g{i}^-1" for i, e in word)


def parse_word(text: str) -> tuple:
    text = text.strip()
    if text in ("", "id"):
        return ()
    out = []
    for tok in text.split():
        if tok.endswith("^-1"):
            out.append((int(tok[1:-3]), -1))
        else:
            out.append((int(tok[1:]), 1))
    return tuple(out)


@dataclass(frozen=True)
class GroupSpec:
    lattice: Lattice
    generators: tuple
    word_bound: int

    def __post_init__(self):
        if self.word_bound < 1:
            raise ValueError("word_bound must be positive")
        if not self.generators:
            raise ValueError("need at least one generator")
        for g in self.generators:
            if not isinstance(g, Isometry):
                raise TypeError("generators must be Isometry instances")
            if g.lattice != self.lattice:
                raise DimensionError("generator belongs to a different lattice")

    def letters(self):
        # g0, g0^-1, g1, g1^-1, ...
        return [(i, e) for i in range(len(self.generators)) for e in (1, -1)]

    def evaluate(self, word) -> Isometry:
        inverses = [g.inverse() for g in self.generators]
        out = Isometry.identity(self.lattice)
        for i, e in word:
            out = out @ (self.generators[i] if e == 1 else inverses[i])
        return out


@dataclass
class GroupReport:
    verdict: str
    word_bound: int
    elements_explored: int
    witness: tuple | None = None
    witness_classification: Classification | None = None
    common_theta: tuple | None = None
    translation_rank: int = 0
    finite_part_order_lower_bound: int = 0
    kernel_generators: list = field(default_factory=list)  # (word, zeta)
    sigma_actions: list = field(default_factory=list)  # per generator, or None
    counts: dict = field(default_factory=dict)
    hints: list = field(default_factory=list)

    def to_dict(self) -> dict:
        out = {
            "verdict": self.verdict,
            "word_bound": self.word_bound,
            "elements_explored": self.elements_explored,
            "counts": dict(sorted(self.counts.items())),
        }
        if self.verdict == HYPERBOLIC_FOUND:
            out["witness"] = word_str(self.witness)
            out["witness_length"] = len(self.witness)
            out["witness_classification"] = self.witness_classification.to_dict()
        if self.verdict == MODERATE:
            out["common_theta"] = None if self.common_theta is None else [str(c) for c in self.common_theta]
            out["translation_rank"] = self.translation_rank
            out["finite_part_order_lower_bound"] = self.finite_part_order_lower_bound
            out["kernel_generators"] = [
                {"word": word_str(w), "zeta": [str(c) for c in z]} for w, z in self.kernel_generators
            ]
            out["sigma_actions"] = [
                None if a is None else [[str(c) for c in row] for row in a.tolist()]
                for a in self.sigma_actions
            ]
        if self.verdict == FINITE:
            out["finite_part_order_lower_bound"] = self.finite_part_order_lower_bound
        out["hints"] = list(self.hints)
        return out


def enumerate_ball(spec: GroupSpec, stop=None):
    """BFS over freely reduced words of length <= L, skipping repeated matrices.

    Yields ``(word, element)`` in shortlex order (letters ordered g0, g0^-1,
    g1, ...). A matrix is kept only for its first word. If ``stop(element)``
    returns True the enumeration ends after yielding that element.
    """
    inverses = [g.inverse() for g in spec.generators]
    letters = spec.letters()
    ident = Isometry.identity(spec.lattice)
    seen = {ident}
    yield (), ident
    layer = [((), ident)]
    for _ in range(spec.word_bound):
        nxt = []
        for word, elem in layer:
            for i, e in letters:
                if word and word[-1] == (i, -e):
                    continue
                new = elem @ (spec.generators[i] if e == 1 else inverses[i])
                if new in seen:
                    continue
                seen.add(new)
                w = word + ((i, e),)
                nxt.append((w, new))
                yield w, new
                if stop is not None and stop(new):
                    return
        layer = nxt


def explore(spec: GroupSpec) -> GroupReport:
    found = []
    cache: dict = {}

    def stop(elem):
        c = classify(elem)
        cache[elem] = c
        return c.tag == HYPERBOLIC

    for word, elem in enumerate_ball(spec, stop):
        if elem not in cache:
            cache[elem] = classify(elem)
        found.append((word, elem, cache[elem]))

    counts = {ELLIPTIC: 0, PARABOLIC: 0, HYPERBOLIC: 0}
    for _, _, c in found:
        counts[c.tag] += 1
    last_word, _, last_cls = found[-1]
    if last_cls.tag == HYPERBOLIC:
        return GroupReport(HYPERBOLIC_FOUND, spec.word_bound, len(found), witness=last_word,
                           witness_classification=last_cls, counts=counts)

    if counts[PARABOLIC] == 0:
        return GroupReport(FINITE, spec.word_bound, len(found), counts=counts,
                           finite_part_order_lower_bound=len(found))

    report = GroupReport(MODERATE, spec.word_bound, len(found), counts=counts)
    rays = []
    for _, _, c in found:
        if c.tag == PARABOLIC and c.theta not in rays:
            rays.append(c.theta)
    if len(rays) > 1:
        report.hints.append(
            f"{len(rays)} distinct parabolic rays found; a hyperbolic element exists beyond L")
        return report
    theta = linalg.int_vector(list(rays[0]))
    report.common_theta = tuple(int(c) for c in theta)

    stabilizing = [(w, e) for w, e, _ in found if linalg.mat_equal(e.apply(theta), theta)]
    if len(stabilizing) < len(found):
        report.hints.append("some explored elements move the common ray; a hyperbolic element exists beyond L")
    sigma = SigmaQuotient(spec.lattice, theta)
    for g in spec.generators:
        report.sigma_actions.append(sigma.induced(g) if linalg.mat_equal(g.apply(theta), theta) else None)

    actions = set()
    kernel = []
    for w, e in stabilizing:
        a = sigma.induced(e)
        actions.add(linalg.mat_key(a))
        if sigma.rank == 0 or linalg.mat_equal(a, linalg.identity(sigma.rank)):
            kernel.append((w, e))
    report.finite_part_order_lower_bound = len(actions)

    frame = TranslationFrame(spec.lattice, theta, find_partner(spec.lattice, theta, spec.generators))
    basis: list = []
    for w, e in kernel:
        if e.is_identity():
            continue
        zeta = decompose_translation(e, frame)
        if linalg.rank(np.array(basis + [list(zeta)], dtype=object)) > len(basis):
            basis.append(list(zeta))
            report.kernel_generators.append((w, zeta))
    report.translation_rank = len(basis)
    if report.translation_rank == 0:
        report.hints.append("no nontrivial translation found within L")
    return report


@dataclass(frozen=True)
class ClosureResult:
    finite: bool
    size: int
    cap: int

    def __bool__(self):
        return self.finite


def torsion_subgroup_is_finite_check(elements, cap: int | None = None) -> ClosureResult:
    """Close a set of elliptic isometries under products; finite iff it stabilizes below ``cap``."""
    elements = list(elements)
    if not elements:
        raise ValueError("need at least one element")
    lattice = elements[0].lattice
    for e in elements:
        if classify(e).tag != ELLIPTIC:
            raise LorentzError("closure check expects elliptic elements only")
    if cap is None:
        cap = 10 * lattice.rank ** 2
    ident = Isometry.identity(lattice)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in elements:
                y = x @ g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > cap:
                        return ClosureResult(False, len(seen), cap)
        frontier = nxt
    return ClosureResult(True, len(seen), cap)
