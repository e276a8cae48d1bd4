"""
Classifying isometries of a Lorentzian lattice
==============================================

Every element of O_+(Z^{1,2}) is elliptic, parabolic or hyperbolic. We
enumerate the small ones, classify them exactly and compare with how fast
their powers grow.
"""
# %%
# Build the lattice diag(1, -1, -1). The positive cone is the component of
# {x^2 >= 0} containing e0.
import itertools
from collections import Counter

import numpy as np

from lorentz_aut import Isometry, classify, diagonal_lattice, growth_probe

lat = diagonal_lattice(3)
g = np.diag([1, -1, -1])

# %%
# A column-by-column search: the first column has square 1 and a positive
# e0 coordinate, the other two have square -1, all pairwise orthogonal.
box = range(-9, 10)
vecs = [np.array(v) for v in itertools.product(box, repeat=3)]
first = [v for v in vecs if v @ g @ v == 1 and v[0] > 0]
neg = [v for v in vecs if v @ g @ v == -1]
found = []
for a in first:
    b_ok = [b for b in neg if a @ g @ b == 0]
    for b in b_ok:
        for c in b_ok:
            if b @ g @ c == 0:
                found.append(Isometry(np.column_stack([a, b, c]).tolist(), lat))
print(len(found), "isometries with entries in [-9, 9]")

# %%
# Classify each one. Elliptic elements report their order, parabolic ones
# their fixed isotropic ray, hyperbolic ones an approximate spectral radius.
results = [classify(u) for u in found]
print(Counter(c.tag for c in results))
for u, c in zip(found, results):
    if c.tag == "Parabolic":
        print("parabolic ray:", c.theta)
        break
hyp = max((c for c in results if c.tag == "Hyperbolic"), key=lambda c: c.spectral_radius_approx)
print("largest spectral radius found:", round(hyp.spectral_radius_approx, 6))

# %%
# Growth of ||u^n|| separates the three classes: bounded, quadratic,
# exponential. The fit is only a diagnostic; the classifier is exact.
for tag in ("Elliptic", "Parabolic", "Hyperbolic"):
    u = next(u for u, c in zip(found, results) if c.tag == tag and not u.is_identity())
    rep = growth_probe(u, 64)
    print(f"{tag:10s} fitted exponent {rep.fitted_exponent:7.3f} -> {rep.fitted_class}")
