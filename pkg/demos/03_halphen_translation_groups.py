"""
Translation groups of Halphen surfaces
======================================

On Z^{1,9} with K = (-3, 1, ..., 1) every alpha orthogonal to K gives an
explicit integral isometry lambda_alpha fixing K. Reducible fibers cut the
rank of the translation group down from 8.
"""
# %%
from lorentz_aut import HalphenModel, classify, classieux_matrix, generator_basis, translation_group_rank
from lorentz_aut.halphen import builtin_configs, crucial_solver, e
from lorentz_aut.io import load_fixture

model = HalphenModel(1)
lam = classieux_matrix(model, e(1) - e(2)).matrix
print("lambda(e0) =", lam.apply(e(0)))
print(classify(lam))

# %%
# The e0 coordinate of lambda_{n alpha}(e0) is 1 + 9 n^2: quadratic growth.
print([int(classieux_matrix(model, n * (e(1) - e(2))).matrix.apply(e(0))[0]) for n in range(1, 6)])

# %%
# Ranks for the bundled configurations. rkN = 1 + sum(mu - 1) and the
# translation group has rank 8 - sum(mu - 1).
for name, cfg in builtin_configs().items():
    print(f"{name:20s} mus={cfg.mus!s:28s} (rkN, rkG) = {translation_group_rank(cfg.model, cfg)}")

# %%
# Generators for the unnodal case. Their alphas span K^perp / Z K, where the
# form is -E8.
import sympy

gens = generator_basis(model, load_fixture("unnodal"))
gram = sympy.Matrix([[model.pairing(a.alpha, b.alpha) for b in gens] for a in gens])
print("det", gram.det(), "diagonal", list(gram.diagonal()))

# %%
# The least N killing D on every fiber component, here for a fiber made of a
# line and a conic.
cfg = load_fixture("line_conic")
res = crucial_solver(model, cfg, e(1) - e(4))
print("N =", res.N, "S coefficients", res.coefficients)
