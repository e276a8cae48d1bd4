"""
Parabolic translations and their products
=========================================

A translation along an isotropic ray theta is fixed by a partner ray eta
and a vector zeta orthogonal to both. Translations along two different
rays never generate a group of moderate growth: one of ``uv`` and
``u^-1 v`` is hyperbolic.
"""
# %%
from lorentz_aut import (TranslationFrame, check_ray_proportionality, classify, decompose_translation,
                         diagonal_lattice, hyperbolic_from_pair, make_translation)

lat = diagonal_lattice(3)
frame = TranslationFrame(lat, [1, 1, 0], [1, -1, 0])
u = make_translation(frame, [0, 0, 2])
print(u.matrix)

# %%
# The matrix has half-integer entries because e0 = (theta + eta) / 2 is not
# in the span of theta, eta and zeta. Its square is integral.
k = u.integral_power()
print("integral power:", k)
print(classify(u.power(k).as_isometry()))

# %%
# The decomposition recovers zeta, and zeta is additive.
v = make_translation(frame, [0, 0, 6])
print(decompose_translation(u.matrix @ v.matrix, frame))

# %%
# A translation along the swapped frame. The product with u is hyperbolic.
w = make_translation(frame.swapped(), [0, 0, 2])
witness = hyperbolic_from_pair(u, w)
print(witness.word, witness.tag, round(witness.spectral_radius_approx, 6))

# %%
# When u(x) = v(x) for a vector x of the positive cone, the two zetas point
# along the same ray. Here x is built so that the ratio is 2.
v2 = make_translation(frame.swapped(), [0, 0, 4])
x = [3, -1, -2]  # theta + 2 eta - zeta
print(check_ray_proportionality(u, v2, x))
