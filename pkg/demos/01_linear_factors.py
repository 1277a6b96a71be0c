# %% [markdown]
# Expected number of linear factors of a squarefree polynomial
#
# Count roots over F_q by brute force, then recover the same number from
# the character of the permutation action on the roots.

# %%
from fractions import Fraction

import numpy as np

from twistedgl.ffpoly import field_of_order
from twistedgl.glcount import expected_statistic, lhs_conf_sum, rhs_conf_polynomial
from twistedgl.symcomb import CharacterPolynomial

X1 = CharacterPolynomial.X(1)

# %%
# Brute force over the squarefree monic polynomials of degree 5 over F_3
F3 = field_of_order(3)
print("sum of X1 over Conf_5(F_3):", lhs_conf_sum(X1, F3, 5))

# %%
# The same sum as a polynomial in q, read off from braid group cohomology
poly = rhs_conf_polynomial(X1, 5)
print("as a polynomial in q:", poly)
print("at q = 3:", poly.evaluate(3))

# %%
# The expectation tends to 1 as n grows, with an alternating correction in 1/q
for q in (3, 5, 11):
    means = np.array([float(expected_statistic(X1, q, n)) for n in range(2, 7)])
    print(f"q={q:2d}", np.round(means, 5))

# %%
closed = sum(Fraction(-1, 3) ** i for i in range(4))
assert expected_statistic(X1, 3, 5) == closed == Fraction(20, 27)
