# %% [markdown]
# Statistics of maximal tori in GL_n(F_q)
#
# Each F_q-rational maximal torus has a cycle type. Weighting tori by a
# class function gives a polynomial in q, computed here from major-index
# counts of standard Young tableaux.

# %%
import numpy as np

from twistedgl.symcomb import CharacterPolynomial, sign
from twistedgl.toristat import (
    graded_table,
    pnt_tori,
    tori_bruteforce,
    tori_polynomial,
    tori_quadratic_excess_series,
)

X1 = CharacterPolynomial.X(1)

# %%
# Dimensions of the graded pieces of the S_4 coinvariant algebra, i.e. [4]_t!
table = graded_table(4)
print(np.array(table.dims()))

# %%
for n in range(1, 6):
    print(n, "tori:", tori_polynomial(1, n), " eigenvectors:", tori_polynomial(X1, n))

# %%
# Parity bias: the sign character picks out a single power of q
print([str(tori_polynomial(sign(n), n)) for n in range(1, 6)])

# %%
# Brute force over GL_3(F_2) agrees with the formula for irreducible tori
counts = tori_bruteforce(2, 3)
print(counts)
assert counts[(3,)] == pnt_tori(2, 3)

# %%
excess = tori_quadratic_excess_series(8)
print([int(excess.coeff(-i)) for i in range(1, 14)])
