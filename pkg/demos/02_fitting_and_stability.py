# %% [markdown]
# Recovering cohomology from point counts
#
# Point counts at several primes determine the multiplicities
# <chi, H^i(P_n)> by solving a Vandermonde-type system. For large n the
# multiplicities stabilise, and the generating L-series predicts them.

# %%
import numpy as np

from twistedgl.braidcoh import ls_multiplicities
from twistedgl.glcount import fit_multiplicities
from twistedgl.lseries import residue_ratio, stable_coefficients
from twistedgl.symcomb import CharacterPolynomial

X1 = CharacterPolynomial.X(1)
QUAD = CharacterPolynomial.binom_X(1, 2) - CharacterPolynomial.X(2)
primes = [2, 3, 5, 7, 11, 13]

# %%
for name, chi in (("X1", X1), ("quad", QUAD)):
    fitted = fit_multiplicities(chi, 5, primes)
    direct = ls_multiplicities(chi, 5)
    print(name, "fit:", [str(m) for m in fitted], "direct:", [str(m) for m in direct])
    assert fitted == direct

# %%
# Stable multiplicities of the quadratic excess follow 2i plus a period-4 wobble
series = np.array(stable_coefficients("P_quad", 12))
i = np.arange(1, 13)
print(series)
print("minus 2i:", series - 2 * i)

# %%
# The limiting mean is a rational function of q
print("residue ratio:", residue_ratio("P_quad"))
