# %% [markdown]
# # Scramblers from a correspondence on moduli space
#
# For #P = 4 the scrambler can be read off a pair of maps phi, rho from
# a sphere W to moduli space.  Multipliers are ratios of local degrees at
# the cusps, found exactly with gcds of squarefree factors.

# %%
from hurwitz_scrambler import build_scrambler, decide_contraction, parse_labels, serialize_scrambler
from hurwitz_scrambler.exactmath import RationalFunction, parse_rational_function
from hurwitz_scrambler.modspace import cusp_fiber_table

phi = parse_rational_function("(1-2/w)^2", "w")
rho = RationalFunction.identity()
for cls in cusp_fiber_table(phi, rho):
    print(cls.describe("w"))

# %% [markdown]
# The point w = 2 lies over cusp 0 but rho(2) is not a cusp, so that
# curve pulls back to a trivial one: an edge into ``empty``.

# %%
s = build_scrambler(phi, rho, parse_labels("0=a,inf=b,1=c"))
print(serialize_scrambler(s))
print(decide_contraction(s))

# %% [markdown]
# A cubic with three fixed critical points gives loops {[1], [1/3]} at
# every cusp.  The [1] loops obstruct the biset.

# %%
phi = parse_rational_function("(1+t)*(-1+3*t)^3/(16*t)", "t")
rho = parse_rational_function("(-1+2*t+3*t^2)/(4*t)", "t")
s = build_scrambler(phi, rho, parse_labels("0=a,1=b,inf=c"))
print(serialize_scrambler(s))
print(type(decide_contraction(s)).__name__)
