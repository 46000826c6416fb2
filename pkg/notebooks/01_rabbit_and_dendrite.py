# %% [markdown]
# # Two quadratic polynomials
#
# The rabbit and the dendrite ``z^2 + i`` have scramblers with three
# curve-orbit vertices.  The rabbit's biset contracts; the dendrite's
# carries an obstructed loop.

# %%
from hurwitz_scrambler import decide_contraction, jsr_bounds, load_scrambler
from hurwitz_scrambler.jsr import cycle_spectra
from hurwitz_scrambler.scrambler import format_weight

rabbit = load_scrambler("rabbit")
for e in rabbit.edges:
    print(e.src, "->", e.dst, format_weight(e.weight, compact=True))

# %% [markdown]
# The only cycle is a -> c -> b -> a with product 1 * 1/2 * 1/2 = 1/4,
# so every cycle spectrum is below one.  Products of length 3 all have
# norm 1/4, which certifies contraction at level 3 and pins the joint
# spectral radius to 4^(-1/3).

# %%
for cs in cycle_spectra(rabbit, 12):
    print(cs.cycle.describe(), format_weight(cs.product, compact=True), cs.below_one)
print(decide_contraction(rabbit))
est = jsr_bounds(rabbit)
print("lower", est.lower, "upper", est.upper, round(est.float_hint_upper, 5))

# %% [markdown]
# The dendrite has a loop of weight [1] at c.  Its spectral radius is
# exactly 1, so the verdict is Obstructed.

# %%
dendrite = load_scrambler("dendrite")
v = decide_contraction(dendrite)
print(type(v).__name__, v.witness.describe(), "sigma =", v.enclosure.lo)
