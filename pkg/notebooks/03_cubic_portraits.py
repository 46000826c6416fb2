# %% [markdown]
# # Portraits and iteration
#
# A cubic with a 4-cycle a -> b -> c -> d and critical values a, c is
# completely unobstructed, but its second iterate is not: the 4-cycle
# splits into two repelling 2-cycles.  The scrambler shows the same
# thing as an obstructed 2-cycle of two-curve multicurves.

# %%
from hurwitz_scrambler import classify, iterate, load_portrait, load_scrambler, rationality_by_level

cubic = load_portrait("cubic5")
print(classify(cubic))
print(classify(iterate(cubic, 2)), iterate(cubic, 2).cycles())

# %%
s = load_scrambler("cubic5")
for n in range(1, 6):
    r = rationality_by_level(s, n)
    print(n, type(r).__name__, getattr(r, "path", None) and r.path.describe())

# %% [markdown]
# The rabbit stays in the attracting case under iteration.

# %%
rabbit = load_portrait("rabbit")
print([str(classify(iterate(rabbit, n))) for n in range(1, 7)])
