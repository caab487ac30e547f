# %% [markdown]
# Rough sets over a small approximation space, and the algebra they form.

# %%
from dualitykit import ApproximationSpace, Kind, build_rough_set_algebra, check_kind, cm, cs

space = ApproximationSpace([1, 2, 3, 4], [[1, 2], [3], [4]])
print(space)

# %%
# lower and upper approximation of a few subsets
for subset in [{1}, {1, 3}, {1, 2, 4}, set()]:
    print(sorted(subset), "->", space.approximations(frozenset(subset)).label())

# %%
rough = build_rough_set_algebra(space)
print(len(rough), "rough sets")
print(rough.labels)

# %%
report = check_kind(rough, Kind.RDSA)
print(report.passed, len(report.laws), "laws")

# %%
# the space seen as an S5 frame: its complex algebra is monadic, and the canonical frame gives it back
monadic = cm(space.as_frame(), Kind.MONADIC)
print(check_kind(monadic).passed)
print(len(cs(monadic)), "ultrafilters")
