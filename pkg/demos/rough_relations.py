# %% [markdown]
# Rough relations: composition, converse and the identity on a two point space.

# %%
from dualitykit import ApproximationSpace, RoughSet, build_full_rough_relation_algebra, check_r2a, cs_rra
from dualitykit.errors import PreconditionError
from dualitykit.rra import check_r2fa

space = ApproximationSpace.identity([1, 2])
algebra = build_full_rough_relation_algebra(space)
print(len(algebra), "rough relations")
print("identity", algebra.op("one_prime").label())

# %%
r = RoughSet(frozenset({(1, 2)}), frozenset({(1, 2)}))
print("converse ", algebra.op("converse", r).label())
print("r ; r~   ", algebra.op("compose", r, algebra.op("converse", r)).label())

# %%
report = check_r2a(algebra)
print(report.passed, report.law("r2a.R2A1.associative").mode)

# %%
frame = cs_rra(algebra)
print(len(frame), "prime filters", check_r2fa(frame).passed)

# %%
# with one singleton class next to a larger one, composing two rough relations can fall outside
try:
    build_full_rough_relation_algebra(ApproximationSpace([1, 2, 3], [[1], [2, 3]]))
except PreconditionError as exc:
    print(exc)
    print([x.label() for x in exc.witness])
