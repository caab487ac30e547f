# %% [markdown]
# Regular double Stone algebras from posets made of points and two element chains,
# and what goes wrong for a longer chain.

# %%
import numpy as np

from dualitykit import Frame, Kind, Poset, check_kind, cm, cs, roundtrip_algebra
from dualitykit.algebra import derive_join_meet, pseudocomplements
from dualitykit import FiniteAlgebra

frame = Frame.ordered(Poset(["a", "b", "c"], [("a", "b")], close=True))
algebra = cm(frame, Kind.RDSA)
print(algebra.labels)

# %%
# the operations are stored as index arrays over the element list
star = algebra.unary["star"]
plus = algebra.unary["plus"]
print(star, plus)
for i, label in enumerate(algebra.labels):
    print(f"{label:>8}  star {algebra.labels[star[i]]:>8}  plus {algebra.labels[plus[i]]:>8}")

# %%
# star is the largest element meeting y in bottom
bottom = algebra.lattice.bottom
meets = algebra.lattice.meet[np.arange(len(algebra)), :] == bottom
print(meets.astype(int))

# %%
result = roundtrip_algebra(algebra)
print(result.passed, dict(result.sizes))

# %%
# prime filters come back as the original three points
print(len(cs(algebra)))

# %%
# a four element chain carries both pseudocomplements but misses the determination law
lattice = derive_join_meet(Poset.chain("0ab1"))
star4, plus4 = pseudocomplements(lattice)
chain4 = FiniteAlgebra(lattice, Kind.RDSA, {"star": star4, "plus": plus4}, name="chain4")
report = check_kind(chain4)
print(report.failed_laws())
print(report.law("rdsa.M").witness)
