"""Approximation spaces, rough sets and the operators they induce."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Hashable, Iterable

import numpy as np

from ._sets import check_width, label, lookup, sort_canonical, canonical_key
from .algebra import FiniteAlgebra, FiniteLattice, Kind
from .errors import DomainError, PreconditionError
from .order import Frame


@dataclass(frozen=True)
class BinaryRelation:
    carrier: frozenset
    pairs: frozenset

    def __init__(self, carrier: Iterable, pairs: Iterable = ()):
        carrier = frozenset(carrier)
        pairs = frozenset(tuple(p) for p in pairs)
        for x, y in pairs:
            if x not in carrier or y not in carrier:
                raise DomainError(f"pair ({label(x)},{label(y)}) leaves the carrier")
        object.__setattr__(self, "carrier", carrier)
        object.__setattr__(self, "pairs", pairs)

    def image(self, x) -> frozenset:
        """``R(x) = {y : x R y}``."""
        return frozenset(y for (a, y) in self.pairs if a == x)

    def complement(self) -> "BinaryRelation":
        return BinaryRelation(self.carrier, set(product(self.carrier, repeat=2)) - self.pairs)

    def __contains__(self, pair) -> bool:
        return tuple(pair) in self.pairs

    def __len__(self) -> int:
        return len(self.pairs)

    def is_equivalence(self) -> bool:
        c, p = self.carrier, self.pairs
        refl = all((x, x) in p for x in c)
        sym = all((y, x) in p for x, y in p)
        trans = all((x, w) in p for x, y in p for z, w in p if y == z)
        return refl and sym and trans


def _subset(y: Iterable, carrier: frozenset) -> frozenset:
    y = frozenset(y)
    extra = y - carrier
    if extra:
        raise DomainError(f"{label(sort_canonical(extra)[0])} is not in the universe")
    return y


def possibility_op(r: BinaryRelation, y: Iterable) -> frozenset:
    """``{x : R(x) meets y}``."""
    y = _subset(y, r.carrier)
    return frozenset(x for (x, z) in r.pairs if z in y)


def necessity_op(r: BinaryRelation, y: Iterable) -> frozenset:
    """``{x : R(x) is contained in y}``."""
    y = _subset(y, r.carrier)
    return r.carrier - frozenset(x for (x, z) in r.pairs if z not in y)


def sufficiency_op(r: BinaryRelation, y: Iterable) -> frozenset:
    """``{x : y is contained in R(x)}``."""
    y = _subset(y, r.carrier)
    return frozenset(x for x in r.carrier if all((x, z) in r.pairs for z in y))


@dataclass(frozen=True)
class RoughSet:
    """A pair of definable sets ``<lower, upper>``.

    ``space`` is informational (used to reject mixing rough sets of different
    spaces) and does not take part in equality.
    """

    lower: frozenset
    upper: frozenset
    space: "ApproximationSpace | None" = field(default=None, compare=False, repr=False, hash=False)

    def label(self) -> str:
        return f"<{label(self.lower)},{label(self.upper)}>"

    def sort_key(self):
        return (canonical_key(self.lower), canonical_key(self.upper))

    def __str__(self) -> str:
        return self.label()


class ApproximationSpace:
    """A finite universe partitioned into the classes of an equivalence.

    >>> s = ApproximationSpace([1, 2, 3, 4], [[1, 2], [3, 4]])
    >>> s.approximations({1, 2, 3}).label()
    '<{1,2},{1,2,3,4}>'
    """

    def __init__(self, universe: Iterable[Hashable], blocks: Iterable[Iterable[Hashable]]):
        self.universe = tuple(sort_canonical(set(universe)))
        uni = frozenset(self.universe)
        seen: set = set()
        out = []
        for b in blocks:
            b = frozenset(b)
            if not b:
                raise DomainError("empty class")
            stray = b - uni
            if stray:
                raise DomainError(f"class element {label(sort_canonical(stray)[0])} not in universe")
            overlap = b & seen
            if overlap:
                raise DomainError(f"classes overlap at {label(sort_canonical(overlap)[0])}")
            seen |= b
            out.append(b)
        if seen != uni:
            raise DomainError(f"classes do not cover {label(sort_canonical(uni - seen)[0])}")
        self.blocks = tuple(sort_canonical(out))
        self._block_of = {x: b for b in self.blocks for x in b}

    @classmethod
    def from_relation(cls, r: BinaryRelation) -> "ApproximationSpace":
        if not r.is_equivalence():
            raise PreconditionError("relation is not an equivalence")
        blocks = {r.image(x) for x in r.carrier}
        return cls(r.carrier, blocks)

    @classmethod
    def identity(cls, universe) -> "ApproximationSpace":
        return cls(universe, [[x] for x in universe])

    @classmethod
    def total(cls, universe) -> "ApproximationSpace":
        universe = list(universe)
        return cls(universe, [universe] if universe else [])

    def __eq__(self, other) -> bool:
        return isinstance(other, ApproximationSpace) and (self.universe, self.blocks) == (other.universe, other.blocks)

    def __hash__(self) -> int:
        return hash((self.universe, self.blocks))

    def __repr__(self) -> str:
        return "ApproximationSpace(" + " ".join(label(b) for b in self.blocks) + ")"

    def __len__(self) -> int:
        return len(self.universe)

    def block_of(self, x) -> frozenset:
        return self._block_of[x]

    @cached_property
    def theta(self) -> BinaryRelation:
        return BinaryRelation(self.universe, [(x, y) for b in self.blocks for x in b for y in b])

    def as_frame(self) -> Frame:
        return Frame.plain(self.universe, self.theta.pairs)

    def lower(self, y: Iterable) -> frozenset:
        y = _subset(y, frozenset(self.universe))
        return frozenset().union(*[b for b in self.blocks if b <= y])

    def upper(self, y: Iterable) -> frozenset:
        y = _subset(y, frozenset(self.universe))
        return frozenset().union(*[b for b in self.blocks if b & y])

    def approximations(self, y: Iterable) -> RoughSet:
        return RoughSet(self.lower(y), self.upper(y), self)

    def is_definable(self, y: Iterable) -> bool:
        y = frozenset(y)
        return all(b <= y or not (b & y) for b in self.blocks)

    def rough_set_violation(self, lower: Iterable, upper: Iterable):
        """Why ``<lower, upper>`` is not a rough set of this space, or None."""
        lower, upper = frozenset(lower), frozenset(upper)
        uni = frozenset(self.universe)
        if not (lower <= uni and upper <= uni):
            return "components leave the universe"
        if not lower <= upper:
            return "lower is not contained in upper"
        if not (self.is_definable(lower) and self.is_definable(upper)):
            return "a component is not a union of classes"
        for b in self.blocks:
            if b <= upper - lower and len(b) < 2:
                return f"singleton class {label(b)} in the boundary"
        return None

    def is_rough_set(self, lower: Iterable, upper: Iterable) -> bool:
        return self.rough_set_violation(lower, upper) is None

    def rough_set(self, lower: Iterable, upper: Iterable) -> RoughSet:
        why = self.rough_set_violation(lower, upper)
        if why:
            raise DomainError(f"not a rough set of this space: {why}")
        return RoughSet(frozenset(lower), frozenset(upper), self)

    def rough_sets(self) -> list:
        """All rough sets, generated class by class: in, out, or (if the class
        has two or more elements) in the boundary."""
        options = []
        for b in self.blocks:
            opts = [(frozenset(), frozenset()), (b, b)]
            if len(b) >= 2:
                opts.append((frozenset(), b))
            options.append(opts)
        out = []
        for choice in product(*options):
            lo = frozenset().union(*[c[0] for c in choice])
            up = frozenset().union(*[c[1] for c in choice])
            out.append(RoughSet(lo, up, self))
        return sort_canonical(out)

    def check_space(self, other: "ApproximationSpace | None") -> None:
        if other is not None and other != self:
            raise DomainError("rough sets belong to different approximation spaces")


def approximations(s: ApproximationSpace, y: Iterable) -> RoughSet:
    """``<lower, upper>`` of ``y``."""
    return s.approximations(y)


def _common_space(a: RoughSet, b: RoughSet):
    if a.space is not None and b.space is not None and a.space != b.space:
        raise DomainError("rough sets belong to different approximation spaces")
    return a.space if a.space is not None else b.space


def rough_join(a: RoughSet, b: RoughSet) -> RoughSet:
    return RoughSet(a.lower | b.lower, a.upper | b.upper, _common_space(a, b))


def rough_meet(a: RoughSet, b: RoughSet) -> RoughSet:
    return RoughSet(a.lower & b.lower, a.upper & b.upper, _common_space(a, b))


def _universe_of(a: RoughSet, space) -> frozenset:
    space = space if space is not None else a.space
    if space is None:
        raise DomainError("rough set carries no approximation space; pass one explicitly")
    return frozenset(space.universe)


def rough_star(a: RoughSet, space: ApproximationSpace | None = None) -> RoughSet:
    """``<X - upper, X - upper>``: the pseudocomplement."""
    x = _universe_of(a, space)
    rest = x - a.upper
    return RoughSet(rest, rest, space or a.space)


def rough_plus(a: RoughSet, space: ApproximationSpace | None = None) -> RoughSet:
    """``<X - lower, X - lower>``: the dual pseudocomplement."""
    x = _universe_of(a, space)
    rest = x - a.lower
    return RoughSet(rest, rest, space or a.space)


def _block_masks(s: ApproximationSpace) -> tuple:
    idx = {x: i for i, x in enumerate(s.universe)}
    return [sum(1 << idx[x] for x in b) for b in s.blocks], idx


def _rough_codes(s: ApproximationSpace) -> tuple:
    """Encode the rough sets of ``s`` as ``lower | upper << n`` over all subsets."""
    n = len(s.universe)
    check_width(2 * n)
    blocks, _ = _block_masks(s)
    ys = np.arange(1 << n, dtype=np.uint64)
    lower = np.zeros_like(ys)
    upper = np.zeros_like(ys)
    for b in blocks:
        b = np.uint64(b)
        lower |= np.where((ys & b) == b, b, np.uint64(0))
        upper |= np.where((ys & b) != 0, b, np.uint64(0))
    codes = np.unique(lower | (upper << np.uint64(n)))
    return codes


def _decode(code: int, s: ApproximationSpace) -> RoughSet:
    n = len(s.universe)
    lo = frozenset(s.universe[i] for i in range(n) if code >> i & 1)
    up = frozenset(s.universe[i] for i in range(n) if code >> (n + i) & 1)
    return RoughSet(lo, up, s)


def rough_set_algebra_codes(s: ApproximationSpace) -> tuple:
    """Carrier of the full rough set algebra as (elements, codes) in canonical order."""
    codes = [int(c) for c in _rough_codes(s)]
    elems = [_decode(c, s) for c in codes]
    order = sorted(range(len(elems)), key=lambda i: elems[i].sort_key())
    return [elems[i] for i in order], [codes[i] for i in order]


def build_rough_set_algebra(s: ApproximationSpace, name: str = "") -> FiniteAlgebra:
    """The full algebra of rough sets of ``s`` as a regular double Stone algebra.

    The carrier is the image of ``Y -> <lower Y, upper Y>`` over all subsets.
    """
    n = len(s.universe)
    elems, codes = rough_set_algebra_codes(s)
    lat = FiniteLattice.from_codes(elems, codes)
    full = np.uint64((1 << n) - 1)
    arr = lat.masks
    lo = arr & full
    up = arr >> np.uint64(n)
    shift = np.uint64(n)
    star_codes = (full ^ up) | ((full ^ up) << shift)
    plus_codes = (full ^ lo) | ((full ^ lo) << shift)
    star = lookup(arr, star_codes)
    plus = lookup(arr, plus_codes)
    if (star < 0).any() or (plus < 0).any():
        raise PreconditionError("pseudocomplements leave the set of rough sets")
    return FiniteAlgebra(lat, Kind.RDSA, {"star": star, "plus": plus}, name=name)


def lift_square(s: ApproximationSpace) -> ApproximationSpace:
    """The space on pairs whose classes are products of two classes."""
    universe = [(x, y) for x in s.universe for y in s.universe]
    blocks = [[(x, y) for x in b1 for y in b2] for b1 in s.blocks for b2 in s.blocks]
    return ApproximationSpace(universe, blocks)


def _same_carrier(r: BinaryRelation, s: BinaryRelation) -> None:
    if r.carrier != s.carrier:
        raise DomainError("relations live on different carriers")


def rel_compose(r: BinaryRelation, s: BinaryRelation) -> BinaryRelation:
    _same_carrier(r, s)
    return BinaryRelation(r.carrier, {(x, y) for (x, z) in r.pairs for (w, y) in s.pairs if z == w})


def rel_converse(r: BinaryRelation) -> BinaryRelation:
    return BinaryRelation(r.carrier, {(y, x) for (x, y) in r.pairs})


def identity_rel(carrier: Iterable) -> BinaryRelation:
    carrier = frozenset(carrier)
    return BinaryRelation(carrier, {(x, x) for x in carrier})


__all__ = [
    "ApproximationSpace",
    "BinaryRelation",
    "RoughSet",
    "approximations",
    "possibility_op",
    "necessity_op",
    "sufficiency_op",
    "rough_join",
    "rough_meet",
    "rough_star",
    "rough_plus",
    "build_rough_set_algebra",
    "rough_set_algebra_codes",
    "lift_square",
    "rel_compose",
    "rel_converse",
    "identity_rel",
]
