"""Labels, canonical ordering and bitmask helpers for finite sets."""

from __future__ import annotations

from functools import lru_cache
from typing import Hashable, Iterable, Sequence

import numpy as np

MAX_POINTS = 62


def label(x) -> str:
    """Render an element identifier as text.

    Plain identifiers print as themselves, sets as ``{a,b}``, tuples as
    ``(a,b)``; members are listed in canonical order.
    """
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (frozenset, set)):
        return "{" + ",".join(label(y) for y in sort_canonical(x)) + "}"
    if isinstance(x, tuple):
        return "(" + ",".join(label(y) for y in x) + ")"
    if hasattr(x, "label"):
        return x.label()
    return str(x)


class LazyLabels(Sequence):
    """Labels of a sequence of elements, rendered on first access.

    Witness reporting needs a label only for the failing assignment, and the
    labels of nested filter sets can be very long.
    """

    def __init__(self, items: Sequence):
        self._items = items
        self._cache: dict = {}

    def __len__(self) -> int:
        return len(self._items)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[j] for j in range(*i.indices(len(self)))]
        if i not in self._cache:
            self._cache[i] = label(self._items[i])
        return self._cache[i]

    def __eq__(self, other) -> bool:
        return list(self) == list(other)

    def __repr__(self) -> str:
        return repr(list(self))


def canonical_key(x):
    if isinstance(x, str):
        return (0, x)
    if isinstance(x, (int, np.integer)):
        return (0, str(int(x)))
    try:
        return _cached_key(x)
    except TypeError:  # unhashable, e.g. a plain set
        return _key(x)


@lru_cache(maxsize=1 << 17)
def _cached_key(x):
    return _key(x)


def _key(x):
    if isinstance(x, tuple):
        return (1, tuple(canonical_key(y) for y in x))
    if isinstance(x, (frozenset, set)):
        return (2, len(x), tuple(sorted(canonical_key(y) for y in x)))
    if hasattr(x, "sort_key"):
        return (3, x.sort_key())
    return (4, repr(x))


def sort_canonical(items: Iterable) -> list:
    return sorted(items, key=canonical_key)


def mask_of(subset: Iterable[Hashable], index: dict) -> int:
    m = 0
    for x in subset:
        m |= 1 << index[x]
    return m


def members(mask: int, points: Sequence) -> frozenset:
    return frozenset(points[i] for i in range(len(points)) if mask >> i & 1)


def check_width(n: int) -> None:
    if n > MAX_POINTS:
        from .errors import DomainError

        raise DomainError(f"{n} points exceed the bitmask limit of {MAX_POINTS}")


def lookup(masks: np.ndarray, table: np.ndarray) -> np.ndarray:
    """Map an array of masks to carrier indices; -1 where a mask is absent."""
    order = np.argsort(masks, kind="stable")
    sorted_masks = masks[order]
    pos = np.searchsorted(sorted_masks, table)
    pos = np.clip(pos, 0, len(masks) - 1)
    found = sorted_masks[pos] == table
    return np.where(found, order[pos], -1)
