"""Finite partial orders, relational frames and frame embeddings."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Mapping

import numpy as np

from ._sets import LazyLabels, label, sort_canonical
from .errors import DomainError, PreconditionError
from .report import CheckReport, DEFAULT_POLICY, EvaluationPolicy, Law, run_laws


def _closure(m: np.ndarray) -> np.ndarray:
    m = m | np.eye(len(m), dtype=bool)
    for k in range(len(m)):
        m = m | (m[:, k : k + 1] & m[k : k + 1, :])
    return m


class Poset:
    """A finite partial order.

    ``leq`` is any iterable of pairs ``(x, y)`` meaning ``x <= y``.  By default
    the relation must already be reflexive, antisymmetric and transitive;
    pass ``close=True`` to take the reflexive-transitive closure first.
    Elements are kept in canonical sorted order.

    >>> p = Poset("ab", [("a", "a"), ("a", "b"), ("b", "b")])
    >>> sorted(p.up({"a"}))
    ['a', 'b']
    """

    def __init__(self, elements: Iterable[Hashable], leq: Iterable = (), *, close: bool = False):
        self.elements = tuple(sort_canonical(set(elements)))
        self.index = {x: i for i, x in enumerate(self.elements)}
        n = len(self.elements)
        m = np.zeros((n, n), dtype=bool)
        for pair in leq:
            x, y = pair
            if x not in self.index or y not in self.index:
                raise DomainError(f"order pair ({label(x)},{label(y)}) mentions an element outside the poset")
            m[self.index[x], self.index[y]] = True
        if close:
            m = _closure(m)
            if n and (m & m.T & ~np.eye(n, dtype=bool)).any():
                i, j = np.argwhere(m & m.T & ~np.eye(n, dtype=bool))[0]
                raise PreconditionError("closure is not antisymmetric", (self.elements[i], self.elements[j]))
        else:
            self._validate(m)
        m.setflags(write=False)
        self.matrix = m

    def _validate(self, m: np.ndarray) -> None:
        n = len(m)
        els = self.elements
        diag = np.flatnonzero(~np.diag(m)) if n else []
        if len(diag):
            raise PreconditionError(f"not reflexive at {label(els[diag[0]])}", (els[diag[0]],))
        anti = m & m.T & ~np.eye(n, dtype=bool)
        if anti.any():
            i, j = np.argwhere(anti)[0]
            raise PreconditionError(
                f"not antisymmetric: {label(els[i])} and {label(els[j])}", (els[i], els[j])
            )
        trans = (m.astype(np.int64) @ m.astype(np.int64) > 0) & ~m
        if trans.any():
            i, k = np.argwhere(trans)[0]
            j = np.flatnonzero(m[i] & m[:, k])[0]
            raise PreconditionError(
                f"not transitive: {label(els[i])} <= {label(els[j])} <= {label(els[k])}",
                (els[i], els[j], els[k]),
            )

    @classmethod
    def from_matrix(cls, elements, matrix) -> "Poset":
        elements = tuple(elements)
        pairs = [(elements[i], elements[j]) for i, j in np.argwhere(np.asarray(matrix, dtype=bool))]
        return cls(elements, pairs)

    @classmethod
    def chain(cls, elements) -> "Poset":
        elements = list(elements)
        pairs = [(elements[i], elements[j]) for i in range(len(elements)) for j in range(i, len(elements))]
        return cls(elements, pairs)

    @classmethod
    def antichain(cls, elements) -> "Poset":
        return cls(elements, [(x, x) for x in elements])

    def __len__(self) -> int:
        return len(self.elements)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Poset)
            and self.elements == other.elements
            and np.array_equal(self.matrix, other.matrix)
        )

    def __hash__(self) -> int:
        return hash((self.elements, self.matrix.tobytes()))

    def __repr__(self) -> str:
        strict = [f"{label(x)}<{label(y)}" for x, y in sorted(self.strict_pairs(), key=lambda p: (self.index[p[0]], self.index[p[1]]))]
        return f"Poset({{{','.join(label(x) for x in self.elements)}}}; {' '.join(strict)})"

    @property
    def leq(self) -> frozenset:
        return frozenset((self.elements[i], self.elements[j]) for i, j in np.argwhere(self.matrix))

    def strict_pairs(self) -> frozenset:
        return frozenset((x, y) for x, y in self.leq if x != y)

    def le(self, x, y) -> bool:
        return bool(self.matrix[self.index[x], self.index[y]])

    def _indices(self, a: Iterable) -> list:
        out = []
        for x in a:
            if x not in self.index:
                raise DomainError(f"{label(x)} is not an element of the poset")
            out.append(self.index[x])
        return out

    def up(self, a: Iterable) -> frozenset:
        idx = self._indices(a)
        if not idx:
            return frozenset()
        row = self.matrix[idx].any(axis=0)
        return frozenset(self.elements[i] for i in np.flatnonzero(row))

    def down(self, a: Iterable) -> frozenset:
        idx = self._indices(a)
        if not idx:
            return frozenset()
        col = self.matrix[:, idx].any(axis=1)
        return frozenset(self.elements[i] for i in np.flatnonzero(col))

    def is_up_set(self, a: Iterable) -> bool:
        a = frozenset(a)
        return self.up(a) == a

    @cached_property
    def minimal(self) -> frozenset:
        strict = self.matrix & ~np.eye(len(self), dtype=bool)
        return frozenset(self.elements[i] for i in np.flatnonzero(~strict.any(axis=0)))

    @cached_property
    def maximal(self) -> frozenset:
        strict = self.matrix & ~np.eye(len(self), dtype=bool)
        return frozenset(self.elements[i] for i in np.flatnonzero(~strict.any(axis=1)))

    def dual(self) -> "Poset":
        return Poset.from_matrix(self.elements, self.matrix.T)


def up_closure(p: Poset, a: Iterable) -> frozenset:
    """All elements lying above some member of ``a``."""
    return p.up(a)


def down_closure(p: Poset, a: Iterable) -> frozenset:
    """All elements lying below some member of ``a``."""
    return p.down(a)


def extremal_points(p: Poset) -> tuple:
    """Return ``(minimal, maximal)`` as frozensets."""
    return p.minimal, p.maximal


@dataclass(frozen=True)
class Frame:
    """A finite relational structure.

    A frame has a set of points and any of: a partial order, a binary
    relation ``rel``, a ternary relation, named unary functions and named
    distinguished subsets.  Each frame class used by the duality code is a
    particular combination of these components:

    * plain frames ``(X, R)`` for possibility, monadic, sufficiency and
      diversity kinds;
    * ordered frames ``(X, <=)`` for distributive lattices and double Stone
      algebras;
    * De Morgan frames ``(X, <=, N)``;
    * rough relation frames ``(X, <=, R, f, I)``.
    """

    points: tuple
    order: Poset | None = None
    rel: frozenset | None = None
    ternary: frozenset | None = None
    functions: Mapping = field(default_factory=dict)
    subsets: Mapping = field(default_factory=dict)

    def __post_init__(self):
        pts = tuple(sort_canonical(set(self.points)))
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "functions", {k: dict(v) for k, v in self.functions.items()})
        object.__setattr__(self, "subsets", {k: frozenset(v) for k, v in self.subsets.items()})
        pset = set(pts)
        if self.order is not None and set(self.order.elements) != pset:
            raise DomainError("order is not defined on exactly the frame's points")
        if self.rel is not None:
            object.__setattr__(self, "rel", frozenset(tuple(p) for p in self.rel))
            for x, y in self.rel:
                if x not in pset or y not in pset:
                    raise DomainError(f"relation pair ({label(x)},{label(y)}) leaves the frame")
        if self.ternary is not None:
            object.__setattr__(self, "ternary", frozenset(tuple(t) for t in self.ternary))
            for t in self.ternary:
                if len(t) != 3 or any(x not in pset for x in t):
                    raise DomainError(f"ternary tuple {label(tuple(t))} leaves the frame")
        for name, fn in self.functions.items():
            missing = pset - set(fn)
            if missing:
                raise DomainError(f"function {name} is not total: no value at {label(sort_canonical(missing)[0])}")
            for x, y in fn.items():
                if x not in pset or y not in pset:
                    raise DomainError(f"function {name} maps {label(x)} outside the frame")
        for name, s in self.subsets.items():
            if not s <= pset:
                raise DomainError(f"subset {name} leaves the frame")

    @classmethod
    def plain(cls, points, pairs) -> "Frame":
        return cls(tuple(points), rel=frozenset(pairs))

    @classmethod
    def ordered(cls, poset: Poset) -> "Frame":
        return cls(poset.elements, order=poset)

    @classmethod
    def de_morgan(cls, poset: Poset, negation: Mapping) -> "Frame":
        return cls(poset.elements, order=poset, functions={"N": negation})

    @classmethod
    def rough_relation(cls, poset: Poset, ternary, f: Mapping, ideal) -> "Frame":
        return cls(poset.elements, order=poset, ternary=frozenset(ternary), functions={"f": f}, subsets={"I": ideal})

    def __len__(self) -> int:
        return len(self.points)

    @cached_property
    def index(self) -> dict:
        return {x: i for i, x in enumerate(self.points)}

    @cached_property
    def labels(self) -> LazyLabels:
        return LazyLabels(self.points)

    @cached_property
    def order_matrix(self) -> np.ndarray:
        if self.order is None:
            raise DomainError("frame has no order")
        perm = [self.order.index[x] for x in self.points]
        return self.order.matrix[np.ix_(perm, perm)]

    @cached_property
    def rel_matrix(self) -> np.ndarray:
        if self.rel is None:
            raise DomainError("frame has no binary relation")
        n = len(self.points)
        m = np.zeros((n, n), dtype=bool)
        for x, y in self.rel:
            m[self.index[x], self.index[y]] = True
        return m

    @cached_property
    def ternary_tensor(self) -> np.ndarray:
        if self.ternary is None:
            raise DomainError("frame has no ternary relation")
        n = len(self.points)
        t = np.zeros((n, n, n), dtype=bool)
        for x, y, z in self.ternary:
            t[self.index[x], self.index[y], self.index[z]] = True
        return t

    def function_array(self, name: str) -> np.ndarray:
        fn = self.functions[name]
        return np.array([self.index[fn[x]] for x in self.points], dtype=np.int64)

    def subset_vector(self, name: str) -> np.ndarray:
        s = self.subsets[name]
        return np.array([x in s for x in self.points], dtype=bool)

    def image(self, x):
        """R(x) = {y : x R y}."""
        return frozenset(y for (a, y) in self.rel if a == x)


@dataclass(frozen=True)
class FrameEmbeddingCandidate:
    map: Mapping
    source: Frame
    target: Frame


def check_frame_embedding(
    c: FrameEmbeddingCandidate, name: str = "embedding", policy: EvaluationPolicy = DEFAULT_POLICY
) -> CheckReport:
    """Check that ``c.map`` is injective and preserves and reflects every
    component of the source frame (order, relations, functions, subsets)."""
    src, tgt = c.source, c.target
    missing = [x for x in src.points if x not in c.map]
    if missing:
        raise DomainError(f"map is not total: no image for {label(missing[0])}")
    try:
        k = np.array([tgt.index[c.map[x]] for x in src.points], dtype=np.int64)
    except KeyError as exc:
        raise DomainError(f"map sends a point outside the target frame: {label(exc.args[0])}") from None

    laws = [Law("embedding.injective", ("x", "y"), lambda x, y: (x == y) | (k[x] != k[y]))]
    if src.order is not None:
        if tgt.order is None:
            raise DomainError("target frame has no order")
        s, t = src.order_matrix, tgt.order_matrix
        laws.append(Law("embedding.order", ("x", "y"), lambda x, y: s[x, y] == t[k[x], k[y]]))
    if src.rel is not None:
        if tgt.rel is None:
            raise DomainError("target frame has no binary relation")
        s2, t2 = src.rel_matrix, tgt.rel_matrix
        laws.append(Law("embedding.rel", ("x", "y"), lambda x, y: s2[x, y] == t2[k[x], k[y]]))
    if src.ternary is not None:
        if tgt.ternary is None:
            raise DomainError("target frame has no ternary relation")
        s3, t3 = src.ternary_tensor, tgt.ternary_tensor
        laws.append(Law("embedding.ternary", ("x", "y", "z"), lambda x, y, z: s3[x, y, z] == t3[k[x], k[y], k[z]]))
    for fname in sorted(src.functions):
        if fname not in tgt.functions:
            raise DomainError(f"target frame has no function {fname}")
        f, g = src.function_array(fname), tgt.function_array(fname)
        laws.append(Law(f"embedding.fun.{fname}", ("x",), lambda x, f=f, g=g: k[f[x]] == g[k[x]]))
    for sname in sorted(src.subsets):
        if sname not in tgt.subsets:
            raise DomainError(f"target frame has no subset {sname}")
        a, b = src.subset_vector(sname), tgt.subset_vector(sname)
        laws.append(Law(f"embedding.subset.{sname}", ("x",), lambda x, a=a, b=b: a[x] == b[k[x]]))
    return run_laws(name, "frame-embedding", laws, src.labels, policy)


__all__ = [
    "Poset",
    "Frame",
    "FrameEmbeddingCandidate",
    "up_closure",
    "down_closure",
    "extremal_points",
    "check_frame_embedding",
]
