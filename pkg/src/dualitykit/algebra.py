"""Finite lattices and lattice-based algebras stored as operation tables.

Elements of an algebra are arbitrary hashable values; all operations are kept
as numpy arrays of carrier *indices*, so law checking is vectorised.  Unary
operation names are fixed per kind (see :data:`SIGNATURES`):

=============  ==========================================
kind           operations
=============  ==========================================
possibility    ``f``
monadic        ``f``
sufficiency    ``g``
diversity      ``g``
bdl            (lattice only)
dsa, rdsa      ``star``, ``plus``
demorgan       ``neg``
r2a            ``star``, ``plus``, ``converse``; binary ``compose``; constant ``one_prime``
=============  ==========================================
"""

from __future__ import annotations

from enum import Enum
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from ._sets import LazyLabels, check_width, label, lookup, members, sort_canonical
from .errors import DomainError, InternalConsistencyError, PreconditionError
from .order import Poset
from .report import (
    CheckReport,
    DEFAULT_POLICY,
    EvaluationPolicy,
    Law,
    combine,
    run_laws,
)


class AlgebraKind(str, Enum):
    POSSIBILITY = "possibility"
    MONADIC = "monadic"
    SUFFICIENCY = "sufficiency"
    DIVERSITY = "diversity"
    BDL = "bdl"
    DSA = "dsa"
    RDSA = "rdsa"
    DEMORGAN = "demorgan"
    R2A = "r2a"

    def __str__(self) -> str:
        return self.value


Kind = AlgebraKind

SIGNATURES = {
    Kind.POSSIBILITY: (("f",), (), ()),
    Kind.MONADIC: (("f",), (), ()),
    Kind.SUFFICIENCY: (("g",), (), ()),
    Kind.DIVERSITY: (("g",), (), ()),
    Kind.BDL: ((), (), ()),
    Kind.DSA: (("plus", "star"), (), ()),
    Kind.RDSA: (("plus", "star"), (), ()),
    Kind.DEMORGAN: (("neg",), (), ()),
    Kind.R2A: (("converse", "plus", "star"), ("compose",), ("one_prime",)),
}

BOOLEAN_KINDS = frozenset({Kind.POSSIBILITY, Kind.MONADIC, Kind.SUFFICIENCY, Kind.DIVERSITY})


def as_kind(kind) -> AlgebraKind:
    try:
        return AlgebraKind(str(kind).lower())
    except ValueError:
        raise DomainError(f"unknown algebra kind {kind!r}") from None


class FiniteLattice:
    """A finite bounded lattice given by its order and join/meet tables.

    Use :func:`derive_join_meet` (or :meth:`from_poset`) for an abstract
    order, :meth:`from_sets` for a family of sets closed under union and
    intersection, and :func:`powerset_lattice` for ``2^X``.
    """

    def __init__(self, elements: Sequence, leq: np.ndarray, join: np.ndarray, meet: np.ndarray,
                 *, distributive: bool | None = None):
        self.elements = tuple(elements)
        self.index = {x: i for i, x in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise DomainError("duplicate lattice elements")
        n = len(self.elements)
        if n == 0:
            raise PreconditionError("unbounded: the empty order has no bottom or top", ())
        self.leq = np.asarray(leq, dtype=bool)
        self.join = np.asarray(join, dtype=np.int64)
        self.meet = np.asarray(meet, dtype=np.int64)
        for arr in (self.leq, self.join, self.meet):
            arr.setflags(write=False)
        bottoms = np.flatnonzero(self.leq.all(axis=1))
        tops = np.flatnonzero(self.leq.all(axis=0))
        if not len(bottoms) or not len(tops):
            raise PreconditionError("unbounded lattice", ())
        self.bottom = int(bottoms[0])
        self.top = int(tops[0])
        self.masks = None
        self.points = None
        if distributive is not None:
            self.__dict__["is_distributive"] = distributive

    @classmethod
    def from_poset(cls, p: Poset) -> "FiniteLattice":
        return derive_join_meet(p)

    @classmethod
    def from_sets(cls, points: Sequence, family: Iterable) -> "FiniteLattice":
        """Lattice of a family of subsets of ``points`` under union and intersection."""
        points = tuple(points)
        check_width(len(points))
        index = {x: i for i, x in enumerate(points)}
        masks = sorted({sum(1 << index[x] for x in s) for s in family})
        return cls.from_masks(points, masks)

    @classmethod
    def from_masks(cls, points: Sequence, masks: Iterable[int]) -> "FiniteLattice":
        points = tuple(points)
        elems = {members(m, points): m for m in set(int(m) for m in masks)}
        ordered = sort_canonical(elems)
        lat = cls.from_codes(ordered, [elems[e] for e in ordered])
        lat.points = points
        return lat

    @classmethod
    def from_codes(cls, elements: Sequence, codes: Sequence[int]) -> "FiniteLattice":
        """Lattice whose elements are encoded as bitmasks with join = OR, meet = AND."""
        arr = np.array([int(c) for c in codes], dtype=np.uint64)
        leq = (arr[:, None] & ~arr[None, :]) == 0
        join = lookup(arr, arr[:, None] | arr[None, :])
        meet = lookup(arr, arr[:, None] & arr[None, :])
        if (join < 0).any() or (meet < 0).any():
            raise DomainError("set family is not closed under union and intersection")
        lat = cls(elements, leq, join, meet, distributive=True)
        lat.masks = arr
        return lat

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"FiniteLattice({len(self)} elements)"

    @cached_property
    def labels(self) -> LazyLabels:
        return LazyLabels(self.elements)

    @cached_property
    def complement(self) -> np.ndarray:
        """Index of the complement of each element, ``-1`` where there is none."""
        ok = (self.meet == self.bottom) & (self.join == self.top)
        has = ok.any(axis=1)
        return np.where(has, ok.argmax(axis=1), -1)

    @property
    def is_boolean(self) -> bool:
        return bool((self.complement >= 0).all())

    @cached_property
    def is_distributive(self) -> bool:
        return distributivity_witness(self) is None

    @cached_property
    def join_irreducibles(self) -> np.ndarray:
        n = len(self)
        below = self.leq.T & ~np.eye(n, dtype=bool)  # below[i, k]: k < i
        below_count = below.sum(axis=1)
        down_count = self.leq.sum(axis=0)  # |down(k)|
        cover_is_max = below & (down_count[None, :] == below_count[:, None])
        return np.flatnonzero((below_count > 0) & cover_is_max.any(axis=1))

    def element(self, i: int):
        return self.elements[i]


def distributivity_witness(lat: FiniteLattice, chunk: int = 1 << 20):
    """First triple (a, b, c) with a.(b+c) != a.b + a.c, or None."""
    n = len(lat)
    j, m = lat.join, lat.meet
    step = max(1, chunk // (n * n))
    for start in range(0, n, step):
        a = np.arange(start, min(n, start + step))[:, None, None]
        b = np.arange(n)[None, :, None]
        c = np.arange(n)[None, None, :]
        bad = m[a, j[b, c]] != j[m[a, b], m[a, c]]
        if bad.any():
            x, y, z = np.argwhere(bad)[0]
            return (lat.elements[start + x], lat.elements[y], lat.elements[z])
    return None


def derive_join_meet(p: Poset, chunk: int = 1 << 22) -> FiniteLattice:
    """Build join and meet tables of a poset; fail unless every pair has both."""
    n = len(p)
    if n == 0:
        raise PreconditionError("unbounded: the empty order has no bottom or top", ())
    le = p.matrix
    up_count = le.sum(axis=1)
    down_count = le.sum(axis=0)
    tables = []
    for rel, count, what in ((le, up_count, "upper"), (le.T, down_count, "lower")):
        out = np.empty((n, n), dtype=np.int64)
        step = max(1, chunk // (n * n))
        for start in range(0, n, step):
            bounds = rel[start : start + step, None, :] & rel[None, :, :]
            size = bounds.sum(axis=-1)
            cand = bounds & (count[None, None, :] == size[:, :, None])
            found = cand.any(axis=-1)
            if not found.all():
                a, b = np.argwhere(~found)[0]
                x, y = p.elements[start + a], p.elements[b]
                raise PreconditionError(
                    f"not a lattice: {label(x)} and {label(y)} have no least {what} bound", (x, y)
                )
            out[start : start + step] = cand.argmax(axis=-1)
        tables.append(out)
    return FiniteLattice(p.elements, le, tables[0], tables[1])


def powerset_lattice(points: Iterable) -> FiniteLattice:
    points = tuple(sort_canonical(set(points)))
    check_width(len(points))
    return FiniteLattice.from_masks(points, range(1 << len(points)))


def up_set_lattice(p: Poset) -> FiniteLattice:
    """Lattice of up-closed subsets of ``p`` under union and intersection."""
    points = p.elements
    check_width(len(points))
    n = len(points)
    up_masks = [sum(1 << j for j in np.flatnonzero(p.matrix[i])) for i in range(n)]
    family = {0}
    # every up-set is a union of principal up-sets
    for m in up_masks:
        family |= {f | m for f in family}
    return FiniteLattice.from_masks(points, family)


class FiniteAlgebra:
    """A bounded lattice with named unary/binary operations and constants.

    ``unary``, ``binary`` and ``constants`` may be given either as index
    arrays (the internal form) or as mappings on element values.  The set of
    operation names must be exactly the signature of ``kind``.
    """

    def __init__(self, lattice: FiniteLattice, kind, unary: Mapping | None = None,
                 binary: Mapping | None = None, constants: Mapping | None = None, name: str = ""):
        self.lattice = lattice
        self.kind = as_kind(kind)
        self.name = name
        n = len(lattice)
        self.unary = {k: self._unary_table(k, v) for k, v in (unary or {}).items()}
        self.binary = {k: self._binary_table(k, v) for k, v in (binary or {}).items()}
        self.constants = {}
        for k, v in (constants or {}).items():
            if isinstance(v, (int, np.integer)) and not isinstance(v, bool) and v not in lattice.index:
                idx = int(v)
            else:
                if v not in lattice.index:
                    raise DomainError(f"constant {k} = {label(v)} is not in the carrier")
                idx = lattice.index[v]
            if not 0 <= idx < n:
                raise DomainError(f"constant {k} out of range")
            self.constants[k] = idx
        want_u, want_b, want_c = SIGNATURES[self.kind]
        got = (tuple(sorted(self.unary)), tuple(sorted(self.binary)), tuple(sorted(self.constants)))
        if got != (tuple(sorted(want_u)), tuple(sorted(want_b)), tuple(sorted(want_c))):
            raise DomainError(
                f"signature mismatch for kind {self.kind}: expected unary {list(want_u)}, binary "
                f"{list(want_b)}, constants {list(want_c)}; got {list(got[0])}, {list(got[1])}, {list(got[2])}"
            )

    def _unary_table(self, name, table) -> np.ndarray:
        n = len(self.lattice)
        if isinstance(table, Mapping):
            try:
                arr = np.array([self.lattice.index[table[x]] for x in self.lattice.elements], dtype=np.int64)
            except KeyError as exc:
                raise DomainError(f"operation {name} is not total or leaves the carrier at {label(exc.args[0])}") from None
        else:
            arr = np.asarray(table, dtype=np.int64)
        if arr.shape != (n,) or (arr < 0).any() or (arr >= n).any():
            raise DomainError(f"operation {name} is not a total unary table on the carrier")
        arr = arr.copy()
        arr.setflags(write=False)
        return arr

    def _binary_table(self, name, table) -> np.ndarray:
        n = len(self.lattice)
        if isinstance(table, Mapping):
            els, idx = self.lattice.elements, self.lattice.index
            try:
                arr = np.array([[idx[table[(x, y)]] for y in els] for x in els], dtype=np.int64).reshape(n, n)
            except KeyError as exc:
                raise DomainError(f"operation {name} is not total or leaves the carrier at {label(exc.args[0])}") from None
        else:
            arr = np.asarray(table, dtype=np.int64)
        if arr.shape != (n, n) or (arr < 0).any() or (arr >= n).any():
            raise DomainError(f"operation {name} is not a total binary table on the carrier")
        arr = arr.copy()
        arr.setflags(write=False)
        return arr

    def __len__(self) -> int:
        return len(self.lattice)

    def __repr__(self) -> str:
        return f"FiniteAlgebra({self.kind}, {len(self)} elements{', ' + self.name if self.name else ''})"

    @property
    def elements(self) -> tuple:
        return self.lattice.elements

    @property
    def index(self) -> dict:
        return self.lattice.index

    @property
    def labels(self) -> list:
        return self.lattice.labels

    @property
    def bottom(self):
        return self.lattice.elements[self.lattice.bottom]

    @property
    def top(self):
        return self.lattice.elements[self.lattice.top]

    def op(self, name: str, *args):
        """Apply a named operation (or ``join``/``meet``/``complement``) to element values."""
        idx = [self.index[a] for a in args]
        if name == "join":
            return self.elements[self.lattice.join[idx[0], idx[1]]]
        if name == "meet":
            return self.elements[self.lattice.meet[idx[0], idx[1]]]
        if name == "complement":
            c = self.lattice.complement[idx[0]]
            if c < 0:
                raise PreconditionError(f"{label(args[0])} has no complement", (args[0],))
            return self.elements[c]
        if name in self.unary:
            return self.elements[self.unary[name][idx[0]]]
        if name in self.binary:
            return self.elements[self.binary[name][idx[0], idx[1]]]
        if name in self.constants:
            return self.elements[self.constants[name]]
        raise DomainError(f"no operation named {name}")

    def table(self, name: str) -> dict:
        """A unary operation as a dict on element values."""
        t = self.unary[name]
        return {x: self.elements[t[i]] for i, x in enumerate(self.elements)}

    def replace(self, **unary) -> "FiniteAlgebra":
        ops = dict(self.unary)
        ops.update(unary)
        return FiniteAlgebra(self.lattice, self.kind, ops, self.binary, self.constants, self.name)


def powerset_algebra(points: Iterable, kind, unary: Mapping | None = None, binary: Mapping | None = None,
                     constants: Mapping | None = None, name: str = "") -> FiniteAlgebra:
    """``2^X`` with the given operations (tables on frozensets or index arrays)."""
    return FiniteAlgebra(powerset_lattice(points), kind, unary, binary, constants, name)


# -- filters ---------------------------------------------------------------

def _require_distributive(lat: FiniteLattice) -> None:
    if not lat.is_distributive:
        raise PreconditionError("lattice is not distributive", distributivity_witness(lat))


def _lattice_of(x) -> FiniteLattice:
    return x.lattice if isinstance(x, FiniteAlgebra) else x


def filter_generators(lat: FiniteLattice) -> list:
    """Indices ``a`` whose principal filter is a proper prime filter.

    Every filter of a finite lattice is principal, so primeness is decided
    directly on the principal filters; the result is then cross-checked
    against the join-irreducible elements.
    """
    cached = lat.__dict__.get("_prime_generators")
    if cached is not None:
        return cached
    _require_distributive(lat)
    n = len(lat)
    j = lat.join
    gens = []
    for a in range(n):
        if a == lat.bottom:
            continue
        inside = lat.leq[a]
        escapes = inside[j] & ~inside[:, None] & ~inside[None, :]
        if not escapes.any():
            gens.append(a)
    if gens != [int(x) for x in lat.join_irreducibles]:
        raise InternalConsistencyError("prime filters do not correspond to join-irreducible elements")
    lat.__dict__["_prime_generators"] = gens
    return gens


def principal_filter(lat: FiniteLattice, a: int) -> frozenset:
    return frozenset(lat.elements[i] for i in np.flatnonzero(lat.leq[a]))


def prime_filters(l) -> list:
    """All prime filters of a finite distributive lattice, as element sets."""
    lat = _lattice_of(l)
    return [principal_filter(lat, a) for a in filter_generators(lat)]


def ultrafilter_generators(lat: FiniteLattice) -> list:
    if not lat.is_boolean:
        bad = lat.elements[int(np.flatnonzero(lat.complement < 0)[0])]
        raise PreconditionError(f"lattice is not Boolean: {label(bad)} has no complement", (bad,))
    n = len(lat)
    strict = lat.leq & ~np.eye(n, dtype=bool)
    proper = np.arange(n) != lat.bottom
    # maximal proper filters are generated by the atoms
    has_lower = (strict & proper[:, None]).any(axis=0)
    return [int(a) for a in np.flatnonzero(proper & ~has_lower)]


def ultrafilters(b) -> list:
    """All ultrafilters of a finite Boolean algebra, as element sets."""
    lat = _lattice_of(b)
    return [principal_filter(lat, a) for a in ultrafilter_generators(lat)]


def is_filter(lat: FiniteLattice, subset: Iterable) -> bool:
    inside = np.zeros(len(lat), dtype=bool)
    for x in subset:
        inside[lat.index[x]] = True
    if not inside.any():
        return False
    upward = not (inside[:, None] & lat.leq & ~inside[None, :]).any()
    meet_closed = not (inside[:, None] & inside[None, :] & ~inside[lat.meet]).any()
    return upward and meet_closed


def is_prime_filter(lat: FiniteLattice, subset: Iterable) -> bool:
    subset = frozenset(subset)
    if not is_filter(lat, subset) or lat.elements[lat.bottom] in subset:
        return False
    inside = np.array([x in subset for x in lat.elements])
    return not (inside[lat.join] & ~inside[:, None] & ~inside[None, :]).any()


# -- operators ---------------------------------------------------------------

def _complement_or_raise(lat: FiniteLattice) -> np.ndarray:
    c = lat.complement
    if (c < 0).any():
        bad = lat.elements[int(np.flatnonzero(c < 0)[0])]
        raise PreconditionError(f"missing complement for {label(bad)}", (bad,))
    return c


def _as_table(b: FiniteAlgebra, f) -> np.ndarray:
    if isinstance(f, str):
        return b.unary[f]
    if isinstance(f, Mapping):
        return np.array([b.index[f[x]] for x in b.elements], dtype=np.int64)
    return np.asarray(f, dtype=np.int64)


def dual_operator(b, f) -> np.ndarray:
    """Pointwise table of ``-f(-a)``."""
    lat = _lattice_of(b)
    c = _complement_or_raise(lat)
    f = _as_table(b, f) if isinstance(b, FiniteAlgebra) else np.asarray(f, dtype=np.int64)
    return c[f[c]]


def star_operator(b, g) -> np.ndarray:
    """Pointwise table of ``-g(a)``; turns sufficiency operators into possibility operators."""
    lat = _lattice_of(b)
    c = _complement_or_raise(lat)
    g = _as_table(b, g) if isinstance(b, FiniteAlgebra) else np.asarray(g, dtype=np.int64)
    return c[g]


def star_transfer(b, g, policy: EvaluationPolicy = DEFAULT_POLICY) -> tuple:
    """Report the sufficiency laws of ``g`` and the possibility laws of ``-g``."""
    lat = _lattice_of(b)
    g = _as_table(b, g) if isinstance(b, FiniteAlgebra) else np.asarray(g, dtype=np.int64)
    suff = check_kind(FiniteAlgebra(lat, Kind.SUFFICIENCY, {"g": g}), policy=policy)
    poss = check_kind(FiniteAlgebra(lat, Kind.POSSIBILITY, {"f": star_operator(lat, g)}), policy=policy)
    return suff, poss


def pseudocomplements(lat: FiniteLattice) -> tuple:
    """``(star, plus)`` tables determined by the pseudocomplement adjunctions.

    ``star[a]`` is the largest ``b`` with ``b . a = 0`` and ``plus[a]`` the
    least ``b`` with ``b + a = 1``.
    """
    n = len(lat)
    disjoint = lat.meet == lat.bottom  # disjoint[a, b]
    codisjoint = lat.join == lat.top
    star = np.empty(n, dtype=np.int64)
    plus = np.empty(n, dtype=np.int64)
    for a in range(n):
        cand = np.flatnonzero(disjoint[a])
        top = cand[lat.leq[np.ix_(cand, cand)].all(axis=0)]
        if not len(top):
            raise PreconditionError(f"{lat.labels[a]} has no pseudocomplement", (lat.elements[a],))
        star[a] = top[0]
        cand = np.flatnonzero(codisjoint[a])
        low = cand[lat.leq[np.ix_(cand, cand)].all(axis=1)]
        if not len(low):
            raise PreconditionError(f"{lat.labels[a]} has no dual pseudocomplement", (lat.elements[a],))
        plus[a] = low[0]
    return star, plus


# -- law catalogue ----------------------------------------------------------

def _lattice_laws(lat: FiniteLattice) -> list:
    j, m, le, bot, top = lat.join, lat.meet, lat.leq, lat.bottom, lat.top
    return [
        Law("lattice.order", ("a", "b"), lambda a, b: le[a, b] == (m[a, b] == a)),
        Law("lattice.absorption", ("a", "b"), lambda a, b: (j[a, m[a, b]] == a) & (m[a, j[a, b]] == a)),
        Law("lattice.bounded", ("a",), lambda a: le[bot, a] & le[a, top]),
        Law("lattice.distributive", ("a", "b", "c"), lambda a, b, c: m[a, j[b, c]] == j[m[a, b], m[a, c]]),
    ]


def kind_laws(alg: FiniteAlgebra, kind) -> list:
    """The list of laws defining ``kind``, evaluated on ``alg``'s tables."""
    kind = as_kind(kind)
    lat = alg.lattice
    j, m, le, bot, top = lat.join, lat.meet, lat.leq, lat.bottom, lat.top
    laws = _lattice_laws(lat)
    if kind in BOOLEAN_KINDS:
        c = lat.complement
        laws.append(Law("boolean.complement", ("a",), lambda a: c[a] >= 0))
        if (c < 0).any():
            return laws

    if kind in (Kind.POSSIBILITY, Kind.MONADIC):
        f = alg.unary["f"]
        laws += [
            Law("possibility.K1", (), lambda: f[bot] == bot),
            Law("possibility.K2", ("a", "b"), lambda a, b: f[j[a, b]] == j[f[a], f[b]]),
        ]
    if kind is Kind.MONADIC:
        fd = c[f[c]]
        laws += [
            Law("monadic.T", ("a",), lambda a: le[a, f[a]]),
            Law("monadic.4", ("a",), lambda a: le[f[f[a]], f[a]]),
            Law("monadic.B", ("a",), lambda a: f[a] == fd[f[a]]),
            Law("monadic.euclidean", ("a",), lambda a: le[a, fd[f[a]]], derived=True),
            Law("monadic.adjoint", ("a", "b"), lambda a, b: le[f[a], b] == le[a, fd[b]], derived=True),
            Law("monadic.conjugate", ("a", "b"), lambda a, b: (m[a, f[b]] == bot) == (m[f[a], b] == bot), derived=True),
            Law("monadic.cylindric", ("a", "b"), lambda a, b: f[m[a, f[b]]] == m[f[a], f[b]], derived=True),
        ]
    if kind in (Kind.SUFFICIENCY, Kind.DIVERSITY):
        g = alg.unary["g"]
        laws += [
            Law("sufficiency.co-normal", (), lambda: g[bot] == top),
            Law("sufficiency.co-additive", ("a", "b"), lambda a, b: g[j[a, b]] == m[g[a], g[b]]),
        ]
    if kind is Kind.DIVERSITY:
        laws += [
            Law("diversity.Div1", ("a",), lambda a: le[g[a], c[a]]),
            Law("diversity.Div2", ("a",), lambda a: le[a, g[g[a]]]),
            Law("diversity.Div3", ("a",), lambda a: le[g[a], g[c[g[a]]]]),
        ]
    if kind in (Kind.DSA, Kind.RDSA, Kind.R2A):
        s, p = alg.unary["star"], alg.unary["plus"]
        laws += [
            Law("dsa.pseudocomplement", ("a", "b"), lambda a, b: le[b, s[a]] == (m[b, a] == bot)),
            Law("dsa.dual-pseudocomplement", ("a", "b"), lambda a, b: le[p[a], b] == (j[b, a] == top)),
            Law("dsa.stone", ("a",), lambda a: j[s[a], s[s[a]]] == top),
            Law("dsa.dual-stone", ("a",), lambda a: m[p[a], p[p[a]]] == bot),
        ]
    if kind in (Kind.RDSA, Kind.R2A):
        laws.append(Law("rdsa.M", ("a", "b"), lambda a, b: ((s[a] != s[b]) | (p[a] != p[b])) | (a == b)))
    if kind is Kind.DEMORGAN:
        neg = alg.unary["neg"]
        laws += [
            Law("demorgan.DeM1", ("a",), lambda a: neg[neg[a]] == a),
            Law("demorgan.DeM2", ("a", "b"), lambda a, b: neg[j[a, b]] == m[neg[a], neg[b]]),
        ]
    if kind is Kind.R2A:
        t, v, e = alg.binary["compose"], alg.unary["converse"], alg.constants["one_prime"]
        laws += [
            Law("r2a.R2A1.associative", ("a", "b", "c"), lambda a, b, c: t[t[a, b], c] == t[a, t[b, c]]),
            Law("r2a.R2A1.identity", ("a",), lambda a: (t[a, e] == a) & (t[e, a] == a)),
            Law("r2a.R2A2.left", ("a", "b", "c"), lambda a, b, c: t[a, j[b, c]] == j[t[a, b], t[a, c]]),
            Law("r2a.R2A2.right", ("a", "b", "c"), lambda a, b, c: t[j[b, c], a] == j[t[b, a], t[c, a]]),
            Law("r2a.R2A3", ("a",), lambda a: v[v[a]] == a),
            Law("r2a.R2A4", ("a", "b"), lambda a, b: v[j[a, b]] == j[v[a], v[b]]),
            Law("r2a.R2A5", ("a", "b"), lambda a, b: v[t[a, b]] == t[v[b], v[a]]),
            Law("r2a.R2A6", ("a", "b"), lambda a, b: le[t[v[a], s[t[a, b]]], s[b]]),
            Law("r2a.R2A7", ("a", "b"), lambda a, b: s[s[t[s[a], s[b]]]] == t[s[a], s[b]]),
            Law("r2a.R2A8", (), lambda: s[s[e]] == e),
        ]
    return laws


def check_kind(a: FiniteAlgebra, kind=None, policy: EvaluationPolicy = DEFAULT_POLICY, name: str | None = None) -> CheckReport:
    """Evaluate every law of ``kind`` on ``a`` over all variable assignments."""
    kind = a.kind if kind is None else as_kind(kind)
    want_u, want_b, want_c = SIGNATURES[kind]
    if not (set(want_u) <= set(a.unary) and set(want_b) <= set(a.binary) and set(want_c) <= set(a.constants)):
        raise DomainError(f"algebra of kind {a.kind} lacks the operations of kind {kind}")
    return run_laws(name or a.name or "algebra", str(kind), kind_laws(a, kind), a.labels, policy)


def check_embedding(h: Mapping, a: FiniteAlgebra, b: FiniteAlgebra, kind=None,
                    policy: EvaluationPolicy = DEFAULT_POLICY, name: str = "embedding") -> CheckReport:
    """Check that ``h`` is an injective homomorphism for ``kind``'s signature.

    The report's info carries ``surjective=yes|no``.
    """
    kind = a.kind if kind is None else as_kind(kind)
    if b.kind is not kind and a.kind is not kind:
        raise DomainError("kinds of source and target differ")
    missing = [x for x in a.elements if x not in h]
    if missing:
        raise DomainError(f"map is not total: no image for {label(missing[0])}")
    try:
        k = np.array([b.index[h[x]] for x in a.elements], dtype=np.int64)
    except KeyError as exc:
        raise DomainError(f"map leaves the target carrier at {label(exc.args[0])}") from None
    la, lb = a.lattice, b.lattice
    laws = [
        Law("embedding.injective", ("a", "b"), lambda x, y: (x == y) | (k[x] != k[y])),
        Law("embedding.join", ("a", "b"), lambda x, y: k[la.join[x, y]] == lb.join[k[x], k[y]]),
        Law("embedding.meet", ("a", "b"), lambda x, y: k[la.meet[x, y]] == lb.meet[k[x], k[y]]),
        Law("embedding.bottom", (), lambda: k[la.bottom] == lb.bottom),
        Law("embedding.top", (), lambda: k[la.top] == lb.top),
    ]
    want_u, want_b, want_c = SIGNATURES[kind]
    for op in want_u:
        fa, fb = a.unary[op], b.unary[op]
        laws.append(Law(f"embedding.op.{op}", ("a",), lambda x, fa=fa, fb=fb: k[fa[x]] == fb[k[x]]))
    for op in want_b:
        ta, tb = a.binary[op], b.binary[op]
        laws.append(Law(f"embedding.binop.{op}", ("a", "b"), lambda x, y, ta=ta, tb=tb: k[ta[x, y]] == tb[k[x], k[y]]))
    for cst in want_c:
        ca, cb = a.constants[cst], b.constants[cst]
        laws.append(Law(f"embedding.const.{cst}", (), lambda ca=ca, cb=cb: k[ca] == cb))
    surjective = len(set(k.tolist())) == len(b)
    return run_laws(name, f"{kind}-embedding", laws, a.labels, policy,
                    info=(("surjective", "yes" if surjective else "no"),))


__all__ = [
    "AlgebraKind",
    "Kind",
    "SIGNATURES",
    "BOOLEAN_KINDS",
    "FiniteLattice",
    "FiniteAlgebra",
    "derive_join_meet",
    "powerset_lattice",
    "powerset_algebra",
    "up_set_lattice",
    "prime_filters",
    "ultrafilters",
    "filter_generators",
    "ultrafilter_generators",
    "is_filter",
    "is_prime_filter",
    "dual_operator",
    "star_operator",
    "star_transfer",
    "pseudocomplements",
    "kind_laws",
    "check_kind",
    "check_embedding",
    "distributivity_witness",
    "combine",
]
