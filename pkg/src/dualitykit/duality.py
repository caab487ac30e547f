"""Complex algebras of frames, canonical frames of algebras, and the two
representation maps between them.

``cm`` turns a frame into an algebra (powerset or up-set carrier), ``cs``
turns an algebra into a frame whose points are ultrafilters or prime filters.
``stone_map`` sends an element to the set of filters containing it;
``frame_map`` sends a point to the set of complex-algebra elements containing
it.  The roundtrip functions check that both maps are embeddings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from ._sets import check_width, label, lookup
from .algebra import (
    BOOLEAN_KINDS,
    FiniteAlgebra,
    Kind,
    as_kind,
    check_embedding,
    check_kind,
    filter_generators,
    powerset_lattice,
    principal_filter,
    ultrafilter_generators,
    up_set_lattice,
)
from .errors import DomainError, InternalConsistencyError, PreconditionError
from .order import Frame, FrameEmbeddingCandidate, Poset, check_frame_embedding
from .report import DEFAULT_POLICY, CheckReport, EvaluationPolicy, Law, run_laws


@dataclass(frozen=True)
class AlgebraMap:
    map: Mapping
    source: FiniteAlgebra
    target: FiniteAlgebra
    frame: Frame | None = None


@dataclass(frozen=True)
class DualityRoundtripReport:
    name: str
    kind: str
    direction: str
    embedding: CheckReport
    iso: bool
    sizes: tuple = ()
    alarms: tuple = ()

    @property
    def verdict(self) -> str:
        return self.embedding.verdict

    @property
    def passed(self) -> bool:
        return self.embedding.passed and not self.alarms

    @property
    def iso_flag(self) -> bool:
        return self.iso


# -- frame conditions ---------------------------------------------------------

def _require(frame: Frame, kind: Kind) -> None:
    if kind in BOOLEAN_KINDS and frame.rel is None:
        raise DomainError(f"kind {kind} needs a frame with a binary relation")
    if kind in (Kind.BDL, Kind.RDSA, Kind.DEMORGAN, Kind.R2A) and frame.order is None:
        raise DomainError(f"kind {kind} needs an ordered frame")
    if kind is Kind.DEMORGAN and "N" not in frame.functions:
        raise DomainError("a De Morgan frame needs a function N")
    if kind is Kind.DSA:
        raise DomainError("there is no frame class for plain double Stone algebras; use rdsa")


def chain_shape_law(le: np.ndarray) -> Law:
    """Every point has at most one point strictly above and one strictly below
    it, i.e. the order is a disjoint union of chains with at most two points."""
    lt = le & ~np.eye(len(le), dtype=bool)
    return Law(
        "rdsa-frame.RDS",
        ("x", "y", "z"),
        lambda x, y, z: (~(lt[x, y] & lt[x, z]) | (y == z)) & (~(lt[y, x] & lt[z, x]) | (y == z)),
    )


def frame_report(frame: Frame, kind, policy: EvaluationPolicy = DEFAULT_POLICY, name: str = "frame") -> CheckReport:
    """Check the defining conditions of ``kind``'s frame class."""
    kind = as_kind(kind)
    if kind is Kind.R2A:
        from .rra import check_r2fa

        return check_r2fa(frame, name=name, policy=policy)
    _require(frame, kind)
    laws = []
    if kind is Kind.MONADIC:
        r = frame.rel_matrix
        laws = [
            Law("monadic-frame.reflexive", ("x",), lambda x: r[x, x]),
            Law("monadic-frame.symmetric", ("x", "y"), lambda x, y: r[x, y] == r[y, x]),
            Law("monadic-frame.transitive", ("x", "y", "z"), lambda x, y, z: ~(r[x, y] & r[y, z]) | r[x, z]),
        ]
    elif kind is Kind.DIVERSITY:
        r = frame.rel_matrix
        laws = [
            Law("diversity-frame.FDiv1", ("x",), lambda x: ~r[x, x]),
            Law("diversity-frame.FDiv2", ("x", "y"), lambda x, y: r[x, y] == r[y, x]),
            Law("diversity-frame.FDiv3", ("x", "y", "z"), lambda x, y, z: ~r[x, y] | r[x, z] | r[z, y]),
        ]
    elif kind is Kind.RDSA:
        laws = [chain_shape_law(frame.order_matrix)]
    elif kind is Kind.DEMORGAN:
        le, nn = frame.order_matrix, frame.function_array("N")
        laws = [
            Law("demorgan-frame.FDeM1", ("x",), lambda x: nn[nn[x]] == x),
            Law("demorgan-frame.FDeM2", ("x", "y"), lambda x, y: ~le[x, y] | le[nn[y], nn[x]]),
        ]
    return run_laws(name, f"{kind}-frame", laws, frame.labels, policy)


def _require_frame(frame: Frame, kind: Kind, policy: EvaluationPolicy) -> None:
    rep = frame_report(frame, kind, policy)
    if not rep.passed:
        law, witness = rep.violations[0]
        raise PreconditionError(f"frame violates {law}", witness, rep)


# -- complex algebras -----------------------------------------------------------

def _point_masks(frame: Frame, matrix: np.ndarray) -> np.ndarray:
    weights = np.uint64(1) << np.arange(len(frame), dtype=np.uint64)
    return (matrix.astype(np.uint64) * weights[None, :]).sum(axis=1).astype(np.uint64)


def _bits(arr: np.ndarray, i: int) -> np.ndarray:
    return ((arr >> np.uint64(i)) & np.uint64(1)).astype(bool)


def _pointwise(arr: np.ndarray, n: int, member) -> np.ndarray:
    """Mask whose bit ``x`` is ``member(x)`` evaluated over the array of masks."""
    out = np.zeros_like(arr)
    for x in range(n):
        out |= np.where(member(x), np.uint64(1) << np.uint64(x), np.uint64(0))
    return out


def _table(lat, codes: np.ndarray, what: str) -> np.ndarray:
    idx = lookup(lat.masks, codes)
    if (idx < 0).any():
        raise InternalConsistencyError(f"{what} leaves the carrier of the complex algebra")
    return idx


def cm(f: Frame, kind, policy: EvaluationPolicy = DEFAULT_POLICY, check: bool = True, name: str = "") -> FiniteAlgebra:
    """Complex algebra of a frame.

    Boolean kinds use the powerset of the points with the possibility
    operator (possibility, monadic) or the sufficiency operator
    ``{x : Y <= R(x)}`` (sufficiency, diversity).  Order kinds use the lattice
    of up-sets, with ``Y* = -down(max & Y)`` and ``Y+ = -up(min & Y)`` for
    rdsa and ``neg(Y) = -N[Y]`` for demorgan.
    """
    kind = as_kind(kind)
    if kind is Kind.R2A:
        from .rra import cm_rra

        return cm_rra(f, policy=policy, check=check, name=name)
    _require(f, kind)
    if check:
        _require_frame(f, kind, policy)
    n = len(f)
    check_width(n)
    full = np.uint64((1 << n) - 1)

    if kind in BOOLEAN_KINDS:
        lat = powerset_lattice(f.points)
        ys = lat.masks
        img = _point_masks(f, f.rel_matrix)  # img[x] = R(x)
        if kind in (Kind.POSSIBILITY, Kind.MONADIC):
            op = _pointwise(ys, n, lambda x: (img[x] & ys) != 0)
            return FiniteAlgebra(lat, kind, {"f": _table(lat, op, "possibility operator")}, name=name)
        op = _pointwise(ys, n, lambda x: (ys & ~img[x]) == 0)
        return FiniteAlgebra(lat, kind, {"g": _table(lat, op, "sufficiency operator")}, name=name)

    lat = up_set_lattice(f.order)
    ys = lat.masks
    le = f.order_matrix
    if kind is Kind.BDL:
        return FiniteAlgebra(lat, kind, name=name)
    if kind is Kind.RDSA:
        down = _point_masks(f, le.T)
        up = _point_masks(f, le)
        mx = np.uint64(sum(1 << f.index[x] for x in f.order.maximal))
        mn = np.uint64(sum(1 << f.index[x] for x in f.order.minimal))
        below = np.zeros_like(ys)
        above = np.zeros_like(ys)
        for x in range(n):
            below |= np.where(_bits(ys & mx, x), down[x], np.uint64(0))
            above |= np.where(_bits(ys & mn, x), up[x], np.uint64(0))
        star = _table(lat, full ^ below, "pseudocomplement")
        plus = _table(lat, full ^ above, "dual pseudocomplement")
        return FiniteAlgebra(lat, kind, {"star": star, "plus": plus}, name=name)
    nn = f.function_array("N")
    image = np.zeros_like(ys)
    for x in range(n):
        image |= np.where(_bits(ys, x), np.uint64(1) << np.uint64(int(nn[x])), np.uint64(0))
    return FiniteAlgebra(lat, kind, {"neg": _table(lat, full ^ image, "De Morgan negation")}, name=name)


# -- canonical frames -------------------------------------------------------------

def _require_kind(a: FiniteAlgebra, kind: Kind, policy: EvaluationPolicy) -> None:
    rep = check_kind(a, kind, policy)
    if not rep.passed:
        law, witness = rep.violations[0]
        raise PreconditionError(f"algebra fails {law}", witness, rep)


def _verify_frame(frame: Frame, kind: Kind, policy: EvaluationPolicy) -> Frame:
    rep = frame_report(frame, kind, policy, name="canonical frame")
    if not rep.passed:
        raise InternalConsistencyError(
            f"canonical frame of a {kind} algebra violates {rep.violations[0][0]}", rep
        )
    return frame


def cs(a: FiniteAlgebra, kind=None, policy: EvaluationPolicy = DEFAULT_POLICY, check: bool = True) -> Frame:
    """Canonical frame of an algebra.

    Points are ultrafilters (Boolean kinds) or prime filters (order kinds),
    each represented as the frozenset of its elements.
    """
    kind = a.kind if kind is None else as_kind(kind)
    if kind is Kind.R2A:
        from .rra import cs_rra

        return cs_rra(a, policy=policy, check=check)
    if kind is Kind.DSA:
        raise DomainError("there is no frame class for plain double Stone algebras; use rdsa")
    if check:
        _require_kind(a, kind, policy)
    lat = a.lattice

    if kind in BOOLEAN_KINDS:
        gens = ultrafilter_generators(lat)
        inside = [lat.leq[g] for g in gens]
        members = [np.flatnonzero(v) for v in inside]
        points = [principal_filter(lat, g) for g in gens]
        pairs = []
        if kind in (Kind.POSSIBILITY, Kind.MONADIC):
            op = a.unary["f"]
            for i, fi in enumerate(inside):
                for j, mj in enumerate(members):
                    if fi[op[mj]].all():  # f[G] <= F
                        pairs.append((points[i], points[j]))
        else:
            op = a.unary["g"]
            for i, fi in enumerate(inside):
                for j, mj in enumerate(members):
                    if fi[op[mj]].any():  # g[G] meets F
                        pairs.append((points[i], points[j]))
        return _verify_frame(Frame.plain(points, pairs), kind, policy)

    gens = filter_generators(lat)
    points = [principal_filter(lat, g) for g in gens]
    order = [(p, q) for p in points for q in points if p <= q]
    poset = Poset(points, order)
    if kind in (Kind.BDL, Kind.RDSA):
        return _verify_frame(Frame.ordered(poset), kind, policy)

    neg = a.unary["neg"]
    by_set = {p: p for p in points}
    negation = {}
    for g, p in zip(gens, points):
        image = set(neg[np.flatnonzero(lat.leq[g])].tolist())
        target = frozenset(lat.elements[i] for i in range(len(lat)) if i not in image)
        if target not in by_set:
            raise InternalConsistencyError(f"N maps the prime filter {label(p)} to a non-prime set")
        negation[p] = target
    return _verify_frame(Frame.de_morgan(poset, negation), kind, policy)


# -- representation maps --------------------------------------------------------------

def stone_map(a: FiniteAlgebra, kind=None, policy: EvaluationPolicy = DEFAULT_POLICY, check: bool = True) -> AlgebraMap:
    """``a -> {F : a in F}`` into the complex algebra of the canonical frame."""
    kind = a.kind if kind is None else as_kind(kind)
    frame = cs(a, kind, policy, check)
    target = cm(frame, kind, policy, check=False)
    h = {x: frozenset(F for F in frame.points if x in F) for x in a.elements}
    return AlgebraMap(h, a, target, frame)


def frame_map(f: Frame, kind, policy: EvaluationPolicy = DEFAULT_POLICY, check: bool = True) -> FrameEmbeddingCandidate:
    """``x -> {A : x in A}`` into the canonical frame of the complex algebra."""
    kind = as_kind(kind)
    alg = cm(f, kind, policy, check)
    target = cs(alg, kind, policy, check=False)
    points = set(target.points)
    k = {}
    for x in f.points:
        image = frozenset(A for A in alg.elements if x in A)
        if image not in points:
            raise InternalConsistencyError(f"image of {label(x)} is not a point of the canonical frame")
        k[x] = image
    return FrameEmbeddingCandidate(k, f, target)


def roundtrip_algebra(a: FiniteAlgebra, kind=None, policy: EvaluationPolicy = DEFAULT_POLICY,
                      name: str | None = None) -> DualityRoundtripReport:
    kind = a.kind if kind is None else as_kind(kind)
    _require_kind(a, kind, policy)
    m = stone_map(a, kind, policy, check=False)
    rep = check_embedding(m.map, a, m.target, kind, policy, name=name or a.name or "algebra")
    iso = rep.passed and rep.get_info("surjective") == "yes"
    sizes = (("source", len(a)), ("canonical", len(m.frame)), ("target", len(m.target)))
    return DualityRoundtripReport(name or a.name or "algebra", str(kind), "algebra", rep, iso, sizes, rep.alarms)


def roundtrip_frame(f: Frame, kind, policy: EvaluationPolicy = DEFAULT_POLICY,
                    name: str = "frame") -> DualityRoundtripReport:
    kind = as_kind(kind)
    _require_frame(f, kind, policy)
    c = frame_map(f, kind, policy, check=False)
    rep = check_frame_embedding(c, name=name, policy=policy)
    iso = rep.passed and len(set(c.map.values())) == len(c.target)
    sizes = (("source", len(f)), ("algebra", len(cm(f, kind, policy, check=False))), ("target", len(c.target)))
    return DualityRoundtripReport(name, str(kind), "frame", rep, iso, sizes, rep.alarms)


__all__ = [
    "AlgebraMap",
    "DualityRoundtripReport",
    "frame_report",
    "chain_shape_law",
    "cm",
    "cs",
    "stone_map",
    "frame_map",
    "roundtrip_algebra",
    "roundtrip_frame",
]
