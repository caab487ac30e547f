"""Rough relation algebras and rough relation frames.

A rough relation frame is ``(X, <=, R, f, I)`` where ``<=`` splits into
chains of at most two points, ``R`` is ternary, ``f`` is an involution and
``I`` a non-empty set.  ``R(x, y, z)`` is read as "z lies above a composite
of x and y"; the identity axioms fix this slot convention.

The canonical frame of an algebra uses prime filters with

* ``R(F, G, H)`` iff ``{a;b : a in F, b in G} <= H``,
* ``f(F) = {converse(a) : a in F}``,
* ``I = {F : 1' in F}``,

and the result is always re-checked against the frame axioms.
"""

from __future__ import annotations

import numpy as np

from ._sets import label, lookup
from .algebra import FiniteAlgebra, Kind, check_kind, filter_generators, principal_filter, up_set_lattice
from .approx import ApproximationSpace, build_rough_set_algebra, lift_square
from .errors import DomainError, InternalConsistencyError, PreconditionError
from .order import Frame, Poset
from .report import DEFAULT_POLICY, CheckReport, EvaluationPolicy, Law, run_laws


def check_r2a(a: FiniteAlgebra, policy: EvaluationPolicy = DEFAULT_POLICY, name: str | None = None) -> CheckReport:
    return check_kind(a, Kind.R2A, policy, name)


def chain_ends(le: np.ndarray) -> tuple:
    """``(low, high)``: for each point the bottom and top of its chain.

    Raises when some point has two strict upper or two strict lower bounds.
    """
    n = len(le)
    lt = le & ~np.eye(n, dtype=bool)
    low = np.arange(n)
    high = np.arange(n)
    for x in range(n):
        above = np.flatnonzero(lt[x])
        below = np.flatnonzero(lt[:, x])
        if len(above) > 1 or len(below) > 1 or (len(above) and len(below)):
            bad = above if len(above) > 1 else below
            if len(above) and len(below):
                bad = (below[0], above[0])
            raise PreconditionError("not chains of length <= 2", (x, *[int(b) for b in bad]))
        if len(above):
            high[x] = above[0]
        if len(below):
            low[x] = below[0]
    return low, high


def _require_parts(fr: Frame) -> None:
    if fr.order is None or fr.ternary is None or "f" not in fr.functions or "I" not in fr.subsets:
        raise DomainError("a rough relation frame needs an order, a ternary relation, f and I")


def check_r2fa(fr: Frame, policy: EvaluationPolicy = DEFAULT_POLICY, name: str = "frame") -> CheckReport:
    """Check the twelve rough relation frame axioms."""
    _require_parts(fr)
    le = fr.order_matrix
    try:
        low, high = chain_ends(le)
    except PreconditionError as exc:
        pts = fr.points
        raise PreconditionError(str(exc), tuple(pts[i] for i in exc.witness)) from None
    ideal = fr.subset_vector("I")
    if not ideal.any():
        raise PreconditionError("I must be non-empty", ())
    r = fr.ternary_tensor
    f = fr.function_array("f")
    ri = r.astype(np.int64)
    # comp3[x, y, v, w]: some u has R(x,u,w) and R(y,v,u)
    comp3 = np.einsum("xuw,yvu->xyvw", ri, ri) > 0
    # comp4[y, w, v, x]: some u has R(u,y,w) and R(v,x,u)
    comp4 = np.einsum("uyw,vxu->ywvx", ri, ri) > 0
    # via_i[x, y]: some z in I has R(x,z,y); from_i[z, y]: some x in I has R(x,z,y)
    via_i = (r & ideal[None, :, None]).any(axis=1)
    from_i = (r & ideal[:, None, None]).any(axis=0)
    laws = [
        Law("r2fa.R2FA0", ("x", "y", "z", "w"), lambda x, y, z, w: ~r[x, y, z] | (
            (~le[w, x] | r[w, y, z]) & (~le[w, y] | r[x, w, z]) & (~le[z, w] | r[x, y, w]))),
        Law("r2fa.R2FA1", ("x", "y"), lambda x, y: ~le[x, y] | le[f[x], f[y]]),
        Law("r2fa.R2FA2", ("x", "y"), lambda x, y: ~(le[x, y] | le[y, x]) | (ideal[x] == ideal[y])),
        Law("r2fa.R2FA3", ("x", "y", "z", "v", "w"),
            lambda x, y, z, v, w: ~(r[x, y, z] & r[z, v, w]) | comp3[x, y, v, w]),
        Law("r2fa.R2FA4", ("x", "y", "z", "v", "w"),
            lambda x, y, z, v, w: ~(r[x, y, z] & r[v, z, w]) | comp4[y, w, v, x]),
        Law("r2fa.R2FA5", ("x",), lambda x: f[f[x]] == x),
        Law("r2fa.R2FA6", ("x",), lambda x: (f[high[x]] == high[f[x]]) & (f[low[x]] == low[f[x]])),
        Law("r2fa.R2FA7", ("x", "y", "z"), lambda x, y, z: ~r[x, y, z] | r[f[x], z, high[y]]),
        Law("r2fa.R2FA8", ("x", "y", "z"), lambda x, y, z: ~r[x, y, z] | r[z, f[y], high[x]]),
        Law("r2fa.R2FA9", ("x", "y", "z"), lambda x, y, z: ~r[x, y, z] | r[low[x], low[y], low[z]]),
        Law("r2fa.R2FA10", ("x", "y"), lambda x, y: le[x, y] == via_i[x, y]),
        Law("r2fa.R2FA11", ("z", "y"), lambda z, y: le[z, y] == from_i[z, y]),
    ]
    return run_laws(name, "r2a-frame", laws, fr.labels, policy)


# -- full algebra of rough relations ----------------------------------------

def build_full_rough_relation_algebra(s: ApproximationSpace, name: str = "") -> FiniteAlgebra:
    """Rough relations over the lifted space with componentwise ``;`` and converse.

    Raises :class:`PreconditionError` when the componentwise composite of two
    rough relations is not itself a rough relation; this happens as soon as
    the partition mixes singleton and larger classes.
    """
    base = build_rough_set_algebra(lift_square(s), name=name)
    lat = base.lattice
    pts = s.universe
    n = len(pts)
    pairs = lift_square(s).universe
    bit = np.array([[pairs.index((x, y)) for y in pts] for x in pts], dtype=np.uint64)
    big = np.uint64(n * n)
    codes = lat.masks

    def matrices(shift):
        return ((codes[:, None, None] >> (bit[None] + shift)) & np.uint64(1)).astype(np.int64)

    def encode(lo, up):
        w = np.uint64(1) << bit
        lo_code = (lo.astype(np.uint64) * w).sum(axis=(-2, -1), dtype=np.uint64)
        up_code = (up.astype(np.uint64) * w).sum(axis=(-2, -1), dtype=np.uint64)
        return lo_code | (up_code << big)

    lower, upper = matrices(np.uint64(0)), matrices(big)
    comp = encode(np.einsum("aik,bkj->abij", lower, lower) > 0, np.einsum("aik,bkj->abij", upper, upper) > 0)
    compose = lookup(codes, comp)
    if (compose < 0).any():
        a, b = (int(v) for v in np.argwhere(compose < 0)[0])
        raise PreconditionError(
            "rough composition leaves the rough relations",
            (lat.elements[a], lat.elements[b]),
        )
    converse = lookup(codes, encode(lower.transpose(0, 2, 1) > 0, upper.transpose(0, 2, 1) > 0))
    if (converse < 0).any():
        raise InternalConsistencyError("rough converse leaves the rough relations")
    theta = np.array([[s.block_of(x) == s.block_of(y) for y in pts] for x in pts])
    one_prime = int(lookup(codes, encode(theta, theta)[None])[0])
    return FiniteAlgebra(
        lat,
        Kind.R2A,
        {"star": base.unary["star"], "plus": base.unary["plus"], "converse": converse},
        {"compose": compose},
        {"one_prime": one_prime},
        name=name,
    )


# -- complex algebra and canonical frame ---------------------------------------

def _point_masks(matrix: np.ndarray) -> np.ndarray:
    n = matrix.shape[-1]
    w = np.uint64(1) << np.arange(n, dtype=np.uint64)
    return (matrix.astype(np.uint64) * w).sum(axis=-1, dtype=np.uint64)


def cm_rra(fr: Frame, policy: EvaluationPolicy = DEFAULT_POLICY, check: bool = True, name: str = "") -> FiniteAlgebra:
    """Up-sets of the frame with ``Y;Z = {z : R(x,y,z) for some x in Y, y in Z}``,
    converse ``f[Y]`` and identity ``I``."""
    _require_parts(fr)
    if check:
        rep = check_r2fa(fr, policy)
        if not rep.passed:
            law, witness = rep.violations[0]
            raise PreconditionError(f"frame violates {law}", witness, rep)
    lat = up_set_lattice(fr.order)
    ys = lat.masks
    n = len(fr)
    le = fr.order_matrix
    one = np.uint64(1)
    full = np.uint64((1 << n) - 1)
    up, down = _point_masks(le), _point_masks(le.T)

    def has(arr, x):
        return ((arr >> np.uint64(x)) & one).astype(bool)

    star = np.zeros_like(ys)
    plus = np.zeros_like(ys)
    for y in range(n):
        star |= np.where((up[y] & ys) == 0, one << np.uint64(y), np.uint64(0))
        plus |= np.where((down[y] & (full ^ ys)) != 0, one << np.uint64(y), np.uint64(0))

    targets = _point_masks(fr.ternary_tensor)  # targets[x, y] = {z : R(x,y,z)}
    # reach[x, Z] = union of targets[x, y] over y in Z
    reach = np.zeros((n, len(ys)), dtype=np.uint64)
    for y in range(n):
        reach |= np.where(has(ys, y)[None, :], targets[:, y][:, None], np.uint64(0))
    comp = np.zeros((len(ys), len(ys)), dtype=np.uint64)
    for x in range(n):
        comp |= np.where(has(ys, x)[:, None], reach[x][None, :], np.uint64(0))

    f = fr.function_array("f")
    conv = np.zeros_like(ys)
    for x in range(n):
        conv |= np.where(has(ys, x), one << np.uint64(int(f[x])), np.uint64(0))
    ideal = np.uint64(int(_point_masks(fr.subset_vector("I"))))

    tables = {}
    for key, codes in (("star", star), ("plus", plus), ("converse", conv), ("compose", comp), ("one_prime", ideal)):
        idx = lookup(ys, np.asarray(codes))
        if (np.asarray(idx) < 0).any():
            raise InternalConsistencyError(f"{key} leaves the up-sets of the frame")
        tables[key] = idx
    return FiniteAlgebra(
        lat,
        Kind.R2A,
        {"star": tables["star"], "plus": tables["plus"], "converse": tables["converse"]},
        {"compose": tables["compose"]},
        {"one_prime": int(tables["one_prime"])},
        name=name,
    )


def cs_rra(a: FiniteAlgebra, policy: EvaluationPolicy = DEFAULT_POLICY, check: bool = True) -> Frame:
    """Canonical rough relation frame of an algebra.

    Points are prime filters. ``R(F, G, H)`` holds when ``F ; G`` lands inside ``H``,
    ``f`` maps a filter to its converse image and ``I`` collects the filters holding
    the identity. This is the usual prime-filter recipe for the signature rather
    than a derived result, so the frame is re-checked before it is returned.
    """
    if check:
        rep = check_r2a(a, policy)
        if not rep.passed:
            law, witness = rep.violations[0]
            raise PreconditionError(f"algebra fails {law}", witness, rep)
    lat = a.lattice
    gens = filter_generators(lat)
    inside = np.array([lat.leq[g] for g in gens])  # inside[i, e]: element e in filter i
    points = [principal_filter(lat, g) for g in gens]
    k = len(points)
    poset = Poset(points, [(p, q) for p in points for q in points if p <= q])

    t = a.binary["compose"]
    triples = []
    for i in range(k):
        fi = np.flatnonzero(inside[i])
        for j in range(k):
            products = np.unique(t[np.ix_(fi, np.flatnonzero(inside[j]))])
            for h in np.flatnonzero(inside[:, products].all(axis=1)):
                triples.append((points[i], points[j], points[int(h)]))

    conv = a.unary["converse"]
    rows = {tuple(row): p for row, p in zip(inside.tolist(), points)}
    f = {}
    for i, p in enumerate(points):
        image = np.zeros(len(lat), dtype=bool)
        image[conv[np.flatnonzero(inside[i])]] = True
        q = rows.get(tuple(image.tolist()))
        if q is None:
            raise InternalConsistencyError(f"converse image of {label(p)} is not a prime filter")
        f[p] = q
    ideal = [p for i, p in enumerate(points) if inside[i, a.constants["one_prime"]]]
    fr = Frame.rough_relation(poset, triples, f, ideal)
    rep = check_r2fa(fr, policy, name="canonical frame")
    if not rep.passed:
        raise InternalConsistencyError(
            f"canonical frame of a rough relation algebra violates {rep.violations[0][0]}", rep
        )
    return fr


__all__ = [
    "check_r2a",
    "check_r2fa",
    "chain_ends",
    "build_full_rough_relation_algebra",
    "cm_rra",
    "cs_rra",
]
