"""Exhaustive generators for small structures and the batch theorem checker.

Generators yield structures on the points ``1..n`` in a fixed order:

* partitions in restricted-growth order (block of each point, first
  occurrence numbering);
* labeled posets by adding point ``k`` on top of every poset of ``1..k-1``
  with every compatible choice of down-set and up-set, in the lexicographic
  order of those choices;
* kind-specific frames by filtering or combining the two.

The ``*_oracle`` functions recount the same families by generating every
relation and filtering by the axioms; they share no code with the
generators.

``verify_theorem`` runs one construction-and-check pipeline over all
instances up to a size, tallying each claim separately.
"""

from __future__ import annotations

import os
import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Callable, Iterator

import numpy as np

from ._sets import label
from .algebra import (
    FiniteAlgebra,
    Kind,
    as_kind,
    check_kind,
    pseudocomplements,
    star_transfer,
    up_set_lattice,
)
from .approx import ApproximationSpace, BinaryRelation, necessity_op, sufficiency_op, build_rough_set_algebra
from .duality import cm, cs, frame_report, roundtrip_algebra, roundtrip_frame
from .errors import DomainError, DualityError, PreconditionError
from .order import Frame, Poset
from .rra import build_full_rough_relation_algebra, chain_ends, check_r2a, check_r2fa, cm_rra, cs_rra

CEILING_ENV = "DUALITYKIT_CEILING"
DEFAULT_CEILINGS = {
    "partitions": 6,
    "posets": 4,
    "relations": 4,
    "frames": 6,
    "boolean-atoms": 3,
    "r2a": 3,
}


class CeilingError(DomainError):
    """Requested size is above the enumeration ceiling."""


def ceiling(family: str = "partitions") -> int:
    """Size limit for ``family``; the environment variable overrides every family."""
    env = os.environ.get(CEILING_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise DomainError(f"{CEILING_ENV} must be an integer, got {env!r}") from None
    return DEFAULT_CEILINGS.get(family, DEFAULT_CEILINGS["partitions"])


def _guard(n: int, family: str) -> None:
    if n < 0:
        raise DomainError("size must be non-negative")
    limit = ceiling(family)
    if n > limit:
        raise CeilingError(f"size {n} exceeds the {family} ceiling {limit} (set {CEILING_ENV} to raise it)")


def points(n: int) -> list:
    return list(range(1, n + 1))


# -- generators ------------------------------------------------------------------

def restricted_growth(n: int) -> Iterator[tuple]:
    """Restricted growth strings of length ``n`` in lexicographic order."""
    if n == 0:
        yield ()
        return
    a = [0] * n

    def rec(i, top):
        if i == n:
            yield tuple(a)
            return
        for v in range(top + 2):
            a[i] = v
            yield from rec(i + 1, max(top, v))

    a[0] = 0
    yield from rec(1, 0)


def enumerate_partitions(n: int) -> Iterator[ApproximationSpace]:
    """Every partition of ``1..n`` exactly once, in restricted-growth order."""
    _guard(n, "partitions")
    pts = points(n)
    for rgs in restricted_growth(n):
        blocks: dict = {}
        for x, b in zip(pts, rgs):
            blocks.setdefault(b, []).append(x)
        yield ApproximationSpace(pts, blocks.values())


def _poset_matrices(n: int) -> Iterator[np.ndarray]:
    """Strict-order matrices on ``0..n-1``, one per labeled poset."""
    if n == 0:
        yield np.zeros((0, 0), dtype=bool)
        return
    for lt in _poset_matrices(n - 1):
        k = n - 1
        le = lt | np.eye(k, dtype=bool)
        for below in product((False, True), repeat=k):
            d = np.array(below, dtype=bool)
            # points below the new one must form a down-set
            if k and (le[:, d].any(axis=1) & ~d).any():
                continue
            for above in product((False, True), repeat=k):
                u = np.array(above, dtype=bool)
                if k and ((d & u).any() or (le[u].any(axis=0) & ~u).any()):
                    continue
                # transitivity through the new point: d < new < u forces d < u
                if k and not lt[np.ix_(d, u)].all():
                    continue
                m = np.zeros((n, n), dtype=bool)
                m[:k, :k] = lt
                m[:k, k] = d
                m[k, :k] = u
                yield m


def _canonical_form(lt: np.ndarray) -> bytes:
    n = len(lt)
    return min(lt[np.ix_(p, p)].tobytes() for p in map(list, permutations(range(n)))) if n else b""


def enumerate_posets(n: int, labeled: bool = True) -> Iterator[Poset]:
    """All partial orders on ``1..n``; unlabeled mode keeps one per isomorphism class."""
    _guard(n, "posets")
    pts = points(n)
    seen = set()
    for lt in _poset_matrices(n):
        if not labeled:
            key = _canonical_form(lt)
            if key in seen:
                continue
            seen.add(key)
        yield Poset.from_matrix(pts, lt | np.eye(n, dtype=bool))


def rdsa_frames(n: int) -> Iterator[Frame]:
    """Posets on ``1..n`` made of chains with at most two points.

    Built directly: pick a partition into blocks of size at most two, then
    orient each two-point block.
    """
    _guard(n, "frames")
    pts = points(n)
    for rgs in restricted_growth(n):
        blocks: dict = {}
        for x, b in zip(pts, rgs):
            blocks.setdefault(b, []).append(x)
        pairs = [b for b in blocks.values() if len(b) == 2]
        if any(len(b) > 2 for b in blocks.values()):
            continue
        for flips in product((False, True), repeat=len(pairs)):
            order = [(x, x) for x in pts]
            order += [(b[1], b[0]) if flip else (b[0], b[1]) for b, flip in zip(pairs, flips)]
            yield Frame.ordered(Poset(pts, order))


def involutions(n: int) -> Iterator[tuple]:
    """Permutations of ``0..n-1`` that are their own inverse."""
    for p in permutations(range(n)):
        if all(p[p[i]] == i for i in range(n)):
            yield p


def de_morgan_frames(n: int) -> Iterator[Frame]:
    _guard(n, "posets")
    for p in enumerate_posets(n):
        le = p.matrix
        for inv in involutions(n):
            inv = np.array(inv, dtype=np.int64)
            if (le <= le.T[np.ix_(inv, inv)]).all():  # x <= y implies N(y) <= N(x)
                els = p.elements
                yield Frame.de_morgan(p, {els[i]: els[inv[i]] for i in range(n)})


def relation_frames(n: int) -> Iterator[Frame]:
    """All ``2**(n*n)`` binary relations on ``1..n`` in mask order."""
    _guard(n, "relations")
    for mask in range(1 << (n * n)):
        yield relation_frame(n, mask)


def relation_frame(n: int, mask: int) -> Frame:
    pts = points(n)
    pairs = [(pts[i // n], pts[i % n]) for i in range(n * n) if mask >> i & 1]
    return Frame.plain(pts, pairs)


def _chain_posets(n: int) -> Iterator[Poset]:
    for fr in rdsa_frames(n):
        yield fr.order


def r2a_frames(n: int) -> Iterator[Frame]:
    """Rough relation frames on ``1..n`` by brute force over all components."""
    _guard(n, "r2a")
    if n > 2:
        raise CeilingError("rough relation frames are enumerated by brute force only up to 2 points")
    pts = points(n)
    triples = list(product(range(n), repeat=3))
    for p in _chain_posets(n):
        le = p.matrix
        comparable = le | le.T
        for inv in involutions(n):
            f = np.array(inv)
            if not (le <= le[np.ix_(f, f)]).all():
                continue
            for ideal_bits in product((False, True), repeat=n):
                ideal = np.array(ideal_bits, dtype=bool)
                if not ideal.any() or (comparable & (ideal[:, None] != ideal[None, :])).any():
                    continue
                for mask in range(1 << len(triples)):
                    r = np.zeros((n, n, n), dtype=bool)
                    for i, t in enumerate(triples):
                        if mask >> i & 1:
                            r[t] = True
                    # cheap identity laws first
                    if not ((r & ideal[None, :, None]).any(axis=1) == le).all():
                        continue
                    if not ((r & ideal[:, None, None]).any(axis=0) == le).all():
                        continue
                    fr = Frame.rough_relation(
                        p,
                        [tuple(pts[i] for i in t) for t in np.argwhere(r)],
                        {pts[i]: pts[f[i]] for i in range(n)},
                        [pts[i] for i in range(n) if ideal[i]],
                    )
                    if check_r2fa(fr).passed:
                        yield fr


def enumerate_frames(kind, n: int) -> Iterator[Frame]:
    """Frames of ``kind`` on ``1..n``."""
    kind = as_kind(kind)
    if kind is Kind.MONADIC:
        for s in enumerate_partitions(n):
            yield s.as_frame()
    elif kind is Kind.DIVERSITY:
        for s in enumerate_partitions(n):
            yield diversity_frame(s)
    elif kind in (Kind.POSSIBILITY, Kind.SUFFICIENCY):
        yield from relation_frames(n)
    elif kind is Kind.BDL:
        for p in enumerate_posets(n):
            yield Frame.ordered(p)
    elif kind is Kind.RDSA:
        yield from rdsa_frames(n)
    elif kind is Kind.DEMORGAN:
        yield from de_morgan_frames(n)
    elif kind is Kind.R2A:
        yield from r2a_frames(n)
    else:
        raise DomainError(f"no frame class for kind {kind}")


def diversity_frame(s: ApproximationSpace) -> Frame:
    return Frame.plain(s.universe, s.theta.complement().pairs)


# -- filter-everything oracles -------------------------------------------------------

def _all_relations(n: int) -> np.ndarray:
    masks = np.arange(1 << (n * n), dtype=np.int64)
    bits = (masks[:, None] >> np.arange(n * n)) & 1
    return bits.astype(bool).reshape(-1, n, n)


def _transitive(r: np.ndarray) -> np.ndarray:
    ri = r.astype(np.int64)
    return ~((np.einsum("rij,rjk->rik", ri, ri) > 0) & ~r).any(axis=(1, 2))


def partitions_oracle(n: int) -> int:
    """Number of equivalence relations among all relations on ``n`` points."""
    if n == 0:
        return 1
    r = _all_relations(n)
    refl = r[:, np.arange(n), np.arange(n)].all(axis=1)
    sym = (r == r.transpose(0, 2, 1)).all(axis=(1, 2))
    return int((refl & sym & _transitive(r)).sum())


def posets_oracle(n: int) -> int:
    """Number of partial orders among all relations on ``n`` points."""
    if n == 0:
        return 1
    r = _all_relations(n)
    refl = r[:, np.arange(n), np.arange(n)].all(axis=1)
    anti = ~(r & r.transpose(0, 2, 1) & ~np.eye(n, dtype=bool)).any(axis=(1, 2))
    return int((refl & anti & _transitive(r)).sum())


def diversity_characterization(n: int) -> tuple:
    """Over all relations on ``n`` points, compare the diversity axioms with
    "the complement is an equivalence".  Returns ``(checked, mismatches, first)``."""
    r = _all_relations(n)
    idx = np.arange(n)
    irreflexive = ~r[:, idx, idx].any(axis=1)
    symmetric = (r == r.transpose(0, 2, 1)).all(axis=(1, 2))
    # x R y implies x R z or z R y, for all z
    rt = r.transpose(0, 2, 1)
    # violation at [x, y, z]: x R y but neither x R z nor z R y
    cotrans = ~(r[:, :, :, None] & ~r[:, :, None, :] & ~rt[:, None, :, :]).any(axis=(1, 2, 3))
    c = ~r
    equivalence = c[:, idx, idx].all(axis=1) & (c == c.transpose(0, 2, 1)).all(axis=(1, 2)) & _transitive(c)
    bad = np.flatnonzero((irreflexive & symmetric & cotrans) != equivalence)
    return len(r), len(bad), (int(bad[0]) if len(bad) else None)


# -- verification ---------------------------------------------------------------------

@dataclass(frozen=True)
class ClaimResult:
    claim: str
    checked: int = 1
    failed: int = 0
    witness: str | None = None
    informational: bool = False


@dataclass(frozen=True)
class ClaimTally:
    claim: str
    checked: int
    passed: int
    failed: int
    informational: bool = False


@dataclass(frozen=True)
class VerificationSummary:
    theorem: str
    max_n: int
    instances: int
    tallies: tuple
    counterexample: str | None = None
    sizes: tuple = ()
    wall_time: float = field(default=0.0, compare=False)

    @property
    def checked(self) -> int:
        return sum(t.checked for t in self.tallies if not t.informational)

    @property
    def failed(self) -> int:
        return sum(t.failed for t in self.tallies if not t.informational)

    @property
    def passed(self) -> bool:
        return self.failed == 0

    def tally(self, claim: str) -> ClaimTally:
        for t in self.tallies:
            if t.claim == claim:
                return t
        raise KeyError(claim)

    def render(self, show_time: bool = False) -> str:
        lines = [f"{'PASS' if self.passed else 'FAIL'} {self.theorem} (max n {self.max_n}, {self.instances} instances)"]
        lines.append("  sizes " + " ".join(f"{n}:{c}" for n, c in self.sizes))
        for t in self.tallies:
            note = " (informational)" if t.informational else ""
            lines.append(f"  {t.claim}: checked {t.checked}, passed {t.passed}, failed {t.failed}{note}")
        if self.counterexample:
            lines.append(f"  counterexample {self.counterexample}")
        if show_time:
            lines.append(f"  wall time {self.wall_time:.2f}s")
        return "\n".join(lines) + "\n"


def _run(claim: str, fn: Callable, what: str, informational: bool = False) -> ClaimResult:
    """Run one boolean claim; library errors count as failures with their message."""
    try:
        out = fn()
    except DualityError as exc:
        return ClaimResult(claim, 1, 1, f"{what}: {type(exc).__name__}: {exc}", informational)
    ok, detail = out if isinstance(out, tuple) else (out, None)
    witness = None if ok else f"{what}" + (f": {detail}" if detail else "")
    return ClaimResult(claim, 1, 0 if ok else 1, witness, informational)


def _violation(rep) -> str | None:
    v = rep.violations
    if not v:
        return "; ".join(rep.alarms) or None
    law, w = v[0]
    return f"{law} at " + " ".join(f"{a}={b}" for a, b in (w or ()))


def _report_claim(claim, make, what, informational=False) -> ClaimResult:
    def fn():
        rep = make()
        return rep.passed, _violation(rep)

    return _run(claim, fn, what, informational)


def _roundtrips(frame: Frame, alg_maker: Callable, kind, what: str) -> list:
    out = []
    holder = {}

    def algebra_side():
        rep = roundtrip_algebra(alg_maker(), kind)
        holder["iso"] = rep.iso
        return rep.embedding

    out.append(_report_claim("stone map is an embedding", algebra_side, what))
    if "iso" in holder:
        out.append(ClaimResult("stone map is onto", 1, 0 if holder["iso"] else 1,
                               None if holder["iso"] else what, informational=True))
    out.append(_report_claim("frame map is an embedding", lambda: roundtrip_frame(frame, kind).embedding, what))
    return out


def _space_label(s: ApproximationSpace) -> str:
    return "space " + " ".join(label(b) for b in s.blocks)


def _frame_label(f: Frame) -> str:
    parts = [f"points {label(frozenset(f.points))}"]
    if f.order is not None:
        parts.append("order " + label(frozenset(f.order.strict_pairs())))
    if f.rel is not None:
        parts.append("rel " + label(f.rel))
    for name, fn in sorted(f.functions.items()):
        parts.append(f"{name} " + ",".join(f"{label(x)}->{label(fn[x])}" for x in f.points))
    return "frame " + "; ".join(parts)


# Each pipeline maps an instance to claim results.  Instances are plain
# picklable values so that worker processes can rebuild them.

def _monadic_complex(s):
    fr = s.as_frame()
    return [_report_claim("complex algebra is monadic", lambda: check_kind(cm(fr, Kind.MONADIC)), _space_label(s))]


def _monadic_canonical(s):
    what = _space_label(s)
    alg = cm(s.as_frame(), Kind.MONADIC)
    return [_report_claim("canonical relation is an equivalence",
                          lambda: frame_report(cs(alg, Kind.MONADIC), Kind.MONADIC), what)]


def _monadic_rep(s):
    fr = s.as_frame()
    return _roundtrips(fr, lambda: cm(fr, Kind.MONADIC), Kind.MONADIC, _space_label(s))


def _necsuff_tables(k: int) -> ClaimResult:
    """Vectorised comparison over every operator table on the Boolean algebra
    with ``k`` atoms, elements encoded as bitmasks ``0..2**k-1``."""
    m = 1 << k
    full = m - 1
    total = m**m
    pairs = [(a, b) for a in range(m) for b in range(m)]
    powers = np.array([m**i for i in range(m)], dtype=np.int64)
    mismatches, first = 0, None
    chunk = 1 << 20
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        g = ((idx[:, None] // powers[None, :]) % m).astype(np.uint8)
        star = (full ^ g).astype(np.uint8)
        suff = g[:, 0] == full
        poss = star[:, 0] == 0
        live = np.flatnonzero(suff | poss)
        gs, ss, su, po = g[live], star[live], suff[live], poss[live]
        for a, b in pairs:
            su &= gs[:, a | b] == (gs[:, a] & gs[:, b])
            po &= ss[:, a | b] == (ss[:, a] | ss[:, b])
        bad = live[su != po]
        mismatches += len(bad)
        if first is None and len(bad):
            first = int(idx[bad[0]])
    witness = None
    if first is not None:
        witness = f"{k} atoms, table " + ",".join(str(first // m**i % m) for i in range(m))
    return ClaimResult("sufficiency(g) iff possibility(-g)", total, mismatches, witness)


def _necsuff_engine(k: int) -> ClaimResult:
    """Same claim through the law engine, for small tables only."""
    from .algebra import powerset_lattice

    lat = powerset_lattice(range(k))
    n = len(lat)
    total = n**n
    failed, witness = 0, None
    for code in range(total):
        g = np.array([code // n**i % n for i in range(n)], dtype=np.int64)
        suff, poss = star_transfer(lat, g)
        if suff.passed != poss.passed:
            failed += 1
            witness = witness or f"{k} atoms, table {g.tolist()}"
    return ClaimResult("law engine agrees", total, failed, witness)


def _necsuff(k):
    out = [_necsuff_tables(k)]
    if k <= 2:
        out.append(_necsuff_engine(k))
    return out


def _sufficiency(inst):
    n, mask = inst
    fr = relation_frame(n, mask)
    what = _frame_label(fr)
    out = [
        _report_claim("complex algebra is a sufficiency algebra", lambda: check_kind(cm(fr, Kind.SUFFICIENCY)), what),
        _run("canonical structure is built", lambda: bool(cs(cm(fr, Kind.SUFFICIENCY))), what),
    ]
    out += _roundtrips(fr, lambda: cm(fr, Kind.SUFFICIENCY), Kind.SUFFICIENCY, what)
    rel = BinaryRelation(fr.points, fr.rel)
    comp = rel.complement()
    uni = frozenset(fr.points)

    def identity():
        for bits in range(1 << n):
            y = frozenset(x for i, x in enumerate(fr.points) if bits >> i & 1)
            if sufficiency_op(rel, y) != necessity_op(comp, uni - y):
                return False, f"Y={label(y)}"
        return True

    out.append(_run("sufficiency is necessity of the complement", identity, what))
    return out


def _diversity(inst):
    tag, payload = inst
    if tag == "characterization":
        checked, bad, first = diversity_characterization(payload)
        witness = None
        if first is not None:
            witness = _frame_label(relation_frame(payload, first))
        return [ClaimResult("diversity axioms iff complement is an equivalence", checked, bad, witness)]
    fr = diversity_frame(payload)
    what = _frame_label(fr)
    out = [
        _report_claim("complex algebra is a diversity algebra", lambda: check_kind(cm(fr, Kind.DIVERSITY)), what),
        _report_claim("canonical structure is a diversity frame",
                      lambda: frame_report(cs(cm(fr, Kind.DIVERSITY)), Kind.DIVERSITY), what),
    ]
    return out + _roundtrips(fr, lambda: cm(fr, Kind.DIVERSITY), Kind.DIVERSITY, what)


def _ddlat(p):
    fr = Frame.ordered(p)
    what = _frame_label(fr)
    return [_report_claim("complex algebra is distributive", lambda: check_kind(cm(fr, Kind.BDL)), what)] + \
        _roundtrips(fr, lambda: cm(fr, Kind.BDL), Kind.BDL, what)


def _rough_sets(s):
    return [_report_claim("rough set algebra is an RDSA",
                          lambda: check_kind(build_rough_set_algebra(s), Kind.RDSA), _space_label(s))]


def _chain_shape(fr: Frame):
    try:
        chain_ends(fr.order_matrix)
    except PreconditionError as exc:
        return False, str(exc)
    return True


def _rdsa(inst):
    tag, payload = inst
    if tag == "regularity":
        return _regularity(payload)
    fr = payload
    what = _frame_label(fr)
    alg = cm(fr, Kind.RDSA)
    out = [
        _report_claim("complex algebra is an RDSA", lambda: check_kind(alg), what),
        _report_claim("canonical frame is an RDSA frame", lambda: frame_report(cs(alg), Kind.RDSA), what),
        _run("prime filters form chains of length <= 2", lambda: _chain_shape(cs(alg, Kind.BDL)), what),
    ]
    return out + _roundtrips(fr, lambda: alg, Kind.RDSA, what)


def _regularity(p: Poset):
    """Among double Stone algebras of up-sets: regular iff the prime filters
    form chains of length at most two."""
    what = _frame_label(Frame.ordered(p))
    lat = up_set_lattice(p)
    star, plus = pseudocomplements(lat)
    alg = FiniteAlgebra(lat, Kind.DSA, {"star": star, "plus": plus})
    if not check_kind(alg).passed:
        return [ClaimResult("regular iff prime filters form short chains", 0, 0)]

    def claim():
        regular = check_kind(alg, Kind.RDSA).passed
        short = _chain_shape(cs(alg, Kind.BDL)) is True
        return regular == short, f"regular={regular} short-chains={short}"

    return [_run("regular iff prime filters form short chains", claim, what)]


def _demorgan(fr):
    what = _frame_label(fr)
    alg = cm(fr, Kind.DEMORGAN)
    out = [
        _report_claim("complex algebra is De Morgan", lambda: check_kind(alg), what),
        _report_claim("canonical structure is a De Morgan frame", lambda: frame_report(cs(alg), Kind.DEMORGAN), what),
    ]
    return out + _roundtrips(fr, lambda: alg, Kind.DEMORGAN, what)


def _rra(inst):
    tag, payload = inst
    if tag == "frame":
        fr = payload
        what = _frame_label(fr)
        alg = cm_rra(fr)
        return [_report_claim("complex algebra is an R2A", lambda: check_r2a(alg), what)] + \
            _roundtrips(fr, lambda: alg, Kind.R2A, what)
    s = payload
    what = _space_label(s)
    try:
        alg = build_full_rough_relation_algebra(s)
    except PreconditionError as exc:
        w = " ".join(label(x) for x in exc.witness or ())
        return [ClaimResult("rough composition is closed", 1, 1, f"{what}: {w}", informational=True)]
    out = [
        ClaimResult("rough composition is closed", 1, 0, None, informational=True),
        _report_claim("full algebra is an R2A", lambda: check_r2a(alg), what),
    ]
    holder = {}

    def canonical():
        holder["frame"] = cs_rra(alg, check=False)
        return check_r2fa(holder["frame"])

    out.append(_report_claim("canonical frame is a rough relation frame", canonical, what))
    out.append(_report_claim("stone map is an embedding", lambda: roundtrip_algebra(alg, Kind.R2A).embedding, what))
    if "frame" in holder:
        out.append(_report_claim("frame map is an embedding",
                                 lambda: roundtrip_frame(holder["frame"], Kind.R2A).embedding, what))
    return out


def _star_formulations(fr: Frame):
    """Three independent computations of both pseudocomplements on every up-set."""
    what = _frame_label(fr)
    p = fr.order
    lat = up_set_lattice(p)
    ys = [int(m) for m in lat.masks]
    n = len(p)
    full = (1 << n) - 1
    le = p.matrix
    up = [sum(1 << j for j in range(n) if le[i, j]) for i in range(n)]
    down = [sum(1 << j for j in range(n) if le[j, i]) for i in range(n)]
    mx = sum(1 << p.index[x] for x in p.maximal)
    mn = sum(1 << p.index[x] for x in p.minimal)
    star_adj, plus_adj = pseudocomplements(lat)

    def spread(mask, cones):
        out = 0
        for i in range(n):
            if mask >> i & 1:
                out |= cones[i]
        return out

    star_ok = plus_ok = True
    star_w = plus_w = None
    for i, y in enumerate(ys):
        s1 = full ^ spread(mx & y, down)
        s2 = sum(1 << j for j in range(n) if up[j] & y == 0)
        s3 = ys[star_adj[i]]
        p1 = full ^ spread(mn & y, up)
        p2 = sum(1 << j for j in range(n) if down[j] & (full ^ y))
        p3 = ys[plus_adj[i]]
        if star_ok and not s1 == s2 == s3:
            star_ok, star_w = False, f"Y={lat.labels[i]}"
        if plus_ok and not p1 == p2 == p3:
            plus_ok, plus_w = False, f"Y={lat.labels[i]}"
    return [
        ClaimResult("pseudocomplement formulas agree", 1, 0 if star_ok else 1, None if star_ok else f"{what}: {star_w}"),
        ClaimResult("dual pseudocomplement formulas agree", 1, 0 if plus_ok else 1, None if plus_ok else f"{what}: {plus_w}"),
    ]


@dataclass(frozen=True)
class Theorem:
    key: str
    family: str
    instances: Callable
    check: Callable
    sampler: Callable | None = None
    description: str = ""


def _upto(gen, max_n, start=1):
    for n in range(start, max_n + 1):
        for x in gen(n):
            yield n, x


def _sample_relations(n, samples, seed):
    rng = np.random.default_rng([seed, zlib.crc32(b"relations"), n])
    masks = np.unique(rng.integers(0, 1 << (n * n), size=samples))
    return [(n, (n, int(m))) for m in masks]


def _sample_partitions(n, samples, seed):
    spaces = list(enumerate_partitions(n))
    if samples <= 0 or samples >= len(spaces):
        chosen = range(len(spaces))
    else:
        rng = np.random.default_rng([seed, zlib.crc32(b"partitions"), n])
        chosen = sorted(rng.choice(len(spaces), size=samples, replace=False))
    return [(n, ("space", spaces[i])) for i in chosen]


THEOREMS = {
    "monadic-complex-algebra": Theorem(
        "monadic-complex-algebra", "partitions",
        lambda n: _upto(enumerate_partitions, n), _monadic_complex,
        description="complex algebras of equivalence frames are monadic"),
    "monadic-canonical-equivalence": Theorem(
        "monadic-canonical-equivalence", "partitions",
        lambda n: _upto(enumerate_partitions, n), _monadic_canonical,
        description="canonical relations of monadic algebras are equivalences"),
    "monadic-representation": Theorem(
        "monadic-representation", "partitions",
        lambda n: _upto(enumerate_partitions, n), _monadic_rep,
        description="Stone map and frame map are embeddings for monadic algebras"),
    "sufficiency-possibility-transfer": Theorem(
        "sufficiency-possibility-transfer", "boolean-atoms",
        lambda n: ((k, k) for k in range(0, n + 1)), _necsuff,
        description="g is a sufficiency operator iff -g is a possibility operator"),
    "sufficiency-representation": Theorem(
        "sufficiency-representation", "relations",
        lambda n: _upto(lambda k: ((k, m) for m in range(1 << (k * k))), n), _sufficiency,
        sampler=_sample_relations,
        description="complex algebras and canonical structures of sufficiency frames, both embeddings"),
    "diversity-representation": Theorem(
        "diversity-representation", "relations",
        lambda n: [(k, ("characterization", k)) for k in range(1, n + 1)]
        + [(k, ("frame", s)) for k, s in _upto(enumerate_partitions, n)],
        _diversity,
        description="diversity relations are complements of equivalences; both embeddings"),
    "distributive-lattice-representation": Theorem(
        "distributive-lattice-representation", "posets",
        lambda n: _upto(enumerate_posets, n), _ddlat,
        description="up-set lattices and prime filters, both embeddings"),
    "rough-set-algebras-are-rdsa": Theorem(
        "rough-set-algebras-are-rdsa", "partitions",
        lambda n: _upto(enumerate_partitions, n), _rough_sets,
        description="every full algebra of rough sets is a regular double Stone algebra"),
    "rdsa-representation": Theorem(
        "rdsa-representation", "posets",
        lambda n: [(k, ("frame", f)) for k, f in _upto(rdsa_frames, n)]
        + [(k, ("regularity", p)) for k, p in _upto(enumerate_posets, n)],
        _rdsa,
        description="RDSA frames and algebras, both embeddings, regularity via prime filters"),
    "de-morgan-representation": Theorem(
        "de-morgan-representation", "posets",
        lambda n: _upto(de_morgan_frames, n), _demorgan,
        description="De Morgan frames and algebras, both embeddings with N preserved"),
    "rough-relation-representation": Theorem(
        "rough-relation-representation", "r2a",
        lambda n: [(k, ("space", s)) for k, s in _upto(enumerate_partitions, n)]
        + [(k, ("frame", f)) for k, f in _upto(r2a_frames, min(n, 2))],
        _rra,
        sampler=_sample_partitions,
        description="full algebras of rough relations, canonical frames, both embeddings"),
    "pseudocomplement-formulations": Theorem(
        "pseudocomplement-formulations", "frames",
        lambda n: _upto(rdsa_frames, n), _star_formulations,
        description="three formulations of the pseudocomplements agree on RDSA frames"),
}

ALIASES = {
    "lem:monadic": "monadic-complex-algebra",
    "lem:equiv": "monadic-canonical-equivalence",
    "thm:monad": "monadic-representation",
    "thm:necsuff": "sufficiency-possibility-transfer",
    "necsuff": "sufficiency-possibility-transfer",
    "repsuff1": "sufficiency-representation",
    "repsuff2": "sufficiency-representation",
    "repdiv1": "diversity-representation",
    "repdiv2": "diversity-representation",
    "DDLat": "distributive-lattice-representation",
    "rhm:rsdaalg": "rough-set-algebras-are-rdsa",
    "rdsa1": "rdsa-representation",
    "rdsa2": "rdsa-representation",
    "lem:reg": "rdsa-representation",
    "DeM": "de-morgan-representation",
    "rra-final": "rough-relation-representation",
    "star-formulations": "pseudocomplement-formulations",
}


def theorem_ids() -> list:
    return sorted(THEOREMS) + sorted(ALIASES)


def resolve_theorem(theorem_id: str) -> Theorem:
    key = ALIASES.get(theorem_id, theorem_id)
    if key not in THEOREMS:
        raise DomainError(f"unknown theorem id {theorem_id!r}")
    return THEOREMS[key]


def _check_chunk(args):
    key, items = args
    th = THEOREMS[key]
    return [th.check(x) for x in items]


def verify_theorem(theorem_id: str, max_n: int, sample_n: int | None = None, samples: int = 0,
                   seed: int = 0, workers: int = 1) -> VerificationSummary:
    """Check every instance of ``theorem_id`` up to size ``max_n``.

    ``sample_n`` adds a randomly sampled batch of ``samples`` instances of that
    size (theorems without a sampler ignore it).  Results do not depend on
    ``workers``: instances are checked in a fixed order and merged by index.
    """
    th = resolve_theorem(theorem_id)
    _guard(max_n, th.family)
    t0 = time.perf_counter()
    items = list(th.instances(max_n))
    if sample_n is not None and th.sampler is not None and sample_n > max_n:
        _guard(sample_n, th.family)
        items += th.sampler(sample_n, samples, seed)
    sizes: dict = {}
    for n, _ in items:
        sizes[n] = sizes.get(n, 0) + 1
    payloads = [x for _, x in items]

    if workers > 1 and len(payloads) > 1:
        step = max(1, -(-len(payloads) // (workers * 4)))
        chunks = [(th.key, payloads[i : i + step]) for i in range(0, len(payloads), step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = [r for part in pool.map(_check_chunk, chunks) for r in part]
    else:
        results = [th.check(x) for x in payloads]

    order: list = []
    counts: dict = {}
    counterexample = None
    for claims in results:
        for c in claims:
            if c.claim not in counts:
                order.append(c.claim)
                counts[c.claim] = [0, 0, c.informational]
            counts[c.claim][0] += c.checked
            counts[c.claim][1] += c.failed
            if c.failed and not c.informational and counterexample is None:
                counterexample = f"{c.claim}: {c.witness}"
    tallies = tuple(ClaimTally(k, counts[k][0], counts[k][0] - counts[k][1], counts[k][1], counts[k][2]) for k in order)
    return VerificationSummary(
        theorem_id,
        max_n,
        len(payloads),
        tallies,
        counterexample,
        tuple(sorted(sizes.items())),
        time.perf_counter() - t0,
    )


__all__ = [
    "CEILING_ENV",
    "CeilingError",
    "ceiling",
    "restricted_growth",
    "enumerate_partitions",
    "enumerate_posets",
    "enumerate_frames",
    "rdsa_frames",
    "de_morgan_frames",
    "relation_frames",
    "r2a_frames",
    "involutions",
    "partitions_oracle",
    "posets_oracle",
    "diversity_characterization",
    "ClaimTally",
    "VerificationSummary",
    "THEOREMS",
    "ALIASES",
    "theorem_ids",
    "resolve_theorem",
    "verify_theorem",
]
