"""Law evaluation and the structured verdicts it produces.

Every checker in the package (algebra axioms, frame conditions, embedding
conditions) is phrased as a list of :class:`Law` objects whose predicate is
vectorised over numpy index arrays.  :func:`evaluate` runs a law over every
assignment of domain elements to its variables, in lexicographic order, and
stops at the first violation so that witnesses are reproducible.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

PASS = "pass"
FAIL = "fail"


@dataclass(frozen=True)
class Law:
    name: str
    variables: tuple
    holds: Callable[..., np.ndarray]
    derived: bool = False


@dataclass(frozen=True)
class EvaluationPolicy:
    """How many assignments a law may be checked on before sampling kicks in."""

    max_assignments: int = 2_000_000
    samples: int = 50_000
    seed: int = 0
    chunk: int = 1 << 18


DEFAULT_POLICY = EvaluationPolicy()


@dataclass(frozen=True)
class LawResult:
    name: str
    holds: bool
    assignments: int
    mode: str = "exhaustive"
    witness: tuple | None = None
    derived: bool = False


@dataclass(frozen=True)
class CheckReport:
    """Verdict of a batch of law checks on one structure.

    ``verdict`` is ``"pass"`` exactly when no law was violated.  ``alarms``
    collects internal-consistency problems (a derived law failing while all
    axioms hold, a construction leaving its class); ``info`` carries extra
    key/value facts such as the isomorphism flag of an embedding.
    """

    name: str
    kind: str
    laws: tuple = ()
    alarms: tuple = ()
    info: tuple = ()

    @property
    def violations(self) -> list:
        return [(r.name, r.witness) for r in self.laws if not r.holds]

    @property
    def verdict(self) -> str:
        return PASS if not self.violations else FAIL

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    @property
    def assignments(self) -> int:
        return sum(r.assignments for r in self.laws)

    def law(self, name: str) -> LawResult:
        for r in self.laws:
            if r.name == name:
                return r
        raise KeyError(name)

    def get_info(self, key: str, default=None):
        return dict(self.info).get(key, default)

    def failed_laws(self) -> list:
        return [r.name for r in self.laws if not r.holds]


def combine(name: str, kind: str, *reports: CheckReport, alarms=(), info=()) -> CheckReport:
    laws = tuple(r for rep in reports for r in rep.laws)
    all_alarms = tuple(a for rep in reports for a in rep.alarms) + tuple(alarms)
    all_info = tuple(i for rep in reports for i in rep.info) + tuple(info)
    return CheckReport(name, kind, laws, all_alarms, all_info)


def _first_failure(ok: np.ndarray):
    bad = np.flatnonzero(~ok)
    return int(bad[0]) if len(bad) else None


def evaluate(law: Law, labels: Sequence[str], policy: EvaluationPolicy = DEFAULT_POLICY) -> LawResult:
    """Check ``law`` over all assignments of ``range(len(labels))`` to its variables."""
    n = len(labels)
    k = len(law.variables)
    if k == 0:
        ok = bool(np.all(law.holds()))
        return LawResult(law.name, ok, 1, "exhaustive", None if ok else (), law.derived)
    total = n**k
    if total == 0:
        return LawResult(law.name, True, 0, "exhaustive", None, law.derived)
    shape = (n,) * k

    if total <= policy.max_assignments:
        mode = "exhaustive"
        chunks = (
            np.arange(start, min(total, start + policy.chunk), dtype=np.int64)
            for start in range(0, total, policy.chunk)
        )
        count = total
    else:
        mode = "sampled"
        rng = np.random.default_rng([policy.seed, zlib.crc32(law.name.encode())])
        flat = np.unique(rng.integers(0, total, size=policy.samples, dtype=np.int64))
        chunks = (flat[s : s + policy.chunk] for s in range(0, len(flat), policy.chunk))
        count = len(flat)

    for flat in chunks:
        idx = np.unravel_index(flat, shape)
        ok = np.broadcast_to(np.asarray(law.holds(*idx), dtype=bool), flat.shape)
        first = _first_failure(ok)
        if first is not None:
            witness = tuple((v, labels[int(idx[i][first])]) for i, v in enumerate(law.variables))
            return LawResult(law.name, False, count, mode, witness, law.derived)
    return LawResult(law.name, True, count, mode, None, law.derived)


def run_laws(
    name: str,
    kind: str,
    laws: Sequence[Law],
    labels: Sequence[str],
    policy: EvaluationPolicy = DEFAULT_POLICY,
    info=(),
) -> CheckReport:
    results = tuple(evaluate(law, labels, policy) for law in laws)
    alarms = []
    axioms_ok = all(r.holds for r in results if not r.derived)
    if axioms_ok:
        for r in results:
            if r.derived and not r.holds:
                alarms.append(f"derived law {r.name} fails although every axiom holds")
    return CheckReport(name, kind, results, tuple(alarms), tuple(info))


def single(name: str, kind: str, law_name: str, ok: bool, witness=None, assignments: int = 1) -> CheckReport:
    """A report made of one already-decided law."""
    return CheckReport(name, kind, (LawResult(law_name, ok, assignments, "exhaustive", None if ok else witness),))


__all__ = [
    "PASS",
    "FAIL",
    "Law",
    "LawResult",
    "CheckReport",
    "EvaluationPolicy",
    "DEFAULT_POLICY",
    "evaluate",
    "run_laws",
    "combine",
    "single",
]
