"""Hecke algebra character values for types B and D via strip removal.

An element is addressed by its signed cycle type, a list of nonzero
integers whose absolute values sum to n and whose negative entries mark
barred cycles ([-2] is one barred 2-cycle, [6,10] two plain cycles).
Internally the cycles become a sequence of strictly increasing endpoints
(the running totals), barred where the cycle is barred.

The trace of the corresponding standard basis element on the irreducible
module labelled by a bipartition is computed by peeling strips off the
bipartition from the last endpoint inward: plain segments contribute the
broken-strip statistic delta, barred segments the decorated single-strip
statistic delta_bar, and the whole sum carries a prefactor u^(l'/2) with
l' counting the non-distinguished letters of the defining word.  Partial
sums are memoized on (remaining bipartition, number of remaining
segments), so sweeps over many bipartitions of the same rank share work
through a common context.

Kind D accepts only two barred patterns: no bars at all, or a leading
[-1, -c, ...] pair followed by plain cycles; and its traces are defined
here only for bipartitions with distinct components.

The module also carries the small self-check oracles: class
representatives and centralizer orders for the signed permutation group,
and the standard bitableaux count.
"""

from __future__ import annotations

import hashlib
import json
from collections import Counter
from functools import cache
from math import factorial
from pathlib import Path
from typing import NamedTuple

from .config import Config, ResourceGuardError
from .halflaurent import ONE, ZERO, HalfLaurent, half_power
from .shapes import (
    BiPartition,
    broken_strip_removals,
    delta,
    delta_bar,
    partitions_of,
    remove_strips,
    single_strip_removals,
)
from .symbols import check_kind

__all__ = [
    "BrEntry",
    "BrSequence",
    "br_from_cycles",
    "cycles_from_br",
    "l_prime",
    "MNContext",
    "mn_trace",
    "TraceCache",
    "class_reps",
    "valid_d_cycle_lists",
    "centralizer_order_B",
    "st_bitableaux",
    "identity_cycles",
]


class BrEntry(NamedTuple):
    magnitude: int
    barred: bool


class BrSequence(NamedTuple):
    kind: str
    entries: tuple  # of BrEntry, magnitudes strictly increasing

    @property
    def n(self) -> int:
        return self.entries[-1].magnitude if self.entries else 0


def br_from_cycles(kind: str, cycles) -> BrSequence:
    """Endpoint sequence of a signed cycle list, validating kind D patterns."""
    check_kind(kind)
    cyc = tuple(int(c) for c in cycles)
    if any(c == 0 for c in cyc):
        raise ValueError("cycle lengths must be nonzero")
    entries = []
    run = 0
    for c in cyc:
        run += abs(c)
        entries.append(BrEntry(run, c < 0))
    if kind == "D":
        bars = [i for i, e in enumerate(entries) if e.barred]
        case_i = not bars
        case_ii = (
            len(bars) == 2
            and bars == [0, 1]
            and len(entries) >= 2
            and entries[0].magnitude == 1
        )
        if not (case_i or case_ii):
            raise ValueError(
                f"cycles {list(cyc)} invalid for kind D: bars must be absent "
                "or exactly [-1, -c, ...] in front"
            )
    return BrSequence(kind, tuple(entries))


def cycles_from_br(br: BrSequence) -> tuple:
    out = []
    prev = 0
    for mag, barred in br.entries:
        length = mag - prev
        out.append(-length if barred else length)
        prev = mag
    return tuple(out)


def l_prime(br: BrSequence) -> int:
    """Letters other than the distinguished generator in the word for T_Br.

    Segment from k = previous endpoint + 1 to l = endpoint: a plain
    segment spells l - k transpositions; a barred one additionally walks
    down and back, k + l - 2 letters for kind B and k + l - 3 for kind D
    (whose leading barred [.]-1 segment spells no letters at all).
    """
    total = 0
    prev = 0
    for mag, barred in br.entries:
        k, l = prev + 1, mag
        if not barred:
            total += l - k
        elif br.kind == "B":
            total += k + l - 2
        else:
            total += k + l - 3 if k >= 2 else 0
        prev = mag
    return total


# ---------------------------------------------------------------------------
# trace evaluation
# ---------------------------------------------------------------------------


class MNContext:
    """Memoized chain summation for one (kind, endpoint sequence) pair.

    Safe to share across threads evaluating different bipartitions: all
    values are pure and exact, so concurrent writes of the same key are
    idempotent.  The memo_budget is a loose cap on stored entries; going
    past it raises ResourceGuardError instead of thrashing.
    """

    def __init__(self, br: BrSequence, memo_budget: int | None = None):
        self.br = br
        self.kind = br.kind
        steps = []
        prev = 0
        for mag, barred in br.entries:
            steps.append((mag - prev, barred))
            prev = mag
        self.steps = tuple(steps)
        self.prefix_sizes = [0]
        for size, _ in steps:
            self.prefix_sizes.append(self.prefix_sizes[-1] + size)
        self.memo_budget = memo_budget
        self._memo: dict = {}

    def chain_sum(self, outer: BiPartition, k: int) -> HalfLaurent:
        if outer.size != self.prefix_sizes[k]:
            return ZERO
        if k == 0:
            return ONE
        key = (outer, k)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        size, barred = self.steps[k - 1]
        total = ZERO
        if barred:
            for inner, shape in single_strip_removals(outer, size):
                factor = delta_bar(shape, self.kind)
                if factor:
                    total = total + factor * self.chain_sum(inner, k - 1)
        else:
            for inner, shape in broken_strip_removals(outer, size):
                factor = delta(shape)
                if factor:
                    total = total + factor * self.chain_sum(inner, k - 1)
        if self.memo_budget is not None and len(self._memo) >= self.memo_budget:
            raise ResourceGuardError(
                f"memo budget {self.memo_budget} exhausted at rank {self.br.n}"
            )
        self._memo[key] = total
        return total


def mn_trace(
    kind: str,
    lam: BiPartition,
    br: BrSequence,
    context: MNContext | None = None,
    config: Config | None = None,
    cache_store: "TraceCache | None" = None,
) -> HalfLaurent:
    """Trace of T_Br on the module of the bipartition lam, exactly.

    Pass a shared context when sweeping many bipartitions against the
    same element.  kind D refuses lam.alpha == lam.beta: those modules
    split and are out of scope here.
    """
    check_kind(kind)
    if br.kind != kind:
        raise ValueError(f"endpoint sequence is kind {br.kind}, asked for {kind}")
    if lam.size != br.n:
        raise ValueError(f"|lambda| = {lam.size} but the element moves {br.n} points")
    if kind == "D" and lam.alpha == lam.beta:
        raise ValueError(f"kind D trace undefined for equal components {lam}")
    if config is not None:
        config.check_rank(br.n)
    if cache_store is not None:
        cached = cache_store.get(kind, lam, br)
        if cached is not None:
            return cached
    if context is None:
        budget = config.memo_budget if config is not None else None
        context = MNContext(br, memo_budget=budget)
    value = half_power(l_prime(br)) * context.chain_sum(lam, len(context.steps))
    if cache_store is not None:
        cache_store.put(kind, lam, br, value)
    return value


class TraceCache:
    """Optional on-disk store of finished traces, one JSON file per key."""

    def __init__(self, directory):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    @staticmethod
    def _key(kind: str, lam: BiPartition, br: BrSequence) -> tuple:
        payload = json.dumps(
            {
                "kind": kind,
                "lambda": lam.to_json_obj(),
                "cycles": list(cycles_from_br(br)),
            },
            separators=(",", ":"),
        )
        return payload, hashlib.sha256(payload.encode()).hexdigest()

    def get(self, kind: str, lam: BiPartition, br: BrSequence) -> HalfLaurent | None:
        payload, digest = self._key(kind, lam, br)
        path = self.directory / f"{digest}.json"
        if not path.exists():
            return None
        doc = json.loads(path.read_text())
        if doc.get("key") != json.loads(payload):
            return None
        return HalfLaurent.from_json_obj(doc["value"])

    def put(self, kind: str, lam: BiPartition, br: BrSequence, value: HalfLaurent) -> None:
        payload, digest = self._key(kind, lam, br)
        doc = {"key": json.loads(payload), "value": value.to_json_obj()}
        (self.directory / f"{digest}.json").write_text(
            json.dumps(doc, separators=(",", ":"))
        )


# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------


def class_reps(n: int, kind: str = "B") -> list:
    """One signed cycle list per conjugacy class of the signed permutation
    group: a pair of partitions (plain lengths, barred lengths).  Barred
    cycles come first, shortest first."""
    if kind != "B":
        raise ValueError("class representatives are provided for kind B only")
    if n < 1:
        raise ValueError("n must be >= 1")
    reps = []
    for k in range(n + 1):
        for neg in partitions_of(k):
            for pos in partitions_of(n - k):
                reps.append(
                    tuple(-x for x in reversed(neg)) + tuple(reversed(pos))
                )
    return reps


def valid_d_cycle_lists(n: int) -> list:
    """Every kind D admissible signed cycle list of total n: the plain
    partitions, plus [-1, -c, plain...] for each 1 <= c <= n-1."""
    out = [tuple(reversed(p)) for p in partitions_of(n)]
    for c in range(1, n):
        for rest in partitions_of(n - 1 - c):
            out.append((-1, -c) + tuple(reversed(rest)))
    return out


def centralizer_order_B(cycles) -> int:
    """Centralizer order of a signed cycle type in the signed permutation
    group: prod over lengths i of (2i)^m * m! separately for plain and
    barred multiplicities m."""
    order = 1
    for counter in (Counter(c for c in cycles if c > 0), Counter(-c for c in cycles if c < 0)):
        for length, mult in counter.items():
            order *= (2 * length) ** mult * factorial(mult)
    return order


@cache
def st_bitableaux(lam: BiPartition) -> int:
    """Standard bitableaux count, by peeling single boxes."""
    if lam.size == 0:
        return 1
    return sum(st_bitableaux(inner) for inner, _ in remove_strips(lam, 1))


def identity_cycles(n: int) -> tuple:
    return (1,) * n
