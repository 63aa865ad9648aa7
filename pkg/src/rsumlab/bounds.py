"""Bound catalog, single-triple checks, exhaustive sweeps, witness search.

Every bound has the shape  lhs >= min(linear(|A|, |B|, |S|), p(G))  for one
of the four operators, so the catalog is a table of coefficients plus an
applicability predicate per kind.  Exhaustive sweeps fix (A, S) and evaluate
all B at once through the mask tables in ``_masks``; a scalar fallback walks
the triple stream one check at a time and is kept bit-for-bit consistent
with the vectorized path (tests compare the two).

Sweeps shard over the position of A in the enumeration stream.  Merging is
order-independent: counters add up and witness lists are re-sorted by a
canonical triple key, so any shard count yields an identical summary.
"""

from __future__ import annotations

import heapq
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _masks
from .engine import (
    generalized_restricted_sumset,
    restricted_sumset,
    sumset,
    twisted_restricted_sumset,
)
from .groups import GroupSpec, format_group
from .sets import (
    ElementSet,
    EnumerationPlan,
    enumerate_triples,
    format_set,
    plan_a_masks,
    plan_s_masks,
)

DEFAULT_WORK_CEILING = 10 ** 9
DEFAULT_MAX_WITNESSES = 100


class WorkCeilingExceeded(RuntimeError):
    """The sweep would exceed the configured number of (A,B,S,kind) checks."""


class Operator(Enum):
    PLAIN = "plain"
    RESTRICTED = "restricted"
    GENERAL = "general"
    TWISTED = "twisted"


class BoundKind(Enum):
    """The catalog of lower bounds; values are the stable CLI names."""

    CAUCHY_DAVENPORT = "cd"
    KNESER_CD = "kneser"
    ERDOS_HEILBRONN = "eh"
    ANR = "anr"
    KAROLYI = "karolyi"
    BALISTER_WHEELER = "bw"
    PAN_SUN = "pansun"
    THM1 = "thm1"
    PRIME_POWER_S = "ppow"
    THM2 = "thm2"
    PROP34 = "prop34"
    TWISTED_PAN_SUN = "twisted"

    @property
    def info(self) -> "_KindInfo":
        return _KIND_INFO[self]

    @property
    def operator(self) -> Operator:
        return self.info.operator


@dataclass(frozen=True)
class _KindInfo:
    """rhs = min(ca*|A| + cb*|B| + ch*|S| + c0, p(G)) plus applicability data."""

    operator: Operator
    ca: int
    cb: int
    ch: int
    c0: int
    needs_s: bool = False
    equal_sets: bool = False  # bound is about A (+) A
    description: str = ""


_KIND_INFO = {
    BoundKind.CAUCHY_DAVENPORT: _KindInfo(
        Operator.PLAIN, 1, 1, 0, -1, description="|A+B| >= min(|A|+|B|-1, p) on Z_p"
    ),
    BoundKind.KNESER_CD: _KindInfo(
        Operator.PLAIN, 1, 1, 0, -1, description="|A+B| >= min(|A|+|B|-1, p(G))"
    ),
    BoundKind.ERDOS_HEILBRONN: _KindInfo(
        Operator.RESTRICTED, 2, 0, 0, -3, equal_sets=True,
        description="|A(+)A| >= min(2|A|-3, p) on Z_p",
    ),
    BoundKind.ANR: _KindInfo(
        Operator.RESTRICTED, 1, 1, 0, -2,
        description="|A(+)B| >= min(|A|+|B|-2, p) on Z_p when |A| != |B|",
    ),
    BoundKind.KAROLYI: _KindInfo(
        Operator.RESTRICTED, 2, 0, 0, -3, equal_sets=True,
        description="|A(+)A| >= min(2|A|-3, p(G))",
    ),
    BoundKind.BALISTER_WHEELER: _KindInfo(
        Operator.RESTRICTED, 1, 1, 0, -3,
        description="|A(+)B| >= min(|A|+|B|-3, p(G))",
    ),
    BoundKind.PAN_SUN: _KindInfo(
        Operator.GENERAL, 1, 1, -1, -2, needs_s=True,
        description="|A+_S B| >= min(|A|+|B|-|S|-2, p) on Z_p when |S| < p",
    ),
    BoundKind.THM1: _KindInfo(
        Operator.GENERAL, 1, 1, -3, 0, needs_s=True,
        description="|A+_S B| >= min(|A|+|B|-3|S|, p(G))",
    ),
    BoundKind.PRIME_POWER_S: _KindInfo(
        Operator.GENERAL, 1, 1, -2, -1, needs_s=True,
        description="|A+_S B| >= min(|A|+|B|-2|S|-1, p) on cyclic prime-power groups",
    ),
    BoundKind.THM2: _KindInfo(
        Operator.GENERAL, 1, 1, -1, -2, needs_s=True,
        description="|A+_S B| >= min(|A|+|B|-|S|-2, p(G)) when min size >= 9|S|^2-5|S|-3",
    ),
    BoundKind.PROP34: _KindInfo(
        Operator.GENERAL, 1, 1, -1, -2, needs_s=True,
        description="cyclic prime-power variant with size floor 6|S|^2-5",
    ),
    BoundKind.TWISTED_PAN_SUN: _KindInfo(
        Operator.TWISTED, 1, 1, -1, -2, needs_s=True,
        description="|{a+b : a-gamma*b not in S}| >= min(|A|+|B|-|S|-2, p) on Z_p",
    ),
}

ALL_KINDS = tuple(BoundKind)


def kind_from_name(name: str) -> BoundKind:
    try:
        return BoundKind(name)
    except ValueError:
        valid = ", ".join(k.value for k in ALL_KINDS)
        raise ValueError(f"unknown bound kind {name!r}; expected one of: {valid}") from None


def thm2_size_floor(h: int) -> int:
    return 9 * h * h - 5 * h - 3


def prop34_size_floor(h: int) -> int:
    return 6 * h * h - 5


def bound_value(
    kind: BoundKind, a_size: int, b_size: int, s_size: int, p: int, gamma: int | None = None
) -> int:
    """The right-hand side min-expression; may be <= 0 (then trivially met)."""
    info = kind.info
    return min(info.ca * a_size + info.cb * b_size + info.ch * s_size + info.c0, p)


def applicability(
    kind: BoundKind,
    group: GroupSpec,
    a: ElementSet,
    b: ElementSet,
    s: ElementSet,
    gamma: int | None = None,
) -> tuple[bool, str]:
    """Whether every stated hypothesis of the bound holds for this triple.

    The reason string names the first failed hypothesis ("" when applicable).
    """
    info = kind.info
    p = group.least_prime
    if kind in (
        BoundKind.CAUCHY_DAVENPORT,
        BoundKind.ERDOS_HEILBRONN,
        BoundKind.ANR,
        BoundKind.PAN_SUN,
        BoundKind.TWISTED_PAN_SUN,
    ) and not group.is_prime_cyclic:
        return False, "group not prime cyclic"
    if kind in (BoundKind.PRIME_POWER_S, BoundKind.PROP34) and not group.is_cyclic_prime_power:
        return False, "group not a cyclic prime power"
    if info.equal_sets and a != b:
        return False, "A != B"
    if kind is BoundKind.ANR and a.size == b.size:
        return False, "|A| = |B|"
    if info.needs_s and s.size == 0:
        return False, "S is empty"
    if kind in (BoundKind.PAN_SUN, BoundKind.TWISTED_PAN_SUN) and s.size >= p:
        return False, f"|S| = {s.size} not < p = {p}"
    if kind is BoundKind.TWISTED_PAN_SUN:
        if gamma is None:
            return False, "gamma missing"
        if gamma % group.order == 0:
            return False, "gamma = 0 excluded"
        if gamma % group.order == group.order - 1:
            return False, "gamma = -1 excluded"
    if kind is BoundKind.THM2 and min(a.size, b.size) < thm2_size_floor(s.size):
        return False, (
            f"min(|A|,|B|) = {min(a.size, b.size)} < 9|S|^2-5|S|-3 = {thm2_size_floor(s.size)}"
        )
    if kind is BoundKind.PROP34 and min(a.size, b.size) < prop34_size_floor(s.size):
        return False, (
            f"min(|A|,|B|) = {min(a.size, b.size)} < 6|S|^2-5 = {prop34_size_floor(s.size)}"
        )
    return True, ""


def operator_lhs(
    kind: BoundKind, a: ElementSet, b: ElementSet, s: ElementSet, gamma: int | None = None
) -> int:
    op = kind.operator
    if op is Operator.PLAIN:
        return sumset(a, b).size
    if op is Operator.RESTRICTED:
        return restricted_sumset(a, b).size
    if op is Operator.GENERAL:
        return generalized_restricted_sumset(a, b, s).size
    if gamma is None:
        raise ValueError("twisted bound needs gamma")
    return twisted_restricted_sumset(a, b, s, gamma).size


@dataclass(frozen=True)
class BoundReport:
    """Outcome of checking one (A, B, S[, gamma]) triple against one bound."""

    kind: BoundKind
    a: ElementSet
    b: ElementSet
    s: ElementSet
    gamma: int | None
    lhs: int
    rhs: int
    applicable: bool
    reason: str
    satisfied: bool
    tight: bool
    hypothesis_dropped: bool = False

    def to_row(self) -> dict:
        return {
            "kind": self.kind.value,
            "A": format_set(self.a),
            "B": format_set(self.b),
            "S": format_set(self.s),
            "gamma": self.gamma,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "tight": self.tight,
        }


def check_triple(
    group: GroupSpec,
    a: ElementSet,
    b: ElementSet,
    s: ElementSet,
    kind: BoundKind,
    gamma: int | None = None,
) -> BoundReport:
    """Evaluate one bound on one triple; operator errors propagate."""
    for part in (a, b, s):
        if part.group != group:
            raise ValueError("triple does not belong to the stated group")
    lhs = operator_lhs(kind, a, b, s, gamma)
    rhs = bound_value(kind, a.size, b.size, s.size, group.least_prime, gamma)
    applicable, reason = applicability(kind, group, a, b, s, gamma)
    satisfied = (not applicable) or lhs >= rhs
    tight = applicable and lhs == rhs
    return BoundReport(
        kind=kind, a=a, b=b, s=s, gamma=gamma, lhs=lhs, rhs=rhs,
        applicable=applicable, reason=reason, satisfied=satisfied, tight=tight,
    )


# -- sweep machinery -----------------------------------------------------------


@dataclass(frozen=True)
class _SweepConfig:
    kinds: tuple[BoundKind, ...]
    gammas: tuple[int, ...]
    collect_violations: bool
    collect_tight: bool
    ignore_applicability: bool
    max_witnesses: int
    prune: bool
    force_scalar: bool


class _TopK:
    """Keep the cap smallest integer keys with their payloads, plus a total."""

    def __init__(self, cap: int):
        self.cap = cap
        self.heap: list[tuple[int, tuple]] = []  # (-key, payload)
        self.total = 0

    @property
    def threshold(self) -> int | None:
        """Keys >= this can never enter the heap; None while not yet full."""
        if self.cap <= 0:
            return -1
        if len(self.heap) < self.cap:
            return None
        return -self.heap[0][0]

    def offer(self, key: int, payload: tuple) -> None:
        if self.cap <= 0:
            return
        if len(self.heap) < self.cap:
            heapq.heappush(self.heap, (-key, payload))
        elif key < -self.heap[0][0]:
            heapq.heapreplace(self.heap, (-key, payload))

    def record(self, key: int, payload: tuple) -> None:
        self.total += 1
        self.offer(key, payload)

    def merge(self, other: "_TopK") -> None:
        self.total += other.total
        for negkey, payload in other.heap:
            self.offer(-negkey, payload)

    def sorted_payloads(self) -> list[tuple]:
        return [p for _, p in sorted(((-nk, p) for nk, p in self.heap))]


def _triple_key(order: int, amask: int, bmask: int, smask: int, kind: BoundKind, gamma) -> int:
    span = 1 << order
    code = 0 if gamma is None else (gamma % order) + 1
    key = ((amask * span + bmask) * span + smask)
    return (key * len(ALL_KINDS) + list(ALL_KINDS).index(kind)) * (order + 2) + code


def _kind_group_flags(kind: BoundKind, group: GroupSpec) -> tuple[bool, bool]:
    """(operator defined on this group, group-level hypotheses hold)."""
    if kind.operator is Operator.TWISTED:
        defined = group.is_prime_cyclic
        return defined, defined
    if kind in (BoundKind.CAUCHY_DAVENPORT, BoundKind.ERDOS_HEILBRONN, BoundKind.ANR,
                BoundKind.PAN_SUN):
        return True, group.is_prime_cyclic
    if kind in (BoundKind.PRIME_POWER_S, BoundKind.PROP34):
        return True, group.is_cyclic_prime_power
    return True, True


def _min_lhs_floor(kind: BoundKind, m: int, b_min: int, h: int) -> int:
    h_eff = {Operator.PLAIN: 0, Operator.RESTRICTED: 1}.get(kind.operator, h)
    return max(m, b_min) - h_eff


def _prunable(kind: BoundKind, m: int, h: int, plan: EnumerationPlan, p: int) -> bool:
    info = kind.info
    rhs_max = min(info.ca * m + info.cb * plan.b_max + info.ch * h + info.c0, p)
    return _min_lhs_floor(kind, m, plan.b_min, h) >= rhs_max


@dataclass
class _ShardResult:
    violations: _TopK
    tight: _TopK


def _estimate_checks(plan: EnumerationPlan, cfg: _SweepConfig) -> int:
    mult = 0
    for kind in cfg.kinds:
        mult += len(cfg.gammas) if kind.operator is Operator.TWISTED else 1
    return plan.count_triples() * mult


def _shard_worker(args) -> _ShardResult:
    plan, cfg, shard_index, shard_count = args
    use_scalar = (
        cfg.force_scalar
        or plan.mode == "sampled"
        or plan.group.order > _masks.MAX_TABLE_ORDER
    )
    if use_scalar:
        return _scalar_shard(plan, cfg, shard_index, shard_count)
    return _vector_shard(plan, cfg, shard_index, shard_count)


def _scalar_shard(
    plan: EnumerationPlan, cfg: _SweepConfig, shard_index: int, shard_count: int
) -> _ShardResult:
    g = plan.group
    res = _ShardResult(_TopK(cfg.max_witnesses), _TopK(cfg.max_witnesses))
    for a, b, s in enumerate_triples(plan, shard_index, shard_count):
        for kind in cfg.kinds:
            defined, _ = _kind_group_flags(kind, g)
            if not defined:
                continue
            gammas = cfg.gammas if kind.operator is Operator.TWISTED else (None,)
            for gamma in gammas:
                rep = check_triple(g, a, b, s, kind, gamma)
                key = _triple_key(g.order, a.bits, b.bits, s.bits, kind, gamma)
                payload = (a.bits, b.bits, s.bits, kind.value, gamma, rep.lhs, rep.rhs)
                if cfg.ignore_applicability:
                    if cfg.collect_violations and rep.lhs < rep.rhs:
                        res.violations.record(key, payload)
                    continue
                if cfg.collect_violations and not rep.satisfied:
                    res.violations.record(key, payload)
                if cfg.collect_tight and rep.tight:
                    res.tight.record(key, payload)
    return res


def _vector_shard(
    plan: EnumerationPlan, cfg: _SweepConfig, shard_index: int, shard_count: int
) -> _ShardResult:
    g = plan.group
    n = g.order
    p = g.least_prime
    t = _masks.tables_for(g)
    pops = t.pops
    sizes = pops.astype(np.int64)
    in_b_range = (sizes >= plan.b_min) & (sizes <= plan.b_max) & (sizes > 0)
    res = _ShardResult(_TopK(cfg.max_witnesses), _TopK(cfg.max_witnesses))
    kinds = [k for k in cfg.kinds if _kind_group_flags(k, g)[0]]
    s_masks = list(plan_s_masks(plan))

    def harvest(collector: _TopK, hits: np.ndarray, amask, smask, kind, gamma, lhs_vec, rhs_vec):
        idxs = np.nonzero(hits)[0]
        if idxs.size == 0:
            return
        collector.total += int(idxs.size)
        # every key in this batch exceeds key(amask, 0, 0), so a full heap
        # whose cutoff is below that lower bound cannot change
        thresh = collector.threshold
        if thresh is not None and _triple_key(n, amask, 0, 0, kind, gamma) >= thresh:
            return
        for bm in idxs:
            bmask = int(bm)
            key = _triple_key(n, amask, bmask, smask, kind, gamma)
            collector.offer(key, (amask, bmask, smask, kind.value, gamma,
                                  int(lhs_vec[bmask]), int(rhs_vec[bmask])))

    for pos, amask in enumerate(plan_a_masks(plan)):
        if pos % shard_count != shard_index:
            continue
        m = amask.bit_count()
        plain_u = None
        restr_u = None
        for smask in s_masks:
            h = smask.bit_count()
            active: list[tuple[BoundKind, int | None]] = []
            for kind in kinds:
                if cfg.prune and _prunable(kind, m, h, plan, p):
                    continue
                if kind.operator is Operator.TWISTED:
                    active.extend((kind, gamma) for gamma in cfg.gammas)
                else:
                    active.append((kind, None))
            general_u = None
            twisted_u: dict[int, np.ndarray] = {}
            for kind, gamma in active:
                op = kind.operator
                if op is Operator.PLAIN:
                    if plain_u is None:
                        plain_u = t.union_table(t.cmasks_plain(amask))
                    u = plain_u
                elif op is Operator.RESTRICTED:
                    if restr_u is None:
                        restr_u = t.union_table(t.cmasks_restricted(amask))
                    u = restr_u
                elif op is Operator.GENERAL:
                    if general_u is None:
                        general_u = t.union_table(t.cmasks_general(amask, smask))
                    u = general_u
                else:
                    if gamma not in twisted_u:
                        twisted_u[gamma] = t.union_table(
                            t.cmasks_general(amask, smask, gamma=gamma)
                        )
                    u = twisted_u[gamma]
                lhs = pops[u].astype(np.int64)
                info = kind.info
                rhs = np.minimum(info.ca * m + info.cb * sizes + info.ch * h + info.c0, p)
                if cfg.ignore_applicability:
                    app = in_b_range
                else:
                    ok, _ = _applicable_vector(kind, g, amask, m, h, gamma, sizes)
                    if ok is None:
                        continue
                    app = in_b_range & ok
                if cfg.collect_violations:
                    harvest(res.violations, app & (lhs < rhs), amask, smask, kind, gamma,
                            lhs, rhs)
                if cfg.collect_tight and not cfg.ignore_applicability:
                    harvest(res.tight, app & (lhs == rhs), amask, smask, kind, gamma, lhs, rhs)
    return res


def _applicable_vector(kind, g, amask, m, h, gamma, sizes):
    """Per-B applicability as a bool vector (or (None, reason) to skip the kind)."""
    _, group_ok = _kind_group_flags(kind, g)
    if not group_ok:
        return None, "group hypothesis fails"
    info = kind.info
    if info.needs_s and h == 0:
        return None, "S is empty"
    if kind in (BoundKind.PAN_SUN, BoundKind.TWISTED_PAN_SUN) and h >= g.least_prime:
        return None, "|S| >= p"
    if kind is BoundKind.TWISTED_PAN_SUN:
        gm = gamma % g.order
        if gm == 0 or gm == g.order - 1:
            return None, "gamma excluded"
    if info.equal_sets:
        vec = np.zeros(1 << g.order, dtype=bool)
        vec[amask] = True
        return vec, ""
    if kind is BoundKind.ANR:
        return sizes != m, ""
    if kind is BoundKind.THM2:
        floor = thm2_size_floor(h)
        return (sizes >= floor) & np.bool_(m >= floor), ""
    if kind is BoundKind.PROP34:
        floor = prop34_size_floor(h)
        return (sizes >= floor) & np.bool_(m >= floor), ""
    return np.ones(1 << g.order, dtype=bool), ""


# -- public sweep entry points ---------------------------------------------------


@dataclass
class VerificationSummary:
    """Outcome of one sweep: counters plus capped, key-sorted witness lists."""

    plan: EnumerationPlan
    kinds: tuple[BoundKind, ...]
    gammas: tuple[int, ...]
    triples_checked: int
    checks_planned: int
    violation_count: int
    tight_count: int
    violations: list[BoundReport]
    tight: list[BoundReport]
    elapsed_ms: int
    pruned: bool
    max_witnesses: int
    work_ceiling: int

    @property
    def ok(self) -> bool:
        return self.violation_count == 0

    def to_json_dict(self, include_timing: bool = True) -> dict:
        plan = self.plan
        return {
            "group": format_group(plan.group),
            "kinds": [k.value for k in self.kinds],
            "constraints": {
                "a_size": [plan.a_min, plan.a_max],
                "b_size": [plan.b_min, plan.b_max],
                "s_size": [plan.s_min, plan.s_max],
                "mode": plan.mode,
                "sample_count": plan.sample_count,
                "seed": plan.seed,
                "canonicalize": plan.canonicalize,
                "canonicalize_s": plan.canonicalize_s,
                "gammas": list(self.gammas),
                "prune": self.pruned,
                "max_witnesses": self.max_witnesses,
                "work_ceiling": self.work_ceiling,
            },
            "triples_checked": self.triples_checked,
            "checks_planned": self.checks_planned,
            "violation_count": self.violation_count,
            "tight_count": self.tight_count,
            "violations": [r.to_row() for r in self.violations],
            "tight": [r.to_row() for r in self.tight],
            "elapsed_ms": self.elapsed_ms if include_timing else 0,
        }

    def to_json(self, include_timing: bool = True) -> str:
        return json.dumps(self.to_json_dict(include_timing), sort_keys=True, indent=2)

    def to_csv(self) -> str:
        lines = ["group,kind,A,B,S,gamma,lhs,rhs,tight"]
        gname = format_group(self.plan.group)
        for rep in list(self.violations) + list(self.tight):
            row = rep.to_row()
            gamma = "" if row["gamma"] is None else str(row["gamma"])
            lines.append(
                f'{gname},{row["kind"]},"{row["A"]}","{row["B"]}","{row["S"]}",'
                f'{gamma},{row["lhs"]},{row["rhs"]},{str(row["tight"]).lower()}'
            )
        return "\n".join(lines) + "\n"


def _payload_report(plan: EnumerationPlan, payload: tuple, hypothesis_dropped: bool) -> BoundReport:
    g = plan.group
    amask, bmask, smask, kind_name, gamma, lhs, rhs = payload
    a, b, s = ElementSet(g, amask), ElementSet(g, bmask), ElementSet(g, smask)
    kind = BoundKind(kind_name)
    if hypothesis_dropped:
        # the formula was evaluated as if applicable; flag it so readers know
        applicable, reason = True, "hypotheses deliberately dropped"
    else:
        applicable, reason = applicability(kind, g, a, b, s, gamma)
    satisfied = (not applicable) or lhs >= rhs
    return BoundReport(
        kind=kind, a=a, b=b, s=s, gamma=gamma, lhs=lhs, rhs=rhs,
        applicable=applicable, reason=reason, satisfied=satisfied,
        tight=applicable and lhs == rhs, hypothesis_dropped=hypothesis_dropped,
    )


def _normalize_gammas(plan: EnumerationPlan, kinds, gammas) -> tuple[int, ...]:
    if not any(k.operator is Operator.TWISTED for k in kinds):
        return ()
    g = plan.group
    if not g.is_prime_cyclic:
        return ()
    p = g.order
    if gammas is None:
        vals = range(1, max(p - 1, 2))  # all gamma not in {0, -1}
    else:
        vals = gammas
    out = sorted({v % p for v in vals})
    if any(v == 0 for v in out):
        raise ValueError("gamma must be non-zero modulo p")
    if (plan.canonicalize or plan.canonicalize_s) and any(v != 1 for v in out):
        raise ValueError(
            "canonicalized enumeration is unsound for twisted bounds with gamma != 1; "
            "disable canonicalization"
        )
    return tuple(out)


def _run_sweep(
    plan: EnumerationPlan,
    cfg: _SweepConfig,
    shard_count: int,
    threads: int,
) -> tuple[_TopK, _TopK]:
    jobs = [(plan, cfg, i, shard_count) for i in range(shard_count)]
    if threads > 1 and shard_count > 1:
        with ProcessPoolExecutor(max_workers=min(threads, shard_count)) as pool:
            results = list(pool.map(_shard_worker, jobs))
    else:
        results = [_shard_worker(job) for job in jobs]
    violations = _TopK(cfg.max_witnesses)
    tight = _TopK(cfg.max_witnesses)
    for r in results:
        violations.merge(r.violations)
        tight.merge(r.tight)
    return violations, tight


def exhaustive_verify(
    plan: EnumerationPlan,
    kinds,
    *,
    gammas=None,
    max_witnesses: int = DEFAULT_MAX_WITNESSES,
    work_ceiling: int = DEFAULT_WORK_CEILING,
    collect_tight: bool = True,
    prune: bool = False,
    shard_count: int = 1,
    threads: int = 1,
    force_scalar: bool = False,
) -> VerificationSummary:
    """Check every enumerated triple against every applicable kind.

    The summary is deterministic and independent of shard_count/threads.
    ``prune`` skips (|A|, |S|) classes whose trivial floor
    max(|A|,|B|) - |S| already meets the largest possible rhs; it preserves
    the violation report exactly but suppresses tight collection.
    """
    kinds = tuple(kinds)
    if not kinds:
        raise ValueError("at least one bound kind required")
    gammas = _normalize_gammas(plan, kinds, gammas)
    if prune:
        collect_tight = False
    cfg = _SweepConfig(
        kinds=kinds, gammas=gammas, collect_violations=True, collect_tight=collect_tight,
        ignore_applicability=False, max_witnesses=max_witnesses, prune=prune,
        force_scalar=force_scalar,
    )
    checks = _estimate_checks(plan, cfg)
    if checks > work_ceiling:
        raise WorkCeilingExceeded(
            f"planned {checks} checks exceed the work ceiling {work_ceiling}"
        )
    start = time.perf_counter()
    violations, tight = _run_sweep(plan, cfg, shard_count, threads)
    elapsed_ms = int((time.perf_counter() - start) * 1000)
    return VerificationSummary(
        plan=plan,
        kinds=kinds,
        gammas=gammas,
        triples_checked=plan.count_triples(),
        checks_planned=checks,
        violation_count=violations.total,
        tight_count=tight.total,
        violations=[_payload_report(plan, p, False) for p in violations.sorted_payloads()],
        tight=[_payload_report(plan, p, False) for p in tight.sorted_payloads()],
        elapsed_ms=elapsed_ms,
        pruned=prune,
        max_witnesses=max_witnesses,
        work_ceiling=work_ceiling,
    )


def search_witnesses(
    plan: EnumerationPlan,
    kind: BoundKind,
    mode: str = "tight",
    *,
    gammas=None,
    max_witnesses: int = DEFAULT_MAX_WITNESSES,
    work_ceiling: int = DEFAULT_WORK_CEILING,
    shard_count: int = 1,
    threads: int = 1,
    force_scalar: bool = False,
) -> list[BoundReport]:
    """Tight mode: triples with lhs = rhs under full applicability.

    Counterexample mode: triples violating the bare formula with every
    hypothesis deliberately dropped (reports are flagged); an empty result
    is a perfectly good outcome, never an error.
    """
    if mode not in ("tight", "counterexample"):
        raise ValueError(f"unknown search mode {mode!r}")
    counterexample = mode == "counterexample"
    gammas = _normalize_gammas(plan, (kind,), gammas)
    cfg = _SweepConfig(
        kinds=(kind,), gammas=gammas,
        collect_violations=counterexample, collect_tight=not counterexample,
        ignore_applicability=counterexample, max_witnesses=max_witnesses, prune=False,
        force_scalar=force_scalar,
    )
    checks = _estimate_checks(plan, cfg)
    if checks > work_ceiling:
        raise WorkCeilingExceeded(
            f"planned {checks} checks exceed the work ceiling {work_ceiling}"
        )
    violations, tight = _run_sweep(plan, cfg, shard_count, threads)
    bucket = violations if counterexample else tight
    return [_payload_report(plan, p, counterexample) for p in bucket.sorted_payloads()]
