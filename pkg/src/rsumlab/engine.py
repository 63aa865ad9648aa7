"""The four sumset operators, computed by brute force over element pairs.

All operators return a fresh ElementSet; inputs are never mutated.  Pair
enumeration is O(|A|*|B|) with bitmap accumulation, which beats anything
cleverer at the group orders this library targets.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groups import Element, GroupError, GroupSpec
from .sets import ElementSet, _require_same_group


def _require_nonempty(s: ElementSet, name: str) -> None:
    if not s.bits:
        raise ValueError(f"{name} must be non-empty")


def sumset(a: ElementSet, b: ElementSet) -> ElementSet:
    """{a + b : a in A, b in B}."""
    g = _require_same_group(a, b)
    _require_nonempty(a, "A")
    _require_nonempty(b, "B")
    return generalized_restricted_sumset(a, b, ElementSet.empty(g))


def restricted_sumset(a: ElementSet, b: ElementSet) -> ElementSet:
    """{a + b : a in A, b in B, a != b}; equals the S = {0} case."""
    g = _require_same_group(a, b)
    _require_nonempty(a, "A")
    _require_nonempty(b, "B")
    return generalized_restricted_sumset(a, b, ElementSet(g, 1))


def generalized_restricted_sumset(a: ElementSet, b: ElementSet, s: ElementSet) -> ElementSet:
    """{a + b : a in A, b in B, a - b not in S}; S may be empty (plain sumset)."""
    g = _require_same_group(a, b, s)
    _require_nonempty(a, "A")
    _require_nonempty(b, "B")
    if len(g.factors) == 1:
        return ElementSet(g, _pairs_rank1(g.order, a.bits, b.bits, s.bits, 1))
    tables = _index_tables(g)
    if tables is not None:
        add, neg = tables
        out = 0
        sbits = s.bits
        a_idx = list(a.indices())
        for j in b.indices():
            row = add[j]
            if sbits:
                nrow = add[neg[j]]
                for i in a_idx:
                    if sbits >> nrow[i] & 1:
                        continue
                    out |= 1 << row[i]
            else:
                for i in a_idx:
                    out |= 1 << row[i]
        return ElementSet(g, out)
    out = 0
    sbits = s.bits
    a_elems = list(a.elements())
    for be in b.elements():
        for ae in a_elems:
            if sbits and sbits >> g.element_index(g.sub(ae, be)) & 1:
                continue
            out |= 1 << g.element_index(g.add(ae, be))
    return ElementSet(g, out)


def twisted_restricted_sumset(
    a: ElementSet, b: ElementSet, s: ElementSet, gamma: int
) -> ElementSet:
    """{a + b : a in A, b in B, a - gamma*b not in S} over a prime cyclic group.

    The set is well defined for any non-zero scalar; whether gamma satisfies
    a bound's hypothesis (gamma not in {0, -1}) is the bound checker's
    business, not this operator's.
    """
    g = _require_same_group(a, b, s)
    _require_nonempty(a, "A")
    _require_nonempty(b, "B")
    if not g.is_prime_cyclic:
        raise GroupError(f"twisted sumset needs a prime cyclic group, got {g}")
    p = g.order
    gamma %= p
    if gamma == 0:
        raise ValueError("gamma must be non-zero modulo p")
    return ElementSet(g, _pairs_rank1(p, a.bits, b.bits, s.bits, gamma))


_INDEX_TABLE_LIMIT = 512
_index_cache: dict[GroupSpec, tuple[list[list[int]], list[int]] | None] = {}


def _index_tables(g: GroupSpec):
    """Cached (add, neg) index tables for small higher-rank groups.

    add[j] is the translation-by-j row, so sums and differences become two
    list lookups per pair; groups above the size limit fall back to tuple
    arithmetic.
    """
    if g in _index_cache:
        return _index_cache[g]
    if g.order > _INDEX_TABLE_LIMIT:
        _index_cache[g] = None
        return None
    els = [g.index_element(i) for i in range(g.order)]
    add = [[g.element_index(g.add(e, f)) for e in els] for f in els]
    neg = [g.element_index(g.neg(e)) for e in els]
    _index_cache[g] = (add, neg)
    return _index_cache[g]


def _pairs_rank1(n: int, abits: int, bbits: int, sbits: int, gamma: int) -> int:
    """Pair loop on a rank-1 group, where indices are the residues themselves."""
    a_idx = []
    bits = abits
    while bits:
        low = bits & -bits
        a_idx.append(low.bit_length() - 1)
        bits ^= low
    out = 0
    bits = bbits
    while bits:
        low = bits & -bits
        j = low.bit_length() - 1
        bits ^= low
        gj = (gamma * j) % n
        for i in a_idx:
            if sbits >> ((i - gj) % n) & 1:
                continue
            out |= 1 << ((i + j) % n)
    return out


@dataclass(frozen=True)
class SumsetQuery:
    """One (A, B, S, optional twist) evaluation request.

    ``twist`` selects the gamma-twisted operator and is only meaningful on
    prime cyclic groups; ``twist=None`` with empty S is the plain sumset.
    """

    a: ElementSet
    b: ElementSet
    s: ElementSet
    twist: int | None = None

    def __post_init__(self):
        g = _require_same_group(self.a, self.b, self.s)
        _require_nonempty(self.a, "A")
        _require_nonempty(self.b, "B")
        if self.twist is not None:
            if not g.is_prime_cyclic:
                raise GroupError(f"twist requires a prime cyclic group, got {g}")
            if self.twist % g.order == 0:
                raise ValueError("twist must be non-zero modulo p")

    @property
    def group(self) -> GroupSpec:
        return self.a.group

    def evaluate(self) -> ElementSet:
        if self.twist is not None:
            return twisted_restricted_sumset(self.a, self.b, self.s, self.twist)
        return generalized_restricted_sumset(self.a, self.b, self.s)

    def cardinality(self) -> int:
        return self.evaluate().size
