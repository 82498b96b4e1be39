"""Generalized semiorders: convex ideals W^A for root-poset ideals A.

Includes the classical unit-interval embedding into type A, the inversion
fraction bound delta <= 1/2 with its pairing-injection mechanism, and the
exhaustive single-exit witness scan over root-poset ideals that underpins
the 1/3 bound for these sets (including the E8 scan, streamed).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import convex, weyl
from .convex import ConvexSet, WeylContext
from .rootsys import (
    RootPosetIdeal,
    RootSystem,
    build_root_system,
    ideal_from_members,
    iter_ideal_masks,
)


@dataclass(frozen=True)
class GeneralizedSemiorder:
    root_system: RootSystem
    ideal: RootPosetIdeal
    convex: ConvexSet

    @property
    def size(self) -> int:
        return len(self.convex)


def build(rs: RootSystem, members) -> GeneralizedSemiorder:
    """Construct W^A for a root-poset ideal given by positive-root indices."""
    ideal = ideal_from_members(rs, members)
    ctx = WeylContext(rs)
    c = convex.ideal_from_upper(ctx, ideal.members)
    return GeneralizedSemiorder(rs, ideal, c)


def from_unit_interval(values: Sequence[Fraction]) -> GeneralizedSemiorder:
    """Type A semiorder from sorted unit-interval representation values.

    The allowed inversions are the pairs closer than 1:
    A = {e_i - e_j : values[j] - values[i] < 1}, which is automatically an
    order ideal of the type A root poset (verified here).
    """
    values = [Fraction(v) for v in values]
    if any(values[i] > values[i + 1] for i in range(len(values) - 1)):
        raise ValueError("representation values must be sorted ascending")
    n = len(values)
    if n < 2:
        raise ValueError("need at least two values")
    rs = build_root_system("A", n - 1)
    members = []
    for idx, root in enumerate(rs.positive_roots):
        i = root.index(1)
        j = root.index(-1)
        if values[j] - values[i] < 1:
            members.append(idx)
    return build(rs, members)


def induced_semiorder_poset(values: Sequence[Fraction]):
    """The classical semiorder on the given points: x < y iff f(y) - f(x) >= 1."""
    from .posets import LabeledPoset

    values = [Fraction(v) for v in values]
    n = len(values)
    leq = tuple(
        tuple(i == j or values[j] - values[i] >= 1 for j in range(n)) for i in range(n)
    )
    return LabeledPoset(n, leq)


def max_inversion_fraction(gs: GeneralizedSemiorder) -> Fraction:
    return max(
        gs.convex.inversion_fraction(k)
        for k in range(gs.root_system.num_positive_roots)
    )


def check_half_bound(gs: GeneralizedSemiorder) -> bool:
    """Every positive root has inversion fraction at most 1/2 on W^A.

    Also verifies the mechanism behind the bound: for alpha in A, right
    multiplication by s_alpha injects the members having alpha as an
    inversion into the set.
    """
    c = gs.convex
    rs = gs.root_system
    ctx = c.ctx
    half = Fraction(1, 2)
    member_keys = {ctx.element_key(m) for m in c.members}
    for k in range(rs.num_positive_roots):
        if c.inversion_fraction(k) > half:
            return False
    for k in gs.ideal.members:
        refl = _reflection_element(rs, k)
        for m, inv in zip(c.members, c.inv_sets):
            if k in inv and ctx.element_key(weyl.multiply(m, refl)) not in member_keys:
                return False
    return True


def _reflection_element(rs: RootSystem, k: int):
    root = rs.positive_roots[k]
    from .rootsys import reflect
    from .linalg import neg

    action = []
    for j, beta in enumerate(rs.positive_roots):
        img = reflect(root, beta)
        if img in rs._index:
            action.append(rs._index[img] + 1)
        else:
            action.append(-(rs._index[neg(img)] + 1))
    return weyl.WeylElement(rs, tuple(action))


# -- single-exit witnesses over root-poset ideals -----------------------------


def exit_roots(rs: RootSystem, mask: int, i: int) -> List[int]:
    """Members beta of the ideal with s_i(beta) a positive root outside it."""
    out = []
    m = mask
    while m:
        low = m & -m
        j = low.bit_length() - 1
        m ^= low
        img = rs.simple_image(i, j)
        if img > 0 and not (mask >> (img - 1)) & 1:
            out.append(j)
    return out


def single_exit_simple(rs: RootSystem, ideal) -> Optional[Tuple[int, Tuple[int, ...]]]:
    """A simple root in the ideal moving at most one of its members out.

    Returns (simple index 1-based, exit root indices); None when no simple
    root qualifies (which would contradict the scan expectation, so callers
    treat None as a reportable failure).
    """
    mask = ideal.mask if isinstance(ideal, RootPosetIdeal) else int(ideal)
    if mask == 0:
        raise ValueError("the empty ideal has no simple root to offer")
    for i in range(1, rs.rank + 1):
        if not (mask >> rs.simple_indices[i - 1]) & 1:
            continue
        exits = exit_roots(rs, mask, i)
        if len(exits) <= 1:
            return i, tuple(exits)
    return None


def exit_failure_report(rs: RootSystem, ideal) -> Dict[int, List[Tuple[int, int]]]:
    """Per simple root in the ideal, the (beta, s_i beta) pairs that leave it."""
    mask = ideal.mask if isinstance(ideal, RootPosetIdeal) else int(ideal)
    report: Dict[int, List[Tuple[int, int]]] = {}
    for i in range(1, rs.rank + 1):
        if not (mask >> rs.simple_indices[i - 1]) & 1:
            continue
        report[i] = [
            (j, rs.simple_image(i, j) - 1) for j in exit_roots(rs, mask, i)
        ]
    return report


def scan_exit_witnesses(rs: RootSystem) -> Tuple[int, List[int]]:
    """Check every nonempty root-poset ideal for a single-exit simple root.

    Returns (number of nonempty ideals scanned, masks of failing ideals).
    Streams the ideals, so even the 25080 ideals of E8 fit in memory.
    """
    scanned = 0
    failures: List[int] = []
    for mask in iter_ideal_masks(rs):
        if mask == 0:
            continue
        scanned += 1
        if single_exit_simple(rs, mask) is None:
            failures.append(mask)
    return scanned, failures


def min_semiorder_balance(rs: RootSystem) -> Fraction:
    """Minimum balance over all non-singleton generalized semiorders."""
    ctx = WeylContext(rs)
    best: Optional[Fraction] = None
    for mask in iter_ideal_masks(rs):
        if mask == 0:
            continue
        members = frozenset(
            i for i in range(rs.num_positive_roots) if (mask >> i) & 1
        )
        c = convex.ideal_from_upper(ctx, members)
        if len(c) <= 1:
            continue
        b = c.balance_value()
        if best is None or b < best:
            best = b
    if best is None:
        raise ValueError("no non-singleton generalized semiorder exists")
    return best
