"""Verification campaigns tying the modules together.

Each campaign produces a :class:`VerificationReport` whose records compare
exact computed values against exact expected values (or inequalities whose
thresholds are exact rationals).  Reports serialize to byte-stable JSON:
record order is fixed and the wall-clock duration is kept out of the JSON
body.  A failing theorem-level record carries a reproducer payload.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from . import alcove, convex, coxgen, posets, semiorder, weyl
from .convex import CoxContext, WeylContext
from .rootsys import RootSystem, build_root_system, iter_ideal_masks

THIRD = Fraction(1, 3)


def fmt(value) -> str:
    """Deterministic plain-text rendering of exact values."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(fmt(v) for v in value) + "]"
    return str(value)


@dataclass
class Record:
    instance: str
    value: str
    expected: str
    passed: bool
    reproducer: Optional[str] = None


@dataclass
class VerificationReport:
    campaign: str
    records: List[Record] = field(default_factory=list)
    duration: float = 0.0

    def check(self, instance: str, value, expected, passed: Optional[bool] = None,
              reproducer=None) -> bool:
        if passed is None:
            passed = value == expected
        self.records.append(
            Record(instance, fmt(value), fmt(expected), bool(passed),
                   None if reproducer is None else fmt(reproducer))
        )
        return bool(passed)

    @property
    def total(self) -> int:
        return len(self.records)

    @property
    def passed(self) -> int:
        return sum(1 for r in self.records if r.passed)

    @property
    def all_passed(self) -> bool:
        return self.passed == self.total

    def to_json(self) -> str:
        payload = {
            "schema": 1,
            "campaign": self.campaign,
            "records": [
                {
                    "instance": r.instance,
                    "value": r.value,
                    "expected": r.expected,
                    "pass": r.passed,
                    **({"reproducer": r.reproducer} if r.reproducer else {}),
                }
                for r in self.records
            ],
            "summary": {
                "total": self.total,
                "passed": self.passed,
                "failed": self.total - self.passed,
            },
        }
        return json.dumps(payload, indent=2, sort_keys=True)

    def table(self) -> str:
        lines = [f"campaign: {self.campaign}"]
        for r in self.records:
            mark = "ok " if r.passed else "FAIL"
            lines.append(f"  [{mark}] {r.instance}: {r.value} (expected {r.expected})")
            if r.reproducer and not r.passed:
                lines.append(f"         reproducer: {r.reproducer}")
        lines.append(
            f"  {self.passed}/{self.total} passed in {self.duration:.2f}s"
        )
        return "\n".join(lines)


def _timed(campaign: str, body: Callable[[VerificationReport], None]) -> VerificationReport:
    report = VerificationReport(campaign)
    t0 = time.perf_counter()
    body(report)
    report.duration = time.perf_counter() - t0
    return report


# -- campaign: per-type parameter table ---------------------------------------

PARAM_ROWS: Dict[str, Tuple[int, ...]] = {
    # family -> ranks spot-checked for the rank-parametric rows
    "A": (1, 2, 3, 5, 8),
    "B": (2, 3, 5, 8),
    "C": (2, 3, 5, 8),
    "D": (4, 5, 8),
}


def _expected_params(family: str, rank: int):
    if family == "A":
        return (1, 1, rank, Fraction(1), Fraction(1))
    if family in ("B", "C"):
        return (1, 2, 2 * rank - 1, Fraction(1), Fraction(2))
    if family == "D":
        return (1, 2, 2 * rank - 3, Fraction(2), Fraction(4))
    fixed = {
        ("E", 6): (1, 3, 11, Fraction(8, 3), Fraction(8)),
        ("E", 7): (1, 4, 17, Fraction(3), Fraction(12)),
        ("E", 8): (2, 6, 29, Fraction(7, 4), Fraction(21, 2)),
        ("F", 4): (2, 4, 11, Fraction(7, 8), Fraction(7, 2)),
        # The published table lists 5/2 in the last column for G2, which
        # contradicts its own m = 1/2 and m1 = 3 entries; the defining
        # product m * m1 = 3/2 is used here.
        ("G", 2): (2, 3, 5, Fraction(1, 2), Fraction(3, 2)),
    }
    return fixed[(family, rank)]


def verify_params_table() -> VerificationReport:
    def body(report: VerificationReport):
        for family, ranks in PARAM_ROWS.items():
            for rank in ranks:
                rs = build_root_system(family, rank)
                p = alcove.alcove_params(rs)
                got = (p.min_mark, p.max_mark, p.height, p.margin, p.exponent)
                report.check(f"{family}{rank}", got, _expected_params(family, rank))
        for family, rank in (("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)):
            rs = build_root_system(family, rank)
            p = alcove.alcove_params(rs)
            got = (p.min_mark, p.max_mark, p.height, p.margin, p.exponent)
            report.check(f"{family}{rank}", got, _expected_params(family, rank))

    return _timed("table1", body)


# -- campaign: minimum balance over convex ideals ------------------------------

CONJECTURE_TYPES: Tuple[Tuple[str, int], ...] = (
    ("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("G", 2), ("A", 4),
)


def verify_conjecture(rs: RootSystem) -> VerificationReport:
    def body(report: VerificationReport):
        ctx = WeylContext(rs)
        best = None
        argmin = []
        violations = []
        for c in convex.enumerate_convex_ideals(ctx):
            if len(c) <= 1:
                continue
            b = c.balance_value()
            if b < THIRD:
                violations.append(c)
            if best is None or b < best:
                best, argmin = b, [c]
            elif b == best:
                argmin.append(c)
        label = rs.root_label()
        if rs.family == "A" and rs.rank == 1:
            report.check(f"{label} min balance", best, Fraction(1, 2))
        else:
            report.check(f"{label} min balance", best, THIRD)
        report.check(
            f"{label} violations below 1/3",
            len(violations),
            0,
            reproducer=[
                "A=" + ",".join(map(str, c.canonical_upper)) for c in violations
            ] or None,
        )
        report.check(f"{label} equality witnesses", len(argmin) > 0, True)

    return _timed(f"conjecture {rs.root_label()}", body)


# -- campaign: the four equality intervals and the claw-chain family ----------

EQUALITY_CASES: Tuple[Tuple[str, int, Tuple[int, ...], bool], ...] = (
    # (family, rank, word, group route feasible)
    ("A", 2, (1, 2), True),
    ("D", 4, (4, 2, 3, 1), True),
    ("B", 3, (3, 2, 3, 1), True),
    ("E", 6, (6, 3, 2, 4, 1, 3, 5), False),
)


def verify_equality_cases() -> VerificationReport:
    def body(report: VerificationReport):
        for family, rank, word, group_route in EQUALITY_CASES:
            rs = build_root_system(family, rank)
            sys = coxgen.WeylSystem(rs)
            label = f"{family}{rank} w={''.join(map(str, word))}"
            heap = posets.heap_from_word(sys, word)
            report.check(f"{label} heap balance", heap.balance(), THIRD)
            if group_route:
                ctx = WeylContext(rs)
                c = convex.interval_left(ctx, ctx.from_word(word))
                report.check(f"{label} interval balance", c.balance_value(), THIRD)
        for k in range(1, 7):
            length = 2 ** (k - 1)
            claw = posets.claw_chain(k, length)
            report.check(
                f"claw({k},{length}) ideal count",
                claw.ideal_count(cap=None),
                2 ** k + length,
            )
            report.check(f"claw({k},{length}) balance", claw.balance(), THIRD)

    return _timed("equality", body)


# -- campaign: the three counterexamples ---------------------------------------


def verify_counterexamples() -> VerificationReport:
    def body(report: VerificationReport):
        for n in range(3, 7):
            ctx = CoxContext(coxgen.build_system(coxgen.complete_graph_matrix(n)))
            gens = [ctx.from_word([i]) for i in range(1, n + 1)]
            hull = convex.convex_hull(ctx, [ctx.identity()] + gens)
            report.check(f"complete-graph n={n} hull size", len(hull), n + 1)
            report.check(
                f"complete-graph n={n} balance",
                hull.balance_value(),
                Fraction(1, n + 1),
            )
        cyc = CoxContext(coxgen.build_system(coxgen.cycle_matrix(4)))
        w = cyc.from_word([2, 4, 1, 3])
        c = convex.interval_left(cyc, w)
        report.check("4-cycle interval size", len(c), 7)
        report.check("4-cycle interval balance", c.balance_value(), Fraction(2, 7))
        heap = posets.heap_from_word(cyc.system, [2, 4, 1, 3])
        report.check("4-cycle heap balance", heap.balance(), Fraction(2, 7))

        path = CoxContext(
            coxgen.build_system(coxgen.path_matrix(4, [coxgen.INF] * 3))
        )
        u = path.from_word([2, 3, 2, 3])
        v = path.from_word([1, 4, 2, 3])
        hull = convex.convex_hull(path, [path.identity(), u, v])
        report.check("infinite-path hull size", len(hull), 10)
        report.check("infinite-path balance", hull.balance_value(), Fraction(3, 10))
        report.check(
            "infinite-path frac(s3s2s3)",
            hull.inversion_fraction(word=[3, 2, 3]),
            Fraction(7, 10),
        )
        for word in ([3, 2, 3, 2, 3], [3, 4, 3], [3, 2, 1, 2, 3]):
            report.check(
                f"infinite-path frac({''.join(map(str, word))})",
                hull.inversion_fraction(word=word),
                Fraction(3, 10),
            )

    return _timed("counterexamples", body)


# -- campaign: classify fully commutative equality heaps -----------------------


def _reference_heaps():
    a2 = coxgen.WeylSystem(build_root_system("A", 2))
    d4 = coxgen.WeylSystem(build_root_system("D", 4))
    e6 = coxgen.WeylSystem(build_root_system("E", 6))
    return {
        "chain2": posets.heap_from_word(a2, (1, 2)),
        "claw22": posets.heap_from_word(d4, (4, 2, 3, 1)),
        "branch7": posets.heap_from_word(e6, (6, 3, 2, 4, 1, 3, 5)),
    }


def fully_commutative_elements(rs: RootSystem, cap: int = 10**5):
    """(element, shortlex word) pairs for every fully commutative element."""
    sys = coxgen.WeylSystem(rs)
    out = []
    for w, word in weyl.all_elements(rs, cap):
        if coxgen.is_fully_commutative(sys, word):
            out.append((w, word))
    return out


def classify_fc_equality(rs: RootSystem) -> VerificationReport:
    """Find every fully commutative element whose heap balance equals 1/3 and
    match the heap components against the known reference shapes."""

    def body(report: VerificationReport):
        refs = _reference_heaps()
        sys = coxgen.WeylSystem(rs)
        unmatched = []
        hits = 0
        for w, word in fully_commutative_elements(rs):
            if not word:
                continue
            heap = posets.heap_from_word(sys, word)
            if heap.balance() != THIRD:
                continue
            hits += 1
            for comp in heap.components():
                sub = heap.restrict(comp)
                if not any(posets.is_isomorphic(sub, ref) for ref in refs.values()):
                    unmatched.append((word, tuple(comp)))
        label = rs.root_label()
        report.check(f"{label} equality intervals found", hits > 0, True)
        # An unmatched component would answer the open classification
        # question in the negative: report it, but do not fail the campaign.
        report.check(
            f"{label} components outside the reference list",
            len(unmatched),
            len(unmatched),
            passed=True,
            reproducer=[f"w={w} comp={c}" for w, c in unmatched] or None,
        )

    return _timed(f"classify {rs.root_label()}", body)


# -- campaign: single-exit witnesses (root-poset ideals) -----------------------

EXIT_SCAN_TYPES: Tuple[Tuple[str, int], ...] = (
    ("A", 1), ("A", 2), ("A", 3), ("A", 4), ("A", 5), ("A", 6),
    ("B", 2), ("B", 3), ("B", 4),
    ("C", 2), ("C", 3), ("C", 4),
    ("D", 4), ("D", 5),
    ("F", 4), ("G", 2),
)

EXIT_SCAN_BIG: Tuple[Tuple[str, int], ...] = (("E", 6), ("E", 7), ("E", 8))


def verify_exit_witnesses(include_big: bool = False) -> VerificationReport:
    def body(report: VerificationReport):
        types = EXIT_SCAN_TYPES + (EXIT_SCAN_BIG if include_big else ())
        for family, rank in types:
            rs = build_root_system(family, rank)
            scanned, failures = semiorder.scan_exit_witnesses(rs)
            report.check(
                f"{family}{rank} ideals without a single-exit simple root "
                f"(of {scanned})",
                len(failures),
                0,
                reproducer=[f"mask={m:#x}" for m in failures] or None,
            )
            if (family, rank) == ("E", 8):
                report.check("E8 ideal count", scanned + 1, 25080)

    return _timed("exits", body)


# -- campaign: semiorder bounds -------------------------------------------------

SEMIORDER_TYPES: Tuple[Tuple[str, int], ...] = (
    ("A", 1), ("A", 2), ("A", 3), ("A", 4),
    ("B", 2), ("B", 3), ("C", 2), ("C", 3),
    ("D", 4), ("G", 2),
)


def verify_semiorder_bounds() -> VerificationReport:
    def body(report: VerificationReport):
        for family, rank in SEMIORDER_TYPES:
            rs = build_root_system(family, rank)
            half_ok = True
            min_b = None
            bad = []
            for mask in iter_ideal_masks(rs):
                if mask == 0:
                    continue
                members = [
                    i for i in range(rs.num_positive_roots) if (mask >> i) & 1
                ]
                gs = semiorder.build(rs, members)
                if not semiorder.check_half_bound(gs):
                    half_ok = False
                    bad.append(mask)
                if gs.size > 1:
                    b = gs.convex.balance_value()
                    if min_b is None or b < min_b:
                        min_b = b
            label = rs.root_label()
            report.check(
                f"{label} inversion fractions at most 1/2",
                half_ok,
                True,
                reproducer=[f"mask={m:#x}" for m in bad] or None,
            )
            report.check(
                f"{label} min non-singleton balance at least 1/3",
                min_b >= THIRD,
                True,
                reproducer=fmt(min_b),
            )

    return _timed("semiorder", body)


# -- campaign: geometry bounds ---------------------------------------------------


def verify_geometry() -> VerificationReport:
    def body(report: VerificationReport):
        for family, rank in CONJECTURE_TYPES:
            rs = build_root_system(family, rank)
            ctx = WeylContext(rs)
            threshold = alcove.exponential_bound_threshold(rs)
            n_sets = 0
            no_height = []
            no_split = []
            below = []
            below_short = []
            for c in convex.enumerate_convex_ideals(ctx):
                if len(c) <= 1:
                    continue
                n_sets += 1
                if alcove.small_mean_height_root(c) is None:
                    no_height.append(c)
                if alcove.centroid_split_root(c) is None:
                    no_split.append(c)
                if c.balance_value() < threshold:
                    below.append(c)
                if rs.family == "B" and not alcove.check_short_root_bound(c):
                    below_short.append(c)
            label = rs.root_label()

            def repro(sets):
                return [
                    "A=" + ",".join(map(str, s.canonical_upper)) for s in sets
                ] or None

            report.check(
                f"{label} mean-height witness on {n_sets} sets",
                len(no_height), 0, reproducer=repro(no_height),
            )
            report.check(
                f"{label} centroid-split witness",
                len(no_split), 0, reproducer=repro(no_split),
            )
            report.check(
                f"{label} balance above 1/(2 e^exponent)",
                len(below), 0, reproducer=repro(below),
            )
            if rs.family == "B":
                report.check(
                    f"{label} balance above 1/(2e)",
                    len(below_short), 0, reproducer=repro(below_short),
                )
            if rs.family == "G":
                worst = min(
                    (
                        c.balance_value()
                        for c in convex.enumerate_convex_ideals(ctx)
                        if len(c) > 1
                    ),
                )
                report.check(f"{label} balance at least 1/3", worst >= THIRD, True)

    return _timed("geometry", body)


# -- driver ----------------------------------------------------------------------

CLASSIFY_TYPES: Tuple[Tuple[str, int], ...] = (
    ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("D", 4),
)


def run_campaign(name: str, include_big: bool = False) -> List[VerificationReport]:
    if name == "table1":
        return [verify_params_table()]
    if name == "conjecture":
        return [
            verify_conjecture(build_root_system(f, r)) for f, r in CONJECTURE_TYPES
        ]
    if name == "equality":
        return [verify_equality_cases()]
    if name == "counterexamples":
        return [verify_counterexamples()]
    if name == "classify":
        return [
            classify_fc_equality(build_root_system(f, r)) for f, r in CLASSIFY_TYPES
        ]
    if name == "exits":
        return [verify_exit_witnesses(include_big=include_big)]
    if name == "semiorder":
        return [verify_semiorder_bounds()]
    if name == "geometry":
        return [verify_geometry()]
    if name == "all":
        out = []
        for n in (
            "table1", "conjecture", "equality", "counterexamples",
            "classify", "exits", "semiorder", "geometry",
        ):
            out.extend(run_campaign(n, include_big=include_big))
        return out
    raise ValueError(f"unknown campaign {name!r}")


CAMPAIGN_NAMES = (
    "table1", "conjecture", "equality", "counterexamples", "classify",
    "exits", "semiorder", "geometry", "all",
)
