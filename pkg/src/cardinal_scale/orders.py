"""Order relations, preference oracles, and axiom checking.

An alternative is a point on a one-dimensional parameter scale.  A
preference oracle answers three-valued comparisons between alternatives
(binary preference) and between ordered pairs of alternatives
(difference preference: "is the step from ``base`` to ``gain`` in the
first pair at least as large as in the second?").

The checkers in this module probe an oracle for the structural
properties that make a difference-comparison representable by a single
real-valued scale: weak-order behaviour of the binary relation,
consistency between binary and difference comparisons, the crossover
property of difference comparisons, and a sampled continuity check.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .errors import BadConfig, DomainError

# Reports store at most this many witnesses; counts stay exact.
WITNESS_CAP = 100


class Ordering3(enum.Enum):
    """Three-valued comparison outcome."""

    LESS = -1
    EQUAL = 0
    GREATER = 1

    @property
    def symbol(self) -> str:
        return {-1: "<", 0: "=", 1: ">"}[self.value]

    @classmethod
    def from_symbol(cls, symbol: str) -> "Ordering3":
        try:
            return {"<": cls.LESS, "=": cls.EQUAL, ">": cls.GREATER}[symbol]
        except KeyError:
            raise BadConfig(f"not a comparison symbol: {symbol!r}") from None

    @classmethod
    def from_sign(cls, value: float, band: float = 0.0) -> "Ordering3":
        """Classify a signed magnitude, treating |value| <= band as equality."""
        if value > band:
            return cls.GREATER
        if value < -band:
            return cls.LESS
        return cls.EQUAL

    def flip(self) -> "Ordering3":
        return Ordering3(-self.value)


@dataclass(frozen=True)
class Alt:
    """An alternative, identified by its position on the parameter scale.

    Finite models use integer-valued positions (the label index).
    """

    param: float

    def __repr__(self) -> str:
        return f"Alt({self.param!r})"


@dataclass(frozen=True)
class ProspectPair:
    """An ordered pair (gain, base): the change from ``base`` to ``gain``."""

    gain: Alt
    base: Alt


CompareFn = Callable[[Alt, Alt], Ordering3]
DiffCompareFn = Callable[[ProspectPair, ProspectPair], Ordering3]


@dataclass(frozen=True)
class PreferenceOracle:
    """Three-valued comparison oracle over a closed parameter interval.

    Attributes:
        lo, hi: Domain bounds; every queried Alt must satisfy
            lo <= param <= hi.
        eps_indiff: Half-width of the indifference band.  Comparisons
            whose underlying magnitude difference is within this band
            report EQUAL.
        compare: Binary preference, compare(x, y) = GREATER iff x is
            strictly preferred to y.
        diff_compare: Difference preference between two prospect pairs.

    The parametrization is assumed monotone: a larger param is never
    strictly worse.  Bisection routines rely on this.
    """

    lo: float
    hi: float
    eps_indiff: float
    compare: CompareFn
    diff_compare: DiffCompareFn

    @property
    def span(self) -> float:
        return self.hi - self.lo

    def contains(self, x: Alt) -> bool:
        return self.lo <= x.param <= self.hi

    def require_in_domain(self, *alts: Alt) -> None:
        for x in alts:
            if not self.contains(x):
                raise DomainError(
                    f"param {x.param} outside domain [{self.lo}, {self.hi}]"
                )


@dataclass
class AxiomReport:
    """Outcome of probing one axiom.

    ``checked`` counts probes, ``violation_count`` is exact, and
    ``violations`` stores at most WITNESS_CAP witness tuples.
    """

    axiom: str
    checked: int = 0
    violation_count: int = 0
    violations: list[tuple] = field(default_factory=list)
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.violation_count == 0

    def record(self, witness: tuple) -> None:
        self.violation_count += 1
        if len(self.violations) < WITNESS_CAP:
            self.violations.append(witness)

    def summary(self) -> str:
        status = "passed" if self.passed else f"FAILED ({self.violation_count})"
        line = f"{self.axiom}: {status}, checked={self.checked}"
        if self.note:
            line += f" ({self.note})"
        return line


# ---------------------------------------------------------------------------
# Weak-order checks on the binary relation
# ---------------------------------------------------------------------------


def _safe_compare(oracle: PreferenceOracle, x: Alt, y: Alt) -> Ordering3 | None:
    try:
        result = oracle.compare(x, y)
    except Exception:
        return None
    return result if isinstance(result, Ordering3) else None


def check_order_axioms(
    oracle: PreferenceOracle, samples: Sequence[Alt]
) -> AxiomReport:
    """Probe reflexivity, completeness, and transitivity on a sample set.

    ``checked`` counts the ordered triples scanned for transitivity
    (len(samples) ** 3); reflexivity and dual-consistency probes feed
    the same report.

    Raises:
        DomainError: if any sample is outside the oracle domain.
    """
    samples = list(samples)
    oracle.require_in_domain(*samples)
    report = AxiomReport(
        axiom="Transitivity",
        note="includes reflexivity and completeness probes",
    )

    table: dict[tuple[int, int], Ordering3 | None] = {}
    for i, x in enumerate(samples):
        for j, y in enumerate(samples):
            table[i, j] = _safe_compare(oracle, x, y)

    for i, x in enumerate(samples):
        r = table[i, i]
        if r is not Ordering3.EQUAL:
            report.record((x, x, "reflexivity", r))
    for i, x in enumerate(samples):
        for j, y in enumerate(samples):
            r, s = table[i, j], table[j, i]
            if r is None or s is None:
                report.record((x, y, "completeness", r, s))
            elif r is not s.flip():
                report.record((x, y, "dual-consistency", r, s))

    n = len(samples)
    for i in range(n):
        for j in range(n):
            if table[i, j] is Ordering3.LESS or table[i, j] is None:
                report.checked += n
                continue
            for k in range(n):
                report.checked += 1
                r_jk, r_ik = table[j, k], table[k, i]
                if r_jk is None or r_ik is None:
                    continue
                # x >= y and y >= z must imply x >= z.
                if r_jk is not Ordering3.LESS and r_ik is Ordering3.GREATER:
                    report.record(
                        (samples[i], samples[j], samples[k],
                         table[i, j], r_jk, r_ik.flip())
                    )
    return report


# ---------------------------------------------------------------------------
# Difference-comparison axioms
# ---------------------------------------------------------------------------


def check_A1(
    oracle: PreferenceOracle, triples: Iterable[tuple[Alt, Alt, Alt]]
) -> AxiomReport:
    """Shared-base consistency: (x, z) vs (y, z) must order like x vs y."""
    report = AxiomReport(axiom="A1")
    for x, y, z in triples:
        oracle.require_in_domain(x, y, z)
        report.checked += 1
        d = oracle.diff_compare(ProspectPair(x, z), ProspectPair(y, z))
        c = oracle.compare(x, y)
        if d is not c:
            report.record((x, y, z, d, c))
    return report


def check_A1prime(
    oracle: PreferenceOracle, triples: Iterable[tuple[Alt, Alt, Alt]]
) -> AxiomReport:
    """Shared-gain consistency: (z, x) vs (z, y) must order like y vs x."""
    report = AxiomReport(axiom="A1prime")
    for x, y, z in triples:
        oracle.require_in_domain(x, y, z)
        report.checked += 1
        d = oracle.diff_compare(ProspectPair(z, x), ProspectPair(z, y))
        c = oracle.compare(y, x)
        if d is not c:
            report.record((x, y, z, d, c))
    return report


def check_A2(
    oracle: PreferenceOracle, quadruples: Iterable[tuple[Alt, Alt, Alt, Alt]]
) -> AxiomReport:
    """Crossover: (x,y) ~ (z,w) holds exactly when (x,z) ~ (y,w) does."""
    report = AxiomReport(axiom="A2")
    for x, y, z, w in quadruples:
        oracle.require_in_domain(x, y, z, w)
        report.checked += 1
        direct = oracle.diff_compare(ProspectPair(x, y), ProspectPair(z, w))
        crossed = oracle.diff_compare(ProspectPair(x, z), ProspectPair(y, w))
        if (direct is Ordering3.EQUAL) != (crossed is Ordering3.EQUAL):
            report.record((x, y, z, w, direct, crossed))
    return report


def _van_der_corput(index: int) -> float:
    """Base-2 radical inverse; index 1, 2, 3, ... -> 1/2, 1/4, 3/4, ..."""
    result = 0.0
    denom = 1.0
    while index:
        denom *= 2.0
        index, bit = divmod(index, 2)
        result += bit / denom
    return result


def check_A3_approx(
    oracle: PreferenceOracle,
    seq_count: int,
    seq_len: int,
    seed: int = 0,
) -> AxiomReport:
    """Sampled closedness check on the difference relation.

    Builds families of monotone convergent parameter sequences
    (x_n, y_n, w_n, z_n) with known limits.  Whenever the comparison of
    ((x_n, y_n), (w_n, z_n)) holds weakly in one direction for every n,
    the comparison at the limit points must hold weakly in the same
    direction; a strict reversal at the limit is a violation.

    Limit points cycle through a deterministic low-discrepancy fill
    (base-2 radical inverse over the domain), each visited in all four
    sequence roles and both approach directions, so jump defects at
    dyadic positions are found reproducibly.  A pass means no violation
    was found by sampling; it is not a verification.

    Raises:
        BadConfig: if seq_len < 4.
    """
    if seq_len < 4:
        raise BadConfig("seq_len must be at least 4")
    rng = random.Random(seed)
    lo, hi = oracle.lo, oracle.hi
    span = hi - lo
    report = AxiomReport(
        axiom="A3approx",
        note="sampled necessary condition; pass = no violation found",
    )

    weakly_up = (Ordering3.GREATER, Ordering3.EQUAL)
    weakly_dn = (Ordering3.LESS, Ordering3.EQUAL)
    for family in range(seq_count):
        block, slot = divmod(family, 8)
        role = slot % 4
        from_below = slot < 4
        limits = [lo + span * rng.random() for _ in range(4)]
        limits[role] = lo + span * _van_der_corput(block + 1)

        # Monotone approach toward limits[role]; other roles constant.
        gap = (limits[role] - lo) if from_below else (hi - limits[role])
        sign = -1.0 if from_below else 1.0

        def at_step(n: int) -> list[Alt]:
            pts = [Alt(p) for p in limits]
            pts[role] = Alt(limits[role] + sign * gap * (0.5 ** n))
            return pts

        results = []
        for n in range(1, seq_len + 1):
            x, y, w, z = at_step(n)
            results.append(
                oracle.diff_compare(ProspectPair(x, y), ProspectPair(w, z))
            )
        x, y, w, z = (Alt(p) for p in limits)
        at_limit = oracle.diff_compare(ProspectPair(x, y), ProspectPair(w, z))
        report.checked += 1

        if all(r in weakly_up for r in results) and at_limit not in weakly_up:
            report.record((tuple(limits), role, from_below, "up", at_limit))
        if all(r in weakly_dn for r in results) and at_limit not in weakly_dn:
            report.record((tuple(limits), role, from_below, "down", at_limit))
    return report
