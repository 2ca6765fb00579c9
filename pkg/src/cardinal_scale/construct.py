"""Constructive extraction of a cardinal utility function from an oracle.

The pipeline anchors two alternatives at utility 0 and 1, grows a
standard sequence of unit-spaced points in both directions, then halves
the unit repeatedly by midpoint extraction; grid points inherit exact
dyadic utility values and are packaged as a UtilityFn with a guaranteed
value resolution.

Every elementary step is written as a generator ("program") that yields
comparison probes and receives three-valued answers.  The same programs
are driven either by a programmatic oracle (run_with_oracle) or stepped
one query at a time by an interactive session, so there is a single
implementation of the construction to test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Union

from .errors import (
    AnchorsNotStrict,
    BadConfig,
    BracketInvalid,
    DegenerateFit,
    NestingViolation,
    NoConvergence,
    PreconditionNotStrict,
    SchemaError,
)
from .orders import Alt, AxiomReport, Ordering3, PreferenceOracle, ProspectPair

DEFAULT_P_LIMIT = 4096

# Bracket-width tests allow one part in 2^20 of slack so a width that
# lands exactly on delta after halving cannot trip the iteration cap
# through rounding alone.
_WIDTH_SLACK = 1.0 + 2.0 ** -20


# ---------------------------------------------------------------------------
# Probes and profiles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BinaryProbe:
    """Request for a compare(left, right) answer."""

    left: Alt
    right: Alt


@dataclass(frozen=True)
class DifferenceProbe:
    """Request for a diff_compare(first, second) answer."""

    first: ProspectPair
    second: ProspectPair


Probe = Union[BinaryProbe, DifferenceProbe]


@dataclass(frozen=True)
class BisectionProfile:
    """Tuning knobs for every bisection loop in the construction.

    delta_fraction: target bracket width as a fraction of the domain
        span.
    max_iter: probe budget per bisection; exceeding it raises
        NoConvergence rather than silently approximating.
    equal_stop: return the first probed point the oracle calls Equal.
        When False both edges of the Equal region are located and their
        center returned, which keeps long chains of solves from
        drifting across the indifference band.
    nesting: "raise" turns grid nesting failures into NestingViolation;
        "warn" records them and continues (interactive respondents are
        not coherent weak orders).
    """

    delta_fraction: float = 2.0 ** -46
    max_iter: int = 200
    equal_stop: bool = True
    nesting: str = "raise"

    def __post_init__(self) -> None:
        if not 0.0 < self.delta_fraction < 1.0:
            raise BadConfig(f"delta_fraction must be in (0,1): {self.delta_fraction}")
        if self.max_iter < 1:
            raise BadConfig(f"max_iter must be positive: {self.max_iter}")
        if self.nesting not in ("raise", "warn"):
            raise BadConfig(f"nesting must be 'raise' or 'warn': {self.nesting!r}")

    @classmethod
    def precise(cls) -> "BisectionProfile":
        """Centered bisection at full float depth, strict nesting."""
        return cls(2.0 ** -46, 200, False, "raise")

    @classmethod
    def interactive(cls) -> "BisectionProfile":
        """Human-patience budget: 12 probes per bisection, warnings."""
        return cls(2.0 ** -12, 12, True, "warn")


# ---------------------------------------------------------------------------
# Result types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StandardSequence:
    """Unit-spaced alternatives indexed by integers.

    points[0] and points[1] are the anchors; consecutive points differ
    by one unit in the difference order.  pmax (pmin) records the index
    where the domain ran out of room for another full step upward
    (downward); None means extension stopped at the requested limit
    instead.
    """

    anchor0: Alt
    anchor1: Alt
    points: dict[int, Alt]
    pmin: int | None
    pmax: int | None

    @property
    def indices(self) -> list[int]:
        return sorted(self.points)

    def alt(self, p: int) -> Alt:
        return self.points[p]

    @property
    def truncated_above(self) -> bool:
        return self.pmax is not None

    @property
    def truncated_below(self) -> bool:
        return self.pmin is not None


@dataclass(frozen=True)
class DyadicGrid:
    """Nested standard sequences; levels[n] has unit one 2^-n-th.

    The utility of levels[n].points[p] is exactly p / 2**n.
    """

    levels: tuple[StandardSequence, ...]
    depth: int
    nesting_warnings: tuple[str, ...] = ()

    def utility_at(self, level: int, p: int) -> float:
        return p / (1 << level)


class EvalResult(NamedTuple):
    value: float
    exact: bool
    extrapolated: str | None  # "below", "above", or None


class AffineFit(NamedTuple):
    alpha: float
    beta: float
    max_dev: float


@dataclass(frozen=True)
class UtilityFn:
    """The constructed utility: sorted knots plus a resolution bound.

    Between knots the value is read as the bracket midpoint, so the
    absolute error of evaluation is at most the resolution.
    """

    knots: tuple[tuple[float, float], ...]
    resolution: float
    anchors: tuple[float, float]
    interpolation: str = "bracket-midpoint"
    truncated_below: bool = False
    truncated_above: bool = False

    def __post_init__(self) -> None:
        if not self.knots:
            raise SchemaError("a utility function needs at least one knot")
        if not (math.isfinite(self.resolution) and self.resolution > 0):
            raise SchemaError(f"resolution must be a positive real: {self.resolution}")
        for param, value in self.knots:
            if not (math.isfinite(param) and math.isfinite(value)):
                raise SchemaError(f"non-finite knot ({param}, {value})")
        for (p0, v0), (p1, v1) in zip(self.knots, self.knots[1:]):
            if not p1 > p0:
                raise SchemaError(f"knot params must strictly increase: {p0} !< {p1}")
            if v1 < v0:
                raise SchemaError(f"knot values must be nondecreasing: {v0} > {v1}")

    @property
    def params(self) -> tuple[float, ...]:
        return tuple(p for p, _ in self.knots)

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(v for _, v in self.knots)

    def to_json_dict(self) -> dict:
        return {
            "anchors": [self.anchors[0], self.anchors[1]],
            "resolution": self.resolution,
            "knots": [[p, v] for p, v in self.knots],
            "interpolation": self.interpolation,
            "truncated_below": self.truncated_below,
            "truncated_above": self.truncated_above,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "UtilityFn":
        if not isinstance(data, dict):
            raise SchemaError("utility document must be a JSON object")
        try:
            anchors = data["anchors"]
            resolution = data["resolution"]
            knots = data["knots"]
        except KeyError as missing:
            raise SchemaError(f"utility document missing field {missing}") from None
        if not (isinstance(anchors, (list, tuple)) and len(anchors) == 2):
            raise SchemaError("anchors must be a two-element list")
        if not isinstance(knots, (list, tuple)):
            raise SchemaError("knots must be a list")
        try:
            knot_tuple = tuple((float(p), float(v)) for p, v in knots)
            return cls(
                knots=knot_tuple,
                resolution=float(resolution),
                anchors=(float(anchors[0]), float(anchors[1])),
                interpolation=str(data.get("interpolation", "bracket-midpoint")),
                truncated_below=bool(data.get("truncated_below", False)),
                truncated_above=bool(data.get("truncated_above", False)),
            )
        except (TypeError, ValueError) as bad:
            raise SchemaError(f"malformed utility document: {bad}") from None

    def to_csv(self) -> str:
        lines = ["param,utility"]
        lines.extend(f"{p:.17g},{v:.17g}" for p, v in self.knots)
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Program driver
# ---------------------------------------------------------------------------


def run_with_oracle(program, oracle: PreferenceOracle):
    """Drive a probe-yielding program to completion against an oracle."""
    try:
        probe = next(program)
        while True:
            if isinstance(probe, BinaryProbe):
                answer = oracle.compare(probe.left, probe.right)
            else:
                answer = oracle.diff_compare(probe.first, probe.second)
            probe = program.send(answer)
    except StopIteration as done:
        return done.value


# ---------------------------------------------------------------------------
# Bisection programs
# ---------------------------------------------------------------------------


def _edge_search(make_probe, lo: float, hi: float, in_upper, delta: float, max_iter: int):
    """Bisect for the lower boundary of an upward-closed answer region.

    Callers guarantee the region excludes lo and includes hi, so the
    endpoints are never probed.  Returns the final bracket center.
    """
    left, right = lo, hi
    used = 0
    while right - left > delta * _WIDTH_SLACK:
        if used >= max_iter:
            raise NoConvergence(
                f"bracket width {right - left:.3g} still above {delta:.3g} "
                f"after {used} probes"
            )
        mid = 0.5 * (left + right)
        answer = yield make_probe(mid)
        if in_upper(answer):
            right = mid
        else:
            left = mid
        used += 1
    return 0.5 * (left + right)


def _equal_stop_search(
    make_probe, lo: float, hi: float, greater_means_high: bool, delta: float, max_iter: int
):
    """Three-valued bisection that returns the first Equal point probed."""
    left, right = lo, hi
    used = 0
    while right - left > delta * _WIDTH_SLACK:
        if used >= max_iter:
            raise NoConvergence(
                f"bracket width {right - left:.3g} still above {delta:.3g} "
                f"after {used} probes without an Equal answer"
            )
        mid = 0.5 * (left + right)
        answer = yield make_probe(mid)
        if answer is Ordering3.EQUAL:
            return mid
        high = (
            answer is Ordering3.GREATER
            if greater_means_high
            else answer is Ordering3.LESS
        )
        if high:
            right = mid
        else:
            left = mid
        used += 1
    return 0.5 * (left + right)


def _solve_program(
    base: Alt,
    target: ProspectPair,
    lo_alt: Alt,
    hi_alt: Alt,
    profile: BisectionProfile,
    span: float,
    check_bracket: bool,
):
    """Find x in [lo_alt, hi_alt] with (x, base) indifferent to target.

    The map x -> (x, base) is nondecreasing in the difference order, so
    the three-valued answer is monotone in the parameter.  Bracket ends
    that already compare Equal are returned exactly.
    """
    if hi_alt.param < lo_alt.param:
        raise BracketInvalid(
            f"bracket reversed: [{lo_alt.param}, {hi_alt.param}]"
        )
    delta = profile.delta_fraction * span

    def probe_at(t: float) -> DifferenceProbe:
        return DifferenceProbe(ProspectPair(Alt(t), base), target)

    if check_bracket:
        top = yield probe_at(hi_alt.param)
        if top is Ordering3.LESS:
            raise BracketInvalid("upper bracket end compares Less against the target")
        if top is Ordering3.EQUAL:
            return hi_alt
        bottom = yield probe_at(lo_alt.param)
        if bottom is Ordering3.GREATER:
            raise BracketInvalid("lower bracket end compares Greater against the target")
        if bottom is Ordering3.EQUAL:
            return lo_alt
    if profile.equal_stop:
        t = yield from _equal_stop_search(
            probe_at, lo_alt.param, hi_alt.param, True, delta, profile.max_iter
        )
        return Alt(t)
    low_edge = yield from _edge_search(
        probe_at,
        lo_alt.param,
        hi_alt.param,
        lambda a: a is not Ordering3.LESS,
        delta,
        profile.max_iter,
    )
    high_edge = yield from _edge_search(
        probe_at,
        lo_alt.param,
        hi_alt.param,
        lambda a: a is Ordering3.GREATER,
        delta,
        profile.max_iter,
    )
    return Alt(0.5 * (low_edge + high_edge))


def _midpoint_program(
    x: Alt, z: Alt, profile: BisectionProfile, span: float, precheck: bool
):
    """Locate y* between z and x with (x, y*) indifferent to (y*, z).

    A Greater answer at a candidate means the candidate sits below y*
    (the first gain still dominates), so the probe is monotone
    decreasing in the parameter.
    """
    if precheck:
        order = yield BinaryProbe(x, z)
        if order is not Ordering3.GREATER:
            raise PreconditionNotStrict(
                f"midpoint needs x strictly preferred to z, got {order.symbol}"
            )
    if x.param <= z.param:
        raise PreconditionNotStrict(
            f"midpoint needs param(x) > param(z): {x.param} <= {z.param}"
        )
    delta = profile.delta_fraction * span

    def probe_at(t: float) -> DifferenceProbe:
        y = Alt(t)
        return DifferenceProbe(ProspectPair(x, y), ProspectPair(y, z))

    if profile.equal_stop:
        t = yield from _equal_stop_search(
            probe_at, z.param, x.param, False, delta, profile.max_iter
        )
        return Alt(t)
    low_edge = yield from _edge_search(
        probe_at,
        z.param,
        x.param,
        lambda a: a is not Ordering3.GREATER,
        delta,
        profile.max_iter,
    )
    high_edge = yield from _edge_search(
        probe_at,
        z.param,
        x.param,
        lambda a: a is Ordering3.LESS,
        delta,
        profile.max_iter,
    )
    return Alt(0.5 * (low_edge + high_edge))


def _extend_program(
    a0: Alt,
    a1: Alt,
    up_limit: int,
    down_limit: int,
    profile: BisectionProfile,
    lo: float,
    hi: float,
    precheck: bool,
):
    """Grow the unit-spaced sequence from the anchors in both directions.

    Truncation (no alternative a full unit further) is decided by
    probing the domain endpoint alone: the step target is monotone in
    its moving slot, so if even the endpoint falls short nothing
    suffices.
    """
    if precheck:
        order = yield BinaryProbe(a1, a0)
        if order is not Ordering3.GREATER:
            raise AnchorsNotStrict(
                f"anchor a1 must be strictly preferred to a0, got {order.symbol}"
            )
    if a1.param <= a0.param:
        raise AnchorsNotStrict(
            f"anchor params must satisfy param(a1) > param(a0): "
            f"{a1.param} <= {a0.param}"
        )
    span = hi - lo
    unit = ProspectPair(a1, a0)
    neg_unit = ProspectPair(a0, a1)
    points: dict[int, Alt] = {0: a0, 1: a1}
    pmax: int | None = None
    pmin: int | None = None

    cur, p = a1, 1
    while p < up_limit:
        if cur.param >= hi:
            pmax = p
            break
        room = yield DifferenceProbe(ProspectPair(Alt(hi), cur), unit)
        if room is Ordering3.LESS:
            pmax = p
            break
        if room is Ordering3.EQUAL:
            nxt = Alt(hi)
        else:
            nxt = yield from _solve_program(cur, unit, cur, Alt(hi), profile, span, False)
        points[p + 1] = nxt
        cur, p = nxt, p + 1

    cur, p = a0, 0
    while p > -down_limit:
        if cur.param <= lo:
            pmin = p
            break
        room = yield DifferenceProbe(ProspectPair(Alt(lo), cur), neg_unit)
        if room is Ordering3.GREATER:
            pmin = p
            break
        if room is Ordering3.EQUAL:
            nxt = Alt(lo)
        else:
            nxt = yield from _solve_program(cur, neg_unit, Alt(lo), cur, profile, span, False)
        points[p - 1] = nxt
        cur, p = nxt, p - 1

    return StandardSequence(a0, a1, points, pmin, pmax)


def _refine_program(
    seq: StandardSequence,
    depth: int,
    profile: BisectionProfile,
    lo: float,
    hi: float,
    warnings_sink: list,
    progress_sink: list | None = None,
):
    """Halve the unit depth times, checking the doubling identity.

    Each finer level must agree with its parent at even indices
    (index 2p at level n+1 names the same point as index p at level n);
    disagreement signals an incoherent respondent.
    """
    levels = [seq]
    span = hi - lo
    for _ in range(depth):
        parent = levels[-1]
        a0 = parent.anchor0
        half = yield from _midpoint_program(
            parent.points[1], a0, profile, span, precheck=False
        )
        top = max(parent.points)
        bottom = min(parent.points)
        child = yield from _extend_program(
            a0,
            half,
            2 * top + 1,
            -2 * bottom + 1,
            profile,
            lo,
            hi,
            precheck=False,
        )
        zero = ProspectPair(a0, a0)
        level_no = len(levels)
        for p in sorted(parent.points):
            if p == 0:
                continue
            doubled = child.points.get(2 * p)
            if doubled is None:
                message = (
                    f"nesting: level {level_no} lacks index {2 * p} "
                    f"matching parent index {p}"
                )
                if profile.nesting == "raise":
                    raise NestingViolation(message)
                warnings_sink.append(message)
                continue
            answer = yield DifferenceProbe(
                ProspectPair(doubled, parent.points[p]), zero
            )
            if answer is not Ordering3.EQUAL:
                message = (
                    f"nesting: level {level_no} index {2 * p} drifts from "
                    f"parent index {p} (answer {answer.symbol})"
                )
                if profile.nesting == "raise":
                    raise NestingViolation(message)
                warnings_sink.append(message)
        levels.append(child)
        if progress_sink is not None:
            progress_sink.append(child)
    return tuple(levels)


def _assemble(grid: DyadicGrid, a0: Alt, a1: Alt) -> UtilityFn:
    """Collapse grid levels into knots; shallowest level names a value."""
    value_param: dict[float, float] = {}
    for n, level in enumerate(grid.levels):
        denom = 1 << n
        for p, alt in level.points.items():
            value = p / denom
            if value not in value_param:
                value_param[value] = alt.param
    knots = tuple(sorted((param, value) for value, param in value_param.items()))
    for (p0, v0), (p1, v1) in zip(knots, knots[1:]):
        if p1 <= p0 or v1 <= v0:
            raise NestingViolation(
                f"grid produced disordered knots ({p0},{v0}) vs ({p1},{v1})"
            )
    return UtilityFn(
        knots=knots,
        resolution=2.0 ** -grid.depth,
        anchors=(a0.param, a1.param),
        truncated_below=any(lv.pmin is not None for lv in grid.levels),
        truncated_above=any(lv.pmax is not None for lv in grid.levels),
    )


def _construct_program(
    a0: Alt,
    a1: Alt,
    tol: float,
    profile: BisectionProfile,
    lo: float,
    hi: float,
    p_limit: int,
    warnings_sink: list | None = None,
    progress_sink: list | None = None,
):
    """Full pipeline: anchor check, unit sequence, refinement, assembly."""
    if warnings_sink is None:
        warnings_sink = []
    depth = 0
    while 2.0 ** -depth > tol:
        depth += 1
    seq = yield from _extend_program(
        a0, a1, p_limit, p_limit, profile, lo, hi, precheck=True
    )
    if progress_sink is not None:
        progress_sink.append(seq)
    levels = yield from _refine_program(
        seq, depth, profile, lo, hi, warnings_sink, progress_sink
    )
    grid = DyadicGrid(levels, depth, tuple(warnings_sink))
    return _assemble(grid, a0, a1), grid


def assemble_partial(levels: list[StandardSequence], a0: Alt, a1: Alt) -> UtilityFn:
    """Snapshot utility from the levels built so far."""
    grid = DyadicGrid(tuple(levels), len(levels) - 1)
    return _assemble(grid, a0, a1)


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------


def solve_indifference(
    oracle: PreferenceOracle,
    y: Alt,
    target: ProspectPair,
    bracket: tuple[Alt, Alt],
    profile: BisectionProfile | None = None,
) -> Alt:
    """Return x* in the bracket with (x*, y) indifferent to target.

    The bracket ends must straddle the target: the upper end at least
    as large, the lower end at most.  Monotone bisection on the
    parameter; a bracket end that already compares Equal is returned
    exactly.

    Raises:
        BracketInvalid: bracket reversed or ends on the wrong sides.
        NoConvergence: probe budget exhausted before the width target.
        DomainError: any alternative outside the oracle bounds.
    """
    profile = profile or BisectionProfile()
    if not isinstance(target, ProspectPair):
        target = ProspectPair(*target)
    lo_alt, hi_alt = bracket
    oracle.require_in_domain(y, target.gain, target.base, lo_alt, hi_alt)
    program = _solve_program(y, target, lo_alt, hi_alt, profile, oracle.span, True)
    return run_with_oracle(program, oracle)


def midpoint(
    oracle: PreferenceOracle,
    x: Alt,
    z: Alt,
    profile: BisectionProfile | None = None,
) -> Alt:
    """Return y* with (x, y*) indifferent to (y*, z), strictly between.

    Raises:
        PreconditionNotStrict: unless x is strictly preferred to z.
        NoConvergence: probe budget exhausted.
        DomainError: x or z outside the oracle bounds.
    """
    profile = profile or BisectionProfile()
    oracle.require_in_domain(x, z)
    program = _midpoint_program(x, z, profile, oracle.span, precheck=True)
    return run_with_oracle(program, oracle)


def extend_unit_sequence(
    oracle: PreferenceOracle,
    a0: Alt,
    a1: Alt,
    p_limit: int,
    profile: BisectionProfile | None = None,
) -> StandardSequence:
    """Build the unit-spaced sequence through a0, a1 out to p_limit.

    Stops early with a truncation marker when no alternative lies a
    full unit beyond the current endpoint.

    Raises:
        AnchorsNotStrict: unless a1 is strictly preferred to a0.
        BadConfig: nonpositive p_limit.
    """
    if not isinstance(p_limit, int) or p_limit < 1:
        raise BadConfig(f"p_limit must be a positive integer: {p_limit}")
    profile = profile or BisectionProfile()
    oracle.require_in_domain(a0, a1)
    program = _extend_program(
        a0, a1, p_limit, p_limit, profile, oracle.lo, oracle.hi, precheck=True
    )
    return run_with_oracle(program, oracle)


def refine_grid(
    oracle: PreferenceOracle,
    seq: StandardSequence,
    depth: int,
    profile: BisectionProfile | None = None,
) -> DyadicGrid:
    """Refine a standard sequence to the given dyadic depth.

    Raises:
        NestingViolation: a finer level disagrees with its parent
            beyond the indifference band (profiles with nesting="warn"
            record the message on the grid instead).
        BadConfig: negative depth.
    """
    if not isinstance(depth, int) or depth < 0:
        raise BadConfig(f"depth must be a nonnegative integer: {depth}")
    profile = profile or BisectionProfile()
    warnings_sink: list = []
    program = _refine_program(
        seq, depth, profile, oracle.lo, oracle.hi, warnings_sink
    )
    levels = run_with_oracle(program, oracle)
    return DyadicGrid(levels, depth, tuple(warnings_sink))


def construct_utility(
    oracle: PreferenceOracle,
    a0: Alt,
    a1: Alt,
    tol: float,
    profile: BisectionProfile | None = None,
    p_limit: int = DEFAULT_P_LIMIT,
) -> UtilityFn:
    """Construct the utility function anchored at u(a0)=0, u(a1)=1.

    Refines until the dyadic resolution 2^-n falls at or below tol, so
    adjacent knots differ by at most tol in value and evaluation error
    is bounded by the resolution.

    Raises:
        BadConfig: tol <= 0, or the oracle's indifference band exceeds
            tol/4 (a band that wide would corrupt grid nesting).
        AnchorsNotStrict: unless a1 is strictly preferred to a0.
    """
    if not (isinstance(tol, (int, float)) and math.isfinite(tol) and tol > 0):
        raise BadConfig(f"tol must be a positive real: {tol}")
    if oracle.eps_indiff > tol / 4:
        raise BadConfig(
            f"indifference band {oracle.eps_indiff} too wide for tolerance "
            f"{tol}; need eps_indiff <= tol/4"
        )
    if oracle.span == 0:
        return UtilityFn(
            knots=((oracle.lo, 0.0),),
            resolution=tol,
            anchors=(oracle.lo, oracle.lo),
        )
    profile = profile or BisectionProfile.precise()
    oracle.require_in_domain(a0, a1)
    program = _construct_program(
        a0, a1, tol, profile, oracle.lo, oracle.hi, p_limit
    )
    utility, _ = run_with_oracle(program, oracle)
    return utility


def evaluate_detailed(u: UtilityFn, x: Alt, oracle: PreferenceOracle) -> EvalResult:
    """Evaluate with metadata: exact knot hits and extrapolation flags.

    Locates x among the knots by oracle comparisons rather than raw
    parameters, so indifference plateaus collapse to their knot value.
    Outside the knot range the nearest knot value is returned and
    flagged "below" or "above".
    """
    oracle.require_in_domain(x)
    params = u.params
    values = u.values
    bottom = oracle.compare(x, Alt(params[0]))
    if bottom is Ordering3.LESS:
        return EvalResult(values[0], False, "below")
    if bottom is Ordering3.EQUAL:
        return EvalResult(values[0], True, None)
    top = oracle.compare(x, Alt(params[-1]))
    if top is Ordering3.GREATER:
        return EvalResult(values[-1], False, "above")
    if top is Ordering3.EQUAL:
        return EvalResult(values[-1], True, None)
    lo_i, hi_i = 0, len(params) - 1
    while hi_i - lo_i > 1:
        mid = (lo_i + hi_i) // 2
        order = oracle.compare(x, Alt(params[mid]))
        if order is Ordering3.EQUAL:
            return EvalResult(values[mid], True, None)
        if order is Ordering3.GREATER:
            lo_i = mid
        else:
            hi_i = mid
    return EvalResult(0.5 * (values[lo_i] + values[hi_i]), False, None)


def evaluate(u: UtilityFn, x: Alt, oracle: PreferenceOracle) -> float:
    """Utility value of x, accurate to the resolution of u."""
    return evaluate_detailed(u, x, oracle).value


def _contradicts(ordering: Ordering3, measured: float, slack: float) -> bool:
    if ordering is Ordering3.GREATER:
        return measured < -slack
    if ordering is Ordering3.LESS:
        return measured > slack
    return abs(measured) > slack


def verify_representation(
    oracle: PreferenceOracle,
    u: UtilityFn,
    quadruples: list[tuple[Alt, Alt, Alt, Alt]],
) -> AxiomReport:
    """Check that u orders pairs and differences like the oracle.

    For each (x, y, z, w) the oracle's difference comparison must match
    the sign of (u(x)-u(y)) - (u(z)-u(w)) within a slack of twice the
    resolution; the binary comparisons of both constituent pairs are
    checked the same way.
    """
    report = AxiomReport("Representation")
    slack = 2.0 * u.resolution
    cache: dict[float, float] = {}

    def value_of(alt: Alt) -> float:
        if alt.param not in cache:
            cache[alt.param] = evaluate(u, alt, oracle)
        return cache[alt.param]

    for x, y, z, w in quadruples:
        oracle.require_in_domain(x, y, z, w)
        report.checked += 1
        lhs = oracle.diff_compare(ProspectPair(x, y), ProspectPair(z, w))
        measured = (value_of(x) - value_of(y)) - (value_of(z) - value_of(w))
        if _contradicts(lhs, measured, slack):
            report.record((x, y, z, w, lhs.symbol, measured))
        for a, b in ((x, y), (z, w)):
            order = oracle.compare(a, b)
            gap = value_of(a) - value_of(b)
            if _contradicts(order, gap, slack):
                report.record((a, b, order.symbol, gap))
    return report


def affine_fit(
    u_values: list[tuple[float, float]],
    v_values: list[tuple[float, float]],
) -> AffineFit:
    """Least-squares fit u ~ alpha*v + beta with alpha > 0.

    Raises:
        BadConfig: mismatched or empty sample lists.
        DegenerateFit: v constant, or the best slope nonpositive.
    """
    if len(u_values) != len(v_values) or not u_values:
        raise BadConfig("u and v samples must be nonempty and aligned")
    for (pu, _), (pv, _) in zip(u_values, v_values):
        if pu != pv:
            raise BadConfig(f"sample params differ: {pu} vs {pv}")
    us = [value for _, value in u_values]
    vs = [value for _, value in v_values]
    n = len(us)
    mean_u = math.fsum(us) / n
    mean_v = math.fsum(vs) / n
    var_v = math.fsum((v - mean_v) ** 2 for v in vs)
    if var_v == 0.0:
        raise DegenerateFit("generator values are constant on the sample")
    cov = math.fsum((v - mean_v) * (uv - mean_u) for v, uv in zip(vs, us))
    alpha = cov / var_v
    if alpha <= 0.0:
        raise DegenerateFit(f"best affine slope is nonpositive: {alpha}")
    beta = mean_u - alpha * mean_v
    max_dev = max(abs(uv - (alpha * v + beta)) for v, uv in zip(vs, us))
    return AffineFit(alpha, beta, max_dev)


def quotient_representative(
    oracle: PreferenceOracle,
    x: Alt,
    profile: BisectionProfile | None = None,
) -> Alt:
    """Canonical representative of the indifference class of x.

    Bisects the full domain for the lowest parameter comparing at least
    Equal to x.  Because the bracket is always the whole domain, the
    result depends only on the comparison behaviour of x's class; with
    an exact oracle (zero indifference band) a second application
    returns the identical parameter.

    Raises:
        NoConvergence: probe budget exhausted.
        DomainError: x outside the oracle bounds.
    """
    profile = profile or BisectionProfile.precise()
    oracle.require_in_domain(x)
    if oracle.span == 0:
        return Alt(oracle.lo)
    if oracle.compare(Alt(oracle.lo), x) is not Ordering3.LESS:
        return Alt(oracle.lo)
    delta = profile.delta_fraction * oracle.span
    left, right = oracle.lo, oracle.hi
    used = 0
    while right - left > delta * _WIDTH_SLACK:
        if used >= profile.max_iter:
            raise NoConvergence(
                f"class boundary not isolated after {used} probes"
            )
        mid = 0.5 * (left + right)
        if oracle.compare(Alt(mid), x) is Ordering3.LESS:
            left = mid
        else:
            right = mid
        used += 1
    return Alt(right)
