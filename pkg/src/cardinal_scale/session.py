"""Query-driven elicitation sessions.

A session wraps the construction program and steps it one comparison
at a time: the pending query is shown to a respondent, the three-valued
answer is fed back in, and the program advances to the next probe.
Because the program is the same one the programmatic pipeline runs,
a respondent who answers from a consistent value scale reproduces the
direct construction exactly.
"""

from __future__ import annotations

import uuid
from dataclasses import dataclass, field

from .construct import (
    BinaryProbe,
    BisectionProfile,
    DifferenceProbe,
    StandardSequence,
    UtilityFn,
    _construct_program,
    assemble_partial,
)
from .errors import (
    BadConfig,
    CardinalScaleError,
    SchemaError,
    SessionComplete,
    SessionFailed,
    StaleQuery,
    TooEarly,
)
from .models import oracle_from_function
from .orders import Alt, Ordering3, PreferenceOracle, ProspectPair

AWAITING = "AwaitingAnswer"
COMPLETE = "Complete"
FAILED = "Failed"

DEFAULT_TOL = 2.0 ** -4
DEFAULT_P_LIMIT = 64
BUDGET_MARGIN = 2
BUDGET_OVERHEAD = 32


@dataclass(frozen=True)
class SessionConfig:
    """Elicitation parameters: domain, anchors, tolerance, labels.

    Anchors default to the domain endpoints.  label_format is a Python
    format string applied to parameters in query prompts.
    """

    lo: float = 0.0
    hi: float = 1.0
    a0: float | None = None
    a1: float | None = None
    tol: float = DEFAULT_TOL
    label_format: str = "{:g}"
    p_limit: int = DEFAULT_P_LIMIT

    def __post_init__(self) -> None:
        import math

        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise BadConfig(f"domain bounds must be finite: [{self.lo}, {self.hi}]")
        if not self.lo < self.hi:
            raise BadConfig(f"domain must be nondegenerate: [{self.lo}, {self.hi}]")
        if self.a0 is None:
            object.__setattr__(self, "a0", self.lo)
        if self.a1 is None:
            object.__setattr__(self, "a1", self.hi)
        if not (self.lo <= self.a0 <= self.hi and self.lo <= self.a1 <= self.hi):
            raise BadConfig(
                f"anchors ({self.a0}, {self.a1}) outside domain [{self.lo}, {self.hi}]"
            )
        if not self.a0 < self.a1:
            raise BadConfig(f"anchors must satisfy a0 < a1: ({self.a0}, {self.a1})")
        if not (math.isfinite(self.tol) and self.tol > 0):
            raise BadConfig(f"tol must be a positive real: {self.tol}")
        if not isinstance(self.p_limit, int) or self.p_limit < 1:
            raise BadConfig(f"p_limit must be a positive integer: {self.p_limit}")
        try:
            self.label_format.format(1.25)
        except (ValueError, KeyError, IndexError, AttributeError):
            raise BadConfig(f"unusable label_format: {self.label_format!r}") from None

    @classmethod
    def from_dict(cls, data: dict) -> "SessionConfig":
        if not isinstance(data, dict):
            raise BadConfig("config must be a JSON object")
        allowed = {"lo", "hi", "a0", "a1", "tol", "label_format", "p_limit"}
        extras = sorted(set(data) - allowed)
        if extras:
            raise BadConfig(f"unknown config fields: {', '.join(extras)}")
        kwargs = {}
        try:
            for key in ("lo", "hi", "tol"):
                if key in data and data[key] is not None:
                    kwargs[key] = float(data[key])
            for key in ("a0", "a1"):
                if key in data and data[key] is not None:
                    kwargs[key] = float(data[key])
            if "p_limit" in data and data["p_limit"] is not None:
                kwargs["p_limit"] = int(data["p_limit"])
            if "label_format" in data and data["label_format"] is not None:
                kwargs["label_format"] = str(data["label_format"])
        except (TypeError, ValueError) as bad:
            raise BadConfig(f"malformed config field: {bad}") from None
        return cls(**kwargs)

    def to_dict(self) -> dict:
        return {
            "lo": self.lo,
            "hi": self.hi,
            "a0": self.a0,
            "a1": self.a1,
            "tol": self.tol,
            "label_format": self.label_format,
            "p_limit": self.p_limit,
        }


@dataclass(frozen=True)
class Query:
    """One outstanding comparison request."""

    id: int
    kind: str  # "Binary" or "Difference"
    prompt_data: dict

    def to_dict(self) -> dict:
        return {"id": self.id, "kind": self.kind, "prompt_data": dict(self.prompt_data)}


class Session:
    """Mutable elicitation state: one pending query, a replayable log."""

    def __init__(self, config: SessionConfig):
        self.id: str = uuid.uuid4().hex[:12]
        self.config = config
        self.status: str = AWAITING
        self.pending: Query | None = None
        self.answered: list[dict] = []
        self.warnings: list[str] = []
        self.failure: dict | None = None
        self.result: UtilityFn | None = None
        self.query_budget: int = 0
        self._progress: list[StandardSequence] = []
        self._machine = None
        self._next_id = 1

    def _issue(self, probe) -> None:
        fmt = self.config.label_format.format
        if isinstance(probe, BinaryProbe):
            left, right = probe.left.param, probe.right.param
            prompt = {
                "left": left,
                "right": right,
                "left_label": fmt(left),
                "right_label": fmt(right),
                "sentence": (
                    f"Compare {fmt(left)} with {fmt(right)}: is the first "
                    "better (>), worse (<), or are they about equal (=)?"
                ),
            }
            kind = "Binary"
        else:
            fg, fb = probe.first.gain.param, probe.first.base.param
            sg, sb = probe.second.gain.param, probe.second.base.param
            prompt = {
                "first_gain": fg,
                "first_base": fb,
                "second_gain": sg,
                "second_base": sb,
                "first_gain_label": fmt(fg),
                "first_base_label": fmt(fb),
                "second_gain_label": fmt(sg),
                "second_base_label": fmt(sb),
                "sentence": (
                    f"Is going from {fmt(fb)} to {fmt(fg)} a bigger improvement "
                    f"than going from {fmt(sb)} to {fmt(sg)}?"
                ),
            }
            kind = "Difference"
        self.pending = Query(self._next_id, kind, prompt)
        self._next_id += 1

    def _finish(self, value) -> None:
        utility, _grid = value
        self.result = utility
        self.status = COMPLETE
        self.pending = None

    def _fail(self, exc: CardinalScaleError) -> None:
        self.status = FAILED
        self.pending = None
        recent = [entry["query"]["id"] for entry in self.answered[-2:]]
        self.failure = {
            "error": type(exc).__name__,
            "detail": str(exc),
            "conflicting_query_ids": recent,
        }


def _answer_probe(probe, oracle: PreferenceOracle) -> Ordering3:
    if isinstance(probe, BinaryProbe):
        return oracle.compare(probe.left, probe.right)
    return oracle.diff_compare(probe.first, probe.second)


def _budget_oracle(config: SessionConfig) -> PreferenceOracle:
    # Mildly curved so bisection targets never coincide with probe
    # points: the dry run then exercises every loop at full depth,
    # giving a worst-case-shaped count.
    span = config.hi - config.lo

    def v(t: float) -> float:
        s = (t - config.lo) / span
        return s + s * s / 64.0

    return oracle_from_function(v, (config.lo, config.hi), eps_indiff=0.0)


def estimate_query_budget(config: SessionConfig) -> int:
    """Planned query count: a dry run against a smooth synthetic scale.

    Advisory, not enforced; respondents whose value scale packs many
    more unit steps into the domain can exceed it.
    """
    oracle = _budget_oracle(config)
    program = _construct_program(
        Alt(config.a0),
        Alt(config.a1),
        config.tol,
        BisectionProfile.interactive(),
        config.lo,
        config.hi,
        config.p_limit,
        warnings_sink=[],
    )
    count = 0
    try:
        probe = next(program)
        while True:
            count += 1
            probe = program.send(_answer_probe(probe, oracle))
    except StopIteration:
        pass
    except CardinalScaleError:
        pass
    return BUDGET_MARGIN * count + BUDGET_OVERHEAD


def create_session(config: SessionConfig) -> Session:
    """Start a session; the first query is the anchor strictness check."""
    session = Session(config)
    session.query_budget = estimate_query_budget(config)
    session._machine = _construct_program(
        Alt(config.a0),
        Alt(config.a1),
        config.tol,
        BisectionProfile.interactive(),
        config.lo,
        config.hi,
        config.p_limit,
        warnings_sink=session.warnings,
        progress_sink=session._progress,
    )
    try:
        probe = next(session._machine)
    except StopIteration as done:
        session._finish(done.value)
        return session
    except CardinalScaleError as exc:
        session._fail(exc)
        return session
    session._issue(probe)
    return session


def next_query(session: Session) -> Query:
    """The pending query; idempotent until answered.

    Raises:
        SessionComplete / SessionFailed: no further queries exist.
    """
    if session.status == COMPLETE:
        raise SessionComplete(f"session {session.id} is complete")
    if session.status == FAILED:
        raise SessionFailed(f"session {session.id} failed: {session.failure}")
    assert session.pending is not None
    return session.pending


def submit_answer(session: Session, query_id: int, answer) -> Session:
    """Log the answer to the pending query and advance the machine.

    Accepts an Ordering3 or one of the symbols "<", "=", ">".

    Raises:
        StaleQuery: query_id is not the pending query's id.
        SessionComplete / SessionFailed: session already terminal.
        SchemaError: unrecognized answer value.
    """
    if session.status == COMPLETE:
        raise SessionComplete(f"session {session.id} is complete")
    if session.status == FAILED:
        raise SessionFailed(f"session {session.id} failed: {session.failure}")
    pending = session.pending
    assert pending is not None
    if query_id != pending.id:
        raise StaleQuery(
            f"answer targets query {query_id} but query {pending.id} is pending"
        )
    if isinstance(answer, Ordering3):
        ordering = answer
    else:
        try:
            ordering = Ordering3.from_symbol(answer)
        except (BadConfig, TypeError):
            raise SchemaError(
                f"answer must be one of '<', '=', '>': {answer!r}"
            ) from None
    session.answered.append({"query": pending.to_dict(), "answer": ordering.symbol})
    try:
        probe = session._machine.send(ordering)
    except StopIteration as done:
        session._finish(done.value)
    except CardinalScaleError as exc:
        session._fail(exc)
    else:
        session._issue(probe)
    return session


def current_estimate(session: Session) -> UtilityFn:
    """Snapshot of the utility implied by the grid built so far.

    Raises:
        TooEarly: before the unit sequence has been confirmed.
    """
    if session.result is not None:
        return session.result
    if not session._progress:
        raise TooEarly("the unit sequence has not been confirmed yet")
    return assemble_partial(
        list(session._progress), Alt(session.config.a0), Alt(session.config.a1)
    )


def respond_with_oracle(query: Query, oracle: PreferenceOracle) -> str:
    """Answer a query the way a respondent with this value scale would."""
    data = query.prompt_data
    if query.kind == "Binary":
        answer = oracle.compare(Alt(data["left"]), Alt(data["right"]))
    else:
        answer = oracle.diff_compare(
            ProspectPair(Alt(data["first_gain"]), Alt(data["first_base"])),
            ProspectPair(Alt(data["second_gain"]), Alt(data["second_base"])),
        )
    return answer.symbol


def drive_session(config: SessionConfig, oracle: PreferenceOracle, max_steps: int = 100000) -> Session:
    """Run a whole session with a simulated respondent."""
    session = create_session(config)
    steps = 0
    while session.status == AWAITING:
        if steps >= max_steps:
            raise SessionFailed(f"simulated respondent exceeded {max_steps} steps")
        query = next_query(session)
        submit_answer(session, query.id, respond_with_oracle(query, oracle))
        steps += 1
    return session


def replay_session(config: SessionConfig, answers: list[str]) -> Session:
    """Feed a recorded answer log into a fresh session.

    Determinism makes this reproduce the original query sequence; the
    queries actually issued are in the new session's answered log.
    """
    session = create_session(config)
    for symbol in answers:
        if session.status != AWAITING:
            break
        submit_answer(session, session.pending.id, symbol)
    return session
