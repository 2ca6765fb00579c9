"""Exact rational feasibility of additive difference representations.

Given a finite model's comparison tables, decide whether utility values
u_1..u_n exist with u_i > u_j exactly when the strict table says so and
(u_i - u_j) vs (u_k - u_l) ordered exactly as the difference table says.
All arithmetic is exact (fractions); strict inequalities are handled by
a slack variable t required below every strict gap, and the model is
representable exactly when the supremum of t is positive.

Infeasible outcomes carry a certificate: a small list of constraint
indices whose conjunction is itself contradictory, checkable by exact
Fourier-Motzkin elimination (``check_certificate``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import ModelTooLarge
from .models import FiniteModel

SOLVER_SIZE_CAP = 8

_ZERO = Fraction(0)
_ONE = Fraction(1)

# Variable key for the strictness slack in row coefficient dicts.
_T = -1


# ---------------------------------------------------------------------------
# Canonical constraint indexing
# ---------------------------------------------------------------------------


def constraint_count(n: int) -> int:
    return n * n + n ** 4


def strict_index(n: int, i: int, j: int) -> int:
    return i * n + j


def diff_index(n: int, i: int, j: int, k: int, l: int) -> int:
    return n * n + ((i * n + j) * n + k) * n + l


def decode_constraint(model: FiniteModel, index: int):
    """Return (symbol, coeffs) for a constraint index.

    ``coeffs`` maps variable index to an integer coefficient; the
    constraint reads ``sum(coeffs * u) <symbol> 0``.
    """
    n = model.size
    if not 0 <= index < constraint_count(n):
        raise IndexError(f"constraint index {index} out of range")
    coeffs: dict[int, Fraction] = {}

    def bump(var: int, by: int) -> None:
        coeffs[var] = coeffs.get(var, _ZERO) + by
        if coeffs[var] == 0:
            del coeffs[var]

    if index < n * n:
        i, j = divmod(index, n)
        sym = model.compare_indices(i, j).symbol
        bump(i, 1)
        bump(j, -1)
        return sym, coeffs
    rest = index - n * n
    l = rest % n
    rest //= n
    k = rest % n
    rest //= n
    j = rest % n
    i = rest // n
    sym = model.diff_compare_indices(i, j, k, l).symbol
    bump(i, 1)
    bump(j, -1)
    bump(k, -1)
    bump(l, 1)
    return sym, coeffs


def describe_constraint(model: FiniteModel, index: int) -> str:
    n = model.size
    lab = model.labels
    if index < n * n:
        i, j = divmod(index, n)
        sym = model.compare_indices(i, j).symbol
        return f"u[{lab[i]}] {sym} u[{lab[j]}]"
    rest = index - n * n
    l = rest % n
    rest //= n
    k = rest % n
    rest //= n
    j = rest % n
    i = rest // n
    sym = model.diff_compare_indices(i, j, k, l).symbol
    return (
        f"(u[{lab[i]}] - u[{lab[j]}]) {sym} (u[{lab[k]}] - u[{lab[l]}])"
    )


# ---------------------------------------------------------------------------
# Rows: coeffs . x >= rhs with provenance
# ---------------------------------------------------------------------------


def _normalized(coeffs: dict[int, Fraction], rhs: Fraction):
    """Scale a row to canonical integer form for deduplication."""
    if not coeffs:
        return (), rhs
    denom_lcm = 1
    for c in coeffs.values():
        denom_lcm = denom_lcm * c.denominator // _gcd(denom_lcm, c.denominator)
    scaled = {v: c * denom_lcm for v, c in coeffs.items()}
    nums = [abs(int(c)) for c in scaled.values()]
    g = 0
    for x in nums:
        g = _gcd(g, x)
    if g > 1:
        scaled = {v: c / g for v, c in scaled.items()}
        rhs = rhs * denom_lcm / g
    else:
        rhs = rhs * denom_lcm
    key = tuple(sorted((v, c) for v, c in scaled.items()))
    return key, rhs


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


@dataclass(frozen=True)
class _Row:
    coeffs: tuple  # sorted ((var, Fraction), ...)
    rhs: Fraction
    prov: frozenset

    @classmethod
    def make(cls, coeffs: dict[int, Fraction], rhs: Fraction, prov) -> "_Row":
        key, nrhs = _normalized(coeffs, rhs)
        return cls(key, nrhs, frozenset(prov))

    def coeff_map(self) -> dict[int, Fraction]:
        return dict(self.coeffs)


def _fm_eliminate(rows: list[_Row], var: int) -> list[_Row]:
    """One Fourier-Motzkin step: project ``var`` out of >= rows."""
    pos, neg, rest = [], [], []
    for row in rows:
        c = dict(row.coeffs).get(var, _ZERO)
        if c > 0:
            pos.append(row)
        elif c < 0:
            neg.append(row)
        else:
            rest.append(row)
    out: dict[tuple, _Row] = {}
    for row in rest:
        out.setdefault((row.coeffs, row.rhs), row)
    for rp in pos:
        cp = dict(rp.coeffs)[var]
        for rn in neg:
            cn = dict(rn.coeffs)[var]
            combined: dict[int, Fraction] = {}
            for v, c in rp.coeffs:
                combined[v] = combined.get(v, _ZERO) + c / cp
            for v, c in rn.coeffs:
                combined[v] = combined.get(v, _ZERO) + c / (-cn)
            combined = {v: c for v, c in combined.items() if c != 0}
            rhs = rp.rhs / cp + rn.rhs / (-cn)
            row = _Row.make(combined, rhs, rp.prov | rn.prov)
            out.setdefault((row.coeffs, row.rhs), row)
    return list(out.values())


def _contradiction(rows: list[_Row]) -> _Row | None:
    for row in rows:
        if not row.coeffs and row.rhs > 0:
            return row
    return None


# ---------------------------------------------------------------------------
# Public results
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FeasibilityResult:
    """Outcome of the representability decision.

    Representable results carry exact utility values; infeasible
    results carry a certificate of constraint indices whose
    conjunction is contradictory.
    """

    representable: bool
    values: tuple[Fraction, ...] | None = None
    certificate: tuple[int, ...] | None = None

    @property
    def status(self) -> str:
        return "Representable" if self.representable else "Infeasible"


def check_certificate(model: FiniteModel, indices) -> bool:
    """True when the indexed constraints are jointly contradictory.

    Encodes strict constraints as ``form >= 1`` (valid up to positive
    scaling) and equalities as opposite pairs, then eliminates every
    variable by exact Fourier-Motzkin; a row ``0 >= positive`` proves
    the contradiction.
    """
    rows: list[_Row] = []
    for idx in indices:
        sym, coeffs = decode_constraint(model, idx)
        if sym == ">":
            rows.append(_Row.make(coeffs, _ONE, {idx}))
        elif sym == "<":
            rows.append(_Row.make({v: -c for v, c in coeffs.items()}, _ONE, {idx}))
        else:
            rows.append(_Row.make(coeffs, _ZERO, {idx}))
            rows.append(_Row.make({v: -c for v, c in coeffs.items()}, _ZERO, {idx}))
    for var in range(model.size):
        if _contradiction(rows):
            return True
        rows = _fm_eliminate(rows, var)
    return _contradiction(rows) is not None


# ---------------------------------------------------------------------------
# Main solver
# ---------------------------------------------------------------------------


def solve_additive_representation(
    model: FiniteModel, cap: int = SOLVER_SIZE_CAP
) -> FeasibilityResult:
    """Decide additive-difference representability of a finite model.

    Structural screens catch local contradictions with two- or
    three-constraint certificates; the surviving system is reduced to
    the level structure of the difference relation and decided exactly.
    Returned values always satisfy every table entry (verified before
    returning).

    Raises:
        ModelTooLarge: when model.size > cap.
    """
    n = model.size
    if n > cap:
        raise ModelTooLarge(f"size {n} exceeds solver cap {cap}")

    sidx = lambda i, j: strict_index(n, i, j)
    didx = lambda i, j, k, l: diff_index(n, i, j, k, l)
    scmp = lambda i, j: model.compare_indices(i, j)
    dcmp = model.diff_compare_indices

    def infeasible(indices) -> FeasibilityResult:
        return FeasibilityResult(False, certificate=tuple(sorted(indices)))

    # Screen: dual consistency of both tables.
    for i, j in product(range(n), repeat=2):
        if scmp(i, j) is not scmp(j, i).flip():
            return infeasible([sidx(i, j), sidx(j, i)])
    pairs = [(i, j) for i in range(n) for j in range(n)]
    for (i, j), (k, l) in product(pairs, repeat=2):
        if dcmp(i, j, k, l) is not dcmp(k, l, i, j).flip():
            return infeasible([didx(i, j, k, l), didx(k, l, i, j)])
        # Negation mirror: u_i - u_j >= u_k - u_l iff u_l - u_k >= u_j - u_i.
        if dcmp(i, j, k, l) is not dcmp(l, k, j, i):
            return infeasible([didx(i, j, k, l), didx(l, k, j, i)])

    # Screen: binary table must agree with differences against a null pair.
    for i, j in product(range(n), repeat=2):
        if scmp(i, j) is not dcmp(i, j, j, j):
            return infeasible([sidx(i, j), didx(i, j, j, j)])

    # Screen: diagonal pairs all tie (their forms are identically zero).
    for i, j in product(range(n), repeat=2):
        if dcmp(i, i, j, j).symbol != "=":
            return infeasible([didx(i, i, j, j)])

    # Weak-order structure of the difference relation, by score counting.
    # In a complete transitive relation the strict-dominance count
    # orders pairs exactly; any disagreement pinpoints an intransitive
    # triple, which is a three-constraint contradiction.
    score = {
        p: sum(1 for q in pairs if dcmp(*p, *q).symbol == ">") for p in pairs
    }
    for p, q in product(pairs, repeat=2):
        sym = dcmp(*p, *q).symbol
        want = ">" if score[p] > score[q] else "<" if score[p] < score[q] else "="
        if sym != want:
            for a, b, c in product(pairs, repeat=3):
                if (
                    dcmp(*a, *b).symbol != "<"
                    and dcmp(*b, *c).symbol != "<"
                    and dcmp(*a, *c).symbol == "<"
                ):
                    return infeasible(
                        [didx(*a, *b), didx(*b, *c), didx(*a, *c)]
                    )
            raise AssertionError("score mismatch without witness triple")

    # Levels of the difference relation, top first.  The zero level is
    # the one holding the diagonal pairs.  By the mirror screen the
    # level list is symmetric under pair reversal, so constraining the
    # levels at or above zero constrains everything.
    by_score: dict[int, list[tuple[int, int]]] = {}
    for p in pairs:
        by_score.setdefault(score[p], []).append(p)
    levels = [by_score[s] for s in sorted(by_score, reverse=True)]
    z = next(idx for idx, lv in enumerate(levels) if (0, 0) in lv)

    def form(p: tuple[int, int]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for var, sign in ((p[0], _ONE), (p[1], -_ONE)):
            out[var] = out.get(var, _ZERO) + sign
            if out[var] == 0:
                del out[var]
        return out

    def form_minus(p, q) -> dict[int, Fraction]:
        out = form(p)
        for var, c in form(q).items():
            out[var] = out.get(var, _ZERO) - c
            if out[var] == 0:
                del out[var]
        return out

    reps = [lv[0] for lv in levels[: z + 1]]
    reps[z] = (0, 0)

    eq_rows: list[tuple[dict[int, Fraction], frozenset]] = []
    for r in range(z + 1):
        for p in levels[r]:
            if p == reps[r]:
                continue
            coeffs = form_minus(p, reps[r])
            if coeffs:
                eq_rows.append((coeffs, frozenset({didx(*p, *reps[r])})))

    gap_rows: list[_Row] = []
    for r in range(z):
        coeffs = form_minus(reps[r], reps[r + 1])
        coeffs[_T] = coeffs.get(_T, _ZERO) - _ONE
        gap_rows.append(
            _Row.make(coeffs, _ZERO, {didx(*reps[r], *reps[r + 1])})
        )

    # Gauss elimination of the (homogeneous) equalities.
    pivots: list[tuple[int, dict[int, Fraction], frozenset]] = []

    def reduce_coeffs(coeffs: dict[int, Fraction], prov: frozenset):
        coeffs = dict(coeffs)
        for var, expr, eprov in pivots:
            if var in coeffs:
                c = coeffs.pop(var)
                for v2, c2 in expr.items():
                    coeffs[v2] = coeffs.get(v2, _ZERO) + c * c2
                    if coeffs[v2] == 0:
                        del coeffs[v2]
                prov = prov | eprov
        return coeffs, prov

    for coeffs, prov in eq_rows:
        coeffs, prov = reduce_coeffs(coeffs, prov)
        if not coeffs:
            continue
        pivot_var = min(coeffs)
        c = coeffs.pop(pivot_var)
        expr = {v: -cc / c for v, cc in coeffs.items()}
        pivots.append((pivot_var, expr, prov))

    reduced: list[_Row] = []
    for row in gap_rows:
        coeffs, prov = reduce_coeffs(row.coeff_map(), row.prov)
        reduced.append(_Row.make(coeffs, row.rhs, prov))

    # Fourier-Motzkin over the remaining u variables, keeping t.
    free_vars = sorted({v for row in reduced for v, _ in row.coeffs if v != _T})
    stages: list[tuple[int, list[_Row]]] = []
    rows = reduced
    for var in free_vars:
        stages.append((var, rows))
        rows = _fm_eliminate(rows, var)

    # Remaining rows involve only t, with coefficient c: c*t >= 0.
    # Everything is homogeneous, so the slack supremum is either
    # unbounded (representable, scale freely) or forced to 0.
    for row in rows:
        cm = row.coeff_map()
        c = cm.get(_T, _ZERO)
        if c < 0:
            return infeasible(row.prov)

    # Back-substitute a concrete point with t = 1.
    values: dict[int, Fraction] = {_T: _ONE}

    def row_bound(row: _Row, var: int):
        cm = row.coeff_map()
        c = cm[var]
        rest = sum(
            (cc * values[v] for v, cc in cm.items() if v != var), _ZERO
        )
        return c, (row.rhs - rest) / c

    for var, stage_rows in reversed(stages):
        lows, highs = [], []
        for row in stage_rows:
            if var not in dict(row.coeffs):
                continue
            c, bound = row_bound(row, var)
            (lows if c > 0 else highs).append(bound)
        if lows and highs:
            values[var] = (max(lows) + min(highs)) / 2
        elif lows:
            values[var] = max(lows) + 1
        elif highs:
            values[var] = min(highs) - 1
        else:
            values[var] = _ZERO

    # Expand Gauss pivots in reverse insertion order.
    for var, expr, _ in reversed(pivots):
        values[var] = sum((c * values.get(v, _ZERO) for v, c in expr.items()), _ZERO)

    u = tuple(values.get(i, _ZERO) for i in range(n))

    # Soundness backstop: the returned point must satisfy every entry.
    for i, j in product(range(n), repeat=2):
        got = "=" if u[i] == u[j] else (">" if u[i] > u[j] else "<")
        if got != scmp(i, j).symbol:
            raise AssertionError(f"solver point violates strict entry {i},{j}")
    for (i, j), (k, l) in product(pairs, repeat=2):
        d = (u[i] - u[j]) - (u[k] - u[l])
        got = "=" if d == 0 else (">" if d > 0 else "<")
        if got != dcmp(i, j, k, l).symbol:
            raise AssertionError(
                f"solver point violates diff entry {i},{j},{k},{l}"
            )
    return FeasibilityResult(True, values=u)
