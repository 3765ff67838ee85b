"""Correlation bounds for Golomb permutation pairs, and the character-sum
machinery behind them.

Every pair bound is driven by the relative exponents (r, s) with
g3 = g1^r, g4 = g2^s.  Candidates marked certified are the ones whose
derivation is fully stated (Weil multiplier from the eight-value set,
Lagrange degree count, the two complement-degree counts, the odd-q
square/non-square split over the coprime exponents, and the trivial
window size); the remaining published substitutions are exposed under
mode="all" for empirical screening only, never asserted.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace

import numpy as np

from .ff import Field
from .golomb import CostasPermutation, GolombPair, golomb_perm, make_pair
from .numtheory import SafeKind, classify_safe, mod_inverse, prime_power


@dataclass(frozen=True)
class ExponentPair:
    """Relative exponents (r, s), both coprime to q-1, with their inverses."""

    q: int
    r: int
    s: int
    r_inv: int
    s_inv: int


def exponent_pair(q: int, r: int, s: int) -> ExponentPair:
    m = q - 1
    if not (1 <= r <= q - 2 and 1 <= s <= q - 2):
        raise ValueError(f"exponents must lie in [1, {q - 2}]")
    if math.gcd(r * s, m) != 1:
        raise ValueError(f"gcd(r*s, q-1) must be 1, got r={r}, s={s}, q={q}")
    return ExponentPair(q, r, s, mod_inverse(r, m), mod_inverse(s, m))


def conjugate_multipliers(q: int) -> set[int]:
    """The residues p^j mod (q-1); (r,s)=(c,c) with c here is the identity class."""
    p, w = prime_power(q)
    m = q - 1
    out = set()
    pj = 1
    for _ in range(w):
        out.add(pj)
        pj = pj * p % m
    return out


def is_conjugate_exponents(q: int, r: int, s: int) -> bool:
    return r == s and r % (q - 1) in conjugate_multipliers(q)


# ---------------------------------------------------------------------------
# family-level and pair-level bounds
# ---------------------------------------------------------------------------


def g_family_bound(q: int) -> tuple[str, int]:
    """Bound on the fixed-g2 family maximum: ("UpperBound", 1 + isqrt(q)) for
    safe prime powers, otherwise the exact value ("Exact", (q-1)/t - 1)."""
    if q < 4:
        raise ValueError(f"bound needs a prime power q >= 4, got {q}")
    sc = classify_safe(q)
    if sc.kind is not SafeKind.NOT_SAFE:
        return "UpperBound", 1 + math.isqrt(q)
    return "Exact", (q - 1) // sc.t - 1


@dataclass(frozen=True)
class BoundCandidate:
    label: str
    value: float
    certified: bool


@dataclass(frozen=True)
class BoundReport:
    q: int
    r: int
    s: int
    candidates: tuple[BoundCandidate, ...]
    best: float  # minimum over the certified candidates
    exact: int | None = None

    def certified_values(self) -> list[float]:
        return [c.value for c in self.candidates if c.certified]

    def with_exact(self, exact: int) -> "BoundReport":
        return replace(self, exact=exact)

    def to_json(self) -> str:
        return json.dumps(
            {
                "q": self.q,
                "r": self.r,
                "s": self.s,
                "candidates": [
                    {"label": c.label, "value": c.value, "certified": c.certified}
                    for c in self.candidates
                ],
                "best": self.best,
                "exact": self.exact,
            },
            indent=2,
        )


def eight_value_set(ep: ExponentPair) -> tuple[int, ...]:
    q = ep.q
    return (ep.s, ep.s_inv, ep.r, ep.r_inv, q - ep.s, q - ep.r, q - ep.r_inv, q - ep.s_inv)


def bound_pair(q: int, ep: ExponentPair, mode: str = "certified") -> BoundReport:
    """All per-pair bound candidates for a non-conjugate exponent pair.

    The Weil candidate takes the smallest usable multiplier (> 1) from the
    eight-value set; exponent values equal to 1 carry no character-sum
    bound of their own.  ``mode="all"`` appends the loosely-stated
    substituted variants, flagged non-certified.
    """
    if mode not in ("certified", "all"):
        raise ValueError(f"unknown mode {mode!r}")
    if is_conjugate_exponents(q, ep.r, ep.s):
        raise ValueError(f"(r, s) = ({ep.r}, {ep.s}) is the conjugate class for q = {q}")
    rq = math.sqrt(q)
    weil_mult = min(e for e in eight_value_set(ep) if e > 1)
    cands = [
        BoundCandidate("weil_eight_set", 1 + weil_mult * rq, True),
        BoundCandidate("lagrange", float(max(ep.r, ep.s)), True),
        BoundCandidate("degree_r_complement_s", float((q - 1 - ep.s) + ep.r), True),
        BoundCandidate("degree_s_complement_r", float((q - 1 - ep.r) + ep.s), True),
        BoundCandidate("trivial_window", float(q - 2), True),
    ]
    if q % 2 == 1:
        half = (q - 1) / 2
        dist = min(abs(k - half) for k in (ep.r, ep.s, ep.r_inv, ep.s_inv))
        cands.append(BoundCandidate("odd_split_coprime", 1 + 2 * dist * rq, True))
    if mode == "all":
        m = q - 1
        cands.extend(
            [
                BoundCandidate("lagrange_complement_r", float(max(m - ep.r, ep.s)), False),
                BoundCandidate("lagrange_complement_s", float(max(ep.r, m - ep.s)), False),
                BoundCandidate(
                    "lagrange_complement_rs", float(max(m - ep.r, m - ep.s)), False
                ),
            ]
        )
        if q % 2 == 1:
            half = (q - 1) / 2
            disp = min(abs(k - half) for k in eight_value_set(ep))
            cands.append(BoundCandidate("odd_split_display_eight", 1 + 2 * disp * rq, False))
    best = min(c.value for c in cands if c.certified)
    return BoundReport(q, ep.r, ep.s, tuple(cands), best)


# ---------------------------------------------------------------------------
# the subfamily construction with its size and bound
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SubfamilySpec:
    """Window of generator exponents a^i, |i| <= theta, defining the g2 set."""

    q: int
    delta: float
    a: int
    theta: int
    members: tuple[int, ...]  # g2 encodings, ascending by exponent a^i mod (q-1)


def _window_base(q: int) -> int:
    p, _ = prime_power(q)
    return 5 if p == 3 else 3


def subfamily_spec(field: Field, delta: float) -> SubfamilySpec:
    q = field.q
    if q <= 7:
        raise ValueError(f"subfamily construction needs q > 7, got {q}")
    if classify_safe(q).kind is SafeKind.NOT_SAFE:
        raise ValueError(f"q = {q} is not a safe prime power")
    if not 0 < delta < 0.5:
        raise ValueError(f"delta must lie in (0, 1/2), got {delta}")
    m = q - 1
    a = _window_base(q)
    if math.gcd(a, m) != 1 or a == field.p:
        raise AssertionError(f"window base {a} invalid for q = {q}")
    theta = int(math.floor(delta * math.log(q) / (2 * math.log(a))))
    exps = {1}
    ai = 1
    a_inv = mod_inverse(a, m)
    bi = 1
    for _ in range(theta):
        ai = ai * a % m
        bi = bi * a_inv % m
        exps.add(ai)
        exps.add(bi)
    if len(exps) != 2 * theta + 1:
        raise AssertionError("window exponents collide; q too small for this delta")
    members = tuple(int(field.exp[e]) for e in sorted(exps))
    return SubfamilySpec(q, delta, a, theta, members)


def subfamily(field: Field, delta: float) -> tuple[SubfamilySpec, list[CostasPermutation]]:
    """The enlarged family {pi_{g1,g2}: g1 primitive, g2 in the window}.

    Size is exactly phi(q-1) * (2*theta + 1); members are pairwise distinct
    because distinct defining pairs in the window are never conjugates.
    """
    spec = subfamily_spec(field, delta)
    prims = field.primitive_elements()
    pairs = [make_pair(field, g1, g2) for g2 in spec.members for g1 in prims]
    seen = set()
    for pr in pairs:
        key = min(
            (pr.dlog1 * t % (field.q - 1), pr.dlog2 * t % (field.q - 1))
            for t in conjugate_multipliers(field.q)
        )
        if key in seen:
            raise AssertionError("conjugate pairs in subfamily; window base unsound")
        seen.add(key)
    return spec, [golomb_perm(pr) for pr in pairs]


def subfamily_bound(q: int, delta: float) -> tuple[float, float]:
    """(1 + a^(2 theta) sqrt(q), 1 + q^(1/2 + delta)); the first is sharper."""
    a = _window_base(q)
    theta = int(math.floor(delta * math.log(q) / (2 * math.log(a))))
    sharper = 1 + a ** (2 * theta) * math.sqrt(q)
    cap = 1 + q ** (0.5 + delta)
    return sharper, cap


# ---------------------------------------------------------------------------
# solution counting for the pair equations, and the Weil character-sum oracle
# ---------------------------------------------------------------------------

FORMS = ("ceq", "substituted", "incidence")


def solution_count(
    field: Field, g1: int, g2: int, ep: ExponentPair, u: int, v: int, form: str = "ceq"
) -> int:
    """Brute-force solution count of the pair equation in the chosen shape.

    ceq:          y != 1,       g1^(ru) (1-y)^r = 1 - g4^v y^s
    substituted:  z != g4^v,    g1^(-u) (1-z)^(r^-1) = 1 - g4^(-v s^-1) z^(s^-1)
    incidence:    all x,        g4^v (1-x)^s + g1^(ru) x^r = 1

    with g4 = g2^s.  Every field element is tested directly.
    """
    if form not in FORMS:
        raise ValueError(f"unknown form {form!r}")
    q = field.q
    m = q - 1
    g4 = field.pow(g2, ep.s)
    elems = np.arange(q, dtype=np.int64)
    if form == "ceq":
        c1 = field.pow(g1, ep.r * u)
        c2 = field.pow(g4, v)
        lhs = field.mul_all(field.pow_all(field.one_minus[elems], ep.r), c1)
        rhs = field.one_minus[field.mul_all(field.pow_all(elems, ep.s), c2)]
        ok = (lhs == rhs) & (elems != 1)
        return int(np.count_nonzero(ok))
    if form == "substituted":
        c1 = field.pow(g1, -u)
        c2 = field.pow(g4, (-v * ep.s_inv) % m)
        excl = field.pow(g4, v)
        lhs = field.mul_all(field.pow_all(field.one_minus[elems], ep.r_inv), c1)
        rhs = field.one_minus[field.mul_all(field.pow_all(elems, ep.s_inv), c2)]
        ok = (lhs == rhs) & (elems != excl)
        return int(np.count_nonzero(ok))
    c1 = field.pow(g1, ep.r * u)
    c2 = field.pow(g4, v)
    term1 = field.mul_all(field.pow_all(field.one_minus[elems], ep.s), c2)
    term2 = field.mul_all(field.pow_all(elems, ep.r), c1)
    return int(np.count_nonzero(field.add_all(term1, term2) == 1))


def solution_count_grid(
    field: Field, g1: int, g2: int, ep: ExponentPair, form: str = "ceq"
) -> np.ndarray:
    """Counts for every (u, v) in [0, q-2)^2 at once, via discrete logs.

    Independent of the brute-force path: for each (v, y) the equation fixes
    the unique u that solves it, so a bincount over u gives a full column.
    """
    if form not in ("ceq", "substituted"):
        raise ValueError("grid computation covers the two excluded-point forms")
    q = field.q
    m = q - 1
    elems = np.arange(q, dtype=np.int64)
    d1 = field.dlog(g1)
    g4 = field.pow(g2, ep.s)
    d4 = field.dlog(g4)
    out = np.zeros((m, m), dtype=np.int64)
    if form == "ceq":
        # u * (r d1) = log(1 - g4^v y^s) - r log(1 - y)  (mod m), y not in {1}
        coef_inv = mod_inverse(ep.r * d1 % m, m)
        base = field.pow_all(elems, ep.s)
        lterm = field.log[field.one_minus[elems]]  # log(1-y); y=1 handled by mask
        for v in range(m):
            rhs = field.one_minus[field.mul_all(base, field.pow(g4, v))]
            valid = (rhs != 0) & (elems != 1)
            uvals = ((field.log[rhs] - ep.r * lterm) * coef_inv) % m
            out[:, v] = np.bincount(uvals[valid], minlength=m)
        return out
    # substituted: u * (-d1) = log(1 - g4^(-v s^-1) z^(s^-1)) - r^-1 log(1 - z)
    coef_inv = mod_inverse((-d1) % m, m)
    base = field.pow_all(elems, ep.s_inv)
    lterm = field.log[field.one_minus[elems]]
    for v in range(m):
        c2 = field.pow(g4, (-v * ep.s_inv) % m)
        excl = field.pow(g4, v)
        rhs = field.one_minus[field.mul_all(base, c2)]
        # z = 1 zeroes the left side and is never a solution here: the right
        # side vanishes at z = 1 only when v = 0, where z = 1 = g4^v is the
        # excluded point anyway.
        valid = (rhs != 0) & (elems != excl) & (elems != 1)
        uvals = ((field.log[rhs] - ep.r_inv * lterm) * coef_inv) % m
        out[:, v] = np.bincount(uvals[valid], minlength=m)
    return out


@dataclass(frozen=True)
class WeilCheck:
    magnitude: float
    bound: float
    passed: bool


WEIL_TOLERANCE = 1e-6


def _character_sum_args(field: Field, g1: int, g2: int, ep: ExponentPair, u: int, v: int):
    """Encodings of g1^(ru) (1-y)^r (1 - g4^v y^s)^(q-2) over all y."""
    q = field.q
    elems = np.arange(q, dtype=np.int64)
    c1 = field.pow(g1, ep.r * u)
    g4 = field.pow(g2, ep.s)
    c2 = field.pow(g4, v)
    t1 = field.pow_all(field.one_minus[elems], ep.r)
    t2 = field.pow_all(field.one_minus[field.mul_all(field.pow_all(elems, ep.s), c2)], q - 2)
    return field.mul_all(field.mul_all(t1, t2), c1)


def weil_oracle(
    field: Field, g1: int, g2: int, ep: ExponentPair, u: int, v: int, j: int
) -> WeilCheck:
    """Numerically check |sum_y chi_j(...)| <= s * sqrt(q) for s > 1.

    The character argument is g1^(ru) (1-y)^r (1 - g4^v y^s)^(q-2) with the
    chi(0) = 0 convention; j must index a non-principal character and s must
    be > 1 with gcd(s, p) = 1 so the bound applies.
    """
    q = field.q
    m = q - 1
    if j % m == 0:
        raise ValueError("principal character carries no cancellation bound")
    if ep.s <= 1:
        raise ValueError("character-sum bound needs s > 1")
    if ep.s % field.p == 0:
        raise ValueError("s must be coprime to the characteristic")
    args = _character_sum_args(field, g1, g2, ep, u, v)
    nz = args != 0
    logs = field.log[args[nz]]
    total = field.unit_roots()[(j * logs) % m].sum()
    magnitude = float(abs(total))
    bound = ep.s * math.sqrt(q)
    return WeilCheck(magnitude, bound, magnitude <= bound + WEIL_TOLERANCE)


def character_average_count(
    field: Field, g1: int, g2: int, ep: ExponentPair, u: int, v: int
) -> tuple[float, int]:
    """Average of the full character sums (principal included) vs the exact count.

    Orthogonality makes (1/(q-1)) sum_j sum_y chi_j(arg) equal the number of
    y with arg = 1, which is the ceq solution count; returns (float average,
    integer count) so callers can compare within tolerance.
    """
    q = field.q
    m = q - 1
    args = _character_sum_args(field, g1, g2, ep, u, v)
    logs = field.log[args[args != 0]]
    cnt = np.bincount(logs, minlength=m).astype(np.float64)
    roots = field.unit_roots()
    j = np.arange(m)
    phases = (j[:, None] * np.arange(m)[None, :]) % m
    total = (cnt[None, :] * roots[phases]).sum()
    avg = float(total.real) / m
    exact = solution_count(field, g1, g2, ep, u, v, "ceq")
    return avg, exact
