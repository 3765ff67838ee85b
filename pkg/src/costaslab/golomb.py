"""Golomb Costas permutations: construction, verification, families.

A permutation pi of {1..q-2} is built from primitive elements g1, g2 of
GF(q) by pi(x) = y iff g1^x + g2^y = 1.  Two defining pairs give the same
permutation exactly when they are Frobenius conjugates
(g1^(p^j), g2^(p^j)), so the full family has phi(q-1)^2 / w distinct
members; with g2 held fixed there are phi(q-1).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .ff import Field
from .numtheory import euler_phi, mod_inverse


@dataclass(frozen=True)
class GolombPair:
    """Defining pair (g1, g2) of primitive elements, with their discrete logs."""

    field: Field
    g1: int
    g2: int
    dlog1: int
    dlog2: int

    def __repr__(self):
        return f"GolombPair(q={self.field.q}, g1={self.g1}, g2={self.g2})"


def make_pair(field: Field, g1: int, g2: int) -> GolombPair:
    for g in (g1, g2):
        if not field.is_primitive(g):
            raise ValueError(f"{g} is not a primitive element of GF({field.q})")
    return GolombPair(field, g1, g2, field.dlog(g1), field.dlog(g2))


def pair_from_dlogs(field: Field, d1: int, d2: int) -> GolombPair:
    m = field.q - 1
    d1 %= m
    d2 %= m
    if math.gcd(d1, m) != 1 or math.gcd(d2, m) != 1:
        raise ValueError(f"exponents ({d1}, {d2}) are not coprime to {m}")
    return GolombPair(field, int(field.exp[d1]), int(field.exp[d2]), d1, d2)


@dataclass(frozen=True)
class CostasPermutation:
    """Permutation of {1..n}; values[x-1] = f(x).  origin is the defining pair."""

    values: tuple[int, ...]
    origin: GolombPair | None = None

    @property
    def n(self) -> int:
        return len(self.values)

    def __call__(self, x: int) -> int:
        return self.values[x - 1]

    def to_json(self) -> str:
        if self.origin is None:
            raise ValueError("permutation has no defining pair to serialize")
        f = self.origin.field
        return json.dumps(
            {
                "q": f.q,
                "p": f.p,
                "w": f.w,
                "modulus_coeffs": list(f.modulus),
                "g1_enc": self.origin.g1,
                "g2_enc": self.origin.g2,
                "perm": list(self.values),
            }
        )


def golomb_perm(pair: GolombPair) -> CostasPermutation:
    """The permutation defined by g1^x + g2^y = 1, computed via log tables."""
    f = pair.field
    m = f.q - 1
    x = np.arange(1, m, dtype=np.int64)
    g1x = f.exp[(pair.dlog1 * x) % m]
    t = f.one_minus[g1x]  # 1 - g1^x, never 0 for x in 1..q-2
    y = (f.log[t] * mod_inverse(pair.dlog2, m)) % m
    return CostasPermutation(tuple(int(v) for v in y), pair)


def perm_values_matrix(field: Field, pairs: list[GolombPair]) -> np.ndarray:
    """Stack golomb_perm values for many pairs into an int32 matrix."""
    m = field.q - 1
    x = np.arange(1, m, dtype=np.int64)
    out = np.empty((len(pairs), m - 1), dtype=np.int32)
    for i, pr in enumerate(pairs):
        g1x = field.exp[(pr.dlog1 * x) % m]
        t = field.one_minus[g1x]
        out[i] = (field.log[t] * mod_inverse(pr.dlog2, m)) % m
    return out


def is_costas(values, *, _distinct_error: bool = True) -> bool:
    """Check the distinct-differences property of a permutation of {1..n}.

    Non-permutations raise ValueError (distinct from a False result).
    Row k of the difference triangle is scanned with a seen-set; O(n^2).
    """
    f = np.asarray(values, dtype=np.int64)
    n = f.size
    if n == 0 or f.min() < 1 or f.max() > n or np.unique(f).size != n:
        raise ValueError("input is not a permutation of {1..n}")
    for k in range(1, n - 1):
        diffs = f[k:] - f[: n - k]
        if np.unique(diffs).size != diffs.size:
            return False
    return True


@dataclass(frozen=True)
class ConjugacyClass:
    """Frobenius orbit of a defining pair; all members give one permutation."""

    members: tuple[GolombPair, ...]
    canonical: GolombPair


def conjugates(pair: GolombPair) -> ConjugacyClass:
    """The w pairs (g1^(p^j), g2^(p^j)); canonical = minimal (enc g1, enc g2)."""
    f = pair.field
    m = f.q - 1
    seen = set()
    members = []
    pj = 1
    for _ in range(f.w):
        d1 = pair.dlog1 * pj % m
        d2 = pair.dlog2 * pj % m
        if (d1, d2) not in seen:
            seen.add((d1, d2))
            members.append(pair_from_dlogs(f, d1, d2))
        pj = pj * f.p % m
    members.sort(key=lambda pr: (pr.g1, pr.g2))
    return ConjugacyClass(tuple(members), members[0])


def are_conjugate(a: GolombPair, b: GolombPair) -> bool:
    m = a.field.q - 1
    pj = 1
    for _ in range(a.field.w):
        if (a.dlog1 * pj % m, a.dlog2 * pj % m) == (b.dlog1, b.dlog2):
            return True
        pj = pj * a.field.p % m
    return False


def family_G(field: Field, g2: int | None = None) -> list[CostasPermutation]:
    """All permutations with the given g2 fixed (canonical generator default)."""
    if g2 is None:
        g2 = field.generator
    if not field.is_primitive(g2):
        raise ValueError(f"{g2} is not primitive in GF({field.q})")
    return [golomb_perm(make_pair(field, g1, g2)) for g1 in field.primitive_elements()]


def family_L_pairs(field: Field) -> list[GolombPair]:
    """One canonical defining pair per conjugacy class, ordered by dlogs."""
    m = field.q - 1
    units = [k for k in range(1, m) if math.gcd(k, m) == 1]
    mults = []
    pj = 1
    for _ in range(field.w):
        mults.append(pj)
        pj = pj * field.p % m
    chosen = {}
    for d1 in units:
        for d2 in units:
            orbit = [(d1 * t % m, d2 * t % m) for t in mults]
            key = min(orbit)
            if key not in chosen:
                # canonical member: minimal (enc g1, enc g2) in the orbit
                canon = min(orbit, key=lambda dd: (int(field.exp[dd[0]]), int(field.exp[dd[1]])))
                chosen[key] = canon
    pairs = sorted(chosen.values())
    return [pair_from_dlogs(field, d1, d2) for d1, d2 in pairs]


def family_L(field: Field) -> list[CostasPermutation]:
    """The full deduplicated family; exactly phi(q-1)^2 / w permutations."""
    perms = [golomb_perm(pr) for pr in family_L_pairs(field)]
    expected = euler_phi(field.q - 1) ** 2 // field.w
    if len(perms) != expected:
        raise AssertionError(f"family size {len(perms)} != phi^2/w = {expected}")
    return perms


def perm_from_json(text: str) -> CostasPermutation:
    from .ff import field_for_q

    data = json.loads(text)
    field = field_for_q(int(data["q"]))
    if list(field.modulus) != list(data["modulus_coeffs"]):
        raise ValueError("modulus in file does not match canonical field")
    pair = make_pair(field, int(data["g1_enc"]), int(data["g2_enc"]))
    perm = CostasPermutation(tuple(int(v) for v in data["perm"]), pair)
    return perm
