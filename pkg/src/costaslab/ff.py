"""Arithmetic in GF(p^w) with full discrete-log tables.

A field element is its integer encoding sum(c_i * p**i) of the coefficient
vector (c_0, ..., c_{w-1}) in the quotient ring GF(p)[X]/(modulus).  The
modulus is the monic irreducible of degree w whose encoding (including the
leading coefficient) is minimal, and the canonical generator is the
primitive element of minimal encoding, so identical (p, w) always produce
bit-identical tables.  Published Conway polynomials may differ from this
canonical modulus.

Construction cost is O(q) multiplications; all later arithmetic is table
lookups.  The default size cap is q <= 2**22.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .numtheory import factorize, is_prime, mod_inverse, prime_power

DEFAULT_Q_LIMIT = 1 << 22


# ---------------------------------------------------------------------------
# dense polynomial helpers over GF(p), little-endian coefficient lists
# ---------------------------------------------------------------------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _rem(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of a modulo b (b nonzero), coefficients mod p."""
    a = _trim(a[:])
    inv_lead = mod_inverse(b[-1], p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        if c:
            off = len(a) - len(b)
            for k in range(len(b) - 1):
                a[off + k] = (a[off + k] - c * b[k]) % p
        a.pop()
        _trim(a)
    return a


def _mulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    return _rem(prod, f, p)


def _powmod(base: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    b = _rem(base, f, p)
    while e:
        if e & 1:
            result = _mulmod(result, b, f, p)
        b = _mulmod(b, b, f, p)
        e >>= 1
    return result


def _gcd_poly(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(a[:]), _trim(b[:])
    while b:
        a, b = b, _rem(a, b, p)
    return a


def _is_irreducible(f: list[int], p: int) -> bool:
    """Rabin test for a monic polynomial of degree w >= 1 over GF(p)."""
    w = len(f) - 1
    x = [0, 1]
    # X^(p^w) == X mod f
    t = x
    for _ in range(w):
        t = _powmod(t, p, f, p)
    d = _trim([(t[i] if i < len(t) else 0) - (x[i] if i < len(x) else 0) for i in range(max(len(t), 2))])
    d = [c % p for c in d]
    if _trim(d):
        return False
    # gcd(X^(p^(w/l)) - X, f) == 1 for each prime l | w
    for ell in {pr for pr, _ in factorize(w).factors}:
        t = x
        for _ in range(w // ell):
            t = _powmod(t, p, f, p)
        diff = [(t[i] if i < len(t) else 0) - (x[i] if i < len(x) else 0) for i in range(max(len(t), 2))]
        diff = _trim([c % p for c in diff])
        g = _gcd_poly(f, diff, p)
        if len(g) != 1:
            return False
    return True


def _min_irreducible(p: int, w: int) -> tuple[int, ...]:
    """The monic irreducible of degree w over GF(p) with minimal encoding."""
    if w == 1:
        return (0, 1)
    qw = p**w
    for enc in range(qw, 2 * qw):
        coeffs = _decode(enc, p, w + 1)
        if coeffs[0] == 0:
            continue  # root at 0
        if _is_irreducible(list(coeffs), p):
            return coeffs
    raise AssertionError(f"no irreducible of degree {w} over GF({p})")


def _decode(enc: int, p: int, width: int) -> tuple[int, ...]:
    digits = []
    for _ in range(width):
        enc, r = divmod(enc, p)
        digits.append(r)
    return tuple(digits)


def _encode(digits, p: int) -> int:
    enc = 0
    for d in reversed(digits):
        enc = enc * p + d
    return enc


# ---------------------------------------------------------------------------
# the field object
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CharacterSpec:
    """Multiplicative character chi_j; order (q-1)/gcd(j, q-1); j=0 principal."""

    j: int
    order: int


class Field:
    """GF(p^w) with exp/log tables for the canonical generator.

    Elements are plain ints in [0, q), the base-p encodings of coefficient
    vectors; 0 and 1 are the additive and multiplicative identities.
    """

    def __init__(self, p: int, w: int, q_limit: int = DEFAULT_Q_LIMIT):
        if not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if w < 1:
            raise ValueError(f"extension degree must be >= 1, got {w}")
        q = p**w
        if q > q_limit:
            raise ValueError(f"q = {q} exceeds the table limit {q_limit}")
        if q < 3:
            raise ValueError("fields smaller than GF(3) have no Costas permutations")
        self.p = p
        self.w = w
        self.q = q
        self.modulus = _min_irreducible(p, w)
        self.generator = self._find_generator()
        self._build_tables()

    # -- construction ------------------------------------------------------

    def _poly_order_checks(self, enc: int, cofactor_exps: list[int]) -> bool:
        base = list(_decode(enc, self.p, self.w))
        modulus = list(self.modulus)
        for e in cofactor_exps:
            if self.w == 1:
                if pow(enc, e, self.p) == 1:
                    return False
            else:
                if _powmod(base, e, modulus, self.p) == [1]:
                    return False
        return True

    def _find_generator(self) -> int:
        m = self.q - 1
        cof = [m // ell for ell, _ in factorize(m).factors]
        for enc in range(2, self.q):
            if self._poly_order_checks(enc, cof):
                return enc
        raise AssertionError("no primitive element found")

    def _mul_raw(self, a: int, b: int) -> int:
        """Table-free multiplication, used only while building tables."""
        if self.w == 1:
            return a * b % self.p
        pa = list(_decode(a, self.p, self.w))
        pb = list(_decode(b, self.p, self.w))
        return _encode(_mulmod(pa, pb, list(self.modulus), self.p) + [0] * self.w, self.p)

    def _build_tables(self):
        q, m = self.q, self.q - 1
        exp = np.zeros(m, dtype=np.int64)
        acc = 1
        for k in range(m):
            exp[k] = acc
            acc = self._mul_raw(acc, self.generator)
        if acc != 1:
            raise AssertionError("generator order mismatch")
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(m, dtype=np.int64)
        if log[0] != -1 or np.any(log[1:] < 0):
            raise AssertionError("exp table does not enumerate all nonzero elements")
        self.exp = exp
        self.log = log
        # one_minus[t] = encoding of 1 - t, vectorized digit arithmetic
        encs = np.arange(q, dtype=np.int64)
        digits = []
        rest = encs
        for _ in range(self.w):
            rest, d = np.divmod(rest, self.p)
            digits.append(d)
        digits[0] = (1 - digits[0]) % self.p
        for i in range(1, self.w):
            digits[i] = (-digits[i]) % self.p
        one_minus = np.zeros(q, dtype=np.int64)
        for d in reversed(digits):
            one_minus = one_minus * self.p + d
        self.one_minus = one_minus
        self._roots = None  # complex roots of unity, built on demand

    # -- arithmetic --------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.w == 1:
            return (a + b) % self.p
        da = _decode(a, self.p, self.w)
        db = _decode(b, self.p, self.w)
        return _encode([(x + y) % self.p for x, y in zip(da, db)], self.p)

    def neg(self, a: int) -> int:
        if self.w == 1:
            return (-a) % self.p
        return _encode([(-x) % self.p for x in _decode(a, self.p, self.w)], self.p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        m = self.q - 1
        return int(self.exp[(self.log[a] + self.log[b]) % m])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        m = self.q - 1
        return int(self.exp[(m - self.log[a]) % m])

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e > 0:
                return 0
            if e == 0:
                return 1
            raise ZeroDivisionError("0 cannot be raised to a negative power")
        m = self.q - 1
        return int(self.exp[(self.log[a] * (e % m)) % m])

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def dlog(self, a: int) -> int:
        """Discrete log base the canonical generator; rejects 0."""
        if a == 0:
            raise ZeroDivisionError("0 has no discrete logarithm")
        return int(self.log[a])

    # -- vectorized variants over arrays of encodings ------------------------

    def pow_all(self, a: np.ndarray, e: int) -> np.ndarray:
        """Elementwise a**e with the scalar pow conventions (e >= 0)."""
        if e < 0:
            raise ValueError("pow_all requires e >= 0")
        a = np.asarray(a, dtype=np.int64)
        m = self.q - 1
        out = self.exp[(self.log[a] * (e % m)) % m]
        if e == 0:
            return np.ones_like(a)
        return np.where(a == 0, 0, out)

    def mul_all(self, a: np.ndarray, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        m = self.q - 1
        out = self.exp[(self.log[a] + self.log[b]) % m]
        return np.where((a == 0) | (b == 0), 0, out)

    def add_all(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.w == 1:
            return (a + b) % self.p
        out = np.zeros_like(a)
        scale = 1
        for _ in range(self.w):
            da = (a // scale) % self.p
            db = (b // scale) % self.p
            out += ((da + db) % self.p) * scale
            scale *= self.p
        return out

    # -- derived data ------------------------------------------------------

    def primitive_elements(self) -> list[int]:
        """Elements of multiplicative order q-1, ascending by encoding."""
        m = self.q - 1
        ks = [k for k in range(m) if math.gcd(k, m) == 1]
        return sorted(int(self.exp[k]) for k in ks)

    def is_primitive(self, a: int) -> bool:
        return a != 0 and math.gcd(int(self.log[a]), self.q - 1) == 1

    def character(self, j: int) -> CharacterSpec:
        m = self.q - 1
        if not 0 <= j <= m - 1:
            raise ValueError(f"character index must be in [0, {m - 1}], got {j}")
        return CharacterSpec(j, m // math.gcd(j, m))

    def char_value(self, spec: CharacterSpec | int, a: int) -> complex:
        """chi_j(a) = exp(2*pi*i * j*log(a) / (q-1)); chi_j(0) = 0."""
        j = spec.j if isinstance(spec, CharacterSpec) else spec
        if a == 0:
            return 0j
        m = self.q - 1
        return self.unit_roots()[(j * int(self.log[a])) % m]

    def unit_roots(self) -> np.ndarray:
        """Powers of exp(2*pi*i/(q-1)), index k -> e^(2*pi*i*k/(q-1))."""
        if self._roots is None:
            m = self.q - 1
            self._roots = np.exp(2j * np.pi * np.arange(m) / m)
        return self._roots

    # -- serialization -----------------------------------------------------

    def to_json(self) -> str:
        return json.dumps(
            {
                "p": self.p,
                "w": self.w,
                "modulus_coeffs": list(self.modulus),
                "generator_enc": self.generator,
            }
        )

    def describe(self) -> dict:
        return json.loads(self.to_json())

    def __repr__(self):
        return f"Field(p={self.p}, w={self.w}, q={self.q})"


def field_new(p: int, w: int, q_limit: int = DEFAULT_Q_LIMIT) -> Field:
    """Construct GF(p^w) with canonical modulus, generator, and log tables."""
    return Field(p, w, q_limit=q_limit)


def field_for_q(q: int, q_limit: int = DEFAULT_Q_LIMIT) -> Field:
    """Construct the field of order q, rejecting non-prime-powers."""
    pw = prime_power(q)
    if pw is None:
        raise ValueError(f"{q} is not a prime power")
    return Field(*pw, q_limit=q_limit)


def field_from_json(text: str) -> Field:
    data = json.loads(text)
    f = Field(int(data["p"]), int(data["w"]))
    if list(f.modulus) != list(data["modulus_coeffs"]) or f.generator != data["generator_enc"]:
        raise ValueError("serialized field does not match canonical construction")
    return f
