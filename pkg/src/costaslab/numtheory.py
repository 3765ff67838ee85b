"""Integer utilities: factorization, totient, divisor counts, safe prime powers.

Everything here is deterministic and exact for n up to 2**40 (trial division
to 2**20 plus a Miller-Rabin witness set that is exact below 2**64).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

_TRIAL_LIMIT = 1 << 20
# Witness set proven sufficient for all n < 3.3e24 (covers 2**64).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 2**64."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Factorization:
    """Prime factorization of n; factors sorted by prime."""

    n: int
    factors: tuple[tuple[int, int], ...]

    def divisors(self) -> list[int]:
        """All positive divisors, ascending."""
        divs = [1]
        for p, e in self.factors:
            divs = [d * p**k for d in divs for k in range(e + 1)]
        return sorted(divs)


def factorize(n: int) -> Factorization:
    """Factor a positive integer (intended range n <= 2**40).

    Trial division up to 2**20; any remaining cofactor is prime in that
    range and is verified as such.
    """
    if n < 1:
        raise ValueError(f"factorize requires n >= 1, got {n}")
    m = n
    factors = []
    d = 2
    while d * d <= m and d <= _TRIAL_LIMIT:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            factors.append((d, e))
        d += 1 if d == 2 else 2
    if m > 1:
        if not is_prime(m):
            raise ValueError(f"cofactor {m} of {n} is not prime; n out of supported range")
        factors.append((m, 1))
    return Factorization(n, tuple(factors))


def euler_phi(n: int) -> int:
    """Euler totient via the factorization of n."""
    phi = 1
    for p, e in factorize(n).factors:
        phi *= (p - 1) * p ** (e - 1)
    return phi


def tau(n: int) -> int:
    """Number of positive divisors of n."""
    t = 1
    for _, e in factorize(n).factors:
        t *= e + 1
    return t


def gcd(a: int, b: int) -> int:
    return math.gcd(a, b)


def mod_inverse(a: int, m: int) -> int:
    """The unique x in [1, m-1] with a*x = 1 (mod m); requires gcd(a, m) = 1."""
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    if math.gcd(a, m) != 1:
        raise ValueError(f"{a} is not invertible mod {m} (gcd {math.gcd(a, m)})")
    return pow(a, -1, m)


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, w) with q = p**w and p prime, or None.

    Tests integer w-th roots from the largest possible exponent down.
    """
    if q < 2:
        return None
    for w in range(q.bit_length() - 1, 0, -1):
        p = round(q ** (1.0 / w))
        for cand in (p - 1, p, p + 1):
            if cand >= 2 and cand**w == q and is_prime(cand):
                return cand, w
    return None


class SafeKind(Enum):
    SAFE_PRIME = "SafePrime"
    MERSENNE_EVEN = "MersenneEven"
    STRICT_SAFE_POWER3 = "StrictSafePower3"
    NOT_SAFE = "NotSafe"


@dataclass(frozen=True)
class SafeClass:
    """Classification of a prime power q by the smallest prime divisor t
    of (q-1)/2 (odd q) or q-1 (even q)."""

    q: int
    kind: SafeKind
    t: int


def _smallest_prime_divisor(n: int) -> int:
    return factorize(n).factors[0][0]


def classify_safe(q: int) -> SafeClass:
    """Classify a prime power q >= 4 as safe or not.

    q qualifies when q is odd with (q-1)/2 prime (a safe prime, or 3**w with
    w an odd prime), or q = 2**w with q-1 a Mersenne prime.
    """
    if q < 4:
        raise ValueError(f"classification requires q >= 4, got {q}")
    pw = prime_power(q)
    if pw is None:
        raise ValueError(f"{q} is not a prime power")
    p, w = pw
    if q % 2 == 0:
        t = _smallest_prime_divisor(q - 1)
        if t == q - 1:
            return SafeClass(q, SafeKind.MERSENNE_EVEN, t)
        return SafeClass(q, SafeKind.NOT_SAFE, t)
    t = _smallest_prime_divisor((q - 1) // 2)
    if t == (q - 1) // 2:
        if w == 1:
            return SafeClass(q, SafeKind.SAFE_PRIME, t)
        if p == 3:
            return SafeClass(q, SafeKind.STRICT_SAFE_POWER3, t)
    return SafeClass(q, SafeKind.NOT_SAFE, t)


def prime_powers_upto(qmax: int) -> list[int]:
    """All prime powers p**w <= qmax with w >= 1, ascending."""
    if qmax < 2:
        return []
    sieve = bytearray([1]) * (qmax + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(qmax) + 1):
        if sieve[i]:
            sieve[i * i :: i] = b"\x00" * len(sieve[i * i :: i])
    out = []
    for p in range(2, qmax + 1):
        if sieve[p]:
            v = p
            while v <= qmax:
                out.append(v)
                v *= p
    out.sort()
    return out


def safe_list(qmax: int) -> list[int]:
    """Ascending safe prime powers q with 4 <= q <= qmax."""
    if qmax < 4:
        raise ValueError(f"safe_list requires qmax >= 4, got {qmax}")
    return [
        q
        for q in prime_powers_upto(qmax)
        if q >= 4 and classify_safe(q).kind is not SafeKind.NOT_SAFE
    ]
