"""Exact verification laboratory for Golomb Costas permutations over GF(p^w).

Builds the algebraic permutation families, computes exhaustive
cross-correlations with a compiled scan kernel (pure-Python fallback when
the extension is unavailable), and evaluates every certified correlation
bound alongside the exact counts.
"""

from .numtheory import (
    SafeClass,
    SafeKind,
    classify_safe,
    euler_phi,
    factorize,
    mod_inverse,
    prime_power,
    safe_list,
    tau,
)
from .ff import Field, field_for_q, field_new

__version__ = "0.1.0"
