"""Exact cross-correlation of permutation pairs and family-wide maxima.

The shift (u, v) ranges over 1-n <= u, v <= n-1 and v is a plain integer
difference (never reduced mod q-1).  Family scans cover ordered pairs with
u >= 0 only: C_{f1,f2}(u,v) = C_{f2,f1}(-u,-v) makes that half-space exact
for the maximum, and with ``restrict_nonneg`` (sound for families closed
under g2 -> g2^-1, such as the full Golomb family) the scan shrinks to
0 <= u, v <= n-1.

The scan kernel is the compiled extension when available, with a numpy
fallback; ``BACKEND`` records which one is active.
"""

from __future__ import annotations

import csv
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import _corr_py

try:  # compiled core; fall back to numpy kernels if the build is absent
    from . import _corrcore as _kern

    HAVE_EXT = True
except ImportError:  # pragma: no cover - exercised only in no-extension installs
    _kern = _corr_py
    HAVE_EXT = False

BACKEND = _kern.BACKEND

from .golomb import CostasPermutation, golomb_perm, make_pair

WITNESS_CAP = 100


def _values(f) -> np.ndarray:
    if isinstance(f, CostasPermutation):
        return np.asarray(f.values, dtype=np.int32)
    return np.asarray(f, dtype=np.int32)


def cross_correlation(f1, f2, u: int, v: int) -> int:
    """Number of x with f1(x) + v = f2(x + u), both sides in range."""
    a, b = _values(f1), _values(f2)
    n = a.size
    if b.size != n:
        raise ValueError(f"length mismatch: {n} vs {b.size}")
    if not (1 - n <= u <= n - 1 and 1 - n <= v <= n - 1):
        raise ValueError(f"shift ({u}, {v}) outside [1-n, n-1] for n = {n}")
    i0 = max(0, -u)
    i1 = min(n, n - u)
    return int(np.count_nonzero(a[i0:i1].astype(np.int64) + v == b[i0 + u : i1 + u]))


@dataclass(frozen=True)
class CorrelationTable:
    """All shift counts for one ordered pair; counts[u+n-1, v+n-1]."""

    n: int
    counts: np.ndarray

    def count(self, u: int, v: int) -> int:
        return int(self.counts[u + self.n - 1, v + self.n - 1])

    def row_sum(self, u: int) -> int:
        return int(self.counts[u + self.n - 1].sum())

    def max_value(self, exclude_center: bool = False) -> int:
        if not exclude_center:
            return int(self.counts.max())
        t = self.counts.copy()
        t[self.n - 1, self.n - 1] = 0
        return int(t.max())


def correlation_table(f1, f2) -> CorrelationTable:
    """Exact counts for every shift, O(n^2) accumulation."""
    a, b = _values(f1), _values(f2)
    if a.size != b.size:
        raise ValueError(f"length mismatch: {a.size} vs {b.size}")
    return CorrelationTable(a.size, _kern.corr_table(a, b))


def autocorr_offpeak_max(f) -> int:
    """Largest autocorrelation count away from the (0, 0) peak."""
    return int(_kern.autocorr_offpeak_max(_values(f)))


def is_costas_values(f: np.ndarray) -> bool:
    """Kernel-backed distinct-differences check (permutation assumed valid)."""
    return bool(_kern.is_costas_kernel(np.ascontiguousarray(f, dtype=np.int32)))


@dataclass(frozen=True)
class FamilyMaxReport:
    """Exhaustive family maximum with witnesses.

    ``witnesses`` holds up to WITNESS_CAP tuples (i, j, u, v) in
    lexicographic order over the scan domain (ordered pairs, u >= 0);
    ``total_maxima`` counts every attaining cell in that domain exactly.
    """

    family: str
    size: int
    n: int
    value: int
    total_maxima: int
    witnesses: tuple[tuple[int, int, int, int], ...]
    restrict_nonneg: bool
    elapsed_s: float
    backend: str = BACKEND

    def to_json(self) -> str:
        d = {
            "family": self.family,
            "size": self.size,
            "n": self.n,
            "value": self.value,
            "total_maxima": self.total_maxima,
            "witnesses": [list(w) for w in self.witnesses],
            "scan_domain": "ordered pairs, u>=0" + (", v>=0" if self.restrict_nonneg else ""),
            "elapsed_s": round(self.elapsed_s, 6),
            "backend": self.backend,
        }
        return json.dumps(d, indent=2)


def scan_steps_estimate(size: int, n: int) -> int:
    """Elementary accumulation steps for a full family scan."""
    return size * (size - 1) * (n * (n + 1) // 2)


def perm_matrix(family) -> np.ndarray:
    if isinstance(family, np.ndarray):
        return np.ascontiguousarray(family, dtype=np.int32)
    return np.ascontiguousarray([_values(f) for f in family], dtype=np.int32)


def family_max(
    family,
    family_id: str = "family",
    restrict_nonneg: bool = False,
    threads: int = 1,
    witness_cap: int = WITNESS_CAP,
) -> FamilyMaxReport:
    """Exact maximal cross-correlation over all ordered distinct pairs.

    The result value is independent of ``threads``; blocks are merged in
    index order so witness lists are byte-stable too.
    """
    perms = perm_matrix(family)
    m, n = perms.shape
    if m < 2:
        raise ValueError("family must contain at least two permutations")
    t0 = time.perf_counter()
    if threads <= 1 or m < 4:
        parts = [_kern.family_scan(perms, 0, m, restrict_nonneg, witness_cap)]
    else:
        nblocks = min(m, threads * 4)
        bounds = np.linspace(0, m, nblocks + 1, dtype=int)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futs = [
                pool.submit(_kern.family_scan, perms, int(a), int(b), restrict_nonneg, witness_cap)
                for a, b in zip(bounds[:-1], bounds[1:])
                if a < b
            ]
            parts = [f.result() for f in futs]
    best = max(p[0] for p in parts)
    total = sum(p[1] for p in parts if p[0] == best)
    wits: list[tuple[int, int, int, int]] = []
    for p in parts:
        if p[0] != best:
            continue
        for row in p[2]:
            if len(wits) >= witness_cap:
                break
            wits.append((int(row[0]), int(row[1]), int(row[2]), int(row[3])))
    return FamilyMaxReport(
        family=family_id,
        size=m,
        n=n,
        value=int(best),
        total_maxima=int(total),
        witnesses=tuple(wits),
        restrict_nonneg=restrict_nonneg,
        elapsed_s=time.perf_counter() - t0,
    )


def pair_max(f1, f2) -> int:
    """Max count over every shift (both signs) for one pair of permutations."""
    perms = perm_matrix([f1, f2])
    best, _, _ = _kern.family_scan(perms, 0, 2, False, 0)
    return int(best)


def symmetry_check(f1: CostasPermutation, f2: CostasPermutation) -> bool:
    """Verify the two shift/inversion identities over every shift.

    C_{f1,f2}(-u,v) = C_{f2,f1}(u,-v), and C_{f1,f2}(u,-v) equals the
    correlation of the permutations built from (g1, g2^-1) and (g3, g4^-1).
    """
    if f1.origin is None or f2.origin is None:
        raise ValueError("symmetry_check needs permutations with defining pairs")
    t12 = correlation_table(f1, f2).counts
    t21 = correlation_table(f2, f1).counts
    if not np.array_equal(t12[::-1, :], t21[:, ::-1]):
        return False
    fld = f1.origin.field
    inv1 = golomb_perm(make_pair(fld, f1.origin.g1, fld.inv(f1.origin.g2)))
    inv2 = golomb_perm(make_pair(fld, f2.origin.g1, fld.inv(f2.origin.g2)))
    t_inv = correlation_table(inv1, inv2).counts
    return np.array_equal(t12[:, ::-1], t_inv)


def export_table_csv(out, field, pair1, pair2, table: CorrelationTable) -> None:
    """Write one row per shift: q, defining pair encodings, u, v, count."""
    writer = csv.writer(out)
    writer.writerow(["q", "g1_enc", "g2_enc", "g3_enc", "g4_enc", "u", "v", "count"])
    n = table.n
    for ui in range(2 * n - 1):
        for vi in range(2 * n - 1):
            writer.writerow(
                [
                    field.q,
                    pair1.g1,
                    pair1.g2,
                    pair2.g1,
                    pair2.g2,
                    ui - (n - 1),
                    vi - (n - 1),
                    int(table.counts[ui, vi]),
                ]
            )
