"""Pure-Python (numpy) correlation kernels.

Fallback backend with the same call surface as the compiled extension
``_corrcore``; selected automatically when the extension is missing.
All counting is exact integer arithmetic.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

BACKEND = "python"


@lru_cache(maxsize=32)
def _upper_triangle(n: int):
    """Index pairs (x, y) with y >= x, plus the shift part of the table key."""
    xs, ys = np.triu_indices(n)
    key_base = (ys - xs).astype(np.int64) * (2 * n - 1) + (n - 1)
    return xs, ys, key_base


def is_costas_kernel(f: np.ndarray) -> bool:
    """Distinct-differences check; assumes f is a valid permutation array."""
    f = np.asarray(f, dtype=np.int64)
    n = f.size
    for k in range(1, n - 1):
        diffs = f[k:] - f[: n - k]
        if np.unique(diffs).size != diffs.size:
            return False
    return True


def corr_table(f1: np.ndarray, f2: np.ndarray) -> np.ndarray:
    """Full cross-correlation table, shape (2n-1, 2n-1), index [u+n-1, v+n-1]."""
    f1 = np.asarray(f1, dtype=np.int64)
    f2 = np.asarray(f2, dtype=np.int64)
    n = f1.size
    x = np.arange(n)
    u_part = (x[None, :] - x[:, None] + n - 1).ravel() * (2 * n - 1)
    v_part = (f2[None, :] - f1[:, None] + n - 1).ravel()
    counts = np.bincount(u_part + v_part, minlength=(2 * n - 1) ** 2)
    return counts.reshape(2 * n - 1, 2 * n - 1)


def autocorr_offpeak_max(f: np.ndarray) -> int:
    """Max autocorrelation count over all shifts except (0, 0)."""
    table = corr_table(f, f)
    n = np.asarray(f).size
    table[n - 1, n - 1] = 0
    return int(table.max())


def family_scan(
    perms: np.ndarray,
    i0: int,
    i1: int,
    restrict: bool,
    cap: int,
) -> tuple[int, int, np.ndarray]:
    """Scan ordered pairs (i, j), i in [i0, i1), j != i, shifts u >= 0.

    Returns (best, total, witnesses): the maximal count over the scan
    domain, the exact number of cells attaining it, and up to ``cap``
    witnesses (i, j, u, v) in lexicographic order.  With ``restrict`` the
    v < 0 half-plane is skipped (valid for inversion-closed families).
    """
    perms = np.ascontiguousarray(perms, dtype=np.int32)
    m, n = perms.shape
    xs, ys, key_base = _upper_triangle(n)
    best = 0
    total = 0
    wits: list[tuple[int, int, int, int]] = []
    v_offset = 0 if restrict else -(n - 1)
    for i in range(i0, i1):
        f1 = perms[i].astype(np.int64)
        for j in range(m):
            if j == i:
                continue
            f2 = perms[j].astype(np.int64)
            keys = key_base + (f2[ys] - f1[xs])
            table = np.bincount(keys, minlength=n * (2 * n - 1)).reshape(n, 2 * n - 1)
            view = table[:, n - 1 :] if restrict else table
            tmax = int(view.max())
            if tmax > 0 and tmax >= best:
                if tmax > best:
                    best = tmax
                    total = 0
                    wits = []
                cells = np.argwhere(view == best)
                total += len(cells)
                for uu, vv in cells:
                    if len(wits) >= cap:
                        break
                    wits.append((i, j, int(uu), int(vv) + v_offset))
    wit_arr = np.array(wits, dtype=np.int64).reshape(len(wits), 4)
    return best, total, wit_arr
