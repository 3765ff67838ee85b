import itertools

import numpy as np
import pytest

from costaslab import _corr_py, ff, golomb, xcorr


def brute_cross(f1, f2, u, v):
    """Definition-level oracle over the overlap window."""
    n = len(f1)
    return sum(
        1
        for x in range(max(1, 1 - u), min(n, n - u) + 1)
        if f1[x - 1] + v == f2[x + u - 1]
    )


def small_pair(q=5):
    field = ff.field_for_q(q)
    f1 = golomb.golomb_perm(golomb.make_pair(field, 2, 2))
    f2 = golomb.golomb_perm(golomb.make_pair(field, 3, 2))
    return field, f1, f2


def test_cross_correlation_examples():
    _, f1, f2 = small_pair()
    assert xcorr.cross_correlation(f1, f1, 0, 0) == 3
    assert xcorr.cross_correlation(f1, f2, 0, 0) == 1
    assert xcorr.cross_correlation(f1, f2, 0, 1) == 1


def test_cross_correlation_matches_bruteforce():
    field = ff.field_for_q(11)
    fam = golomb.family_L(field)
    n = field.q - 2
    for f1, f2 in itertools.product(fam[:4], fam[:4]):
        for u in range(1 - n, n):
            for v in range(1 - n, n):
                assert xcorr.cross_correlation(f1, f2, u, v) == brute_cross(
                    f1.values, f2.values, u, v
                )


def test_cross_correlation_rejects_bad_input():
    _, f1, f2 = small_pair()
    with pytest.raises(ValueError):
        xcorr.cross_correlation(f1, f2, 3, 0)  # |u| > n-1
    with pytest.raises(ValueError):
        xcorr.cross_correlation(f1, f2, 0, -3)
    with pytest.raises(ValueError):
        xcorr.cross_correlation(f1.values, (1, 2, 3, 4), 0, 0)


def test_table_row_sums_and_bounds():
    for q in (5, 8, 9, 13):
        field = ff.field_for_q(q)
        fam = golomb.family_L(field)
        n = field.q - 2
        t = xcorr.correlation_table(fam[0], fam[1])
        for u in range(1 - n, n):
            assert t.row_sum(u) == n - abs(u)
            for v in range(1 - n, n):
                assert t.count(u, v) <= n - abs(u)
        assert t.count(0, 0) == xcorr.cross_correlation(fam[0], fam[1], 0, 0)


def test_costas_autocorrelation():
    for q in (5, 8, 9, 13, 16, 27):
        field = ff.field_for_q(q)
        for perm in golomb.family_L(field):
            t = xcorr.correlation_table(perm, perm)
            assert t.count(0, 0) == field.q - 2
            assert t.max_value(exclude_center=True) <= 1
            assert xcorr.autocorr_offpeak_max(perm) == t.max_value(exclude_center=True)


def test_family_max_examples():
    for q, expect in ((5, 1), (9, 3), (13, 5)):
        field = ff.field_for_q(q)
        rep = xcorr.family_max(golomb.family_G(field), f"G({q})")
        assert rep.value == expect


def test_family_max_rejects_singleton():
    _, f1, _ = small_pair()
    with pytest.raises(ValueError):
        xcorr.family_max([f1])


def test_family_max_witnesses_reproduce_value():
    field = ff.field_for_q(27)
    fam = golomb.family_L(field)
    rep = xcorr.family_max(fam, "L(27)", restrict_nonneg=True)
    assert rep.witnesses  # at least one witness survives the cap
    for i, j, u, v in rep.witnesses:
        assert xcorr.cross_correlation(fam[i], fam[j], u, v) == rep.value
    assert rep.total_maxima >= len(rep.witnesses)


def test_family_max_thread_independence():
    field = ff.field_for_q(16)
    fam = golomb.family_L(field)
    reports = [
        xcorr.family_max(fam, "L(16)", restrict_nonneg=True, threads=t)
        for t in (1, 2, 3, 8)
    ]
    vals = {(r.value, r.total_maxima, r.witnesses) for r in reports}
    assert len(vals) == 1


def test_restricted_scan_equals_full_on_L():
    for q in (5, 7, 8, 9, 11, 13, 16):
        field = ff.field_for_q(q)
        fam = golomb.family_L(field)
        full = xcorr.family_max(fam, restrict_nonneg=False)
        rest = xcorr.family_max(fam, restrict_nonneg=True)
        assert full.value == rest.value


def test_L_dominates_G():
    for q in (5, 7, 8, 9, 11, 13, 16, 25, 27):
        field = ff.field_for_q(q)
        cg = xcorr.family_max(golomb.family_G(field)).value
        cl = xcorr.family_max(golomb.family_L(field), restrict_nonneg=True).value
        assert cl >= cg


def test_backend_parity():
    # the numpy fallback and the active backend agree bit for bit
    field = ff.field_for_q(13)
    fam = golomb.family_L(field)
    mat = xcorr.perm_matrix(fam)
    for restrict in (False, True):
        a = xcorr._kern.family_scan(mat, 0, mat.shape[0], restrict, 100)
        b = _corr_py.family_scan(mat, 0, mat.shape[0], restrict, 100)
        assert a[0] == b[0] and a[1] == b[1]
        assert np.array_equal(a[2], b[2])
    f = mat[0]
    assert np.array_equal(xcorr._kern.corr_table(f, mat[1]), _corr_py.corr_table(f, mat[1]))
    assert xcorr._kern.autocorr_offpeak_max(f) == _corr_py.autocorr_offpeak_max(f)
    assert xcorr._kern.is_costas_kernel(f) == _corr_py.is_costas_kernel(f)
    not_costas = np.arange(1, 12, dtype=np.int32)
    assert not xcorr._kern.is_costas_kernel(not_costas)
    assert not _corr_py.is_costas_kernel(not_costas)


def test_pair_max_covers_both_signs():
    field = ff.field_for_q(11)
    fam = golomb.family_L(field)
    n = field.q - 2
    for f1, f2 in itertools.product(fam[:3], fam[:3]):
        if f1.values == f2.values:
            continue
        brute = max(
            brute_cross(f1.values, f2.values, u, v)
            for u in range(1 - n, n)
            for v in range(1 - n, n)
        )
        assert xcorr.pair_max(f1, f2) == brute


def test_symmetry_identities():
    for q in (5, 8, 9, 13):
        field = ff.field_for_q(q)
        fam = golomb.family_L(field)
        for f1, f2 in itertools.product(fam[:3], fam[:3]):
            assert xcorr.symmetry_check(f1, f2)


def test_csv_export_shape():
    import csv
    import io

    field, f1, f2 = small_pair()
    table = xcorr.correlation_table(f1, f2)
    buf = io.StringIO()
    xcorr.export_table_csv(buf, field, f1.origin, f2.origin, table)
    rows = list(csv.reader(io.StringIO(buf.getvalue())))
    n = field.q - 2
    assert rows[0] == ["q", "g1_enc", "g2_enc", "g3_enc", "g4_enc", "u", "v", "count"]
    assert len(rows) == 1 + (2 * n - 1) ** 2
    total = sum(int(r[-1]) for r in rows[1:])
    assert total == n * n  # every (x, y) lands in exactly one cell
