import itertools
import math

import pytest

from costaslab import ff, golomb
from costaslab.numtheory import euler_phi, prime_powers_upto


def brute_perm(field, g1, g2):
    """Independent oracle: solve g1^x + g2^y = 1 by scanning all y."""
    q = field.q
    vals = []
    for x in range(1, q - 1):
        hits = [
            y
            for y in range(1, q - 1)
            if field.add(field.pow(g1, x), field.pow(g2, y)) == 1
        ]
        assert len(hits) == 1
        vals.append(hits[0])
    return tuple(vals)


def test_golomb_perm_examples():
    F5 = ff.field_new(5, 1)
    assert golomb.golomb_perm(golomb.make_pair(F5, 2, 2)).values == (2, 1, 3)
    assert golomb.golomb_perm(golomb.make_pair(F5, 3, 2)).values == (3, 1, 2)
    F4 = ff.field_new(2, 2)
    assert golomb.golomb_perm(golomb.make_pair(F4, 2, 2)).values == (2, 1)


def test_golomb_perm_against_bruteforce():
    for q in (5, 7, 8, 9, 11, 16):
        field = ff.field_for_q(q)
        prim = field.primitive_elements()
        for g1, g2 in itertools.product(prim, prim):
            pair = golomb.make_pair(field, g1, g2)
            assert golomb.golomb_perm(pair).values == brute_perm(field, g1, g2)


def test_make_pair_rejects_nonprimitive():
    F5 = ff.field_new(5, 1)
    with pytest.raises(ValueError):
        golomb.make_pair(F5, 4, 2)  # 4 has order 2
    with pytest.raises(ValueError):
        golomb.make_pair(F5, 0, 2)


def test_is_costas():
    assert golomb.is_costas((2, 1, 3))
    assert not golomb.is_costas((1, 2, 3, 4))
    assert golomb.is_costas((1,))
    with pytest.raises(ValueError):
        golomb.is_costas((1, 1, 3))
    with pytest.raises(ValueError):
        golomb.is_costas((0, 1, 2))


def test_all_family_members_are_costas_small():
    for q in (5, 7, 8, 9, 11, 13, 16, 25, 27):
        field = ff.field_for_q(q)
        for perm in golomb.family_L(field):
            assert golomb.is_costas(perm.values)


def test_conjugacy_classes():
    F5 = ff.field_new(5, 1)
    pair = golomb.make_pair(F5, 2, 3)
    cc = golomb.conjugates(pair)
    assert cc.members == (pair,)  # w = 1

    F4 = ff.field_new(2, 2)
    cc = golomb.conjugates(golomb.make_pair(F4, 2, 2))
    assert {(m.g1, m.g2) for m in cc.members} == {(2, 2), (3, 3)}
    assert (cc.canonical.g1, cc.canonical.g2) == (2, 2)

    F27 = ff.field_for_q(27)
    prim = F27.primitive_elements()
    for g1, g2 in itertools.product(prim[:4], prim[:4]):
        cc = golomb.conjugates(golomb.make_pair(F27, g1, g2))
        assert len(cc.members) == 3  # w = 3, orbits are full


def test_conjugates_generate_identical_permutation():
    for q in (8, 9, 27):
        field = ff.field_for_q(q)
        prim = field.primitive_elements()
        for g1, g2 in itertools.product(prim[:3], prim[:3]):
            cc = golomb.conjugates(golomb.make_pair(field, g1, g2))
            perms = {golomb.golomb_perm(m).values for m in cc.members}
            assert len(perms) == 1


def test_equivalence_biconditional_small():
    # permutation equality holds exactly on conjugacy orbits
    for q in (8, 9, 16):
        field = ff.field_for_q(q)
        prim = field.primitive_elements()
        pairs = [golomb.make_pair(field, a, b) for a in prim for b in prim]
        perms = {((p.g1, p.g2)): golomb.golomb_perm(p).values for p in pairs}
        for pa in pairs:
            for pb in pairs:
                equal = perms[(pa.g1, pa.g2)] == perms[(pb.g1, pb.g2)]
                assert equal == golomb.are_conjugate(pa, pb)


def test_family_sizes():
    expect = {4: (2, 2), 5: (2, 4), 7: (2, 4), 8: (6, 12), 9: (4, 8), 27: (12, 48)}
    for q, (sg, sl) in expect.items():
        field = ff.field_for_q(q)
        G = golomb.family_G(field)
        L = golomb.family_L(field)
        assert len(G) == sg == euler_phi(q - 1)
        assert len(L) == sl == euler_phi(q - 1) ** 2 // field.w
        assert len({p.values for p in G}) == len(G)
        assert len({p.values for p in L}) == len(L)


def test_family_L_deterministic_order():
    field = ff.field_for_q(27)
    a = [p.origin.g1 * 10**6 + p.origin.g2 for p in golomb.family_L(field)]
    b = [p.origin.g1 * 10**6 + p.origin.g2 for p in golomb.family_L(field)]
    assert a == b
    dlogs = [(p.origin.dlog1, p.origin.dlog2) for p in golomb.family_L(field)]
    assert dlogs == sorted(dlogs)


def test_value_relabeling_identity():
    # With g4 = g2^j (gcd(j, q-1) = 1): j * pi_{g1,g4}(x) = pi_{g1,g2}(x)
    # mod (q-1).  Equivalently pi_{g1,g4} = j^-1 * pi_{g1,g2}; the published
    # display carries j on the other side, which fails numerically
    # (q=11, g2=2, j=3, x=2 is a counterexample).
    for q in [qq for qq in prime_powers_upto(32) if qq >= 4]:
        field = ff.field_for_q(q)
        m = q - 1
        prim = field.primitive_elements()
        for g1, g2 in itertools.product(prim, prim):
            base = golomb.golomb_perm(golomb.make_pair(field, g1, g2)).values
            for j in range(1, m):
                if math.gcd(j, m) != 1:
                    continue
                g4 = field.pow(g2, j)
                relabeled = golomb.golomb_perm(golomb.make_pair(field, g1, g4)).values
                assert all(
                    (j * relabeled[x]) % m == base[x] % m for x in range(q - 2)
                )


def test_perm_json_roundtrip():
    field = ff.field_for_q(13)
    perm = golomb.golomb_perm(golomb.make_pair(field, 2, 6))
    back = golomb.perm_from_json(perm.to_json())
    assert back.values == perm.values
    assert back.origin.g1 == 2 and back.origin.g2 == 6
