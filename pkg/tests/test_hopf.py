"""Hopf algebra tests: axiom verification, convolution algebra, integrals,
unimodularity flags, group algebras, and the internal dual."""

import random

import numpy as np
import pytest

from hopfgal import Field
from hopfgal import _arrays as ar
from hopfgal import fdalg, hopf
from hopfgal.errors import IntegralNotFound, NotAGroup, NotConvInvertible


def s3_table():
    """Cayley table of S_3 as permutations of {0,1,2} in a fixed listing."""
    import itertools
    perms = list(itertools.permutations(range(3)))
    index = {q: i for i, q in enumerate(perms)}

    def compose(a, b):
        return tuple(a[b[i]] for i in range(3))

    return [[index[compose(a, b)] for b in perms] for a in perms]


def identity_linmap(field, n):
    m = ar.zeros(field, (n, n))
    for i in range(n):
        m[i, i, 0] = 1
    return hopf.LinMap(field, m)


def random_linmap(field, nH, nA, rng):
    m = np.array([[[rng.randrange(field.p) for _ in range(field.k)]
                   for _ in range(nA)] for _ in range(nH)], dtype=np.int64)
    return hopf.LinMap(field, m)


def test_group_algebra_z2_verifies():
    f = Field(3)
    H = hopf.group_algebra(f, hopf.cyclic_group_table(2))
    assert hopf.hopf_verify(H) == []
    assert hopf.is_cocommutative(H)


def test_group_algebra_z4_and_s3():
    f = Field(3)
    H4 = hopf.group_algebra(f, hopf.cyclic_group_table(4))
    assert hopf.hopf_verify(H4) == []
    f5 = Field(5)
    HS3 = hopf.group_algebra(f5, s3_table())
    assert HS3.dim == 6
    assert hopf.hopf_verify(HS3) == []
    assert not HS3.alg.is_commutative()
    assert hopf.is_cocommutative(HS3)


def test_group_algebra_rejects_non_groups():
    f = Field(3)
    with pytest.raises(NotAGroup):
        hopf.group_algebra(f, [[0, 1], [1, 1]])  # no inverse for element 1
    with pytest.raises(NotAGroup):
        hopf.group_algebra(f, [[1, 0], [1, 0]])  # no identity
    with pytest.raises(NotAGroup):
        hopf.group_algebra(f, [[0, 1, 2], [1, 2, 0]])  # not square


def test_broken_antipode_is_flagged():
    f = Field(3)
    H = hopf.group_algebra(f, hopf.cyclic_group_table(3))
    eye = ar.zeros(f, (3, 3))
    for i in range(3):
        eye[i, i, 0] = 1
    broken = hopf.HopfAlgebra(H.alg, H.comul, H.counit, eye)
    msgs = hopf.hopf_verify(broken)
    assert any("antipode" in m for m in msgs)


def test_broken_coassociativity_is_flagged():
    f = Field(3)
    H = hopf.group_algebra(f, hopf.cyclic_group_table(2))
    d = H.comul.copy()
    d[1, 0, 1, 0] = 1  # junk term in the coproduct of g
    broken = hopf.HopfAlgebra(H.alg, d, H.counit, H.antipode)
    assert hopf.hopf_verify(broken) != []


def test_convolution_antipode_axiom():
    # id * S = unit of the convolution algebra
    f = Field(3)
    for table in (hopf.cyclic_group_table(4), s3_table()):
        H = hopf.group_algebra(f, table)
        ident = identity_linmap(f, H.dim)
        S = hopf.LinMap(f, H.antipode)
        assert hopf.convolution(H, H.alg, ident, S) == hopf.conv_unit(H, H.alg)
        assert hopf.convolution(H, H.alg, S, ident) == hopf.conv_unit(H, H.alg)


def test_convolution_unit_is_neutral():
    f = Field(5)
    H = hopf.group_algebra(f, hopf.cyclic_group_table(3))
    rng = random.Random(3)
    unit = hopf.conv_unit(H, H.alg)
    for _ in range(10):
        g = random_linmap(f, H.dim, H.dim, rng)
        assert hopf.convolution(H, H.alg, unit, g) == g
        assert hopf.convolution(H, H.alg, g, unit) == g


def test_convolution_associativity_random():
    f = Field(3)
    H = hopf.group_algebra(f, hopf.cyclic_group_table(4))
    A = fdalg.SCAlgebra(f, H.alg.mul, H.alg.unit)
    rng = random.Random(9)
    for _ in range(10):
        a = random_linmap(f, H.dim, A.dim, rng)
        b = random_linmap(f, H.dim, A.dim, rng)
        c = random_linmap(f, H.dim, A.dim, rng)
        lhs = hopf.convolution(H, A, hopf.convolution(H, A, a, b), c)
        rhs = hopf.convolution(H, A, a, hopf.convolution(H, A, b, c))
        assert lhs == rhs


def test_conv_inverse_of_identity_is_antipode():
    f = Field(3)
    for table in (hopf.cyclic_group_table(4), s3_table()):
        H = hopf.group_algebra(f, table)
        inv = hopf.conv_inverse(H, H.alg, identity_linmap(f, H.dim))
        assert np.array_equal(inv.matrix, H.antipode)


def test_conv_inverse_of_unit_is_itself():
    f = Field(5)
    H = hopf.group_algebra(f, hopf.cyclic_group_table(4))
    unit = hopf.conv_unit(H, H.alg)
    assert hopf.conv_inverse(H, H.alg, unit) == unit


def test_conv_inverse_failure():
    f = Field(3)
    H = hopf.group_algebra(f, hopf.cyclic_group_table(2))
    zero = hopf.LinMap(f, ar.zeros(f, (2, 2)))
    with pytest.raises(NotConvInvertible):
        hopf.conv_inverse(H, H.alg, zero)


def test_left_integral_of_group_algebra_dual():
    # for F[G]* the left integral is the functional supported on the identity
    f = Field(3)
    H = hopf.group_algebra(f, hopf.cyclic_group_table(4))
    lam = hopf.left_integral_dual(H)
    expected = ar.zeros(f, (4,))
    expected[0, 0] = 1
    assert np.array_equal(lam.functional, expected)


def test_left_integral_defining_equation_full():
    # checked against every dual basis functional, not a sample
    f = Field(5)
    H = hopf.group_algebra(f, s3_table())
    lam = hopf.left_integral_dual(H)
    n = H.dim
    d = H.comul
    for j in range(n):
        lhs = ar.fmatmul(f, d[:, j, :, :], lam.functional[:, None, :])[:, 0, :]
        rhs = ar.fmul(f, H.alg.unit[j][None, :], lam.functional)
        assert np.array_equal(lhs % f.p, rhs % f.p)


def test_integral_not_found_on_broken_input():
    # a zero comultiplication forces the integral space to vanish
    f = Field(3)
    H = hopf.group_algebra(f, hopf.cyclic_group_table(2))
    broken = hopf.HopfAlgebra(H.alg, ar.zeros(f, (2, 2, 2)),
                              H.counit, H.antipode)
    with pytest.raises(IntegralNotFound):
        hopf.left_integral_dual(broken)


def test_unimodular_flags_group_algebras():
    f = Field(3)
    for table in (hopf.cyclic_group_table(4), hopf.cyclic_group_table(2)):
        H = hopf.group_algebra(f, table)
        assert hopf.is_unimodular_s2(H) == (True, True, True)
    f5 = Field(5)
    HS3 = hopf.group_algebra(f5, s3_table())
    flags = hopf.is_unimodular_s2(HS3)
    assert flags == (True, True, True)


def test_unimodular_flag_consistency_random_groups():
    rng = random.Random(17)
    tables = [hopf.cyclic_group_table(m) for m in (2, 3, 4, 5, 6)]
    for table in tables:
        p = rng.choice([3, 5, 7])
        H = hopf.group_algebra(Field(p), table)
        uni, s2, sym = hopf.is_unimodular_s2(H)
        assert (uni and s2) == sym


def test_antipode_is_antihomomorphism():
    f = Field(3)
    for table in (hopf.cyclic_group_table(4), s3_table()):
        H = hopf.group_algebra(f, table)
        n = H.dim
        S = hopf.LinMap(f, H.antipode)
        for i in range(n):
            for j in range(n):
                xy = H.alg.multiply(H.alg.basis_vector(i), H.alg.basis_vector(j))
                lhs = S.apply(xy)
                rhs = H.alg.multiply(S.apply(H.alg.basis_vector(j)),
                                     S.apply(H.alg.basis_vector(i)))
                assert np.array_equal(lhs, rhs)


def test_integral_invariant_under_group_relabeling():
    # relabeling Z/4 permutes coordinates of the integral accordingly; the
    # evaluation pairing is unchanged
    f = Field(3)
    base = hopf.cyclic_group_table(4)
    perm = [0, 2, 1, 3]  # swap g and g^2 labels
    relabeled = [[0] * 4 for _ in range(4)]
    for i in range(4):
        for j in range(4):
            relabeled[perm[i]][perm[j]] = perm[base[i][j]]
    H1 = hopf.group_algebra(f, base)
    H2 = hopf.group_algebra(f, relabeled)
    l1 = hopf.left_integral_dual(H1)
    l2 = hopf.left_integral_dual(H2)
    for i in range(4):
        assert np.array_equal(l1.functional[i], l2.functional[perm[i]])


def test_dual_hopf_of_commutative_group_is_hopf():
    f = Field(3)
    H = hopf.group_algebra(f, hopf.cyclic_group_table(4))
    D = hopf._dual_hopf(H)
    assert hopf.hopf_verify(D) == []
    # the dual of a commutative Hopf algebra is cocommutative
    assert hopf.is_cocommutative(D)


def test_dual_of_s3_group_algebra_not_cocommutative():
    f = Field(5)
    H = hopf.group_algebra(f, s3_table())
    D = hopf._dual_hopf(H)
    assert hopf.hopf_verify(D) == []
    assert not hopf.is_cocommutative(D)
    assert D.alg.is_commutative()


def test_serialization_round_trip():
    f = Field(3)
    H = hopf.group_algebra(f, hopf.cyclic_group_table(4))
    data = H.to_json()
    H2 = hopf.HopfAlgebra.from_json(data)
    assert np.array_equal(H2.comul, H.comul)
    assert np.array_equal(H2.counit, H.counit)
    assert np.array_equal(H2.antipode, H.antipode)
    assert hopf.hopf_verify(H2) == []


def test_group_from_json():
    f = Field(3)
    H = hopf.group_from_json(f, {"order": 2, "table": [[0, 1], [1, 0]]})
    assert H.dim == 2
    with pytest.raises(NotAGroup):
        hopf.group_from_json(f, {"order": 3, "table": [[0, 1], [1, 0]]})
