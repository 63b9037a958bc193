"""Tests for the built-in examples, fiber reports, and the scanner."""

import numpy as np
import pytest

from hopfgal import _arrays as ar
from hopfgal.errors import (
    BadPrime,
    RelationCheckFailed,
    TooManyPoints,
    UnknownKind,
)
from hopfgal.exactfield import Field
from hopfgal.fdalg import Subspace, radical, subalgebra_on
from hopfgal.resliealg import Fiber, FiberPoint, restricted_verify
from hopfgal import speclab as sl


# ---------------------------------------------------------------------------
# built-in algebras
# ---------------------------------------------------------------------------

def test_sl2_structure():
    L = sl.sl2_algebra(3)
    assert L.dim == 3 and restricted_verify(L) == []
    assert list(L.labels) == ["e", "f", "h"]
    # [e,f] = h
    assert L.bracket[0, 1, 2] == 1
    # h^[p] = h, e and f have trivial p-power
    assert L.pmap[2, 2] == 1 and not L.pmap[0].any() and not L.pmap[1].any()


def test_sl2_bad_prime():
    with pytest.raises(BadPrime):
        sl.sl2_algebra(2)


def test_borel_structure():
    L = sl.borel_algebra(5)
    assert L.dim == 2 and restricted_verify(L) == []
    assert L.bracket[0, 1, 1] == 1 and L.pmap[0, 0] == 1
    with pytest.raises(BadPrime):
        sl.borel_algebra(2)


def test_lie_kind():
    assert sl.lie_kind(sl.sl2_algebra(3)) == "sl2"
    assert sl.lie_kind(sl.borel_algebra(3)) == "borel"


# ---------------------------------------------------------------------------
# strata
# ---------------------------------------------------------------------------

def test_classify_point_examples():
    f = Field(3)
    assert sl.classify_point("sl2", FiberPoint.make(f, (0, 0, 1))).tag == "regular"
    assert sl.classify_point("sl2", FiberPoint.make(f, (1, 0, 0))).tag == "cone"
    assert sl.classify_point("sl2", FiberPoint.make(f, (0, 0, 0))).tag == "zero"
    # z^2 = 4xy with a nonzero point
    assert sl.classify_point("sl2", FiberPoint.make(f, (1, 1, 2))).tag == "cone"


def test_classify_point_unknown_kind():
    f = Field(3)
    with pytest.raises(UnknownKind):
        sl.classify_point("borel", FiberPoint.make(f, (0, 0)))


# ---------------------------------------------------------------------------
# central elements and the degree-p relation
# ---------------------------------------------------------------------------

def test_central_elements_evaluate_to_the_point():
    f = Field(3)
    F = Fiber(sl.sl2_algebra(3), FiberPoint.make(f, (2, 1, 1)))
    ce = sl.sl2_central_elements(F)
    assert (ce.x, ce.y, ce.z) == F.point.values


def test_central_element_t_coefficients():
    # at lambda = 0 the element (h+1)^2 - 4ef has the PBW coefficients
    # 1 on the unit, 2h, h^2, and -4 ef
    f = Field(3)
    F = Fiber(sl.sl2_algebra(3), FiberPoint.make(f, (0, 0, 0)))
    ce = sl.sl2_central_elements(F)
    expect = np.zeros((27, 1), dtype=np.int64)
    expect[F.index[(0, 0, 0)], 0] = 1
    expect[F.index[(0, 0, 1)], 0] = 2
    expect[F.index[(0, 0, 2)], 0] = 1
    expect[F.index[(1, 1, 0)], 0] = (-4) % 3
    assert np.array_equal(ce.t_vec, expect)


def test_eq4_regular_has_p_distinct_roots():
    f = Field(3)
    F = Fiber(sl.sl2_algebra(3), FiberPoint.make(f, (0, 0, 1)))
    passed, profile = sl.sl2_eq4_check(F)
    assert passed
    assert [m for _, m in profile] == [1, 1, 1]
    assert len({r.coeffs for r, _ in profile}) == 3


def test_eq4_cone_root_profile():
    f = Field(3)
    F = Fiber(sl.sl2_algebra(3), FiberPoint.make(f, (1, 0, 0)))
    passed, profile = sl.sl2_eq4_check(F)
    assert passed
    assert [(str(r), m) for r, m in profile] == [("0", 1), ("1", 2)]


def test_eq4_random_points_over_f9():
    f = Field(3, 2)
    L = sl.sl2_algebra(3)
    rng = np.random.default_rng(11)
    for _ in range(5):
        vals = [f.scalar(tuple(int(c) for c in rng.integers(0, 3, size=2)))
                for _ in range(3)]
        F = Fiber(L, FiberPoint(f, tuple(vals)))
        assert sl.sl2_eq4_check(F)[0]


# ---------------------------------------------------------------------------
# fiber reports
# ---------------------------------------------------------------------------

def test_fiber_report_regular():
    f = Field(3)
    r = sl.fiber_report(sl.sl2_algebra(3), FiberPoint.make(f, (0, 0, 1)))
    assert r.stratum == "regular" and r.dim == 27
    assert r.semisimple and r.blocks == 3 and r.simple_dims == [3, 3, 3]
    assert r.center_dim == 3 and r.radical_dim == 0
    assert r.frobenius_rank == 27 and r.frobenius_symmetric
    assert r.eq4_pass and r.splitting_degree == 3


def test_fiber_report_cone():
    f = Field(3)
    r = sl.fiber_report(sl.sl2_algebra(3), FiberPoint.make(f, (1, 0, 0)))
    assert r.stratum == "cone"
    assert r.blocks == 2 and r.simple_dims == [3, 3]
    assert not r.semisimple and r.radical_dim > 0
    assert r.frobenius_rank == 27 and r.frobenius_symmetric and r.eq4_pass


def test_fiber_report_zero():
    f = Field(3)
    r = sl.fiber_report(sl.sl2_algebra(3), FiberPoint.make(f, (0, 0, 0)))
    assert r.stratum == "zero"
    assert r.blocks == 2 and r.simple_dims == [1, 2, 3]
    assert r.radical_dim > 0 and r.center_dim == 4


def test_cone_reports_agree_up_to_the_point():
    f = Field(3)
    L = sl.sl2_algebra(3)
    a = sl.fiber_report(L, FiberPoint.make(f, (1, 0, 0)))
    b = sl.fiber_report(L, FiberPoint.make(f, (1, 1, 2)))
    for name in sl.REPORT_FIELDS:
        if name == "point":
            assert a.point != b.point
        else:
            assert getattr(a, name) == getattr(b, name), name


def test_fiber_report_borel_has_no_sl2_entries():
    f = Field(3)
    r = sl.fiber_report(sl.borel_algebra(3), FiberPoint.make(f, (1, 0)))
    assert r.stratum is None and r.eq4_pass is None
    assert r.dim == 9 and r.frobenius_rank == 9


def test_fiber_report_json_roundtrip_fields():
    f = Field(3)
    r = sl.fiber_report(sl.borel_algebra(3), FiberPoint.make(f, (0, 0)))
    data = r.to_json()
    assert list(data) == list(sl.REPORT_FIELDS)
    assert data["point"] == [0, 0]
    assert len(r.csv_row()) == len(sl.REPORT_FIELDS)


# ---------------------------------------------------------------------------
# the scanner
# ---------------------------------------------------------------------------

def test_scan_borel_full_field():
    f = Field(3)
    res = sl.scan(sl.borel_algebra(3), f)
    assert len(res.reports) == 9
    # lexicographic order on the coordinates
    pts = [tuple(str(s) for s in r.point) for r in res.reports]
    assert pts == sorted(pts)
    assert pts[0] == ("0", "0") and pts[1] == ("0", "1")
    assert res.center_dims == [1] and res.center_dim_constant
    # u(b) at the origin is a product of p one-dimensional algebras
    assert res.reports[0].simple_dims == [1, 1, 1]
    # simple-module counts divide the count for u(b)
    assert all(len(r.simple_dims) in (1, 3) for r in res.reports)


def test_scan_explicit_points_sorted():
    f = Field(3)
    res = sl.scan(sl.borel_algebra(3), f, points=[(1, 0), (0, 1)])
    pts = [tuple(str(s) for s in r.point) for r in res.reports]
    assert pts == [("0", "1"), ("1", "0")]


def test_scan_too_many_points():
    with pytest.raises(TooManyPoints):
        sl.scan(sl.borel_algebra(3), Field(3, 5))


# ---------------------------------------------------------------------------
# baby-Verma oracle
# ---------------------------------------------------------------------------

def _head_dims(p, lam):
    """Dimensions of the largest semisimple quotients of the p-dimensional
    modules produced by the oracle, one per weight."""
    dims = set()
    for w in sl.baby_verma_weights(p, lam):
        bv = sl.baby_verma_oracle(p, lam, w)
        f = bv.field
        # the generated subalgebra of p x p matrices, as an abstract algebra
        n = p * p
        mats = [bv.e_mat, bv.f_mat, bv.h_mat]
        ident = ar.zeros(f, (p, p))
        for i in range(p):
            ident[i, i, 0] = 1
        span = ar.row_space(f, np.stack(
            [ident.reshape(n, f.k)] + [m.reshape(n, f.k) for m in mats]))
        while True:
            rows = [span]
            cur = span.reshape(-1, p, p, f.k)
            for m in mats:
                for i in range(cur.shape[0]):
                    rows.append(ar.fmatmul(f, m, cur[i]).reshape(1, n, f.k))
                    rows.append(ar.fmatmul(f, cur[i], m).reshape(1, n, f.k))
            new = ar.row_space(f, np.concatenate(rows, axis=0))
            if new.shape[0] == span.shape[0]:
                break
            span = new
        # matrix-unit algebra on p x p matrices
        mul = np.zeros((n, n, n, f.k), dtype=np.int64)
        for a in range(p):
            for b in range(p):
                for c in range(p):
                    mul[a * p + b, b * p + c, a * p + c, 0] = 1
        unit = ar.zeros(f, (n,))
        for i in range(p):
            unit[i * p + i, 0] = 1
        from hopfgal.fdalg import SCAlgebra
        Mp = SCAlgebra(f, mul, unit)
        B, basis = subalgebra_on(Mp, Subspace(f, n, span))
        rad = radical(B)
        # image of the radical inside the module: span of the columns of
        # every radical element
        if rad.dim == 0:
            dims.add(p)
            continue
        cols = []
        for r in range(rad.dim):
            rmat = ar.fmatmul(f, rad.basis[r][None], basis)[0] \
                .reshape(p, p, f.k)
            cols.append(rmat.transpose(1, 0, 2))
        img = ar.row_space(f, np.concatenate(cols, axis=0))
        dims.add(p - img.shape[0])
    return dims


def test_baby_verma_weight_count():
    f = Field(3)
    lam = (f.scalar(0), f.scalar(0), f.scalar(1))
    ws = sl.baby_verma_weights(3, lam)
    assert len(ws) == 3 and len({w.coeffs for w in ws}) == 3
    big = ws[0].field
    lh = f.embed(f.scalar(1), big)
    assert all(w ** 3 - w == lh for w in ws)


def test_baby_verma_regular_is_simple():
    f = Field(3)
    lam = (f.scalar(0), f.scalar(0), f.scalar(1))
    w = sl.baby_verma_weights(3, lam)[0]
    bv = sl.baby_verma_oracle(3, lam, w)
    assert sl.matrix_algebra_rank(bv.field, [bv.e_mat, bv.f_mat, bv.h_mat]) == 9


def test_baby_verma_rejects_bad_weight():
    f = Field(3)
    lam = (f.scalar(0), f.scalar(0), f.scalar(1))
    with pytest.raises(RelationCheckFailed):
        sl.baby_verma_oracle(3, lam, 1)


@pytest.mark.parametrize("lam,expected", [
    ((0, 0, 1), {3}),
    ((1, 0, 0), {3}),
    ((0, 0, 0), {1, 2, 3}),
])
def test_baby_verma_heads_match_simples(lam, expected):
    f = Field(3)
    point = tuple(f.scalar(v) for v in lam)
    assert _head_dims(3, point) == expected
    rep = sl.fiber_report(sl.sl2_algebra(3), FiberPoint(f, point))
    assert set(rep.simple_dims) == expected


# ---------------------------------------------------------------------------
# the cyclic group-algebra bundle
# ---------------------------------------------------------------------------

def test_group_bundle_constant_center():
    gb = sl.group_bundle_scan()
    assert gb.fiber_dims == [3, 3, 3]
    assert gb.center_dims == [3, 3, 3]
    assert gb.center_dim_constant and gb.equivariant
