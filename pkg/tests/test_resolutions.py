import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from resolvent import abcat as ab
from resolvent import complexes as cx
from resolvent import resolutions as rs

from . import oracles

BACKENDS = [ab.vect(), ab.nilp(2), ab.nilp(3), ab.repa2()]
seeds = st.integers(0, 2**32)
backends = st.sampled_from(BACKENDS)


@settings(max_examples=60, deadline=None)
@given(backends, seeds, st.integers(1, 4))
def test_object_resolution(b, s, depth):
    a = ab.random_obj(b, s)
    r = rs.inj_res_object(a, depth)
    assert all(rs.check_resolution(r).values())
    gldim = {"vect": 0, "repa2": 1}.get(b.kind)
    if gldim is not None and depth > gldim + 1:
        assert r.complete and r.resolution.hi <= gldim


def test_simple_over_dual_numbers_is_periodic():
    b = ab.nilp(2)
    k = ab.cyclic(b, 1)
    r = rs.inj_res_object(k, 5)
    assert not r.complete and r.top == 3
    assert [r.term(j) for j in range(5)] == [ab.free(b)] * 5
    assert cx.cohomology_dims(r.resolution) == {0: 1, 1: 0, 2: 0, 3: 0, 4: 1}


@settings(max_examples=60, deadline=None)
@given(backends, seeds, st.integers(1, 3))
def test_bounded_below_resolution(b, s, depth):
    x = cx.random_complex(b, s, -1, 1)
    r = rs.inj_res_bounded_below(x, depth)
    assert all(rs.check_resolution(r).values())
    if b.kind == "repa2" and depth >= 3:
        assert r.complete
        c, _, _ = cx.cone(r.lam)
        assert cx.is_exact(c)


def test_resolution_of_zero_and_depth_error():
    b = ab.repa2()
    r = rs.inj_res_bounded_below(cx.zero_complex(b), 2)
    assert r.complete and r.resolution.is_zero()
    with pytest.raises(ValueError):
        rs.inj_res_bounded_below(cx.stalk(ab.S1(b), 0), 0)


@settings(max_examples=40, deadline=None)
@given(backends, seeds)
def test_horseshoe(b, s):
    rng = np.random.default_rng(s)
    y = ab.random_obj(b, rng)
    f = ab.random_mor(rng, y, ab.random_obj(b, rng))
    _, i = ab.kernel(f)
    _, q = ab.cokernel(i)
    rx, rz = rs.inj_res_object(i.dom, 3), rs.inj_res_object(q.cod, 3)
    hs = rs.horseshoe((i, q), rx, rz)
    assert all(rs.check_horseshoe(hs, (i, q), rx, rz).values())


def test_horseshoe_rejects_non_exact():
    b = ab.vect()
    a = ab.space(b, 1)
    r = rs.inj_res_object(a, 2)
    with pytest.raises(rs.NotExact):
        rs.horseshoe((ab.identity(a), ab.identity(a)), r, r)


@settings(max_examples=30, deadline=None)
@given(backends, seeds, st.integers(1, 3))
def test_cartan_eilenberg(b, s, depth):
    x = cx.random_complex(b, s, -1, 1)
    ce = rs.ce_resolution(x, depth)
    assert all(rs.check_ce(ce).values())
    lam = rs.tot_augmentation(ce)
    lam.validate()
    assert cx.is_quasi_iso(lam, list(ce.tot_window()))


@settings(max_examples=60, deadline=None)
@given(backends, seeds, st.integers(-2, 2))
def test_killing(b, s, n):
    x = cx.random_complex(b, s, -1, 1)
    k, pi = rs.kill_coboundaries(x, n)
    assert all(rs.check_killing(x, n, k, pi).values())
    # other cohomology below n is untouched
    assert all(cx.cohomology(k, m).dims == cx.cohomology(x, m).dims for m in range(-2, n))


def test_killing_embedding_identity_on_injective_quotient():
    b = ab.nilp(2)
    x = cx.stalk(ab.free(b), 0)
    e = rs.killing_embedding(x, 0)
    assert e == ab.identity(ab.free(b))


def test_ding_yang_enumeration():
    assert rs.ding_yang_degrees(13) == [0, -1, 0, 1, -2, -1, 0, 1, 2, -3, -2, -1, 0]
    assert rs.ding_yang_exact_degrees(9) == [-2, -1, 0, 1, 2]
    assert rs.ding_yang_exact_degrees(13) == [-3, -2, -1, 0, 2]


@settings(max_examples=15, deadline=None)
@given(backends, seeds, st.integers(1, 10))
def test_ding_yang_exact_window(b, s, steps):
    x = cx.random_complex(b, s, -1, 1)
    y = rs.ding_yang_iterate(x, steps)[-1][0]
    assert cx.is_exact(y, [n for n in rs.ding_yang_exact_degrees(steps) if n in y.degrees()])


def test_augmented_truncation():
    b = ab.nilp(2)
    k = ab.cyclic(b, 1)
    t = rs.augmented_truncation(k, 2)
    assert [t.obj(n).dim for n in t.degrees()] == [1, 2, 2]
    assert cx.cohomology_dims(t) == {0: 0, 1: 0, 2: 1}


def test_stalk_iteration_model_bounds():
    k = ab.cyclic(ab.nilp(2), 1)
    with pytest.raises(ValueError):
        rs.stalk_iteration_model(k, 13)
    assert rs.stalk_iteration_label(5) == rs.stalk_iteration_label(3)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3]), seeds, seeds)
def test_ext1_repa2_matches_enumeration(p, s1, s2):
    b = ab.repa2(p)
    a, c = ab.random_obj(b, s1, 2), ab.random_obj(b, s2, 2)
    assert rs.ext_group(a, c, 1).dim == oracles.repa2_ext1(a.f, c.f, p)
    assert rs.ext_group(a, c, 2).dim == 0


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(2, 3), (3, 2), (2, 5)]), seeds)
def test_ext1_from_simple_nilp(np_, s):
    n, p = np_
    b = ab.nilp(n, p)
    a = ab.random_obj(b, s, 3)
    k = ab.cyclic(b, 1)
    assert rs.ext_group(k, a, 1).dim == oracles.nilp_ext1_from_k(a.X, n, p)


@settings(max_examples=40, deadline=None)
@given(backends, seeds, seeds)
def test_ext0_is_hom(b, s1, s2):
    a, c = ab.random_obj(b, s1), ab.random_obj(b, s2)
    assert rs.ext_group(a, c, 0).dim == ab.hom_dim(a, c)


def test_ext_errors():
    b = ab.nilp(2)
    k = ab.cyclic(b, 1)
    with pytest.raises(ValueError):
        rs.ext_group(k, k, -1)
    with pytest.raises(rs.DepthInsufficient):
        rs.ext_group(k, k, 3, depth=2)
    assert rs.ext_group(k, k, 3, depth=6).dim == 1
