import dataclasses

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from resolvent import abcat as ab
from resolvent import complexes as cx
from resolvent import resolutions as rs
from resolvent import towers as tw

BACKENDS = [ab.vect(), ab.nilp(2), ab.nilp(3), ab.repa2()]
seeds = st.integers(0, 2**32)
backends = st.sampled_from(BACKENDS)


def test_nonnegative_levels():
    with pytest.raises(ValueError):
        tw.build_tower(cx.stalk(ab.S1(ab.repa2()), 0), -1, 2)


def test_supported_in_nonnegative_degrees_is_constant():
    b = ab.repa2()
    x = cx.random_complex(b, 4, 0, 2)
    t = tw.build_tower(x, 3, 3)
    assert all(tr == x for tr in t.truncs)
    assert all(m == cx.identity_map(m.src) for m in t.t)
    assert all(d == [] for d in t.disks)
    lim = tw.finite_limit(t)
    assert lim.complex == t.E(0)


@settings(max_examples=25, deadline=None)
@given(backends, seeds, st.integers(0, 4), st.integers(2, 3))
def test_tower_conditions(b, s, levels, depth):
    x = cx.random_complex(b, s, -2, 2)
    t = tw.build_tower(x, levels, depth)
    assert all(tw.check_tower(t).values())
    assert all(all(row.values()) for row in tw.window_conditions(t).values())
    lim = tw.finite_limit(t)
    lim.lam.validate()
    assert tw.pullback_agrees(t, lim)
    assert cx.is_quasi_iso(lim.lam, lim.window)
    seq = tw.lim_prod_sequence(t)
    assert all(tw.check_lim_prod(seq, lim).values())


@settings(max_examples=25, deadline=None)
@given(backends, seeds)
def test_limit_window_covers_support(b, s):
    x = cx.random_complex(b, s, -2, 1)
    t = tw.build_tower(x, 2, 4)
    lim = tw.finite_limit(t)
    # once N reaches -lo(x) the window starts at the bottom of x
    assert lim.window.start == x.lo
    for i in range(-2, 2):
        rep = tw.stabilization_check(t, i)
        assert rep.holds()
        assert rep.stable_from is not None and rep.stable_from <= max(0, -i)


def test_level_zero_sequence():
    b = ab.nilp(2)
    x = cx.random_complex(b, 2, 0, 1)
    t = tw.build_tower(x, 0, 2)
    seq = tw.lim_prod_sequence(t)
    assert seq.lim == t.E(0) and seq.prod.trimmed() == t.E(0).trimmed()
    assert seq.prod_short.is_zero()
    assert all(tw.check_lim_prod(seq).values())


def test_identity_tower_kernel_is_diagonal():
    b = ab.repa2()
    x = cx.stalk(ab.I2(b), 0)
    t = tw.build_tower(x, 2, 2)
    seq = tw.lim_prod_sequence(t)
    e = t.E(0)
    assert all(seq.lim.obj(n).dims == e.obj(n).dims for n in e.degrees())
    _, incs, _ = cx.direct_sum([t.E(n) for n in range(3)], b)
    diag = incs[0] + incs[1] + incs[2]
    for n in e.degrees():
        assert seq.one_minus_t.comp(n) @ diag.comp(n) == ab.zero_mor(e.obj(n), seq.prod_short.obj(n))


def test_missing_splittings():
    b = ab.nilp(2)
    t = tw.build_tower(cx.stalk(ab.cyclic(b, 1), -1), 1, 2)
    broken = dataclasses.replace(t, sections=[None])
    with pytest.raises(tw.MissingSplittings):
        tw.lim_prod_sequence(broken)


def test_pad_with_disks_on_non_split_map():
    b = ab.nilp(2)
    r = ab.free(b)
    # multiplication by x on R has image the socle, so no section exists
    x_mult = ab.mor(r, r, ab.shift_matrix(2))
    src = cx.stalk(r, 0)
    t = cx.ChainMap(src, cx.stalk(r, 0), {0: x_mult})
    assert cx.degreewise_sections(t) is None
    lam = cx.identity_map(src)
    t2, lam2, added = tw.pad_with_disks(t, lam)
    assert added == [0]
    t2.validate()
    lam2.validate()
    assert cx.degreewise_sections(t2) is not None
    assert t2 @ lam2 == t @ lam
    ker, _ = cx.kernel_complex(t2)
    assert all(ab.is_injective(o) for o in ker.objs)
    assert [t2.src.obj(n).dim for n in t2.src.degrees()] == [4, 2]


def test_stalk_sum_levels_are_sums_of_shifted_resolutions():
    b = ab.nilp(2)
    k = ab.cyclic(b, 1)
    z = ab.zero_obj(b)
    x = cx.Complex(b, -2, [k, z, k])
    depth = 3
    t = tw.build_tower(x, 2, depth)
    for n in range(3):
        e = t.E(n)
        parts = [cx.shift(rs.inj_res_object(x.obj(j), e.hi - j + 1).resolution, -j)
                 for j in (-2, 0) if j >= -n]
        want = cx.sum_of(parts, b)
        assert cx.find_complex_iso(e, want) is not None


def test_exact_input_has_no_cohomology():
    b = ab.repa2()
    x = cx.disk(ab.I2(b), -2)
    t = tw.build_tower(x, 3, 2)
    for i in range(-3, 2):
        rep = tw.stabilization_check(t, i)
        certified = [n for n in range(t.N + 1) if i in t.levels[n].certified()]
        assert all(rep.h_dims[n] == 0 for n in certified)
