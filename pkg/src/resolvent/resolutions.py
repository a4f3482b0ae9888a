"""Injective resolutions and the constructions built from them.

All resolutions are cut at a finite depth.  Each result records the degrees
in which its defining property has actually been established (its certified
window); a resolution that reached a zero cokernel is complete and certified
everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import abcat as ab
from . import complexes as cx
from .abcat import HomSystem, Mor, Obj
from .complexes import ChainMap, Complex


class NotExact(ValueError):
    pass


class DepthInsufficient(ValueError):
    pass


@dataclass
class PartialResolution:
    """``lam: target -> resolution`` with the degrees where H(lam) is known to be iso."""

    target: Complex
    resolution: Complex
    lam: ChainMap
    depth: int
    complete: bool
    top: int  # last degree in which H(lam) is certified iso, if not complete

    def certified(self) -> range:
        w = cx.window(self.target, self.resolution)
        if self.complete:
            return range(w.start, w.stop + 1)
        return range(w.start, self.top + 1)

    def term(self, j: int) -> Obj:
        return self.resolution.obj(j)

    def diff(self, j: int) -> Mor:
        return self.resolution.d(j)


def _stalk_resolution(a: Obj, terms: list[Obj], diffs: list[Mor], lam0: Mor, depth: int,
                      complete: bool) -> PartialResolution:
    res = Complex(a.backend, 0, terms, diffs, check=False)
    target = cx.stalk(a, 0)
    lam = ChainMap(target, res, {0: lam0}, check=False)
    return PartialResolution(target, res, lam, depth, complete, len(terms) - 2)


def inj_res_object(a: Obj, depth: int) -> PartialResolution:
    """``0 -> a -> E^0 -> ... -> E^(depth-1)`` by envelopes of cokernels."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    env = ab.injective_envelope(a)
    terms, diffs = [env.cod], []
    last = env
    complete = False
    for _ in range(1, depth):
        c, pi = ab.cokernel(last)
        if c.is_zero():
            complete = True
            break
        e = ab.injective_envelope(c)
        terms.append(e.cod)
        last = e @ pi
        diffs.append(last)
    else:
        complete = ab.cokernel(last)[0].is_zero()
    return _stalk_resolution(a, terms, diffs, env, depth, complete)


def inj_res_bounded_below(x: Complex, depth: int) -> PartialResolution:
    """Degreewise-injective resolution built one degree at a time by push-outs.

    In degree n the coboundary quotient map ``X^n/B^n -> E^n/B^n(E)`` is pushed
    out along ``X^n/B^n -> X^(n+1)`` and the push-out is embedded into its
    injective envelope.  Terms are built up to degree ``hi + depth - 1``.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    b = x.backend
    if not x.objs:
        z = cx.zero_complex(b)
        return PartialResolution(x, z, cx.zero_map(x, z), depth, True, 0)
    k, hi = x.lo, x.hi
    top = hi + depth - 1
    env = ab.injective_envelope(x.obj(k))
    E = {k: env.cod}
    lam = {k: env}
    e: dict[int, Mor] = {}
    complete = False
    n = k
    while n < top:
        qx, pix = cx.coboundary_quotient(x, n)
        e_in = e.get(n - 1) or ab.zero_mor(ab.zero_obj(b), E[n])
        qe, pie = ab.cokernel(e_in)
        lbar = ab.factor_through_epi(pie @ lam[n], pix)
        dbar = ab.factor_through_epi(x.d(n), pix)
        pobj, mu, y = ab.pushout(dbar, lbar)
        iota = ab.injective_envelope(pobj)
        E[n + 1] = iota.cod
        e[n] = iota @ y @ pie
        lam[n + 1] = iota @ mu
        n += 1
        if n > hi and pobj.is_zero():
            complete = True
            break
    res = Complex.from_dicts(b, E, e, check=False)
    lam_map = ChainMap(x, res, lam, check=False)
    return PartialResolution(x, res, lam_map, depth, complete, top - 1)


def check_resolution(r: PartialResolution) -> dict[str, bool]:
    """The defining properties, each checked exactly."""
    res, lam = r.resolution, r.lam
    ns = list(r.certified())
    out = {
        "chain map": _is_chain_map(lam),
        "mono": all(ab.is_mono(lam.comp(n)) for n in lam.degrees()),
        "injective terms": all(ab.is_injective(res.obj(n)) for n in res.degrees()),
        "quasi-iso in window": cx.is_quasi_iso(lam, ns),
    }
    c, _, _ = cx.cone(lam)
    out["cone exact in window"] = cx.is_exact(c, [n for n in ns if n in c.degrees()])
    return out


def _is_chain_map(f: ChainMap) -> bool:
    try:
        f.validate()
        f.dst.validate()
    except ValueError:
        return False
    return True


# ---------------------------------------------------------------- horseshoe

@dataclass
class Horseshoe:
    res: PartialResolution
    incl: ChainMap
    proj: ChainMap


def horseshoe(ses: tuple[Mor, Mor], res_x: PartialResolution,
              res_z: PartialResolution) -> Horseshoe:
    """Resolve the middle of ``0 -> X -> Y -> Z -> 0`` by ``E_X + E_Z``.

    The differential is upper triangular ``[[e_X, s], [0, e_Z]]``; the
    corrections ``s`` are found by solving against the injective ``E_X``.
    """
    i, q = ses
    if i.cod != q.dom or not ab.is_mono(i) or not ab.is_epi(q) or not (q @ i).is_zero() \
            or i.dom.dim + q.cod.dim != i.cod.dim:
        raise NotExact("sequence is not short exact")
    y = i.cod
    b = y.backend
    ex, ez = res_x.resolution, res_z.resolution
    lx, lz = res_x.lam.comp(0), res_z.lam.comp(0)
    top = max(ex.hi, ez.hi, 0)
    # g: Y -> E_X^0 extending lambda_X along i
    sys_ = HomSystem(b)
    u = sys_.unknown(y, ex.obj(0))
    sys_.equation(i.dom, ex.obj(0), [(None, u, i)], lx)
    g = sys_.solve()[0]
    terms, incs, projs = {}, {}, {}
    for j in range(0, top + 1):
        s, ins, prs = ab.biproduct([ex.obj(j), ez.obj(j)])
        terms[j], incs[j], projs[j] = s, ins[0], prs[1]
    lam_y = ab.block_mor([[g], [lz @ q]], [y], [ex.obj(0), ez.obj(0)])
    diffs = {}
    prev_sigma = None
    for j in range(0, top):
        sys_ = HomSystem(b)
        u = sys_.unknown(ez.obj(j), ex.obj(j + 1))
        if j == 0:
            # sigma^0 (lambda_Z q) = -e_X^0 g
            sys_.equation(y, ex.obj(1), [(None, u, lz @ q)], -(ex.d(0) @ g))
        else:
            sys_.equation(ez.obj(j - 1), ex.obj(j + 1), [(None, u, ez.d(j - 1))],
                          -(ex.d(j) @ prev_sigma))
        sigma = sys_.solve()[0]
        diffs[j] = ab.block_mor([[ex.d(j), sigma], [None, ez.d(j)]],
                                [ex.obj(j), ez.obj(j)], [ex.obj(j + 1), ez.obj(j + 1)])
        prev_sigma = sigma
    res = Complex.from_dicts(b, terms, diffs, check=False)
    target = cx.stalk(y, 0)
    lam = ChainMap(target, res, {0: lam_y}, check=False)
    complete = res_x.complete and res_z.complete
    tops = [r.top for r in (res_x, res_z) if not r.complete]
    pr = PartialResolution(target, res, lam, res_x.depth, complete, min(tops) if tops else top)
    incl = ChainMap(ex, res, incs, check=False)
    proj = ChainMap(res, ez, projs, check=False)
    return Horseshoe(pr, incl, proj)


def check_horseshoe(hs: Horseshoe, ses: tuple[Mor, Mor], res_x: PartialResolution,
                    res_z: PartialResolution) -> dict[str, bool]:
    i, q = ses
    r = hs.res
    out = check_resolution(r)
    out["inclusion is a chain map"] = _is_chain_map(hs.incl)
    out["projection is a chain map"] = _is_chain_map(hs.proj)
    out["left square commutes"] = hs.incl.comp(0) @ res_x.lam.comp(0) == r.lam.comp(0) @ i
    out["right square commutes"] = hs.proj.comp(0) @ r.lam.comp(0) == res_z.lam.comp(0) @ q
    return out


# ---------------------------------------------------------------- Cartan-Eilenberg

@dataclass
class CEResolution:
    target: Complex
    grid: "object"  # bicomplexes.Bicomplex
    lam: dict[int, Mor]
    depth: int
    res_B: dict[int, PartialResolution] = field(default_factory=dict)
    res_H: dict[int, PartialResolution] = field(default_factory=dict)
    hs_Z: dict[int, Horseshoe] = field(default_factory=dict)
    hs_A: dict[int, Horseshoe] = field(default_factory=dict)

    def column_window(self, n: int) -> range:
        """Rows in which the resolution of A^n is certified exact."""
        r = self.hs_A[n].res
        return range(0, self.depth) if r.complete else range(0, r.top + 1)

    def tot_window(self) -> range:
        """Degrees in which Tot(lam) is certified to be a quasi-isomorphism."""
        cols = [n for n in self.target.degrees()]
        if not cols:
            return range(0)
        lo = min(cols)
        open_cols = [n for n in cols if not self.hs_A[n].res.complete]
        hi = max(cols) + self.depth if not open_cols else min(open_cols) + self.depth - 2
        return range(lo, hi + 1)


def ce_resolution(a: Complex, depth: int) -> CEResolution:
    """Cartan-Eilenberg resolution cut at ``depth`` rows.

    Resolve B^n and H^n, combine them along ``0 -> B^n -> Z^n -> H^n -> 0`` and
    then along ``0 -> Z^n -> A^n -> B^(n+1) -> 0``.  Column n is the resolution
    of A^n with vertical differential ``(-1)^n e``; the horizontal differential
    is ``E_{A^n} ->> E_{B^(n+1)} >-> E_{Z^(n+1)} >-> E_{A^(n+1)}``.
    """
    from .bicomplexes import Bicomplex

    b = a.backend
    ns = list(a.degrees())
    Z, iZ, B, iB, jB, H, qH = {}, {}, {}, {}, {}, {}, {}
    for n in ns + [a.hi + 1] if ns else []:
        Z[n], iZ[n] = cx.cocycles(a, n)
        B[n], _, iB[n] = cx.coboundaries(a, n)
        jB[n] = ab.factor_through_mono(iB[n], iZ[n])
        H[n], qH[n] = ab.cokernel(jB[n])
    ce = CEResolution(a, None, {}, depth)
    for n in ns + [a.hi + 1] if ns else []:
        ce.res_B[n] = inj_res_object(B[n], depth)
    for n in ns:
        ce.res_H[n] = inj_res_object(H[n], depth)
        ce.hs_Z[n] = horseshoe((jB[n], qH[n]), ce.res_B[n], ce.res_H[n])
    for n in ns:
        to_b = ab.factor_through_mono(a.d(n), iB[n + 1])
        ce.hs_A[n] = horseshoe((iZ[n], to_b), ce.hs_Z[n].res, ce.res_B[n + 1])
    cells, d0, d1 = {}, {}, {}
    for n in ns:
        col = ce.hs_A[n].res.resolution
        for m in range(depth):
            cells[(m, n)] = col.obj(m)
    for n in ns:
        col = ce.hs_A[n].res.resolution
        sign = -1 if n % 2 else 1
        for m in range(depth - 1):
            d1[(m, n)] = sign * col.d(m)
        if n + 1 in ce.hs_A:
            for m in range(depth):
                d0[(m, n)] = (ce.hs_A[n + 1].incl.comp(m) @ ce.hs_Z[n + 1].incl.comp(m)
                              @ ce.hs_A[n].proj.comp(m))
    ce.grid = Bicomplex(b, cells, d0, d1)
    ce.lam = {n: ce.hs_A[n].res.lam.comp(0) for n in ns}
    return ce


def _rows(ce: CEResolution) -> tuple[list[Complex], list[ChainMap], ChainMap]:
    """Horizontal rows of the sign-corrected grid, vertical maps between them, and lam."""
    from .bicomplexes import sign_trick

    dc = sign_trick(ce.grid)
    a = ce.target
    rows = [dc.row(m, a.degrees()) for m in range(ce.depth)]
    vert = [ChainMap(rows[m], rows[m + 1], {n: dc.vertical(m, n) for n in a.degrees()},
                     check=False) for m in range(ce.depth - 1)]
    lam = ChainMap(a, rows[0], dict(ce.lam), check=False)
    return rows, vert, lam


def _column_is_resolution(aug: Mor, terms: list[Obj], diffs: list[Mor], rows: range) -> bool:
    """Augmented column ``F(A) -> F^0 -> F^1 -> ...`` exact in ``rows`` with injective terms."""
    b = aug.backend
    col = Complex(b, -1, [aug.dom] + terms, [aug] + diffs, check=False)
    try:
        col.validate()
    except ValueError:
        return False
    if not all(ab.is_injective(terms[m]) for m in rows if m < len(terms)):
        return False
    return cx.is_exact(col, [-1] + [m for m in rows if m < len(terms)])


def check_ce(ce: CEResolution) -> dict[str, bool]:
    """Conditions ce.1 to ce.5, each verified directly on the grid."""
    a = ce.target
    out = {"ce.1": True, "ce.2": True, "ce.3": True, "ce.4": True, "ce.5": True}
    if not a.objs:
        return out
    try:
        ce.grid.validate()
    except ValueError:
        return {k: False for k in out}
    rows, vert, lam = _rows(ce)
    for n in a.degrees():
        w = ce.column_window(n)
        if a.obj(n).is_zero() and any(not ce.grid.cell(m, n).is_zero() for m in range(ce.depth)):
            out["ce.1"] = False
        # B, H columns and the derived Z, A columns
        for key, kind in (("ce.2", "B"), ("ce.3", "H"), ("ce.4", "Z")):
            aug, terms, diffs = _induced_column(kind, n, rows, vert, lam)
            wk = {"B": ce.res_B[n], "H": ce.res_H[n], "Z": ce.hs_Z[n].res}[kind]
            rws = range(0, ce.depth) if wk.complete else range(0, wk.top + 1)
            if not _column_is_resolution(aug, terms, diffs, rws):
                out[key] = False
        terms = [rows[m].obj(n) for m in range(ce.depth)]
        diffs = [vert[m].comp(n) for m in range(ce.depth - 1)]
        if not _column_is_resolution(lam.comp(n), terms, diffs, w):
            out["ce.5"] = False
    return out


def _induced_column(kind: str, n: int, rows, vert, lam):
    if kind == "B":
        objs = [cx.coboundaries(r, n)[0] for r in rows]
        maps = [cx.induced_B(v, n) for v in vert]
        aug = cx.induced_B(lam, n)
    elif kind == "Z":
        objs = [cx.cocycles(r, n)[0] for r in rows]
        maps = [cx.induced_Z(v, n) for v in vert]
        aug = cx.induced_Z(lam, n)
    else:
        objs = [cx.cohomology(r, n) for r in rows]
        maps = [cx.induced_H(v, n) for v in vert]
        aug = cx.induced_H(lam, n)
    return aug, objs, maps


def tot_augmentation(ce: CEResolution) -> ChainMap:
    """``Tot(lam): A -> Tot(C)`` with ``A^n`` mapped into the summand ``C^(0,n)``."""
    from .bicomplexes import augmentation_into_tot

    return augmentation_into_tot(ce.grid, ce.lam, ce.target)


# ---------------------------------------------------------------- killing coboundaries

def killing_embedding(x: Complex, n: int) -> Mor:
    """Embedding of ``X^n / B^n`` into an injective: identity if already injective."""
    q, _ = cx.coboundary_quotient(x, n)
    return ab.injective_envelope(q)


def kill_coboundaries(x: Complex, n: int, check: bool = True) -> tuple[Complex, ChainMap]:
    """``K(X, n)``: degree n+1 becomes ``X^(n+1) + E`` so that ``H^n(K) = 0``."""
    b = x.backend
    q, rho = cx.coboundary_quotient(x, n)
    iota = ab.injective_envelope(q)
    e = iota.cod
    xn1 = x.obj(n + 1)
    objs = {m: x.obj(m) for m in x.degrees()}
    objs[n + 1] = ab.direct_sum([xn1, e])
    diffs = {m: x.d(m) for m in range(x.lo, x.hi)}
    diffs[n] = ab.block_mor([[x.d(n)], [iota @ rho]], [x.obj(n)], [xn1, e])
    diffs[n + 1] = ab.block_mor([[x.d(n + 1), None]], [xn1, e], [x.obj(n + 2)])
    k = Complex.from_dicts(b, objs, diffs, check=False)
    _, _, projs = ab.biproduct([xn1, e])
    comps = {m: ab.identity(k.obj(m)) for m in k.degrees() if m != n + 1}
    comps[n + 1] = projs[0]
    pi = ChainMap(k, x, comps, check=False)
    if check:
        bad = [name for name, ok in check_killing(x, n, k, pi).items() if not ok]
        if bad:
            raise AssertionError(f"killing coboundaries in degree {n} failed: {bad}")
    return k, pi


def check_killing(x: Complex, n: int, k: Complex, pi: ChainMap) -> dict[str, bool]:
    e = killing_embedding(x, n).cod
    try:
        k.validate()
        pi.validate()
    except ValueError:
        return {"complex": False}
    ker, _ = cx.kernel_complex(pi)
    return {
        "complex": True,
        "H^n vanishes": cx.cohomology(k, n).is_zero(),
        "degreewise split epi": cx.degreewise_sections(pi) is not None,
        "kernel is a stalk of E": ker.trimmed() == cx.stalk(e, n + 1).trimmed(),
    }


def ding_yang_degrees(count: int) -> list[int]:
    """``0; -1, 0, 1; -2, ..., 2; ...`` truncated to ``count`` entries."""
    out = [0]
    m = 1
    while len(out) < count:
        out += list(range(-m, m + 1))
        m += 1
    return out[:count]


def ding_yang_iterate(x: Complex, steps: int) -> list[tuple[Complex, ChainMap]]:
    """``Y_i = K(Y_(i-1), n_i)`` for ``i < steps`` with ``Y_(-1) = x``."""
    out = []
    y = x
    for n in ding_yang_degrees(steps):
        y, pi = kill_coboundaries(y, n)
        out.append((y, pi))
    return out


def ding_yang_exact_degrees(steps: int) -> list[int]:
    """Degrees in which ``Y_(steps-1)`` is guaranteed exact.

    Killing in degree n makes ``H^n`` vanish and only touches degree ``n + 1``.
    """
    out: set[int] = set()
    for n in ding_yang_degrees(steps):
        out.add(n)
        out.discard(n + 1)
    return sorted(out)


def augmented_truncation(a: Obj, m: int) -> Complex:
    """``a -> E^1 -> ... -> E^m`` (a in degree 0) from the injective resolution of ``a``."""
    r = inj_res_object(a, max(m, 1))
    objs = {0: a}
    diffs = {}
    for j in range(1, m + 1):
        objs[j] = r.term(j - 1)
    if m >= 1:
        diffs[0] = r.lam.comp(0)
    for j in range(1, m):
        diffs[j] = r.diff(j - 1)
    return Complex.from_dicts(a.backend, objs, diffs)


def stalk_iteration_model(a: Obj, i: int) -> Complex:
    """Predicted isomorphism type of ``Y_i`` for the input ``S^0(a)``, ``0 <= i <= 12``."""
    r = inj_res_object(a, 3)
    e1, e2 = r.term(0), r.term(1)
    s = ab.direct_sum
    T = augmented_truncation

    def S(k, objs):
        return cx.stalk(s(objs, a.backend), k)

    def D(k, objs):
        return cx.disk(s(objs, a.backend), k)

    table = {
        0: [T(a, 1)],
        2: [T(a, 1), S(1, [e1])],
        3: [T(a, 2), D(1, [e1])],
        6: [T(a, 2), S(1, [e1]), D(1, [e1])],
        7: [T(a, 2), D(1, [e1, e1]), S(2, [e1, e2])],
        8: [T(a, 3), D(1, [e1, e1]), D(2, [e1, e2])],
        12: [T(a, 3), S(1, [e1]), D(1, [e1, e1]), D(2, [e1, e2])],
    }
    if not 0 <= i <= 12:
        raise ValueError("the model covers steps 0 to 12")
    return cx.sum_of(table[_MODEL_ALIAS.get(i, i)], a.backend)


_MODEL_ALIAS = {1: 0, 4: 3, 5: 3, 9: 8, 10: 8, 11: 8}
_MODEL_LABELS = {
    0: "E[0,1]",
    2: "E[0,1] + S^1(E1)",
    3: "E[0,2] + D^1(E1)",
    6: "E[0,2] + S^1(E1) + D^1(E1)",
    7: "E[0,2] + D^1(E1^2) + S^2(E1 + E2)",
    8: "E[0,3] + D^1(E1^2) + D^2(E1 + E2)",
    12: "E[0,3] + S^1(E1) + D^1(E1^2) + D^2(E1 + E2)",
}


def stalk_iteration_label(i: int) -> str:
    """Readable name of :func:`stalk_iteration_model` ``(a, i)``; ``E[0,m]`` is the
    augmented truncation and ``Ej`` the j-th injective term."""
    return _MODEL_LABELS[_MODEL_ALIAS.get(i, i)]


# ---------------------------------------------------------------- Ext

def ext_group(a: Obj, b: Obj, k: int, depth: int | None = None) -> Obj:
    """``Ext^k(a, b)`` as an F_p-space: ``H^k`` of ``Hom(a, E)`` for a resolution E of b."""
    if k < 0:
        raise ValueError("k must be non-negative")
    depth = depth if depth is not None else k + 2
    r = inj_res_object(b, depth)
    if not r.complete and k > r.top:
        raise DepthInsufficient(f"depth {depth} does not certify Ext^{k}")
    h = cx.hom_from(a, r.resolution)
    return cx.cohomology(h, k)
