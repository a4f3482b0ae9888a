"""Towers of partial resolutions of the left truncations of a complex.

Level n resolves ``tau^{>=-n} X``.  The level map ``t_n: E_(n+1) -> E_n`` is
first obtained by lifting ``lam_n rho_n`` through ``lam_(n+1)`` and then made
degreewise split epi by adding disks ``D^j(E_n^j)`` to the source in the
lowest degrees where a section is missing.  Beyond level N the tower is
extended by identities, so every limit below is a finite one.

For finite families the derived-product hypotheses of the infinite theory are
vacuous; :func:`window_conditions` and :func:`stabilization_check` expose the
cohomological conditions that remain checkable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import abcat as ab
from . import complexes as cx
from . import linalg as la
from .abcat import HomSystem, Mor
from .complexes import ChainMap, Complex
from .linalg import NoSolution
from .resolutions import PartialResolution, inj_res_bounded_below


class MissingSplittings(ValueError):
    pass


class NoLift(RuntimeError):
    pass


@dataclass
class Tower:
    x: Complex
    depth: int
    truncs: list[Complex]            # tau_n = tau^{>=-n} x
    proj: list[ChainMap]             # x -> tau_n
    rho: list[ChainMap]              # tau_(n+1) -> tau_n
    levels: list[PartialResolution]  # lam_n: tau_n -> E_n (disk padded)
    t: list[ChainMap]                # E_(n+1) -> E_n
    sections: list[dict[int, Mor] | None]
    disks: list[list[int]] = field(default_factory=list)  # padding degrees per t_n

    @property
    def N(self) -> int:
        return len(self.levels) - 1

    def E(self, n: int) -> Complex:
        return self.levels[n].resolution

    def lam(self, n: int) -> ChainMap:
        return self.levels[n].lam


def lift_level_map(lam_src: ChainMap, lam_dst: ChainMap, rho: ChainMap) -> ChainMap:
    """Chain map ``t: E_src -> E_dst`` with ``t lam_src = lam_dst rho``."""
    es, ed = lam_src.dst, lam_dst.dst
    ns = list(cx.window(es, ed))
    sys_, idx = cx.chain_map_system(es, ed, ns)
    for n in ns:
        if n in idx:
            sys_.equation(lam_src.src.obj(n), ed.obj(n), [(None, idx[n], lam_src.comp(n))],
                          lam_dst.comp(n) @ rho.comp(n))
    try:
        sol = sys_.solve()
    except NoSolution:
        raise NoLift("the level map does not lift") from None
    return ChainMap(es, ed, {n: sol[i] for n, i in idx.items()})


def _section(m: Mor) -> Mor | None:
    if m.cod.is_zero():
        return ab.zero_mor(m.cod, m.dom)
    sys_ = HomSystem(m.backend)
    u = sys_.unknown(m.cod, m.dom)
    sys_.equation(m.cod, m.cod, [(m, u, None)], ab.identity(m.cod))
    try:
        return sys_.solve()[0]
    except NoSolution:
        return None


def pad_with_disks(t: ChainMap, lam: ChainMap) -> tuple[ChainMap, ChainMap, list[int]]:
    """Add ``D^j(E^j)`` to the source of ``t: S -> E`` wherever ``t^j`` has no section.

    Returns the padded map, ``lam`` followed by the summand inclusion, and the
    degrees that received a disk.
    """
    e = t.dst
    added = []
    j = min(cx.window(t.src, e), default=0)
    while j <= max(t.src.hi, e.hi):
        if _section(t.comp(j)) is None:
            d = cx.disk(e.obj(j), j)
            to_e = ChainMap(d, e, {j: ab.identity(e.obj(j)), j + 1: e.d(j)})
            s, incs, projs = cx.direct_sum([t.src, d])
            t = t @ projs[0] + to_e @ projs[1]
            lam = incs[0] @ lam
            added.append(j)
        j += 1
    return t, lam, added


def build_tower(x: Complex, levels: int, depth: int) -> Tower:
    """Levels ``0..levels`` of the tower of partial resolutions of ``x``."""
    if levels < 0:
        raise ValueError("levels must be non-negative")
    N = levels
    truncs: list[Complex] = [None] * (N + 1)
    rho: list[ChainMap] = [None] * N
    proj: list[ChainMap] = [None] * (N + 1)
    truncs[N], proj[N] = cx.truncate_left(x, -N)
    for n in range(N - 1, -1, -1):
        truncs[n], rho[n] = cx.truncate_left(truncs[n + 1], -n)
        proj[n] = rho[n] @ proj[n + 1]
    base = [inj_res_bounded_below(tr, depth) for tr in truncs]
    lvls = [base[0]]
    ts, secs, disks = [], [], []
    for n in range(N):
        src = base[n + 1]
        dst = lvls[n]
        if truncs[n + 1] == truncs[n] and src.resolution == dst.resolution \
                and src.lam == dst.lam:
            t = cx.identity_map(dst.resolution)
            lam, added = dst.lam, []
        else:
            t = lift_level_map(src.lam, dst.lam, rho[n])
            t, lam, added = pad_with_disks(t, src.lam)
        res = PartialResolution(truncs[n + 1], t.src, lam, depth, src.complete, src.top)
        lvls.append(res)
        ts.append(t)
        secs.append(cx.degreewise_sections(t))
        disks.append(added)
    return Tower(x, depth, truncs, proj, rho, lvls, ts, secs, disks)


def check_tower(tw: Tower) -> dict[str, bool]:
    """The three tower conditions, plus the window property of every lam_n."""
    out = {"bounded below, injective terms": True,
           "split epi with injective kernel": True,
           "lam rho = t lam": True,
           "lam quasi-iso in window": True}
    for n, lv in enumerate(tw.levels):
        e = lv.resolution
        if e.objs and e.support() is not None and e.support()[0] < -n:
            out["bounded below, injective terms"] = False
        if not all(ab.is_injective(o) for o in e.objs):
            out["bounded below, injective terms"] = False
        if not cx.is_quasi_iso(lv.lam, lv.certified()) or \
                not all(ab.is_mono(m) for m in lv.lam.comps.values()):
            out["lam quasi-iso in window"] = False
    for n, t in enumerate(tw.t):
        try:
            t.validate()
        except ValueError:
            out["split epi with injective kernel"] = False
            continue
        ker, _ = cx.kernel_complex(t)
        if tw.sections[n] is None or not all(ab.is_injective(o) for o in ker.objs):
            out["split epi with injective kernel"] = False
        if tw.lam(n) @ tw.rho[n] != t @ tw.lam(n + 1):
            out["lam rho = t lam"] = False
    return out


# ---------------------------------------------------------------- limits

@dataclass
class LimProdSequence:
    lim: Complex
    prod: Complex
    prod_short: Complex
    incl: ChainMap          # lim -> prod
    one_minus_t: ChainMap   # prod -> prod_short
    sigma: dict[int, Mor]   # degreewise right inverse of one_minus_t


@dataclass
class TowerLimit:
    complex: Complex
    lam: ChainMap           # x -> lim
    incl: ChainMap          # lim -> prod of the levels
    window: range           # degrees where H(lam) is certified iso


def _products(tw: Tower):
    es = [tw.E(n) for n in range(tw.N + 1)]
    prod, incs, projs = cx.direct_sum(es, tw.x.backend)
    short, sincs, sprojs = cx.direct_sum(es[:-1], tw.x.backend)
    return es, (prod, incs, projs), (short, sincs, sprojs)


def one_minus_t(tw: Tower) -> ChainMap:
    """``(e_n)_n -> (e_n - t_n e_(n+1))_n`` from all levels to levels ``0..N-1``."""
    es, (prod, _, projs), (short, sincs, _) = _products(tw)
    total = cx.zero_map(prod, short)
    for n in range(tw.N):
        total = total + sincs[n] @ projs[n] - sincs[n] @ tw.t[n] @ projs[n + 1]
    return total


def finite_limit(tw: Tower) -> TowerLimit:
    """Limit of the finite tower as the degreewise kernel of ``1 - t``."""
    es, (prod, incs, projs), _ = _products(tw)
    if tw.N == 0:
        lim, incl = es[0], cx.identity_map(es[0])
    else:
        lim, incl = cx.kernel_complex(one_minus_t(tw))
    into_prod = cx.zero_map(tw.x, prod)
    for n in range(tw.N + 1):
        into_prod = into_prod + incs[n] @ tw.lam(n) @ tw.proj[n]
    comps = {n: ab.factor_through_mono(into_prod.comp(n), incl.comp(n))
             for n in cx.window(tw.x, lim)}
    lam = ChainMap(tw.x, lim, comps)
    top = tw.levels[-1]
    lo = max(tw.x.lo, -tw.N) if tw.x.objs else 0
    hi = max(top.certified(), default=lo - 1)
    return TowerLimit(lim, lam, incl, range(lo, hi + 1))


def limit_via_pullbacks(tw: Tower) -> tuple[Complex, dict[int, list[Mor]]]:
    """Degreewise iterated pullback ``L_(k+1) = L_k x_(E_k) E_(k+1)``.

    Returns the limit objects (as a complex without differential data beyond
    what the projections force) and, per degree, the projections to each level.
    """
    b = tw.x.backend
    degrees = cx.window(*[tw.E(n) for n in range(tw.N + 1)])
    objs, legs = {}, {}
    for j in degrees:
        L = tw.E(0).obj(j)
        ls = [ab.identity(L)]
        for k in range(tw.N):
            P, pl, pe = ab.pullback(ls[k], tw.t[k].comp(j))
            ls = [m @ pl for m in ls] + [pe]
            L = P
        objs[j], legs[j] = L, ls
    return Complex.from_dicts(b, objs, {}, check=False), legs


def pullback_agrees(tw: Tower, lim: TowerLimit) -> bool:
    """The iterated pullback and the kernel of ``1 - t`` are the same subobject."""
    p = tw.x.p
    L, legs = limit_via_pullbacks(tw)
    _, (prod, incs, _), _ = _products(tw)
    for j in cx.window(L, lim.complex):
        if L.obj(j).dims != lim.complex.obj(j).dims:
            return False
        if L.obj(j).is_zero():
            continue
        m = sum((incs[n].comp(j) @ legs[j][n] for n in range(tw.N + 1)),
                ab.zero_mor(L.obj(j), prod.obj(j)))
        if not ab.is_mono(m):
            return False
        for a, c in zip(m.blocks, lim.incl.comp(j).blocks):
            both = np.concatenate([a, c], axis=1)
            if la.rank(both, p) != la.rank(a, p) or la.rank(a, p) != la.rank(c, p):
                return False
    return True


def lim_prod_sequence(tw: Tower) -> LimProdSequence:
    """``0 -> lim -> prod E_n -> prod_(n<N) E_n -> 0`` with its right inverse.

    ``sigma`` has entries ``-s_(i-1) ... s_j`` below the diagonal (row i,
    column j < i) and zero in row 0, where ``s_n`` are the sections of ``t_n``.
    """
    if any(s is None for s in tw.sections):
        raise MissingSplittings("some level map has no degreewise section")
    es, (prod, incs, projs), (short, sincs, sprojs) = _products(tw)
    omt = one_minus_t(tw)
    if tw.N == 0:
        lim, incl = es[0], cx.identity_map(es[0])
    else:
        lim, incl = cx.kernel_complex(omt)
    sigma = {}
    for j in prod.degrees():
        total = ab.zero_mor(short.obj(j), prod.obj(j))
        for col in range(tw.N):
            chain = ab.identity(es[col].obj(j))
            for i in range(col + 1, tw.N + 1):
                chain = tw.sections[i - 1][j] @ chain if j in tw.sections[i - 1] \
                    else ab.zero_mor(chain.dom, es[i].obj(j))
                total = total - incs[i].comp(j) @ chain @ sprojs[col].comp(j)
        sigma[j] = total
    return LimProdSequence(lim, prod, short, incl, omt, sigma)


def check_lim_prod(seq: LimProdSequence, lim: TowerLimit | None = None) -> dict[str, bool]:
    out = {}
    ns = list(seq.prod.degrees())
    out["incl mono"] = all(ab.is_mono(seq.incl.comp(n)) for n in ns)
    out["(1-t) incl = 0"] = all(m.is_zero() for m in (seq.one_minus_t @ seq.incl).comps.values())
    out["exact in the middle"] = all(
        ab.rank(seq.one_minus_t.comp(n)) + seq.lim.obj(n).dim == seq.prod.obj(n).dim for n in ns)
    out["(1-t) epi"] = all(ab.is_epi(seq.one_minus_t.comp(n)) for n in ns)
    out["(1-t) sigma = id"] = all(
        seq.one_minus_t.comp(n) @ seq.sigma[n] == ab.identity(seq.prod_short.obj(n)) for n in ns)
    if lim is not None:
        out["ker(1-t) iso to limit"] = _limit_iso(seq, lim)
    return out


def _limit_iso(seq: LimProdSequence, lim: TowerLimit) -> bool:
    comps = {}
    for n in cx.window(seq.lim, lim.complex):
        try:
            comps[n] = ab.factor_through_mono(lim.incl.comp(n), seq.incl.comp(n))
        except NoSolution:
            return False
    return cx.verify_iso(ChainMap(lim.complex, seq.lim, comps, check=False))


# ---------------------------------------------------------------- stabilization

@dataclass
class StabilityReport:
    degree: int
    h_dims: list[int]                 # dim H^i(E_n) per level
    iso: list[bool]                   # H^i(t_n) iso, per n < N
    applicable: list[bool]            # i >= -n, per n < N
    stable_from: int | None           # first level after which every H^i(t_n) is iso

    def holds(self) -> bool:
        return all(ok for ok, ap in zip(self.iso, self.applicable) if ap)


def stabilization_check(tw: Tower, i: int) -> StabilityReport:
    dims = [cx.cohomology(tw.E(n), i).dim for n in range(tw.N + 1)]
    iso = [ab.is_iso(cx.induced_H(t, i)) for t in tw.t]
    applicable = [i >= -n for n in range(tw.N)]
    stable = None
    for n0 in range(tw.N + 1):
        if all(iso[n0:]):
            stable = n0
            break
    return StabilityReport(i, dims, iso, applicable, stable)


def window_conditions(tw: Tower) -> dict[int, dict[str, bool]]:
    """Per level: ``H^(-n-1)(E_n) = 0`` and ``H^i(t_n)`` iso for certified ``i >= -n``."""
    out = {}
    for n in range(tw.N + 1):
        e = tw.E(n)
        row = {"H^(-n-1) vanishes": cx.cohomology(e, -n - 1).is_zero()}
        if n < tw.N:
            w = [i for i in tw.levels[n + 1].certified() if i >= -n]
            row["H^i(t_n) iso on window"] = all(ab.is_iso(cx.induced_H(tw.t[n], i)) for i in w)
        out[n] = row
    return out
