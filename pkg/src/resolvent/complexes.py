"""Finitely supported cochain complexes, chain maps and homotopies.

Sign conventions: ``(shift(X, k))^n = X^(n+k)`` with differential multiplied
by ``(-1)^k``; ``cone(f)^n = src^(n+1) + dst^n`` with differential
``[[-d_src, 0], [f, d_dst]]``.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

import numpy as np

from . import abcat as ab
from . import linalg as la
from .abcat import Backend, HomSystem, Mor, Obj
from .linalg import NoSolution


class NotAComplex(ValueError):
    pass


class Complex:
    """Objects in degrees ``lo..hi`` with differentials ``d^n: X^n -> X^(n+1)``."""

    __slots__ = ("backend", "lo", "objs", "diffs")

    def __init__(self, backend: Backend, lo: int, objs: Sequence[Obj],
                 diffs: Sequence[Mor] | None = None, check: bool = True):
        self.backend = backend
        self.lo = int(lo)
        self.objs = tuple(objs)
        if diffs is None:
            diffs = [ab.zero_mor(a, b) for a, b in zip(self.objs, self.objs[1:])]
        self.diffs = tuple(diffs)
        if check:
            self.validate()

    @classmethod
    def from_dicts(cls, backend: Backend, objs: dict[int, Obj],
                   diffs: dict[int, Mor] | None = None, check: bool = True) -> "Complex":
        diffs = diffs or {}
        keys = [n for n, o in objs.items()]
        if not keys:
            return zero_complex(backend)
        lo, hi = min(keys), max(keys)
        zero = ab.zero_obj(backend)
        os_ = [objs.get(n, zero) for n in range(lo, hi + 1)]
        ds = [diffs.get(n) or ab.zero_mor(os_[n - lo], os_[n - lo + 1]) for n in range(lo, hi)]
        return cls(backend, lo, os_, ds, check=check)

    @property
    def hi(self) -> int:
        return self.lo + len(self.objs) - 1

    @property
    def p(self) -> int:
        return self.backend.p

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def obj(self, n: int) -> Obj:
        if self.lo <= n <= self.hi:
            return self.objs[n - self.lo]
        return ab.zero_obj(self.backend)

    def d(self, n: int) -> Mor:
        if self.lo <= n < self.hi:
            return self.diffs[n - self.lo]
        return ab.zero_mor(self.obj(n), self.obj(n + 1))

    def validate(self):
        if len(self.diffs) != max(len(self.objs) - 1, 0):
            raise NotAComplex("need one differential between consecutive degrees")
        for n in range(self.lo, self.hi):
            d = self.diffs[n - self.lo]
            if d.dom != self.obj(n) or d.cod != self.obj(n + 1):
                raise NotAComplex(f"differential d^{n} has the wrong domain or codomain")
            d._validate()
        for n in range(self.lo, self.hi - 1):
            if not (self.d(n + 1) @ self.d(n)).is_zero():
                raise NotAComplex(f"d^{n + 1} d^{n} != 0")

    def support(self) -> tuple[int, int] | None:
        nz = [n for n in self.degrees() if not self.obj(n).is_zero()]
        return (min(nz), max(nz)) if nz else None

    def is_zero(self) -> bool:
        return self.support() is None

    def trimmed(self) -> "Complex":
        s = self.support()
        if s is None:
            return zero_complex(self.backend)
        return Complex(self.backend, s[0], [self.obj(n) for n in range(s[0], s[1] + 1)],
                       [self.d(n) for n in range(s[0], s[1])], check=False)

    def dims(self) -> dict[int, tuple[int, ...]]:
        return {n: self.obj(n).dims for n in self.degrees()}

    def __eq__(self, other):
        if not isinstance(other, Complex) or self.backend != other.backend:
            return False
        for n in window(self, other):
            if self.obj(n) != other.obj(n) or self.d(n) != other.d(n):
                return False
        return True

    def __hash__(self):
        t = self.trimmed()
        return hash((t.lo, t.objs))

    def __repr__(self):
        body = ", ".join(f"{n}:{self.obj(n).dims}" for n in self.degrees())
        return f"Complex({self.backend}; {body})"


def window(*cs: Complex) -> range:
    """Union of the degree windows of non-empty complexes."""
    ws = [c for c in cs if c.objs]
    if not ws:
        return range(0)
    return range(min(c.lo for c in ws), max(c.hi for c in ws) + 1)


def zero_complex(backend: Backend) -> Complex:
    return Complex(backend, 0, [], [], check=False)


class ChainMap:
    __slots__ = ("src", "dst", "comps")

    def __init__(self, src: Complex, dst: Complex, comps: dict[int, Mor], check: bool = True):
        if src.backend != dst.backend:
            raise ab.BackendMismatch(f"{src.backend} vs {dst.backend}")
        self.src = src
        self.dst = dst
        full = {}
        for n in window(src, dst):
            m = comps.get(n)
            full[n] = m if m is not None else ab.zero_mor(src.obj(n), dst.obj(n))
        extra = [n for n, m in comps.items() if n not in full and not m.is_zero()]
        if extra:
            raise ValueError(f"nonzero components outside the window: {extra}")
        self.comps = full
        if check:
            self.validate()

    def comp(self, n: int) -> Mor:
        m = self.comps.get(n)
        return m if m is not None else ab.zero_mor(self.src.obj(n), self.dst.obj(n))

    def __getitem__(self, n: int) -> Mor:
        return self.comp(n)

    def validate(self):
        for n, m in self.comps.items():
            if m.dom != self.src.obj(n) or m.cod != self.dst.obj(n):
                raise ValueError(f"component {n} has the wrong domain or codomain")
        for n in window(self.src, self.dst):
            if self.comp(n + 1) @ self.src.d(n) != self.dst.d(n) @ self.comp(n):
                raise ValueError(f"square in degree {n} does not commute")

    def degrees(self) -> range:
        return window(self.src, self.dst)

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        if other.dst != self.src:
            raise ab.DomainMismatch("chain maps are not composable")
        ns = window(other.src, self.dst, self.src)
        return ChainMap(other.src, self.dst,
                        {n: self.comp(n) @ other.comp(n) for n in ns}, check=False)

    def _pointwise(self, other: "ChainMap", op) -> "ChainMap":
        if self.src != other.src or self.dst != other.dst:
            raise ab.DomainMismatch("chain maps have different source or target")
        return ChainMap(self.src, self.dst, {n: op(self.comp(n), other.comp(n))
                                             for n in self.degrees()}, check=False)

    def __add__(self, other):
        return self._pointwise(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._pointwise(other, lambda a, b: a - b)

    def __neg__(self):
        return ChainMap(self.src, self.dst, {n: -m for n, m in self.comps.items()}, check=False)

    def __eq__(self, other):
        return (isinstance(other, ChainMap) and self.src == other.src and self.dst == other.dst
                and all(self.comp(n) == other.comp(n)
                        for n in window(self.src, self.dst, other.src, other.dst)))

    def __hash__(self):
        return hash((self.src, self.dst))

    def __repr__(self):
        return f"ChainMap({self.src!r} -> {self.dst!r})"


class Homotopy:
    """Maps ``h^n: src^n -> dst^(n-1)``."""

    __slots__ = ("src", "dst", "maps")

    def __init__(self, src: Complex, dst: Complex, maps: dict[int, Mor]):
        self.src = src
        self.dst = dst
        self.maps = dict(maps)

    def h(self, n: int) -> Mor:
        m = self.maps.get(n)
        return m if m is not None else ab.zero_mor(self.src.obj(n), self.dst.obj(n - 1))

    def boundary(self, n: int) -> Mor:
        """``(d h + h d)^n``."""
        return self.dst.d(n - 1) @ self.h(n) + self.h(n + 1) @ self.src.d(n)

    def witnesses(self, f: ChainMap, g: ChainMap, degrees: Iterable[int] | None = None) -> bool:
        ns = degrees if degrees is not None else window(self.src, self.dst)
        return all(f.comp(n) - g.comp(n) == self.boundary(n) for n in ns)

    def vanishes_upto(self, r: int) -> bool:
        return all(m.is_zero() for n, m in self.maps.items() if n <= r)


# ---------------------------------------------------------------- constructors

def identity_map(x: Complex) -> ChainMap:
    return ChainMap(x, x, {n: ab.identity(x.obj(n)) for n in x.degrees()}, check=False)


def zero_map(x: Complex, y: Complex) -> ChainMap:
    return ChainMap(x, y, {}, check=False)


def stalk(a: Obj, k: int) -> Complex:
    return Complex(a.backend, k, [a], [], check=False)


def disk(a: Obj, k: int) -> Complex:
    """``a --id--> a`` in degrees ``k, k+1``."""
    return Complex(a.backend, k, [a, a], [ab.identity(a)], check=False)


def shift(x: Complex, k: int) -> Complex:
    sign = -1 if k % 2 else 1
    return Complex(x.backend, x.lo - k, x.objs,
                   [d if sign == 1 else -d for d in x.diffs], check=False)


def shift_map(f: ChainMap, k: int) -> ChainMap:
    return ChainMap(shift(f.src, k), shift(f.dst, k),
                    {n - k: m for n, m in f.comps.items()}, check=False)


def direct_sum(xs: Sequence[Complex], backend: Backend | None = None
               ) -> tuple[Complex, list[ChainMap], list[ChainMap]]:
    xs = list(xs)
    if not xs:
        return zero_complex(backend), [], []
    b = xs[0].backend
    ns = window(*xs)
    objs, incs, projs = {}, [dict() for _ in xs], [dict() for _ in xs]
    for n in ns:
        s, ins, prs = ab.biproduct([x.obj(n) for x in xs])
        objs[n] = s
        for i in range(len(xs)):
            incs[i][n] = ins[i]
            projs[i][n] = prs[i]
    diffs = {}
    for n in ns:
        if n + 1 in objs:
            diffs[n] = ab.diag_mor([x.d(n) for x in xs])
    total = Complex.from_dicts(b, objs, diffs, check=False)
    return (total,
            [ChainMap(x, total, incs[i], check=False) for i, x in enumerate(xs)],
            [ChainMap(total, x, projs[i], check=False) for i, x in enumerate(xs)])


def sum_of(xs: Sequence[Complex], backend: Backend | None = None) -> Complex:
    return direct_sum(xs, backend)[0]


# ---------------------------------------------------------------- cohomology

def cocycles(x: Complex, n: int) -> tuple[Obj, Mor]:
    return ab.kernel(x.d(n))


def coboundaries(x: Complex, n: int) -> tuple[Obj, Mor, Mor]:
    """``(B^n, X^(n-1) ->> B^n, B^n >-> X^n)``."""
    return ab.image(x.d(n - 1))


def coboundary_quotient(x: Complex, n: int) -> tuple[Obj, Mor]:
    """``X^n / B^n`` with its projection."""
    return ab.cokernel(x.d(n - 1))


def cohomology_data(x: Complex, n: int) -> tuple[Obj, Obj, Mor, Mor]:
    """``(H^n, Z^n, Z^n >-> X^n, Z^n ->> H^n)``."""
    z, iota = cocycles(x, n)
    b = ab.factor_through_mono(x.d(n - 1), iota)
    h, pi = ab.cokernel(b)
    return h, z, iota, pi


def cohomology(x: Complex, n: int) -> Obj:
    return cohomology_data(x, n)[0]


def cohomology_dims(x: Complex) -> dict[int, int]:
    return {n: cohomology(x, n).dim for n in x.degrees()}


def induced_Z(f: ChainMap, n: int) -> Mor:
    _, ix = cocycles(f.src, n)
    _, iy = cocycles(f.dst, n)
    return ab.factor_through_mono(f.comp(n) @ ix, iy)


def induced_B(f: ChainMap, n: int) -> Mor:
    _, _, ix = coboundaries(f.src, n)
    _, _, iy = coboundaries(f.dst, n)
    return ab.factor_through_mono(f.comp(n) @ ix, iy)


def induced_H(f: ChainMap, n: int) -> Mor:
    _, _, ix, px = cohomology_data(f.src, n)
    _, _, iy, py = cohomology_data(f.dst, n)
    z = ab.factor_through_mono(f.comp(n) @ ix, iy)
    return ab.factor_through_epi(py @ z, px)


def is_exact(x: Complex, degrees: Iterable[int] | None = None) -> bool:
    ns = x.degrees() if degrees is None else degrees
    return all(cohomology(x, n).is_zero() for n in ns)


def is_quasi_iso(f: ChainMap, degrees: Iterable[int] | None = None) -> bool:
    ns = f.degrees() if degrees is None else degrees
    return all(ab.is_iso(induced_H(f, n)) for n in ns)


# ---------------------------------------------------------------- truncations

def truncate_left(x: Complex, k: int) -> tuple[Complex, ChainMap]:
    """``tau^{>=k} X`` (degree k becomes X^k / B^k) and the projection from X."""
    if k > x.hi:
        t = zero_complex(x.backend)
        return t, zero_map(x, t)
    if k <= x.lo:
        return x, identity_map(x)
    q, rho = coboundary_quotient(x, k)
    objs = [q] + list(x.objs[k - x.lo + 1:])
    diffs = ([ab.factor_through_epi(x.d(k), rho)] if k < x.hi else []) + list(x.diffs[k - x.lo + 1:])
    t = Complex(x.backend, k, objs, diffs, check=False)
    comps = {n: ab.identity(x.obj(n)) for n in range(k + 1, x.hi + 1)}
    comps[k] = rho
    return t, ChainMap(x, t, comps, check=False)


def truncate_right(x: Complex, k: int) -> tuple[Complex, ChainMap]:
    """``tau^{<=k} X`` (degree k becomes Z^k) and the inclusion into X."""
    if k < x.lo:
        t = zero_complex(x.backend)
        return t, zero_map(t, x)
    if k >= x.hi:
        return x, identity_map(x)
    z, iota = cocycles(x, k)
    objs = list(x.objs[:k - x.lo]) + [z]
    diffs = list(x.diffs[:max(k - x.lo - 1, 0)]) + ([ab.factor_through_mono(x.d(k - 1), iota)]
                                              if k > x.lo else [])
    t = Complex(x.backend, x.lo, objs, diffs, check=False)
    comps = {n: ab.identity(x.obj(n)) for n in range(x.lo, k)}
    comps[k] = iota
    return t, ChainMap(t, x, comps, check=False)


def truncate_left_map(f: ChainMap, k: int) -> ChainMap:
    tx, px = truncate_left(f.src, k)
    ty, py = truncate_left(f.dst, k)
    comps = {}
    for n in window(tx, ty):
        if n < k:
            continue
        comps[n] = ab.factor_through_epi(py.comp(n) @ f.comp(n), px.comp(n)) if n == k \
            else f.comp(n)
    return ChainMap(tx, ty, comps, check=False)


def truncate_right_map(f: ChainMap, k: int) -> ChainMap:
    tx, ix = truncate_right(f.src, k)
    ty, iy = truncate_right(f.dst, k)
    comps = {}
    for n in window(tx, ty):
        if n > k:
            continue
        comps[n] = ab.factor_through_mono(f.comp(n) @ ix.comp(n), iy.comp(n)) if n == k \
            else f.comp(n)
    return ChainMap(tx, ty, comps, check=False)


# ---------------------------------------------------------------- cones

def cone(f: ChainMap) -> tuple[Complex, ChainMap, ChainMap]:
    """Mapping cone with the inclusion of ``dst`` and the projection to ``shift(src, 1)``."""
    x, y = f.src, f.dst
    b = x.backend
    ns = window(shift(x, 1), y)
    objs, diffs, incs, projs = {}, {}, {}, {}
    for n in ns:
        c, ins, prs = ab.biproduct([x.obj(n + 1), y.obj(n)])
        objs[n] = c
        incs[n] = ins[1]
        projs[n] = prs[0]
    for n in ns:
        if n + 1 in objs:
            diffs[n] = ab.block_mor([[-x.d(n + 1), None], [f.comp(n + 1), y.d(n)]],
                                    [x.obj(n + 1), y.obj(n)], [x.obj(n + 2), y.obj(n + 1)])
    c = Complex.from_dicts(b, objs, diffs, check=False)
    return c, ChainMap(y, c, incs, check=False), ChainMap(c, shift(x, 1), projs, check=False)


def kernel_complex(f: ChainMap) -> tuple[Complex, ChainMap]:
    """Degreewise kernel of a chain map with its inclusion into ``src``."""
    x = f.src
    ks = {n: ab.kernel(f.comp(n)) for n in x.degrees()}
    diffs = {n: ab.factor_through_mono(x.d(n) @ ks[n][1], ks[n + 1][1])
             for n in range(x.lo, x.hi)}
    k = Complex.from_dicts(x.backend, {n: v[0] for n, v in ks.items()}, diffs, check=False)
    return k, ChainMap(k, x, {n: v[1] for n, v in ks.items()}, check=False)


def degreewise_sections(f: ChainMap) -> dict[int, Mor] | None:
    """Morphisms ``s^n`` with ``f^n s^n = id``, or None if some degree does not split."""
    out = {}
    for n in f.degrees():
        m = f.comp(n)
        if m.cod.is_zero():
            out[n] = ab.zero_mor(m.cod, m.dom)
            continue
        sys_ = HomSystem(f.src.backend)
        u = sys_.unknown(m.cod, m.dom)
        sys_.equation(m.cod, m.cod, [(m, u, None)], ab.identity(m.cod))
        try:
            out[n] = sys_.solve()[0]
        except NoSolution:
            return None
    return out


# ---------------------------------------------------------------- solving

def chain_map_system(x: Complex, y: Complex, degrees: Iterable[int] | None = None
                     ) -> tuple[HomSystem, dict[int, int]]:
    """Homogeneous system whose solutions are the chain maps ``x -> y``."""
    ns = list(window(x, y)) if degrees is None else list(degrees)
    sys_ = HomSystem(x.backend)
    idx = {n: sys_.unknown(x.obj(n), y.obj(n)) for n in ns}
    for n in ns:
        if n + 1 in idx:
            sys_.equation(x.obj(n), y.obj(n + 1),
                          [(None, idx[n + 1], x.d(n)), (-y.d(n), idx[n], None)])
        else:
            sys_.equation(x.obj(n), y.obj(n + 1), [(-y.d(n), idx[n], None)])
        if n - 1 not in idx:
            sys_.equation(x.obj(n - 1), y.obj(n), [(None, idx[n], x.d(n - 1))])
    return sys_, idx


def find_homotopy(f: ChainMap, g: ChainMap, degrees: Iterable[int] | None = None,
                  zero_upto: int | None = None) -> Homotopy | None:
    """Solve ``f - g = d h + h d`` jointly over ``degrees`` (default: all).

    ``zero_upto`` forces ``h^n = 0`` for ``n <= zero_upto``.
    """
    if f.src != g.src or f.dst != g.dst:
        raise ab.DomainMismatch("homotopy needs parallel chain maps")
    x, y = f.src, f.dst
    ns = list(window(x, y)) if degrees is None else list(degrees)
    if not ns:
        return Homotopy(x, y, {})
    sys_ = HomSystem(x.backend)
    idx = {}
    for n in range(min(ns), max(ns) + 2):
        if zero_upto is not None and n <= zero_upto:
            continue
        idx[n] = sys_.unknown(x.obj(n), y.obj(n - 1))
    for n in ns:
        terms = []
        if n in idx:
            terms.append((y.d(n - 1), idx[n], None))
        if n + 1 in idx:
            terms.append((None, idx[n + 1], x.d(n)))
        sys_.equation(x.obj(n), y.obj(n), terms, f.comp(n) - g.comp(n))
    try:
        sol = sys_.solve()
    except NoSolution:
        return None
    h = Homotopy(x, y, {n: sol[i] for n, i in idx.items()})
    assert h.witnesses(f, g, ns)
    return h


def _is_iso_map(f: ChainMap) -> bool:
    return all(ab.is_iso(m) for m in f.comps.values())


def inverse_map(f: ChainMap) -> ChainMap:
    return ChainMap(f.dst, f.src, {n: ab.inverse(m) for n, m in f.comps.items()})


def verify_iso(f: ChainMap) -> bool:
    """Exact certificate check: ``f`` is a chain map with a two-sided chain inverse."""
    try:
        f.validate()
        g = inverse_map(f)
    except ValueError:
        return False
    return g @ f == identity_map(f.src) and f @ g == identity_map(f.dst)


def find_complex_iso(x: Complex, y: Complex, seed: int = 0, trials: int = 64,
                     exhaustive_limit: int = 6) -> ChainMap | None:
    """Search the chain maps ``x -> y`` for an isomorphism.

    Random solutions are tried first; when the solution space has dimension at
    most ``exhaustive_limit`` every solution is then tried.  A returned map is
    verified; None only means that no isomorphism was found.
    """
    if x.backend != y.backend:
        raise ab.BackendMismatch(f"{x.backend} vs {y.backend}")
    ns = list(window(x, y))
    if any(x.obj(n).dims != y.obj(n).dims for n in ns):
        return None
    if not ns:
        return zero_map(x, y)
    sys_, idx = chain_map_system(x, y, ns)
    _, basis = sys_.space()
    p = x.p
    k = basis.shape[1]

    def attempt(c):
        comps = sys_.realize(la.matmul(basis, np.asarray(c, dtype=np.int64)[:, None], p)[:, 0])
        fm = ChainMap(x, y, {n: comps[i] for n, i in idx.items()}, check=False)
        return fm if _is_iso_map(fm) else None

    rng = np.random.default_rng(seed)
    for _ in range(trials):
        fm = attempt(rng.integers(0, p, size=k))
        if fm is not None and verify_iso(fm):
            return fm
    if k <= exhaustive_limit:
        for c in itertools.product(range(p), repeat=k):
            fm = attempt(c)
            if fm is not None and verify_iso(fm):
                return fm
    return None


def reorder_differentials(x: Complex, n: int, y: Obj, k: int) -> tuple[Complex, ChainMap]:
    """Rewrite a diagonal ``d^(n-1) = (phi, ..., phi)^t`` into ``y^k`` as ``(phi, 0, ..., 0)^t``.

    Returns the new complex and the isomorphism from ``x`` whose degree-n
    component is lower triangular with first column ``(1, -1, ..., -1)``.
    """
    s, incs, projs = ab.biproduct([y] * k)
    if x.obj(n) != s:
        raise ValueError(f"degree {n} is not the {k}-fold sum of the given object")
    d_in = x.d(n - 1)
    phis = [pr @ d_in for pr in projs]
    if any(ph != phis[0] for ph in phis[1:]):
        raise ValueError(f"d^{n - 1} is not a diagonal map")
    one = ab.identity(y)
    grid = [[one if i == j else (-one if j == 0 else None) for j in range(k)] for i in range(k)]
    iso_n = ab.block_mor(grid, [y] * k, [y] * k)
    inv_grid = [[one if i == j or j == 0 else None for j in range(k)] for i in range(k)]
    inv_n = ab.block_mor(inv_grid, [y] * k, [y] * k)
    diffs = {m: x.d(m) for m in range(x.lo, x.hi)}
    diffs[n - 1] = iso_n @ d_in
    diffs[n] = x.d(n) @ inv_n
    objs = {m: x.obj(m) for m in x.degrees()}
    x2 = Complex.from_dicts(x.backend, objs, diffs)
    comps = {m: ab.identity(x.obj(m)) for m in x.degrees()}
    comps[n] = iso_n
    return x2, ChainMap(x, x2, comps)


# ---------------------------------------------------------------- sampling

def random_complex(backend: Backend, seed, lo: int = 0, hi: int = 2, bound: int = 2) -> Complex:
    """Random complex on ``[lo, hi]``; each d^n is random on X^n / B^n."""
    rng = ab.rng_from(seed)
    objs = [ab.random_obj(backend, rng, bound) for _ in range(lo, hi + 1)]
    diffs = []
    prev = None
    for i in range(len(objs) - 1):
        if prev is None:
            diffs.append(ab.random_mor(rng, objs[i], objs[i + 1]))
        else:
            _, rho = ab.cokernel(prev)
            diffs.append(ab.random_mor(rng, rho.cod, objs[i + 1]) @ rho)
        prev = diffs[-1]
    return Complex(backend, lo, objs, diffs)


def random_chain_map(seed, x: Complex, y: Complex) -> ChainMap:
    rng = ab.rng_from(seed)
    sys_, idx = chain_map_system(x, y)
    _, basis = sys_.space()
    c = rng.integers(0, x.p, size=(basis.shape[1], 1))
    comps = sys_.realize(la.matmul(basis, c, x.p)[:, 0])
    return ChainMap(x, y, {n: comps[i] for n, i in idx.items()})


# ---------------------------------------------------------------- Hom complexes

def _coord_matrix(src_basis: np.ndarray, dst_basis: np.ndarray, op: np.ndarray, p: int
                  ) -> np.ndarray:
    """Matrix in Hom coordinates of the linear map ``op`` on vectorised morphisms."""
    if src_basis.shape[1] == 0 or dst_basis.shape[1] == 0:
        return la.zeros(dst_basis.shape[1], src_basis.shape[1])
    return la.solve(dst_basis, la.matmul(op, src_basis, p), p)


def hom_into(x: Complex, a: Obj) -> Complex:
    """``Hom(X, a)`` over F_p: degree n is ``Hom(X^(-n), a)``, differential ``U -> U d``."""
    vb = ab.vect(x.p)
    p = x.p
    if not x.objs:
        return zero_complex(vb)
    lo, hi = -x.hi, -x.lo
    bases = {n: ab.hom_basis(x.obj(-n), a) for n in range(lo, hi + 1)}
    objs = {n: ab.space(vb, bases[n].shape[1]) for n in bases}
    diffs = {}
    for n in range(lo, hi):
        d = x.d(-n - 1)
        op = ab.sandwich_operator(None, d, x.obj(-n), a)
        diffs[n] = Mor(objs[n], objs[n + 1], [_coord_matrix(bases[n], bases[n + 1], op, p)],
                       check=False)
    return Complex.from_dicts(vb, objs, diffs, check=False)


def hom_into_map(f: ChainMap, a: Obj) -> ChainMap:
    """``Hom(f, a): Hom(dst, a) -> Hom(src, a)``."""
    hy, hx = hom_into(f.dst, a), hom_into(f.src, a)
    p = a.p
    comps = {}
    for n in window(hx, hy):
        m = f.comp(-n)
        op = ab.sandwich_operator(None, m, m.cod, a)
        mat_ = _coord_matrix(ab.hom_basis(m.cod, a), ab.hom_basis(m.dom, a), op, p)
        comps[n] = Mor(hy.obj(n), hx.obj(n), [mat_], check=False)
    return ChainMap(hy, hx, comps, check=False)


def hom_from(a: Obj, y: Complex) -> Complex:
    """``Hom(a, Y)`` over F_p: degree n is ``Hom(a, Y^n)``, differential ``U -> d U``."""
    vb = ab.vect(y.p)
    p = y.p
    if not y.objs:
        return zero_complex(vb)
    bases = {n: ab.hom_basis(a, y.obj(n)) for n in y.degrees()}
    objs = {n: ab.space(vb, b.shape[1]) for n, b in bases.items()}
    diffs = {}
    for n in range(y.lo, y.hi):
        op = ab.sandwich_operator(y.d(n), None, a, y.obj(n))
        diffs[n] = Mor(objs[n], objs[n + 1], [_coord_matrix(bases[n], bases[n + 1], op, p)],
                       check=False)
    return Complex.from_dicts(vb, objs, diffs, check=False)
