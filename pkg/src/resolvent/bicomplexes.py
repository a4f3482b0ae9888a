"""Bicomplexes, multicomplexes and their totalizations.

Cells are indexed ``(i, j)`` with ``i`` the vertical (row) index and ``j`` the
horizontal index.  A multicomplex carries differentials ``d_r`` of bidegree
``(r, 1 - r)``; a bicomplex is the case ``r <= 1``, with ``d_0`` horizontal and
``d_1`` vertical, and its squares anticommute.  Totalization uses finite
direct sums along antidiagonals, ordered by increasing row index.
"""

from __future__ import annotations

from typing import Iterable

from . import abcat as ab
from . import complexes as cx
from .abcat import Backend, Mor, Obj
from .complexes import ChainMap, Complex

Cell = tuple[int, int]


class MulticomplexConditionViolated(ValueError):
    pass


class NonzeroDifferential(ValueError):
    pass


class Multicomplex:
    def __init__(self, backend: Backend, cells: dict[Cell, Obj],
                 diffs: dict[int, dict[Cell, Mor]], check: bool = True):
        self.backend = backend
        self.cells = {k: v for k, v in cells.items()}
        self.diffs = {r: dict(d) for r, d in diffs.items()}
        if check:
            self.validate()

    @property
    def R(self) -> int:
        return max(self.diffs, default=0)

    def cell(self, i: int, j: int) -> Obj:
        o = self.cells.get((i, j))
        return o if o is not None else ab.zero_obj(self.backend)

    def diff(self, r: int, i: int, j: int) -> Mor:
        """``d_r: C^(i,j) -> C^(i+r, j-r+1)``."""
        m = self.diffs.get(r, {}).get((i, j))
        return m if m is not None else ab.zero_mor(self.cell(i, j), self.cell(i + r, j - r + 1))

    def support(self) -> list[Cell]:
        return sorted(k for k, v in self.cells.items() if not v.is_zero())

    def _check_shapes(self):
        for r, d in self.diffs.items():
            for (i, j), m in d.items():
                if m.dom != self.cell(i, j) or m.cod != self.cell(i + r, j - r + 1):
                    raise MulticomplexConditionViolated(
                        f"d_{r} at {(i, j)} has the wrong domain or codomain")

    def validate(self):
        self._check_shapes()
        for (i, j) in self.support():
            for t in range(0, 2 * self.R + 1):
                total = ab.zero_mor(self.cell(i, j), self.cell(i + t, j - t + 2))
                for r in range(0, t + 1):
                    s = t - r
                    if r > self.R or s > self.R:
                        continue
                    total = total + self.diff(s, i + r, j - r + 1) @ self.diff(r, i, j)
                if not total.is_zero():
                    raise MulticomplexConditionViolated(
                        f"sum of d_s d_r over r+s={t} is nonzero at {(i, j)}")

    def __eq__(self, other):
        if not isinstance(other, Multicomplex):
            return False
        keys = set(self.cells) | set(other.cells)
        rs = set(self.diffs) | set(other.diffs)
        return all(self.cell(*k) == other.cell(*k) for k in keys) and all(
            self.diff(r, *k) == other.diff(r, *k) for r in rs for k in keys)

    __hash__ = None


class Bicomplex(Multicomplex):
    """Horizontal ``d0`` of bidegree (0, 1), vertical ``d1`` of bidegree (1, 0), anticommuting."""

    def __init__(self, backend: Backend, cells: dict[Cell, Obj], d0: dict[Cell, Mor],
                 d1: dict[Cell, Mor], check: bool = True):
        super().__init__(backend, cells, {0: d0, 1: d1}, check)

    def d0(self, i: int, j: int) -> Mor:
        return self.diff(0, i, j)

    def d1(self, i: int, j: int) -> Mor:
        return self.diff(1, i, j)

    def row(self, i: int, degrees: Iterable[int]) -> Complex:
        ns = list(degrees)
        return Complex.from_dicts(self.backend, {n: self.cell(i, n) for n in ns},
                                  {n: self.d0(i, n) for n in ns[:-1]}, check=False)

    def column(self, j: int, rows: Iterable[int]) -> Complex:
        ms = list(rows)
        return Complex.from_dicts(self.backend, {m: self.cell(m, j) for m in ms},
                                  {m: self.d1(m, j) for m in ms[:-1]}, check=False)


class DoubleComplex:
    """Same grid shape as a bicomplex but with commuting squares."""

    def __init__(self, backend: Backend, cells: dict[Cell, Obj], horizontal: dict[Cell, Mor],
                 vert: dict[Cell, Mor], check: bool = True):
        self.backend = backend
        self.cells = dict(cells)
        self.horizontal_maps = dict(horizontal)
        self.vertical_maps = dict(vert)
        if check:
            self.validate()

    def cell(self, i: int, j: int) -> Obj:
        o = self.cells.get((i, j))
        return o if o is not None else ab.zero_obj(self.backend)

    def horizontal(self, i: int, j: int) -> Mor:
        m = self.horizontal_maps.get((i, j))
        return m if m is not None else ab.zero_mor(self.cell(i, j), self.cell(i, j + 1))

    def vertical(self, i: int, j: int) -> Mor:
        m = self.vertical_maps.get((i, j))
        return m if m is not None else ab.zero_mor(self.cell(i, j), self.cell(i + 1, j))

    def validate(self):
        for (i, j) in self.cells:
            h, v = self.horizontal(i, j), self.vertical(i, j)
            if not (self.horizontal(i, j + 1) @ h).is_zero() or \
                    not (self.vertical(i + 1, j) @ v).is_zero():
                raise MulticomplexConditionViolated(f"differential does not square to zero at {(i, j)}")
            if self.vertical(i, j + 1) @ h != self.horizontal(i + 1, j) @ v:
                raise MulticomplexConditionViolated(f"square at {(i, j)} does not commute")

    def row(self, i: int, degrees: Iterable[int]) -> Complex:
        ns = list(degrees)
        return Complex.from_dicts(self.backend, {n: self.cell(i, n) for n in ns},
                                  {n: self.horizontal(i, n) for n in ns[:-1]}, check=False)


def sign_trick(b: Bicomplex) -> DoubleComplex:
    """Multiply the vertical differential in column ``j`` by ``(-1)^j``."""
    vert = {(i, j): (-m if j % 2 else m) for (i, j), m in b.diffs.get(1, {}).items()}
    return DoubleComplex(b.backend, b.cells, b.diffs.get(0, {}), vert)


def unsign(d: DoubleComplex) -> Bicomplex:
    vert = {(i, j): (-m if j % 2 else m) for (i, j), m in d.vertical_maps.items()}
    return Bicomplex(d.backend, d.cells, d.horizontal_maps, vert)


# ---------------------------------------------------------------- totalization

def tot_multicomplex_data(m: Multicomplex) -> tuple[Complex, dict[int, list[Cell]]]:
    """Totalization together with the ordered summands of each degree."""
    m.validate()
    supp = m.support()
    if not supp:
        return cx.zero_complex(m.backend), {}
    lo = min(i + j for i, j in supp)
    hi = max(i + j for i, j in supp)
    summands = {n: sorted(k for k in supp if sum(k) == n) for n in range(lo, hi + 1)}
    objs = {n: ab.direct_sum([m.cell(*k) for k in ks], m.backend) for n, ks in summands.items()}
    diffs = {}
    for n in range(lo, hi):
        src, dst = summands[n], summands[n + 1]
        grid = []
        for (i2, j2) in dst:
            row = []
            for (i, j) in src:
                r = i2 - i
                row.append(m.diff(r, i, j) if 0 <= r <= m.R and j2 == j - r + 1 else None)
            grid.append(row)
        if src and dst:
            diffs[n] = ab.block_mor(grid, [m.cell(*k) for k in src], [m.cell(*k) for k in dst])
    tot = Complex.from_dicts(m.backend, objs, diffs, check=False)
    try:
        tot.validate()
    except ValueError as e:
        raise MulticomplexConditionViolated(str(e)) from None
    return tot, summands


def tot_multicomplex(m: Multicomplex) -> Complex:
    return tot_multicomplex_data(m)[0]


def tot_bicomplex_data(b: Multicomplex) -> tuple[Complex, dict[int, list[Cell]]]:
    if b.R > 1:
        raise MulticomplexConditionViolated("a bicomplex has only d0 and d1")
    return tot_multicomplex_data(b)


def tot_bicomplex(b: Multicomplex) -> Complex:
    return tot_bicomplex_data(b)[0]


def augmentation_into_tot(m: Multicomplex, lam: dict[int, Mor], target: Complex) -> ChainMap:
    """Chain map ``target -> Tot(m)`` sending ``target^n`` into the summand ``(0, n)``."""
    tot, summands = tot_multicomplex_data(m)
    comps = {}
    for n, lm in lam.items():
        keys = summands.get(n, [])
        if not keys:
            continue
        grid = [[lm if key == (0, n) else None] for key in keys]
        comps[n] = ab.block_mor(grid, [lm.dom], [m.cell(*key) for key in keys])
    return ChainMap(target, tot, comps)


# ---------------------------------------------------------------- trivial differentials

def saneblidze_trivial_diff(x: Complex, depth: int) -> tuple[Multicomplex, dict[int, Mor]]:
    """Resolution multicomplex of a complex with zero differentials.

    Column n is the injective resolution of ``x^n = H^n(x)``; the horizontal
    and all higher differentials vanish, and the augmentation in degree n is
    the resolution map of ``x^n``.
    """
    from .resolutions import inj_res_object

    if any(not d.is_zero() for d in x.diffs):
        raise NonzeroDifferential("the input complex has a nonzero differential")
    cells, d1, lam = {}, {}, {}
    for n in x.degrees():
        r = inj_res_object(x.obj(n), depth)
        for i in range(depth):
            cells[(i, n)] = r.term(i)
        for i in range(depth - 1):
            d1[(i, n)] = r.diff(i)
        lam[n] = r.lam.comp(0)
    return Multicomplex(x.backend, cells, {0: {}, 1: d1}), lam


def is_multicomplex_morphism(phi: dict[int, dict[Cell, Mor]], x: Multicomplex,
                             y: Multicomplex) -> bool:
    """Check ``sum_{r+s=t} phi_s d_r = sum_{r+s=t} d_s phi_r`` for every t.

    ``phi_r`` has bidegree ``(r, -r)``.  Returns False on any failing component.
    """
    def ph(r, i, j):
        m = phi.get(r, {}).get((i, j))
        return m if m is not None else ab.zero_mor(x.cell(i, j), y.cell(i + r, j - r))

    rmax = max(list(phi) + [x.R, y.R, 0])
    for (i, j) in x.support():
        for t in range(0, 2 * rmax + 1):
            tgt = y.cell(i + t, j - t + 1)
            lhs = ab.zero_mor(x.cell(i, j), tgt)
            rhs = ab.zero_mor(x.cell(i, j), tgt)
            for r in range(0, t + 1):
                s = t - r
                lhs = lhs + ph(s, i + r, j - r + 1) @ x.diff(r, i, j)
                rhs = rhs + y.diff(s, i + r, j - r) @ ph(r, i, j)
            if lhs != rhs:
                return False
    return True
